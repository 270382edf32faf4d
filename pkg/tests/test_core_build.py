"""Table validation: every axiom, every diagnostic."""

import pytest

from oalab import build_oa, validate_oa_table
from oalab.errors import AxiomViolation, DuplicateLabel, UnknownLabel

BOOL2_SUMS = [
    ("0", "0", "0"),
    ("0", "a", "a"),
    ("0", "a'", "a'"),
    ("0", "1", "1"),
    ("a", "a'", "1"),
]


def test_four_element_table_valid():
    L = build_oa(["0", "a", "a'", "1"], "0", "1", BOOL2_SUMS)
    assert L.n == 4
    assert L.complement[L.index("a")] == L.index("a'")
    assert L.sum_of(L.index("a"), L.index("a'")) == L.one


def test_missing_complement_rejected():
    sums = [t for t in BOOL2_SUMS if t != ("a", "a'", "1")]
    with pytest.raises(AxiomViolation) as exc:
        build_oa(["0", "a", "a'", "1"], "0", "1", sums)
    axioms = {v.axiom for v in exc.value.violations}
    assert "unique-complement" in axioms
    witnesses = [v.witness for v in exc.value.violations if v.axiom == "unique-complement"]
    assert ("a",) in witnesses and ("a'",) in witnesses


def test_missing_zero_row_rejected():
    sums = [t for t in BOOL2_SUMS if t != ("0", "a", "a")]
    with pytest.raises(AxiomViolation) as exc:
        build_oa(["0", "a", "a'", "1"], "0", "1", sums)
    assert any(
        v.axiom == "zero-identity" and v.witness == ("a",)
        for v in exc.value.violations
    )


def test_self_sum_rejected():
    sums = BOOL2_SUMS + [("a", "a", "1")]
    with pytest.raises(AxiomViolation) as exc:
        build_oa(["0", "a", "a'", "1"], "0", "1", sums)
    axioms = {v.axiom for v in exc.value.violations}
    assert "self-orthogonality" in axioms


def test_conflicting_pair_listing_rejected():
    sums = BOOL2_SUMS + [("a'", "a", "a'")]
    with pytest.raises(AxiomViolation) as exc:
        build_oa(["0", "a", "a'", "1"], "0", "1", sums)
    assert any(v.axiom == "commutativity" for v in exc.value.violations)


def test_consistent_double_listing_accepted():
    sums = BOOL2_SUMS + [("a'", "a", "1")]
    L = build_oa(["0", "a", "a'", "1"], "0", "1", sums)
    assert L.n == 4


def test_associativity_violation_named():
    # x (+) y defined with (x (+) y) (+) z defined but y (+) z missing
    labels = ["0", "x", "y", "z", "xy", "w", "1"]
    sums = [("0", lab, lab) for lab in labels]
    sums += [
        ("x", "y", "xy"),
        ("xy", "z", "1"),
        ("x", "w", "1"),
        ("y", "z", "w"),  # will be removed
    ]
    sums_bad = [t for t in sums if t != ("y", "z", "w")]
    # complete complements to isolate the associativity failure
    sums_bad += [("y", "w", "1"), ("z", "xy", "1")]
    with pytest.raises(AxiomViolation) as exc:
        build_oa(labels, "0", "1", sums_bad)
    assert any(v.axiom == "associativity" for v in exc.value.violations)


def test_degenerate_zero_equals_one_rejected():
    with pytest.raises(AxiomViolation) as exc:
        build_oa(["0"], "0", "0", [("0", "0", "0")])
    assert any(v.axiom == "nondegenerate-unit" for v in exc.value.violations)


def test_duplicate_and_unknown_labels():
    with pytest.raises(DuplicateLabel):
        build_oa(["0", "0", "1"], "0", "1", [])
    with pytest.raises(UnknownLabel):
        build_oa(["0", "1"], "0", "q", [])
    with pytest.raises(UnknownLabel):
        build_oa(["0", "1"], "0", "1", [("0", "q", "1")])


def test_validate_collects_multiple_violations():
    violations = validate_oa_table(
        ["0", "a", "a'", "1"],
        "0",
        "1",
        [("0", "0", "0"), ("0", "1", "1"), ("a", "a", "1")],
    )
    axioms = {v.axiom for v in violations}
    assert {"zero-identity", "self-orthogonality", "unique-complement"} <= axioms


def test_derived_order_and_complement_laws(corpus):
    # a <= b iff a _|_ b'; complement is involutive and order reversing
    for L in corpus.values():
        for a in range(L.n):
            assert L.complement[L.complement[a]] == a
            for b in range(L.n):
                assert L.le(a, b) == L.is_perp(a, L.complement[b])
                if L.le(a, b):
                    assert L.le(L.complement[b], L.complement[a])


def test_order_is_partial_order_with_bounds(corpus):
    for L in corpus.values():
        for a in range(L.n):
            assert L.le(a, a)
            assert L.le(L.zero, a) and L.le(a, L.one)
            for b in range(L.n):
                if L.le(a, b) and L.le(b, a):
                    assert a == b
                for c in range(L.n):
                    if L.le(a, b) and L.le(b, c):
                        assert L.le(a, c)
