"""Test spaces, events, perspectivity, and the logic quotient.

A test space is an outcome set covered by nonempty tests; events are subsets
of tests.  When the space is algebraic, events modulo perspectivity carry a
partial sum and form an orthoalgebra, and every orthoalgebra arises this way
from its own space of unit orthopartitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import chain, combinations
from typing import Iterable, Optional, Sequence

from .core import FiniteOrthoalgebra, bits, build_oa, osum_event
from .errors import (
    DuplicateLabel,
    InternalInconsistency,
    NotAlgebraic,
    NotAnEvent,
    PerspectivityNotTransitive,
    RoundTripFailure,
    UnknownLabel,
)

Event = frozenset  # of outcome indices


@dataclass(frozen=True)
class TestSpace:
    outcomes: tuple[str, ...]
    tests: tuple[frozenset[int], ...]

    @property
    def n(self) -> int:
        return len(self.outcomes)

    def index(self, label: str) -> int:
        try:
            return self.outcomes.index(label)
        except ValueError:
            raise UnknownLabel(label) from None

    def event(self, labels: Iterable[str]) -> Event:
        return frozenset(self.index(lab) for lab in labels)

    def event_labels(self, ev: Event) -> list[str]:
        return sorted(self.outcomes[i] for i in ev)


def make_testspace(
    outcomes: Sequence[str], tests: Iterable[Iterable[str]]
) -> TestSpace:
    """Validate outcomes and tests: tests nonempty, covering, known labels."""
    out = tuple(outcomes)
    if len(set(out)) != len(out):
        dup = next(lab for i, lab in enumerate(out) if lab in out[:i])
        raise DuplicateLabel(dup)
    idx = {lab: i for i, lab in enumerate(out)}
    tset = []
    for t in tests:
        members = set()
        for lab in t:
            if lab not in idx:
                raise UnknownLabel(lab)
            members.add(idx[lab])
        if not members:
            raise ValueError("tests must be nonempty")
        fs = frozenset(members)
        if fs not in tset:
            tset.append(fs)
    covered = set().union(*tset) if tset else set()
    if covered != set(range(len(out))):
        missing = sorted(set(range(len(out))) - covered)
        raise ValueError(f"tests do not cover outcomes {[out[i] for i in missing]}")
    tset.sort(key=lambda s: (len(s), sorted(s)))
    return TestSpace(out, tuple(tset))


def events(T: TestSpace) -> list[Event]:
    """Every subset of a test, deduplicated, sorted by (size, outcomes)."""
    seen: set[Event] = set()
    for t in T.tests:
        members = sorted(t)
        for k in range(len(members) + 1):
            for sub in combinations(members, k):
                seen.add(frozenset(sub))
    return sorted(seen, key=lambda e: (len(e), sorted(e)))


def is_event(T: TestSpace, A: Event) -> bool:
    return any(A <= t for t in T.tests)


def complements_of(T: TestSpace, A: Event) -> list[Event]:
    """Events complementary to A: each is what some test adds on top of A."""
    if not is_event(T, A):
        raise NotAnEvent(sorted(A))
    out = {t - A for t in T.tests if A <= t}
    return sorted(out, key=lambda e: (len(e), sorted(e)))


@dataclass(frozen=True)
class EventRelations:
    orthogonal: bool
    complementary: bool
    perspective: bool


def event_relations(T: TestSpace, A: Event, B: Event) -> EventRelations:
    """Orthogonal: disjoint with the union an event.  Complementary: disjoint
    partitioning a test.  Perspective: sharing a complementary event."""
    for ev in (A, B):
        if not is_event(T, ev):
            raise NotAnEvent(sorted(ev))
    disjoint = not (A & B)
    orthogonal = disjoint and is_event(T, A | B)
    complementary = disjoint and (A | B) in T.tests
    persp = bool(set(complements_of(T, A)) & set(complements_of(T, B)))
    return EventRelations(orthogonal, complementary, persp)


def is_algebraic(
    T: TestSpace,
) -> tuple[bool, Optional[tuple[Event, Event, Event]]]:
    """Perspective events must have identical complement sets.

    On failure returns (A, B, C) where A and B share a complement but C is
    complementary to exactly one of them.
    """
    evs = events(T)
    comp = {A: set(complements_of(T, A)) for A in evs}
    for A, B in combinations(evs, 2):
        shared = comp[A] & comp[B]
        if shared and comp[A] != comp[B]:
            diff = sorted(
                comp[A] ^ comp[B], key=lambda e: (len(e), sorted(e))
            )
            return False, (A, B, diff[0])
    return True, None


@dataclass(frozen=True)
class LogicQuotient:
    """Events modulo perspectivity, with the induced orthoalgebra."""

    testspace: TestSpace
    classes: tuple[tuple[Event, ...], ...]
    oa: FiniteOrthoalgebra

    def class_of(self, A: Event) -> int:
        for i, cls in enumerate(self.classes):
            if A in cls:
                return i
        raise NotAnEvent(sorted(A))


def _class_label(T: TestSpace, cls: Sequence[Event]) -> str:
    rep = min(cls, key=lambda e: (len(e), sorted(T.outcomes[i] for i in e)))
    return "{" + ",".join(sorted(T.outcomes[i] for i in rep)) + "}"


def logic(T: TestSpace) -> LogicQuotient:
    """Quotient the events by perspectivity and build the class algebra.

    Transitivity of perspectivity is verified, not assumed, and the induced
    sum is checked to be single-valued over all representatives before the
    table is validated as an orthoalgebra.
    """
    algebraic, witness = is_algebraic(T)
    if not algebraic:
        raise NotAlgebraic(witness)
    evs = events(T)
    comp = {A: frozenset(complements_of(T, A)) for A in evs}

    # Group by complement set.  Sharing a complement now implies equal
    # complement sets, so these groups are exactly the perspectivity classes;
    # verify that the share-a-complement relation is transitive on them.
    groups: dict[frozenset, list[Event]] = {}
    for A in evs:
        groups.setdefault(comp[A], []).append(A)
    for A, B in combinations(evs, 2):
        share = bool(comp[A] & comp[B])
        same = comp[A] == comp[B]
        if share != same:
            raise PerspectivityNotTransitive(f"{sorted(A)} ~ {sorted(B)}")

    classes = sorted(
        (tuple(sorted(g, key=lambda e: (len(e), sorted(e)))) for g in groups.values()),
        key=lambda g: (len(g[0]), sorted(g[0])),
    )
    class_index = {A: i for i, cls in enumerate(classes) for A in cls}

    zero_cls = class_index[frozenset()]
    unit_classes = {class_index[t] for t in T.tests}
    if len(unit_classes) != 1:
        raise InternalInconsistency("tests fall into more than one class")
    unit_cls = unit_classes.pop()

    labels = [_class_label(T, cls) for cls in classes]
    if len(set(labels)) != len(labels):
        raise InternalInconsistency("class labels collide")

    sums = []
    for i in range(len(classes)):
        for j in range(i, len(classes)):
            results = set()
            for A in classes[i]:
                for B in classes[j]:
                    if not (A & B) and is_event(T, A | B):
                        results.add(class_index[A | B])
            if len(results) > 1:
                raise InternalInconsistency(
                    f"induced sum multi-valued on classes {labels[i]}, {labels[j]}"
                )
            if results:
                sums.append((labels[i], labels[j], labels[results.pop()]))

    oa = build_oa(labels, labels[zero_cls], labels[unit_cls], sums)
    return LogicQuotient(T, tuple(classes), oa)


# ---------------------------------------------------------------------------
# canonical representation of an orthoalgebra


def summable_subsets(L: FiniteOrthoalgebra, max_size: int = 64) -> list[frozenset[int]]:
    """All subsets of nonzero elements with a defined orthogonal sum.

    Depth-first search extending a partial sum one element at a time; by
    strong associativity a set is summable iff this search reaches it.
    """
    if L.n > max_size:
        raise ValueError(f"carrier too large ({L.n} > {max_size})")
    nz = [a for a in range(L.n) if a != L.zero]
    out = [frozenset()]

    def extend(current: list[int], acc: int, start: int):
        for pos in range(start, len(nz)):
            e = nz[pos]
            s = L.table[acc][e]
            if s is None:
                continue
            current.append(e)
            out.append(frozenset(current))
            extend(current, s, pos + 1)
            current.pop()

    extend([], L.zero, 0)
    return sorted(set(out), key=lambda e: (len(e), sorted(e)))


def canonical_testspace(L: FiniteOrthoalgebra, max_size: int = 64) -> TestSpace:
    """Outcomes are the nonzero elements; tests are the orthopartitions of 1."""
    subsets = summable_subsets(L, max_size)
    tests = [s for s in subsets if osum_event(L, s) == L.one]
    return make_testspace(
        [L.labels[a] for a in range(L.n) if a != L.zero],
        [[L.labels[a] for a in sorted(t)] for t in tests],
    )


@dataclass(frozen=True)
class RoundTrip:
    testspace: TestSpace
    quotient: LogicQuotient
    witness: dict[str, str]  # class label -> element label


def representation_roundtrip(L: FiniteOrthoalgebra) -> RoundTrip:
    """Build the logic of the canonical test space and exhibit it as L.

    The witness maps each perspectivity class to the common sum of its
    events; it must be a bijection matching the sum tables both ways.
    """
    T = canonical_testspace(L)
    lq = logic(T)
    outcome_elem = [L.index(lab) for lab in T.outcomes]

    phi: list[int] = []
    for cls in lq.classes:
        sums = {osum_event(L, [outcome_elem[i] for i in A]) for A in cls}
        if len(sums) != 1 or None in sums:
            raise RoundTripFailure(
                f"class {[sorted(A) for A in cls]} has inconsistent sums"
            )
        phi.append(sums.pop())

    if sorted(phi) != list(range(L.n)):
        raise RoundTripFailure("class map is not a bijection onto the algebra")
    Q = lq.oa
    if phi[Q.zero] != L.zero or phi[Q.one] != L.one:
        raise RoundTripFailure("zero or unit not preserved")
    for i in range(Q.n):
        for j in range(Q.n):
            s_q = Q.table[i][j]
            s_l = L.table[phi[i]][phi[j]]
            if (s_q is None) != (s_l is None):
                raise RoundTripFailure(
                    f"definedness differs at ({Q.labels[i]},{Q.labels[j]})"
                )
            if s_q is not None and phi[s_q] != s_l:
                raise RoundTripFailure(
                    f"sum differs at ({Q.labels[i]},{Q.labels[j]})"
                )
    witness = {Q.labels[i]: L.labels[phi[i]] for i in range(Q.n)}
    return RoundTrip(T, lq, witness)
