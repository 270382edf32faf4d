"""Command-line front end.

Exit codes: 0 on success, 1 when a structure is invalid or a checked
property fails (diagnostics as JSON on stdout), 2 for unusable input.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import catalog, dot, io
from .core import (
    blocks,
    boolean_blocks,
    center,
    central_decomposition,
    classify,
    ominus,
)
from .errors import AxiomViolation, OalabError, ParseError
from .intervals import (
    closed,
    format_fraction,
    format_interval_set,
    iset,
    iv_is_closed,
    iv_is_open,
    iv_upset,
    point,
    two_interval_carrier,
)
from .projections import meet_discontinuity_witness, rank_separation_check
from .states import state_vertices
from .testspace import logic, canonical_testspace, representation_roundtrip
from .topology import check_toa, is_stably_ordered
from .core import bits


def _classification_dict(rep, L):
    return {
        "orthocoherent": rep.orthocoherent,
        "omp": rep.omp,
        "lattice": rep.lattice,
        "boolean": rep.boolean,
        "simple": rep.simple,
        "height": rep.height,
        "num_atoms": rep.num_atoms,
        "dimension": {L.labels[i]: d for i, d in enumerate(rep.dimension)},
    }


def _emit(args, payload, text_fallback=None):
    if getattr(args, "format", "json") == "text" and text_fallback is not None:
        print(text_fallback)
    else:
        sys.stdout.write(io.dumps(payload))


def cmd_verify(args) -> int:
    try:
        L = io.read_oa(args.input)
    except AxiomViolation as exc:
        _emit(
            args,
            {
                "valid": False,
                "violations": [
                    {"axiom": v.axiom, "witness": list(v.witness), "detail": v.detail}
                    for v in exc.violations
                ],
            },
        )
        return 1
    _emit(args, {"valid": True, "elements": L.n})
    return 0


def cmd_analyze(args) -> int:
    L = io.read_oa(args.input)
    rep = classify(L)
    payload = {
        "classification": _classification_dict(rep, L),
        "center": [L.labels[a] for a in center(L)],
        "blocks": [sorted(L.labels[a] for a in b) for b in blocks(L)],
        "boolean_blocks": [
            sorted(L.labels[a] for a in b) for b in boolean_blocks(L)
        ],
        "central_decomposition": [
            io.oa_to_dict(f) for f in central_decomposition(L)
        ],
    }
    _emit(args, payload)
    return 0


def cmd_logic(args) -> int:
    T = io.read_testspace(args.input)
    lq = logic(T)
    _emit(args, io.oa_to_dict(lq.oa))
    return 0


def cmd_canonical(args) -> int:
    L = io.read_oa(args.input)
    _emit(args, io.testspace_to_dict(canonical_testspace(L)))
    return 0


def cmd_roundtrip(args) -> int:
    L = io.read_oa(args.input)
    rt = representation_roundtrip(L)
    _emit(
        args,
        {
            "isomorphic": True,
            "classes": len(rt.quotient.classes),
            "witness": rt.witness,
        },
    )
    return 0


def cmd_topo_check(args) -> int:
    L = io.read_oa(args.input)
    T = io.read_topology(args.topology)
    rep = check_toa(L, T)
    payload = {
        "perp_closed": rep.perp_closed,
        "oplus_continuous": rep.oplus_continuous,
        "comp_continuous": rep.comp_continuous,
        "hausdorff": rep.hausdorff,
        "order_closed": rep.order_closed,
        "stably_ordered": rep.stably_ordered,
        "witnesses": {
            key: _witness_json(L, key, val)
            for key, val in sorted(rep.witnesses.items())
        },
    }
    _emit(args, payload)
    return 0 if rep.all_axioms() and rep.stably_ordered else 1


def _witness_json(L, key, w):
    def open_labels(mask):
        return [L.labels[i] for i in bits(mask)]

    if key in ("perp_closed", "order_closed", "hausdorff"):
        return {"pair": [L.labels[w[0]], L.labels[w[1]]]}
    if key == "oplus_continuous":
        (a, b), mask = w
        return {"at": [L.labels[a], L.labels[b]], "open": open_labels(mask)}
    if key in ("comp_continuous", "stably_ordered"):
        return {"open": open_labels(w)}
    return w


def cmd_states(args) -> int:
    L = io.read_oa(args.input)
    verts = state_vertices(L)
    payload = {
        "vertices": [
            {L.labels[i]: _frac_str(v) for i, v in enumerate(s.values)}
            for s in verts
        ]
    }
    _emit(args, payload)
    return 0


def _frac_str(v: Fraction) -> str:
    return format_fraction(v)


def cmd_export_dot(args) -> int:
    L = io.read_oa(args.input)
    out = []
    if args.kind in ("hasse", "both"):
        out.append(dot.hasse_dot(L))
    if args.kind in ("greechie", "both"):
        out.append(dot.greechie_dot(L))
    sys.stdout.write("\n".join(out))
    return 0


# -- demos -------------------------------------------------------------------


def demo_interval_model() -> list[str]:
    """The two-interval model: an open set whose up-set is not open, so the
    model is not stably ordered.

    The textbook witness [0,1/4] is subtly off: it contains 0, which sits
    below everything, so its exact up-set is the whole carrier.  Dropping
    the zero gives the honest witness (0,1/4].
    """
    carrier = two_interval_carrier()
    left = closed(0, Fraction(1, 4))
    lines = [f"carrier: {format_interval_set(carrier)}"]
    assert iv_is_open(left) and iv_is_closed(left)
    lines.append(f"the set {format_interval_set(left)} is clopen in the carrier")
    assert iv_upset(left) == carrier
    lines.append(
        f"exact upset of {format_interval_set(left)}: the whole carrier"
        " (0 sits below everything), which is open"
    )
    claimed = left.union(point(1))
    assert not iv_is_open(claimed)
    lines.append(
        f"the often-quoted value {format_interval_set(claimed)} is certainly"
        " not open, but it misses the points above 0"
    )
    witness = iset((0, Fraction(1, 4), False, True))
    up = iv_upset(witness)
    assert iv_is_open(witness) and not iv_is_open(up)
    lines.append(
        f"honest witness: {format_interval_set(witness)} is open, its upset"
        f" {format_interval_set(up)} is not open"
    )
    lines.append("verdict: not open; the model is not stably ordered")
    return lines


def demo_projection_meet(seed=None) -> list[str]:
    """Projections converge while their meets jump in rank."""
    lines = ["tilting a line against a fixed axis in dimension 2:"]
    for exp in range(1, 7):
        theta = 10.0 ** (-exp)
        rep = meet_discontinuity_witness(theta)
        assert abs(rep.norm_gap - rep.closed_form_gap) < 1e-9
        assert rep.meet_rank_at_theta == 0 and rep.meet_rank_at_limit == 1
        lines.append(
            f"  theta=1e-{exp}: |P_theta - P_0| = {rep.norm_gap:.9e}"
            f" (= sin theta), meet ranks {rep.meet_rank_at_theta} vs"
            f" {rep.meet_rank_at_limit}"
        )
    lines.append("verdict: the meet is not continuous in the operator norm")
    if seed is not None:
        sep = rank_separation_check(3, 200, seed=seed)
        assert sep >= 1 - 1e-9
        lines.append(
            f"seeded contrast: unequal-rank pairs stay at distance >= {sep:.9f}"
        )
    return lines


def demo_wtriangle() -> list[str]:
    """The triangle logic: 14 elements, algebraic, not orthocoherent."""
    from .core import orthocoherence_witness

    T = catalog.wright_triangle()
    L = logic(T).oa
    assert L.n == 14
    wit = orthocoherence_witness(L)
    assert wit is not None
    rep = classify(L)
    assert not rep.orthocoherent and rep.simple
    a, b, c = (L.labels[i] for i in wit)
    lines = [
        "three 3-outcome tests pasted in a loop",
        f"logic has {L.n} elements; simple: {rep.simple}",
        f"pairwise orthogonal without a joint sum: {a}, {b}, {c}",
        "verdict: not orthocoherent, hence not an orthomodular poset",
    ]
    return lines


DEMOS = {
    "example3.3": demo_interval_model,
    "interval-model": demo_interval_model,
    "example2.5": demo_projection_meet,
    "projection-meet": demo_projection_meet,
    "wtriangle": demo_wtriangle,
}


def cmd_demo(args) -> int:
    fn = DEMOS[args.name]
    if fn is demo_projection_meet:
        lines = fn(seed=args.seed)
    else:
        lines = fn()
    if args.format == "json":
        sys.stdout.write(io.dumps({"demo": args.name, "lines": lines}))
    else:
        print("\n".join(lines))
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="oalab",
        description="finite orthoalgebra and test-space workbench",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        p.add_argument("--format", choices=("json", "text"), default="json")
        return p

    p = add("verify", cmd_verify, help="validate an orthoalgebra file")
    p.add_argument("input")
    p = add("analyze", cmd_analyze, help="classification, center, blocks, factors")
    p.add_argument("input")
    p = add("logic", cmd_logic, help="logic of a test space, as an orthoalgebra file")
    p.add_argument("input")
    p = add("canonical", cmd_canonical, help="canonical test space of an orthoalgebra")
    p.add_argument("input")
    p = add("roundtrip", cmd_roundtrip, help="representation round-trip witness")
    p.add_argument("input")
    p = add("topo-check", cmd_topo_check, help="topological-orthoalgebra report")
    p.add_argument("input")
    p.add_argument("--topology", required=True)
    p = add("states", cmd_states, help="exact state polytope vertices")
    p.add_argument("input")
    p = add("demo", cmd_demo, help="run a named built-in demonstration")
    p.add_argument("name", choices=sorted(DEMOS))
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-10)
    p = add("export-dot", cmd_export_dot, help="Hasse and Greechie diagrams in DOT")
    p.add_argument("input")
    p.add_argument("--kind", choices=("hasse", "greechie", "both"), default="both")

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OalabError as exc:
        sys.stdout.write(io.dumps({"error": type(exc).__name__, "message": str(exc)}))
        return 1


if __name__ == "__main__":
    sys.exit(main())
