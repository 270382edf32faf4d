"""JSON readers and writers for every on-disk format.

Formats:
  orthoalgebra  {"elements": [...], "zero": l, "one": l, "sum": [[a,b,c],...]}
  test space    {"outcomes": [...], "tests": [[...], ...]}
  topology      {"n": int, "opens": [[i,...],...]} or {"n": int, "subbasis": [...]}
  interval set  [[lo_num, lo_den, hi_num, hi_den, lo_closed, hi_closed], ...]
  projection    [[[re, im], ...], ...]  (rows of complex entries)
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .core import FiniteOrthoalgebra, build_oa, bits
from .errors import ParseError
from .intervals import RationalIntervalSet, iset
from .projections import Projection, projection
from .testspace import TestSpace, make_testspace
from .topology import FiniteTopology, make_topology


def _load(path) -> object:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _need(d: dict, key: str, what: str):
    if not isinstance(d, dict) or key not in d:
        raise ParseError(f"{what} needs key {key!r}")
    return d[key]


# -- orthoalgebras ----------------------------------------------------------


def oa_to_dict(L: FiniteOrthoalgebra) -> dict:
    sums = []
    for a in range(L.n):
        for b in range(a, L.n):
            c = L.table[a][b]
            if c is not None:
                sums.append([L.labels[a], L.labels[b], L.labels[c]])
    return {
        "elements": list(L.labels),
        "zero": L.labels[L.zero],
        "one": L.labels[L.one],
        "sum": sums,
    }


def oa_from_dict(d: dict) -> FiniteOrthoalgebra:
    elements = _need(d, "elements", "orthoalgebra file")
    zero = _need(d, "zero", "orthoalgebra file")
    one = _need(d, "one", "orthoalgebra file")
    sums = _need(d, "sum", "orthoalgebra file")
    try:
        triples = [(str(a), str(b), str(c)) for a, b, c in sums]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"sum entries must be [a,b,c] triples: {exc}") from exc
    return build_oa([str(e) for e in elements], str(zero), str(one), triples)


def read_oa(path) -> FiniteOrthoalgebra:
    return oa_from_dict(_load(path))


# -- test spaces ------------------------------------------------------------


def testspace_to_dict(T: TestSpace) -> dict:
    return {
        "outcomes": list(T.outcomes),
        "tests": [sorted(T.outcomes[i] for i in t) for t in T.tests],
    }


def testspace_from_dict(d: dict) -> TestSpace:
    outcomes = _need(d, "outcomes", "test space file")
    tests = _need(d, "tests", "test space file")
    return make_testspace([str(o) for o in outcomes], [[str(x) for x in t] for t in tests])


def read_testspace(path) -> TestSpace:
    return testspace_from_dict(_load(path))


# -- topologies -------------------------------------------------------------


def topology_to_dict(T: FiniteTopology) -> dict:
    return {"n": T.n, "opens": [bits(m) for m in T.sorted_opens()]}


def topology_from_dict(d: dict) -> FiniteTopology:
    n = _need(d, "n", "topology file")
    if not isinstance(n, int) or n < 1:
        raise ParseError("topology needs a positive integer carrier size")
    if "opens" in d:
        T = make_topology(n, d["opens"])
        given = {sum(1 << i for i in s) for s in d["opens"]} | {0, (1 << n) - 1}
        if set(T.opens) != given:
            raise ParseError("'opens' is not closed under union and intersection")
        return T
    if "subbasis" in d:
        return make_topology(n, d["subbasis"])
    raise ParseError("topology file needs 'opens' or 'subbasis'")


def read_topology(path) -> FiniteTopology:
    return topology_from_dict(_load(path))


# -- interval sets ----------------------------------------------------------


def intervalset_to_list(S: RationalIntervalSet) -> list:
    return [
        [lo.numerator, lo.denominator, hi.numerator, hi.denominator, lc, hc]
        for lo, hi, lc, hc in S.pieces
    ]


def intervalset_from_list(rows) -> RationalIntervalSet:
    try:
        return iset(
            *(
                (Fraction(ln, ld), Fraction(hn, hd), bool(lc), bool(hc))
                for ln, ld, hn, hd, lc, hc in rows
            )
        )
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad interval row: {exc}") from exc


# -- projections ------------------------------------------------------------


def projection_to_rows(P: Projection) -> list:
    return [
        [[float(np.real(v)), float(np.imag(v))] for v in row] for row in P.matrix
    ]


def projection_from_rows(rows, tol: float = 1e-10) -> Projection:
    try:
        m = np.array(
            [[complex(re, im) for re, im in row] for row in rows]
        )
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad projection rows: {exc}") from exc
    if np.allclose(m.imag, 0.0):
        m = m.real
    return projection(m, tol)


def dumps(obj) -> str:
    """Stable JSON rendering used by the CLI: fixed indentation, keys in
    construction order, trailing newline."""
    return json.dumps(obj, indent=2) + "\n"
