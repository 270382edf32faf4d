"""States on finite orthoalgebras and exact state-polytope vertices.

A state is a [0,1]-valued assignment that is 1 on the unit and additive on
orthogonal pairs.  All arithmetic here is exact rational: vertex counts are
decisions, not estimates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Optional, Sequence

import sympy

from .core import FiniteOrthoalgebra, bits
from .errors import DomainMismatch


@dataclass(frozen=True)
class State:
    """Exact state: one Fraction per element index."""

    values: tuple[Fraction, ...]

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]

    def as_dict(self, L: FiniteOrthoalgebra) -> dict[str, Fraction]:
        return {L.labels[i]: v for i, v in enumerate(self.values)}


def _coerce(L: FiniteOrthoalgebra, f) -> tuple[Fraction, ...]:
    if isinstance(f, State):
        vals = f.values
    elif isinstance(f, Mapping):
        missing = [lab for lab in L.labels if lab not in f]
        if missing:
            raise DomainMismatch(f"state undefined on {missing}")
        vals = tuple(Fraction(f[lab]) for lab in L.labels)
    else:
        vals = tuple(Fraction(v) for v in f)
    if len(vals) != L.n:
        raise DomainMismatch(f"state has {len(vals)} values, algebra has {L.n}")
    return vals


def is_state(L: FiniteOrthoalgebra, f) -> bool:
    """f(1) = 1, values in [0,1], additive on every orthogonal pair."""
    vals = _coerce(L, f)
    if vals[L.one] != 1:
        return False
    if any(v < 0 or v > 1 for v in vals):
        return False
    for a, b in L.defined_pairs:
        if a > b:
            continue
        if vals[L.table[a][b]] != vals[a] + vals[b]:
            return False
    return True


def is_order_determining(L: FiniteOrthoalgebra, states: Iterable[State]) -> bool:
    """Whenever p is not below q, some state separates them the right way."""
    sts = [_coerce(L, s) for s in states]
    for p in range(L.n):
        for q in range(L.n):
            if L.le(p, q):
                continue
            if not any(s[p] > s[q] for s in sts):
                return False
    return True


def convex_combination(
    states: Sequence[State], weights: Sequence[Fraction]
) -> State:
    weights = [Fraction(w) for w in weights]
    if sum(weights) != 1 or any(w < 0 for w in weights):
        raise ValueError("weights must be a rational convex combination")
    n = len(states[0].values)
    vals = tuple(
        sum((w * s.values[i] for w, s in zip(weights, states)), Fraction(0))
        for i in range(n)
    )
    return State(vals)


def _equality_system(L: FiniteOrthoalgebra):
    rows, rhs = [], []
    for a, b in L.defined_pairs:
        if a > b:
            continue
        row = [0] * L.n
        row[a] -= 1
        row[b] -= 1
        row[L.table[a][b]] += 1
        if any(row):
            rows.append(row)
            rhs.append(0)
    row = [0] * L.n
    row[L.one] = 1
    rows.append(row)
    rhs.append(1)
    return rows, rhs


def state_vertices(
    L: FiniteOrthoalgebra, max_subsets: int = 500_000
) -> list[State]:
    """Vertices of the state polytope by exact enumeration.

    The additivity equations cut out an affine subspace; within it the box
    constraints 0 <= f(a) <= 1 define a polytope whose vertices are found by
    solving every maximal subsystem of active constraints, exactly.
    """
    rows, rhs = _equality_system(L)
    A = sympy.Matrix(rows)
    b = sympy.Matrix(rhs)
    try:
        sol, params = A.gauss_jordan_solve(b)
    except ValueError:
        return []  # inconsistent: no states at all
    d = len(params)
    subs0 = {p: 0 for p in params}
    particular = sol.subs(subs0)
    basis = []
    for p in params:
        col = sol.subs({q: (1 if q == p else 0) for q in params}) - particular
        basis.append(col)

    # inequality rows: coeffs . x <= bound, from 0 <= value_i <= 1
    ineqs: list[tuple[tuple, sympy.Rational]] = []
    seen = set()
    for i in range(L.n):
        coeffs = tuple(basis[j][i] for j in range(d))
        const = particular[i]
        if all(c == 0 for c in coeffs):
            if const < 0 or const > 1:
                return []
            continue
        for row, bound in (
            (coeffs, 1 - const),
            (tuple(-c for c in coeffs), const),
        ):
            key = (row, bound)
            if key not in seen:
                seen.add(key)
                ineqs.append((row, bound))

    if d == 0:
        vert = tuple(Fraction(int(v.p), int(v.q)) for v in particular)
        ok = all(0 <= v <= 1 for v in vert)
        return [State(vert)] if ok else []

    if comb(len(ineqs), d) > max_subsets:
        raise ValueError(
            f"vertex enumeration too large: C({len(ineqs)},{d}) subsystems"
        )

    found: set[tuple[Fraction, ...]] = set()
    for subset in combinations(range(len(ineqs)), d):
        M = sympy.Matrix([list(ineqs[i][0]) for i in subset])
        if M.rank() < d:
            continue
        rhs_v = sympy.Matrix([ineqs[i][1] for i in subset])
        x = M.LUsolve(rhs_v)
        if all(
            sum(c * x[j] for j, c in enumerate(row)) <= bound
            for row, bound in ineqs
        ):
            point = particular + sum(
                (basis[j] * x[j] for j in range(d)), sympy.zeros(L.n, 1)
            )
            vert = tuple(Fraction(int(v.p), int(v.q)) for v in point)
            found.add(vert)
    return [State(v) for v in sorted(found)]


def vertex_certificate(L: FiniteOrthoalgebra, state: State) -> bool:
    """Independent extremality certificate for a claimed polytope vertex.

    A feasible point is a vertex iff its active constraints (equalities plus
    tight bounds) have full rank n.
    """
    if not is_state(L, state):
        return False
    rows, _ = _equality_system(L)
    active = [list(r) for r in rows]
    for i, v in enumerate(state.values):
        if v == 0 or v == 1:
            row = [0] * L.n
            row[i] = 1
            active.append(row)
    return sympy.Matrix(active).rank() == L.n
