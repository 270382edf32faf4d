"""Finite orthoalgebras given as explicit partial-sum tables.

An orthoalgebra here is a finite set with a partial, commutative, strongly
associative binary sum, a zero and a unit, unique complements, and no
nontrivial self-orthogonal element.  Everything else (order, complement,
orthogonality, atoms, dimension) is derived from the table.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Optional, Sequence

import networkx as nx

from .errors import (
    AxiomViolation,
    DuplicateLabel,
    InternalInconsistency,
    NotComparable,
    UnknownLabel,
)


class Violation(NamedTuple):
    axiom: str
    witness: tuple[str, ...]
    detail: str


#: Axiom names used in validation diagnostics.
AXIOM_NAMES = (
    "nondegenerate-unit",
    "zero-identity",
    "commutativity",
    "associativity",
    "unique-complement",
    "self-orthogonality",
)


def bits(mask: int):
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class FiniteOrthoalgebra:
    """A validated orthoalgebra on ``n`` labelled elements.

    ``table[a][b]`` is the index of ``a (+) b`` or None when the sum is
    undefined.  ``up[a]`` and ``perp[a]`` are bitmasks over element indices;
    ``up[a]`` holds every ``b`` with ``a <= b``, ``perp[a]`` every ``b``
    orthogonal to ``a``.  Instances are immutable.
    """

    labels: tuple[str, ...]
    zero: int
    one: int
    table: tuple[tuple[Optional[int], ...], ...]
    complement: tuple[int, ...]
    up: tuple[int, ...]
    perp: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabel(label) from None

    def sum_of(self, a: int, b: int) -> Optional[int]:
        return self.table[a][b]

    def is_defined(self, a: int, b: int) -> bool:
        return self.table[a][b] is not None

    def le(self, a: int, b: int) -> bool:
        return bool((self.up[a] >> b) & 1)

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.le(a, b)

    def is_perp(self, a: int, b: int) -> bool:
        return bool((self.perp[a] >> b) & 1)

    @cached_property
    def down(self) -> tuple[int, ...]:
        d = [0] * self.n
        for a in range(self.n):
            m = self.up[a]
            for b in bits(m):
                d[b] |= 1 << a
        return tuple(d)

    @cached_property
    def defined_pairs(self) -> tuple[tuple[int, int], ...]:
        """All ordered pairs (a, b) with a (+) b defined."""
        return tuple(
            (a, b)
            for a in range(self.n)
            for b in range(self.n)
            if self.table[a][b] is not None
        )

    def atoms(self) -> list[int]:
        z = self.zero
        return [
            a
            for a in range(self.n)
            if a != z and self.down[a] == (1 << z) | (1 << a)
        ]

    def elements(self) -> range:
        return range(self.n)

    def __repr__(self):
        return f"FiniteOrthoalgebra({self.n} elements, zero={self.labels[self.zero]!r}, one={self.labels[self.one]!r})"


# ---------------------------------------------------------------------------
# construction and validation


def validate_oa_table(
    labels: Sequence[str],
    zero: str,
    one: str,
    sums: Iterable[tuple[str, str, str]],
) -> list[Violation]:
    """Check every axiom on the given table; return all violations found.

    Label problems (duplicates, unknown references) are input errors and
    raise immediately instead of being reported as violations.
    """
    labels = list(labels)
    idx: dict[str, int] = {}
    for i, lab in enumerate(labels):
        if lab in idx:
            raise DuplicateLabel(lab)
        idx[lab] = i
    for lab in (zero, one):
        if lab not in idx:
            raise UnknownLabel(lab)
    n = len(labels)
    z, u = idx[zero], idx[one]

    table: list[list[Optional[int]]] = [[None] * n for _ in range(n)]
    seen: set[tuple[str, tuple[str, ...]]] = set()
    violations: list[Violation] = []

    def report(axiom, witness, detail):
        key = (axiom, witness)
        if key not in seen:
            seen.add(key)
            violations.append(Violation(axiom, witness, detail))

    for la, lb, lc in sums:
        for lab in (la, lb, lc):
            if lab not in idx:
                raise UnknownLabel(lab)
        a, b, c = idx[la], idx[lb], idx[lc]
        for x, y in ((a, b), (b, a)):
            cur = table[x][y]
            if cur is None:
                table[x][y] = c
            elif cur != c:
                report(
                    "commutativity",
                    tuple(sorted((labels[x], labels[y]))),
                    f"conflicting entries {labels[cur]} and {labels[c]} for the pair",
                )

    if z == u:
        report("nondegenerate-unit", (zero,), "zero and unit coincide")

    for a in range(n):
        if table[z][a] != a:
            report(
                "zero-identity",
                (labels[a],),
                "0 (+) a must be defined and equal a",
            )

    for a in range(n):
        if a != z and table[a][a] is not None:
            report(
                "self-orthogonality",
                (labels[a],),
                "a (+) a is defined for a nonzero element",
            )

    for a in range(n):
        comps = [b for b in range(n) if table[a][b] == u]
        if len(comps) != 1:
            report(
                "unique-complement",
                (labels[a],) + tuple(labels[b] for b in comps),
                f"element has {len(comps)} complements, needs exactly one",
            )

    # Strong associativity: whenever a(+)b and (a(+)b)(+)c are defined, b(+)c
    # and a(+)(b(+)c) must be too, with equal results.
    for a in range(n):
        row_a = table[a]
        for b in range(n):
            s = row_a[b]
            if s is None:
                continue
            row_s = table[s]
            for c in range(n):
                t = row_s[c]
                if t is None:
                    continue
                bc = table[b][c]
                if bc is None:
                    report(
                        "associativity",
                        (labels[a], labels[b], labels[c]),
                        "b (+) c undefined although (a (+) b) (+) c is defined",
                    )
                    continue
                abc = row_a[bc]
                if abc is None:
                    report(
                        "associativity",
                        (labels[a], labels[b], labels[c]),
                        "a (+) (b (+) c) undefined although (a (+) b) (+) c is defined",
                    )
                elif abc != t:
                    report(
                        "associativity",
                        (labels[a], labels[b], labels[c]),
                        "the two associations disagree",
                    )
    return violations


def build_oa(
    labels: Sequence[str],
    zero: str,
    one: str,
    sums: Iterable[tuple[str, str, str]],
) -> FiniteOrthoalgebra:
    """Validate a partial-sum table and return the derived structure.

    The table lists each unordered pair once; commutativity is synthesized.
    Raises AxiomViolation carrying every violated axiom with witnesses.
    """
    sums = [tuple(t) for t in sums]
    violations = validate_oa_table(labels, zero, one, sums)
    if violations:
        raise AxiomViolation(violations)

    labels = tuple(labels)
    n = len(labels)
    idx = {lab: i for i, lab in enumerate(labels)}
    z, u = idx[zero], idx[one]
    table: list[list[Optional[int]]] = [[None] * n for _ in range(n)]
    for la, lb, lc in sums:
        a, b, c = idx[la], idx[lb], idx[lc]
        table[a][b] = c
        table[b][a] = c

    complement = [0] * n
    perp = [0] * n
    up = [0] * n
    for a in range(n):
        mask = 0
        upmask = 0
        for b in range(n):
            c = table[a][b]
            if c is not None:
                mask |= 1 << b
                upmask |= 1 << c
                if c == u:
                    complement[a] = b
        perp[a] = mask
        up[a] = upmask

    oa = FiniteOrthoalgebra(
        labels=labels,
        zero=z,
        one=u,
        table=tuple(tuple(row) for row in table),
        complement=tuple(complement),
        up=tuple(up),
        perp=tuple(perp),
    )
    _sanity_check(oa)
    return oa


def _sanity_check(L: FiniteOrthoalgebra):
    # These hold as theorems once the axioms pass; a failure means the
    # validator itself is broken.
    for a in range(L.n):
        if L.complement[L.complement[a]] != a:
            raise InternalInconsistency(f"complement not involutive at {L.labels[a]}")
        for b in bits(L.up[a]):
            if b != a and L.le(b, a):
                raise InternalInconsistency(
                    f"derived order not antisymmetric at ({L.labels[a]},{L.labels[b]})"
                )


# ---------------------------------------------------------------------------
# basic operations


def ominus(L: FiniteOrthoalgebra, a: int, b: int) -> int:
    """The unique c with b = a (+) c, for a <= b.

    Computed as (a (+) b')'; uniqueness is a consequence of cancellativity.
    """
    if not L.le(a, b):
        raise NotComparable(f"{L.labels[a]} is not below {L.labels[b]}")
    s = L.sum_of(a, L.complement[b])
    if s is None:
        raise InternalInconsistency("a <= b but a (+) b' undefined")
    c = L.complement[s]
    if L.sum_of(a, c) != b:
        raise InternalInconsistency("difference formula failed")
    return c


def osum_event(L: FiniteOrthoalgebra, elems: Iterable[int]) -> Optional[int]:
    """Orthogonal sum of a set of elements, or None when undefined.

    Folds the table in index order; by strong associativity the result (and
    definedness) is independent of the order.  The empty sum is 0.
    """
    acc = L.zero
    for e in sorted(set(elems)):
        nxt = L.sum_of(acc, e)
        if nxt is None:
            return None
        acc = nxt
    return acc


def is_jointly_orthogonal(L: FiniteOrthoalgebra, elems: Iterable[int]) -> bool:
    """True when the whole set has a defined orthogonal sum."""
    return osum_event(L, elems) is not None


def meet(L: FiniteOrthoalgebra, a: int, b: int) -> Optional[int]:
    """Greatest lower bound in the derived order, or None."""
    lb = L.down[a] & L.down[b]
    for m in bits(lb):
        if lb & ~L.down[m] == 0:
            return m
    return None


def join(L: FiniteOrthoalgebra, a: int, b: int) -> Optional[int]:
    ub = L.up[a] & L.up[b]
    for m in bits(ub):
        if ub & ~L.up[m] == 0:
            return m
    return None


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class ClassificationReport:
    orthocoherent: bool
    omp: bool
    lattice: bool
    boolean: bool
    simple: bool
    height: int
    num_atoms: int
    dimension: tuple[int, ...]


def _is_orthocoherent(L: FiniteOrthoalgebra) -> bool:
    # Triples with a repeated or zero member are summable automatically, so
    # only distinct nonzero triples can fail.
    nz = [a for a in range(L.n) if a != L.zero]
    for i, a in enumerate(nz):
        for j in range(i + 1, len(nz)):
            b = nz[j]
            s = L.table[a][b]
            if s is None:
                continue
            for k in range(j + 1, len(nz)):
                c = nz[k]
                if not (L.is_perp(b, c) and L.is_perp(a, c)):
                    continue
                if L.table[s][c] is None:
                    return False
    return True


def orthocoherence_witness(
    L: FiniteOrthoalgebra,
) -> Optional[tuple[int, int, int]]:
    """A pairwise-orthogonal triple without a joint sum, if one exists."""
    nz = [a for a in range(L.n) if a != L.zero]
    for a, b, c in itertools.combinations(nz, 3):
        if (
            L.is_perp(a, b)
            and L.is_perp(b, c)
            and L.is_perp(a, c)
            and L.table[L.table[a][b]][c] is None
        ):
            return (a, b, c)
    return None


def _is_omp(L: FiniteOrthoalgebra) -> bool:
    # The sum of an orthogonal pair must be the join of the pair.
    for a, b in L.defined_pairs:
        if a > b:
            continue
        j = join(L, a, b)
        if j is None or j != L.table[a][b]:
            return False
    return True


def _is_lattice(L: FiniteOrthoalgebra) -> bool:
    for a in range(L.n):
        for b in range(a + 1, L.n):
            if meet(L, a, b) is None:
                return False
    return True


def _is_boolean(L: FiniteOrthoalgebra) -> bool:
    if not _is_lattice(L):
        return False
    n = L.n
    meets = [[meet(L, a, b) for b in range(n)] for a in range(n)]
    joins = [[join(L, a, b) for b in range(n)] for a in range(n)]
    for a in range(n):
        if meets[a][L.complement[a]] != L.zero or joins[a][L.complement[a]] != L.one:
            return False
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if meets[a][joins[b][c]] != joins[meets[a][b]][meets[a][c]]:
                    return False
    return True


def height(L: FiniteOrthoalgebra) -> int:
    """Length (number of covering steps) of the longest chain from 0 to 1."""
    order = sorted(range(L.n), key=lambda a: bin(L.down[a]).count("1"))
    h = [0] * L.n
    for b in order:
        best = 0
        for a in bits(L.down[b]):
            if a != b and h[a] + 1 > best:
                best = h[a] + 1
        h[b] = best
    return h[L.one]


def dimension(L: FiniteOrthoalgebra) -> tuple[int, ...]:
    """dim(a) = least number of atoms with orthogonal sum a; dim(0) = 0.

    Breadth-first search over the sum table, adding one atom per step.
    """
    at = L.atoms()
    dim = [-1] * L.n
    dim[L.zero] = 0
    frontier = [L.zero]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for x in frontier:
            row = L.table[x]
            for t in at:
                y = row[t]
                if y is not None and dim[y] < 0:
                    dim[y] = d
                    nxt.append(y)
        frontier = nxt
    if min(dim) < 0:
        raise InternalInconsistency("finite orthoalgebra with a non-atomic element")
    return tuple(dim)


def classify(L: FiniteOrthoalgebra) -> ClassificationReport:
    """Structure report: coherence, lattice properties, height, dimension."""
    ortho = _is_orthocoherent(L)
    omp = _is_omp(L)
    if ortho != omp:
        raise InternalInconsistency(
            "orthocoherence and sum-is-join disagree; both characterize OMPs"
        )
    return ClassificationReport(
        orthocoherent=ortho,
        omp=omp,
        lattice=_is_lattice(L),
        boolean=_is_boolean(L),
        simple=set(center(L)) == {L.zero, L.one},
        height=height(L),
        num_atoms=len(L.atoms()),
        dimension=dimension(L),
    )


# ---------------------------------------------------------------------------
# the OMP / cancellativity / complement-forcing equivalence


@dataclass(frozen=True)
class OmpEquivalenceReport:
    """The three equivalent conditions, checked independently.

    Only applicable when the partial sum agrees with the join wherever it is
    defined; otherwise ``applicable`` is False and ``witness`` holds an
    orthogonal pair whose sum is a merely minimal upper bound.
    """

    applicable: bool
    witness: Optional[tuple[int, int]]
    omp: Optional[bool]
    complement_forcing: Optional[bool]
    cancellative: Optional[bool]


def omp_equivalence_report(L: FiniteOrthoalgebra) -> OmpEquivalenceReport:
    for a, b in L.defined_pairs:
        if a > b:
            continue
        j = join(L, a, b)
        if j != L.table[a][b]:
            return OmpEquivalenceReport(False, (a, b), None, None, None)

    # (a) orthomodular identity on the derived poset
    omp = True
    for b in range(L.n):
        for a in bits(L.down[b]):
            m = meet(L, b, L.complement[a])
            if m is None or join(L, m, a) != b:
                omp = False
    # (b) the unit forces complements
    forcing = all(
        L.table[a][b] != L.one or b == L.complement[a]
        for a in range(L.n)
        for b in range(L.n)
    )
    # (c) cancellativity of the partial sum
    cancellative = True
    for a in range(L.n):
        seen: dict[int, int] = {}
        for b in bits(L.perp[a]):
            s = L.table[a][b]
            if s in seen and seen[s] != b:
                cancellative = False
            seen[s] = b
    if not (omp == forcing == cancellative):
        raise InternalInconsistency(
            f"equivalence broken: omp={omp} forcing={forcing} cancel={cancellative}"
        )
    return OmpEquivalenceReport(True, None, omp, forcing, cancellative)


# ---------------------------------------------------------------------------
# compatibility, Mackey decompositions, center


class MackeyTriple(NamedTuple):
    a1: int
    c: int
    b1: int


def mackey(L: FiniteOrthoalgebra, a: int, b: int) -> list[MackeyTriple]:
    """All Mackey decompositions (a1, c, b1) of the pair (a, b).

    a = a1 (+) c, b = c (+) b1, and the triple sum a1 (+) c (+) b1 exists
    (equivalently a is orthogonal to b1).  Ordered by the middle element.
    """
    out = []
    both = L.down[a] & L.down[b]
    for c in bits(both):
        b1 = ominus(L, c, b)
        if L.is_perp(a, b1):
            out.append(MackeyTriple(ominus(L, c, a), c, b1))
    return out


def mackey_set(L: FiniteOrthoalgebra) -> set[tuple[int, int, int]]:
    """The relation M(L): triples (a, c, b) with c <= a, c <= b, a - c _|_ b."""
    out = set()
    for c in range(L.n):
        above = bits(L.up[c])
        for a in above:
            ac = ominus(L, c, a)
            pm = L.perp[ac]
            for b in above:
                if (pm >> b) & 1:
                    out.add((a, c, b))
    return out


def are_compatible(L: FiniteOrthoalgebra, a: int, b: int) -> bool:
    return bool(mackey(L, a, b))


def _central_by_interval_map(L: FiniteOrthoalgebra, a: int) -> bool:
    # (x, y) -> x (+) y from [0,a] x [0,a'] must be an isomorphism onto L.
    ap = L.complement[a]
    da, dap = L.down[a], L.down[ap]
    xs, ys = bits(da), bits(dap)
    if len(xs) * len(ys) != L.n:
        return False
    pairs = [(x, y) for x in xs for y in ys]
    images = []
    for x, y in pairs:
        v = L.table[x][y]
        if v is None:
            raise InternalInconsistency("x <= a and y <= a' must be orthogonal")
        images.append(v)
    if len(set(images)) != L.n:
        return False

    def perp_in_interval(x1, x2, top_mask):
        s = L.table[x1][x2]
        return s is not None and (top_mask >> s) & 1

    for i, (x1, y1) in enumerate(pairs):
        for j, (x2, y2) in enumerate(pairs):
            dom = perp_in_interval(x1, x2, da) and perp_in_interval(y1, y2, dap)
            cod = L.is_perp(images[i], images[j])
            if dom != cod:
                return False
            if dom:
                s = L.table[L.table[x1][x2]][L.table[y1][y2]]
                if s != L.table[images[i]][images[j]]:
                    return False
    return True


def is_central(L: FiniteOrthoalgebra, a: int) -> bool:
    """Centrality checked two ways and cross-compared.

    (i) unique Mackey decomposition against every element; (ii) the interval
    pairing map is an isomorphism.  Disagreement is an implementation bug.
    """
    by_mackey = all(len(mackey(L, a, b)) == 1 for b in range(L.n))
    by_map = _central_by_interval_map(L, a)
    if by_mackey != by_map:
        raise InternalInconsistency(
            f"centrality criteria disagree at {L.labels[a]}: "
            f"mackey={by_mackey} interval-map={by_map}"
        )
    return by_mackey


def center(L: FiniteOrthoalgebra) -> list[int]:
    """All central elements; always a Boolean sub-orthoalgebra (verified)."""
    cen = [a for a in range(L.n) if is_central(L, a)]
    center_subalgebra(L, _precomputed=cen)
    return cen


def center_subalgebra(
    L: FiniteOrthoalgebra, _precomputed: Optional[list[int]] = None
) -> tuple[FiniteOrthoalgebra, list[int]]:
    """The center as a standalone orthoalgebra plus its embedding indices."""
    cen = (
        _precomputed
        if _precomputed is not None
        else [a for a in range(L.n) if is_central(L, a)]
    )
    cen_set = set(cen)
    if L.zero not in cen_set or L.one not in cen_set:
        raise InternalInconsistency("center must contain 0 and 1")
    for a in cen:
        if L.complement[a] not in cen_set:
            raise InternalInconsistency("center not closed under complement")
        for b in cen:
            s = L.table[a][b]
            if s is not None and s not in cen_set:
                raise InternalInconsistency("center not closed under the sum")
    sub = _restriction(L, cen)
    if not _is_boolean(sub):
        raise InternalInconsistency("center is not Boolean")
    return sub, cen


def _restriction(L: FiniteOrthoalgebra, subset: list[int]) -> FiniteOrthoalgebra:
    subset = sorted(subset)
    pos = {e: i for i, e in enumerate(subset)}
    sums = []
    for i, a in enumerate(subset):
        for b in subset[i:]:
            s = L.table[a][b]
            if s is not None and s in pos:
                sums.append((L.labels[a], L.labels[b], L.labels[s]))
    return build_oa(
        [L.labels[e] for e in subset], L.labels[L.zero], L.labels[L.one], sums
    )


# ---------------------------------------------------------------------------
# intervals, products, horizontal sums


def interval(L: FiniteOrthoalgebra, a: int) -> FiniteOrthoalgebra:
    """The interval [0, a] with x (+) y kept only when the sum stays below a.

    Rejects a = 0: the one-element table has no distinct zero and unit.
    """
    carrier = bits(L.down[a])
    inside = set(carrier)
    sums = []
    for i, x in enumerate(carrier):
        for y in carrier[i:]:
            s = L.table[x][y]
            if s is not None and s in inside and L.le(s, a):
                sums.append((L.labels[x], L.labels[y], L.labels[s]))
    return build_oa(
        [L.labels[e] for e in carrier], L.labels[L.zero], L.labels[a], sums
    )


def product(L1: FiniteOrthoalgebra, L2: FiniteOrthoalgebra) -> FiniteOrthoalgebra:
    """Componentwise product; (x,y) (+) (u,v) = (x (+) u, y (+) v)."""
    labels = [
        f"({l1},{l2})" for l1 in L1.labels for l2 in L2.labels
    ]

    def lab(a1, a2):
        return f"({L1.labels[a1]},{L2.labels[a2]})"

    sums = []
    for a1, b1 in L1.defined_pairs:
        for a2, b2 in L2.defined_pairs:
            s1 = L1.table[a1][b1]
            s2 = L2.table[a2][b2]
            # list each unordered pair once
            if (a1, a2) <= (b1, b2):
                sums.append((lab(a1, a2), lab(b1, b2), lab(s1, s2)))
    return build_oa(labels, lab(L1.zero, L2.zero), lab(L1.one, L2.one), sums)


def horizontal_sum_gen(k: int) -> FiniteOrthoalgebra:
    """Horizontal sum of k four-element Boolean algebras glued at 0 and 1.

    Elements 0, 1, x1, x1', ..., xk, xk'; the only nontrivial sums are
    xi (+) xi' = 1.  k = 1 gives the four-element Boolean algebra, k = 2 the
    six-element MO2.
    """
    if k < 1:
        raise ValueError("horizontal sum needs k >= 1")
    labels = ["0", "1"]
    for i in range(1, k + 1):
        labels += [f"x{i}", f"x{i}'"]
    sums = [("0", lab, lab) for lab in labels]
    sums += [(f"x{i}", f"x{i}'", "1") for i in range(1, k + 1)]
    return build_oa(labels, "0", "1", sums)


# ---------------------------------------------------------------------------
# blocks


def comp_of(L: FiniteOrthoalgebra, b: int) -> frozenset[int]:
    """Everything compatible with b."""
    return frozenset(a for a in range(L.n) if mackey(L, a, b))


def blocks(L: FiniteOrthoalgebra) -> list[frozenset[int]]:
    """Maximal pairwise-compatible subsets, via maximal cliques.

    The other reading of "block" (maximal Boolean sub-orthoalgebra) is
    provided by :func:`boolean_blocks`.
    """
    g = nx.Graph()
    g.add_nodes_from(range(L.n))
    for a in range(L.n):
        for b in range(a + 1, L.n):
            if mackey(L, a, b):
                g.add_edge(a, b)
    cliques = [frozenset(c) for c in nx.find_cliques(g)]
    return sorted(cliques, key=lambda s: (len(s), sorted(s)))


def boolean_blocks(L: FiniteOrthoalgebra) -> list[frozenset[int]]:
    """Maximal Boolean sub-orthoalgebras (carriers as index sets)."""

    def close(seed: frozenset[int]) -> frozenset[int]:
        s = set(seed) | {L.zero, L.one}
        changed = True
        while changed:
            changed = False
            for a in list(s):
                c = L.complement[a]
                if c not in s:
                    s.add(c)
                    changed = True
            for a, b in itertools.combinations(sorted(s), 2):
                v = L.table[a][b]
                if v is not None and v not in s:
                    s.add(v)
                    changed = True
        return frozenset(s)

    def boolean_closed(s: frozenset[int]) -> bool:
        return _is_boolean(_restriction(L, sorted(s)))

    root = close(frozenset())
    if not boolean_closed(root):
        raise InternalInconsistency("{0,1} does not generate a Boolean subalgebra")
    maximal: set[frozenset[int]] = set()
    visited: set[frozenset[int]] = set()
    stack = [root]
    while stack:
        s = stack.pop()
        if s in visited:
            continue
        visited.add(s)
        extensions = []
        for e in range(L.n):
            if e in s:
                continue
            t = close(s | {e})
            if boolean_closed(t):
                extensions.append(t)
        if not extensions:
            maximal.add(s)
        else:
            stack.extend(t for t in extensions if t not in visited)
    return sorted(maximal, key=lambda s: (len(s), sorted(s)))


# ---------------------------------------------------------------------------
# central decomposition and isomorphism


def central_decomposition(L: FiniteOrthoalgebra) -> list[FiniteOrthoalgebra]:
    """Intervals below the central atoms; their product rebuilds L."""
    sub, embed = center_subalgebra(L)
    catoms = [embed[i] for i in sub.atoms()]
    factors = [interval(L, a) for a in sorted(catoms)]
    prod = factors[0]
    for f in factors[1:]:
        prod = product(prod, f)
    if is_isomorphic(prod, L) is None:
        raise InternalInconsistency("central factors do not multiply back to L")
    return factors


def _refine_colors(L: FiniteOrthoalgebra) -> list[int]:
    col = [
        (
            a == L.zero,
            a == L.one,
            bin(L.perp[a]).count("1"),
            bin(L.down[a]).count("1"),
            bin(L.up[a]).count("1"),
        )
        for a in range(L.n)
    ]
    canon: dict = {}
    col = [canon.setdefault(c, len(canon)) for c in col]
    for _ in range(L.n):
        sig = []
        for a in range(L.n):
            partners = sorted(
                (col[b], col[L.table[a][b]]) for b in bits(L.perp[a])
            )
            sig.append((col[a], col[L.complement[a]], tuple(partners)))
        canon = {}
        new = [canon.setdefault(s, len(canon)) for s in sig]
        if new == col:
            break
        col = new
    return col


def is_isomorphic(
    L1: FiniteOrthoalgebra, L2: FiniteOrthoalgebra
) -> Optional[dict[int, int]]:
    """Backtracking search for a sum-table isomorphism; returns a witness map.

    Candidates are pruned by iterated color refinement over the sum relation,
    and complements are propagated eagerly.  Deterministic for fixed inputs.
    """
    if L1.n != L2.n:
        return None
    col1, col2 = _refine_colors(L1), _refine_colors(L2)
    if sorted(col1) != sorted(col2):
        return None
    cands = {c: [v for v in range(L2.n) if col2[v] == c] for c in set(col1)}
    order = sorted(range(L1.n), key=lambda a: (len(cands[col1[a]]), col1[a], a))
    fwd: dict[int, int] = {}
    rev: dict[int, int] = {}

    def consistent(u: int, v: int) -> bool:
        for w, x in fwd.items():
            d1 = L1.table[u][w]
            d2 = L2.table[v][x]
            if (d1 is None) != (d2 is None):
                return False
            if d1 is not None:
                if d1 in fwd:
                    if fwd[d1] != d2:
                        return False
                elif d2 in rev:
                    return False
        for (w1, x1), (w2, x2) in itertools.combinations(fwd.items(), 2):
            if L1.table[w1][w2] == u and L2.table[x1][x2] != v:
                return False
        return True

    def assign(u: int, v: int) -> Optional[list[int]]:
        added = []
        queue = [(u, v)]
        while queue:
            p, q = queue.pop()
            if p in fwd:
                if fwd[p] != q:
                    for a in added:
                        rev.pop(fwd.pop(a))
                    return None
                continue
            if q in rev or col1[p] != col2[q] or not consistent(p, q):
                for a in added:
                    rev.pop(fwd.pop(a))
                return None
            fwd[p] = q
            rev[q] = p
            added.append(p)
            queue.append((L1.complement[p], L2.complement[q]))
        return added

    def search(i: int) -> bool:
        while i < L1.n and order[i] in fwd:
            i += 1
        if i == L1.n:
            return True
        u = order[i]
        for v in cands[col1[u]]:
            if v in rev:
                continue
            added = assign(u, v)
            if added is None:
                continue
            if search(i + 1):
                return True
            for a in added:
                rev.pop(fwd.pop(a))
        return False

    ok = assign(L1.zero, L2.zero) is not None and assign(L1.one, L2.one) is not None
    if not ok or not search(0):
        return None
    # full verification of the witness
    for a in range(L1.n):
        for b in range(L1.n):
            s1 = L1.table[a][b]
            s2 = L2.table[fwd[a]][fwd[b]]
            if (s1 is None) != (s2 is None) or (s1 is not None and fwd[s1] != s2):
                raise InternalInconsistency("isomorphism search returned a bad map")
    return dict(fwd)
