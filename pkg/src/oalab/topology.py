"""Finite topologies and the topological-orthoalgebra decision procedures.

Topologies are explicit open-set families over a finite carrier, stored as
bitmasks.  Closure and continuity questions reduce to minimal open
neighborhoods, which exist at every point of a finite space and generate the
same answers as quantifying over all opens (cross-checked in the tests).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence

from .core import FiniteOrthoalgebra, bits
from .errors import (
    InternalInconsistency,
    NotClosedMember,
    OpenFamilyTooLarge,
    OutOfRange,
    SizeMismatch,
)
from .testspace import TestSpace, events

MAX_FAMILY = 1 << 16


@dataclass(frozen=True)
class FiniteTopology:
    n: int
    opens: frozenset[int]

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def is_open(self, mask: int) -> bool:
        return mask in self.opens

    def is_closed(self, mask: int) -> bool:
        return (self.full & ~mask) in self.opens

    @cached_property
    def min_nbhd(self) -> tuple[int, ...]:
        """Smallest open set around each point; the backbone of every check."""
        out = []
        for x in range(self.n):
            m = self.full
            for u in self.opens:
                if (u >> x) & 1:
                    m &= u
            out.append(m)
        return tuple(out)

    def closure(self, mask: int) -> int:
        """Points whose every neighborhood meets the set."""
        c = 0
        for x in range(self.n):
            if self.min_nbhd[x] & mask:
                c |= 1 << x
        return c

    def sorted_opens(self) -> list[int]:
        return sorted(self.opens, key=lambda m: (bin(m).count("1"), m))


def _mask(n: int, subset: Iterable[int]) -> int:
    m = 0
    for i in subset:
        if not 0 <= i < n:
            raise OutOfRange(f"index {i} outside carrier of size {n}")
        m |= 1 << i
    return m


def is_topology(n: int, family: Iterable[int]) -> bool:
    fam = set(family)
    full = (1 << n) - 1
    if 0 not in fam or full not in fam:
        return False
    for a in fam:
        for b in fam:
            if (a | b) not in fam or (a & b) not in fam:
                return False
    return True


def make_topology(
    n: int,
    subbasis: Iterable[Iterable[int]] | Iterable[int],
    max_family: int = MAX_FAMILY,
) -> FiniteTopology:
    """Close a subbasis under finite intersection then union, adding 0 and X."""
    masks = set()
    for s in subbasis:
        masks.add(s if isinstance(s, int) else _mask(n, s))
    full = (1 << n) - 1
    inter = {full} | masks
    frontier = set(inter)
    while frontier:
        new = set()
        for a in frontier:
            for b in inter:
                c = a & b
                if c not in inter:
                    new.add(c)
        inter |= new
        if len(inter) > max_family:
            raise OpenFamilyTooLarge(f"{len(inter)} sets exceed cap {max_family}")
        frontier = new
    family = set(inter) | {0}
    frontier = set(family)
    while frontier:
        new = set()
        for a in frontier:
            for b in family:
                c = a | b
                if c not in family:
                    new.add(c)
        family |= new
        if len(family) > max_family:
            raise OpenFamilyTooLarge(f"{len(family)} sets exceed cap {max_family}")
        frontier = new
    return FiniteTopology(n, frozenset(family))


def discrete(n: int, max_family: int = MAX_FAMILY) -> FiniteTopology:
    if (1 << n) > max_family:
        raise OpenFamilyTooLarge(f"discrete topology on {n} points exceeds cap")
    return FiniteTopology(n, frozenset(range(1 << n)))


def indiscrete(n: int) -> FiniteTopology:
    return FiniteTopology(n, frozenset({0, (1 << n) - 1}))


def alexandrov_upsets(L: FiniteOrthoalgebra) -> FiniteTopology:
    """All up-closed subsets of the derived order; always a topology."""
    if L.n > 16:
        raise OpenFamilyTooLarge("up-set topology materialized only for n <= 16")
    opens = []
    for m in range(1 << L.n):
        ok = True
        for a in bits(m):
            if L.up[a] & ~m:
                ok = False
                break
        if ok:
            opens.append(m)
    return FiniteTopology(L.n, frozenset(opens))


def product_topology(
    T1: FiniteTopology, T2: FiniteTopology, max_family: int = MAX_FAMILY
) -> FiniteTopology:
    """Opens generated by boxes U x V; point (i, j) becomes index i*n2 + j."""
    boxes = set()
    for u in T1.opens:
        for v in T2.opens:
            m = 0
            for i in bits(u):
                m |= v << (i * T2.n)
            boxes.add(m)
            if len(boxes) > max_family:
                raise OpenFamilyTooLarge("product box family exceeds cap")
    return make_topology(T1.n * T2.n, boxes, max_family)


# ---------------------------------------------------------------------------
# closed relations and continuity


def is_closed_relation(
    T: FiniteTopology, pairs: Iterable[tuple[int, int]]
) -> tuple[bool, Optional[tuple[int, int]]]:
    """Is the relation closed in the product topology on carrier x carrier?

    A point lies in the closure iff its minimal box neighborhood meets the
    relation; the witness is the first closure point outside it.
    """
    rows = [0] * T.n
    for a, b in pairs:
        rows[a] |= 1 << b
    reach = []
    for x in range(T.n):
        m = 0
        for a in bits(T.min_nbhd[x]):
            m |= rows[a]
        reach.append(m)
    for x in range(T.n):
        for y in range(T.n):
            if (rows[x] >> y) & 1:
                continue
            if reach[x] & T.min_nbhd[y]:
                return False, (x, y)
    return True, None


def is_continuous(
    Tdom: FiniteTopology,
    Tcod: FiniteTopology,
    f: Callable[[int], int],
    dom: Iterable[int],
) -> tuple[bool, Optional[int]]:
    """Continuity of a partial map on ``dom`` with the subspace topology.

    Fails exactly when some point's minimal neighborhood (within the domain)
    is not mapped into the minimal neighborhood of its image; that image
    neighborhood is then an open with a non-relatively-open preimage, and is
    returned as the witness.
    """
    dom = sorted(set(dom))
    dom_mask = 0
    for x in dom:
        dom_mask |= 1 << x
    for x in dom:
        target = Tcod.min_nbhd[f(x)]
        for y in bits(Tdom.min_nbhd[x] & dom_mask):
            if not (target >> f(y)) & 1:
                return False, target
    return True, None


def _binary_continuous(
    T: FiniteTopology,
    pairs: Sequence[tuple[int, int]],
    value: Callable[[int, int], Optional[int]],
) -> tuple[bool, Optional[tuple[tuple[int, int], int]]]:
    """Continuity of a partial binary map on a subset of the square.

    Minimal neighborhoods in the product are boxes of minimal neighborhoods;
    the subspace structure restricts them to the domain.
    """
    pair_set = set(pairs)
    for a, b in pairs:
        target = T.min_nbhd[value(a, b)]
        for c in bits(T.min_nbhd[a]):
            for d in bits(T.min_nbhd[b]):
                if (c, d) in pair_set and not (target >> value(c, d)) & 1:
                    return False, ((a, b), target)
    return True, None


# ---------------------------------------------------------------------------
# the TOA report


@dataclass(frozen=True)
class ToaReport:
    perp_closed: bool
    oplus_continuous: bool
    comp_continuous: bool
    hausdorff: bool
    order_closed: bool
    stably_ordered: bool
    witnesses: dict

    def all_axioms(self) -> bool:
        return self.perp_closed and self.oplus_continuous and self.comp_continuous


def _perp_pairs(L: FiniteOrthoalgebra) -> list[tuple[int, int]]:
    return [(a, b) for a in range(L.n) for b in bits(L.perp[a])]


def _le_pairs(L: FiniteOrthoalgebra) -> list[tuple[int, int]]:
    return [(a, b) for a in range(L.n) for b in bits(L.up[a])]


def is_hausdorff(T: FiniteTopology) -> tuple[bool, Optional[tuple[int, int]]]:
    for x in range(T.n):
        for y in range(x + 1, T.n):
            if T.min_nbhd[x] & T.min_nbhd[y]:
                return False, (x, y)
    return True, None


def check_toa(L: FiniteOrthoalgebra, T: FiniteTopology) -> ToaReport:
    """Run every topological-orthoalgebra condition and collect witnesses.

    When orthogonality is closed and both operations are continuous, the
    closedness of the order follows; that implication is asserted here
    rather than assumed.
    """
    if T.n != L.n:
        raise SizeMismatch(f"topology on {T.n} points, algebra has {L.n}")
    perp_ok, perp_wit = is_closed_relation(T, _perp_pairs(L))
    oplus_ok, oplus_wit = _binary_continuous(
        T, _perp_pairs(L), lambda a, b: L.table[a][b]
    )
    comp_ok, comp_wit = is_continuous(
        T, T, lambda a: L.complement[a], range(L.n)
    )
    haus_ok, haus_wit = is_hausdorff(T)
    order_ok, order_wit = is_closed_relation(T, _le_pairs(L))
    stable_ok, stable_wit = is_stably_ordered(L, T)
    if perp_ok and oplus_ok and comp_ok and not order_ok:
        # preimage of a closed relation under the continuous (a,b) -> (a,b')
        raise InternalInconsistency("closed order must follow from the axioms")
    witnesses = {}
    if perp_wit is not None:
        witnesses["perp_closed"] = perp_wit
    if oplus_wit is not None:
        witnesses["oplus_continuous"] = oplus_wit
    if comp_wit is not None:
        witnesses["comp_continuous"] = comp_wit
    if haus_wit is not None:
        witnesses["hausdorff"] = haus_wit
    if order_wit is not None:
        witnesses["order_closed"] = order_wit
    if stable_wit is not None:
        witnesses["stably_ordered"] = stable_wit
    return ToaReport(
        perp_closed=perp_ok,
        oplus_continuous=oplus_ok,
        comp_continuous=comp_ok,
        hausdorff=haus_ok,
        order_closed=order_ok,
        stably_ordered=stable_ok,
        witnesses=witnesses,
    )


def ominus_continuous(
    L: FiniteOrthoalgebra, T: FiniteTopology
) -> tuple[bool, Optional[tuple[tuple[int, int], int]]]:
    """Continuity of (a, b) -> b - a on the order relation."""
    from .core import ominus

    return _binary_continuous(T, _le_pairs(L), lambda a, b: ominus(L, a, b))


def meet_continuous(
    L: FiniteOrthoalgebra, T: FiniteTopology
) -> Optional[tuple[bool, Optional[tuple]]]:
    """Continuity of the total meet, or None when L is not a lattice."""
    from .core import meet

    table = [[meet(L, a, b) for b in range(L.n)] for a in range(L.n)]
    if any(v is None for row in table for v in row):
        return None
    all_pairs = [(a, b) for a in range(L.n) for b in range(L.n)]
    return _binary_continuous(T, all_pairs, lambda a, b: table[a][b])


# ---------------------------------------------------------------------------
# stable order and sums of open sets


def upset(L: FiniteOrthoalgebra, subset_mask: int) -> int:
    m = 0
    for a in bits(subset_mask):
        m |= L.up[a]
    return m


def downset(L: FiniteOrthoalgebra, subset_mask: int) -> int:
    m = 0
    for a in bits(subset_mask):
        m |= L.down[a]
    return m


def is_stably_ordered(
    L: FiniteOrthoalgebra, T: FiniteTopology
) -> tuple[bool, Optional[int]]:
    """Up-sets of opens must be open; witness is the smallest failing open."""
    if T.n != L.n:
        raise SizeMismatch(f"topology on {T.n} points, algebra has {L.n}")
    for u in T.sorted_opens():
        if upset(L, u) not in T.opens:
            return False, u
    return True, None


def downsets_of_opens_open(L: FiniteOrthoalgebra, T: FiniteTopology) -> bool:
    """The down-set variant; equivalent to stable order when complementation
    is continuous, since the complement map swaps up-sets and down-sets."""
    return all(downset(L, u) in T.opens for u in T.opens)


def opens_osum(L: FiniteOrthoalgebra, U: int, V: int) -> int:
    """All defined sums a (+) b with a in U and b in V, as a mask."""
    m = 0
    for a in bits(U):
        row = L.table[a]
        for b in bits(L.perp[a] & V):
            m |= 1 << row[b]
    return m


@dataclass(frozen=True)
class OpenSumEquivalence:
    stably_ordered: bool
    all_sums_open: bool
    witness_pair: Optional[tuple[int, int]]

    @property
    def equivalent(self) -> bool:
        return self.stably_ordered == self.all_sums_open


def open_sum_equivalence(
    L: FiniteOrthoalgebra, T: FiniteTopology
) -> OpenSumEquivalence:
    """Check: stably ordered iff U (+) V is open for all opens U, V.

    Any discrepancy is reported in the result rather than raised; the
    equivalence is a theorem only under the full continuity axioms, which no
    nondiscrete finite model satisfies.
    """
    stable, _ = is_stably_ordered(L, T)
    opens = T.sorted_opens()
    for u in opens:
        for v in opens:
            if opens_osum(L, u, v) not in T.opens:
                return OpenSumEquivalence(stable, False, (u, v))
    return OpenSumEquivalence(stable, True, None)


# ---------------------------------------------------------------------------
# Vietoris topologies and stable complementation


def vietoris(
    T: FiniteTopology,
    family: Sequence[int],
    max_family: int = MAX_FAMILY,
) -> FiniteTopology:
    """Hyperspace topology on a family of closed subsets.

    Subbasis: [U] = members meeting U, (U) = members inside U, for U open.
    """
    for m in family:
        if not T.is_closed(m):
            raise NotClosedMember(f"family member {bits(m)} is not closed")
    subbasis = set()
    for u in T.opens:
        meets = 0
        inside = 0
        for i, m in enumerate(family):
            if m & u:
                meets |= 1 << i
            if m & ~u == 0:
                inside |= 1 << i
        subbasis.add(meets)
        subbasis.add(inside)
    return make_topology(len(family), subbasis, max_family)


def event_cardinality_classes(T_space: TestSpace) -> dict[int, list[int]]:
    """Indices of events grouped by size, against the canonical event order."""
    evs = events(T_space)
    out: dict[int, list[int]] = {}
    for i, e in enumerate(evs):
        out.setdefault(len(e), []).append(i)
    return out


def is_stably_complemented(
    T_space: TestSpace, T: FiniteTopology
) -> tuple[bool, Optional[int]]:
    """For every Vietoris-open family of events, the events complementary to
    one of its members must again form a Vietoris-open family.

    With a discrete outcome topology every singleton event family is open, so
    the Vietoris topology is discrete and the condition holds outright; that
    shortcut avoids materializing 2^|events| open sets.
    """
    if T.n != T_space.n:
        raise SizeMismatch("outcome topology size mismatch")
    evs = events(T_space)
    masks = []
    for e in evs:
        m = 0
        for i in e:
            m |= 1 << i
        masks.append(m)
    for m in masks:
        if not T.is_closed(m):
            raise NotClosedMember(f"event {sorted(bits(m))} is not closed")
    if all(T.is_open(1 << x) for x in range(T.n)):
        return True, None

    vt = vietoris(T, masks)
    complementary = [0] * len(evs)
    test_masks = set()
    for t in T_space.tests:
        m = 0
        for i in t:
            m |= 1 << i
        test_masks.add(m)
    for i, a in enumerate(masks):
        for j, b in enumerate(masks):
            if a & b == 0 and (a | b) in test_masks:
                complementary[i] |= 1 << j
    for fam in vt.sorted_opens():
        co = 0
        for i in bits(fam):
            co |= complementary[i]
        if co not in vt.opens:
            return False, fam
    return True, None


# ---------------------------------------------------------------------------
# totally non-orthogonal covers


def totally_nonorthogonal_cover(
    L: FiniteOrthoalgebra, T: FiniteTopology
) -> Optional[list[int]]:
    """Cover the nonzero carrier by opens containing no orthogonal pair.

    Walks the elements in index order, taking the smallest usable open for
    each uncovered one; None when some element has no such neighborhood.
    The cover size bounds the size of any pairwise-orthogonal set of nonzero
    elements, since such a set meets each cover member at most once.
    """
    if T.n != L.n:
        raise SizeMismatch(f"topology on {T.n} points, algebra has {L.n}")
    candidates = []
    for u in T.sorted_opens():
        good = True
        for a in bits(u):
            if L.perp[a] & u & ~(1 << a):
                good = False
                break
        if good:
            candidates.append(u)
    cover: list[int] = []
    covered = 1 << L.zero
    for a in range(L.n):
        if a == L.zero or (covered >> a) & 1:
            continue
        pick = next((u for u in candidates if (u >> a) & 1), None)
        if pick is None:
            return None
        cover.append(pick)
        covered |= pick
    return cover
