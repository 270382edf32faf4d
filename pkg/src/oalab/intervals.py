"""Exact rational interval sets and the two-interval continuum model.

The carrier [0,1/4] u [3/4,1] carries a partial sum: x (+) y is defined when
x + y = 1 or one of them is 0.  Under the derived order, the up-set of any
nonempty set U is U plus the top; openness of such sets in the subspace
topology of the reals is decided exactly, with no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import NotInCarrier

Piece = tuple[Fraction, Fraction, bool, bool]  # lo, hi, lo_closed, hi_closed


def _valid_piece(lo, hi, lc, hc) -> bool:
    return lo < hi or (lo == hi and lc and hc)


@dataclass(frozen=True)
class RationalIntervalSet:
    """Disjoint, sorted, maximally merged rational intervals."""

    pieces: tuple[Piece, ...]

    def is_empty(self) -> bool:
        return not self.pieces

    def contains(self, q) -> bool:
        q = Fraction(q)
        for lo, hi, lc, hc in self.pieces:
            if (lo < q or (lc and q == lo)) and (q < hi or (hc and q == hi)):
                return True
        return False

    def union(self, other: "RationalIntervalSet") -> "RationalIntervalSet":
        return normalize(self.pieces + other.pieces)

    def intersection(self, other: "RationalIntervalSet") -> "RationalIntervalSet":
        out = []
        for a in self.pieces:
            for b in other.pieces:
                p = _intersect_pieces(a, b)
                if p is not None:
                    out.append(p)
        return normalize(out)

    def difference(self, other: "RationalIntervalSet") -> "RationalIntervalSet":
        remaining = list(self.pieces)
        for b in other.pieces:
            nxt = []
            for a in remaining:
                nxt.extend(_subtract_piece(a, b))
            remaining = nxt
        return normalize(remaining)

    def is_subset(self, other: "RationalIntervalSet") -> bool:
        return self.difference(other).is_empty()

    def real_closure(self) -> "RationalIntervalSet":
        """Closure in the reals: close every endpoint."""
        return normalize([(lo, hi, True, True) for lo, hi, _, _ in self.pieces])

    def __str__(self):
        return format_interval_set(self)


def _intersect_pieces(a: Piece, b: Piece) -> Optional[Piece]:
    alo, ahi, alc, ahc = a
    blo, bhi, blc, bhc = b
    if alo > blo or (alo == blo and (blc or not alc)):
        lo, lc = alo, alc
        if alo == blo:
            lc = alc and blc
    else:
        lo, lc = blo, blc
    if ahi < bhi or (ahi == bhi and (bhc or not ahc)):
        hi, hc = ahi, ahc
        if ahi == bhi:
            hc = ahc and bhc
    else:
        hi, hc = bhi, bhc
    if _valid_piece(lo, hi, lc, hc):
        return (lo, hi, lc, hc)
    return None


def _subtract_piece(a: Piece, b: Piece) -> list[Piece]:
    alo, ahi, alc, ahc = a
    blo, bhi, blc, bhc = b
    out = []
    left = (alo, blo, alc, not blc)
    if _valid_piece(*left) and _intersect_pieces(left, a) == left:
        out.append(left)
    right = (bhi, ahi, not bhc, ahc)
    if _valid_piece(*right) and _intersect_pieces(right, a) == right:
        out.append(right)
    if not out and _intersect_pieces(a, b) is None:
        return [a]
    return out


def normalize(pieces: Iterable[Piece]) -> RationalIntervalSet:
    ps = sorted(
        (p for p in pieces if _valid_piece(*p)),
        key=lambda p: (p[0], not p[2]),
    )
    merged: list[Piece] = []
    for p in ps:
        if merged:
            lo, hi, lc, hc = merged[-1]
            plo, phi, plc, phc = p
            touches = plo < hi or (plo == hi and (hc or plc))
            if touches:
                if (phi, phc) == _max_hi((hi, hc), (phi, phc)):
                    merged[-1] = (lo, phi, lc, phc)
                continue
        merged.append(p)
    return RationalIntervalSet(tuple(merged))


def _max_hi(a, b):
    (ahi, ahc), (bhi, bhc) = a, b
    if ahi > bhi or (ahi == bhi and ahc):
        return a
    return b


def iset(*pieces) -> RationalIntervalSet:
    """Build an interval set from (lo, hi, lo_closed, hi_closed) tuples."""
    return normalize(
        [(Fraction(lo), Fraction(hi), bool(lc), bool(hc)) for lo, hi, lc, hc in pieces]
    )


def closed(lo, hi) -> RationalIntervalSet:
    return iset((lo, hi, True, True))


def open_interval(lo, hi) -> RationalIntervalSet:
    return iset((lo, hi, False, False))


def point(q) -> RationalIntervalSet:
    return iset((q, q, True, True))


def empty() -> RationalIntervalSet:
    return RationalIntervalSet(())


def two_interval_carrier() -> RationalIntervalSet:
    """[0,1/4] u [3/4,1], the carrier of the exact continuum model."""
    return iset((0, Fraction(1, 4), True, True), (Fraction(3, 4), 1, True, True))


def _require_in_carrier(S: RationalIntervalSet):
    if not S.is_subset(two_interval_carrier()):
        raise NotInCarrier(f"{S} is not inside {two_interval_carrier()}")


def iv_oplus(x, y) -> Optional[Fraction]:
    """The model's partial sum: defined when x + y = 1 or a summand is 0."""
    x, y = Fraction(x), Fraction(y)
    carrier = two_interval_carrier()
    if not (carrier.contains(x) and carrier.contains(y)):
        raise NotInCarrier(f"{x} or {y} outside the carrier")
    if x == 0:
        return y
    if y == 0:
        return x
    if x + y == 1:
        return Fraction(1)
    return None


def iv_le(x, y) -> bool:
    """Derived order of the model: x <= y iff x = y, x = 0, or y = 1."""
    x, y = Fraction(x), Fraction(y)
    return x == y or x == 0 or y == 1


def iv_upset(U: RationalIntervalSet) -> RationalIntervalSet:
    """Exact up-set within the carrier.

    Nonempty sets gain the top point 1; sets containing 0 blow up to the
    whole carrier.  This is the full case analysis of the derived order.
    """
    _require_in_carrier(U)
    if U.is_empty():
        return empty()
    if U.contains(0):
        return two_interval_carrier()
    return U.union(point(1))


def iv_is_closed(S: RationalIntervalSet) -> bool:
    """Closed in the subspace topology of the carrier, decided exactly."""
    _require_in_carrier(S)
    rel_closure = S.real_closure().intersection(two_interval_carrier())
    return rel_closure == S


def iv_is_open(S: RationalIntervalSet) -> bool:
    _require_in_carrier(S)
    return iv_is_closed(two_interval_carrier().difference(S))


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_interval_set(S: RationalIntervalSet) -> str:
    if S.is_empty():
        return "{}"
    parts = []
    for lo, hi, lc, hc in S.pieces:
        if lo == hi:
            parts.append("{" + format_fraction(lo) + "}")
        else:
            parts.append(
                ("[" if lc else "(")
                + format_fraction(lo)
                + ","
                + format_fraction(hi)
                + ("]" if hc else ")")
            )
    return " ∪ ".join(parts)
