"""Finite-dimensional projection operators with tolerance metadata.

Projections model the exactly-representable part of the operator lattice:
orthogonality is PQ = QP = 0, the sum of an orthogonal pair is P + Q, and
the meet projects onto the intersection of ranges.  The meet is famously
discontinuous in the operator norm, and the witnesses here quantify that.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    IllConditioned,
    NotAProjection,
    NotDominated,
    NotOrthogonal,
    NotUnit,
    ThetaOutOfRange,
)

DEFAULT_TOL = 1e-10


def opnorm(A: np.ndarray) -> float:
    return float(np.linalg.norm(A, 2))


@dataclass(frozen=True)
class Projection:
    matrix: np.ndarray
    tol: float = DEFAULT_TOL

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def rank(self) -> int:
        return int(round(float(np.real(np.trace(self.matrix)))))

    def complement(self) -> "Projection":
        return Projection(np.eye(self.dim, dtype=self.matrix.dtype) - self.matrix, self.tol)

    def idempotency_residual(self) -> float:
        return opnorm(self.matrix @ self.matrix - self.matrix)

    def selfadjointness_residual(self) -> float:
        return opnorm(self.matrix - self.matrix.conj().T)


def projection(matrix, tol: float = DEFAULT_TOL) -> Projection:
    """Validated constructor: idempotent and self-adjoint within tol."""
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotAProjection(f"shape {m.shape} is not square")
    m = m.astype(np.complex128 if np.iscomplexobj(m) else np.float64)
    p = Projection(m, tol)
    if p.idempotency_residual() > tol:
        raise NotAProjection(f"idempotency residual {p.idempotency_residual():.3e}")
    if p.selfadjointness_residual() > tol:
        raise NotAProjection(
            f"self-adjointness residual {p.selfadjointness_residual():.3e}"
        )
    return p


def _rank_cutoff(tol: float) -> float:
    # Kernel threshold for singular values; generic nonzero singular values
    # sit far above it, true kernel directions far below.
    return 100.0 * tol


def _kernel_basis(M: np.ndarray, tol: float) -> np.ndarray:
    _, sv, vh = np.linalg.svd(M)
    cutoff = _rank_cutoff(tol)
    sv = np.concatenate([sv, np.zeros(vh.shape[0] - len(sv))])
    if np.any(np.abs(sv - cutoff) <= tol):
        raise IllConditioned(
            f"singular value within {tol:.1e} of the rank cutoff {cutoff:.1e}"
        )
    return vh[sv <= cutoff].conj().T


def proj_from_span(vectors: Sequence, tol: float = DEFAULT_TOL) -> Projection:
    """Projection onto the span of the given vectors (columns)."""
    arrays = [np.asarray(v).reshape(-1) for v in vectors]
    if not arrays:
        raise DimensionMismatch("need at least one spanning vector")
    if len({a.shape[0] for a in arrays}) != 1:
        raise DimensionMismatch("spanning vectors have mixed dimensions")
    cols = np.column_stack(arrays)
    if not np.iscomplexobj(cols):
        cols = cols.astype(np.float64)
    u, sv, _ = np.linalg.svd(cols, full_matrices=False)
    cutoff = max(_rank_cutoff(tol), cols.shape[0] * np.finfo(float).eps * sv[0])
    if np.any(np.abs(sv - cutoff) <= tol):
        raise IllConditioned("singular value at the rank cutoff")
    basis = u[:, sv > cutoff]
    return projection(basis @ basis.conj().T, tol)


def proj_perp(P: Projection, Q: Projection) -> bool:
    """Orthogonality: PQ and QP vanish within tolerance."""
    if P.dim != Q.dim:
        raise DimensionMismatch(f"{P.dim} vs {Q.dim}")
    tol = max(P.tol, Q.tol)
    return opnorm(P.matrix @ Q.matrix) <= tol and opnorm(Q.matrix @ P.matrix) <= tol


def proj_oplus(P: Projection, Q: Projection) -> Projection:
    if P.dim != Q.dim:
        raise DimensionMismatch(f"{P.dim} vs {Q.dim}")
    if not proj_perp(P, Q):
        raise NotOrthogonal("summands are not orthogonal within tolerance")
    return Projection(P.matrix + Q.matrix, max(P.tol, Q.tol))


def proj_meet(P: Projection, Q: Projection) -> Projection:
    """Projection onto ran P  intersect  ran Q.

    The intersection is the joint kernel of I - P and I - Q, extracted from
    the stacked matrix by singular-value thresholding.
    """
    if P.dim != Q.dim:
        raise DimensionMismatch(f"{P.dim} vs {Q.dim}")
    tol = max(P.tol, Q.tol)
    eye = np.eye(P.dim, dtype=np.result_type(P.matrix, Q.matrix))
    stacked = np.vstack([eye - P.matrix, eye - Q.matrix])
    basis = _kernel_basis(stacked, tol)
    if basis.shape[1] == 0:
        return Projection(np.zeros_like(P.matrix), tol)
    return Projection(basis @ basis.conj().T, tol)


def proj_leq(P: Projection, Q: Projection) -> bool:
    """Operator order for projections: QP = P within tolerance."""
    if P.dim != Q.dim:
        raise DimensionMismatch(f"{P.dim} vs {Q.dim}")
    return opnorm(Q.matrix @ P.matrix - P.matrix) <= max(P.tol, Q.tol)


# ---------------------------------------------------------------------------
# the meet-discontinuity witness


@dataclass(frozen=True)
class MeetDiscontinuityReport:
    theta: float
    norm_gap: float
    closed_form_gap: float
    meet_rank_at_theta: int
    meet_rank_at_limit: int


def meet_discontinuity_witness(
    theta: float, tol: float = DEFAULT_TOL
) -> MeetDiscontinuityReport:
    """Tilt a line by theta: the projections converge but their meets do not.

    Q projects onto the first axis; P_theta onto (cos theta, sin theta).
    The distance ||P_theta - Q|| is |sin theta| in closed form, yet the meet
    with Q drops from rank 1 to rank 0 the instant theta leaves zero.
    """
    if not 0 < abs(theta) < np.pi / 2:
        raise ThetaOutOfRange(f"need 0 < |theta| < pi/2, got {theta}")
    q = proj_from_span([np.array([1.0, 0.0])], tol)
    direction = np.array([np.cos(theta), np.sin(theta)])
    p_theta = proj_from_span([direction], tol)
    gap = opnorm(p_theta.matrix - q.matrix)
    return MeetDiscontinuityReport(
        theta=float(theta),
        norm_gap=gap,
        closed_form_gap=abs(float(np.sin(theta))),
        meet_rank_at_theta=proj_meet(p_theta, q).rank,
        meet_rank_at_limit=proj_meet(q, q).rank,
    )


# ---------------------------------------------------------------------------
# random projections and rank separation


def random_projection(
    rng: np.random.Generator, d: int, rank: int, tol: float = DEFAULT_TOL
) -> Projection:
    """Orthonormalize a standard-normal frame of the requested rank."""
    if not 0 <= rank <= d:
        raise DimensionMismatch(f"rank {rank} outside dimension {d}")
    if rank == 0:
        return Projection(np.zeros((d, d)), tol)
    frame = rng.standard_normal((d, rank))
    q, _ = np.linalg.qr(frame)
    return projection(q @ q.T, tol)


def rank_separation_check(
    d: int, trials: int, seed: int = 0, tol: float = DEFAULT_TOL
) -> float:
    """Minimum norm distance over sampled pairs of unequal-rank projections.

    Projections of different rank are never closer than operator norm 1;
    the sampled minimum should sit at 1 up to rounding.
    """
    if not 2 <= d <= 8:
        raise DimensionMismatch(f"dimension {d} outside supported range 2..8")
    rng = np.random.default_rng(seed)
    best = np.inf
    for _ in range(trials):
        r1 = int(rng.integers(1, d + 1))
        r2 = int(rng.integers(1, d))
        if r2 >= r1:
            r2 += 1
        p = random_projection(rng, d, r1, tol)
        q = random_projection(rng, d, r2, tol)
        best = min(best, opnorm(p.matrix - q.matrix))
    return float(best)


# ---------------------------------------------------------------------------
# the ambient-order embedding checks


@dataclass(frozen=True)
class SubeffectReport:
    difference_is_projection: bool
    idempotency_residual: float
    selfadjointness_residual: float
    samples_checked: int
    sum_order_equivalence: bool


def faithful_subeffect_check(
    P: Projection,
    Q: Projection,
    samples: int = 20,
    seed: int = 0,
) -> SubeffectReport:
    """For P <= Q in the operator order, Q - P must again be a projection,
    and P + R <= identity must coincide with orthogonality of P and R.

    The second half is checked on sampled projections R, half of them built
    inside the orthocomplement of P so both sides of the equivalence are
    exercised in the true case as well as the false one.
    """
    if P.dim != Q.dim:
        raise DimensionMismatch(f"{P.dim} vs {Q.dim}")
    tol = max(P.tol, Q.tol)
    diff = Q.matrix - P.matrix
    eigs = np.linalg.eigvalsh((diff + diff.conj().T) / 2)
    if eigs.min() < -tol:
        raise NotDominated(f"Q - P has eigenvalue {eigs.min():.3e} below zero")
    idem = opnorm(diff @ diff - diff)
    selfadj = opnorm(diff - diff.conj().T)

    rng = np.random.default_rng(seed)
    d = P.dim
    eye = np.eye(d)
    comp_rank = d - P.rank
    equivalence = True
    checked = 0
    for i in range(samples):
        if i % 2 == 0 and comp_rank > 0:
            # R inside ran(P)^perp: both sides of the equivalence true
            inner = random_projection(rng, comp_rank, max(1, comp_rank - 1))
            basis = _kernel_basis(np.vstack([P.matrix]), tol)[:, :comp_rank]
            r = Projection(basis @ inner.matrix @ basis.conj().T, tol)
        else:
            r = random_projection(rng, d, int(rng.integers(1, d)))
        bounded = np.linalg.eigvalsh(eye - P.matrix - r.matrix).min() >= -tol
        orth = proj_perp(P, r)
        if bounded != orth:
            equivalence = False
        checked += 1
    return SubeffectReport(
        difference_is_projection=idem <= tol and selfadj <= tol,
        idempotency_residual=float(idem),
        selfadjointness_residual=float(selfadj),
        samples_checked=checked,
        sum_order_equivalence=equivalence,
    )


class VectorState:
    """The functional f(P) = <Px, x> of a unit vector x."""

    def __init__(self, x, tol: float = DEFAULT_TOL):
        x = np.asarray(x, dtype=np.complex128).reshape(-1)
        if abs(np.linalg.norm(x) - 1.0) > tol:
            raise NotUnit(f"norm {np.linalg.norm(x):.6f} is not 1")
        self.x = x
        self.tol = tol

    def __call__(self, P: Projection) -> float:
        val = np.vdot(self.x, P.matrix @ self.x)
        if abs(val.imag) > self.tol:
            raise NotAProjection("state value has an imaginary part")
        return float(val.real)


def vector_state(x, tol: float = DEFAULT_TOL) -> VectorState:
    return VectorState(x, tol)


def frame_order_determines(
    states: Sequence[VectorState],
    pairs: Sequence[tuple[Projection, Projection]],
    tol: float = DEFAULT_TOL,
) -> bool:
    """Sampled order determination: if every frame state weakly increases
    from P to Q then P <= Q must hold in the operator order."""
    for P, Q in pairs:
        dominated = all(f(P) <= f(Q) + tol for f in states)
        if dominated and not proj_leq(P, Q):
            return False
    return True
