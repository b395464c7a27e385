"""Catalog of named separable states and boundary certificates.

The catalog holds three classical full-rank separable states (Werner,
isotropic, GHZ-mixed) that all sit on the boundary of the separable body
without being *full*: some partial transpose is rank deficient.  The simplex
family built from the witness zero vectors provides the opposite kind of
boundary point: full states certified by a supporting witness.

Separability is decided here only where PPT is equivalent to it (d <= 6).
Anything beyond that is certified through witnesses (sufficient, checkable)
or carried as a "by-lemma" flag by the tensor-composition helper; the two
kinds of claims are kept visibly distinct.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hermspace import (
    DEFAULT_TOL,
    TolPolicy,
    eigvalsh,
    is_full,
    is_ppt,
    is_psd,
    numerical_rank,
    partial_transpose_ranks,
)
from .shapes import (
    HermOp,
    ShapeMismatchError,
    SystemShape,
    compose,
    expand,
    pure_state,
)
from .witness import make_wb, seesaw_min

CATALOG_NAMES = ("werner", "isotropic", "ghz-mixed")


@dataclass
class NamedState:
    name: str
    shape: SystemShape
    op: HermOp  # raw normalization as displayed below
    unit: HermOp  # trace-one variant
    note: str  # defining formula


def make_named(name: str, shape: SystemShape) -> NamedState:
    """Construct a catalog state in its raw and unit-trace normalizations.

    werner:     I_d - (1/d1) sum_ij |ij><ji|          (d1 = d2)
    isotropic:  I_d + sum_ij |ii><jj|                 (d1 = d2)
    ghz-mixed:  I_(2^n) + |g><g|, g = |0..0> + |1..1> (all d_i = 2)
    """
    if name == "werner":
        d1 = _require_square(shape)
        mat = np.eye(shape.d, dtype=complex) - _swap_matrix(d1) / d1
        note = "I - SWAP/d1"
    elif name == "isotropic":
        d1 = _require_square(shape)
        v = _max_entangled_unnormalized(d1)
        mat = np.eye(shape.d, dtype=complex) + np.outer(v, v.conj())
        note = "I + sum_ij |ii><jj|"
    elif name == "ghz-mixed":
        if any(d != 2 for d in shape.dims):
            raise ShapeMismatchError("ghz-mixed needs all local dimensions 2")
        g = np.zeros(shape.d, dtype=complex)
        g[0], g[-1] = 1.0, 1.0
        mat = np.eye(shape.d, dtype=complex) + np.outer(g, g.conj())
        note = "I + |g><g|, g = |0..0> + |1..1>"
    else:
        raise ValueError(f"unknown catalog state {name!r}; choose from {CATALOG_NAMES}")
    op = HermOp(shape, mat)
    return NamedState(name, shape, op, HermOp(shape, mat / op.trace()), note)


def _require_square(shape: SystemShape) -> int:
    if shape.n != 2 or shape.dims[0] != shape.dims[1]:
        raise ShapeMismatchError("state needs a bipartite shape with d1 = d2")
    return shape.dims[0]


def _swap_matrix(d1: int) -> np.ndarray:
    s = np.zeros((d1 * d1, d1 * d1), dtype=complex)
    for i in range(d1):
        for j in range(d1):
            s[i * d1 + j, j * d1 + i] = 1.0
    return s


def _max_entangled_unnormalized(d1: int) -> np.ndarray:
    v = np.zeros(d1 * d1, dtype=complex)
    v[:: d1 + 1] = 1.0
    return v


# ---------------------------------------------------------------------------
# the simplex of witness zero states


@dataclass
class DeltaSimplex:
    b: float
    vertices: list  # HermOp projectors of the zero vectors (10, or 7 at 0/inf)
    barycenter: HermOp

    def affine_dim(self, tol: TolPolicy = DEFAULT_TOL) -> int:
        from .hermspace import real_span_rank

        return real_span_rank(self.vertices, tol) - 1


def delta_simplex(b: float) -> DeltaSimplex:
    """Convex hull data of the zero-vector states of W_b."""
    point = make_wb(b)
    vertices = [
        pure_state(expand(z), point.op.shape) for z in point.zero_vectors
    ]
    mats = sum(v.mat for v in vertices) / len(vertices)
    return DeltaSimplex(b=point.b, vertices=vertices, barycenter=HermOp(point.op.shape, mats))


# ---------------------------------------------------------------------------
# boundary certificates


@dataclass
class BoundaryCertificate:
    verdict: str  # "certified-boundary" | "not-certified"
    tr_product: float
    witness_min_product: float
    witness_min_eig: float
    full: bool

    @property
    def certified(self) -> bool:
        return self.verdict == "certified-boundary"


def boundary_certificate(
    state: HermOp,
    witness: HermOp,
    starts: int = 64,
    seed=0,
    tr_tol: float = 1e-9,
    product_tol: float = 1e-8,
    tol: TolPolicy = DEFAULT_TOL,
) -> BoundaryCertificate:
    """Certify that a separable state sits on the boundary of the separable
    body: the witness must be an entanglement witness (negative eigenvalue,
    nonnegative product minimum) whose expectation vanishes on the state."""
    tr_val = float((witness.mat @ state.mat).trace().real)
    w = eigvalsh(witness)
    seesaw = seesaw_min(witness, starts=starts, seed=seed)
    ok = (
        abs(tr_val) <= tr_tol
        and seesaw.value >= -product_tol
        and w.min() < -tol.psd_tol * max(1.0, float(np.abs(w).max()))
    )
    return BoundaryCertificate(
        verdict="certified-boundary" if ok else "not-certified",
        tr_product=tr_val,
        witness_min_product=seesaw.value,
        witness_min_eig=float(w.min()),
        full=is_full(state, tol),
    )


def separable_d_le_6(state: HermOp, tol: TolPolicy = DEFAULT_TOL) -> bool:
    """Separability decision, valid only where it equals the PPT test."""
    if state.shape.d > 6:
        raise ShapeMismatchError(
            "PPT decides separability only for total dimension <= 6"
        )
    if abs(state.trace() - 1.0) > 1e-9:
        raise ValueError("state must have unit trace")
    if not is_psd(state, tol):
        raise ValueError("state must be positive semidefinite")
    return is_ppt(state, tol).ok


class OracleError(RuntimeError):
    """The membership oracle is inconsistent with the bisection bracket."""


def full_boundary_from_pptes(
    state: HermOp,
    oracle,
    t_max: float = 1.5,
    t_tol: float = 1e-12,
    tol: TolPolicy = DEFAULT_TOL,
) -> HermOp:
    """Locate the boundary point on the segment from I/d toward ``state``.

    ``oracle`` maps a HermOp to a float that is positive strictly inside the
    membership region and negative outside (for the simplex family: the
    witness expectation).  Bisection over t in [0, t_max] on
    (1-t) I/d + t state; the bracket must change sign.  The returned point is
    checked to be full.
    """
    if state.shape.d <= 6:
        raise ShapeMismatchError("boundary search targets systems with d > 6")
    if not is_ppt(state, tol).ok:
        raise ValueError("input state must be PPT")
    eye = np.eye(state.d) / state.d

    def point(t: float) -> HermOp:
        return HermOp(state.shape, (1.0 - t) * eye + t * state.mat)

    lo, hi = 0.0, float(t_max)
    f_lo, f_hi = oracle(point(lo)), oracle(point(hi))
    if not (f_lo > 0 >= f_hi):
        raise OracleError(
            f"oracle does not bracket the boundary: f(0)={f_lo}, f({t_max})={f_hi}"
        )
    while hi - lo > t_tol:
        mid = (lo + hi) / 2
        if oracle(point(mid)) > 0:
            lo = mid
        else:
            hi = mid
    sigma = point((lo + hi) / 2)
    if not is_full(sigma, tol):
        raise OracleError("located boundary point is not a full state")
    return sigma


@dataclass
class ComposedBoundary:
    op: HermOp
    full: bool  # verified numerically
    boundary: str  # "by-lemma": membership carried by the tensor rule


def compose_boundary(rho: HermOp, sigma: HermOp, tol: TolPolicy = DEFAULT_TOL) -> ComposedBoundary:
    """Tensor-compose a boundary state with a separable one.

    Fullness of the result is verified by rank; boundary membership follows
    from the composition rule for separable states and is flagged as
    "by-lemma" rather than re-certified, unless the caller certifies the
    composite against its own witness.
    """
    op = compose(rho, sigma)
    return ComposedBoundary(op=op, full=is_full(op, tol), boundary="by-lemma")


def catalog_rows(tol: TolPolicy = DEFAULT_TOL) -> list:
    """PPT/fullness summary of the three catalog states at their paper shapes."""
    entries = [
        ("werner", SystemShape((3, 3))),
        ("isotropic", SystemShape((3, 3))),
        ("ghz-mixed", SystemShape((2, 2, 2))),
    ]
    rows = []
    for name, shape in entries:
        st = make_named(name, shape)
        ranks = partial_transpose_ranks(st.op, tol)
        rows.append(
            {
                "name": name,
                "shape": shape.label(),
                "ppt": is_ppt(st.unit, tol).ok,
                "full": is_full(st.op, tol),
                "min_pt_rank": min(ranks.values()),
                "rank": numerical_rank(st.op, tol),
            }
        )
    return rows
