"""Face dimensions of the separable-state body, measured by sampled spans.

The dimension of a face is obtained as the rank of the real span of sampled
extreme points (pure product states), minus one for the unit-trace affine
constraint.  The samplers hit every open subset of the relevant product-vector
sets, so the measured rank equals the true dimension with probability 1; it is
nevertheless reported side by side with the closed-form value, and a mismatch
is an error state for the callers, never silently accepted.

Closed forms implemented here:

- hyperplane orthogonal to a product vector:  d^2 - 1 - prod(2 d_i - 1)
- hyperplane orthogonal to a Schmidt-rank-2 vector (bipartite):  d (d - 2)
- symmetric face (all d_i equal):  binom(n + d1 - 1, n)^2 - 1
- its transpose-invariant core:  binom(2n + d1 - 1, 2n) - 1
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations

import numpy as np

from .hermspace import (
    DEFAULT_TOL,
    TolPolicy,
    TransposeMask,
    all_masks,
    herm_real_coords,
    matrix_rank,
    partial_transpose,
    random_hermitian,
    real_span_rank,
)
from .shapes import (
    HermOp,
    ProductVector,
    ShapeMismatchError,
    SystemShape,
    as_rng,
    expand,
    gauge_fix,
    product_projector,
    pure_state,
    symmetric_projector,
)

MAX_RESAMPLES = 100


class DegenerateSampleError(RuntimeError):
    """The linear constraint on the sampled factor vanished repeatedly."""


# ---------------------------------------------------------------------------
# closed-form dimensions


def product_hyperplane_dim_formula(shape: SystemShape) -> int:
    d = shape.d
    return d * d - 1 - math.prod(2 * di - 1 for di in shape.dims)


def schmidt2_hyperplane_dim_formula(shape: SystemShape) -> int:
    if shape.n != 2:
        raise ShapeMismatchError("Schmidt-rank-2 hyperplane formula is bipartite")
    d = shape.d
    return d * (d - 2)


def symmetric_face_dim_formula(shape: SystemShape) -> int:
    _require_equal_dims(shape)
    return math.comb(shape.n + shape.dims[0] - 1, shape.n) ** 2 - 1


def sym_space_dim_formula(shape: SystemShape) -> int:
    _require_equal_dims(shape)
    return math.comb(shape.n + shape.dims[0] - 1, shape.n) ** 2


def sym_real_space_dim_formula(shape: SystemShape) -> int:
    _require_equal_dims(shape)
    b = math.comb(shape.n + shape.dims[0] - 1, shape.n)
    return b * (b + 1) // 2


def theta_space_dim_formula(shape: SystemShape) -> int:
    _require_equal_dims(shape)
    return math.comb(2 * shape.n + shape.dims[0] - 1, 2 * shape.n)


def count_generic_pv(shape: SystemShape) -> int:
    """Number of product vectors in a generic subspace of dimension
    d - sum(d_i - 1), as a multinomial coefficient (exact integers)."""
    total = sum(di - 1 for di in shape.dims)
    n = math.factorial(total)
    for di in shape.dims:
        n //= math.factorial(di - 1)
    return n


def _require_equal_dims(shape: SystemShape):
    if len(set(shape.dims)) != 1:
        raise ShapeMismatchError("operation requires equal local dimensions")


# ---------------------------------------------------------------------------
# hyperplane specifications and product-vector samplers


@dataclass
class HyperplaneSpec:
    """A hyperplane V = |normal>^perp together with the kind of its normal."""

    shape: SystemShape
    normal: np.ndarray
    kind: str  # "product" | "schmidt-rank-2" | "general"
    product_factors: ProductVector | None = None

    def __post_init__(self):
        v = np.asarray(self.normal, dtype=complex)
        if v.shape != (self.shape.d,):
            raise ShapeMismatchError("normal length differs from system dimension")
        if np.linalg.norm(v) == 0:
            raise ValueError("hyperplane normal must be nonzero")
        self.normal = v / np.linalg.norm(v)
        if self.kind == "product":
            if self.product_factors is None:
                raise ValueError("product kind requires the factor decomposition")
            dev = np.abs(
                self.normal
                - gauge_fix(expand(self.product_factors.normalized()))
            ).max()
            if dev > 1e-10:
                raise ValueError("normal does not factor as the given product vector")

    @classmethod
    def from_product(cls, pv: ProductVector) -> "HyperplaneSpec":
        pv = pv.normalized()
        return cls(pv.shape, gauge_fix(expand(pv)), "product", pv)

    @classmethod
    def schmidt2(cls, shape: SystemShape) -> "HyperplaneSpec":
        """Canonical Schmidt-rank-2 normal |0,1> - |1,0> in the leading block."""
        if shape.n != 2:
            raise ShapeMismatchError("Schmidt-rank-2 normal is bipartite")
        v = np.zeros(shape.d, dtype=complex)
        d2 = shape.dims[1]
        v[0 * d2 + 1] = 1.0
        v[1 * d2 + 0] = -1.0
        return cls(shape, v, "schmidt-rank-2")

    @classmethod
    def general(cls, shape: SystemShape, normal) -> "HyperplaneSpec":
        return cls(shape, np.asarray(normal, dtype=complex), "general")

    def formula_dim(self) -> int | None:
        if self.kind == "product":
            return product_hyperplane_dim_formula(self.shape)
        if self.kind == "schmidt-rank-2":
            return schmidt2_hyperplane_dim_formula(self.shape)
        return None


def _orth_complement_sample(vec: np.ndarray, rng) -> np.ndarray:
    """Random unit vector orthogonal to ``vec`` (Hermitian inner product)."""
    d = len(vec)
    u = vec / np.linalg.norm(vec)
    x = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    x -= np.vdot(u, x) * u
    n = np.linalg.norm(x)
    if n < 1e-12:
        raise DegenerateSampleError("orthogonal complement draw collapsed")
    return x / n


def sample_pv_in_hyperplane(spec: HyperplaneSpec, seed) -> ProductVector:
    """Random product vector inside the hyperplane.

    For a product normal |a_1,...,a_n>, a product vector lies in the
    hyperplane iff some factor is orthogonal to the matching a_i, so the
    constrained party is chosen uniformly and its factor is drawn from
    a_i^perp.  Otherwise all factors but the first are drawn freely and the
    single linear constraint is solved on the first factor.
    """
    rng = as_rng(seed)
    shape = spec.shape
    if spec.kind == "product":
        i = int(rng.integers(shape.n))
        factors = []
        for j, d in enumerate(shape.dims):
            if j == i:
                a = spec.product_factors.factors[j]
                factors.append(_orth_complement_sample(a, rng))
            else:
                f = rng.standard_normal(d) + 1j * rng.standard_normal(d)
                factors.append(f)
        return ProductVector(shape, tuple(gauge_fix(f) for f in factors)).normalized()

    d1 = shape.dims[0]
    rest_dim = shape.d // d1
    nmat = spec.normal.reshape(d1, rest_dim)
    for _ in range(MAX_RESAMPLES):
        rest = [
            rng.standard_normal(d) + 1j * rng.standard_normal(d)
            for d in shape.dims[1:]
        ]
        rest_vec = rest[0]
        for f in rest[1:]:
            rest_vec = np.kron(rest_vec, f)
        # <normal | x1 (x) rest> = sum_j x1[j] w[j] with w below; the solution
        # space is the complement of conj(w).
        w = nmat.conj() @ rest_vec
        if np.linalg.norm(w) < 1e-9:
            continue
        x1 = _orth_complement_sample(w.conj(), rng)
        pv = ProductVector(shape, tuple([x1] + rest)).normalized()
        if abs(np.vdot(spec.normal, expand(pv))) <= 1e-10:
            return pv
    raise DegenerateSampleError("could not sample a product vector in the hyperplane")


# ---------------------------------------------------------------------------
# face-dimension reports


@dataclass
class FaceDimReport:
    shape: SystemShape
    kind: str
    sampled_count: int
    span_rank: int
    face_dim: int
    formula_dim: int | None
    agreement: bool | None
    stable: bool

    def row(self) -> dict:
        return {
            "shape": self.shape.label(),
            "kind": self.kind,
            "sampled_dim": self.face_dim,
            "formula_dim": self.formula_dim,
            "match": self.agreement,
        }


def _span_report(shape, kind, coords, formula_dim, tol) -> FaceDimReport:
    half = matrix_rank(coords[: max(1, len(coords) // 2)], tol)
    full = matrix_rank(coords, tol)
    face_dim = full - 1
    agreement = None if formula_dim is None else (face_dim == formula_dim)
    return FaceDimReport(
        shape=shape,
        kind=kind,
        sampled_count=len(coords),
        span_rank=full,
        face_dim=face_dim,
        formula_dim=formula_dim,
        agreement=agreement,
        stable=(half == full),
    )


def face_dim_hyperplane(
    spec: HyperplaneSpec,
    samples: int | None = None,
    seed=0,
    tol: TolPolicy = DEFAULT_TOL,
) -> FaceDimReport:
    """Sampled dimension of the face induced by a hyperplane."""
    rng = as_rng(seed)
    count = samples if samples is not None else 3 * spec.shape.d**2
    coords = np.stack(
        [
            herm_real_coords(product_projector(sample_pv_in_hyperplane(spec, rng)))
            for _ in range(count)
        ]
    )
    kind = {"product": "product-hyperplane", "schmidt-rank-2": "rank2-hyperplane"}.get(
        spec.kind, "general-hyperplane"
    )
    return _span_report(spec.shape, kind, coords, spec.formula_dim(), tol)


def _symmetric_states(shape, rng, count, real):
    d1, n = shape.dims[0], shape.n
    coords = []
    for _ in range(count):
        if real:
            x = rng.standard_normal(d1).astype(complex)
        else:
            x = rng.standard_normal(d1) + 1j * rng.standard_normal(d1)
        pv = ProductVector(shape, tuple([x] * n)).normalized()
        coords.append(herm_real_coords(product_projector(pv)))
    return np.stack(coords)


def symmetric_face_dim(
    shape: SystemShape,
    samples: int | None = None,
    seed=0,
    tol: TolPolicy = DEFAULT_TOL,
) -> FaceDimReport:
    """Dimension of the face spanned by |x,...,x><x,...,x| over complex x."""
    _require_equal_dims(shape)
    rng = as_rng(seed)
    count = samples if samples is not None else 3 * shape.d**2
    coords = _symmetric_states(shape, rng, count, real=False)
    return _span_report(
        shape, "symmetric-face", coords, symmetric_face_dim_formula(shape), tol
    )


def real_symmetric_face_dim(
    shape: SystemShape,
    samples: int | None = None,
    seed=0,
    tol: TolPolicy = DEFAULT_TOL,
) -> FaceDimReport:
    """Dimension of the transpose-invariant face: |x,...,x> over real x."""
    _require_equal_dims(shape)
    rng = as_rng(seed)
    count = samples if samples is not None else 3 * shape.d**2
    coords = _symmetric_states(shape, rng, count, real=True)
    return _span_report(
        shape,
        "real-symmetric-face",
        coords,
        theta_space_dim_formula(shape) - 1,
        tol,
    )


# ---------------------------------------------------------------------------
# transpose-invariant operator basis and subspace dimensions


def theta_basis(shape: SystemShape) -> list:
    """Orthogonal basis of the range-symmetric transpose-fixed operators.

    One operator per sorted multiset l of length 2n over {0, ..., d1 - 1}:
    the sum of |j1..jn><k1..kn| over all arrangements of l into (j, k).
    """
    _require_equal_dims(shape)
    n, d1, d = shape.n, shape.dims[0], shape.d
    ops = []
    for l in combinations_with_replacement(range(d1), 2 * n):
        mat = np.zeros((d, d))
        for arrangement in set(permutations(l)):
            row = np.ravel_multi_index(arrangement[:n], shape.dims)
            col = np.ravel_multi_index(arrangement[n:], shape.dims)
            mat[row, col] += 1.0
        ops.append(HermOp(shape, mat))
    return ops


def theta_average(op: HermOp) -> HermOp:
    """Group average over all 2^n partial transposes (projects onto H^Theta)."""
    acc = np.zeros_like(op.mat)
    masks = all_masks(op.shape)
    for mask in masks:
        acc += partial_transpose(op, mask).mat
    return HermOp(op.shape, acc / len(masks))


def real_sym_subspace_dims(
    shape: SystemShape,
    seed=0,
    samples: int | None = None,
    tol: TolPolicy = DEFAULT_TOL,
) -> dict:
    """Measured ranks of (H_s, H_s^re, H_s^Theta) against their closed forms.

    H_s is sampled by compressing random Hermitian operators with the
    symmetric projector, H_s^re likewise from real symmetric ones, and the
    transpose-fixed part is ranked from its explicit multiset basis.
    """
    _require_equal_dims(shape)
    rng = as_rng(seed)
    count = samples if samples is not None else sym_space_dim_formula(shape) + 40
    ps = symmetric_projector(shape).mat
    hs, hsre = [], []
    for _ in range(count):
        m = random_hermitian(shape, rng).mat
        hs.append(HermOp(shape, ps @ m @ ps))
        s = rng.standard_normal((shape.d, shape.d))
        hsre.append(HermOp(shape, ps @ ((s + s.T) / 2) @ ps))
    measured = (
        real_span_rank(hs, tol),
        real_span_rank(hsre, tol),
        real_span_rank(theta_basis(shape), tol),
    )
    formulas = (
        sym_space_dim_formula(shape),
        sym_real_space_dim_formula(shape),
        theta_space_dim_formula(shape),
    )
    return {
        "measured": measured,
        "formula": formulas,
        "match": measured == formulas,
    }


def ambient_space_dims(
    shape: SystemShape,
    seed=0,
    samples: int | None = None,
    tol: TolPolicy = DEFAULT_TOL,
) -> tuple:
    """Measured ranks of (H, H^re, H^Theta) from random samples."""
    rng = as_rng(seed)
    count = samples if samples is not None else shape.d**2 + 40
    h, hre, htheta = [], [], []
    for _ in range(count):
        m = random_hermitian(shape, rng)
        h.append(m)
        s = rng.standard_normal((shape.d, shape.d))
        hre.append(HermOp(shape, (s + s.T) / 2))
        htheta.append(theta_average(random_hermitian(shape, rng)))
    return (
        real_span_rank(h, tol),
        real_span_rank(hre, tol),
        real_span_rank(htheta, tol),
    )


# ---------------------------------------------------------------------------
# the face generated by a pair of pure product states


@dataclass(frozen=True)
class PairFace:
    kind: str  # "segment" | "bloch-family"
    party: int | None = None  # 1-based index of the free slot, bloch case only


def face_of_pair(a: ProductVector, b: ProductVector, tol: float = 1e-10) -> PairFace:
    """Classify the face generated by two pure product states.

    Two or more non-parallel factor pairs give a line segment (the sum vector
    is entangled); exactly one gives the two-parameter family over the Bloch
    sphere of lin{a_i, b_i}.
    """
    if a.shape != b.shape:
        raise ShapeMismatchError("pair on different shapes")
    a = a.normalized()
    b = b.normalized()
    nonparallel = [
        i + 1
        for i, (fa, fb) in enumerate(zip(a.factors, b.factors))
        if abs(np.vdot(fa, fb)) < 1.0 - tol
    ]
    if not nonparallel:
        raise ValueError("product vectors are parallel")
    if len(nonparallel) >= 2:
        return PairFace("segment")
    return PairFace("bloch-family", nonparallel[0])
