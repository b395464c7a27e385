"""Exact enumeration of product vectors in subspaces of C^2 x C^m.

A subspace V of the generic dimension m contains a product vector
(x0, x1) x y iff y lies in the kernel of x0 A0 + x1 A1, where the rows of
A0, A1 are the two blocks of an orthonormal basis of V^perp (conjugated).
Finite solutions come from the roots of det(A0 + t A1), found by polynomial
interpolation of the determinant and a companion-matrix root solve; the
x0 = 0 branch corresponds to the degree drop of that polynomial (det A1
singular).  A pencil whose determinant vanishes identically signals
infinitely many product vectors and is reported as a flag, not an error.

The expected count for a generic subspace is the multinomial
(sum(d_i - 1))! / prod((d_i - 1)!), which equals m for the 2 x m shapes
handled exactly here.  Larger first factors lead to genuinely multivariate
polynomial systems and are left to the hyperplane samplers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hermspace import DEFAULT_TOL, TolPolicy, complex_span_rank, real_span_rank
from .shapes import (
    ProductVector,
    ShapeMismatchError,
    SystemShape,
    as_rng,
    expand,
    product_projector,
)
from .faces import count_generic_pv

ROOT_MERGE_TOL = 1e-7
SINGULAR_RTOL = 1e-12
KERNEL_RTOL = 1e-7


@dataclass
class SubspaceSpec:
    """A subspace of C^d given by spanning rows."""

    shape: SystemShape
    basis: np.ndarray  # (dim, d), rows span V

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=complex)
        if b.ndim != 2 or b.shape[1] != self.shape.d:
            raise ShapeMismatchError("basis must be (dim, d)")
        s = np.linalg.svd(b, compute_uv=False)
        if s.min() <= 1e-10 * s.max():
            raise ValueError("basis rows are not linearly independent")
        self.basis = b

    @property
    def dim(self) -> int:
        return self.basis.shape[0]


def random_subspace(shape: SystemShape, seed, dim: int | None = None) -> SubspaceSpec:
    """Generic subspace of the dimension d - sum(d_i - 1) (by default)."""
    rng = as_rng(seed)
    k = dim if dim is not None else shape.d - sum(di - 1 for di in shape.dims)
    b = rng.standard_normal((k, shape.d)) + 1j * rng.standard_normal((k, shape.d))
    return SubspaceSpec(shape, b)


def orthonormal_complement(spec: SubspaceSpec) -> np.ndarray:
    """Rows n with <n|v> = 0 for all v in the subspace."""
    _, _, vh = np.linalg.svd(spec.basis)
    return vh[spec.dim :]


def subspace_residual(spec: SubspaceSpec, vec: np.ndarray) -> float:
    """Largest overlap of a unit vector with the orthogonal complement."""
    normals = orthonormal_complement(spec)
    v = vec / np.linalg.norm(vec)
    return float(np.abs(normals.conj() @ v).max()) if len(normals) else 0.0


@dataclass
class PencilProblem:
    spec: SubspaceSpec
    a0: np.ndarray  # (m, m)
    a1: np.ndarray


def build_pencil(spec: SubspaceSpec) -> PencilProblem:
    if spec.shape.n != 2 or spec.shape.dims[0] != 2:
        raise ShapeMismatchError("exact enumeration handles 2 x m shapes only")
    m = spec.shape.dims[1]
    if spec.dim != m:
        raise ShapeMismatchError(
            f"subspace dimension {spec.dim} != {m} (the generic dimension)"
        )
    normals = orthonormal_complement(spec)  # (m, 2m)
    blocks = normals.reshape(m, 2, m)
    return PencilProblem(spec, blocks[:, 0, :].conj(), blocks[:, 1, :].conj())


@dataclass
class EnumerationResult:
    vectors: list  # gauge-fixed ProductVectors
    residuals: list  # per-vector subspace residual
    infinite: bool  # identically-zero determinant, or a kernel of dim >= 2
    degenerate: bool  # merged roots or enlarged kernels encountered


def _det_poly_coeffs(a0: np.ndarray, a1: np.ndarray) -> np.ndarray:
    """Coefficients (ascending) of det(A0 + t A1) by interpolation at roots
    of unity, which keeps the Vandermonde solve well conditioned."""
    m = a0.shape[0]
    nodes = np.exp(2j * np.pi * np.arange(m + 1) / (m + 1))
    values = np.array([np.linalg.det(a0 + t * a1) for t in nodes])
    vander = np.vander(nodes, m + 1, increasing=True)
    return np.linalg.solve(vander, values)


def _kernel_vectors(mat: np.ndarray) -> list:
    u, s, vh = np.linalg.svd(mat)
    cutoff = KERNEL_RTOL * max(1.0, float(s.max(initial=0.0)))
    return [vh[i].conj() for i in range(len(s)) if s[i] <= cutoff] or [vh[-1].conj()]


def enumerate_pv(spec: SubspaceSpec, tol: TolPolicy = DEFAULT_TOL) -> EnumerationResult:
    """All product vectors in a generic m-dimensional subspace of C^2 x C^m."""
    pencil = build_pencil(spec)
    m = spec.shape.dims[1]
    coeffs = _det_poly_coeffs(pencil.a0, pencil.a1)
    scale = max(np.linalg.norm(pencil.a0, 2), np.linalg.norm(pencil.a1, 2)) ** m
    if np.abs(coeffs).max() <= SINGULAR_RTOL * max(1.0, scale):
        return EnumerationResult([], [], infinite=True, degenerate=False)

    # strip numerically-zero leading coefficients: each lost degree moves one
    # root to t = infinity, i.e. to the x0 = 0 branch below
    mags = np.abs(coeffs)
    deg = m
    while deg > 0 and mags[deg] <= 1e-10 * mags.max():
        deg -= 1
    roots = np.roots(coeffs[: deg + 1][::-1]) if deg > 0 else np.array([])

    merged = []
    for t in sorted(roots, key=lambda z: (round(z.real, 7), round(z.imag, 7))):
        if merged and abs(t - merged[-1]) <= ROOT_MERGE_TOL * max(1.0, abs(t)):
            continue
        merged.append(t)

    vectors, residuals = [], []
    degenerate = False
    candidates = [(1.0, t) for t in merged]
    if deg < m:
        candidates.append((0.0, 1.0))
    for x0, x1 in candidates:
        kmat = x0 * pencil.a0 + x1 * pencil.a1
        kernel = _kernel_vectors(kmat)
        if len(kernel) > 1:
            degenerate = True
        for y in kernel:
            pv = ProductVector(
                spec.shape, (np.array([x0, x1], dtype=complex), y)
            ).normalized()
            res = subspace_residual(spec, expand(pv))
            vectors.append(pv)
            residuals.append(res)
    return EnumerationResult(vectors, residuals, infinite=False, degenerate=degenerate)


@dataclass
class PiPolytopeReport:
    """Span data for the polytope of enumerated product states.

    The enumerated vectors span the subspace, so the linear span of their
    projectors has rank at least dim V = d - sum(d_i - 1); the affine
    dimension of the polytope itself is an open quantity and is only
    reported, never asserted.
    """

    count: int
    expected_count: int
    span_rank: int
    affine_dim: int
    linear_bound: int
    bound_ok: bool
    infinite: bool


def example_pi_polytope(shape: SystemShape, seed, tol: TolPolicy = DEFAULT_TOL) -> PiPolytopeReport:
    spec = random_subspace(shape, seed)
    result = enumerate_pv(spec, tol)
    bound = shape.d - sum(di - 1 for di in shape.dims)
    if result.infinite:
        return PiPolytopeReport(0, count_generic_pv(shape), 0, -1, bound, False, True)
    projectors = [product_projector(pv) for pv in result.vectors]
    rank = real_span_rank(projectors, tol)
    return PiPolytopeReport(
        count=len(result.vectors),
        expected_count=count_generic_pv(shape),
        span_rank=rank,
        affine_dim=rank - 1,
        linear_bound=bound,
        bound_ok=rank >= bound,
        infinite=False,
    )
