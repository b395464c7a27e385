"""The real vector space H of Hermitian operators on a multipartite system.

Provides spectral decomposition, rank and positivity decisions under a shared
tolerance policy, partial transposes (the group of 2^n of them), principal
minor sums, and the real-span rank used by all dimension measurements.

The isomorphism H = R^(d^2) is fixed once by :func:`herm_real_coords`:
diagonal entries first, then real parts and imaginary parts of the strict
upper triangle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .shapes import (
    HermOp,
    ProductVector,
    ShapeMismatchError,
    SystemShape,
    as_rng,
    expand,
    pure_state,
)

__all__ = [
    "TolPolicy",
    "DEFAULT_TOL",
    "EigenData",
    "TransposeMask",
    "PptReport",
    "eigh",
    "numerical_rank",
    "is_psd",
    "partial_transpose",
    "partial_transpose_matrix",
    "all_masks",
    "principal_minor_sums",
    "is_ppt",
    "is_full",
    "partial_transpose_ranks",
    "herm_real_coords",
    "real_span_rank",
    "complex_span_rank",
    "herm_to_json",
    "herm_from_json",
    "random_hermitian",
    "random_psd",
    "random_separable",
]


@dataclass(frozen=True)
class TolPolicy:
    """Relative tolerances shared by every rank / positivity decision.

    The rank cutoff is ``rank_rtol * max(1, largest |eigenvalue|)`` (or largest
    singular value); operators handled here range over scales from ~1/9 to ~9,
    so a purely relative cutoff would misbehave near zero operators.
    """

    rank_rtol: float = 1e-8
    psd_tol: float = 1e-9


DEFAULT_TOL = TolPolicy()


@dataclass
class EigenData:
    """Spectral decomposition with eigenvalues sorted descending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # column k pairs with eigenvalues[k]


def eigh(op: HermOp) -> EigenData:
    """Full spectral decomposition of a Hermitian operator."""
    w, v = np.linalg.eigh(op.mat)
    return EigenData(w[::-1].copy(), v[:, ::-1].copy())


def eigvalsh(op: HermOp) -> np.ndarray:
    return np.linalg.eigvalsh(op.mat)


def numerical_rank(op: HermOp, tol: TolPolicy = DEFAULT_TOL) -> int:
    """Count of eigenvalues with |lambda| above the relative cutoff."""
    w = np.abs(eigvalsh(op))
    cutoff = tol.rank_rtol * max(1.0, float(w.max(initial=0.0)))
    return int(np.count_nonzero(w > cutoff))


def is_psd(op: HermOp, tol: TolPolicy = DEFAULT_TOL) -> bool:
    w = eigvalsh(op)
    scale = max(1.0, float(np.abs(w).max(initial=0.0)))
    return bool(w.min() >= -tol.psd_tol * scale)


@dataclass(frozen=True)
class TransposeMask:
    """A subset S of parties (1-based) selecting the partial transpose Gamma_S."""

    shape: SystemShape
    parties: frozenset

    def __post_init__(self):
        parties = frozenset(int(p) for p in self.parties)
        object.__setattr__(self, "parties", parties)
        if any(p < 1 or p > self.shape.n for p in parties):
            raise ValueError(f"party indices must lie in 1..{self.shape.n}")

    def label(self) -> str:
        if not self.parties:
            return "id"
        return "G" + "".join(str(p) for p in sorted(self.parties))


def all_masks(shape: SystemShape) -> list:
    """All 2^n transpose masks, ordered by subset size then lexicographically."""
    masks = [TransposeMask(shape, frozenset())]
    for r in range(1, shape.n + 1):
        for combo in combinations(range(1, shape.n + 1), r):
            masks.append(TransposeMask(shape, frozenset(combo)))
    return masks


def partial_transpose_matrix(mat: np.ndarray, dims, parties) -> np.ndarray:
    """Partial transpose of a raw matrix; ``parties`` are 1-based indices."""
    dims = tuple(dims)
    n = len(dims)
    d = int(np.prod(dims))
    t = np.asarray(mat).reshape(dims + dims)
    axes = list(range(2 * n))
    for p in parties:
        i = p - 1
        axes[i], axes[n + i] = axes[n + i], axes[i]
    return t.transpose(axes).reshape(d, d)


def partial_transpose(op: HermOp, mask: TransposeMask) -> HermOp:
    if mask.shape != op.shape:
        raise ShapeMismatchError("mask shape differs from operator shape")
    return HermOp(op.shape, partial_transpose_matrix(op.mat, op.shape.dims, mask.parties))


def principal_minor_sums(op: HermOp) -> np.ndarray:
    """(Phi_1, ..., Phi_d): sums of k x k principal minors.

    Computed as elementary symmetric polynomials of the eigenvalues, which is
    mathematically identical to the minor sums and stays feasible at d = 81
    where minor enumeration is not.
    """
    w = eigvalsh(op)
    coeffs = np.poly(w)  # coeffs[k] = (-1)^k e_k(w)
    signs = (-1.0) ** np.arange(1, len(w) + 1)
    return signs * coeffs[1:]


@dataclass
class PptReport:
    ok: bool
    min_eigs: tuple  # (mask label, min eigenvalue) per mask, all 2^n masks


def is_ppt(op: HermOp, tol: TolPolicy = DEFAULT_TOL) -> PptReport:
    """PSD check of every partial transpose, with the per-mask minima."""
    rows = []
    ok = True
    for mask in all_masks(op.shape):
        pt = partial_transpose(op, mask)
        w = eigvalsh(pt)
        scale = max(1.0, float(np.abs(w).max()))
        rows.append((mask.label(), float(w.min())))
        if w.min() < -tol.psd_tol * scale:
            ok = False
    return PptReport(ok, tuple(rows))


def partial_transpose_ranks(op: HermOp, tol: TolPolicy = DEFAULT_TOL) -> dict:
    return {
        mask.label(): numerical_rank(partial_transpose(op, mask), tol)
        for mask in all_masks(op.shape)
    }


def is_full(op: HermOp, tol: TolPolicy = DEFAULT_TOL) -> bool:
    """True iff every partial transpose (identity included) has full rank."""
    d = op.shape.d
    return all(r == d for r in partial_transpose_ranks(op, tol).values())


def herm_real_coords(op: HermOp) -> np.ndarray:
    """Flatten to R^(d^2): diagonal, then Re and Im of the upper triangle."""
    m = op.mat
    iu = np.triu_indices(op.d, 1)
    return np.concatenate([m.diagonal().real, m[iu].real, m[iu].imag])


def real_span_rank(ops, tol: TolPolicy = DEFAULT_TOL) -> int:
    """Rank of the real span of a family of Hermitian operators inside H."""
    ops = list(ops)
    if not ops:
        raise ValueError("empty operator family")
    stack = np.stack([herm_real_coords(op) for op in ops])
    return matrix_rank(stack, tol)


def matrix_rank(mat: np.ndarray, tol: TolPolicy = DEFAULT_TOL) -> int:
    """SVD rank with the same relative cutoff as :func:`numerical_rank`."""
    s = np.linalg.svd(np.asarray(mat), compute_uv=False)
    cutoff = tol.rank_rtol * max(1.0, float(s.max(initial=0.0)))
    return int(np.count_nonzero(s > cutoff))


def complex_span_rank(vectors, tol: TolPolicy = DEFAULT_TOL) -> int:
    return matrix_rank(np.stack([np.asarray(v, dtype=complex) for v in vectors]), tol)


def herm_to_json(op: HermOp) -> dict:
    """JSON object {shape, entries as [[re, im], ...]} in row-major order."""
    entries = [
        [[float(z.real), float(z.imag)] for z in row] for row in op.mat
    ]
    return {"shape": list(op.shape.dims), "entries": entries}


def herm_from_json(data: dict) -> HermOp:
    shape = SystemShape(tuple(data["shape"]))
    mat = np.array(
        [[complex(re, im) for re, im in row] for row in data["entries"]]
    )
    return HermOp(shape, mat)


def random_hermitian(shape: SystemShape, seed, scale: float = 1.0) -> HermOp:
    rng = as_rng(seed)
    d = shape.d
    m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return HermOp(shape, scale * (m + m.conj().T) / 2)


def random_psd(shape: SystemShape, seed, rank: int | None = None) -> HermOp:
    rng = as_rng(seed)
    d = shape.d
    k = d if rank is None else rank
    a = rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))
    return HermOp(shape, a @ a.conj().T)


def random_separable(shape: SystemShape, seed, terms: int | None = None) -> HermOp:
    """Random convex mixture of product projectors (unit trace)."""
    from .shapes import product_projector, sample_product_vector

    rng = as_rng(seed)
    k = terms if terms is not None else 2 * shape.d
    weights = rng.dirichlet(np.ones(k))
    mat = np.zeros((shape.d, shape.d), dtype=complex)
    for w in weights:
        mat += w * product_projector(sample_product_vector(shape, rng)).mat
    return HermOp(shape, mat)
