"""Multipartite index arithmetic, product vectors, and tensor plumbing.

Conventions fixed once here and relied on everywhere else:

- Multi-indices are row-major with party 1 slowest, so expanding a product
  vector ``|a1> x ... x |an>`` is a chained Kronecker product in party order.
- A product vector is gauge-fixed by normalizing each factor to unit norm and
  rotating its phase so the first non-negligible component is real and >= 0.
  This makes deduplication of product vectors well defined.
- ``HermOp`` stores its matrix exactly symmetrized, ``(M + M^dag) / 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np

GAUGE_TOL = 1e-12
HERM_ATOL = 1e-12

Seed = "int | np.random.Generator"


class ShapeMismatchError(ValueError):
    """Operands carry incompatible system shapes."""


def as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass(frozen=True)
class SystemShape:
    """Dimension vector (d_1, ..., d_n) of a multipartite system.

    Local dimensions must be >= 2.  A single-factor shape (n = 1) is allowed
    as a helper for operators living on one tensor slot; the geometry routines
    that are intrinsically multipartite check n >= 2 themselves.
    """

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "dims", dims)
        if len(dims) < 1:
            raise ValueError("need at least one factor")
        if any(d < 2 for d in dims):
            raise ValueError(f"local dimensions must be >= 2, got {dims}")

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def d(self) -> int:
        return math.prod(self.dims)

    def label(self) -> str:
        return "x".join(str(d) for d in self.dims)

    @classmethod
    def parse(cls, text: str) -> "SystemShape":
        """Parse a label like ``"3x3"`` or ``"2x2x2"``."""
        try:
            dims = tuple(int(p) for p in text.lower().split("x"))
        except ValueError as exc:
            raise ValueError(f"cannot parse shape {text!r}") from exc
        return cls(dims)


def gauge_fix(vec: np.ndarray) -> np.ndarray:
    """Normalize and rotate so the first component above GAUGE_TOL is real >= 0."""
    v = np.asarray(vec, dtype=complex)
    norm = np.linalg.norm(v)
    if norm == 0:
        raise ValueError("cannot gauge-fix the zero vector")
    v = v / norm
    idx = int(np.argmax(np.abs(v) > GAUGE_TOL))
    phase = v[idx] / abs(v[idx])
    return v * phase.conjugate()


@dataclass
class ProductVector:
    """A product vector given by its per-party factors."""

    shape: SystemShape
    factors: tuple

    def __post_init__(self):
        factors = tuple(np.asarray(f, dtype=complex) for f in self.factors)
        object.__setattr__(self, "factors", factors)
        if len(factors) != self.shape.n:
            raise ShapeMismatchError(
                f"{len(factors)} factors for an {self.shape.n}-party shape"
            )
        for f, d in zip(factors, self.shape.dims):
            if f.shape != (d,):
                raise ShapeMismatchError(f"factor of length {f.shape} != ({d},)")
            if not np.all(np.isfinite(f)):
                raise ValueError("non-finite factor entries")
            if np.linalg.norm(f) == 0:
                raise ValueError("zero factor in product vector")

    def normalized(self) -> "ProductVector":
        return ProductVector(self.shape, tuple(gauge_fix(f) for f in self.factors))


def expand(pv: ProductVector) -> np.ndarray:
    """Kronecker expansion into C^d, party 1 slowest."""
    out = pv.factors[0]
    for f in pv.factors[1:]:
        out = np.kron(out, f)
    return out


def sample_product_vector(shape: SystemShape, seed) -> ProductVector:
    """Gauge-fixed product vector with i.i.d. complex-Gaussian factors."""
    rng = as_rng(seed)
    factors = []
    for d in shape.dims:
        f = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        factors.append(gauge_fix(f))
    return ProductVector(shape, tuple(factors))


def pv_fidelity(a: ProductVector, b: ProductVector) -> float:
    """Squared overlap of the normalized expansions, computed factor-wise."""
    if a.shape != b.shape:
        raise ShapeMismatchError("fidelity of product vectors on different shapes")
    fid = 1.0
    for fa, fb in zip(a.factors, b.factors):
        ua = fa / np.linalg.norm(fa)
        ub = fb / np.linalg.norm(fb)
        fid *= abs(np.vdot(ua, ub)) ** 2
    return fid


def conjugate_factors(pv: ProductVector, parties) -> ProductVector:
    """Complex-conjugate the factors of the given 1-based parties."""
    parties = set(parties)
    factors = tuple(
        f.conj() if (i + 1) in parties else f for i, f in enumerate(pv.factors)
    )
    return ProductVector(pv.shape, factors)


@dataclass
class HermOp:
    """A d x d Hermitian operator tagged with its SystemShape."""

    shape: SystemShape
    mat: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.mat, dtype=complex)
        d = self.shape.d
        if m.shape != (d, d):
            raise ShapeMismatchError(f"matrix shape {m.shape} != ({d}, {d})")
        if not np.all(np.isfinite(m)):
            raise ValueError("non-finite matrix entries")
        scale = max(1.0, float(np.abs(m).max()))
        if np.abs(m - m.conj().T).max() > HERM_ATOL * scale:
            raise ValueError("matrix is not Hermitian within tolerance")
        object.__setattr__(self, "mat", (m + m.conj().T) / 2)

    @property
    def d(self) -> int:
        return self.shape.d

    def trace(self) -> float:
        return float(self.mat.trace().real)


def identity_op(shape: SystemShape) -> HermOp:
    return HermOp(shape, np.eye(shape.d))


def pure_state(vec, shape: SystemShape, normalize: bool = True) -> HermOp:
    """Projector-like operator |v><v| (normalized to a unit vector by default)."""
    v = np.asarray(vec, dtype=complex)
    if normalize:
        v = v / np.linalg.norm(v)
    return HermOp(shape, np.outer(v, v.conj()))


def product_projector(pv: ProductVector) -> HermOp:
    return pure_state(expand(pv), pv.shape, normalize=True)


def symmetric_projector(shape: SystemShape) -> HermOp:
    """Orthogonal projector onto the symmetric subspace of (C^d1)^(x n).

    Requires all local dimensions equal.  Trace equals binom(n + d1 - 1, n).
    """
    if len(set(shape.dims)) != 1:
        raise ShapeMismatchError("symmetric projector needs equal local dimensions")
    n, d1, d = shape.n, shape.dims[0], shape.d
    idx = np.stack(
        np.meshgrid(*[np.arange(d1)] * n, indexing="ij"), axis=-1
    ).reshape(d, n)
    cols = np.ravel_multi_index(idx.T, shape.dims)
    mat = np.zeros((d, d))
    for perm in permutations(range(n)):
        rows = np.ravel_multi_index(idx[:, perm].T, shape.dims)
        np.add.at(mat, (rows, cols), 1.0)
    return HermOp(shape, mat / math.factorial(n))


def compose_shapes(a: SystemShape, b: SystemShape) -> SystemShape:
    if a.n != b.n:
        raise ShapeMismatchError("composing shapes with different party counts")
    return SystemShape(tuple(x * y for x, y in zip(a.dims, b.dims)))


def compose(rho: HermOp, sigma: HermOp) -> HermOp:
    """Tensor product regrouped so party i of the result is (A_i, B_i) merged.

    Index order within each merged party keeps the A factor slowest, matching
    the expansion convention, so product vectors compose factor-wise.
    """
    merged = compose_shapes(rho.shape, sigma.shape)
    n = rho.shape.n
    da, db = rho.shape.dims, sigma.shape.dims
    t = np.kron(rho.mat, sigma.mat).reshape(da + db + da + db)
    perm = []
    for i in range(n):
        perm += [i, n + i]
    t = t.transpose(perm + [2 * n + p for p in perm])
    return HermOp(merged, t.reshape(merged.d, merged.d))


def compose_product_vectors(a: ProductVector, b: ProductVector) -> ProductVector:
    merged = compose_shapes(a.shape, b.shape)
    factors = tuple(np.kron(fa, fb) for fa, fb in zip(a.factors, b.factors))
    return ProductVector(merged, factors)
