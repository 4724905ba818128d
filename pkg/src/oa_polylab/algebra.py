"""Finite-dimensional tracial von Neumann algebras and their elements.

An algebra here is a direct sum of full complex matrix blocks
``M_{d_1} + ... + M_{d_k}`` carrying the weighted trace

    tau(x) = sum_k  weight_k * Tr(x_k),        weight_k > 0.

Every normal semifinite faithful trace on such an algebra is of this
form, so the pair (algebra, weights) is the complete finite-dimensional
model of a tracial von Neumann algebra.  Elements are block-diagonal
operators stored as dense complex matrices, immutable after
construction; all operations are pure.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass

import numpy as np

from .errors import StructuralError, UsageError

#: Soft cap on a single block dimension.  The dense O(dim^3) sweeps used
#: throughout stay desk-scale below this; raise it at your own risk.
MAX_BLOCK_DIM = 64

RANDOM_KINDS = ("general", "hermitian", "positive", "projection")


@dataclass(frozen=True)
class TracialAlgebra:
    """Direct sum of matrix blocks with strictly positive trace weights.

    ``blocks`` is an ordered tuple of ``(dim, weight)`` pairs.  Equality
    and hashing are structural, so two algebras with the same block data
    are interchangeable.
    """

    blocks: tuple[tuple[int, float], ...]

    def __post_init__(self):
        entries = []
        for entry in self.blocks:
            dim, weight = entry
            dim = int(dim)
            weight = float(weight)
            if dim < 1:
                raise StructuralError(f"block dimension must be >= 1, got {dim}")
            if dim > MAX_BLOCK_DIM:
                raise StructuralError(
                    f"block dimension {dim} exceeds the supported cap {MAX_BLOCK_DIM}"
                )
            if not (weight > 0.0 and np.isfinite(weight)):
                raise StructuralError(f"trace weights must be finite and > 0, got {weight}")
            entries.append((dim, weight))
        if not entries:
            raise StructuralError("an algebra needs at least one block")
        object.__setattr__(self, "blocks", tuple(entries))

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(dim for dim, _ in self.blocks)

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(weight for _, weight in self.blocks)

    @property
    def total_matrix_dim(self) -> int:
        """Linear dimension of the algebra, sum of dim_k**2."""
        return sum(dim * dim for dim in self.dims)

    def is_commutative(self) -> bool:
        return all(dim == 1 for dim in self.dims)

    def element(self, blocks, copy: bool = True) -> "Element":
        return Element(self, blocks, copy=copy)

    def zero(self) -> "Element":
        return Element(
            self, [np.zeros((d, d), dtype=np.complex128) for d in self.dims], copy=False
        )

    def identity(self) -> "Element":
        return Element(
            self, [np.eye(d, dtype=np.complex128) for d in self.dims], copy=False
        )

    def matrix_unit(self, block: int, i: int, j: int) -> "Element":
        """The element E_ij living in the given block, zero elsewhere."""
        mats = [np.zeros((d, d), dtype=np.complex128) for d in self.dims]
        mats[block][i, j] = 1.0
        return Element(self, mats, copy=False)

    def matrix_units(self):
        """Yield ``(block, i, j, E_ij)`` over the full matrix-unit basis."""
        for k, dim in enumerate(self.dims):
            for i in range(dim):
                for j in range(dim):
                    yield k, i, j, self.matrix_unit(k, i, j)

    def __repr__(self):
        parts = "+".join(f"M{d}(w={w:g})" for d, w in self.blocks)
        return f"TracialAlgebra({parts})"


class Element:
    """A block-diagonal operator in a :class:`TracialAlgebra`.

    Arithmetic follows the *-algebra structure: ``+``, ``-``, scalar
    ``*``/``/``, operator product ``@`` and :meth:`adjoint`.  Instances
    are immutable; the underlying arrays are marked read-only.
    """

    __slots__ = ("algebra", "blocks")

    def __init__(self, algebra: TracialAlgebra, blocks, copy: bool = True):
        if len(blocks) != algebra.n_blocks:
            raise StructuralError(
                f"expected {algebra.n_blocks} blocks, got {len(blocks)}"
            )
        mats = []
        for dim, raw in zip(algebra.dims, blocks):
            arr = np.array(raw, dtype=np.complex128, copy=True) if copy else np.asarray(
                raw, dtype=np.complex128
            )
            if arr.shape != (dim, dim):
                raise StructuralError(
                    f"block shape {arr.shape} does not match algebra dimension {dim}"
                )
            arr.setflags(write=False)
            mats.append(arr)
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "blocks", tuple(mats))

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    # -- arithmetic ----------------------------------------------------

    def _check_same_algebra(self, other: "Element"):
        if self.algebra != other.algebra:
            raise StructuralError("elements live in different algebras")

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check_same_algebra(other)
        return Element(
            self.algebra, [a + b for a, b in zip(self.blocks, other.blocks)], copy=False
        )

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check_same_algebra(other)
        return Element(
            self.algebra, [a - b for a, b in zip(self.blocks, other.blocks)], copy=False
        )

    def __neg__(self):
        return Element(self.algebra, [-a for a in self.blocks], copy=False)

    def __mul__(self, scalar):
        if not isinstance(scalar, numbers.Number):
            return NotImplemented
        z = complex(scalar)
        return Element(self.algebra, [z * a for a in self.blocks], copy=False)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if not isinstance(scalar, numbers.Number):
            return NotImplemented
        return self * (1.0 / complex(scalar))

    def __matmul__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check_same_algebra(other)
        return Element(
            self.algebra, [a @ b for a, b in zip(self.blocks, other.blocks)], copy=False
        )

    def adjoint(self) -> "Element":
        return Element(self.algebra, [a.conj().T for a in self.blocks], copy=False)

    def power(self, m: int) -> "Element":
        """Plain m-fold operator product (integer m >= 1)."""
        if not isinstance(m, numbers.Integral) or m < 1:
            raise UsageError(f"integer power must be >= 1, got {m}")
        out = self
        for _ in range(int(m) - 1):
            out = out @ self
        return out

    # -- trace and norms -----------------------------------------------

    def trace(self) -> complex:
        return complex(
            sum(w * np.trace(b) for (_, w), b in zip(self.algebra.blocks, self.blocks))
        )

    def norm_fro(self) -> float:
        """Unweighted Frobenius norm over all blocks (internal yardstick)."""
        return float(np.sqrt(sum(float(np.sum(np.abs(b) ** 2)) for b in self.blocks)))

    # -- predicate helpers ----------------------------------------------

    def hermiticity_defect(self) -> float:
        """Operator norm of x - x*."""
        from . import spectral

        return spectral.opnorm(self - self.adjoint())

    def is_hermitian(self, tol: float | None = None) -> bool:
        """||x - x*||_inf <= tol; default tol is 1e-10 * (1 + ||x||_inf)."""
        from . import spectral

        if tol is None:
            tol = 1e-10 * (1.0 + spectral.opnorm(self))
        return self.hermiticity_defect() <= tol

    def is_positive(self, tol: float | None = None) -> bool:
        """Hermitian with min eigenvalue >= -tol; same relative default tol."""
        from . import spectral

        if tol is None:
            tol = 1e-10 * (1.0 + spectral.opnorm(self))
        if self.hermiticity_defect() > tol:
            return False
        herm = (self + self.adjoint()) * 0.5
        data = spectral.eig_hermitian(herm, check=False)
        smallest = min(float(vals[0]) for vals in data.eigenvalues)
        return smallest >= -tol

    def is_projection(self, tol: float | None = None) -> bool:
        """Hermitian with ||x^2 - x||_inf <= tol; same relative default tol."""
        from . import spectral

        if tol is None:
            tol = 1e-10 * (1.0 + spectral.opnorm(self))
        if self.hermiticity_defect() > tol:
            return False
        return spectral.opnorm(self @ self - self) <= tol

    def __repr__(self):
        return f"Element({self.algebra!r}, fro={self.norm_fro():.6g})"


def trace(x: Element) -> complex:
    """Weighted trace tau(x) = sum_k weight_k * Tr(x_k)."""
    return x.trace()


# -- seeded random generation ------------------------------------------


def derive_seed(seed: int, *key: int) -> int:
    """Derive a child seed from ``seed`` and an index path, deterministically."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _complex_gaussian(rng: np.random.Generator, dim: int) -> np.ndarray:
    # standard complex normal: independent N(0, 1/2) real and imaginary parts
    re = rng.standard_normal((dim, dim))
    im = rng.standard_normal((dim, dim))
    return (re + 1j * im) / np.sqrt(2.0)


def sample_element(algebra: TracialAlgebra, kind: str, rng: np.random.Generator) -> Element:
    """Draw one element of the requested kind from an explicit generator.

    Kinds: ``general`` has i.i.d. standard complex Gaussian entries,
    ``hermitian`` is (g + g*)/2, ``positive`` is g*g, and ``projection``
    is the spectral projection of a random hermitian onto its positive
    eigenvalues.
    """
    if kind not in RANDOM_KINDS:
        raise UsageError(f"unknown random kind {kind!r}; pick one of {RANDOM_KINDS}")
    mats = []
    for dim in algebra.dims:
        g = _complex_gaussian(rng, dim)
        if kind == "general":
            mats.append(g)
        elif kind == "hermitian":
            mats.append((g + g.conj().T) / 2.0)
        elif kind == "positive":
            mats.append(g.conj().T @ g)
        else:  # projection
            from .spectral import _eig_block

            h = (g + g.conj().T) / 2.0
            vals, vecs = _eig_block(h)
            cols = vecs[:, vals > 0.0]
            mats.append(cols @ cols.conj().T)
    return Element(algebra, mats, copy=False)


def random_element(algebra: TracialAlgebra, kind: str = "general", seed: int = 0) -> Element:
    """Deterministic random element: same (algebra, kind, seed) gives identical bits."""
    rng = np.random.default_rng(np.random.SeedSequence(int(seed)))
    return sample_element(algebra, kind, rng)
