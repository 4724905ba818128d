"""Hermitian eigendecomposition and functional calculus.

The eigensolver is a cyclic Jacobi iteration on each complex Hermitian
block: sweep all (p, q) pivots, annihilate A[p, q] with a unitary
plane rotation, accumulate the rotations.  Convergence is declared when
the off-diagonal Frobenius mass drops below ``1e-14 * ||x||_F`` of the
input; at the dimensions supported here (<= 64) this takes a handful of
sweeps.  Eigenvalues come out sorted ascending per block, with exact
ties broken by a lexicographic ordering of the (phase-canonicalized)
eigenvector columns so repeated runs emit identical bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import Element, TracialAlgebra
from .errors import DomainError, PreconditionError, UsageError

_OFFDIAG_TOL = 1e-14
_MAX_SWEEPS = 100


def _lex_key(column: np.ndarray):
    return tuple((float(z.real), float(z.imag)) for z in column)


def _canonical_phases(vecs: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-modulus entry is real positive."""
    out = np.array(vecs)
    for j in range(out.shape[1]):
        col = out[:, j]
        k = int(np.argmax(np.abs(col)))
        pivot = col[k]
        mag = abs(pivot)
        if mag > 0.0:
            out[:, j] = col * (pivot.conjugate() / mag)
    return out


def _eig_block(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi on one Hermitian block; returns (ascending evals, unitary)."""
    n = a.shape[0]
    if n == 1:
        return np.array([a[0, 0].real]), np.ones((1, 1), dtype=np.complex128)

    A = np.array(a, dtype=np.complex128)
    V = np.eye(n, dtype=np.complex128)
    fro = math.sqrt(float(np.sum(np.abs(A) ** 2)))
    target = _OFFDIAG_TOL * fro
    skip = target / (2.0 * n * n)

    def _off2() -> float:
        # sum the off-diagonal squares directly; subtracting the diagonal
        # mass from the total cancels catastrophically near convergence
        sq = np.abs(A) ** 2
        np.fill_diagonal(sq, 0.0)
        return float(np.sum(sq))

    for _ in range(_MAX_SWEEPS):
        if _off2() <= target * target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                b = abs(apq)
                if b <= skip:
                    continue
                app = A[p, p].real
                aqq = A[q, q].real
                expphi = apq / b
                zeta = (aqq - app) / (2.0 * b)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c

                # A <- J* A J with J the plane rotation at (p, q)
                colp = A[:, p].copy()
                colq = A[:, q].copy()
                A[:, p] = (c * expphi) * colp - s * colq
                A[:, q] = (s * expphi) * colp + c * colq
                rowp = A[p, :].copy()
                rowq = A[q, :].copy()
                A[p, :] = (c * expphi.conjugate()) * rowp - s * rowq
                A[q, :] = (s * expphi.conjugate()) * rowp + c * rowq
                A[p, p] = app - t * b
                A[q, q] = aqq + t * b
                A[p, q] = 0.0
                A[q, p] = 0.0

                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = (c * expphi) * vp - s * vq
                V[:, q] = (s * expphi) * vp + c * vq
    else:
        if _off2() > target * target:
            raise ArithmeticError("Jacobi iteration failed to converge in 100 sweeps")

    vals = np.real(np.diag(A)).copy()
    V = _canonical_phases(V)
    order = list(np.argsort(vals, kind="stable"))
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and vals[order[j + 1]] == vals[order[i]]:
            j += 1
        if j > i:
            order[i : j + 1] = sorted(order[i : j + 1], key=lambda c: _lex_key(V[:, c]))
        i = j + 1
    order = np.array(order)
    return vals[order], V[:, order]


@dataclass(frozen=True)
class SpectralData:
    """Per-block eigenvalues (ascending) and the diagonalizing unitary."""

    eigenvalues: tuple[np.ndarray, ...]
    unitary: Element

    @property
    def algebra(self) -> TracialAlgebra:
        return self.unitary.algebra

    def apply(self, f) -> Element:
        """Assemble U f(Lambda) U* for a scalar map f acting on eigenvalue arrays."""
        mats = []
        for vals, u in zip(self.eigenvalues, self.unitary.blocks):
            fv = np.asarray(f(vals), dtype=np.complex128)
            mats.append((u * fv) @ u.conj().T)
        return Element(self.algebra, mats, copy=False)

    def max_abs_eigenvalue(self) -> float:
        return max(float(np.max(np.abs(v))) if v.size else 0.0 for v in self.eigenvalues)

    def min_eigenvalue(self) -> float:
        return min(float(v[0]) for v in self.eigenvalues)


def eig_hermitian(x: Element, check: bool = True) -> SpectralData:
    """Diagonalize a (numerically) Hermitian element.

    The hermiticity gate is measured in the Frobenius norm, which is
    cheap and within a factor sqrt(dim) of the operator-norm contract;
    inputs are either Hermitian to round-off or fail loudly.
    """
    if check:
        defect = (x - x.adjoint()).norm_fro()
        scale = 1e-8 * (1.0 + x.norm_fro())
        if defect > scale:
            raise PreconditionError(
                f"eig_hermitian needs a hermitian input; residual {defect:.3e} "
                f"exceeds {scale:.3e}"
            )
    vals = []
    vecs = []
    for block in x.blocks:
        v, u = _eig_block(block)
        v.setflags(write=False)
        vals.append(v)
        vecs.append(u)
    return SpectralData(tuple(vals), Element(x.algebra, vecs, copy=False))


#: Relative numerical-rank cutoff for singular values.  Values below
#: this fraction of the block maximum sit at or under the Gram noise
#: floor (~sqrt(eps)) and are treated as exact zeros; otherwise they
#: leak into quasi-norms, where s**p has infinite slope at 0.
SINGULAR_CLIP = 1e-6


def singular_values(x: Element) -> tuple[np.ndarray, ...]:
    """Ascending singular values per block, via the spectrum of x*x.

    Each block's values below ``SINGULAR_CLIP`` times its largest value
    are flushed to zero (numerical rank decision).
    """
    out = []
    for block in x.blocks:
        gram = block.conj().T @ block
        gram = (gram + gram.conj().T) / 2.0
        vals, _ = _eig_block(gram)
        s = np.sqrt(np.clip(vals, 0.0, None))
        top = float(s[-1]) if s.size else 0.0
        if top > 0.0:
            s[s < SINGULAR_CLIP * top] = 0.0
        out.append(s)
    return tuple(out)


def opnorm(x: Element) -> float:
    """Largest singular value of x."""
    return max(float(s[-1]) if s.size else 0.0 for s in singular_values(x))


def functional_calculus(x: Element, f) -> Element:
    """Apply a real scalar map to a Hermitian element through its spectrum.

    ``f`` is either a descriptor -- ``"abs"``, ``("power", alpha)``,
    ``("indicator", rho)`` or ``("indicator", rho, tol)`` -- or any
    callable mapping an eigenvalue array to an array.  Fractional powers
    additionally require the element to be positive; eigenvalues inside
    the negative round-off band are clamped to zero before the power is
    taken.
    """
    data = eig_hermitian(x)
    scale = 1.0 + data.max_abs_eigenvalue()

    if callable(f):
        return data.apply(f)
    if f == "abs":
        return data.apply(np.abs)
    if isinstance(f, tuple) and len(f) >= 2 and f[0] == "power":
        alpha = float(f[1])
        if alpha.is_integer() and alpha >= 0:
            return data.apply(lambda v: np.power(v, alpha))
        low = data.min_eigenvalue()
        if low < -1e-8 * scale:
            raise DomainError(
                f"fractional power {alpha} of a non-positive element "
                f"(min eigenvalue {low:.3e})"
            )
        if alpha < 0 and low <= 1e-8 * scale:
            raise DomainError(f"negative power {alpha} of a singular element")
        return data.apply(lambda v: np.power(np.clip(v, 0.0, None), alpha))
    if isinstance(f, tuple) and len(f) in (2, 3) and f[0] == "indicator":
        rho = float(f[1])
        tol = float(f[2]) if len(f) == 3 else 1e-8 * scale
        return data.apply(lambda v: (np.abs(v - rho) <= tol).astype(float))
    raise UsageError(f"unknown functional calculus descriptor {f!r}")


def spectral_projection(x: Element, rho: float, tol: float | None = None) -> Element:
    """Projection onto the eigenvalue cluster of ``x`` at ``rho``."""
    if tol is None:
        return functional_calculus(x, ("indicator", rho))
    return functional_calculus(x, ("indicator", rho, tol))


def support(x: Element, tol: float | None = None) -> Element:
    """Support projection of a positive element.

    Returns the spectral projection onto eigenvalues above the noise
    threshold ``1e-10 * max(lambda)``, the smallest projection e with
    e x = x e = x up to round-off.
    """
    if tol is None:
        tol = 1e-10 * (1.0 + opnorm(x))
    if not x.is_positive(tol):
        raise PreconditionError("support is only defined for positive elements")
    herm = (x + x.adjoint()) * 0.5
    data = eig_hermitian(herm, check=False)
    top = data.max_abs_eigenvalue()
    theta = 1e-10 * top
    return data.apply(lambda v: (v > theta).astype(float))


@dataclass(frozen=True)
class JordanQuad:
    """The four positive parts of x = x1 - x2 + i(x3 - x4).

    x1, x2 come from the real part and are mutually orthogonal; x3, x4
    likewise from the imaginary part.
    """

    x1: Element
    x2: Element
    x3: Element
    x4: Element

    def recombine(self) -> Element:
        return self.x1 - self.x2 + (self.x3 - self.x4) * 1j


def jordan_split(x: Element) -> JordanQuad:
    """Split x into four orthogonal positive parts via Re/Im and |.|.

    Re x = (x* + x)/2 and Im x = i(x* - x)/2 are hermitian; each is cut
    into its positive and negative parts with the spectral absolute
    value, giving x1 perp x2 and x3 perp x4 with
    ||x1||_p^p + ||x2||_p^p <= ||x||_p^p for every finite p.
    """
    adj = x.adjoint()
    re = (adj + x) * 0.5
    im = (adj - x) * 0.5j

    def positive_negative(h: Element) -> tuple[Element, Element]:
        data = eig_hermitian(h, check=False)
        pos = data.apply(lambda v: np.clip(v, 0.0, None))
        neg = data.apply(lambda v: np.clip(-v, 0.0, None))
        return pos, neg

    x1, x2 = positive_negative(re)
    x3, x4 = positive_negative(im)
    return JordanQuad(x1, x2, x3, x4)
