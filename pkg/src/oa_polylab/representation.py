"""Extraction and verification of the representing operator.

For a polynomial that is orthogonally additive on the self-adjoint
cone, the associated symmetric m-linear form phi recovers a linear
functional through ``Phi(b) = phi(b, 1, ..., 1)``; Riesz inversion of
the weighted trace then yields the unique operator ``zeta`` with

    P(x) = tau(zeta x^m)            (one zeta per codomain coordinate).

This module extracts zeta by probing phi on the matrix-unit basis,
verifies the representation on random samples, builds the extremal
element that attains the dual norm for hermitian zeta, and estimates
the polynomial norm from below by sampling with finite-difference
ascent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import Element, TracialAlgebra, derive_seed, sample_element
from .errors import PreconditionError, StructuralError, UsageError
from .metrics import norm_p
from .polynomials import (
    HomPolynomial,
    check_orthogonal_additivity,
    evaluate,
    polarize,
)
from .spectral import eig_hermitian, opnorm


def extract_phi(P: HomPolynomial, unitaries=None):
    """Table of the extracted linear functional on a matrix-unit basis.

    Returns ``table[coord][block][i, j] = Phi_coord(b_ij)`` where
    ``b_ij`` is the (i, j) matrix unit of the block, conjugated by the
    optional per-block unitaries.  Phi is linear by construction since
    it is a slice of the polarized form.
    """
    algebra = P.algebra
    if algebra is None:
        raise UsageError("the zero polynomial carries no algebra to probe")
    one = algebra.identity()
    ones = (one,) * (P.m - 1)
    d = P.codomain.d
    table = [
        [np.zeros((dim, dim), dtype=np.complex128) for dim in algebra.dims]
        for _ in range(d)
    ]
    for k, i, j, unit in algebra.matrix_units():
        probe = unit
        if unitaries is not None:
            w = unitaries[k]
            mats = [np.zeros((dim, dim), dtype=np.complex128) for dim in algebra.dims]
            mats[k] = w @ unit.blocks[k] @ w.conj().T
            probe = Element(algebra, mats, copy=False)
        value = polarize(P, probe, *ones)
        for c in range(d):
            table[c][k][i, j] = value[c]
    return table


def _zeta_from_table(algebra: TracialAlgebra, table, unitaries=None) -> list[Element]:
    """Invert tau(zeta E_ij) = weight * zeta_ji blockwise."""
    out = []
    for coord_table in table:
        mats = []
        for k, (dim, weight) in enumerate(algebra.blocks):
            z = coord_table[k].T / weight
            if unitaries is not None:
                w = unitaries[k]
                z = w @ z @ w.conj().T
            mats.append(z)
        out.append(Element(algebra, mats, copy=False))
    return out


def reconstruct_zeta(P: HomPolynomial, seed: int | None = None) -> list[Element]:
    """Rebuild the representing operators, one Element per coordinate.

    With ``seed`` given, the probing basis is a seeded unitary rotation
    of the matrix units; the result is identical (up to round-off) for
    any basis exactly when P admits the representation.
    """
    algebra = P.algebra
    if algebra is None:
        raise UsageError("the zero polynomial carries no algebra to probe")
    unitaries = None if seed is None else random_block_unitaries(algebra, seed)
    table = extract_phi(P, unitaries)
    return _zeta_from_table(algebra, table, unitaries)


def random_block_unitaries(algebra: TracialAlgebra, seed: int) -> list[np.ndarray]:
    """Seeded Haar-ish unitaries (QR of complex Gaussians), one per block."""
    rng = np.random.default_rng(np.random.SeedSequence(int(seed)))
    out = []
    for dim in algebra.dims:
        g = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
        q, r = np.linalg.qr(g)
        diag = np.diag(r)
        phases = diag / np.abs(diag)
        out.append(q * phases)
    return out


def power_values(zetas, x: Element, m: int) -> np.ndarray:
    """The vector (tau(zeta_k x^m))_k."""
    xm = x.power(m)
    return np.array([(z @ xm).trace() for z in zetas], dtype=np.complex128)


def verify_representation(
    P: HomPolynomial,
    zetas,
    n_samples: int = 64,
    seed: int = 0,
    extra_samples=(),
) -> float:
    """max over samples of ||P(x) - (tau(zeta_k x^m))_k||_q / (1 + ||P(x)||_q)."""
    zetas = list(zetas)
    if len(zetas) != P.codomain.d:
        raise StructuralError("need exactly one representing operator per coordinate")
    algebra = P.algebra or zetas[0].algebra
    norm = P.codomain.norm
    worst = 0.0
    samples = list(extra_samples)
    for i in range(int(n_samples)):
        rng = np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(i,)))
        samples.append(sample_element(algebra, "general", rng))
    for x in samples:
        px = evaluate(P, x)
        ref = power_values(zetas, x, P.m)
        worst = max(worst, norm(px - ref) / (1.0 + norm(px)))
    return worst


@dataclass(frozen=True)
class RepresentationReport:
    """Reconstruction outcome: operators, residuals, and their dual norms."""

    zeta: list[Element]
    max_residual: float
    uniqueness_gap: float
    p: float
    m: int
    r: float
    zeta_norms: list[float]


def dual_exponent(p: float, m: int) -> float:
    """r with tau(zeta x^m) controlled by ||zeta||_r ||x||_p^m: p/(p-m) above m, inf at or below."""
    if p > m:
        return p / (p - m)
    return math.inf


def representation_report(
    P: HomPolynomial, p: float, n_samples: int = 64, seed: int = 0
) -> RepresentationReport:
    """Extract zeta through two probing bases, verify, and attach norm data."""
    zetas = reconstruct_zeta(P)
    rotated = reconstruct_zeta(P, seed=derive_seed(seed, 0xB1))
    gap = 0.0
    for a, b in zip(zetas, rotated):
        gap = max(gap, opnorm(a - b) / (1.0 + opnorm(a)))
    residual = verify_representation(P, zetas, n_samples=n_samples, seed=seed)
    r = dual_exponent(p, P.m)
    norms = [norm_p(z, r) for z in zetas]
    return RepresentationReport(zetas, residual, gap, float(p), P.m, r, norms)


# -- extremal witness ---------------------------------------------------


def extremal_witness(zeta: Element, p: float, m: int) -> tuple[Element, float]:
    """Unit-norm element attaining tau(zeta x^m) = ||zeta||_r for hermitian zeta.

    For p > m with r = p/(p-m): take y = sign(zeta) |zeta|^(r-1)
    normalized to ||y||_{p/m} = 1, split it into orthogonal positive
    parts y = y+ - y-, and set

        x = y+^(1/m) + w y-^(1/m),       w = exp(i pi / m),

    so that x^m = y (the cross terms vanish on orthogonal supports and
    w^m = -1 flips the sign of the negative part).  Then ||x||_p = 1 and
    tau(zeta x^m) = ||zeta||_r by construction.  For p = m the optimum
    sits on a spectral projection of a maximum-modulus eigenvalue and
    the value is ||zeta||_inf.
    """
    m = int(m)
    if m < 2:
        raise UsageError(f"homogeneity degree must be >= 2, got {m}")
    if p < m:
        raise UsageError(
            "extremal witnesses for p < m are not supported; "
            "duality below p = m is weight-sensitive"
        )
    defect = zeta.hermiticity_defect()
    if defect > 1e-8 * (1.0 + opnorm(zeta)):
        raise PreconditionError(
            f"extremal witness requires self-adjoint zeta (defect {defect:.3e})"
        )
    herm = (zeta + zeta.adjoint()) * 0.5
    data = eig_hermitian(herm, check=False)
    top = data.max_abs_eigenvalue()
    if top == 0.0:
        raise PreconditionError("extremal witness requires a nonzero zeta")
    omega = complex(np.exp(1j * np.pi / m))

    if p > m:
        r = p / (p - m)
        c = norm_p(zeta, r)

        def build(vals):
            scaled = np.abs(vals) ** (r - 1.0) / c ** (r - 1.0)
            pos = np.where(vals > 0.0, scaled, 0.0) ** (1.0 / m)
            neg = np.where(vals < 0.0, scaled, 0.0) ** (1.0 / m)
            return pos + omega * neg

        x = data.apply(build)
    else:  # p == m
        # deterministic max-modulus eigenvalue: smallest value wins ties
        best = None
        for vals in data.eigenvalues:
            for v in vals:
                if best is None or abs(v) > abs(best) or (abs(v) == abs(best) and v < best):
                    best = float(v)
        cluster = 1e-8 * (1.0 + top)
        mass = 0.0
        for (dim, w), vals in zip(zeta.algebra.blocks, data.eigenvalues):
            mass += w * int(np.sum(np.abs(vals - best) <= cluster))
        sign = 1.0 if best > 0 else -1.0

        def build(vals):
            member = (np.abs(vals - best) <= cluster).astype(float)
            root = (member / mass) ** (1.0 / m)
            return root if sign > 0 else omega * root

        x = data.apply(build)

    achieved = float(np.real((zeta @ x.power(m)).trace()))
    return x, achieved


# -- norm bounds --------------------------------------------------------


def _pack(x: Element) -> np.ndarray:
    parts = []
    for b in x.blocks:
        parts.append(b.real.ravel())
        parts.append(b.imag.ravel())
    return np.concatenate(parts)


def _unpack(algebra: TracialAlgebra, vec: np.ndarray) -> Element:
    mats = []
    pos = 0
    for dim in algebra.dims:
        n = dim * dim
        re = vec[pos : pos + n].reshape(dim, dim)
        im = vec[pos + n : pos + 2 * n].reshape(dim, dim)
        mats.append(re + 1j * im)
        pos += 2 * n
    return Element(algebra, mats, copy=False)


def _weighted_sup_bound(zeta: Element, s: float) -> float:
    """Valid bound on tau(zeta y) over ||y||_s <= 1 for s <= 1.

    Blockwise: |tau(zeta y)| <= max_k ||zeta_k|| w_k^(1 - 1/s); reduces
    to the plain operator norm at s = 1 or unit weights.
    """
    best = 0.0
    for (dim, w), block in zip(zeta.algebra.blocks, zeta.blocks):
        sub = Element(TracialAlgebra(((dim, 1.0),)), [block], copy=False)
        best = max(best, opnorm(sub) * w ** (1.0 - 1.0 / s))
    return best


def upper_norm_bound(zetas, p: float, m: int, q: float = 1.0) -> float:
    """Analytic upper bound on ||P|| from the representing operators.

    Above p = m this is the Hoelder bound through ||zeta_k||_r; at and
    below p = m it is the weight-corrected operator-norm bound, exact
    for unit weights.  Coordinates combine in the codomain l_q sense.
    """
    zetas = list(zetas)
    if p > m:
        r = p / (p - m)
        per_coord = [norm_p(z, r) for z in zetas]
    else:
        s = p / m
        per_coord = [_weighted_sup_bound(z, s) for z in zetas]
    if len(per_coord) == 1:
        return per_coord[0]
    return float(np.sum(np.asarray(per_coord) ** q) ** (1.0 / q))


def norm_bound_suite(
    P: HomPolynomial,
    p: float,
    m: int,
    n_samples: int = 2,
    ascent_iters: int = 200,
    seed: int = 0,
    oa_gate_tol: float = 1e-8,
) -> tuple[float, float, bool]:
    """Sandwich the polynomial norm: sampled/ascended lower vs analytic upper.

    The lower estimate runs ``10 * n_samples`` random unit-p-norm starts,
    each refined by finite-difference ascent on the flattened real
    coordinates (step 1e-2 halving on failure, difference step 1e-6).
    The polynomial must be orthogonally additive on the self-adjoint
    cone; the check is gated before any reconstruction happens.
    """
    m = int(m)
    if m != P.m:
        raise UsageError(f"degree mismatch: polynomial has m={P.m}, got m={m}")
    gate = check_orthogonal_additivity(P, "sa", n_samples=16, seed=derive_seed(seed, 1), tol=oa_gate_tol)
    if not gate.passed:
        raise PreconditionError(
            f"norm bounds need orthogonal additivity on the sa cone "
            f"(residual {gate.max_residual:.3e})"
        )
    algebra = P.algebra
    zetas = reconstruct_zeta(P)
    upper = upper_norm_bound(zetas, p, m, P.codomain.q)
    qnorm = P.codomain.norm

    def objective(x: Element) -> float:
        nrm = norm_p(x, p)
        if nrm < 1e-12:
            return 0.0
        return qnorm(evaluate(P, x / nrm))

    lower = 0.0
    if (
        P.codomain.d == 1
        and p >= m
        and zetas[0].hermiticity_defect() <= 1e-8 * (1.0 + opnorm(zetas[0]))
        and opnorm(zetas[0]) > 0.0
    ):
        _, achieved = extremal_witness(zetas[0], p, m)
        lower = max(lower, abs(achieved))

    kinds = ("general", "hermitian")
    for start in range(10 * int(n_samples)):
        rng = np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(2, start)))
        x = sample_element(algebra, kinds[start % 2], rng)
        nrm = norm_p(x, p)
        if nrm < 1e-12:
            continue
        x = x / nrm
        best = objective(x)
        step = 1e-2
        vec = _pack(x)
        h = 1e-6
        for _ in range(int(ascent_iters)):
            if step < 1e-9:
                break
            grad = np.zeros_like(vec)
            for i in range(vec.size):
                bumped = vec.copy()
                bumped[i] += h
                grad[i] = (objective(_unpack(algebra, bumped)) - best) / h
            gnorm = float(np.linalg.norm(grad))
            if gnorm == 0.0:
                break
            trial_vec = vec + step * grad / gnorm
            trial = _unpack(algebra, trial_vec)
            tn = norm_p(trial, p)
            if tn < 1e-12:
                step *= 0.5
                continue
            val = objective(trial)
            if val > best:
                best = val
                vec = _pack(trial / tn)
            else:
                step *= 0.5
        lower = max(lower, best)

    return lower, upper, lower <= upper * (1.0 + 1e-9)
