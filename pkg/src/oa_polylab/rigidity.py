"""Negative results: orthogonal additivity on the *full* algebra is rigid.

On any block of dimension >= 2 a nonzero trace polynomial of the
representable form fails to be orthogonally additive once arbitrary
(non-normal) orthogonal pairs are allowed.  The witness search walks a
finite gadget inventory built from nilpotent partial isometries u with
u^2 = 0 (so u is orthogonal to u*) and from the self-adjoint unitaries
v = 1 + u' + u'* - f - f' that swap the legs of a second isometry:

* nilpotent pairs   (u, u*) and the root-of-minus-one twist (u, w u*),
* unitary rotations (v u, v u*) with v drawn from that reflection family.

Matrix-unit isometries alone miss operators whose block diagonal sums
cancel, so the inventory also draws random rank-one isometries; the
rotated family then separates every nonzero operator in a dim >= 2
block.  Commutative algebras admit no such gadgets and the search
correctly returns nothing there.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Element, TracialAlgebra
from .errors import UsageError
from .polynomials import HomPolynomial, additivity_residual, evaluate, polynomial_scale_bound
from .spectral import _eig_block

#: A candidate pair only counts as a witness above this residual.
WITNESS_THRESHOLD = 1e-8


@dataclass(frozen=True)
class CounterexampleWitness:
    """An orthogonal pair on which additivity visibly fails."""

    x: Element
    y: Element
    residual: float
    gadget: str  # "nilpotent-pair" or "unitary-rotation"


def _embed(algebra: TracialAlgebra, k: int, mat: np.ndarray) -> Element:
    mats = [np.zeros((d, d), dtype=np.complex128) for d in algebra.dims]
    mats[k] = mat
    return Element(algebra, mats, copy=False)


def _random_orthonormal_pair(rng: np.random.Generator, dim: int) -> tuple[np.ndarray, np.ndarray]:
    g = (rng.standard_normal((dim, 2)) + 1j * rng.standard_normal((dim, 2))) / np.sqrt(2)
    q, _ = np.linalg.qr(g)
    return q[:, 0], q[:, 1]


def _reflection(dim: int, psi1: np.ndarray, psi2: np.ndarray) -> np.ndarray:
    """The proof-family unitary 1 + u + u* - f - f' built on |psi2><psi1|."""
    u = np.outer(psi2, psi1.conj())
    f = np.outer(psi1, psi1.conj())
    fp = np.outer(psi2, psi2.conj())
    return np.eye(dim, dtype=np.complex128) + u + u.conj().T - f - fp


def _gadget_pairs(algebra: TracialAlgebra, m: int, seed: int, n_random: int):
    """Deterministic inventory of orthogonal candidate pairs with tags."""
    omega = complex(np.exp(1j * np.pi / m))
    for k, dim in enumerate(algebra.dims):
        if dim < 2:
            continue
        units = []
        for i in range(dim):
            for j in range(dim):
                if i != j:
                    units.append(np.zeros((dim, dim), dtype=np.complex128))
                    units[-1][i, j] = 1.0
        # matrix-unit nilpotent pairs, plain then omega-rotated
        for u in units:
            ue = _embed(algebra, k, u)
            yield ue, ue.adjoint(), "nilpotent-pair"
        for u in units:
            ue = _embed(algebra, k, u)
            yield ue, omega * ue.adjoint(), "nilpotent-pair"
        # random rank-one isometries and proof-family rotations
        rng = np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(k,)))
        for _ in range(n_random):
            psi1, psi2 = _random_orthonormal_pair(rng, dim)
            u = np.outer(psi2, psi1.conj())
            ue = _embed(algebra, k, u)
            ua = ue.adjoint()
            yield ue, ua, "nilpotent-pair"
            yield ue, omega * ua, "nilpotent-pair"
            v = _embed(algebra, k, _reflection(dim, psi1, psi2))
            yield v @ ue, v @ ua, "unitary-rotation"
            phi1, phi2 = _random_orthonormal_pair(rng, dim)
            w = _embed(algebra, k, _reflection(dim, phi1, phi2))
            yield w @ ue, w @ ua, "unitary-rotation"
            yield w @ ue, omega * (w @ ua), "unitary-rotation"


def full_oa_counterexample(
    P: HomPolynomial,
    algebra: TracialAlgebra | None = None,
    seed: int = 0,
    n_random: int = 32,
) -> CounterexampleWitness | None:
    """Search the gadget inventory for a pair breaking full additivity.

    Returns the first pair (in the fixed gadget order) whose relative
    additivity residual exceeds ``WITNESS_THRESHOLD``, or None when the
    inventory is exhausted; commutative algebras have no gadgets, so a
    representable polynomial over them always yields None.
    """
    algebra = algebra or P.algebra
    if algebra is None:
        raise UsageError("the zero polynomial carries no algebra; pass one explicitly")
    for x, y, tag in _gadget_pairs(algebra, P.m, seed, n_random):
        res = additivity_residual(P, x, y)
        if res > WITNESS_THRESHOLD:
            return CounterexampleWitness(x, y, res, tag)
    return None


def projection_vanishing_probe(
    P: HomPolynomial,
    algebra: TracialAlgebra | None = None,
    n_samples: int = 32,
    seed: int = 0,
) -> float:
    """max ||P(e)||_q over seeded random projections of cycling ranks.

    Meaningful after a full-cone additivity check passed: on a dim >= 2
    block only the zero polynomial survives that gate, so the probe must
    come out at noise level.  Run on its own it simply reports how far
    P is from vanishing on projections.
    """
    algebra = algebra or P.algebra
    if algebra is None:
        raise UsageError("the zero polynomial carries no algebra; pass one explicitly")
    qnorm = P.codomain.norm
    worst = 0.0
    for i in range(int(n_samples)):
        rng = np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(i,)))
        mats = []
        for dim in algebra.dims:
            g = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
            h = (g + g.conj().T) / 2.0
            _, vecs = _eig_block(h)
            rank = i % (dim + 1)
            cols = vecs[:, :rank]
            mats.append(cols @ cols.conj().T)
        e = Element(algebra, mats, copy=False)
        worst = max(worst, qnorm(evaluate(P, e)))
    return worst


def zero_certificate(
    P: HomPolynomial,
    n_samples: int = 500,
    seed: int = 0,
    algebra: TracialAlgebra | None = None,
    positive_tol: float = 1e-12,
    global_tol: float = 1e-8,
) -> tuple[bool, bool | None]:
    """Vanishing on the positive cone certifies vanishing everywhere.

    First tests ``||P(x)||_q <= positive_tol * scale`` on sampled
    positives; only if that holds does it test general samples at
    ``global_tol * scale``.  A polynomial vanishing on a convex set
    vanishes on its span, and positives span the algebra, so the pair
    (True, False) never occurs for an honest implementation.  Returns
    (False, None) when the positive stage already fails.
    """
    algebra = algebra or P.algebra
    if algebra is None:
        return True, True
    qnorm = P.codomain.norm

    def stage(kind: str, tol: float, key: int) -> bool:
        for i in range(int(n_samples)):
            rng = np.random.default_rng(
                np.random.SeedSequence(int(seed), spawn_key=(key, i))
            )
            from .algebra import sample_element

            x = sample_element(algebra, kind, rng)
            if qnorm(evaluate(P, x)) > tol * polynomial_scale_bound(P, x):
                return False
        return True

    on_positives = stage("positive", positive_tol, 0)
    if not on_positives:
        return False, None
    return True, stage("general", global_tol, 1)
