"""Vector-valued m-homogeneous trace polynomials.

A polynomial is a finite sum of trace monomials: the monomial
``(coeff, coord, (A_1, ..., A_m))`` contributes

    coeff * tau(A_1 x A_2 x ... A_m x)

to coordinate ``coord`` of the value in C^d.  The codomain carries the
l_q quasi-norm with 0 < q <= 1 (q = 1 is the genuine norm).  This
family is dense among continuous m-homogeneous polynomials at finite
dimension and is closed under polarization, which is what the
representation machinery relies on.
"""

from __future__ import annotations

import itertools
import math
import numbers
from dataclasses import dataclass

import numpy as np

from .algebra import Element, TracialAlgebra, sample_element
from .errors import StructuralError, UsageError
from .spectral import opnorm

CONES = ("sa", "positive", "full")


@dataclass(frozen=True)
class QNormedCodomain:
    """C^d with the l_q quasi-norm, 0 < q <= 1."""

    d: int
    q: float = 1.0

    def __post_init__(self):
        if int(self.d) < 1:
            raise UsageError(f"codomain dimension must be >= 1, got {self.d}")
        if not (0.0 < float(self.q) <= 1.0):
            raise UsageError(f"q must lie in (0, 1], got {self.q}")
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "q", float(self.q))

    def norm(self, v) -> float:
        v = np.asarray(v)
        if self.q == 1.0:
            return float(np.sum(np.abs(v)))
        return float(np.sum(np.abs(v) ** self.q) ** (1.0 / self.q))


class TraceMonomial:
    """One trace monomial coeff * tau(A_1 x ... A_m x) aimed at a coordinate."""

    __slots__ = ("coeff", "coord", "factors")

    def __init__(self, coeff: complex, coord: int, factors):
        factors = tuple(factors)
        if not factors:
            raise UsageError("a trace monomial needs at least one factor")
        algebra = factors[0].algebra
        for f in factors[1:]:
            if f.algebra != algebra:
                raise StructuralError("monomial factors must share one algebra")
        object.__setattr__(self, "coeff", complex(coeff))
        object.__setattr__(self, "coord", int(coord))
        object.__setattr__(self, "factors", factors)

    def __setattr__(self, name, value):
        raise AttributeError("TraceMonomial is immutable")

    @property
    def algebra(self) -> TracialAlgebra:
        return self.factors[0].algebra

    @property
    def degree(self) -> int:
        return len(self.factors)


class HomPolynomial:
    """An m-homogeneous polynomial as a finite sum of trace monomials."""

    __slots__ = ("m", "codomain", "monomials")

    def __init__(self, m: int, codomain: QNormedCodomain, monomials=()):
        m = int(m)
        if m < 2:
            raise UsageError(f"homogeneity degree must be >= 2, got {m}")
        monomials = tuple(monomials)
        algebra = None
        for mono in monomials:
            if mono.degree != m:
                raise StructuralError(
                    f"monomial of degree {mono.degree} in a degree-{m} polynomial"
                )
            if not 0 <= mono.coord < codomain.d:
                raise StructuralError(
                    f"coordinate {mono.coord} outside codomain of dimension {codomain.d}"
                )
            if algebra is None:
                algebra = mono.algebra
            elif mono.algebra != algebra:
                raise StructuralError("all monomials must live over one algebra")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "codomain", codomain)
        object.__setattr__(self, "monomials", monomials)

    def __setattr__(self, name, value):
        raise AttributeError("HomPolynomial is immutable")

    @property
    def algebra(self) -> TracialAlgebra | None:
        return self.monomials[0].algebra if self.monomials else None

    def __call__(self, x: Element) -> np.ndarray:
        return evaluate(self, x)

    def __add__(self, other):
        if not isinstance(other, HomPolynomial):
            return NotImplemented
        if other.m != self.m or other.codomain != self.codomain:
            raise StructuralError("can only add polynomials of equal degree and codomain")
        return HomPolynomial(self.m, self.codomain, self.monomials + other.monomials)

    def __mul__(self, scalar):
        if not isinstance(scalar, numbers.Number):
            return NotImplemented
        z = complex(scalar)
        scaled = [
            TraceMonomial(z * mono.coeff, mono.coord, mono.factors)
            for mono in self.monomials
        ]
        return HomPolynomial(self.m, self.codomain, scaled)

    __rmul__ = __mul__


def zeta_polynomial(zetas, m: int, q: float = 1.0) -> HomPolynomial:
    """Build P(x) = (tau(zeta_k x^m))_k from one representing operator per coordinate."""
    zetas = list(zetas)
    if not zetas:
        raise UsageError("need at least one representing operator")
    algebra = zetas[0].algebra
    one = algebra.identity()
    monos = [
        TraceMonomial(1.0, k, (z,) + (one,) * (int(m) - 1)) for k, z in enumerate(zetas)
    ]
    return HomPolynomial(m, QNormedCodomain(len(zetas), q), monos)


def evaluate(P: HomPolynomial, x: Element) -> np.ndarray:
    """Value of P at x, one complex number per codomain coordinate."""
    out = np.zeros(P.codomain.d, dtype=np.complex128)
    if not P.monomials:
        return out
    if x.algebra != P.algebra:
        raise StructuralError("argument lives in a different algebra than the polynomial")
    weights = x.algebra.weights
    for mono in P.monomials:
        val = 0.0 + 0.0j
        for k, w in enumerate(weights):
            xb = x.blocks[k]
            acc = mono.factors[0].blocks[k] @ xb
            for factor in mono.factors[1:]:
                acc = acc @ factor.blocks[k] @ xb
            val += w * np.trace(acc)
        out[mono.coord] += mono.coeff * val
    return out


def polarize(P: HomPolynomial, *xs: Element) -> np.ndarray:
    """The symmetric m-linear form of P evaluated at (x_1, ..., x_m).

    Uses the sign-averaged polarization identity
    ``(1 / (2^m m!)) sum_eps eps_1...eps_m P(sum_j eps_j x_j)``, which
    recovers the unique symmetric form: m-linear, symmetric, and equal
    to P on the diagonal.
    """
    m = P.m
    if len(xs) != m:
        raise UsageError(f"polarize needs exactly {m} arguments, got {len(xs)}")
    algebra = xs[0].algebra
    for x in xs[1:]:
        if x.algebra != algebra:
            raise StructuralError("polarization arguments must share one algebra")
    out = np.zeros(P.codomain.d, dtype=np.complex128)
    for signs in itertools.product((1.0, -1.0), repeat=m):
        combo = algebra.zero()
        for eps, x in zip(signs, xs):
            combo = combo + eps * x
        out += math.prod(signs) * evaluate(P, combo)
    out /= (2.0**m) * math.factorial(m)
    return out


def adjoint_polynomial(P: HomPolynomial) -> HomPolynomial:
    """P*(x) = conj(P(x*)), again a trace polynomial of the same degree."""
    monos = []
    for mono in P.monomials:
        adj = [f.adjoint() for f in mono.factors]
        # conj(tau(A_1 x* ... A_m x*)) = tau(A_1* x A_m* x ... A_2* x)
        factors = (adj[0],) + tuple(reversed(adj[1:]))
        monos.append(TraceMonomial(mono.coeff.conjugate(), mono.coord, factors))
    return HomPolynomial(P.m, P.codomain, monos)


# -- orthogonal pairs and additivity -----------------------------------


def orthogonal_pair(
    algebra: TracialAlgebra, cone: str, rng: np.random.Generator
) -> tuple[Element, Element]:
    """Draw a mutually orthogonal pair from the requested cone.

    Pairs are orthogonal by construction, not by rejection: a random
    projection e supports x while 1 - e supports y.  For the full cone
    the left and right supports are decoupled through two independent
    projections, which reaches nilpotent-type operators such as
    (E_12, E_23) that the compressed cones cannot produce.
    """
    if cone not in CONES:
        raise UsageError(f"unknown cone {cone!r}; pick one of {CONES}")
    one = algebra.identity()
    e = sample_element(algebra, "projection", rng)
    comp_e = one - e
    if cone in ("sa", "positive"):
        kind = "hermitian" if cone == "sa" else "positive"
        x = e @ sample_element(algebra, kind, rng) @ e
        y = comp_e @ sample_element(algebra, kind, rng) @ comp_e
        return x, y
    f = sample_element(algebra, "projection", rng)
    comp_f = one - f
    x = e @ sample_element(algebra, "general", rng) @ f
    y = comp_e @ sample_element(algebra, "general", rng) @ comp_f
    return x, y


def additivity_residual(P: HomPolynomial, x: Element, y: Element) -> float:
    """Relative defect of P(x + y) = P(x) + P(y) for one pair."""
    px = evaluate(P, x)
    py = evaluate(P, y)
    pxy = evaluate(P, x + y)
    norm = P.codomain.norm
    return norm(pxy - px - py) / (1.0 + norm(px) + norm(py))


@dataclass(frozen=True)
class OAReport:
    """Outcome of an orthogonal-additivity check on a sampled cone."""

    cone: str
    n_samples: int
    tol: float
    max_residual: float
    passed: bool
    worst_sample: int


def check_orthogonal_additivity(
    P: HomPolynomial,
    cone: str = "sa",
    n_samples: int = 50,
    seed: int = 0,
    tol: float = 1e-8,
    algebra: TracialAlgebra | None = None,
) -> OAReport:
    """Sample orthogonal pairs in a cone and measure the additivity defect.

    Every sample uses a child seed derived from (seed, index), so the
    report is a max-reduction over independently reproducible pairs.
    """
    if n_samples < 1:
        raise UsageError("n_samples must be >= 1")
    algebra = algebra or P.algebra
    if algebra is None:
        raise UsageError("the zero polynomial carries no algebra; pass one explicitly")
    worst = 0.0
    worst_idx = 0
    for i in range(int(n_samples)):
        rng = np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(i,)))
        x, y = orthogonal_pair(algebra, cone, rng)
        res = additivity_residual(P, x, y)
        if res > worst:
            worst = res
            worst_idx = i
    return OAReport(cone, int(n_samples), float(tol), worst, worst <= tol, worst_idx)


def hermitian_defect(P: HomPolynomial, n_samples: int = 64, seed: int = 0) -> float:
    """max |P(x) - conj(P(x*))| / (1 + |P(x)|) over seeded general samples.

    Zero (to round-off) exactly when the scalar polynomial is hermitian
    on the sample; requires a one-dimensional codomain.
    """
    if P.codomain.d != 1:
        raise UsageError("hermitian_defect is defined for scalar polynomials only")
    algebra = P.algebra
    if algebra is None:
        return 0.0
    worst = 0.0
    for i in range(int(n_samples)):
        rng = np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(i,)))
        x = sample_element(algebra, "general", rng)
        px = evaluate(P, x)[0]
        pxs = evaluate(P, x.adjoint())[0]
        worst = max(worst, abs(px - pxs.conjugate()) / (1.0 + abs(px)))
    return worst


def polynomial_scale_bound(P: HomPolynomial, x: Element) -> float:
    """Crude a-priori bound on |P| near x, used to normalize zero tests."""
    xnorm = opnorm(x)
    total = 0.0
    for mono in P.monomials:
        prod = abs(mono.coeff)
        for f in mono.factors:
            prod *= opnorm(f)
        total += prod
    weight = sum(w * d for d, w in P.algebra.blocks) if P.algebra else 1.0
    return 1.0 + total * weight * xnorm**P.m
