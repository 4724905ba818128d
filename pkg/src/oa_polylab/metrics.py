"""Schatten p-(quasi-)norms on the weighted-trace algebra, orthogonality,
and the inequality oracles built on them.

For finite p the norm is ``tau(|x|^p)^(1/p)``, a genuine norm for
p >= 1 and a p-norm (quasi-norm) for 0 < p < 1; ``p = inf`` is the
operator norm.  Exponents are plain floats with ``math.inf`` standing
in for infinity; ``check_p`` validates them.
"""

from __future__ import annotations

import math

import numpy as np

from .algebra import Element
from .errors import UsageError
from .spectral import opnorm, singular_values

#: Exponent grid used by the property suites: quasi-norm, trace norm,
#: Hilbert-Schmidt, two genuine norms, operator norm.
P_GRID = (0.5, 1.0, 2.0, 3.0, 4.0, math.inf)


def check_p(p) -> float:
    """Validate a norm exponent: a real in (0, inf) or inf itself."""
    try:
        val = float(p)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"invalid norm exponent {p!r}") from exc
    if math.isnan(val) or val <= 0.0:
        raise UsageError(f"norm exponent must be > 0, got {p!r}")
    return val


def norm_from_singular_values(algebra, svals, p) -> float:
    """Same as :func:`norm_p` but from precomputed singular values.

    Lets callers price one spectrum against a whole exponent grid.
    """
    p = check_p(p)
    if math.isinf(p):
        return max(float(s[-1]) if s.size else 0.0 for s in svals)
    acc = 0.0
    for (_, w), s in zip(algebra.blocks, svals):
        acc += w * float(np.sum(s**p))
    return acc ** (1.0 / p)


def norm_p(x: Element, p) -> float:
    """Schatten (quasi-)norm of x: tau(|x|^p)^(1/p), operator norm at p=inf."""
    return norm_from_singular_values(x.algebra, singular_values(x), p)


def is_orthogonal(x: Element, y: Element, tol: float = 1e-10) -> tuple[bool, float]:
    """Mutual orthogonality test: x perp y iff x y* = y* x = 0.

    Returns ``(flag, residual)`` with the residual normalized by
    (1 + ||x||) (1 + ||y||) in operator norm.
    """
    x._check_same_algebra(y)
    yadj = y.adjoint()
    raw = max(opnorm(x @ yadj), opnorm(yadj @ x))
    residual = raw / ((1.0 + opnorm(x)) * (1.0 + opnorm(y)))
    return residual <= tol, residual


def pythagoras_residual(x: Element, y: Element, p, omega: complex = 1.0) -> float:
    """| ||x + w y||_p^p - ||x||_p^p - ||y||_p^p | for a unimodular w.

    Vanishes (up to round-off) whenever x and y are orthogonal positives
    and |w| = 1; arbitrary inputs are accepted for diagnostics.
    """
    p = check_p(p)
    if math.isinf(p):
        raise UsageError("the Pythagoras identity is stated for finite p")
    omega = complex(omega)
    lhs = norm_p(x + omega * y, p) ** p
    return abs(lhs - norm_p(x, p) ** p - norm_p(y, p) ** p)


def _harmonic_sum(p: float, q: float) -> float:
    inv = (0.0 if math.isinf(p) else 1.0 / p) + (0.0 if math.isinf(q) else 1.0 / q)
    return math.inf if inv == 0.0 else 1.0 / inv


def holder_check(x: Element, y: Element, p, q) -> tuple[float, float, bool]:
    """Evaluate both sides of ||xy||_r <= ||x||_p ||y||_q with 1/r = 1/p + 1/q.

    Returns (lhs, rhs, ok) where ok allows a 1e-10 relative slack for
    round-off at equality.
    """
    p = check_p(p)
    q = check_p(q)
    r = _harmonic_sum(p, q)
    lhs = norm_p(x @ y, r)
    rhs = norm_p(x, p) * norm_p(y, q)
    return lhs, rhs, lhs <= rhs * (1.0 + 1e-10)


def converse_pythagoras_probe(x: Element, y: Element, p) -> tuple[float, float, float]:
    """Both sign residuals of the Pythagoras identity plus the orthogonality residual.

    For p != 2, if ||x + y||_p^p and ||x - y||_p^p both match
    ||x||_p^p + ||y||_p^p then the pair must be orthogonal; the probe
    returns the raw numbers so callers can test the contrapositive:
    both sign residuals <= 1e-12 forces orthogonality residual <= 1e-6.
    """
    p = check_p(p)
    if math.isinf(p):
        raise UsageError("the converse Pythagoras probe needs finite p")
    if p == 2.0:
        raise UsageError("p = 2 is excluded: the converse fails in Hilbert space")
    res_plus = pythagoras_residual(x, y, p, 1.0)
    res_minus = pythagoras_residual(x, y, p, -1.0)
    _, orth = is_orthogonal(x, y)
    return res_plus, res_minus, orth
