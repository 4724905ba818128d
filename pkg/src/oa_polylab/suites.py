"""Seeded property suites behind ``verify`` and the acceptance gate.

Each check is a standalone function taking (seed, count, threshold) and
returning a :class:`CheckResult`; the suite runners bundle them with
counts derived from a :class:`RunConfig`.  Acceptance tests call the
check functions directly with their full stated counts, so the numbers
here are defaults, not caps.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import rigidity
from .algebra import TracialAlgebra, derive_seed, random_element, sample_element
from .errors import UsageError
from .metrics import (
    converse_pythagoras_probe,
    is_orthogonal,
    norm_from_singular_values,
    norm_p,
)
from .polynomials import (
    HomPolynomial,
    QNormedCodomain,
    TraceMonomial,
    check_orthogonal_additivity,
    hermitian_defect,
    orthogonal_pair,
    zeta_polynomial,
)
from .representation import (
    extremal_witness,
    norm_bound_suite,
    reconstruct_zeta,
    upper_norm_bound,
)
from .spectral import eig_hermitian, functional_calculus, opnorm, singular_values

SUITE_NAMES = ("metrics", "representation", "rigidity")

DEFAULT_TOLERANCES = {
    "pythagoras": 1e-8,
    "holder": 1e-10,
    "holder_equality": 1e-10,
    "eig_reconstruction": 1e-10,
    "power_roundtrip": 1e-9,
    "converse_pythagoras": 1e-12,
    "oa_sa": 1e-8,
    "roundtrip": 1e-8,
    "uniqueness": 1e-8,
    "sandwich_scalar": 1e-9,
    "sandwich_vector": 1e-9,
    "hermitian_correspondence": 1e-10,
    "counterexample": 1e-6,
    "zero_chain": 1e-12,
}

# workhorse algebras, desk scale
ALG_PAIRS = TracialAlgebra(((3, 0.75), (2, 1.5)))
ALG_MIXED = (
    TracialAlgebra(((2, 1.0),)),
    TracialAlgebra(((2, 0.5), (3, 2.0))),
    TracialAlgebra(((4, 1.25), (1, 3.0))),
)
ALG_RIGIDITY = TracialAlgebra(((2, 1.0), (3, 0.5)))
ALG_BACKBONE = TracialAlgebra(((8, 1.0), (4, 0.7), (1, 2.5)))
ALG_COMMUTATIVE = TracialAlgebra(((1, 1.0), (1, 0.5), (1, 2.0)))


@dataclass(frozen=True)
class CheckResult:
    name: str
    count: int
    worst: float
    threshold: float
    passed: bool
    detail: str = ""

    def __post_init__(self):
        # numpy scalars sneak in through max(); JSON wants builtins
        object.__setattr__(self, "count", int(self.count))
        object.__setattr__(self, "worst", float(self.worst))
        object.__setattr__(self, "threshold", float(self.threshold))
        object.__setattr__(self, "passed", bool(self.passed))

    def to_obj(self) -> dict:
        return {
            "name": self.name,
            "count": self.count,
            "worst": self.worst,
            "threshold": self.threshold,
            "passed": self.passed,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class SuiteResult:
    name: str
    seed: int
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_obj(self) -> dict:
        return {
            "suite": self.name,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [c.to_obj() for c in self.checks],
        }


@dataclass
class RunConfig:
    """Seed, scale, and tolerance overrides for a suite run."""

    seed: int = 42
    n_samples: int = 120
    tolerances: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n_samples < 1:
            raise UsageError("n_samples must be >= 1")
        for name in self.tolerances:
            if name not in DEFAULT_TOLERANCES:
                raise UsageError(
                    f"unknown tolerance name {name!r}; known: {sorted(DEFAULT_TOLERANCES)}"
                )

    def tol(self, name: str) -> float:
        return float(self.tolerances.get(name, DEFAULT_TOLERANCES[name]))


# -- metric checks -------------------------------------------------------


def check_pythagoras(seed=42, n_pairs=120, tol=1e-8) -> CheckResult:
    """||x + w y||_p^p = ||x||_p^p + ||y||_p^p on orthogonal positive pairs."""
    ps = (0.5, 1.0, 2.0, 3.0, 4.0)
    omegas = (1.0, -1.0, 1j)
    algebra = ALG_PAIRS
    worst = 0.0
    for i in range(n_pairs):
        rng = np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(10, i)))
        x, y = orthogonal_pair(algebra, "positive", rng)
        sx = singular_values(x)
        sy = singular_values(y)
        for omega in omegas:
            ssum = singular_values(x + omega * y)
            for p in ps:
                lhs = norm_from_singular_values(algebra, ssum, p) ** p
                nx = norm_from_singular_values(algebra, sx, p) ** p
                ny = norm_from_singular_values(algebra, sy, p) ** p
                worst = max(worst, abs(lhs - nx - ny) / (1.0 + nx + ny))
    return CheckResult("pythagoras", n_pairs, worst, tol, worst <= tol)


def check_holder(seed=42, n_pairs=120, tol=1e-10) -> CheckResult:
    """||xy||_r <= ||x||_p ||y||_q over the exponent grid, inf included."""
    grid = (0.5, 1.0, 2.0, 4.0, math.inf)
    algebra = ALG_PAIRS
    worst = -math.inf
    for i in range(n_pairs):
        rng = np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(11, i)))
        x = sample_element(algebra, "general", rng)
        y = sample_element(algebra, "general", rng)
        sx = singular_values(x)
        sy = singular_values(y)
        sxy = singular_values(x @ y)
        for p in grid:
            nxp = norm_from_singular_values(algebra, sx, p)
            for q in grid:
                inv = (0.0 if math.isinf(p) else 1.0 / p) + (
                    0.0 if math.isinf(q) else 1.0 / q
                )
                r = math.inf if inv == 0.0 else 1.0 / inv
                lhs = norm_from_singular_values(algebra, sxy, r)
                rhs = nxp * norm_from_singular_values(algebra, sy, q)
                worst = max(worst, lhs / rhs - 1.0)
    return CheckResult("holder", n_pairs, worst, tol, worst <= tol)


def check_holder_equality(seed=42, n=30, tol=1e-10) -> CheckResult:
    """Equality at x = y = |z|, p = q = 2 (the Cauchy-Schwarz saturation)."""
    algebra = ALG_PAIRS
    worst = 0.0
    for i in range(n):
        z = random_element(algebra, "general", derive_seed(seed, 12, i))
        absz = functional_calculus(z.adjoint() @ z, ("power", 0.5))
        s = singular_values(absz)
        lhs = norm_from_singular_values(algebra, singular_values(absz @ absz), 1.0)
        rhs = norm_from_singular_values(algebra, s, 2.0) ** 2
        worst = max(worst, abs(lhs - rhs) / (1.0 + rhs))
    return CheckResult("holder_equality", n, worst, tol, worst <= tol)


def check_eig_reconstruction(seed=42, n=120, tol=1e-10) -> CheckResult:
    """U Lambda U* reproduces x and U is unitary, on dims up to 8."""
    algebra = ALG_BACKBONE
    worst = 0.0
    for i in range(n):
        x = random_element(algebra, "hermitian", derive_seed(seed, 13, i))
        data = eig_hermitian(x)
        recon = data.apply(lambda v: v)
        scale = 1.0 + data.max_abs_eigenvalue()
        worst = max(worst, opnorm(recon - x) / scale)
        u = data.unitary
        unit_defect = (u.adjoint() @ u - algebra.identity()).norm_fro()
        worst = max(worst, unit_defect)
    return CheckResult("eig_reconstruction", n, worst, tol, worst <= tol)


def check_power_roundtrip(seed=42, n=120, tol=1e-9) -> CheckResult:
    """(x^(1/m))^m returns x for positive x, m in {2, 3, 4}."""
    algebra = ALG_PAIRS
    worst = 0.0
    for i in range(n):
        m = (2, 3, 4)[i % 3]
        x = random_element(algebra, "positive", derive_seed(seed, 14, i))
        root = functional_calculus(x, ("power", 1.0 / m))
        diff = opnorm(root.power(m) - x) / max(opnorm(x), 1e-300)
        worst = max(worst, diff)
    return CheckResult("power_roundtrip", n, worst, tol, worst <= tol)


def check_converse_pythagoras(seed=42, n=120, tol=1e-12) -> CheckResult:
    """Non-orthogonal pairs never satisfy both signed Pythagoras identities.

    Pairs are drawn until n of them have orthogonality residual >= 0.1;
    the reported worst is the smallest max(res+, res-) seen, which must
    stay above the threshold.
    """
    ps = (0.5, 1.0, 3.0, 4.0)
    algebra = ALG_PAIRS
    accepted = 0
    attempt = 0
    smallest = math.inf
    while accepted < n:
        rng = np.random.default_rng(
            np.random.SeedSequence(int(seed), spawn_key=(15, attempt))
        )
        attempt += 1
        x = sample_element(algebra, "general", rng)
        y = sample_element(algebra, "general", rng)
        _, orth = is_orthogonal(x, y)
        if orth < 0.1:
            continue
        p = ps[accepted % len(ps)]
        res_plus, res_minus, _ = converse_pythagoras_probe(x, y, p)
        smallest = min(smallest, max(res_plus, res_minus))
        accepted += 1
    return CheckResult("converse_pythagoras", n, smallest, tol, smallest > tol)


# -- representation checks ------------------------------------------------


def _zeta_list(algebra, d, kind, seed):
    return [random_element(algebra, kind, derive_seed(seed, 77, c)) for c in range(d)]


def check_oa_sa(seed=42, n_zeta=12, n_pairs=10, tol=1e-8) -> CheckResult:
    """Representable polynomials are additive on orthogonal sa pairs."""
    worst = 0.0
    for i in range(n_zeta):
        algebra = ALG_MIXED[i % len(ALG_MIXED)]
        m = (2, 3)[i % 2]
        d = (1, 2)[(i // 2) % 2]
        q = (1.0, 0.5)[(i // 4) % 2]
        zetas = _zeta_list(algebra, d, "general", derive_seed(seed, 20, i))
        P = zeta_polynomial(zetas, m, q)
        report = check_orthogonal_additivity(
            P, "sa", n_samples=n_pairs, seed=derive_seed(seed, 21, i), tol=tol
        )
        worst = max(worst, report.max_residual)
    return CheckResult("oa_sa", n_zeta * n_pairs, worst, tol, worst <= tol)


def check_representation_roundtrip(
    seed=42, n=20, tol_roundtrip=1e-8, tol_gap=1e-8
) -> tuple[CheckResult, CheckResult]:
    """Reconstruction returns the seeded operator; any probing basis agrees."""
    worst_rt = 0.0
    worst_gap = 0.0
    for i in range(n):
        algebra = ALG_MIXED[i % len(ALG_MIXED)]
        m = (2, 3)[i % 2]
        zeta = random_element(algebra, "general", derive_seed(seed, 30, i))
        P = zeta_polynomial([zeta], m)
        rec = reconstruct_zeta(P)[0]
        worst_rt = max(worst_rt, opnorm(rec - zeta) / (1.0 + opnorm(zeta)))
        rotated = reconstruct_zeta(P, seed=derive_seed(seed, 31, i))[0]
        worst_gap = max(worst_gap, opnorm(rotated - rec) / (1.0 + opnorm(rec)))
    return (
        CheckResult("roundtrip", n, worst_rt, tol_roundtrip, worst_rt <= tol_roundtrip),
        CheckResult("uniqueness", n, worst_gap, tol_gap, worst_gap <= tol_gap),
    )


def check_norm_sandwich_scalar(seed=42, n=20, tol=1e-9) -> CheckResult:
    """Hermitian scalar case: the witness attains the dual norm exactly.

    p > m runs on arbitrary weights; p = m sticks to unit weights, where
    the operator-norm duality is isometric.
    """
    worst = 0.0
    ratios = []
    for i in range(n):
        m = (2, 3)[i % 2]
        if i % 3 == 2:
            algebra = TracialAlgebra(((2, 1.0), (3, 1.0)))
            p = float(m)
        else:
            algebra = ALG_MIXED[i % len(ALG_MIXED)]
            p = float(m + 2 if i % 3 == 0 else 2 * m)
        zeta = random_element(algebra, "hermitian", derive_seed(seed, 40, i))
        P = zeta_polynomial([zeta], m)
        x, achieved = extremal_witness(zeta, p, m)
        upper = upper_norm_bound([zeta], p, m)
        worst = max(worst, abs(norm_p(x, p) - 1.0))
        worst = max(worst, abs(achieved - upper) / (1.0 + upper))
        lower, ub, ok = norm_bound_suite(
            P, p, m, n_samples=1, ascent_iters=0, seed=derive_seed(seed, 41, i)
        )
        if not ok:
            worst = max(worst, lower / ub - 1.0)
        ratios.append(lower / ub if ub > 0 else 1.0)
    detail = f"min lower/upper ratio {min(ratios):.6f}"
    return CheckResult("sandwich_scalar", n, worst, tol, worst <= tol, detail)


def check_norm_sandwich_vector(seed=42, n=20, tol=1e-9) -> CheckResult:
    """Vector codomain (q in {1/2, 1}): sampled lower never beats the bound."""
    worst = 0.0
    ratios = []
    for i in range(n):
        m = (2, 3)[i % 2]
        q = (1.0, 0.5)[i % 2]
        if i % 3 == 2:
            algebra = TracialAlgebra(((2, 1.0), (2, 1.0)))
            p = float(m)
        else:
            algebra = ALG_MIXED[i % len(ALG_MIXED)]
            p = float(2 * m)
        zetas = _zeta_list(algebra, 2, "general", derive_seed(seed, 50, i))
        P = zeta_polynomial(zetas, m, q)
        lower, upper, ok = norm_bound_suite(
            P, p, m, n_samples=1, ascent_iters=0, seed=derive_seed(seed, 51, i)
        )
        if not ok:
            worst = max(worst, lower / upper - 1.0)
        ratios.append(lower / upper if upper > 0 else 1.0)
    detail = f"observed lower/upper in [{min(ratios):.6f}, {max(ratios):.6f}]"
    return CheckResult("sandwich_vector", n, worst, tol, worst <= tol, detail)


def check_hermitian_correspondence(
    seed=42, n=20, tol=1e-10, tol_sa=1e-8
) -> CheckResult:
    """defect(P_zeta) <= 1e-10 exactly when zeta is self-adjoint within 1e-8."""
    worst = 0.0
    ok = True
    min_nonsa = math.inf
    for i in range(n):
        algebra = ALG_MIXED[i % len(ALG_MIXED)]
        m = (2, 3)[i % 2]
        kind = "hermitian" if i % 2 == 0 else "general"
        zeta = random_element(algebra, kind, derive_seed(seed, 60, i))
        P = zeta_polynomial([zeta], m)
        defect = hermitian_defect(P, n_samples=24, seed=derive_seed(seed, 61, i))
        sa = zeta.hermiticity_defect() <= tol_sa * opnorm(zeta)
        if sa:
            worst = max(worst, defect)
        else:
            min_nonsa = min(min_nonsa, defect)
        if (defect <= tol) != sa:
            ok = False
    detail = f"min defect among non-self-adjoint cases {min_nonsa:.3e}"
    return CheckResult(
        "hermitian_correspondence", n, worst, tol, ok and worst <= tol, detail
    )


# -- rigidity checks ------------------------------------------------------


def check_counterexample(seed=42, n=20, residual_min=1e-6) -> CheckResult:
    """Nonzero representable polynomials on M2+M3 always yield a witness."""
    algebra = ALG_RIGIDITY
    smallest = math.inf
    ok = True
    for i in range(n):
        m = (2, 3)[i % 2]
        d = (1, 1, 2)[i % 3]
        zetas = _zeta_list(algebra, d, "general", derive_seed(seed, 70, i))
        P = zeta_polynomial(zetas, m, q=(1.0, 0.5)[i % 2])
        witness = rigidity.full_oa_counterexample(P, seed=derive_seed(seed, 71, i))
        if witness is None:
            ok = False
            smallest = 0.0
            continue
        orth_ok, orth = is_orthogonal(witness.x, witness.y, 1e-10)
        if not orth_ok:
            ok = False
        smallest = min(smallest, witness.residual)
    # negative controls: the zero polynomial and any commutative algebra
    zero = HomPolynomial(2, QNormedCodomain(1), [])
    if rigidity.full_oa_counterexample(zero, algebra=algebra) is not None:
        ok = False
    czeta = random_element(ALG_COMMUTATIVE, "general", derive_seed(seed, 72))
    if rigidity.full_oa_counterexample(zeta_polynomial([czeta], 2)) is not None:
        ok = False
    passed = ok and smallest >= residual_min
    return CheckResult("counterexample", n, smallest, residual_min, passed)


def _zero_chain_battery(seed):
    algebra = TracialAlgebra(((2, 1.0), (2, 0.5)))
    one = algebra.identity()
    e11 = algebra.matrix_unit(0, 0, 0)
    e22 = algebra.matrix_unit(0, 1, 1)
    scalar = QNormedCodomain(1)
    battery = [
        (HomPolynomial(2, scalar, []), algebra),
        # syntactically distinct, semantically zero
        (
            HomPolynomial(
                2,
                scalar,
                [
                    TraceMonomial(1.0, 0, (one, one)),
                    TraceMonomial(-1.0, 0, (one, one)),
                ],
            ),
            None,
        ),
        (HomPolynomial(2, scalar, [TraceMonomial(1.0, 0, (e11, e22))]), None),
    ]
    for j in range(3):
        zeta = random_element(algebra, "general", derive_seed(seed, 80, j))
        battery.append((zeta_polynomial([zeta], 2 + j % 2), None))
        battery.append((zeta_polynomial([zeta], 2) * 0.0, None))
    return battery


def check_zero_chain(seed=42, n=60, tol=1e-12) -> CheckResult:
    """zero_certificate never reports vanishing on positives but not globally."""
    violations = 0
    count = 0
    for P, algebra in _zero_chain_battery(seed):
        pos, glob = rigidity.zero_certificate(
            P, n_samples=n, seed=derive_seed(seed, 81, count), algebra=algebra,
            positive_tol=tol,
        )
        if pos and glob is False:
            violations += 1
        count += 1
    return CheckResult("zero_chain", count, float(violations), 0.5, violations == 0)


# -- suite assembly -------------------------------------------------------


def run_suite(name: str, config: RunConfig) -> SuiteResult:
    seed = config.seed
    n = config.n_samples
    if name == "metrics":
        checks = (
            check_pythagoras(seed, n, config.tol("pythagoras")),
            check_holder(seed, n, config.tol("holder")),
            check_holder_equality(seed, max(8, n // 4), config.tol("holder_equality")),
            check_eig_reconstruction(seed, n, config.tol("eig_reconstruction")),
            check_power_roundtrip(seed, n, config.tol("power_roundtrip")),
            check_converse_pythagoras(seed, n, config.tol("converse_pythagoras")),
        )
    elif name == "representation":
        rt, uniq = check_representation_roundtrip(
            seed, max(4, n // 6), config.tol("roundtrip"), config.tol("uniqueness")
        )
        checks = (
            check_oa_sa(seed, max(4, n // 10), 10, config.tol("oa_sa")),
            rt,
            uniq,
            check_norm_sandwich_scalar(seed, max(4, n // 6), config.tol("sandwich_scalar")),
            check_norm_sandwich_vector(seed, max(4, n // 6), config.tol("sandwich_vector")),
            check_hermitian_correspondence(
                seed, max(6, n // 6), config.tol("hermitian_correspondence")
            ),
        )
    elif name == "rigidity":
        checks = (
            check_counterexample(seed, max(4, n // 6), config.tol("counterexample")),
            check_zero_chain(seed, max(10, n // 2), config.tol("zero_chain")),
        )
    else:
        raise UsageError(f"unknown suite {name!r}; known: {('all',) + SUITE_NAMES}")
    return SuiteResult(name, seed, checks)


def worker_count() -> int:
    """Worker cap from OA_POLYLAB_THREADS (default 1, floor 1)."""
    raw = os.environ.get("OA_POLYLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_suites(name: str, config: RunConfig) -> list[SuiteResult]:
    """Run one named suite, or all three; results keep the canonical order."""
    names = list(SUITE_NAMES) if name == "all" else [name]
    if name != "all" and name not in SUITE_NAMES:
        raise UsageError(f"unknown suite {name!r}; known: {('all',) + SUITE_NAMES}")
    workers = min(worker_count(), len(names))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda s: run_suite(s, config), names))
    return [run_suite(s, config) for s in names]
