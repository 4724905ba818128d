import math

import numpy as np
import pytest

from oa_polylab import (
    UsageError,
    check_p,
    converse_pythagoras_probe,
    holder_check,
    is_orthogonal,
    norm_p,
    orthogonal_pair,
    pythagoras_residual,
    random_element,
)

INF = math.inf


class TestCheckP:
    @pytest.mark.parametrize("bad", [0, -1, float("nan"), "abc", None])
    def test_rejects(self, bad):
        with pytest.raises(UsageError):
            check_p(bad)

    def test_accepts_inf(self):
        assert math.isinf(check_p(INF))
        assert check_p("0.5") == 0.5


class TestNormP:
    def test_diagonal_singular_values(self, m2):
        x = m2.element([np.diag([3.0, 4.0])])
        assert norm_p(x, 1) == pytest.approx(7.0)
        assert norm_p(x, 2) == pytest.approx(5.0)
        assert norm_p(x, INF) == pytest.approx(4.0)

    def test_identity_quasi_norm(self, m2):
        assert norm_p(m2.identity(), 0.5) == pytest.approx(4.0)

    def test_matrix_unit_every_p(self, m2):
        e12 = m2.matrix_unit(0, 0, 1)
        for p in (0.5, 1, 2, 3, 4, INF):
            assert norm_p(e12, p) == pytest.approx(1.0, abs=1e-12)

    def test_zero_iff_zero(self, mixed):
        assert norm_p(mixed.zero(), 2) == 0.0
        x = random_element(mixed, "general", 1)
        assert norm_p(x, 2) > 0.1

    def test_absolute_homogeneity(self, mixed):
        x = random_element(mixed, "general", 2)
        for p in (0.5, 1, 2, INF):
            assert norm_p(3j * x, p) == pytest.approx(3 * norm_p(x, p), rel=1e-12)

    def test_adjoint_invariance(self, mixed):
        for seed in range(5):
            x = random_element(mixed, "general", 100 + seed)
            for p in (0.5, 1, 2, 4, INF):
                assert norm_p(x.adjoint(), p) == pytest.approx(norm_p(x, p), rel=1e-10)

    def test_weighted_trace_norm(self):
        from oa_polylab import TracialAlgebra

        alg = TracialAlgebra(((2, 0.5),))
        assert norm_p(alg.identity(), 1) == pytest.approx(1.0)


class TestOrthogonality:
    def test_disjoint_diagonal_units(self, m2):
        flag, res = is_orthogonal(m2.matrix_unit(0, 0, 0), m2.matrix_unit(0, 1, 1))
        assert flag and res == 0.0

    def test_nilpotent_pair(self, m2):
        flag, _ = is_orthogonal(m2.matrix_unit(0, 0, 1), m2.matrix_unit(0, 1, 0))
        assert flag

    def test_overlapping_supports(self, m2):
        flag, res = is_orthogonal(m2.matrix_unit(0, 0, 0), m2.matrix_unit(0, 0, 1))
        assert not flag
        assert res >= 0.25 - 1e-12

    def test_generator_produces_orthogonal_pairs(self, mixed):
        for cone in ("sa", "positive", "full"):
            rng = np.random.default_rng(3)
            x, y = orthogonal_pair(mixed, cone, rng)
            flag, res = is_orthogonal(x, y, 1e-12)
            assert flag, (cone, res)


class TestPythagoras:
    def test_projections_quasi_norm(self, m2):
        res = pythagoras_residual(m2.matrix_unit(0, 0, 0), m2.matrix_unit(0, 1, 1), 0.5, 1.0)
        assert res <= 1e-10

    def test_non_orthogonal_measures_two(self, m2):
        e11 = m2.matrix_unit(0, 0, 0)
        assert pythagoras_residual(e11, e11, 2, 1.0) == pytest.approx(2.0)

    def test_constructed_orthogonal_positives(self, mixed):
        for seed in range(10):
            rng = np.random.default_rng(seed)
            x, y = orthogonal_pair(mixed, "positive", rng)
            assert pythagoras_residual(x, y, 3, 1.0) <= 1e-9

    def test_complex_phase(self, mixed):
        rng = np.random.default_rng(11)
        x, y = orthogonal_pair(mixed, "positive", rng)
        nx, ny = norm_p(x, 1), norm_p(y, 1)
        assert pythagoras_residual(x, y, 1, 1j) <= 1e-10 * (1 + nx + ny)

    def test_subadditivity_of_quasi_norm_on_orthogonals(self, mixed):
        # for 0 < p < 1, the p-th powers add exactly on orthogonal positives
        rng = np.random.default_rng(17)
        x, y = orthogonal_pair(mixed, "positive", rng)
        p = 0.5
        total = norm_p(x + y, p) ** p
        assert total == pytest.approx(norm_p(x, p) ** p + norm_p(y, p) ** p, rel=1e-12)

    def test_infinite_p_rejected(self, m2):
        with pytest.raises(UsageError):
            pythagoras_residual(m2.identity(), m2.identity(), INF, 1.0)


class TestHolder:
    def test_identity_saturates(self, m2):
        one = m2.identity()
        lhs, rhs, ok = holder_check(one, one, 2, 2)
        assert ok
        assert lhs == pytest.approx(2.0)
        assert rhs == pytest.approx(2.0)

    def test_hand_computed_quasi_case(self, m2):
        # x = diag(1,2), y = diag(3,1), p = q = 1 so r = 1/2:
        # xy = diag(3,2), ||xy||_{1/2} = (sqrt(3)+sqrt(2))^2, rhs = 3 * 4
        x = m2.element([np.diag([1.0, 2.0])])
        y = m2.element([np.diag([3.0, 1.0])])
        lhs, rhs, ok = holder_check(x, y, 1, 1)
        assert ok
        assert lhs == pytest.approx((math.sqrt(3) + math.sqrt(2)) ** 2)
        assert rhs == pytest.approx(12.0)

    def test_sampled_inequality(self, mixed):
        grid = (0.5, 1, 2, 4, INF)
        for seed in range(25):
            x = random_element(mixed, "general", seed)
            y = random_element(mixed, "general", 500 + seed)
            for p in grid:
                for q in grid:
                    lhs, rhs, ok = holder_check(x, y, p, q)
                    assert ok, (p, q, lhs, rhs)

    def test_equality_family(self, mixed):
        from oa_polylab import functional_calculus

        z = random_element(mixed, "general", 9)
        absz = functional_calculus(z.adjoint() @ z, ("power", 0.5))
        lhs, rhs, _ = holder_check(absz, absz, 2, 2)
        assert lhs == pytest.approx(rhs, rel=1e-10)


class TestConversePythagoras:
    def test_orthogonal_pair_all_small(self, mixed):
        rng = np.random.default_rng(23)
        x, y = orthogonal_pair(mixed, "positive", rng)
        res_plus, res_minus, orth = converse_pythagoras_probe(x, y, 3)
        assert res_plus <= 1e-9
        assert res_minus <= 1e-9
        assert orth <= 1e-10

    def test_equal_elements_fail_one_sign(self, m2):
        e11 = m2.matrix_unit(0, 0, 0)
        res_plus, res_minus, orth = converse_pythagoras_probe(e11, e11, 1)
        assert res_plus <= 1e-12
        assert res_minus == pytest.approx(2.0)
        assert orth >= 0.2

    def test_p_two_excluded(self, m2):
        with pytest.raises(UsageError):
            converse_pythagoras_probe(m2.identity(), m2.identity(), 2)

    def test_sampled_contrapositive(self, mixed):
        checked = 0
        seed = 0
        while checked < 50:
            x = random_element(mixed, "general", 3000 + seed)
            y = random_element(mixed, "general", 4000 + seed)
            seed += 1
            _, orth = is_orthogonal(x, y)
            if orth < 0.1:
                continue
            res_plus, res_minus, _ = converse_pythagoras_probe(x, y, (0.5, 1, 3, 4)[checked % 4])
            assert max(res_plus, res_minus) > 1e-12
            checked += 1
