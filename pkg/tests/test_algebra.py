import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oa_polylab import (
    Element,
    StructuralError,
    TracialAlgebra,
    UsageError,
    opnorm,
    random_element,
    trace,
)


class TestTracialAlgebra:
    def test_rejects_empty(self):
        with pytest.raises(StructuralError):
            TracialAlgebra(())

    def test_rejects_nonpositive_weight(self):
        with pytest.raises(StructuralError):
            TracialAlgebra(((2, 0.0),))
        with pytest.raises(StructuralError):
            TracialAlgebra(((2, -1.0),))

    def test_rejects_bad_dim(self):
        with pytest.raises(StructuralError):
            TracialAlgebra(((0, 1.0),))
        with pytest.raises(StructuralError):
            TracialAlgebra(((65, 1.0),))

    def test_structural_equality(self):
        a = TracialAlgebra(((2, 0.5), (3, 2.0)))
        b = TracialAlgebra(((2, 0.5), (3, 2.0)))
        assert a == b
        assert a.total_matrix_dim == 4 + 9


class TestTrace:
    def test_identity_m2(self, m2):
        assert trace(m2.identity()) == pytest.approx(2.0)

    def test_weighted_sum(self):
        alg = TracialAlgebra(((1, 0.5), (1, 2.0)))
        x = alg.element([np.array([[1.0]]), np.array([[1.0]])])
        assert trace(x) == pytest.approx(2.5)

    def test_cyclicity_random_m3(self, m3):
        # oracle: plain numpy trace of the products
        for seed in range(20):
            x = random_element(m3, "general", seed)
            y = random_element(m3, "general", 1000 + seed)
            xy = np.array((x @ y).blocks[0])
            yx = np.array((y @ x).blocks[0])
            assert abs(np.trace(xy) - np.trace(yx)) <= 1e-12 * (1 + abs(np.trace(xy)))

    def test_trace_of_adjoint_conjugates(self, mixed):
        x = random_element(mixed, "general", 3)
        assert trace(x.adjoint()) == pytest.approx(np.conj(trace(x)))

    def test_tracial_identity_thousand_pairs(self, mixed):
        worst = 0.0
        for seed in range(1000):
            x = random_element(mixed, "general", seed)
            y = random_element(mixed, "general", 10_000 + seed)
            txy = trace(x @ y)
            tyx = trace(y @ x)
            worst = max(worst, abs(txy - tyx) / (1e-11 * (1 + abs(txy))))
        assert worst <= 1.0


class TestArithmetic:
    def test_matrix_units_multiply(self, m2):
        e12 = m2.matrix_unit(0, 0, 1)
        e21 = m2.matrix_unit(0, 1, 0)
        e11 = m2.matrix_unit(0, 0, 0)
        assert opnorm(e12 @ e21 - e11) == 0.0

    def test_adjoint_of_matrix_unit(self, m2):
        assert opnorm(m2.matrix_unit(0, 0, 1).adjoint() - m2.matrix_unit(0, 1, 0)) == 0.0

    def test_product_adjoint_rule(self, mixed):
        x = random_element(mixed, "general", 5)
        y = random_element(mixed, "general", 6)
        assert opnorm((x @ y).adjoint() - y.adjoint() @ x.adjoint()) <= 1e-13

    def test_identity_neutral(self, mixed):
        x = random_element(mixed, "general", 7)
        one = mixed.identity()
        assert opnorm(one @ x - x) == 0.0
        assert opnorm(x @ one - x) == 0.0

    def test_algebra_mismatch_raises(self, m2, m3):
        with pytest.raises(StructuralError):
            m2.identity() + m3.identity()
        with pytest.raises(StructuralError):
            m2.identity() @ m3.identity()

    def test_block_shape_mismatch_raises(self, m2):
        with pytest.raises(StructuralError):
            Element(m2, [np.eye(3)])

    def test_elements_are_immutable(self, m2):
        x = m2.identity()
        with pytest.raises(ValueError):
            x.blocks[0][0, 0] = 5.0
        with pytest.raises(AttributeError):
            x.algebra = None

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), a=st.complex_numbers(max_magnitude=10, allow_nan=False))
    def test_adjoint_antihomomorphism(self, seed, a):
        alg = TracialAlgebra(((3, 1.0),))
        x = random_element(alg, "general", seed)
        y = random_element(alg, "general", seed + 1)
        assert opnorm((x.adjoint()).adjoint() - x) == 0.0
        lhs = (a * x + y).adjoint()
        rhs = np.conj(a) * x.adjoint() + y.adjoint()
        assert opnorm(lhs - rhs) <= 1e-12 * (1 + abs(a))
        assert opnorm((x @ y).adjoint() - y.adjoint() @ x.adjoint()) <= 1e-12


class TestRandomElements:
    def test_positive_kind_is_positive(self, mixed):
        for seed in (0, 1, 2, 3):
            assert random_element(mixed, "positive", seed).is_positive(1e-10)

    def test_projection_kind_is_projection(self, mixed):
        for seed in (0, 1, 2, 3):
            e = random_element(mixed, "projection", seed)
            assert opnorm(e @ e - e) <= 1e-10
            assert e.hermiticity_defect() <= 1e-10

    def test_determinism_bitwise(self, mixed):
        a = random_element(mixed, "general", 12345)
        b = random_element(mixed, "general", 12345)
        for ba, bb in zip(a.blocks, b.blocks):
            assert np.array_equal(ba, bb)

    def test_unknown_kind(self, m2):
        with pytest.raises(UsageError):
            random_element(m2, "unitary", 0)

    def test_faithfulness(self, mixed):
        x = random_element(mixed, "general", 9)
        val = trace(x.adjoint() @ x)
        assert val.real >= 0.0
        assert abs(val.imag) <= 1e-12 * (1 + val.real)
        # tau(x* x) dominates min-weight * ||x||_F^2, so a vanishing trace
        # pins the element itself to zero
        assert val.real >= min(mixed.weights) * x.norm_fro() ** 2 * (1 - 1e-12)
        zero = mixed.zero()
        assert trace(zero.adjoint() @ zero) == 0
        assert opnorm(zero) <= 1e-10

    def test_projection_predicate(self, mixed):
        e = random_element(mixed, "projection", 4)
        assert e.is_projection(1e-10)
        assert not random_element(mixed, "positive", 4).is_projection(1e-6)
