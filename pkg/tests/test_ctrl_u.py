import math

import numpy as np
import pytest

from mcgs import (
    DomainError,
    abc_factors,
    dense_unitary,
    mcsu2,
    mcu2_approx,
    spectral_distance,
    sqrt_unitary,
    zyz_decompose,
)
from mcgs.synthesis.ctrl_u import ry, rz
from mcgs.verify import exact_controlled_unitary

from conftest import random_su2, random_u2

X = np.array([[0, 1], [1, 0]], dtype=complex)


class TestZyz:
    def test_identity(self):
        a = zyz_decompose(np.eye(2, dtype=complex))
        assert (a.alpha, a.theta, a.beta) == (0.0, 0.0, 0.0)

    def test_pure_ry(self):
        a = zyz_decompose(ry(1.3))
        assert a.alpha == pytest.approx(0.0, abs=1e-12)
        assert a.theta == pytest.approx(1.3, abs=1e-12)
        assert a.beta == pytest.approx(0.0, abs=1e-12)

    def test_reconstruction(self, rng):
        for _ in range(100):
            w = random_su2(rng)
            a = zyz_decompose(w)
            rebuilt = rz(a.alpha) @ ry(a.theta) @ rz(a.beta)
            assert np.abs(rebuilt - w).max() <= 1e-12
            assert 0.0 <= a.theta <= math.pi

    def test_rejects_non_special(self):
        with pytest.raises(DomainError):
            zyz_decompose(np.diag([1.0, np.exp(0.5j)]))


class TestAbc:
    def test_identity_factors(self):
        f = abc_factors(np.eye(2, dtype=complex))
        for m in (f.a, f.b, f.c):
            assert np.abs(m - np.eye(2)).max() <= 1e-12

    def test_pure_ry_factors(self):
        f = abc_factors(ry(0.8))
        assert np.abs(f.a - ry(0.4)).max() <= 1e-12
        assert np.abs(f.b - ry(-0.4)).max() <= 1e-12
        assert np.abs(f.c - np.eye(2)).max() <= 1e-12

    def test_invariants(self, rng):
        for _ in range(100):
            w = random_su2(rng)
            f = abc_factors(w)
            assert np.abs(f.a @ f.b @ f.c - np.eye(2)).max() <= 1e-12
            assert np.abs(f.a @ X @ f.b @ X @ f.c - w).max() <= 1e-12


class TestMcsu2:
    def test_single_control(self, rng):
        w = random_su2(rng)
        c = mcsu2(1, w)
        assert spectral_distance(dense_unitary(c), exact_controlled_unitary(w, 1, 2)) <= 1e-12

    @pytest.mark.parametrize("n", [2, 3, 4, 6])
    def test_oracle_distance(self, rng, n):
        w = random_su2(rng)
        c = mcsu2(n, w)
        assert c.width == n + 1
        d = spectral_distance(dense_unitary(c), exact_controlled_unitary(w, n, n + 1))
        assert d <= 1e-9

    def test_ry_example(self):
        c = mcsu2(6, ry(0.9))
        d = spectral_distance(dense_unitary(c), exact_controlled_unitary(ry(0.9), 6, 7))
        assert d <= 1e-9

    def test_identity_input(self):
        c = mcsu2(4, np.eye(2, dtype=complex))
        assert spectral_distance(dense_unitary(c), np.eye(32)) <= 1e-9

    def test_rejects_non_special(self):
        with pytest.raises(DomainError):
            mcsu2(3, np.diag([1.0, 1j]))


class TestSqrtUnitary:
    def test_identity(self):
        assert np.abs(sqrt_unitary(np.eye(2, dtype=complex)) - np.eye(2)).max() <= 1e-12

    def test_rz(self):
        assert np.abs(sqrt_unitary(rz(0.7)) - rz(0.35)).max() <= 1e-12

    def test_x_principal_root(self):
        v = sqrt_unitary(X)
        want = 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]])
        assert np.abs(v - want).max() <= 1e-12

    def test_square_back(self, rng):
        for _ in range(50):
            u = random_u2(rng)
            v = sqrt_unitary(u)
            assert np.abs(v @ v - u).max() <= 1e-11
            phases = np.angle(np.linalg.eigvals(v))
            assert (phases > -math.pi / 2 - 1e-9).all()
            assert (phases <= math.pi / 2 + 1e-9).all()


class TestMcu2Approx:
    def test_near_identity_is_empty(self):
        u = rz(1e-6)
        c, plan = mcu2_approx(4, u, 1e-2)
        assert c.gates == ()
        assert plan.steps == 0
        assert plan.residual_error == pytest.approx(
            spectral_distance(u, np.eye(2)), abs=1e-15
        )

    def test_rejects_bad_epsilon(self):
        with pytest.raises(DomainError):
            mcu2_approx(3, X, 0.0)

    def test_x_budget(self):
        c, plan = mcu2_approx(6, X, 1e-4)
        d = spectral_distance(dense_unitary(c), exact_controlled_unitary(X, 6, 7))
        assert d <= 1e-4 + 1e-9
        assert plan.residual_error <= 1e-4

    def test_exhaustion_is_exact(self):
        c, plan = mcu2_approx(4, X, 1e-12)
        assert plan.steps == 3
        assert plan.residual_error == 0.0
        d = spectral_distance(dense_unitary(c), exact_controlled_unitary(X, 4, 5))
        assert d <= 1e-9

    def test_halting_before_exhaustion(self):
        # large budget halts the recursion early: X has eigenphase spread pi
        c, plan = mcu2_approx(8, X, 0.5)
        assert plan.steps < 7
        assert plan.residual_error <= 0.5
        d = spectral_distance(dense_unitary(c), exact_controlled_unitary(X, 8, 9))
        assert d <= 0.5 + 1e-9

    @pytest.mark.parametrize("eps", [1e-2, 1e-4, 1e-6])
    def test_error_budget_random(self, rng, eps):
        for _ in range(5):
            n = int(rng.integers(2, 7))
            u = random_u2(rng)
            c, plan = mcu2_approx(n, u, eps)
            d = spectral_distance(dense_unitary(c), exact_controlled_unitary(u, n, n + 1))
            assert d <= eps + 1e-9
            assert plan.residual_error <= eps

    def test_log_step_scaling(self):
        # steps grow by at most ceil(log2 ratio) + 1 between error levels
        steps = []
        for eps in (1e-1, 1e-2, 1e-3):
            _, plan = mcu2_approx(24, X, eps)
            steps.append(plan.steps)
        assert steps[1] - steps[0] <= math.ceil(math.log2(1e-1 / 1e-2)) + 1
        assert steps[2] - steps[1] <= math.ceil(math.log2(1e-2 / 1e-3)) + 1
