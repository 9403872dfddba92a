import numpy as np
import pytest

from mcgs import Circuit, Gate, UnsupportedGate, abstract_depth, cancel, commutes
from mcgs.verify import permutation_table

from conftest import random_x_circuit


class TestCommutes:
    def test_shared_controls_different_targets(self):
        assert commutes(Gate.mcx([0, 1], 3), Gate.mcx([0, 1], 4))

    def test_target_feeding_control_blocks(self):
        assert not commutes(Gate.mcx([0, 1], 3), Gate.mcx([3], 4))
        assert not commutes(Gate.mcx([3], 4), Gate.mcx([0, 1], 3))

    def test_identical_gates_commute(self):
        g = Gate.mcx([0, 1], 2)
        assert commutes(g, g)

    def test_same_target_always_commutes(self):
        assert commutes(Gate.mcx([0], 2), Gate.mcx([1], 2))

    def test_non_x_type_conservative(self):
        assert not commutes(Gate.u1q(np.eye(2), 0), Gate.x(1))


class TestCancel:
    def test_adjacent_pair(self):
        c = cancel(Circuit(1, [Gate.x(0), Gate.x(0)]))
        assert c.gates == ()

    def test_pair_through_disjoint_gate(self):
        g = Gate.mcx([1, 2], 0)
        c = cancel(Circuit(4, [g, Gate.x(3), g]))
        assert [x.target for x in c.gates] == [3]

    def test_blocked_by_control_write(self):
        g = Gate.mcx([1, 2], 0)
        c = cancel(Circuit(3, [g, Gate.x(1), g]))
        assert len(c.gates) == 3

    def test_polarity_must_match(self):
        a = Gate.mcx([0, 1], 2)
        b = Gate.mcx([0, 1], 2, open_controls=[0])
        assert len(cancel(Circuit(3, [a, b])).gates) == 2

    def test_nested_pairs_reach_fixed_point(self):
        a = Gate.mcx([0], 1)
        b = Gate.mcx([0, 2], 3)
        c = cancel(Circuit(4, [a, b, b, a]))
        assert c.gates == ()

    def test_rejects_unitary_gates(self):
        with pytest.raises(UnsupportedGate):
            cancel(Circuit(1, [Gate.u1q(np.eye(2), 0)]))

    def test_deterministic(self, rng):
        c = random_x_circuit(rng, 8, 80)
        first = [g.key() for g in cancel(c).gates]
        second = [g.key() for g in cancel(c).gates]
        assert first == second

    def test_soundness_and_nondegradation(self, rng):
        for _ in range(150):
            w = int(rng.integers(2, 11))
            c = random_x_circuit(rng, w, int(rng.integers(1, 201)))
            out = cancel(c)
            assert len(out.gates) <= len(c.gates)
            assert abstract_depth(out) <= abstract_depth(c)
            assert (permutation_table(out) == permutation_table(c)).all()
