import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(0xC0FFEE)


def random_su2(rng):
    z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(z)
    q = q @ np.diag(np.diag(r) / np.abs(np.diag(r)))
    return q / np.sqrt(np.linalg.det(q))


def random_u2(rng):
    z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(z)
    return q @ np.diag(np.diag(r) / np.abs(np.diag(r)))


def random_x_circuit(rng, width, n_gates, open_prob=0.3, max_controls=3):
    from mcgs import Circuit, Gate

    gates = []
    for _ in range(n_gates):
        k = int(rng.integers(0, min(max_controls + 1, width)))
        qs = rng.choice(width, size=k + 1, replace=False)
        ctrls = [int(q) for q in qs[:-1]]
        opens = [q for q in ctrls if rng.random() < open_prob]
        gates.append(Gate.mcx(ctrls, int(qs[-1]), opens))
    return Circuit(width, gates)
