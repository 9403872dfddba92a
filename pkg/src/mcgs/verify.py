"""Simulation oracles and equivalence checkers.

X-type circuits are permutations of the computational basis, so they are
checked with exact classical reversible simulation (exhaustive for small
widths, sampled above).  Mixed circuits go through dense unitary /
statevector simulation at small widths.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit, Gate
from .errors import ResourceError, UnsupportedGate

DEFAULT_SEED = 0xC0FFEE

DENSE_WIDTH_CAP = 11
TABLE_WIDTH_CAP = 22


# -- classical reversible simulation ------------------------------------


def simulate_reversible(circuit: Circuit, state: int) -> int:
    """Apply an X-type circuit to one basis state (bit i = qubit i)."""
    x = state
    for g in circuit.gates:
        if g.matrix is not None:
            raise UnsupportedGate(f"non-X-type gate in reversible simulation: {g!r}")
        fire = True
        for q in g.controls:
            bit = (x >> q) & 1
            want = 0 if q in g.open_controls else 1
            if bit != want:
                fire = False
                break
        if fire:
            x ^= 1 << g.target
    return x


def simulate_reversible_bits(circuit: Circuit, bits: np.ndarray) -> np.ndarray:
    """Batched reversible simulation over a (samples, width) boolean matrix."""
    out = bits.copy()
    n_samples = out.shape[0]
    for g in circuit.gates:
        if g.matrix is not None:
            raise UnsupportedGate(f"non-X-type gate in reversible simulation: {g!r}")
        if g.controls:
            cond = np.ones(n_samples, dtype=bool)
            for q in g.controls:
                col = out[:, q]
                cond &= ~col if q in g.open_controls else col
            out[:, g.target] ^= cond
        else:
            out[:, g.target] = ~out[:, g.target]
    return out


def permutation_table(circuit: Circuit) -> np.ndarray:
    """Full basis permutation of an X-type circuit (width <= 22)."""
    w = circuit.width
    if w > TABLE_WIDTH_CAP:
        raise ResourceError(f"permutation table capped at width {TABLE_WIDTH_CAP}, got {w}")
    states = np.arange(1 << w, dtype=np.uint64)
    one = np.uint64(1)
    for g in circuit.gates:
        if g.matrix is not None:
            raise UnsupportedGate(f"non-X-type gate in permutation table: {g!r}")
        if g.controls:
            cond = np.ones(states.shape, dtype=bool)
            for q in g.controls:
                bit = (states >> np.uint64(q)) & one
                cond &= (bit == 0) if q in g.open_controls else (bit == 1)
            states = np.where(cond, states ^ (one << np.uint64(g.target)), states)
        else:
            states = states ^ (one << np.uint64(g.target))
    return states


# -- equivalence reports -------------------------------------------------


@dataclass
class EquivalenceReport:
    mode: str  # exhaustive | sampled | unitary
    checked: int
    failures: list[tuple[int, int, int]] = field(default_factory=list)
    max_distance: float = 0.0
    tolerance: float = 0.0
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return not self.failures and self.max_distance <= self.tolerance

    def to_lines(self) -> list[str]:
        lines = [
            f"mode={self.mode} checked={self.checked} passed={self.passed}",
            f"max_distance={self.max_distance:.3e} tolerance={self.tolerance:.3e}",
        ]
        if self.seed is not None:
            lines.append(f"seed={self.seed}")
        for inp, want, got in self.failures[:10]:
            lines.append(f"FAIL input={inp:#x} expected={want:#x} got={got:#x}")
        return lines

    def to_csv_row(self) -> str:
        return (
            f"{self.mode},{self.checked},{len(self.failures)},"
            f"{self.max_distance:.6e},{int(self.passed)},{self.seed if self.seed is not None else ''}"
        )


CSV_REPORT_HEADER = "mode,checked,failures,max_distance,passed,seed"


# -- MCX contract checking ------------------------------------------------


def _mcx_expected(states: np.ndarray, n: int) -> np.ndarray:
    ones = np.uint64((1 << n) - 1)
    cond = (states & ones) == ones
    return np.where(cond, states ^ np.uint64(1 << n), states)


def check_mcx(
    circuit: Circuit,
    n: int,
    mode: str = "auto",
    samples: int = 1000,
    seed: int = DEFAULT_SEED,
) -> EquivalenceReport:
    """Check that a width-(n+2) circuit implements C^nX and restores everything else.

    Exhaustive over all basis states when n+2 <= 20, sampled otherwise
    (uniform samples plus the critical control patterns, for both ancilla
    values).
    """
    w = n + 2
    if circuit.width != w:
        raise ValueError(f"expected width {w}, got {circuit.width}")
    if mode == "auto":
        mode = "exhaustive" if w <= 20 else "sampled"

    if mode == "exhaustive":
        got = permutation_table(circuit)
        states = np.arange(1 << w, dtype=np.uint64)
        want = _mcx_expected(states, n)
        bad = np.nonzero(got != want)[0]
        failures = [(int(states[i]), int(want[i]), int(got[i])) for i in bad[:32]]
        return EquivalenceReport("exhaustive", 1 << w, failures)

    rng = np.random.default_rng(seed)
    sampled = rng.integers(0, 2, size=(samples, w), dtype=np.uint8).astype(bool)
    crit = _critical_patterns(n)
    bits = np.concatenate([sampled, crit], axis=0)
    out = simulate_reversible_bits(circuit, bits)
    all_ones = bits[:, :n].all(axis=1)
    want = bits.copy()
    want[:, n] ^= all_ones
    bad = np.nonzero((out != want).any(axis=1))[0]
    failures = [
        (_bits_to_int(bits[i]), _bits_to_int(want[i]), _bits_to_int(out[i]))
        for i in bad[:32]
    ]
    return EquivalenceReport("sampled", bits.shape[0], failures, seed=seed)


def _critical_patterns(n: int) -> np.ndarray:
    """Critical (controls, target) patterns x both ancilla values: 2(n+3) states."""
    pats = []
    base = np.ones(n + 2, dtype=bool)
    base[n] = base[n + 1] = False
    for t in (False, True):  # all-ones controls, both target values
        p = base.copy()
        p[n] = t
        pats.append(p)
    zeros = np.zeros(n + 2, dtype=bool)
    pats.append(zeros)  # all-zeros controls
    for i in range(n):  # a single zero at each control
        p = base.copy()
        p[i] = False
        pats.append(p)
    block = np.stack(pats)
    with_anc = np.concatenate([block, block], axis=0)
    with_anc[len(pats):, n + 1] = True
    return with_anc


def _bits_to_int(bits: np.ndarray) -> int:
    x = 0
    for i, b in enumerate(bits):
        if b:
            x |= 1 << i
    return x


# -- dense unitary / statevector simulation -------------------------------


def _apply_controlled_1q(
    u: np.ndarray, gate: Gate, width: int
) -> np.ndarray:
    """Apply a (possibly singly-controlled) 1q unitary to every column of u."""
    m = gate.matrix
    dim = 1 << width
    idx = np.arange(dim)
    tbit = 1 << gate.target
    rows0 = idx[(idx & tbit) == 0]
    if gate.controls:
        c = gate.controls[0]
        cbit = 1 << c
        want = 0 if c in gate.open_controls else cbit
        rows0 = rows0[(rows0 & cbit) == want]
    rows1 = rows0 | tbit
    a, b = u[rows0, :], u[rows1, :]
    u = u.copy()
    u[rows0, :] = m[0, 0] * a + m[0, 1] * b
    u[rows1, :] = m[1, 0] * a + m[1, 1] * b
    return u


def _perm_of_gates(gates: list[Gate], width: int) -> np.ndarray:
    """Composed basis permutation sigma with sigma[x] = circuit(x)."""
    states = np.arange(1 << width, dtype=np.uint64)
    one = np.uint64(1)
    for g in gates:
        if g.controls:
            cond = np.ones(states.shape, dtype=bool)
            for q in g.controls:
                bit = (states >> np.uint64(q)) & one
                cond &= (bit == 0) if q in g.open_controls else (bit == 1)
            states = np.where(cond, states ^ (one << np.uint64(g.target)), states)
        else:
            states = states ^ (one << np.uint64(g.target))
    return states.astype(np.int64)


def dense_unitary(circuit: Circuit) -> np.ndarray:
    """Full 2^w x 2^w unitary of the circuit (width <= 11).

    Runs of X-type gates are folded into one basis permutation before being
    applied, so permutation-heavy circuits cost one row gather per run.
    """
    w = circuit.width
    if w > DENSE_WIDTH_CAP:
        raise ResourceError(f"dense unitary capped at width {DENSE_WIDTH_CAP}, got {w}")
    dim = 1 << w
    u = np.eye(dim, dtype=complex)
    run: list[Gate] = []

    def flush():
        nonlocal u
        if run:
            sigma = _perm_of_gates(run, w)
            out = np.empty_like(u)
            out[sigma, :] = u
            u = out
            run.clear()

    for g in circuit.gates:
        if g.is_x_type:
            run.append(g)
        else:
            flush()
            u = _apply_controlled_1q(u, g, w)
    flush()
    return u


def statevector(circuit: Circuit, state: np.ndarray) -> np.ndarray:
    """Apply the circuit to a statevector (width <= 22 for X-type-only spans)."""
    w = circuit.width
    if state.shape != (1 << w,):
        raise ValueError("statevector length must be 2^width")
    psi = np.asarray(state, dtype=complex).copy()
    idx = np.arange(1 << w, dtype=np.uint64)
    one = np.uint64(1)
    for g in circuit.gates:
        if g.is_x_type:
            if g.controls:
                cond = np.ones(idx.shape, dtype=bool)
                for q in g.controls:
                    bit = (idx >> np.uint64(q)) & one
                    cond &= (bit == 0) if q in g.open_controls else (bit == 1)
                flipped = np.where(cond, idx ^ (one << np.uint64(g.target)), idx)
            else:
                flipped = idx ^ (one << np.uint64(g.target))
            out = np.empty_like(psi)
            out[flipped.astype(np.int64)] = psi
            psi = out
        else:
            if w > DENSE_WIDTH_CAP:
                raise ResourceError("1q-unitary statevector application capped at width 11")
            psi = (_apply_controlled_1q(psi.reshape(-1, 1), g, w)).ravel()
    return psi


def spectral_distance(u1: np.ndarray, u2: np.ndarray) -> float:
    """Largest singular value of u1 - u2."""
    if u1.shape != u2.shape:
        raise ValueError(f"shape mismatch: {u1.shape} vs {u2.shape}")
    d = u1 - u2
    if not d.any():
        return 0.0
    return float(np.linalg.svd(d, compute_uv=False)[0])


def exact_mcx_unitary(n: int, width: int) -> np.ndarray:
    """C^nX over controls 0..n-1, target n, embedded in `width` wires."""
    dim = 1 << width
    sigma = np.arange(dim, dtype=np.int64)
    ones = (1 << n) - 1
    cond = (sigma & ones) == ones
    sigma = np.where(cond, sigma ^ (1 << n), sigma)
    u = np.zeros((dim, dim), dtype=complex)
    u[sigma, np.arange(dim)] = 1.0
    return u


def exact_controlled_unitary(matrix: np.ndarray, n: int, width: int) -> np.ndarray:
    """C^n(matrix) over controls 0..n-1, target n, embedded in `width` wires."""
    dim = 1 << width
    u = np.eye(dim, dtype=complex)
    idx = np.arange(dim)
    ones = (1 << n) - 1
    tbit = 1 << n
    rows0 = idx[((idx & ones) == ones) & ((idx & tbit) == 0)]
    rows1 = rows0 | tbit
    u[rows0, rows0] = matrix[0, 0]
    u[rows0, rows1] = matrix[0, 1]
    u[rows1, rows0] = matrix[1, 0]
    u[rows1, rows1] = matrix[1, 1]
    return u
