"""Circuit intermediate representation.

Gates are either X-type (an X flip conditioned on any number of controls,
each control closed |1> or open |0>) or a 2x2 unitary with at most one
control.  Circuits are immutable values: structural operations return new
circuits and never mutate their inputs.

Qubits are plain wire indices (little-endian: bit i of a basis-state
integer is the value of qubit i).
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import UnsupportedGate, WidthMismatch

UNITARY_ATOL = 1e-12

_EMPTY_FS: frozenset[int] = frozenset()


def _check_unitary(matrix: np.ndarray) -> np.ndarray:
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
    defect = np.abs(m.conj().T @ m - np.eye(2)).max()
    if defect > UNITARY_ATOL:
        raise ValueError(f"matrix is not unitary (defect {defect:.3e})")
    return m


class Gate:
    """One circuit element: a (multi-)controlled X or a (controlled) 1q unitary."""

    __slots__ = ("controls", "open_controls", "target", "matrix", "label")

    def __init__(
        self,
        controls: Sequence[int],
        target: int,
        *,
        open_controls: Iterable[int] = (),
        matrix: np.ndarray | None = None,
        label: str | None = None,
        _trusted: bool = False,
    ):
        if _trusted:
            self.controls = controls  # type: ignore[assignment]
            self.open_controls = open_controls  # type: ignore[assignment]
        else:
            ctrls = tuple(sorted(controls))
            opens = frozenset(open_controls) if open_controls else _EMPTY_FS
            if len(set(ctrls)) != len(ctrls):
                raise ValueError(f"duplicate control qubits: {ctrls}")
            if target in ctrls:
                raise ValueError(f"target {target} is also a control")
            if not opens <= set(ctrls):
                raise ValueError("open_controls must be a subset of controls")
            if matrix is not None:
                matrix = _check_unitary(matrix)
                if len(ctrls) > 1:
                    raise ValueError("1q-unitary gates take at most one control")
            self.controls = ctrls
            self.open_controls = opens
        self.target = target
        self.matrix = matrix
        self.label = label

    # -- constructors -------------------------------------------------

    @staticmethod
    def x(target: int, label: str | None = None) -> "Gate":
        return Gate((), target, label=label, open_controls=_EMPTY_FS, _trusted=True)

    @staticmethod
    def cx(control: int, target: int, label: str | None = None) -> "Gate":
        if control == target:
            raise ValueError("control equals target")
        return Gate((control,), target, label=label, open_controls=_EMPTY_FS, _trusted=True)

    @staticmethod
    def ccx(c0: int, c1: int, target: int, label: str | None = None) -> "Gate":
        if len({c0, c1, target}) != 3:
            raise ValueError("ccx qubits must be distinct")
        cs = (c0, c1) if c0 < c1 else (c1, c0)
        return Gate(cs, target, label=label, open_controls=_EMPTY_FS, _trusted=True)

    @staticmethod
    def mcx(
        controls: Sequence[int],
        target: int,
        open_controls: Iterable[int] = (),
        label: str | None = None,
    ) -> "Gate":
        return Gate(controls, target, open_controls=open_controls, label=label)

    @staticmethod
    def u1q(matrix: np.ndarray, target: int, label: str | None = None) -> "Gate":
        return Gate((), target, matrix=matrix, label=label)

    @staticmethod
    def cu1q(matrix: np.ndarray, control: int, target: int, label: str | None = None) -> "Gate":
        return Gate((control,), target, matrix=matrix, label=label)

    # -- queries ------------------------------------------------------

    @property
    def is_x_type(self) -> bool:
        return self.matrix is None

    @property
    def num_controls(self) -> int:
        return len(self.controls)

    def support(self) -> frozenset[int]:
        return frozenset(self.controls) | {self.target}

    def inverse(self) -> "Gate":
        if self.matrix is None:
            return self
        return Gate(
            self.controls,
            self.target,
            open_controls=self.open_controls,
            matrix=self.matrix.conj().T,
            label=self.label,
        )

    def key(self) -> tuple:
        """Identity key for exact-pair cancellation (X-type only)."""
        return (self.controls, self.open_controls, self.target)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Gate):
            return NotImplemented
        if (self.controls, self.open_controls, self.target) != (
            other.controls,
            other.open_controls,
            other.target,
        ):
            return False
        if (self.matrix is None) != (other.matrix is None):
            return False
        if self.matrix is not None:
            return bool(np.allclose(self.matrix, other.matrix, atol=1e-14))
        return True

    def __hash__(self):
        return hash((self.controls, self.open_controls, self.target, self.matrix is None))

    def __repr__(self) -> str:
        if self.matrix is not None:
            kind = f"U({self.controls}->{self.target})" if self.controls else f"U({self.target})"
            return f"Gate[{kind}]"
        if not self.controls:
            return f"Gate[X({self.target})]"
        marks = ",".join(
            f"!{q}" if q in self.open_controls else str(q) for q in self.controls
        )
        return f"Gate[C({marks})X({self.target})]"


def support(gate: Gate) -> frozenset[int]:
    """Control qubits plus the target."""
    return gate.support()


class Circuit:
    """An ordered gate sequence over a fixed-width register."""

    __slots__ = ("width", "gates", "roles")

    def __init__(
        self,
        width: int,
        gates: Sequence[Gate] = (),
        roles: Mapping[str, frozenset[int]] | None = None,
        *,
        _trusted: bool = False,
    ):
        if width <= 0:
            raise ValueError("circuit width must be positive")
        gates = tuple(gates)
        if not _trusted:
            for g in gates:
                hi = max(g.target, max(g.controls, default=0))
                if hi >= width:
                    raise ValueError(f"gate {g!r} exceeds width {width}")
            if roles:
                seen: set[int] = set()
                for name, qs in roles.items():
                    qs = frozenset(qs)
                    if any(q >= width or q < 0 for q in qs):
                        raise ValueError(f"role {name!r} out of range")
                    if qs & seen:
                        raise ValueError("role sets must be disjoint")
                    seen |= qs
        self.width = width
        self.gates = gates
        self.roles = dict(roles) if roles else {}

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def __repr__(self) -> str:
        return f"Circuit(width={self.width}, gates={len(self.gates)})"


# -- structural operations --------------------------------------------


def invert(circuit: Circuit) -> Circuit:
    """Reverse gate order, inverting each gate (X-type gates are self-inverse)."""
    gates = [g.inverse() for g in reversed(circuit.gates)]
    return Circuit(circuit.width, gates, circuit.roles, _trusted=True)


def compose(a: Circuit, b: Circuit) -> Circuit:
    if a.width != b.width:
        raise WidthMismatch(f"cannot compose widths {a.width} and {b.width}")
    roles = a.roles if a.roles == b.roles else {}
    return Circuit(a.width, a.gates + b.gates, roles, _trusted=True)


def append(circuit: Circuit, gate: Gate) -> Circuit:
    hi = max(gate.target, max(gate.controls, default=0))
    if hi >= circuit.width:
        raise ValueError(f"gate {gate!r} exceeds width {circuit.width}")
    return Circuit(circuit.width, circuit.gates + (gate,), circuit.roles, _trusted=True)


# -- metrics ----------------------------------------------------------


def abstract_depth(circuit: Circuit) -> int:
    """ASAP layer count: a gate occupies one layer on every qubit it touches."""
    frontier = [0] * circuit.width
    depth = 0
    for g in circuit.gates:
        layer = frontier[g.target]
        for q in g.controls:
            fq = frontier[q]
            if fq > layer:
                layer = fq
        layer += 1
        frontier[g.target] = layer
        for q in g.controls:
            frontier[q] = layer
        if layer > depth:
            depth = layer
    return depth


def gate_count(circuit: Circuit) -> int:
    return len(circuit.gates)


# -- text export -------------------------------------------------------


def _u_params(matrix: np.ndarray) -> tuple[float, float, float]:
    """Angles (theta, phi, lam) with u(theta,phi,lam) ~ matrix up to global phase."""
    m = np.asarray(matrix, dtype=complex)
    # strip global phase so m[0,0] is real non-negative
    phase = math.atan2(m[0, 0].imag, m[0, 0].real) if abs(m[0, 0]) > 1e-12 else math.atan2(
        m[1, 0].imag, m[1, 0].real
    )
    m = m * np.exp(-1j * phase)
    theta = 2.0 * math.atan2(abs(m[1, 0]), abs(m[0, 0]))
    if abs(m[1, 0]) > 1e-12:
        phi = math.atan2(m[1, 0].imag, m[1, 0].real)
    else:
        phi = 0.0
    if abs(m[1, 1]) > 1e-12:
        lam = math.atan2(m[1, 1].imag, m[1, 1].real) - phi
    else:
        lam = math.atan2(-m[0, 1].imag, -m[0, 1].real) if abs(m[0, 1]) > 1e-12 else 0.0
    return theta, phi, lam


def to_qasm(circuit: Circuit) -> str:
    """Export in an OpenQASM-3-like subset (one statement per gate)."""
    lines = ["OPENQASM 3.0;", f"qubit[{circuit.width}] q;"]
    for g in circuit.gates:
        lines.append(_gate_qasm(g))
    return "\n".join(lines) + "\n"


def _gate_qasm(g: Gate) -> str:
    if g.matrix is not None:
        theta, phi, lam = _u_params(g.matrix)
        body = f"u({theta:.12g}, {phi:.12g}, {lam:.12g})"
        if g.controls:
            c = g.controls[0]
            mod = "negctrl(1) @ " if c in g.open_controls else "ctrl(1) @ "
            return f"{mod}{body} q[{c}], q[{g.target}];"
        return f"{body} q[{g.target}];"
    n = len(g.controls)
    if n == 0:
        return f"x q[{g.target}];"
    if not g.open_controls:
        if n == 1:
            return f"cx q[{g.controls[0]}], q[{g.target}];"
        if n == 2:
            return f"ccx q[{g.controls[0]}], q[{g.controls[1]}], q[{g.target}];"
        args = ", ".join(f"q[{q}]" for q in g.controls)
        return f"ctrl({n}) @ x {args}, q[{g.target}];"
    opens = sorted(g.open_controls)
    closed = [q for q in g.controls if q not in g.open_controls]
    mods = f"negctrl({len(opens)}) @ "
    if closed:
        mods += f"ctrl({len(closed)}) @ "
    args = ", ".join(f"q[{q}]" for q in opens + closed)
    return f"{mods}x {args}, q[{g.target}];"


def require_x_type(circuit: Circuit, op: str) -> None:
    for g in circuit.gates:
        if not g.is_x_type:
            raise UnsupportedGate(f"{op} requires an X-type-only circuit, found {g!r}")
