"""Rewriting to the {arbitrary 1-qubit, CX} basis.

Handles X-type gates with at most two controls (open controls become X
sandwiches, CCX expands to the 6-CX template) and 1q unitaries with at most
one control (ABC factorization plus a control-phase correction for
non-unit-determinant matrices).  Metrics can be computed in streaming form
without materializing the lowered circuit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .circuit import Circuit, Gate
from .errors import UnsupportedGate

_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_T = np.diag([1, np.exp(1j * math.pi / 4)]).astype(complex)
_TDG = _T.conj().T


def _ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


@dataclass(frozen=True)
class LoweringRuleset:
    """Template selection for the {1q, CX} rewrite.

    The relative-phase Toffoli (3 CX) flips computational-basis states like a
    Toffoli but adds a -1 phase on one branch; it is only sound where those
    phases provably cancel, so it is off by default and nothing in the
    synthesis pipeline turns it on.
    """

    relative_phase_toffoli: bool = False


DEFAULT_RULESET = LoweringRuleset()


def _toffoli_template(c0: int, c1: int, t: int) -> list[Gate]:
    """Standard 6-CX Toffoli."""
    return [
        Gate.u1q(_H, t),
        Gate.cx(c1, t),
        Gate.u1q(_TDG, t),
        Gate.cx(c0, t),
        Gate.u1q(_T, t),
        Gate.cx(c1, t),
        Gate.u1q(_TDG, t),
        Gate.cx(c0, t),
        Gate.u1q(_T, c1),
        Gate.u1q(_T, t),
        Gate.u1q(_H, t),
        Gate.cx(c0, c1),
        Gate.u1q(_T, c0),
        Gate.u1q(_TDG, c1),
        Gate.cx(c0, c1),
    ]


def _relative_phase_toffoli_template(c0: int, c1: int, t: int) -> list[Gate]:
    """3-CX Toffoli up to a -1 phase on the |c0=1, c1=0, t=1> branch."""
    q = math.pi / 4
    return [
        Gate.u1q(_ry(q), t),
        Gate.cx(c1, t),
        Gate.u1q(_ry(q), t),
        Gate.cx(c0, t),
        Gate.u1q(_ry(-q), t),
        Gate.cx(c1, t),
        Gate.u1q(_ry(-q), t),
    ]


def lower_open_controls(gate: Gate) -> Circuit:
    """X-sandwich every open control; the inner gate is all-closed."""
    if not gate.is_x_type:
        raise UnsupportedGate("open-control lowering applies to X-type gates")
    width = max(gate.target, max(gate.controls, default=0)) + 1
    if not gate.open_controls:
        return Circuit(width, [gate], _trusted=True)
    opens = sorted(gate.open_controls)
    flips = [Gate.x(q) for q in opens]
    inner = Gate(gate.controls, gate.target, open_controls=(), label=gate.label,
                 _trusted=True)
    return Circuit(width, flips + [inner] + list(flips), _trusted=True)


def _controlled_u_template(gate: Gate) -> list[Gate]:
    """ABC expansion of a singly-controlled 1q unitary (2 CX)."""
    from .synthesis.ctrl_u import abc_factors  # local import to avoid a cycle

    c, t = gate.controls[0], gate.target
    m = gate.matrix
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    delta = math.atan2(det.imag, det.real) / 2.0
    msu = m * np.exp(-1j * delta)
    fac = abc_factors(msu)
    out: list[Gate] = []
    if c in gate.open_controls:
        out.append(Gate.x(c))
    out.extend(
        [
            Gate.u1q(fac.c, t),
            Gate.cx(c, t),
            Gate.u1q(fac.b, t),
            Gate.cx(c, t),
            Gate.u1q(fac.a, t),
        ]
    )
    if abs(delta) > 1e-15:
        out.append(Gate.u1q(np.diag([1.0, np.exp(1j * delta)]), c))
    if c in gate.open_controls:
        out.append(Gate.x(c))
    return out


def lowered_gates(circuit: Circuit, ruleset: LoweringRuleset = DEFAULT_RULESET) -> Iterator[Gate]:
    """Yield the circuit's gates rewritten into the {1q, CX} basis."""
    for g in circuit.gates:
        if not g.is_x_type:
            if not g.controls:
                yield g
            else:
                yield from _controlled_u_template(g)
            continue
        nc = len(g.controls)
        if nc > 2:
            raise UnsupportedGate(
                f"cannot lower an X gate with {nc} controls; synthesize it first"
            )
        if nc == 0:
            yield g
            continue
        if g.open_controls:
            opens = sorted(g.open_controls)
            for q in opens:
                yield Gate.x(q)
            inner = Gate(g.controls, g.target, open_controls=(), _trusted=True)
            yield from lowered_gates(
                Circuit(max(g.support()) + 1, [inner], _trusted=True), ruleset
            )
            for q in opens:
                yield Gate.x(q)
            continue
        if nc == 1:
            yield g
        elif ruleset.relative_phase_toffoli:
            yield from _relative_phase_toffoli_template(*g.controls, g.target)
        else:
            yield from _toffoli_template(*g.controls, g.target)


def lower(circuit: Circuit, ruleset: LoweringRuleset = DEFAULT_RULESET) -> Circuit:
    """Materialized lowering; preserves the dense unitary (default ruleset)."""
    return Circuit(
        circuit.width, list(lowered_gates(circuit, ruleset)), circuit.roles, _trusted=True
    )


def lowered_metrics(
    circuit: Circuit, ruleset: LoweringRuleset = DEFAULT_RULESET
) -> tuple[int, int, int]:
    """(depth, cx_count, total_gates) of the lowered circuit, streaming."""
    frontier = [0] * circuit.width
    depth = 0
    cx = 0
    total = 0
    for g in lowered_gates(circuit, ruleset):
        total += 1
        if g.controls:
            c = g.controls[0]
            layer = max(frontier[g.target], frontier[c]) + 1
            frontier[g.target] = layer
            frontier[c] = layer
            if g.is_x_type:
                cx += 1
        else:
            layer = frontier[g.target] + 1
            frontier[g.target] = layer
        if layer > depth:
            depth = layer
    return depth, cx, total


def lowered_depth(circuit: Circuit) -> int:
    return lowered_metrics(circuit)[0]


def cx_count(circuit: Circuit) -> int:
    return lowered_metrics(circuit)[1]
