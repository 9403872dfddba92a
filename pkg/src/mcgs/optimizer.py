"""Peephole cancellation for X-type circuits.

Two identical X-type gates cancel when every gate between them commutes
with the pair.  Since disjoint-support gates always commute, the partner
search only has to walk the per-qubit gate chains of the candidate's own
support, which keeps the window small even in very large circuits.
"""

from __future__ import annotations

from .circuit import Circuit, Gate, require_x_type


def commutes(g1: Gate, g2: Gate) -> bool:
    """Conservative commutation test; False for anything but X-type pairs."""
    if not (g1.is_x_type and g2.is_x_type):
        return False
    if g1.target == g2.target:
        return True
    if g1.target in g2.controls or g2.target in g1.controls:
        return False
    return True


def _blocks(g: Gate, h: Gate) -> bool:
    """True when h prevents g from commuting past it (shared-support case)."""
    return g.target != h.target and (g.target in h.controls or h.target in g.controls)


def cancel(circuit: Circuit) -> Circuit:
    """Remove identical X-type gate pairs reachable through commuting gates.

    Runs to a fixed point; deterministic left-to-right scan; never
    increases gate count or depth.
    """
    require_x_type(circuit, "cancel")
    gates = list(circuit.gates)
    while True:
        gates, changed = _cancel_pass(gates, circuit.width)
        if not changed:
            break
    return Circuit(circuit.width, gates, circuit.roles, _trusted=True)


def _cancel_pass(gates: list[Gate], width: int) -> tuple[list[Gate], bool]:
    n = len(gates)
    # per-qubit chains of gate indices, and a cursor into each chain
    chains: list[list[int]] = [[] for _ in range(width)]
    for i, g in enumerate(gates):
        chains[g.target].append(i)
        for q in g.controls:
            chains[q].append(i)
    pos = [0] * width
    alive = bytearray(b"\x01" * n)
    changed = False

    for i in range(n):
        if not alive[i]:
            continue
        g = gates[i]
        qubits = (g.target, *g.controls)
        key = g.key()
        # local cursors: next chain entry strictly after i on each support qubit
        cursors = []
        for q in qubits:
            ch = chains[q]
            lo = _advance(ch, pos[q], i)
            pos[q] = lo
            cursors.append([ch, lo + 1])
        while True:
            j = _next_index(cursors, alive)
            if j is None:
                break
            h = gates[j]
            if h.key() == key:
                alive[i] = 0
                alive[j] = 0
                changed = True
                break
            if _blocks(g, h):
                break
    if not changed:
        return gates, False
    return [g for i, g in enumerate(gates) if alive[i]], True


def _advance(chain: list[int], start: int, target: int) -> int:
    """Index of `target` within chain, scanning from start."""
    k = start
    while chain[k] != target:
        k += 1
    return k


def _next_index(cursors: list[list], alive: bytearray) -> int | None:
    """Smallest not-yet-consumed gate index across the support chains."""
    best = None
    for cur in cursors:
        ch, k = cur
        while k < len(ch) and not alive[ch[k]]:
            k += 1
        cur[1] = k
        if k < len(ch):
            idx = ch[k]
            if best is None or idx < best:
                best = idx
    if best is None:
        return None
    for cur in cursors:
        ch, k = cur
        if k < len(ch) and ch[k] == best:
            cur[1] = k + 1
    return best
