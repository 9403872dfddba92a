"""Multi-controlled X synthesis with one borrowed ancilla.

Three generators share the qubit convention (controls 0..n-1, target n,
borrowed ancilla n+1):

* ``mcx_linear`` -- split the controls in half and run four Toffoli
  ladders, borrowing across the halves; linear depth, CCX/CX only.
* ``mcx_recursive_original`` -- square-root partition of the control
  register; each level costs two C^{2p}X gates, four parallel layers of
  C^pX gates, two C^{b+1}X cores and four layers of X flips.
* ``mcx_recursive_optimized`` -- same skeleton, but alternate parallel
  layers are emitted inverted so that boundary sub-circuits meet as
  identical adjacent pairs, which the cancellation pass then removes.

``mcx_auto`` picks the linear generator up to a cutover control count and
the optimized recursion above it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

from ..circuit import Circuit, Gate
from ..optimizer import cancel

METHODS = ("linear", "original", "optimized", "auto")

DEFAULT_BASE_THRESHOLD = 26
DEFAULT_LINEAR_CUTOVER = 51
ORIGINAL_BASE_THRESHOLD = 30  # baseline recursion is benchmarked with this base


@dataclass(frozen=True)
class SynthesisConfig:
    method: str = "auto"
    base_threshold: int = DEFAULT_BASE_THRESHOLD
    linear_cutover: int = DEFAULT_LINEAR_CUTOVER
    optimize_cancellation: bool = True
    orientation_rule: str = "first_and_third_reversed"  # or "none"
    debug_labels: bool = False

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.base_threshold < 3:
            raise ValueError("base_threshold must be at least 3")
        if self.linear_cutover < self.base_threshold:
            raise ValueError("linear_cutover must be >= base_threshold")
        if self.orientation_rule not in ("none", "first_and_third_reversed"):
            raise ValueError(f"unknown orientation rule {self.orientation_rule!r}")


@dataclass(frozen=True)
class PartitionPlan:
    """Square-root split of a control register."""

    n: int
    p: int
    b: int
    r: int
    r0: tuple[int, ...]
    r0_star: tuple[int, ...]
    r0_b: tuple[int, ...]
    groups: tuple[tuple[int, ...], ...]


def partition(n: int) -> PartitionPlan:
    """Partition controls 0..n-1 (n >= 4) into R0 and groups of at most p."""
    if n < 4:
        raise ValueError(f"partition requires n >= 4, got {n}")
    return partition_controls(tuple(range(n)))


def partition_controls(controls: Sequence[int]) -> PartitionPlan:
    n = len(controls)
    if n < 4:
        raise ValueError(f"partition requires at least 4 controls, got {n}")
    p = math.isqrt(n)
    r0 = tuple(controls[: 2 * p])
    rest = controls[2 * p :]
    r = len(rest) % p
    groups = []
    i = 0
    while i < len(rest):
        groups.append(tuple(rest[i : i + p]))
        i += p
    b = len(groups)
    r0_star = r0[:b]
    r0_b = r0[b:]
    plan = PartitionPlan(n, p, b, r, r0, r0_star, r0_b, tuple(groups))
    _check_plan(plan)
    return plan


def _check_plan(plan: PartitionPlan) -> None:
    assert len(plan.r0) == 2 * plan.p
    assert all(len(g) == plan.p for g in plan.groups[:-1])
    if plan.groups:
        assert len(plan.groups[-1]) == (plan.r if plan.r > 0 else plan.p)
    if plan.n - 2 * plan.p >= plan.p:  # plan feeds the recursion
        assert plan.p - 2 <= plan.b <= plan.p
        assert len(plan.r0_b) >= plan.b


def recursion_applies(n: int, base_threshold: int) -> bool:
    """True when the recursive scheme is used instead of the linear base."""
    if n <= base_threshold or n < 4:
        return False
    p = math.isqrt(n)
    return n - 2 * p >= p


# -- linear base case ---------------------------------------------------


def _ladder(controls: Sequence[int], target: int, borrows: Sequence[int], sink: list[Gate],
            label: str | None) -> None:
    """C^kX from 2(k-2) Toffolis, run twice; borrows are dirty and restored."""
    k = len(controls)
    if k == 0:
        sink.append(Gate.x(target, label))
        return
    if k == 1:
        sink.append(Gate.cx(controls[0], target, label))
        return
    if k == 2:
        sink.append(Gate.ccx(controls[0], controls[1], target, label))
        return
    w = borrows[: k - 2]
    half: list[Gate] = []
    for j in range(k - 2, 1, -1):
        half.append(Gate.ccx(controls[j], w[j - 2], w[j - 1], label))
    half.append(Gate.ccx(controls[0], controls[1], w[0], label))
    for j in range(2, k - 1):
        half.append(Gate.ccx(controls[j], w[j - 2], w[j - 1], label))
    half.append(Gate.ccx(controls[k - 1], w[k - 3], target, label))
    sink.extend(half)
    sink.extend(half)


def _emit_linear(controls: Sequence[int], target: int, borrow: int, sink: list[Gate],
                 label: str | None = None) -> None:
    k = len(controls)
    if k == 0:
        sink.append(Gate.x(target, label))
        return
    if k == 1:
        sink.append(Gate.cx(controls[0], target, label))
        return
    if k == 2:
        sink.append(Gate.ccx(controls[0], controls[1], target, label))
        return
    h = (k + 1) // 2
    h1, h2 = list(controls[:h]), list(controls[h:])
    t_a: list[Gate] = []
    _ladder(h1, borrow, h2, t_a, label)
    t_b: list[Gate] = []
    _ladder(h2 + [borrow], target, h1, t_b, label)
    sink.extend(t_a)
    sink.extend(t_b)
    sink.extend(t_a)
    sink.extend(t_b)


# -- recursive scheme ----------------------------------------------------


def _emit_mcx(controls: Sequence[int], target: int, borrow: int,
              cfg: SynthesisConfig, sink: list[Gate], reverse: bool = False,
              label: str | None = None) -> None:
    n = len(controls)
    if not recursion_applies(n, cfg.base_threshold):
        if reverse:
            local: list[Gate] = []
            _emit_linear(controls, target, borrow, local, label)
            sink.extend(reversed(local))
        else:
            _emit_linear(controls, target, borrow, sink, label)
        return

    plan = partition_controls(tuple(controls))
    local = []
    flagged = cfg.orientation_rule == "first_and_third_reversed"
    col_flags = (True, False, True, False) if flagged else (False,) * 4

    lbl = (lambda part: f"{label}/{part}" if label is not None else None)

    def emit_a(tag: str) -> None:
        _emit_mcx(plan.r0, borrow, plan.groups[0][0], cfg, local, False, lbl(tag))

    def emit_bcol(col: int, tag: str) -> None:
        for i, group in enumerate(plan.groups):
            line_lbl = f"{lbl(tag)}:{i}" if label is not None else None
            _emit_mcx(group, plan.r0_star[i], plan.r0_b[i], cfg, local,
                      col_flags[col], line_lbl)

    def emit_x(tag: str) -> None:
        t = lbl(tag)
        local.extend(Gate.x(q, t) for q in plan.r0_star)

    def emit_core(tag: str) -> None:
        core_ctrls = plan.r0_star + (borrow,)
        core_borrow = plan.groups[0][0] if plan.b == len(plan.r0_b) else plan.r0_b[-1]
        _emit_mcx(core_ctrls, target, core_borrow, cfg, local, False, lbl(tag))

    emit_a("a0")
    emit_bcol(0, "b0")
    emit_x("x0")
    emit_core("c0")
    emit_x("x1")
    emit_bcol(1, "b1")
    emit_a("a1")
    emit_bcol(2, "b2")
    emit_x("x2")
    emit_core("c1")
    emit_x("x3")
    emit_bcol(3, "b3")

    sink.extend(reversed(local) if reverse else local)


def _mcx_roles(n: int) -> dict[str, frozenset[int]]:
    return {
        "controls": frozenset(range(n)),
        "target": frozenset({n}),
        "ancilla": frozenset({n + 1}),
    }


def _as_circuit(n: int, gates: list[Gate]) -> Circuit:
    return Circuit(n + 2, gates, _mcx_roles(n), _trusted=True)


def mcx_linear(n: int) -> Circuit:
    """Linear-depth C^nX over controls 0..n-1, target n, borrowed ancilla n+1."""
    if n < 1:
        raise ValueError("mcx_linear requires n >= 1")
    gates: list[Gate] = []
    _emit_linear(tuple(range(n)), n, n + 1, gates)
    return _as_circuit(n, gates)


def mcx_recursive_original(n: int, cfg: SynthesisConfig | None = None) -> Circuit:
    """Square-root recursion without orientation tricks or cancellation."""
    if n < 1:
        raise ValueError("mcx_recursive_original requires n >= 1")
    cfg = replace(cfg or SynthesisConfig(), orientation_rule="none",
                  optimize_cancellation=False)
    gates: list[Gate] = []
    _emit_mcx(tuple(range(n)), n, n + 1, cfg, gates,
              label="r" if cfg.debug_labels else None)
    return _as_circuit(n, gates)


def mcx_recursive_optimized(n: int, cfg: SynthesisConfig | None = None) -> Circuit:
    """Recursion with alternate parallel layers inverted, then cancellation."""
    if n < 1:
        raise ValueError("mcx_recursive_optimized requires n >= 1")
    cfg = cfg or SynthesisConfig()
    if cfg.orientation_rule == "none":
        cfg = replace(cfg, orientation_rule="first_and_third_reversed")
    gates: list[Gate] = []
    _emit_mcx(tuple(range(n)), n, n + 1, cfg, gates,
              label="r" if cfg.debug_labels else None)
    circuit = _as_circuit(n, gates)
    if cfg.optimize_cancellation:
        circuit = cancel(circuit)
    return circuit


def mcx_auto(n: int, cfg: SynthesisConfig | None = None) -> Circuit:
    """Linear up to the cutover control count, optimized recursion above."""
    cfg = cfg or SynthesisConfig()
    if n <= cfg.linear_cutover:
        return mcx_linear(n)
    return mcx_recursive_optimized(n, cfg)


def default_config(method: str) -> SynthesisConfig:
    """Per-method defaults; the baseline recursion keeps its larger base case."""
    if method == "original":
        return SynthesisConfig(method="original", base_threshold=ORIGINAL_BASE_THRESHOLD)
    return SynthesisConfig(method=method)


def synthesize(n: int, method: str, cfg: SynthesisConfig | None = None) -> Circuit:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if cfg is None:
        cfg = default_config(method)
    else:
        cfg = replace(cfg, method=method)
    if method == "linear":
        return mcx_linear(n)
    if method == "original":
        return mcx_recursive_original(n, cfg)
    if method == "optimized":
        return mcx_recursive_optimized(n, cfg)
    return mcx_auto(n, cfg)
