"""Recurrence evaluation, asymptotic exponents, and method crossovers.

The exponent solver finds the unique alpha with sum(a_i / b_i^alpha) = 1
by bisection.  Depth prediction replays the generator's partition scheme
as an integer recurrence: exact for the plain recursion, an upper bound
built from the per-block cancellation rules for the optimized one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .circuit import abstract_depth
from .synthesis.mcx import mcx_linear, partition, recursion_applies

BISECTION_TOL = 1e-9
RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class RecurrenceSpec:
    """Terms (a_i, b_i) of T(n) <= f(n) + sum a_i T(n / b_i)."""

    terms: tuple[tuple[float, float], ...]
    constant: float = 0.0

    def __post_init__(self):
        if not self.terms:
            raise ValueError("at least one recurrence term is required")
        for a, b in self.terms:
            if a <= 0:
                raise ValueError("coefficients must be positive")
            if b <= 1:
                raise ValueError("divisors must exceed 1")


def akra_bazzi_exponent(spec: RecurrenceSpec | Sequence[tuple[float, float]]) -> float:
    """The unique alpha with sum(a_i / b_i^alpha) = 1."""
    terms = spec.terms if isinstance(spec, RecurrenceSpec) else RecurrenceSpec(tuple(spec)).terms

    def g(alpha: float) -> float:
        return sum(a * b**-alpha for a, b in terms)

    lo, hi = 0.0, 64.0
    if g(0.0) < 1.0:  # sum of coefficients below one: the root is negative
        lo = -64.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if g(mid) > 1.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= BISECTION_TOL * 0.25 and abs(g(0.5 * (lo + hi)) - 1.0) <= RESIDUAL_TOL:
            break
    return 0.5 * (lo + hi)


# -- depth prediction ----------------------------------------------------


def base_depth_table(base_threshold: int) -> dict[int, int]:
    """Standalone abstract depths of the linear generator up to the threshold."""
    top = max(base_threshold, 5)
    return {m: abstract_depth(mcx_linear(m)) for m in range(1, top + 1)}


def predict_depth(
    n: int,
    base_table: Mapping[int, int],
    variant: str = "original",
    base_threshold: int | None = None,
) -> int:
    """Depth of the recursive generators predicted from the recurrence.

    The `original` prediction is exact; the `optimized` one applies the
    per-block cancellation counts and upper-bounds the measured depth.
    """
    if variant not in ("original", "optimized"):
        raise ValueError(f"unknown variant {variant!r}")
    t = base_threshold if base_threshold is not None else max(base_table)
    if variant == "original":
        return _predict_original(n, base_table, t)
    return _predict_optimized(n, base_table, t)


def _base(n: int, table: Mapping[int, int]) -> int:
    if n not in table:
        raise KeyError(f"base depth table is missing an entry for n={n}")
    return table[n]


def _predict_original(n: int, table: Mapping[int, int], t: int) -> int:
    if not recursion_applies(n, t):
        return _base(n, table)
    plan = partition(n)
    d = _predict_original
    layer = max(d(len(g), table, t) for g in plan.groups)
    return (
        2 * d(2 * plan.p, table, t)
        + 4 * layer
        + 2 * d(plan.b + 1, table, t)
        + 4
    )


def _predict_optimized(n: int, table: Mapping[int, int], t: int) -> int:
    if not recursion_applies(n, t):
        return _base(n, table)
    plan = partition(n)
    e = lambda m: _predict_optimized(m, table, t)
    blocked_core = plan.b == len(plan.r0_b)
    # frame: two ancilla-writers, two cores with their X sandwiches,
    # plus the four parallel columns treated as one cancelled run
    return (
        2 * e(2 * plan.p)
        + 2 * e(plan.b + 1)
        + 4
        + _run_cost(plan.p, 4, ("g", "a", "g"), blocked_core, table, t)
    )


# Survivor shapes of one parallel column after run cancellation: either the
# full fresh expansion, or (inner run spec, #ancilla-writer cols, #core cols).
_FULL = "full"
_S6_GA = ((3, ("g", "a")), 1, 2)  # [b g b a b g]
_S6_AG = ((3, ("a", "g")), 1, 2)  # [g b a b g b]
_S5 = ((2, ("a",)), 1, 2)  # [g b a b g]
_S7_GA = ((3, ("g", "a")), 2, 2)  # [a b g b a b g]
_S7_AG = ((3, ("a", "g")), 2, 2)  # [g b a b g b a]
_S7_RUN4 = ((4, ("g", "a", "g")), 1, 2)  # [b g b a b g b]

# Generic-line rules: runs of 4, 3, 2, 1 columns.
_GENERIC = {
    (4, ("g", "a", "g")): (_S6_GA, _S5, _S5, _S6_AG),
    (3, ("g", "a")): (_S6_GA, _S5, _S7_AG),
    (3, ("a", "g")): (_S7_GA, _S5, _S6_AG),
    (2, ("a",)): (_S6_GA, _S6_AG),
    (1, ()): (_FULL,),
}

# Worst-line rules: the line whose wires carry a frame borrow loses every
# cancellation across the ancilla-writer, and across the cores too when the
# core borrow falls inside a group (b == |R0^b|).
_BLOCKED = {
    (4, ("g", "a", "g")): (_S6_GA, _S6_AG, _S6_GA, _S6_AG),
    (3, ("g", "a")): (_S6_GA, _S6_AG, _FULL),
    (3, ("a", "g")): (_FULL, _S6_GA, _S6_AG),
    (2, ("a",)): (_S7_RUN4, _S7_RUN4),
    (1, ()): (_FULL,),
}


def _run_cost(
    m: int,
    c: int,
    seps: tuple[str, ...],
    blocked_core: bool,
    table: Mapping[int, int],
    t: int,
) -> int:
    """Upper bound for a run of c adjacent parallel columns of C^mX layers.

    Each column costs the max over the generic-line shape and the
    borrow-interfered worst-line shape.
    """
    if not recursion_applies(m, t):
        return c * _base(m, table)
    plan = partition(m)
    full = _predict_optimized(m, table, t)
    a_cost = _predict_optimized(2 * plan.p, table, t)
    g_cost = _predict_optimized(plan.b + 1, table, t)
    sub = plan.p
    sub_blocked = plan.b == len(plan.r0_b)

    def shape_cost(shape) -> int:
        if shape == _FULL:
            return full
        (cc, ss), n_a, n_g = shape
        return (
            _run_cost(sub, cc, ss, sub_blocked, table, t)
            + n_a * a_cost
            + n_g * g_cost
            + 4
        )

    key = (c, seps)
    generic = _GENERIC[key]
    blocked = (_FULL,) * c if blocked_core else _BLOCKED[key]
    return sum(max(shape_cost(g), shape_cost(b)) for g, b in zip(generic, blocked))


# -- crossovers -----------------------------------------------------------


def find_crossover(
    metric: Callable[[str, int], float],
    method_a: str,
    method_b: str,
    span: Iterable[int],
) -> int | None:
    """Smallest n in span with metric(a, m) < metric(b, m) for every m >= n.

    Returns None when method_a never stays strictly below method_b through
    the end of the span.
    """
    ns = sorted(set(span))
    if not ns:
        raise ValueError("span must be nonempty")
    crossover = None
    for n in reversed(ns):
        if metric(method_a, n) < metric(method_b, n):
            crossover = n
        else:
            break
    return crossover
