"""Multi-controlled SU(2) and approximate multi-controlled U(2) synthesis.

The SU(2) path interleaves singly-controlled Euler factors with two
multi-controlled X gates that borrow the last control.  The approximate
U(2) path peels off controlled square roots until the remaining root is
within the requested error and can be dropped.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ..circuit import Circuit, Gate
from ..errors import DomainError
from ..optimizer import cancel
from .mcx import SynthesisConfig

_ATOL_UNITARY = 1e-12
_ATOL_DET = 1e-10


def rz(theta: float) -> np.ndarray:
    return np.diag([cmath.exp(-0.5j * theta), cmath.exp(0.5j * theta)]).astype(complex)


def ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _require_su2(w: np.ndarray) -> np.ndarray:
    w = np.asarray(w, dtype=complex)
    if w.shape != (2, 2):
        raise DomainError(f"expected a 2x2 matrix, got {w.shape}")
    if np.abs(w.conj().T @ w - np.eye(2)).max() > _ATOL_UNITARY:
        raise DomainError("matrix is not unitary")
    det = w[0, 0] * w[1, 1] - w[0, 1] * w[1, 0]
    if abs(det - 1.0) > _ATOL_DET:
        raise DomainError(f"matrix is not special (det={det:.6g})")
    return w


@dataclass(frozen=True)
class ZyzAngles:
    alpha: float
    theta: float
    beta: float


def zyz_decompose(w: np.ndarray) -> ZyzAngles:
    """Euler angles with Rz(alpha) Ry(theta) Rz(beta) = w, theta in [0, pi]."""
    w = _require_su2(w)
    a00, a10, a11 = w[0, 0], w[1, 0], w[1, 1]
    theta = 2.0 * math.atan2(abs(a10), abs(a00))
    if abs(a10) <= 1e-13:  # theta = 0: fold everything into alpha
        return ZyzAngles(2.0 * cmath.phase(a11), 0.0, 0.0)
    if abs(a00) <= 1e-13:  # theta = pi
        return ZyzAngles(2.0 * cmath.phase(a10), math.pi, 0.0)
    alpha = cmath.phase(a11) + cmath.phase(a10)
    beta = cmath.phase(a11) - cmath.phase(a10)
    return ZyzAngles(alpha, theta, beta)


@dataclass(frozen=True)
class AbcFactors:
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray


def abc_factors(w: np.ndarray) -> AbcFactors:
    """Factors with a @ b @ c = I and a @ X @ b @ X @ c = w."""
    ang = zyz_decompose(w)
    a = rz(ang.alpha) @ ry(ang.theta / 2)
    b = ry(-ang.theta / 2) @ rz(-(ang.alpha + ang.beta) / 2)
    c = rz((ang.beta - ang.alpha) / 2)
    return AbcFactors(a, b, c)


# -- multi-controlled SU(2) ------------------------------------------------


def emit_mcx_on(controls: tuple[int, ...], target: int, borrow: int,
                cfg: SynthesisConfig | None = None) -> list[Gate]:
    """C^kX over explicit wires with auto method selection."""
    cfg = cfg or SynthesisConfig()
    k = len(controls)
    width = max(target, borrow, *controls) + 1
    if k <= cfg.linear_cutover:
        from .mcx import _emit_linear

        sink: list[Gate] = []
        _emit_linear(controls, target, borrow, sink)
        return sink
    from .mcx import _emit_mcx

    sink = []
    _emit_mcx(controls, target, borrow, cfg, sink)
    return list(cancel(Circuit(width, sink, _trusted=True)).gates)


def mcsu2(n: int, w: np.ndarray, cfg: SynthesisConfig | None = None) -> Circuit:
    """C^n(w) for w in SU(2): controls 0..n-1, target n, no extra ancilla."""
    if n < 1:
        raise ValueError("mcsu2 requires n >= 1")
    w = _require_su2(w)
    roles = {"controls": frozenset(range(n)), "target": frozenset({n})}
    if n == 1:
        return Circuit(2, [Gate.cu1q(w, 0, 1)], roles, _trusted=True)
    fac = abc_factors(w)
    pivot = n - 1  # last control doubles as the borrowed ancilla for the MCX pair
    inner = emit_mcx_on(tuple(range(n - 1)), n, pivot, cfg)
    gates: list[Gate] = [Gate.cu1q(fac.c, pivot, n)]
    gates.extend(inner)
    gates.append(Gate.cu1q(fac.b, pivot, n))
    gates.extend(inner)
    gates.append(Gate.cu1q(fac.a, pivot, n))
    return Circuit(n + 1, gates, roles, _trusted=True)


# -- approximate multi-controlled U(2) -------------------------------------


def sqrt_unitary(u: np.ndarray) -> np.ndarray:
    """Principal square root: eigenphases halved into (-pi/2, pi/2]."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2) or np.abs(u.conj().T @ u - np.eye(2)).max() > _ATOL_UNITARY:
        raise DomainError("sqrt_unitary expects a 2x2 unitary")
    w, vecs = np.linalg.eig(u)
    if abs(w[0] - w[1]) < 1e-12:
        return cmath.exp(0.5j * cmath.phase(w[0])) * np.eye(2, dtype=complex)
    v0 = vecs[:, 0] / np.linalg.norm(vecs[:, 0])
    p0 = np.outer(v0, v0.conj())
    p1 = np.eye(2) - p0
    s0 = cmath.exp(0.5j * cmath.phase(w[0]))
    s1 = cmath.exp(0.5j * cmath.phase(w[1]))
    return s0 * p0 + s1 * p1


def _dist_to_identity(u: np.ndarray) -> float:
    return float(np.linalg.svd(u - np.eye(2), compute_uv=False)[0])


@dataclass(frozen=True)
class ApproxPlan:
    steps: int
    residual_error: float
    epsilon: float


def mcu2_approx(
    n: int, u: np.ndarray, epsilon: float, cfg: SynthesisConfig | None = None
) -> tuple[Circuit, ApproxPlan]:
    """Approximate C^n(u) with square-root recursion, truncated at `epsilon`.

    Controls 0..n-1, target n; the target wire is the borrowed ancilla for
    the inner multi-controlled X gates.  The spectral error of the output
    against the exact C^n(u) is at most epsilon (plus numerical slack).
    """
    if n < 1:
        raise ValueError("mcu2_approx requires n >= 1")
    if epsilon <= 0:
        raise DomainError("epsilon must be positive")
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2) or np.abs(u.conj().T @ u - np.eye(2)).max() > _ATOL_UNITARY:
        raise DomainError("mcu2_approx expects a 2x2 unitary")

    roles = {"controls": frozenset(range(n)), "target": frozenset({n})}
    t = n
    gates: list[Gate] = []
    w_j = u
    j = 0
    while True:
        dist = _dist_to_identity(w_j)
        if dist <= epsilon:
            plan = ApproxPlan(steps=j, residual_error=dist, epsilon=epsilon)
            break
        k = n - j  # controls remaining for this level
        if k == 1:
            gates.append(Gate.cu1q(w_j, 0, t))
            plan = ApproxPlan(steps=j, residual_error=0.0, epsilon=epsilon)
            break
        v = sqrt_unitary(w_j)
        pivot = k - 1  # q_{k-1} carries the conditional flip
        inner = emit_mcx_on(tuple(range(k - 1)), pivot, t, cfg)
        gates.append(Gate.cu1q(v, pivot, t))
        gates.extend(inner)
        gates.append(Gate.cu1q(v.conj().T, pivot, t))
        gates.extend(inner)
        w_j = v
        j += 1
    return Circuit(n + 1, gates, roles, _trusted=True), plan
