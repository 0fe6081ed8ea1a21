"""Adaptive numerical integration for the capacity integrals.

Two rules live here: an adaptive Gauss rule for real integrals over
semi-infinite (and finite) intervals, and a trapezoidal rule for complex
kernels on a truncated vertical line in the s-plane.  Both are open rules:
no integrand is ever evaluated at an interval endpoint, so integrands with
a removable endpoint singularity (the 1/z factor of the capacity integral)
need no special casing by the caller.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "AccuracyError",
    "ContourDivergenceError",
    "ContourSpec",
    "QuadratureResult",
    "integrate_finite",
    "integrate_semi_infinite",
    "integrate_vertical_contour",
]


class AccuracyError(ArithmeticError):
    """Raised when a requested tolerance could not be met.

    Carries the best available estimate so callers can decide whether to
    accept it anyway.
    """

    def __init__(self, message: str, estimate: float, error_estimate: float):
        super().__init__(message)
        self.estimate = estimate
        self.error_estimate = error_estimate


class ContourDivergenceError(ArithmeticError):
    """Raised when a contour kernel fails to decay along the line."""


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    abs_error_estimate: float
    evaluations: int

    def __post_init__(self):
        if self.abs_error_estimate < 0:
            raise ValueError("abs_error_estimate must be nonnegative")


@dataclass(frozen=True)
class ContourSpec:
    """A truncated vertical integration line Re(s) = abscissa.

    ``half_height`` is the truncation of Im(s) and ``nodes`` the number of
    trapezoidal nodes along the line.  The abscissa must be chosen by the
    caller to separate the left and right pole sets of the kernel.
    """

    abscissa: float
    half_height: float
    nodes: int

    def __post_init__(self):
        if self.half_height <= 0:
            raise ValueError("half_height must be positive")
        if self.nodes < 64:
            raise ValueError("nodes must be at least 64")


# Embedded pair: 10- and 21-point Gauss-Legendre on the same panel.  The
# difference of the two estimates serves as the panel error.  All nodes are
# interior, which keeps every rule here an open rule.
_N10, _W10 = np.polynomial.legendre.leggauss(10)
_N21, _W21 = np.polynomial.legendre.leggauss(21)


def _panel_estimate(f: Callable[[float], float], a: float, b: float) -> tuple[float, float]:
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    v10 = 0.0
    for x, w in zip(_N10, _W10):
        v10 += w * f(mid + half * x)
    v21 = 0.0
    for x, w in zip(_N21, _W21):
        v21 += w * f(mid + half * x)
    v10 *= half
    v21 *= half
    return v21, abs(v21 - v10)


_PANEL_COST = len(_N10) + len(_N21)


def _adaptive(f, a, b, tol_rel, budget):
    """Adaptive bisection with an embedded Gauss pair on (a, b)."""
    # Seed with a handful of panels so the first refinement has somewhere
    # to look other than the middle of the interval.
    seeds = np.linspace(a, b, 5)
    heap = []
    evals = 0
    counter = 0
    for lo, hi in zip(seeds[:-1], seeds[1:]):
        val, err = _panel_estimate(f, lo, hi)
        evals += _PANEL_COST
        heapq.heappush(heap, (-err, counter, lo, hi, val, err))
        counter += 1

    while True:
        total = sum(item[4] for item in sorted(heap, key=lambda it: it[2]))
        total_err = sum(item[5] for item in heap)
        if total_err <= tol_rel * abs(total) or total_err < 1e-300:
            return total, total_err, evals
        if evals + 2 * _PANEL_COST > budget:
            raise AccuracyError(
                f"evaluation budget {budget} exhausted before reaching "
                f"relative tolerance {tol_rel:g}",
                estimate=total,
                error_estimate=total_err,
            )
        _, _, lo, hi, _, _ = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        for sub_lo, sub_hi in ((lo, mid), (mid, hi)):
            val, err = _panel_estimate(f, sub_lo, sub_hi)
            evals += _PANEL_COST
            heapq.heappush(heap, (-err, counter, sub_lo, sub_hi, val, err))
            counter += 1


def integrate_semi_infinite(
    f: Callable[[float], float],
    tol_rel: float = 1e-8,
    budget: int = 200_000,
) -> QuadratureResult:
    """Integrate ``f`` over (0, inf).

    The interval is mapped onto (0, 1) through x = t/(1-t) and then
    subdivided adaptively.  ``f`` may have a removable singularity or a
    finite nonzero limit at 0; it is never called at x = 0.

    Raises AccuracyError (carrying the best estimate) if the evaluation
    budget runs out before the requested relative tolerance is met.
    """
    if tol_rel <= 0:
        raise ValueError("tol_rel must be positive")
    if budget <= 0:
        raise ValueError("budget must be positive")

    def g(t: float) -> float:
        u = 1.0 - t
        return f(t / u) / (u * u)

    value, err, evals = _adaptive(g, 0.0, 1.0, tol_rel, budget)
    return QuadratureResult(value=value, abs_error_estimate=err, evaluations=evals)


def integrate_finite(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol_rel: float = 1e-8,
    budget: int = 200_000,
) -> QuadratureResult:
    """Integrate ``f`` over the finite interval (a, b) with the same core."""
    if not b > a:
        raise ValueError("require b > a")
    if tol_rel <= 0:
        raise ValueError("tol_rel must be positive")
    value, err, evals = _adaptive(f, a, b, tol_rel, budget)
    return QuadratureResult(value=value, abs_error_estimate=err, evaluations=evals)


def integrate_vertical_contour(
    kernel: Callable[[complex], complex],
    spec: ContourSpec,
) -> complex:
    """Trapezoidal sum of ``kernel`` over the truncated vertical line.

    Returns (1/2*pi*i) * integral of kernel(s) ds along
    Re(s) = spec.abscissa, |Im(s)| <= spec.half_height.  Nodes at +-t are
    paired before accumulation so that a conjugate-symmetric kernel yields
    a result with vanishing imaginary part.

    Raises ContourDivergenceError if the kernel magnitude grows toward the
    truncation edge instead of decaying.
    """
    c = spec.abscissa
    # An odd node count places one node on the real axis and pairs the rest.
    half = spec.nodes // 2
    h = spec.half_height / half
    t = np.arange(1, half + 1) * h

    upper = np.asarray(kernel(c + 1j * t), dtype=complex)
    lower = np.asarray(kernel(c - 1j * t), dtype=complex)
    center = complex(kernel(complex(c, 0.0)))
    paired = upper + lower

    magnitude = np.abs(paired)
    n_tail = max(4, half // 20)
    tail = magnitude[-n_tail:]
    if magnitude[-1] > magnitude[0] and tail[-1] >= tail[0]:
        raise ContourDivergenceError(
            "kernel does not decay along the contour; "
            "increase the abscissa margin or check the parameters"
        )

    # Trapezoid weights: interior nodes weight 1, the two truncation ends
    # weight 1/2 (they are negligible once the kernel has decayed).
    total = center + paired.sum() - 0.5 * paired[-1]
    return total * h / (2.0 * np.pi)
