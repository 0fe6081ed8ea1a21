"""Scalar special functions backing the capacity formulas.

The Gamma family and the modified Bessel function are delegated to scipy's
battle-tested implementations behind thin validating wrappers.  What is
built here by hand is the machinery the closed-form capacities actually
hinge on:

* a scaled generalized exponential integral e^s * E_n(s), evaluated by a
  small-argument series and a Lentz continued fraction, with stable
  recurrences filling in whole order ranges;
* the confluent U(m+1, m+1, s) on top of it, which closes the
  survival-function capacity integral of the decode-and-forward relay;
* a reusable Mellin-Barnes engine for the handful of Meijer G instances the
  moment-generating-function pipeline needs.  Gamma products along the
  contour are computed once per parameter set and reused for every
  argument, so sweeping the transform variable is cheap.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy import special as sp

from .quadrature import AccuracyError, ContourDivergenceError, ContourSpec

__all__ = [
    "bessel_k",
    "log_gamma",
    "meijer_g_1_2_2_1",
    "meijer_g_2_0_0_2",
    "meijer_g_2_1_1_2",
    "MellinBarnesEvaluator",
    "tricomi_u_integer",
    "upper_incomplete_gamma",
]

_EULER_GAMMA = 0.5772156649015328606


def log_gamma(z: complex) -> complex:
    """Principal branch of log Gamma(z).

    Accepts complex arguments; rejects the poles at 0, -1, -2, ...
    """
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == int(z.real):
        raise ValueError(f"log_gamma pole at z = {z.real:g}")
    return complex(sp.loggamma(z))


def upper_incomplete_gamma(a: float, x: float) -> float:
    """Unregularized upper incomplete gamma integral from x to infinity."""
    if a <= 0:
        raise ValueError("a must be positive")
    if x < 0:
        raise ValueError("x must be nonnegative")
    return float(sp.gammaincc(a, x) * sp.gamma(a))


def bessel_k(v: float, x: float) -> float:
    """Modified Bessel function of the second kind, real order.

    Symmetric in the order: K_v = K_{-v}.  Overflow (tiny argument with a
    large order) is reported rather than returned as inf.
    """
    if x <= 0:
        raise ValueError("bessel_k requires x > 0")
    val = float(sp.kv(v, x))
    if math.isinf(val):
        raise OverflowError(
            f"bessel_k overflows for order {v:g} at x = {x:g}"
        )
    if math.isnan(val):
        raise ValueError(f"bessel_k undefined for order {v:g} at x = {x:g}")
    return val


# ---------------------------------------------------------------------------
# Scaled generalized exponential integral e^s * E_n(s)
# ---------------------------------------------------------------------------

def _expn_scaled_series(n: int, s: float) -> float:
    """e^s * E_n(s) for 0 < s <= 1 via the ascending series."""
    if n == 1:
        # E_1(s) = -gamma - ln s + sum_{k>=1} (-1)^{k+1} s^k / (k * k!)
        acc = -_EULER_GAMMA - math.log(s)
        term = 1.0
        for k in range(1, 200):
            term *= -s / k
            contrib = -term / k
            acc += contrib
            if abs(contrib) < 1e-18 * abs(acc):
                break
        return math.exp(s) * acc
    psi = -_EULER_GAMMA + sum(1.0 / i for i in range(1, n))
    lead = (-s) ** (n - 1) / math.factorial(n - 1) * (-math.log(s) + psi)
    acc = 0.0
    term = 1.0  # (-s)^k / k!
    for k in range(0, 400):
        if k > 0:
            term *= -s / k
        if k == n - 1:
            continue
        acc -= term / (k - n + 1)
        if k > n and abs(term / (k - n + 1)) < 1e-18 * max(abs(acc), 1e-300):
            break
    return math.exp(s) * (lead + acc)


def _expn_scaled_cf(n: int, s: float) -> float:
    """e^s * E_n(s) for s >= 1 via the modified Lentz continued fraction."""
    tiny = 1e-300
    b = s + n
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 200_000):
        a = -i * (n - 1 + i)
        b += 2.0
        d = a * d + b
        if d == 0.0:
            d = tiny
        c = b + a / c
        if c == 0.0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return h
    raise AccuracyError(
        f"continued fraction for order {n} did not converge at s = {s:g}",
        estimate=h,
        error_estimate=abs(h),
    )


def _expn_scaled_range(n_max: int, s: float) -> np.ndarray:
    """e^s * E_n(s) for n = 1 .. n_max.

    One seed is evaluated directly; the rest of the range is filled by the
    three-term relation n * E_{n+1}(s) = e^{-s} - s * E_n(s), run upward
    where n >= s and downward where n <= s, which keeps every step stable.
    """
    out = np.empty(n_max, dtype=float)
    if s <= 1.0:
        out[0] = _expn_scaled_series(1, s)
        for n in range(1, n_max):
            out[n] = (1.0 - s * out[n - 1]) / n
        return out
    n_seed = min(max(int(math.floor(s)), 1), n_max)
    out[n_seed - 1] = _expn_scaled_cf(n_seed, s)
    for n in range(n_seed, n_max):
        out[n] = (1.0 - s * out[n - 1]) / n
    for n in range(n_seed - 1, 0, -1):
        out[n - 1] = (1.0 - n * out[n]) / s
    return out


def tricomi_u_integer(m: int, s: float) -> float:
    """Confluent hypergeometric U(m+1, m+1, s) for integer m >= 0.

    Equals the capacity kernel integral of gamma^m e^{-s gamma}/(1+gamma)
    over (0, inf), divided by m!.  Computed as s^{-m} e^s E_{m+1}(s).
    """
    if m != int(m) or m < 0:
        raise ValueError("m must be a nonnegative integer")
    if s <= 0:
        raise ValueError("s must be positive")
    m = int(m)
    scaled = _expn_scaled_range(m + 1, s)[m]
    return s ** (-m) * scaled


# ---------------------------------------------------------------------------
# Mellin-Barnes contour engine
# ---------------------------------------------------------------------------

class MellinBarnesEvaluator:
    """Vertical-line integral of a product of Gamma factors against x^{-s}.

    ``lower`` lists parameters b with a factor Gamma(b + s); ``upper``
    lists parameters a with a factor Gamma(1 - a - s).  The admissible
    abscissa strip is max(-b) < c < min(1 - a); the contour sits at its
    midpoint (or one unit right of the poles when unbounded above).

    Gamma values along the contour depend only on the parameters, so they
    are computed once and reused for every argument x.  The truncation
    height doubles until the contour tail is negligible against the
    accumulated value.
    """

    _MAX_NODES = 4_000_000

    def __init__(self, lower: tuple[float, ...], upper: tuple[float, ...] = ()):
        if not lower:
            raise ValueError("at least one Gamma(b + s) factor is required")
        self.lower = tuple(float(b) for b in lower)
        self.upper = tuple(float(a) for a in upper)
        c_lo = max(-b for b in self.lower)
        if self.upper:
            c_hi = min(1.0 - a for a in self.upper)
            if not c_hi > c_lo:
                raise ValueError(
                    f"no separating contour: pole strip ({c_lo:g}, {c_hi:g}) is empty"
                )
            self.abscissa = 0.5 * (c_lo + c_hi)
            margin = min(self.abscissa - c_lo, c_hi - self.abscissa)
        else:
            self.abscissa = c_lo + 1.0
            margin = 1.0
        # Node spacing tied to the distance from the contour to the nearest
        # pole; the trapezoid rule is then spectrally accurate.
        self._h = min(0.05, margin / 3.0)
        self._half_height = 16.0
        self._grid_cache: dict[float, tuple[np.ndarray, np.ndarray]] = {}

    def _grid(self, half_height: float) -> tuple[np.ndarray, np.ndarray]:
        cached = self._grid_cache.get(half_height)
        if cached is not None:
            return cached
        half = int(math.ceil(half_height / self._h))
        t = np.arange(0, half + 1) * self._h
        s = self.abscissa + 1j * t
        log_g = np.zeros_like(s)
        for b in self.lower:
            log_g += sp.loggamma(b + s)
        for a in self.upper:
            log_g += sp.loggamma(1.0 - a - s)
        # Half-line fold of the full trapezoid: the real-axis node counts
        # once with full weight, every t > 0 node stands for a conjugate
        # pair, and the truncation node keeps the usual half weight.
        weights = np.full(t.shape, self._h)
        weights[-1] *= 0.5
        # Keep everything in log space; exp() happens per argument so large
        # Gamma factors cannot overflow the cache.
        self._grid_cache[half_height] = (s, log_g + np.log(weights))
        return self._grid_cache[half_height]

    def contour_spec(self, half_height: float | None = None) -> ContourSpec:
        hh = self._half_height if half_height is None else half_height
        half = int(math.ceil(hh / self._h))
        return ContourSpec(abscissa=self.abscissa, half_height=hh, nodes=2 * half + 1)

    def evaluate(self, x: float, rel_target: float = 1e-8) -> tuple[float, float]:
        """Return (value, abs_error_estimate) of the contour integral at x.

        The integral is reduced to twice the real part of the upper
        half-line, so the result is real by construction; the conjugate
        pairing that cancels the imaginary part is exact.
        """
        if x <= 0:
            raise ValueError("x must be positive")
        log_x = math.log(x)
        prev = None
        half_height = self._half_height
        while True:
            s, log_weighted = self._grid(half_height)
            terms = np.exp(log_weighted - s * log_x)
            total = (terms[0].real + 2.0 * terms[1:].real.sum()) / (2.0 * np.pi)
            n_tail = max(4, len(terms) // 25)
            tail = np.abs(terms[-n_tail:]).sum() / np.pi
            if np.abs(terms[-n_tail:]).mean() > np.abs(terms).mean():
                raise ContourDivergenceError(
                    "contour kernel grows toward the truncation edge"
                )
            if prev is not None:
                err = abs(total - prev) + tail
                if err <= rel_target * max(abs(total), 1e-300):
                    return total, err
            prev = total
            half_height *= 2.0
            if 2 * half_height / self._h > self._MAX_NODES:
                raise AccuracyError(
                    "contour refinement exceeded the node limit",
                    estimate=total,
                    error_estimate=tail,
                )


@lru_cache(maxsize=256)
def _evaluator(lower: tuple[float, ...], upper: tuple[float, ...]) -> MellinBarnesEvaluator:
    return MellinBarnesEvaluator(lower, upper)


def meijer_g_2_1_1_2(x: float, a1: float, b1: float, b2: float) -> tuple[float, float]:
    """G^{2,1}_{1,2}(x | a1; b1, b2) with its absolute error estimate.

    The kernel is Gamma(b1+s) Gamma(b2+s) Gamma(1-a1-s) x^{-s}; a separating
    contour requires -min(b1, b2) < 1 - a1.
    """
    ev = _evaluator((b1, b2), (a1,))
    return ev.evaluate(x)


def meijer_g_2_0_0_2(x: float, b1: float, b2: float) -> tuple[float, float]:
    """G^{2,0}_{0,2}(x | -; b1, b2); twice this at b = +-v/2 is K_v(2 sqrt x)."""
    ev = _evaluator((b1, b2), ())
    return ev.evaluate(x)


def meijer_g_1_2_2_1(x: float, a1: float, a2: float, b1: float) -> tuple[float, float]:
    """G^{1,2}_{2,1}(x | a1, a2; b1), the contour form of the relay capacity kernel."""
    ev = _evaluator((b1,), (a1, a2))
    return ev.evaluate(x)
