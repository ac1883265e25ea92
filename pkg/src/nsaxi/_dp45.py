"""Scalar adaptive Dormand-Prince 5(4) integrator with dense output.

Written for a single first-order real ODE.  The quartic interpolant of the
pair provides dense evaluation, and, unlike library wrappers, its exact
polynomial derivative, which the residual checks need as a derivative
route that does not reuse the ODE itself.  The stepping is deterministic:
no randomness, a fixed acceptance rule, and identical float sequences for
identical inputs on one platform.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from .errors import NumericalError, StiffnessError

# Butcher tableau (Dormand & Prince 1980), FSAL form.
_C2, _C3, _C4, _C5, _C6 = 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0

_A21 = 1 / 5
_A31, _A32 = 3 / 40, 9 / 40
_A41, _A42, _A43 = 44 / 45, -56 / 15, 32 / 9
_A51, _A52, _A53, _A54 = 19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729
_A61, _A62, _A63, _A64, _A65 = 9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656
_B1, _B3, _B4, _B5, _B6 = 35 / 384, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84

_E1, _E3, _E4, _E5, _E6, _E7 = (71 / 57600, -71 / 16695, 71 / 1920,
                                -17253 / 339200, 22 / 525, -1 / 40)

# Quartic dense-output weights: y(x0 + t h) = y0 + h * sum_s K_s * q_s(t),
# q_s(t) = t (P_s0 + t (P_s1 + t (P_s2 + t P_s3))).
_P = (
    (1.0, -8048581381 / 2820520608, 8663915743 / 2820520608, -12715105075 / 11282082432),
    (0.0, 0.0, 0.0, 0.0),
    (0.0, 131558114200 / 32700410799, -68118460800 / 10900136933, 87487479700 / 32700410799),
    (0.0, -1754552775 / 470086768, 14199869525 / 1410260304, -10690763975 / 1880347072),
    (0.0, 127303824393 / 49829197408, -318862633887 / 49829197408, 701980252875 / 199316789632),
    (0.0, -282668133 / 205662961, 2019193451 / 616988883, -1453857185 / 822651844),
    (0.0, 40617522 / 29380423, -110615467 / 29380423, 69997945 / 29380423),
)

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 10.0
_MAX_STEPS = 1_000_000
_MIN_STEP = 1e-15

REACHED = "reached"
EVENT = "event"


class DenseSolution:
    """Piecewise-quartic dense output over the integrated span."""

    __slots__ = ("x0s", "hs", "y0s", "K", "x_start", "x_end", "_dir", "_edges")

    def __init__(self, x0s, hs, y0s, K, x_start, x_end):
        self.x0s = np.asarray(x0s)
        self.hs = np.asarray(hs)
        self.y0s = np.asarray(y0s)
        self.K = np.asarray(K)
        self.x_start = x_start
        self.x_end = x_end
        self._dir = 1.0 if x_end >= x_start else -1.0
        self._edges = self._dir * self.x0s

    def _segment(self, x: float) -> int:
        i = int(np.searchsorted(self._edges, self._dir * x, side="right")) - 1
        return min(max(i, 0), len(self.hs) - 1)

    def _check(self, x: float) -> None:
        lo, hi = sorted((self.x_start, self.x_end))
        if x < lo - 1e-12 or x > hi + 1e-12:
            raise NumericalError(
                f"dense output queried at x={x!r}, outside [{lo!r}, {hi!r}]")

    def value(self, x: float) -> float:
        self._check(x)
        i = self._segment(x)
        h = self.hs[i]
        t = (x - self.x0s[i]) / h
        acc = 0.0
        Ki = self.K[i]
        for s in range(7):
            p0, p1, p2, p3 = _P[s]
            acc += Ki[s] * (t * (p0 + t * (p1 + t * (p2 + t * p3))))
        return float(self.y0s[i] + h * acc)

    def slope(self, x: float) -> float:
        """Derivative of the interpolant polynomial at x."""
        self._check(x)
        i = self._segment(x)
        t = (x - self.x0s[i]) / self.hs[i]
        acc = 0.0
        Ki = self.K[i]
        for s in range(7):
            p0, p1, p2, p3 = _P[s]
            acc += Ki[s] * (p0 + t * (2 * p1 + t * (3 * p2 + t * 4 * p3)))
        return float(acc)

    def values(self, xs: Sequence[float]) -> np.ndarray:
        return np.array([self.value(float(x)) for x in np.asarray(xs, dtype=float).ravel()])


class IntegrationResult:
    __slots__ = ("dense", "status", "x_stop", "y_stop", "n_steps")

    def __init__(self, dense, status, x_stop, y_stop, n_steps):
        self.dense = dense
        self.status = status
        self.x_stop = x_stop
        self.y_stop = y_stop
        self.n_steps = n_steps


def _initial_step(f, x0, y0, f0, direction, rtol, atol, span):
    scale = atol + rtol * abs(y0)
    d0 = abs(y0) / scale
    d1 = abs(f0) / scale
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    h0 = min(h0, span)
    y1 = y0 + h0 * direction * f0
    f1 = f(x0 + h0 * direction, y1)
    d2 = abs(f1 - f0) / scale / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100 * h0, h1, span)


def integrate(f: Callable[[float, float], float],
              x0: float, x1: float, y0: float,
              rtol: float, atol: float,
              event: Callable[[float, float], float] | None = None,
              max_steps: int = _MAX_STEPS) -> IntegrationResult:
    """Integrate y' = f(x, y) from x0 to x1.

    ``event``, if given, is a continuous function of (x, y); integration
    stops at its first sign change, located by bisection on the dense
    interpolant.  Raises StiffnessError when the accepted step underflows.
    """
    if x1 == x0:
        raise NumericalError("empty integration span")
    direction = 1.0 if x1 > x0 else -1.0
    span = abs(x1 - x0)

    x, y = x0, y0
    fx = f(x, y)
    h = _initial_step(f, x0, y0, fx, direction, rtol, atol, span)

    x0s, hs, y0s, Ks = [], [], [], []
    g_prev = event(x, y) if event is not None else None

    n_steps = 0
    n_rejected_run = 0
    while True:
        if n_steps >= max_steps:
            raise NumericalError(f"step budget exhausted after {max_steps} steps at x={x!r}")
        remaining = abs(x1 - x)
        if remaining <= 0.0:
            break
        h = min(h, remaining)
        if h < _MIN_STEP:
            raise StiffnessError(f"step size underflow at x={x!r} (h={h!r})")
        hd = h * direction

        k1 = fx
        k2 = f(x + _C2 * hd, y + hd * (_A21 * k1))
        k3 = f(x + _C3 * hd, y + hd * (_A31 * k1 + _A32 * k2))
        k4 = f(x + _C4 * hd, y + hd * (_A41 * k1 + _A42 * k2 + _A43 * k3))
        k5 = f(x + _C5 * hd, y + hd * (_A51 * k1 + _A52 * k2 + _A53 * k3 + _A54 * k4))
        k6 = f(x + hd, y + hd * (_A61 * k1 + _A62 * k2 + _A63 * k3 + _A64 * k4 + _A65 * k5))
        y_new = y + hd * (_B1 * k1 + _B3 * k3 + _B4 * k4 + _B5 * k5 + _B6 * k6)
        x_new = x1 if remaining == h else x + hd
        k7 = f(x_new, y_new)

        err = hd * (_E1 * k1 + _E3 * k3 + _E4 * k4 + _E5 * k5 + _E6 * k6 + _E7 * k7)
        scale = atol + rtol * max(abs(y), abs(y_new))
        err_norm = abs(err) / scale

        if err_norm > 1.0:
            n_rejected_run += 1
            if n_rejected_run > 200:
                raise NumericalError(f"persistent step rejection at x={x!r}")
            h *= max(_MIN_FACTOR, _SAFETY * err_norm ** -0.2)
            continue
        n_rejected_run = 0

        x0s.append(x)
        hs.append(hd)
        y0s.append(y)
        Ks.append((k1, k2, k3, k4, k5, k6, k7))
        n_steps += 1

        triggered = False
        if event is not None:
            g_new = event(x_new, y_new)
            if g_new == 0.0 or (g_prev < 0.0 < g_new) or (g_prev > 0.0 > g_new):
                dense = DenseSolution(x0s, hs, y0s, Ks, x0, x_new)
                x_ev, y_ev = _locate_event(event, dense, x, x_new, g_prev)
                return IntegrationResult(
                    DenseSolution(x0s, hs, y0s, Ks, x0, x_ev),
                    EVENT, x_ev, y_ev, n_steps)
            g_prev = g_new

        x, y, fx = x_new, y_new, k7
        if err_norm == 0.0:
            factor = _MAX_FACTOR
        else:
            factor = min(_MAX_FACTOR, max(_MIN_FACTOR, _SAFETY * err_norm ** -0.2))
        h *= factor

    dense = DenseSolution(x0s, hs, y0s, Ks, x0, x)
    return IntegrationResult(dense, REACHED, x, y, n_steps)


def _locate_event(event, dense, xa, xb, ga):
    """Bisect the event sign change inside the last accepted step."""
    a, b = xa, xb
    fa = ga
    for _ in range(80):
        m = 0.5 * (a + b)
        if m == a or m == b:
            break
        gm = event(m, dense.value(m))
        if gm == 0.0:
            a = b = m
            break
        if (fa < 0.0) == (gm < 0.0):
            a, fa = m, gm
        else:
            b = m
    x_ev = b
    return x_ev, dense.value(x_ev)
