"""Analytic power-series solutions at the poles.

Writing ``s = 1 + x`` near the south pole, the forcing polynomial becomes
``ct1 + ct2 s + ct3 s^2`` with ``ct1 = 2 c1``, ``ct2 = -c1 + c2 + 2 c3``,
``ct3 = -c3``, and an analytic solution ``U = tau + sum a_n s^n`` exists for
``tau`` equal to either admissible endpoint value, provided ``tau`` avoids
the resonance set {0, -2, -4, ...}.  The coefficients obey

    a_1 = ct2 / tau - 2
    a_2 = (ct3 - a_1 - a_1^2 / 2) / (tau + 2)
    a_n = -( sum_{k+l=n} a_k a_l / 2 + (3 - n) a_{n-1} ) / (2n - 2 + tau)

North-pole expansions in powers of ``1 - x`` are obtained from the mirror
map x -> -x, U -> -U, (c1, c2) -> (c2, c1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .config import DEFAULT, RunConfig
from .errors import DegenerateBranchError, DomainError, SeriesDivergenceError
from .params import Params, tau_constants

# Largest handoff offset from the pole regardless of coefficient growth.
MAX_RADIUS = 0.05
# Relative truncation target for evaluation at the handoff offset.
TAIL_RTOL = 1e-14
TERM_RTOL = 1e-16


@dataclass(frozen=True)
class SeriesExpansion:
    """Truncated analytic expansion at one pole.

    ``coeffs[n-1]`` holds ``a_n``.  ``growth`` bounds ``|a_n|^(1/n)`` from
    above (floored at 1), so the geometric tail after truncation at order N
    is at most ``(growth * s)^(N+1) / (1 - growth * s)`` for offsets
    ``s <= radius``.
    """

    pole: str  # "south" or "north"
    tau: float
    coeffs: tuple[float, ...]
    radius: float
    growth: float
    params: Params

    def order(self) -> int:
        return len(self.coeffs)

    def tail_bound(self, s: float) -> float:
        g = self.growth * s
        if g >= 1.0:
            return math.inf
        return g ** (len(self.coeffs) + 1) / (1.0 - g)

    def eval(self, x: float) -> tuple[float, float]:
        """Value and d/dx of the truncated series at x.

        At the pole itself this returns ``(tau, a_1)`` for a south series
        and ``(tau, -a_1)`` for a north one (the mirror map reverses the
        orientation of the offset variable).
        """
        if self.pole == "south":
            s = x + 1.0
            sign = 1.0
        else:
            s = 1.0 - x
            sign = -1.0
        if s < -1e-15 or s > self.radius * (1.0 + 1e-12):
            raise DomainError(
                f"x={x!r} is outside the validity range of the {self.pole} series "
                f"(offset {s!r}, radius {self.radius!r})")
        u = 0.0
        du = 0.0
        for n in range(len(self.coeffs), 0, -1):
            a = self.coeffs[n - 1]
            u = u * s + a
            du = du * s + n * a
        return self.tau + s * u, sign * du


def _is_resonant_south(tau: float) -> bool:
    # resonance set {0, -2, -4, ...}
    if tau > 1e-9:
        return False
    k = round(-tau / 2.0)
    return abs(tau + 2.0 * k) <= 1e-9


def _validate_tau_south(c: Params, tau: float) -> None:
    taus = tau_constants(c.c1, c.c2)
    d = min(abs(tau - taus.tau1), abs(tau - taus.tau2))
    if d > 1e-9 * max(1.0, abs(tau)):
        raise DomainError(
            f"tau={tau!r} is not an admissible south endpoint for c1={c.c1!r} "
            f"(expected {taus.tau1!r} or {taus.tau2!r})")


def expand_south(c: Params, tau: float, cfg: RunConfig = DEFAULT) -> SeriesExpansion:
    """Expansion ``tau + sum a_n (1+x)^n`` of the analytic branch at x = -1.

    Truncation is adaptive: terms are added until three consecutive ones
    contribute below ``TERM_RTOL`` relative at the handoff offset and the
    geometric tail bound drops below ``TAIL_RTOL``, capped at
    ``cfg.series_max_terms``.
    """
    _validate_tau_south(c, tau)
    if _is_resonant_south(tau):
        raise DegenerateBranchError(
            f"south endpoint tau={tau!r} lies in the resonance set {{0, -2, -4, ...}}; "
            "no analytic expansion on this branch")

    ct2 = -c.c1 + c.c2 + 2.0 * c.c3
    ct3 = -c.c3

    a = [0.0]  # dummy a_0 so that a[n] is a_n
    a.append(ct2 / tau - 2.0)
    a.append((ct3 - a[1] - 0.5 * a[1] * a[1]) / (tau + 2.0))

    scale = max(1.0, abs(tau))
    growth = 1.0
    for n in (1, 2):
        m = abs(a[n]) ** (1.0 / n)
        if m > growth:
            growth = m

    small_run = 0
    n = 2
    while True:
        if growth > cfg.series_growth_cap:
            raise SeriesDivergenceError(
                f"series coefficients grow like {growth!r} per order, "
                f"beyond the cap {cfg.series_growth_cap!r}")
        radius = min(MAX_RADIUS, 0.5 / growth)
        term = abs(a[n]) * radius ** n
        small_run = small_run + 1 if term <= TERM_RTOL * scale else 0
        g = growth * radius
        tail = g ** (n + 1) / (1.0 - g)
        if small_run >= 3 and tail <= TAIL_RTOL * scale:
            break
        if n >= cfg.series_max_terms:
            if tail > TAIL_RTOL * scale:
                raise SeriesDivergenceError(
                    f"series did not reach the truncation target within "
                    f"{cfg.series_max_terms} terms (tail bound {tail!r})")
            break
        n += 1
        conv = sum(a[k] * a[n - k] for k in range(1, n))
        a.append(-(0.5 * conv + (3.0 - n) * a[n - 1]) / (2.0 * n - 2.0 + tau))
        m = abs(a[n]) ** (1.0 / n)
        if m > growth:
            growth = m

    radius = min(MAX_RADIUS, 0.5 / growth)
    return SeriesExpansion(pole="south", tau=tau, coeffs=tuple(a[1:]),
                           radius=radius, growth=growth, params=c)


def expand_north(c: Params, taup: float, cfg: RunConfig = DEFAULT) -> SeriesExpansion:
    """Expansion ``taup + sum a_n (1-x)^n`` of the analytic branch at x = +1.

    Built from the mirror problem: the south expansion of the reflected
    parameters at ``-taup`` has coefficients ``b_n``, and the north
    coefficients are ``a_n = -b_n``.
    """
    taus = tau_constants(c.c1, c.c2)
    d = min(abs(taup - taus.tau1p), abs(taup - taus.tau2p))
    if d > 1e-9 * max(1.0, abs(taup)):
        raise DomainError(
            f"taup={taup!r} is not an admissible north endpoint for c2={c.c2!r} "
            f"(expected {taus.tau1p!r} or {taus.tau2p!r})")
    if _is_resonant_south(-taup):
        raise DegenerateBranchError(
            f"north endpoint taup={taup!r} lies in the resonance set {{0, 2, 4, ...}}; "
            "no analytic expansion on this branch")
    mirror = expand_south(c.reflected(), -taup, cfg)
    return SeriesExpansion(pole="north", tau=taup,
                           coeffs=tuple(-b for b in mirror.coeffs),
                           radius=mirror.radius, growth=mirror.growth, params=c)
