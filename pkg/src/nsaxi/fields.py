"""Physical velocity and pressure fields from a profile curve.

With ``x = cos(theta)`` and ``U = u_theta sin(theta)``, the divergence-free
constraint forces ``u_r = U'(x)``, and the pressure of the stationary flow
is

    p = -1/2 [ (1-x^2) U''' - 2 x U'' + U U'' + (U')^2 + U^2 / (1-x^2) ],

which is the polar-angle form rewritten in x through
``d/dtheta = -sqrt(1-x^2) d/dx``.  Velocities scale like 1/r and pressure
like 1/r^2; samples carry the radius explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, PoleProximityError
from .solver import SolutionCurve

# u_theta = U / sqrt(1 - x^2) diverges at the poles unless U vanishes there;
# field evaluation refuses to get closer than this.
POLE_CUTOFF = 1e-6


@dataclass(frozen=True)
class FieldSample:
    """Velocity and pressure at one point (r, x = cos(theta))."""

    r: float
    x: float
    u_r: float
    u_theta: float
    u_phi: float
    p: float


def reconstruct(curve: SolutionCurve, r: float, x: float) -> FieldSample:
    """Physical fields of a profile curve at radius r and colatitude cos x."""
    r = float(r)
    x = float(x)
    if not r > 0.0:
        raise DomainError(f"radius must be positive, got {r!r}")
    if abs(x) > 1.0 - POLE_CUTOFF:
        raise PoleProximityError(
            f"field evaluation requires |x| <= {1.0 - POLE_CUTOFF!r}, got x={x!r}")
    u = curve.eval(x)
    u1 = curve.deriv(x, 1)
    u2 = curve.deriv(x, 2)
    u3 = curve.deriv(x, 3)
    omsq = (1.0 - x) * (1.0 + x)
    p1 = -0.5 * (omsq * u3 - 2.0 * x * u2 + u * u2 + u1 * u1 + u * u / omsq)
    return FieldSample(
        r=r,
        x=x,
        u_r=u1 / r,
        u_theta=u / (r * math.sqrt(omsq)),
        u_phi=0.0,
        p=p1 / (r * r),
    )


def landau(lam: float, x: float) -> float:
    """Classical explicit profile 2 (1 - x^2) / (x + lam), |lam| > 1.

    These are the zero-forcing solutions; the midpoint value is 2 / lam.
    """
    if not abs(lam) > 1.0:
        raise DomainError(f"landau profile requires |lambda| > 1, got {lam!r}")
    return 2.0 * (1.0 - x) * (1.0 + x) / (x + lam)


def sample_grid(curve: SolutionCurve, r_values, x_values,
                strict: bool = False) -> tuple[list[FieldSample], list[tuple[float, float, str]]]:
    """Batch reconstruction over the product grid r_values x x_values.

    Returns the samples plus a list of (r, x, reason) for points that
    failed; with ``strict`` the first failure raises instead.  Order is
    r-major, x-minor, matching the input iteration order.
    """
    samples: list[FieldSample] = []
    failures: list[tuple[float, float, str]] = []
    for r in r_values:
        for x in x_values:
            try:
                samples.append(reconstruct(curve, r, x))
            except DomainError as e:
                if strict:
                    raise
                failures.append((float(r), float(x), str(e)))
    return samples, failures
