"""Parameter-space geometry.

The quadratic forcing polynomial is parameterized by a triple
``c = (c1, c2, c3)``.  Global solutions of the profile equation exist only
for ``c1 >= -1``, ``c2 >= -1`` and ``c3 >= c3_bar(c1, c2)``; on that lower
boundary the solution is unique, above it a one-parameter family indexed by
the midpoint value ``gamma = U(0)`` fills a band between two extremal
profiles.  This module owns admissibility, the endpoint constants at the
poles, and the stratum classification of ``(c, gamma)`` indices.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .config import DEFAULT, RunConfig
from .errors import ClassificationError, DomainError, NumericalError

# Inputs within this window below -1 are rounding noise and get clamped.
CLAMP_WINDOW = 1e-14


@dataclass(frozen=True)
class Params:
    """Coefficient triple of the forcing polynomial.

    ``c1`` and ``c2`` must be at least -1.  Values within ``CLAMP_WINDOW``
    below -1 are clamped to -1 and flagged; anything lower is rejected.
    ``c3`` is unconstrained here because family membership is a query
    (see :func:`in_family`), not a construction invariant.
    """

    c1: float
    c2: float
    c3: float
    clamped: bool = field(default=False, compare=False)

    def __post_init__(self):
        clamped = False
        for name in ("c1", "c2", "c3"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)
        for name in ("c1", "c2"):
            v = getattr(self, name)
            if v < -1.0:
                if v < -1.0 - CLAMP_WINDOW:
                    raise DomainError(f"{name} must be >= -1, got {v!r}")
                object.__setattr__(self, name, -1.0)
                clamped = True
        if clamped:
            object.__setattr__(self, "clamped", True)

    def reflected(self) -> "Params":
        """Parameters of the mirror problem x -> -x, U -> -U."""
        return Params(self.c2, self.c1, self.c3)


@dataclass(frozen=True)
class EndpointConstants:
    """Admissible endpoint values at the two poles.

    ``tau1 <= 2 <= tau2`` are the south-pole limits, ``tau1p <= -2 <= tau2p``
    the north-pole ones.  They satisfy ``tau1 + tau2 = 4``,
    ``(tau2 - 2)^2 = 4 (1 + c1)`` and mirrored identities at the north pole.
    """

    tau1: float
    tau2: float
    tau1p: float
    tau2p: float


class Stratum(enum.Enum):
    """Location of a ``(c, gamma)`` index on the solution surface.

    ``Ikl`` uses k = 1..4 for the (c1, c2) degeneracy pattern
    (1: both > -1, 2: c1 = -1, 3: c2 = -1, 4: both = -1) and
    l = 1..3 for the gamma position (1: interior, 2: upper extremal,
    3: lower extremal).  The lower boundary surface c3 = c3_bar and
    points off the surface get their own tags.
    """

    I11 = "I_{1,1}"
    I12 = "I_{1,2}"
    I13 = "I_{1,3}"
    I21 = "I_{2,1}"
    I22 = "I_{2,2}"
    I23 = "I_{2,3}"
    I31 = "I_{3,1}"
    I32 = "I_{3,2}"
    I33 = "I_{3,3}"
    I41 = "I_{4,1}"
    I42 = "I_{4,2}"
    I43 = "I_{4,3}"
    BOUNDARY = "boundary"
    OUTSIDE = "outside_I"

    @staticmethod
    def interior(k: int, l: int) -> "Stratum":
        return Stratum[f"I{k}{l}"]

    @property
    def k(self) -> int | None:
        name = self.name
        return int(name[1]) if name.startswith("I") else None

    @property
    def l(self) -> int | None:
        name = self.name
        return int(name[2]) if name.startswith("I") else None


@dataclass(frozen=True)
class SolutionIndex:
    """A point (c, gamma) of the four-parameter family with its stratum."""

    params: Params
    gamma: float
    stratum: Stratum


def c3_bar(c1: float, c2: float) -> float:
    """Lower admissibility boundary for c3, symmetric in (c1, c2)."""
    if c1 < -1.0 or c2 < -1.0:
        raise DomainError(f"c3_bar requires c1, c2 >= -1, got ({c1!r}, {c2!r})")
    q = math.sqrt(1.0 + c1) + math.sqrt(1.0 + c2)
    return -0.5 * q * (q + 2.0)


def tau_constants(c1: float, c2: float) -> EndpointConstants:
    """Endpoint constants at both poles for the given (c1, c2)."""
    if c1 < -1.0 or c2 < -1.0:
        raise DomainError(f"tau_constants requires c1, c2 >= -1, got ({c1!r}, {c2!r})")
    q1 = 2.0 * math.sqrt(1.0 + c1)
    q2 = 2.0 * math.sqrt(1.0 + c2)
    return EndpointConstants(tau1=2.0 - q1, tau2=2.0 + q1,
                             tau1p=-2.0 - q2, tau2p=-2.0 + q2)


def p_c(x: float, c: Params) -> float:
    """Forcing polynomial.  Satisfies p_c(-1) = 2 c1 and p_c(1) = 2 c2."""
    return c.c1 * (1.0 - x) + c.c2 * (1.0 + x) + c.c3 * (1.0 - x) * (1.0 + x)


def p_c_prime(x: float, c: Params) -> float:
    return -c.c1 + c.c2 - 2.0 * c.c3 * x


def p_c_second(c: Params) -> float:
    return -2.0 * c.c3


def p_c_sup(c: Params) -> float:
    """Maximum of |p_c| over [-1, 1]."""
    sup = max(abs(2.0 * c.c1), abs(2.0 * c.c2))
    if c.c3 != 0.0:
        xv = (c.c2 - c.c1) / (2.0 * c.c3)
        if -1.0 < xv < 1.0:
            sup = max(sup, abs(p_c(xv, c)))
    return sup


def boundary_tolerance(cb: float, cfg: RunConfig = DEFAULT) -> float:
    return cfg.membership_rtol * max(1.0, abs(cb))


def on_boundary(c: Params, cfg: RunConfig = DEFAULT) -> bool:
    cb = c3_bar(c.c1, c.c2)
    return abs(c.c3 - cb) <= boundary_tolerance(cb, cfg)


def in_family(c: Params, cfg: RunConfig = DEFAULT) -> bool:
    """Whether c lies in the admissible region (c3 above or on the boundary)."""
    cb = c3_bar(c.c1, c.c2)
    return c.c3 >= cb - boundary_tolerance(cb, cfg)


def gamma_star(c: Params) -> float:
    """Midpoint value of the unique boundary profile, sqrt(1+c1) - sqrt(1+c2)."""
    return math.sqrt(1.0 + c.c1) - math.sqrt(1.0 + c.c2)


def _degeneracy_k(c: Params) -> int:
    if c.c1 == -1.0 and c.c2 == -1.0:
        return 4
    if c.c1 == -1.0:
        return 2
    if c.c2 == -1.0:
        return 3
    return 1


def extremal_tolerance(g: float, cfg: RunConfig = DEFAULT) -> float:
    return cfg.extremal_rtol * max(1.0, abs(g))


def classify(c: Params, gamma: float, cfg: RunConfig = DEFAULT) -> SolutionIndex:
    """Assign the stratum of (c, gamma).

    Boundary and extremal tags absorb tolerances: the boundary test is
    relative to |c3_bar| at ``membership_rtol``, the extremal test relative
    to |gamma^+-| at ``extremal_rtol``.  Points outside the family, and
    gamma outside the extremal band beyond tolerance, get ``OUTSIDE``.
    Solver failures while computing the band surface as a distinct
    unclassifiable error.
    """
    if not math.isfinite(gamma):
        raise DomainError(f"gamma must be finite, got {gamma!r}")
    cb = c3_bar(c.c1, c.c2)
    tol_b = boundary_tolerance(cb, cfg)
    if c.c3 < cb - tol_b:
        return SolutionIndex(c, gamma, Stratum.OUTSIDE)
    if abs(c.c3 - cb) <= tol_b:
        gs = gamma_star(c)
        if abs(gamma - gs) <= extremal_tolerance(gs, cfg):
            return SolutionIndex(c, gamma, Stratum.BOUNDARY)
        return SolutionIndex(c, gamma, Stratum.OUTSIDE)

    from . import solver  # deferred: solver depends on this module

    try:
        gp = solver.gamma_plus(c, cfg)
        gm = solver.gamma_minus(c, cfg)
    except NumericalError as e:
        raise ClassificationError(f"cannot classify {c}: {e}") from e
    tol_p = extremal_tolerance(gp, cfg)
    tol_m = extremal_tolerance(gm, cfg)
    if gamma > gp + tol_p or gamma < gm - tol_m:
        return SolutionIndex(c, gamma, Stratum.OUTSIDE)
    k = _degeneracy_k(c)
    if abs(gamma - gp) <= tol_p:
        l = 2
    elif abs(gamma - gm) <= tol_m:
        l = 3
    else:
        l = 1
    return SolutionIndex(c, gamma, Stratum.interior(k, l))
