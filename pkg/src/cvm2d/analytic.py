"""Closed-form equilibrium configuration for the equiprobable case (x1 = x2 = 1/2).

Every variable is a rational function of ``h = exp(2*eps1)`` over the common
denominator ``delta(h) = -h^2 + 6h - 1``, which vanishes at ``3 -/+ 2*sqrt(2)``.
Between those roots the numerators still change sign at ``h = 1/3`` (y1, z1,
z2, w2) and ``h = 3`` (y2, z2, z3, w2), so the physical branch, where all
fractions are inside [0, 1], is ``1/3 <= h <= 3``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

from scipy.optimize import bisect

from cvm2d.configvars import ConfigVars
from cvm2d.errors import DomainError

log = logging.getLogger(__name__)

DELTA_ROOTS = (3.0 - 2.0 * math.sqrt(2.0), 3.0 + 2.0 * math.sqrt(2.0))
PHYSICAL_RANGE = (1.0 / 3.0, 3.0)
PRACTICAL_RANGE = (1.0, 2.0)

INTERPRETATION_NAMES = ("y2", "z3", "z1")


def delta(h: float) -> float:
    return -h * h + 6.0 * h - 1.0


def _closed_form(h: float) -> dict:
    d = delta(h)
    a = 3.0 * h - 1.0
    b = 3.0 - h
    c = h + 1.0
    y1 = a / (2.0 * d)
    w1 = c * c / (4.0 * d)
    z1 = a * c / (8.0 * d)
    z2 = a * b / (8.0 * d)
    z3 = b * c / (8.0 * d)
    return dict(
        x1=0.5, x2=0.5,
        y1=y1, y2=h * b / (2.0 * d), y3=y1,
        w1=w1, w2=a * b / (4.0 * d), w3=w1,
        z1=z1, z2=z2, z3=z3, z4=z3, z5=z2, z6=z1,
    )


def analytic_config_vars(h: float) -> ConfigVars:
    """Equilibrium configuration variables at interaction parameter ``h``.

    Raises:
        DomainError: if ``delta(h) <= 0`` or any fraction leaves [0, 1].
    """
    d = delta(h)
    if not d > 0:
        lo, hi = DELTA_ROOTS
        raise DomainError(
            f"h={h} is outside ({lo:.4f}, {hi:.4f}); the closed form diverges at the roots of delta(h)={d:.4g}"
        )
    vals = _closed_form(h)
    bad = {k: v for k, v in vals.items() if not 0.0 <= v <= 1.0}
    if bad:
        names = ", ".join(f"{k}={v:.4g}" for k, v in bad.items())
        raise DomainError(f"h={h} is off the physical branch {PHYSICAL_RANGE}: {names}")
    if not PRACTICAL_RANGE[0] <= h <= PRACTICAL_RANGE[1]:
        log.debug("h=%s lies outside the practical range %s", h, PRACTICAL_RANGE)
    return ConfigVars(**vals)


@dataclass(frozen=True)
class AnalyticSolution:
    h: float
    cv: ConfigVars = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "cv", analytic_config_vars(self.h))

    @property
    def delta(self) -> float:
        return delta(self.h)


def interpretation_triple(h: float) -> tuple[float, float, float]:
    """``(y2, z3, z1)`` at equilibrium."""
    return analytic_config_vars(h).interpretation()


def interpretation_curve(name: str, h: float) -> float:
    """One interpretation variable as a function of h, without range checks."""
    return _closed_form(h)[name]


# ---------------------------------------------------------------------------
# Inverting the curves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HRangeEstimate:
    """Per-variable inverted h values and the widened overall range."""

    h_lo: float
    h_hi: float
    recovered: dict  # name -> h for variables that could be inverted
    errors: dict  # name -> message for those that could not
    margin: float

    def __iter__(self):
        return iter((self.h_lo, self.h_hi))


ENDPOINT_TOL = 1e-12


def invert_curve(name: str, value: float, lo: float | None = None, hi: float | None = None,
                 xtol: float = 1e-10) -> float:
    """Solve ``curve(h) = value`` on the closed physical branch by bisection.

    All three interpretation curves are strictly monotone there (y2 and z3
    decreasing, z1 increasing). A value within ``ENDPOINT_TOL`` of the curve at
    either end maps to that end; a perfectly alternating stripe, for instance,
    has (y2, z3, z1) = (0.5, 0.5, 0), which is the curve triple at h = 1/3.
    """
    lo = PHYSICAL_RANGE[0] if lo is None else lo
    hi = PHYSICAL_RANGE[1] if hi is None else hi
    f_lo = interpretation_curve(name, lo) - value
    f_hi = interpretation_curve(name, hi) - value
    if abs(f_lo) <= ENDPOINT_TOL:
        return lo
    if abs(f_hi) <= ENDPOINT_TOL:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        a, b = sorted((f_lo + value, f_hi + value))
        raise DomainError(f"{name}={value:.6g} is outside the curve's range [{a:.6g}, {b:.6g}] on h in [{lo:.4g}, {hi:.4g}]")
    return bisect(lambda h: interpretation_curve(name, h) - value, lo, hi, xtol=xtol)


def estimate_h_range(cv: ConfigVars, margin: float = 0.15) -> HRangeEstimate:
    """Initial h window suggested by a pattern's interpretation variables.

    Each of y2, z3 and z1 is mapped back to the h at which the equilibrium curve
    takes that value; the window spans the recovered values, widened by
    ``margin`` on both sides. Variables that fall outside their curve's range
    are reported in ``errors`` and skipped.
    """
    if abs(float(cv.x1) - 0.5) > 1e-9:
        raise DomainError(f"h-range estimation needs x1 = 0.5, got {float(cv.x1)}")
    recovered, errors = {}, {}
    for name in INTERPRETATION_NAMES:
        try:
            recovered[name] = invert_curve(name, float(getattr(cv, name)))
        except DomainError as exc:
            errors[name] = str(exc)
    if not recovered:
        raise DomainError("no interpretation variable could be inverted: " + "; ".join(errors.values()))
    return HRangeEstimate(
        h_lo=min(recovered.values()) - margin,
        h_hi=max(recovered.values()) + margin,
        recovered=recovered,
        errors=errors,
        margin=margin,
    )
