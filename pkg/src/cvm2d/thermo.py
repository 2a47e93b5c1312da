"""Reduced enthalpy, entropy and free energy of a configuration (k_B*T = 1)."""

from __future__ import annotations

import math
from dataclasses import dataclass

from cvm2d.configvars import PAIR_DEGENERACY, TRIPLET_DEGENERACY, ConfigVars
from cvm2d.errors import DomainError


def h_from_eps1(eps1: float) -> float:
    return math.exp(2.0 * eps1)


def eps1_from_h(h: float) -> float:
    if not h > 0:
        raise DomainError(f"h must be positive, got {h}")
    return 0.5 * math.log(h)


@dataclass(frozen=True)
class EnthalpyParams:
    """Activation enthalpy ``eps0`` and interaction enthalpy ``eps1``."""

    eps0: float = 0.0
    eps1: float = 0.0

    @classmethod
    def from_h(cls, h: float, eps0: float = 0.0) -> "EnthalpyParams":
        return cls(eps0=eps0, eps1=eps1_from_h(h))

    @property
    def h(self) -> float:
        return h_from_eps1(self.eps1)


def lf(v: float) -> float:
    """``v*ln(v) - v`` with the limit value 0 at ``v = 0``."""
    v = float(v)
    if v < 0:
        raise DomainError(f"lf is undefined for negative argument {v}")
    if v == 0.0:
        return 0.0
    return v * math.log(v) - v


def enthalpy(cv: ConfigVars, p: EnthalpyParams) -> float:
    """``eps0*x1 + 2*eps1*(-z1 + z3 + z4 - z6)``.

    The factor 2 on the interaction term is what makes the closed-form
    equilibrium in :mod:`cvm2d.analytic` (written in ``h = exp(2*eps1)``) a
    stationary point of :func:`free_energy`; with a unit factor the stationary
    point would sit at ``h = exp(eps1)`` instead.
    """
    z1, _, z3, z4, _, z6 = (float(v) for v in cv.z)
    return p.eps0 * float(cv.x1) + 2.0 * p.eps1 * (-z1 + z3 + z4 - z6)


def enthalpy_pair_form(cv: ConfigVars, p: EnthalpyParams) -> float:
    """Same enthalpy written with nearest-neighbour fractions: ``2*eps1*(2*y2 - y1 - y3)``.

    Agrees with :func:`enthalpy` whenever the equivalence relations hold.
    """
    y1, y2, y3 = (float(v) for v in cv.y)
    return p.eps0 * float(cv.x1) + 2.0 * p.eps1 * (2.0 * y2 - y1 - y3)


def entropy(cv: ConfigVars) -> float:
    ys = sum(b * lf(v) for b, v in zip(PAIR_DEGENERACY, cv.y))
    ws = sum(b * lf(v) for b, v in zip(PAIR_DEGENERACY, cv.w))
    xs = sum(lf(v) for v in cv.x)
    zs = sum(g * lf(v) for g, v in zip(TRIPLET_DEGENERACY, cv.z))
    return 2.0 * ys + ws - xs - 2.0 * zs


def free_energy(cv: ConfigVars, p: EnthalpyParams) -> float:
    """Reduced free energy ``H - S``.

    The Lagrange-multiplier terms are left out: counted configurations already
    satisfy the constraints they enforce.
    """
    return enthalpy(cv, p) - entropy(cv)
