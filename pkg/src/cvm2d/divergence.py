"""Divergences between a representation (q) and a model (p).

``q`` is always the observed/initial pattern and ``p`` the free-energy-minimized
model, matching the active-inference naming convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

from cvm2d.configvars import PAIR_DEGENERACY, TRIPLET_DEGENERACY, ConfigVars, relation_residuals
from cvm2d.errors import DomainError, InputError

NORM_TOL = 1e-9


@dataclass(frozen=True)
class DivergenceOptions:
    """How to treat ``p = 0`` where ``q > 0``.

    ``epsilon_floor`` replaces such p entries by ``floor``; ``strict_error``
    raises instead.
    """

    zero_handling: Literal["epsilon_floor", "strict_error"] = "epsilon_floor"
    floor: float = 1e-9

    def __post_init__(self):
        if self.zero_handling not in ("epsilon_floor", "strict_error"):
            raise InputError(f"unknown zero_handling {self.zero_handling!r}")
        if self.zero_handling == "epsilon_floor" and not self.floor > 0:
            raise InputError("epsilon floor must be positive")


DEFAULT_OPTIONS = DivergenceOptions()


def _term(q: float, p: float, opts: DivergenceOptions) -> float:
    if q < 0 or p < 0:
        raise DomainError(f"negative probability (q={q}, p={p})")
    if q == 0.0:
        return 0.0
    if p == 0.0:
        if opts.zero_handling == "strict_error":
            raise DomainError(f"model probability is 0 where the data has q={q}")
        p = opts.floor
    return q * math.log(q / p)


def kl_divergence(q: Sequence[float], p: Sequence[float], opts: DivergenceOptions = DEFAULT_OPTIONS) -> float:
    """``sum q_i ln(q_i / p_i)`` with ``0 ln(0/p) = 0``."""
    q = [float(v) for v in q]
    p = [float(v) for v in p]
    if len(q) != len(p):
        raise InputError(f"support mismatch: {len(q)} vs {len(p)}")
    for name, dist in (("q", q), ("p", p)):
        if abs(sum(dist) - 1.0) > NORM_TOL:
            raise InputError(f"{name} sums to {sum(dist)}, not 1")
    return sum(_term(a, b, opts) for a, b in zip(q, p))


@dataclass(frozen=True)
class DivergenceTerms:
    """The four weighted blocks; ``total = y + w - x - z``."""

    y: float
    w: float
    x: float
    z: float

    @property
    def total(self) -> float:
        return self.y + self.w - self.x - self.z


_NORMALIZATIONS = ("x1+x2=1", "y1+2y2+y3=1", "w1+2w2+w3=1", "sum(gamma*z)=1")


def _check_normalized(cv: ConfigVars, label: str) -> None:
    res = relation_residuals(cv)
    for key in _NORMALIZATIONS:
        if abs(float(res[key])) > NORM_TOL:
            raise InputError(f"{label} violates {key} (residual {float(res[key]):.3g})")


def cvm_divergence_terms(q: ConfigVars, p: ConfigVars, opts: DivergenceOptions = DEFAULT_OPTIONS) -> DivergenceTerms:
    _check_normalized(q, "q")
    _check_normalized(p, "p")

    def block(qs, ps, weights):
        return sum(wt * _term(float(a), float(b), opts) for wt, a, b in zip(weights, qs, ps))

    return DivergenceTerms(
        y=2.0 * block(q.y, p.y, PAIR_DEGENERACY),
        w=block(q.w, p.w, PAIR_DEGENERACY),
        x=block(q.x, p.x, (1, 1)),
        z=2.0 * block(q.z, p.z, TRIPLET_DEGENERACY),
    )


def cvm_divergence(q: ConfigVars, p: ConfigVars, opts: DivergenceOptions = DEFAULT_OPTIONS) -> float:
    """Configuration-variable divergence of model ``p`` from representation ``q``.

    Weighted log-ratio terms laid out like the CVM entropy: pair blocks count
    positively, singles and triplets negatively, each with its degeneracy
    weight. Not sign-definite; best fits are judged by magnitude.
    """
    return cvm_divergence_terms(q, p, opts).total
