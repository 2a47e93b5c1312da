"""Configuration-variable counting and the equivalence relations between them.

Conventions: ``y2``, ``w2``, ``z2`` and ``z5`` are stored *before* multiplying by
their degeneracy factor of 2, so the normalizations read

    y1 + 2*y2 + y3 = 1,   w1 + 2*w2 + w3 = 1,   z1 + 2*z2 + z3 + z4 + 2*z5 + z6 = 1.

Triplets are read (left endpoint, apex, right endpoint): z1 = AAA, z2 = AAB/BAA,
z3 = ABA, z4 = BAB, z5 = ABB/BBA, z6 = BBB.
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from fractions import Fraction
from numbers import Real

import numpy as np

from cvm2d.errors import InputError
from cvm2d.grid import Lattice, geometry

PAIR_DEGENERACY = (1, 2, 1)
TRIPLET_DEGENERACY = (1, 2, 1, 1, 2, 1)

KEYS = ("x1", "x2", "y1", "y2", "y3", "w1", "w2", "w3", "z1", "z2", "z3", "z4", "z5", "z6")


@dataclass(frozen=True)
class ConfigVars:
    """The fourteen configuration-variable fractions.

    Values are floats for everyday use. ``count_config_vars(lat, exact=True)``
    fills them with :class:`fractions.Fraction` instead, which makes the
    equivalence relations checkable with zero residual.
    """

    x1: Real
    x2: Real
    y1: Real
    y2: Real
    y3: Real
    w1: Real
    w2: Real
    w3: Real
    z1: Real
    z2: Real
    z3: Real
    z4: Real
    z5: Real
    z6: Real

    @property
    def x(self):
        return (self.x1, self.x2)

    @property
    def y(self):
        return (self.y1, self.y2, self.y3)

    @property
    def w(self):
        return (self.w1, self.w2, self.w3)

    @property
    def z(self):
        return (self.z1, self.z2, self.z3, self.z4, self.z5, self.z6)

    def interpretation(self) -> tuple:
        """``(y2, z3, z1)``: boundary density, jaggedness, interior mass."""
        return (self.y2, self.z3, self.z1)

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in KEYS}

    def to_float(self) -> "ConfigVars":
        return ConfigVars(**{k: float(v) for k, v in self.as_dict().items()})

    def to_json_dict(self) -> dict:
        return {k: float(v) for k, v in self.as_dict().items()}

    @classmethod
    def from_dict(cls, data: dict) -> "ConfigVars":
        missing = [k for k in KEYS if k not in data]
        if missing:
            raise InputError(f"missing configuration variables: {', '.join(missing)}")
        return cls(**{k: data[k] for k in KEYS})

    def perturbed(self, **deltas) -> "ConfigVars":
        return replace(self, **{k: getattr(self, k) + d for k, d in deltas.items()})

    def __iter__(self):
        return (getattr(self, f.name) for f in fields(self))


@dataclass(frozen=True)
class RawCounts:
    """Integer tallies behind a ConfigVars; ``n`` is the number of nodes."""

    n: int
    n_a: int
    nn: tuple[int, int, int]  # AA, unlike (both orientations), BB
    nnn: tuple[int, int, int]
    triplets: tuple[int, ...]  # indexed by left*4 + apex*2 + right, A = 1


def raw_counts(lat: Lattice) -> RawCounts:
    geo = geometry(*lat.shape)
    s = lat.cells.ravel().astype(np.intp)

    def pair_counts(idx):
        codes = s[idx[0]] + s[idx[1]]  # 0 = BB, 1 = unlike, 2 = AA
        bb, unlike, aa = np.bincount(codes, minlength=3)
        return int(aa), int(unlike), int(bb)

    left, apex, right = geo.triplets
    tri = np.bincount(s[left] * 4 + s[apex] * 2 + s[right], minlength=8)
    return RawCounts(
        n=lat.size,
        n_a=int(s.sum()),
        nn=pair_counts(geo.nn),
        nnn=pair_counts(geo.nnn),
        triplets=tuple(int(v) for v in tri),
    )


def config_vars_from_counts(rc: RawCounts, exact: bool = False) -> ConfigVars:
    div = Fraction if exact else (lambda a, b: a / b)
    n = rc.n
    n_nn = 2 * n  # diagonal pairs
    n_tri = 2 * n
    t = rc.triplets
    aaa, aab, baa, aba, bab, abb, bba, bbb = t[7], t[6], t[3], t[5], t[2], t[4], t[1], t[0]
    return ConfigVars(
        x1=div(rc.n_a, n),
        x2=div(n - rc.n_a, n),
        y1=div(rc.nn[0], n_nn),
        y2=div(rc.nn[1], 2 * n_nn),
        y3=div(rc.nn[2], n_nn),
        w1=div(rc.nnn[0], n),
        w2=div(rc.nnn[1], 2 * n),
        w3=div(rc.nnn[2], n),
        z1=div(aaa, n_tri),
        z2=div(aab + baa, 2 * n_tri),
        z3=div(aba, n_tri),
        z4=div(bab, n_tri),
        z5=div(abb + bba, 2 * n_tri),
        z6=div(bbb, n_tri),
    )


def count_config_vars(lat: Lattice, exact: bool = False) -> ConfigVars:
    """Count all fourteen fractions on the torus.

    Args:
        lat: the lattice.
        exact: return :class:`~fractions.Fraction` values instead of floats.
    """
    return config_vars_from_counts(raw_counts(lat), exact=exact)


# ---------------------------------------------------------------------------
# Equivalence relations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RelationResult:
    name: str
    residual: float
    passed: bool


@dataclass(frozen=True)
class EquivalenceReport:
    results: tuple[RelationResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def max_residual(self) -> float:
        return max(abs(r.residual) for r in self.results)

    def failures(self) -> list[RelationResult]:
        return [r for r in self.results if not r.passed]

    def to_json_dict(self) -> dict:
        return {
            "passed": self.passed,
            "relations": {r.name: {"residual": r.residual, "passed": r.passed} for r in self.results},
        }


def relation_residuals(cv: ConfigVars) -> dict:
    """Left-hand side minus right-hand side for every identity.

    Kept in the input's number type, so Fraction inputs give exact residuals.
    """
    x1, x2 = cv.x
    y1, y2, y3 = cv.y
    w1, w2, w3 = cv.w
    z1, z2, z3, z4, z5, z6 = cv.z
    return {
        "x1+x2=1": x1 + x2 - 1,
        "y1+2y2+y3=1": y1 + 2 * y2 + y3 - 1,
        "w1+2w2+w3=1": w1 + 2 * w2 + w3 - 1,
        "sum(gamma*z)=1": z1 + 2 * z2 + z3 + z4 + 2 * z5 + z6 - 1,
        "y1=z1+z2": y1 - (z1 + z2),
        "y2=z2+z4": y2 - (z2 + z4),
        "y2=z3+z5": y2 - (z3 + z5),
        "y3=z5+z6": y3 - (z5 + z6),
        "w1=z1+z3": w1 - (z1 + z3),
        "w2=z2+z5": w2 - (z2 + z5),
        "w3=z4+z6": w3 - (z4 + z6),
        "x1=y1+y2": x1 - (y1 + y2),
        "x1=w1+w2": x1 - (w1 + w2),
        "x1=z1+z2+z3+z5": x1 - (z1 + z2 + z3 + z5),
        "x2=y2+y3": x2 - (y2 + y3),
        "x2=w2+w3": x2 - (w2 + w3),
        "x2=z2+z4+z5+z6": x2 - (z2 + z4 + z5 + z6),
    }


def check_equivalences(cv: ConfigVars, tol: float = 0.0) -> EquivalenceReport:
    """Evaluate every normalization and equivalence relation.

    A relation passes when ``|residual| <= tol``. Lattice counts taken with
    ``exact=True`` satisfy all of them with ``tol=0``.
    """
    results = tuple(
        RelationResult(name, float(res), abs(res) <= tol) for name, res in relation_residuals(cv).items()
    )
    return EquivalenceReport(results)
