"""Best-fit h search: minimize the input pattern at each h and compare.

For every h on the grid a fresh copy of the input lattice is brought down in
free energy, its configuration variables ``p`` are compared with the input's
``q`` through :func:`cvm_divergence`, and the h with the smallest ``|D|`` wins.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import warnings
from dataclasses import dataclass, field

from cvm2d.analytic import DELTA_ROOTS, PHYSICAL_RANGE, estimate_h_range, interpretation_triple
from cvm2d.configvars import ConfigVars, count_config_vars
from cvm2d.divergence import DEFAULT_OPTIONS, DivergenceOptions, cvm_divergence
from cvm2d.errors import DomainError, InputError
from cvm2d.grid import Lattice
from cvm2d.minimizer import MinimizeConfig, best_of_trials
from cvm2d.thermo import EnthalpyParams, free_energy

log = logging.getLogger(__name__)

CSV_COLUMNS = ("h", "divergence", "F_final", "y2", "z1", "z3")


@dataclass(frozen=True)
class SweepSpec:
    """Grid and minimizer settings. ``h_lo``/``h_hi`` of None mean "estimate from the pattern"."""

    h_lo: float | None = None
    h_hi: float | None = None
    step: float = 0.05
    eps0: float = 0.0
    minimize_cfg: MinimizeConfig = field(default_factory=lambda: MinimizeConfig(trials=4, record_trace=False))
    margin: float = 0.15
    divergence: DivergenceOptions = DEFAULT_OPTIONS

    def grid(self) -> list[float]:
        if self.h_lo is None or self.h_hi is None:
            raise InputError("h range not set; resolve it with estimate_h_range first")
        lo, hi = self.h_lo, self.h_hi
        if not self.step > 0:
            raise InputError(f"step must be positive, got {self.step}")
        if not DELTA_ROOTS[0] < lo <= hi < PHYSICAL_RANGE[1]:
            raise DomainError(f"need {DELTA_ROOTS[0]:.4f} < h_lo <= h_hi < {PHYSICAL_RANGE[1]}, got [{lo}, {hi}]")
        n = int(math.floor((hi - lo) / self.step + 1e-9)) + 1
        return [round(lo + k * self.step, 10) for k in range(n)]


@dataclass(frozen=True)
class SweepRow:
    h: float
    divergence: float
    f_final: float
    f_initial: float
    seed: int
    accepted: int
    cv: ConfigVars
    analytic: tuple | None  # equilibrium (y2, z3, z1) at this h, None off the physical branch

    @property
    def y2(self):
        return float(self.cv.y2)

    @property
    def z1(self):
        return float(self.cv.z1)

    @property
    def z3(self):
        return float(self.cv.z3)


@dataclass(frozen=True)
class SweepReport:
    rows: tuple[SweepRow, ...]
    best: SweepRow
    initial_cv: ConfigVars
    h_range: tuple[float, float]
    step: float
    trials: int
    max_flips: int
    base_seed: int

    def to_json_dict(self) -> dict:
        def row(r: SweepRow) -> dict:
            return {
                "h": r.h,
                "divergence": r.divergence,
                "F_final": r.f_final,
                "F_initial": r.f_initial,
                "seed": r.seed,
                "accepted": r.accepted,
                "config_vars": r.cv.to_json_dict(),
                "analytic_y2_z3_z1": list(r.analytic) if r.analytic is not None else None,
            }

        return {
            "h_range": list(self.h_range),
            "step": self.step,
            "trials": self.trials,
            "max_flips": self.max_flips,
            "base_seed": self.base_seed,
            "initial_config_vars": self.initial_cv.to_json_dict(),
            "rows": [row(r) for r in self.rows],
            "best": row(self.best),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "SweepReport":
        def row(d: dict) -> SweepRow:
            an = d["analytic_y2_z3_z1"]
            return SweepRow(
                h=d["h"], divergence=d["divergence"], f_final=d["F_final"], f_initial=d["F_initial"],
                seed=d["seed"], accepted=d["accepted"], cv=ConfigVars.from_dict(d["config_vars"]),
                analytic=tuple(an) if an is not None else None,
            )

        return cls(
            rows=tuple(row(d) for d in data["rows"]),
            best=row(data["best"]),
            initial_cv=ConfigVars.from_dict(data["initial_config_vars"]),
            h_range=tuple(data["h_range"]),
            step=data["step"],
            trials=data["trials"],
            max_flips=data["max_flips"],
            base_seed=data["base_seed"],
        )


def select_best(rows) -> SweepRow:
    """Smallest ``|D|``; ties go to the smaller h."""
    if not rows:
        raise InputError("empty sweep")
    return min(rows, key=lambda r: (abs(r.divergence), r.h))


def resolve_range(lat: Lattice, spec: SweepSpec) -> SweepSpec:
    """Fill in a missing h range from the pattern's interpretation variables."""
    if spec.h_lo is not None and spec.h_hi is not None:
        return spec
    est = estimate_h_range(count_config_vars(lat), spec.margin)
    for name, msg in est.errors.items():
        log.warning("auto-range: skipped %s (%s)", name, msg)
    lo = spec.h_lo if spec.h_lo is not None else max(est.h_lo, PHYSICAL_RANGE[0])
    hi = spec.h_hi if spec.h_hi is not None else min(est.h_hi, PHYSICAL_RANGE[1] - spec.step)
    return SweepSpec(round(lo, 10), round(hi, 10), spec.step, spec.eps0, spec.minimize_cfg, spec.margin, spec.divergence)


def run_sweep(lat: Lattice, spec: SweepSpec) -> SweepReport:
    """Minimize a fresh copy of ``lat`` at each grid h and pick the min-|D| row.

    Every h uses the same base seed, so the candidate swap sequence is shared
    across the grid and differences between rows come from h alone.
    """
    if spec.eps0 != 0.0:
        warnings.warn("eps0 is fixed to 0 for h sweeps; ignoring the supplied value", stacklevel=2)
    if lat.count_a() * 2 != lat.size:
        warnings.warn(f"pattern is not equiprobable (x1={lat.x1():.4f})", stacklevel=2)
    spec = resolve_range(lat, spec)
    hs = spec.grid()
    q = count_config_vars(lat)
    cfg = spec.minimize_cfg
    rows = []
    for h in hs:
        params = EnthalpyParams.from_h(h, eps0=0.0)
        res = best_of_trials(lat, params, cfg)
        try:
            analytic = interpretation_triple(h)
        except DomainError:
            analytic = None
        rows.append(SweepRow(
            h=h,
            divergence=cvm_divergence(q, res.cv, spec.divergence),
            f_final=res.trace.f_final,
            f_initial=free_energy(q, params),
            seed=res.trace.seed,
            accepted=res.trace.accepted_count,
            cv=res.cv,
            analytic=analytic,
        ))
    return SweepReport(
        rows=tuple(rows),
        best=select_best(rows),
        initial_cv=q,
        h_range=(spec.h_lo, spec.h_hi),
        step=spec.step,
        trials=cfg.trials,
        max_flips=cfg.max_flips,
        base_seed=cfg.seed,
    )


def emit_report(rep: SweepReport, fmt: str) -> bytes:
    """Serialize a report as ``csv`` (one row per h) or ``json`` (everything)."""
    if fmt == "json":
        return (json.dumps(rep.to_json_dict(), indent=2) + "\n").encode("utf-8")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in rep.rows:
            w.writerow([repr(r.h), repr(r.divergence), repr(r.f_final), repr(r.y2), repr(r.z1), repr(r.z3)])
        return buf.getvalue().encode("utf-8")
    raise InputError(f"unknown report format {fmt!r} (expected 'csv' or 'json')")


def load_report(data: bytes) -> SweepReport:
    return SweepReport.from_json_dict(json.loads(data))
