"""Command-line entry point: ``cvm2d <subcommand> ...``.

Data goes to stdout (or ``--out``); diagnostics go to stderr. Exit codes: 0 ok,
2 usage error, 3 input/validation error, 4 numeric-domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import warnings

from cvm2d.analytic import analytic_config_vars, DELTA_ROOTS
from cvm2d.configvars import KEYS, check_equivalences, count_config_vars
from cvm2d.divergence import DivergenceOptions, cvm_divergence, cvm_divergence_terms
from cvm2d.errors import DomainError, InputError
from cvm2d.grid import (
    block_fixture,
    build_envelope,
    random_equiprobable,
    read_pattern,
    serialize_pattern,
    stripe_fixture,
)
from cvm2d.minimizer import DEFAULT_SEED, MinimizeConfig, best_of_trials
from cvm2d.sweep import SweepSpec, emit_report, run_sweep
from cvm2d.thermo import EnthalpyParams, entropy, free_energy

log = logging.getLogger("cvm2d")

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_DOMAIN = 0, 2, 3, 4


def _load(path):
    lat = read_pattern(path)
    if lat.rows == 2:
        log.warning("%s has only 2 rows; up and down neighbours coincide", path)
    return lat


def _write(data: str | bytes, out: str | None) -> None:
    if isinstance(data, str):
        data = data.encode("utf-8")
    if out is None or out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(out, "wb") as fh:
            fh.write(data)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_count(args) -> int:
    lat = _load(args.pattern)
    cv = count_config_vars(lat)
    report = check_equivalences(count_config_vars(lat, exact=True))
    out = {
        "shape": list(lat.shape),
        "config_vars": cv.to_json_dict(),
        "equiprobable": lat.count_a() * 2 == lat.size,
        "entropy": entropy(cv),
        "equivalences": report.to_json_dict(),
    }
    _write(_json(out), args.out)
    return EXIT_OK


def _float_range(lo: float, hi: float, step: float) -> list[float]:
    if not step > 0:
        raise InputError("step must be positive")
    if hi < lo:
        raise InputError(f"empty range [{lo}, {hi}]")
    n = int((hi - lo) / step + 1e-9) + 1
    return [round(lo + k * step, 10) for k in range(n)]


def cmd_analytic(args) -> int:
    hs = _float_range(args.h_lo, args.h_hi, args.step)
    for root in DELTA_ROOTS:
        if hs[0] <= root <= hs[-1]:
            raise DomainError(f"range [{hs[0]}, {hs[-1]}] contains the divergence root h={root:.4f} of delta(h)")
    rows = [(h, analytic_config_vars(h)) for h in hs]  # validate everything before writing
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["h"] + [k for k in KEYS if k not in ("x1", "x2")])
    for h, cv in rows:
        w.writerow([repr(h)] + [repr(float(getattr(cv, k))) for k in KEYS if k not in ("x1", "x2")])
    _write(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_gen_fixture(args) -> int:
    if args.rows % 2 or args.cols % 2:
        raise InputError(f"fixture dimensions must be even, got {args.rows}x{args.cols}")
    if args.kind == "stripe":
        lat = stripe_fixture(args.rows, args.cols)
    elif args.kind == "block":
        lat = block_fixture(args.rows, args.cols)
    else:
        lat = random_equiprobable(args.rows, args.cols, args.seed)
    _write(serialize_pattern(lat), args.out)
    return EXIT_OK


def cmd_envelope(args) -> int:
    env = build_envelope(_load(args.pattern))
    _write(serialize_pattern(env), args.out)
    return EXIT_OK


def _params(args) -> EnthalpyParams:
    return EnthalpyParams.from_h(args.h, eps0=args.eps0)


def cmd_minimize(args) -> int:
    lat = _load(args.pattern)
    params = _params(args)
    cfg = MinimizeConfig(args.flips, args.trials, args.seed, record_trace=args.trace_out is not None)
    res = best_of_trials(lat, params, cfg)
    _write(serialize_pattern(res.lattice), args.out)
    if args.cv_out:
        _write(_json({
            "h": args.h,
            "eps0": args.eps0,
            "seed": res.trace.seed,
            "rng": res.trace.rng,
            "F_initial": res.trace.f_initial,
            "F_final": res.trace.f_final,
            "accepted": res.trace.accepted_count,
            "config_vars": res.cv.to_json_dict(),
        }), args.cv_out)
    if args.trace_out:
        _write(res.trace.to_csv(), args.trace_out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    lat = _load(args.pattern)
    if args.auto_range:
        h_lo, h_hi = None, None
    else:
        if args.h_lo is None or args.h_hi is None:
            raise InputError("give --h-lo and --h-hi, or --auto-range")
        h_lo, h_hi = args.h_lo, args.h_hi
    fmt = args.format
    if fmt is None:
        fmt = "json" if (args.out or "").endswith(".json") else "csv"
    spec = SweepSpec(
        h_lo=h_lo, h_hi=h_hi, step=args.step, eps0=args.eps0,
        minimize_cfg=MinimizeConfig(args.flips, args.trials, args.seed, record_trace=False),
        margin=args.margin,
    )
    if fmt not in ("csv", "json"):
        raise InputError(f"unknown report format {fmt!r}")
    rep = run_sweep(lat, spec)
    _write(emit_report(rep, fmt), args.out)
    print(f"best h = {rep.best.h} (D = {rep.best.divergence:.6g})", file=sys.stderr)
    return EXIT_OK


def cmd_divergence(args) -> int:
    q = count_config_vars(_load(args.q))
    if args.p is not None:
        p = count_config_vars(_load(args.p))
    elif args.p_analytic is not None:
        p = analytic_config_vars(args.p_analytic)
    else:
        raise InputError("give --p PATTERN or --p-analytic H")
    opts = DivergenceOptions("strict_error" if args.strict else "epsilon_floor", args.floor)
    terms = cvm_divergence_terms(q, p, opts)
    _write(_json({
        "divergence": cvm_divergence(q, p, opts),
        "terms": {"y": terms.y, "w": terms.w, "x": terms.x, "z": terms.z},
    }), args.out)
    return EXIT_OK


def cmd_energy(args) -> int:
    cv = count_config_vars(_load(args.pattern))
    params = _params(args)
    _write(_json({"h": args.h, "eps0": args.eps0, "F": free_energy(cv, params), "S": entropy(cv)}), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cvm2d", description="2-D cluster variation method toolkit")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def out_arg(p):
        p.add_argument("--out", "-o", default=None, help="output file (default stdout)")

    p = sub.add_parser("count", help="configuration variables of a pattern file")
    p.add_argument("pattern")
    out_arg(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("analytic", help="equilibrium curves as CSV")
    p.add_argument("--h-lo", type=float, required=True)
    p.add_argument("--h-hi", type=float, default=None)
    p.add_argument("--step", type=float, default=0.05)
    out_arg(p)
    p.set_defaults(func=cmd_analytic)

    p = sub.add_parser("gen-fixture", help="write a stripe/block/random test pattern")
    p.add_argument("kind", choices=("stripe", "block", "random"))
    p.add_argument("--rows", type=int, default=16)
    p.add_argument("--cols", type=int, default=16)
    p.add_argument("--seed", type=int, default=42)
    out_arg(p)
    p.set_defaults(func=cmd_gen_fixture)

    p = sub.add_parser("envelope", help="mirror-pad a core pattern to twice its size")
    p.add_argument("pattern")
    out_arg(p)
    p.set_defaults(func=cmd_envelope)

    def energy_args(p):
        p.add_argument("--h", type=float, required=True)
        p.add_argument("--eps0", type=float, default=0.0)

    p = sub.add_parser("minimize", help="pair-flip descent at fixed h")
    p.add_argument("--pattern", required=True)
    energy_args(p)
    p.add_argument("--flips", type=int, default=100)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--cv-out", default=None, help="write final configuration variables as JSON")
    p.add_argument("--trace-out", default=None, help="write step trace as CSV")
    out_arg(p)
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("energy", help="free energy and entropy of a pattern at h")
    p.add_argument("pattern")
    energy_args(p)
    out_arg(p)
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("sweep", help="best-fit h search")
    p.add_argument("--pattern", required=True)
    p.add_argument("--h-lo", type=float, default=None)
    p.add_argument("--h-hi", type=float, default=None)
    p.add_argument("--auto-range", action="store_true", help="estimate the h range from the pattern")
    p.add_argument("--margin", type=float, default=0.15)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--trials", type=int, default=4)
    p.add_argument("--flips", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--eps0", type=float, default=0.0)
    p.add_argument("--format", choices=("csv", "json"), default=None,
                   help="report format (default: from --out suffix, else csv)")
    out_arg(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("divergence", help="configuration-variable divergence of p from q")
    p.add_argument("--q", required=True, help="representation pattern file")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--p", default=None, help="model pattern file")
    grp.add_argument("--p-analytic", type=float, default=None, metavar="H", help="use the equilibrium solution at H")
    p.add_argument("--strict", action="store_true", help="fail on zero model probabilities")
    p.add_argument("--floor", type=float, default=1e-9)
    out_arg(p)
    p.set_defaults(func=cmd_divergence)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)  # exits with 2 on usage errors
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="cvm2d: %(levelname)s: %(message)s", stream=sys.stderr)
    if getattr(args, "h_hi", "unset") is None and args.command == "analytic":
        args.h_hi = args.h_lo
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("always")
            warnings.showwarning = lambda msg, *a, **k: print(f"cvm2d: warning: {msg}", file=sys.stderr)
            return args.func(args)
    except DomainError as exc:
        print(f"cvm2d: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (InputError, OSError) as exc:
        print(f"cvm2d: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
