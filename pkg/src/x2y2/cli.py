"""Command-line front end.

Subcommands: rrho, rrk, cmx, compare, wave, moments.  Exit codes are 0 on
success, 1 when a solver fails and 2 for usage errors.
"""

import argparse
from concurrent.futures import ProcessPoolExecutor
from dataclasses import fields
from fractions import Fraction
import json
import logging
import os
import sys

from x2y2 import config as cfg
from x2y2.cmx import cmx_energy
from x2y2.errors import (
    ContractViolation,
    EmptyBlockError,
    NonConvergenceError,
    NotPositiveDefiniteError,
)
from x2y2.moments import fraction_str, moments
from x2y2.reference import REFERENCE, half_ulp, split_label, states_per_species
from x2y2.rrho import convergence_scan, settled_digits, solve_block
from x2y2.rrk import rrk_scan
from x2y2.wavefield import evaluate_state, export_grid

log = logging.getLogger("x2y2")

CLI_SPECIES = ("A1", "A2", "B1", "B2", "E", "Ex", "Ey")
DEGENERACY_TOL = 1e-8
RRK_TABLE_STATES = 3


class UsageError(Exception):
    pass


def _num(x):
    """Round to 12 significant digits for stable output."""
    return None if x is None else float(f"{float(x):.12g}")


def dump_json(obj):
    return json.dumps(obj, indent=2) + "\n"


def _components(species):
    return ("Ex", "Ey") if species == "E" else (species,)


def _label(species, i):
    return f"{i + 1}{'E' if species in ('E', 'Ex', 'Ey') else species}"


def _check_degenerate(vals_x, vals_y, what):
    diff = max((abs(float(a) - float(b)) for a, b in zip(vals_x, vals_y)), default=0.0)
    if diff > DEGENERACY_TOL:
        log.warning("%s: Ex and Ey differ by %.3g (> %g)", what, diff, DEGENERACY_TOL)
    return diff


def _merge(args, conf_cls):
    """Flags beat the config file, which beats the dataclass defaults."""
    from_file = cfg.read_config_file(args.config) if getattr(args, "config", None) else {}
    conf = conf_cls()
    for f in fields(conf_cls):
        val = getattr(args, f.name, None)
        if val is None and f.name in from_file:
            val = _coerce(f.name, from_file[f.name], f.type)
        if val is not None:
            setattr(conf, f.name, val)
    for key in ("species", "format", "out"):
        if getattr(args, key, None) is None and key in from_file:
            setattr(args, key, from_file[key])
    return conf


def _coerce(name, text, typ):
    try:
        if typ in (int, "int"):
            return int(text)
        if typ in (float, "float"):
            return float(text)
        if typ in (Fraction, "Fraction"):
            return Fraction(text)
        if typ in (tuple, "tuple"):
            return tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad value for {name}: {text!r}") from exc
    return text


def _rational(text):
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected a rational like 3/4, got {text!r}") from exc
    if q <= 0:
        raise argparse.ArgumentTypeError("a must be positive")
    return q


def _int_list(text):
    try:
        vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc
    return tuple(vals)


def _species_list(text):
    vals = [v.strip() for v in text.split(",") if v.strip()]
    bad = [v for v in vals if v not in CLI_SPECIES]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown species {bad}")
    return vals


def _require_species(args):
    if args.species is None:
        raise UsageError("--species is required")
    if args.species not in CLI_SPECIES:
        raise UsageError(f"unknown species {args.species!r}; choose from {', '.join(CLI_SPECIES)}")


def _emit(text, out, binary=False):
    path = cfg.resolve_output(out)
    if path is None:
        if binary:
            sys.stdout.buffer.write(text)
            sys.stdout.flush()
        else:
            sys.stdout.write(text)
        return
    mode = "wb" if binary else "w"
    with open(path, mode) as fh:
        fh.write(text)
    log.info("wrote %s", path)


# ---------------------------------------------------------------- rrho

def cmd_rrho(args):
    conf = _merge(args, cfg.RRHOConfig)
    _require_species(args)
    fmt = args.format or "json"
    per_comp = {}
    for comp in _components(args.species):
        if args.scan is not None:
            grid = conf.scan if args.scan == "default" else args.scan
            table = convergence_scan(comp, grid, conf.states, conf.omega)
            per_comp[comp] = (table.best, table.all_monotone, table)
        else:
            res = solve_block(comp, conf.nmax, conf.states, conf.omega, want_vectors=False)
            per_comp[comp] = (res, True, None)
    if args.species == "E":
        _check_degenerate(per_comp["Ex"][0].eigenvalues, per_comp["Ey"][0].eigenvalues, "rrho")
    res, monotone, table = per_comp[_components(args.species)[0]]
    doc = {
        "method": "RRHO",
        "species": args.species,
        "nmax": res.size_param,
        "dimension": res.dimension,
        "eigenvalues": [_num(x) for x in res.eigenvalues],
        "settled_digits": list(res.settled_digits),
        "monotone": monotone,
    }
    if table is not None:
        doc["scan"] = [
            {"nmax": r.size_param, "dimension": r.dimension, "eigenvalues": [_num(x) for x in r.eigenvalues]}
            for r in table.results
        ]
        doc["steps_monotone"] = table.monotone
    if fmt == "csv":
        lines = ["state,label,eigenvalue,settled_digits"]
        for i, e in enumerate(res.eigenvalues):
            sd = res.settled_digits[i] if i < len(res.settled_digits) else ""
            lines.append(f"{i + 1},{_label(args.species, i)},{e:.12g},{sd}")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(dump_json(doc), args.out)
    return 0


# ---------------------------------------------------------------- rrk / cmx

def _rrk_doc(species, conf, states):
    scans = {c: rrk_scan(c, conf.a, range(1, conf.order + 1), conf.digits, k=states)
             for c in _components(species)}
    if species == "E":
        _check_degenerate(scans["Ex"].results[-1].eigenvalues, scans["Ey"].results[-1].eigenvalues, "rrk")
    table = scans[_components(species)[0]]
    last = table.results[-1]
    if last.flags["truncated"] or last.size_param < conf.order:
        log.warning("rrk: overlap not positive definite beyond K = %d at %d digits", last.size_param, conf.digits)
    return {
        "method": "RRK",
        "species": species,
        "a": fraction_str(conf.a),
        "digits": conf.digits,
        "order": conf.order,
        "usable_order": last.size_param,
        "sequence": [{"order": r.size_param, "eigenvalues": [_num(x) for x in r.eigenvalues]}
                     for r in table.results],
        "accepted": _num(last.eigenvalues[0]),
        "monotone": table.all_monotone,
    }


def cmd_rrk(args):
    conf = _merge(args, cfg.RRKConfig)
    _require_species(args)
    _emit(dump_json(_rrk_doc(args.species, conf, args.states or 1)), args.out)
    return 0


def _cmx_doc(species, conf):
    runs = {c: cmx_energy(c, conf.a, conf.order, conf.digits) for c in _components(species)}
    if species == "E":
        ex, ey = runs["Ex"], runs["Ey"]
        _check_degenerate([e for e in ex.estimates if e is not None],
                          [e for e in ey.estimates if e is not None], "cmx")
    run = runs[_components(species)[0]]
    for m, why in run.failures.items():
        log.warning("cmx: order %d unavailable (%s); largest usable order %d", m, why, run.available)
    return {
        "method": "CMX",
        "species": species,
        "a": fraction_str(conf.a),
        "digits": conf.digits,
        "order": conf.order,
        "available_order": run.available,
        "sequence": [{"order": m + 1, "value": _num(e)} for m, e in enumerate(run.estimates)],
        "accepted": _num(run.accepted),
    }


def cmd_cmx(args):
    conf = _merge(args, cfg.CMXConfig)
    _require_species(args)
    _emit(dump_json(_cmx_doc(args.species, conf)), args.out)
    return 0


# ---------------------------------------------------------------- compare

def _job(kind, species, conf, nstates):
    """One independent solve, run in a worker process."""
    comp = _components(species)[0]
    if kind == "RRHO":
        vals = solve_block(comp, conf.nmax, nstates, want_vectors=False).eigenvalues
        if species == "E":
            other = solve_block("Ey", conf.nmax, nstates, want_vectors=False).eigenvalues
            _check_degenerate(vals, other, "compare")
        return [float(v) for v in vals]
    if kind == "RRK":
        from x2y2.rrk import rrk_spectrum
        res = rrk_spectrum(comp, conf.a, conf.rrk_order, conf.digits)
        return [float(v) for v in res.eigenvalues[:nstates]]
    run = cmx_energy(comp, conf.a, conf.cmx_order, conf.digits)
    return [] if run.accepted is None else [float(run.accepted)]


def compare_table(species_list, conf, jobs=1):
    counts = states_per_species()
    tasks = []
    for sp in species_list:
        n = counts.get(sp, 1)
        tasks += [("RRHO", sp, conf, n), ("RRK", sp, conf, min(n, RRK_TABLE_STATES)), ("CMX", sp, conf, 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outs = list(pool.map(_job, *zip(*tasks)))
    else:
        outs = [_job(*t) for t in tasks]
    found = {(t[0], t[1]): o for t, o in zip(tasks, outs)}
    rows = []
    for sp in species_list:
        for i, e in enumerate(found[("RRHO", sp)]):
            label = _label(sp, i)
            rrk = found[("RRK", sp)]
            cmx = found[("CMX", sp)]
            row = {
                "state": label,
                "RRHO": _num(e),
                "RRK": _num(rrk[i]) if i < len(rrk) else None,
                "CMX": _num(cmx[i]) if i < len(cmx) else None,
            }
            for a, b in (("RRK", "RRHO"), ("CMX", "RRHO"), ("CMX", "RRK")):
                row[f"|{a}-{b}|"] = (_num(abs(row[a] - row[b]))
                                     if row[a] is not None and row[b] is not None else None)
            ref = REFERENCE.get(label)
            if ref is not None:
                row["reference"] = dict(zip(("RRHO", "RRK", "CMX"), ref))
                row["within_printed"] = {
                    m: (abs(row[m] - float(p)) <= half_ulp(p) if row[m] is not None else None)
                    for m, p in row["reference"].items() if p is not None
                }
            rows.append(row)
    rows.sort(key=lambda r: r["RRHO"])
    return rows


def _text_table(rows):
    head = f"{'State':<6} {'RRHO':>16} {'RRK':>16} {'CMX':>16} {'|RRK-RRHO|':>12} {'|CMX-RRHO|':>12}"
    lines = [head, "-" * len(head)]

    def cell(v, w, f):
        return f"{'':>{w}}" if v is None else f"{v:>{w}{f}}"

    for r in rows:
        lines.append(
            f"{r['state']:<6} {cell(r['RRHO'], 16, '.11f')} {cell(r['RRK'], 16, '.9f')} "
            f"{cell(r['CMX'], 16, '.7f')} {cell(r['|RRK-RRHO|'], 12, '.2e')} {cell(r['|CMX-RRHO|'], 12, '.2e')}"
        )
    return "\n".join(lines) + "\n"


def cmd_compare(args):
    conf = _merge(args, cfg.CompareConfig)
    species = args.species or ["A1", "E", "B1", "B2", "A2"]
    if isinstance(species, str):
        species = _species_list(species)
    jobs = args.jobs if args.jobs is not None else min(len(species) * 3, os.cpu_count() or 1)
    rows = compare_table(species, conf, jobs)
    if (args.format or "json") == "text":
        _emit(_text_table(rows), args.out)
    else:
        doc = {
            "nmax": conf.nmax,
            "rrk_order": conf.rrk_order,
            "cmx_order": conf.cmx_order,
            "digits": conf.digits,
            "a": fraction_str(conf.a),
            "rows": rows,
        }
        _emit(dump_json(doc), args.out)
    return 0


# ---------------------------------------------------------------- wave

def _wave_one(comp, conf, fmt):
    idx = conf.state - 1
    res = solve_block(comp, conf.nmax, conf.state)
    if idx >= len(res.eigenvalues):
        raise ContractViolation(f"block {comp} at nmax={conf.nmax} has only {len(res.eigenvalues)} states")
    coarser = conf.nmax - 8
    try:
        prev = solve_block(comp, coarser, conf.state, want_vectors=False).eigenvalues if coarser >= 0 else []
    except EmptyBlockError:
        prev = []
    digits = settled_digits(prev[idx], res.eigenvalues[idx]) if idx < len(prev) else 0
    if digits < 3:
        log.warning("wave: state %s looks unconverged (%d settled digits at nmax=%d)",
                    _label(comp, idx), digits, conf.nmax)
    grid = evaluate_state(res, idx, conf.L, conf.N)
    return export_grid(grid, fmt)


def cmd_wave(args):
    conf = _merge(args, cfg.WaveConfig)
    _require_species(args)
    fmt = args.format or "csv"
    if fmt not in ("csv", "json"):
        raise UsageError(f"unsupported format {fmt!r}")
    if conf.state < 1:
        raise UsageError("--state is 1-based")
    if args.species != "E":
        _emit(_wave_one(args.species, conf, fmt), args.out, binary=True)
        return 0
    if args.out:
        root, ext = os.path.splitext(args.out)
        ext = ext or f".{fmt}"
    else:
        root, ext = f"wave_{conf.state}E", f".{fmt}"
    for comp in ("Ex", "Ey"):
        _emit(_wave_one(comp, conf, fmt), f"{root}_{comp}{ext}", binary=True)
    return 0


# ---------------------------------------------------------------- moments

def cmd_moments(args):
    _merge(args, cfg.RRKConfig)
    _require_species(args)
    comp = _components(args.species)[0]
    table = moments(comp, args.a or Fraction(1), args.J)
    _emit(table.to_json() + "\n", args.out)
    return 0


# ---------------------------------------------------------------- parser

def build_parser():
    p = argparse.ArgumentParser(prog="x2y2", description="Eigenvalues of H = p_x^2 + p_y^2 + x^2 y^2")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, species=True):
        sp.add_argument("--config", help="key=value file mirroring the flags")
        sp.add_argument("--out", help=f"output file (relative paths go to ${cfg.OUTPUT_DIR_ENV} if set)")
        if species:
            sp.add_argument("--species", choices=CLI_SPECIES)

    r = sub.add_parser("rrho", help="Rayleigh-Ritz in the oscillator basis")
    common(r)
    r.add_argument("--nmax", type=int)
    r.add_argument("--states", type=int)
    r.add_argument("--omega", type=float)
    r.add_argument("--scan", nargs="?", const="default", type=_int_list,
                   help="comma-separated nmax grid (default 8,16,...,88)")
    r.add_argument("--format", choices=("json", "csv"))
    r.set_defaults(func=cmd_rrho)

    for name, func, help_ in (("rrk", cmd_rrk, "Krylov-space Rayleigh-Ritz"),
                              ("cmx", cmd_cmx, "connected-moments expansion")):
        s = sub.add_parser(name, help=help_)
        common(s)
        s.add_argument("--a", type=_rational, help="Gaussian exponent, e.g. 1 or 3/4")
        s.add_argument("--order", type=int)
        s.add_argument("--digits", type=int)
        if name == "rrk":
            s.add_argument("--states", type=int)
        s.set_defaults(func=func)

    c = sub.add_parser("compare", help="three-method comparison table")
    common(c, species=False)
    c.add_argument("--species", type=_species_list, help="comma-separated, default A1,E,B1,B2,A2")
    c.add_argument("--nmax", type=int)
    c.add_argument("--rrk-order", dest="rrk_order", type=int)
    c.add_argument("--cmx-order", dest="cmx_order", type=int)
    c.add_argument("--digits", type=int)
    c.add_argument("--a", type=_rational)
    c.add_argument("--jobs", type=int)
    c.add_argument("--format", choices=("json", "text"))
    c.set_defaults(func=cmd_compare)

    w = sub.add_parser("wave", help="eigenfunction on a grid")
    common(w)
    w.add_argument("--state", type=int, help="1-based index within the species")
    w.add_argument("--nmax", type=int)
    w.add_argument("--L", dest="L", type=float)
    w.add_argument("--N", dest="N", type=int)
    w.add_argument("--format", choices=("csv", "json"))
    w.set_defaults(func=cmd_wave)

    m = sub.add_parser("moments", help="dump exact moments as JSON")
    common(m)
    m.add_argument("--a", type=_rational)
    m.add_argument("--J", type=int, default=10)
    m.set_defaults(func=cmd_moments)
    return p


def _setup_logging(verbose):
    # fresh handler per call so it binds the current sys.stderr
    for h in list(log.handlers):
        log.removeHandler(h)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    log.addHandler(handler)
    log.setLevel(logging.INFO if verbose else logging.WARNING)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    _setup_logging(args.verbose)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"x2y2: error: {exc}", file=sys.stderr)
        return 2
    except (EmptyBlockError, NonConvergenceError, NotPositiveDefiniteError, ContractViolation,
            ArithmeticError) as exc:
        print(f"x2y2: solver error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
