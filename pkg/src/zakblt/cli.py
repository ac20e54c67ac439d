"""Command-line front end.

Exit codes: 0 success, 1 validation or hypothesis failure (including a
failed ``verify``), 2 truncation in strict mode, 64 usage errors.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from contextlib import contextmanager

import numpy as np

from . import argument, blt, riesz, signals, zak
from .exceptions import HypothesisError, TruncationError, ZakBLTError
from .report import TAIL_HEADER, csv_line, csv_table, json_line, tail_rows
from .verification import run_suite

log = logging.getLogger("zakblt")

EXIT_OK, EXIT_FAIL, EXIT_TRUNCATION, EXIT_USAGE = 0, 1, 2, 64
BOOLEAN_KEYS = {"strict"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _int_list(text):
    """``"1,2,4"`` or ``"6-11"`` (inclusive range)."""
    out = []
    for part in str(text).split(","):
        part = part.strip()
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def _float_list(text):
    return [float(v) for v in str(text).split(",") if v.strip()]


def _add_common(p, generator=True):
    p.add_argument("--config", help="flat key=value file; flags override it")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--output", "-o", help="write here instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    if generator:
        p.add_argument("--generator", "-g", default="chi01", choices=signals.CATALOG)
        p.add_argument("--kmax", type=int, default=10, help="partial-sum cutoff of the counterexample")
        p.add_argument("--T", type=int, default=None, help="window half-width")
        p.add_argument("--M", type=int, default=None, help="samples per unit interval")


def build_parser():
    parser = _Parser(prog="zakblt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    _add_common(sub.add_parser("catalog", help="list generator ids"), generator=False)

    p = sub.add_parser("zak", help="Zak transform on the fundamental domain")
    _add_common(p)
    p.add_argument("--mx", type=int, default=None)
    p.add_argument("--ny", type=int, default=None)

    p = sub.add_parser("bounds", help="Riesz bounds")
    _add_common(p)
    p.add_argument("--method", choices=("zak", "gram", "both"), default="zak")
    p.add_argument("--mx", type=int, default=256)
    p.add_argument("--ny", type=int, default=256)
    p.add_argument("--P", type=int, default=8)
    p.add_argument("--floor", type=float, default=riesz.DEFAULT_FLOOR)

    for name in ("sweep", "pq-sweep"):
        p = sub.add_parser(name, help="tail sweep over R x L")
        _add_common(p)
        p.add_argument("--R", type=_float_list, default=list(blt.DEFAULT_SWEEP))
        p.add_argument("--L", type=_float_list, default=list(blt.DEFAULT_SWEEP))
        p.add_argument("--strict", action="store_true")
        if name == "pq-sweep":
            p.add_argument("--p", type=float, default=1.5)

    p = sub.add_parser("argjump", help="lattice argument-jump witnesses")
    _add_common(p)
    p.add_argument("--K", type=_int_list, default=[8, 16, 32, 64])
    p.add_argument("--N", type=_int_list, default=[8, 16, 32, 64])
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--res", type=int, default=256, help="Zak grid size per side")
    p.add_argument("--floor", type=float, default=argument.DEFAULT_MODULUS_FLOOR)

    p = sub.add_parser("jumpset", help="measure of the jump set")
    _add_common(p)
    p.add_argument("--K", type=int, default=8)
    p.add_argument("--N", type=int, default=8)
    p.add_argument("--delta", type=float, default=0.5)
    p.add_argument("--res", type=int, default=256)

    p = sub.add_parser("prop41", help="tail and moment growth of the band-limited counterexample")
    _add_common(p, generator=False)
    p.add_argument("--kmax", type=int, default=14)
    p.add_argument("--n", type=_int_list, default=list(range(6, 12)))
    p.add_argument("--M", type=int, default=8)

    p = sub.add_parser("verify", help="run the identity suite")
    _add_common(p, generator=False)
    return parser, sub


def load_config(path):
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            values[key.replace("-", "_")] = value
    return values


def _apply_config(subparser, values):
    dests = {a.dest for a in subparser._actions}
    defaults = {}
    for key, value in values.items():
        if key not in dests or key == "config":
            continue
        if key in BOOLEAN_KEYS:
            defaults[key] = value.lower() in ("1", "true", "yes", "on")
        else:
            defaults[key] = value
    subparser.set_defaults(**defaults)


@contextmanager
def _sink(path):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh
    else:
        yield sys.stdout


def _generator(args):
    if args.generator in ("blt_counterexample", "sum_with_fourier"):
        return signals.make_generator(args.generator, kmax=args.kmax)
    return signals.make_generator(args.generator)


def _window(args, gen):
    T0, M0 = signals.default_window(gen)
    return args.T or T0, args.M or M0


def _emit_records(out, records, fmt, header=None):
    if fmt == "csv":
        # union of keys in first-seen order; absent fields stay empty
        keys = header or list(dict.fromkeys(k for r in records for k in r))
        out.write(csv_table(keys, [[r.get(k, "") for k in keys] for r in records]))
    else:
        for r in records:
            out.write(json_line(r) + "\n")


def cmd_catalog(args, out):
    for name in signals.CATALOG:
        out.write(name + "\n")


def cmd_zak(args, out):
    gen = _generator(args)
    T, M = _window(args, gen)
    grid = zak.zak_transform(signals.sample(gen, T, M), args.mx, args.ny)
    rows = zak.grid_to_rows(grid)
    if (args.format or "csv") == "csv":
        out.write("m,l,re,im\n")
        for row in rows:
            out.write(csv_line(row) + "\n")
    else:
        for m, l, re, im in rows:
            out.write(json_line({"m": m, "l": l, "re": re, "im": im}) + "\n")


def _bounds_record(gen, b, floor):
    rec = {"generator": gen.name, "A": b.A, "B": b.B, "method": b.method}
    rec.update(b.resolution)
    if b.argmin is not None:
        rec["argmin_x"], rec["argmin_y"] = b.argmin
    rec["is_riesz_basis"] = riesz.is_riesz_basis(b, floor)
    return rec


def cmd_bounds(args, out):
    gen = _generator(args)
    records = []
    if args.method in ("zak", "both"):
        T, M = _window(args, gen)
        M = max(M, args.mx)
        grid = zak.zak_transform(signals.sample(gen, T, M), args.mx, args.ny)
        records.append(_bounds_record(gen, riesz.bounds_from_zak(grid), args.floor))
    if args.method in ("gram", "both"):
        b = riesz.gram_bounds(gen, args.P, M=args.M)
        records.append(_bounds_record(gen, b, args.floor))
    _emit_records(out, records, args.format or "json")


def cmd_sweep(args, out):
    gen = _generator(args)
    reports, inf = blt.sweep(gen, args.R, args.L, args.T, args.M, args.strict)
    if (args.format or "csv") == "csv":
        out.write(csv_table(TAIL_HEADER, tail_rows(reports)))
    else:
        for r in reports:
            out.write(json_line(r.as_dict()) + "\n")
    log.info("inf_normalized=%s", format(inf, ".17g"))


def cmd_pq_sweep(args, out):
    gen = _generator(args)
    reports, inf = blt.pq_sweep(gen, args.p, args.R, args.L, args.T, args.M, args.strict)
    records = [r.as_dict() for r in reports]
    _emit_records(out, records, args.format or "csv")
    log.info("inf_normalized=%s", format(inf, ".17g"))


def _zak_grid(args, res):
    gen = _generator(args)
    T, M = _window(args, gen)
    return zak.zak_transform(signals.sample(gen, T, max(M, res)), res, res)


def cmd_argjump(args, out):
    grid = _zak_grid(args, args.res)
    rng = np.random.default_rng(args.seed)
    records = []
    for t in range(args.trials):
        K = int(rng.choice(args.K))
        N = int(rng.choice(args.N))
        (base,) = argument.random_bases(grid, K, N, 1, rng)
        w = argument.find_jump(grid, base, K, N, args.floor)
        records.append({"trial": t, "K": K, "N": N, "base_x": base[0], "base_y": base[1], **w.as_dict()})
    _emit_records(out, records, args.format or "json")


def cmd_jumpset(args, out):
    grid = _zak_grid(args, args.res)
    rec = {
        "generator": args.generator,
        "K": args.K,
        "N": args.N,
        "delta": args.delta,
        "measure": argument.jump_set_measure(grid, args.K, args.N, args.delta),
        "lower_bound": 1.0 / (args.K * args.N),
        "max_delta": argument.max_delta_for_measure(grid, args.K, args.N),
    }
    _emit_records(out, [rec], args.format or "json")


def cmd_prop41(args, out):
    rows = blt.prop41_check(args.kmax, args.n, args.M)
    _emit_records(out, [r.as_dict() for r in rows], args.format or "csv")
    log.info("summary %s", blt.prop41_summary(rows))


def cmd_verify(args, out):
    results = run_suite(args.seed)
    _emit_records(out, [r.as_dict() for r in results], args.format or "json")
    failed = [r for r in results if not r.passed]
    for r in failed:
        log.error("FAILED %s[%s] value=%r tolerance=%r", r.check, r.generator, r.value, r.tolerance)
    return EXIT_FAIL if failed else EXIT_OK


COMMANDS = {
    "catalog": cmd_catalog,
    "zak": cmd_zak,
    "bounds": cmd_bounds,
    "sweep": cmd_sweep,
    "pq-sweep": cmd_pq_sweep,
    "argjump": cmd_argjump,
    "jumpset": cmd_jumpset,
    "prop41": cmd_prop41,
    "verify": cmd_verify,
}


def run(argv) -> int:
    parser, sub = build_parser()
    try:
        pre = _Parser(add_help=False)
        pre.add_argument("command", nargs="?")
        pre.add_argument("--config")
        known, _ = pre.parse_known_args(argv)
        if known.config and known.command in sub.choices:
            _apply_config(sub.choices[known.command], load_config(known.config))
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("zakblt: error: a subcommand is required")
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"zakblt: cannot read config: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        with _sink(args.output) as out:
            code = COMMANDS[args.command](args, out)
    except TruncationError as exc:
        log.error("truncation: %s", exc)
        return EXIT_TRUNCATION
    except (HypothesisError, ZakBLTError) as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        return EXIT_FAIL
    return code or EXIT_OK


def main(argv=None):
    logging.basicConfig(level=logging.INFO, format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        code = run(sys.argv[1:] if argv is None else argv)
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = EXIT_OK
    sys.exit(code)


if __name__ == "__main__":
    main()
