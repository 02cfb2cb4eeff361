"""Command-line interface.

Machine-readable output goes to stdout, diagnostics to stderr. Exit codes:
0 success, 2 input error, 3 internal numeric failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

from . import __version__
from .evaluation import (
    DEFAULT_RATES,
    benchmark_directory,
    decision_rate_curve,
    profile_csv,
    run_synthetic_campaign,
    runtime_profile,
)
from .files import (
    PairFileError,
    curve_csv,
    format_bits,
    read_pair_file,
    read_results_csv,
    results_csv,
    write_ground_truth,
    write_pair_file,
)
from .inference import infer
from .sc import (
    DEFAULT_PRECISION,
    DiscreteSample,
    InputShapeError,
    histogram,
    ml_codelength,
    normalizing_sum,
)
from .synth import Family, campaign_pair

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3

DEFAULT_SEED = 20171


class NumericFailure(RuntimeError):
    pass


def _bits(value: float) -> str:
    if not math.isfinite(value):
        raise NumericFailure(f"non-finite code length {value!r}")
    return format_bits(value)


def _int_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def _float_list(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def _common() -> argparse.ArgumentParser:
    # SUPPRESS lets the flags appear before or after the subcommand
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help=f"master seed (default {DEFAULT_SEED})")
    p.add_argument("--precision", type=int, default=argparse.SUPPRESS,
                   help=f"normalizing-sum precision in digits (default {DEFAULT_PRECISION})")
    p.add_argument("--x", type=int, default=argparse.SUPPRESS, help="column index of X (default 0)")
    p.add_argument("--y", type=int, default=argparse.SUPPRESS, help="column index of Y (default 1)")
    p.add_argument("--header", action="store_true", default=argparse.SUPPRESS, help="skip the first data line")
    p.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                   help="fill elapsed_s in result tables (output is then not reproducible)")
    return p


GLOBAL_DEFAULTS = {"seed": DEFAULT_SEED, "precision": DEFAULT_PRECISION, "x": 0, "y": 1,
                   "header": False, "timing": False}


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="nmlcause", parents=[common],
        description="Infer cause and effect between two discrete variables by stochastic complexity.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("infer", parents=[common], help="infer the direction for one pair file")
    p.add_argument("file", type=Path)
    p.add_argument("--json", action="store_true", help="print the verdict as JSON")

    p = sub.add_parser("sc", parents=[common], help="stochastic complexity of one column")
    p.add_argument("file", type=Path)
    p.add_argument("--column", type=int, default=None, help="column to score (default: --x)")

    p = sub.add_parser("synth", parents=[common], help="write synthetic ANM pair files")
    p.add_argument("family", help=", ".join(f.value for f in Family))
    p.add_argument("--pairs", type=int, default=100)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--out", type=Path, required=True, help="output directory")

    p = sub.add_parser("campaign", parents=[common], help="generate and score pairs in-process; results CSV")
    p.add_argument("family", nargs="+", help="one or more families, or 'all'")
    p.add_argument("--pairs", type=int, default=100)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("bench", parents=[common], help="score a directory of pair files; results CSV")
    p.add_argument("dir", type=Path)
    p.add_argument("truth", type=Path, nargs="?", default=None,
                   help="pair_id<TAB>direction file (default: DIR/pairmeta.txt)")

    p = sub.add_parser("rate", parents=[common], help="decision-rate curve from a results CSV")
    p.add_argument("results", help="results CSV path, or - for stdin")
    p.add_argument("--rates", type=_float_list, default=list(DEFAULT_RATES))

    p = sub.add_parser("profile", parents=[common], help="time inference on uniform random pairs")
    p.add_argument("--n-grid", type=_int_list, default=[1000, 10000, 100000])
    p.add_argument("--m-grid", type=_int_list, default=[2, 20])
    p.add_argument("--repeats", type=int, default=3)
    return parser


def _load_pair(args):
    pf = read_pair_file(args.file, args.x, args.y, args.header)
    return DiscreteSample.from_tokens(pf.x), DiscreteSample.from_tokens(pf.y)


def cmd_infer(args, out) -> int:
    x, y = _load_pair(args)
    v = infer(x, y, args.precision)
    if args.json:
        payload = {"direction": v.direction.value, "s_xy": v.s_x_to_y, "s_yx": v.s_y_to_x,
                   "delta": v.delta, "confidence": v.confidence, "n": x.n,
                   "m_x": x.domain_size, "m_y": y.domain_size}
        out.write(json.dumps(payload, sort_keys=True) + "\n")
        return EXIT_OK
    out.write(f"direction: {v.direction.value}\n")
    out.write(f"s_xy: {_bits(v.s_x_to_y)} bits\n")
    out.write(f"s_yx: {_bits(v.s_y_to_x)} bits\n")
    out.write(f"delta: {_bits(v.delta)}\n")
    out.write(f"confidence: {_bits(v.confidence)}\n")
    return EXIT_OK


def cmd_sc(args, out) -> int:
    col = args.x if args.column is None else args.column
    pf = read_pair_file(args.file, col, col, args.header)
    s = DiscreteSample.from_tokens(pf.x)
    ml = ml_codelength(histogram(s))
    log_r = normalizing_sum(s.domain_size, s.n, args.precision).log2_R
    out.write(f"n: {s.n}\nm: {s.domain_size}\n")
    out.write(f"ml_bits: {_bits(ml)}\nlog2_R: {_bits(log_r)}\nsc_bits: {_bits(ml + log_r)}\n")
    return EXIT_OK


def cmd_synth(args, out) -> int:
    family = Family.parse(args.family)
    try:
        args.out.mkdir(parents=True, exist_ok=True)
        truth = {}
        manifest = ["pair_id\tground_truth\tseed\tt\tcause_class"]
        for i in range(args.pairs):
            rec = campaign_pair(family, args.n, args.seed, i)
            pid = f"{family.value}-{i:04d}"
            write_pair_file(args.out / f"{pid}.txt", rec.raw_x.tolist(), rec.raw_y.tolist())
            truth[pid] = rec.ground_truth
            manifest.append(f"{pid}\t{rec.ground_truth.value}\t{rec.seed}\t{rec.anm.t}\t{rec.cause_class.describe()}")
        write_ground_truth(args.out / "truth.tsv", truth)
        (args.out / "manifest.tsv").write_text("\n".join(manifest) + "\n", encoding="utf-8")
    except OSError as exc:
        raise PairFileError(f"cannot write to {args.out}: {exc.strerror or exc}") from exc
    out.write(f"wrote {args.pairs} pairs to {args.out}\n")
    return EXIT_OK


def cmd_campaign(args, out) -> int:
    families = list(Family) if args.family == ["all"] else [Family.parse(f) for f in args.family]
    results = []
    for fam in families:
        results.extend(run_synthetic_campaign(fam, args.pairs, args.n, args.seed, args.precision,
                                              workers=args.workers, timing=args.timing))
    out.write(results_csv(results, timing=args.timing))
    return EXIT_OK


def cmd_bench(args, out) -> int:
    if not args.dir.is_dir():
        raise PairFileError(f"{args.dir}: not a directory")
    try:
        run = benchmark_directory(args.dir, args.truth, precision_digits=args.precision,
                                  column_x=args.x, column_y=args.y, header=args.header, timing=args.timing)
    except OSError as exc:
        raise PairFileError(str(exc)) from exc
    for pid, reason in run.skipped:
        print(f"skipped {pid}: {reason}", file=sys.stderr)
    if not run.results:
        raise PairFileError("no pairs scored")
    out.write(results_csv(run.results, timing=args.timing))
    return EXIT_OK


def cmd_rate(args, out) -> int:
    text = sys.stdin.read() if args.results == "-" else Path(args.results).read_text(encoding="utf-8")
    curve = decision_rate_curve(read_results_csv(text), args.rates)
    out.write(curve_csv(curve))
    return EXIT_OK


def cmd_profile(args, out) -> int:
    rows = runtime_profile(args.n_grid, args.m_grid, args.seed, args.repeats, args.precision)
    out.write(profile_csv(rows, timing=True))
    return EXIT_OK


COMMANDS = {
    "infer": cmd_infer, "sc": cmd_sc, "synth": cmd_synth, "campaign": cmd_campaign,
    "bench": cmd_bench, "rate": cmd_rate, "profile": cmd_profile,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    for key, val in GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, val)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return COMMANDS[args.command](args, out)
    except NumericFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (PairFileError, InputShapeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (FloatingPointError, OverflowError, ArithmeticError) as exc:
        print(f"error: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
