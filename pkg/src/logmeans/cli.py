"""Batch command line: ``logmeans <subcommand> [options]``.

Every subcommand writes one table (CSV by default, or JSON with
``--format json``) to ``--out`` or standard output. In exact mode rationals
are written as ``p/q`` strings. CSV output carries the table only; the
accompanying reports go to standard error as ``# key: value`` lines and are
embedded in JSON output.

Exit codes: 0 success, 2 usage error, 3 precondition violation, 4 size
above the exact-arithmetic ceiling.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

from . import generators
from .bridge import BridgeMatrix, bridge_row, cond_check, identity2_residuals, rowsum_scan
from .dyadic import DyadicNumber, gen_nested_unbounded_variation, is_nested
from .errors import IndexRangeError, SummabilityError
from .fourier import (
    FourierFunction,
    FunctionFormatError,
    partial_sums,
    subseq_log_means,
)
from .means import SeqPrefix, VaryingCesaroParams, WeightScheme, log_means, varying_cesaro_means
from .probes import default_checkpoints, divergence_probe
from .reciprocal import check_gamma_conclusions, check_hardy_hypotheses, reciprocal_coeffs
from .scalars import EXACT, FLOAT, Mode, format_scalar, parse_scalar

EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_CEILING = 4

WEIGHT_RULES = "logarithmic | ones | geometric:<r> | list:<q0,q1,...>"
ALPHA_RULES = "reciprocal | const:<a> | tetunashvili:<c>[:<m>]"

# largest size parameter accepted in exact mode, per subcommand
EXACT_CEILINGS = {
    "gamma": 2048,
    "bridge": 512,
    "scan-rowsums": 512,
    "cond-check": 4096,
    "logmean": 4096,
    "cesaro": 1024,
    "fourier-partial": 4096,
    "fourier-logmean": 4096,
    "subseq-logmean": 4096,
    "divergence-probe": 1024,
}

DEFAULT_MODE = {
    "divergence-probe": FLOAT,
    "fourier-partial": FLOAT,
    "fourier-logmean": FLOAT,
    "subseq-logmean": FLOAT,
}


class UsageError(Exception):
    pass


class CeilingError(Exception):
    pass


@dataclass
class Table:
    columns: List[str]
    rows: List[List[Any]] = field(default_factory=list)
    reports: Dict[str, Any] = field(default_factory=dict)


# ---------------------------------------------------------------------------
# Rule parsing
# ---------------------------------------------------------------------------


def parse_weights(spec: str, mode: Mode) -> WeightScheme:
    name, _, arg = spec.partition(":")
    try:
        if name == "logarithmic" and not arg:
            return WeightScheme.logarithmic()
        if name == "ones" and not arg:
            return WeightScheme.ones()
        if name == "geometric" and arg:
            return WeightScheme.geometric(parse_scalar(arg, mode))
        if name == "list" and arg:
            return WeightScheme.explicit([parse_scalar(v, mode) for v in arg.split(",")], name=spec)
    except ValueError as exc:
        raise UsageError(f"bad weight rule {spec!r}: {exc}") from None
    raise UsageError(f"unknown weight rule {spec!r}; choose from: {WEIGHT_RULES}")


def parse_alpha(spec: str, mode: Mode) -> VaryingCesaroParams:
    parts = spec.split(":")
    try:
        if parts == ["reciprocal"]:
            return VaryingCesaroParams.reciprocal()
        if parts[0] == "const" and len(parts) == 2:
            return VaryingCesaroParams.constant(parse_scalar(parts[1], mode))
        if parts[0] == "tetunashvili" and len(parts) in (2, 3):
            m = int(parts[2]) if len(parts) == 3 else 1
            return VaryingCesaroParams.tetunashvili(float(parts[1]), m)
    except ValueError as exc:
        raise UsageError(f"bad alpha rule {spec!r}: {exc}") from None
    raise UsageError(f"unknown alpha rule {spec!r}; choose from: {ALPHA_RULES}")


def parse_points(text: Optional[str], mode: Mode) -> List:
    if text is None:
        return [Fraction(i, 8) if mode is EXACT else i / 8 for i in range(8)]
    try:
        return [parse_scalar(v, mode) for v in text.split(",")]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def load_sequence(args, length: int, mode: Mode) -> SeqPrefix:
    if args.seq_file:
        try:
            raw = json.loads(Path(args.seq_file).read_text(), parse_float=str)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{args.seq_file}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        if not isinstance(raw, list):
            raise UsageError(f"{args.seq_file}: expected a JSON list")
        try:
            vals = [parse_scalar(str(v), mode) for v in raw]
        except ValueError as exc:
            raise UsageError(f"{args.seq_file}: {exc}") from None
        if len(vals) < length:
            raise IndexRangeError(f"sequence file has {len(vals)} entries, need {length}")
        return SeqPrefix(vals[:length], mode)
    gen = generators.GENERATORS.get(args.seq)
    if gen is None:
        raise UsageError(f"unknown sequence generator {args.seq!r}; choose from: {', '.join(generators.GENERATORS)}")
    return gen(length, mode, seed=args.seed)


def load_function(path: str, mode: Mode) -> FourierFunction:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return FourierFunction.loads(text, mode)
    except FunctionFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def ceiling(cmd: str, mode: Mode, size: int) -> None:
    limit = EXACT_CEILINGS.get(cmd)
    if mode is EXACT and limit is not None and size > limit:
        raise CeilingError(f"{cmd}: size {size} exceeds the exact-mode ceiling {limit}; rerun with --float")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def run_gamma(args, mode: Mode) -> Table:
    weights = parse_weights(args.weights, mode)
    ceiling("gamma", mode, args.n)
    coeffs = reciprocal_coeffs(weights, args.n, mode)
    concl = check_gamma_conclusions(coeffs)
    resid = coeffs.residuals()
    table = Table(["n", "gamma", "partial_sum", "convolution_residual"])
    for n, g in enumerate(coeffs.gamma):
        table.rows.append([n, g, concl.partial_sums[n], resid[n]])
    table.reports["conclusions"] = {
        "gamma0_is_one": concl.gamma0_is_one,
        "positive_indices": concl.positive_indices,
        "zero_indices": concl.zero_indices,
        "strictly_negative": concl.strictly_negative,
        "min_partial_sum": concl.min_partial_sum,
        "bound_holds": concl.bound_holds,
    }
    if args.n >= 2:
        hyp = check_hardy_hypotheses(weights, args.n, mode)
        table.reports["hypotheses"] = {
            "q0_is_one": hyp.q0_is_one,
            "positive": hyp.positive,
            "ratio_nondecreasing": hyp.ratio_nondecreasing,
            "ratio_drop_at": hyp.ratio_drop_at,
            "tail_ratio_qN_over_QN": hyp.tail_ratio,
        }
    return table


def run_bridge(args, mode: Mode) -> Table:
    weights = parse_weights(args.weights, mode)
    params = parse_alpha(args.alpha, mode)
    ceiling("bridge", mode, args.n)
    row = bridge_row(args.n, weights, params, mode=mode)
    Q = weights.Qs(args.n, mode)
    table = Table(["k", "b_n_minus_k", "Q_k", "t_k_n"])
    for k in range(args.n + 1):
        table.rows.append([k, row.b[args.n - k], Q[k], row.t[k]])
    table.reports.update(
        n=row.n,
        alpha_n=row.alpha_n,
        row_sum=row.row_sum,
        abs_row_sum=row.abs_row_sum,
        negative_indices=row.negative_indices,
    )
    return table


def _random_prefix(length: int, mode: Mode, seed: int) -> SeqPrefix:
    rng = random.Random(seed)
    if mode is EXACT:
        return generators.random_rational(length, rng)
    return SeqPrefix([rng.uniform(-1.0, 1.0) for _ in range(length)], FLOAT)


def run_scan(args, mode: Mode) -> Table:
    weights = parse_weights(args.weights, mode)
    params = parse_alpha(args.alpha, mode)
    ceiling("scan-rowsums", mode, args.nmax)
    bridge = BridgeMatrix(weights, params, mode)
    scan = rowsum_scan(args.nmax, weights, params, mode, bridge=bridge)
    prefix = _random_prefix(args.nmax + 1, mode, args.seed)
    resid = identity2_residuals(prefix, weights, params, args.nmax, bridge=bridge)
    table = Table(["n", "row_sum_minus_one", "abs_row_sum", "negatives", "identity2_residual"])
    for r in scan:
        table.rows.append([r.n, r.row_sum_minus_one, r.abs_row_sum, r.negatives, resid[r.n]])
    table.reports["max_abs_row_sum"] = max(r.abs_row_sum for r in scan)
    return table


def run_cond(args, mode: Mode) -> Table:
    weights = parse_weights(args.weights, mode)
    params = parse_alpha(args.alpha, mode)
    ceiling("cond-check", mode, args.n)
    rep = cond_check(weights, params, args.n, mode)
    table = Table(["j", "ratio", "bound_frozen", "holds_frozen", "bound_diagonal", "holds_diagonal"])
    for r in rep.rows:
        table.rows.append([r.j, r.ratio, r.bound_frozen, r.holds_frozen, r.bound_diagonal, r.holds_diagonal])
    table.reports.update(
        n=rep.n, alpha_n=rep.alpha_n, frozen_failures=rep.frozen_failures, diagonal_failures=rep.diagonal_failures
    )
    return table


def run_logmean(args, mode: Mode) -> Table:
    ceiling("logmean", mode, args.nmax)
    prefix = load_sequence(args, args.nmax, mode)
    table = Table(["n", "log_mean"])
    for n, v in enumerate(log_means(prefix, args.nmax), start=1):
        table.rows.append([n, v])
    return table


def run_cesaro(args, mode: Mode) -> Table:
    params = parse_alpha(args.alpha, mode)
    ceiling("cesaro", mode, args.nmax)
    prefix = load_sequence(args, args.nmax + 1, mode)
    table = Table(["n", "alpha_n", "sigma_n"])
    for n, v in varying_cesaro_means(prefix, params, args.nmax).items():
        table.rows.append([n, params.alpha(n, mode), v])
    return table


def run_fourier_partial(args, mode: Mode) -> Table:
    ceiling("fourier-partial", mode, args.n)
    f = load_function(args.f, mode)
    table = Table(["x", "n", "S_n"])
    for x in parse_points(args.x, mode):
        S = partial_sums(f, args.n + 1, x)
        for n, v in enumerate(S.values):
            table.rows.append([x, n, v])
    return table


def run_fourier(args, mode: Mode) -> Table:
    """``fourier-logmean``: rows ``(x, n, S_n, L_n)`` for ``n = 1..N``."""
    ceiling("fourier-logmean", mode, args.n)
    f = load_function(args.f, mode)
    table = Table(["x", "n", "S_n", "L_n"])
    for x in parse_points(args.x, mode):
        S = partial_sums(f, args.n + 1, x)
        L = log_means(S, args.n)
        for n in range(1, args.n + 1):
            table.rows.append([x, n, S[n], L[n - 1]])
    return table


def run_subseq(args, mode: Mode) -> Table:
    subseq = parse_int_list(args.subseq)
    N = args.N if args.N is not None else len(subseq)
    ceiling("subseq-logmean", mode, max(subseq))
    f = load_function(args.f, mode)
    table = Table(["x", "N", "norm", "value"])
    for x in parse_points(args.x, mode):
        table.rows.append([x, N, args.norm, subseq_log_means(f, subseq, N, x, args.norm)])
    return table


def run_dyadic(args, mode: Mode) -> Table:
    if args.gen is not None:
        values = gen_nested_unbounded_variation(args.gen)
    else:
        try:
            values = [int(v, 2) if args.binary else int(v, 0) for v in args.values]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if not values:
        raise UsageError("give numbers to analyse or --gen K")
    table = Table(["n", "binary", "variation", "spectrum"])
    for n in values:
        d = DyadicNumber.of(n)
        table.rows.append([n, format(n, "b"), d.variation, ";".join(map(str, d.spectrum))])
    if len(values) >= 2 and (args.nested or args.gen is not None):
        check = is_nested(values)
        table.reports.update(nested=check.nested, first_violation=check.first_violation)
    return table


def run_divergence(args, mode: Mode) -> Table:
    """Rows ``(M, sup |L_n|, sup |sigma_n|)`` over checkpoints ``M``."""
    params = parse_alpha(args.alpha, mode)
    ceiling("divergence-probe", mode, args.nmax)
    if args.f:
        f = load_function(args.f, mode)
        x = parse_points(args.x, mode)[0] if args.x else parse_points("0", mode)[0]
        source = partial_sums(f, args.nmax + 1, x)
    else:
        source = load_sequence(args, args.nmax + 1, mode)
    cps = parse_int_list(args.checkpoints) if args.checkpoints else default_checkpoints(args.nmax)
    log_rows = {r.M: r for r in divergence_probe(source, "logarithmic", args.nmax, checkpoints=cps)}
    ces_rows = {r.M: r for r in divergence_probe(source, "varying-cesaro", args.nmax, params, checkpoints=cps)}
    table = Table(["M", "sup_abs_log_mean", "argmax_log", "sup_abs_cesaro", "argmax_cesaro"])
    for M in sorted(set(log_rows) | set(ces_rows)):
        lr, cr = log_rows.get(M), ces_rows.get(M)
        table.rows.append(
            [M, lr and lr.running_sup, lr and lr.argmax, cr and cr.running_sup, cr and cr.argmax]
        )
    table.reports.update(alpha=params.name, sup_input=max(abs(v) for v in source.values))
    return table


COMMANDS = {
    "gamma": run_gamma,
    "bridge": run_bridge,
    "scan-rowsums": run_scan,
    "cond-check": run_cond,
    "logmean": run_logmean,
    "cesaro": run_cesaro,
    "fourier-partial": run_fourier_partial,
    "fourier-logmean": run_fourier,
    "subseq-logmean": run_subseq,
    "dyadic": run_dyadic,
    "divergence-probe": run_divergence,
}


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------


def _json_value(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {k: _json_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    if hasattr(v, "item"):  # numpy scalar
        return v.item()
    return v


def _csv_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (list, tuple)):
        return ";".join(_csv_value(x) for x in v)
    if hasattr(v, "item"):
        v = v.item()
    return format_scalar(v)


def render(cmd: str, table: Table, fmt: str) -> str:
    if fmt == "json":
        doc = {
            "command": cmd,
            "columns": table.columns,
            "rows": [[_json_value(v) for v in row] for row in table.rows],
            "reports": _json_value(table.reports),
        }
        return json.dumps(doc, indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(table.columns)
    for row in table.rows:
        w.writerow([_csv_value(v) for v in row])
    return buf.getvalue()


def _report_lines(reports: Dict[str, Any], prefix: str = "") -> List[str]:
    lines = []
    for k, v in reports.items():
        if isinstance(v, dict):
            lines.extend(_report_lines(v, prefix + k + "."))
        else:
            lines.append(f"# {prefix}{k}: {_csv_value(v)}")
    return lines


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    m = common.add_mutually_exclusive_group()
    m.add_argument("--exact", dest="mode", action="store_const", const=EXACT, help="rational arithmetic")
    m.add_argument("--float", dest="mode", action="store_const", const=FLOAT, help="double precision")
    common.add_argument("--seed", type=int, default=0, help="seed for random prefixes (default 0)")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    weights = argparse.ArgumentParser(add_help=False)
    weights.add_argument("--weights", default="logarithmic", help=WEIGHT_RULES)

    def alpha(default):
        p = argparse.ArgumentParser(add_help=False)
        p.add_argument("--alpha", default=default, help=ALPHA_RULES)
        return p

    seq = argparse.ArgumentParser(add_help=False)
    seq.add_argument("--seq", default="linear", help="generator: " + ", ".join(generators.GENERATORS))
    seq.add_argument("--seq-file", help="JSON list of sequence values (overrides --seq)")

    func = argparse.ArgumentParser(add_help=False)
    func.add_argument("--f", required=True, help="function file (JSON)")
    func.add_argument("--x", help="comma-separated evaluation points in [0, 1) (default: k/8)")

    parser = argparse.ArgumentParser(prog="logmeans", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("gamma", parents=[common, weights], help="reciprocal-series coefficients")
    p.add_argument("--n", type=int, default=16)
    p = sub.add_parser("bridge", parents=[common, weights, alpha("reciprocal")], help="one bridge-matrix row")
    p.add_argument("--n", type=int, required=True)
    p = sub.add_parser("scan-rowsums", parents=[common, weights, alpha("reciprocal")], help="bridge row diagnostics")
    p.add_argument("--nmax", type=int, required=True)
    p = sub.add_parser("cond-check", parents=[common, weights, alpha("reciprocal")], help="ratio condition per index")
    p.add_argument("--n", type=int, required=True)
    p = sub.add_parser("logmean", parents=[common, seq], help="logarithmic means of a sequence")
    p.add_argument("--nmax", type=int, default=64)
    p = sub.add_parser("cesaro", parents=[common, seq, alpha("reciprocal")], help="varying-order Cesaro means")
    p.add_argument("--nmax", type=int, default=64)
    p = sub.add_parser("fourier-partial", parents=[common, func], help="partial sums S_0..S_n")
    p.add_argument("--n", type=int, required=True)
    p = sub.add_parser("fourier-logmean", parents=[common, func], help="logarithmic means of partial sums")
    p.add_argument("--n", type=int, required=True)
    p = sub.add_parser("subseq-logmean", parents=[common, func], help="logarithmic means along a subsequence")
    p.add_argument("--subseq", required=True, help="comma-separated increasing indices")
    p.add_argument("--N", type=int)
    p.add_argument("--norm", choices=("harmonic", "ln"), default="harmonic")
    p = sub.add_parser("dyadic", parents=[common], help="binary coefficients, variation, spectrum")
    p.add_argument("values", nargs="*", help="numbers (decimal, or 0b.. / 0x..)")
    p.add_argument("--binary", action="store_true", help="read values as binary digit strings")
    p.add_argument("--gen", type=int, metavar="K", help="use the nested sequence 1, 5, 21, ... of length K")
    p.add_argument("--nested", action="store_true", help="check the values for nested spectra")
    p = sub.add_parser("divergence-probe", parents=[common, seq, alpha("tetunashvili:0.6")], help="running suprema")
    p.add_argument("--nmax", type=int, default=1024)
    p.add_argument("--checkpoints", help="comma-separated checkpoints (default: powers of two and nmax)")
    p.add_argument("--f", help="function file; partial sums at the first --x point replace --seq")
    p.add_argument("--x", help="evaluation point for --f (default 0)")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cmd = args.command
    mode = args.mode or DEFAULT_MODE.get(cmd, EXACT)
    try:
        table = COMMANDS[cmd](args, mode)
    except UsageError as exc:
        print(f"logmeans {cmd}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CeilingError as exc:
        print(f"logmeans {exc}", file=sys.stderr)
        return EXIT_CEILING
    except SummabilityError as exc:
        print(f"logmeans {cmd}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    text = render(cmd, table, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.format == "csv":
        for line in _report_lines(table.reports):
            print(line, file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
