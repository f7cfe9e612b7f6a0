"""Command-line interface: ``mincount <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import os
import sys
from contextlib import contextmanager
from typing import Iterable, Optional

from .alphabet import Alphabet, rank_phi
from .errors import BudgetExceededError, InvalidInputError, UnsupportedOperationError
from .oracle import brute_force_partition
from .picount import CSV_HEADER, evaluate, fmt_float, pi_partition, regress_slope, result_row
from .preprocess import build_tables
from .scan import COMPARE_HEADER, EmpiricalPartition, ScanConfig, compare, scan_files

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
THREADS_ENV = "MINCOUNT_THREADS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--alphabet", default="ACGT", help="letters from smallest to largest (default ACGT)")
    p.add_argument("--complement", default="AT,CG", help="complement pairs, or 'none' (default AT,CG)")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--format", choices=("csv", "json-lines"), default="csv")
    p.add_argument("--threads", type=int, default=None,
                   help=f"worker processes (default ${THREADS_ENV} or 1)")
    p.add_argument("--force", action="store_true", help="ignore the brute-force size budget")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="mincount", description="Count k-mers per lexicographic minimizer.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", parents=[common], help="exact count and bounds for one minimizer")
    p.add_argument("-w", "--word", required=True)
    p.add_argument("-k", type=int, required=True)

    p = sub.add_parser("bounds", parents=[common], help="lower and upper bounds for one minimizer")
    p.add_argument("-w", "--word", required=True)
    p.add_argument("-k", type=int, required=True)

    p = sub.add_parser("table", parents=[common], help="counts for every m-mer")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--mode", choices=("exact", "bounds", "both"), default="both")

    p = sub.add_parser("inspect", parents=[common], help="dump the per-minimizer tables")
    p.add_argument("-w", "--word", required=True)

    p = sub.add_parser("oracle", parents=[common], help="brute-force partition")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--canonical", action="store_true", help="count only k-mers x with x <= rc(x)")

    p = sub.add_parser("scan", parents=[common], help="empirical buckets from FASTA/FASTQ")
    p.add_argument("inputs", nargs="+")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--distinct", action="store_true", help="count distinct k-mers instead of occurrences")

    p = sub.add_parser("compare", parents=[common], help="join empirical buckets with exact counts")
    p.add_argument("empirical")

    p = sub.add_parser("regress", parents=[common], help="fit log pi_k(w) against k")
    p.add_argument("-w", "--word", required=True)
    p.add_argument("--k-from", type=int, required=True)
    p.add_argument("--k-to", type=int, required=True)
    return parser


def _alphabet(args) -> Alphabet:
    pairs = None if args.complement.lower() in ("", "none") else args.complement
    return Alphabet.from_strings(args.alphabet, pairs)


def _threads(args) -> int:
    return args.threads if args.threads is not None else _default_threads()


def _check_km(m: int, k: int):
    if m < 1:
        raise UsageError("m must be at least 1")
    if k < m:
        raise UsageError(f"k={k} is smaller than m={m}")


@contextmanager
def _output(path: Optional[str]):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def write_rows(out, header: Iterable[str], rows: Iterable[list[str]], fmt: str = "csv"):
    header = list(header)
    if fmt == "json-lines":
        for row in rows:
            out.write(json.dumps(dict(zip(header, row))) + "\n")
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _cmd_count(args):
    w = _alphabet(args).word(args.word)
    _check_km(len(w), args.k)
    r = evaluate(w, args.k, "both")
    print(r.exact, r.lower, r.upper)


def _cmd_bounds(args):
    w = _alphabet(args).word(args.word)
    _check_km(len(w), args.k)
    r = evaluate(w, args.k, "bounds")
    print(r.lower, r.upper)


def _cmd_table(args):
    alphabet = _alphabet(args)
    _check_km(args.m, args.k)
    results = pi_partition(alphabet, args.m, args.k, args.mode, workers=_threads(args))
    rows = ([result_row(r)[c] for c in CSV_HEADER] for r in results)
    with _output(args.out) as out:
        write_rows(out, CSV_HEADER, rows, args.format)


def format_inspect(tables) -> str:
    """Aligned text dump of R, T, a_max and the derived scalars."""
    w, m, alphabet = tables.w, tables.m, tables.w.alphabet
    sym = alphabet.symbols
    lines = [f"w = {w}  m = {m}  sigma = {alphabet.size}  rank_phi = {rank_phi(w)}"]
    lines.append(f"i_max = {tables.i_max}")
    raw = tables.beta_max_raw
    lines.append(f"beta_max = min(k - m, {'inf' if raw == math.inf else raw})")
    lines.append("")
    lines.append("R" + " " * 5 + " ".join(f"{j:>2}" for j in range(1, m + 1)))
    lines.append("     " + " ".join(f"{c:>2}" for c in str(w)))
    for i in range(1, m + 1):
        cells = " ".join(f"{tables.R[i][j]:>2}" for j in range(1, i + 1))
        lines.append(f"{i:>2} {sym[w[i - 1]]}  {cells}")
    lines.append("")
    lines.append("i  a_i  " + " ".join(f"T({c})" for c in sym) + "  a_max  a_max~(beta)")
    for i in range(1, m + 1):
        t = " ".join(f"{tables.T[i][c]:>4}" for c in range(alphabet.size))
        tilde = " ".join(
            f"[{x},{'inf' if j + 1 == len(step.thresholds) else step.thresholds[j + 1]}):"
            f"{'eps' if v is None else sym[v]}"
            for step in [tables.a_max_tilde[i]]
            for j, (x, v) in enumerate(zip(step.thresholds, step.values))
        )
        lines.append(f"{i:<2} {sym[w[i - 1]]:>3}  {t}  {sym[tables.a_max[i]]:>5}  {tilde}")
    return "\n".join(lines) + "\n"


def _cmd_inspect(args):
    w = _alphabet(args).word(args.word)
    with _output(args.out) as out:
        out.write(format_inspect(build_tables(w)))


def _cmd_oracle(args):
    alphabet = _alphabet(args)
    _check_km(args.m, args.k)
    part = brute_force_partition(alphabet, args.m, args.k, args.canonical, args.force)
    header = CSV_HEADER + ("source",)
    sigma = alphabet.size

    def rows():
        for w, n in part.items():
            t = build_tables(w)
            bmax = 0 if w[0] == alphabet.max_letter else int(min(args.k - args.m, t.beta_max_raw))
            log_pi = norm_y = None
            if n > 0:
                log_pi = math.log(n) / math.log(sigma)
                if args.k > args.m:
                    norm_y = log_pi / ((args.k - args.m) + math.log(args.k - args.m + 1) / math.log(sigma))
                else:
                    norm_y = 0.0
            yield [
                str(w), str(rank_phi(w)), str(args.k), str(args.m), str(n), "", "", str(bmax),
                fmt_float(log_pi), fmt_float(rank_phi(w) / (sigma ** args.m - 1)), fmt_float(norm_y), "brute",
            ]

    with _output(args.out) as out:
        write_rows(out, header, rows(), args.format)


def _cmd_scan(args):
    config = ScanConfig(args.k, args.m, _alphabet(args), args.distinct)
    errors = []
    try:
        part = scan_files(config, args.inputs, workers=_threads(args), errors=errors)
    except OSError as exc:
        raise InvalidInputError(f"cannot read input: {exc}") from exc
    for err in errors:
        print(f"warning: {err}", file=sys.stderr)
    with _output(args.out) as out:
        part.to_csv(out)


def _cmd_compare(args):
    alphabet = _alphabet(args)
    try:
        with open(args.empirical) as fh:
            part = EmpiricalPartition.from_csv(fh, alphabet)
    except OSError as exc:
        raise InvalidInputError(f"cannot read {args.empirical}: {exc}") from exc
    with _output(args.out) as out:
        write_rows(out, COMPARE_HEADER, (r.as_fields() for r in compare(part)), args.format)


def _cmd_regress(args):
    w = _alphabet(args).word(args.word)
    _check_km(len(w), args.k_from)
    if args.k_to < args.k_from + 2:
        raise UsageError("need k-to >= k-from + 2")
    fit = regress_slope(w, args.k_from, args.k_to)
    if fit.degenerate:
        print("slope 0 intercept 0 r_squared undefined (degenerate: pi is constant 1)")
    else:
        print(f"slope {fit.slope:.10f} intercept {fit.intercept:.10f} r_squared {fit.r_squared:.10f}")


COMMANDS = {
    "count": _cmd_count,
    "bounds": _cmd_bounds,
    "table": _cmd_table,
    "inspect": _cmd_inspect,
    "oracle": _cmd_oracle,
    "scan": _cmd_scan,
    "compare": _cmd_compare,
    "regress": _cmd_regress,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"mincount {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"mincount {args.command}: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InvalidInputError, UnsupportedOperationError) as exc:
        print(f"mincount {args.command}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
