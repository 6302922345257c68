"""Command line interface.

    qanova test --file data.csv [--q 0.25 0.5 0.75] [--nboot 600] [--seed S]
                [--alpha 0.05] [--out text|json-lines]
    qanova simulate --config grid.cfg --out-dir results/
    qanova hd --file data.csv [--q 0.5]

Input files are long-format CSV with a ``group,value`` header. Groups are
ordered by first appearance. ``hd`` also accepts a single column of values.

Exit codes: 0 success, 1 usage or parse error, 2 computation error.
"""

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from .depth import DegenerateCloudError
from .methodq import DEFAULT_B, DEFAULT_SEED, qanova_multi
from .quantiles import hd_estimate, ideal_fourths
from .simulation import ConfigError, load_grid, run_grid, write_jsonl, write_tsv

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COMPUTE = 2

DEFAULT_QS = (0.25, 0.5, 0.75)


class InputError(ValueError):
    pass


def _is_number(s):
    try:
        float(s)
    except ValueError:
        return False
    return True


def read_groups(path, allow_single_column=False):
    """Read a long-format CSV into an ordered ``{label: array}`` mapping."""
    path = Path(path)
    try:
        with open(path, newline="") as fh:
            rows = [row for row in csv.reader(fh) if row and any(c.strip() for c in row)]
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    if not rows:
        raise InputError(f"{path}: file is empty")
    header = [c.strip().lower() for c in rows[0]]
    groups = {}
    if "group" in header and "value" in header:
        gi, vi = header.index("group"), header.index("value")
        for lineno, row in enumerate(rows[1:], 2):
            if len(row) <= max(gi, vi):
                raise InputError(f"{path}: line {lineno}: expected columns group,value")
            groups.setdefault(row[gi].strip(), []).append(_parse_value(row[vi], path, lineno))
    elif allow_single_column and len(header) == 1:
        start = 0 if _is_number(rows[0][0]) else 1
        groups["all"] = [_parse_value(r[0], path, i + 1) for i, r in enumerate(rows) if i >= start]
    else:
        raise InputError(f"{path}: line 1: expected a header with columns group,value")
    groups = {k: np.array(v) for k, v in groups.items()}
    if not groups or all(v.size == 0 for v in groups.values()):
        raise InputError(f"{path}: no data rows")
    return groups


def _parse_value(s, path, lineno):
    try:
        v = float(s)
    except ValueError:
        raise InputError(f"{path}: line {lineno}: not a number: {s.strip()!r}") from None
    if not math.isfinite(v):
        raise InputError(f"{path}: line {lineno}: non-finite value {s.strip()!r}")
    return v


def _format_test_text(labels, results, alpha):
    out = []
    for res in results:
        out.append(f"Quantile q = {res.q:g}   (B = {res.B}, seed = {res.seed})")
        out.append(f"  {'group':<12} {'estimate':>14}")
        for lab, est in zip(labels, res.estimates):
            out.append(f"  {lab:<12} {est:>14.6g}")
        out.append(f"  {'difference':<12} {'delta':>14}")
        for (j, k), d in zip(res.pairs, res.deltas):
            out.append(f"  {labels[j] + ' - ' + labels[k]:<12} {d:>14.6g}")
        verdict = "reject" if res.p_value <= alpha else "do not reject"
        out.append(f"  p-value = {res.p_value:.4f}   ({verdict} at alpha = {alpha:g})")
        out.append("")
    return "\n".join(out)


def cmd_test(args, stdout):
    groups = read_groups(args.file)
    labels = list(groups)
    if len(labels) < 2:
        raise InputError(f"need at least 2 groups, found {len(labels)}")
    for lab, v in groups.items():
        if v.size < 2:
            raise InputError(f"group {lab!r} has {v.size} observation(s); at least 2 required")
    results = qanova_multi(list(groups.values()), args.q, B=args.nboot, seed=args.seed)
    if args.out == "json-lines":
        for res in results:
            rec = res.as_record()
            rec["groups"] = labels
            rec["alpha"] = args.alpha
            rec["reject"] = res.p_value <= args.alpha
            stdout.write(json.dumps(rec) + "\n")
    else:
        stdout.write(_format_test_text(labels, results, args.alpha))
    return EXIT_OK


def cmd_simulate(args, stdout):
    cells = load_grid(args.config)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    results = []
    for i, res in enumerate(run_grid(cells, workers=args.workers), 1):
        results.append(res)
        if res.error:
            line = f"[{i}/{len(cells)}] {res.name}: FAILED {res.error}"
        else:
            ref = "" if res.reference is None else f"  reference={res.reference:g}"
            line = (
                f"[{i}/{len(cells)}] {res.name}: alpha_hat={res.alpha_hat:.4f} "
                f"CI=({res.ci_low:.4f}, {res.ci_high:.4f}) bradley_ok={res.bradley_ok}"
                f" degenerate={res.degenerate}{ref}  {res.wall_time:.1f}s"
            )
        stdout.write(line + "\n")
        stdout.flush()
    write_tsv(results, out_dir / "results.tsv")
    write_jsonl(results, out_dir / "results.jsonl")
    if all(r.error for r in results):
        return EXIT_COMPUTE
    return EXIT_OK


def cmd_hd(args, stdout):
    groups = read_groups(args.file, allow_single_column=True)
    qs = args.q
    head = f"{'group':<12} {'n':>5} " + " ".join(f"{'hd(' + format(q, 'g') + ')':>12}" for q in qs)
    stdout.write(head + f" {'fourth_lo':>12} {'fourth_hi':>12}\n")
    for lab, v in groups.items():
        ests = " ".join(f"{hd_estimate(v, q):>12.6g}" for q in qs)
        if v.size >= 3:
            lo, hi = ideal_fourths(v)
            fourths = f"{lo:>12.6g} {hi:>12.6g}"
        else:
            fourths = f"{'-':>12} {'-':>12}"
        stdout.write(f"{lab:<12} {v.size:>5} {ests} {fourths}\n")
    return EXIT_OK


def _quantile_arg(s):
    q = float(s)
    if not 0.0 < q < 1.0:
        raise argparse.ArgumentTypeError(f"quantile must lie strictly between 0 and 1, got {s}")
    return q


def _positive_int(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {s}")
    return v


def build_parser():
    ap = argparse.ArgumentParser(prog="qanova", description="Compare quantiles of J independent groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("test", help="test equality of quantiles across groups")
    t.add_argument("--file", required=True, help="long-format CSV with columns group,value")
    t.add_argument("--q", type=_quantile_arg, nargs="+", default=list(DEFAULT_QS))
    t.add_argument("--nboot", type=_positive_int, default=DEFAULT_B)
    t.add_argument("--seed", type=int, default=DEFAULT_SEED)
    t.add_argument("--alpha", type=float, default=0.05)
    t.add_argument("--out", choices=("text", "json-lines"), default="text")
    t.set_defaults(func=cmd_test)

    s = sub.add_parser("simulate", help="estimate Type I error rates over a grid")
    s.add_argument("--config", required=True)
    s.add_argument("--out-dir", required=True)
    s.add_argument("--workers", type=_positive_int, default=1)
    s.set_defaults(func=cmd_simulate)

    h = sub.add_parser("hd", help="Harrell-Davis estimates and ideal fourths per group")
    h.add_argument("--file", required=True)
    h.add_argument("--q", type=_quantile_arg, nargs="+", default=[0.5])
    h.set_defaults(func=cmd_hd)
    return ap


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, stdout)
    except (InputError, ConfigError) as exc:
        stderr.write(f"qanova: error: {exc}\n")
        return EXIT_USAGE
    except DegenerateCloudError as exc:
        stderr.write(f"qanova: computation failed: {exc}\n")
        return EXIT_COMPUTE
    except (ValueError, ArithmeticError) as exc:
        stderr.write(f"qanova: computation failed: {exc}\n")
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
