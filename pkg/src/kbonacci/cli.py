"""Command-line surface: compute values, dump roots, verify, benchmark.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 numeric/convergence failure.  All numeric output crosses this
boundary as decimal strings; JSON records re-serialize byte-identically
after a parse round trip.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

from .binet import binet_eval, dominant_term_round
from .charpoly import discriminant_certificate, find_roots
from .errors import (
    ConvergenceError,
    InvalidOrderError,
    PrecisionExhaustedError,
    PrecisionInsufficientError,
    TailBoundError,
)
from .recurrence import kbonacci_matrix, kbonacci_recursive, kbonacci_window
from .vandermonde import run_lemma_suite

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

# Default RNG seed for sampled verification; override with --seed or the
# KBONACCI_SEED environment variable.
DEFAULT_SEED = 1729

_CLI_MAX_ORDER = 64  # keeps companion matrices and root sets desk-sized


def _default_seed() -> int:
    env = os.environ.get("KBONACCI_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_SEED


def _parse_n_spec(spec: str) -> list[int]:
    """Either a single index or an inclusive-exclusive range 'a..b'."""
    if ".." in spec:
        lo_s, _, hi_s = spec.partition("..")
        lo, hi = int(lo_s), int(hi_s)
        if hi <= lo:
            raise ValueError(f"empty range {spec!r} (a..b is inclusive-exclusive)")
        if lo < 0:
            raise ValueError("sequence indices must be >= 0")
        return list(range(lo, hi))
    n = int(spec)
    if n < 0:
        raise ValueError("sequence indices must be >= 0")
    return [n]


def _parse_int_list(spec: str) -> list[int]:
    return [int(tok) for tok in spec.split(",") if tok]


def _check_cli_order(k: int) -> None:
    if k < 2:
        raise InvalidOrderError(f"recurrence order k must be >= 2, got {k}")
    if k > _CLI_MAX_ORDER:
        raise InvalidOrderError(
            f"CLI caps the order at {_CLI_MAX_ORDER} (the library itself has no ceiling)"
        )


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def _digest(value: int) -> str:
    return hashlib.sha256(str(value).encode("ascii")).hexdigest()[:16]


# ---------------------------------------------------------------------------
# compute
# ---------------------------------------------------------------------------

def _compute_one(method: str, k: int, n: int, prec: int | None):
    """Returns (value, metadata-or-None)."""
    if method == "recursive":
        return kbonacci_recursive(k, n), None
    if method == "matrix":
        return kbonacci_matrix(k, n), None
    if method == "binet":
        result = binet_eval(k, n, start_prec_bits=prec)
        return result.value, result
    if method == "dominant":
        return dominant_term_round(k, n), None
    raise ValueError(f"unknown method {method!r}")


def cmd_compute(args) -> int:
    _check_cli_order(args.k)
    ns = _parse_n_spec(args.n)
    out, close = _open_out(args.out)
    try:
        rows = []
        for n in ns:
            value, meta = _compute_one(args.method, args.k, n, args.prec)
            rows.append((n, value, meta))
        if args.format == "human":
            for _, value, _ in rows:
                print(value, file=out)
        elif args.format == "json":
            for n, value, meta in rows:
                if meta is not None:
                    record = meta.to_json()
                else:
                    record = {
                        "k": args.k,
                        "n": n,
                        "method": args.method,
                        "value": str(value),
                    }
                print(json.dumps(record), file=out)
        else:
            print("k,n,method,value", file=out)
            for n, value, _ in rows:
                print(f"{args.k},{n},{args.method},{value}", file=out)
    finally:
        if close:
            out.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# roots
# ---------------------------------------------------------------------------

def cmd_roots(args) -> int:
    _check_cli_order(args.k)
    root_set = find_roots(args.k, args.prec)
    cert = discriminant_certificate(args.k)
    payload = {
        "root_set": root_set.to_json(),
        "discriminant_certificate": cert.to_json(),
    }
    out, close = _open_out(args.out)
    try:
        print(json.dumps(payload), file=out)
    finally:
        if close:
            out.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    if args.kmax < 2:
        raise InvalidOrderError(f"--kmax must be >= 2, got {args.kmax}")
    out, close = _open_out(args.out)
    failures: list[str] = []
    fault_pending = args.inject_fault
    try:
        for k in range(2, args.kmax + 1):
            expected_all = kbonacci_window(k, 0, args.nmax + 1)
            for n in range(0, args.nmax + 1):
                result = binet_eval(k, n)
                got = result.value
                if fault_pending:
                    got += 1  # self-test: corrupt exactly one cell
                    fault_pending = False
                expected = expected_all[n]
                ok = got == expected
                radius_ok = result.error_radius < 0.5
                record = {
                    "check": "binet_vs_recursive",
                    "k": k,
                    "n": n,
                    "ok": ok,
                    "radius_ok": radius_ok,
                    "escalations": result.escalations,
                }
                if not ok:
                    record["binet"] = str(got)
                    record["recursive"] = str(expected)
                    failures.append(f"binet_vs_recursive k={k} n={n}")
                if not radius_ok:
                    failures.append(f"error_radius k={k} n={n}")
                print(json.dumps(record), file=out)
        lemma_ks = [k for k in range(2, min(args.kmax, 8) + 1)]
        if args.trials == 0:
            print(
                json.dumps(
                    {"check": "lemma_suite", "status": "skipped", "trials": 0}
                ),
                file=out,
            )
            print("lemma suite: skipped (0 trials)", file=sys.stderr)
        else:
            for record in run_lemma_suite(lemma_ks, args.trials, args.seed):
                if not record["ok"]:
                    failures.append(
                        f"lemma k={record['k']} instance={record['instance']} seed={record['seed']}"
                    )
                print(json.dumps(record), file=out)
    finally:
        if close:
            out.close()
    if failures:
        for f in failures:
            print(f"FAIL {f}", file=sys.stderr)
        print(f"verify: {len(failures)} failure(s)", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    print("verify: all checks passed", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

def _bench_cell(method: str, k: int, n: int):
    start = time.perf_counter()
    if method == "binet":
        result = binet_eval(k, n)
        elapsed = time.perf_counter() - start
        return result.value, elapsed, result.prec_bits_used
    value, _ = _compute_one(method, k, n, None)
    elapsed = time.perf_counter() - start
    return value, elapsed, None


def cmd_bench(args) -> int:
    ks = _parse_int_list(args.k)
    ns = _parse_int_list(args.n)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    if not ks or not ns or not methods:
        raise ValueError("bench needs at least one k, one n, and one method")
    for k in ks:
        _check_cli_order(k)
    for n in ns:
        if n < 0:
            raise ValueError("sequence indices must be >= 0")
    records = []
    fault_pending = args.inject_fault
    for k in sorted(ks):
        for n in sorted(ns):
            digests = {}
            cell = []
            for method in methods:
                value, elapsed, prec = _bench_cell(method, k, n)
                if fault_pending:
                    value += 1  # self-test: corrupt exactly one digest
                    fault_pending = False
                digests[method] = _digest(value)
                cell.append(
                    {
                        "backend": method,
                        "k": k,
                        "n": n,
                        "wall_time_s": f"{elapsed:.6f}",
                        "prec_bits": prec,
                        "digest": digests[method],
                    }
                )
            if len(set(digests.values())) != 1:
                print(
                    f"bench: digest mismatch at k={k} n={n}: {digests}",
                    file=sys.stderr,
                )
                return EXIT_VERIFY_FAILED
            records.extend(cell)
    out, close = _open_out(args.out)
    try:
        if args.format == "json":
            for rec in records:
                print(json.dumps(rec), file=out)
        else:
            print("backend,k,n,wall_time_s,prec_bits,digest", file=out)
            for rec in records:
                prec = "" if rec["prec_bits"] is None else rec["prec_bits"]
                print(
                    f"{rec['backend']},{rec['k']},{rec['n']},{rec['wall_time_s']},{prec},{rec['digest']}",
                    file=out,
                )
    finally:
        if close:
            out.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kbonacci",
        description="k-bonacci numbers: exact backends, certified closed form, "
        "and an exact-rational identity laboratory.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_compute = sub.add_parser("compute", help="print F(k, n) for one index or a range")
    p_compute.add_argument("--k", type=int, required=True, help="recurrence order (>= 2)")
    p_compute.add_argument(
        "--n",
        required=True,
        help="index, or inclusive-exclusive range a..b (e.g. 0..10 gives n = 0..9)",
    )
    p_compute.add_argument(
        "--method",
        choices=["recursive", "matrix", "binet", "dominant"],
        default="recursive",
    )
    p_compute.add_argument(
        "--prec", type=int, default=None, help="starting precision override for binet"
    )
    p_compute.add_argument("--format", choices=["human", "json", "csv"], default="human")
    p_compute.add_argument("--out", default=None, help="output path (default stdout)")
    p_compute.set_defaults(func=cmd_compute)

    p_roots = sub.add_parser(
        "roots", help="characteristic roots plus the exact distinctness certificate"
    )
    p_roots.add_argument("--k", type=int, required=True)
    p_roots.add_argument("--prec", type=int, default=128, help="precision in bits")
    p_roots.add_argument("--out", default=None)
    p_roots.set_defaults(func=cmd_roots)

    p_verify = sub.add_parser(
        "verify",
        help="closed form vs exact backend over a (k, n) grid, plus the "
        "exact-rational identity suite; JSON-lines report",
    )
    p_verify.add_argument("--kmax", type=int, default=10)
    p_verify.add_argument("--nmax", type=int, default=500)
    p_verify.add_argument(
        "--trials", type=int, default=1000, help="identity instances per k (0 skips)"
    )
    p_verify.add_argument(
        "--seed",
        type=int,
        default=_default_seed(),
        help=f"sampling seed (default {DEFAULT_SEED}, env KBONACCI_SEED overrides)",
    )
    p_verify.add_argument("--out", default=None)
    p_verify.add_argument(
        "--inject-fault",
        action="store_true",
        help="self-test: corrupt one computed value to exercise failure reporting",
    )
    p_verify.set_defaults(func=cmd_verify)

    p_bench = sub.add_parser("bench", help="time the backends over a (k, n) grid")
    p_bench.add_argument("--k", default="2,3,5", help="comma-separated orders")
    p_bench.add_argument("--n", default="1000,10000", help="comma-separated indices")
    p_bench.add_argument(
        "--methods",
        default="recursive,matrix,binet",
        help="comma-separated backends to time",
    )
    p_bench.add_argument("--format", choices=["csv", "json"], default="csv")
    p_bench.add_argument("--out", default=None)
    p_bench.add_argument(
        "--inject-fault",
        action="store_true",
        help="self-test: corrupt one digest to exercise the mismatch abort",
    )
    p_bench.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    # Exact values can run to hundreds of thousands of digits; lift the
    # interpreter's int-to-str conversion guard for this process.
    sys.set_int_max_str_digits(100_000_000)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidOrderError, ValueError) as exc:
        print(f"kbonacci: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (
        ConvergenceError,
        PrecisionExhaustedError,
        PrecisionInsufficientError,
        TailBoundError,
    ) as exc:
        print(f"kbonacci: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
