"""Command-line front end: compute class numbers, tabulate, self-test,
and benchmark.

Exit statuses: 0 success, 1 usage problems, 2 computation failures.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field

from . import classpoly
from .arith import is_prime
from .classnum import (
    ClassNumberReport,
    algorithm1,
    algorithm2,
    algorithm3,
    qualifying_discriminants,
)
from .genus import real_genus_generators, splits_completely
from .oracles import forms_class_number, supersingular_set
from .pairing import PairWitness

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2

# Class numbers of Q(sqrt(-p)) for the primes the pipeline excludes.
_SMALL_P = {2: 1, 3: 1, 5: 2}


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation; one command plus its knobs."""

    command: str
    p: int | None = None
    algorithm: str = "alg3"
    max_p: int | None = None
    primes: tuple[int, ...] = ()
    json: bool = False
    verbose: bool = False
    threads: int = 1


def report_to_json(r: ClassNumberReport) -> dict:
    """Stable versioned document; big integers as decimal strings."""
    return {
        "schema": 1,
        "p": str(r.p),
        "h": str(r.h),
        "s_p": r.s_p,
        "t": r.pair_count,
        "branch_mod8": r.branch,
        "T": [str(d) for d in r.members_of_T],
        "witnesses": [
            {"d1": str(w.d1), "d2": str(w.d2), "x": str(w.x)} for w in r.witnesses
        ],
        "elapsed_ms": int(r.elapsed * 1000),
    }


def report_from_json(doc: dict) -> ClassNumberReport:
    """Inverse of report_to_json (elapsed at millisecond granularity)."""
    if doc.get("schema") != 1:
        raise ValueError(f"unsupported schema {doc.get('schema')}")
    s_p = doc["s_p"]
    t = doc["t"]
    return ClassNumberReport(
        p=int(doc["p"]),
        s_p=s_p,
        pair_count=t,
        branch=doc["branch_mod8"],
        supersingular_count=s_p - t,
        h=int(doc["h"]),
        members_of_T=tuple(int(d) for d in doc["T"]),
        witnesses=tuple(
            PairWitness(int(w["d1"]), int(w["d2"]), int(w["x"]))
            for w in doc["witnesses"]
        ),
        elapsed=doc["elapsed_ms"] / 1000.0,
    )


def _print_report(r: ClassNumberReport, cfg: RunConfig) -> None:
    if cfg.json:
        print(json.dumps(report_to_json(r)))
        return
    print(f"h = {r.h}")
    if cfg.verbose:
        print(f"p = {r.p} (branch {r.branch} mod 8)")
        print(f"s_p = {r.s_p}, t = {r.pair_count}, #S_p = {r.supersingular_count}")
        print(f"|T| = {len(r.members_of_T)}: {' '.join(map(str, r.members_of_T))}")
        for w in r.witnesses:
            print(f"witness d1={w.d1} d2={w.d2} x={w.x}")
        print(f"elapsed = {r.elapsed:.3f}s")


def cmd_compute(cfg: RunConfig) -> int:
    p = cfg.p
    assert p is not None
    if p in _SMALL_P:
        print(f"h = {_SMALL_P[p]} (p = {p} is below the pipeline range p > 5; "
              "tabulated value)")
        return EXIT_OK
    if not is_prime(p):
        print(f"error: {p} is not prime", file=sys.stderr)
        return EXIT_USAGE
    if cfg.json and cfg.algorithm in ("alg1", "forms"):
        print("error: --json requires --algorithm alg2 or alg3", file=sys.stderr)
        return EXIT_USAGE
    if cfg.algorithm == "alg3":
        _print_report(algorithm3(p, cfg.threads), cfg)
    elif cfg.algorithm == "alg2":
        _print_report(algorithm2(p, cfg.threads), cfg)
    elif cfg.algorithm == "alg1":
        h, roots = algorithm1(p)
        print(f"h = {h}")
        if cfg.verbose:
            print(f"S_p ({len(roots)} roots): {' '.join(map(str, sorted(roots)))}")
    else:  # forms oracle
        if p > 10**8:
            print(f"warning: forms oracle is O(p); p = {p} will be slow",
                  file=sys.stderr)
        D = -p if p % 4 == 3 else -4 * p
        print(f"h = {forms_class_number(D)}")
    return EXIT_OK


def cmd_table(cfg: RunConfig) -> int:
    status = EXIT_OK
    print(f"{'p':>16} {'h':>12} {'seconds':>10}")
    for p in cfg.primes:
        try:
            if p in _SMALL_P or not is_prime(p):
                raise ValueError(f"{p} is not a prime > 5")
            r = algorithm3(p, cfg.threads)
            print(f"{p:>16} {r.h:>12} {r.elapsed:>10.2f}")
        except (ValueError, ArithmeticError, RuntimeError) as exc:
            print(f"{p:>16} {'-':>12} {'-':>10}  {exc}")
            status = EXIT_FAILURE
    return status


def check_oracle_equivalence(max_p: int) -> tuple[int, list[str]]:
    """algorithm3 vs the reduced-forms count, every prime 5 < p <= max_p."""
    checked = 0
    failures = []
    for p in range(7, max_p + 1):
        if not is_prime(p):
            continue
        got = algorithm3(p).h
        want = forms_class_number(-p if p % 4 == 3 else -4 * p)
        if got != want:
            failures.append(f"p={p}: algorithm3 h={got}, forms oracle h={want}")
        checked += 1
    return checked, failures


def check_variant_agreement(max_p: int) -> tuple[int, list[str]]:
    """algorithm3 vs algorithm2 full-report agreement."""
    checked = 0
    failures = []
    for p in range(7, max_p + 1):
        if not is_prime(p):
            continue
        a3 = algorithm3(p)
        a2 = algorithm2(p)
        same = (
            (a3.h, a3.s_p, a3.pair_count, a3.members_of_T, a3.witnesses)
            == (a2.h, a2.s_p, a2.pair_count, a2.members_of_T, a2.witnesses)
        )
        if not same:
            failures.append(f"p={p}: algorithm2/3 reports differ")
        checked += 1
    return checked, failures


def check_supersingular_counts(max_p: int) -> tuple[int, list[str]]:
    """s_p - t vs the point-counting supersingular set size."""
    checked = 0
    failures = []
    for p in range(7, max_p + 1):
        if not is_prime(p):
            continue
        got = algorithm3(p).supersingular_count
        want = len(supersingular_set(p))
        if got != want:
            failures.append(f"p={p}: s_p - t = {got}, |S_p| = {want}")
        checked += 1
    return checked, failures


def check_classpoly_roots(max_p: int) -> tuple[int, list[str]]:
    """Root counts, witness/shared-root bijection, and no triple roots.

    For each prime: every qualifying D must contribute 2^(mu-1) roots
    when p splits completely in its real genus field and 0 otherwise;
    pairs sharing a root must match the witness list exactly, sharing
    exactly one root; no j may be a root of three class polynomials.
    Failure strings carry a "root-count:" or "pairing:" prefix.
    """
    checked = 0
    failures = []
    for p in range(7, max_p + 1):
        if not is_prime(p):
            continue
        checked += 1
        roots: dict[int, frozenset[int]] = {}
        for rec in qualifying_discriminants(p):
            H = classpoly.class_polynomial(rec.D)
            rs = frozenset(classpoly.roots_mod_p(H, p))
            gens = real_genus_generators(rec)
            want = 1 << (rec.mu - 1) if splits_completely(rec, gens, p) else 0
            if len(rs) != want:
                failures.append(
                    f"root-count: p={p} D={rec.D}: {len(rs)} roots, expected {want}"
                )
            roots[rec.D] = rs
        report = algorithm3(p)
        witness_pairs = {(w.d1, w.d2) for w in report.witnesses}
        shared_pairs = set()
        ds = sorted(roots, key=abs)
        for i, d1 in enumerate(ds):
            for d2 in ds[i + 1:]:
                common = roots[d1] & roots[d2]
                if common:
                    shared_pairs.add((d1, d2))
                    if len(common) != 1:
                        failures.append(
                            f"pairing: p={p} ({d1},{d2}): {len(common)} shared roots"
                        )
        if witness_pairs != shared_pairs:
            failures.append(
                f"pairing: p={p}: witness pairs {sorted(witness_pairs)} != "
                f"shared-root pairs {sorted(shared_pairs)}"
            )
        tally: dict[int, int] = {}
        for rs in roots.values():
            for j in rs:
                tally[j] = tally.get(j, 0) + 1
        triples = [j for j, k in tally.items() if k >= 3]
        if triples:
            failures.append(f"pairing: p={p}: j {triples} on three or more polynomials")
    return checked, failures


def cmd_selftest(cfg: RunConfig) -> int:
    max_p = cfg.max_p
    assert max_p is not None
    suites = [
        ("alg3 vs forms oracle", check_oracle_equivalence, max_p),
        ("alg3 vs alg2", check_variant_agreement, max_p),
        ("supersingular counts", check_supersingular_counts, min(max_p, 3000)),
        ("class polynomial roots", check_classpoly_roots, min(max_p, 1000)),
    ]
    status = EXIT_OK
    for name, fn, bound in suites:
        t0 = time.perf_counter()
        checked, failures = fn(bound)
        dt = time.perf_counter() - t0
        if failures:
            status = EXIT_FAILURE
            print(f"FAIL {name}: {len(failures)} failure(s) over {checked} primes "
                  f"({dt:.1f}s); first: {failures[0]}")
        else:
            print(f"ok   {name}: {checked} primes <= {bound} ({dt:.1f}s)")
    print("all checks passed" if status == EXIT_OK else "FAILURES PRESENT")
    return status


def cmd_bench(cfg: RunConfig) -> int:
    rows = []
    for p in cfg.primes:
        r = algorithm3(p, cfg.threads)
        rows.append((p, r.elapsed))
        print(f"p = {p}: h = {r.h}, {r.elapsed:.3f}s")
    if len(rows) >= 2:
        xs = [math.log(p) for p, _ in rows]
        ys = [math.log(max(t, 1e-6)) for _, t in rows]
        xbar = sum(xs) / len(xs)
        ybar = sum(ys) / len(ys)
        slope = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / sum(
            (x - xbar) ** 2 for x in xs
        )
        print(f"log-log slope = {slope:.3f} (target <= 0.80)")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; the contract here says 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="ssclassnum",
        description="Class number of Q(sqrt(-p)) via supersingular j-invariant "
        "counting, with oracle cross-checks.",
        epilog=f"Set {classpoly.CACHE_ENV_VAR} to a file path to persist "
        "class polynomials across runs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", parents=[], help="class number for one prime")
    compute.add_argument("--p", type=int, required=True, help="the prime")
    compute.add_argument("--algorithm", choices=("alg1", "alg2", "alg3", "forms"),
                         default="alg3")
    compute.add_argument("--json", action="store_true")
    compute.add_argument("--verbose", action="store_true")
    compute.add_argument("--threads", default="1")

    table = sub.add_parser("table", help="one row per prime: p, h, seconds")
    table.add_argument("--primes", type=int, nargs="+", required=True)
    table.add_argument("--threads", default="1")

    selftest = sub.add_parser("selftest", help="run the cross-check suites")
    selftest.add_argument("--max_p", type=int, required=True)

    bench = sub.add_parser("bench", help="timing, with a log-log slope estimate")
    bench.add_argument("--primes", type=int, nargs="+", required=True)
    bench.add_argument("--threads", default="1")
    return parser


def _resolve_threads(raw: str, parser: _Parser) -> int:
    if raw == "auto":
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        parser.error(f"--threads must be a positive integer or 'auto', got {raw!r}")
    return value


def main(argv: list[int] | None = None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
        threads = _resolve_threads(getattr(ns, "threads", "1"), parser)
    except SystemExit as exc:  # argparse already printed the explanation
        return int(exc.code or 0)
    cfg = RunConfig(
        command=ns.command,
        p=getattr(ns, "p", None),
        algorithm=getattr(ns, "algorithm", "alg3"),
        max_p=getattr(ns, "max_p", None),
        primes=tuple(getattr(ns, "primes", ()) or ()),
        json=getattr(ns, "json", False),
        verbose=getattr(ns, "verbose", False),
        threads=threads,
    )
    if cfg.command == "selftest" and cfg.max_p is not None and cfg.max_p < 7:
        print(f"error: max_p = {cfg.max_p} too small, need at least 7",
              file=sys.stderr)
        return EXIT_USAGE
    dispatch = {
        "compute": cmd_compute,
        "table": cmd_table,
        "selftest": cmd_selftest,
        "bench": cmd_bench,
    }
    try:
        return dispatch[cfg.command](cfg)
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
