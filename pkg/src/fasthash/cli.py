"""``fasthash`` command-line tool.

Exit codes: 0 all good, 1 a check failed, 2 usage or input error,
3 an exhaustive check was refused for exceeding its budget.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from pathlib import Path

import numpy as np

from . import mersenne, verify
from .errors import BudgetExceeded, CoordinationError, InputError, ParameterError
from .int_hash import (
    AffineSeed,
    OddSeed,
    PrimeAffineSeed,
    mmp_strong,
    mmp_universal,
    ms_strong,
    ms_universal,
)
from .sampling import Sampler, combine, estimate_size, sample_set
from .seeding import SeedSource, dump_seeds
from .string_hash import (
    CHUNK_BYTES,
    ChunkedSeeds,
    PolySeeds,
    StringSeeds,
    bytes_to_words,
    chunked_hash,
    coords32,
    hash_string,
    poly_hash_composed,
)
from .table import ChainTable
from .vec_hash import VectorSeeds, pms_hash, vms_hash

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
MASK64 = (1 << 64) - 1

BENCH_SCHEMES = (
    "ms_universal", "ms_strong", "mmp_universal", "mmp_strong",
    "vms", "pms", "bounded", "poly", "chunked",
)


class UsageError(Exception):
    pass


def _int(text: str) -> int:
    return int(text, 0)


def _source(args) -> SeedSource:
    record = args.print_seeds is not None
    if args.seed_file:
        return SeedSource.from_file(args.seed_file, record=record)
    if args.seed is not None:
        return SeedSource.fixed(args.seed, record=record)
    src = SeedSource.entropy(record=record)
    print(f"seed: {src.initial_state:#x}", file=sys.stderr)
    return src


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


# ---------------------------------------------------------------- wordcount

def cmd_wordcount(args, source: SeedSource, out) -> int:
    data = _read(args.file)
    nil = data.find(b"\0")
    if nil >= 0:
        raise InputError(f"{args.file}: nil byte at offset {nil}; words must be nil-free")
    if args.fold_case:
        data = data.lower()
    table = ChainTable(source, mode=args.mode, sig_bits=args.sig_bits)
    # bytes.split() with no separator splits on runs of ASCII whitespace.
    for word in data.split():
        table.insert(word)
    print(len(table), file=out)
    if args.stats:
        print(f"load {table.load:.6f}", file=out)
        print(f"buckets {table.m}", file=out)
        print(f"probes {table.probes}", file=out)
        print(f"hash_sum {table.hash_sum & MASK64:#018x}", file=out)
    return EXIT_OK


# ---------------------------------------------------------------- signature

def cmd_signature(args, source: SeedSource, out) -> int:
    data = _read(args.file)
    seeds = ChunkedSeeds.draw(source, 1 << args.bits)
    print(f"{chunked_hash(seeds, data):0{args.bits // 4}x}", file=out)
    return EXIT_OK


# ---------------------------------------------------------------- verify

def cmd_verify(args, source: SeedSource, out) -> int:
    if args.list_bounds:
        print(verify.bounds_table(), file=out)
        return EXIT_OK
    if args.trials < 10_000:
        raise UsageError("statistical checks need --trials >= 10000")
    if args.scheme:
        spec = verify.SchemeSpec(
            args.scheme, w=args.w, l=args.l, wbar=args.wbar, d=args.d, prime=args.prime, m=args.m
        )
        records = verify.custom_check(spec, args.budget)
    else:
        records = verify.run_suite(args.suite, source, args.trials, args.budget)
    for rec in records:
        print(json.dumps(rec), file=out)
    failed = sum(not r["pass"] for r in records)
    print(f"{len(records)} checks, {failed} failed", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------- bench

def bench_data(size: int) -> bytes:
    """Deterministic nil-free bytes, so every path is exercised on the same input."""
    rng = random.Random(size)
    return bytes(rng.randrange(1, 256) for _ in range(size))


def _blocks(data: bytes, n: int) -> list[bytes]:
    return [data[i : i + n] for i in range(0, len(data), n)]


def _bench_units(scheme: str, data: bytes, source: SeedSource):
    """The hash function for ``scheme`` and the units it is applied to."""
    if scheme in ("ms_universal", "ms_strong", "mmp_universal", "mmp_strong"):
        words = list(bytes_to_words(data)) if data else []
        if scheme == "ms_universal":
            s = OddSeed.draw(source, 64)
            return (lambda x: ms_universal(s, x, 32)), words
        if scheme == "ms_strong":
            s = AffineSeed.draw(source, 64, 32)
            return (lambda x: ms_strong(s, x)), words
        s = PrimeAffineSeed.draw(source, require_nonzero_a=scheme == "mmp_universal")
        fn = mmp_universal if scheme == "mmp_universal" else mmp_strong
        return (lambda x: fn(s, x, 1 << 32)), words
    if scheme in ("vms", "pms"):
        v = VectorSeeds.draw(source, 2 * CHUNK_BYTES // 8)
        fn = vms_hash if scheme == "vms" else pms_hash
        return (lambda b: fn(v, coords32(b))), _blocks(data, CHUNK_BYTES)
    if scheme == "bounded":
        s = StringSeeds.draw(source, 64)
        return (lambda b: hash_string(s, b)), _blocks(data, CHUNK_BYTES)
    if scheme == "poly":
        s = PolySeeds.draw(source, 1 << 64)
        return (lambda b: poly_hash_composed(s, bytes_to_words(b))), [data] if data else []
    if scheme == "chunked":
        s = ChunkedSeeds.draw(source, 1 << 64)
        return (lambda b: chunked_hash(s, b)), [data]
    raise UsageError(f"unknown bench scheme {scheme!r}")


def cmd_bench(args, source: SeedSource, out) -> int:
    if args.size < 0:
        raise UsageError("--size must be non-negative")
    schemes = BENCH_SCHEMES if args.scheme == "all" else (args.scheme,)
    data = bench_data(args.size)
    cols = ["scheme", "bytes", "hashes", "field_mults", "hash_sum"]
    if not args.counts_only:
        cols += ["ns_per_hash", "bytes_per_s"]
    print("\t".join(cols), file=out)
    for scheme in schemes:
        fn, units = _bench_units(scheme, data, source)
        total = 0
        with mersenne.count_ops() as ops:
            t0 = time.perf_counter()
            for u in units:
                total += fn(u)
            elapsed = time.perf_counter() - t0
        row = [scheme, str(len(data)), str(len(units)), str(ops["mul"]), f"{total & MASK64:#018x}"]
        if not args.counts_only:
            ns = elapsed * 1e9 / len(units) if units else 0.0
            rate = len(data) / elapsed if elapsed > 0 and data else 0.0
            row += [f"{ns:.1f}", f"{rate:.0f}"]
        print("\t".join(row), file=out)
    return EXIT_OK


# ---------------------------------------------------------------- sample-sim

def parse_sets(spec: str, universe: int) -> list[range]:
    out = []
    for part in spec.split(","):
        try:
            lo, hi = (int(v) for v in part.split(":"))
        except ValueError:
            raise UsageError(f"malformed set {part!r}; expected lo:hi") from None
        if not 0 <= lo <= hi <= universe:
            raise UsageError(f"set {part!r} not inside [0, {universe}]")
        out.append(range(lo, hi))
    if len(out) != 2:
        raise UsageError("--sets needs exactly two ranges, B and C")
    return out


def cmd_sample_sim(args, source: SeedSource, out) -> int:
    if not 1 <= args.universe <= 1 << 32:
        raise UsageError("--universe must lie in [1, 2^32]")
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    b_range, c_range = parse_sets(args.sets, args.universe)
    b, c = set(b_range), set(c_range)
    truth = {
        "B": b, "C": c, "union": b | c,
        "intersection": b & c, "symmetric_difference": b ^ c,
    }
    arrays = {k: np.fromiter(sorted(v), dtype=np.uint64, count=len(v)) for k, v in truth.items()}
    estimates = {k: [] for k in truth}
    failures = dict.fromkeys(truth, 0)
    mismatches = 0
    sampler = None
    for _ in range(args.trials):
        sampler = Sampler.draw(source, args.p)
        if sampler.t == 0:
            raise UsageError(f"p={args.p} rounds to a zero threshold")
        sb, sc = sample_set(sampler, arrays["B"]), sample_set(sampler, arrays["C"])
        samples = {"B": sb, "C": sc}
        for op in ("union", "intersection", "symmetric_difference"):
            samples[op] = combine(op, sb, sc)
            mismatches += samples[op].keys != sample_set(sampler, arrays[op]).keys
        rate = sampler.rate
        for k, s in samples.items():
            estimates[k].append(estimate_size(s))
            mu = len(truth[k]) * rate
            sigma = math.sqrt(mu * (1 - rate))
            dev = abs(len(s) - mu)
            failures[k] += dev >= args.q * sigma if sigma > 0 else dev > 0
    cheb = verify.bound("chebyshev", q=args.q)
    print(f"p {sampler.rate:.6g} (t={sampler.t}, m=2^{sampler.l}) trials {args.trials}", file=out)
    print("set\ttrue\tmean_estimate\tstd_error\tanalytic_se\twithin_3se\tfail_rate\tchebyshev", file=out)
    rate = sampler.rate
    for k, est in estimates.items():
        n = len(truth[k])
        mean = sum(est) / len(est)
        var = sum((e - mean) ** 2 for e in est) / max(len(est) - 1, 1)
        se = math.sqrt(var / len(est))
        # Standard error implied by pairwise independence of the indicators.
        ase = math.sqrt(n * rate * (1 - rate) / len(est)) / rate
        ok = abs(mean - n) <= 3 * ase
        print(f"{k}\t{n}\t{mean:.2f}\t{se:.2f}\t{ase:.2f}\t{'yes' if ok else 'no'}"
              f"\t{failures[k] / args.trials:.4f}\t{cheb:.4f}", file=out)
    print(f"coordination_mismatches {mismatches}", file=out)
    return EXIT_FAIL if mismatches else EXIT_OK


# ---------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    seeds = argparse.ArgumentParser(add_help=False)
    g = seeds.add_argument_group("seeds")
    g.add_argument("--seed", type=_int, help="fixed 64-bit seed (default: system entropy, printed to stderr)")
    g.add_argument("--seed-file", help="replay seeds from a file of hex lines")
    g.add_argument("--print-seeds", metavar="PATH", help="write every drawn seed to PATH ('-' for stdout)")

    parser = argparse.ArgumentParser(prog="fasthash", description="Universal hashing toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("wordcount", parents=[seeds], help="count distinct words")
    p.add_argument("file")
    p.add_argument("--stats", action="store_true")
    p.add_argument("--fold-case", action="store_true", help="lowercase ASCII letters first")
    p.add_argument("--mode", choices=("signature", "key"), default="signature")
    p.add_argument("--sig-bits", type=int, default=64)
    p.set_defaults(func=cmd_wordcount)

    p = sub.add_parser("signature", parents=[seeds], help="hash a whole file")
    p.add_argument("file")
    p.add_argument("--bits", type=int, choices=(32, 64), default=64)
    p.set_defaults(func=cmd_signature)

    p = sub.add_parser("verify", parents=[seeds], help="run property checks")
    p.add_argument("--suite", choices=("exhaustive", "statistical", "all"), default="exhaustive")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--budget", type=int, default=verify.BUDGET)
    p.add_argument("--list-bounds", action="store_true")
    p.add_argument("--scheme", choices=sorted(verify.SCHEMES), help="check a single scheme exhaustively")
    for flag in ("--w", "--l", "--wbar", "--d", "--prime", "--m"):
        p.add_argument(flag, type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[seeds], help="throughput and operation counts")
    p.add_argument("--scheme", choices=BENCH_SCHEMES + ("all",), default="all")
    p.add_argument("--size", type=int, default=1 << 20)
    p.add_argument("--counts-only", action="store_true", help="omit timing columns")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("sample-sim", parents=[seeds], help="coordinated sampling simulation")
    p.add_argument("--universe", type=int, default=1 << 20)
    p.add_argument("--sets", default="0:100000,50000:150000")
    p.add_argument("--p", type=float, default=1 / 16)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--q", type=float, default=3.0)
    p.set_defaults(func=cmd_sample_sim)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        source = _source(args)
        code = args.func(args, source, out)
    except BudgetExceeded as e:
        print(f"fasthash: refused: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, InputError, ParameterError, CoordinationError, OSError) as e:
        print(f"fasthash: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.print_seeds is not None:
        text = dump_seeds(source.drawn)
        if args.print_seeds == "-":
            sys.stdout.write(text)
        else:
            Path(args.print_seeds).write_text(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
