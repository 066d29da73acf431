"""Command-line front end: ``stgen build|embed|extract|profile|experiment|verify``."""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .analysis import distortion_profile, efficiency_bound
from .codes import (PRACTICAL_ROWS, ParameterError, StGenParams, base_code, base_catalog, build_code,
                    generator_matrix, load_code, parity_check_matrix, save_code, practical_params,
                    to_descriptor)
from .decoder import DecodeFailure, DecoderConfig, decode_close
from .embed import StegoContext
from .experiments import run_experiment, practical_codes, to_csv
from .framing import CapacityError, IntegrityError, embed_bytes, extract_bytes
from .gf2 import BitVector
from .oracle import covering_radius, nearest_codeword

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_CAPACITY, EXIT_VERIFY = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _DataError(Exception):
    pass


def _decoder_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--w1", type=int, default=2)
    p.add_argument("--wb", type=int, default=2)
    p.add_argument("--L", type=int, default=256)
    p.add_argument("--retry-limit", type=int, default=3)


def _decoder_cfg(args) -> DecoderConfig:
    try:
        return DecoderConfig(args.w1, args.wb, args.L, args.retry_limit)
    except ValueError as exc:
        raise ParameterError(str(exc)) from exc


def _load(path: str):
    try:
        return load_code(path)
    except OSError as exc:
        raise _DataError(f"cannot read descriptor: {exc}") from exc
    except ParameterError as exc:
        raise _DataError(f"bad descriptor {path}: {exc}") from exc


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise _DataError(str(exc)) from exc


def _params_from_args(args) -> StGenParams:
    if args.table2_row is not None:
        if args.target_n is None:
            raise ParameterError("--table2-row needs --target-n")
        return practical_params(args.table2_row, args.target_n, args.seed)
    missing = [f for f in ("k1", "n1", "k2", "n2", "base", "v") if getattr(args, f) is None]
    if missing:
        raise ParameterError(f"missing flags: {', '.join('--' + m for m in missing)}")
    return StGenParams(args.k1, args.n1, args.k2, args.n2, base_code(args.base), args.v, args.seed)


def cmd_build(args) -> int:
    code = build_code(_params_from_args(args))
    save_code(code, args.output)
    print(json.dumps({"n": code.n, "k": code.k, "alpha": code.r / code.n, "output": args.output}))
    return EXIT_OK


def cmd_embed(args) -> int:
    ctx = StegoContext(_load(args.code), _decoder_cfg(args))
    cover = _read(args.cover)
    message = _read(args.message)
    stego, stats = embed_bytes(ctx, cover, message)
    Path(args.output).write_bytes(stego)
    print(json.dumps(stats.as_dict()))
    return EXIT_OK


def cmd_extract(args) -> int:
    ctx = StegoContext(_load(args.code))
    message = extract_bytes(ctx, _read(args.stego))
    Path(args.output).write_bytes(message)
    return EXIT_OK


def cmd_profile(args) -> int:
    code = _load(args.code)
    cfg = _decoder_cfg(args)
    prof = distortion_profile(code.params, cfg)
    alpha = code.r / code.n
    print(json.dumps({
        "n": code.n,
        "k": code.k,
        "alpha": alpha,
        "R_alg": prof.R_alg,
        "theory_e_a": code.r / prof.R_alg if prof.R_alg else None,
        "bound_e": efficiency_bound(alpha),
        "w_schedule": list(prof.w_schedule),
        "expected_list_sizes": list(prof.expected_list_sizes),
    }))
    return EXIT_OK


def cmd_experiment(args) -> int:
    if args.code:
        codes = [(None, _load(p)) for p in args.code]
    else:
        rows = args.rows or list(range(1, len(PRACTICAL_ROWS) + 1))
        for r in rows:
            if not 1 <= r <= len(PRACTICAL_ROWS):
                raise ParameterError(f"row must be in 1..{len(PRACTICAL_ROWS)}, got {r}")
        codes = list(practical_codes(rows, tuple(args.lengths), args.code_seed))
    records = run_experiment(codes, args.trials, args.w1, tuple(args.wb or [2]), tuple(args.L or [256]),
                             str(args.seed))
    text = to_csv(records)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- verify -------------------------------------------------------------------

def _check_table1() -> dict:
    radii = {c.id: covering_radius(c.generator()) for c in base_catalog()}
    return {"check": "table1_radius", "pass": all(r == c.R for r, c in zip(radii.values(), base_catalog())),
            "detail": radii}


def _check_gh(code) -> dict:
    G, H = generator_matrix(code), parity_check_matrix(code)
    return {"check": "g_ht_zero", "pass": (G @ H.transpose()).is_zero(), "detail": {"n": code.n, "k": code.k}}


def _check_determinism(code) -> dict:
    same = to_descriptor(build_code(code.params)) == to_descriptor(code)
    return {"check": "determinism", "pass": same, "detail": {"seed": code.params.seed}}


def _check_oracle(count: int, seed: int) -> dict:
    rng = random.Random(seed)
    cfg = DecoderConfig()
    catalog = base_catalog()
    gaps = []
    failures = 0
    while len(gaps) < count:
        base = rng.choice(catalog)
        k1, n1 = rng.randint(1, 6), rng.randint(1, 3)
        k2, n2 = base.k, base.n - base.k
        v_max = min((14 - k1) // k2, (24 - k1 - n1) // (k2 + n2)) + 1
        v = rng.randint(1, max(1, v_max))
        code = build_code(StGenParams(k1, n1, k2, n2, base, v, rng.getrandbits(32)))
        c0 = BitVector.random(code.n, rng)
        _, d = nearest_codeword(generator_matrix(code), c0)
        try:
            w = decode_close(code, c0, cfg).weight
        except DecodeFailure:
            failures += 1
            continue
        gaps.append(w - d)
    ok = min(gaps) >= 0 and failures == 0
    return {"check": "decoder_vs_oracle", "pass": ok,
            "detail": {"codes": count, "mean_gap": sum(gaps) / len(gaps), "min_gap": min(gaps),
                       "exact": sum(g == 0 for g in gaps), "decode_failures": failures}}


def cmd_verify(args) -> int:
    results = [_check_table1()]
    codes = [_load(p) for p in args.code] if args.code else [c for _, c in practical_codes(lengths=(1000,))]
    for code in codes:
        results.append(_check_gh(code))
        results.append(_check_determinism(code))
    results.append(_check_oracle(args.oracle_codes, args.seed))
    for r in results:
        print(json.dumps(r))
    return EXIT_OK if all(r["pass"] for r in results) else EXIT_VERIFY


# -- entry point --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="stgen", description="Staircase-generator codes for matrix embedding.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="materialize a code descriptor")
    b.add_argument("--table2-row", type=int)
    b.add_argument("--target-n", type=int)
    for flag in ("k1", "n1", "k2", "n2", "v"):
        b.add_argument(f"--{flag}", type=int)
    b.add_argument("--base", help="base code id, e.g. (3,2)1")
    b.add_argument("--seed", type=int, default=0, help="seed for the random blocks")
    b.add_argument("-o", "--output", required=True)
    b.set_defaults(func=cmd_build)

    e = sub.add_parser("embed", help="hide a message file in a cover file")
    e.add_argument("code")
    e.add_argument("cover")
    e.add_argument("message")
    e.add_argument("-o", "--output", required=True)
    _decoder_args(e)
    e.set_defaults(func=cmd_embed)

    x = sub.add_parser("extract", help="recover a message from a stego file")
    x.add_argument("code")
    x.add_argument("stego")
    x.add_argument("-o", "--output", required=True)
    x.set_defaults(func=cmd_extract)

    pr = sub.add_parser("profile", help="expected distortion of the list decoder")
    pr.add_argument("code")
    _decoder_args(pr)
    pr.set_defaults(func=cmd_profile)

    ex = sub.add_parser("experiment", help="Monte-Carlo distortion experiments as CSV")
    ex.add_argument("--code", action="append", help="descriptor file (repeatable); default: practical rows")
    ex.add_argument("--rows", type=int, nargs="+")
    ex.add_argument("--lengths", type=int, nargs="+", default=[1000, 1500])
    ex.add_argument("--trials", type=int, default=50)
    ex.add_argument("--w1", type=int, default=2)
    ex.add_argument("--wb", type=int, action="append")
    ex.add_argument("--L", type=int, action="append")
    ex.add_argument("--seed", type=int, default=0, help="seed for covers and messages")
    ex.add_argument("--code-seed", type=int, default=0)
    ex.add_argument("-o", "--output")
    ex.set_defaults(func=cmd_experiment)

    v = sub.add_parser("verify", help="self-checks against exhaustive oracles")
    v.add_argument("--code", action="append", help="descriptor to check (repeatable)")
    v.add_argument("--oracle-codes", type=int, default=20)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"stgen: parameter error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (_DataError, IntegrityError) as exc:
        print(f"stgen: {exc}", file=sys.stderr)
        return EXIT_DATA
    except CapacityError as exc:
        print(f"stgen: capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except DecodeFailure as exc:
        print(f"stgen: decoding failed: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
