"""``arw`` command line: symmetric-function calculator, walk runner, caches.

Exit codes: 0 success, 1 unexpected failure, 2 bad input (usage, config,
parse or degree errors), 3 branch cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import cache
from .arw import BranchCapError
from .characters import char_table, save_table
from .coalgebra import COPRODUCT_KINDS, coproduct, format_tensor
from .expr import ExpressionError, parse_symfunc
from .partitions import (
    DegreeCapError,
    conjugate,
    content_matrix,
    format_partition,
    hook_matrix,
    n_of,
    parse_partition,
    partitions_of,
    set_degree_cap,
    get_degree_cap,
    z_of,
)
from .symfunc import (
    BASES,
    antipode,
    format_terms,
    hall_inner,
    inner_product_op,
    outer_product,
    perp,
    plethysm,
    save_coefficient_table,
    coefficient_table,
)
from .walk import SCHEMA, ConfigError, load_config, run, write_trace

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BRANCH_CAP = 0, 1, 2, 3
CACHE_BUILD_MAX = 14


def default_cache_dir() -> Path:
    env = os.environ.get(cache.ENV_VAR)
    return Path(env) if env else Path.home() / ".cache" / "symarw"


def _fmt(x) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


# ---------------------------------------------------------------------------
# sf

def _sf(args) -> int:
    cap = args.degree_cap
    parse = lambda text: parse_symfunc(text, cap)  # noqa: E731
    op = args.sf_command
    if op in ("mul", "inner", "pleth"):
        f, g = parse(args.f), parse(args.g)
        fn = {"mul": outer_product, "inner": inner_product_op, "pleth": plethysm}[op]
        result = fn(f, g)
        basis = args.basis or f.basis
        print(format_terms(result.to_basis(basis)))
    elif op == "skew":
        f, g = parse(args.f), parse(args.g)
        print(format_terms(perp(g, f).to_basis(args.basis or f.basis)))
    elif op == "coproduct":
        f = parse(args.f)
        basis = args.basis or f.basis
        print(format_tensor(coproduct(args.kind, f), (basis, basis)))
    elif op == "convert":
        print(format_terms(parse(args.f).to_basis(args.to)))
    elif op == "pair":
        print(_fmt(hall_inner(parse(args.f), parse(args.g))))
    elif op == "antipode":
        f = parse(args.f)
        print(format_terms(antipode(f).to_basis(args.basis or f.basis)))
    return EXIT_OK


# ---------------------------------------------------------------------------
# partition

def _rows(matrix) -> str:
    return " ".join("(" + ",".join(str(x) for x in row) + ")" for row in matrix)


def _partition(args) -> int:
    op = args.partition_command
    if op == "enumerate":
        for lam in partitions_of(args.n, args.degree_cap):
            print(format_partition(lam))
        return EXIT_OK
    lam = parse_partition(args.partition)
    if op == "conjugate":
        print(format_partition(conjugate(lam)))
    elif op == "hooks":
        print(_rows(hook_matrix(lam)))
    elif op == "contents":
        print(_rows(content_matrix(lam)))
    elif op == "z":
        print(z_of(lam))
    elif op == "info":
        print(f"partition: {format_partition(lam)}")
        print(f"weight: {sum(lam)}")
        print(f"length: {len(lam)}")
        print(f"conjugate: {format_partition(conjugate(lam))}")
        print(f"n: {n_of(lam)}")
        print(f"z: {z_of(lam)}")
        print(f"contents: {_rows(content_matrix(lam))}")
        print(f"hooks: {_rows(hook_matrix(lam))}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# cache

def _cache(args) -> int:
    if args.cache_command == "build":
        n_max = args.degree
        if n_max > CACHE_BUILD_MAX:
            raise DegreeCapError(f"cache build is limited to degree {CACHE_BUILD_MAX}")
        directory = cache.cache_dir()
        if directory is None:
            print("error: cache is disabled", file=sys.stderr)
            return EXIT_USAGE
        set_degree_cap(max(get_degree_cap(), n_max))
        for n in range(n_max + 1):
            save_table(char_table(n, n_max))
            for kind in ("outer", "inner", "pleth"):
                coefficient_table(kind, n)
                save_coefficient_table(kind, n)
        print(f"cache written to {directory} for degrees 0..{n_max}")
    elif args.cache_command == "path":
        print(cache.cache_dir() or "(disabled)")
    return EXIT_OK


# ---------------------------------------------------------------------------
# run

def _run_one(config_path: str, out: str | None, cache_setting) -> tuple[str, int, str]:
    """Worker entry point; returns (config, exit code, message)."""
    _apply_cache(cache_setting)
    try:
        config = load_config(config_path)
        records = run(config)
        csv_path, json_path = write_trace(records, config, out or config.out_dir or ".")
    except ConfigError as exc:
        return config_path, EXIT_USAGE, str(exc)
    except BranchCapError as exc:
        return config_path, EXIT_BRANCH_CAP, f"{config_path}: {exc}"
    except (DegreeCapError, ValueError) as exc:
        return config_path, EXIT_USAGE, f"{config_path}: {exc}"
    return config_path, EXIT_OK, f"wrote {csv_path} and {json_path}"


def _run(args, cache_setting) -> int:
    target = Path(args.config)
    if target.is_dir():
        configs = sorted(str(p) for p in target.glob("*.json"))
        if not configs:
            print(f"error: no *.json configs in {target}", file=sys.stderr)
            return EXIT_USAGE
    else:
        configs = [str(target)]
    if args.jobs > 1 and len(configs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_one, configs, [args.out] * len(configs),
                                    [cache_setting] * len(configs)))
    else:
        results = [_run_one(c, args.out, cache_setting) for c in configs]
    status = EXIT_OK
    for _, code, message in results:
        print(message, file=sys.stderr if code else sys.stdout)
        status = max(status, code)
    return status


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--degree-cap", type=int, default=None, help="global degree cap N")
    common.add_argument("--cache-dir", default=None, help="table cache directory")
    common.add_argument("--no-cache", action="store_true", help="do not read or write tables")
    common.add_argument("--stats", action="store_true", help="print cache counters to stderr")

    parser = argparse.ArgumentParser(prog="arw", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", parents=[common], help="run a walk config (or a directory of them)")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--out", default=None, help="output directory for traces")
    p_run.add_argument("--jobs", type=int, default=1)

    p_sf = sub.add_parser("sf", help="symmetric-function calculator")
    sf = p_sf.add_subparsers(dest="sf_command", required=True)
    for name, text in (("mul", "outer product"), ("inner", "inner (Kronecker) product"),
                       ("pleth", "plethysm f[g]"), ("skew", "g-perp applied to f"),
                       ("pair", "Hall pairing")):
        p = sf.add_parser(name, parents=[common], help=text)
        p.add_argument("f")
        p.add_argument("g")
        if name != "pair":
            p.add_argument("--basis", choices=BASES)
    p = sf.add_parser("coproduct", parents=[common], help="coproduct into the tensor square")
    p.add_argument("--kind", choices=COPRODUCT_KINDS, default="outer")
    p.add_argument("--basis", choices=BASES)
    p.add_argument("f")
    p = sf.add_parser("convert", parents=[common], help="change basis")
    p.add_argument("--to", choices=BASES, required=True)
    p.add_argument("f")
    p = sf.add_parser("antipode", parents=[common], help="antipode")
    p.add_argument("--basis", choices=BASES)
    p.add_argument("f")

    p_part = sub.add_parser("partition", help="partition utilities")
    part = p_part.add_subparsers(dest="partition_command", required=True)
    for name in ("conjugate", "hooks", "contents", "z", "info"):
        part.add_parser(name, parents=[common]).add_argument("partition")
    part.add_parser("enumerate", parents=[common]).add_argument("n", type=int)

    p_cache = sub.add_parser("cache", help="table cache")
    cs = p_cache.add_subparsers(dest="cache_command", required=True)
    cs.add_parser("build", parents=[common]).add_argument("--degree", type=int, required=True)
    cs.add_parser("path", parents=[common])

    sub.add_parser("schema", help="print the walk config JSON schema")
    return parser


def _cache_setting(args):
    if getattr(args, "no_cache", False):
        return None
    return str(args.cache_dir) if getattr(args, "cache_dir", None) else str(default_cache_dir())


def _apply_cache(setting) -> None:
    if setting is None:
        cache.disable()
    else:
        cache.set_cache_dir(setting)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "schema":
        print(json.dumps(SCHEMA, indent=2))
        return EXIT_OK
    if getattr(args, "degree_cap", None) is not None and args.degree_cap < 0:
        print("error: --degree-cap must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    previous_cap = get_degree_cap()
    try:
        return _dispatch(args)
    finally:
        set_degree_cap(previous_cap)


def _dispatch(args) -> int:
    setting = _cache_setting(args)
    _apply_cache(setting)
    if getattr(args, "degree_cap", None) is not None:
        set_degree_cap(args.degree_cap)
    try:
        if args.command == "run":
            status = _run(args, setting)
        elif args.command == "sf":
            status = _sf(args)
        elif args.command == "partition":
            status = _partition(args)
        else:
            status = _cache(args)
    except ExpressionError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        status = EXIT_USAGE
    except BranchCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        status = EXIT_BRANCH_CAP
    except (DegreeCapError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        status = EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        status = EXIT_FAIL
    if getattr(args, "stats", False):
        for key in sorted(cache.STATS):
            print(f"{key}: {cache.STATS[key]}", file=sys.stderr)
        if "chars_tables_computed" not in cache.STATS:
            print("chars_tables_computed: 0", file=sys.stderr)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
