"""Command line front end: ``sl2coh {ext,scan,wq,verify,gamma,cache}``.

Exit codes: 0 success, 1 a verification failed, 2 usage error, 3 I/O or
cache-format error.  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import formats
from .engine import (
    CACHE_HEADER,
    CacheConflict,
    CacheFormatError,
    DimCache,
    cache_load,
    cache_save,
    dumps_cache,
    ext_dim,
)
from .enumerate import (
    cross_check_wq,
    gamma_lower_bound,
    scan_cohomological,
    scan_untwisted,
    verify_theorem_a,
)
from .families import HypothesisViolation, expand, wq_families
from .weights import Prime, parse_weight

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _prime(text):
    try:
        return int(Prime(int(parse_weight(text))))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _weight(text):
    try:
        return parse_weight(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _degree(text):
    try:
        return int(parse_weight(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


class _Parser(argparse.ArgumentParser):
    def exit(self, status=0, message=None):
        if message:
            sys.stderr.write(message)
        raise _Exit(status)


class _Exit(Exception):
    def __init__(self, status):
        self.status = status


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=formats.FORMATS, default="text")
    common.add_argument("--cache-file", help="load this cache before running and save it afterwards")
    common.add_argument(
        "--verify-cache",
        action="store_true",
        help="recompute every loaded cache entry and fail on any mismatch",
    )

    parser = _Parser(prog="sl2coh", description="Cohomology of simple SL2-modules in characteristic p.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("ext", parents=[common], help="dim Ext^q(Delta(r), L(lambda))")
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--q", type=_degree, required=True)
    p.add_argument("--r", type=_weight, default=0)
    p.add_argument("--lambda", dest="lam", type=_weight, required=True)

    bound_help = "inclusive upper bound on lambda"
    p = sub.add_parser("scan", parents=[common], help="list q-cohomological weights up to a bound")
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--q", type=_degree, required=True)
    p.add_argument("--bound", type=_weight, required=True, help=bound_help)
    p.add_argument("--untwisted-only", action="store_true")

    p = sub.add_parser("wq", parents=[common], help="families describing W_q, optionally expanded")
    p.add_argument("--q", type=_degree, required=True)
    p.add_argument("--p", type=_prime)
    p.add_argument("--bound", type=_weight, help=bound_help)

    p = sub.add_parser("verify", parents=[common], help="check the closed-form classifications for q <= 3")
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--bound", type=_weight, required=True, help=bound_help)

    p = sub.add_parser("gamma", parents=[common], help="largest dim H^q(L(lambda)) up to a bound")
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--q", type=_degree, required=True)
    p.add_argument("--bound", type=_weight, required=True, help=bound_help)

    p = sub.add_parser("cache", parents=[common], help="inspect, export or import cache files")
    p.add_argument("action", choices=["info", "export", "import"])
    p.add_argument("source", nargs="?", help="file to import (import only)")
    p.add_argument("--output", help="export destination (default: stdout)")
    return parser


def _load(args) -> DimCache:
    path = args.cache_file
    if path and os.path.exists(path):
        return cache_load(path, verify=args.verify_cache)
    return DimCache()


def _cmd_ext(args, cache, out):
    dim = ext_dim(args.q, args.r, args.lam, args.p, cache)
    out.write(formats.format_ext(args.p, args.q, args.r, args.lam, dim, args.format))
    return EXIT_OK


def _cmd_scan(args, cache, out):
    fn = scan_untwisted if args.untwisted_only else scan_cohomological
    out.write(formats.format_scan(fn(args.q, args.p, args.bound, cache), args.format))
    return EXIT_OK


def _cmd_wq(args, cache, out):
    if (args.p is None) != (args.bound is None):
        raise UsageError("wq: --p and --bound must be given together")
    fams = wq_families(args.q)
    expansion = None
    if args.p is not None:
        if args.p <= args.q:
            raise UsageError(f"wq: expansion needs p > q (got p={args.p}, q={args.q})")
        expansion = expand(fams, args.p, args.bound)
    out.write(formats.format_families(args.q, fams, expansion, args.p, args.format))
    return EXIT_OK


def _cmd_verify(args, cache, out):
    reports = verify_theorem_a(args.p, args.bound, cache)
    if args.p > 3:
        reports += [cross_check_wq(q, args.p, args.bound, cache) for q in (1, 2, 3)]
    out.write(formats.format_reports(args.p, args.bound, reports, args.format))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _cmd_gamma(args, cache, out):
    best, argmax = gamma_lower_bound(args.q, args.p, args.bound, cache)
    out.write(formats.format_gamma(args.p, args.q, args.bound, best, argmax, args.format))
    return EXIT_OK


def _cmd_cache(args, cache, out):
    if not args.cache_file:
        raise UsageError("cache: --cache-file is required")
    if args.action == "info":
        info = {
            "file": args.cache_file,
            "format": CACHE_HEADER,
            "entries": len(cache),
            "primes": cache.primes(),
        }
        if args.format == "json":
            out.write(formats.dumps(info))
        else:
            primes = " ".join(map(str, info["primes"])) or "-"
            out.write(f"file: {info['file']}\nformat: {info['format']}\nentries: {info['entries']}\nprimes: {primes}\n")
        return EXIT_OK
    if args.action == "export":
        if args.output:
            n = cache_save(cache, args.output)
            sys.stderr.write(f"exported {n} entries to {args.output}\n")
        else:
            out.write(dumps_cache(cache))
        return EXIT_OK
    if not args.source:
        raise UsageError("cache import: SOURCE file is required")
    incoming = cache_load(args.source, verify=args.verify_cache)
    before = len(cache)
    cache.merge(incoming)
    cache_save(cache, args.cache_file)
    out.write(f"imported {len(incoming)} entries ({len(cache) - before} new); cache now has {len(cache)}\n")
    return EXIT_OK


_COMMANDS = {
    "ext": _cmd_ext,
    "scan": _cmd_scan,
    "wq": _cmd_wq,
    "verify": _cmd_verify,
    "gamma": _cmd_gamma,
    "cache": _cmd_cache,
}


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _Exit as exc:
        return exc.status
    try:
        cache = _load(args)
        code = _COMMANDS[args.command](args, cache, out)
        if args.cache_file and args.command != "cache":
            cache_save(cache, args.cache_file)
        return code
    except (UsageError, HypothesisViolation) as exc:
        sys.stderr.write(f"sl2coh: error: {exc}\n")
        return EXIT_USAGE
    except (CacheFormatError, CacheConflict, OSError) as exc:
        sys.stderr.write(f"sl2coh: {exc}\n")
        return EXIT_IO


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
