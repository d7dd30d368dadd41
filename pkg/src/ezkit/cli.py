"""Command-line driver: ``ezkit <verb> [options]``.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 degree bound
too small, 4 unsupported base category.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from typing import Sequence

from . import corpus
from .bipresheaf import base_category, bi_skeleton, latching_formula_levels, latching_object
from .category import EZCategory, ProductCategory, parse_category
from .diagonal import diagonal
from .errors import BoundError, ParseError, UnsupportedBaseError
from .homotopy import homology
from .presheaf import CellComplex, boundary, skeleton
from .textio import dump_complex, dump_map, parse_object, read_complex, shape_token
from .verify import SUITES, Options, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BOUND, EXIT_UNSUPPORTED = 0, 1, 2, 3, 4


class _Out:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def text(self, line: str = "") -> None:
        self.stream.write(line + "\n")

    def record(self, **fields) -> None:
        self.stream.write(json.dumps(fields, sort_keys=True, ensure_ascii=False) + "\n")


def _category(args) -> EZCategory:
    bound = 3 if args.degree_bound is None else args.degree_bound
    try:
        return parse_category(args.category, bound)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _emit_complex(args, K: CellComplex, comment: str) -> None:
    text = dump_complex(K, comment)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# verbs


def cmd_describe(args, out: _Out) -> int:
    K = read_complex(args.file)
    census = K.census()
    top = max(K.dimension, 0)
    if out.fmt == "records":
        out.record(category=K.category.spec, bound=K.category.bound, cells=len(K.cells),
                   dimension=K.dimension)
        for n in range(top + 1):
            out.record(degree=n, cells=census.get(n, 0))
    else:
        out.text(f"category {K.category.spec} (bound {K.category.bound})")
        out.text(f"cells {len(K.cells)}, dimension {K.dimension}")
        for n in range(top + 1):
            out.text(f"degree {n}: {census.get(n, 0)}")
    return EXIT_OK


def cmd_skeleton(args, out: _Out) -> int:
    if args.n is None:
        raise ParseError("skeleton needs --n")
    K = read_complex(args.file)
    if base_is_bi(K):
        S, _ = bi_skeleton(K, args.n)
    else:
        S, _ = skeleton(K, args.n)
    _emit_complex(args, S, f"{args.n}-skeleton of {os.path.basename(args.file)}")
    return EXIT_OK


def base_is_bi(K: CellComplex) -> bool:
    cat = K.category
    return isinstance(cat, ProductCategory) and cat.first == cat.second and cat.total is None


def cmd_boundary(args, out: _Out) -> int:
    if args.object is None:
        raise ParseError("boundary needs --object")
    A = _category(args)
    a = parse_object(A, args.object)
    _emit_complex(args, boundary(A, a), f"boundary of the representable on {args.object}")
    return EXIT_OK


def cmd_homology(args, out: _Out) -> int:
    K = read_complex(args.file)
    h = homology(K)
    if out.fmt == "records":
        for r in h.records():
            out.record(**r)
    else:
        out.text(str(h) if h.ranks else "empty complex: all homology vanishes")
    return EXIT_OK


def cmd_diag(args, out: _Out) -> int:
    if args.mode is None:
        raise ParseError("diag needs --mode {cat,join,geom}")
    X = read_complex(args.file)
    try:
        A = base_category(X)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    target = A.with_bound(args.degree_bound) if args.degree_bound is not None else None
    K = diagonal(X, args.mode, target)
    _emit_complex(args, K, f"{args.mode} diagonal of {os.path.basename(args.file)}")
    return EXIT_OK


def cmd_latch(args, out: _Out) -> int:
    if args.object is None:
        raise ParseError("latch needs --object")
    if args.file:
        X = read_complex(args.file)
        try:
            A = base_category(X)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        b = parse_object(A, args.object)
        L, _ = latching_object(X, b)
        _emit_complex(args, L, f"latching object at {args.object} of {os.path.basename(args.file)}")
        return EXIT_OK
    A = _category(args)
    b = parse_object(A, args.object)
    objs = [a for a in A.objects() if A.degree(a) <= 2 or args.degree_bound is not None]
    failures = 0
    for a in objs:
        for a2 in objs:
            res = latching_formula_levels((a, a2), b, A, objs, seed=args.seed)
            for c, ok in res.items():
                failures += not ok
                fields = dict(a=shape_token(A, a), a2=shape_token(A, a2), b=args.object,
                              c=shape_token(A, c), ok=ok)
                if out.fmt == "records":
                    out.record(**fields)
                else:
                    out.text(f"{'PASS' if ok else 'FAIL'} (a,a')=({fields['a']},{fields['a2']}) "
                             f"b={args.object} c={fields['c']}")
    return EXIT_FAIL if failures else EXIT_OK


def cmd_verify(args, out: _Out) -> int:
    opts = Options(category=_category(args) if args.category_given else None,
                   bound=args.degree_bound, seed=args.seed)
    start = time.perf_counter()
    verdicts = run_suite(args.suite, opts)
    failed = [v for v in verdicts if not v.ok]
    if out.fmt == "records":
        for v in verdicts:
            out.record(**v.record())
        out.record(summary=True, checks=len(verdicts), failed=len(failed),
                   counters=dict(sorted(opts.counters.items())))
    else:
        for v in verdicts:
            out.text(f"{'PASS' if v.ok else 'FAIL'} {v.name}: {v.detail}")
        out.text(f"{len(verdicts)} checks, {len(failed)} failed")
        print(f"elapsed {time.perf_counter() - start:.1f}s", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def _slug(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "-", name.replace("⊠", "x")).strip("-").lower()


def cmd_examples(args, out: _Out) -> int:
    bound = 3 if args.degree_bound is None else args.degree_bound
    os.makedirs(args.out, exist_ok=True)
    written = []
    for name, K in corpus.builtin_complexes(bound).items():
        path = os.path.join(args.out, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dump_complex(K, name))
        written.append((name, K))
    maps_dir = os.path.join(args.out, "maps")
    os.makedirs(maps_dir, exist_ok=True)
    for spec in ("simplex", "box", "boxc"):
        for m in corpus.diagonal_lemma_family(parse_category(spec, 2)):
            name = f"{spec}-{_slug(m.name)}"
            with open(os.path.join(maps_dir, name), "w", encoding="utf-8") as fh:
                fh.write(dump_map(m.map, m.name))
            written.append((f"maps/{name}", None))
    for name, K in written:
        if out.fmt == "records":
            out.record(name=name, cells=len(K.cells) if K is not None else None)
        else:
            out.text(name)
    return EXIT_OK


VERBS = {
    "describe": cmd_describe, "skeleton": cmd_skeleton, "boundary": cmd_boundary,
    "homology": cmd_homology, "diag": cmd_diag, "latch": cmd_latch,
    "verify": cmd_verify, "examples": cmd_examples,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ezkit", description=(
        "Finite presheaves on Eilenberg-Zilber categories: skeleta, latching objects, "
        "diagonals, homology and invariant sweeps."))
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")

    def common(p):
        p.add_argument("--category", default=None,
                       help="simplex | box | boxc | product:<A> | slice:<A>@<apex>")
        p.add_argument("--degree-bound", type=int, default=None, metavar="D")
        p.add_argument("--format", choices=("text", "records"), default="text")
        p.add_argument("--seed", type=int, default=0)
        return p

    p = common(sub.add_parser("describe", help="cell census of a complex"))
    p.add_argument("file")
    p = common(sub.add_parser("skeleton", help="write the n-skeleton"))
    p.add_argument("file")
    p.add_argument("--n", type=int)
    p.add_argument("--out")
    p = common(sub.add_parser("boundary", help="write the boundary of a representable"))
    p.add_argument("--object")
    p.add_argument("--out")
    p = common(sub.add_parser("homology", help="integral homology"))
    p.add_argument("file")
    p = common(sub.add_parser("diag", help="write a diagonal of a bicomplex"))
    p.add_argument("file")
    p.add_argument("--mode", choices=("cat", "join", "geom"))
    p.add_argument("--out")
    p = common(sub.add_parser("latch", help="latching object, or the formula check on "
                                            "representables when no file is given"))
    p.add_argument("file", nargs="?")
    p.add_argument("--object")
    p.add_argument("--out")
    p = common(sub.add_parser("verify", help="run an invariant sweep"))
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    p = common(sub.add_parser("examples", help="write the built-in corpus"))
    p.add_argument("--out", default="corpus")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    args.category_given = args.category is not None
    if args.category is None:
        args.category = "simplex"
    out = _Out(args.format)
    try:
        return VERBS[args.verb](args, out)
    except BoundError as exc:
        req = ""
        if exc.required is not None and "required" not in str(exc):
            req = f" (required bound {exc.required})"
        print(f"error: {exc}{req}", file=sys.stderr)
        return EXIT_BOUND
    except UnsupportedBaseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
