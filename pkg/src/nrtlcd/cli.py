"""Command-line entry point: ``nrtlcd <verb> ...``.

JSON goes to stdout unless --plain is given.  Exit status is 0 on success,
2 on a usage error and 1 when the input is valid syntax but the request
cannot be met (bad file, impossible parameters, failed construction).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Sequence

from . import bounds, constructions, macwilliams, search
from .code import NrtCode, dual_code, gram_matrix, is_lcd, min_distance, standard_form, summarize
from .gf2core import MatrixFormatError
from .nrtspace import NrtVector, nrt_distance_vec, nrt_weight


class DomainError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None


def _load_code(path: str) -> NrtCode:
    text = _read(path)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise DomainError(f"{path}: expected a JSON object")
    try:
        return NrtCode.from_json(obj)
    except MatrixFormatError as exc:
        raise DomainError(f"{path}: generator {exc}") from None
    except KeyError as exc:
        raise DomainError(f"{path}: missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{path}: {exc}") from None


def _load_vector(path: str, n: int | None, s: int | None) -> NrtVector:
    text = _read(path)
    try:
        return NrtVector.parse(text, n, s)
    except MatrixFormatError as exc:
        raise DomainError(f"{path}: {exc}") from None
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"{path}: {exc}") from None


def _bits(text: str) -> list[int]:
    if not text or set(text) - {"0", "1"}:
        raise argparse.ArgumentTypeError(f"expected a 0/1 string, got {text!r}")
    return [int(c) for c in text]


# --- verbs -------------------------------------------------------------------


def cmd_weight(args) -> dict:
    v = _load_vector(args.file, args.n, args.s)
    return {"n": v.n, "s": v.s, "weight": nrt_weight(v)}


def cmd_distance(args) -> dict:
    if len(args.files) == 1:
        c = _load_code(args.files[0])
        return {"n": c.n, "s": c.s, "k": c.k, "d_N": min_distance(c)}
    u = _load_vector(args.files[0], args.n, args.s)
    v = _load_vector(args.files[1], args.n, args.s)
    try:
        return {"distance": nrt_distance_vec(u, v)}
    except ValueError as exc:
        raise DomainError(str(exc)) from None


def cmd_dual(args) -> dict:
    c = _load_code(args.file)
    if c.k == c.length:
        return {"n": c.n, "s": c.s, "k": 0, "generator": []}
    return dual_code(c).to_json()


def cmd_is_lcd(args) -> dict:
    c = _load_code(args.file)
    return {"is_lcd": is_lcd(c), "gram": gram_matrix(c).to_strings()}


def cmd_standard_form(args) -> dict:
    c = _load_code(args.file)
    if c.n != 1:
        raise DomainError("standard form needs n = 1")
    sf, type_ = standard_form(c)
    return {**sf.to_json(), "type": list(type_), "d_N": type_[0]}


def cmd_code(args) -> dict:
    return asdict(summarize(_load_code(args.file)))


def cmd_construct(args) -> dict:
    base = _load_code(args.base) if args.base else None
    report = constructions.build(args.name, s=args.s, k=args.k, n=args.n, x=args.x, base=base)
    out = report.to_json()
    out["d_N"] = min_distance(report.code)
    return out


def cmd_bounds(args) -> dict:
    try:
        reports = bounds.all_bounds(args.n, args.s, args.k, args.d, args.q)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    return {"n": args.n, "s": args.s, "k": args.k, "d": args.d, "bounds": [r.to_json() for r in reports]}


def cmd_macwilliams(args) -> dict:
    c = _load_code(args.file)
    if c.s != 2:
        raise DomainError("shape distributions need s = 2")
    primal = macwilliams.shape_distribution(c)
    transformed = macwilliams.macwilliams_transform(primal, c.k)
    if c.k < c.length:
        enumerated = macwilliams.shape_distribution(dual_code(c))
    else:
        enumerated = macwilliams.ShapeDistribution(c.n, {(c.n, 0, 0): 1})
    return {
        "n": c.n,
        "k": c.k,
        "primal": primal.to_json(),
        "dual": transformed.to_json(),
        "consistency": {
            "transform_matches_dual": transformed == enumerated,
            "lp_bound": all(bounds.lp_bound_check(primal, c.n, c.k).values()),
            "disjointness": macwilliams.lcd_disjointness(primal, transformed),
        },
    }


def cmd_search(args) -> dict:
    try:
        rec = search.lcd_max_distance(
            args.n,
            args.s,
            args.k,
            budget=args.budget,
            threads=args.threads,
            method=args.method,
            prune_with_bounds=not args.no_bound_pruning,
        )
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    return rec.to_json()


def cmd_table(args) -> dict:
    cache = args.cache or search.default_cache_path()
    ranges = search.grid(args.max_n, args.max_s, args.max_k)
    try:
        table = search.table_build(ranges, cache, budget=args.budget, threads=args.threads)
    except search.TableCorruptError as exc:
        raise DomainError(f"{exc}; refusing to overwrite") from None
    return {"cache": str(cache), "computed": table.computed, **table.to_json()}


def cmd_verify_claims(args) -> dict:
    results = search.verify_claims(args.max_n, args.max_s, args.max_k)
    return {
        "passed": sum(r.passed for r in results),
        "failed": sum(not r.passed for r in results),
        "claims": [r.to_json() for r in results],
        "_lines": [r.line() for r in results],
    }


# --- plumbing ----------------------------------------------------------------


def _plain(obj, prefix: str = "") -> list[str]:
    if isinstance(obj, dict):
        if "_lines" in obj:
            return list(obj["_lines"])
        out = []
        for key, val in obj.items():
            if isinstance(val, dict) or (isinstance(val, list) and not all(isinstance(x, str) for x in val)):
                out.extend(_plain(val, f"{prefix}{key}."))
            elif isinstance(val, list):
                out.append(f"{prefix}{key}: {' '.join(map(str, val))}")
            else:
                out.append(f"{prefix}{key}: {val}")
        return out
    if isinstance(obj, list):
        out = []
        for i, val in enumerate(obj):
            out.extend(_plain(val, f"{prefix}{i}."))
        return out
    return [f"{prefix.rstrip('.')}: {obj}"]


def build_parser() -> argparse.ArgumentParser:
    def common(defaults: bool) -> argparse.ArgumentParser:
        # options accepted before or after the verb; only the top level sets defaults
        kw = {} if defaults else {"default": argparse.SUPPRESS}
        c = argparse.ArgumentParser(add_help=False)
        c.add_argument("--plain", action="store_true", help="plain text instead of JSON", **kw)
        c.add_argument("--threads", type=int, help="worker processes for searches", **(kw or {"default": 1}))
        c.add_argument("-v", "--verbose", action="store_true", **kw)
        return c

    p = argparse.ArgumentParser(
        prog="nrtlcd", description="LCD codes in the NRT metric", parents=[common(True)]
    )
    sub = p.add_subparsers(dest="verb", required=True, metavar="verb")

    def verb(name, func, help_):
        sp = sub.add_parser(name, help=help_, parents=[common(False)])
        sp.set_defaults(func=func)
        return sp

    sp = verb("weight", cmd_weight, "NRT weight of a vector file")
    sp.add_argument("file")
    sp.add_argument("--n", type=int)
    sp.add_argument("--s", type=int)

    sp = verb("distance", cmd_distance, "minimum distance of a code, or distance between two vectors")
    sp.add_argument("files", nargs="+", metavar="file")
    sp.add_argument("--n", type=int)
    sp.add_argument("--s", type=int)

    for name, func, help_ in (
        ("dual", cmd_dual, "generator of the NRT dual"),
        ("is-lcd", cmd_is_lcd, "LCD test via the Gram matrix"),
        ("standard-form", cmd_standard_form, "standard form and type (n = 1)"),
    ):
        verb(name, func, help_).add_argument("file")

    sp = verb("code", cmd_code, "code utilities")
    sp.add_argument("action", choices=["summarize"])
    sp.add_argument("file")

    sp = verb("construct", cmd_construct, "run a named construction")
    sp.add_argument("name", choices=constructions.CONSTRUCTIONS)
    sp.add_argument("--s", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--x", type=_bits, help="0/1 string")
    sp.add_argument("--base", help="code file for constructions that extend a code")

    sp = verb("bounds", cmd_bounds, "all applicable bounds")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--d", type=int)
    sp.add_argument("--q", type=int, default=2)

    verb("macwilliams", cmd_macwilliams, "shape distributions of a code and its dual").add_argument("file")

    sp = verb("search", cmd_search, "exact LCD[n x s, k] by exhaustive search")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--budget", type=float, help="seconds before giving up")
    sp.add_argument("--method", choices=["auto", "standard", "rref"], default="auto")
    sp.add_argument("--no-bound-pruning", action="store_true")

    sp = verb("table", cmd_table, "build or extend a cached LCD table")
    sp.add_argument("--max-n", type=int, required=True)
    sp.add_argument("--max-s", type=int, required=True)
    sp.add_argument("--max-k", type=int)
    sp.add_argument("--cache", help="table path (default: $NRT_CACHE or nrt_table.json)")
    sp.add_argument("--budget", type=float, help="seconds per record")

    sp = verb("verify-claims", cmd_verify_claims, "check the existence claims on a small grid")
    sp.add_argument("--max-n", type=int, default=4)
    sp.add_argument("--max-s", type=int, default=7)
    sp.add_argument("--max-k", type=int, default=4)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        result = args.func(args)
    except (DomainError, constructions.ConstructionError, macwilliams.KernelInconsistencyError) as exc:
        print(f"nrtlcd {args.verb}: {exc}", file=sys.stderr)
        return 1
    if args.plain:
        print("\n".join(_plain(result)))
    else:
        result.pop("_lines", None)
        print(json.dumps(result, indent=1, sort_keys=False))
    return 0


if __name__ == "__main__":
    sys.exit(main())
