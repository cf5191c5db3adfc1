"""Command-line interface.

Exit codes: 0 success, 1 validation or predicate failure, 2 parse error.
Results go to standard output, diagnostics to standard error.
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import combi, cubillage as cub, fragmentation as frag, io, svg, tiling, wextend
from .subsets import (Kind, SeparationError, fmt, greedy_complete, is_maximal_in,
                      rank_formula, subset, verify_purity, violating_pair)

OK, FAIL, PARSE = 0, 1, 2


class Failure(Exception):
    """A validation or predicate failure (exit code 1)."""


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _kind(text: str) -> Kind:
    try:
        return Kind.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _out(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get("SEPSYS_SEED", "0"))


# -- handlers ---------------------------------------------------------------

def cmd_sep_check(args) -> int:
    c = io.load_collection(args.file)
    pair = violating_pair(args.kind, c.members, c.n)
    if pair is not None:
        raise Failure(f"not {args.kind.name.lower()} separated: {fmt(pair[0])} and {fmt(pair[1])}")
    maximal = is_maximal_in(args.kind, c.members, c.n)
    print(f"separated {len(c.members)} members; maximal: {'yes' if maximal else 'no'}; "
          f"rank {rank_formula(args.kind, c.n)}")
    return OK


def cmd_sep_complete(args) -> int:
    c = io.load_collection(args.file)
    try:
        done = greedy_complete(args.kind, c.members, c.n)
    except SeparationError as e:
        raise Failure(str(e)) from None
    _out(io.format_collection(c.n, done), args.output)
    return OK


def cmd_rank(args) -> int:
    print(rank_formula(args.kind, args.n))
    return OK


def cmd_purity(args) -> int:
    try:
        rep = verify_purity(args.kind, args.n, trials=None if args.exhaustive else args.trials,
                            seed=_seed(args), exhaustive=args.exhaustive)
    except ValueError as e:
        raise Failure(str(e)) from None
    print(rep.summary())
    return OK if rep.ok else FAIL


def _load_tiling(path: str) -> tiling.Tiling:
    c = io.load_collection(path)
    try:
        return tiling.tiling_from_s_collection(c.members, c.n)
    except tiling.TilingError as e:
        raise Failure(str(e)) from None


def cmd_tiling_build(args) -> int:
    t = _load_tiling(args.file)
    for x, i, j in sorted(t.rhombi, key=lambda r: (r[1], r[2])):
        print(f"rhombus {io.subset_literal(x)} | {i} {j}")
    return OK


def cmd_tiling_flip(args) -> int:
    t = _load_tiling(args.file)
    base = subset(args.base) if args.base != "-" else 0
    i, j, k = sorted(args.colors)
    present = [h for h in tiling.find_hexagons(t) if (h.base, h.i, h.j, h.k) == (base, i, j, k)]
    if not present:
        raise Failure(f"no hexagon H({fmt(base)}|{i}{j}{k}) in the tiling")
    _out(io.format_collection(t.n, tiling.strong_flip(t, present[0]).spectrum), args.output)
    return OK


def cmd_tiling_inversions(args) -> int:
    t = _load_tiling(args.file)
    for i, j, k in sorted(tiling.inversion_set(t)):
        print(i, j, k)
    return OK


def cmd_combi_build(args) -> int:
    c = io.load_collection(args.file)
    try:
        k = combi.combi_from_w_collection(c.members, c.n)
    except combi.CombiError as e:
        raise Failure(str(e)) from None
    for t in sorted(k.tiles):
        print(t)
    return OK


def cmd_cub_build(args) -> int:
    c = io.load_collection(args.file)
    try:
        q = cub.cubillage_from_c_collection(c.members, c.n)
    except cub.CubillageError as e:
        raise Failure(str(e)) from None
    _out(io.format_cubillage(q), args.output)
    return OK


def cmd_cub_validate(args) -> int:
    q = io.load_cubillage(args.file)
    problems = cub.validate_cubillage(q)
    if problems:
        raise Failure("\n".join(problems))
    print(f"valid cubillage: {len(q)} cubes, spectrum {len(q.spectrum)}")
    return OK


def _color(q: cub.Cubillage, text: str) -> int:
    if text == "n":
        return q.n
    try:
        return int(text)
    except ValueError:
        raise Failure(f"bad colour {text!r}") from None


def cmd_cub_contract(args) -> int:
    q = io.load_cubillage(args.file)
    if cub.validate_cubillage(q):
        raise Failure("input cubillage is not valid")
    try:
        q2, m = cub.contract(q, _color(q, args.color))
    except cub.CubillageError as e:
        raise Failure(str(e)) from None
    _out(io.format_cubillage(q2), args.output)
    if args.membrane:
        spectrum = tiling.Tiling(q2.n, m).spectrum
        with open(args.membrane, "w", encoding="utf-8") as fh:
            fh.write(io.format_collection(q2.n, spectrum))
    return OK


def cmd_cub_expand(args) -> int:
    q = io.load_cubillage(args.file)
    t = _load_tiling(args.membrane)
    if t.n != q.n:
        raise Failure("membrane and cubillage have different ground sets")
    color = q.n + 1 if args.color == "n" else int(args.color)
    try:
        m = cub.membrane_from_tiling(q, t) if q.cubes else t.rhombi
        q2 = cub.expand(q, m, color)
    except (cub.CubillageError, ValueError) as e:
        raise Failure(str(e)) from None
    _out(io.format_cubillage(q2), args.output)
    return OK


def cmd_cub_membranes(args) -> int:
    q = io.load_cubillage(args.file)
    if cub.validate_cubillage(q):
        raise Failure("input cubillage is not valid")
    ms = cub.s_membranes(q)
    print(f"{len(ms)} s-membranes")
    for m in ms:
        spec = tiling.Tiling(q.n, m).spectrum
        print(" ".join(fmt(v) for v in sorted(spec)))
    return OK


def cmd_wextend(args) -> int:
    c = io.load_collection(args.file)
    try:
        res = wextend.extend_w_to_c(c.members, c.n, args.lens_policy)
    except (wextend.ExtensionError, combi.CombiError) as e:
        raise Failure(str(e)) from None
    problems = wextend.verify_extension(c.members, res.cubillage)
    if problems:
        raise Failure("\n".join(problems))
    _out(io.format_collection(c.n, res.spectrum), args.output)
    if args.emit_cubillage:
        with open(args.emit_cubillage, "w", encoding="utf-8") as fh:
            fh.write(io.format_cubillage(res.cubillage))
    return OK


def cmd_render(args) -> int:
    if args.what == "tiling":
        text = svg.tiling_svg(_load_tiling(args.file))
    elif args.what == "combi":
        c = io.load_collection(args.file)
        try:
            text = svg.combi_svg(combi.combi_from_w_collection(c.members, c.n))
        except combi.CombiError as e:
            raise Failure(str(e)) from None
    else:
        q = io.load_cubillage(args.file)
        if cub.validate_cubillage(q):
            raise Failure("input cubillage is not valid")
        if not 1 <= args.level <= q.n - 1:
            raise Failure(f"level must lie in [1, {q.n - 1}]")
        text = svg.section_svg(frag.fragment(q), args.level)
    svg.write_svg(text, args.svg)
    return OK


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sepsys", description="Separated set-systems toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    sep = sub.add_parser("sep", help="separation predicates on a collection file")
    ssub = sep.add_subparsers(dest="action", required=True)
    s = ssub.add_parser("check")
    s.add_argument("--kind", type=_kind, required=True)
    s.add_argument("file")
    s.set_defaults(func=cmd_sep_check)
    s = ssub.add_parser("complete")
    s.add_argument("--kind", type=_kind, required=True)
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_sep_complete)

    s = sub.add_parser("rank", help="rank formula")
    s.add_argument("--kind", type=_kind, required=True)
    s.add_argument("-n", type=int, required=True)
    s.set_defaults(func=cmd_rank)

    s = sub.add_parser("purity", help="check that all maximal collections have one size")
    s.add_argument("--kind", type=_kind, required=True)
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--exhaustive", action="store_true")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_purity)

    til = sub.add_parser("tiling", help="rhombus tilings from maximal s-collections")
    tsub = til.add_subparsers(dest="action", required=True)
    s = tsub.add_parser("build")
    s.add_argument("file")
    s.set_defaults(func=cmd_tiling_build)
    s = tsub.add_parser("flip")
    s.add_argument("file")
    s.add_argument("--base", required=True, help="base subset, e.g. 24 or -")
    s.add_argument("--colors", type=int, nargs=3, required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_tiling_flip)
    s = tsub.add_parser("inversions")
    s.add_argument("file")
    s.set_defaults(func=cmd_tiling_inversions)

    com = sub.add_parser("combi", help="combies from maximal w-collections")
    csub = com.add_subparsers(dest="action", required=True)
    s = csub.add_parser("build")
    s.add_argument("file")
    s.set_defaults(func=cmd_combi_build)

    cb = sub.add_parser("cubillage", help="cubillages and their membranes")
    qsub = cb.add_subparsers(dest="action", required=True)
    s = qsub.add_parser("build")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_cub_build)
    s = qsub.add_parser("validate")
    s.add_argument("file")
    s.set_defaults(func=cmd_cub_validate)
    s = qsub.add_parser("contract")
    s.add_argument("file")
    s.add_argument("--color", required=True, help="1 or n")
    s.add_argument("-o", "--output")
    s.add_argument("--membrane", help="write the image of the pie as a collection file")
    s.set_defaults(func=cmd_cub_contract)
    s = qsub.add_parser("expand")
    s.add_argument("file")
    s.add_argument("--membrane", required=True, help="s-collection file of the membrane")
    s.add_argument("--color", required=True, help="1 or n (the new colour)")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_cub_expand)
    s = qsub.add_parser("membranes")
    s.add_argument("file")
    s.set_defaults(func=cmd_cub_membranes)

    we = sub.add_parser("wextend", help="extend a maximal w-collection to a c-collection")
    wsub = we.add_subparsers(dest="action", required=True)
    s = wsub.add_parser("run")
    s.add_argument("file")
    s.add_argument("--lens-policy", choices=("left", "right"), default="left")
    s.add_argument("--emit-cubillage")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_wextend)

    s = sub.add_parser("render", help="SVG drawings")
    s.add_argument("what", choices=("tiling", "combi", "section"))
    s.add_argument("file")
    s.add_argument("--svg", required=True)
    s.add_argument("--level", type=int, default=1, help="section level")
    s.set_defaults(func=cmd_render)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except io.ParseError as e:
        _err(f"parse error: {e}")
        return PARSE
    except Failure as e:
        _err(str(e))
        return FAIL
    except OSError as e:
        _err(f"i/o error: {e}")
        return PARSE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
