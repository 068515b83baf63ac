"""Command-line front end: ``uqsl2 <subcommand> ...``.

Exit codes: 0 ok, 1 verification failure (or a module that is not a sum of
the known indecomposables), 2 usage or parse error, 3 data needed past the
stored depth.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import verify as V
from .algebra import element_to_json, render_element
from .modules import (DEFAULT_DEPTH, DecompositionError, DepthExceeded, ModuleError, apply,
                      build, character, decompose, module_to_json, restricted_dual)
from .modules.specs import dumps
from .parser import ParseError, parse_element

OK, VERIFY_FAILED, USAGE, DEPTH = 0, 1, 2, 3


def _eps(text: str) -> int:
    if text not in ("+", "-"):
        raise argparse.ArgumentTypeError("eps must be + or -")
    return 1 if text == "+" else -1


def _depth(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("depth must be nonnegative")
    return value


def _out(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_normalize(args) -> int:
    x = parse_element(args.expr)
    if args.json:
        _out(dumps({"expression": args.expr, **element_to_json(x)}))
    else:
        _out(render_element(x))
    return OK


def cmd_act(args) -> int:
    m = build(args.spec, args.depth)
    x = parse_element(args.expr)
    v = m.vector(args.label)
    result = apply(m, x, v)
    if args.json:
        comps = {str(lv): [str(c) for c in coords] for lv, coords in result.components.items()}
        _out(dumps({"module": m.name, "expression": render_element(x), "vector": args.label,
                    "result": result.render(m), "components": comps}))
    else:
        _out(result.render(m))
    return OK


def cmd_character(args) -> int:
    m = build(args.spec, args.depth)
    ch = character(m)
    rows = sorted(ch.items(), key=lambda kv: (-kv[0].exponent, -kv[0].sign))
    if args.json:
        _out(dumps({"module": m.name, "depth": m.depth, "finite": m.finite,
                    "character": [{"sign": w.sign, "exponent": w.exponent, "dim": d}
                                  for w, d in rows]}))
    else:
        width = max([len("weight")] + [len(w.render()) for w, _ in rows])
        lines = [f"{'weight':<{width}}  dim"]
        lines += [f"{w.render():<{width}}  {d}" for w, d in rows]
        if not m.finite:
            lines.append(f"(levels 0..{m.depth} stored)")
        _out("\n".join(lines))
    return OK


def cmd_dual(args) -> int:
    _out(dumps(module_to_json(restricted_dual(build(args.spec, args.depth)))))
    return OK


def cmd_decompose(args) -> int:
    m = build(args.spec, args.depth)
    parts = decompose(m)
    if args.json:
        _out(dumps({"module": m.name, "depth": m.depth, "summands": [
            {"kind": s.kind, "params": s.param, "head_level": s.head_level, "label": s.label(),
             "generator": s.embedding.apply(
                 s.embedding.source.vector(_generator(s))).render(m)}
            for s in parts]}))
    elif parts:
        _out("\n".join(f"{s.label()}  (head at level {s.head_level})" for s in parts))
    else:
        _out("0")
    return OK


def _generator(s) -> str:
    return f"z{s.param['n'] + 1}" if s.kind in ("T", "TmodM") else "v0"


def cmd_verify(args) -> int:
    if args.statement == "all":
        if args.n is not None or args.eps is not None:
            raise _Usage("--n and --eps apply to a single statement, not to 'all'")
        reports = V.run_all(args.depth, args.n_max)
    else:
        if args.statement not in V.STATEMENTS:
            raise _Usage(f"unknown statement {args.statement!r}; known: "
                         f"{', '.join(V.STATEMENTS)}, all")
        reports = V.sort_reports(V.run_statement(args.statement, args.depth, args.n_max,
                                                 n=args.n, eps=args.eps))
    _out(V.reports_json(reports) if args.json else V.render_reports(reports))
    outcomes = {r.outcome for r in reports}
    if V.FAIL in outcomes:
        return VERIFY_FAILED
    if V.UNTESTABLE in outcomes:
        print("some checks need more levels; rerun with a larger --depth", file=sys.stderr)
        return DEPTH
    return OK


def cmd_export(args) -> int:
    m = build(args.spec, args.depth)
    Path(args.path).write_text(dumps(module_to_json(m)) + "\n")
    if args.json:
        _out(dumps({"module": m.name, "path": str(args.path), "dims": list(m.dims)}))
    else:
        _out(f"wrote {m.name} ({m.depth + 1} levels) to {args.path}")
    return OK


class _Usage(Exception):
    pass


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    depth = argparse.ArgumentParser(add_help=False)
    depth.add_argument("--depth", type=_depth, default=DEFAULT_DEPTH,
                       help=f"levels stored below the top weight (default {DEFAULT_DEPTH})")

    p = argparse.ArgumentParser(prog="uqsl2",
                                description="Exact computations in U_q(sl2) and its modules.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normalize", parents=[common], help="PBW normal form of an expression")
    s.add_argument("expr")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("act", parents=[common, depth], help="act on a basis vector")
    s.add_argument("spec")
    s.add_argument("expr")
    s.add_argument("label")
    s.set_defaults(func=cmd_act)

    s = sub.add_parser("character", parents=[common, depth], help="weight multiplicities")
    s.add_argument("spec")
    s.set_defaults(func=cmd_character)

    s = sub.add_parser("dual", parents=[common, depth], help="restricted dual as JSON")
    s.add_argument("spec")
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("decompose", parents=[common, depth],
                       help="split into T, T/M, Verma and finite simple summands")
    s.add_argument("spec")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("verify", parents=[common, depth], help="run statement checks")
    s.add_argument("statement", help=f"one of {', '.join(V.STATEMENTS)} or all")
    s.add_argument("--n", type=int, help="restrict to one n (m for Thm8-verma)")
    s.add_argument("--eps", type=_eps, help="restrict to one sign")
    s.add_argument("--n-max", type=int, default=4, help="largest n in sweeps (default 4)")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("export", parents=[common, depth], help="write a module as JSON")
    s.add_argument("spec")
    s.add_argument("path")
    s.set_defaults(func=cmd_export)
    return p


def _error(msg: str) -> None:
    sys.stderr.write(f"error: {msg}\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        _error(exc.message)
        sys.stderr.write(exc.caret() + "\n")
        return USAGE
    except DepthExceeded as exc:
        _error(f"{exc}; rerun with a larger --depth")
        return DEPTH
    except DecompositionError as exc:
        _error(str(exc))
        return VERIFY_FAILED
    except (ModuleError, _Usage) as exc:
        _error(str(exc))
        return USAGE
    except OSError as exc:
        _error(str(exc))
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
