"""Text descriptions of modules and a JSON schema for them.

Grammar::

    spec  := 'dual(' spec ')'
           | 'sum(' [spec (';' spec)*] ')'
           | 'quot(' spec (',' label)+ ')'
           | kind ':' item (',' item)*
    kind  := 'verma' | 'T' | 'S' | 'V' | 'TmodM'
    item  := key '=' value | int          (a bare int is the depth)

Keys are eps (+ or -), m, n and depth.  Labels are basis labels of the inner
module (no '=', ',', ';' or parentheses); the quotient is by the submodule
they generate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

from ..linalg import Matrix
from ..parser import ParseError, parse_scalar
from .constructors import finite_simple, s_module, t_module, t_quotient, verma
from .core import ModuleError, Weight, WeightModule, sign_char
from .ops import direct_sum, quotient, restricted_dual, submodule_generated

DEFAULT_DEPTH = 12

KINDS = {
    "verma": {"eps", "m"},
    "T": {"n", "eps"},
    "S": {"n", "eps"},
    "V": {"n", "eps"},
    "TmodM": {"n", "eps"},
}


class SpecError(ParseError):
    pass


@dataclass(frozen=True)
class Atom:
    kind: str
    params: tuple[tuple[str, int], ...]
    depth: int | None = None

    def render(self) -> str:
        items = [f"{k}={sign_char(v) if k == 'eps' else v}" for k, v in self.params]
        if self.depth is not None:
            items.append(f"depth={self.depth}")
        return f"{self.kind}:" + ",".join(items)


@dataclass(frozen=True)
class Dual:
    inner: "Spec"

    def render(self) -> str:
        return f"dual({self.inner.render()})"


@dataclass(frozen=True)
class Sum:
    parts: tuple["Spec", ...]

    def render(self) -> str:
        return "sum(" + ";".join(p.render() for p in self.parts) + ")"


@dataclass(frozen=True)
class Quot:
    inner: "Spec"
    labels: tuple[str, ...]

    def render(self) -> str:
        return f"quot({self.inner.render()}," + ",".join(self.labels) + ")"


Spec = Union[Atom, Dual, Sum, Quot]


class _SpecParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str, pos: int | None = None) -> SpecError:
        return SpecError(msg, self.text, self.pos if pos is None else pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise self.error(f"expected {ch!r}, found {found}")
        self.pos += 1

    def word(self, stop: str) -> tuple[str, int]:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in stop:
            self.pos += 1
        return self.text[start:self.pos].strip(), start

    def parse(self) -> Spec:
        node = self.spec()
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        return node

    def spec(self) -> Spec:
        self.skip_ws()
        start = self.pos
        head, _ = self.word(":(,;)")
        nxt = self.peek()
        if nxt == "(":
            self.pos += 1
            if head == "dual":
                inner = self.spec()
                self.expect(")")
                return Dual(inner)
            if head == "sum":
                parts = []
                if self.peek() != ")":
                    parts.append(self.spec())
                    while self.peek() == ";":
                        self.pos += 1
                        parts.append(self.spec())
                self.expect(")")
                return Sum(tuple(parts))
            if head == "quot":
                inner = self.spec()
                labels = []
                while self.peek() == ",":
                    self.pos += 1
                    lab, at = self.word(",;()")
                    if not lab or "=" in lab:
                        raise self.error(f"bad generator label {lab!r}", at)
                    labels.append(lab)
                if not labels:
                    raise self.error("quot needs at least one generator label")
                self.expect(")")
                return Quot(inner, tuple(labels))
            raise self.error(f"unknown operation {head!r}", start)
        if nxt != ":":
            raise self.error(f"expected ':' or '(' after {head!r}" if head else "expected a module")
        if head not in KINDS:
            raise self.error(f"unknown module kind {head!r}", start)
        self.pos += 1
        return self.atom(head)

    def _item_follows(self) -> bool:
        """After a comma: another key=value (or bare depth) rather than a quot label?"""
        save = self.pos
        self.pos += 1
        item, _ = self.word(",;()")
        self.pos = save
        return "=" in item or item.lstrip("-").isdigit()

    def atom(self, kind: str) -> Atom:
        params: dict[str, int] = {}
        depth = None
        while True:
            item, at = self.word(",;()")
            key, eq, val = (x.strip() for x in item.partition("="))
            if not eq:
                if not item.lstrip("-").isdigit():
                    raise self.error(f"expected key=value, found {item!r}", at)
                key, val = "depth", item
            if key == "eps":
                if val not in ("+", "-"):
                    raise self.error(f"eps must be + or -, found {val!r}", at)
                params["eps"] = 1 if val == "+" else -1
            elif key in ("m", "n", "depth"):
                try:
                    num = int(val)
                except ValueError:
                    raise self.error(f"{key} must be an integer, found {val!r}", at) from None
                if key == "depth":
                    depth = num
                else:
                    params[key] = num
            else:
                raise self.error(f"unknown key {key!r}", at)
            if self.peek() != "," or not self._item_follows():
                break
            self.pos += 1
        need = KINDS[kind]
        if set(params) != need:
            missing = sorted(need - set(params))
            extra = sorted(set(params) - need)
            msg = f"missing {', '.join(missing)}" if missing else f"unexpected {', '.join(extra)}"
            raise self.error(f"{kind}: {msg}")
        order = ["eps", "m"] if kind == "verma" else ["n", "eps"]
        return Atom(kind, tuple((k, params[k]) for k in order), depth)


def parse_spec(text: str) -> Spec:
    return _SpecParser(text).parse()


def build(spec: Spec | str, depth: int = DEFAULT_DEPTH) -> WeightModule:
    """Construct the module a spec describes; atoms without a depth use ``depth``."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    if isinstance(spec, Atom):
        p = dict(spec.params)
        d = depth if spec.depth is None else spec.depth
        if spec.kind == "verma":
            return verma(p["eps"], p["m"], d)
        if spec.kind == "T":
            return t_module(p["n"], p["eps"], d)
        if spec.kind == "S":
            return s_module(p["n"], p["eps"], d)
        if spec.kind == "TmodM":
            return t_quotient(p["n"], p["eps"], d)
        return finite_simple(p["n"], p["eps"])
    if isinstance(spec, Dual):
        return restricted_dual(build(spec.inner, depth))
    if isinstance(spec, Sum):
        if not spec.parts:
            return zero_module(depth)
        return direct_sum(*(build(p, depth) for p in spec.parts))
    inner = build(spec.inner, depth)
    _, inclusion = submodule_generated(inner, [inner.vector(lab) for lab in spec.labels])
    q, _ = quotient(inner, inclusion)
    return q.replace(name=f"{inner.name}/<{','.join(spec.labels)}>")


def zero_module(depth: int = 0) -> WeightModule:
    """The zero module, stored as depth+1 empty levels below weight +q^0."""
    empty = Matrix.zeros(0, 0)
    return WeightModule(Weight(1, 0), [0] * (depth + 1), [empty] * depth, [empty] * depth,
                        finite=True, labels=[[] for _ in range(depth + 1)], name="0")


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def _matrix_json(m: Matrix) -> dict:
    return {"shape": list(m.shape), "entries": m.to_strings()}


def module_to_json(m: WeightModule) -> dict:
    return {
        "name": m.name,
        "top": {"sign": m.top.sign, "exponent": m.top.exponent},
        "depth": m.depth,
        "finite": m.finite,
        "dims": list(m.dims),
        "labels": [list(lv) for lv in m.labels],
        "e_mats": [_matrix_json(x) for x in m.e_mats],
        "f_mats": [_matrix_json(x) for x in m.f_mats],
    }


def _matrix_from_json(d: dict) -> Matrix:
    nrows, ncols = d["shape"]
    rows = [[parse_scalar(s) for s in row] for row in d["entries"]]
    if len(rows) != nrows:
        raise ModuleError("matrix row count does not match its shape")
    return Matrix(rows, ncols)


def module_from_json(d: dict) -> WeightModule:
    return WeightModule(Weight(d["top"]["sign"], d["top"]["exponent"]), d["dims"],
                        [_matrix_from_json(x) for x in d["e_mats"]],
                        [_matrix_from_json(x) for x in d["f_mats"]],
                        finite=d["finite"], labels=d["labels"], name=d.get("name", ""))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


__all__ = ["Atom", "DEFAULT_DEPTH", "Dual", "Quot", "Spec", "SpecError", "Sum", "build",
           "dumps", "module_from_json", "module_to_json", "parse_spec", "zero_module"]
