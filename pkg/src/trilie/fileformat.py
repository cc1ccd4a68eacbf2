"""Plain-text definition files for algebras, actions, maps and bivectors.

Example::

    # the 4-dimensional example
    algebra g4
    dim 4
    bracket 2 3 4 = e1
    end

    action ad on g4 by g4
    adjoint
    end

    map H from g4 to g4
    e2 -> e2
    e3 -> e3
    e4 -> -e4
    end

    bivector X in g4
    e2^e3 - 1/2*e1^e4

Indices are 1-based.  Coefficients are integers or ``p/q``.  Brackets must be
given on increasing triples and rho entries on increasing pairs; anything not
listed is zero.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .algebra import Action, Bivector, LinearMap, Representation, TriLieAlgebra
from .multilinear import Vec


class ParseError(ValueError):
    """A problem in a definition file, with 1-based line and column."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        self.message = message
        super().__init__(f"line {line}, col {col}: {message}" if line else message)


class DefinitionSyntaxError(ParseError):
    pass


class UnknownName(ParseError):
    pass


class IndexOutOfRange(ParseError):
    pass


class NonIncreasingTriple(ParseError):
    pass


@dataclass
class ActionDef:
    name: str
    g: str
    h: str
    action: Action
    adjoint: bool = False


@dataclass
class MapDef:
    name: str
    source: str
    target: str
    map: LinearMap


@dataclass
class BivectorDef:
    name: str
    algebra: str
    bivector: Bivector


@dataclass
class DefinitionFile:
    algebras: dict[str, TriLieAlgebra] = field(default_factory=dict)
    actions: dict[str, ActionDef] = field(default_factory=dict)
    maps: dict[str, MapDef] = field(default_factory=dict)
    bivectors: dict[str, BivectorDef] = field(default_factory=dict)

    def is_empty(self) -> bool:
        return not (self.algebras or self.actions or self.maps or self.bivectors)

    def names(self) -> set[str]:
        return set(self.algebras) | set(self.actions) | set(self.maps) | set(self.bivectors)

    def _key(self):
        algs = [(n, a.dim, sorted((t, sorted(v.items())) for t, v in a.structure_constants().items()))
                for n, a in self.algebras.items()]
        acts = [(n, d.g, d.h, d.adjoint, sorted((k, tuple(m.flat)) for k, m in d.action.rep.rho.items() if m.any()))
                for n, d in self.actions.items()]
        maps = [(n, d.source, d.target, tuple(d.map.matrix.flat)) for n, d in self.maps.items()]
        bivs = [(n, d.algebra, d.bivector.terms()) for n, d in self.bivectors.items()]
        return algs, acts, maps, bivs

    def __eq__(self, other) -> bool:
        if not isinstance(other, DefinitionFile):
            return NotImplemented
        return self._key() == other._key()

    __hash__ = None  # type: ignore[assignment]


# -- lexical helpers -----------------------------------------------------------

_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_COEF = r"\d+(?:/\d+)?"
_TERM = re.compile(rf"\s*([+-])?\s*(?:({_COEF})\s*\*?\s*)?e(\d+)")
_WEDGE_TERM = re.compile(rf"\s*([+-])?\s*(?:({_COEF})\s*\*?\s*)?e(\d+)\s*\^\s*e(\d+)")
_ZERO = re.compile(r"\s*([+-]?\s*0)\s*$")


def _coef(sign: str | None, text: str | None) -> Fraction:
    c = Fraction(text) if text else Fraction(1)
    return -c if sign == "-" else c


def _check_index(k: int, dim: int, line: int, col: int, what: str) -> int:
    if not 1 <= k <= dim:
        raise IndexOutOfRange(f"{what} index {k} outside 1..{dim}", line, col)
    return k - 1


def parse_combo(text: str, dim: int, line: int, col0: int) -> Vec:
    """``2*e1 - 1/2*e3`` -> {0: 2, 2: -1/2}; ``0`` is the zero vector."""
    if _ZERO.match(text):
        return {}
    out: Vec = {}
    pos = 0
    first = True
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _TERM.match(text, pos)
        if not m or (not first and not m.group(1)):
            raise DefinitionSyntaxError(f"cannot read term {text[pos:].strip()!r}", line, col0 + pos + 1)
        k = _check_index(int(m.group(3)), dim, line, col0 + m.start(3) + 1, "basis")
        out[k] = out.get(k, Fraction(0)) + _coef(m.group(1), m.group(2))
        pos = m.end()
        first = False
    if first:
        raise DefinitionSyntaxError("empty expression", line, col0 + 1)
    return {k: v for k, v in out.items() if v}


def parse_wedge_combo(text: str, dim: int, line: int, col0: int) -> dict[tuple[int, int], Fraction]:
    if _ZERO.match(text):
        return {}
    out: dict[tuple[int, int], Fraction] = {}
    pos = 0
    first = True
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _WEDGE_TERM.match(text, pos)
        if not m or (not first and not m.group(1)):
            raise DefinitionSyntaxError(f"cannot read term {text[pos:].strip()!r}", line, col0 + pos + 1)
        i = _check_index(int(m.group(3)), dim, line, col0 + m.start(3) + 1, "basis")
        j = _check_index(int(m.group(4)), dim, line, col0 + m.start(4) + 1, "basis")
        if i >= j:
            raise NonIncreasingTriple(f"wedge e{i + 1}^e{j + 1} must have increasing indices", line, col0 + m.start(3) + 1)
        out[(i, j)] = out.get((i, j), Fraction(0)) + _coef(m.group(1), m.group(2))
        pos = m.end()
        first = False
    if first:
        raise DefinitionSyntaxError("empty expression", line, col0 + 1)
    return {k: v for k, v in out.items() if v}


# -- parser --------------------------------------------------------------------

def parse(text: str) -> DefinitionFile:
    df = DefinitionFile()
    lines = text.splitlines()
    n = 0

    def content(i: int) -> tuple[str, int]:
        raw = lines[i]
        body = raw.split("#", 1)[0].rstrip()
        indent = len(body) - len(body.lstrip())
        return body.strip(), indent

    def require_new(name: str, line: int, col: int) -> None:
        if name in df.names():
            raise DefinitionSyntaxError(f"name {name!r} defined twice", line, col)

    def algebra_ref(name: str, line: int, col: int) -> TriLieAlgebra:
        if name not in df.algebras:
            raise UnknownName(f"unknown algebra {name!r}", line, col)
        return df.algebras[name]

    def block(start: int) -> tuple[list[tuple[str, int, int]], int]:
        """Lines up to the matching ``end``: (text, line number, indent)."""
        out = []
        i = start
        while i < len(lines):
            body, indent = content(i)
            if body == "end":
                return out, i + 1
            if body:
                out.append((body, i + 1, indent))
            i += 1
        raise DefinitionSyntaxError("missing 'end'", start, 1)

    while n < len(lines):
        body, indent = content(n)
        lineno = n + 1
        if not body:
            n += 1
            continue
        words = body.split()
        head = words[0]
        if head == "algebra":
            m = re.fullmatch(rf"algebra\s+({_NAME})", body)
            if not m:
                raise DefinitionSyntaxError("expected 'algebra <name>'", lineno, indent + 1)
            name = m.group(1)
            require_new(name, lineno, indent + 1 + m.start(1))
            rows, n = block(n + 1)
            if not rows:
                raise DefinitionSyntaxError("algebra block needs a 'dim' line", lineno, 1)
            dbody, dline, dind = rows[0]
            dm = re.fullmatch(r"dim\s+(\d+)", dbody)
            if not dm:
                raise DefinitionSyntaxError("expected 'dim <d>'", dline, dind + 1)
            dim = int(dm.group(1))
            data: dict[tuple[int, int, int], Vec] = {}
            for rbody, rline, rind in rows[1:]:
                bm = re.fullmatch(r"bracket\s+(\d+)\s+(\d+)\s+(\d+)\s*=\s*(.*)", rbody)
                if not bm:
                    raise DefinitionSyntaxError("expected 'bracket <i> <j> <k> = <combo>'", rline, rind + 1)
                idx = tuple(
                    _check_index(int(bm.group(g)), dim, rline, rind + bm.start(g) + 1, "bracket")
                    for g in (1, 2, 3)
                )
                if not idx[0] < idx[1] < idx[2]:
                    raise NonIncreasingTriple(
                        f"bracket triple {tuple(i + 1 for i in idx)} must be strictly increasing", rline, rind + bm.start(1) + 1
                    )
                if idx in data:
                    raise DefinitionSyntaxError("bracket given twice", rline, rind + 1)
                data[idx] = parse_combo(bm.group(4), dim, rline, rind + bm.start(4))
            df.algebras[name] = TriLieAlgebra(dim, data, name=name)
        elif head == "action":
            m = re.fullmatch(rf"action\s+({_NAME})\s+on\s+({_NAME})\s+by\s+({_NAME})", body)
            if not m:
                raise DefinitionSyntaxError("expected 'action <name> on <h> by <g>'", lineno, indent + 1)
            name, hname, gname = m.group(1), m.group(2), m.group(3)
            require_new(name, lineno, indent + 1 + m.start(1))
            h = algebra_ref(hname, lineno, indent + 1 + m.start(2))
            g = algebra_ref(gname, lineno, indent + 1 + m.start(3))
            rows, n = block(n + 1)
            adjoint = False
            mats = {}
            for rbody, rline, rind in rows:
                if rbody == "adjoint":
                    if gname != hname:
                        raise DefinitionSyntaxError("'adjoint' needs the action of an algebra on itself", rline, rind + 1)
                    adjoint = True
                    continue
                rm = re.fullmatch(r"rho\s+(\d+)\s+(\d+)\s*:\s*e(\d+)\s*->\s*(.*)", rbody)
                if not rm:
                    raise DefinitionSyntaxError("expected 'rho <i> <j> : e<k> -> <combo>'", rline, rind + 1)
                i = _check_index(int(rm.group(1)), g.dim, rline, rind + rm.start(1) + 1, "rho")
                j = _check_index(int(rm.group(2)), g.dim, rline, rind + rm.start(2) + 1, "rho")
                if i >= j:
                    raise NonIncreasingTriple(f"rho pair ({i + 1}, {j + 1}) must be increasing", rline, rind + rm.start(1) + 1)
                k = _check_index(int(rm.group(3)), h.dim, rline, rind + rm.start(3) + 1, "basis")
                img = parse_combo(rm.group(4), h.dim, rline, rind + rm.start(4))
                mat = mats.setdefault((i, j), linalg.zeros(h.dim, h.dim))
                for r, c in img.items():
                    mat[r, k] = c
            if adjoint and mats:
                raise DefinitionSyntaxError("an adjoint action takes no rho lines", lineno, 1)
            act = Action.adjoint(g) if adjoint else Action(Representation(g, h.dim, mats), h)
            df.actions[name] = ActionDef(name, gname, hname, act, adjoint)
        elif head == "map":
            m = re.fullmatch(rf"map\s+({_NAME})\s+from\s+({_NAME})\s+to\s+({_NAME})", body)
            if not m:
                raise DefinitionSyntaxError("expected 'map <name> from <g> to <h>'", lineno, indent + 1)
            name, sname, tname = m.group(1), m.group(2), m.group(3)
            require_new(name, lineno, indent + 1 + m.start(1))
            src = algebra_ref(sname, lineno, indent + 1 + m.start(2))
            tgt = algebra_ref(tname, lineno, indent + 1 + m.start(3))
            rows, n = block(n + 1)
            mat = linalg.zeros(tgt.dim, src.dim)
            seen = set()
            for rbody, rline, rind in rows:
                mm = re.fullmatch(r"e(\d+)\s*->\s*(.*)", rbody)
                if not mm:
                    raise DefinitionSyntaxError("expected 'e<i> -> <combo>'", rline, rind + 1)
                i = _check_index(int(mm.group(1)), src.dim, rline, rind + mm.start(1) + 1, "basis")
                if i in seen:
                    raise DefinitionSyntaxError(f"image of e{i + 1} given twice", rline, rind + 1)
                seen.add(i)
                for r, c in parse_combo(mm.group(2), tgt.dim, rline, rind + mm.start(2)).items():
                    mat[r, i] = c
            df.maps[name] = MapDef(name, sname, tname, LinearMap(src, tgt, mat))
        elif head == "bivector":
            m = re.fullmatch(rf"bivector\s+({_NAME})\s+in\s+({_NAME})", body)
            if not m:
                raise DefinitionSyntaxError("expected 'bivector <name> in <g>'", lineno, indent + 1)
            name, gname = m.group(1), m.group(2)
            require_new(name, lineno, indent + 1 + m.start(1))
            g = algebra_ref(gname, lineno, indent + 1 + m.start(2))
            n += 1
            while n < len(lines) and not content(n)[0]:
                n += 1
            if n == len(lines):
                raise DefinitionSyntaxError("bivector needs an expression line", lineno, 1)
            ebody, eind = content(n)
            coeffs = parse_wedge_combo(ebody, g.dim, n + 1, eind)
            df.bivectors[name] = BivectorDef(name, gname, Bivector(g.dim, coeffs))
            n += 1
        else:
            raise DefinitionSyntaxError(f"unknown directive {head!r}", lineno, indent + 1)
    return df


# -- serializer ----------------------------------------------------------------

def format_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_combo(v: Vec, label=lambda k: f"e{k + 1}") -> str:
    parts = []
    for k in sorted(v):
        c = Fraction(v[k])
        if c == 0:
            continue
        mag = abs(c)
        body = label(k) if mag == 1 else f"{format_coef(mag)}*{label(k)}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


def serialize(df: DefinitionFile) -> str:
    out: list[str] = []
    for name, a in df.algebras.items():
        out += [f"algebra {name}", f"dim {a.dim}"]
        for (i, j, k), v in sorted(a.structure_constants().items()):
            out.append(f"bracket {i + 1} {j + 1} {k + 1} = {format_combo(v)}")
        out += ["end", ""]
    for name, d in df.actions.items():
        out.append(f"action {name} on {d.h} by {d.g}")
        if d.adjoint:
            out.append("adjoint")
        else:
            h_dim = d.action.target.dim
            for (i, j), m in sorted(d.action.rep.rho.items()):
                for k in range(h_dim):
                    col = {r: m[r, k] for r in range(h_dim) if m[r, k] != 0}
                    if col:
                        out.append(f"rho {i + 1} {j + 1} : e{k + 1} -> {format_combo(col)}")
        out += ["end", ""]
    for name, d in df.maps.items():
        out.append(f"map {name} from {d.source} to {d.target}")
        mat = d.map.matrix
        for i in range(mat.shape[1]):
            col = {r: mat[r, i] for r in range(mat.shape[0]) if mat[r, i] != 0}
            if col:
                out.append(f"e{i + 1} -> {format_combo(col)}")
        out += ["end", ""]
    for name, d in df.bivectors.items():
        out.append(f"bivector {name} in {d.algebra}")
        pairs = list(itertools.combinations(range(d.bivector.dim), 2))
        idx = {p: n for n, p in enumerate(pairs)}
        coeffs = {idx[p]: c for p, c in d.bivector.terms()}
        out += [format_combo(coeffs, label=lambda n: f"e{pairs[n][0] + 1}^e{pairs[n][1] + 1}"), ""]
    return "\n".join(out).rstrip("\n") + ("\n" if out else "")


EXAMPLE_FILE = """\
# 4-dimensional algebra with the single bracket [e2, e3, e4] = e1
algebra g4
dim 4
bracket 2 3 4 = e1
end

action ad on g4 by g4
adjoint
end

# e1 -> 0, e2 -> e2, e3 -> e3, e4 -> -e4
map H from g4 to g4
e2 -> e2
e3 -> e3
e4 -> -e4
end

map Id from g4 to g4
e1 -> e1
e2 -> e2
e3 -> e3
e4 -> e4
end

bivector X in g4
e2^e3
"""
