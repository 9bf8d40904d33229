"""The line-oriented ``.quiver`` format for bound quiver algebras.

Example::

    # k[x]/(x^2) times k
    vertices: 0 -1
    arrow b: 0 -> 0
    relation b*b
    convention: functional
    field: Q

Directives: ``vertices:``, ``arrow NAME: SRC -> TGT``, ``relation EXPR``,
``truncate: N`` (every path of length N is a relation), ``convention:
functional|diagrammatic``, ``field: Q|Fp(p)|F<p>``, ``bound: N``.

Under the functional convention ``a*b`` is "a after b": b is traversed
first, so the word is composable when ``source(a) == target(b)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional

from .linalg import Field, RATIONALS

FUNCTIONAL = "functional"
DIAGRAMMATIC = "diagrammatic"


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {message}" if line else message)


@dataclass(frozen=True)
class Arrow:
    label: str
    source: str
    target: str


@dataclass(frozen=True)
class Relation:
    """A k-linear combination of parallel paths; each path is a tuple of
    arrow labels in written order."""
    terms: tuple  # ((Fraction, (label, ...)), ...)

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1


@dataclass(frozen=True)
class AlgebraSpec:
    vertices: tuple
    arrows: tuple
    relations: tuple
    convention: str = FUNCTIONAL
    length_bound: Optional[int] = None
    field: Field = dc_field(default=RATIONALS)

    @property
    def is_monomial(self) -> bool:
        return all(r.is_monomial for r in self.relations)

    def arrow(self, label: str) -> Arrow:
        for a in self.arrows:
            if a.label == label:
                return a
        raise KeyError(label)

    def path_ends(self, path) -> tuple[str, str]:
        """(source, target) of a written path; raises ValueError if the path
        does not compose under the declared convention."""
        arrows = [self.arrow(x) for x in path]
        if self.convention == DIAGRAMMATIC:
            arrows = arrows[::-1]
        for left, right in zip(arrows, arrows[1:]):
            if left.source != right.target:
                raise ValueError(f"{right.label} ends at {right.target} but {left.label} starts at {left.source}")
        return arrows[-1].source, arrows[0].target


_ARROW_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_TOKEN = re.compile(r"(?:(?P<num>\d+(?:/\d+)?)|(?P<name>" + _ARROW_NAME + r")|(?P<op>[-+*^]))")


def _parse_relation(text: str, spec_arrows: dict, line: int, col0: int) -> list:
    """Parse a relation expression into [(coeff, path), ...]."""
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col0 + pos + 1)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), col0 + m.start(kind) + 1))
        pos = m.end()
    if not toks:
        raise ParseError("empty relation", line, col0 + 1)

    terms = []
    i = 0
    n = len(toks)
    first = True
    while i < n:
        sign = 1
        start = toks[i][2]
        if toks[i][0] == "op" and toks[i][1] in "+-":
            sign = -1 if toks[i][1] == "-" else 1
            i += 1
        elif not first:
            raise ParseError(f"expected '+' or '-' before {toks[i][1]!r}", line, toks[i][2])
        first = False
        coeff = Fraction(sign)
        if i < n and toks[i][0] == "num":
            coeff *= Fraction(toks[i][1])
            i += 1
            if i < n and toks[i][0] == "op" and toks[i][1] == "*":
                i += 1
        path = []
        while True:
            if i >= n or toks[i][0] != "name":
                c = toks[i][2] if i < n else toks[-1][2]
                raise ParseError("expected an arrow name", line, c)
            name, c = toks[i][1], toks[i][2]
            if name not in spec_arrows:
                raise ParseError(f"unknown arrow {name!r}", line, c)
            i += 1
            power = 1
            if i < n and toks[i][0] == "op" and toks[i][1] == "^":
                if i + 1 >= n or toks[i + 1][0] != "num" or "/" in toks[i + 1][1]:
                    raise ParseError("expected an integer exponent", line, toks[i][2])
                power = int(toks[i + 1][1])
                if power < 1:
                    raise ParseError("exponent must be positive", line, toks[i + 1][2])
                i += 2
            path.extend([name] * power)
            if i < n and toks[i][0] == "op" and toks[i][1] == "*":
                i += 1
                continue
            break
        terms.append((coeff, tuple(path), start))
    return terms


def parse(text: str) -> AlgebraSpec:
    """Parse ``.quiver`` text; raises ParseError with a source position."""
    try:
        return _parse(text)
    except ParseError:
        raise
    except Exception as exc:  # parse must stay total
        raise ParseError(f"malformed input ({exc})") from exc


def _parse(text: str) -> AlgebraSpec:
    vertices = None
    arrows: dict[str, Arrow] = {}
    raw_relations = []
    truncations = []
    convention = FUNCTIONAL
    bound = None
    fld = RATIONALS
    seen = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        m = re.match(r"(vertices|convention|field|bound|truncate)\s*:(.*)$", body)
        if m:
            key, value = m.group(1), m.group(2).strip()
            vcol = indent + body.index(":") + 2
            if key in seen and key != "truncate":
                raise ParseError(f"duplicate '{key}' directive", lineno, indent + 1)
            seen.add(key)
            if key == "vertices":
                labels = value.split()
                if not labels:
                    raise ParseError("empty vertex list", lineno, vcol)
                dup = {x for x in labels if labels.count(x) > 1}
                if dup:
                    raise ParseError(f"duplicate vertex label {sorted(dup)[0]!r}", lineno, vcol)
                vertices = tuple(labels)
            elif key == "convention":
                if value not in (FUNCTIONAL, DIAGRAMMATIC):
                    raise ParseError(f"convention must be functional or diagrammatic, got {value!r}", lineno, vcol)
                convention = value
            elif key == "field":
                try:
                    fld = Field.parse(value)
                except ValueError as exc:
                    raise ParseError(str(exc), lineno, vcol) from None
            elif key == "bound":
                if not re.fullmatch(r"\d+", value) or int(value) < 1:
                    raise ParseError("bound must be a positive integer", lineno, vcol)
                bound = int(value)
            else:
                if not re.fullmatch(r"\d+", value) or int(value) < 2:
                    raise ParseError("truncate needs an integer >= 2", lineno, vcol)
                truncations.append(int(value))
            continue
        m = re.match(r"arrow\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)\s*$", body)
        if m:
            label, src, tgt = m.groups()
            if not re.fullmatch(_ARROW_NAME, label):
                raise ParseError(f"invalid arrow name {label!r}", lineno, indent + 7)
            if label in arrows:
                raise ParseError(f"duplicate arrow label {label!r}", lineno, indent + 7)
            if vertices is None:
                raise ParseError("arrow declared before 'vertices:'", lineno, indent + 1)
            for v in (src, tgt):
                if v not in vertices:
                    raise ParseError(f"unknown vertex {v!r}", lineno, indent + body.index(v, 6) + 1)
            arrows[label] = Arrow(label, src, tgt)
            continue
        m = re.match(r"relation\b(.*)$", body)
        if m:
            raw_relations.append((lineno, indent + len("relation"), m.group(1)))
            continue
        raise ParseError(f"unrecognised line {body.split()[0]!r}", lineno, indent + 1)

    if vertices is None:
        raise ParseError("missing 'vertices:' line", 1, 1)

    spec_probe = AlgebraSpec(vertices, tuple(arrows.values()), (), convention, bound, fld)
    relations = []
    for lineno, col0, expr in raw_relations:
        terms = _parse_relation(expr, arrows, lineno, col0)
        combined: dict[tuple, Fraction] = {}
        ends = None
        for coeff, path, c in terms:
            if len(path) < 2:
                raise ParseError(f"relation term {'*'.join(path)!r} has length 1 (ideal must lie in R^2)", lineno, c)
            try:
                e = spec_probe.path_ends(path)
            except ValueError as exc:
                raise ParseError(f"path {'*'.join(path)} does not compose: {exc}", lineno, c) from None
            if ends is None:
                ends = e
            elif e != ends:
                raise ParseError(f"non-parallel relation: {'*'.join(path)} runs {e[0]}->{e[1]}, "
                                 f"expected {ends[0]}->{ends[1]}", lineno, c)
            combined[path] = combined.get(path, 0) + coeff
        kept = tuple((cf, pth) for pth, cf in combined.items() if cf)
        if not kept:
            raise ParseError("relation is identically zero", lineno, col0 + 1)
        relations.append(Relation(kept))
    for n in truncations:
        for path in _all_paths(spec_probe, n):
            relations.append(Relation(((Fraction(1), path),)))
    return AlgebraSpec(vertices, tuple(arrows.values()), tuple(relations), convention, bound, fld)


def _all_paths(spec: AlgebraSpec, n: int) -> list[tuple]:
    """All written paths of length n, in declaration order."""
    paths = [(a.label,) for a in spec.arrows]
    for _ in range(n - 1):
        nxt = []
        for p in paths:
            for a in spec.arrows:
                q = p + (a.label,)
                try:
                    spec.path_ends(q)
                except ValueError:
                    continue
                nxt.append(q)
        paths = nxt
    return paths


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_relation(rel: Relation) -> str:
    out = []
    for k, (c, path) in enumerate(rel.terms):
        word = "*".join(path)
        mag = abs(c)
        body = word if mag == 1 else f"{_fmt_coeff(mag)}*{word}"
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


def render(spec: AlgebraSpec) -> str:
    lines = ["vertices: " + " ".join(spec.vertices)]
    for a in spec.arrows:
        lines.append(f"arrow {a.label}: {a.source} -> {a.target}")
    for r in spec.relations:
        lines.append("relation " + render_relation(r))
    lines.append(f"convention: {spec.convention}")
    lines.append(f"field: {spec.field}")
    if spec.length_bound is not None:
        lines.append(f"bound: {spec.length_bound}")
    return "\n".join(lines) + "\n"
