"""Manifold expression language: AST, parser, printer, normalization, validation.

Grammar (whitespace-insensitive)::

    expr    := term ( "#" term )* ;
    term    := factor ( "x" factor )* ;
    factor  := base | "(" expr ")" ;
    base    := "pt" | "S" INT | "M" INT | "N" INT | "H" INT ;

``x`` (direct product) binds tighter than ``#`` (connected sum).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union

MAX_PARAM = 10**6


class ParseError(ValueError):
    """Syntax or domain error in an expression string."""

    def __init__(self, message: str, span: SourceSpan, text: str = "") -> None:
        super().__init__(message)
        self.message = message
        self.span = span
        self.text = text

    def __str__(self) -> str:
        return f"{self.message} at {self.span.start}..{self.span.end}"

    def pretty(self) -> str:
        """Message followed by the input with a caret line under the span."""
        width = max(1, self.span.end - self.span.start)
        return f"{self}\n  {self.text}\n  {' ' * self.span.start}{'^' * width}"


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int

    def __post_init__(self) -> None:
        if not 0 <= self.start <= self.end:
            raise ValueError(f"bad span {self.start}..{self.end}")


# -- AST --------------------------------------------------------------------
#
# Base manifolds are leaves of the expression tree directly; there is no
# separate wrapper node.


@dataclass(frozen=True)
class Point:
    @property
    def dim(self) -> int:
        return 0


@dataclass(frozen=True)
class Sphere:
    k: int

    def __post_init__(self) -> None:
        _check_param("sphere dimension", self.k, 1)

    @property
    def dim(self) -> int:
        return self.k


@dataclass(frozen=True)
class OrientableSurface:
    """Closed orientable surface of genus ``g`` (``g = 0`` is the 2-sphere)."""

    g: int

    def __post_init__(self) -> None:
        _check_param("genus", self.g, 0)

    @property
    def dim(self) -> int:
        return 2


@dataclass(frozen=True)
class NonorientableSurface:
    """Connected sum of ``h`` real projective planes."""

    h: int

    def __post_init__(self) -> None:
        _check_param("crosscap count", self.h, 1)

    @property
    def dim(self) -> int:
        return 2


@dataclass(frozen=True)
class Harvey:
    """Closed orientable hyperbolic 3-manifold with co-rank 1 and first Betti number ``b``.

    Treated as an opaque base block: only its invariants are known.
    """

    b: int

    def __post_init__(self) -> None:
        _check_param("Harvey Betti number", self.b, 1)

    @property
    def dim(self) -> int:
        return 3


BaseManifold = Union[Point, Sphere, OrientableSurface, NonorientableSurface, Harvey]
BASE_TYPES = (Point, Sphere, OrientableSurface, NonorientableSurface, Harvey)


@dataclass(frozen=True)
class ConnSum:
    children: tuple[ManifoldExpr, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise ValueError("connected sum needs at least two summands")

    @property
    def dim(self) -> int:
        # Only meaningful when valid; max keeps it defined for diagnostics.
        return max(c.dim for c in self.children)


@dataclass(frozen=True)
class Product:
    children: tuple[ManifoldExpr, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise ValueError("product needs at least two factors")

    @property
    def dim(self) -> int:
        return sum(c.dim for c in self.children)


ManifoldExpr = Union[BaseManifold, ConnSum, Product]


def _check_param(what: str, value: int, lo: int) -> None:
    if not isinstance(value, int) or isinstance(value, bool):
        raise TypeError(f"{what} must be an int, got {value!r}")
    if value < lo:
        raise ValueError(f"{what} must be >= {lo}, got {value}")
    if value > MAX_PARAM:
        raise ValueError(f"{what} must be <= {MAX_PARAM}, got {value}")


def conn_sum(*children: ManifoldExpr) -> ManifoldExpr:
    """Connected sum of the given summands; a single summand is returned as is."""
    return children[0] if len(children) == 1 else ConnSum(children)


def product(*children: ManifoldExpr) -> ManifoldExpr:
    return children[0] if len(children) == 1 else Product(children)


def walk(e: ManifoldExpr) -> Iterator[ManifoldExpr]:
    """Pre-order traversal."""
    yield e
    if isinstance(e, (ConnSum, Product)):
        for c in e.children:
            yield from walk(c)


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<base>pt|[SMNH](?P<int>[0-9]+))|(?P<op>[#x()]))")
_BASE_LO = {"S": 1, "M": 0, "N": 1, "H": 1}
_BASE_NAME = {"S": "sphere dimension", "M": "genus", "N": "crosscap count", "H": "Harvey Betti number"}


@dataclass(frozen=True)
class _Token:
    kind: str  # "base", one of "#x()", or "end"
    text: str
    span: SourceSpan


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", SourceSpan(pos, pos + 1), text)
        group = "base" if m.group("base") else "op"
        word = m.group(group)
        tokens.append(_Token("base" if group == "base" else word, word, SourceSpan(m.start(group), m.end())))
        pos = m.end()
    tokens.append(_Token("end", "", SourceSpan(len(text), len(text))))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def fail(self, expected: str) -> ParseError:
        got = "end of input" if self.tok.kind == "end" else repr(self.tok.text)
        return ParseError(f"expected {expected}, got {got}", self.tok.span, self.text)

    def parse(self) -> ManifoldExpr:
        e = self.expr()
        if self.tok.kind != "end":
            raise self.fail("'#', 'x' or end of input")
        return e

    def expr(self) -> ManifoldExpr:
        terms = [self.term()]
        while self.tok.kind == "#":
            self.i += 1
            terms.append(self.term())
        return conn_sum(*terms)

    def term(self) -> ManifoldExpr:
        factors = [self.factor()]
        while self.tok.kind == "x":
            self.i += 1
            factors.append(self.factor())
        return product(*factors)

    def factor(self) -> ManifoldExpr:
        tok = self.tok
        if tok.kind == "(":
            self.i += 1
            e = self.expr()
            if self.tok.kind != ")":
                raise self.fail("')'")
            self.i += 1
            return e
        if tok.kind == "base":
            self.i += 1
            return self.base(tok)
        raise self.fail("a base manifold (pt, S<k>, M<g>, N<h>, H<b>) or '('")

    def base(self, tok: _Token) -> BaseManifold:
        if tok.text == "pt":
            return Point()
        letter, value = tok.text[0], int(tok.text[1:])
        lo = _BASE_LO[letter]
        if not lo <= value <= MAX_PARAM:
            bound = f">= {lo}" if value < lo else f"<= {MAX_PARAM}"
            raise ParseError(f"{_BASE_NAME[letter]} must be {bound} in {tok.text!r}", tok.span, self.text)
        return {"S": Sphere, "M": OrientableSurface, "N": NonorientableSurface, "H": Harvey}[letter](value)


def parse(text: str) -> ManifoldExpr:
    """Parse an expression string into an (unnormalized) AST.

    Raises:
        ParseError: on a syntax error or an out-of-range integer parameter.
    """
    return _Parser(text).parse()


# -- normalization ------------------------------------------------------------

_BASE_ORDER = {Point: 0, Sphere: 1, OrientableSurface: 2, NonorientableSurface: 3, Harvey: 4}


def sort_key(e: ManifoldExpr) -> tuple:
    """Total order on ASTs: bases before sums before products."""
    if isinstance(e, ConnSum):
        return (1, tuple(sort_key(c) for c in e.children))
    if isinstance(e, Product):
        return (2, tuple(sort_key(c) for c in e.children))
    param = 0 if isinstance(e, Point) else next(iter(vars(e).values()))
    return (0, _BASE_ORDER[type(e)], param)


def normalize(e: ManifoldExpr) -> ManifoldExpr:
    """Canonical form: flattened, point factors dropped, ``M0 -> S2``, children sorted."""
    if isinstance(e, OrientableSurface) and e.g == 0:
        return Sphere(2)
    if isinstance(e, ConnSum):
        kids: list[ManifoldExpr] = []
        for c in map(normalize, e.children):
            kids.extend(c.children if isinstance(c, ConnSum) else (c,))
        return ConnSum(tuple(sorted(kids, key=sort_key)))
    if isinstance(e, Product):
        kids = []
        for c in map(normalize, e.children):
            kids.extend(c.children if isinstance(c, Product) else (c,))
        kids = [c for c in kids if not isinstance(c, Point)]
        if not kids:
            return Point()
        return product(*sorted(kids, key=sort_key))
    return e


# -- validation -------------------------------------------------------------

DIMENSION_MISMATCH = "dimension-mismatch"
LOW_DIMENSION = "low-dimension"


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    message: str
    expr: ManifoldExpr


def validate(e: ManifoldExpr) -> list[Diagnostic]:
    """Check every connected sum has summands of one dimension, at least 2."""
    out = []
    for node in walk(e):
        if not isinstance(node, ConnSum):
            continue
        dims = [c.dim for c in node.children]
        if len(set(dims)) > 1:
            shown = " vs ".join(str(d) for d in dict.fromkeys(dims))
            out.append(Diagnostic(DIMENSION_MISMATCH, f"dimension mismatch {shown} in {render(node)}", node))
        if min(dims) < 2:
            out.append(Diagnostic(LOW_DIMENSION,
                                  f"connected sum requires dimension >= 2 in {render(node)}", node))
    return out


class InvalidExpression(ValueError):
    """Raised when an operation needs a valid expression and gets diagnostics."""

    def __init__(self, diagnostics: list[Diagnostic]) -> None:
        super().__init__("; ".join(d.message for d in diagnostics))
        self.diagnostics = diagnostics


def ensure_valid(e: ManifoldExpr) -> None:
    diagnostics = validate(e)
    if diagnostics:
        raise InvalidExpression(diagnostics)


# -- rendering --------------------------------------------------------------


def render(e: ManifoldExpr) -> str:
    """Print an expression in the input grammar; compound children get parentheses."""
    if isinstance(e, Point):
        return "pt"
    if isinstance(e, Sphere):
        return f"S{e.k}"
    if isinstance(e, OrientableSurface):
        return f"M{e.g}"
    if isinstance(e, NonorientableSurface):
        return f"N{e.h}"
    if isinstance(e, Harvey):
        return f"H{e.b}"
    op = " # " if isinstance(e, ConnSum) else " x "
    return op.join(f"({render(c)})" if isinstance(c, (ConnSum, Product)) else render(c)
                   for c in e.children)
