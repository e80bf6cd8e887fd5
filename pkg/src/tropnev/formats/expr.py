"""
Text grammar for tropical functions, projective maps and hypersurfaces.

    expr  := poly ('/' poly)?
    poly  := term ('|' term)*
    term  := coef (':' real (',' real)*)?
    map   := '[' poly (';' poly)+ ']'

``|`` is the tropical sum, a term is a coefficient plus an exponent vector (an omitted vector is
the zero vector), and variables are positional. ``0:1|0:0/0:1|1:0`` is (x (+) 0) (/) (x (+) 1).
A ``-inf`` coefficient drops its term with a warning.
"""

import math
import re
import warnings
from dataclasses import dataclass
from typing import Any, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import ParseError, TropNevException
from ..maxplus.semiring import BOTTOM, BOTTOM_LITERAL, is_bottom
from ..plfun.polynomial import TropicalPolynomial
from ..plfun.rational import TropicalRational, as_rational
from ..projective.hypersurface import HomogeneousPolynomial
from ..projective.space import ProjectiveMap
from ..utils.logger import get_logger

logger = get_logger(__name__)

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)"
    r"|(?P<bottom>-inf(?:inity)?\b)"
    r"|(?P<number>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<op>[|/:,;\[\]])",
    re.IGNORECASE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


@dataclass(frozen=True)
class RawTerm:
    """A parsed term before the dimension is known."""

    coeff: float
    expo: Optional[Tuple[float, ...]]
    line: int
    column: int


def tokenize(src: str) -> List[Token]:
    """Split source text into tokens with 1-based line and column."""
    tokens: List[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        match = _TOKEN.match(src, pos)
        if match is None:
            raise ParseError(f"Unexpected character {src[pos]!r}", line, pos - line_start + 1)
        kind = match.lastgroup
        text = match.group()
        if kind != "ws":
            tokens.append(Token(kind, text, line, pos - line_start + 1))
        newlines = text.count("\n")
        if newlines:
            line += newlines
            line_start = pos + text.rindex("\n") + 1
        pos = match.end()
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.tokens = tokenize(src)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.current
        return ParseError(message, token.line, token.column)

    def accept(self, text: str) -> bool:
        if self.current.kind == "op" and self.current.text == text:
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            found = self.current.text or "end of input"
            raise self.error(f"Expected {text!r}, found {found!r}")

    def expect_end(self) -> None:
        if self.current.kind != "end":
            raise self.error(f"Unexpected {self.current.text!r}")

    def real(self) -> float:
        token = self.current
        if token.kind != "number":
            raise self.error(f"Expected a number, found {token.text or 'end of input'!r}")
        self.pos += 1
        return float(token.text)

    def term(self) -> RawTerm:
        token = self.current
        if token.kind == "bottom":
            self.pos += 1
            coeff = BOTTOM
        else:
            coeff = self.real()
        expo: Optional[Tuple[float, ...]] = None
        if self.accept(":"):
            values = [self.real()]
            while self.accept(","):
                values.append(self.real())
            expo = tuple(values)
        return RawTerm(coeff, expo, token.line, token.column)

    def poly(self) -> List[RawTerm]:
        terms = [self.term()]
        while self.accept("|"):
            terms.append(self.term())
        return terms


def _infer_dim(groups: Sequence[Sequence[RawTerm]], default: int) -> int:
    dims = {len(t.expo) for terms in groups for t in terms if t.expo is not None}
    if len(dims) > 1:
        for terms in groups:
            for t in terms:
                if t.expo is not None and len(t.expo) != min(dims):
                    raise ParseError(
                        f"Exponent vectors of lengths {sorted(dims)} in one expression",
                        t.line,
                        t.column,
                    )
    return dims.pop() if dims else default


def _build_poly(terms: Sequence[RawTerm], dim: int) -> TropicalPolynomial:
    coeffs: List[float] = []
    expos: List[Tuple[float, ...]] = []
    for t in terms:
        if is_bottom(t.coeff):
            message = f"Dropping -inf term at line {t.line}, column {t.column}"
            logger.warning(message)
            warnings.warn(message, UserWarning, stacklevel=3)
            continue
        if t.expo is not None and any(not math.isfinite(e) for e in t.expo):
            raise ParseError("Exponents must be finite", t.line, t.column)
        coeffs.append(t.coeff)
        expos.append(t.expo if t.expo is not None else (0.0,) * dim)
    if not coeffs:
        first = terms[0]
        raise ParseError("A polynomial needs at least one finite term", first.line, first.column)
    return TropicalPolynomial(coeffs, np.array(expos, dtype=float).reshape(len(expos), dim))


def parse_expr(src: str, dim: int = 1) -> TropicalRational:
    """
    Parse a rational function; ``dim`` applies when no term carries an exponent vector.

    Raises:
        ParseError: With the line and column of the offending token.
    """
    parser = _Parser(src)
    groups = [parser.poly()]
    if parser.accept("/"):
        groups.append(parser.poly())
    parser.expect_end()
    n = _infer_dim(groups, dim)
    try:
        num = _build_poly(groups[0], n)
        den = _build_poly(groups[1], n) if len(groups) > 1 else None
    except ParseError:
        raise
    except TropNevException as e:
        raise ParseError(str(e), 1, 1) from e
    return TropicalRational(num, den)


def parse_map(src: str, dim: int = 1) -> ProjectiveMap:
    """Parse ``[p_0 ; p_1 ; ...]`` into a map with polynomial components; brackets are optional."""
    parser = _Parser(src)
    bracketed = parser.accept("[")
    groups = [parser.poly()]
    while parser.accept(";"):
        groups.append(parser.poly())
    if bracketed:
        parser.expect("]")
    parser.expect_end()
    if len(groups) < 2:
        raise ParseError("A projective map needs at least two components separated by ';'", 1, 1)
    n = _infer_dim(groups, dim)
    return ProjectiveMap([_build_poly(terms, n) for terms in groups])


def parse_hypersurface(src: str) -> HomogeneousPolynomial:
    """
    Parse a homogeneous polynomial; every exponent is a multi-index of the same total degree.

    ``0:1,0|-0.5:0,1`` is y_0 (+) (-0.5) (*) y_1.
    """
    parser = _Parser(src)
    terms = parser.poly()
    parser.expect_end()
    coeffs = {}
    shape: Optional[Tuple[int, int]] = None
    for t in terms:
        if t.expo is None:
            raise ParseError("Hypersurface terms need a multi-index", t.line, t.column)
        if any(e < 0 or e != int(e) for e in t.expo):
            raise ParseError("Multi-index entries must be nonnegative integers", t.line, t.column)
        index = tuple(int(e) for e in t.expo)
        if shape is None:
            shape = (len(index) - 1, sum(index))
        elif (len(index) - 1, sum(index)) != shape:
            raise ParseError("Multi-indices must share length and total degree", t.line, t.column)
        if not is_bottom(t.coeff):
            coeffs[index] = max(t.coeff, coeffs.get(index, t.coeff))
    if shape is None or not coeffs:
        raise ParseError(
            "A hypersurface needs at least one finite term", terms[0].line, terms[0].column
        )
    try:
        return HomogeneousPolynomial(shape[0], shape[1], coeffs)
    except TropNevException as e:
        raise ParseError(str(e), terms[0].line, terms[0].column) from e


def format_number(x: float) -> str:
    """Shortest exact text for a real; integers lose the trailing ``.0``."""
    if is_bottom(x):
        return BOTTOM_LITERAL
    x = float(x)
    if x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _format_terms(coeffs: Any, expos: Any) -> Iterator[str]:
    for c, e in zip(coeffs, expos):
        yield f"{format_number(c)}:{','.join(format_number(v) for v in e)}"


def format_poly(P: TropicalPolynomial) -> str:
    return "|".join(_format_terms(P.coeffs, P.expos))


def format_expr(f: Any) -> str:
    """Text that :func:`parse_expr` reads back to the same function."""
    f = as_rational(f)
    if f.is_entire:
        return format_poly(f.num)
    return f"{format_poly(f.num)}/{format_poly(f.den)}"


def format_map(F: ProjectiveMap) -> str:
    return "[" + " ; ".join(format_poly(c) for c in F.components) + "]"


def format_hypersurface(P: HomogeneousPolynomial) -> str:
    return "|".join(_format_terms(P.coeffs.values(), P.coeffs.keys()))
