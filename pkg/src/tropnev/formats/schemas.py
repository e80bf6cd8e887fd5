"""
Pydantic models for JSON function, map, hypersurface and corpus documents.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field, ValidationError as PydanticValidationError, field_validator

from ..core.exceptions import ParseError, ValidationError
from ..maxplus.semiring import as_tropical
from ..plfun.polynomial import TropicalPolynomial
from ..plfun.rational import TropicalRational
from ..projective.hypersurface import HomogeneousPolynomial
from ..projective.space import ProjectiveMap
from ..utils.logger import get_logger
from .expr import parse_expr, parse_hypersurface, parse_map

logger = get_logger(__name__)


class TermSpec(BaseModel):
    """One term: a coefficient (number or "-inf") and an exponent vector."""

    coeff: Union[float, str]
    expo: List[float] = Field(default_factory=list)

    @field_validator("coeff")
    @classmethod
    def validate_coeff(cls, v: Union[float, str]) -> float:
        return as_tropical(v)


def _terms_to_poly(terms: List[TermSpec], dim: int) -> TropicalPolynomial:
    lengths = {len(t.expo) for t in terms if t.expo}
    if len(lengths) > 1:
        raise ValidationError(f"Exponent vectors of lengths {sorted(lengths)} in one polynomial")
    n = lengths.pop() if lengths else dim
    return TropicalPolynomial([t.coeff for t in terms], [t.expo or [0.0] * n for t in terms])


class FunctionSpec(BaseModel):
    """A rational function given as text or as numerator and denominator term lists."""

    expr: Optional[str] = None
    num: Optional[List[TermSpec]] = None
    den: Optional[List[TermSpec]] = None
    dim: int = Field(1, ge=1)

    def build(self) -> TropicalRational:
        if self.expr is not None:
            return parse_expr(self.expr, self.dim)
        if not self.num:
            raise ValidationError("A function document needs 'expr' or a nonempty 'num'")
        num = _terms_to_poly(self.num, self.dim)
        den = _terms_to_poly(self.den, num.dim) if self.den else None
        return TropicalRational(num, den)


class MapSpec(BaseModel):
    """A projective map given as text or as component expressions."""

    expr: Optional[str] = None
    components: Optional[List[str]] = None
    dim: int = Field(1, ge=1)

    def build(self) -> ProjectiveMap:
        if self.expr is not None:
            return parse_map(self.expr, self.dim)
        if not self.components:
            raise ValidationError("A map document needs 'expr' or 'components'")
        return ProjectiveMap([parse_expr(c, self.dim) for c in self.components])


class CoefficientSpec(BaseModel):
    index: List[int]
    value: Union[float, str]


class HypersurfaceSpec(BaseModel):
    """A homogeneous polynomial given as text or as (index, value) pairs."""

    expr: Optional[str] = None
    m: Optional[int] = Field(None, ge=1)
    d: Optional[int] = Field(None, ge=1)
    coeffs: Optional[List[CoefficientSpec]] = None

    def build(self) -> HomogeneousPolynomial:
        if self.expr is not None:
            return parse_hypersurface(self.expr)
        if self.m is None or self.d is None or not self.coeffs:
            raise ValidationError("A hypersurface document needs 'expr' or 'm', 'd' and 'coeffs'")
        return HomogeneousPolynomial(self.m, self.d, {tuple(c.index): c.value for c in self.coeffs})


class CorpusSpec(BaseModel):
    """A list of functions, each a text expression or a function document."""

    functions: List[Union[str, FunctionSpec]]

    def build(self, dim: int = 1) -> List[TropicalRational]:
        return [
            parse_expr(item, dim) if isinstance(item, str) else item.build()
            for item in self.functions
        ]


def _validated(model: Any, data: Any) -> Any:
    try:
        return model.model_validate(data)
    except PydanticValidationError as e:
        raise ValidationError(f"Invalid {model.__name__} document: {e}") from e


def load_json_document(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid JSON: {e.msg}", e.lineno, e.colno) from e


def load_corpus_text(text: str, dim: int = 1) -> List[TropicalRational]:
    """One expression per line; blank lines and ``#`` comments are skipped."""
    out = []
    for number, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        try:
            out.append(parse_expr(body, dim))
        except ParseError as e:
            raise ParseError(e.message, number, e.column) from e
    return out


def load_functions(source: Union[str, Path], dim: int = 1) -> List[TropicalRational]:
    """
    Functions from a file: a JSON list, a ``{"functions": [...]}`` document, a single function
    document, or a text file with one expression per line.
    """
    path = Path(source)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json" or text.lstrip().startswith(("[", "{")):
        data = load_json_document(text)
        if isinstance(data, list):
            data = {"functions": data}
        if isinstance(data, dict) and "functions" not in data:
            return [_validated(FunctionSpec, data).build()]
        functions = _validated(CorpusSpec, data).build(dim)
    else:
        functions = load_corpus_text(text, dim)
    logger.info(f"Loaded {len(functions)} function(s) from {path}")
    return functions


def load_map(source: Union[str, Path], dim: int = 1) -> ProjectiveMap:
    """A JSON map document or a bare list of component expressions."""
    path = Path(source)
    data = load_json_document(path.read_text(encoding="utf-8"))
    if isinstance(data, list):
        data = {"components": data}
    if isinstance(data, dict):
        data.setdefault("dim", dim)
    return _validated(MapSpec, data).build()


def load_hypersurfaces(source: Union[str, Path]) -> List[HomogeneousPolynomial]:
    """A JSON hypersurface document or a list of them."""
    path = Path(source)
    data = load_json_document(path.read_text(encoding="utf-8"))
    items: List[Dict[str, Any]] = data if isinstance(data, list) else [data]
    return [_validated(HypersurfaceSpec, item).build() for item in items]
