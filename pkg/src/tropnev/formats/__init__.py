"""
Expression grammar, JSON documents and table writers.
"""

from .expr import (
    format_expr,
    format_hypersurface,
    format_map,
    format_number,
    format_poly,
    parse_expr,
    parse_hypersurface,
    parse_map,
    tokenize,
)
from .output import (
    format_cell,
    read_csv_table,
    render,
    render_csv,
    render_json,
    to_jsonable,
    write_output,
)
from .schemas import (
    CorpusSpec,
    FunctionSpec,
    HypersurfaceSpec,
    MapSpec,
    TermSpec,
    load_corpus_text,
    load_functions,
    load_hypersurfaces,
    load_map,
)

__all__ = [
    "parse_expr",
    "parse_map",
    "parse_hypersurface",
    "format_expr",
    "format_map",
    "format_hypersurface",
    "format_poly",
    "format_number",
    "tokenize",
    "render",
    "render_csv",
    "render_json",
    "read_csv_table",
    "format_cell",
    "to_jsonable",
    "write_output",
    "TermSpec",
    "FunctionSpec",
    "MapSpec",
    "HypersurfaceSpec",
    "CorpusSpec",
    "load_functions",
    "load_corpus_text",
    "load_map",
    "load_hypersurfaces",
]
