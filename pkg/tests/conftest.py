"""Pytest configuration and fixtures."""

import json
import os
import sys
from pathlib import Path
from typing import List

import numpy as np
import pytest

# Add src directory to Python path
src_dir = Path(__file__).parent.parent / "src"
sys.path.insert(0, str(src_dir))

from tropnev.core.config import RunConfig
from tropnev.formats.expr import parse_expr
from tropnev.nevanlinna.quadrature import make_quadrature
from tropnev.plfun.polynomial import TropicalPolynomial
from tropnev.plfun.rational import TropicalRational

# (x (+) 0) (/) (x (+) 1): root at 0, pole at 1, T(r) = (r - 1) / 2 for r >= 1
RATIONAL_1D = "0:1|0:0/0:1|1:0"

# |x| - |y| written as (x (+) -x) (/) (y (+) -y)
ABS_DIFF_2D = "0:1,0|0:-1,0/0:0,1|0:0,-1"


@pytest.fixture(autouse=True)
def isolated_env(monkeypatch, tmp_path):
    """Run every test away from TROPNEV_* variables and any .env file."""
    for key in list(os.environ):
        if key.upper().startswith("TROPNEV_"):
            monkeypatch.delenv(key, raising=False)
    monkeypatch.chdir(tmp_path)
    yield


@pytest.fixture
def settings() -> RunConfig:
    """Default run configuration on the 1:100:100 grid."""
    return RunConfig()


@pytest.fixture
def grid(settings) -> np.ndarray:
    return settings.r_grid()


@pytest.fixture
def rational_1d() -> TropicalRational:
    return parse_expr(RATIONAL_1D)


@pytest.fixture
def abs_diff_2d() -> TropicalRational:
    return parse_expr(ABS_DIFF_2D)


@pytest.fixture
def quad_1d():
    return make_quadrature(1)


@pytest.fixture
def quad_2d():
    return make_quadrature(2, 4096)


def random_rational(rng: np.random.Generator, dim: int, terms: int = 3) -> TropicalRational:
    """Rational function with small integer exponents and normal coefficients."""

    def poly() -> TropicalPolynomial:
        coeffs = rng.normal(0.0, 1.0, size=terms)
        expos = rng.integers(-2, 3, size=(terms, dim)).astype(float)
        return TropicalPolynomial(coeffs, expos)

    return TropicalRational(poly(), poly())


@pytest.fixture
def corpus_1d() -> List[TropicalRational]:
    """Seeded corpus of one-variable rationals."""
    rng = np.random.default_rng(7)
    return [random_rational(rng, 1) for _ in range(5)]


@pytest.fixture
def corpus_2d() -> List[TropicalRational]:
    """Seeded corpus of two-variable rationals."""
    rng = np.random.default_rng(11)
    return [random_rational(rng, 2) for _ in range(3)]


@pytest.fixture
def temp_config_file(tmp_path) -> Path:
    """TOML configuration file with a short grid and a fixed seed."""
    path = tmp_path / "tropnev.toml"
    path.write_text(
        "r_min = 1.0\nr_max = 10.0\nr_count = 10\nseed = 3\nquad_size = 512\n", encoding="utf-8"
    )
    return path


@pytest.fixture
def temp_json_config(tmp_path) -> Path:
    path = tmp_path / "tropnev.json"
    data = {"r_max": 50.0, "r_count": 25, "output_format": "json"}
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


@pytest.fixture
def corpus_file(tmp_path) -> Path:
    """Text corpus with one expression per line and a comment."""
    path = tmp_path / "corpus.txt"
    path.write_text(f"# one-variable corpus\n{RATIONAL_1D}\n\n0:2|1:0\n", encoding="utf-8")
    return path
