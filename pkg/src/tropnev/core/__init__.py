"""
Core configuration and exceptions for tropnev.
"""

from .config import RunConfig, load_config, parse_r_spec
from .exceptions import ConfigurationError, TropNevException, ValidationError

__all__ = [
    "RunConfig",
    "load_config",
    "parse_r_spec",
    "TropNevException",
    "ConfigurationError",
    "ValidationError",
]
