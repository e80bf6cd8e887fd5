"""
Verification harness: every subcommand runs a registered check that produces a table and a
pass/fail status.
"""

from . import functional, projective
from .base import (
    Check,
    CheckRegistry,
    CheckRequest,
    CheckResult,
    CheckStatus,
    register_check,
    registry,
)

__all__ = [
    "Check",
    "CheckRegistry",
    "CheckRequest",
    "CheckResult",
    "CheckStatus",
    "register_check",
    "registry",
    "functional",
    "projective",
]
