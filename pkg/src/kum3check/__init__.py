"""Exact rational verification of the sixfold intersection computations.

The package recomputes, over the rationals and with no floating point,
the constant table, basis expansions, restriction solves, rank and kernel
certificates and cohomology bookkeeping for Kum3-type sixfolds, and
compares every value against its expected result.
"""

from .config import (
    ConfigDocument,
    ConfigError,
    default_config,
    default_config_text,
    load_config,
    parse_config,
)
from .engine import Engine
from .report import Check, SuiteReport, emit_json, emit_markdown
from .suites import SUITE_NAMES, run_suite

__version__ = "0.1.0"

__all__ = [
    "Check",
    "ConfigDocument",
    "ConfigError",
    "Engine",
    "SUITE_NAMES",
    "SuiteReport",
    "default_config",
    "default_config_text",
    "emit_json",
    "emit_markdown",
    "load_config",
    "parse_config",
    "run_suite",
    "__version__",
]
