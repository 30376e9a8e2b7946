"""Expression DSL and command line interface."""

from .lower import lower, lower_numeric, parse_point, parse_scalar, parse_seq, parse_set
from .syntax import parse, pretty

__all__ = ["lower", "lower_numeric", "parse", "parse_point", "parse_scalar", "parse_seq", "parse_set", "pretty"]
