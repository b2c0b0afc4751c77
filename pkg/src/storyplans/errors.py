"""Shared exception types."""


class ParseError(ValueError):
    """Malformed input text (rationals, DIMACS, JSON documents)."""


class CoverageError(ValueError):
    """A schedule or drawing does not cover the graph it is paired with."""
