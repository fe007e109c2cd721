"""Exception types raised across the package.

Every failure mode that callers are expected to catch gets its own class;
anything else is a plain ValueError/TypeError from the offending call site.
"""


class BraidHopfError(Exception):
    """Base class for all package-specific errors."""


class FieldMismatch(BraidHopfError):
    """Two values from different scalar fields met in one operation."""


class CompositionMismatch(BraidHopfError):
    """Morphism composition or comparison with incompatible objects."""


class ShapeError(BraidHopfError):
    """Matrix data does not match the declared domain/codomain sizes."""


class InvalidPermutation(BraidHopfError):
    """Sequence is not a permutation of 0..n-1, or wrong length."""


class MissingTwist(BraidHopfError):
    """Operation needs a twist but the context has none."""


class DualityUnavailable(BraidHopfError):
    """Twist-from-duality requested where no dual pairing is defined."""


class NotAlgebraMorphism(BraidHopfError):
    """A scalar functional fails multiplicativity or unit preservation."""


class WordError(BraidHopfError):
    """Generator word is malformed or its levels do not compose."""


class TruncationError(BraidHopfError):
    """Requested level exceeds the materialized truncation bound."""


class RangeError(BraidHopfError):
    """Index pair (n, k) outside the valid range of a power formula."""


class NotCyclic(BraidHopfError):
    """Cyclic-homology input lacks a verified cyclicity certificate."""


class NotAMorphism(BraidHopfError):
    """Purported chain map fails to commute with the differentials."""


class ParseError(BraidHopfError):
    """Malformed textual input (scalar literal, word, or algebra file)."""

    def __init__(self, message, line=None, position=None):
        loc = ""
        if line is not None:
            loc += f" at line {line}"
        if position is not None:
            loc += f", position {position}"
        super().__init__(message + loc)
        self.line = line
        self.position = position


class ValidationError(BraidHopfError):
    """Loaded algebra data fails structural axioms; carries the report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class UnknownBuiltin(BraidHopfError):
    """Requested builtin name is not in the registry."""
