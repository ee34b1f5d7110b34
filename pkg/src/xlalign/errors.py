"""Exception hierarchy for the toolkit.

Every failure mode callers are expected to branch on gets its own class;
generic misuse (bad argument types, impossible configs) raises ValueError.
"""

from __future__ import annotations


class XlalignError(Exception):
    """Base class for all toolkit-specific errors."""


class DimensionMismatchError(XlalignError):
    """Two objects that must share a dimension do not."""

    def __init__(self, what: str, left: int, right: int):
        self.left = left
        self.right = right
        super().__init__(f"{what}: {left} != {right}")


class NonFiniteDataError(XlalignError):
    """A constructed array contains NaN or Inf."""


class EmptyTrainingError(XlalignError):
    """A fitter was handed zero training pairs."""


class DegenerateDataError(XlalignError):
    """Training data has no usable variance for the requested fit."""


class DivergenceError(XlalignError):
    """Iterative fitting produced a non-finite loss."""

    def __init__(self, epoch: int):
        self.epoch = epoch
        super().__init__(f"loss became non-finite at epoch {epoch}")


class DegenerateDenominatorError(XlalignError):
    """Both mean distances are ~0, so the relative improvement is undefined."""

    def __init__(self, d_original: float, d_mapped: float):
        self.d_original = d_original
        self.d_mapped = d_mapped
        super().__init__(
            "degenerate dD denominator: "
            f"d_original={d_original!r}, d_mapped={d_mapped!r}"
        )


class ZeroNormRowError(XlalignError):
    """A cosine was requested for a zero vector."""

    def __init__(self, which: str, row: int):
        self.row = row
        super().__init__(f"zero-norm vector in {which} at row {row}")


class ZeroColumnError(XlalignError):
    """A matrix column has zero norm, so column cosines are undefined."""

    def __init__(self, column: int):
        self.column = column
        super().__init__(f"matrix column {column} has zero norm")


class FileFormatError(XlalignError):
    """Base class for binary/TSV format violations."""


class BadMagicError(FileFormatError):
    """File does not start with the expected magic bytes."""


class VersionMismatchError(FileFormatError):
    """File declares an unsupported format version."""


class TruncatedPayloadError(FileFormatError):
    """File ends before the header-declared payload is complete."""


class SizeMismatchError(FileFormatError):
    """Declared sizes disagree with the actual payload length."""


class MalformedLineError(FileFormatError):
    """A TSV line does not have exactly two tab-separated fields."""

    def __init__(self, line_number: int, n_fields: int):
        self.line_number = line_number
        self.n_fields = n_fields
        super().__init__(f"line {line_number}: expected 2 fields, got {n_fields}")
