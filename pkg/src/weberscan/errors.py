"""Exception hierarchy. Every mathematical failure carries a stable ``kind`` tag
that the CLI copies into its structured error record."""
from __future__ import annotations


class WeberScanError(Exception):
    kind = "Error"


class InvalidInput(WeberScanError):
    kind = "InvalidInput"


class RamifiedPrime(WeberScanError):
    kind = "RamifiedPrime"


class NotCoprime(WeberScanError):
    kind = "NotCoprime"


class NotAUnit(WeberScanError):
    kind = "NotAUnit"


class NotTotallySplit(WeberScanError):
    kind = "NotTotallySplit"


class Unsupported(WeberScanError):
    kind = "Unsupported"


class NoUniformizer(WeberScanError):
    kind = "NoUniformizer"


class DegenerateSplitting(WeberScanError):
    kind = "DegenerateSplitting"


class NonCirculant(WeberScanError):
    kind = "NonCirculant"


class FormulaViolation(WeberScanError):
    kind = "FormulaViolation"


class OracleScaleExceeded(WeberScanError):
    kind = "OracleScaleExceeded"


class InternalInconsistency(WeberScanError):
    """Two routes to the same quantity disagreed."""
    kind = "InternalInconsistency"


class CheckpointError(WeberScanError):
    kind = "CheckpointError"
