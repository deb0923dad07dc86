"""Exception hierarchy.

Every error raised by the package derives from :class:`LatticeError`, which is a
``ValueError`` so callers that only care about bad input can catch that.
"""

from __future__ import annotations


class LatticeError(ValueError):
    pass


class DuplicateName(LatticeError):
    pass


class UnknownName(LatticeError):
    pass


class CyclicCovers(LatticeError):
    pass


class NotALattice(LatticeError):
    def __init__(self, message: str, witness: tuple[str, ...] = ()):
        super().__init__(message)
        self.witness = witness


class NotComparable(LatticeError):
    pass


class NoSuchComplement(LatticeError):
    pass


class NotMaximalChain(LatticeError):
    pass


class SizeLimit(LatticeError):
    pass


class NotPrime(LatticeError):
    pass


class NotModular(LatticeError):
    pass


class NotComplemented(LatticeError):
    pass


class MissingValue(LatticeError):
    pass


class NegativeWeight(LatticeError):
    pass


class ChainInconsistent(LatticeError):
    def __init__(self, message: str, chains: tuple[tuple[str, ...], ...] = ()):
        super().__init__(message)
        self.chains = chains


class ReportError(LatticeError):
    """Raised when a check fails and the caller asked for an exception."""

    def __init__(self, reports):
        if not isinstance(reports, (list, tuple)):
            reports = [reports]
        self.reports = list(reports)
        super().__init__("; ".join(str(r) for r in self.reports))


class RankAxiomViolation(ReportError):
    pass


class AxiomViolation(ReportError):
    pass


class EmptyZ(LatticeError):
    pass


class NotAComplement(LatticeError):
    pass


class NotAMember(LatticeError):
    pass


class EmptyDecomposingSet(LatticeError):
    pass


class NotASublattice(LatticeError):
    pass


class IncompleteSystem(LatticeError):
    pass


class BadRational(LatticeError):
    pass


class ParseError(LatticeError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
