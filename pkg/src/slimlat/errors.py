"""Exception hierarchy.

Every error raised by the library derives from :class:`SlimLatError`; most
also derive from :class:`ValueError` so callers validating user input can
catch the builtin type.  Errors that point at a concrete offending object
carry it in ``witness``.
"""

from __future__ import annotations


class SlimLatError(Exception):
    def __init__(self, message: str = "", witness=None):
        super().__init__(message)
        self.witness = witness


# order core
class LatticeError(SlimLatError, ValueError):
    pass


class NotLinearExtension(LatticeError):
    pass


class NotReduced(LatticeError):
    pass


class NotALattice(LatticeError):
    pass


class NoBounds(NotALattice):
    """More than one minimal or maximal element."""


class IndexOutOfRange(LatticeError, IndexError):
    pass


# diagrams
class DiagramError(SlimLatError, ValueError):
    pass


class NotSlimSemimodular(DiagramError):
    pass


class InconsistentOrder(DiagramError):
    pass


class CrossingDetected(DiagramError):
    pass


class NoDiagramFound(DiagramError):
    pass


class EdgeNotInDiagram(DiagramError):
    pass


# builders / classification
class NotACell(DiagramError):
    pass


class NotACorner(DiagramError):
    pass


class NotOnBoundary(DiagramError):
    pass


class NotRectangular(DiagramError):
    pass


class InternalValidationFailed(SlimLatError, AssertionError):
    """A construction that theory guarantees to succeed did not."""


class CertificateSearchFailed(InternalValidationFailed):
    pass


# congruences
class SizeBoundExceeded(SlimLatError, ValueError):
    pass


class NotMaximalChain(SlimLatError, ValueError):
    pass


class NotPrime(SlimLatError, ValueError):
    pass


class NotComplementaryPair(SlimLatError, ValueError):
    pass


class ClassificationFailed(InternalValidationFailed):
    pass


# morphisms / search
class BudgetExceeded(SlimLatError, RuntimeError):
    pass


class NotMono(SlimLatError, ValueError):
    pass


class CeilingExceeded(SlimLatError, ValueError):
    pass


# cli / io
class ConfigInvalid(SlimLatError, ValueError):
    pass


class ParseError(SlimLatError, ValueError):
    pass
