"""
Exception hierarchy for the Harder-Narasimhan engine
All engine, host and CLI failures derive from HNError
"""

from typing import Any, List, Optional


class HNError(Exception):
    """Base class for every engine failure"""


class ExactArithmeticError(HNError):
    """Operation leaves the exact number classes (mixed kinds, infinities, bad logs)"""


class FiltrationError(HNError):
    """Malformed filtration data or a violated filtration precondition"""


class DimensionMismatchError(HNError):
    """Operands live over different fields or ambient dimensions"""


class ZeroObjectError(HNError):
    """Operation undefined on the zero object (slope, semistability)"""


class PolygonError(HNError):
    """Non-concave polygon or negative measure mass"""


class DestabilizerTieError(HNError):
    """Two distinct subobjects share the maximal slope and the maximal rank"""

    def __init__(self, message: str, candidates: Optional[List[Any]] = None):
        super().__init__(message)
        self.candidates = candidates or []


class EnumerationBudgetExceeded(HNError):
    """A brute-force search would exceed its configured ceiling"""

    def __init__(self, message: str, required: int = 0, budget: int = 0):
        super().__init__(message)
        self.required = required
        self.budget = budget


class ClosureCapExceeded(HNError):
    """Sum/intersection closure grew past its configured cap"""


class HNSequenceError(HNError):
    """Destabilizer failure while building the HN sequence"""

    def __init__(self, message: str, partial_chain: List[Any], cause: Optional[BaseException] = None):
        super().__init__(message)
        self.partial_chain = list(partial_chain)
        self.cause = cause


class LatticeError(HNError):
    """Invalid lattice data"""


class RankDeficientError(LatticeError):
    """Sublattice generators are linearly dependent"""


class NotSaturatedError(LatticeError):
    """Quotient requested by a sublattice with torsion cokernel"""


class CertificationError(HNError):
    """A result could not be certified at the requested level"""


class InputValidationError(HNError):
    """Input document is syntactically valid but mathematically inconsistent"""
