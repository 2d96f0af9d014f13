"""Exception hierarchy for quatlat."""

from typing import Any, List, Optional


class QuatlatError(Exception):
    """Base class for every error raised by quatlat."""


class ParseError(QuatlatError):
    """A polynomial string could not be parsed."""

    def __init__(self, text: str, position: int, message: str):
        self.text = text
        self.position = position
        self.message = message
        super().__init__(f"{message} at position {position}: {text!r}")


class SpecError(QuatlatError):
    """A JSON document failed validation or has unresolved references."""

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        self.message = message
        prefix = f"{location}: " if location else ""
        super().__init__(prefix + message)


class DegreeError(QuatlatError):
    """Polynomial degree is outside the range an operation accepts."""


class NotSquarefreeError(QuatlatError):
    """A squarefree polynomial was required."""


class CompositeModulusError(QuatlatError):
    def __init__(self, modulus: int):
        self.modulus = modulus
        super().__init__(f"modulus {modulus} is not prime")


class NonInvertibleError(QuatlatError):
    """A denominator vanishes modulo the working prime."""

    def __init__(self, p: int, denominator: int):
        self.p = p
        self.denominator = denominator
        super().__init__(f"denominator {denominator} is not invertible mod {p}")


class FieldDefinitionError(QuatlatError):
    """The defining polynomial of a field is unusable (non-monic, reducible, ...)."""


class IndexDivisibleError(QuatlatError):
    """p divides the index [O_K : Z[theta]], decomposition is not computable here."""

    def __init__(self, p: int, label: str = ""):
        self.p = p
        self.label = label
        where = f" in {label}" if label else ""
        super().__init__(f"prime {p} divides the index of Z[theta]{where}")


class NotAnEmbeddingError(QuatlatError):
    pass


class DegreeMismatchError(QuatlatError):
    pass


class MatchAmbiguousError(QuatlatError):
    """More than one (or no) base place lies under a top place."""


class InconsistentLocalDegreeError(QuatlatError):
    """Ramification or residue degree ratios are not integral."""


class IntervalSeparationError(QuatlatError):
    """Root intervals could not be separated within the refinement cap."""


class NotAutomorphismError(QuatlatError):
    def __init__(self, image: Any):
        self.image = image
        super().__init__(f"{image} does not define an automorphism")


class OddRamificationError(QuatlatError):
    """Ramification set of odd cardinality (violates Hilbert reciprocity)."""

    def __init__(self, count: int):
        self.count = count
        super().__init__(f"ramification set has odd cardinality {count}")


class ComplexPlaceError(QuatlatError):
    """A complex place was listed as ramified."""


class TotallyDefiniteError(QuatlatError):
    """The algebra is ramified at every archimedean place."""


class ZeroDenominatorError(QuatlatError):
    pass


class NotFreeError(QuatlatError):
    """A twist was requested at a place that is not free."""


class BaseChangeMismatchError(QuatlatError):
    """A recomputed base change disagrees with the expected algebra."""


class CertificateViolationError(QuatlatError):
    """A sampled prime has a splitting type outside the certificate."""

    def __init__(self, p: int, found: Any):
        self.p = p
        self.found = found
        super().__init__(f"prime {p} has splitting type {found} outside the certificate")


class InconclusiveError(QuatlatError):
    """Parity needs a free place, none was found and nothing certifies one."""

    def __init__(self, message: str, searched_to: Optional[int] = None,
                 forced: Optional[List[str]] = None):
        self.searched_to = searched_to
        self.forced = forced or []
        super().__init__(message)
