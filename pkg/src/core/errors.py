"""
Error taxonomy for relfix.

Every failure raised by the library carries a frozen category tag appended to
its message in the form "(<AREA>: <CATEGORY>)", so callers and tests can match
on the category without parsing prose.
"""

from typing import Optional


class RelfixErrorCategory:
    """Frozen error category names."""
    SYNTAX_ERROR = "SYNTAX_ERROR"
    DUPLICATE_NAME = "DUPLICATE_NAME"
    TORSION_NOT_DIVISOR_CHAIN = "TORSION_NOT_DIVISOR_CHAIN"
    FACTOR_INVALID = "FACTOR_INVALID"
    UNKNOWN_GENERATOR = "UNKNOWN_GENERATOR"
    ZERO_PERIPHERAL_LETTER = "ZERO_PERIPHERAL_LETTER"
    NON_PERIPHERAL_H_LETTER = "NON_PERIPHERAL_H_LETTER"
    RADIUS_CAP_EXCEEDED = "RADIUS_CAP_EXCEEDED"
    LABEL_CAP_EXCEEDED = "LABEL_CAP_EXCEEDED"
    NOT_GEODESIC = "NOT_GEODESIC"
    NOT_A_HOMOMORPHISM = "NOT_A_HOMOMORPHISM"
    INVERSE_FAILED = "INVERSE_FAILED"
    PERIPHERAL_NOT_RESPECTED = "PERIPHERAL_NOT_RESPECTED"
    NO_COMMON_CONJUGATOR = "NO_COMMON_CONJUGATOR"
    AUTOMORPHISM_INCOMPLETE = "AUTOMORPHISM_INCOMPLETE"
    PRECONDITION_VIOLATION = "PRECONDITION_VIOLATION"
    MALFORMED_SAMPLE = "MALFORMED_SAMPLE"
    LEMMA_VIOLATION = "LEMMA_VIOLATION"
    X_EDGE_HAS_NO_COMPANION = "X_EDGE_HAS_NO_COMPANION"
    CONFIG_INVALID = "CONFIG_INVALID"
    UNKNOWN_AUTOMORPHISM = "UNKNOWN_AUTOMORPHISM"


class RelfixError(ValueError):
    """Base class; message is suffixed with the area/category tag."""

    area = "RELFIX"

    def __init__(self, message: str, category: str):
        self.category = category
        self.detail = message
        super().__init__(f"{message} ({self.area}: {category})")


class GroupSpecSyntaxError(RelfixError):
    area = "GROUP"

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(
            f"{message} at position {position}", RelfixErrorCategory.SYNTAX_ERROR
        )


class GroupSpecError(RelfixError):
    area = "GROUP"


class WordError(RelfixError):
    area = "WORD"


class RadiusCapExceeded(RelfixError):
    area = "METRIC"

    def __init__(self, radius: int, target: Optional[str] = None):
        self.radius = radius
        where = f" for {target}" if target else ""
        super().__init__(
            f"word length search exhausted radius cap {radius}{where}; grow the cap",
            RelfixErrorCategory.RADIUS_CAP_EXCEEDED,
        )


class LabelCapExceeded(RelfixError):
    area = "GEODESIC"

    def __init__(self, cap: int, count: int):
        self.cap = cap
        self.count = count
        super().__init__(
            f"{count} geodesic labelings exceed cap {cap}",
            RelfixErrorCategory.LABEL_CAP_EXCEEDED,
        )


class NotGeodesicError(RelfixError):
    area = "GEODESIC"

    def __init__(self, message: str):
        super().__init__(message, RelfixErrorCategory.NOT_GEODESIC)


class AutomorphismError(RelfixError):
    area = "AUT"


class PreconditionViolation(RelfixError):
    area = "CHECK"

    def __init__(self, message: str):
        super().__init__(message, RelfixErrorCategory.PRECONDITION_VIOLATION)


class MalformedSample(RelfixError):
    area = "PROBE"

    def __init__(self, message: str):
        super().__init__(message, RelfixErrorCategory.MALFORMED_SAMPLE)


class LemmaViolation(RelfixError):
    area = "CHECK"

    def __init__(self, message: str):
        super().__init__(message, RelfixErrorCategory.LEMMA_VIOLATION)


class ConfigError(RelfixError):
    area = "CONFIG"

    def __init__(self, message: str):
        super().__init__(message, RelfixErrorCategory.CONFIG_INVALID)
