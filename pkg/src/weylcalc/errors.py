"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside the region where the algebra is defined."""


class MixedNegativePowers(DomainError):
    """A term would need q^a p^b with a < 0 and b < 0."""


class BothIndicesNegative(DomainError):
    """Basis index (m, n) with m < 0 and n < 0 has no quantization rule."""


class WeightCountMismatch(DomainError):
    pass


class WeightsNotNormalized(DomainError):
    pass


class NegativeExponentUnsupported(DomainError):
    """First-type quotients are only defined on all-positive words."""


class NegativeIndexUnsupported(DomainError):
    pass


class BasisEliminationFailed(DomainError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.message = message
        self.offset = offset
