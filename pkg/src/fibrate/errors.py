"""Exception hierarchy shared by every module."""


class FibrateError(ValueError):
    """Base class for all domain errors raised by this package."""


class DependentInput(FibrateError):
    pass


class AmbiguousRank(FibrateError):
    def __init__(self, spectral_gap, message=None):
        self.spectral_gap = spectral_gap
        super().__init__(message or f"no clean rank separation (spectral gap {spectral_gap:.3g})")


class AmbiguousSign(FibrateError):
    pass


class NotDecomposable(FibrateError):
    pass


class NotUnitNorm(FibrateError):
    pass


class NotSkew(FibrateError):
    pass


class NotOrthogonal(FibrateError):
    pass


class OffSphere(FibrateError):
    pass


class NotComplexStructure(FibrateError):
    def __init__(self, condition, residual):
        self.condition = condition
        self.residual = residual
        super().__init__(f"not an orthogonal complex structure: {condition} residual {residual:.3g}")


class NotQuaternionic(FibrateError):
    def __init__(self, condition, residual):
        self.condition = condition
        self.residual = residual
        super().__init__(f"not an orthogonal quaternionic structure: {condition} residual {residual:.3g}")


class NoConvergence(FibrateError):
    pass


class DegenerateSampling(FibrateError):
    pass


class NotLinear(FibrateError):
    def __init__(self, residual):
        self.residual = residual
        super().__init__(f"rotation field is not linear (fit residual {residual:.3g})")


class SchemaError(FibrateError):
    """Malformed JSON input; ``field`` names the offending key."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")
