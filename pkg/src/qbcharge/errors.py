"""Exception hierarchy. Every error raised by the library derives from ModelError."""


class ModelError(ValueError):
    pass


class NonPositiveLambda(ModelError):
    pass


class NegativeCouplingRatio(ModelError):
    pass


class NonPositiveOmega(ModelError):
    pass


class ZetaNotNormalized(ModelError):
    pass


class ThetaOutOfRange(ModelError):
    pass


class NegativeTime(ModelError):
    pass


class NoSteadyState(ModelError):
    """Raised for R = 0: without coupling the amplitudes never relax."""


class PopulationOverflow(ModelError):
    pass


class NotXState(ModelError):
    pass


class NotHermitian(ModelError):
    pass


class NotDensityMatrix(ModelError):
    """Eigenvalues outside [0, 1] by more than numerical noise."""


class StepTooLarge(ModelError):
    pass


class UnsupportedAxes(ModelError):
    pass


class EmptyGrid(ModelError):
    pass


class AxisError(ModelError):
    pass
