"""Exception hierarchy.

Every numeric failure derives from ``LabError`` so the CLI can map it to
exit code 3 and print the class name.  ``ConfigError`` maps to exit code 2.
"""


class LabError(Exception):
    """Base class for numeric failures raised by the lab."""


class ConfigError(LabError):
    pass


# polycore
class ZeroPolynomial(LabError):
    pass


class NonConvergence(LabError):
    pass


class NotSymmetric(LabError):
    pass


# bellgen
class OrderTooLarge(LabError):
    pass


class Resonance(LabError):
    def __init__(self, m: int):
        super().__init__(f"resonant multiplier: 1 - lambda^{m} == 0")
        self.m = m


# rotach
class NoComplexSaddle(LabError):
    pass


class TooFewSamples(LabError):
    pass


class DegenerateForm(LabError):
    pass


class DegenerateParameter(LabError):
    pass


# dynamics
class EscapedTrajectory(LabError):
    pass


class NoReturns(LabError):
    pass


# odeflow
class NoConvergence(LabError):
    pass


class SingularAtCriticalTime(LabError):
    pass


class ZeroCoordinate(LabError):
    pass


class NotQuadratic(LabError):
    pass


class DegenerateDirection(LabError):
    pass


class NotCritical(LabError):
    pass


# nbody
class ZeroSeparation(LabError):
    pass


class InternalMismatch(LabError):
    pass
