"""Exception types raised across the package."""

from __future__ import annotations


class PpflightError(Exception):
    """Base class for all package errors."""


class NonSkewInput(PpflightError, ValueError):
    """Matrix handed to the vee map is not skew-symmetric within tolerance."""


class NearSingularAttitude(PpflightError, ValueError):
    """Rotation error too close to 180 deg for the quaternion extraction."""


class NegativeTime(PpflightError, ValueError):
    """Time argument must be non-negative."""


class InfeasibleEnvelope(PpflightError, ValueError):
    """Envelope parameters leave no room for the preset error trajectory."""


class InvalidParameter(PpflightError, ValueError):
    """A constructor argument violates its documented invariant."""


class NonFiniteState(PpflightError, ArithmeticError):
    """Integration or observer state became NaN/Inf."""


class DegenerateThrust(PpflightError, ValueError):
    """Thrust vector too small to define a body z-axis."""


class YawAlignmentSingularity(PpflightError, ValueError):
    """Thrust axis parallel to the yaw heading; frame construction fails."""


class InsufficientHistory(PpflightError, ValueError):
    """Not enough samples buffered for the finite-difference stencil."""


class ConfigInvalid(PpflightError, ValueError):
    """Experiment configuration failed validation."""
