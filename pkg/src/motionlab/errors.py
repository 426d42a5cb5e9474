"""Exception hierarchy. Every domain failure raises a named subclass of
MotionlabError so the CLI can map it to a stable exit code and error name."""


class MotionlabError(Exception):
    """Base class for all domain errors."""


class PointOutsideDisk(MotionlabError):
    """A parameter point lies outside the open unit disk."""


class UnsupportedForm(MotionlabError):
    """No closed-form rule exists for this harmonic-function representation."""


class NegativeValue(MotionlabError):
    """A quantity that must be nonnegative was negative."""


class NonPositiveHarmonic(MotionlabError):
    """A harmonic function failed the positivity certification."""


class InvalidC(MotionlabError):
    """The envelope/root-solver constant c was not positive."""


class RatioOutOfRange(MotionlabError):
    """A similarity ratio lies outside (0, 1)."""


class EmptySystem(MotionlabError):
    """An iterated function system needs at least one map."""


class ExplosionGuard(MotionlabError):
    """A deterministic render would produce too many points."""


class BadAddress(MotionlabError):
    """A symbolic address is empty or indexes a missing map."""


class DiskPackingFailed(MotionlabError):
    """The deterministic placement scheme could not fit the requested disks."""


class BadArity(MotionlabError):
    """Mismatched list lengths in a composite construction."""


class DegenerateCloud(MotionlabError):
    """A point cloud has fewer than two distinct points."""


class DegenerateSubset(MotionlabError):
    """A tracked subset has fewer than two distinct points."""


class ScaleOverflow(MotionlabError):
    """A dyadic scale index is out of the supported range."""


class WindowTooSmall(MotionlabError):
    """A regression window contains fewer than three scales."""


class DimOutOfRange(MotionlabError):
    """A dimension argument lies outside (0, 2]."""


class AreaOutOfRange(MotionlabError):
    """An area argument violates the capacity-one normalization."""


class KOutOfRange(MotionlabError):
    """A quasiconformality constant k lies outside [0, 1)."""


class DeltaOutOfRange(MotionlabError):
    """A dimension delta lies outside (0, 1]."""


class CircleOutsideDomain(MotionlabError):
    """A sampling circle is not contained in the unit disk."""


class ConfigError(MotionlabError):
    """A motion config file is malformed."""
