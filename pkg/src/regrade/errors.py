"""Exception types shared across the package.

Every error raised on a contract violation derives from RegradeError so
callers (and the CLI) can distinguish expected failures from genuine bugs.
"""

from __future__ import annotations


class RegradeError(Exception):
    """Base class for all expected failures raised by this package."""


class GroupMismatchError(RegradeError):
    """An element or degree belongs to a different abelian group than required."""


class NotEpimorphismError(RegradeError):
    """The given group homomorphism is not surjective."""


class InfiniteKernelError(RegradeError):
    """The operation needs a finite kernel but the kernel is infinite."""


class InfiniteSupportError(RegradeError):
    """Materialization would need infinitely many degrees."""


class RingMismatchError(RegradeError):
    """Two graded objects live over different graded rings."""


class NonHomogeneousInputError(RegradeError):
    """A vector that must be homogeneous mixes several degrees."""


class DegreeMismatchError(RegradeError):
    """A matrix entry (or morphism) violates the required degree pattern."""


class UnsupportedFamilyError(RegradeError):
    """An intensional family has a shape outside the supported proof shapes."""


class UnsupportedClassError(RegradeError):
    """The analysis does not apply to objects of this class."""


class MalformedRuleError(RegradeError):
    """A uniform rule morphism fails its degree or membership constraints."""


class GuardExceededError(RegradeError):
    """An enumeration guard (dimension bound) would be exceeded."""


class UnsupportedFieldError(RegradeError):
    """The coefficient field is outside the supported set for this operation."""


class FiniteSubgroupError(RegradeError):
    """The construction requires an infinite subgroup."""


class ScenarioParseError(RegradeError):
    """A scenario or certificate file does not match the expected schema."""


class SoundnessError(RegradeError):
    """An internal consistency check failed; results cannot be trusted."""
