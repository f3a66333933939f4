"""Exception hierarchy for the certification pipeline.

Every failure mode named by a module contract gets its own class so that
callers (and the certificate assembler) can record precisely which check
broke. All inherit from FancertError.
"""


class FancertError(Exception):
    """Base class for all library errors."""


# --- field construction -----------------------------------------------------

class NonMonic(FancertError):
    pass


class NotSquarefree(FancertError):
    pass


class BasisNotRing(FancertError):
    pass


class BasisMissingOne(FancertError):
    pass


class OracleMismatch(FancertError):
    """Two independent computations of the same quantity disagreed."""


# --- embeddings -------------------------------------------------------------

class RootFindingFailed(FancertError):
    pass


class AmbiguousRealComplexSplit(FancertError):
    """A root's imaginary part fell inside the real/complex guard band."""


# --- units ------------------------------------------------------------------

class NotAUnit(FancertError):
    pass


class NonPositiveProfile(FancertError):
    """Element is not totally positive at the real embeddings."""


class RankTooLarge(FancertError):
    pass


class WrongRank(FancertError):
    pass


# --- ambient geometry -------------------------------------------------------

class IllConditioned(FancertError):
    pass


class InjectivityViolation(FancertError):
    pass


class ZeroCoordinate(FancertError):
    pass


class ConjugationCheckFailed(FancertError):
    pass


# --- fans and domains -------------------------------------------------------

class WrongSignature(FancertError):
    pass


class CollapseFailed(FancertError):
    pass


class RayNotInFan(FancertError):
    pass


class TilingGap(FancertError):
    """A sampled point admitted no witness inside the search window."""


# --- certificate / CLI ------------------------------------------------------

class IncompletePipeline(FancertError):
    pass


class NotAdmissible(FancertError):
    pass


class UnsupportedDimension(FancertError):
    pass


class ConfigError(FancertError):
    """Invalid run configuration (CLI exit code 2)."""
