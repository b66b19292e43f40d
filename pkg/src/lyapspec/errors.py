"""Exception hierarchy for lyapspec."""


class LyapSpecError(Exception):
    """Base class for all lyapspec errors."""


class ParseError(LyapSpecError, ValueError):
    """A spec-file token could not be parsed."""


class ValidationError(LyapSpecError, ValueError):
    """A map description violates a structural constraint."""


class RangeError(LyapSpecError, ValueError):
    """An integer parameter (e.g. the T_N index) is outside its supported range."""


class DegenerateSpectrum(LyapSpecError, ValueError):
    """The map has a single length class, so its spectrum is a constant."""


class OutOfDomain(LyapSpecError, ValueError):
    """A Lyapunov exponent lies outside the open domain of the spectrum."""


class SingularAtDimension(LyapSpecError, ValueError):
    """log F vanishes at the requested parameter (it equals the dimension)."""


class NotTwoBranch(LyapSpecError, ValueError):
    """The two-branch classifier was given a map without exactly two branches."""


class OutOfRange(LyapSpecError, ValueError):
    """Argument outside the open unit interval."""
