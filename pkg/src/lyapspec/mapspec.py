"""Descriptions of piecewise linear maps by their branch lengths.

A full-branch piecewise linear map is determined, as far as its Lyapunov
spectrum is concerned, by the multiset of its interval lengths. Lengths and
multiplicities are stored as base-2 logarithms so that maps with
astronomically many branches (``2**(j*j)`` intervals of length ``2**-2**j``)
remain representable.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ParseError, RangeError, ValidationError

__all__ = [
    "BranchClass",
    "Degeneracy",
    "MapSpec",
    "parse_spec",
    "render_spec",
    "parse_length",
    "parse_multiplicity",
    "make_two_branch",
    "preset",
    "PRESETS",
    "construct_tn",
    "TN_MIN",
    "TN_MAX",
]

TN_MIN = 6
TN_MAX = 60

# Slack for rounding when checking the q >= 2 and total-length <= 1 bounds.
_LOG2_SLACK = 1e-12

_POW2 = re.compile(r"^2\^\(?([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\)?$")
_FRACTION = re.compile(r"^(\d+)/(\d+)$")
_INTEGER = re.compile(r"^\d+$")
_DECIMAL = re.compile(r"^(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?$")


class Degeneracy(enum.Enum):
    NON_DEGENERATE = "NonDegenerate"
    CONSTANT_SPECTRUM = "ConstantSpectrum"


@dataclass(frozen=True)
class BranchClass:
    """A group of branches sharing one interval length.

    Attributes
    ----------
    log2_length : float
        ``log2 |X_i|``, strictly negative.
    log2_multiplicity : float
        ``log2`` of the number of branches in the class, non-negative.
    """

    log2_length: float
    log2_multiplicity: float

    def __post_init__(self):
        if not math.isfinite(self.log2_length) or self.log2_length >= 0:
            raise ValidationError(
                f"interval length must lie in (0, 1), got log2 length {self.log2_length!r}"
            )
        if not math.isfinite(self.log2_multiplicity) or self.log2_multiplicity < 0:
            raise ValidationError(
                f"multiplicity must be >= 1, got log2 multiplicity {self.log2_multiplicity!r}"
            )

    @property
    def lyapunov_exponent(self) -> float:
        """``-ln |X_i|`` in nats."""
        return -math.log(2.0) * self.log2_length


def _log2_sum(values) -> float:
    values = np.asarray(values, dtype=float)
    top = values.max()
    return float(top + np.log2(np.exp2(values - top).sum()))


@dataclass(frozen=True)
class MapSpec:
    """Lengths and multiplicities of a piecewise linear map.

    Build instances with :meth:`from_classes` (or the parsers and presets),
    which merge equal lengths and validate. Classes are kept sorted by
    decreasing length, i.e. increasing Lyapunov exponent.
    """

    classes: tuple[BranchClass, ...]
    label: str = ""
    log2_lengths: np.ndarray = field(init=False, repr=False, compare=False)
    log2_multiplicities: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        classes = tuple(self.classes)
        if not classes:
            raise ValidationError("a map needs at least one branch class")
        lengths = [c.log2_length for c in classes]
        if len(set(lengths)) != len(lengths):
            raise ValidationError("duplicate lengths; use MapSpec.from_classes to merge")
        if list(lengths) != sorted(lengths, reverse=True):
            raise ValidationError("classes must be sorted by decreasing length")
        object.__setattr__(self, "classes", classes)
        lengths = np.array(lengths, dtype=float)
        mults = np.array([c.log2_multiplicity for c in classes], dtype=float)
        lengths.setflags(write=False)
        mults.setflags(write=False)
        object.__setattr__(self, "log2_lengths", lengths)
        object.__setattr__(self, "log2_multiplicities", mults)

        if self.log2_branch_count < 1.0 - _LOG2_SLACK:
            raise ValidationError(
                f"a map needs at least 2 branches, got {2.0 ** self.log2_branch_count:.6g}"
            )
        if self.log2_total_length > _LOG2_SLACK:
            raise ValidationError(
                f"intervals do not fit in [0, 1]: total length {2.0 ** self.log2_total_length:.12g}"
            )

    @classmethod
    def from_classes(cls, pairs, label: str = "") -> "MapSpec":
        """Merge ``(log2_multiplicity, log2_length)`` pairs into a validated spec."""
        merged: dict[float, list[float]] = {}
        for log2_mult, log2_len in pairs:
            klass = BranchClass(float(log2_len), float(log2_mult))
            merged.setdefault(klass.log2_length, []).append(klass.log2_multiplicity)
        classes = tuple(
            BranchClass(length, _log2_sum(mults) if len(mults) > 1 else mults[0])
            for length, mults in sorted(merged.items(), reverse=True)
        )
        return cls(classes, label)

    @property
    def log2_branch_count(self) -> float:
        return _log2_sum(self.log2_multiplicities)

    @property
    def log2_total_length(self) -> float:
        return _log2_sum(self.log2_multiplicities + self.log2_lengths)

    @property
    def lyapunov_exponents(self) -> np.ndarray:
        """Per-class ``lambda_i = -ln |X_i|`` in nats."""
        return -math.log(2.0) * self.log2_lengths

    @property
    def degeneracy(self) -> Degeneracy:
        if len(self.classes) == 1:
            return Degeneracy.CONSTANT_SPECTRUM
        return Degeneracy.NON_DEGENERATE

    @property
    def is_degenerate(self) -> bool:
        return self.degeneracy is Degeneracy.CONSTANT_SPECTRUM

    def scaled(self, log2_factor: float) -> "MapSpec":
        """Same lengths with every multiplicity multiplied by ``2**log2_factor``.

        Validation is bypassed for the length bound, since only the weight
        structure matters to the pressure moments.
        """
        spec = object.__new__(MapSpec)
        classes = tuple(
            BranchClass(c.log2_length, c.log2_multiplicity + log2_factor) for c in self.classes
        )
        object.__setattr__(spec, "classes", classes)
        object.__setattr__(spec, "label", self.label)
        object.__setattr__(spec, "log2_lengths", self.log2_lengths)
        mults = self.log2_multiplicities + log2_factor
        mults.setflags(write=False)
        object.__setattr__(spec, "log2_multiplicities", mults)
        return spec


def parse_length(token) -> float:
    """Return ``log2`` of a length given as ``p/q``, a decimal, ``2^E`` or a number."""
    if isinstance(token, Fraction):
        value = token
    elif isinstance(token, (int, float)) and not isinstance(token, bool):
        value = token
    else:
        text = str(token).strip()
        if m := _POW2.match(text):
            return float(m.group(1))
        if m := _FRACTION.match(text):
            num, den = int(m.group(1)), int(m.group(2))
            if num == 0 or den == 0:
                raise ValidationError(f"length must lie in (0, 1), got {text!r}")
            if num >= den:
                raise ValidationError(f"length must lie in (0, 1), got {text!r}")
            return math.log2(num) - math.log2(den)
        if _DECIMAL.match(text):
            value = float(text)
        else:
            raise ParseError(f"malformed length token {text!r}")
    if isinstance(value, Fraction):
        if not 0 < value < 1:
            raise ValidationError(f"length must lie in (0, 1), got {value}")
        return math.log2(value.numerator) - math.log2(value.denominator)
    value = float(value)
    if not 0.0 < value < 1.0:
        raise ValidationError(f"length must lie in (0, 1), got {value!r}")
    return math.log2(value)


def parse_multiplicity(token) -> float:
    """Return ``log2`` of a multiplicity given as an integer or ``2^E``."""
    if isinstance(token, int) and not isinstance(token, bool):
        count = token
    else:
        text = str(token).strip()
        if m := _POW2.match(text):
            return float(m.group(1))
        if not _INTEGER.match(text):
            raise ParseError(f"malformed multiplicity token {text!r}")
        count = int(text)
    if count < 1:
        raise ValidationError(f"multiplicity must be >= 1, got {count}")
    return math.log2(count)


def parse_spec(text: str, label: str = "") -> MapSpec:
    """Parse spec-file content: one ``<multiplicity> <length>`` pair per line.

    Lines starting with ``#`` and blank lines are ignored.
    """
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"line {lineno}: expected '<multiplicity> <length>', got {raw!r}")
        try:
            pairs.append((parse_multiplicity(tokens[0]), parse_length(tokens[1])))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if not pairs:
        raise ValidationError("spec contains no branch classes")
    return MapSpec.from_classes(pairs, label)


def render_spec(spec: MapSpec) -> str:
    """Serialise ``spec`` so that :func:`parse_spec` reproduces it bit for bit."""
    lines = [f"# {spec.label}"] if spec.label else []
    for c in spec.classes:
        lines.append(f"2^{c.log2_multiplicity!r} 2^{c.log2_length!r}")
    return "\n".join(lines) + "\n"


def make_two_branch(len1, len2, label: str = "") -> MapSpec:
    """Two-branch map with the given interval lengths (merged if equal)."""
    pairs = [(0.0, parse_length(len1)), (0.0, parse_length(len2))]
    return MapSpec.from_classes(pairs, label or f"two-branch({len1}, {len2})")


# (multiplicity, length) with lengths as exact fractions or powers of two
_PRESET_TABLE = {
    "S4": [(1, "4/5"), (5, "1/65"), (1, "1/3380")],
    "S6": [(1, "4/5"), (30, "1/400"), (30, "1/128000"), (1, "1/40960000")],
    "S8": [
        (1, "4/5"),
        (125, "1/2000"),
        (585, "1/3200000"),
        (109, "1/5120000000"),
        (1, "1/8192000000000"),
    ],
    "Fig4": [(1, "2^-1"), (20, "2^-45"), (1, "2^-100")],
    "Fig6": [(1, "2^-1"), (1000, "2^-51"), (6000, "2^-101"), (1, "2^-150")],
}

PRESETS = tuple(_PRESET_TABLE)


def preset(name: str) -> MapSpec:
    """One of the named example maps: S4, S6, S8, Fig4, Fig6 (case-insensitive)."""
    lookup = {key.lower(): key for key in _PRESET_TABLE}
    key = lookup.get(str(name).lower())
    if key is None:
        raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    pairs = [(parse_multiplicity(m), parse_length(l)) for m, l in _PRESET_TABLE[key]]
    return MapSpec.from_classes(pairs, key)


def construct_tn(n: int) -> MapSpec:
    """The map T_N: ``2**(j*j)`` intervals of length ``2**-2**j`` for ``6 <= j <= N``."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise RangeError(f"N must be an integer, got {n!r}")
    n = int(n)
    if not TN_MIN <= n <= TN_MAX:
        raise RangeError(f"N must satisfy {TN_MIN} <= N <= {TN_MAX}, got {n}")
    spec = MapSpec.from_classes(
        ((float(j * j), -float(2**j)) for j in range(TN_MIN, n + 1)), f"T_{n}"
    )
    if spec.log2_total_length >= math.log2(1e-8):
        raise ValidationError(f"T_{n} total length exceeds 1e-8")
    return spec
