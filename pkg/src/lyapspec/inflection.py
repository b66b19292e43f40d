"""Lyapunov inflections of piecewise linear maps.

An exponent ``alpha = p'(-s)`` is an inflection of the spectrum iff ``s``
solves ``G(s) = H(s)`` with

    G(s) = 1 / (2 ln F(s)),    H(s) = F F'' / F'**2 - 1 = variance / mean**2.

Roots are located by scanning ``I = G - H`` for sign changes and bisecting
each bracket. The module also carries the two-branch concavity classifier,
the boundary functions ``Phi+`` / ``Phi-`` of the two-branch analysis, and
the interlacing check that certifies ``2 (N - 26)`` roots for ``T_N``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._roots import bisect_bracket
from .errors import (
    DegenerateSpectrum,
    NotTwoBranch,
    OutOfRange,
    RangeError,
    SingularAtDimension,
)
from .mapspec import MapSpec, construct_tn
from .pressure import LN2, moment_arrays
from .spectrum import dimension, domain

__all__ = [
    "THRESHOLD",
    "InflectionPoint",
    "TwoBranchVerdict",
    "TwoBranchClass",
    "InterlacingRow",
    "InterlacingReport",
    "key_lhs_G",
    "key_rhs_H",
    "key_function",
    "find_inflections",
    "scan_grid",
    "classify_two_branch",
    "phi_minus",
    "phi_plus",
    "crossover_point",
    "midpoint",
    "verify_interlacing",
]

_SQRT_2LN2 = math.sqrt(2.0 * LN2)
THRESHOLD = (_SQRT_2LN2 + 1.0) / (_SQRT_2LN2 - 1.0)

DEFAULT_GRID = 65536
DEFAULT_SEGMENT_POINTS = 64
ALPHA_EPS = 1e-6
DIM_GAP = 1e-9
# bracket width after refinement, relative to |s| when |s| < 1
ROOT_XTOL = 1e-13
INTERLACE_K0 = 26


@dataclass(frozen=True)
class InflectionPoint:
    s: float
    alpha: float
    bracket: tuple[float, float]
    residual: float


class TwoBranchVerdict(enum.Enum):
    CONCAVE = "Concave"
    TWO_INFLECTIONS = "TwoInflections"


@dataclass(frozen=True)
class TwoBranchClass:
    """Classification of a two-branch map against the concavity threshold.

    ``lambda_ratio`` is ``max lambda / min lambda >= 1``; ``printed_ratio`` is
    ``log|X_1| / log|X_2|`` with ``|X_1| >= |X_2|``, its reciprocal.
    """

    lambda_ratio: float
    printed_ratio: float
    verdict: TwoBranchVerdict
    threshold: float = THRESHOLD


def _require_nondegenerate(spec: MapSpec):
    if spec.is_degenerate:
        raise DegenerateSpectrum(f"{spec.label or 'map'} has a constant spectrum")


def key_lhs_G(spec: MapSpec, s):
    """``1 / (2 ln F(s))``; scalar or array ``s``."""
    lnF = LN2 * moment_arrays(spec, s)[0]
    if np.any(np.abs(lnF) < 1e-300):
        raise SingularAtDimension(f"ln F vanishes at s={s!r}")
    out = 0.5 / lnF
    return float(out) if np.ndim(out) == 0 else out


def key_rhs_H(spec: MapSpec, s):
    """``F F'' / F'**2 - 1``, computed as ``variance / mean**2``."""
    _require_nondegenerate(spec)
    _, mean, variance = moment_arrays(spec, s)
    out = variance / mean**2
    return float(out) if np.ndim(out) == 0 else out


def key_function(spec: MapSpec, s):
    """``I(s) = G(s) - H(s)``. Infinite at the dimension itself."""
    log2F, mean, variance = moment_arrays(spec, s)
    with np.errstate(divide="ignore"):
        out = 0.5 / (LN2 * log2F) - variance / mean**2
    return float(out) if np.ndim(out) == 0 else out


def _s_for_alpha(spec: MapSpec, target: float, s_hi: float) -> float:
    # alpha_of_s is decreasing; walk left from s_hi until alpha exceeds target
    def excess(s):
        return float(moment_arrays(spec, s)[1]) - target

    lo = min(-1.0, s_hi - 1.0)
    while excess(lo) < 0.0:
        lo *= 2.0
        if lo < -2.0**40:
            raise DegenerateSpectrum("cannot bracket the left end of the scan")
    lo, hi = bisect_bracket(excess, lo, s_hi)
    return 0.5 * (lo + hi)


def _crossings(spec: MapSpec) -> np.ndarray:
    # parameters where two class exponents log2 m_i + s log2|X_i| coincide
    mu = spec.log2_multiplicities
    ell = spec.log2_lengths
    i, j = np.triu_indices(len(mu), k=1)
    return (mu[j] - mu[i]) / (ell[i] - ell[j])


def scan_grid(
    spec: MapSpec,
    s_lo: float,
    s_hi: float,
    grid_points: int = DEFAULT_GRID,
    segment_points: int = DEFAULT_SEGMENT_POINTS,
) -> np.ndarray:
    """Sorted scan abscissae on ``[s_lo, s_hi]``.

    A uniform grid of ``grid_points`` is merged with ``segment_points`` uniform
    points between each pair of consecutive class-dominance crossings, so that
    transitions confined to tiny parameter windows are resolved as well.
    """
    parts = [np.linspace(s_lo, s_hi, grid_points)]
    if segment_points > 1:
        cross = _crossings(spec)
        cross = cross[(cross > s_lo) & (cross < s_hi)]
        breaks = np.unique(np.concatenate(([s_lo, s_hi], cross)))
        for a, b in zip(breaks[:-1], breaks[1:]):
            parts.append(np.linspace(a, b, segment_points))
    return np.unique(np.concatenate(parts))


def find_inflections(
    spec: MapSpec,
    grid_points: int = DEFAULT_GRID,
    segment_points: int = DEFAULT_SEGMENT_POINTS,
) -> list[InflectionPoint]:
    """All sign-changing roots of ``I = G - H`` with ``s`` below the dimension.

    Roots come back sorted by increasing ``s`` (decreasing ``alpha``). Roots of
    even multiplicity are invisible to the sign scan.
    """
    _require_nondegenerate(spec)
    if grid_points < 64:
        raise ValueError(f"grid_points must be >= 64, got {grid_points}")
    dom = domain(spec)
    dim = dimension(spec)
    s_hi = dim - DIM_GAP
    s_lo = _s_for_alpha(spec, dom.alpha_max - ALPHA_EPS * dom.width, s_hi)

    grid = scan_grid(spec, s_lo, s_hi, grid_points, segment_points)
    values = key_function(spec, grid)
    keep = np.sign(values) != 0
    grid, signs = grid[keep], np.sign(values[keep])
    flips = np.nonzero(signs[:-1] != signs[1:])[0]

    def func(s):
        return key_function(spec, s)

    roots = []
    for idx in flips:
        a, b = float(grid[idx]), float(grid[idx + 1])
        xtol = ROOT_XTOL * min(1.0, max(abs(a), abs(b)))
        lo, hi = bisect_bracket(func, a, b, xtol=xtol)
        s = 0.5 * (lo + hi)
        roots.append(
            InflectionPoint(
                s=s,
                alpha=float(moment_arrays(spec, s)[1]),
                bracket=(lo, hi),
                residual=func(s),
            )
        )
    return roots


def classify_two_branch(spec: MapSpec) -> TwoBranchClass:
    """Concave vs two-inflection verdict for a map with exactly two branches."""
    if abs(spec.log2_branch_count - 1.0) > 1e-12:
        raise NotTwoBranch(
            f"expected 2 branches, got {2.0 ** spec.log2_branch_count:.6g}"
        )
    lam = spec.lyapunov_exponents
    ratio = float(lam.max() / lam.min())
    verdict = TwoBranchVerdict.CONCAVE if ratio <= THRESHOLD else TwoBranchVerdict.TWO_INFLECTIONS
    return TwoBranchClass(lambda_ratio=ratio, printed_ratio=1.0 / ratio, verdict=verdict)


def _phi_parts(x):
    x = np.asarray(x, dtype=float)
    if np.any((x <= 0.0) | (x >= 1.0)):
        raise OutOfRange("Phi is defined on the open interval (0, 1)")
    phi = x * np.log(x) + (1.0 - x) * np.log1p(-x)
    d1 = np.log(x) - np.log1p(-x)
    d2 = 1.0 / (x * (1.0 - x))
    root = np.sqrt(d1 * d1 - 2.0 * phi * d2)
    return x, d1, d2, root


def phi_minus(x):
    """``-x + (phi' - sqrt(phi'^2 - 2 phi phi'')) / phi''`` for entropy-type ``phi``."""
    x, d1, d2, root = _phi_parts(x)
    out = -x + (d1 - root) / d2
    return float(out) if out.ndim == 0 else out


def phi_plus(x):
    """``-x + (phi' + sqrt(phi'^2 - 2 phi phi'')) / phi''``."""
    x, d1, d2, root = _phi_parts(x)
    out = -x + (d1 + root) / d2
    return float(out) if out.ndim == 0 else out


def crossover_point(k: int) -> float:
    """``(2k + 1) / 2**k``, where classes ``k`` and ``k + 1`` of ``T_N`` balance."""
    return (2 * k + 1) / 2.0**k


def midpoint(k: int) -> float:
    """``(6k - 1) / 2**(k + 1)``, halfway between consecutive crossover points."""
    return (6 * k - 1) / 2.0 ** (k + 1)


@dataclass(frozen=True)
class InterlacingRow:
    k: int
    m_k: float
    s_k: Optional[float]
    G_at_m: float
    H_at_m: float
    G_at_s: Optional[float]
    H_at_s: Optional[float]
    ok_m: bool
    ok_s: Optional[bool]


@dataclass(frozen=True)
class InterlacingReport:
    """Values of G and H at the midpoints and crossover points of ``T_N``."""

    N: int
    rows: tuple[InterlacingRow, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok_m and (r.ok_s is None or r.ok_s) for r in self.rows)

    @property
    def certified_roots(self) -> int:
        """Roots guaranteed by the intermediate value theorem (0 if any row fails)."""
        return 2 * (self.N - INTERLACE_K0) if self.ok else 0


def verify_interlacing(n: int) -> InterlacingReport:
    """Check ``G > H`` at ``m_k`` (26 <= k <= N) and ``G < H`` at ``s_k`` (26 <= k < N)."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or not 27 <= n <= 60:
        raise RangeError(f"interlacing check needs 27 <= N <= 60, got {n!r}")
    n = int(n)
    spec = construct_tn(n)
    ks = np.arange(INTERLACE_K0, n + 1)
    m = np.array([midpoint(k) for k in ks])
    s = np.array([crossover_point(k) for k in ks[:-1]])
    g_m, h_m = key_lhs_G(spec, m), key_rhs_H(spec, m)
    g_s, h_s = key_lhs_G(spec, s), key_rhs_H(spec, s)
    rows = []
    for i, k in enumerate(ks):
        has_s = i < len(s)
        rows.append(
            InterlacingRow(
                k=int(k),
                m_k=float(m[i]),
                s_k=float(s[i]) if has_s else None,
                G_at_m=float(g_m[i]),
                H_at_m=float(h_m[i]),
                G_at_s=float(g_s[i]) if has_s else None,
                H_at_s=float(h_s[i]) if has_s else None,
                ok_m=bool(g_m[i] > h_m[i]),
                ok_s=bool(g_s[i] < h_s[i]) if has_s else None,
            )
        )
    return InterlacingReport(N=n, rows=tuple(rows))
