"""Lyapunov spectrum of a piecewise linear map via the pressure function.

On the open domain ``(alpha_min, alpha_max)`` the spectrum is
``L(alpha) = p(t) / alpha - t`` with ``t = tau(alpha)`` the inverse of ``p'``.
Its derivatives are ``L' = -p(t) / alpha**2`` and
``L'' = (2 p p'' - alpha**2) / (p'' alpha**3)``, all evaluated at ``t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._roots import bisect_bracket, solve_increasing
from .errors import DegenerateSpectrum, OutOfDomain
from .mapspec import MapSpec
from .pressure import LN2, alpha_of_s, moment_arrays

__all__ = [
    "DomainInterval",
    "SpectrumPoint",
    "domain",
    "dimension",
    "tau",
    "tau_array",
    "eval_spectrum",
    "spectrum_arrays",
    "critical_alpha",
    "closed_form_two_branch",
    "sample_spectrum",
    "sample_alphas",
]

TAU_START = 64.0
TAU_CAP = 2.0**20
TABLE_SIZE = 4096


@dataclass(frozen=True)
class DomainInterval:
    alpha_min: float
    alpha_max: float

    @property
    def width(self) -> float:
        return self.alpha_max - self.alpha_min

    def contains(self, alpha) -> bool:
        return self.alpha_min < alpha < self.alpha_max


@dataclass(frozen=True)
class SpectrumPoint:
    """The spectrum and its first two derivatives at one exponent ``alpha``."""

    alpha: float
    t: float
    s: float
    L: float
    dL: float
    d2L: float


def _require_nondegenerate(spec: MapSpec):
    if spec.is_degenerate:
        raise DegenerateSpectrum(f"{spec.label or 'map'} has a constant spectrum")


def domain(spec: MapSpec) -> DomainInterval:
    """Smallest and largest Lyapunov exponent of the map."""
    _require_nondegenerate(spec)
    lam = spec.lyapunov_exponents
    return DomainInterval(float(lam.min()), float(lam.max()))


def dimension(spec: MapSpec) -> float:
    """Hausdorff dimension: the root of ``sum_i m_i |X_i|**s = 1`` in ``[0, 1]``."""

    def ln_f(s):
        return float(moment_arrays(spec, s)[0])

    if ln_f(1.0) >= 0.0:
        return 1.0
    lo, hi = bisect_bracket(ln_f, 0.0, 1.0)
    return lo if abs(ln_f(lo)) <= abs(ln_f(hi)) else hi


def tau_array(spec: MapSpec, alphas) -> np.ndarray:
    """Vectorised inverse of ``p'``: the ``t`` with ``p'(t) = alpha``.

    The bracket starts at ``[-64, 64]`` and each failing end is doubled until
    it brackets, up to ``2**20``; the bracketed root is then polished by
    Newton steps on ``p'`` (slope ``p''``) with a bisection fallback.
    """
    dom = domain(spec)
    alphas = np.asarray(alphas, dtype=float)
    bad = ~((alphas > dom.alpha_min) & (alphas < dom.alpha_max))
    if bad.any():
        raise OutOfDomain(
            f"alpha {alphas[bad].flat[0]!r} outside ({dom.alpha_min!r}, {dom.alpha_max!r})"
        )

    def p_prime(t):
        return moment_arrays(spec, -t)[1]

    lo = np.full(alphas.shape, -TAU_START)
    hi = np.full(alphas.shape, TAU_START)
    while True:
        low_fail = p_prime(lo) >= alphas
        high_fail = p_prime(hi) <= alphas
        if not (low_fail.any() or high_fail.any()):
            break
        lo = np.where(low_fail, 2.0 * lo, lo)
        hi = np.where(high_fail, 2.0 * hi, hi)
        if (np.abs(lo) > TAU_CAP).any() or (hi > TAU_CAP).any():
            raise OutOfDomain("alpha too close to the domain boundary to invert p'")

    if alphas.size > TABLE_SIZE:
        # tighten brackets from a monotone table of p' before polishing
        nodes = np.linspace(lo.min(), hi.max(), TABLE_SIZE + 1)
        values = p_prime(nodes)
        idx = np.clip(np.searchsorted(values, alphas), 1, TABLE_SIZE)
        ok = (values[idx - 1] < alphas) & (alphas <= values[idx])
        lo = np.where(ok, np.maximum(lo, nodes[idx - 1]), lo)
        hi = np.where(ok, np.minimum(hi, nodes[idx]), hi)

    def p_prime_and_slope(t):
        _, mean, variance = moment_arrays(spec, -t)
        return mean, variance

    return solve_increasing(p_prime_and_slope, alphas, lo, hi)


def tau(spec: MapSpec, alpha: float) -> float:
    """Scalar :func:`tau_array`."""
    return float(tau_array(spec, float(alpha)))


def spectrum_arrays(spec: MapSpec, alphas):
    """Vectorised ``(t, L, dL, d2L)`` at the exponents ``alphas``."""
    alphas = np.asarray(alphas, dtype=float)
    t = tau_array(spec, alphas)
    log2F, _, variance = moment_arrays(spec, -t)
    p = LN2 * log2F
    L = p / alphas - t
    dL = -p / alphas**2
    d2L = (2.0 * p * variance - alphas**2) / (variance * alphas**3)
    return t, L, dL, d2L


def eval_spectrum(spec: MapSpec, alpha: float) -> SpectrumPoint:
    """The spectrum point at ``alpha``, which must lie strictly inside the domain."""
    t, L, dL, d2L = (float(v) for v in spectrum_arrays(spec, float(alpha)))
    return SpectrumPoint(alpha=float(alpha), t=t, s=-t, L=L, dL=dL, d2L=d2L)


def critical_alpha(spec: MapSpec) -> float:
    """The unique critical point of the spectrum, ``p'(-dim)``."""
    _require_nondegenerate(spec)
    return alpha_of_s(spec, dimension(spec))


def closed_form_two_branch(a: float, b: float, alpha: float) -> float:
    """Explicit spectrum of the two-branch map with derivatives ``1 < a < b``.

    ``L(alpha) = -(x ln x + (1 - x) ln(1 - x)) / alpha`` with
    ``x = (ln b - alpha) / ln(b / a)``. Vanishes at the endpoints.
    """
    if not 1.0 < a < b:
        raise OutOfDomain(f"need 1 < a < b, got a={a!r}, b={b!r}")
    ln_a, ln_b = math.log(a), math.log(b)
    if not ln_a <= alpha <= ln_b:
        raise OutOfDomain(f"alpha {alpha!r} outside [{ln_a!r}, {ln_b!r}]")
    x = (ln_b - alpha) / (ln_b - ln_a)
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -(x * math.log(x) + (1.0 - x) * math.log1p(-x)) / alpha


def sample_alphas(spec: MapSpec, n: int, margin: float) -> np.ndarray:
    """``n`` uniformly spaced exponents, trimmed by ``margin * |A|`` at each end."""
    if n < 2:
        raise ValueError(f"need at least 2 samples, got {n}")
    if not 0.0 < margin < 0.5:
        raise ValueError(f"margin must lie in (0, 1/2), got {margin!r}")
    dom = domain(spec)
    pad = margin * dom.width
    return np.linspace(dom.alpha_min + pad, dom.alpha_max - pad, n)


def sample_spectrum(spec: MapSpec, n: int, margin: float) -> list[SpectrumPoint]:
    """Spectrum points on a uniform grid of :func:`sample_alphas`."""
    alphas = sample_alphas(spec, n, margin)
    t, L, dL, d2L = spectrum_arrays(spec, alphas)
    return [
        SpectrumPoint(float(a), float(ti), float(-ti), float(l), float(d), float(d2))
        for a, ti, l, d, d2 in zip(alphas, t, L, dL, d2L)
    ]
