"""Pressure function and Gibbs moments of a piecewise linear map.

With ``F(s) = sum_i m_i |X_i|**s`` the pressure is ``p(t) = ln F(-t)``. Its
derivatives are the mean and variance of ``lambda_i = -ln |X_i|`` under the
weights ``w_i ∝ m_i |X_i|**s`` at ``s = -t``. All sums are taken after a
log-sum-exp shift, so F itself is never formed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSpectrum
from .mapspec import MapSpec

__all__ = [
    "GibbsMoments",
    "moments",
    "moment_arrays",
    "pressure_p",
    "alpha_of_s",
    "LN2",
]

LN2 = math.log(2.0)


@dataclass(frozen=True)
class GibbsMoments:
    """Pressure data at the parameter ``s = -t`` (natural-log units)."""

    s: float
    log2F: float
    lnF: float
    mean: float
    second_moment: float
    variance: float

    @property
    def F(self) -> float:
        """``F(s)``; may overflow to ``inf`` for large maps."""
        return 2.0**self.log2F

    @property
    def dF(self) -> float:
        return -self.F * self.mean

    @property
    def d2F(self) -> float:
        return self.F * self.second_moment


def moment_arrays(spec: MapSpec, s):
    """Vectorised ``(log2F, mean, variance)`` for an array of parameters ``s``.

    Returns three arrays with the shape of ``s``. Weights are normalised after
    subtracting the largest exponent; the variance is the two-pass centred sum.
    """
    s = np.asarray(s, dtype=float)
    lengths = spec.log2_lengths
    exponents = spec.log2_multiplicities + np.multiply.outer(s, lengths)
    top = exponents.max(axis=-1, keepdims=True)
    weights = np.exp2(exponents - top)
    total = weights.sum(axis=-1, keepdims=True)
    weights /= total
    lam = -LN2 * lengths
    mean = (weights * lam).sum(axis=-1)
    variance = (weights * (lam - mean[..., None]) ** 2).sum(axis=-1)
    log2F = top[..., 0] + np.log2(total[..., 0])
    return log2F, mean, variance


def moments(spec: MapSpec, s: float) -> GibbsMoments:
    """Gibbs moments of ``spec`` at parameter ``s``.

    Examples
    --------
    >>> from lyapspec.mapspec import parse_spec
    >>> m = moments(parse_spec("2 1/4"), 0.5)
    >>> m.log2F, round(m.mean, 9), m.variance
    (0.0, 1.386294361, 0.0)
    """
    log2F, mean, variance = (float(v) for v in moment_arrays(spec, float(s)))
    return GibbsMoments(
        s=float(s),
        log2F=log2F,
        lnF=LN2 * log2F,
        mean=mean,
        second_moment=variance + mean * mean,
        variance=variance,
    )


def pressure_p(spec: MapSpec, t: float) -> float:
    """The pressure ``p(t) = ln F(-t)``."""
    log2F, _, _ = moment_arrays(spec, -float(t))
    return LN2 * float(log2F)


def alpha_of_s(spec: MapSpec, s):
    """Lyapunov exponent ``p'(-s)``, the Gibbs mean of ``lambda`` at ``s``.

    Accepts a scalar or an array. Strictly decreasing in ``s``.
    """
    if spec.is_degenerate:
        raise DegenerateSpectrum(f"{spec.label or 'map'} has a constant spectrum")
    _, mean, _ = moment_arrays(spec, s)
    return float(mean) if np.ndim(mean) == 0 else mean
