"""Bracketed bisection helpers shared by the solvers."""

import numpy as np


def _sign(x):
    return (x > 0) - (x < 0)


def bisect_bracket(func, lo, hi, xtol=0.0, maxiter=2200):
    """Shrink a sign-changing bracket ``[lo, hi]`` of ``func``.

    Iterates until the bracket is at most ``xtol`` wide or the midpoint is no
    longer representable strictly between the endpoints.

    Returns
    -------
    (lo, hi) : tuple of float
        Final bracket; ``func`` still has opposite (or zero) signs at its ends.
    """
    flo = _sign(func(lo))
    fhi = _sign(func(hi))
    if flo == 0:
        return lo, lo
    if fhi == 0:
        return hi, hi
    if flo == fhi:
        raise ValueError(f"no sign change on [{lo!r}, {hi!r}]")
    for _ in range(maxiter):
        if hi - lo <= xtol:
            break
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        fmid = _sign(func(mid))
        if fmid == 0:
            return mid, mid
        if fmid == flo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def solve_increasing(func, targets, lo, hi, maxiter=400):
    """Vectorised safeguarded Newton solve of ``func(x) = targets``.

    ``func(x)`` returns ``(value, derivative)`` with ``value`` increasing in
    ``x``. ``lo`` and ``hi`` (broadcast against ``targets``) must bracket every
    target. Newton steps that leave the current bracket are replaced by
    bisection, so each element converges inside its bracket.
    """
    targets = np.asarray(targets, dtype=float)
    lo = np.broadcast_to(np.asarray(lo, dtype=float), targets.shape).copy()
    hi = np.broadcast_to(np.asarray(hi, dtype=float), targets.shape).copy()
    x = 0.5 * (lo + hi)
    eps = np.finfo(float).eps
    for _ in range(maxiter):
        value, slope = func(x)
        resid = value - targets
        lo = np.where(resid < 0, x, lo)
        hi = np.where(resid > 0, x, hi)
        with np.errstate(divide="ignore", invalid="ignore"):
            newton = x - resid / slope
        inside = np.isfinite(newton) & (newton >= lo) & (newton <= hi)
        step = np.where(inside, newton, 0.5 * (lo + hi))
        step = np.where(resid == 0, x, step)
        # func carries rounding noise of a few ulps; stop once steps or the
        # residual reach that floor (the residual test also covers x ~ 0)
        done = (
            (np.abs(step - x) <= 64.0 * eps * np.abs(x))
            | (np.abs(resid) <= 64.0 * eps * np.abs(targets))
            | (hi - lo <= 4.0 * eps * np.maximum(np.abs(lo), np.abs(hi)))
        )
        x = step
        if done.all():
            break
    return x
