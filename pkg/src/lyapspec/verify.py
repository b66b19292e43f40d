"""Reproduction checks for the reference examples.

Each target compares computed quantities to published reference values and
returns a :class:`VerificationReport`.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .inflection import (
    THRESHOLD,
    crossover_point,
    find_inflections,
    midpoint,
    phi_minus,
    phi_plus,
    verify_interlacing,
)
from .mapspec import MapSpec, construct_tn, preset
from .spectrum import dimension, domain

__all__ = [
    "Check",
    "VerificationReport",
    "REFERENCE",
    "TARGETS",
    "run_target",
    "run_all",
    "empirical_threshold",
    "thread_count",
]

Number = Union[float, int, str]


@dataclass(frozen=True)
class Check:
    name: str
    claimed: Number
    computed: Number
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    target: str
    checks: tuple[Check, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


# Reference values: branch count, dimension (value, tol), domain bounds
# (value, tol) or None, inflection alphas and s-values (decreasing alpha), tol.
REFERENCE = {
    "s4": dict(
        branches=7,
        dimension=(0.8167, 1e-3),
        alpha_min=(math.log(5 / 4), 1e-12),
        alpha_max=(math.log(3380), 1e-12),
        alphas=(5.9895, 4.4269, 3.8988, 2.0166),
        s=(-0.3975, -0.0565, 0.0616, 0.4751),
        tol=2e-3,
    ),
    "s6": dict(
        branches=62,
        dimension=(0.8600, 1e-3),
        alpha_min=(0.2231, 1e-3),
        alpha_max=(17.5281, 1e-3),
        alphas=(14.2732, 13.3822, 10.4393, 6.6173, 4.7925, 2.9345),
        s=(-0.5654, -0.4724, -0.1534, 0.2269, 0.4275, 0.6236),
        tol=2e-3,
    ),
    "s8": dict(
        branches=821,
        dimension=(0.865154, 1e-5),
        alpha_min=(0.2231, 1e-3),
        alpha_max=(29.7341, 1e-3),
        alphas=(24.6075, 23.1999, 22.7113, 15.8995, 13.7839, 7.8754, 6.7335, 3.5981),
        s=(-0.5655, -0.4827, -0.4538, -0.0660, 0.0649, 0.4150, 0.4891, 0.6883),
        tol=2e-3,
    ),
    "fig4": dict(
        branches=22,
        alphas=(61.73, 34.22, 20.88, 8.52),
        tol=1e-2,
    ),
    "fig6": dict(
        branches=7002,
        alphas=(98.65, 74.04, 60.01, 41.48, 21.85, 14.66),
        tol=1e-2,
    ),
}

THRESHOLD_REFERENCE = 12.2733202
THRESHOLD_TOL = 1e-4


def _close(name, claimed, computed, tol) -> Check:
    return Check(name, claimed, computed, tol, bool(abs(computed - claimed) <= tol))


def _exact(name, claimed, computed) -> Check:
    return Check(name, claimed, computed, 0.0, claimed == computed)


def _preset_checks(name: str) -> list[Check]:
    ref = REFERENCE[name]
    spec = preset(name)
    checks = [_exact("branch count", ref["branches"], round(2.0**spec.log2_branch_count))]
    if "dimension" in ref:
        checks.append(_close("dimension", *_swap(ref["dimension"], dimension(spec))))
    dom = domain(spec)
    for key in ("alpha_min", "alpha_max"):
        if key in ref:
            checks.append(_close(key, *_swap(ref[key], getattr(dom, key))))
    roots = sorted(find_inflections(spec), key=lambda r: -r.alpha)
    checks.append(_exact("inflection count", len(ref["alphas"]), len(roots)))
    if len(roots) == len(ref["alphas"]):
        for i, (claimed, root) in enumerate(zip(ref["alphas"], roots), start=1):
            checks.append(_close(f"alpha_{i}", claimed, root.alpha, ref["tol"]))
        for i, (claimed, root) in enumerate(zip(ref.get("s", ()), roots), start=1):
            checks.append(_close(f"s_{i}", claimed, root.s, ref["tol"]))
    return checks


def _swap(ref, computed):
    value, tol = ref
    return value, computed, tol


def _two_branch_count(ratio: float, grid_points: int = 65536) -> int:
    spec = MapSpec.from_classes([(0.0, -1.0), (0.0, -ratio)])
    return len(find_inflections(spec, grid_points))


def empirical_threshold(lo: float = 12.0, hi: float = 13.0, width: float = 1e-7) -> float:
    """Bisect the ratio where the two-branch root count jumps from 0 to 2.

    The larger interval has length 1/2 and the smaller ``2**-ratio``.
    """
    if _two_branch_count(lo) != 0 or _two_branch_count(hi) != 2:
        raise ValueError(f"[{lo}, {hi}] does not bracket the 0 -> 2 transition")
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if _two_branch_count(mid) == 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _threshold_checks() -> list[Check]:
    return [
        _exact("ratio 13 root count", 2, _two_branch_count(13.0)),
        _exact("ratio 12 root count", 0, _two_branch_count(12.0)),
        _close("closed-form threshold", THRESHOLD_REFERENCE, THRESHOLD, 1e-7),
        _close("bisected transition", THRESHOLD_REFERENCE, empirical_threshold(), THRESHOLD_TOL),
    ]


def _tn_checks(n: int) -> list[Check]:
    report = verify_interlacing(n)
    checks = []
    for row in report.rows:
        checks.append(Check(f"G > H at m_{row.k}", "G > H", row.G_at_m - row.H_at_m, 0.0, row.ok_m))
        if row.s_k is not None:
            checks.append(
                Check(f"G < H at s_{row.k}", "G < H", row.G_at_s - row.H_at_s, 0.0, row.ok_s)
            )
            checks.append(Check(f"H(s_{row.k}) > 1/10", 0.1, row.H_at_s, 0.0, row.H_at_s > 0.1))
    roots = find_inflections(construct_tn(n))
    need = 2 * (n - 26)
    checks.append(Check("root count lower bound", need, len(roots), 0.0, len(roots) >= need))
    s_roots = np.array([r.s for r in roots])
    for k in range(26, n):
        for lo, hi in ((midpoint(k + 1), crossover_point(k)), (crossover_point(k), midpoint(k))):
            hits = int(((s_roots > lo) & (s_roots < hi)).sum())
            checks.append(
                Check(f"root in ({lo:.6g}, {hi:.6g})", ">= 1", hits, 0.0, hits >= 1)
            )
    return checks


def _phi_checks() -> list[Check]:
    x = np.linspace(0.0, 1.0, 10002)[1:-1]
    plus = phi_plus(x)
    minus = phi_minus(x)
    left, right = minus[x < 0.5], minus[x > 0.5]
    sym = -0.5 - math.sqrt(2.0 * math.log(2.0)) / 2.0
    return [
        Check("min Phi+ >= -1", -1.0, float(plus.min()), 0.0, bool(plus.min() >= -1.0)),
        Check(
            "Phi- decreasing on (0, 1/2)", "strict", float(np.diff(left).max()), 0.0,
            bool((np.diff(left) < 0).all()),
        ),
        Check(
            "Phi- increasing on (1/2, 1)", "strict", float(np.diff(right).min()), 0.0,
            bool((np.diff(right) > 0).all()),
        ),
        _close("Phi-(1/2)", sym, phi_minus(0.5), 1e-12),
    ]


TARGETS: dict[str, Callable[[], list[Check]]] = {
    "s4": lambda: _preset_checks("s4"),
    "s6": lambda: _preset_checks("s6"),
    "s8": lambda: _preset_checks("s8"),
    "fig4": lambda: _preset_checks("fig4"),
    "fig6": lambda: _preset_checks("fig6"),
    "two-branch-threshold": _threshold_checks,
    "phi": _phi_checks,
}

ALL_TARGETS = tuple(TARGETS) + tuple(f"tn:{n}" for n in range(27, 32))


def run_target(target: str) -> VerificationReport:
    """Run one named target; ``tn:<N>`` runs the ``T_N`` certification."""
    target = target.lower()
    if target.startswith("tn:"):
        try:
            n = int(target[3:])
        except ValueError:
            raise ValueError(f"malformed target {target!r}") from None
        return VerificationReport(target, tuple(_tn_checks(n)))
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}")
    return VerificationReport(target, tuple(TARGETS[target]()))


def thread_count() -> int:
    """Worker cap from ``LYAPSPEC_THREADS`` (0 or unset means automatic)."""
    raw = os.environ.get("LYAPSPEC_THREADS", "0").strip() or "0"
    try:
        value = int(raw)
    except ValueError:
        value = 0
    return value if value > 0 else (os.cpu_count() or 1)


def run_all(targets=ALL_TARGETS) -> list[VerificationReport]:
    """Run ``targets`` concurrently; results keep the input order."""
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        return list(pool.map(run_target, targets))
