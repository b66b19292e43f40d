"""Aggregated analysis of a map, and JSON-ready conversion of result objects."""

from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .inflection import (
    DEFAULT_GRID,
    InflectionPoint,
    TwoBranchClass,
    classify_two_branch,
    find_inflections,
)
from .mapspec import MapSpec
from .spectrum import DomainInterval, critical_alpha, dimension, domain

__all__ = ["AnalysisReport", "analyze", "to_jsonable"]


@dataclass(frozen=True)
class AnalysisReport:
    label: str
    branch_count_log2: float
    dimension: float
    domain: DomainInterval
    critical_alpha: float
    inflections: tuple[InflectionPoint, ...]
    classification: Optional[TwoBranchClass]


def analyze(spec: MapSpec, grid_points: int = DEFAULT_GRID) -> AnalysisReport:
    """Dimension, domain, critical point and inflections of ``spec``.

    Inflections are ordered by decreasing ``alpha``.
    """
    dom = domain(spec)
    roots = sorted(find_inflections(spec, grid_points), key=lambda r: -r.alpha)
    classification = None
    if abs(spec.log2_branch_count - 1.0) <= 1e-12:
        classification = classify_two_branch(spec)
    return AnalysisReport(
        label=spec.label,
        branch_count_log2=spec.log2_branch_count,
        dimension=dimension(spec),
        domain=dom,
        critical_alpha=critical_alpha(spec),
        inflections=tuple(roots),
        classification=classification,
    )


def to_jsonable(obj):
    """Recursively convert dataclasses, enums and numpy scalars to JSON types.

    Non-finite floats become ``None``.
    """
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        return value if math.isfinite(value) else None
    return obj
