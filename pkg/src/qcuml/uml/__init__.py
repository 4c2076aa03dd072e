"""Activity-diagram model with the quantum profile, plus its validator."""

from .model import (
    CONSTRAINT_LABEL,
    Activity,
    Edge,
    EdgeKind,
    GateInfo,
    MeasureInfo,
    ModelBuilder,
    Node,
    NodeKind,
    Partition,
    StereotypeApplication,
    StereotypeKind,
    UmlModel,
    canonical_ids,
    reachable_from_initial,
    walk_lane,
)
from .validate import validate

__all__ = [
    "CONSTRAINT_LABEL", "Activity", "Edge", "EdgeKind", "GateInfo", "MeasureInfo", "ModelBuilder", "Node",
    "NodeKind", "Partition", "StereotypeApplication", "StereotypeKind", "UmlModel", "canonical_ids",
    "reachable_from_initial", "validate", "walk_lane",
]
