"""PlantUML activity-diagram rendering, for eyeballing a model.

Each lane is one branch of a fork, headed by its ``|name|`` swimlane.
Barriers inside a lane show up as labelled arrows and every constraint as a
note on its control action, so partial barriers are approximated rather
than drawn as nested forks.
"""

from __future__ import annotations

from ..diagnostics import RenderError, error
from ..expr import to_text
from ..uml.model import EdgeKind, NodeKind, UmlModel, walk_lane
from ..uml.validate import validate


def _guillemets(model: UmlModel, element_id: str) -> str:
    kind = model.stereotype_of.get(element_id)
    return f" «{kind.value}»" if kind is not None else ""


def _lane_lines(model: UmlModel, partition) -> list[str]:
    nodes = model.node_by_id
    lane_of = model.partition_by_id
    lines = []
    for node_id in walk_lane(model, partition).path:
        node = nodes[node_id]
        if node.kind is NodeKind.JoinNode:
            (out,) = model.outgoing(node_id, EdgeKind.ControlFlow)
            if nodes[out.target].kind is NodeKind.ForkNode:
                lines.append("-> barrier;")
            continue
        if not node.kind.is_action:
            continue
        text = node.name
        if node.gate_info is not None and node.gate_info.params:
            text += f"({', '.join(to_text(p) for p in node.gate_info.params)})"
        for flow in model.outgoing(node_id, EdgeKind.ObjectFlow):
            text += f" -> {flow.label or nodes[flow.target].name}"
        lines.append(f":{text}{_guillemets(model, node_id)};")
        for rule in model.outgoing(node_id, EdgeKind.Constraint):
            target = nodes[rule.target]
            lines.append(f"note right: {rule.label or 'controls'} {target.name} on {lane_of[target.partition].name}")
    return lines


def write_plantuml(model: UmlModel) -> str:
    """Render a conformant model; raises :class:`RenderError` (``E-INVALID-MODEL``) otherwise."""
    problems = validate(model)
    if problems:
        raise RenderError([error("E-INVALID-MODEL", f"model fails validation with {len(problems)} "
                                 "diagnostic(s)"), *problems])
    out = ["@startuml", f"title {model.activity.name}{_guillemets(model, model.activity.id)}"]
    lanes = list(model.partitions)
    out += [f"|{lanes[0].name}|", "start"]
    if len(lanes) == 1:
        out += _lane_lines(model, lanes[0])
    else:
        out.append("fork")
        for k, lane in enumerate(lanes):
            if k:
                out += ["fork again", f"  |{lane.name}|"]
            out += [f"  {line}" for line in _lane_lines(model, lane)]
        out.append("end fork")
    out += ["stop", "@enduml"]
    return "\n".join(out) + "\n"
