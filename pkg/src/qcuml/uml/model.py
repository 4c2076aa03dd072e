"""Activity-diagram model carrying quantum-profile stereotype applications."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field, replace
from functools import cached_property

from ..diagnostics import ModelError, error
from ..expr import ParamExpr


class StereotypeKind(enum.Enum):
    QuantumCircuit = "quantum circuit"
    Qubit = "qubit"
    QuantumGate = "quantum gate"
    ControlledQubit = "controlled qubit"
    Measure = "measure"
    Reset = "reset"

    @property
    def tag(self) -> str:
        """XML element name, e.g. ``quantumGate``."""
        return self.name[0].lower() + self.name[1:]


class NodeKind(enum.Enum):
    InitialNode = "InitialNode"
    ActivityFinalNode = "ActivityFinalNode"
    CallOperationAction = "CallOperationAction"
    SendSignalAction = "SendSignalAction"
    AcceptEventAction = "AcceptEventAction"
    ValueSpecificationAction = "ValueSpecificationAction"
    ForkNode = "ForkNode"
    JoinNode = "JoinNode"
    DataStoreNode = "DataStoreNode"

    @property
    def is_action(self) -> bool:
        return self in ACTION_KINDS


ACTION_KINDS = frozenset(
    {
        NodeKind.CallOperationAction,
        NodeKind.SendSignalAction,
        NodeKind.AcceptEventAction,
        NodeKind.ValueSpecificationAction,
    }
)


class EdgeKind(enum.Enum):
    ControlFlow = "ControlFlow"
    ObjectFlow = "ObjectFlow"
    Constraint = "Constraint"


CONSTRAINT_LABEL = "controls"


@dataclass(frozen=True)
class Activity:
    id: str
    name: str


@dataclass(frozen=True)
class Partition:
    id: str
    name: str


@dataclass(frozen=True)
class GateInfo:
    mnemonic: str
    params: tuple[ParamExpr, ...] = ()


@dataclass(frozen=True)
class MeasureInfo:
    register: str
    bit: int


@dataclass(frozen=True)
class Node:
    id: str
    kind: NodeKind
    name: str
    partition: str | None = None
    gate_info: GateInfo | None = None
    measure_info: MeasureInfo | None = None
    # DataStoreNode only: declared size of the classical register it stands for
    upper_bound: int | None = None


@dataclass(frozen=True)
class Edge:
    id: str
    kind: EdgeKind
    source: str
    target: str
    label: str | None = None


@dataclass(frozen=True)
class StereotypeApplication:
    element: str
    kind: StereotypeKind


@dataclass(frozen=True)
class UmlModel:
    activity: Activity
    partitions: tuple[Partition, ...] = ()
    nodes: tuple[Node, ...] = ()
    edges: tuple[Edge, ...] = ()
    stereotypes: tuple[StereotypeApplication, ...] = ()

    # lookups; frozen dataclasses still accept cached_property (it writes __dict__ directly)
    @cached_property
    def node_by_id(self) -> dict[str, Node]:
        return {n.id: n for n in self.nodes}

    @cached_property
    def partition_by_id(self) -> dict[str, Partition]:
        return {p.id: p for p in self.partitions}

    @cached_property
    def stereotype_of(self) -> dict[str, StereotypeKind]:
        return {s.element: s.kind for s in self.stereotypes}

    @cached_property
    def _outgoing(self) -> dict[str, list[Edge]]:
        out: dict[str, list[Edge]] = {n.id: [] for n in self.nodes}
        for e in self.edges:
            out.setdefault(e.source, []).append(e)
        return out

    @cached_property
    def _incoming(self) -> dict[str, list[Edge]]:
        inc: dict[str, list[Edge]] = {n.id: [] for n in self.nodes}
        for e in self.edges:
            inc.setdefault(e.target, []).append(e)
        return inc

    def outgoing(self, node_id: str, kind: EdgeKind | None = None) -> list[Edge]:
        return [e for e in self._outgoing.get(node_id, ()) if kind is None or e.kind is kind]

    def incoming(self, node_id: str, kind: EdgeKind | None = None) -> list[Edge]:
        return [e for e in self._incoming.get(node_id, ()) if kind is None or e.kind is kind]

    def nodes_of(self, kind: NodeKind) -> list[Node]:
        return [n for n in self.nodes if n.kind is kind]

    def element_ids(self) -> list[str]:
        return [self.activity.id, *(p.id for p in self.partitions), *(n.id for n in self.nodes),
                *(e.id for e in self.edges)]

    def metaclass_of(self, element_id: str) -> str | None:
        if element_id == self.activity.id:
            return "Activity"
        if element_id in self.partition_by_id:
            return "ActivityPartition"
        node = self.node_by_id.get(element_id)
        if node is not None:
            return node.kind.value
        for e in self.edges:
            if e.id == element_id:
                return e.kind.value
        return None

    # -- editing helpers; each returns a new model --------------------------

    def without_edges(self, *edge_ids: str) -> "UmlModel":
        drop = set(edge_ids)
        return replace(self, edges=tuple(e for e in self.edges if e.id not in drop))

    def without_stereotype(self, element_id: str) -> "UmlModel":
        return replace(self, stereotypes=tuple(s for s in self.stereotypes if s.element != element_id))

    def replace_node(self, node: Node) -> "UmlModel":
        return replace(self, nodes=tuple(node if n.id == node.id else n for n in self.nodes))


class ModelBuilder:
    """Incremental construction with structural checks.

    Structural means ids, references and partition placement; a model under
    construction may still break the profile rules checked by ``validate``.
    """

    def __init__(self, activity_id: str, activity_name: str):
        self.activity = Activity(activity_id, activity_name)
        self.partitions: list[Partition] = []
        self.nodes: list[Node] = []
        self.edges: list[Edge] = []
        self.stereotypes: list[StereotypeApplication] = []
        self._ids = {activity_id: "Activity"}
        self._stereotyped: set[str] = set()

    @classmethod
    def from_model(cls, model: UmlModel) -> "ModelBuilder":
        builder = cls(model.activity.id, model.activity.name)
        for p in model.partitions:
            builder.add_partition(p.id, p.name)
        for n in model.nodes:
            builder.add(n)
        for e in model.edges:
            builder.add_edge(e.id, e.kind, e.source, e.target, e.label)
        for s in model.stereotypes:
            builder.apply_stereotype(s.element, s.kind)
        return builder

    def _claim(self, element_id: str, what: str) -> None:
        if element_id in self._ids:
            raise ModelError(error("E-DUP-ID", f"id {element_id!r} already used", elements=(element_id,)))
        self._ids[element_id] = what

    def add_partition(self, partition_id: str, name: str) -> Partition:
        self._claim(partition_id, "ActivityPartition")
        part = Partition(partition_id, name)
        self.partitions.append(part)
        return part

    def add_node(self, node_id: str, kind: NodeKind, name: str, partition: str | None = None, *,
                 gate_info: GateInfo | None = None, measure_info: MeasureInfo | None = None,
                 upper_bound: int | None = None) -> Node:
        return self.add(Node(node_id, kind, name, partition, gate_info, measure_info, upper_bound))

    def add(self, node: Node) -> Node:
        if node.kind.is_action and node.partition is None:
            raise ModelError(error("E-PARTITION-REQUIRED", f"{node.kind.value} {node.id!r} needs a partition",
                                   elements=(node.id,)))
        if not node.kind.is_action and node.partition is not None:
            raise ModelError(error("E-PARTITION-FORBIDDEN", f"{node.kind.value} {node.id!r} cannot sit in a "
                                   "partition", elements=(node.id,)))
        if node.partition is not None and self._ids.get(node.partition) != "ActivityPartition":
            raise ModelError(error("E-DANGLING-REF", f"unknown partition {node.partition!r}",
                                   elements=(node.id,)))
        self._claim(node.id, "Node")
        self.nodes.append(node)
        return node

    def add_edge(self, edge_id: str, kind: EdgeKind, source: str, target: str, label: str | None = None) -> Edge:
        for end in (source, target):
            if self._ids.get(end) != "Node":
                raise ModelError(error("E-DANGLING-REF", f"edge {edge_id!r} refers to unknown node {end!r}",
                                       elements=(edge_id,)))
        self._claim(edge_id, "Edge")
        edge = Edge(edge_id, kind, source, target, label)
        self.edges.append(edge)
        return edge

    def apply_stereotype(self, element_id: str, kind: StereotypeKind) -> StereotypeApplication:
        if element_id not in self._ids:
            raise ModelError(error("E-DANGLING-REF", f"stereotype applied to unknown element {element_id!r}",
                                   elements=(element_id,)))
        if element_id in self._stereotyped:
            raise ModelError(error("E-DUP-STEREOTYPE", f"element {element_id!r} already has a stereotype",
                                   elements=(element_id,)))
        self._stereotyped.add(element_id)
        app = StereotypeApplication(element_id, kind)
        self.stereotypes.append(app)
        return app

    def build(self) -> UmlModel:
        return UmlModel(self.activity, tuple(self.partitions), tuple(self.nodes), tuple(self.edges),
                        tuple(self.stereotypes))


def reachable_from_initial(model: UmlModel,
                           kinds: tuple[EdgeKind, ...] = (EdgeKind.ControlFlow, EdgeKind.ObjectFlow)) -> set[str]:
    """Forward closure from every InitialNode along ``kinds`` edges."""
    seen = {n.id for n in model.nodes_of(NodeKind.InitialNode)}
    queue = deque(seen)
    while queue:
        node = queue.popleft()
        for e in model.outgoing(node):
            if e.kind in kinds and e.target not in seen:
                seen.add(e.target)
                queue.append(e.target)
    return seen


def reaching(model: UmlModel, targets: set[str], kinds: tuple[EdgeKind, ...] = (EdgeKind.ControlFlow,)) -> set[str]:
    """Backward closure: nodes with a path into ``targets``."""
    seen = set(targets)
    queue = deque(seen)
    while queue:
        node = queue.popleft()
        for e in model.incoming(node):
            if e.kind in kinds and e.source not in seen:
                seen.add(e.source)
                queue.append(e.source)
    return seen


def canonical_ids(model: UmlModel, prefix: str = "e") -> UmlModel:
    """Renumber ids ``e1, e2, ...`` in order: activity, partitions, nodes, edges."""
    mapping = {old: f"{prefix}{k}" for k, old in enumerate(model.element_ids(), start=1)}
    m = mapping.get
    return UmlModel(
        Activity(mapping[model.activity.id], model.activity.name),
        tuple(Partition(mapping[p.id], p.name) for p in model.partitions),
        tuple(replace(n, id=mapping[n.id], partition=m(n.partition, n.partition)) for n in model.nodes),
        tuple(replace(e, id=mapping[e.id], source=m(e.source, e.source), target=m(e.target, e.target))
              for e in model.edges),
        tuple(StereotypeApplication(m(s.element, s.element), s.kind) for s in model.stereotypes),
    )


@dataclass
class LaneWalk:
    """Result of following one partition's control-flow chain from the initial node."""

    partition: Partition
    path: list[str] = field(default_factory=list)
    edges: list[str] = field(default_factory=list)
    problem: str | None = None
    problem_elements: tuple[str, ...] = ()


def walk_lane(model: UmlModel, partition: Partition) -> LaneWalk:
    """Follow a lane from the InitialNode to the ActivityFinalNode.

    At each node take the ControlFlow edge labeled with the lane's name; at
    the initial node and at joins, where lanes merge, the unique unlabeled
    outgoing edge is taken instead.
    """
    walk = LaneWalk(partition)
    initials = model.nodes_of(NodeKind.InitialNode)
    if len(initials) != 1:
        walk.problem = "no unique initial node"
        return walk
    current = initials[0].id
    seen = {current}
    walk.path.append(current)
    label = partition.name
    while True:
        node = model.node_by_id[current]
        if node.kind is NodeKind.ActivityFinalNode:
            return walk
        flows = model.outgoing(current, EdgeKind.ControlFlow)
        mine = [e for e in flows if e.label == label]
        if not mine and node.kind in (NodeKind.InitialNode, NodeKind.JoinNode):
            mine = [e for e in flows if e.label is None]
        if len(mine) != 1:
            walk.problem = (f"lane {label!r} has {len(mine)} continuations at {node.kind.value} {current!r}")
            walk.problem_elements = (current,)
            return walk
        edge = mine[0]
        walk.edges.append(edge.id)
        nxt = model.node_by_id[edge.target]
        if nxt.kind.is_action and nxt.partition != partition.id:
            walk.problem = f"lane {label!r} flows into {nxt.id!r}, which belongs to another partition"
            walk.problem_elements = (edge.id, nxt.id)
            return walk
        if nxt.id in seen:
            walk.problem = f"lane {label!r} revisits {nxt.id!r}"
            walk.problem_elements = (nxt.id,)
            return walk
        seen.add(nxt.id)
        walk.path.append(nxt.id)
        current = nxt.id
