"""XMI reader and writer for :class:`~qcuml.uml.UmlModel`.

Layout: ``xmi:XMI`` holds one ``uml:Model`` with one activity
(``packagedElement``) whose ``group``, ``node``, ``edge`` and ``ownedRule``
children are the partitions, nodes, flows and constraints. Stereotype
applications follow the model as ``QuantumUML:<stereotype>`` elements with a
``base_<Metaclass>`` reference.

Ids are renumbered ``e1, e2, ...`` on output (activity, partitions, nodes,
edges, then stereotype applications), so writing is deterministic and a
document read back and rewritten is byte-identical.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from xml.sax.saxutils import escape

from ..diagnostics import Diagnostic, ModelError, QasmError, XmiError, error
from ..expr import to_text
from ..qasm.parser import parse_expression
from ..uml.model import (
    EdgeKind,
    GateInfo,
    MeasureInfo,
    ModelBuilder,
    NodeKind,
    StereotypeKind,
    UmlModel,
    canonical_ids,
)

XMI_NS = "http://www.omg.org/spec/XMI/20131001"
UML_NS = "http://www.omg.org/spec/UML/20161101"
PROFILE_NS = "urn:quantum-uml-profile:1.0"

_ATTR_ESCAPES = {'"': "&quot;", "\n": "&#10;", "\r": "&#13;", "\t": "&#9;"}
_XMI_ID = f"{{{XMI_NS}}}id"
_XMI_TYPE = f"{{{XMI_NS}}}type"
_STEREOTYPE_BY_TAG = {k.tag: k for k in StereotypeKind}


def _element(indent: int, tag: str, attrs: list[tuple[str, str | None]], children: list[str] | None = None) -> list[str]:
    text = "".join(f' {k}="{escape(v, _ATTR_ESCAPES)}"' for k, v in attrs if v is not None)
    pad = "  " * indent
    if not children:
        return [f"{pad}<{tag}{text}/>"]
    return [f"{pad}<{tag}{text}>", *children, f"{pad}</{tag}>"]


def write_xmi(model: UmlModel) -> str:
    """Serialize ``model``; the model need not pass validation."""
    model = canonical_ids(model)
    body: list[str] = []
    for p in model.partitions:
        body += _element(3, "group", [("xmi:id", p.id), ("name", p.name), ("xmi:type", "uml:ActivityPartition")])
    for n in model.nodes:
        attrs = [("xmi:id", n.id), ("name", n.name), ("xmi:type", f"uml:{n.kind.value}"),
                 ("inPartition", n.partition)]
        if n.gate_info is not None:
            attrs.append(("mnemonic", n.gate_info.mnemonic))
            if n.gate_info.params:
                attrs.append(("params", ",".join(to_text(p) for p in n.gate_info.params)))
        if n.measure_info is not None:
            attrs += [("register", n.measure_info.register), ("bit", str(n.measure_info.bit))]
        if n.upper_bound is not None:
            attrs.append(("upperBound", str(n.upper_bound)))
        body += _element(3, "node", attrs)
    for e in model.edges:
        if e.kind is EdgeKind.Constraint:
            body += _element(3, "ownedRule", [("xmi:id", e.id), ("name", e.label), ("xmi:type", "uml:Constraint"),
                                              ("constrainedElement", f"{e.source} {e.target}")])
        else:
            body += _element(3, "edge", [("xmi:id", e.id), ("name", e.label), ("xmi:type", f"uml:{e.kind.value}"),
                                         ("source", e.source), ("target", e.target)])
    activity = _element(2, "packagedElement", [("xmi:id", model.activity.id), ("name", model.activity.name),
                                               ("xmi:type", "uml:Activity")], body)
    lines = ['<?xml version="1.0" encoding="UTF-8"?>',
             f'<xmi:XMI xmlns:xmi="{XMI_NS}" xmlns:uml="{UML_NS}" xmlns:QuantumUML="{PROFILE_NS}">']
    lines += _element(1, "uml:Model", [("name", model.activity.name)], activity)
    next_id = len(model.element_ids()) + 1
    for k, app in enumerate(model.stereotypes):
        meta = model.metaclass_of(app.element) or "Element"
        lines += _element(1, f"QuantumUML:{app.kind.tag}", [("xmi:id", f"e{next_id + k}"),
                                                            (f"base_{meta}", app.element)])
    lines.append("</xmi:XMI>")
    return "\n".join(lines) + "\n"


class _Reader:
    def __init__(self):
        self.warnings: list[Diagnostic] = []

    def warn(self, message: str, element_id: str | None = None) -> None:
        self.warnings.append(Diagnostic("W-XMI-UNKNOWN", message, "warning",
                                        elements=(element_id,) if element_id else ()))

    def fail(self, message: str, element_id: str | None = None):
        raise XmiError(error("E-XMI-SCHEMA", message, elements=(element_id,) if element_id else ()))

    def attrs(self, el: ET.Element, known: set[str]) -> dict[str, str]:
        for key in el.attrib:
            if key not in known and key not in (_XMI_ID, _XMI_TYPE):
                self.warn(f"ignoring attribute {key!r} on <{_local(el.tag)}>", el.get(_XMI_ID))
        return el.attrib

    def require(self, el: ET.Element, key: str) -> str:
        value = el.get(key)
        if value is None:
            self.fail(f"<{_local(el.tag)}> is missing {_local(key)!r}", el.get(_XMI_ID))
        return value

    def typed(self, el: ET.Element) -> str:
        kind = self.require(el, _XMI_TYPE)
        if not kind.startswith("uml:"):
            self.fail(f"unexpected xmi:type {kind!r}", el.get(_XMI_ID))
        return kind[4:]

    def params(self, text: str | None, element_id: str):
        if not text:
            return ()
        try:
            return tuple(parse_expression(piece) for piece in text.split(","))
        except QasmError as exc:
            self.fail(f"bad gate parameters {text!r}: {exc}", element_id)

    def integer(self, el: ET.Element, key: str) -> int | None:
        value = el.get(key)
        if value is None:
            return None
        if not value.isdigit():
            self.fail(f"{key!r} must be a non-negative integer, got {value!r}", el.get(_XMI_ID))
        return int(value)

    def read(self, text: str) -> UmlModel:
        try:
            root = ET.fromstring(text)
        except ET.ParseError as exc:
            line, column = exc.position
            raise XmiError(error("E-XML", f"malformed XML: {exc}", line=line, column=column + 1)) from None
        if root.tag != f"{{{XMI_NS}}}XMI":
            self.fail(f"root element must be xmi:XMI, found {root.tag!r}")
        models = [el for el in root if el.tag == f"{{{UML_NS}}}Model"]
        if len(models) != 1:
            self.fail(f"expected one uml:Model, found {len(models)}")
        activities = [el for el in models[0] if el.tag == "packagedElement" and el.get(_XMI_TYPE) == "uml:Activity"]
        if len(activities) != 1:
            self.fail(f"expected one activity, found {len(activities)}")
        for el in models[0]:
            if el is not activities[0]:
                self.warn(f"ignoring <{_local(el.tag)}> in uml:Model", el.get(_XMI_ID))
        act = activities[0]
        self.attrs(models[0], {"name"})
        self.attrs(act, {"name"})
        builder = ModelBuilder(self.require(act, _XMI_ID), act.get("name", ""))
        try:
            self.contents(act, builder)
            for el in root:
                if el is models[0]:
                    continue
                self.stereotype(el, builder)
        except ModelError as exc:
            raise XmiError(exc.diagnostics) from None
        return builder.build()

    def contents(self, act: ET.Element, builder: ModelBuilder) -> None:
        groups = [el for el in act if el.tag == "group"]
        nodes = [el for el in act if el.tag == "node"]
        edges = [el for el in act if el.tag in ("edge", "ownedRule")]
        for el in act:
            if el.tag not in ("group", "node", "edge", "ownedRule"):
                self.warn(f"ignoring <{_local(el.tag)}> in activity", el.get(_XMI_ID))
        for el in groups:
            if self.typed(el) != "ActivityPartition":
                self.fail("group must be an ActivityPartition", el.get(_XMI_ID))
            self.attrs(el, {"name"})
            builder.add_partition(self.require(el, _XMI_ID), el.get("name", ""))
        for el in nodes:
            node_id = self.require(el, _XMI_ID)
            try:
                kind = NodeKind(self.typed(el))
            except ValueError:
                self.fail(f"unsupported node type {el.get(_XMI_TYPE)!r}", node_id)
            self.attrs(el, {"name", "inPartition", "mnemonic", "params", "register", "bit", "upperBound"})
            gate_info = measure_info = None
            if el.get("mnemonic") is not None:
                gate_info = GateInfo(el.get("mnemonic"), self.params(el.get("params"), node_id))
            if el.get("register") is not None:
                bit = self.integer(el, "bit")
                if bit is None:
                    self.fail("measure info needs a 'bit'", node_id)
                measure_info = MeasureInfo(el.get("register"), bit)
            builder.add_node(node_id, kind, el.get("name", ""), el.get("inPartition"), gate_info=gate_info,
                             measure_info=measure_info, upper_bound=self.integer(el, "upperBound"))
        for el in edges:
            edge_id = self.require(el, _XMI_ID)
            kind = self.typed(el)
            if el.tag == "ownedRule":
                if kind != "Constraint":
                    self.fail("ownedRule must be a Constraint", edge_id)
                self.attrs(el, {"name", "constrainedElement"})
                ends = self.require(el, "constrainedElement").split()
                if len(ends) != 2:
                    self.fail("a constraint must name exactly two elements", edge_id)
                builder.add_edge(edge_id, EdgeKind.Constraint, ends[0], ends[1], el.get("name"))
            else:
                if kind not in ("ControlFlow", "ObjectFlow"):
                    self.fail(f"unsupported edge type {kind!r}", edge_id)
                self.attrs(el, {"name", "source", "target"})
                builder.add_edge(edge_id, EdgeKind(kind), self.require(el, "source"), self.require(el, "target"),
                                 el.get("name"))

    def stereotype(self, el: ET.Element, builder: ModelBuilder) -> None:
        if not el.tag.startswith(f"{{{PROFILE_NS}}}"):
            self.warn(f"ignoring <{_local(el.tag)}>", el.get(_XMI_ID))
            return
        kind = _STEREOTYPE_BY_TAG.get(_local(el.tag))
        if kind is None:
            self.warn(f"unknown stereotype {_local(el.tag)!r}", el.get(_XMI_ID))
            return
        bases = [key for key in el.attrib if key.startswith("base_")]
        if len(bases) != 1:
            self.fail(f"stereotype application needs one base_ reference, found {len(bases)}", el.get(_XMI_ID))
        self.attrs(el, set(bases))
        builder.apply_stereotype(el.get(bases[0]), kind)


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def load_xmi(text: str) -> tuple[UmlModel, list[Diagnostic]]:
    """Read a document and also return warnings about content that was skipped."""
    reader = _Reader()
    model = reader.read(text)
    return model, reader.warnings


def read_xmi(text: str) -> UmlModel:
    """Inverse of :func:`write_xmi`. Raises :class:`XmiError` on malformed input."""
    return load_xmi(text)[0]
