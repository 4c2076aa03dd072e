import re
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circuit_gen import random_circuit
from mutations import MUTATIONS
from qcuml.circuit import Circuit, RegisterDecl
from qcuml.diagnostics import RenderError, XmiError
from qcuml.serialization import load_xmi, read_xmi, write_plantuml, write_xmi
from qcuml.serialization.xmi import PROFILE_NS, UML_NS, XMI_NS
from qcuml.transform import circuit_to_uml
from qcuml.uml import canonical_ids

NS = {"xmi": XMI_NS, "uml": UML_NS, "QuantumUML": PROFILE_NS}


@pytest.fixture(scope="module")
def empty_model():
    return circuit_to_uml(Circuit("empty", (RegisterDecl("q", 1),)))


def xmi_error(text):
    with pytest.raises(XmiError) as exc:
        read_xmi(text)
    return exc.value.codes


def test_empty_model_document(empty_model):
    root = ET.fromstring(write_xmi(empty_model))
    activities = root.findall("uml:Model/packagedElement", NS)
    assert len(activities) == 1
    assert len(activities[0].findall("group")) == 1
    assert len(activities[0].findall("node")) == 2
    assert len(activities[0].findall("edge")) == 1
    assert [el.tag.split("}")[1] for el in root if el.tag.startswith(f"{{{PROFILE_NS}}}")] == [
        "quantumCircuit", "qubit"]


def test_teleport_gate_applications(teleport_model):
    root = ET.fromstring(write_xmi(teleport_model))
    assert len(root.findall("QuantumUML:quantumGate", NS)) == 6
    assert len(root.findall("uml:Model/packagedElement/ownedRule", NS)) == 4


def test_every_reference_resolves(teleport_model):
    text = write_xmi(teleport_model)
    ids = set(re.findall(r'xmi:id="([^"]+)"', text))
    refs = re.findall(r'(?:base_\w+|source|target|inPartition)="([^"]+)"', text)
    refs += [r for pair in re.findall(r'constrainedElement="([^"]+)"', text) for r in pair.split()]
    assert refs and set(refs) <= ids


def test_layout(teleport_model):
    text = write_xmi(teleport_model)
    assert text.endswith("</xmi:XMI>\n") and "\r" not in text
    assert all(re.match(r"( {2})*<", line) for line in text.splitlines()[1:])


def test_teleport_read_back(teleport_model):
    text = write_xmi(teleport_model)
    assert read_xmi(text) == teleport_model
    assert write_xmi(read_xmi(text)) == text


def test_tolerates_reordered_attributes_and_whitespace(teleport_model):
    text = write_xmi(teleport_model)
    swapped = re.sub(r'<node xmi:id="([^"]+)" name="([^"]+)"', r'<node   name="\2"\n xmi:id="\1"', text)
    assert swapped != text
    assert read_xmi(swapped) == teleport_model


def test_invalid_models_still_serialize(teleport_model):
    for mutate in MUTATIONS.values():
        model = canonical_ids(mutate(teleport_model))
        assert read_xmi(write_xmi(model)) == model


def test_malformed_xml():
    (code,) = xmi_error("not xml")
    assert code == "E-XML"


def test_dangling_stereotype(teleport_model):
    text = write_xmi(teleport_model).replace('base_CallOperationAction="e9"', 'base_CallOperationAction="e999"')
    assert xmi_error(text) == ["E-DANGLING-REF"]


def test_dangling_edge(teleport_model):
    text = write_xmi(teleport_model).replace('source="e5"', 'source="nope"')
    assert xmi_error(text) == ["E-DANGLING-REF"]


@pytest.mark.parametrize(
    "old, new",
    [
        ('<node xmi:id="e5" name="initial" xmi:type="uml:InitialNode"/>', '<node xmi:id="e5" name="initial"/>'),
        ('xmi:type="uml:InitialNode"', 'xmi:type="uml:DecisionNode"'),
        ('<uml:Model name="teleport">', '<uml:Model name="teleport"><packagedElement xmi:id="z" xmi:type="uml:Activity"/>'),
        ('register="msg" bit="0"', 'register="msg" bit="x"'),
        ('constrainedElement="e10 e11"', 'constrainedElement="e10"'),
        ('xmi:id="e1"', 'name2="x"'),
    ],
)
def test_schema_errors(teleport_model, old, new):
    text = write_xmi(teleport_model)
    assert old in text
    assert xmi_error(text.replace(old, new, 1)) == ["E-XMI-SCHEMA"]


def test_unknown_content_warns(teleport_model):
    text = write_xmi(teleport_model)
    text = text.replace('<node xmi:id="e5"', '<node color="red" xmi:id="e5"')
    text = text.replace("</xmi:XMI>", '  <QuantumUML:entangled xmi:id="z1" base_Activity="e1"/>\n  <other/>\n</xmi:XMI>')
    model, warnings = load_xmi(text)
    assert model == teleport_model
    assert [w.rule for w in warnings] == ["W-XMI-UNKNOWN"] * 3
    assert all(w.severity == "warning" for w in warnings)


def test_plantuml_teleport(teleport_model):
    text = write_plantuml(teleport_model)
    lines = text.splitlines()
    assert sorted(line.strip() for line in lines if re.fullmatch(r"\s*\|\w+\|", line)) == ["|q0|", "|q1|", "|q2|"]
    assert lines.count("start") == 1 and lines.count("stop") == 1
    assert sum(line.strip().startswith("note ") for line in lines) == 4
    assert "  :h «quantum gate»;" in lines
    assert write_plantuml(teleport_model) == text


def test_plantuml_empty(empty_model):
    lines = write_plantuml(empty_model).splitlines()
    assert "start" in lines and "stop" in lines
    assert sum(bool(re.fullmatch(r"\s*\|\w+\|", line)) for line in lines) == 1


def test_plantuml_needs_valid_model(teleport_model):
    with pytest.raises(RenderError) as exc:
        write_plantuml(MUTATIONS["R4"](teleport_model))
    assert exc.value.codes[0] == "E-INVALID-MODEL"
    assert "R4" in exc.value.codes


@settings(max_examples=200, deadline=None)
@given(st.randoms(use_true_random=False))
def test_fixed_point(rng):
    model = circuit_to_uml(random_circuit(rng))
    text = write_xmi(model)
    assert read_xmi(text) == model
    assert write_xmi(read_xmi(text)) == text
