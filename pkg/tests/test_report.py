import json

import pytest

from mldegree.mld import MLDReport
from mldegree.report import emit_report, jsonable, payload
from mldegree.varieties import MultidegreeVector


def test_mld_report_json():
    rep = MLDReport(26, "direct", seeds=[1, 2, 3])
    text = emit_report(rep, "json", command="mld", inputs={"session": "abc"})
    assert text.startswith('{"command":"mld","inputs":{"session":"abc"},"value":26,')
    data = json.loads(text)
    assert data["seeds"] == [1, 2, 3] and data["prime"] == 32003 and data["trials"] == 3
    assert data["f_general"] == {"empty": None, "irreducible": "unchecked"}
    assert list(data)[-1] == "status"


def test_vector_report():
    vec = MultidegreeVector((1, 2, 4, 4, 2, 1), kind="mu")
    text = emit_report(vec, command="grad-mdeg")
    assert '"vector":[1,2,4,4,2,1]' in text
    assert json.loads(text)["kind"] == "mu"


def test_boolean_report():
    assert emit_report(True, command="pde-check") == '{"command":"pde-check","value":true,"status":"ok"}'


def test_text_format():
    text = emit_report(MLDReport(9, "direct"), "text")
    lines = text.splitlines()
    assert lines[0] == "value: 9"
    assert "status: ok" in lines


def test_polynomials_become_strings(xyz):
    x, y, _ = xyz
    assert jsonable({"f": x * y, "l": [x, 1]}) == {"f": "x*y", "l": ["x", 1]}
    with pytest.raises(TypeError):
        jsonable(object())
    with pytest.raises(ValueError):
        emit_report(1, "yaml")


def test_payload_is_deterministic():
    rep = MLDReport(4, "polar-formula", details={"delta": [2, 2], "mu": [1, 1, 1]})
    assert payload(rep) == payload(rep)
    assert emit_report(rep) == emit_report(MLDReport(4, "polar-formula", details={"delta": [2, 2], "mu": [1, 1, 1]}))
