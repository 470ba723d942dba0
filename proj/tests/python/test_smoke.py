import json

import pytest

import xvpa

DOC = "<a><a>10.0</a><b>TEXT</b><b></b></a>"


def test_learn_and_revalidate():
    model = xvpa.infer([DOC], k=1, l=2)
    assert model.module_count == 3
    assert model.state_count == 7
    assert model.root == "a"
    assert model.alphabet == ["a", "b"]
    assert (model.k, model.l) == (1, 2)
    verdict = model.validate(DOC)
    assert verdict["accepted"] is True
    assert verdict["events"] == 10
    assert verdict["anomalies"] == []


def test_anomaly_reporting():
    model = xvpa.infer([DOC])
    verdict = model.validate("<a><b>TEXT</b></a>")
    assert verdict["accepted"] is False
    (anomaly,) = verdict["anomalies"]
    assert anomaly["position"] == 2
    assert anomaly["category"] == "structural"
    assert anomaly["observed"] == "<b>"
    assert anomaly["expected"] == ["<a>"]


def test_strict_mode_flag():
    model = xvpa.infer([DOC])
    assert model.validate("<a><a>2001</a><b/></a>")["accepted"]
    assert not model.validate("<a><a>2001</a><b/></a>", strict=True)["accepted"]


def test_save_and_load_round_trip():
    model = xvpa.infer([DOC])
    blob = model.save()
    json.loads(blob)
    again = xvpa.load(blob)
    assert again == model
    assert again.validate(DOC)["accepted"]


def test_dot_export():
    dot = xvpa.infer([DOC]).to_dot()
    assert dot.startswith("digraph xvpa {")
    assert dot.count("subgraph cluster_") == 3


def test_datatype_queries():
    assert xvpa.types("0") == ["boolean0"]
    assert xvpa.first_type("2001") == "base64Binary"
    closure = xvpa.type_closure("10.0")
    assert "decimal" in closure
    assert "byte" in closure


def test_errors():
    with pytest.raises(xvpa.XvpaError):
        xvpa.infer(["<a><b></a>"])
    with pytest.raises(xvpa.XvpaError):
        xvpa.infer([])
    with pytest.raises(xvpa.XvpaError):
        xvpa.load("{}")
    with pytest.raises(ValueError):
        xvpa.infer([DOC], k=0)


def test_depth_limit():
    model = xvpa.infer(["<a><a>1</a><b/></a>"], l=1)
    inner = "1"
    for _ in range(30):
        inner = f"<a>{inner}</a><b/>"
    deep = f"<a>{inner}</a>"
    assert model.validate(deep)["accepted"]
    capped = model.validate(deep, max_depth=10)
    assert capped["accepted"] is False
    assert capped["anomalies"][0]["category"] == "malformed"
