import json
import pathlib

import pytest

import lnec

DATA = pathlib.Path(__file__).resolve().parents[2] / "tests" / "data"


def load(name):
    return json.loads((DATA / name).read_text())


def test_field_ops():
    assert lnec.field_op(5, 3, 4, "mul") == 2
    assert lnec.field_op(5, 1, 2, "div") == 3
    assert lnec.field_op(5, 1, 0, "div") is None
    assert lnec.field_op(lnec.field(2, 4), 0x02, 0x08, "mul") == 0x03
    assert lnec.mat_rank(2, [[1, 1, 0], [0, 1, 1], [1, 0, 1]]) == 2


def test_network_queries():
    net = load("3path.json")
    order = lnec.topo_order(net)
    assert order.index("e11") < order.index("e12")
    assert lnec.min_cut(net, "t") == 3
    assert lnec.pattern_rank(net, ["e11", "e12"], "t") == 1
    assert lnec.pattern_rank(net, ["e11", "e21"], "t") == 2
    assert lnec.min_cut(load("bfly.json"), ["t1", "t2"]) == 3


def test_construct_analyze_decode():
    net = load("3path.json")
    built = lnec.construct(net, "multicast", 13)
    report = lnec.analyze(net, built["code"], targets=["t"])
    assert report["mds"]["multicast"]["verdict"] == "certified"
    assert report["targets"][0]["d"] == 3

    received = lnec.transmit(net, built["code"], "t", [7], {"e22": 4})
    result = lnec.decode(net, built["code"], "t", received)
    assert result["status"] == "unique"
    assert result["message"] == [7]
    # e21 and e22 sit on one path, so either explains the error.
    assert result["weight"] == 1
    assert result["errors"][0]["channel"] in ("e21", "e22")


def test_generic_certifies_everything():
    net = load("bfly.json")
    code = lnec.construct(net, "generic", 65521)["code"]
    report = lnec.analyze(net, code)
    assert all(v["verdict"] == "certified" for v in report["mds"].values())


def test_errors():
    with pytest.raises(lnec.FieldTooSmall):
        lnec.construct(load("comb42.json"), "multicast", 2)
    with pytest.raises(lnec.InvalidInput):
        lnec.construct(load("bfly.json"), "nonsense", 3)
    with pytest.raises(lnec.InvalidInput):
        lnec.topo_order("{not json")


def test_bounds_and_random():
    b = lnec.bounds(load("bfly.json"))
    assert b["bounds"]["multicast"]["tight"]["value"] == 2
    a = lnec.random_code(load("bfly.json"), lnec.field(2, 8), 4)
    assert a == lnec.random_code(load("bfly.json"), lnec.field(2, 8), 4)
