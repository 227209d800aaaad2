import json

import jsonschema
import pytest

from iwgraph.graph import Graph, jacobian, p_sylow
from iwgraph.tower import LevelRecord, TowerSpec, analyze_tower, level_graph
from iwgraph.voltage import VoltageAssignment, derive, intermediate_cover, single_voltage

REPORT_SCHEMA = {
    "type": "object",
    "required": ["p", "levels", "first_disconnected_level"],
    "properties": {
        "p": {"type": "integer"},
        "first_disconnected_level": {"type": ["integer", "null"]},
        "levels": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["m", "vertices", "connected", "e_m", "p_rank", "p_part_factors"],
                "additionalProperties": False,
                "properties": {
                    "m": {"type": "integer"},
                    "vertices": {"type": "integer"},
                    "connected": {"type": "boolean"},
                    "e_m": {"type": ["integer", "null"]},
                    "p_rank": {"type": ["integer", "null"]},
                    "p_part_factors": {
                        "anyOf": [{"type": "null"}, {"type": "array", "items": {"type": "string"}}]
                    },
                },
            },
        },
    },
}

K3 = Graph.complete(3)


def test_triangle_tower_p3():
    report = analyze_tower(TowerSpec(single_voltage(K3, 3), 3, 2))
    assert [r.vertices for r in report.levels] == [3, 9, 27]
    assert all(r.connected for r in report.levels)
    assert report.levels[0].e_m == 1
    assert report.first_disconnected_level is None
    jsonschema.validate(report.to_json(), REPORT_SCHEMA)


def test_zero_voltages_flag_disconnection():
    report = analyze_tower(TowerSpec(VoltageAssignment(K3, {}, 2), 2, 2))
    assert report.first_disconnected_level == 1
    assert report.levels[0].e_m == 0
    assert [r.connected for r in report.levels] == [True, False, False]
    assert report.levels[1].e_m is None and report.levels[2].p_part_factors is None
    assert report.exponents() == [0]
    jsonschema.validate(report.to_json(), REPORT_SCHEMA)


def test_level_zero_only():
    g = Graph.cycle(5)
    va = VoltageAssignment(g, {(1, 2): 1}, 5)
    report = analyze_tower(TowerSpec(va, 5, 0))
    assert len(report.levels) == 1
    e, r, parts = p_sylow(jacobian(g), 5)
    assert report.levels[0] == LevelRecord(0, 5, True, e, r, tuple(parts))


def test_full_records_total_order():
    report = analyze_tower(TowerSpec(single_voltage(K3, 2), 2, 2), full=True)
    assert report.levels[1].total_order == 6  # the 6-cycle
    assert report.levels[0].factors == (3,)


def test_truncation():
    report = analyze_tower(TowerSpec(single_voltage(K3, 2), 2, 5), max_vertices=20)
    assert [r.m for r in report.levels] == [0, 1, 2]
    assert report.truncated_at == 3
    assert report.to_json()["truncated_at"] == 3


def test_level_graph():
    spec = TowerSpec(single_voltage(K3, 2), 2, 3)
    assert level_graph(spec, 0).graph == K3
    assert level_graph(spec, 1).graph.edges == {(1, 5), (2, 4), (1, 3), (4, 6), (2, 3), (5, 6)}
    assert level_graph(spec, 3).graph.n == 24
    with pytest.raises(ValueError):
        level_graph(spec, 4)


def test_spec_validation():
    with pytest.raises(ValueError):
        TowerSpec(single_voltage(K3, 2), 3, 1)
    with pytest.raises(ValueError):
        TowerSpec(single_voltage(K3, 2), 2, -1)


def test_levels_compatible_with_intermediate_covers():
    va = VoltageAssignment(Graph.complete(4), {(1, 2): 7, (2, 4): -3}, 2)
    for m in range(4):
        for k in range(m + 1):
            assert intermediate_cover(va, m, k) == derive(va, k)


def test_determinism_and_workers():
    va = VoltageAssignment(Graph.complete(4), {(1, 2): 1, (3, 4): 2}, 2)
    spec = TowerSpec(va, 2, 4)
    a = analyze_tower(spec).dumps()
    b = analyze_tower(spec, workers=3).dumps()
    assert a == b == analyze_tower(spec).dumps()


def test_csv_export():
    report = analyze_tower(TowerSpec(VoltageAssignment(K3, {}, 2), 2, 1))
    lines = report.to_csv().splitlines()
    assert lines[0] == "m,vertices,connected,e_m,p_rank,p_part_factors"
    assert lines[1] == "0,3,true,0,0,"
    assert lines[2] == "1,6,false,,,"


def test_json_big_factors_are_strings():
    report = analyze_tower(TowerSpec(single_voltage(Graph.complete(4), 2), 2, 2))
    doc = json.loads(report.dumps())
    assert doc["levels"][0]["p_part_factors"] == ["4", "4"]
