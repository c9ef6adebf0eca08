import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sinrconn import Coloring, NodeSet, SinrGraph, SinrParams, ValidationError, distance, validate
from sinrconn.generators import grid_1d, grid_2d


def test_distance_examples():
    assert distance(grid_1d(3), 1, 2) == 1.0
    pts = NodeSet(np.array([[0.0, 0.0], [3.0, 4.0]]), 2)
    assert distance(pts, 1, 2) == 5.0
    assert distance(pts, 2, 2) == 0.0


def test_distance_rejects_bad_index():
    with pytest.raises(IndexError):
        distance(grid_1d(3), 0, 1)
    with pytest.raises(IndexError):
        distance(grid_1d(3), 1, 4)


@given(st.lists(st.tuples(st.floats(-100, 100), st.floats(-100, 100)), min_size=3, max_size=3,
                unique=True))
def test_distance_is_a_metric(points):
    nodes = NodeSet(np.array(points), 2)
    d = lambda u, v: distance(nodes, u, v)  # noqa: E731
    for u in (1, 2, 3):
        assert d(u, u) == 0
        for v in (1, 2, 3):
            assert d(u, v) >= 0
            assert d(u, v) == d(v, u)
            for w in (1, 2, 3):
                assert d(u, w) <= d(u, v) + d(v, w) + 1e-9


def test_validate_reports():
    dup = validate([0.1, 0.1])
    assert [v.kind for v in dup] == ["duplicate"]
    unsorted = validate([0.3, 0.1])
    assert [v.kind for v in unsorted] == ["unsorted"]
    assert validate([1, 2, 3]) == []
    assert validate([[0, 0], [0, 0]], 2)[0].kind == "duplicate"


def test_nodeset_rejects_invalid():
    with pytest.raises(ValidationError):
        NodeSet([0.1, 0.1])
    with pytest.raises(ValidationError):
        NodeSet([0.3, 0.1])
    with pytest.raises(ValidationError):
        NodeSet([])


def test_nodeset_json_roundtrip():
    for nodes in (grid_1d(4), grid_2d(9)):
        text = nodes.to_json()
        assert '"positions"' in text
        assert NodeSet.from_json(text) == nodes


def test_nodeset_is_immutable():
    nodes = grid_1d(3)
    with pytest.raises(ValueError):
        nodes.positions[0, 0] = 7.0


def test_params_ranges():
    p = SinrParams(2, 1)
    assert p.noise == 0 and p.power == 1
    for alpha, beta in [(0.5, 1), (2, 0.5), (math.nan, 1)]:
        with pytest.raises(ValidationError):
            SinrParams(alpha, beta)


def test_coloring_validation_and_json():
    c = Coloring(3, [1, 3, 2])
    assert c.color_of(2) == 3
    assert Coloring.from_json(c.to_json()) == c
    assert c.to_dict() == {"k": 3, "colors": [1, 3, 2]}
    with pytest.raises(ValidationError):
        Coloring(2, [1, 3])
    with pytest.raises(ValidationError):
        Coloring(0, [])


def test_coloring_classes():
    c = Coloring(3, [2, 1, 2, 3, 2])
    classes = c.classes()
    assert list(classes) == [1, 2, 3]
    assert classes[2].tolist() == [0, 2, 4]


def test_graph_json_roundtrip():
    g = SinrGraph.from_edges(3, [(1, 2), (3, 1)])
    assert g.to_dict() == {"n": 3, "edges": [[1, 2], [3, 1]]}
    assert SinrGraph.from_json(g.to_json()) == g
    with pytest.raises(ValidationError):
        SinrGraph.from_edges(2, [(1, 1)])
