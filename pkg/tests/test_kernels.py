"""Tests for the flow-graph kernels and their serialization."""

import numpy as np
import pytest

from ternary_dct.dctcore import TERNARY_DCT2, TERNARY_DCT4
from ternary_dct.kernels import (
    AccumulatorRangeError,
    DCT2_GRAPH,
    DCT4_GRAPH,
    FlowGraph,
    GraphNode,
    InvalidGraphError,
    SAMPLE_MAX,
    SAMPLE_MIN,
    dct2_kernel,
    dct4_kernel,
    evaluate_graph,
    export_graph,
    kernel_graph,
    kernel_stats,
    parse_graph_json,
    validate_graph,
)


def identity_graph(lanes=4):
    nodes = [GraphNode(name=f"x{i}", op="input", index=i) for i in range(lanes)]
    nodes += [GraphNode(name=f"y{i}", op="output", args=(f"x{i}",), index=i) for i in range(lanes)]
    return FlowGraph(name="identity", nodes=tuple(nodes))


def test_dct2_kernel_known_vector():
    assert dct2_kernel([3, -2, 5, 1]).tolist() == [7, 2, 1, 7]


def test_dct4_kernel_known_vector():
    assert dct4_kernel([3, -2, 5, 1]).tolist() == [6, -3, 6, 6]


def test_zero_vector_maps_to_zero():
    assert dct2_kernel([0, 0, 0, 0]).tolist() == [0, 0, 0, 0]
    assert dct4_kernel([0, 0, 0, 0]).tolist() == [0, 0, 0, 0]


def test_kernels_match_matrix_products():
    rng = np.random.default_rng(23)
    x = rng.integers(-1000, 1000, size=(2000, 4))
    assert np.array_equal(dct2_kernel(x), x @ TERNARY_DCT2.T)
    assert np.array_equal(dct4_kernel(x), x @ TERNARY_DCT4.T)


def test_kernels_are_linear():
    rng = np.random.default_rng(3)
    a = rng.integers(-500, 500, size=(100, 4))
    b = rng.integers(-500, 500, size=(100, 4))
    for kernel in (dct2_kernel, dct4_kernel):
        assert np.array_equal(kernel(a + b), kernel(a) + kernel(b))
        assert np.array_equal(kernel(-a), -kernel(a))


def test_batch_shape_is_preserved():
    x = np.zeros((5, 7, 4), dtype=np.int64)
    assert dct2_kernel(x).shape == (5, 7, 4)


def test_float_input_rejected():
    with pytest.raises(TypeError):
        dct2_kernel([1.5, 0.0, 0.0, 0.0])


def test_wrong_length_rejected():
    with pytest.raises(ValueError):
        dct4_kernel([1, 2, 3])


def test_checked_range():
    assert dct2_kernel([SAMPLE_MAX, SAMPLE_MIN, 0, 1], checked=True).tolist() == [
        SAMPLE_MAX + SAMPLE_MIN + 1,
        SAMPLE_MAX - 1,
        SAMPLE_MAX - SAMPLE_MIN + 1,
        -SAMPLE_MIN,
    ]
    with pytest.raises(AccumulatorRangeError):
        dct2_kernel([SAMPLE_MAX + 1, 0, 0, 0], checked=True)
    with pytest.raises(AccumulatorRangeError):
        dct4_kernel([SAMPLE_MIN - 1, 0, 0, 0], checked=True)


def test_unchecked_accepts_wide_values():
    wide = [10**9, -(10**9), 10**9, 0]
    assert dct2_kernel(wide).tolist() == (np.array(wide) @ TERNARY_DCT2.T).tolist()


def test_kernel_stats_counts():
    s2 = kernel_stats(DCT2_GRAPH)
    assert (s2.additions, s2.multiplications, s2.depth) == (6, 0, 2)
    s4 = kernel_stats(DCT4_GRAPH)
    assert (s4.additions, s4.multiplications, s4.depth) == (8, 0, 2)


def test_identity_graph_stats():
    stats = kernel_stats(identity_graph())
    assert (stats.additions, stats.multiplications, stats.depth) == (0, 0, 0)


def test_negation_is_free_wiring():
    graph = FlowGraph(
        name="neg-only",
        nodes=(
            GraphNode(name="x0", op="input", index=0),
            GraphNode(name="n0", op="neg", args=("x0",)),
            GraphNode(name="y0", op="output", args=("n0",), index=0),
        ),
    )
    stats = kernel_stats(graph)
    assert (stats.additions, stats.depth) == (0, 0)
    assert evaluate_graph(graph, np.array([[5], [-3]])).tolist() == [[-5], [3]]


def test_kernel_graph_lookup():
    assert kernel_graph("ii") is DCT2_GRAPH
    assert kernel_graph("iv") is DCT4_GRAPH
    with pytest.raises(ValueError):
        kernel_graph("viii")


def test_evaluate_rejects_bad_lane_count():
    with pytest.raises(ValueError):
        evaluate_graph(DCT2_GRAPH, np.zeros((3,), dtype=np.int64))


@pytest.mark.parametrize(
    "nodes",
    [
        # duplicate name
        (
            GraphNode(name="x0", op="input", index=0),
            GraphNode(name="x0", op="input", index=1),
            GraphNode(name="y0", op="output", args=("x0",), index=0),
        ),
        # forward reference
        (
            GraphNode(name="x0", op="input", index=0),
            GraphNode(name="a", op="add", args=("x0", "b")),
            GraphNode(name="b", op="add", args=("x0", "x0")),
            GraphNode(name="y0", op="output", args=("a",), index=0),
        ),
        # unknown op
        (
            GraphNode(name="x0", op="input", index=0),
            GraphNode(name="m", op="mul", args=("x0", "x0")),
            GraphNode(name="y0", op="output", args=("m",), index=0),
        ),
        # wrong arity
        (
            GraphNode(name="x0", op="input", index=0),
            GraphNode(name="a", op="add", args=("x0",)),
            GraphNode(name="y0", op="output", args=("a",), index=0),
        ),
        # no outputs
        (
            GraphNode(name="x0", op="input", index=0),
            GraphNode(name="a", op="add", args=("x0", "x0")),
        ),
        # output lanes not contiguous
        (
            GraphNode(name="x0", op="input", index=0),
            GraphNode(name="y0", op="output", args=("x0",), index=0),
            GraphNode(name="y2", op="output", args=("x0",), index=2),
        ),
        # index on an arithmetic node
        (
            GraphNode(name="x0", op="input", index=0),
            GraphNode(name="a", op="add", args=("x0", "x0"), index=1),
            GraphNode(name="y0", op="output", args=("a",), index=0),
        ),
    ],
)
def test_validate_rejects_malformed_graphs(nodes):
    with pytest.raises(InvalidGraphError):
        validate_graph(FlowGraph(name="bad", nodes=tuple(nodes)))


def test_builtin_graphs_validate():
    validate_graph(DCT2_GRAPH)
    validate_graph(DCT4_GRAPH)


def test_dot_export_structure():
    dot = export_graph(DCT2_GRAPH, format="dot")
    lines = dot.splitlines()
    assert lines[0] == 'digraph "dct2-ternary" {'
    assert lines[-1] == "}"
    assert dot.count("shape=box") == 6
    # one labeled edge per subtract operand
    assert sum(1 for ln in lines if "->" in ln and 'label="-"' in ln) == 3
    assert '"x0" -> "t0";' in dot


def test_dot_export_deterministic():
    assert export_graph(DCT4_GRAPH, format="dot") == export_graph(DCT4_GRAPH, format="dot")


def test_json_round_trip():
    for graph in (DCT2_GRAPH, DCT4_GRAPH, identity_graph()):
        text = export_graph(graph, format="json")
        assert parse_graph_json(text) == graph


def test_parse_rejects_garbage():
    with pytest.raises(InvalidGraphError):
        parse_graph_json("{not json")
    with pytest.raises(InvalidGraphError):
        parse_graph_json('{"name": "g"}')
    with pytest.raises(InvalidGraphError):
        parse_graph_json('{"name": "g", "nodes": [{"name": "x0", "op": "input", "index": 0}]}')


def test_unknown_export_format():
    with pytest.raises(ValueError):
        export_graph(DCT2_GRAPH, format="svg")


def test_export_validates_first():
    bad = FlowGraph(name="bad", nodes=(GraphNode(name="x0", op="input", index=0),))
    with pytest.raises(InvalidGraphError):
        export_graph(bad, format="json")
