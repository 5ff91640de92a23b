"""Addition-only kernels for the 4-point ternary transforms.

Each kernel is stored as a small flow graph whose nodes are inputs,
two-operand adds and subtracts, single-operand negations, and outputs.
Evaluating the graph on integer data uses integer adds only, which is
what makes the transforms multiplierless.  The graphs double as the
source of the complexity numbers (addition count, adder depth) and can
be exported to Graphviz dot or JSON for inspection.

The DCT-II schedule is the usual butterfly:

    t0 = x0 + x3        X0 = t0 + t1
    t1 = x1 + x2        X1 = t2
    t2 = x0 - x3        X2 = t0 - t1
    t3 = x2 - x1        X3 = t3

six adds, depth two.  The DCT-IV schedule shares x-differences across
rows:

    X0 = (x0 + x1) + x2
    X1 = (x0 - x2) - x3
    X2 = (x0 - x1) + x3
    X3 = (x2 - x1) - x3

eight adds, depth two.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

NODE_OPS = ("input", "add", "sub", "neg", "output")
GRAPH_FORMATS = ("dot", "json")

# Checked evaluation accepts this sample range; with 4-tap ternary rows
# every intermediate then fits a 32-bit accumulator with headroom.
SAMPLE_MIN = -(1 << 15)
SAMPLE_MAX = (1 << 15) - 1


class InvalidGraphError(ValueError):
    """Raised when a flow graph violates a structural rule."""


class AccumulatorRangeError(OverflowError):
    """Raised in checked mode when inputs exceed the sample range."""


@dataclass(frozen=True)
class GraphNode:
    """One node of a flow graph.

    op is one of input/add/sub/neg/output.  args name earlier nodes,
    index is the lane number for input and output nodes.
    """

    name: str
    op: str
    args: tuple[str, ...] = ()
    index: int | None = None


@dataclass(frozen=True)
class FlowGraph:
    name: str
    nodes: tuple[GraphNode, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class KernelStats:
    additions: int
    multiplications: int
    depth: int


_ARITY = {"input": 0, "add": 2, "sub": 2, "neg": 1, "output": 1}


def validate_graph(graph: FlowGraph) -> None:
    """Check structural rules; raises InvalidGraphError on violation.

    Node names must be unique, operands must name nodes declared
    earlier (which rules out cycles), arity must match the op, and the
    input / output lane indices must each cover 0..k-1 exactly once.
    """
    if not isinstance(graph, FlowGraph):
        raise InvalidGraphError("expected a FlowGraph")
    seen: set[str] = set()
    in_idx: list[int] = []
    out_idx: list[int] = []
    for node in graph.nodes:
        if not node.name:
            raise InvalidGraphError("node with empty name")
        if node.name in seen:
            raise InvalidGraphError(f"duplicate node name {node.name!r}")
        if node.op not in NODE_OPS:
            raise InvalidGraphError(f"unknown op {node.op!r} on node {node.name!r}")
        if len(node.args) != _ARITY[node.op]:
            raise InvalidGraphError(
                f"node {node.name!r}: op {node.op!r} takes {_ARITY[node.op]} operand(s), "
                f"got {len(node.args)}"
            )
        for ref in node.args:
            if ref not in seen:
                raise InvalidGraphError(f"node {node.name!r} references undeclared node {ref!r}")
        if node.op in ("input", "output"):
            if node.index is None or node.index < 0:
                raise InvalidGraphError(f"node {node.name!r} needs a non-negative lane index")
            (in_idx if node.op == "input" else out_idx).append(node.index)
        elif node.index is not None:
            raise InvalidGraphError(f"node {node.name!r}: only input/output nodes carry an index")
        seen.add(node.name)
    if not in_idx or not out_idx:
        raise InvalidGraphError("graph needs at least one input and one output")
    if sorted(in_idx) != list(range(len(in_idx))):
        raise InvalidGraphError(f"input lanes must cover 0..{len(in_idx) - 1} once, got {in_idx}")
    if sorted(out_idx) != list(range(len(out_idx))):
        raise InvalidGraphError(f"output lanes must cover 0..{len(out_idx) - 1} once, got {out_idx}")


def evaluate_graph(graph: FlowGraph, x) -> np.ndarray:
    """Run a flow graph on data whose last axis holds the input lanes."""
    validate_graph(graph)
    n_in = sum(1 for n in graph.nodes if n.op == "input")
    arr = np.asarray(x)
    if arr.shape[-1:] != (n_in,):
        raise ValueError(f"last axis must have length {n_in}, got shape {arr.shape}")
    values: dict[str, np.ndarray] = {}
    outputs: dict[int, np.ndarray] = {}
    for node in graph.nodes:
        if node.op == "input":
            values[node.name] = arr[..., node.index]
        elif node.op == "add":
            values[node.name] = values[node.args[0]] + values[node.args[1]]
        elif node.op == "sub":
            values[node.name] = values[node.args[0]] - values[node.args[1]]
        elif node.op == "neg":
            values[node.name] = -values[node.args[0]]
        else:
            outputs[node.index] = values[node.args[0]]
    return np.stack([outputs[i] for i in range(len(outputs))], axis=-1)


def kernel_stats(graph: FlowGraph) -> KernelStats:
    """Addition count and adder depth of a flow graph.

    Subtracts count as additions.  Negations count as wiring, not
    arithmetic, and do not add depth.  multiplications is always zero
    because the node set has no multiply; the field exists so kernel
    rows line up with the matrix-based comparison table.
    """
    validate_graph(graph)
    additions = 0
    depth: dict[str, int] = {}
    max_depth = 0
    for node in graph.nodes:
        if node.op == "input":
            depth[node.name] = 0
        elif node.op in ("add", "sub"):
            additions += 1
            depth[node.name] = 1 + max(depth[a] for a in node.args)
            max_depth = max(max_depth, depth[node.name])
        elif node.op == "neg":
            depth[node.name] = depth[node.args[0]]
        else:
            max_depth = max(max_depth, depth[node.args[0]])
    return KernelStats(additions=additions, multiplications=0, depth=max_depth)


def _graph(name: str, layout: list[tuple]) -> FlowGraph:
    nodes = []
    for entry in layout:
        nm, op = entry[0], entry[1]
        if op in ("input", "output"):
            args = entry[2] if op == "output" else ()
            nodes.append(GraphNode(name=nm, op=op, args=args, index=entry[3]))
        else:
            nodes.append(GraphNode(name=nm, op=op, args=entry[2]))
    return FlowGraph(name=name, nodes=tuple(nodes))


def dct2_graph() -> FlowGraph:
    """Flow graph of the ternary DCT-II kernel (6 adds, depth 2)."""
    return _graph(
        "dct2-ternary",
        [
            ("x0", "input", (), 0),
            ("x1", "input", (), 1),
            ("x2", "input", (), 2),
            ("x3", "input", (), 3),
            ("t0", "add", ("x0", "x3")),
            ("t1", "add", ("x1", "x2")),
            ("t2", "sub", ("x0", "x3")),
            ("t3", "sub", ("x2", "x1")),
            ("s0", "add", ("t0", "t1")),
            ("s1", "sub", ("t0", "t1")),
            ("y0", "output", ("s0",), 0),
            ("y1", "output", ("t2",), 1),
            ("y2", "output", ("s1",), 2),
            ("y3", "output", ("t3",), 3),
        ],
    )


def dct4_graph() -> FlowGraph:
    """Flow graph of the ternary DCT-IV kernel (8 adds, depth 2)."""
    return _graph(
        "dct4-ternary",
        [
            ("x0", "input", (), 0),
            ("x1", "input", (), 1),
            ("x2", "input", (), 2),
            ("x3", "input", (), 3),
            ("t0", "add", ("x0", "x1")),
            ("t1", "sub", ("x0", "x2")),
            ("t2", "sub", ("x0", "x1")),
            ("t3", "sub", ("x2", "x1")),
            ("s0", "add", ("t0", "x2")),
            ("s1", "sub", ("t1", "x3")),
            ("s2", "add", ("t2", "x3")),
            ("s3", "sub", ("t3", "x3")),
            ("y0", "output", ("s0",), 0),
            ("y1", "output", ("s1",), 1),
            ("y2", "output", ("s2",), 2),
            ("y3", "output", ("s3",), 3),
        ],
    )


DCT2_GRAPH = dct2_graph()
DCT4_GRAPH = dct4_graph()


def _kernel(graph: FlowGraph, x, checked: bool) -> np.ndarray:
    arr = np.asarray(x)
    if not np.issubdtype(arr.dtype, np.integer):
        raise TypeError(f"kernel input must be integer, got dtype {arr.dtype}")
    if arr.shape[-1:] != (4,):
        raise ValueError(f"last axis must have length 4, got shape {arr.shape}")
    arr = arr.astype(np.int64)
    if checked and arr.size and (arr.min() < SAMPLE_MIN or arr.max() > SAMPLE_MAX):
        raise AccumulatorRangeError(
            f"checked mode requires samples in [{SAMPLE_MIN}, {SAMPLE_MAX}]"
        )
    return evaluate_graph(graph, arr)


def dct2_kernel(x, checked: bool = False) -> np.ndarray:
    """Apply the ternary DCT-II along the last axis of integer data.

    Equals ternary_matrix("ii") @ x for each length-4 vector, computed
    with six integer additions.  checked=True rejects samples outside
    the 16-bit range before evaluating.
    """
    return _kernel(DCT2_GRAPH, x, checked)


def dct4_kernel(x, checked: bool = False) -> np.ndarray:
    """Apply the ternary DCT-IV along the last axis of integer data.

    Equals ternary_matrix("iv") @ x for each length-4 vector, computed
    with eight integer additions.
    """
    return _kernel(DCT4_GRAPH, x, checked)


def kernel_graph(kind) -> FlowGraph:
    """Kernel flow graph for a transform kind ("ii" or "iv")."""
    from .dctcore import TransformKind

    return DCT2_GRAPH if TransformKind(kind) is TransformKind.DCT2 else DCT4_GRAPH


def _graph_to_dict(graph: FlowGraph) -> dict:
    return {
        "name": graph.name,
        "nodes": [
            {"name": n.name, "op": n.op, "args": list(n.args), "index": n.index}
            for n in graph.nodes
        ],
    }


def _dot_lines(graph: FlowGraph) -> list[str]:
    lines = [f'digraph "{graph.name}" {{', "  rankdir=LR;"]
    for node in graph.nodes:
        if node.op == "input":
            lines.append(f'  "{node.name}" [shape=plaintext, label="x{node.index}"];')
        elif node.op == "output":
            lines.append(f'  "{node.name}" [shape=plaintext, label="X{node.index}"];')
        elif node.op == "neg":
            lines.append(f'  "{node.name}" [shape=circle, label="-"];')
        else:
            sign = "+" if node.op == "add" else "-"
            lines.append(f'  "{node.name}" [shape=box, label="{sign}"];')
    for node in graph.nodes:
        if node.op in ("add", "output"):
            for ref in node.args:
                lines.append(f'  "{ref}" -> "{node.name}";')
        elif node.op == "sub":
            lines.append(f'  "{node.args[0]}" -> "{node.name}";')
            lines.append(f'  "{node.args[1]}" -> "{node.name}" [label="-"];')
        elif node.op == "neg":
            lines.append(f'  "{node.args[0]}" -> "{node.name}" [label="-"];')
    lines.append("}")
    return lines


def export_graph(graph: FlowGraph, format: str = "json") -> str:
    """Serialize a flow graph to "dot" or "json" text."""
    validate_graph(graph)
    if format == "json":
        return json.dumps(_graph_to_dict(graph), indent=2)
    if format == "dot":
        return "\n".join(_dot_lines(graph))
    raise ValueError(f"format must be one of {GRAPH_FORMATS}, got {format!r}")


def parse_graph_json(text: str) -> FlowGraph:
    """Rebuild a flow graph from export_graph(..., "json") output."""
    try:
        data = json.loads(text)
        nodes = tuple(
            GraphNode(
                name=str(n["name"]),
                op=str(n["op"]),
                args=tuple(str(a) for a in n.get("args", ())),
                index=n.get("index"),
            )
            for n in data["nodes"]
        )
        graph = FlowGraph(name=str(data["name"]), nodes=nodes)
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise InvalidGraphError(f"malformed graph JSON: {exc}") from exc
    validate_graph(graph)
    return graph
