import json
import logging
from typing import List, Optional, Sequence

from braids.braid_core import word_text
from braids.resolving_tree import TreeNode, iter_nodes, tree_depth
from braids.square_finder import SquareWitness, UnlinkResult
from invariants.skein_poly import HalfLaurent, to_text
from invariants.state_sum import ClosedBraidDiagram, KauffmanState

LOGGER = logging.getLogger(__name__)


def tree_to_dict(t: TreeNode) -> dict:
    return {
        "word": list(t.word.letters),
        "n": t.word.n,
        "p": t.word.p,
        "chi": t.chi,
        "crossing": t.crossing,
        "change": None if t.change is None else tree_to_dict(t.change),
        "resolve": None if t.resolve is None else tree_to_dict(t.resolve),
        "components": t.components,
    }


def tree_to_json(t: TreeNode, indent: Optional[int] = 2) -> str:
    return json.dumps({"depth": tree_depth(t), "tree": tree_to_dict(t)}, indent=indent)


def _node_label(t: TreeNode) -> str:
    text = f"[{word_text(t.word)}]\\nB_{t.word.n}[{t.word.p}] chi={t.chi}"
    if t.is_leaf:
        text += f"\\n{t.components} comp."
    return text


def tree_to_dot(t: TreeNode) -> str:
    """Graphviz digraph, solid edges to the crossing change, dashed edges to the resolution.

    Render with e.g. `dot -Tpng -O tree.gv`.
    """
    ids = {id(node): k for k, (node, _) in enumerate(iter_nodes(t))}
    lines = ["digraph resolving_tree {", "\tnode [fontname=monospace];"]
    for node, _ in iter_nodes(t):
        shape = "box" if node.is_leaf else "ellipse"
        lines.append(f'\t"{ids[id(node)]}" [label="{_node_label(node)}", shape={shape}];')
        if node.is_leaf:
            continue
        lines.append(f'\t"{ids[id(node)]}" -> "{ids[id(node.change)]}" [style=solid, label="change {node.crossing}"];')
        lines.append(f'\t"{ids[id(node)]}" -> "{ids[id(node.resolve)]}" [style=dashed, label="resolve {node.crossing}"];')
    lines.append("}")
    return "\n".join(lines)


def tree_to_text(t: TreeNode) -> str:
    lines = []
    for node, depth in iter_nodes(t):
        pad = "  " * depth
        if node.is_leaf:
            lines.append(f"{pad}[{word_text(node.word)}] in B_{node.word.n}[{node.word.p}]  leaf, {node.components} component(s)")
        else:
            lines.append(f"{pad}[{word_text(node.word)}] in B_{node.word.n}[{node.word.p}]  chi={node.chi} square at {node.crossing}")
    return "\n".join(lines)


def witness_to_dict(result: SquareWitness | UnlinkResult, with_trace: bool = False) -> dict:
    out = {"word": list(result.word.letters), "n": result.word.n, "p": result.word.p}
    if isinstance(result, SquareWitness):
        out.update({"position": result.position, "generator": result.generator})
    else:
        out.update({"unlink": True, "components": result.components})
    if with_trace:
        out["trace"] = [move.to_dict() for move in result.trace]
    return out


def witness_to_json(result: SquareWitness | UnlinkResult, with_trace: bool = False) -> str:
    return json.dumps(witness_to_dict(result, with_trace), indent=2)


def state_to_dict(state: KauffmanState) -> dict:
    return {"matching": state.matching(), "weight": state.weight_text}


def states_to_json(states: Sequence[KauffmanState], total: HalfLaurent, extremal: Sequence[KauffmanState] = ()) -> str:
    return json.dumps(
        {
            "states": [state_to_dict(s) for s in states],
            "extremal": [state_to_dict(s) for s in extremal],
            "count": len(states),
            "total": to_text(total),
        },
        indent=2,
    )


def states_to_dot(d: ClosedBraidDiagram, highlighted: Sequence[KauffmanState] = ()) -> str:
    """Bipartite crossing/region adjacency, corners labelled; highlighted matchings drawn bold."""
    colours = ["red", "blue", "darkgreen", "orange"]
    marked: List[tuple] = []
    for k, state in enumerate(highlighted):
        for c, corner in state.assignment:
            marked.append((c, corner, colours[k % len(colours)]))
    lines = ["graph kauffman_states {", "\trankdir=LR;"]
    for c in d.crossings:
        lines.append(f'\t"{c.name}" [shape=circle];')
    for r in d.regions:
        style = ", style=filled, fillcolor=lightgrey" if r in d.starred else ""
        lines.append(f'\t"{r.name}" [shape=box{style}];')
    for c in d.crossings:
        for corner in d.corners[c]:
            colour = next((col for mc, mcorner, col in marked if mc == c and mcorner == corner), None)
            attrs = f'label="{corner.label.text}"'
            if colour:
                attrs += f", color={colour}, penwidth=3"
            lines.append(f'\t"{c.name}" -- "{corner.region.name}" [{attrs}];')
    lines.append("}")
    return "\n".join(lines)
