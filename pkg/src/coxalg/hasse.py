"""Hasse-Hilbert diagrams: the cover graph of the realized degrees, weighted by ``h_g``."""

import re
from dataclasses import dataclass

from .algebra import degree_sort_key
from .errors import SpecParseError
from .grading import cover_relations

__all__ = [
    "HasseHilbertDiagram",
    "build_diagram",
    "symmetry_check",
    "to_dot",
    "parse_dot",
    "adjacency_text",
]


@dataclass(frozen=True)
class HasseHilbertDiagram:
    nodes: tuple
    edges: tuple
    greatest: object = None
    preorder: bool = False

    @property
    def weights(self):
        return dict(self.nodes)

    def degrees(self):
        return [g for g, _ in self.nodes]


def build_diagram(support):
    """Diagram of an Artinian support; nodes in increasing certificate value."""
    support.require_artinian()
    ring = support.ring
    hilb = support.hilbert
    degrees = sorted(hilb, key=lambda g: degree_sort_key(ring, g))
    edges = cover_relations(degrees, ring.order, ring)
    pos = {g: i for i, g in enumerate(degrees)}
    edges.sort(key=lambda e: (pos[e[0]], pos[e[1]]))
    return HasseHilbertDiagram(tuple((g, hilb[g]) for g in degrees), tuple(edges),
                               support.greatest, ring.order.is_preorder_only(ring.group))


def symmetry_check(diagram, omega):
    """Whether ``g -> omega - g`` maps nodes to nodes and preserves weights."""
    w = diagram.weights
    return all(w.get(omega - g) == h for g, h in w.items())


def _label(g, h):
    return f"{h}\\n{g}"


def to_dot(diagram):
    """GraphViz DOT text; nodes ``n0, n1, ...`` in diagram order, edges in cover order."""
    index = {g: i for i, (g, _) in enumerate(diagram.nodes)}
    lines = ["digraph {"]
    for i, (g, h) in enumerate(diagram.nodes):
        lines.append(f'  "n{i}" [label="{_label(g, h)}"];')
    for a, b in diagram.edges:
        lines.append(f'  "n{index[a]}" -> "n{index[b]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


_NODE = re.compile(r'^\s*"n(\d+)"\s*\[label="(\d+)\\n([^"]*)"\];\s*$')
_EDGE = re.compile(r'^\s*"n(\d+)"\s*->\s*"n(\d+)";\s*$')


def parse_dot(text, group):
    """Read back the output of :func:`to_dot` as ``(nodes, edges)``."""
    nodes = {}
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.strip() in ("digraph {", "}", ""):
            continue
        m = _NODE.match(line)
        if m:
            nodes[int(m.group(1))] = (group.parse(m.group(3)), int(m.group(2)))
            continue
        m = _EDGE.match(line)
        if m:
            edges.append((int(m.group(1)), int(m.group(2))))
            continue
        raise SpecParseError(f"unrecognized DOT line {line!r}", f"line {lineno}")
    node_list = [nodes[i] for i in sorted(nodes)]
    edge_list = [(nodes[a][0], nodes[b][0]) for a, b in edges]
    return node_list, edge_list


def adjacency_text(diagram):
    """One line per node: ``(g) h=.. -> (h1) (h2)``."""
    succ = {g: [] for g, _ in diagram.nodes}
    for a, b in diagram.edges:
        succ[a].append(b)
    lines = []
    for g, h in diagram.nodes:
        targets = " ".join(str(t) for t in succ[g])
        lines.append(f"{g} h={h}" + (f" -> {targets}" if targets else ""))
    return "\n".join(lines) + "\n"
