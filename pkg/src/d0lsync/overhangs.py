"""Overhangs of a morphism, the graph of overhangs, and code tests on the image set."""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product

import networkx as nx

from .words import Morphism

__all__ = [
    "Overhang",
    "Edge",
    "OverhangGraph",
    "enumerate_overhangs",
    "check_overhang",
    "brute_force_overhangs",
    "build_graph",
    "has_cycle",
    "cycle_through",
    "simple_cycles",
    "is_code",
    "is_circular_code",
    "sardinas_patterson",
    "export_dot",
    "overhangs_json",
]


@dataclass(frozen=True, order=True)
class Overhang:
    """Triplet (u-row, v-row, |x|) kept at letter level.

    ``u_letters``/``v_letters`` are the preimage letters of the two rows;
    ``u``/``v`` their images.  The common factor x is the last ``overlap``
    letters of ``u`` and the first ``overlap`` letters of ``v``.
    """

    u: str
    v: str
    overlap: int
    u_letters: str
    v_letters: str

    @property
    def common(self) -> str:
        return self.v[: self.overlap]

    @property
    def left(self) -> str:
        return self.u[: len(self.u) - self.overlap]

    @property
    def right(self) -> str:
        return self.v[self.overlap:]

    def words(self) -> tuple[str, str, int]:
        return (self.u, self.v, self.overlap)

    def label(self) -> str:
        return f"{self.u} / {self.v} / {self.overlap}"


def _make(m: Morphism, u_letters: str, v_letters: str, overlap: int) -> Overhang:
    return Overhang(m(u_letters), m(v_letters), overlap, u_letters, v_letters)


def enumerate_overhangs(m: Morphism) -> list[Overhang]:
    """Every overhang of ``m``, sorted, without duplicates.

    For each first u-block phi(c) and start offset ``sigma`` of the common
    factor inside it, v-blocks are laid from ``sigma`` matching phi(c);
    blocks ending before |phi(c)| are v_1..v_{n-1}, the first block reaching
    |phi(c)| is v_n.  The u-row is then tiled inside v_n and every u-row end
    gives one overhang.  Only the trivial coincidence of one block with
    itself is excluded.
    """
    images = m.images
    found: set[Overhang] = set()

    for c in m.alphabet:
        top = images[c]
        width = len(top)
        for sigma in range(width):
            stack = [(sigma, "")]
            while stack:
                pos, inner = stack.pop()
                for d in m.alphabet:
                    block = images[d]
                    end = pos + len(block)
                    if block[: width - pos] != top[pos:end]:
                        continue
                    if end < width:
                        stack.append((end, inner + d))
                        continue
                    v_letters = inner + d
                    # tile u_2.. u_m over v_n beyond |phi(c)|
                    tails = [(width, c)]
                    while tails:
                        e, u_letters = tails.pop()
                        if not (sigma == 0 and e == end and u_letters == v_letters):
                            found.add(_make(m, u_letters, v_letters, e - sigma))
                        for f in m.alphabet:
                            w = images[f]
                            if e + len(w) <= end and block[e - pos: e - pos + len(w)] == w:
                                tails.append((e + len(w), u_letters + f))
    return sorted(found)


def check_overhang(m: Morphism, u_letters: str, v_letters: str, overlap: int) -> bool:
    """Direct test of the four overhang conditions on explicit block sequences."""
    if not u_letters or not v_letters or overlap < 1:
        return False
    U, V = m(u_letters), m(v_letters)
    u_tail = m(u_letters[1:])
    v_head = m(v_letters[:-1])
    if overlap > len(U) or overlap > len(V):
        return False
    x = U[len(U) - overlap:]
    # (i) suffix of U, not of u_2..u_m
    if u_tail.endswith(x):
        return False
    # (ii) prefix of V, not of v_1..v_{n-1}
    if not V.startswith(x) or v_head.startswith(x):
        return False
    # (iii) not both rows equal to x (same block sequence = trivial self-overlap)
    if x == U and x == V and u_letters == v_letters:
        return False
    # (iv)
    return len(v_head) < overlap - len(u_tail)


def brute_force_overhangs(m: Morphism) -> list[Overhang]:
    """Exhaustive search over block sequences with |U| < 3M and |V| < 2M (test oracle)."""
    M = m.max_image_len

    def sequences(limit):
        out = []
        frontier = [""]
        while frontier:
            nxt = []
            for s in frontier:
                for c in m.alphabet:
                    t = s + c
                    if len(m(t)) < limit:
                        out.append(t)
                        nxt.append(t)
            frontier = nxt
        return out

    found = set()
    for us in sequences(3 * M):
        for vs in sequences(2 * M):
            for ov in range(1, min(len(m(us)), len(m(vs))) + 1):
                if check_overhang(m, us, vs, ov):
                    found.add(_make(m, us, vs, ov))
    return sorted(found)


@dataclass(frozen=True, order=True)
class Edge:
    source: str
    target: str
    label: Overhang


@dataclass(frozen=True)
class OverhangGraph:
    vertices: frozenset[str]
    edges: tuple[Edge, ...]
    morphism: Morphism | None = field(default=None, compare=False)

    def successors(self) -> dict[str, list[str]]:
        succ = defaultdict(list)
        for e in self.edges:
            succ[e.source].append(e.target)
        return succ

    def out_edges(self) -> dict[str, list[Edge]]:
        out = defaultdict(list)
        for e in self.edges:
            out[e.source].append(e)
        return out

    def loops(self) -> dict[str, list[Edge]]:
        loops = defaultdict(list)
        for e in self.edges:
            if e.source == e.target:
                loops[e.source].append(e)
        return loops

    def is_empty(self) -> bool:
        return not self.edges

    def digraph(self) -> nx.DiGraph:
        """Underlying simple digraph (parallel edges collapsed)."""
        d = nx.DiGraph()
        d.add_nodes_from(sorted(self.vertices))
        d.add_edges_from((e.source, e.target) for e in self.edges)
        return d


def build_graph(m: Morphism) -> OverhangGraph:
    edges = tuple(Edge(o.left, o.right, o) for o in enumerate_overhangs(m))
    vertices = frozenset(v for e in edges for v in (e.source, e.target))
    return OverhangGraph(vertices, tuple(sorted(edges)), m)


def has_cycle(g: OverhangGraph) -> bool:
    return not nx.is_directed_acyclic_graph(g.digraph())


def cycle_through(g: OverhangGraph, vertex: str) -> bool:
    if vertex not in g.vertices:
        raise KeyError(f"vertex {vertex!r} not in graph")
    d = g.digraph()
    return any(t == vertex or nx.has_path(d, t, vertex) for t in d.successors(vertex))


def simple_cycles(g: OverhangGraph) -> list[tuple[Edge, ...]]:
    """All elementary cycles as edge sequences (parallel edges give separate cycles)."""
    between = defaultdict(list)
    for e in g.edges:
        between[(e.source, e.target)].append(e)
    cycles = []
    for nodes in nx.simple_cycles(g.digraph()):
        i = nodes.index(min(nodes))
        nodes = nodes[i:] + nodes[:i]
        hops = [between[(s, t)] for s, t in zip(nodes, nodes[1:] + nodes[:1])]
        cycles.extend(product(*hops))
    return sorted(cycles)


def is_code(m: Morphism) -> bool:
    """True iff phi is injective on words, i.e. no cycle of the graph passes through the empty vertex."""
    g = build_graph(m)
    return "" not in g.vertices or not cycle_through(g, "")


def is_circular_code(m: Morphism) -> bool:
    return not has_cycle(build_graph(m))


def sardinas_patterson(words) -> bool:
    """Unique decipherability of a list of code words (repeated words are ambiguous).

    Accepts a :class:`Morphism` (its letter images) or any iterable of words.
    """
    if isinstance(words, Morphism):
        words = [words.images[c] for c in words.alphabet]
    words = list(words)
    if len(set(words)) != len(words):
        return False
    code = set(words)

    def quotients(left, right):
        # {w : l w = r for l in left, r in right, w non-empty}
        res = set()
        for a in left:
            for b in right:
                if b.startswith(a) and len(b) > len(a):
                    res.add(b[len(a):])
        return res

    current = quotients(code, code)
    seen = set()
    while current:
        if current & code:
            return False
        key = frozenset(current)
        if key in seen:
            return True
        seen.add(key)
        current = quotients(code, current) | quotients(current, code)
    return True


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(g: OverhangGraph) -> str:
    if not g.vertices:
        return "digraph overhangs { }"
    lines = ["digraph overhangs {"]
    ids = {v: f"n{i}" for i, v in enumerate(sorted(g.vertices, key=lambda s: (len(s), s)))}
    for v, ident in ids.items():
        lines.append(f'  {ident} [label="{_dot_escape(v) if v else "ε"}"];')
    for e in g.edges:
        lines.append(
            f'  {ids[e.source]} -> {ids[e.target]} [label="{_dot_escape(e.label.label())}"];'
        )
    lines.append("}")
    return "\n".join(lines)


def overhang_record(o: Overhang) -> dict:
    return {
        "u": o.u,
        "v": o.v,
        "overlap": o.overlap,
        "left": o.left,
        "right": o.right,
        "u_letters": o.u_letters,
        "v_letters": o.v_letters,
    }


def overhangs_json(overhangs) -> str:
    return json.dumps([overhang_record(o) for o in overhangs], indent=2, sort_keys=True)
