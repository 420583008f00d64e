"""Admissible walks in graphs of overhangs, L_max and the structural checks on graphs."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

import networkx as nx

from .interpretations import z_min
from .language import FactorSet, factors_up_to
from .overhangs import Edge, OverhangGraph, build_graph
from .words import CapExceeded, D0LSystem

__all__ = [
    "AdmissibleWalk",
    "WalkAnalysis",
    "l_max",
    "verify_sandwich",
    "Violation",
    "forbidden_subgraphs",
    "Component",
    "components",
    "two_cycles",
]


@dataclass(frozen=True)
class AdmissibleWalk:
    edges: tuple[Edge, ...]

    @property
    def v_word(self) -> str:
        # first label components: the row carrying the start vertex as a prefix
        return "".join(e.label.u for e in self.edges)

    @property
    def u_word(self) -> str:
        return "".join(e.label.v for e in self.edges)

    @property
    def word_length(self) -> int:
        return len(self.v_word) - len(self.edges[0].source)

    @property
    def word(self) -> str:
        """The non-synchronized factor witnessed by the walk."""
        return self.v_word[len(self.edges[0].source):]

    def labels(self) -> list[str]:
        return [e.label.label() for e in self.edges]


@dataclass(frozen=True)
class WalkAnalysis:
    l_max: int
    witness: AdmissibleWalk | None
    exceeded_cap: bool
    max_image_len: int
    l_max_multi: int  # restricted to walks of at least two edges
    witness_multi: AdmissibleWalk | None = None


def l_max(sys: D0LSystem, g: OverhangGraph | None = None, cap: int | None = None,
          fs: FactorSet | None = None) -> WalkAnalysis:
    """Maximum word-length of an admissible walk, by depth-first search.

    A walk is extended edge by edge while the preimage letters of both label
    rows stay factors, so the two rows are interpretations of one factor.
    Walks of a single edge are included.  The search stops with
    ``exceeded_cap`` as soon as some walk has word-length above ``cap``.
    """
    m = sys.morphism
    if g is None:
        g = build_graph(m)
    if cap is None:
        from .interpretations import default_cap
        cap = default_cap(sys)
    M = m.max_image_len
    need = cap + 2 * M
    if fs is None or fs.max_len < need:
        fs = factors_up_to(sys, need)

    def admissible(word: str) -> bool:
        if len(word) > fs.max_len:
            raise CapExceeded(f"walk preimage of length {len(word)} beyond factor set")
        return word in fs.by_length[len(word)]

    out = g.out_edges()
    best = (0, None)
    best_multi = (0, None)
    exceeded = False

    for first in g.edges:
        top_l, bottom_l = first.label.u_letters, first.label.v_letters
        if not (admissible(top_l) and admissible(bottom_l)):
            continue
        offset = len(first.source)
        stack = [((first,), top_l, bottom_l, len(first.label.u))]
        while stack and not exceeded:
            path, top_l, bottom_l, top_len = stack.pop()
            length = top_len - offset
            if length > best[0]:
                best = (length, path)
            if len(path) >= 2 and length > best_multi[0]:
                best_multi = (length, path)
            if length > cap:
                exceeded = True
                break
            for e in out[path[-1].target]:
                t, b = top_l + e.label.u_letters, bottom_l + e.label.v_letters
                if admissible(t) and admissible(b):
                    stack.append((path + (e,), t, b, top_len + len(e.label.u)))
        if exceeded:
            break

    def walk(p):
        return AdmissibleWalk(p) if p else None

    return WalkAnalysis(best[0], walk(best[1]), exceeded, M, best_multi[0], walk(best_multi[1]))


def verify_sandwich(sys: D0LSystem, cap: int | None = None) -> bool:
    """Check L_max <= Z_min <= L_max + 2M - 3; requires both searches to stay under the cap."""
    z = z_min(sys, cap)
    if z.exceeded_cap:
        raise CapExceeded("z_min exceeded its cap: system not circular, sandwich undefined")
    w = l_max(sys, cap=cap)
    if w.exceeded_cap:
        raise CapExceeded("l_max exceeded its cap: system not circular, sandwich undefined")
    return w.l_max <= z.z_min <= w.l_max + 2 * w.max_image_len - 3


@dataclass(frozen=True)
class Violation:
    pattern: str  # "a", "b" or "c"
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]


def _label_key(e: Edge):
    return (e.label.u_letters, e.label.v_letters, e.label.overlap)


def forbidden_subgraphs(g: OverhangGraph) -> list[Violation]:
    """Find (a) two distinct loops on a vertex, (b) a two-vertex cycle with a loop on
    one of its vertices, (c) two loop-carrying vertices joined by an edge."""
    loops = g.loops()
    found = []
    for v in sorted(loops):
        distinct = {}
        for e in loops[v]:
            distinct.setdefault(_label_key(e), e)
        if len(distinct) >= 2:
            es = sorted(distinct.values())
            found.append(Violation("a", (v,), tuple(es[:2])))
    between = defaultdict(list)
    for e in g.edges:
        if e.source != e.target:
            between[(e.source, e.target)].append(e)
    for (s, t), fwd in sorted(between.items()):
        if s < t and (t, s) in between:
            back = between[(t, s)]
            for w in (s, t):
                if w in loops:
                    found.append(Violation("b", (s, t), (fwd[0], back[0], loops[w][0])))
                    break
        if s in loops and t in loops:
            found.append(Violation("c", (s, t), (loops[s][0], fwd[0], loops[t][0])))
    return found


def two_cycles(g: OverhangGraph) -> list[tuple[Edge, Edge]]:
    """Pairs of edges s1 -> s2 -> s1 with s1 != s2 (each unordered pair reported once)."""
    out = []
    for e in g.edges:
        if e.source < e.target:
            for f in g.edges:
                if f.source == e.target and f.target == e.source:
                    out.append((e, f))
    return out


@dataclass(frozen=True)
class Component:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    overlap: int | None = None  # shared |x| (uniform morphisms only)
    vertex_len: int | None = None


def components(g: OverhangGraph) -> list[Component]:
    """Weakly connected components; annotated with overlap and vertex length for uniform morphisms."""
    groups = [sorted(c) for c in nx.weakly_connected_components(g.digraph())]
    k = g.morphism.uniform_k if g.morphism is not None else None
    comps = []
    for verts in map(tuple, sorted(groups)):
        vs = set(verts)
        edges = tuple(e for e in g.edges if e.source in vs)
        overlap = vertex_len = None
        if k is not None:
            overlaps = {e.label.overlap for e in edges}
            lengths = {len(v) for v in verts}
            if len(overlaps) != 1 or len(lengths) != 1:
                raise AssertionError(
                    f"uniform morphism with mixed overlaps {overlaps} / vertex lengths {lengths}"
                )
            overlap, = overlaps
            vertex_len, = lengths
            if vertex_len != k - overlap:
                raise AssertionError("vertex length differs from k - overlap")
        comps.append(Component(verts, edges, overlap, vertex_len))
    return comps
