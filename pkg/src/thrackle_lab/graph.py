"""Simple graphs, cycles, blocks and the forbidden-configuration predicates.

Vertices are dense integers ``0..n-1``.  Edges keep the index they were given
at construction time; embedding schemes and edge signatures are keyed by those
indices, so a :class:`Graph` never reorders its edge list.
"""

from __future__ import annotations

import json
import math
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

import networkx as nx


class GraphFormatError(ValueError):
    """Raised for malformed graph input; the message names the location."""


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        if self.n < 0:
            raise GraphFormatError(f"negative vertex count {self.n}")
        seen: dict[frozenset, int] = {}
        for idx, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphFormatError(f"edge {idx} ({u}, {v}): vertex index out of range 0..{self.n - 1}")
            if u == v:
                raise GraphFormatError(f"edge {idx} ({u}, {v}): loop rejected")
            key = frozenset((u, v))
            if key in seen:
                raise GraphFormatError(f"edge {idx} ({u}, {v}): parallel to edge {seen[key]}")
            seen[key] = idx

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], n: Optional[int] = None) -> "Graph":
        edges = [tuple(e) for e in edges]
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        return cls(n, tuple(edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex, the ``(neighbour, edge index)`` pairs in edge order."""
        inc: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for idx, (u, v) in enumerate(self.edges):
            inc[u].append((v, idx))
            inc[v].append((u, idx))
        return tuple(tuple(x) for x in inc)

    @cached_property
    def _edge_lookup(self) -> dict[tuple[int, int], int]:
        out = {}
        for idx, (u, v) in enumerate(self.edges):
            out[(u, v)] = idx
            out[(v, u)] = idx
        return out

    def edge_index(self, u: int, v: int) -> int:
        try:
            return self._edge_lookup[(u, v)]
        except KeyError:
            raise KeyError(f"no edge between {u} and {v}") from None

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._edge_lookup

    def neighbors(self, v: int) -> list[int]:
        return [w for w, _ in self.incidence[v]]

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def degrees(self) -> list[int]:
        return [len(x) for x in self.incidence]

    def other_end(self, e: int, v: int) -> int:
        u, w = self.edges[e]
        return w if v == u else u

    def without_edges(self, drop: Iterable[int]) -> "Graph":
        drop = set(drop)
        return Graph(self.n, tuple(e for i, e in enumerate(self.edges) if i not in drop))

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(range(self.n))
        for idx, (u, v) in enumerate(self.edges):
            G.add_edge(u, v, index=idx)
        return G

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [[min(u, v), max(u, v)] for u, v in self.edges]}


# ---------------------------------------------------------------------------
# parsing

_HEADER = re.compile(r"#n\s+(\d+)\s*$")


def parse_graph(text: str) -> Graph:
    """Parse Graph JSON (``{"n": .., "edges": [[u, v], ...]}``) or edge-list text.

    Edge-list text has one ``u v`` pair per line; blank lines are skipped and
    an optional ``#n <k>`` header fixes the vertex count (otherwise it is the
    largest index plus one).
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"JSON line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        if not isinstance(data, dict) or "edges" not in data:
            raise GraphFormatError("JSON graph needs an 'edges' field")
        edges = []
        for pos, pair in enumerate(data["edges"]):
            if (not isinstance(pair, list) or len(pair) != 2
                    or not all(isinstance(x, int) and not isinstance(x, bool) for x in pair)):
                raise GraphFormatError(f"edges[{pos}]: expected a pair of integers, got {pair!r}")
            edges.append(tuple(pair))
        n = data.get("n")
        if n is not None and (not isinstance(n, int) or isinstance(n, bool)):
            raise GraphFormatError(f"'n' must be an integer, got {n!r}")
        return Graph.from_edges(edges, n)

    n = None
    edges = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            match = _HEADER.match(line)
            if match is None:
                raise GraphFormatError(f"line {lineno}: unrecognised header {line!r}")
            n = int(match.group(1))
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {line!r}")
        u, v = int(parts[0]), int(parts[1])
        if u == v:
            raise GraphFormatError(f"line {lineno}: loop rejected at vertex {u}")
        edges.append((u, v))
    try:
        return Graph.from_edges(edges, n)
    except GraphFormatError as exc:
        raise GraphFormatError(f"edge list: {exc}") from None


def parse_inline_edges(spec: str) -> Graph:
    """Parse the compact ``"0-1,1-2,2-0"`` form."""
    edges = []
    for pos, token in enumerate(t for t in spec.split(",") if t.strip()):
        a, sep, b = token.strip().partition("-")
        if not sep or not a.isdigit() or not b.isdigit():
            raise GraphFormatError(f"inline edge {pos}: expected 'u-v', got {token!r}")
        edges.append((int(a), int(b)))
    return Graph.from_edges(edges)


# ---------------------------------------------------------------------------
# cycles


@dataclass(frozen=True)
class Cycle:
    """A simple cycle in canonical orientation.

    ``vertices`` starts at the minimum vertex and continues towards its
    smaller cycle-neighbour; ``edges[i]`` joins ``vertices[i]`` and
    ``vertices[i + 1]`` (cyclically).
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...] = field(compare=False)

    @property
    def length(self) -> int:
        return len(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    @classmethod
    def from_vertices(cls, g: Graph, seq: Sequence[int]) -> "Cycle":
        seq = list(seq)
        if len(seq) > 1 and seq[0] == seq[-1]:
            seq.pop()
        if len(seq) < 3 or len(set(seq)) != len(seq):
            raise ValueError(f"not a simple cycle: {seq}")
        i = seq.index(min(seq))
        seq = seq[i:] + seq[:i]
        if seq[-1] < seq[1]:
            seq = [seq[0]] + seq[:0:-1]
        pairs = list(zip(seq, seq[1:] + seq[:1]))
        missing = [p for p in pairs if not g.has_edge(*p)]
        if missing:
            raise ValueError(f"not a cycle of the graph: no edge {missing[0]}")
        return cls(tuple(seq), tuple(g.edge_index(a, b) for a, b in pairs))

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": list(self.edges)}


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w, _ in g.incidence[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def _bfs_tree(g: Graph, root: int, dist: list, parent: list) -> list[int]:
    order = [root]
    dist[root] = 0
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w, _ in g.incidence[v]:
            if dist[w] is None:
                dist[w] = dist[v] + 1
                parent[w] = v
                order.append(w)
                queue.append(w)
    return order


def _tree_path(parent: list, u: int, v: int, dist: list) -> tuple[list[int], list[int]]:
    a, b = [u], [v]
    while dist[a[-1]] > dist[b[-1]]:
        a.append(parent[a[-1]])
    while dist[b[-1]] > dist[a[-1]]:
        b.append(parent[b[-1]])
    while a[-1] != b[-1]:
        a.append(parent[a[-1]])
        b.append(parent[b[-1]])
    return a, b


def is_bipartite(g: Graph) -> tuple[bool, Optional[Cycle]]:
    """Return ``(True, None)`` or ``(False, odd_cycle)``."""
    dist: list = [None] * g.n
    parent: list = [None] * g.n
    for root in range(g.n):
        if dist[root] is not None:
            continue
        _bfs_tree(g, root, dist, parent)
    for u, v in g.edges:
        if dist[u] % 2 == dist[v] % 2:
            a, b = _tree_path(parent, u, v, dist)
            return False, Cycle.from_vertices(g, a + b[-2::-1])
    return True, None


def girth(g: Graph) -> float:
    """Length of a shortest cycle, ``math.inf`` for forests."""
    best = math.inf
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            if 2 * dist[v] >= best:
                break
            for w, _ in g.incidence[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif w != parent[v]:
                    best = min(best, dist[v] + dist[w] + 1)
    return best


def iter_cycles(g: Graph, max_len: int) -> Iterator[Cycle]:
    """Yield every simple cycle of length <= ``max_len`` once, canonically.

    Each cycle is grown from its minimum vertex through larger vertices only,
    and kept in the orientation whose second vertex is the smaller neighbour.
    """
    adj = [sorted(w for w, _ in inc) for inc in g.incidence]
    for s in range(g.n):
        path = [s]
        on_path = {s}

        def grow(v: int) -> Iterator[Cycle]:
            for w in adj[v]:
                if w == s:
                    if len(path) >= 3 and path[1] < path[-1]:
                        yield Cycle.from_vertices(g, path)
                elif w > s and w not in on_path and len(path) < max_len:
                    path.append(w)
                    on_path.add(w)
                    yield from grow(w)
                    path.pop()
                    on_path.discard(w)

        yield from grow(s)


def enumerate_cycles_up_to(g: Graph, max_len: int) -> list[Cycle]:
    if max_len < 3:
        raise ValueError("max_len must be at least 3")
    return sorted(iter_cycles(g, max_len), key=lambda c: (c.length, c.vertices))


def cycles_of_length(g: Graph, length: int) -> list[Cycle]:
    return [c for c in enumerate_cycles_up_to(g, length) if c.length == length]


# ---------------------------------------------------------------------------
# blocks


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[tuple[int, ...], ...]
    block_vertices: tuple[tuple[int, ...], ...]
    cut_vertices: tuple[int, ...]
    n: int

    @property
    def is_biconnected(self) -> bool:
        return len(self.blocks) == 1 and self.n >= 3 and len(self.block_vertices[0]) == self.n

    def to_json(self) -> dict:
        return {
            "blocks": [list(b) for b in self.blocks],
            "block_vertices": [list(b) for b in self.block_vertices],
            "cut_vertices": list(self.cut_vertices),
            "biconnected": self.is_biconnected,
        }


def blocks(g: Graph) -> BlockDecomposition:
    G = g.to_networkx()
    found = []
    for comp in nx.biconnected_component_edges(G):
        idx = tuple(sorted(G.edges[u, v]["index"] for u, v in comp))
        verts = tuple(sorted({x for e in idx for x in g.edges[e]}))
        found.append((idx, verts))
    found.sort()
    return BlockDecomposition(
        blocks=tuple(b for b, _ in found),
        block_vertices=tuple(v for _, v in found),
        cut_vertices=tuple(sorted(nx.articulation_points(G))),
        n=g.n,
    )


# ---------------------------------------------------------------------------
# forbidden configurations

AT_MOST_ONE_TRIANGLE = "at-most-one-triangle"
NO_FOUR_CYCLE = "no-four-cycle"
DISJOINT_SIX_CYCLES = "disjoint-six-cycles"


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    holds: bool
    witness: Optional[tuple[Cycle, ...]] = None

    def to_json(self) -> dict:
        return {
            "axiom": self.axiom,
            "holds": self.holds,
            "witness": None if self.witness is None else [c.to_json() for c in self.witness],
        }


def _no_four_cycle(g: Graph) -> AxiomReport:
    fours = cycles_of_length(g, 4)
    if fours:
        return AxiomReport(NO_FOUR_CYCLE, False, (fours[0],))
    return AxiomReport(NO_FOUR_CYCLE, True)


def check_thrackle_axioms(g: Graph) -> list[AxiomReport]:
    triangles = cycles_of_length(g, 3)
    if len(triangles) > 1:
        tri = AxiomReport(AT_MOST_ONE_TRIANGLE, False, tuple(triangles[:2]))
    else:
        tri = AxiomReport(AT_MOST_ONE_TRIANGLE, True)

    sixes = cycles_of_length(g, 6)
    six = AxiomReport(DISJOINT_SIX_CYCLES, True)
    for a, b in combinations(sixes, 2):
        if set(a.vertices) & set(b.vertices):
            six = AxiomReport(DISJOINT_SIX_CYCLES, False, (a, b))
            break
    return [tri, _no_four_cycle(g), six]


def check_six_cycle_conflicts(g: Graph) -> list[tuple[Cycle, Cycle]]:
    """Pairs of distinct 6-cycles that share a vertex or are joined by an edge."""
    sixes = cycles_of_length(g, 6)
    conflicts = []
    for a, b in combinations(sixes, 2):
        va, vb = set(a.vertices), set(b.vertices)
        if va & vb or any(g.has_edge(x, y) for x in va for y in vb):
            conflicts.append((a, b))
    return conflicts


def check_quasithrackle_axioms(g: Graph) -> AxiomReport:
    return _no_four_cycle(g)
