"""Signed rotation systems: face tracing, Euler genus, sidedness, parity.

A dart is an edge together with the endpoint it leaves from.  Dart ``2*e``
leaves ``edges[e][0]`` and dart ``2*e + 1`` leaves ``edges[e][1]``, so the
reverse of dart ``d`` is ``d ^ 1``.

An :class:`EmbeddingScheme` lists, for each vertex, its incident edge indices
in cyclic order, plus a signature of +1/-1 per edge.  A -1 edge carries a
half-twist; a cycle is one-sided exactly when the product of signatures along
it is -1.
"""

from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .graph import Cycle, Graph, is_connected


class SchemeError(ValueError):
    """The scheme does not describe an embedding of the given graph."""


def dart(g: Graph, e: int, tail: int) -> int:
    return 2 * e if g.edges[e][0] == tail else 2 * e + 1


def dart_tail(g: Graph, d: int) -> int:
    return g.edges[d >> 1][d & 1]


def dart_head(g: Graph, d: int) -> int:
    return g.edges[d >> 1][1 - (d & 1)]


@dataclass(frozen=True)
class EmbeddingScheme:
    rotations: tuple[tuple[int, ...], ...]
    signature: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rotations", tuple(tuple(int(e) for e in r) for r in self.rotations))
        object.__setattr__(self, "signature", tuple(int(s) for s in self.signature))

    @classmethod
    def trivial(cls, g: Graph, signature: Optional[Sequence[int]] = None) -> "EmbeddingScheme":
        """Rotations in edge-index order; all-positive unless a signature is given."""
        rot = tuple(tuple(e for _, e in inc) for inc in g.incidence)
        sig = tuple(signature) if signature is not None else (1,) * g.m
        return cls(rot, sig)

    def validate(self, g: Graph) -> None:
        if len(self.rotations) != g.n:
            raise SchemeError(f"scheme has {len(self.rotations)} rotations for {g.n} vertices")
        if len(self.signature) != g.m:
            raise SchemeError(f"signature has {len(self.signature)} entries for {g.m} edges")
        for e, s in enumerate(self.signature):
            if s not in (1, -1):
                raise SchemeError(f"signature of edge {e} is {s}, expected 1 or -1")
        for v, rot in enumerate(self.rotations):
            expected = sorted(e for _, e in g.incidence[v])
            if sorted(rot) != expected:
                raise SchemeError(f"rotation at vertex {v} is {list(rot)}, incident edges are {expected}")

    def to_json(self) -> dict:
        return {"rotations": [list(r) for r in self.rotations], "signature": list(self.signature)}

    @classmethod
    def from_json(cls, data: dict) -> "EmbeddingScheme":
        try:
            return cls(tuple(tuple(r) for r in data["rotations"]), tuple(data["signature"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemeError(f"malformed scheme JSON: {exc}") from None


def parse_scheme(text: str) -> EmbeddingScheme:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemeError(f"scheme JSON line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise SchemeError("scheme JSON must be an object")
    return EmbeddingScheme.from_json(data)


def rotation_successors(g: Graph, rotations: Sequence[Sequence[int]]) -> tuple[list[int], list[int]]:
    """Dart successor / predecessor arrays around each vertex."""
    nxt = [0] * (2 * g.m)
    prv = [0] * (2 * g.m)
    for v, rot in enumerate(rotations):
        darts = [dart(g, e, v) for e in rot]
        k = len(darts)
        for i, d in enumerate(darts):
            nxt[d] = darts[(i + 1) % k]
            prv[d] = darts[i - 1]
    return nxt, prv


@dataclass(frozen=True)
class FaceWalk:
    darts: tuple[int, ...]
    vertices: tuple[int, ...]
    support: frozenset[int]
    repeated_vertex: bool

    @property
    def size(self) -> int:
        return len(self.darts)

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(d >> 1 for d in self.darts)

    @property
    def is_cycle(self) -> bool:
        return not self.repeated_vertex

    def to_json(self) -> dict:
        return {"size": self.size, "edges": list(self.edges), "is_cycle": self.is_cycle}


def _orbit(start: int, nxt: list[int], prv: list[int], sig: Sequence[int]) -> list[int]:
    # state = 2 * dart + (0 for flag +1, 1 for flag -1)
    states = []
    s = start
    while True:
        states.append(s)
        d, neg = s >> 1, s & 1
        if sig[d >> 1] < 0:
            neg ^= 1
        r = d ^ 1
        s = 2 * (prv[r] if neg else nxt[r]) + neg
        if s == start:
            return states


def _mirror(state: int, sig: Sequence[int]) -> int:
    d, neg = state >> 1, state & 1
    flipped = neg ^ 1
    if sig[d >> 1] < 0:
        flipped ^= 1
    return 2 * (d ^ 1) + flipped


def trace_faces(g: Graph, s: EmbeddingScheme) -> list[FaceWalk]:
    """All faces of the embedded graph, one walk per face, in canonical order.

    Every (dart, flag) state belongs to exactly one orbit and every face is
    traced twice, once per boundary direction.  The walk kept for a face is
    the orbit holding the smaller minimum state of the mirror pair.
    """
    s.validate(g)
    nxt, prv = rotation_successors(g, s.rotations)
    seen = bytearray(4 * g.m)
    faces = []
    for start in range(4 * g.m):
        if seen[start]:
            continue
        orbit = _orbit(start, nxt, prv, s.signature)
        mirror = _mirror(orbit[-1], s.signature)
        mirrored = _orbit(mirror, nxt, prv, s.signature)
        if set(mirrored) != {_mirror(x, s.signature) for x in orbit} or set(mirrored) & set(orbit):
            raise AssertionError("face trace produced an orbit without a distinct mirror")
        for x in orbit:
            seen[x] = 1
        for x in mirrored:
            seen[x] = 1
        darts = tuple(x >> 1 for x in orbit)
        verts = tuple(dart_tail(g, d) for d in darts)
        faces.append(FaceWalk(darts, verts, frozenset(d >> 1 for d in darts), len(set(verts)) != len(verts)))
    return faces


def count_faces(g: Graph, nxt: list[int], prv: list[int], sig: Sequence[int]) -> int:
    """Face count without building walks (used by the search inner loop)."""
    if not g.m:
        return 1
    seen = bytearray(4 * g.m)
    orbits = 0
    for start in range(4 * g.m):
        if seen[start]:
            continue
        orbits += 1
        st = start
        while True:
            seen[st] = 1
            d, neg = st >> 1, st & 1
            if sig[d >> 1] < 0:
                neg ^= 1
            r = d ^ 1
            st = 2 * (prv[r] if neg else nxt[r]) + neg
            if st == start:
                break
    return orbits // 2


# ---------------------------------------------------------------------------
# signatures and potentials


def signed_potential(g: Graph, values: Sequence[int]) -> tuple[list[int], Optional[int], list[Optional[int]]]:
    """Try to write ``values[uv] = tau[u] * tau[v]`` over a BFS spanning forest.

    Returns ``(tau, failing_edge, parent_edge)``; ``failing_edge`` is the
    first non-tree edge (by index) whose value disagrees, or ``None``.
    """
    tau = [0] * g.n
    parent_edge: list[Optional[int]] = [None] * g.n
    for root in range(g.n):
        if tau[root]:
            continue
        tau[root] = 1
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w, e in g.incidence[v]:
                if not tau[w]:
                    tau[w] = tau[v] * values[e]
                    parent_edge[w] = e
                    queue.append(w)
    tree = {e for e in parent_edge if e is not None}
    for e, (u, v) in enumerate(g.edges):
        if e not in tree and tau[u] * tau[v] != values[e]:
            return tau, e, parent_edge
    return tau, None, parent_edge


def fundamental_cycle(g: Graph, e: int, parent_edge: Sequence[Optional[int]]) -> Cycle:
    u, v = g.edges[e]

    def up(x: int) -> list[int]:
        path = [x]
        while parent_edge[path[-1]] is not None:
            path.append(g.other_end(parent_edge[path[-1]], path[-1]))
        return path

    pu, pv = up(u), up(v)
    common = set(pu) & set(pv)
    cu = pu[: next(i for i, x in enumerate(pu) if x in common) + 1]
    cv = pv[: next(i for i, x in enumerate(pv) if x in common) + 1]
    return Cycle.from_vertices(g, cu + cv[-2::-1])


def is_orientable(g: Graph, s: EmbeddingScheme) -> bool:
    """True iff every cycle has signature product +1."""
    _, bad, _ = signed_potential(g, s.signature)
    return bad is None


def cycle_sign(s: EmbeddingScheme, c: Cycle) -> int:
    """Product of signatures along ``c``: -1 one-sided, +1 two-sided."""
    sign = 1
    for e in c.edges:
        if not 0 <= e < len(s.signature):
            raise SchemeError(f"cycle edge {e} is not an edge of the scheme's graph")
        sign *= s.signature[e]
    return sign


@dataclass(frozen=True)
class ParityCertificate:
    """Either a vertex potential proving the parity condition or a violating cycle.

    With a potential ``tau``, ``-signature[uv] == tau[u] * tau[v]`` for every
    edge, so each cycle has sign ``(-1) ** length``.
    """

    potential: Optional[tuple[int, ...]] = None
    violation: Optional[Cycle] = None
    violation_sign: Optional[int] = None

    @property
    def holds(self) -> bool:
        return self.potential is not None

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {
            "parity": self.holds,
            "potential": None if self.potential is None else list(self.potential),
            "violation": None if self.violation is None else {
                **self.violation.to_json(), "sign": self.violation_sign, "length": self.violation.length,
            },
        }


def is_parity_embedding(g: Graph, s: EmbeddingScheme) -> ParityCertificate:
    if not is_connected(g):
        raise SchemeError("parity check needs a connected graph; split it into components first")
    s.validate(g)
    derived = [-x for x in s.signature]
    tau, bad, parent_edge = signed_potential(g, derived)
    if bad is None:
        return ParityCertificate(potential=tuple(tau))
    cyc = fundamental_cycle(g, bad, parent_edge)
    return ParityCertificate(violation=cyc, violation_sign=cycle_sign(s, cyc))


def parity_signature_ok(g: Graph, signature: Sequence[int]) -> bool:
    _, bad, _ = signed_potential(g, [-x for x in signature])
    return bad is None


# ---------------------------------------------------------------------------
# summaries and face relations


@dataclass(frozen=True)
class EmbeddingSummary:
    f: int
    euler_genus: int
    orientable: bool
    histogram: tuple[tuple[int, int], ...]

    @property
    def is_sphere(self) -> bool:
        return self.euler_genus == 0

    @property
    def is_projective_plane(self) -> bool:
        return self.euler_genus == 1 and not self.orientable

    def to_json(self) -> dict:
        return {
            "f": self.f,
            "euler_genus": self.euler_genus,
            "orientable": self.orientable,
            "face_sizes": {str(k): v for k, v in self.histogram},
        }


def summarize(g: Graph, s: EmbeddingScheme, faces: Optional[list[FaceWalk]] = None) -> EmbeddingSummary:
    if not is_connected(g):
        raise SchemeError("Euler genus is only defined here for connected graphs")
    if faces is None:
        faces = trace_faces(g, s)
    # an isolated vertex is a sphere with one face and no walk to trace
    f = len(faces) if g.m else 1
    hist = tuple(sorted(Counter(w.size for w in faces).items()))
    return EmbeddingSummary(f, 2 - g.n + g.m - f, is_orientable(g, s), hist)


def face_report(g: Graph, s: EmbeddingScheme) -> dict:
    faces = trace_faces(g, s)
    summary = summarize(g, s, faces)
    return {"faces": [w.to_json() for w in faces], **summary.to_json()}


def faces_even(faces: Sequence[FaceWalk]) -> bool:
    return all(w.size % 2 == 0 for w in faces)


def facial_walk_is_cycle(w: FaceWalk) -> bool:
    return not w.repeated_vertex


def face_adjacency(faces: Sequence[FaceWalk]) -> list[tuple[int, int, int]]:
    """``(i, j, edge)`` with ``i <= j`` for every edge; ``i == j`` is a self-adjacency."""
    sides: dict[int, list[int]] = {}
    for i, w in enumerate(faces):
        for e in w.edges:
            sides.setdefault(e, []).append(i)
    out = []
    for e in sorted(sides):
        fs = sides[e]
        if len(fs) != 2:
            raise AssertionError(f"edge {e} traversed {len(fs)} times across the face set")
        a, b = sorted(fs)
        out.append((a, b, e))
    return out


def switch_vertex(s: EmbeddingScheme, v: int) -> EmbeddingScheme:
    """Reverse the rotation at ``v`` and flip the signs of its incident edges."""
    if not 0 <= v < len(s.rotations):
        raise SchemeError(f"vertex {v} out of range")
    incident = set(s.rotations[v])
    rot = list(s.rotations)
    rot[v] = tuple(reversed(s.rotations[v]))
    sig = tuple(-x if e in incident else x for e, x in enumerate(s.signature))
    return EmbeddingScheme(tuple(rot), sig)
