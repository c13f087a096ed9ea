"""The extremal families G(k) and H(k), plus a projective parity embedding of H(k).

H(k) layout
-----------
Two paths ``P = p_1 .. p_6k`` and ``Q = q_1 .. q_6k`` run left to right, P
above Q.  Between them sit rungs ``p_i q_i`` (i = 0 mod 3) and ladders
``p_i p_i' p_i'' q_i`` (i = 1 mod 3), so the strip is a planar disk whose
interior faces alternate 8, 6, 8, ..., 6, 8.  For i = 2 mod 3 a chord leaves
``p_i`` upwards, passes through the crosscap and reaches ``q_(6k+1-i)`` from
below.  The index reversal is forced by the antipodal identification, and
``6k+1-i`` (not ``6k-i``) is the choice that gives every q-vertex exactly one
attachment: the chord targets are precisely the q-indices congruent to 2.

Vertex numbering: ``p_i -> i-1``, ``q_i -> 6k+i-1``, then the two inner
vertices of each ladder in increasing i.  Edge order: P path, Q path, then
the attachments in increasing i (a ladder contributes three edges).

The chords form 2k-1 one-sided 8-faces and one 10-face inside the Moebius
band, so the embedding has 2k-1 six-faces, 4k-1 eight-faces and one
ten-face.  The graph contains exactly two 5-cycles (through the two middle
chords); they are one-sided and non-facial.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Literal

from .embedding import EmbeddingScheme, faces_even, is_parity_embedding, summarize, trace_faces
from .graph import Graph, check_six_cycle_conflicts, check_thrackle_axioms, cycles_of_length


class ConstructionError(RuntimeError):
    """A generated object failed its own verification."""


@dataclass(frozen=True)
class ConstructionSpec:
    family: Literal["Gk", "Hk"]
    k: int

    def __post_init__(self) -> None:
        if self.family not in ("Gk", "Hk"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.k < 1:
            raise ValueError("k must be at least 1")


def gen_gk(k: int) -> Graph:
    """k edge-disjoint triangles glued at the hub vertex 0."""
    if k < 1:
        raise ValueError("G(k) needs k >= 1")
    edges = []
    for t in range(k):
        a, b = 2 * t + 1, 2 * t + 2
        edges += [(0, a), (0, b), (a, b)]
    return Graph(2 * k + 1, tuple(edges))


@dataclass(frozen=True)
class HkLabels:
    k: int

    @property
    def length(self) -> int:
        return 6 * self.k

    def p(self, i: int) -> int:
        return i - 1

    def q(self, i: int) -> int:
        return self.length + i - 1

    def ladder(self, i: int) -> tuple[int, int]:
        t = (i - 1) // 3
        base = 2 * self.length + 2 * t
        return base, base + 1

    def chord_target(self, i: int) -> int:
        return self.length + 1 - i


def _hk_graph(k: int) -> Graph:
    lab = HkLabels(k)
    N = lab.length
    edges = [(lab.p(i), lab.p(i + 1)) for i in range(1, N)]
    edges += [(lab.q(i), lab.q(i + 1)) for i in range(1, N)]
    for i in range(1, N + 1):
        if i % 3 == 1:
            a, b = lab.ladder(i)
            edges += [(lab.p(i), a), (a, b), (b, lab.q(i))]
        elif i % 3 == 0:
            edges.append((lab.p(i), lab.q(i)))
        else:
            edges.append((lab.p(i), lab.q(lab.chord_target(i))))
    return Graph(16 * k, tuple(edges))


def _hk_self_check(g: Graph, k: int) -> None:
    degs = Counter(g.degrees())
    problems = []
    if g.n != 16 * k:
        problems.append(f"{g.n} vertices, expected {16 * k}")
    if g.m != 22 * k - 2:
        problems.append(f"{g.m} edges, expected {22 * k - 2}")
    if degs[3] != 12 * k - 4 or degs[2] != 4 * k + 4 or degs[3] + degs[2] != g.n:
        problems.append(f"degree counts {dict(degs)}")
    if check_six_cycle_conflicts(g):
        problems.append("two 6-cycles share a vertex or are joined by an edge")
    if not all(r.holds for r in check_thrackle_axioms(g)):
        problems.append("thrackle axioms violated")
    if problems:
        raise ConstructionError(f"H({k}) self-check failed: " + "; ".join(problems))


def gen_hk(k: int, verify: bool = True) -> Graph:
    if k < 1:
        raise ValueError("H(k) needs k >= 1")
    g = _hk_graph(k)
    if verify:
        _hk_self_check(g, k)
    return g


def gen_hk_embedding(k: int, verify: bool = True) -> EmbeddingScheme:
    """Rotation system read off the disk drawing (counter-clockwise E, N, W, S)."""
    g = gen_hk(k, verify=verify)
    lab = HkLabels(k)
    N = lab.length

    def e(u: int, v: int) -> int:
        return g.edge_index(u, v)

    def attach(i: int) -> int:
        if i % 3 == 1:
            return e(lab.p(i), lab.ladder(i)[0])
        if i % 3 == 0:
            return e(lab.p(i), lab.q(i))
        return e(lab.p(i), lab.q(lab.chord_target(i)))

    def attach_q(j: int) -> int:
        if j % 3 == 1:
            return e(lab.ladder(j)[1], lab.q(j))
        if j % 3 == 0:
            return e(lab.p(j), lab.q(j))
        return e(lab.p(lab.chord_target(j)), lab.q(j))

    rotations: list[tuple[int, ...]] = [()] * g.n
    for i in range(1, N + 1):
        east = [e(lab.p(i), lab.p(i + 1))] if i < N else []
        west = [e(lab.p(i), lab.p(i - 1))] if i > 1 else []
        if i % 3 == 2:
            rotations[lab.p(i)] = tuple(east + [attach(i)] + west)
        else:
            rotations[lab.p(i)] = tuple(east + west + [attach(i)])

        east = [e(lab.q(i), lab.q(i + 1))] if i < N else []
        west = [e(lab.q(i), lab.q(i - 1))] if i > 1 else []
        if i % 3 == 2:
            rotations[lab.q(i)] = tuple(east + west + [attach_q(i)])
        else:
            rotations[lab.q(i)] = tuple(east + [attach_q(i)] + west)
    for v in range(2 * N, g.n):
        rotations[v] = tuple(x for _, x in g.incidence[v])

    signature = [1] * g.m
    for i in range(2, N + 1, 3):
        signature[attach(i)] = -1
    scheme = EmbeddingScheme(tuple(rotations), tuple(signature))
    if verify:
        _hk_embedding_check(g, scheme, k)
    return scheme


def _hk_embedding_check(g: Graph, s: EmbeddingScheme, k: int) -> None:
    faces = trace_faces(g, s)
    summary = summarize(g, s, faces)
    problems = []
    if not is_parity_embedding(g, s):
        problems.append("not a parity embedding")
    if summary.euler_genus != 1 or summary.orientable:
        problems.append(f"surface has Euler genus {summary.euler_genus}, orientable={summary.orientable}")
    if not faces_even(faces):
        problems.append("odd face")
    facial = {frozenset(w.support) for w in faces if w.size == 6 and w.is_cycle}
    for c in cycles_of_length(g, 6):
        if frozenset(c.edges) not in facial:
            problems.append(f"6-cycle {c.vertices} is not facial")
    if problems:
        raise ConstructionError(f"H({k}) embedding check failed: " + "; ".join(problems))
