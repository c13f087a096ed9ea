"""Exhaustive search for plane embeddings and projective parity embeddings.

The space is every signed rotation system of the graph.  With pruning on
(the default), two symmetries are factored out:

* switching: the signatures of a BFS spanning tree are pinned to +1, so
  only non-tree edges carry free signs;
* mirror image: at one vertex of maximum degree only one of each pair of
  mutually reversed rotations is tried.

Signatures form the outer loop (binary counter over the free edges) because
the parity test is cheap and depends on the signature alone.  Rotations vary
in mixed-radix order over the vertices of degree >= 3, the pinned vertex
being the most significant digit.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import islice, permutations, product
from typing import Iterator, Optional

from .embedding import (
    EmbeddingScheme,
    count_faces,
    dart,
    is_parity_embedding,
    parity_signature_ok,
    signed_potential,
    summarize,
)
from .graph import Graph, is_bipartite, is_connected

DEFAULT_BUDGET = 10**8


class Verdict(str, enum.Enum):
    FOUND = "found"
    EXHAUSTED = "exhausted-not-found"
    BUDGET = "budget-exceeded"


@dataclass(frozen=True)
class SearchConstraints:
    target_genus: int
    require_nonorientable: bool = False
    require_parity: bool = False
    budget: int = DEFAULT_BUDGET

    def __post_init__(self) -> None:
        if self.target_genus not in (0, 1):
            raise ValueError("target Euler genus must be 0 or 1")
        if self.budget <= 0:
            raise ValueError("search budget must be positive")


PROJECTIVE_PARITY = SearchConstraints(1, require_nonorientable=True, require_parity=True)
PLANE = SearchConstraints(0)


@dataclass(frozen=True)
class SearchOutcome:
    verdict: Verdict
    witness: Optional[EmbeddingScheme]
    visited: int
    signatures_checked: int

    @property
    def found(self) -> bool:
        return self.verdict is Verdict.FOUND

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "witness": None if self.witness is None else self.witness.to_json(),
            "visited": self.visited,
            "signatures_checked": self.signatures_checked,
        }


@dataclass(frozen=True)
class _Space:
    sig_edges: tuple[int, ...]
    digits: tuple[int, ...]  # vertices whose rotation varies
    options: tuple[tuple[tuple[int, ...], ...], ...]
    fixed: tuple[tuple[int, ...], ...]  # base rotation for every vertex


def _space(g: Graph, pruned: bool) -> _Space:
    incident = [tuple(sorted(e for _, e in inc)) for inc in g.incidence]
    if pruned:
        _, _, parent_edge = signed_potential(g, [1] * g.m)
        tree = {e for e in parent_edge if e is not None}
        sig_edges = tuple(e for e in range(g.m) if e not in tree)
    else:
        sig_edges = tuple(range(g.m))

    varying = [v for v in range(g.n) if len(incident[v]) >= 3]
    pinned = None
    if pruned and varying:
        top = max(len(incident[v]) for v in varying)
        pinned = min(v for v in varying if len(incident[v]) == top)
        varying = [pinned] + [v for v in varying if v != pinned]

    options = []
    for v in varying:
        first, rest = incident[v][0], incident[v][1:]
        opts = [(first,) + p for p in permutations(rest)]
        if v == pinned:
            opts = [r for r in opts if r[1] < r[-1]]
        options.append(tuple(opts))
    return _Space(sig_edges, tuple(varying), tuple(options), tuple(incident))


def _signature(g: Graph, space: _Space, mask: int) -> list[int]:
    sig = [1] * g.m
    for j, e in enumerate(space.sig_edges):
        if mask >> j & 1:
            sig[e] = -1
    return sig


def _signature_allowed(g: Graph, sig: list[int], c: Optional[SearchConstraints]) -> bool:
    if c is None:
        return True
    if c.target_genus == 0 and any(x < 0 for x in sig):
        return False
    if c.require_parity and not parity_signature_ok(g, sig):
        return False
    if c.require_nonorientable:
        _, bad, _ = signed_potential(g, sig)
        if bad is None:
            return False
    return True


def _signature_count(space: _Space, c: Optional[SearchConstraints]) -> int:
    if c is not None and c.target_genus == 0:
        return 1
    return 1 << len(space.sig_edges)


def _scheme(space: _Space, choice: tuple[int, ...], sig: list[int]) -> EmbeddingScheme:
    rot = list(space.fixed)
    for v, opts, j in zip(space.digits, space.options, choice):
        rot[v] = opts[j]
    return EmbeddingScheme(tuple(rot), tuple(sig))


def space_size(g: Graph, pruned: bool = True) -> int:
    """Number of scheme classes, ignoring any constraint filter."""
    space = _space(g, pruned)
    total = 1 << len(space.sig_edges)
    for opts in space.options:
        total *= len(opts)
    return total


def enumerate_schemes(g: Graph, constraints: Optional[SearchConstraints] = None,
                      pruned: bool = True) -> Iterator[EmbeddingScheme]:
    """Yield the scheme classes in search order.

    With ``constraints`` given, signatures that cannot meet them (a negative
    edge when the target is the sphere, parity failures, orientable
    signatures when non-orientability is required) are skipped.
    """
    if not is_connected(g):
        raise ValueError("scheme enumeration needs a connected graph")
    space = _space(g, pruned)
    for mask in range(_signature_count(space, constraints)):
        sig = _signature(g, space, mask)
        if not _signature_allowed(g, sig, constraints):
            continue
        for choice in product(*(range(len(o)) for o in space.options)):
            yield _scheme(space, choice, sig)


def _run_units(g: Graph, c: SearchConstraints, pruned: bool, jobs: int, worker: int):
    """Search the work units ``worker, worker + jobs, ...``.

    A unit is one signature together with one rotation of the most
    significant digit.  Returns ``(position, scheme, visited, checked,
    budget_position)`` where ``position`` is the global index of the unit
    holding the first hit.
    """
    space = _space(g, pruned)
    target_f = 2 - g.n + g.m - c.target_genus
    lead = range(len(space.options[0])) if space.options else range(1)
    rest = space.options[1:] if space.options else ()

    def units():
        for mask in range(_signature_count(space, c)):
            for j in lead:
                yield mask, j

    nxt = [0] * (2 * g.m)
    prv = [0] * (2 * g.m)
    per_vertex = []
    for v in range(g.n):
        per_vertex.append([_links(g, v, r) for r in (space.options[space.digits.index(v)]
                                                     if v in space.digits else (space.fixed[v],))])
    for v in range(g.n):
        _write(nxt, prv, per_vertex[v][0])

    visited = checked = 0
    last_mask, last_ok = None, False
    for pos, (mask, j) in islice(enumerate(units()), worker, None, jobs):
        if mask != last_mask:
            sig = _signature(g, space, mask)
            last_mask, last_ok = mask, _signature_allowed(g, sig, c)
            checked += 1
        if not last_ok:
            continue
        if space.options:
            _write(nxt, prv, per_vertex[space.digits[0]][j])
        previous = None
        for tail in product(*(range(len(o)) for o in rest)):
            if visited >= c.budget:
                return None, None, visited, checked, pos
            for idx, t in enumerate(tail):
                if previous is None or previous[idx] != t:
                    _write(nxt, prv, per_vertex[space.digits[idx + 1]][t])
            previous = tail
            visited += 1
            if count_faces(g, nxt, prv, sig) == target_f:
                choice = (j,) + tail if space.options else ()
                return pos, _scheme(space, choice, sig), visited, checked, None
    return None, None, visited, checked, None


def _links(g: Graph, v: int, rot: tuple[int, ...]) -> list[tuple[int, int, int]]:
    darts = [dart(g, e, v) for e in rot]
    k = len(darts)
    return [(d, darts[(i + 1) % k], darts[i - 1]) for i, d in enumerate(darts)]


def _write(nxt: list[int], prv: list[int], links: list[tuple[int, int, int]]) -> None:
    for d, a, b in links:
        nxt[d] = a
        prv[d] = b


def _verify_witness(g: Graph, s: EmbeddingScheme, c: SearchConstraints) -> None:
    summary = summarize(g, s)
    ok = summary.euler_genus == c.target_genus
    if c.require_nonorientable:
        ok = ok and not summary.orientable
    if c.require_parity:
        ok = ok and is_parity_embedding(g, s).holds
    if not ok:
        raise AssertionError(f"search witness failed re-verification: {summary}")


def search(g: Graph, constraints: SearchConstraints, pruned: bool = True, jobs: int = 1) -> SearchOutcome:
    if not is_connected(g):
        raise ValueError("embedding search needs a connected graph")
    if jobs <= 1:
        results = [_run_units(g, constraints, pruned, 1, 0)]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run_units, g, constraints, pruned, jobs, w) for w in range(jobs)]
            results = [f.result() for f in futures]

    visited = sum(r[2] for r in results)
    checked = sum(r[3] for r in results)
    hits = sorted((r[0], i) for i, r in enumerate(results) if r[0] is not None)
    stalls = [r[4] for r in results if r[4] is not None]
    if hits and not any(p < hits[0][0] for p in stalls):
        witness = results[hits[0][1]][1]
        _verify_witness(g, witness, constraints)
        return SearchOutcome(Verdict.FOUND, witness, visited, checked)
    if stalls:
        return SearchOutcome(Verdict.BUDGET, None, visited, checked)
    return SearchOutcome(Verdict.EXHAUSTED, None, visited, checked)


def find_parity_embedding_projective(g: Graph, budget: int = DEFAULT_BUDGET, pruned: bool = True,
                                     jobs: int = 1) -> SearchOutcome:
    if is_bipartite(g)[0]:
        raise ValueError("bipartite graph: use find_plane_embedding")
    c = SearchConstraints(1, require_nonorientable=True, require_parity=True, budget=budget)
    return search(g, c, pruned, jobs)


def find_plane_embedding(g: Graph, budget: int = DEFAULT_BUDGET, pruned: bool = True,
                         jobs: int = 1) -> SearchOutcome:
    if not is_bipartite(g)[0]:
        raise ValueError("non-bipartite graph: use find_parity_embedding_projective")
    return search(g, SearchConstraints(0, budget=budget), pruned, jobs)


@dataclass(frozen=True)
class ThrackleDecision:
    """``answer`` is None when the search ran out of budget."""

    answer: Optional[bool]
    branch: str
    outcome: SearchOutcome

    def to_json(self) -> dict:
        return {"generalized_thrackle": self.answer, "branch": self.branch, **self.outcome.to_json()}


def is_generalized_thrackle(g: Graph, budget: int = DEFAULT_BUDGET, pruned: bool = True,
                            jobs: int = 1) -> ThrackleDecision:
    """Decide via plane embeddability (bipartite) or a projective parity embedding."""
    if not is_connected(g):
        raise ValueError("generalized-thrackle decision needs a connected graph")
    if is_bipartite(g)[0]:
        branch, outcome = "plane", find_plane_embedding(g, budget, pruned, jobs)
    else:
        branch, outcome = "projective", find_parity_embedding_projective(g, budget, pruned, jobs)
    answer = None if outcome.verdict is Verdict.BUDGET else outcome.found
    return ThrackleDecision(answer, branch, outcome)
