"""Exact discharging on embedded graphs and the edge-bound algebra.

Every face starts with its size as charge.  Charge then moves between faces
by the rules of a :class:`RuleSet`; the total stays ``2e`` throughout.  If every
face finishes with at least ``c``, then ``2e >= c f``, and Euler's formula
turns that into an edge bound (see :func:`bound_from_min_charge`).

All arithmetic uses :class:`fractions.Fraction`.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional, Sequence

from .embedding import (
    EmbeddingScheme,
    FaceWalk,
    face_adjacency,
    faces_even,
    is_parity_embedding,
    summarize,
    trace_faces,
)
from .graph import (
    Graph,
    check_six_cycle_conflicts,
    cycles_of_length,
    enumerate_cycles_up_to,
    is_bipartite,
    is_connected,
)

Mode = Literal["projective", "plane"]

# 1.3984 and 1.3847 as printed, compared exactly
THRACKLE_DECIMAL = Fraction(13984, 10000)
REMARK2_DECIMAL = Fraction(13847, 10000)


# ---------------------------------------------------------------------------
# bound algebra


@dataclass(frozen=True)
class BoundForm:
    """``e <= coefficient * (n - offset)``."""

    coefficient: Fraction
    offset: int
    mode: Mode
    min_charge: Fraction

    def evaluate(self, n: int) -> Fraction:
        return self.coefficient * (n - self.offset)

    def __str__(self) -> str:
        return f"e <= {self.coefficient} * (n - {self.offset})"

    def to_json(self) -> dict:
        return {
            "coefficient": rational_json(self.coefficient),
            "offset": self.offset,
            "mode": self.mode,
            "min_charge": rational_json(self.min_charge),
            "form": str(self),
        }


def bound_from_min_charge(c, mode: Mode = "projective") -> BoundForm:
    """Edge bound implied by ``2e >= c f``.

    Projective plane: ``f >= e + 1 - n`` gives ``e <= c (n - 1) / (c - 2)``.
    Plane: ``f = e + 2 - n`` gives ``e <= c (n - 2) / (c - 2)``.
    """
    c = Fraction(c)
    if c <= 2:
        raise ValueError(f"minimum charge {c} must exceed 2")
    if mode == "projective":
        offset = 1
    elif mode == "plane":
        offset = 2
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return BoundForm(c / (c - 2), offset, mode, c)


def thrackle_theorem_bound(n: int) -> Fraction:
    """Triangle-free bound plus one for the removed triangle edge."""
    if n <= 3:
        raise ValueError("the thrackle bound is stated for n > 3")
    bound = bound_from_min_charge(THRACKLE.claimed_min).evaluate(n) + 1
    if not bound < THRACKLE_DECIMAL * n:
        raise AssertionError(f"composed bound {bound} is not below 1.3984 * {n}")
    return bound


def quasithrackle_theorem_bound(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return (3 * (n - 1)) // 2


def compose_block_bound(block_sizes: Sequence[tuple[int, Fraction]], n: Optional[int] = None) -> Fraction:
    """Sum per-block bounds ``alpha_i (n_i - 1)``.

    Blocks of a connected graph satisfy ``sum (n_i - 1) = n - 1``; pass ``n``
    to have that checked.
    """
    total = Fraction(0)
    span = 0
    for n_i, alpha in block_sizes:
        if n_i < 2:
            raise ValueError(f"block with {n_i} vertices")
        total += Fraction(alpha) * (n_i - 1)
        span += n_i - 1
    if n is not None and span != n - 1:
        raise ValueError(f"block sizes give sum(n_i - 1) = {span}, expected n - 1 = {n - 1}")
    return total


def graph_block_bound(g: Graph, alpha) -> Fraction:
    from .graph import blocks

    dec = blocks(g)
    return compose_block_bound([(len(v), Fraction(alpha)) for v in dec.block_vertices], g.n)


def rational_json(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator, "str": str(x)}


# ---------------------------------------------------------------------------
# rule sets


@dataclass(frozen=True)
class Step:
    """One discharging step.

    kinds:
      ``bad-edge``   every 8+-face sends ``amount`` through each bad edge to the 6-face across it
      ``neighbour``  every 8+-face whose charge is >= ``threshold`` sends ``amount`` to each
                     neighbouring 8+-face (``per="neighbour"``) or through each shared edge
                     (``per="edge"``)
      ``to-six``     every face sends ``amount`` to each distinct neighbouring 6-face
    """

    id: str
    kind: Literal["bad-edge", "neighbour", "to-six"]
    amount: Fraction
    threshold: Optional[Fraction] = None
    per: Literal["neighbour", "edge"] = "neighbour"


@dataclass(frozen=True)
class RuleSet:
    name: str
    claimed_min: Fraction
    steps: tuple[Step, ...]
    axioms: tuple[str, ...]
    step1_floor: Optional[Fraction] = None
    conditional: Optional[str] = None

    def __post_init__(self) -> None:
        if self.claimed_min <= 2:
            raise ValueError("claimed minimum charge must exceed 2")


THRACKLE_AXIOMS = (
    "connected",
    "triangle-free",
    "embedding-type",
    "no-four-cycle",
    "disjoint-six-cycles",
    "small-faces-are-cycles",
    "faces-even",
)

THRACKLE = RuleSet(
    name="thrackle",
    claimed_min=Fraction(337, 48),
    steps=(
        Step("1", "bad-edge", Fraction(1, 6)),
        Step("2", "neighbour", Fraction(1, 24), threshold=Fraction(43, 6)),
        Step("3", "bad-edge", Fraction(1, 288)),
    ),
    axioms=THRACKLE_AXIOMS,
    step1_floor=Fraction(7),
)

THRACKLE_PER_EDGE = RuleSet(
    name="thrackle-per-edge",
    claimed_min=Fraction(337, 48),
    steps=(
        Step("1", "bad-edge", Fraction(1, 6)),
        Step("2", "neighbour", Fraction(1, 24), threshold=Fraction(43, 6), per="edge"),
        Step("3", "bad-edge", Fraction(1, 288)),
    ),
    axioms=THRACKLE_AXIOMS,
    step1_floor=Fraction(7),
)

REMARK2 = RuleSet(
    name="remark2",
    claimed_min=Fraction(36, 5),
    steps=(Step("r2", "to-six", Fraction(1, 5)),),
    axioms=THRACKLE_AXIOMS,
    conditional="valid only if the thrackle conjecture holds for n <= 11",
)

QUASI_MIN = Fraction(6)

RULESETS = {r.name: r for r in (THRACKLE, THRACKLE_PER_EDGE, REMARK2)}


# ---------------------------------------------------------------------------
# ledger and report


@dataclass(frozen=True)
class Transaction:
    step: str
    source: int
    target: int
    edge: int
    amount: Fraction

    def to_json(self) -> dict:
        return {"step": self.step, "from": self.source, "to": self.target, "edge": self.edge,
                "amount": rational_json(self.amount)}


@dataclass
class ChargeLedger:
    charges: list[Fraction]
    log: list[Transaction] = field(default_factory=list)

    @property
    def total(self) -> Fraction:
        return sum(self.charges, Fraction(0))

    def transfer(self, step: str, source: int, target: int, edge: int, amount: Fraction) -> None:
        if amount <= 0:
            raise ValueError("transfers must be positive")
        self.charges[source] -= amount
        self.charges[target] += amount
        self.log.append(Transaction(step, source, target, edge, amount))


@dataclass(frozen=True)
class StepRecord:
    step: str
    charges: tuple[Fraction, ...]
    transactions: tuple[Transaction, ...]
    total: Fraction

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "charges": [rational_json(c) for c in self.charges],
            "transactions": [t.to_json() for t in self.transactions],
            "total": rational_json(self.total),
        }


@dataclass(frozen=True)
class Violation:
    axiom: str
    detail: str
    face: Optional[int] = None

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "detail": self.detail, "face": self.face}


@dataclass(frozen=True)
class Assertion:
    name: str
    holds: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "holds": self.holds, "detail": self.detail}


@dataclass(frozen=True)
class DischargeReport:
    ruleset: str
    mode: Mode
    n: int
    e: int
    face_sizes: tuple[int, ...]
    bad_edges: frozenset[int]
    steps: tuple[StepRecord, ...]
    min_final_charge: Fraction
    violations: tuple[Violation, ...]
    assertions: tuple[Assertion, ...]
    bound: BoundForm
    observed_bound: Optional[BoundForm]
    notes: tuple[str, ...] = ()

    @property
    def census(self) -> dict[int, int]:
        return dict(sorted(Counter(self.face_sizes).items()))

    @property
    def final_charges(self) -> tuple[Fraction, ...]:
        return self.steps[-1].charges

    @property
    def ok(self) -> bool:
        return not self.violations and all(a.holds for a in self.assertions)

    def to_json(self) -> dict:
        return {
            "ruleset": self.ruleset,
            "mode": self.mode,
            "n": self.n,
            "e": self.e,
            "census": {str(k): v for k, v in self.census.items()},
            "bad_edges": sorted(self.bad_edges),
            "steps": [s.to_json() for s in self.steps],
            "min_final_charge": rational_json(self.min_final_charge),
            "violations": [v.to_json() for v in self.violations],
            "assertions": [a.to_json() for a in self.assertions],
            "bound": self.bound.to_json(),
            "observed_bound": None if self.observed_bound is None else self.observed_bound.to_json(),
            "notes": list(self.notes),
            "ok": self.ok,
        }


# ---------------------------------------------------------------------------
# engine


def initial_charges(faces: Sequence[FaceWalk]) -> ChargeLedger:
    return ChargeLedger([Fraction(w.size) for w in faces])


def classify_bad_edges(faces: Sequence[FaceWalk]) -> set[int]:
    return {e for w in faces if w.size == 6 for e in w.support}


def _embedding_violations(g: Graph, s: EmbeddingScheme, faces, bipartite: bool) -> tuple[list[Violation], Mode]:
    summary = summarize(g, s, faces)
    out = []
    if bipartite:
        mode: Mode = "plane"
        if summary.euler_genus != 0:
            out.append(Violation("embedding-type", f"bipartite graph needs a plane embedding, got Euler genus {summary.euler_genus}"))
    else:
        mode = "projective"
        cert = is_parity_embedding(g, s)
        if not cert:
            c = cert.violation
            out.append(Violation("embedding-type", f"not a parity embedding: cycle {list(c.vertices)} has sign {cert.violation_sign}"))
        if summary.euler_genus != 1 or summary.orientable:
            out.append(Violation("embedding-type", f"expected the projective plane, got Euler genus {summary.euler_genus}"))
    return out, mode


def _thrackle_axiom_violations(g: Graph, faces: Sequence[FaceWalk]) -> list[Violation]:
    out = []
    short = enumerate_cycles_up_to(g, 6) if g.n >= 3 else []
    tri = [c for c in short if c.length == 3]
    if tri:
        out.append(Violation("triangle-free", f"triangle {list(tri[0].vertices)}"))
    four = [c for c in short if c.length == 4]
    if four:
        out.append(Violation("no-four-cycle", f"4-cycle {list(four[0].vertices)}"))
    sixes = [c for c in short if c.length == 6]
    for i, a in enumerate(sixes):
        for b in sixes[i + 1:]:
            if set(a.vertices) & set(b.vertices):
                out.append(Violation("disjoint-six-cycles", f"6-cycles {list(a.vertices)} and {list(b.vertices)} share a vertex"))
                break
        else:
            continue
        break
    for i, w in enumerate(faces):
        if w.size <= 8 and w.repeated_vertex:
            out.append(Violation("small-faces-are-cycles", f"{w.size}-face walk repeats a vertex", face=i))
    if not faces_even(faces):
        odd = next(i for i, w in enumerate(faces) if w.size % 2)
        out.append(Violation("faces-even", f"face of odd size {faces[odd].size}", face=odd))
    return out


def _apply_step(step: Step, ledger: ChargeLedger, faces, adjacency) -> None:
    sizes = [w.size for w in faces]
    before = list(ledger.charges)
    if step.kind == "bad-edge":
        for a, b, e in adjacency:
            if a == b:
                continue
            for src, dst in ((a, b), (b, a)):
                if sizes[src] >= 8 and sizes[dst] == 6:
                    ledger.transfer(step.id, src, dst, e, step.amount)
    elif step.kind == "neighbour":
        shared: dict[tuple[int, int], list[int]] = defaultdict(list)
        for a, b, e in adjacency:
            if a != b and sizes[a] >= 8 and sizes[b] >= 8:
                shared[(a, b)].append(e)
                shared[(b, a)].append(e)
        for (src, dst), edges in sorted(shared.items()):
            if before[src] < step.threshold:
                continue
            through = edges if step.per == "edge" else edges[:1]
            for e in through:
                ledger.transfer(step.id, src, dst, e, step.amount)
    elif step.kind == "to-six":
        shared = defaultdict(list)
        for a, b, e in adjacency:
            if a != b:
                shared[(a, b)].append(e)
                shared[(b, a)].append(e)
        for (src, dst), edges in sorted(shared.items()):
            if sizes[dst] == 6:
                ledger.transfer(step.id, src, dst, edges[0], step.amount)
    else:
        raise ValueError(f"unknown step kind {step.kind!r}")


def run_discharge(g: Graph, s: EmbeddingScheme, rules: RuleSet = THRACKLE) -> DischargeReport:
    """Replay a discharging rule set on one embedded graph."""
    if not is_connected(g):
        raise ValueError("discharging needs a connected graph; decompose into blocks first")
    faces = trace_faces(g, s)
    adjacency = face_adjacency(faces)
    bipartite, _ = is_bipartite(g)
    violations, mode = _embedding_violations(g, s, faces, bipartite)
    violations += _thrackle_axiom_violations(g, faces)

    notes = []
    exempt = g.n == 12 and g.m == 14
    if exempt:
        notes.append("12 vertices and 14 edges: the adjacent 8+-face claim is exempt, min-charge assertion skipped")
    if rules.conditional:
        notes.append(f"conditional rule set: {rules.conditional}")

    sizes = [w.size for w in faces]
    for a, b, e in adjacency:
        if sizes[a] == 6 and sizes[b] == 6:
            violations.append(Violation("disjoint-six-cycles", f"edge {e} has 6-faces on both sides; discharging aborted", face=a))
            break
    aborted = any("discharging aborted" in v.detail for v in violations)

    ledger = initial_charges(faces)
    records = [StepRecord("0", tuple(ledger.charges), (), ledger.total)]
    assertions = []
    if not aborted:
        for step in rules.steps:
            start = len(ledger.log)
            _apply_step(step, ledger, faces, adjacency)
            records.append(StepRecord(step.id, tuple(ledger.charges), tuple(ledger.log[start:]), ledger.total))

    two_e = Fraction(2 * g.m)
    assertions.append(Assertion("conservation", all(r.total == two_e for r in records),
                                f"total charge {two_e} after every step"))
    if not aborted and rules.step1_floor is not None and len(records) > 1:
        after1 = records[1].charges
        big = [i for i, d in enumerate(sizes) if d >= 9]
        assertions.append(Assertion(
            "nine-plus-faces-after-step-1",
            all(after1[i] >= sizes[i] - Fraction(sizes[i], 6) >= Fraction(15, 2) for i in big),
            "every face of size d >= 9 keeps at least d - d/6 >= 15/2"))
        if not violations and not exempt:
            low = min(after1, default=Fraction(0))
            assertions.append(Assertion("charge-at-least-7-after-step-1", low >= rules.step1_floor,
                                        f"minimum after step 1 is {low}"))

    final = records[-1].charges
    min_final = min(final, default=Fraction(0))
    if not violations and not exempt:
        assertions.append(Assertion("min-final-charge", min_final >= rules.claimed_min,
                                    f"minimum final charge {min_final} vs claimed {rules.claimed_min}"))

    return DischargeReport(
        ruleset=rules.name,
        mode=mode,
        n=g.n,
        e=g.m,
        face_sizes=tuple(sizes),
        bad_edges=frozenset(classify_bad_edges(faces)),
        steps=tuple(records),
        min_final_charge=min_final,
        violations=tuple(violations),
        assertions=tuple(assertions),
        bound=bound_from_min_charge(rules.claimed_min, mode),
        observed_bound=bound_from_min_charge(min_final, mode) if min_final > 2 else None,
        notes=tuple(notes),
    )


def run_thrackle_discharge(g: Graph, s: EmbeddingScheme) -> DischargeReport:
    return run_discharge(g, s, THRACKLE)


def run_quasithrackle_check(g: Graph, s: EmbeddingScheme) -> DischargeReport:
    """Face-size check behind the quasi-thrackle bound: every face has size >= 6."""
    if not is_connected(g):
        raise ValueError("the face-size check needs a connected graph")
    faces = trace_faces(g, s)
    bipartite, _ = is_bipartite(g)
    violations, mode = _embedding_violations(g, s, faces, bipartite)
    for i, w in enumerate(faces):
        if w.size < 6:
            violations.append(Violation("faces-at-least-6", f"{w.size}-face {list(w.vertices)}", face=i))
    if mode == "projective" and not faces_even(faces):
        odd = next(i for i, w in enumerate(faces) if w.size % 2)
        violations.append(Violation("faces-even", f"face of odd size {faces[odd].size}", face=odd))

    ledger = initial_charges(faces)
    total = ledger.total
    min_charge = min(ledger.charges, default=Fraction(0))
    notes = []
    if mode == "plane":
        notes.append("plane branch: 2e >= 6f with e + 2 = n + f gives e <= (3/2)(n - 2); "
                     "the printed form reads (n - 6)")
    assertions = [Assertion("conservation", total == 2 * g.m, f"total charge {total}")]
    if not violations:
        assertions.append(Assertion("min-face-size", min_charge >= QUASI_MIN, f"smallest face {min_charge}"))
    return DischargeReport(
        ruleset="quasi-thrackle",
        mode=mode,
        n=g.n,
        e=g.m,
        face_sizes=tuple(w.size for w in faces),
        bad_edges=frozenset(classify_bad_edges(faces)),
        steps=(StepRecord("0", tuple(ledger.charges), (), total),),
        min_final_charge=min_charge,
        violations=tuple(violations),
        assertions=tuple(assertions),
        bound=bound_from_min_charge(QUASI_MIN, mode),
        observed_bound=bound_from_min_charge(min_charge, mode) if min_charge > 2 else None,
        notes=tuple(notes),
    )
