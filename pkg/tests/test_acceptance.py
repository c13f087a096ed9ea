"""Acceptance gate: one check per criterion, each printing a PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) for the summary alone, or
through pytest, where each criterion is a test.
"""

import random
import sys
import time
from collections import Counter
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import connected_graphs  # noqa: E402
from zoo import K4_PLANAR, complete, cycle, k33, one_sided_c5, planar, random_connected_graph, random_scheme  # noqa: E402

from thrackle_lab.constructions import gen_gk, gen_hk, gen_hk_embedding  # noqa: E402
from thrackle_lab.discharging import (  # noqa: E402
    bound_from_min_charge,
    quasithrackle_theorem_bound,
    run_quasithrackle_check,
    run_thrackle_discharge,
)
from thrackle_lab.embedding import (  # noqa: E402
    EmbeddingScheme,
    cycle_sign,
    faces_even,
    is_parity_embedding,
    summarize,
    switch_vertex,
    trace_faces,
)
from thrackle_lab.graph import (  # noqa: E402
    AT_MOST_ONE_TRIANGLE,
    NO_FOUR_CYCLE,
    blocks,
    check_quasithrackle_axioms,
    check_six_cycle_conflicts,
    check_thrackle_axioms,
    cycles_of_length,
    enumerate_cycles_up_to,
    girth,
)
from thrackle_lab.search import is_generalized_thrackle  # noqa: E402


class Check:
    """Collects named sub-checks; the criterion passes iff all hold within the time limit."""

    def __init__(self, number: int, title: str, limit: float):
        self.number, self.title, self.limit = number, title, limit
        self.failures: list[str] = []
        self.start = time.perf_counter()

    def expect(self, ok: bool, what: str) -> None:
        if not ok:
            self.failures.append(what)

    def finish(self) -> tuple[bool, str]:
        elapsed = time.perf_counter() - self.start
        self.expect(elapsed < self.limit, f"runtime {elapsed:.2f}s exceeds {self.limit}s")
        ok = not self.failures
        detail = f"{elapsed:.2f}s" if ok else "; ".join(self.failures[:5])
        return ok, f"{'PASS' if ok else 'FAIL'} criterion {self.number:2d} ({self.title}): {detail}"


def criterion_1():
    c = Check(1, "thrackle bound algebra", 1.0)
    form = bound_from_min_charge(Fraction(337, 48), "projective")
    c.expect(form.coefficient == Fraction(337, 241), f"coefficient {form.coefficient}")
    c.expect(form.coefficient <= Fraction(13984, 10000), "337/241 > 1.3984")
    for n in range(4, 10**4 + 1):
        composed = form.coefficient * (n - 1) + 1
        if not composed < Fraction(13984, 10000) * n:
            c.expect(False, f"bound fails at n={n}")
            break
    return c.finish()


def criterion_2():
    c = Check(2, "conditional 36/5 variant", 1.0)
    form = bound_from_min_charge(Fraction(36, 5), "projective")
    c.expect(form.coefficient == Fraction(18, 13), f"coefficient {form.coefficient}")
    c.expect(form.coefficient <= Fraction(13847, 10000), "18/13 > 1.3847")
    return c.finish()


def criterion_3():
    c = Check(3, "quasi-thrackle tightness of G(k)", 1.0)
    for k in range(1, 51):
        g = gen_gk(k)
        c.expect(g.n == 2 * k + 1, f"G({k}) has {g.n} vertices")
        c.expect(g.m == quasithrackle_theorem_bound(2 * k + 1) == 3 * k, f"G({k}) has {g.m} edges")
        dec = blocks(g)
        c.expect(len(dec.blocks) == k and all(len(b) == 3 for b in dec.blocks), f"G({k}) blocks")
        hub = {v for bv in dec.block_vertices for v in bv if all(v in other for other in dec.block_vertices)}
        c.expect(k == 1 or len(hub) == 1, f"G({k}) blocks do not meet at one vertex")
        c.expect(len(dec.cut_vertices) == (1 if k > 1 else 0), f"G({k}) cut vertices {dec.cut_vertices}")
    return c.finish()


def criterion_4():
    c = Check(4, "quasi-thrackle face-size derivations", 1.0)
    c6 = cycle(6)
    r = run_quasithrackle_check(c6, planar(c6))
    c.expect(r.ok and r.mode == "plane", "C6 plane check")
    g, s = one_sided_c5()
    r = run_quasithrackle_check(g, s)
    c.expect(r.ok and r.mode == "projective", "C5 one-sided check")
    r = run_quasithrackle_check(complete(4), K4_PLANAR)
    c.expect(not r.ok and any("3-face" in v.detail for v in r.violations), "K4 plane lacks a 3-face witness")
    form = bound_from_min_charge(6, "projective")
    c.expect((form.coefficient, form.offset) == (Fraction(3, 2), 1), f"projective form {form}")
    return c.finish()


def criterion_5():
    c = Check(5, "H(k) contract", 30.0)
    for k in range(1, 6):
        g = gen_hk(k)
        degs = Counter(g.degrees())
        c.expect((g.n, g.m) == (16 * k, 22 * k - 2), f"H({k}) has n={g.n}, e={g.m}")
        c.expect((degs[3], degs[2]) == (12 * k - 4, 4 * k + 4), f"H({k}) degrees {dict(degs)}")
        gk = girth(g)
        c.expect(gk >= 6, f"H({k}) girth {gk} < 6")
        c.expect(check_six_cycle_conflicts(g) == [], f"H({k}) six-cycle conflicts")
    for k in (1, 2):
        g, s = gen_hk(k), gen_hk_embedding(k)
        faces = trace_faces(g, s)
        summary = summarize(g, s, faces)
        c.expect(bool(is_parity_embedding(g, s)), f"H({k}) embedding lacks parity")
        c.expect(summary.euler_genus == 1 and not summary.orientable, f"H({k}) surface {summary}")
        c.expect(faces_even(faces), f"H({k}) odd face")
        facial = {w.support for w in faces if w.size == 6 and w.is_cycle}
        c.expect(all(frozenset(x.edges) in facial for x in cycles_of_length(g, 6)), f"H({k}) non-facial 6-cycle")
    return c.finish()


def criterion_6():
    c = Check(6, "11/8 obstruction ratio", 1.0)
    previous = Fraction(0)
    for k in range(1, 101):
        ratio = Fraction(22 * k - 2, 16 * k)
        c.expect(previous < ratio < Fraction(11, 8), f"ratio at k={k}")
        previous = ratio
    for k in range(1, 6):
        g = gen_hk(k, verify=False)
        c.expect(Fraction(g.m, g.n) == Fraction(22 * k - 2, 16 * k), f"generated ratio at k={k}")
    return c.finish()


def criterion_7():
    c = Check(7, "discharging soundness on H(1)", 1.0)
    g, s = gen_hk(1), gen_hk_embedding(1)
    report = run_thrackle_discharge(g, s)
    c.expect(all(step.total == 40 for step in report.steps), "conservation total != 40")
    after1 = report.steps[1].charges
    c.expect(all(x >= 7 for x in after1), "post-step-1 charge below 7")
    c.expect(all(after1[i] >= Fraction(15, 2) for i, d in enumerate(report.face_sizes) if d >= 9),
             "9+-face below 15/2 after step 1")
    c.expect(report.min_final_charge >= Fraction(337, 48), f"min final charge {report.min_final_charge}")
    c.expect(report.ok, "engine assertions failed")
    return c.finish()


def _reverify(g, s, branch) -> bool:
    summary = summarize(g, s)
    if branch == "plane":
        return summary.euler_genus == 0 and all(x == 1 for x in s.signature)
    return summary.euler_genus == 1 and not summary.orientable and all(
        cycle_sign(s, x) == (-1) ** x.length for x in enumerate_cycles_up_to(g, g.n))


def criterion_8():
    c = Check(8, "generalized-thrackle decisions", 60.0)
    cases = [("C4", cycle(4), True), ("C5", cycle(5), True), ("C6", cycle(6), True),
             ("G(2)", gen_gk(2), True), ("K3,3", k33(), False)]
    for name, g, expected in cases:
        d = is_generalized_thrackle(g)
        c.expect(d.answer is expected, f"{name}: {d.answer}")
        if d.answer:
            c.expect(d.outcome.witness is not None and _reverify(g, d.outcome.witness, d.branch),
                     f"{name}: witness fails re-verification")
    return c.finish()


def criterion_9():
    c = Check(9, "property suites", 600.0)
    rng = random.Random(20240601)
    for _ in range(1000):
        g = random_connected_graph(rng, 7)
        s = random_scheme(rng, g)
        faces = trace_faces(g, s)
        c.expect(sum(w.size for w in faces) == 2 * g.m, f"conservation on {g.edges}")
        v = rng.randrange(g.n)
        t = switch_vertex(s, v)
        c.expect(summarize(g, s, faces) == summarize(g, t), f"switching changed summary on {g.edges}")
        c.expect(bool(is_parity_embedding(g, s)) == bool(is_parity_embedding(g, t)),
                 f"switching changed parity on {g.edges}")

    for g in connected_graphs(8):
        cycles = enumerate_cycles_up_to(g, max(g.n, 3))
        for mask in range(1 << g.m):
            sig = tuple(-1 if mask >> e & 1 else 1 for e in range(g.m))
            s = EmbeddingScheme(planar(g).rotations, sig)
            brute = all(cycle_sign(s, x) == (-1) ** x.length for x in cycles)
            if bool(is_parity_embedding(g, s)) != brute:
                c.expect(False, f"parity mismatch on {g.edges} with {sig}")

    for g in connected_graphs(9):
        a = is_generalized_thrackle(g).answer
        b = is_generalized_thrackle(g, pruned=False).answer
        c.expect(a == b and a is not None, f"pruned {a} vs unpruned {b} on {g.edges}")
    return c.finish()


def criterion_10():
    c = Check(10, "axiom predicates", 1.0)
    c4 = {r.axiom: r for r in check_thrackle_axioms(cycle(4))}
    c.expect(not c4[NO_FOUR_CYCLE].holds, "C4 4-cycle not flagged")
    g2 = {r.axiom: r for r in check_thrackle_axioms(gen_gk(2))}
    c.expect(not g2[AT_MOST_ONE_TRIANGLE].holds, "G(2) triangles not flagged")
    for k in (1, 2, 3):
        c.expect(all(r.holds for r in check_thrackle_axioms(gen_hk(k))), f"H({k}) flagged")
    c.expect(not check_quasithrackle_axioms(cycle(4)).holds, "C4 passes the quasi-thrackle axiom")
    return c.finish()


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 11)])
def test_acceptance(criterion, capsys):
    ok, line = criterion()
    with capsys.disabled():
        print(f"\n{line}")
    assert ok, line


if __name__ == "__main__":
    results = [criterion() for criterion in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
