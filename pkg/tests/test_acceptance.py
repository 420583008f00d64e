"""Acceptance criteria 1-9, one PASS/FAIL line per criterion.

Run ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``
to see the summary lines.
"""
import random
import time

import pytest

from d0lsync.classify import analyze, r_values, repetitivity_witness, theorem_bound
from d0lsync.interpretations import z_min
from d0lsync.language import OVER_CAP, max_power
from d0lsync.overhangs import (
    build_graph,
    enumerate_overhangs,
    is_circular_code,
    is_code,
    sardinas_patterson,
    simple_cycles,
)
from d0lsync.walks import two_cycles
from d0lsync.words import D0LSystem, Morphism, binary_uniform_morphisms, parse_morphism

from conftest import ACCEPTANCE_LINES, SWEEP_KS, sweep_reports, sweep_seconds

EX4_LISTED = {
    ("011", "1120", 2),
    ("011", "1120", 1),
    ("011120", "1120", 4),
    ("011", "120", 1),
    ("1120", "011", 1),
    ("120", "011", 1),
}
BOUNDS = {2: 8, 3: 14, 4: 32, 5: 36}


def system(a, b):
    return D0LSystem(Morphism.from_images({"a": a, "b": b}), "a")


def report(n, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def circular_reports():
    for k in SWEEP_KS:
        for r in sweep_reports(k):
            if r.classification.circular:
                yield k, r


def criterion_1():
    t0 = time.perf_counter()
    got = {o.words() for o in enumerate_overhangs(parse_morphism("0->011,1->1120,2->120"))}
    dt = time.perf_counter() - t0
    extra, missing = sorted(got - EX4_LISTED), sorted(EX4_LISTED - got)
    ok = not extra and not missing and dt < 1.0
    return report(1, ok, f"{len(got)} overhangs, extra={extra}, missing={missing}, {dt:.3f}s")


def criterion_2():
    t0 = time.perf_counter()
    tm = D0LSystem.parse("a->ab,b->ba")
    z = z_min(tm)
    cycles = simple_cycles(build_graph(tm.morphism))
    loops = all(len(c) == 1 and c[0].source == c[0].target for c in cycles)
    p = max_power(tm, "ab", 10)
    dt = time.perf_counter() - t0
    ok = (z.z_min == 3 and not z.exceeded_cap and len(cycles) == 2 and loops
          and is_circular_code(tm.morphism) is False and is_code(tm.morphism) is True
          and p == 2 and dt < 5.0)
    return report(2, ok, f"z_min={z.z_min}, cycles={len(cycles)} (self-loops={loops}), "
                         f"circular_code={is_circular_code(tm.morphism)}, code={is_code(tm.morphism)}, "
                         f"max_power(ab)={p}, {dt:.2f}s")


def criterion_3():
    bad, n = [], 0
    for k, r in circular_reports():
        n += 1
        if theorem_bound(k) != BOUNDS[k] or r.z.exceeded_cap or r.z.z_min > BOUNDS[k]:
            bad.append(r.system.morphism.spec())
    total = sum(len(sweep_reports(k)) for k in SWEEP_KS)
    secs = sweep_seconds()
    ok = not bad and total == 16 + 64 + 256 + 1024 and secs < 600
    return report(3, ok, f"{total} systems, {n} circular, violations={bad[:5]}, sweep {secs:.1f}s")


def criterion_4():
    bad = []
    for k in SWEEP_KS:
        for r in sweep_reports(k):
            m = r.system.morphism
            non_circular = not r.classification.circular
            oracle = r.z.exceeded_cap and r.z.cap == theorem_bound(k) + 2 * k
            witnessed = repetitivity_witness(r.system) is not None or m.images["a"] == m.images["b"]
            if not (non_circular == oracle == witnessed):
                bad.append(m.spec())
    return report(4, not bad, f"disagreements={len(bad)} {bad[:5]}")


def criterion_5():
    bad = []
    for k, r in circular_reports():
        w = r.walks
        if w.exceeded_cap or not (w.l_max <= r.z.z_min <= w.l_max + 2 * k - 3):
            bad.append(r.system.morphism.spec())
    return report(5, not bad, f"sandwich violations={len(bad)} {bad[:5]}")


def criterion_6():
    bad = [r.system.morphism.spec() for _, r in circular_reports() if r.violations]
    return report(6, not bad, f"forbidden-subgraph violations={len(bad)} {bad[:5]}")


def criterion_7():
    r1 = r_values(system("abab", "aaaa"), 40).r_a
    r2 = r_values(system("bbbb", "baaa"), 40).r_a
    balanced = {}
    for k in (2, 4):
        h = k // 2
        rv = r_values(system("a" * h + "b" * h, "b" * h + "a" * h), 40)
        balanced[k] = min(rv.r_a, rv.r_b)
    ok = r1 == 5 == 4 * (4 // 2 - 1) + 1 and r2 == 3 == 4 - 1 and balanced == {2: 2, 4: 4}
    return report(7, ok, f"abab/aaaa r_a={r1}, bbbb/baaa r_a={r2}, min(r_a, r_b)={balanced}")


def criterion_8():
    bad, n = [], 0
    for k in (2, 3, 4):
        for m in binary_uniform_morphisms(k):
            n += 1
            if is_code(m) != sardinas_patterson(m):
                bad.append(m.spec())
    rng = random.Random(8)
    for _ in range(1000):
        alphabet = "abc"[: rng.randint(1, 3)]
        m = Morphism.from_images({
            c: "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 4))) for c in alphabet
        })
        n += 1
        if is_code(m) != sardinas_patterson(m):
            bad.append(m.spec())
    return report(8, not bad, f"{n} morphisms, disagreements={len(bad)} {bad[:5]}")


def _letter_two_cycle(g):
    for e, f in two_cycles(g):
        pair = {(e.label.u_letters, e.label.v_letters), (f.label.u_letters, f.label.v_letters)}
        if pair in ({("a", "a"), ("b", "b")}, {("a", "b"), ("b", "a")}):
            return True
    return False


def _uvu_k6():
    blocks = ["aa", "ab", "ba", "bb"]
    return [system(u + v + u, v + u + v) for u in blocks for v in blocks if u != v]


def criterion_9():
    bad, hits = [], 0
    for k, r in circular_reports():
        if _letter_two_cycle(build_graph(r.system.morphism)):
            hits += 1
            if not min(r.r.r_ab, r.r.r_ba) <= (k - 2) / 2:
                bad.append(r.system.morphism.spec())
    # the k <= 5 sweep has no such graph; k = 6 systems phi(a)=uvu, phi(b)=vuv do
    extra = 0
    for sys in _uvu_k6():
        r = analyze(sys, cap=60)
        if r.classification.circular and _letter_two_cycle(build_graph(sys.morphism)):
            extra += 1
            rab, rba = r.r.r_ab, r.r.r_ba
            if OVER_CAP in (rab, rba) or not min(rab, rba) <= (6 - 2) / 2:
                bad.append(sys.morphism.spec())
    return report(9, not bad, f"sweep systems with two-vertex cycle={hits}, "
                              f"k=6 supplement={extra}, violations={bad[:5]}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("check", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 10)])
def test_acceptance(check):
    assert check()


if __name__ == "__main__":
    results = [check() for check in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria pass")
