"""Acceptance criteria 1-6.

Each test records a verdict; ``conftest.py`` prints one PASS/FAIL line per
criterion at the end of the session.  Running this file directly prints the
same lines without pytest.
"""
from __future__ import annotations

import itertools
import random
import sys
import time
from fractions import Fraction

from lelong import fixtures
from lelong.currents import lelong_at, mass, upper_level_set
from lelong.geometry import m_invariant, proj_point
from lelong.green import (
    bezout_certificate,
    check_prop21,
    construct_lemma22,
    construct_pencil,
    construct_prop23,
    construct_prop24,
    estimate_gamma,
)
from lelong.poly import MultiPoly, is_coprime, order_at
from lelong.theorems import check_prop310, check_thm11, check_thm12, check_thm38
from oracles import brute_m1, brute_m2, taylor_order

F = Fraction
RESULTS: dict[int, tuple[bool, str]] = {}

# pinned tolerances and budgets
EXAMPLE_BUDGET_S = 1.0
GREEN_CONFIGS = 50
GREEN_BUDGET_S = 5.0
GAMMA_TOL = 1e-2
PROP21_INSTANCES = 500
PROP21_BUDGET_S = 60.0
FUZZ_CURRENTS = 200
FUZZ_INSTANCES = 100
FUZZ_BUDGET_S = 300.0
SHARP_BUDGET_S = 10.0
ORACLE_CASES = 100
ORACLE_BUDGET_S = 30.0


def _record(n, ok, detail):
    RESULTS[n] = (bool(ok), detail)
    assert ok, detail


def _same(a, b):
    return len(a) == len(b) and all(any(p == q for q in b) for p in a)


# 1 ------------------------------------------------------------------------------

def _crit1():
    problems, timings = [], {}

    def timed(name, fn):
        t0 = time.perf_counter()
        fn()
        timings[name] = time.perf_counter() - t0
        if timings[name] >= EXAMPLE_BUDGET_S:
            problems.append(f"{name} took {timings[name]:.2f}s")

    def ex32():
        ex = fixtures.example_32()
        S = [ex.points[k] for k in ("p1", "p2", "p3")]
        if mass(ex.current) != 1:
            problems.append("3.2 mass")
        if any((lelong_at(ex.current, p).lower, lelong_at(ex.current, p).upper) != (F(2, 3), F(2, 3)) for p in S):
            problems.append("3.2 nu != 2/3")
        if any(brute_m1(list(pair) + [r]) == 3 for pair in itertools.combinations(S, 2) for r in S if r not in pair):
            problems.append("3.2 collinear pair")

    def ex33():
        ex = fixtures.example_33()
        S = list(ex.points.values())
        E = upper_level_set(ex.current, F(1, 2), strict=False)
        if E.curves or not _same(E.points("in"), S) or len(S) != 6:
            problems.append("3.3 E_{1/2} != S")
        if m_invariant(S, 1) != 3 or m_invariant(S, 2) > 5:
            problems.append("3.3 invariants")

    def ex35():
        for m in range(2, 7):
            ex = fixtures.example_35(m)
            ps = [ex.points[f"p{j + 1}"] for j in range(m)]
            V = upper_level_set(ex.current, F(1, 2), strict=True)
            on_L = sum(1 for p in V.points("in") if ex.lines["L"].contains(p))
            if V.curves or not _same(V.points("in"), ps + [ex.points["q"]]) or on_L != m:
                problems.append(f"3.5 m={m}")

    def ex36():
        ex = fixtures.example_36()
        S = list(ex.points.values())
        E = upper_level_set(ex.current, F(2, 5), strict=False)
        if m_invariant(S, 2) != 5 or E.curves or not _same(E.points("in"), S):
            problems.append("3.6 level set / m_2")
        if any(lelong_at(ex.current, p).lower != F(2, 5) for p in S):
            problems.append("3.6 nu != 2/5")

    for name, fn in (("3.2", ex32), ("3.3", ex33), ("3.5", ex35), ("3.6", ex36)):
        timed(name, fn)
    detail = ", ".join(f"{k} {v:.2f}s" for k, v in timings.items())
    return not problems, (detail + ("; " + "; ".join(problems) if problems else ""))


def test_criterion_1_examples():
    _record(1, *_crit1())


# 2 ------------------------------------------------------------------------------

def _green_check(kind, seed):
    """Returns (ok, gamma_estimate, bezout_total, seconds, note)."""
    cfg = fixtures.green_configuration(kind, seed)
    t0 = time.perf_counter()
    total = None
    if kind == "lemma22":
        g = construct_lemma22(cfg)
        ok = g.weights_verified()
    else:
        if kind.startswith("pencil"):
            g = construct_pencil(cfg)
        elif kind.startswith("prop23"):
            g = construct_prop23(cfg)
        else:
            r = construct_prop24(*cfg)
            g = r.green
        P1, P2 = g.polys
        cert = bezout_certificate(P1, P2, g.pole_points, g.pole_weights)
        total = cert.total
        ok = g.weights_verified() and is_coprime(P1, P2) and cert.orders_ok
        expected = P1.degree * P2.degree
        if kind == "prop24-i":
            # extra bounded poles off A u {q} are allowed; they close the count
            ok = ok and cert.total + len(g.extra_zeros) == expected == 9
        else:
            ok = ok and cert.ok and expected == {2: 4, 4: 16}[g.gamma_claimed]
    gamma = estimate_gamma(g, radii=(1e3, 1e4, 1e5, 1e6))
    elapsed = time.perf_counter() - t0
    ok = ok and abs(gamma - g.gamma_claimed) < GAMMA_TOL and elapsed < GREEN_BUDGET_S
    return ok, gamma, total, elapsed


def _crit2():
    lines, good = [], True
    for kind in fixtures.GREEN_KINDS:
        fails, worst_gamma, worst_t, totals = [], 0.0, 0.0, set()
        for seed in range(GREEN_CONFIGS):
            ok, gamma, total, elapsed = _green_check(kind, seed)
            if not ok:
                fails.append(seed)
            worst_t = max(worst_t, elapsed)
            totals.add(total)
            worst_gamma = max(worst_gamma, abs(gamma - round(gamma)))
        good &= not fails
        sums = "/".join(str(t) for t in sorted(t for t in totals if t is not None)) or "n/a"
        lines.append(f"{kind}: {GREEN_CONFIGS - len(fails)}/{GREEN_CONFIGS} bezout={sums} "
                     f"|gamma err|<={worst_gamma:.4f} max {worst_t:.2f}s" + (f" FAILED seeds {fails}" if fails else ""))
    return good, "; ".join(lines)


def test_criterion_2_green_constructions():
    _record(2, *_crit2())


# 3 ------------------------------------------------------------------------------

def _crit3():
    t0 = time.perf_counter()
    bad, equalities = [], 0
    for seed in range(PROP21_INSTANCES):
        T, u = fixtures.prop21_instance(seed)
        assert mass(T) == 1
        v = check_prop21(T, u)
        if not v.holds:
            bad.append(seed)
        equalities += v.equality
    elapsed = time.perf_counter() - t0
    ex = fixtures.example_32()
    v2 = check_prop21(ex.current, construct_pencil([ex.points[k].affine() for k in ("p1", "p2", "p3")]))
    ex6 = fixtures.example_36()
    v4 = check_prop21(ex6.current, construct_prop23([p.affine() for p in ex6.points.values()]))
    boundary = (v2.lhs, v2.rhs) == (2, 2) and (v4.lhs, v4.rhs) == (4, 4)
    ok = not bad and boundary and elapsed < PROP21_BUDGET_S
    detail = (f"{PROP21_INSTANCES - len(bad)}/{PROP21_INSTANCES} hold ({equalities} with equality) in {elapsed:.1f}s; "
              f"boundaries {v2.lhs}={v2.rhs}, {v4.lhs}={v4.rhs}")
    return ok, detail + (f"; violations at seeds {bad[:10]}" if bad else "")


def test_criterion_3_prop21():
    _record(3, *_crit3())


# 4 ------------------------------------------------------------------------------

def _crit4():
    t0 = time.perf_counter()
    counts, fails = {}, []

    def tally(name, r, tag):
        counts[name] = counts.get(name, 0) + 1
        if not r.passed:
            fails.append(f"{name}:{tag}:{r.status}")

    for seed in range(FUZZ_CURRENTS):
        T2 = fixtures.random_current(seed, n=2, allow_conics=True)
        T3 = fixtures.random_current(seed, n=3, allow_conics=False)
        for alpha in (F(1, 2), F(3, 5), F(2, 3), F(3, 4)):
            tally("1.1 n=2", check_thm11(T2, alpha), (seed, alpha))
            tally("1.1 n=3", check_thm11(T3, alpha), (seed, alpha))
        for alpha in (F(2, 5), F(9, 20)):
            tally("1.2", check_thm12(T2, alpha), (seed, alpha))
    for seed in range(FUZZ_INSTANCES):
        T, alpha, q1, q2 = fixtures.random_thm38_instance(seed)
        tally("3.8", check_thm38(T, alpha, q1, q2), seed)
        T, alpha, triple, L = fixtures.random_prop310_instance(seed)
        tally("3.10", check_prop310(T, alpha, triple, L), seed)
    elapsed = time.perf_counter() - t0
    ok = not fails and elapsed < FUZZ_BUDGET_S
    detail = ", ".join(f"{k}: {v} checks" for k, v in counts.items()) + f" in {elapsed:.1f}s"
    return ok, detail + (f"; failures {fails[:10]}" if fails else "")


def test_criterion_4_theorem_fuzzing():
    _record(4, *_crit4())


# 5 ------------------------------------------------------------------------------

def _crit5():
    t0 = time.perf_counter()
    notes, ok = [], True
    V = upper_level_set(fixtures.example_32().current, F(2, 3) - F(1, 100), strict=True)
    pts = V.points("in")
    good = not V.curves and brute_m1(pts) < len(pts)
    ok &= good
    notes.append(f"3.2: {len(pts)} points, at most {brute_m1(pts)} on a line")
    V = upper_level_set(fixtures.example_33().current, F(1, 2) - F(1, 100), strict=True)
    pts = V.points("in")
    good = not V.curves and len(pts) - brute_m1(pts) > 1
    ok &= good
    notes.append(f"3.3: {len(pts)} points, >= {len(pts) - brute_m1(pts)} off every line")
    V = upper_level_set(fixtures.example_36().current, F(2, 5) - F(1, 100), strict=True)
    pts = V.points("in")
    good = not V.curves and len(pts) - brute_m2(pts) > 1
    ok &= good
    notes.append(f"3.6: {len(pts)} points, >= {len(pts) - brute_m2(pts)} off every conic")
    elapsed = time.perf_counter() - t0
    return ok and elapsed < SHARP_BUDGET_S, "; ".join(notes) + f" in {elapsed:.2f}s"


def test_criterion_5_sharpness():
    _record(5, *_crit5())


# 6 ------------------------------------------------------------------------------

def _random_config(rng):
    k = rng.randint(2, 8)
    pts = []
    while len(pts) < k:
        c = [rng.randint(-2, 2) for _ in range(3)]
        if any(c):
            p = proj_point(*c)
            if p not in pts:
                pts.append(p)
    return pts


def _random_poly(rng):
    terms = {}
    for _ in range(rng.randint(1, 6)):
        i = rng.randint(0, 4)
        j = rng.randint(0, 4 - i)
        terms[(i, j)] = rng.randint(-4, 4)
    return MultiPoly(2, terms)


def _crit6():
    rng = random.Random("acceptance-6")
    t0 = time.perf_counter()
    m_bad = 0
    for _ in range(ORACLE_CASES):
        S = _random_config(rng)
        if m_invariant(S, 1) != brute_m1(S) or m_invariant(S, 2) != brute_m2(S):
            m_bad += 1
    o_bad, positive = 0, 0
    for _ in range(ORACLE_CASES):
        a = (rng.randint(-2, 2), rng.randint(-2, 2))
        p = _random_poly(rng)
        if rng.random() < 0.6:
            # make a vanish to some order by multiplying with powers of linear forms through a
            x, y = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
            lin = (x - MultiPoly.constant(2, a[0])) * rng.randint(1, 3) + (y - MultiPoly.constant(2, a[1])) * rng.randint(-2, 2)
            p = p * lin ** rng.randint(1, 3)
        got = order_at(p, a)
        positive += got > 0
        if got != taylor_order(p, a):
            o_bad += 1
    elapsed = time.perf_counter() - t0
    ok = not m_bad and not o_bad and elapsed < ORACLE_BUDGET_S
    return ok, (f"m_invariant {ORACLE_CASES - m_bad}/{ORACLE_CASES} agree, order_at {ORACLE_CASES - o_bad}/"
                f"{ORACLE_CASES} agree ({positive} with positive order) in {elapsed:.1f}s")


def test_criterion_6_oracle_equivalence():
    _record(6, *_crit6())


def summary_lines():
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        yield f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} - {detail}"


if __name__ == "__main__":
    for n, fn in enumerate((_crit1, _crit2, _crit3, _crit4, _crit5, _crit6), start=1):
        try:
            RESULTS[n] = fn()
        except Exception as exc:  # report and keep going
            RESULTS[n] = (False, f"{type(exc).__name__}: {exc}")
        print(next(line for line in summary_lines() if line.startswith(f"ACCEPTANCE {n}:")), flush=True)
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
