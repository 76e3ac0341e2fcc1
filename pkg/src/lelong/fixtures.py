"""Exact example currents with checkable facts, and seeded random generators
for fuzzing the classification theorems."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .currents import Current, lelong_at, mass, upper_level_set
from .field import ONE, ZERO
from .geometry import (
    Line,
    PlaneCurve,
    ProjPoint,
    collinear,
    conic_through,
    intersect_lines,
    line_through,
    m_invariant,
    points_on_curve_of_degree,
    proj_point,
)
from .poly import MultiPoly
from .theorems import classify

EXAMPLE_IDS = ("3.2", "3.3", "3.4", "3.5", "3.6", "3.7", "3.9")


@dataclass(frozen=True)
class Fact:
    name: str
    check: Callable[[], tuple]

    def run(self) -> tuple[bool, str]:
        ok, detail = self.check()
        return bool(ok), str(detail)


@dataclass
class Example:
    id: str
    current: Current
    points: dict = field(default_factory=dict)
    lines: dict = field(default_factory=dict)
    curves: dict = field(default_factory=dict)
    facts: list = field(default_factory=list)

    def check(self) -> list[tuple[str, bool, str]]:
        return [(f.name, *f.run()) for f in self.facts]


def _pt(x, y) -> ProjPoint:
    return ProjPoint.from_affine([x, y])


def _meet(a: Line, b: Line) -> ProjPoint:
    (p, _), = intersect_lines(a, b)
    return p


def _same_set(a, b) -> bool:
    return len(a) == len(b) and all(any(p == q for q in b) for p in a)


def _unit_mass(T):
    return Fact("mass is 1", lambda: (mass(T) == 1, f"mass = {mass(T)}"))


def _off_every_line(points, curves=()) -> int:
    """min over lines through two of the points (or a curve line) of #points off it."""
    cands = [line_through(a, b) for a, b in itertools.combinations(points, 2)]
    cands += [c for c in curves if isinstance(c, Line)]
    if not cands:
        return 0 if len(points) <= 1 else len(points)
    return min(sum(1 for p in points if not L.contains(p)) for L in cands)


def _off_every_conic(points) -> int:
    """min over all conics of #points off it.

    Irreducible conics through >= 5 of the points are fixed by any five of
    them; line pairs are enumerated directly.
    """
    if len(points) <= 5:
        return 0
    best = len(points) - 4
    for five in itertools.combinations(points, 5):
        if collinear(five[:4]) or not points_on_curve_of_degree(list(five), 2):
            continue
        try:
            C = conic_through(five)
        except ValueError:
            continue
        best = min(best, sum(1 for p in points if not C.contains(p)))
    for a, b in itertools.combinations(points, 2):
        L = line_through(a, b)
        rest = [p for p in points if not L.contains(p)]
        covered = min(1, len(rest))
        for c, d in itertools.combinations(rest, 2):
            M = line_through(c, d)
            covered = max(covered, sum(1 for p in rest if M.contains(p)))
        best = min(best, len(rest) - covered)
    return best


# --- individual examples --------------------------------------------------------

def _three_lines():
    L1 = Line.from_form(1, 0, 0)   # x = 0
    L2 = Line.from_form(0, 1, 0)   # y = 0
    L3 = Line.from_form(1, 1, -1)  # x + y = 1
    return L1, L2, L3


def example_32() -> Example:
    L1, L2, L3 = _three_lines()
    T = Current.build(2, [(Fraction(1, 3), L) for L in (L1, L2, L3)])
    p1, p2, p3 = _meet(L2, L3), _meet(L1, L3), _meet(L1, L2)
    S = [p1, p2, p3]

    def values():
        vals = [lelong_at(T, p) for p in S]
        ok = all(v.lower == v.upper == Fraction(2, 3) for v in vals)
        return ok, [str(v.lower) for v in vals]

    def level_set():
        ls = upper_level_set(T, Fraction(2, 3), strict=False)
        return not ls.curves and _same_set(ls.points("in"), S), ls.points("in")

    def sharp(k):
        def run():
            ls = upper_level_set(T, Fraction(2, 3) - Fraction(1, k), strict=True)
            pts = ls.points("in")
            off = _off_every_line(pts, ls.curves)
            return off >= 1 and not ls.curves, f"every line misses >= {off} point(s)"
        return run

    facts = [
        _unit_mass(T),
        Fact("nu = 2/3 at p1, p2, p3", values),
        Fact("p1, p2, p3 not collinear", lambda: (not collinear(S), "rank 3")),
        Fact("E_{2/3} = {p1, p2, p3}", level_set),
        Fact("V_{2/3-1/10} not in a line", sharp(10)),
        Fact("V_{2/3-1/100} not in a line", sharp(100)),
    ]
    return Example("3.2", T, {"p1": p1, "p2": p2, "p3": p3}, {"L1": L1, "L2": L2, "L3": L3}, facts=facts)


def example_33() -> Example:
    L1, L2, L3 = _three_lines()
    L4 = Line.from_form(1, -1, -2)  # x - y = 2
    Ls = [L1, L2, L3, L4]
    T = Current.build(2, [(Fraction(1, 4), L) for L in Ls])
    pts = {f"p{j + 1}{k + 1}": _meet(Ls[j], Ls[k]) for j, k in itertools.combinations(range(4), 2)}
    S = list(pts.values())

    def level_set():
        ls = upper_level_set(T, Fraction(1, 2), strict=False)
        return not ls.curves and _same_set(ls.points("in"), S), ls.points("in")

    def sharp_line():
        ls = upper_level_set(T, Fraction(1, 2) - Fraction(1, 100), strict=True)
        off = _off_every_line(ls.points("in"), ls.curves)
        return off > 1, f"every line misses >= {off} points"

    facts = [
        _unit_mass(T),
        Fact("six distinct points", lambda: (len({p for p in S}) == 6 and len(S) == 6, len(S))),
        Fact("E_{1/2} = S", level_set),
        Fact("m_1(S) = 3", lambda: (m_invariant(S, 1) == 3, m_invariant(S, 1))),
        Fact("m_2(S) <= 5 (S not on a conic)", lambda: (not points_on_curve_of_degree(S, 2), m_invariant(S, 2))),
        Fact("V_{1/2-1/100} has > 1 point off every line", sharp_line),
    ]
    return Example("3.3", T, pts, {f"L{j + 1}": L for j, L in enumerate(Ls)}, facts=facts)


def example_34() -> Example:
    x, y, t = (MultiPoly.variable(3, i) for i in range(3))
    C = PlaneCurve(x * x + y * y - t * t)
    T = Current.build(2, [(Fraction(1, 2), C)])

    def conic_in_level_set():
        ls = upper_level_set(T, Fraction(1, 2), strict=False)
        return ls.curves == [C], "E_{1/2} contains the conic; no line covers it up to one point"

    def thm12_shape():
        cl = classify(T, Fraction(2, 5))
        return cl.shape == "Conic", cl.shape

    facts = [_unit_mass(T), Fact("C lies in E_{1/2}", conic_in_level_set), Fact("V_{2/5} is the conic", thm12_shape)]
    return Example("3.4", T, curves={"C": C}, facts=facts)


def _x_values(m):
    """0, 1, -1, 2, -2, ..."""
    out = [0]
    k = 1
    while len(out) < m:
        out += [k, -k]
        k += 1
    return out[:m]


def example_35(m: int = 3) -> Example:
    if m < 2:
        raise ValueError("the base-line example needs m >= 2")
    L = Line.from_form(0, 1, 0)  # y = 0
    q = _pt(0, 1)
    ps = [_pt(a, 0) for a in _x_values(m)]
    Ls = [line_through(q, p) for p in ps]
    terms = [(Fraction(m - 1, 2 * m), L)] + [(Fraction(m + 1, 2 * m * m), Lj) for Lj in Ls]
    T = Current.build(2, terms)

    def level_set():
        ls = upper_level_set(T, Fraction(1, 2), strict=True)
        pts = ls.points("in")
        on_L = sum(1 for p in pts if L.contains(p))
        ok = not ls.curves and _same_set(pts, ps + [q]) and on_L == m
        return ok, f"{len(pts)} points, {on_L} on L"

    def values():
        vq = lelong_at(T, q).lower
        vp = [lelong_at(T, p).lower for p in ps]
        ok = vq == Fraction(m + 1, 2 * m) and all(v == Fraction(m * m + 1, 2 * m * m) for v in vp)
        return ok, f"nu(q) = {vq}, nu(p_j) = {vp[0]}"

    points = {f"p{j + 1}": p for j, p in enumerate(ps)}
    points["q"] = q
    lines = {"L": L, **{f"L{j + 1}": Lj for j, Lj in enumerate(Ls)}}
    facts = [_unit_mass(T), Fact("Lelong values", values), Fact("V_{1/2} = {p_1..p_m, q}, m on L", level_set)]
    return Example("3.5", T, points, lines, facts=facts)


def _example_36_config(p4: ProjPoint):
    L1, L2, L3 = _three_lines()
    p1, p2, p3 = _meet(L2, L3), _meet(L1, L3), _meet(L1, L2)
    if any(L.contains(p4) for L in (L1, L2, L3)):
        return None
    L4, L5, L6 = line_through(p4, p1), line_through(p4, p2), line_through(p4, p3)
    try:
        p5, p6, p7 = _meet(L1, L4), _meet(L2, L5), _meet(L3, L6)
    except ValueError:
        return None
    if not (p5.is_affine() and p6.is_affine() and p7.is_affine()):
        return None
    if collinear([p5, p6, p7]):
        return None
    l1, l2, l3 = line_through(p5, p6), line_through(p5, p7), line_through(p6, p7)
    S = [p1, p2, p3, p4, p5, p6, p7]
    if len(set(S)) != 7:
        return None
    big = [L1, L2, L3, L4, L5, L6]
    T = Current.build(2, [(Fraction(2, 15), L) for L in big] + [(Fraction(1, 15), l) for l in (l1, l2, l3)])
    if len(T.terms) != 9:
        return None
    points = {f"p{j + 1}": p for j, p in enumerate(S)}
    lines = {**{f"L{j + 1}": L for j, L in enumerate(big)}, "l1": l1, "l2": l2, "l3": l3}
    return T, S, points, lines


def _example_36_valid(T, S) -> bool:
    ls = upper_level_set(T, Fraction(2, 5), strict=False)
    if ls.curves or not _same_set(ls.points("in"), S):
        return False
    if any(lelong_at(T, p).lower != Fraction(2, 5) for p in S):
        return False
    return m_invariant(S, 2) == 5


def _find_p4():
    rng = range(-3, 4)
    for a, b in sorted(itertools.product(rng, rng), key=lambda ab: (abs(ab[0]) + abs(ab[1]), ab)):
        cfg = _example_36_config(_pt(a, b))
        if cfg and _example_36_valid(cfg[0], cfg[1]):
            return _pt(a, b)
    raise RuntimeError("no admissible p4 with small coordinates")


_P4 = None


def example_36(p4: ProjPoint | None = None) -> Example:
    global _P4
    if p4 is None:
        if _P4 is None:
            _P4 = _find_p4()
        p4 = _P4
    cfg = _example_36_config(p4)
    if cfg is None:
        raise ValueError("p4 does not give a valid configuration")
    T, S, points, lines = cfg

    def incidences():
        P, L = points, lines
        checks = [
            L["L4"].contains(P["p1"]) and L["L4"].contains(P["p4"]) and L["L4"].contains(P["p5"]),
            L["L5"].contains(P["p2"]) and L["L5"].contains(P["p4"]) and L["L5"].contains(P["p6"]),
            L["L6"].contains(P["p3"]) and L["L6"].contains(P["p4"]) and L["L6"].contains(P["p7"]),
            L["L1"].contains(P["p5"]) and L["L2"].contains(P["p6"]) and L["L3"].contains(P["p7"]),
            L["l1"].contains(P["p5"]) and L["l1"].contains(P["p6"]),
            L["l2"].contains(P["p5"]) and L["l2"].contains(P["p7"]),
            L["l3"].contains(P["p6"]) and L["l3"].contains(P["p7"]),
        ]
        return all(checks), checks

    def values():
        vals = [lelong_at(T, p).lower for p in S]
        return all(v == Fraction(2, 5) for v in vals), [str(v) for v in vals]

    def level_set():
        ls = upper_level_set(T, Fraction(2, 5), strict=False)
        return not ls.curves and _same_set(ls.points("in"), S), ls.points("in")

    def sharp():
        ls = upper_level_set(T, Fraction(2, 5) - Fraction(1, 100), strict=True)
        pts = ls.points("in")
        off = _off_every_conic(pts)
        return off > 1 and not ls.curves, f"every conic misses >= {off} points"

    facts = [
        _unit_mass(T),
        Fact("stated incidences", incidences),
        Fact("nu = 2/5 on S", values),
        Fact("E_{2/5} = S", level_set),
        Fact("m_2(S) = 5", lambda: (m_invariant(S, 2) == 5, m_invariant(S, 2))),
        Fact("V_{2/5-1/100} has > 1 point off every conic", sharp),
    ]
    return Example("3.6", T, points, lines, facts=facts)


def example_37(N: int = 10, eps=None) -> Example:
    if N < 0:
        raise ValueError("truncation N must be >= 0")
    if eps is None:
        eps = [Fraction(1, 5) / 2 ** (j + 1) for j in range(N + 1)]
    eps = [Fraction(e) for e in eps]
    if len(eps) != N + 1 or any(e <= 0 for e in eps) or sum(eps) > Fraction(1, 5):
        raise ValueError("need N + 1 positive weights with sum at most 1/5")
    x, y, t = (MultiPoly.variable(3, i) for i in range(3))
    C = PlaneCurve(y * t - x * x)
    q = _pt(0, -1)
    s = [Fraction(0)] + [Fraction(1, j + 1) for j in range(1, N + 1)]
    ps = [_pt(sj, sj * sj) for sj in s]
    Ls = [line_through(q, p) for p in ps]
    residual = Fraction(1, 5) - sum(eps)
    T = Current.build(2, [(Fraction(2, 5), C)] + list(zip(eps, Ls)), residual_mass=residual)

    def on_conic():
        cl = classify(T, Fraction(2, 5))
        pts = cl.level_set.points("in")
        ok = cl.shape == "FiniteSubsetOfConic" and all(C.contains(p) for p in pts) and all(
            any(p == r for r in pts) for p in ps)
        return ok, f"{cl.shape}, {len(pts)} certified points, truncated={cl.truncated}"

    facts = [
        _unit_mass(T),
        Fact("q not on C", lambda: (not C.contains(q), "q off C")),
        Fact("V_{2/5} is a subset of C", on_conic),
    ]
    points = {f"p{j}": p for j, p in enumerate(ps)}
    points["q"] = q
    return Example("3.7", T, points, {f"L{j}": L for j, L in enumerate(Ls)}, {"C": C}, facts)


def example_39(n: int = 2) -> Example:
    if n < 2:
        raise ValueError("ambient dimension must be >= 2")
    e = [[ONE if i == k else ZERO for i in range(n + 1)] for k in range(n + 1)]
    q = ProjPoint(e[n])
    L1 = Line(q, ProjPoint(e[0]))
    L2 = Line(q, ProjPoint(e[1]))
    T = Current.build(n, [(Fraction(1, 2), L1), (Fraction(1, 2), L2)])

    def nu_q():
        v = lelong_at(T, q)
        return v.lower == 1, str(v.lower)

    def level_set():
        ls = upper_level_set(T, Fraction(1, 2), strict=False)
        return len(ls.curves) == 2, "E_{1/2} contains both lines; no single line covers it up to one point"

    facts = [_unit_mass(T), Fact("nu(q) = 1", nu_q), Fact("E_{1/2} = L1 u L2", level_set)]
    return Example("3.9", T, {"q": q}, {"L1": L1, "L2": L2}, facts=facts)


def gen_example(id: str, **params) -> Example:
    builders = {
        "3.2": example_32,
        "3.3": example_33,
        "3.4": example_34,
        "3.5": example_35,
        "3.6": example_36,
        "3.7": example_37,
        "3.9": example_39,
    }
    if id not in builders:
        raise ValueError(f"unknown example id {id!r}; choose from {', '.join(EXAMPLE_IDS)}")
    return builders[id](**params)


# --- random generators --------------------------------------------------------

def _rand_point(rng: random.Random, n: int, lo=-3, hi=3) -> ProjPoint:
    while True:
        c = [rng.randint(lo, hi) for _ in range(n + 1)]
        if any(c):
            return proj_point(*c)


def _pool(rng, n, size):
    pts = []
    while len(pts) < size:
        p = _rand_point(rng, n)
        if p not in pts:
            pts.append(p)
    return pts


def _rand_line(rng, pool, n) -> Line:
    while True:
        a = rng.choice(pool) if rng.random() < 0.85 else _rand_point(rng, n)
        b = rng.choice(pool) if rng.random() < 0.85 else _rand_point(rng, n)
        if a != b:
            return line_through(a, b)


def _rand_conic(rng, pool, n) -> PlaneCurve | None:
    for _ in range(20):
        five = [rng.choice(pool) if rng.random() < 0.6 else _rand_point(rng, n) for _ in range(5)]
        if len(set(five)) < 5:
            continue
        try:
            return conic_through(five)
        except ValueError:
            continue
    return None


def random_current(seed, n: int = 2, max_components: int = 5, allow_conics: bool = True,
                   total_mass=1) -> Current:
    """A reproducible current of lines (and conics in P^2) through a small point pool."""
    rng = random.Random(f"current:{seed}")
    total_mass = Fraction(total_mass)
    pool = _pool(rng, n, rng.randint(3, 6))
    k = rng.randint(1, max_components)
    comps = []
    while len(comps) < k:
        c = None
        if allow_conics and n == 2 and rng.random() < 0.3:
            c = _rand_conic(rng, pool, n)
        if c is None:
            c = _rand_line(rng, pool, n)
        if c not in comps:
            comps.append(c)
    raw = [rng.randint(1, 6) for _ in comps]
    total = sum(w * c.degree for w, c in zip(raw, comps))
    return Current.build(n, [(Fraction(w) * total_mass / total, c) for w, c in zip(raw, comps)])


def _normalize(n, weighted):
    total = sum(w * c.degree for w, c in weighted)
    return Current.build(n, [(Fraction(w) / total, c) for w, c in weighted])


def random_thm38_instance(seed, n: int = 2):
    """(T, alpha, q1, q2) with nu(T, q_i) >= alpha > 1/2 and mass(T) = 1."""
    rng = random.Random(f"thm38:{seed}")
    for _ in range(1000):
        pool = _pool(rng, n, 6)
        q1, q2 = pool[0], pool[1]
        weighted = []
        if rng.random() < 0.7:
            weighted.append((rng.randint(1, 8), line_through(q1, q2)))
        for q in (q1, q2):
            for _ in range(rng.randint(1, 3)):
                p = rng.choice(pool[2:])
                weighted.append((rng.randint(1, 5), line_through(q, p)))
        for _ in range(rng.randint(0, 2)):
            weighted.append((rng.randint(1, 2), _rand_line(rng, pool, n)))
        T = _normalize(n, weighted)
        nu = min(lelong_at(T, q1).lower, lelong_at(T, q2).lower)
        if nu <= Fraction(1, 2):
            continue
        alpha = nu if rng.random() < 0.5 else Fraction(1, 2) + (nu - Fraction(1, 2)) * Fraction(rng.randint(1, 9), 10)
        return T, alpha, q1, q2
    raise RuntimeError("no admissible instance found")


def random_prop310_instance(seed, n: int = 2):
    """(T, alpha, triple, L) with the triple on L and nu >= 1 - alpha there."""
    rng = random.Random(f"prop310:{seed}")
    for _ in range(1000):
        a, b = _pool(rng, n, 2)
        L = line_through(a, b)
        triple = [L.point_at(1, t) for t in rng.sample(range(-3, 4), 3)]
        pool = _pool(rng, n, 4) + triple
        weighted = []
        if rng.random() < 0.5:
            weighted.append((rng.randint(1, 6), L))
        for p in triple:
            for _ in range(rng.randint(1, 2)):
                other = rng.choice(pool)
                if other != p and not L.contains(other):
                    weighted.append((rng.randint(1, 5), line_through(p, other)))
        for _ in range(rng.randint(0, 3)):
            weighted.append((rng.randint(1, 4), _rand_line(rng, pool, n)))
        if not weighted:
            continue
        T = _normalize(n, weighted)
        low = min(lelong_at(T, p).lower for p in triple)
        floor = max(Fraction(1, 2), 1 - low)
        if floor >= 1:
            continue
        alpha = floor + (1 - floor) * Fraction(rng.randint(0, 9), 10)
        return T, alpha, triple, L
    raise RuntimeError("no admissible instance found")


# --- point configurations for the Green constructions --------------------------

GREEN_KINDS = ("lemma22", "pencil3", "pencil4", "prop23-1", "prop23-2i", "prop23-2ii", "prop24-i", "prop24-ii")


def _rand_affine(rng, k, lo=-4, hi=4):
    return tuple(Fraction(rng.randint(lo, hi)) for _ in range(k))


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _proj_pts(pts):
    return [ProjPoint.from_affine(p) for p in pts]


def _plane_map(rng):
    """A random invertible integer affine map of C^2."""
    while True:
        a, b, c, d = (rng.randint(-3, 3) for _ in range(4))
        if a * d - b * c:
            e, f = rng.randint(-3, 3), rng.randint(-3, 3)
            return lambda p: (a * p[0] + b * p[1] + e, c * p[0] + d * p[1] + f)


def _parabola(t):
    t = Fraction(t)
    return (t, t * t)


def _lemma22_config(rng):
    n = rng.choice((3, 3, 4))
    while True:
        base = _rand_affine(rng, n)
        vecs = [_rand_affine(rng, n, -3, 3) for _ in range(3)]
        if _det3([v[:3] for v in vecs]) != 0:
            return [base] + [tuple(b + v for b, v in zip(base, vec)) for vec in vecs]


def _planar_general(rng, k):
    while True:
        pts = [_rand_affine(rng, 2) for _ in range(k)]
        if len(set(pts)) == k and m_invariant(_proj_pts(pts), 1) == 2:
            return pts


def _prop23_config(rng, case):
    from .green import prop23_case

    while True:
        if case == "case 1":
            pts = [_rand_affine(rng, 2) for _ in range(7)]
        elif case == "case 2(i)":
            a, b = _rand_affine(rng, 2), _rand_affine(rng, 2)
            if a == b:
                continue
            d = (b[0] - a[0], b[1] - a[1])
            pts = [a, b, (a[0] + 2 * d[0], a[1] + 2 * d[1])] + [_rand_affine(rng, 2) for _ in range(4)]
        else:
            p1 = _rand_affine(rng, 2)
            d1, d2 = _rand_affine(rng, 2, -2, 2), _rand_affine(rng, 2, -2, 2)
            s, t = rng.sample([1, 2, -1, -2], 2), rng.sample([1, 2, -1, -2], 2)
            on1 = [(p1[0] + k * d1[0], p1[1] + k * d1[1]) for k in s]
            on2 = [(p1[0] + k * d2[0], p1[1] + k * d2[1]) for k in t]
            pts = [p1] + on1 + on2 + [_rand_affine(rng, 2) for _ in range(2)]
        if len(set(pts)) != 7:
            continue
        proj = _proj_pts(pts)
        if m_invariant(proj, 2) != 5 or prop23_case(pts) != case:
            continue
        order = list(range(7))
        rng.shuffle(order)
        return [pts[i] for i in order]


def _prop24_config(rng, case):
    """Seven points (six on an affine image of y = x^2 plus one off it) and q."""
    from .green import prop23_case  # noqa: F401  (keeps import order with green)

    while True:
        f = _plane_map(rng)
        b = Fraction(rng.choice([-6, -4, -3, -2, 2, 3, 4, 6]))
        p1 = (Fraction(0), b)
        divisors = [r for r in (1, 2, 3, -1, -2, -3, Fraction(1, 2), -Fraction(1, 2)) if -b / r != r]
        if case == "(ii) case 2":
            rs = rng.sample(divisors, 3)
            pairs = [(r, -b / r) for r in rs]
            xs = [x for pair in pairs for x in pair]
        else:
            r = rng.choice(divisors)
            xs = [r, -b / r] + [Fraction(rng.randint(-5, 5), rng.choice((1, 1, 2))) for _ in range(4)]
        if len(set(xs)) != 6:
            continue
        conic_pts = [_parabola(x) for x in xs]
        if case == "(i)":
            q = (Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4)))
        else:
            # q on the chord through p1 and the first two conic points
            k = Fraction(rng.choice((2, 3, -1, -2, 1)), rng.choice((1, 2)))
            q = (p1[0] + k * (conic_pts[0][0] - p1[0]), p1[1] + k * (conic_pts[0][1] - p1[1]))
        A = [p1] + conic_pts
        if q in A or q[1] == q[0] * q[0]:
            continue
        A = [tuple(f(p)) for p in A]
        q = tuple(f(q))
        proj = _proj_pts(A)
        if m_invariant(proj, 1) > 3 or m_invariant(proj, 2) != 6:
            continue
        m1q = m_invariant(proj + [ProjPoint.from_affine(q)], 1)
        if (case == "(i)") != (m1q <= 3):
            continue
        if case != "(i)" and _prop24_subcase(A, q) != case:
            continue
        order = list(range(7))
        rng.shuffle(order)
        return [A[i] for i in order], q


def _prop24_subcase(A, q) -> str:
    from .green import construct_prop24

    try:
        return construct_prop24(A, q).case
    except Exception:
        return "error"


def green_configuration(kind: str, seed):
    """A seeded point configuration suited to the named Green construction.

    Returns a list of affine points, or ``(A, q)`` for the ``prop24-*`` kinds.
    """
    rng = random.Random(f"green:{kind}:{seed}")
    if kind == "lemma22":
        return _lemma22_config(rng)
    if kind == "pencil3":
        return _planar_general(rng, 3)
    if kind == "pencil4":
        return _planar_general(rng, 4)
    if kind == "prop23-1":
        return _prop23_config(rng, "case 1")
    if kind == "prop23-2i":
        return _prop23_config(rng, "case 2(i)")
    if kind == "prop23-2ii":
        return _prop23_config(rng, "case 2(ii)")
    if kind == "prop24-i":
        return _prop24_config(rng, "(i)")
    if kind == "prop24-ii":
        return _prop24_config(rng, "(ii) case 1" if seed % 2 == 0 else "(ii) case 2")
    raise ValueError(f"unknown configuration kind {kind!r}")


def _support_points(T: Current, rng, extra: int = 6):
    """Exact points with positive Lelong number: candidate points plus samples on lines."""
    from .currents import candidate_points

    pts = [p for p in candidate_points(T) if p.exact]
    lines = [c for c in T.components if isinstance(c, Line)]
    for _ in range(extra if lines else 0):
        L = rng.choice(lines)
        pts.append(L.point_at(1, rng.randint(-4, 4)))
    out = []
    for p in pts:
        if p not in out and lelong_at(T, p).lower > 0:
            out.append(p)
    return out


def prop21_instance(seed):
    """(T, u): a random unit-mass current in an affine chart and a Green
    function whose poles sit at points where T has positive Lelong number."""
    from .geometry import choose_chart
    from .green import construct_lemma22, construct_pencil, construct_prop23

    rng = random.Random(f"prop21:{seed}")
    for attempt in range(200):
        n = 3 if rng.random() < 0.2 else 2
        T = random_current(f"{seed}:{attempt}", n=n, max_components=6, allow_conics=(n == 2))
        pts = _support_points(T, rng)
        if len(pts) < (4 if n == 3 else 3):
            continue
        chart = choose_chart(pts)
        T = T.transform(chart)
        aff = [chart.apply(p).affine() for p in pts]
        rng.shuffle(aff)
        if n == 3:
            for quad in itertools.combinations(aff, 4):
                try:
                    return T, construct_lemma22(list(quad))
                except ValueError:
                    continue
            continue
        if len(aff) >= 7 and rng.random() < 0.5:
            for _ in range(20):
                seven = rng.sample(aff, 7)
                if m_invariant(_proj_pts(seven), 2) == 5:
                    return T, construct_prop23(seven)
        for k in (4, 3) if rng.random() < 0.5 else (3, 4):
            for sub in itertools.combinations(aff, k):
                if m_invariant(_proj_pts(list(sub)), 1) == 2:
                    return T, construct_pencil(list(sub))
    raise RuntimeError("no admissible instance found")
