"""Entire pluricomplex Green functions u = 1/2 log sum |P_i|^2.

Constructions for small special point sets (four points in space, planar
pencils, seven or eight planar points), an exact Bezout-count certificate of
the common zero locus, a numeric estimator of the growth constant, and the
Lelong-number inequality check that links the two worlds.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg
from .currents import Current, lelong_at, mass
from .field import ONE, ZERO, format_rational, qi, to_fraction
from .geometry import (
    CommonComponentError,
    GeometryError,
    PlaneCurve,
    PointConfig,
    ProjPoint,
    affine_normalize,
    intersect_curves,
    m_invariant,
)
from .poly import (
    MultiPoly,
    interpolation_nullspace,
    is_coprime,
    is_linearly_independent,
    sylvester_matrix,
    vanishing_conditions,
    monomials,
)


class PreconditionError(ValueError):
    """The input configuration does not satisfy a construction's hypotheses."""


class ConstructionError(RuntimeError):
    """A construction that the theory guarantees could not be certified."""


@dataclass
class GreenFunction:
    """u(z) = 1/2 log(sum_i |P_i(z)|^2) with claimed poles and growth."""

    polys: list
    pole_points: list
    pole_weights: list
    gamma_claimed: int
    label: str = ""
    extra_zeros: list = field(default_factory=list)

    @property
    def num_vars(self) -> int:
        return self.polys[0].num_vars

    def pole_orders(self) -> list:
        """min_i order_at(P_i, p) at each pole point."""
        return [min(P.order_at(p) for P in self.polys) for p in self.pole_points]

    def weights_verified(self) -> bool:
        return self.pole_orders() == list(self.pole_weights)

    def growth_upper_bound(self) -> int:
        """Certified bound gamma_u <= max deg P_i."""
        return max(P.degree for P in self.polys)

    def __call__(self, z) -> float:
        return 0.5 * math.log(sum(abs(complex(P.evaluate([complex(x) for x in z]))) ** 2 for P in self.polys))

    def to_json(self):
        return {
            "polys": [P.to_json() for P in self.polys],
            "pole_points": [[qi(c).to_json() for c in p] for p in self.pole_points],
            "pole_weights": list(self.pole_weights),
            "gamma": self.gamma_claimed,
        }

    @classmethod
    def from_json(cls, obj) -> "GreenFunction":
        pts = [tuple(qi(c) if isinstance(c, dict) else qi(to_fraction(c)) for c in p) for p in obj["pole_points"]]
        n = len(pts[0]) if pts else None
        polys = [MultiPoly.from_json(p, n) for p in obj["polys"]]
        if not polys:
            raise ValueError("a Green function needs at least one polynomial")
        return cls(polys, pts, [int(w) for w in obj["pole_weights"]], int(obj["gamma"]))


def _affine_points(S):
    pts = S.points if isinstance(S, PointConfig) else list(S)
    out = []
    for p in pts:
        if isinstance(p, ProjPoint):
            p = p.affine()
        out.append(tuple(qi(c) for c in p))
    return out


def _proj(points):
    return [ProjPoint.from_affine(p) for p in points]


# Bezout certification -------------------------------------------------------------

def _binary_forms_share_factor(f: MultiPoly, g: MultiPoly) -> bool:
    m, k = f.degree, g.degree
    fc = [f.terms.get((i, m - i), ZERO) for i in range(m + 1)]
    gc = [g.terms.get((i, k - i), ZERO) for i in range(k + 1)]
    if not fc[-1] and not gc[-1]:
        return True  # both divisible by y
    return not linalg.det(sylvester_matrix(fc, gc))


def intersection_lower_bound(P1: MultiPoly, P2: MultiPoly, a) -> int:
    """Lower bound for the local intersection number of two plane curves at a.

    m1*m2, plus one when the tangent cones share a line.
    """
    m1, m2 = P1.order_at(a), P2.order_at(a)
    if m1 == 0 or m2 == 0:
        return 0
    bound = m1 * m2
    if _binary_forms_share_factor(P1.lowest_form(a), P2.lowest_form(a)):
        bound += 1
    return bound


@dataclass(frozen=True)
class BezoutCertificate:
    local_bounds: tuple
    total: int
    expected: int
    orders_ok: bool

    @property
    def ok(self) -> bool:
        return self.orders_ok and self.total == self.expected


def _local_bounds(P1: MultiPoly, P2: MultiPoly, pts, orders) -> BezoutCertificate:
    bounds, orders_ok = [], True
    for p, k in zip(pts, orders):
        o1, o2 = P1.order_at(p), P2.order_at(p)
        if o1 == 0 or o2 == 0 or o1 * o2 < k * k:
            orders_ok = False
        bounds.append(intersection_lower_bound(P1, P2, p))
    return BezoutCertificate(tuple(bounds), sum(bounds), P1.degree * P2.degree, orders_ok)


def bezout_certificate(P1: MultiPoly, P2: MultiPoly, S, orders) -> BezoutCertificate:
    if P1.num_vars != 2 or P2.num_vars != 2:
        raise ValueError("Bezout certification is planar")
    if not is_coprime(P1, P2):
        raise ValueError("polynomials share a factor; Bezout certification does not apply")
    return _local_bounds(P1, P2, _affine_points(S), orders)


def certify_zero_locus(P1: MultiPoly, P2: MultiPoly, S, orders) -> bool:
    """True iff {P1 = P2 = 0} (projectively) is exactly S with the stated orders.

    Each point must be a common zero with order product >= orders^2, and the
    local intersection lower bounds must add up to deg P1 * deg P2; Bezout
    then leaves no room for further common zeros, including at infinity.
    """
    return bezout_certificate(P1, P2, S, orders).ok


# constructions ----------------------------------------------------------------------

def construct_lemma22(S) -> GreenFunction:
    """Quadratic Green function with growth 2 for 4 affinely independent points of C^n."""
    pts = _affine_points(S)
    if len(pts) != 4:
        raise PreconditionError("need exactly 4 points")
    n = len(pts[0])
    if n < 3:
        raise PreconditionError("points must live in C^n with n >= 3")
    if m_invariant(_proj(pts), 1) != 2:
        raise PreconditionError("three of the points are collinear (m_1 != 2)")
    try:
        A = affine_normalize(pts)
    except GeometryError as exc:
        raise PreconditionError(str(exc)) from exc
    w = A.component_polys()
    ell = w[0] + w[1].scale(qi(2)) + w[2].scale(qi(3))
    polys = [w[j] * (ell - qi(j + 1)) for j in range(3)] + w[3:]
    g = GreenFunction(polys, pts, [1, 1, 1, 1], 2, label="lemma22")
    if not g.weights_verified():
        raise ConstructionError("pole orders of the normalized quadric family are wrong")
    return g


_DIRECTIONS = [(1, 2), (2, 1), (1, 3), (3, 1), (1, -2), (2, -1), (1, -3), (3, -1),
               (2, 3), (3, 2), (2, -3), (3, -2), (1, 4), (4, 1), (1, -4), (4, -1)]


def construct_pencil(S) -> GreenFunction:
    """Pencil of conics with growth 2 for 3 or 4 planar points, no three collinear."""
    pts = _affine_points(S)
    if len(pts) not in (3, 4) or any(len(p) != 2 for p in pts):
        raise PreconditionError("need 3 or 4 points of C^2")
    if m_invariant(_proj(pts), 1) != 2:
        raise PreconditionError("three of the points are collinear (m_1 != 2)")
    orders = [1] * len(pts)
    if len(pts) == 4:
        basis = interpolation_nullspace(pts, orders, 2)
        if len(basis) != 2:
            raise ConstructionError("conics through 4 points should form a pencil")
        P1, P2 = basis
        if certify_zero_locus(P1, P2, pts, orders):
            return GreenFunction([P1, P2], pts, orders, 2, label="pencil-4")
        raise ConstructionError("pencil through 4 points failed certification")
    rows = []
    for p in pts:
        rows.extend(vanishing_conditions(p, 1, 2, 2))
    grad = vanishing_conditions(pts[0], 2, 2, 2)[1:]
    ncols = len(monomials(2, 2))
    for dx, dy in _DIRECTIONS:
        tangency = [qi(dx) * a + qi(dy) * b for a, b in zip(*grad)]
        basis = linalg.nullspace(rows + [tangency], ncols)
        if len(basis) != 2:
            continue
        P1, P2 = (MultiPoly.from_coefficients(2, 2, v) for v in basis)
        try:
            if certify_zero_locus(P1, P2, pts, orders):
                return GreenFunction([P1, P2], pts, orders, 2, label=f"pencil-3 tangent ({dx},{dy})")
        except ValueError:
            continue
    raise ConstructionError("no tangent direction gave a certified pencil")


def _conic_through(points):
    basis = interpolation_nullspace(points, [1] * len(points), 2)
    return basis[0] if len(basis) == 1 else None


def _second_generator(P1: MultiPoly, candidates, pts, orders, weights):
    """First candidate P2 independent of and coprime to P1 that certifies."""
    pool = list(candidates)
    pool += [a + b for a, b in itertools.combinations(candidates, 2)]
    for P2 in pool:
        if P2.degree != P1.degree or not is_linearly_independent([P1, P2]):
            continue
        if [min(P1.order_at(p), P2.order_at(p)) for p in pts] != list(weights):
            continue
        # cheap Bezout count first; the exact coprimality test is the slow part
        if not _local_bounds(P1, P2, pts, orders).ok or not is_coprime(P1, P2):
            continue
        return P2
    return None


def prop23_case(pts) -> str:
    proj = _proj(pts)
    m1 = m_invariant(proj, 1)
    if m1 == 2:
        return "case 1"
    triples = sum(1 for t in itertools.combinations(proj, 3) if linalg.rank([list(p.coords) for p in t]) <= 2)
    return "case 2(i)" if triples == 1 else "case 2(ii)"


def _collinear3(a, b, c) -> bool:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) == 0


def _has_property_p(pts, triple) -> bool:
    i, j, k = (pts[t] for t in triple)
    if _collinear3(i, j, k):
        return False
    others = [p for t, p in enumerate(pts) if t not in triple]
    return not any(_collinear3(a, b, p) for a, b in ((i, j), (j, k), (k, i)) for p in others)


def construct_prop23(S) -> GreenFunction:
    """Quartic Green function for 7 planar points with m_2 = 5.

    Weight 2 at a triple, 1 at the other four, growth 4.  P1 is a product of
    two conics through the triple.  Triples with property (P) (not collinear,
    and the three lines through pairs miss the other four points) are tried
    first, in lexicographic order, then the remaining ones.
    """
    pts = _affine_points(S)
    if len(pts) != 7 or any(len(p) != 2 for p in pts):
        raise PreconditionError("need 7 points of C^2")
    if m_invariant(_proj(pts), 2) != 5:
        raise PreconditionError("m_2(S) must equal 5")
    case = prop23_case(pts)
    triples = list(itertools.combinations(range(7), 3))
    triples.sort(key=lambda t: not _has_property_p(pts, t))
    for triple in triples:
        rest = [i for i in range(7) if i not in triple]
        orders = [2 if i in triple else 1 for i in range(7)]
        nullspace = None
        for pair in ((0, 1), (0, 2), (0, 3)):
            first = [rest[k] for k in pair]
            second = [i for i in rest if i not in first]
            C1 = _conic_through([pts[i] for i in list(triple) + first])
            C2 = _conic_through([pts[i] for i in list(triple) + second])
            if C1 is None or C2 is None:
                continue
            P1 = C1 * C2
            if [P1.order_at(p) for p in pts] != orders:
                continue
            if nullspace is None:
                nullspace = interpolation_nullspace(pts, orders, 4)
            P2 = _second_generator(P1, nullspace, pts, orders, orders)
            if P2 is not None:
                label = f"prop23 {case}, double points {tuple(i + 1 for i in triple)}"
                return GreenFunction([P1, P2], pts, orders, 4, label=label)
    raise ConstructionError("no certified quartic pair found; the construction should always succeed")


@dataclass
class Prop24Result:
    case: str
    subset: list
    green: GreenFunction


def _find_big_conic(pts):
    for sub in itertools.combinations(range(len(pts)), 6):
        basis = interpolation_nullspace([pts[i] for i in sub], [1] * 6, 2)
        if basis:
            return sub, basis[0]
    return None, None


def _line_poly(p, q) -> MultiPoly:
    (a0, a1), (b0, b1) = p, q
    # vanishes at p and q
    return MultiPoly.linear([a1 - b1, b0 - a0], a0 * b1 - a1 * b0)


def construct_prop24(A, q) -> Prop24Result:
    """Green-type functions for 7 points with m_2 = 6 plus a point q off the conic."""
    pts = _affine_points(A)
    q = tuple(qi(c) for c in (q.affine() if isinstance(q, ProjPoint) else q))
    if len(pts) != 7 or any(len(p) != 2 for p in pts) or len(q) != 2:
        raise PreconditionError("need 7 points of C^2 and a point q of C^2")
    proj = _proj(pts)
    if m_invariant(proj, 1) > 3:
        raise PreconditionError("m_1(A) must be at most 3")
    if m_invariant(proj, 2) != 6:
        raise PreconditionError("m_2(A) must equal 6")
    sub, C = _find_big_conic(pts)
    if q in pts:
        raise PreconditionError("q must not belong to A")
    if C.evaluate(list(q)) == 0:
        raise PreconditionError("q lies on the conic through six points of A")
    p1 = next(pts[i] for i in range(7) if i not in sub)
    on_conic = [pts[i] for i in sub]
    everything = [p1] + on_conic + [q]
    m1q = m_invariant(_proj(everything), 1)

    if m1q <= 3:
        L = _line_poly(p1, q)
        P1 = L * C
        candidates = interpolation_nullspace(everything, [1] * 8, 3)
        for P2 in candidates + [a + b for a, b in itertools.combinations(candidates, 2)]:
            if P2.degree != 3 or not is_linearly_independent([P1, P2]) or not is_coprime(P1, P2):
                continue
            g = GreenFunction([P1, P2], everything, [1] * 8, 3, label="prop24 (i)")
            if not g.weights_verified():
                continue
            g.extra_zeros = _extra_common_zeros(P1, P2, everything)
            return Prop24Result("(i)", everything, g)
        raise ConstructionError("no independent coprime cubic found")

    # m_1(A + q) = 4: the line p1 q carries two points of the conic
    line_pq = _line_poly(p1, q)
    on_line = [p for p in on_conic if line_pq.evaluate(list(p)) == 0]
    others = [p for p in on_conic if p not in on_line]
    if len(on_line) != 2:
        raise ConstructionError("expected two conic points on the line through p1 and q")
    labelled = [p1] + on_line + others  # p1, p2, p3, p4..p7

    def lonely(j):
        L = _line_poly(p1, labelled[j])
        return not any(L.evaluate(list(labelled[k])) == 0 for k in range(1, 7) if k != j)

    J = [j for j in range(3, 7) if lonely(j)]
    if J:
        reducible = linalg.rank(_conic_matrix(C)) < 3
        pairs = list(itertools.combinations(J, 2))
        if reducible:
            lines = _conic_line_sets(C, labelled)
            pairs.sort(key=lambda ij: any(labelled[ij[0]] in s and labelled[ij[1]] in s for s in lines))
        for i, j in pairs:
            P1 = _line_poly(p1, labelled[i]) * _line_poly(p1, labelled[j]) * C
            orders = [2 if k in (0, i, j) else 1 for k in range(7)]
            candidates = interpolation_nullspace(labelled, orders, 4)
            P2 = _second_generator(P1, candidates, labelled, orders, orders)
            if P2 is not None:
                label = f"prop24 (ii) case 1, double points (1,{i + 1},{j + 1})"
                return Prop24Result("(ii) case 1", labelled, GreenFunction([P1, P2], labelled, orders, 4, label=label))
        raise ConstructionError("case 1 of (ii) could not be certified")

    for drop in (1, 2):
        S = [p for k, p in enumerate(labelled) if k != drop] + [q]
        if m_invariant(_proj(S), 2) == 5:
            g = construct_prop23(S)
            g.label = "prop24 (ii) case 2 / " + g.label
            return Prop24Result("(ii) case 2", S, g)
    raise ConstructionError("case 2 of (ii): dropping a point did not give m_2 = 5")


def _conic_matrix(C: MultiPoly):
    return PlaneCurve(C.homogenize()).matrix()


def _conic_line_sets(C: MultiPoly, pts):
    """Points grouped by the line component they lie on (reducible conic)."""
    groups = []
    for a, b in itertools.combinations(pts, 2):
        L = _line_poly(a, b)
        on = [p for p in pts if L.evaluate(list(p)) == 0]
        if len(on) >= 3 and all(C.evaluate(list(p)) == 0 for p in on):
            if on not in groups:
                groups.append(on)
    return groups


def _extra_common_zeros(P1: MultiPoly, P2: MultiPoly, known):
    """Common zeros of P1, P2 (in P^2) outside the known affine points."""
    try:
        hits = intersect_curves(PlaneCurve(P1.homogenize()), PlaneCurve(P2.homogenize()))
    except (CommonComponentError, GeometryError):
        return []
    known_proj = _proj(known)
    return [p for p, _ in hits if not any(p == k for k in known_proj)]


# growth -------------------------------------------------------------------------------

def estimate_gamma(u: GreenFunction, radii=(1e3, 1e4, 1e5, 1e6), directions: int = 32, seed: int = 0) -> float:
    """Numeric growth constant: max over random unit directions of the slope of
    u(R zeta) against log R between the two largest radii."""
    radii = [float(r) for r in radii]
    if len(radii) < 2 or any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be increasing with at least two values")
    rng = np.random.default_rng(seed)
    n = u.num_vars
    zeta = rng.normal(size=(directions, n)) + 1j * rng.normal(size=(directions, n))
    zeta /= np.linalg.norm(zeta, axis=1, keepdims=True)
    D = u.growth_upper_bound()
    compiled = []
    for P in u.polys:
        exps = np.array(list(P.terms.keys()), dtype=float).reshape(-1, n)
        coeffs = np.array([complex(c) for c in P.terms.values()])
        compiled.append((exps, coeffs))

    def u_at(R):
        # u(R zeta) = D log R + 1/2 log sum |P_i(R zeta) / R^D|^2, no overflow
        total = np.zeros(directions)
        for exps, coeffs in compiled:
            if not len(coeffs):
                continue
            mono = np.prod(zeta[:, None, :] ** exps[None, :, :], axis=2)
            scale = R ** (exps.sum(axis=1) - D)
            total += np.abs(mono @ (coeffs * scale)) ** 2
        with np.errstate(divide="ignore"):
            return D * math.log(R) + 0.5 * np.log(total)

    r0, r1 = radii[-2], radii[-1]
    slopes = (u_at(r1) - u_at(r0)) / (math.log(r1) - math.log(r0))
    slopes = slopes[np.isfinite(slopes)]
    return float(slopes.max())


# the Lelong inequality ---------------------------------------------------------------------

@dataclass(frozen=True)
class Prop21Verdict:
    lhs: Fraction
    rhs: Fraction
    holds: bool
    equality: bool

    def to_json(self):
        return {"lhs": format_rational(self.lhs), "rhs": format_rational(self.rhs), "holds": self.holds}


def check_prop21(T: Current, u: GreenFunction) -> Prop21Verdict:
    """sum_j w_j nu(T, p_j) <= gamma_u * ||T|| for a bidimension (1,1) current."""
    if u.pole_points and len(u.pole_points[0]) != T.ambient_dim:
        raise ValueError("pole points and current live in different dimensions")
    lhs = sum(
        (w * lelong_at(T, ProjPoint.from_affine(p)).lower for w, p in zip(u.pole_weights, u.pole_points)),
        Fraction(0),
    )
    rhs = u.gamma_claimed * mass(T)
    return Prop21Verdict(lhs, rhs, lhs <= rhs, lhs == rhs)
