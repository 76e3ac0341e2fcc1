"""Exact projective geometry over Q(i).

Points of P^n are :class:`ProjPoint` (homogeneous coordinates, the affine
chart being ``last coordinate != 0``).  Lines live in any P^n; plane curves
of arbitrary degree only in P^2.  Points whose coordinates leave Q(i) (for
instance a line meeting a conic) are carried numerically at
the working precision of :mod:`lelong.field` and flagged ``exact=False``.
"""
from __future__ import annotations

import itertools
import math

import mpmath

from . import linalg
from .field import precision, ONE, ZERO, GaussianRational, is_exact, is_zero, qi, snap, to_mp, tolerance
from .poly import MultiPoly, is_coprime, monomials, resultant, univariate_roots


class GeometryError(ValueError):
    """Invalid geometric input (coincident points, degenerate span...)."""


class CommonComponentError(GeometryError):
    """Two curves passed to :func:`intersect` share a component."""


def _mp_abs_max(values):
    with mpmath.workprec(precision()):
        return max((abs(to_mp(v)) for v in values), default=mpmath.mpf(0))


class ProjPoint:
    """A point of P^n, normalized so that it compares by value."""

    __slots__ = ("coords", "exact")

    def __init__(self, coords):
        coords = list(coords)
        if len(coords) < 2:
            raise GeometryError("a projective point needs at least 2 coordinates")
        if all(is_exact(c) for c in coords):
            coords = [qi(c) for c in coords]
            k = next((i for i, c in enumerate(coords) if c), None)
            if k is None:
                raise GeometryError("all homogeneous coordinates are zero")
            inv = coords[k].inverse()
            self.coords = tuple(c * inv for c in coords)
            self.exact = True
        else:
            with mpmath.workprec(precision()):
                coords = [to_mp(c) for c in coords]
                k = max(range(len(coords)), key=lambda i: abs(coords[i]))
                if abs(coords[k]) == 0:
                    raise GeometryError("all homogeneous coordinates are zero")
                piv = coords[k]
                self.coords = tuple(c / piv for c in coords)
            self.exact = False

    @classmethod
    def from_affine(cls, z) -> "ProjPoint":
        return cls(list(z) + [ONE])

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def is_affine(self) -> bool:
        return not is_zero(self.coords[-1])

    def affine(self):
        """Affine coordinates in the chart ``last != 0``."""
        t = self.coords[-1]
        if is_zero(t):
            raise GeometryError("point lies on the hyperplane at infinity")
        if self.exact:
            inv = t.inverse()
            return tuple(c * inv for c in self.coords[:-1])
        with mpmath.workprec(precision()):
            return tuple(c / t for c in self.coords[:-1])

    def snapped(self) -> "ProjPoint":
        """Exact version if the numeric coordinates snap to Q(i) (unverified)."""
        if self.exact:
            return self
        return ProjPoint([snap(c) for c in self.coords])

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        if len(self.coords) != len(other.coords):
            return False
        if self.exact and other.exact:
            return self.coords == other.coords
        return linalg.rank([list(self.coords), list(other.coords)]) == 1

    def __hash__(self):
        if self.exact:
            return hash(self.coords)
        return hash(("inexact", len(self.coords)))

    def sort_key(self):
        if self.exact:
            return (0, tuple(c.sort_key() for c in self.coords))
        with mpmath.workprec(64):
            return (1, tuple((float(c.real), float(c.imag)) for c in self.coords))

    def __repr__(self):
        if self.exact:
            return "[" + ":".join(str(c) for c in self.coords) + "]"
        with mpmath.workprec(64):
            return "~[" + ":".join(mpmath.nstr(c, 12) for c in self.coords) + "]"

    def to_json(self):
        if self.exact:
            return [c.to_json() for c in self.coords]
        with mpmath.workprec(precision()):
            return {
                "approx": [[mpmath.nstr(c.real, 40), mpmath.nstr(c.imag, 40)] for c in self.coords],
                "exact": False,
            }

    @classmethod
    def from_json(cls, obj) -> "ProjPoint":
        if isinstance(obj, dict):
            with mpmath.workprec(precision()):
                return cls([mpmath.mpc(mpmath.mpf(re), mpmath.mpf(im)) for re, im in obj["approx"]])
        return cls([GaussianRational.from_json(c) for c in obj])


def proj_point(*coords) -> ProjPoint:
    return ProjPoint([qi(c) for c in coords])


def sort_points(points):
    return sorted(points, key=lambda p: p.sort_key())


def unique_points(points):
    out = []
    for p in points:
        if not any(p == q for q in out):
            out.append(p)
    return out


# lines ------------------------------------------------------------------------

class Line:
    """A projective line in P^n, stored by a canonical (RREF) spanning pair."""

    __slots__ = ("ambient_dim", "span", "exact")
    degree = 1

    def __init__(self, p: ProjPoint, q: ProjPoint):
        if p.dim != q.dim:
            raise GeometryError("points live in different projective spaces")
        red, pivots, exact = linalg.row_reduce([list(p.coords), list(q.coords)])
        if len(pivots) < 2:
            raise GeometryError("a line needs two distinct points")
        self.ambient_dim = p.dim
        self.span = (ProjPoint(red[0]), ProjPoint(red[1]))
        self.exact = exact

    @classmethod
    def from_form(cls, a, b, c) -> "Line":
        """The line {a*z0 + b*z1 + c*z2 = 0} of P^2."""
        form = [qi(a), qi(b), qi(c)]
        basis = linalg.nullspace([form], 3)
        if len(basis) != 2:
            raise GeometryError("zero linear form")
        return cls(ProjPoint(basis[0]), ProjPoint(basis[1]))

    def contains(self, p: ProjPoint) -> bool:
        if p.dim != self.ambient_dim:
            raise GeometryError("dimension mismatch")
        rows = [list(self.span[0].coords), list(self.span[1].coords), list(p.coords)]
        return linalg.rank(rows) <= 2

    def multiplicity_at(self, p: ProjPoint) -> int:
        return 1 if self.contains(p) else 0

    def form(self):
        """Coefficients of the linear form cutting out the line (P^2 only)."""
        if self.ambient_dim != 2:
            raise GeometryError("linear forms are only defined for lines in P^2")
        (a0, a1, a2), (b0, b1, b2) = self.span[0].coords, self.span[1].coords
        return (a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0)

    def to_poly(self) -> MultiPoly:
        return MultiPoly.linear(list(self.form()))

    def to_curve(self) -> "PlaneCurve":
        return PlaneCurve(self.to_poly())

    def point_at(self, s, t) -> ProjPoint:
        a, b = self.span
        return ProjPoint([s * x + t * y for x, y in zip(a.coords, b.coords)])

    def transform(self, m: "ProjectiveTransform") -> "Line":
        return Line(m.apply(self.span[0]), m.apply(self.span[1]))

    def key(self):
        return ("line", self.span[0].coords, self.span[1].coords)

    def __eq__(self, other):
        if not isinstance(other, Line):
            return NotImplemented
        if self.exact and other.exact:
            return self.span == other.span
        return other.contains(self.span[0]) and other.contains(self.span[1])

    def __hash__(self):
        return hash(self.key()) if self.exact else hash("inexact-line")

    def sort_key(self):
        return (1, self.span[0].sort_key(), self.span[1].sort_key())

    def __repr__(self):
        return f"Line({self.span[0]!r}, {self.span[1]!r})"

    def to_json(self):
        return {"span": [self.span[0].to_json(), self.span[1].to_json()]}


def line_through(p: ProjPoint, q: ProjPoint) -> Line:
    if p == q:
        raise GeometryError("line_through needs two distinct points")
    return Line(p, q)


# plane curves -------------------------------------------------------------------

class PlaneCurve:
    """A curve in P^2 given by a nonzero homogeneous form in 3 variables."""

    __slots__ = ("poly", "degree")
    ambient_dim = 2

    def __init__(self, poly: MultiPoly, degree: int | None = None):
        if poly.num_vars != 3:
            raise GeometryError("plane curves need a form in 3 variables")
        if poly.is_zero():
            raise GeometryError("zero polynomial does not define a curve")
        if not poly.is_homogeneous():
            raise GeometryError("defining polynomial must be homogeneous")
        if degree is not None and degree != poly.degree:
            raise GeometryError(f"declared degree {degree} but polynomial has degree {poly.degree}")
        if poly.degree < 1:
            raise GeometryError("constant forms do not define curves")
        self.poly = poly.monic() if poly.is_exact() else poly
        self.degree = poly.degree
        if self.degree == 2 and self.is_exact() and linalg.rank(self.matrix()) < 2:
            raise GeometryError("non-reduced conic (a double line); use weight 2 on the line instead")

    def is_exact(self) -> bool:
        return self.poly.is_exact()

    def matrix(self):
        """Symmetric matrix of a conic, F(w) = w^T A w."""
        if self.degree != 2:
            raise GeometryError("matrix() is only defined for conics")
        a = [[ZERO] * 3 for _ in range(3)]
        for e, c in self.poly.terms.items():
            idx = [i for i, k in enumerate(e) for _ in range(k)]
            i, j = idx
            if i == j:
                a[i][i] = a[i][i] + c
            else:
                a[i][j] = a[i][j] + c / 2
                a[j][i] = a[j][i] + c / 2
        return a

    def value(self, p: ProjPoint):
        return self.poly.evaluate(list(p.coords))

    def contains(self, p: ProjPoint) -> bool:
        if p.dim != 2:
            raise GeometryError("plane curves live in P^2")
        v = self.value(p)
        if is_exact(v):
            return not v
        return is_zero(v, _mp_abs_max(self.poly.terms.values()))

    def multiplicity_at(self, p: ProjPoint) -> int:
        """Multiplicity of the curve at ``p`` (0 when p is off the curve)."""
        k = _chart_index(p)
        local = self.poly.dehomogenize(k)
        z = _chart_coords(p, k)
        m = local.order_at(z)
        return 0 if m == math.inf else int(m)

    def singular_points(self) -> list[ProjPoint]:
        if self.degree == 1:
            return []
        if self.degree == 2 and self.is_exact():
            return [ProjPoint(v) for v in linalg.nullspace(self.matrix(), 3)]
        return _singular_points_numeric(self)

    def is_smooth(self) -> bool:
        return not self.singular_points()

    def line_factors(self) -> list[Line] | None:
        """For a singular conic, its two lines when they are defined over Q(i)."""
        if self.degree != 2:
            return None
        sing = self.singular_points()
        if not sing:
            return None
        node = sing[0]
        other = Line.from_form(*_generic_form(node))
        hits = intersect_line_curve(other, self)
        if len(hits) != 2 or not all(ok for _, ok in hits):
            return None
        return [Line(node, hits[0][0]), Line(node, hits[1][0])]

    def transform(self, m: "ProjectiveTransform") -> "PlaneCurve":
        inv = m.inverse_matrix()
        images = [MultiPoly.linear(row) for row in inv]
        return PlaneCurve(self.poly.substitute(images))

    def key(self):
        return ("curve", frozenset(self.poly.terms.items()))

    def __eq__(self, other):
        if not isinstance(other, PlaneCurve):
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self):
        return hash(self.key())

    def sort_key(self):
        return (self.degree, tuple(sorted((e, c.sort_key()) for e, c in self.poly.terms.items())))

    def __repr__(self):
        return f"PlaneCurve(deg={self.degree}: {self.poly!r})"

    def to_json(self):
        return {"polynomial": self.poly.to_json(), "degree": self.degree}


def _generic_form(node: ProjPoint):
    for form in itertools.product(range(1, 4), range(-3, 4), range(-3, 4)):
        if sum(qi(f) * c for f, c in zip(form, node.coords)):
            return form
    raise GeometryError("no generic line found")


def _chart_index(p: ProjPoint) -> int:
    if p.exact:
        return max(i for i, c in enumerate(p.coords) if c)
    with mpmath.workprec(precision()):
        return max(range(len(p.coords)), key=lambda i: abs(p.coords[i]))


def _chart_coords(p: ProjPoint, k: int):
    t = p.coords[k]
    if p.exact:
        inv = t.inverse()
        return [c * inv for i, c in enumerate(p.coords) if i != k]
    with mpmath.workprec(precision()):
        return [c / t for i, c in enumerate(p.coords) if i != k]


def curve_from_json(obj):
    if "span" in obj:
        return Line(ProjPoint.from_json(obj["span"][0]), ProjPoint.from_json(obj["span"][1]))
    poly = MultiPoly.from_json(obj["polynomial"], 3)
    if poly.degree == 1:
        return Line.from_form(*[poly.terms.get(e, ZERO) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))])
    return PlaneCurve(poly, obj.get("degree"))


def as_component(c):
    """Lines in P^2 given as degree-1 curves become :class:`Line`."""
    if isinstance(c, PlaneCurve) and c.degree == 1:
        t = c.poly.terms
        return Line.from_form(*[t.get(e, ZERO) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))])
    return c


def conic_through(points) -> PlaneCurve:
    """The unique conic through the given points of P^2 (at least 5)."""
    rows = [_conic_row(p) for p in points]
    basis = linalg.nullspace(rows, 6)
    if len(basis) != 1:
        raise GeometryError(f"points do not determine a unique conic (pencil of dimension {len(basis)})")
    return PlaneCurve(MultiPoly.from_coefficients(3, 2, basis[0]).homogeneous_part(2))


_CONIC_MONOMIALS = tuple(m for m in monomials(3, 2) if sum(m) == 2)


def _conic_row(p: ProjPoint):
    row = []
    for e in _CONIC_MONOMIALS:
        v = ONE
        for c, k in zip(p.coords, e):
            if k:
                v = v * c**k
        row.append(v)
    return row


def _curve_row(p: ProjPoint, degree: int):
    mons = [m for m in monomials(3, degree) if sum(m) == degree]
    row = []
    for e in mons:
        v = ONE
        for c, k in zip(p.coords, e):
            if k:
                v = v * c**k
        row.append(v)
    return row


def curve_through(points, degree: int):
    """A nonzero form of the given degree vanishing at ``points`` (or None)."""
    rows = [_curve_row(p, degree) for p in points]
    mons = [m for m in monomials(3, degree) if sum(m) == degree]
    basis = linalg.nullspace(rows, len(mons))
    if not basis:
        return None
    return MultiPoly(3, dict(zip(mons, basis[0])))


def points_on_curve_of_degree(points, degree: int) -> bool:
    """True iff some nonzero form of the given degree vanishes on all points."""
    if degree == 1:
        return collinear(points)
    mons = [m for m in monomials(3, degree) if sum(m) == degree]
    if len(points) < len(mons):
        return True
    return linalg.rank([_curve_row(p, degree) for p in points]) < len(mons)


def collinear(points) -> bool:
    if len(points) <= 2:
        return True
    return linalg.rank([list(p.coords) for p in points]) <= 2


# intersections ------------------------------------------------------------------

def intersect(c1, c2):
    """Intersection points of two curves, each as ``(ProjPoint, exact)``.

    Lines may live in any P^n; other curves only in P^2.  Every point is
    returned once, regardless of its intersection multiplicity.
    """
    c1, c2 = as_component(c1), as_component(c2)
    if isinstance(c1, Line) and isinstance(c2, Line):
        return intersect_lines(c1, c2)
    if isinstance(c1, Line):
        return intersect_line_curve(c1, c2)
    if isinstance(c2, Line):
        return intersect_line_curve(c2, c1)
    return intersect_curves(c1, c2)


def intersect_lines(l1: Line, l2: Line):
    if l1.ambient_dim != l2.ambient_dim:
        raise GeometryError("lines in different ambient spaces")
    a1, b1 = l1.span
    a2, b2 = l2.span
    cols = [a1.coords, b1.coords, [-c for c in a2.coords], [-c for c in b2.coords]]
    rows = [list(r) for r in zip(*cols)]
    basis = linalg.nullspace(rows, 4)
    if len(basis) >= 2:
        raise CommonComponentError("the two lines coincide")
    if not basis:
        return []
    s, t = basis[0][0], basis[0][1]
    p = l1.point_at(s, t)
    return [(p, p.exact)]


def _restrict_to_line(line: Line, poly: MultiPoly) -> MultiPoly:
    a, b = line.span
    s = MultiPoly.variable(2, 0)
    t = MultiPoly.variable(2, 1)
    images = [s.scale(x) + t.scale(y) for x, y in zip(a.coords, b.coords)]
    return poly.substitute(images)


def intersect_line_curve(line: Line, curve: PlaneCurve, allow_common: bool = False):
    if line.ambient_dim != 2:
        raise GeometryError("line-curve intersection needs P^2")
    f = _restrict_to_line(line, curve.poly)
    if f.is_zero():
        if allow_common:
            return []
        raise CommonComponentError("the line is a component of the curve")
    d = curve.degree
    # f(s, t) binary form of degree d; roots with t = 0 correspond to span[0]
    uni = [f.terms.get((k, d - k), ZERO) for k in range(d + 1)]
    out = []
    if not uni[-1]:
        out.append((line.span[0], line.span[0].exact))
    if line.exact and curve.is_exact():
        for r, exact in univariate_roots(uni):
            p = line.point_at(r, ONE)
            out.append((p, p.exact))
    else:
        with mpmath.workprec(precision()):
            coeffs = [to_mp(c) for c in reversed(uni)]
            while coeffs and coeffs[0] == 0:
                coeffs.pop(0)
            if len(coeffs) > 1:
                for r in mpmath.polyroots(coeffs, maxsteps=400, extraprec=2 * precision(), error=False):
                    out.append((line.point_at(r, 1), False))
    return _finish(out, [line, curve])


def _finish(hits, curves):
    """Snap numeric points that are exact in disguise, and deduplicate."""
    out = []
    for p, _ in hits:
        if not p.exact:
            cand = p.snapped()
            if all(c.contains(cand) for c in curves if _is_exact_component(c)) and all(
                _is_exact_component(c) for c in curves
            ):
                p = cand
        if not any(p == q for q, _ in out):
            out.append((p, p.exact))
    return sorted(out, key=lambda h: h[0].sort_key())


def _is_exact_component(c) -> bool:
    return c.exact if isinstance(c, Line) else c.is_exact()


def _translations():
    yield (0, 0)
    for r in range(1, 8):
        for a in range(-r, r + 1):
            for b in range(-r, r + 1):
                if max(abs(a), abs(b)) == r:
                    yield (a, b)


def _shares_component(f: MultiPoly, g: MultiPoly) -> bool:
    z2_divides = lambda p: all(e[2] > 0 for e in p.terms)
    if z2_divides(f) and z2_divides(g):
        return True
    return not is_coprime(f.dehomogenize(2), g.dehomogenize(2))


def intersect_curves(c1: PlaneCurve, c2: PlaneCurve):
    """Common points of two plane curves without common component.

    Moves a point off both curves to [0:0:1], eliminates the last variable by
    a resultant, then lifts each root.  Roots in Q(i) are found exactly.
    """
    f, g = c1.poly, c2.poly
    if _shares_component(f, g):
        raise CommonComponentError("the curves share a component")
    for a, b in _translations():
        if f.evaluate([qi(a), qi(b), ONE]) and g.evaluate([qi(a), qi(b), ONE]):
            break
    # w -> (w0 + a w2, w1 + b w2, w2) sends [0:0:1] to [a:b:1]
    m = ProjectiveTransform([[1, 0, a], [0, 1, b], [0, 0, 1]])
    x, y, z = (MultiPoly.variable(3, i) for i in range(3))
    images = [x + z.scale(qi(a)), y + z.scale(qi(b)), z]
    fp, gp = f.substitute(images), g.substitute(images)
    hits = []
    # affine slice y = 1: a bivariate system in (x, z)
    f1 = fp.substitute([MultiPoly.variable(2, 0), MultiPoly.constant(2, ONE), MultiPoly.variable(2, 1)])
    g1 = gp.substitute([MultiPoly.variable(2, 0), MultiPoly.constant(2, ONE), MultiPoly.variable(2, 1)])
    res = resultant(f1, g1, 1)
    uni = [res.terms.get((k, 0), ZERO) for k in range(res.degree_in(0) + 1)] if not res.is_zero() else []
    for x0, _ in univariate_roots(uni):
        hits.extend(_lift(fp, gp, [x0, ONE]))
    # slice y = 0 (points [1:0:z] and possibly [0:0:1], which is on neither curve)
    hits.extend(_lift(fp, gp, [ONE, ZERO]))
    out = [(m.apply(p), p.exact) for p in hits]
    return _finish(out, [c1, c2])


def _lift(fp: MultiPoly, gp: MultiPoly, xy):
    """Points [x:y:z] on both curves for fixed (x, y)."""
    zpoly = fp.substitute(
        [MultiPoly.constant(1, xy[0]), MultiPoly.constant(1, xy[1]), MultiPoly.variable(1, 0)]
    )
    coeffs = [zpoly.terms.get((k,), ZERO) for k in range(fp.degree + 1)]
    out = []
    if all(is_exact(c) for c in coeffs):
        roots = univariate_roots(coeffs)
    else:
        with mpmath.workprec(precision()):
            cs = [to_mp(c) for c in reversed(coeffs)]
            while cs and abs(cs[0]) == 0:
                cs.pop(0)
            roots = [(r, False) for r in mpmath.polyroots(cs, maxsteps=400, extraprec=2 * precision(), error=False)] if len(cs) > 1 else []
    for z0, _ in roots:
        p = ProjPoint([xy[0], xy[1], z0])
        v = gp.evaluate(list(p.coords))
        if is_exact(v):
            ok = not v
        else:
            ok = is_zero(v, _mp_abs_max(gp.terms.values()) * 10**6)
        if ok:
            out.append(p)
    return out


def _singular_points_numeric(curve: PlaneCurve):
    f = curve.poly
    partials = [f.derivative(i) for i in range(3)]
    for a, b in itertools.product(range(1, 5), range(1, 5)):
        g1 = partials[0] + partials[1].scale(qi(a)) + partials[2].scale(qi(b))
        g2 = partials[1] + partials[2].scale(qi(a + b))
        if g1.is_zero() or g2.is_zero() or g1.degree < 1 or g2.degree < 1:
            continue
        try:
            hits = intersect_curves(PlaneCurve(g1), PlaneCurve(g2))
        except (CommonComponentError, GeometryError):
            continue
        out = []
        for p, _ in hits:
            if all(_vanishes(q, p) for q in partials):
                out.append(p)
        return out
    raise GeometryError("could not isolate singular points (curve may be non-reduced)")


def _vanishes(poly: MultiPoly, p: ProjPoint) -> bool:
    if poly.is_zero():
        return True
    v = poly.evaluate(list(p.coords))
    if is_exact(v):
        return not v
    return is_zero(v, _mp_abs_max(poly.terms.values()) * 10**6)


# transformations ------------------------------------------------------------------

class ProjectiveTransform:
    """An invertible linear map of homogeneous coordinates."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        self.matrix = [[qi(x) for x in row] for row in matrix]
        if linalg.rank(self.matrix) != len(self.matrix):
            raise GeometryError("projective transformation must be invertible")

    @classmethod
    def identity(cls, n: int) -> "ProjectiveTransform":
        return cls(linalg.identity(n + 1))

    def apply(self, p: ProjPoint) -> ProjPoint:
        return ProjPoint(linalg.mat_vec(self.matrix, list(p.coords)))

    __call__ = apply

    def inverse_matrix(self):
        return linalg.inverse(self.matrix)

    def inverse(self) -> "ProjectiveTransform":
        return ProjectiveTransform(self.inverse_matrix())

    def compose(self, other: "ProjectiveTransform") -> "ProjectiveTransform":
        """``self`` after ``other``."""
        return ProjectiveTransform(linalg.mat_mul(self.matrix, other.matrix))

    def is_identity(self) -> bool:
        return self.matrix == linalg.identity(len(self.matrix))

    def __repr__(self):
        return f"ProjectiveTransform({[[str(x) for x in r] for r in self.matrix]})"


class AffineMap:
    """z -> A z + b on C^n."""

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a = [[qi(x) for x in row] for row in a]
        self.b = [qi(x) for x in b]

    def apply(self, z):
        return tuple(v + c for v, c in zip(linalg.mat_vec(self.a, [qi(x) for x in z]), self.b))

    __call__ = apply

    def component_polys(self) -> list[MultiPoly]:
        """The n coordinate functions of the map as linear polynomials."""
        return [MultiPoly.linear(row, c) for row, c in zip(self.a, self.b)]

    def is_identity(self) -> bool:
        n = len(self.b)
        return self.a == linalg.identity(n) and not any(self.b)


# point configurations -----------------------------------------------------------------

class PointConfig:
    """A finite set of distinct points of P^n."""

    __slots__ = ("points", "ambient_dim")

    def __init__(self, points, ambient_dim: int | None = None):
        points = list(points)
        if ambient_dim is None:
            if not points:
                raise GeometryError("ambient dimension needed for an empty configuration")
            ambient_dim = points[0].dim
        if any(p.dim != ambient_dim for p in points):
            raise GeometryError("points in different projective spaces")
        for i, p in enumerate(points):
            if any(p == q for q in points[:i]):
                raise GeometryError(f"repeated point {p!r}")
        self.points = points
        self.ambient_dim = ambient_dim

    @classmethod
    def from_affine(cls, points) -> "PointConfig":
        return cls([ProjPoint.from_affine([qi(c) for c in z]) for z in points])

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def to_json(self):
        return [p.to_json() for p in self.points]


def _as_points(S):
    return list(S.points) if isinstance(S, PointConfig) else list(S)


def m_invariant(S, j: int) -> int:
    """Largest number of points of S lying on one curve of degree ``j``."""
    pts = _as_points(S)
    k = len(pts)
    if j == 1:
        if k <= 2:
            return k
        best = 2
        for p, q in itertools.combinations(pts, 2):
            rows_pq = [list(p.coords), list(q.coords)]
            count = sum(1 for r in pts if linalg.rank(rows_pq + [list(r.coords)]) <= 2)
            best = max(best, count)
        return best
    if j == 2:
        if pts and pts[0].dim != 2:
            raise GeometryError("m_2 is only defined for configurations in P^2")
        if k <= 5:
            return k
        for size in range(k, 5, -1):
            for sub in itertools.combinations(pts, size):
                if linalg.rank([_conic_row(p) for p in sub]) < 6:
                    return size
        return 5
    raise ValueError("m_invariant supports j in {1, 2}")


def choose_chart(S) -> ProjectiveTransform:
    """Projective change of coordinates putting every point of S in the affine chart.

    The new last coordinate is ``h . w`` for the first small-integer
    hyperplane ``h`` (with last entry 1) that avoids S.
    """
    pts = _as_points(S)
    if not pts:
        raise GeometryError("empty configuration")
    n = pts[0].dim
    for radius in range(0, 64):
        values = sorted(range(-radius, radius + 1), key=lambda v: (abs(v), -v))
        for head in itertools.product(values, repeat=n):
            if max((abs(h) for h in head), default=0) != radius:
                continue
            h = [qi(c) for c in head] + [ONE]
            if all(not is_zero(sum((a * b for a, b in zip(h, p.coords)), ZERO)) for p in pts):
                m = linalg.identity(n + 1)
                m[n] = h
                return ProjectiveTransform(m)
    raise GeometryError("no avoiding hyperplane found in the search range")


def affine_normalize(S) -> AffineMap:
    """Affine map sending 4 affinely independent points of C^n to the standard
    quadruple 0, e_1, e_2, e_3, extended on a complement by coordinate vectors.
    """
    pts = [tuple(qi(c) for c in (p.affine() if isinstance(p, ProjPoint) else p)) for p in _as_points(S)]
    if len(pts) != 4:
        raise GeometryError("affine_normalize needs exactly 4 points")
    n = len(pts[0])
    if n < 3:
        raise GeometryError("degenerate span: need ambient dimension >= 3")
    p0 = pts[0]
    vs = [[a - b for a, b in zip(p, p0)] for p in pts[1:]]
    if linalg.rank(vs) < 3:
        raise GeometryError("degenerate span: points are affinely dependent")
    cols = list(vs)
    for k in range(n):
        if len(cols) == n:
            break
        e = [ONE if i == k else ZERO for i in range(n)]
        if linalg.rank(cols + [e]) == len(cols) + 1:
            cols.append(e)
    basis = [list(r) for r in zip(*cols)]  # columns are the new basis vectors
    a = linalg.inverse(basis)
    b = [-x for x in linalg.mat_vec(a, list(p0))]
    return AffineMap(a, b)
