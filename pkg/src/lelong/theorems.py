"""Shapes of the upper level sets V_alpha(T) and checkers for the
classification results on unit-mass currents.

Every membership claim in a :class:`Classification` carries an incidence
certificate that :func:`verify_certificates` re-checks from scratch.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .currents import Current, LevelSet, lelong_at, mass, upper_level_set
from .field import ONE, ZERO, to_fraction
from .geometry import (
    Line,
    PlaneCurve,
    ProjPoint,
    collinear,
    curve_through,
    line_through,
    points_on_curve_of_degree,
)

LINE_SHAPES = {"Empty", "ComplexLine", "FiniteSubsetOfLine"}
ONE_OFF_LINE_SHAPES = LINE_SHAPES | {"FiniteOneOffLine"}
PLANE_SHAPES = ONE_OFF_LINE_SHAPES | {
    "Conic",
    "LineUnionSubsetOfLine",
    "FiniteSubsetOfConic",
    "FiniteOneOffConic",
}


class PreconditionError(ValueError):
    """A checker was called outside the hypotheses of its theorem."""


@dataclass(frozen=True)
class Certificate:
    point: ProjPoint
    carrier: object
    exact: bool

    def verify(self) -> bool:
        return self.carrier.contains(self.point)


@dataclass
class Classification:
    shape: str
    level_set: LevelSet
    line: Line | None = None
    second_line: Line | None = None
    conic: PlaneCurve | None = None
    points: list = field(default_factory=list)
    outlier: ProjPoint | None = None
    evidence: list = field(default_factory=list)
    certificates: list = field(default_factory=list)
    truncated: bool = False

    @property
    def tolerance_qualified(self) -> bool:
        return any(not c.exact for c in self.certificates) or any(not p.exact for p in self.points)

    def summary(self) -> str:
        parts = [self.shape]
        if self.line is not None:
            parts.append(f"line={self.line!r}")
        if self.second_line is not None:
            parts.append(f"second_line={self.second_line!r}")
        if self.conic is not None:
            parts.append(f"conic={self.conic!r}")
        if self.points:
            parts.append(f"points={self.points!r}")
        if self.outlier is not None:
            parts.append(f"outlier={self.outlier!r}")
        if self.evidence:
            parts.append(f"evidence={self.evidence!r}")
        return " ".join(parts)


def verify_certificates(cl: Classification) -> bool:
    return all(c.verify() for c in cl.certificates)


def _line_for(points, curves, n):
    """A line containing all given (collinear) points."""
    if len(points) >= 2:
        return line_through(points[0], points[1])
    p = points[0]
    for c in curves:
        if isinstance(c, Line) and c.contains(p):
            return c
    for i in range(n + 1):
        e = [ZERO] * (n + 1)
        e[i] = ONE
        q = ProjPoint(e)
        if q != p:
            return line_through(p, q)
    raise AssertionError("unreachable")


def _conic_for(points):
    form = curve_through(points, 2)
    if form is None:
        return None
    return PlaneCurve(form)


def _certs(points, carrier):
    return [Certificate(p, carrier, p.exact and _carrier_exact(carrier)) for p in points]


def _carrier_exact(c) -> bool:
    return c.exact if isinstance(c, Line) else c.is_exact()


def _on_conic(points) -> bool:
    return points_on_curve_of_degree(points, 2)


def classify(T: Current, alpha) -> Classification:
    """Smallest shape (line, one-off line, conic, one-off conic...) covering V_alpha(T)."""
    alpha = to_fraction(alpha)
    if any(c.degree > 2 for c in T.components):
        raise PreconditionError("classification only handles components of degree <= 2")
    ls = upper_level_set(T, alpha, strict=True)
    truncated = T.residual_mass > 0
    n = T.ambient_dim
    unknown = ls.points("unknown")
    if unknown:
        return Classification("Unclassified", ls, evidence=unknown, truncated=truncated)
    curves = ls.curves
    pts = ls.points("in")

    if curves:
        lines = [c for c in curves if isinstance(c, Line)]
        if len(curves) == 1 and lines:
            L = lines[0]
            if not pts:
                return Classification("ComplexLine", ls, line=L, truncated=truncated)
            if collinear(pts):
                L2 = _line_for(pts, [], n)
                return Classification(
                    "LineUnionSubsetOfLine", ls, line=L, second_line=L2, points=pts,
                    certificates=_certs(pts, L2), truncated=truncated,
                )
        elif len(curves) == 1 and not pts:
            return Classification("Conic", ls, conic=curves[0], truncated=truncated)
        elif len(curves) == 2 and len(lines) == 2 and n == 2 and not pts:
            conic = PlaneCurve(lines[0].to_poly() * lines[1].to_poly())
            return Classification("Conic", ls, conic=conic, truncated=truncated)
        return Classification("Unclassified", ls, evidence=pts, truncated=truncated)

    if not pts:
        return Classification("Empty", ls, truncated=truncated)
    if collinear(pts):
        L = _line_for(pts, T.components, n)
        return Classification("FiniteSubsetOfLine", ls, line=L, points=pts,
                              certificates=_certs(pts, L), truncated=truncated)
    for i, o in enumerate(pts):
        rest = pts[:i] + pts[i + 1:]
        if collinear(rest):
            L = _line_for(rest, T.components, n)
            return Classification("FiniteOneOffLine", ls, line=L, points=rest, outlier=o,
                                  certificates=_certs(rest, L), truncated=truncated)
    if n == 2:
        if _on_conic(pts):
            C = _conic_for(pts)
            return Classification("FiniteSubsetOfConic", ls, conic=C, points=pts,
                                  certificates=_certs(pts, C), truncated=truncated)
        for i, o in enumerate(pts):
            rest = pts[:i] + pts[i + 1:]
            if _on_conic(rest):
                C = _conic_for(rest)
                return Classification("FiniteOneOffConic", ls, conic=C, points=rest, outlier=o,
                                      certificates=_certs(rest, C), truncated=truncated)
    return Classification("Unclassified", ls, evidence=pts, truncated=truncated)


@dataclass
class TheoremCheck:
    theorem: str
    status: str  # "pass", "fail" or "indeterminate"
    detail: str
    classification: Classification | None = None
    witness: object = None
    offending: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def _require_unit_mass(T: Current):
    if mass(T) != 1:
        raise PreconditionError(f"current must have mass 1 (has {mass(T)})")


def _shape_check(name, T, alpha, allowed) -> TheoremCheck:
    cl = classify(T, alpha)
    if cl.shape == "Unclassified" and cl.level_set.points("unknown"):
        return TheoremCheck(name, "indeterminate", "residual mass straddles the threshold", cl,
                            offending=cl.evidence)
    if cl.shape in allowed and verify_certificates(cl):
        return TheoremCheck(name, "pass", cl.summary(), cl)
    return TheoremCheck(name, "fail", cl.summary(), cl, offending=cl.evidence or cl.points)


def check_thm11(T: Current, alpha) -> TheoremCheck:
    """V_alpha in a line (alpha >= 2/3) or at most one point off a line (alpha >= 1/2)."""
    alpha = to_fraction(alpha)
    _require_unit_mass(T)
    if not Fraction(1, 2) <= alpha < 1:
        raise PreconditionError("line classification needs 1/2 <= alpha < 1")
    allowed = LINE_SHAPES if alpha >= Fraction(2, 3) else ONE_OFF_LINE_SHAPES
    return _shape_check("1.1", T, alpha, allowed)


def check_thm12(T: Current, alpha) -> TheoremCheck:
    """In P^2 with 2/5 <= alpha < 1/2, V_alpha is covered by a conic up to one point."""
    alpha = to_fraction(alpha)
    if T.ambient_dim != 2:
        raise PreconditionError("conic classification is stated in P^2")
    _require_unit_mass(T)
    if not Fraction(2, 5) <= alpha < Fraction(1, 2):
        raise PreconditionError("conic classification needs 2/5 <= alpha < 1/2")
    return _shape_check("1.2", T, alpha, PLANE_SHAPES)


def _off(points, L):
    return [p for p in points if not L.contains(p)]


def check_thm38(T: Current, alpha, q1: ProjPoint, q2: ProjPoint) -> TheoremCheck:
    """Two points of Lelong number >= alpha > 1/2 force V_beta, beta = (2 - alpha)/3,
    to lie on a line through one of them up to one point."""
    alpha = to_fraction(alpha)
    _require_unit_mass(T)
    if alpha <= Fraction(1, 2):
        raise PreconditionError("alpha must exceed 1/2")
    if q1 == q2:
        raise PreconditionError("q1 and q2 must be distinct")
    for q in (q1, q2):
        if lelong_at(T, q).lower < alpha:
            raise PreconditionError(f"Lelong number at {q!r} is below alpha")
    beta = (2 - alpha) / 3
    ls = upper_level_set(T, beta, strict=True)
    if ls.points("unknown"):
        return TheoremCheck("3.8", "indeterminate", "residual mass straddles beta", offending=ls.points("unknown"))
    pts = ls.points("in")
    curves = ls.curves
    candidates = [line_through(q1, q2)]
    for q in (q1, q2):
        candidates += [c for c in curves if isinstance(c, Line) and c.contains(q)]
        candidates += [line_through(q, p) for p in pts if p != q]
    for L in candidates:
        if any(c != L for c in curves):
            continue
        off = _off(pts, L)
        if len(off) <= 1:
            return TheoremCheck("3.8", "pass", f"beta={beta}; line {L!r} leaves {off!r}", witness=L)
    return TheoremCheck("3.8", "fail", f"beta={beta}; no line through q1 or q2 works", offending=pts)


def check_prop310(T: Current, alpha, triple, L: Line) -> TheoremCheck:
    """Three points of Lelong number >= 1 - alpha on a line L pin V_alpha to L."""
    alpha = to_fraction(alpha)
    _require_unit_mass(T)
    if not Fraction(1, 2) <= alpha < 1:
        raise PreconditionError("alpha must satisfy 1/2 <= alpha < 1")
    triple = list(triple)
    if len(triple) != 3 or any(triple[i] == triple[j] for i in range(3) for j in range(i)):
        raise PreconditionError("need three distinct points")
    if not all(L.contains(p) for p in triple):
        raise PreconditionError("the three points must lie on L")
    if any(lelong_at(T, p).lower < 1 - alpha for p in triple):
        raise PreconditionError("Lelong numbers at the triple must be >= 1 - alpha")
    ls = upper_level_set(T, alpha, strict=True)
    if ls.points("unknown"):
        return TheoremCheck("3.10", "indeterminate", "residual mass straddles alpha", offending=ls.points("unknown"))
    pts = ls.points("in")
    foreign_curves = [c for c in ls.curves if c != L]
    off = _off(pts, L)
    if foreign_curves or len(off) > 1:
        return TheoremCheck("3.10", "fail", f"{len(off)} points off L, curves {foreign_curves!r}",
                            offending=off)
    if alpha >= Fraction(2, 3):
        inside = not off
        small = not ls.curves and len(pts) <= 2
        if not (inside or small):
            return TheoremCheck("3.10", "fail", "V_alpha neither inside L nor of size <= 2", offending=off)
    return TheoremCheck("3.10", "pass", f"{len(off)} point(s) off L", witness=L)
