"""Positive closed currents of divisor type on P^n.

A :class:`Current` is a finite weighted sum of curves (lines in any P^n,
plane curves in P^2) plus an optional residual of known mass and unknown
support.  The residual contributes nothing to Lelong lower bounds and its
whole mass to upper bounds.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .field import format_rational, to_fraction
from .geometry import (
    CommonComponentError,
    GeometryError,
    Line,
    PlaneCurve,
    ProjPoint,
    ProjectiveTransform,
    as_component,
    curve_from_json,
    intersect,
    sort_points,
    unique_points,
)
from .poly import divide_exact

Component = Union[Line, PlaneCurve]


class DecompositionError(ValueError):
    """Raised when T - beta[C] would not be positive."""


@dataclass(frozen=True)
class Current:
    ambient_dim: int
    terms: tuple = ()
    residual_mass: Fraction = Fraction(0)
    probe_points: tuple = ()

    @classmethod
    def build(cls, ambient_dim: int, terms=(), residual_mass=0, probe_points=()) -> "Current":
        """Validate, canonicalize components and merge repeated ones."""
        merged: list[list] = []
        for weight, comp in terms:
            weight = to_fraction(weight)
            if weight <= 0:
                raise ValueError("current weights must be positive")
            comp = as_component(comp)
            if comp.ambient_dim != ambient_dim:
                raise GeometryError(f"component lives in P^{comp.ambient_dim}, current in P^{ambient_dim}")
            for entry in merged:
                if entry[1] == comp:
                    entry[0] += weight
                    break
            else:
                merged.append([weight, comp])
        residual = to_fraction(residual_mass)
        if residual < 0:
            raise ValueError("residual mass must be nonnegative")
        probes = tuple(unique_points(probe_points))
        if any(p.dim != ambient_dim for p in probes):
            raise GeometryError("probe point dimension mismatch")
        return cls(ambient_dim, tuple((w, c) for w, c in merged), residual, probes)

    @property
    def components(self):
        return [c for _, c in self.terms]

    def weight_of(self, comp) -> Fraction:
        comp = as_component(comp)
        return sum((w for w, c in self.terms if c == comp), Fraction(0))

    def __add__(self, other: "Current") -> "Current":
        if self.ambient_dim != other.ambient_dim:
            raise GeometryError("currents on different spaces")
        return Current.build(
            self.ambient_dim,
            self.terms + other.terms,
            self.residual_mass + other.residual_mass,
            self.probe_points + other.probe_points,
        )

    def scale(self, c) -> "Current":
        c = to_fraction(c)
        if c <= 0:
            raise ValueError("scale factor must be positive")
        return Current(
            self.ambient_dim,
            tuple((w * c, comp) for w, comp in self.terms),
            self.residual_mass * c,
            self.probe_points,
        )

    def with_probes(self, points) -> "Current":
        return Current.build(self.ambient_dim, self.terms, self.residual_mass, self.probe_points + tuple(points))

    def transform(self, m: ProjectiveTransform) -> "Current":
        return Current.build(
            self.ambient_dim,
            [(w, c.transform(m)) for w, c in self.terms],
            self.residual_mass,
            [m.apply(p) for p in self.probe_points],
        )

    def to_json(self):
        return {
            "ambient_dim": self.ambient_dim,
            "terms": [{"weight": format_rational(w), "component": c.to_json()} for w, c in self.terms],
            "residual_mass": format_rational(self.residual_mass),
            "probe_points": [p.to_json() for p in self.probe_points],
        }

    @classmethod
    def from_json(cls, obj) -> "Current":
        n = int(obj["ambient_dim"])
        terms = [(to_fraction(t["weight"]), curve_from_json(t["component"])) for t in obj.get("terms", [])]
        probes = [ProjPoint.from_json(p) for p in obj.get("probe_points", [])]
        return cls.build(n, terms, to_fraction(obj.get("residual_mass", "0")), probes)


def line_current(weighted_lines, ambient_dim: int = 2, residual_mass=0) -> Current:
    return Current.build(ambient_dim, weighted_lines, residual_mass)


def mass(T: Current) -> Fraction:
    return sum((w * c.degree for w, c in T.terms), Fraction(0)) + T.residual_mass


@dataclass(frozen=True)
class LelongInterval:
    lower: Fraction
    upper: Fraction
    exact: bool = True

    def verdict(self, alpha, strict: bool) -> str:
        passes = (lambda v: v > alpha) if strict else (lambda v: v >= alpha)
        if passes(self.lower):
            return "in"
        if not passes(self.upper):
            return "out"
        return "unknown"

    def to_json(self):
        return {"lower": format_rational(self.lower), "upper": format_rational(self.upper), "exact": self.exact}


def lelong_at(T: Current, p: ProjPoint) -> LelongInterval:
    """Lelong number of T at p: sum of weight times multiplicity, plus residual slack."""
    if p.dim != T.ambient_dim:
        raise GeometryError("point and current live in different spaces")
    lower = sum((w * c.multiplicity_at(p) for w, c in T.terms), Fraction(0))
    return LelongInterval(lower, lower + T.residual_mass, p.exact)


def component_contained(c, d) -> bool:
    """Is the reduced curve ``c`` contained in the curve ``d``?"""
    c, d = as_component(c), as_component(d)
    if isinstance(c, Line):
        if isinstance(d, Line):
            return c == d
        return all(d.contains(c.point_at(1, t)) for t in range(d.degree + 1))
    if isinstance(d, Line):
        return False
    if c == d:
        return True
    try:
        divide_exact(d.poly, c.poly)
    except ValueError:
        return False
    return True


def generic_value(T: Current, comp) -> Fraction:
    """Lelong number of T at a general point of ``comp`` (residual excluded)."""
    return sum((w for w, c in T.terms if component_contained(comp, c)), Fraction(0))


@dataclass(frozen=True)
class IsolatedPoint:
    point: ProjPoint
    interval: LelongInterval
    membership: str


@dataclass(frozen=True)
class LevelSet:
    curve_components: tuple
    isolated_points: tuple
    threshold: Fraction
    strict: bool
    warnings: tuple = field(default=())

    def points(self, membership: str = "in"):
        return [ip.point for ip in self.isolated_points if ip.membership == membership]

    @property
    def curves(self):
        return [c for c, _ in self.curve_components]

    def is_empty(self) -> bool:
        return not self.curve_components and not self.points("in")


def _pieces(comp):
    """A component split into Q(i)-rational lines when it is a reducible conic."""
    if isinstance(comp, PlaneCurve) and comp.degree == 2:
        lines = comp.line_factors()
        if lines:
            return lines
    return [comp]


@lru_cache(maxsize=512)
def candidate_points(T: Current) -> tuple:
    """Every point where T's Lelong number can exceed the generic value of the
    components through it: pairwise intersections, singular points, probes."""
    pieces = []
    for comp in T.components:
        for piece in _pieces(comp):
            if not any(piece == q for q in pieces):
                pieces.append(piece)
    pts = []
    for i, a in enumerate(pieces):
        if isinstance(a, PlaneCurve):
            pts.extend(a.singular_points())
        for b in pieces[i + 1:]:
            try:
                pts.extend(p for p, _ in intersect(a, b))
            except CommonComponentError:
                continue
    pts.extend(T.probe_points)
    return tuple(sort_points(unique_points(pts)))


def upper_level_set(T: Current, alpha, strict: bool) -> LevelSet:
    """V_alpha (strict) or E_alpha (non-strict) of T."""
    alpha = to_fraction(alpha)
    if not 0 <= alpha < 1:
        raise ValueError("threshold must satisfy 0 <= alpha < 1")
    passes = (lambda v: v > alpha) if strict else (lambda v: v >= alpha)
    curves = []
    warnings = []
    for comp in T.components:
        value = generic_value(T, comp)
        if passes(value):
            curves.append((comp, value))
        elif T.residual_mass and passes(value + T.residual_mass):
            warnings.append(f"generic value along {comp!r} straddles the threshold (residual mass)")
    isolated = []
    for p in candidate_points(T):
        if any(c.contains(p) for c, _ in curves):
            continue
        iv = lelong_at(T, p)
        isolated.append(IsolatedPoint(p, iv, iv.verdict(alpha, strict)))
    if any(not ip.point.exact for ip in isolated):
        warnings.append("some candidate points are inexact; incidences are tolerance-qualified")
    return LevelSet(tuple(curves), tuple(isolated), alpha, strict, tuple(warnings))


def decompose(T: Current, C, beta) -> Current:
    """R = T - beta[C]."""
    beta = to_fraction(beta)
    C = as_component(C)
    if beta <= 0:
        raise ValueError("beta must be positive")
    w = T.weight_of(C)
    if w < beta:
        raise DecompositionError(f"component carries weight {w} < {beta}; not decomposable")
    terms = []
    for weight, comp in T.terms:
        if comp == C:
            weight -= beta
        if weight > 0:
            terms.append((weight, comp))
    return Current.build(T.ambient_dim, terms, T.residual_mass, T.probe_points)
