"""Multivariate polynomials over Q(i).

A :class:`MultiPoly` is a sparse map from exponent tuples to nonzero
coefficients.  Coefficients are normally exact Gaussian rationals; evaluation
at numeric points (``complex`` or ``mpmath.mpc``) is supported for the growth
estimator and for inexact intersection points.
"""
from __future__ import annotations

import math
from functools import lru_cache
from itertools import product

import mpmath

from . import linalg
from .field import precision, ONE, ZERO, GaussianRational, is_exact, qi, snap, sqrt_qi, to_mp, tolerance


@lru_cache(maxsize=None)
def monomials(num_vars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All exponent vectors of total degree <= degree, graded then lex."""
    out = []
    for d in range(degree + 1):
        out.extend(_exact_degree(num_vars, d))
    return tuple(out)


def _exact_degree(num_vars, d):
    if num_vars == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in _exact_degree(num_vars - 1, d - first):
            out.append((first,) + rest)
    return out


def _add_exps(a, b):
    return tuple(x + y for x, y in zip(a, b))


class MultiPoly:
    """Polynomial in ``num_vars`` variables with Gaussian-rational coefficients."""

    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars: int, terms=None):
        if num_vars < 1:
            raise ValueError("num_vars must be >= 1")
        self.num_vars = num_vars
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != num_vars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for {num_vars} variables")
            if is_exact(c):
                c = qi(c)
                if not c:
                    continue
            elif c == 0:
                continue
            clean[exps] = clean.get(exps, ZERO) + c
            if is_exact(clean[exps]) and not clean[exps]:
                del clean[exps]
        self.terms = clean

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, num_vars: int) -> "MultiPoly":
        return cls(num_vars)

    @classmethod
    def constant(cls, num_vars: int, c) -> "MultiPoly":
        return cls(num_vars, {(0,) * num_vars: c})

    @classmethod
    def variable(cls, num_vars: int, index: int) -> "MultiPoly":
        e = [0] * num_vars
        e[index] = 1
        return cls(num_vars, {tuple(e): ONE})

    @classmethod
    def linear(cls, coeffs, constant=0) -> "MultiPoly":
        """``sum coeffs[i] * z_i + constant``."""
        n = len(coeffs)
        terms = {(0,) * n: constant}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(n, terms)

    @classmethod
    def from_coefficients(cls, num_vars: int, degree: int, vector) -> "MultiPoly":
        """Inverse of :meth:`coefficient_vector` for the dense monomial basis."""
        mons = monomials(num_vars, degree)
        return cls(num_vars, dict(zip(mons, vector)))

    def coefficient_vector(self, degree: int):
        mons = monomials(self.num_vars, degree)
        return [self.terms.get(m, ZERO) for m in mons]

    # basic properties -------------------------------------------------------
    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.terms.values())

    def degree_in(self, var: int) -> int:
        return max((e[var] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly(self.num_vars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def constant_term(self):
        return self.terms.get((0,) * self.num_vars, ZERO)

    # arithmetic -------------------------------------------------------------
    def _check(self, other):
        if isinstance(other, MultiPoly):
            if other.num_vars != self.num_vars:
                raise ValueError("variable count mismatch")
            return other
        return MultiPoly.constant(self.num_vars, other)

    def __add__(self, other):
        other = self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, ZERO) + c
        return MultiPoly(self.num_vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.num_vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exps(e1, e2)
                terms[e] = terms.get(e, ZERO) + c1 * c2
        return MultiPoly(self.num_vars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MultiPoly.constant(self.num_vars, ONE)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "MultiPoly":
        return MultiPoly(self.num_vars, {e: v * c for e, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, (int, GaussianRational)):
                return self == MultiPoly.constant(self.num_vars, other)
            return NotImplemented
        return self.num_vars == other.num_vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"z{i + 1}" if k == 1 else f"z{i + 1}^{k}" for i, k in enumerate(e) if k
            )
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def monic(self) -> "MultiPoly":
        """Scale so the coefficient of the largest exponent (lex) is 1."""
        if not self.terms:
            return self
        lead = self.terms[max(self.terms)]
        return self.scale(qi(lead).inverse() if is_exact(lead) else 1 / lead)

    # calculus and substitution ----------------------------------------------
    def derivative(self, var: int) -> "MultiPoly":
        terms = {}
        for e, c in self.terms.items():
            if e[var]:
                f = list(e)
                f[var] -= 1
                terms[tuple(f)] = c * e[var]
        return MultiPoly(self.num_vars, terms)

    def evaluate(self, z):
        """Value at ``z``; exact for exact input, numeric otherwise."""
        if len(z) != self.num_vars:
            raise ValueError(f"point has {len(z)} coordinates, polynomial has {self.num_vars} variables")
        if all(is_exact(x) for x in z) and self.is_exact():
            z = [qi(x) for x in z]
            total = ZERO
            for e, c in self.terms.items():
                term = c
                for x, k in zip(z, e):
                    if k:
                        term = term * x**k
                total = total + term
            return total
        if any(isinstance(x, (complex, float)) for x in z) and not any(
            isinstance(x, (mpmath.mpc, mpmath.mpf)) for x in z
        ):
            zc = [complex(x) for x in z]
            total = 0j
            for e, c in self.terms.items():
                term = complex(c)
                for x, k in zip(zc, e):
                    if k:
                        term *= x**k
                total += term
            return total
        with mpmath.workprec(precision()):
            zm = [to_mp(x) for x in z]
            total = mpmath.mpc(0)
            for e, c in self.terms.items():
                term = to_mp(c)
                for x, k in zip(zm, e):
                    if k:
                        term *= x**k
                total += term
            return total

    __call__ = evaluate

    def substitute(self, images) -> "MultiPoly":
        """Compose: replace variable i by the polynomial ``images[i]``."""
        if len(images) != self.num_vars:
            raise ValueError("need one image per variable")
        nv = images[0].num_vars
        cache = {}

        def power(i, k):
            if (i, k) not in cache:
                cache[(i, k)] = images[i] ** k
            return cache[(i, k)]

        out = MultiPoly(nv)
        for e, c in self.terms.items():
            term = MultiPoly.constant(nv, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def translate(self, a) -> "MultiPoly":
        """The polynomial ``z -> p(z + a)``."""
        if len(a) != self.num_vars:
            raise ValueError("dimension mismatch")
        exact = self.is_exact() and all(is_exact(x) for x in a)
        if exact:
            a = [qi(x) for x in a]
        else:
            a = [to_mp(x) for x in a]
        terms = {}
        ctx = mpmath.workprec(precision())
        with ctx:
            for e, c in self.terms.items():
                ranges = [range(k + 1) for k in e]
                for beta in product(*ranges):
                    coeff = c
                    for ai, ei, bi in zip(a, e, beta):
                        if ei - bi:
                            coeff = coeff * math.comb(ei, bi) * ai ** (ei - bi)
                    terms[beta] = terms.get(beta, ZERO) + coeff
        return MultiPoly(self.num_vars, terms)

    def homogenize(self) -> "MultiPoly":
        """Homogenize with a new last variable."""
        d = max(self.degree, 0)
        return MultiPoly(self.num_vars + 1, {e + (d - sum(e),): c for e, c in self.terms.items()})

    def dehomogenize(self, var: int) -> "MultiPoly":
        """Set variable ``var`` to 1 and drop it."""
        terms = {}
        for e, c in self.terms.items():
            f = e[:var] + e[var + 1:]
            terms[f] = terms.get(f, ZERO) + c
        return MultiPoly(self.num_vars - 1, terms)

    def order_at(self, a):
        """Vanishing order at ``a``: lowest total degree after moving ``a`` to 0.

        Returns ``math.inf`` for the zero polynomial.  For numeric points,
        coefficients below the working tolerance count as zero.
        """
        if not self.terms:
            return math.inf
        t = self.translate(a)
        if t.is_exact():
            return min((sum(e) for e in t.terms), default=math.inf)
        with mpmath.workprec(precision()):
            scale = max(abs(to_mp(c)) for c in self.terms.values())
            scale *= max([mpmath.mpf(1)] + [abs(to_mp(x)) for x in a]) ** max(self.degree, 0)
            tol = tolerance(scale)
            degs = [sum(e) for e, c in t.terms.items() if abs(c) > tol]
        return min(degs, default=math.inf)

    def lowest_form(self, a) -> "MultiPoly":
        """Tangent cone at ``a``: lowest-degree homogeneous part of p(z + a)."""
        k = self.order_at(a)
        return self.translate(a).homogeneous_part(k)

    def coefficients_in(self, var: int) -> list["MultiPoly"]:
        """Coefficients of powers of ``var`` (which then no longer appears)."""
        d = self.degree_in(var)
        out = [dict() for _ in range(d + 1)]
        for e, c in self.terms.items():
            f = list(e)
            f[var] = 0
            out[e[var]][tuple(f)] = c
        return [MultiPoly(self.num_vars, t) for t in out]

    # serialization ----------------------------------------------------------
    def to_json(self):
        return [
            {"exponents": list(e), "coeff": qi(self.terms[e]).to_json()}
            for e in sorted(self.terms)
        ]

    @classmethod
    def from_json(cls, obj, num_vars: int | None = None) -> "MultiPoly":
        if not obj:
            if num_vars is None:
                raise ValueError("cannot infer variable count of an empty polynomial")
            return cls(num_vars)
        n = len(obj[0]["exponents"])
        if num_vars is not None and n != num_vars:
            raise ValueError("variable count mismatch")
        terms = {}
        for t in obj:
            e = tuple(t["exponents"])
            terms[e] = terms.get(e, ZERO) + GaussianRational.from_json(t["coeff"])
        return cls(n, terms)


def evaluate(p: MultiPoly, z):
    return p.evaluate(z)


def order_at(p: MultiPoly, a):
    return p.order_at(a)


# exact division and resultants ------------------------------------------------

def divide_exact(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Quotient p / q, which must be exact (raises ValueError otherwise)."""
    if q.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    lead_q = max(q.terms)
    inv = q.terms[lead_q].inverse()
    quotient = {}
    r = p
    while not r.is_zero():
        lead_r = max(r.terms)
        diff = tuple(a - b for a, b in zip(lead_r, lead_q))
        if any(d < 0 for d in diff):
            raise ValueError("division is not exact")
        c = r.terms[lead_r] * inv
        quotient[diff] = c
        r = r - MultiPoly(p.num_vars, {_add_exps(e, diff): v * c for e, v in q.terms.items()})
    return MultiPoly(p.num_vars, quotient)


def sylvester_matrix(p_coeffs, q_coeffs):
    """Sylvester matrix from coefficient lists indexed by power (low to high)."""
    m, n = len(p_coeffs) - 1, len(q_coeffs) - 1
    size = m + n
    zero = _zero_like(p_coeffs[0])
    rows = []
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(p_coeffs)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(q_coeffs)):
            row[i + k] = c
        rows.append(row)
    return rows


def _zero_like(c):
    if isinstance(c, MultiPoly):
        return MultiPoly(c.num_vars)
    return ZERO


def bareiss_det(rows) -> MultiPoly:
    """Fraction-free determinant of a square matrix of polynomials."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    nv = rows[0][0].num_vars
    m = [list(r) for r in rows]
    sign = 1
    prev = MultiPoly.constant(nv, ONE)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return MultiPoly(nv)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = divide_exact(num, prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def resultant(p: MultiPoly, q: MultiPoly, var_index: int) -> MultiPoly:
    """Sylvester resultant eliminating ``var_index``; result keeps ``num_vars``."""
    if p.num_vars != q.num_vars:
        raise ValueError("variable count mismatch")
    if p.degree_in(var_index) < 1 or q.degree_in(var_index) < 1:
        raise ValueError("both polynomials must have positive degree in the eliminated variable")
    rows = sylvester_matrix(p.coefficients_in(var_index), q.coefficients_in(var_index))
    return bareiss_det(rows)


def _share_factor_in(p: MultiPoly, q: MultiPoly, var: int) -> bool:
    if p.degree_in(var) < 1 or q.degree_in(var) < 1:
        return False
    other = 1 - var
    pc, qc = p.coefficients_in(var), q.coefficients_in(var)
    bound = p.degree * q.degree
    for t in range(bound + 1):
        point = [ZERO, ZERO]
        point[other] = qi(t)
        rows = sylvester_matrix([c.evaluate(point) for c in pc], [c.evaluate(point) for c in qc])
        if linalg.det(rows):
            return False
    return True


def is_coprime(p: MultiPoly, q: MultiPoly) -> bool:
    """True iff two bivariate polynomials have no nonconstant common factor.

    A common factor has positive degree in x or in y, so it is detected by
    the vanishing of one of the two resultants.  Each resultant has degree at
    most deg p * deg q in the remaining variable, so it is identically zero
    iff it vanishes at that many plus one integer points.
    """
    if p.num_vars != 2 or q.num_vars != 2:
        raise ValueError("is_coprime is defined for bivariate polynomials only")
    if p.is_zero() or q.is_zero():
        raise ValueError("is_coprime needs nonzero polynomials")
    if p.degree == 0 or q.degree == 0:
        return True
    return not (_share_factor_in(p, q, 0) or _share_factor_in(p, q, 1))


# fat-point interpolation ----------------------------------------------------

def vanishing_conditions(point, order: int, degree: int, num_vars: int):
    """Rows expressing that all partials of order < ``order`` vanish at ``point``.

    Row entries are coefficients of (z - point)^beta in each monomial of the
    dense basis ``monomials(num_vars, degree)``.
    """
    point = [qi(x) for x in point]
    mons = monomials(num_vars, degree)
    rows = []
    for k in range(order):
        for beta in _exact_degree(num_vars, k):
            row = []
            for e in mons:
                if any(ei < bi for ei, bi in zip(e, beta)):
                    row.append(ZERO)
                    continue
                v = ONE
                for ai, ei, bi in zip(point, e, beta):
                    if ei - bi:
                        v = v * math.comb(ei, bi) * ai ** (ei - bi)
                    elif bi:
                        v = v * math.comb(ei, bi)
                row.append(v)
            rows.append(row)
    return rows


def interpolation_nullspace(points, orders, degree: int, num_vars: int = 2) -> list[MultiPoly]:
    """Basis of polynomials of degree <= ``degree`` vanishing to the given orders."""
    if len(points) != len(orders):
        raise ValueError("points and orders must align")
    if degree < 0:
        return []
    rows = []
    for pt, k in zip(points, orders):
        if len(pt) != num_vars:
            raise ValueError("point dimension mismatch")
        rows.extend(vanishing_conditions(pt, k, degree, num_vars))
    ncols = len(monomials(num_vars, degree))
    return [MultiPoly.from_coefficients(num_vars, degree, v) for v in linalg.nullspace(rows, ncols)]


def is_linearly_independent(polys: list[MultiPoly]) -> bool:
    if not polys:
        return True
    d = max(p.degree for p in polys)
    if d < 0:
        return False
    rows = [p.coefficient_vector(d) for p in polys]
    return linalg.rank(rows) == len(polys)


# univariate helpers ------------------------------------------------------------
# Univariate polynomials are coefficient lists, lowest power first.

def _strip(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return c


def udivmod(a, b):
    a, b = _strip(a), _strip(b)
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    q = [ZERO] * max(len(a) - len(b) + 1, 1)
    inv = b[-1].inverse()
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] * inv
        q[shift] = c
        for i, bc in enumerate(b):
            a[i + shift] = a[i + shift] - c * bc
        a = _strip(a)
    return _strip(q), a


def ugcd(a, b):
    a, b = _strip(a), _strip(b)
    while b:
        a, b = b, udivmod(a, b)[1]
    if not a:
        return a
    inv = a[-1].inverse()
    return [c * inv for c in a]


def uderivative(a):
    return [c * k for k, c in enumerate(a)][1:]


def squarefree_part(a):
    a = [qi(c) for c in _strip(a)]
    if len(a) <= 2:
        return a
    g = ugcd(a, uderivative(a))
    if len(g) <= 1:
        return a
    return udivmod(a, g)[0]


def ueval(a, x):
    total = ZERO if is_exact(x) else 0
    for c in reversed(a):
        total = total * x + c
    return total


def univariate_roots(coeffs):
    """Distinct roots of an exact univariate polynomial.

    Returns a list of ``(root, exact)``.  Roots in Q(i) are returned exactly
    (closed form up to degree 2; numeric root + rational snapping verified by
    exact evaluation beyond that).  Other roots are ``mpmath.mpc`` values.
    """
    a = squarefree_part(coeffs)
    out = []
    while len(a) - 1 > 2:
        found = None
        for r in _numeric_roots(a):
            cand = snap(r)
            if not ueval(a, cand):
                found = cand
                break
        if found is None:
            out.extend((r, False) for r in _numeric_roots(a))
            return out
        out.append((found, True))
        a = udivmod(a, [-found, ONE])[0]
    deg = len(a) - 1
    if deg == 1:
        out.append((-a[0] / a[1], True))
    elif deg == 2:
        c, b, lead = a
        disc = b * b - 4 * lead * c
        s = sqrt_qi(disc)
        if s is not None:
            out.append(((-b + s) / (2 * lead), True))
            out.append(((-b - s) / (2 * lead), True))
        else:
            with mpmath.workprec(precision()):
                sm = mpmath.sqrt(to_mp(disc))
                bm, lm = to_mp(b), to_mp(lead)
                out.append(((-bm + sm) / (2 * lm), False))
                out.append(((-bm - sm) / (2 * lm), False))
    return out


def _numeric_roots(a):
    with mpmath.workprec(precision()):
        coeffs = [to_mp(c) for c in reversed(a)]
        roots = mpmath.polyroots(coeffs, maxsteps=400, extraprec=2 * precision(), error=False)
        return [mpmath.mpc(r) for r in roots]
