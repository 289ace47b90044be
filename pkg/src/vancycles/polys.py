"""Sparse multivariate polynomials and the quadratic field Q(sqrt d).

Coefficients may be Fractions or QSqrt elements; both support exact field
arithmetic and comparison with 0.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import InputError


class QSqrt:
    """a + b sqrt(d) with a, b rational and d a fixed non-square rational."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=None):
        self.a = Fraction(a)
        self.b = Fraction(b)
        if d is None:
            raise InputError("QSqrt needs the radicand d")
        self.d = Fraction(d)

    def _lift(self, x):
        if isinstance(x, QSqrt):
            if x.d != self.d:
                raise InputError("mixing different quadratic fields")
            return x
        return QSqrt(x, 0, self.d)

    def __add__(self, o):
        o = self._lift(o)
        return QSqrt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt(-self.a, -self.b, self.d)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        return QSqrt(self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conj(self):
        return QSqrt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self):
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("zero in Q(sqrt d)")
        return QSqrt(self.a / nrm, -self.b / nrm, self.d)

    def __truediv__(self, o):
        return self * self._lift(o).inverse()

    def __rtruediv__(self, o):
        return self._lift(o) * self.inverse()

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            return self.b == 0 and self.a == o
        if isinstance(o, QSqrt):
            return self.a == o.a and self.b == o.b and self.d == o.d
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        return f"QSqrt({self.a}, {self.b}, d={self.d})"


class SparsePoly:
    """Polynomial in `nvars` variables as {exponent tuple: coefficient}."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        t = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise InputError("exponent length differs from the number of variables")
            if not c == 0:
                t[tuple(e)] = t.get(tuple(e), 0) + c
        self.terms = {e: c for e, c in t.items() if not c == 0}

    @classmethod
    def var(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def const(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    def _lift(self, o):
        if isinstance(o, SparsePoly):
            return o
        return SparsePoly.const(self.nvars, o)

    def __add__(self, o):
        o = self._lift(o)
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = t.get(e, 0) + c
        return SparsePoly(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        if not isinstance(o, SparsePoly):
            return SparsePoly(self.nvars, {e: c * o for e, c in self.terms.items()})
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return SparsePoly(self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = SparsePoly.const(self.nvars, Fraction(1))
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, o):
        if not isinstance(o, SparsePoly):
            o = self._lift(o)
        return self.nvars == o.nvars and self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, d=None):
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1 and (d is None or not degs or degs == {d})

    def diff(self, i: int) -> "SparsePoly":
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                t[tuple(e2)] = c * e[i]
        return SparsePoly(self.nvars, t)

    def coeff(self, e) -> object:
        return self.terms.get(tuple(e), 0)

    def __call__(self, point):
        if len(point) != self.nvars:
            raise InputError("point has the wrong number of coordinates")
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x ** k if not isinstance(x, QSqrt) else v * _qpow(x, k)
            total = v + total
        return total

    def restrict_zero(self, indices) -> "SparsePoly":
        """Set the listed variables to 0."""
        idx = set(indices)
        return SparsePoly(self.nvars, {e: c for e, c in self.terms.items()
                                       if all(e[i] == 0 for i in idx)})

    def support_vars(self):
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def vector(self, basis) -> list:
        """Coefficients on a list of exponent tuples (raises if a term is outside the basis)."""
        pos = {e: i for i, e in enumerate(basis)}
        v = [Fraction(0)] * len(basis)
        for e, c in self.terms.items():
            if e not in pos:
                raise InputError(f"monomial {e} outside the basis")
            v[pos[e]] = c
        return v

    def __repr__(self):
        return f"SparsePoly({len(self.terms)} terms, deg {self.degree()})"


def _qpow(x, k):
    out = x
    for _ in range(k - 1):
        out = out * x
    return out


def monomials(nvars: int, degree: int, among=None) -> list:
    """Exponent tuples of the given degree, optionally only in variables `among`."""
    vars_ = list(range(nvars)) if among is None else sorted(among)
    out = []

    def rec(i, left, cur):
        if i == len(vars_):
            if left == 0:
                e = [0] * nvars
                for v, k in zip(vars_, cur):
                    e[v] = k
                out.append(tuple(e))
            return
        for k in range(left, -1, -1):
            rec(i + 1, left - k, cur + [k])

    rec(0, degree, [])
    return sorted(out, reverse=True)


# ----------------------------------------------------------- univariate

def upoly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def upoly_interpolate(xs, ys):
    """Coefficients (low to high) of the interpolating polynomial, Lagrange form."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        for k in range(n):
            coeffs[k] += ys[i] * basis[k] / denom
    return upoly_trim(coeffs)


def upoly_mod(a, b):
    a = upoly_trim(a)
    b = upoly_trim(b)
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a = upoly_trim(a)
    return a


def upoly_gcd(a, b):
    a, b = upoly_trim(a), upoly_trim(b)
    while b:
        a, b = b, upoly_mod(a, b)
    return [c / a[-1] for c in a] if a else a


def upoly_deriv(p):
    return [i * c for i, c in enumerate(p)][1:]


def is_squarefree(p) -> bool:
    return len(upoly_gcd(p, upoly_deriv(p))) == 1
