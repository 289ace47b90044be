"""Affine expressions and a small exact solver for linear rank constraints.

Unknowns are dimensions or ranks: non-negative integers.  The solver
alternates interval propagation with sparse Gaussian elimination (declared
parameters eliminated last, so that everything else is expressed in terms
of them) until nothing changes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import InconsistencyError, InputError, PreconditionError
from .spectra import Q, fmt


class Affine:
    """const + sum coeff * name, exact."""

    __slots__ = ("terms", "const")

    def __init__(self, terms=None, const=0):
        t = {}
        for k, v in (terms or {}).items():
            v = Fraction(v)
            if v:
                t[k] = v
        self.terms = t
        self.const = Fraction(const)

    @classmethod
    def var(cls, name):
        return cls({name: 1})

    @classmethod
    def lift(cls, x):
        if isinstance(x, Affine):
            return x
        if isinstance(x, str):
            return cls.var(x)
        return cls({}, Q(x) if not isinstance(x, int) else x)

    @classmethod
    def parse(cls, data):
        """From an int, a "p/q" string, or {"const": c, name: coeff, ...}."""
        if isinstance(data, dict):
            d = dict(data)
            c = Q(d.pop("const", 0))
            return cls({k: Q(v) for k, v in d.items()}, c)
        return cls({}, Q(data))

    def __add__(self, other):
        other = Affine.lift(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return Affine(t, self.const + other.const)

    __radd__ = __add__

    def __neg__(self):
        return Affine({k: -v for k, v in self.terms.items()}, -self.const)

    def __sub__(self, other):
        return self + (-Affine.lift(other))

    def __rsub__(self, other):
        return Affine.lift(other) - self

    def __mul__(self, c):
        c = Fraction(c)
        return Affine({k: c * v for k, v in self.terms.items()}, c * self.const)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = Affine.lift(other)
        return self.terms == other.terms and self.const == other.const

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.const))

    def is_constant(self):
        return not self.terms

    def value(self):
        if self.terms:
            raise PreconditionError(f"{self} is not constant")
        return self.const

    def int_value(self):
        v = self.value()
        if v.denominator != 1:
            raise InconsistencyError(f"non-integral dimension {fmt(v)}")
        return int(v)

    def substitute(self, env):
        """Replace names found in env (values or Affine) and return a new Affine."""
        out = Affine({}, self.const)
        for k, v in self.terms.items():
            if k in env:
                out = out + Affine.lift(env[k]) * v
            else:
                out = out + Affine({k: v})
        return out

    def names(self):
        return set(self.terms)

    def __repr__(self):
        return f"Affine({self})"

    def __str__(self):
        parts = []
        for k in sorted(self.terms):
            v = self.terms[k]
            mag = abs(v)
            term = k if mag == 1 else f"{fmt(mag)}*{k}"
            parts.append(("-", term) if v < 0 else ("+", term))
        if self.const or not parts:
            parts.insert(0, ("-", fmt(-self.const)) if self.const < 0 else ("+", fmt(self.const)))
        s = ""
        for i, (sign, term) in enumerate(parts):
            if i == 0:
                s = term if sign == "+" else f"-{term}"
            else:
                s += f" {sign} {term}"
        return s

    def to_json(self):
        if self.is_constant():
            v = self.const
            return int(v) if v.denominator == 1 else fmt(v)
        return str(self)


def _bound_mul(c, lo, hi):
    """Interval of c * x for x in [lo, hi] (None means unbounded)."""
    if c > 0:
        return (None if lo is None else c * lo, None if hi is None else c * hi)
    return (None if hi is None else c * hi, None if lo is None else c * lo)


@dataclass
class Solution:
    exprs: dict  # name -> Affine in free names
    bounds: dict  # name -> (lo, hi)
    free: list  # non-parameter names left undetermined
    params: list  # parameter names left undetermined

    def expr(self, name) -> Affine:
        return self.exprs.get(name, Affine.var(name))

    def is_determined(self, name) -> bool:
        e = self.expr(name)
        return e.is_constant()

    def family(self, limit: int = 256):
        """Integer assignments of the free (non-parameter) names consistent with all bounds.

        Parameters are left symbolic.  Returns None when the family is too
        large or unbounded.
        """
        if not self.free:
            return [{}]
        ranges = []
        for f in self.free:
            lo, hi = self.bounds.get(f, (0, None))
            if hi is None:
                return None
            ranges.append(range(math.ceil(lo or 0), math.floor(hi) + 1))
        size = 1
        for r in ranges:
            size *= len(r)
        if size > limit:
            return None
        out = []
        for combo in product(*ranges):
            env = dict(zip(self.free, combo))
            ok = True
            for name, e in self.exprs.items():
                v = e.substitute(env)
                if not v.is_constant():
                    continue
                val = v.const
                hi = self.bounds.get(name, (0, None))[1]
                if val < 0 or val.denominator != 1 or (hi is not None and val > hi):
                    ok = False
                    break
            if ok:
                out.append(env)
        return out


@dataclass
class System:
    """Linear equations over non-negative integer unknowns."""

    lo: dict = field(default_factory=dict)
    hi: dict = field(default_factory=dict)
    params: list = field(default_factory=list)
    late: set = field(default_factory=set)
    eqs: list = field(default_factory=list)  # Affine == 0
    _slack: int = 0

    def add_var(self, name, lo=0, hi=None, param=False, late=False):
        """late: eliminate after ordinary unknowns, so it tends to stay free."""
        if name in self.lo:
            return name
        if late:
            self.late.add(name)
        self.lo[name] = Fraction(lo) if lo is not None else None
        self.hi[name] = Fraction(hi) if hi is not None else None
        if param:
            self.params.append(name)
        return name

    def has(self, name):
        return name in self.lo

    def eq(self, lhs, rhs=0):
        e = Affine.lift(lhs) - Affine.lift(rhs)
        for k in e.names():
            if k not in self.lo:
                raise InputError(f"unknown variable {k!r}")
        self.eqs.append(e)

    def le(self, lhs, rhs):
        """lhs <= rhs via a fresh non-negative slack."""
        self._slack += 1
        s = self.add_var(f"_slack{self._slack}")
        self.eq(Affine.lift(lhs) + Affine.var(s), rhs)

    def solve(self) -> Solution:
        lo, hi = dict(self.lo), dict(self.hi)
        fixed: dict = {}
        eqs = [e for e in self.eqs]
        param_set = set(self.params)

        def tighten(name, new_lo, new_hi):
            changed = False
            if new_lo is not None:
                new_lo = Fraction(math.ceil(new_lo))
                if lo[name] is None or new_lo > lo[name]:
                    lo[name] = new_lo
                    changed = True
            if new_hi is not None:
                new_hi = Fraction(math.floor(new_hi))
                if hi[name] is None or new_hi < hi[name]:
                    hi[name] = new_hi
                    changed = True
            if lo[name] is not None and hi[name] is not None and lo[name] > hi[name]:
                raise InconsistencyError(
                    f"no non-negative integer value for {name}: bounds [{fmt(lo[name])}, {fmt(hi[name])}]")
            return changed

        def propagate(rows):
            changed = False
            for e in rows:
                items = list(e.terms.items())
                for i, (name, c) in enumerate(items):
                    # c * x_i = -const - sum_{j != i} c_j x_j
                    acc_lo, acc_hi = -e.const, -e.const
                    for j, (other, cj) in enumerate(items):
                        if j == i:
                            continue
                        blo, bhi = _bound_mul(-cj, lo[other], hi[other])
                        acc_lo = None if acc_lo is None or blo is None else acc_lo + blo
                        acc_hi = None if acc_hi is None or bhi is None else acc_hi + bhi
                        if acc_lo is None and acc_hi is None:
                            break
                    nlo, nhi = _bound_mul(1 / c, acc_lo, acc_hi)
                    if tighten(name, nlo, nhi):
                        changed = True
            return changed

        def fix_known():
            newly = {}
            for name in lo:
                if name not in fixed and lo[name] is not None and lo[name] == hi[name]:
                    newly[name] = lo[name]
            fixed.update(newly)
            return newly

        def substitute_all(rows, env):
            out = []
            for e in rows:
                e2 = e.substitute(env)
                if e2.is_constant():
                    if e2.const != 0:
                        raise InconsistencyError(f"contradictory constraint: {e} with {env}")
                    continue
                out.append(e2)
            return out

        order_key = {}

        def col_order(name):
            if name not in order_key:
                rank = 2 if name in param_set else (1 if name in self.late else 0)
                order_key[name] = (rank, name)
            return order_key[name]

        red = []
        for _ in range(1000):
            progress = propagate(eqs)
            newly = fix_known()
            if newly:
                eqs = substitute_all(eqs, newly)
                continue
            red = _sparse_rref(eqs, col_order)
            for row in red:
                if row.is_constant() and row.const != 0:
                    raise InconsistencyError("the constraints are contradictory")
            progress = propagate(red) or progress
            newly = fix_known()
            if newly:
                eqs = substitute_all(red, newly)
                continue
            eqs = red
            if not progress:
                break
        # express pivots through the remaining names
        exprs = {name: Affine({}, v) for name, v in fixed.items()}
        pivots = set()
        for row in eqs:
            piv = min(row.terms, key=col_order)
            c = row.terms[piv]
            rest = Affine({k: -v / c for k, v in row.terms.items() if k != piv}, -row.const / c)
            exprs[piv] = rest
            pivots.add(piv)
        remaining = [n for n in self.lo if n not in fixed and n not in pivots]
        for n in remaining:
            exprs[n] = Affine.var(n)
        free = sorted(n for n in remaining if n not in param_set and _used(n, exprs))
        params = [p for p in self.params if p in remaining]
        bounds = {n: (lo[n], hi[n]) for n in self.lo}
        return Solution(exprs, bounds, free, params)


def _used(name, exprs):
    for k, e in exprs.items():
        if k != name and name in e.terms:
            return True
    return False


def _sparse_rref(rows, col_order):
    """Reduced echelon form of sparse Affine rows (== 0), pivoting in col_order."""
    work = [r for r in rows if r.terms or r.const]
    done = []
    while True:
        if any(not r.terms for r in work):
            raise InconsistencyError("the constraints are contradictory")
        if not work:
            break
        lead = min((min(r.terms, key=col_order) for r in work), key=col_order)
        idx = min((i for i, r in enumerate(work) if lead in r.terms), key=lambda i: len(work[i].terms))
        piv = work.pop(idx)
        piv = piv * (1 / piv.terms[lead])
        work = [r - piv * r.terms[lead] if lead in r.terms else r for r in work]
        work = [r for r in work if r.terms or r.const]
        done = [d - piv * d.terms[lead] if lead in d.terms else d for d in done]
        done.append(piv)
    return done
