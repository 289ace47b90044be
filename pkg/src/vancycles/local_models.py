"""Closed-form spectra of standard local models.

Brieskorn-Pham sums, Thom-Sebastiani joins and suspensions, hyperbolic
T_{p,q,r} cusps, normal-crossing Milnor fibers, monodromy order bounds and
torsion exponents.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product

from .errors import InputError
from .spectra import (
    HodgeDeligneDiagram,
    Q,
    Spectrum,
    WeightedSpectrum,
    convolve,
    frac_part,
    is_integer,
)


def _one_variable(a: int) -> Spectrum:
    return Spectrum((Fraction(k, a), 1) for k in range(1, a))


def join(a: Spectrum, b: Spectrum) -> Spectrum:
    """Thom-Sebastiani join of plain spectra: all sums alpha + beta."""
    return convolve(a, b)


def brieskorn_pham(exponents, lift: str = "hodge") -> WeightedSpectrum:
    """Weighted spectrum of x_0^{a_0} + ... + x_n^{a_n}.

    lift="hodge" puts non-integer exponents in weight n and an integer
    exponent alpha in weight 2 alpha (type (alpha, alpha)).  lift="join"
    instead stars the one-variable pieces [(k/a, 0)] together, which gives
    the weights of the Brieskorn-Pham germ itself.  An exponent 1 is a smooth
    factor and makes the spectrum empty.
    """
    exps = [int(a) for a in exponents]
    if not exps:
        raise InputError("need at least one exponent")
    for a in exps:
        if a < 1:
            raise InputError(f"Brieskorn-Pham exponent must be >= 1, got {a}")
    if lift == "join":
        pieces = [WeightedSpectrum(((Fraction(k, a), 0), 1) for k in range(1, a)) for a in exps]
        return reduce(convolve, pieces)
    if lift != "hodge":
        raise InputError(f"unknown lift {lift!r}")
    return hodge_lift(reduce(join, (_one_variable(a) for a in exps)), len(exps) - 1)


def hodge_lift(plain: Spectrum, n: int) -> WeightedSpectrum:
    """Weight n for non-integer exponents, weight 2 alpha (type (alpha, alpha)) for integers."""
    out = []
    for alpha, m in plain.items():
        w = 2 * int(alpha) if is_integer(alpha) else n
        out.append(((alpha, w), m))
    return WeightedSpectrum(out)


def suspend(s: WeightedSpectrum, times: int = 1) -> WeightedSpectrum:
    """Add `times` squares: star with [(1/2, 0)] repeatedly."""
    half = WeightedSpectrum.of((Fraction(1, 2), 0))
    for _ in range(times):
        s = convolve(s, half)
    return s


def cusp_spectrum(p: int, q: int, r: int) -> WeightedSpectrum:
    """Weighted spectrum of the hyperbolic cusp x^p + y^q + z^r + xyz, 1/p+1/q+1/r < 1.

    Each leg contributes [(1 + l/a, 2)], l = 1..a-1; the eigenvalue-1 part is
    a single N-string [(1,2)] + [(2,4)].
    """
    for a in (p, q, r):
        if a < 2:
            raise InputError("cusp exponents must be >= 2")
    if Fraction(1, p) + Fraction(1, q) + Fraction(1, r) >= 1:
        raise InputError(f"T_{{{p},{q},{r}}} is not hyperbolic")
    terms = [((1, 2), 1), ((2, 4), 1)]
    for a in (p, q, r):
        terms += [((1 + Fraction(l, a), 2), 1) for l in range(1, a)]
    return WeightedSpectrum(terms)


@dataclass(frozen=True)
class NcLocalForm:
    """Germ z_1^{a_1} ... z_r^{a_r} in n+1 variables."""

    n: int
    multiplicities: tuple

    def __post_init__(self):
        a = tuple(int(x) for x in self.multiplicities)
        object.__setattr__(self, "multiplicities", a)
        if not a:
            raise InputError("need r >= 1")
        if any(x < 1 for x in a):
            raise InputError("multiplicities must be positive")
        if len(a) > self.n + 1:
            raise InputError("more factors than variables")


@dataclass(frozen=True)
class NcMilnor:
    components: int
    ranks: dict = field(default_factory=dict)  # reduced rank per degree, all components
    diagrams: dict = field(default_factory=dict)  # degree -> HodgeDeligneDiagram

    def spectrum(self, k: int) -> WeightedSpectrum:
        from .spectra import from_hodge_deligne
        return from_hodge_deligne(self.diagrams.get(k, HodgeDeligneDiagram()))


def nc_milnor(form: NcLocalForm) -> NcMilnor:
    """Reduced cohomology of the Milnor fiber of a normal-crossing monomial.

    There are gcd(a_i) components, permuted cyclically by the monodromy, each
    with the cohomology of an (r-1)-torus: rank C(r-1, k) in degree k and
    type (k, k).
    """
    a = form.multiplicities
    r = len(a)
    comps = reduce(math.gcd, a)
    ranks, diagrams = {}, {}
    for k in range(0, r):
        per = math.comb(r - 1, k)
        eigs = range(1, comps) if k == 0 else range(comps)
        d = HodgeDeligneDiagram(((k, k, Fraction(j, comps)), per) for j in eigs)
        if d:
            ranks[k] = d.total()
            diagrams[k] = d
    return NcMilnor(comps, ranks, diagrams)


def monodromy_order_bound(multiplicities) -> int:
    a = [int(x) for x in multiplicities]
    if not a or any(x < 1 for x in a):
        raise InputError("multiplicities must be positive")
    return reduce(math.lcm, a)


@dataclass(frozen=True)
class TorsionReport:
    exponents: tuple  # sorted multiset of positive ints


def torsion_exponents(limit_data, ell: int, level: int | None = None) -> TorsionReport:
    """Torsion exponents of the limit lattice.

    `limit_data` is an iterable of (alpha, mult).  Without `level` every
    alpha must lie in [0, 1) and contributes floor(ell * alpha).  With a Hodge
    level p, only alpha in the open interval (p, p+1) count, with exponent
    ell * {-alpha} (rounded down).
    """
    if not isinstance(ell, int) or ell < 1:
        raise InputError("ell must be a positive integer")
    items = limit_data.items() if hasattr(limit_data, "items") else limit_data
    out = []
    for alpha, mult in items:
        alpha = Q(alpha)
        if level is None:
            if not 0 <= alpha < 1:
                raise InputError(f"exponent {alpha} outside [0,1)")
            e = math.floor(ell * alpha)
        else:
            if not level < alpha < level + 1:
                continue
            e = math.floor(ell * frac_part(-alpha))
        if e > 0:
            out += [e] * int(mult)
    return TorsionReport(tuple(sorted(out)))


def join_enumerate(exponents) -> Spectrum:
    """Brute-force enumeration of the Brieskorn-Pham join (slow, for cross-checks)."""
    ranges = [range(1, int(a)) for a in exponents]
    out: dict = {}
    for ks in product(*ranges):
        s = sum(Fraction(k, int(a)) for k, a in zip(ks, exponents))
        out[s] = out.get(s, 0) + 1
    return Spectrum(out)
