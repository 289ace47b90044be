"""Exact spectra, weighted spectra and Hodge-Deligne diagrams.

A spectrum is a finitely supported integer-valued function on the rationals,
a weighted spectrum one on pairs (alpha, w).  Multiplicities may be negative
so that differences of spectra are ordinary values; `is_effective` tells an
honest spectrum apart from a virtual one.

Eigenvalues e^{2 pi i alpha} are never formed: the class alpha mod 1 stands
in for them everywhere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import InputError

INFINITY = math.inf


def Q(x) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction.  Floats are refused."""
    if isinstance(x, bool):
        raise InputError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not s or any(c in s for c in ".eE"):
            raise InputError(f"not an exact rational: {x!r}")
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"not an exact rational: {x!r}") from None
    raise InputError(f"cannot read {type(x).__name__} {x!r} as an exact rational")


def fmt(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def frac_part(x: Fraction) -> Fraction:
    return x - math.floor(x)


def is_integer(x: Fraction) -> bool:
    return x.denominator == 1


class _Multiset:
    """Immutable map key -> nonzero int with group operations."""

    __slots__ = ("_d", "_hash")

    def __init__(self, entries=()):
        d: dict = {}
        items = entries.items() if hasattr(entries, "items") else entries
        for key, mult in items:
            if not isinstance(mult, int) or isinstance(mult, bool):
                raise TypeError(f"multiplicity must be an int, got {mult!r}")
            key = self._key(key)
            d[key] = d.get(key, 0) + mult
        self._d = {k: v for k, v in d.items() if v != 0}
        self._hash = None

    @staticmethod
    def _key(key):
        raise NotImplementedError

    def _new(self, d):
        return type(self)(d)

    def items(self):
        return sorted(self._d.items())

    def keys(self):
        return sorted(self._d)

    def __iter__(self) -> Iterator:
        return iter(self.items())

    def __len__(self):
        return len(self._d)

    def __bool__(self):
        return bool(self._d)

    def __getitem__(self, key):
        return self._d.get(self._key(key), 0)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._d == other._d

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._d.items())))
        return self._hash

    def total(self) -> int:
        return sum(self._d.values())

    def combine(self, other, sign: int = 1):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if sign not in (1, -1):
            raise InputError("sign must be +1 or -1")
        d = dict(self._d)
        for k, v in other._d.items():
            d[k] = d.get(k, 0) + sign * v
        return self._new(d)

    def __add__(self, other):
        return self.combine(other, 1)

    def __sub__(self, other):
        return self.combine(other, -1)

    def __neg__(self):
        return self._new({k: -v for k, v in self._d.items()})

    def __mul__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        return self._new({k: n * v for k, v in self._d.items()})

    __rmul__ = __mul__

    def is_effective(self) -> bool:
        return all(v > 0 for v in self._d.values())

    def negative_part(self):
        return self._new({k: -v for k, v in self._d.items() if v < 0})

    def positive_part(self):
        return self._new({k: v for k, v in self._d.items() if v > 0})


class Spectrum(_Multiset):
    """Multiset of exponents alpha in Q."""

    __slots__ = ()

    @staticmethod
    def _key(key):
        return Q(key)

    @classmethod
    def of(cls, *alphas) -> "Spectrum":
        return cls((a, 1) for a in alphas)

    def __repr__(self):
        body = " + ".join(f"{m}[{fmt(a)}]" if m != 1 else f"[{fmt(a)}]" for a, m in self.items())
        return f"Spectrum({body or '0'})"

    def to_json(self):
        return [{"alpha": fmt(a), "mult": m} for a, m in self.items()]

    @classmethod
    def from_json(cls, data) -> "Spectrum":
        return cls((Q(e["alpha"]), int(e.get("mult", 1))) for e in data)


class WeightedSpectrum(_Multiset):
    """Multiset of pairs (alpha, w) with alpha in Q and w in Z."""

    __slots__ = ()

    @staticmethod
    def _key(key):
        alpha, w = key
        if not isinstance(w, int) or isinstance(w, bool):
            raise TypeError(f"weight must be an int, got {w!r}")
        return (Q(alpha), w)

    @classmethod
    def of(cls, *terms) -> "WeightedSpectrum":
        """Build from tuples (alpha, w) or (alpha, w, mult)."""
        out = []
        for t in terms:
            if len(t) == 2:
                out.append(((t[0], t[1]), 1))
            else:
                out.append(((t[0], t[1]), t[2]))
        return cls(out)

    def __repr__(self):
        parts = []
        for (a, w), m in self.items():
            term = f"[({fmt(a)},{w})]"
            parts.append(term if m == 1 else f"{m}{term}")
        return f"WeightedSpectrum({' + '.join(parts) or '0'})"

    def to_json(self):
        return [{"alpha": fmt(a), "w": w, "mult": m} for (a, w), m in self.items()]

    @classmethod
    def from_json(cls, data) -> "WeightedSpectrum":
        return cls(((Q(e["alpha"]), int(e["w"])), int(e.get("mult", 1))) for e in data)


@dataclass(frozen=True)
class EigenEntry:
    """One limit-basis datum: horizontal exponent alpha, weight, vertical exponent beta."""

    alpha: Fraction
    weight: int
    beta: Fraction
    multiplicity: int = 1

    def __post_init__(self):
        object.__setattr__(self, "alpha", Q(self.alpha))
        object.__setattr__(self, "beta", Q(self.beta))
        if not 0 <= self.beta < 1:
            raise InputError(f"beta must lie in [0,1), got {self.beta}")
        if self.multiplicity < 1:
            raise InputError("eigen-entry multiplicity must be positive")

    @classmethod
    def from_json(cls, e) -> "EigenEntry":
        return cls(Q(e["alpha"]), int(e["w"]), Q(e.get("beta", 0)), int(e.get("mult", 1)))

    def to_json(self):
        return {"alpha": fmt(self.alpha), "w": self.weight, "beta": fmt(self.beta),
                "mult": self.multiplicity}


def entries_spectrum(entries: Iterable[EigenEntry]) -> WeightedSpectrum:
    """The weighted spectrum obtained by dropping the vertical data."""
    return WeightedSpectrum(((e.alpha, e.weight), e.multiplicity) for e in entries)


# -- the star product ------------------------------------------------------

def pairing_index(alpha, beta) -> int:
    alpha, beta = Q(alpha), Q(beta)
    if is_integer(alpha) or is_integer(beta):
        return 0
    return 2 if is_integer(alpha + beta) else 1


def star(e1, e2) -> tuple[Fraction, int]:
    (a, w), (b, v) = e1, e2
    a, b = Q(a), Q(b)
    return (a + b, w + v + pairing_index(a, b))


def convolve(s, t):
    """Bilinear extension of the star product (weighted) or of addition (plain)."""
    if isinstance(s, WeightedSpectrum) and isinstance(t, WeightedSpectrum):
        out: dict = {}
        for k1, m1 in s._d.items():
            for k2, m2 in t._d.items():
                k = star(k1, k2)
                out[k] = out.get(k, 0) + m1 * m2
        return WeightedSpectrum(out)
    if isinstance(s, Spectrum) and isinstance(t, Spectrum):
        out = {}
        for a, m1 in s._d.items():
            for b, m2 in t._d.items():
                out[a + b] = out.get(a + b, 0) + m1 * m2
        return Spectrum(out)
    raise TypeError("convolve needs two spectra of the same kind")


def forget_weights(s: WeightedSpectrum) -> Spectrum:
    out: dict = {}
    for (a, _w), m in s._d.items():
        out[a] = out.get(a, 0) + m
    return Spectrum(out)


# -- vertical data ----------------------------------------------------------

@dataclass(frozen=True)
class PairedTerm:
    """A horizontal term (alpha, w) together with one vertical exponent."""

    alpha: Fraction
    weight: int
    exponent: Fraction
    multiplicity: int

    def starred(self) -> tuple[Fraction, int]:
        return star((self.alpha, self.weight), (self.exponent, 0))


def vertical_spectrum(entries: Iterable[EigenEntry], mu: int, r: int) -> list[PairedTerm]:
    """Pair every entry with its own exponents (beta + k)/(mu r), k = 0..mu r - 1."""
    if mu < 1 or r < 1:
        raise InputError("mu and r must be positive")
    n = mu * r
    terms = []
    for e in entries:
        for k in range(n):
            terms.append(PairedTerm(e.alpha, e.weight, (e.beta + k) / n, e.multiplicity))
    return terms


def paired_convolution(entries: Iterable[EigenEntry], mu: int, r: int) -> WeightedSpectrum:
    """Sum of stars over the paired terms of `vertical_spectrum`."""
    out: dict = {}
    for t in vertical_spectrum(entries, mu, r):
        k = t.starred()
        out[k] = out.get(k, 0) + t.multiplicity
    return WeightedSpectrum(out)


# -- Hodge-Deligne diagrams -------------------------------------------------

Cell = tuple  # (p, q, eig)


def _cell(p, q, eig=0) -> tuple[int, int, Fraction]:
    if isinstance(p, bool) or isinstance(q, bool) or not isinstance(p, int) or not isinstance(q, int):
        raise TypeError("Hodge indices must be ints")
    return (p, q, frac_part(Q(eig)))


class HodgeDeligneDiagram:
    """Multiplicities h^{p,q}_lambda over cells (p, q, eig) with eig = class of alpha mod 1.

    `arrows` optionally records N-string links between cells.
    """

    __slots__ = ("_d", "arrows")

    def __init__(self, entries=(), arrows=()):
        d: dict = {}
        items = entries.items() if hasattr(entries, "items") else entries
        for key, mult in items:
            key = _cell(*key)
            if not isinstance(mult, int) or isinstance(mult, bool):
                raise TypeError(f"multiplicity must be an int, got {mult!r}")
            d[key] = d.get(key, 0) + mult
        for key, v in d.items():
            if v < 0:
                raise InputError(f"negative Hodge-Deligne multiplicity {v} at {key}")
        self._d = {k: v for k, v in d.items() if v}
        links = []
        for src, dst in arrows:
            src, dst = _cell(*src), _cell(*dst)
            k = src[0] - dst[0]
            if k < 1 or src[1] - dst[1] != k or src[2] != dst[2]:
                raise InputError(f"invalid N-arrow {src} -> {dst}")
            links.append((src, dst))
        self.arrows = tuple(sorted(links))

    @classmethod
    def of(cls, *cells) -> "HodgeDeligneDiagram":
        """Build from tuples (p, q, mult) or (p, q, eig, mult)."""
        out = []
        for c in cells:
            if len(c) == 3:
                out.append(((c[0], c[1], 0), c[2]))
            else:
                out.append(((c[0], c[1], c[2]), c[3]))
        return cls(out)

    def items(self):
        return sorted(self._d.items())

    def cells(self):
        return sorted(self._d)

    def __getitem__(self, cell):
        return self._d.get(_cell(*cell), 0)

    def get(self, p, q, eig=0) -> int:
        return self._d.get(_cell(p, q, eig), 0)

    def __eq__(self, other):
        if not isinstance(other, HodgeDeligneDiagram):
            return NotImplemented
        return self._d == other._d

    def __hash__(self):
        return hash(frozenset(self._d.items()))

    def __bool__(self):
        return bool(self._d)

    def __len__(self):
        return len(self._d)

    def __add__(self, other):
        d = dict(self._d)
        for k, v in other._d.items():
            d[k] = d.get(k, 0) + v
        return HodgeDeligneDiagram(d, self.arrows + other.arrows)

    def __sub__(self, other):
        d = dict(self._d)
        for k, v in other._d.items():
            d[k] = d.get(k, 0) - v
        return HodgeDeligneDiagram(d)

    def __mul__(self, n: int):
        return HodgeDeligneDiagram({k: n * v for k, v in self._d.items()})

    __rmul__ = __mul__

    def __repr__(self):
        parts = []
        for (p, q, e), m in self.items():
            tag = f"({p},{q})" if e == 0 else f"({p},{q})[{fmt(e)}]"
            parts.append(tag if m == 1 else f"{m}{tag}")
        return f"HodgeDeligneDiagram({' + '.join(parts) or '0'})"

    def total(self) -> int:
        return sum(self._d.values())

    def unipotent(self) -> "HodgeDeligneDiagram":
        return HodgeDeligneDiagram({k: v for k, v in self._d.items() if k[2] == 0})

    def non_unipotent(self) -> "HodgeDeligneDiagram":
        return HodgeDeligneDiagram({k: v for k, v in self._d.items() if k[2] != 0})

    def eigen_part(self, eig) -> "HodgeDeligneDiagram":
        eig = frac_part(Q(eig))
        return HodgeDeligneDiagram({k: v for k, v in self._d.items() if k[2] == eig})

    def eigenvalue_classes(self) -> list[Fraction]:
        return sorted({k[2] for k in self._d})

    def hodge_level(self, p: int) -> int:
        """rk Gr_F^p: the sum over q and eigenvalues of h^{p,q}."""
        return sum(v for (pp, _q, _e), v in self._d.items() if pp == p)

    def weight_part(self, w: int) -> int:
        return sum(v for (p, q, _e), v in self._d.items() if p + q == w)

    def twist(self, t: int) -> "HodgeDeligneDiagram":
        """Tensor with Q(-t)."""
        return HodgeDeligneDiagram({(p + t, q + t, e): v for (p, q, e), v in self._d.items()})

    def with_eigenvalue(self, eig) -> "HodgeDeligneDiagram":
        d: dict = {}
        for (p, q, _e), v in self._d.items():
            key = _cell(p, q, eig)
            d[key] = d.get(key, 0) + v
        return HodgeDeligneDiagram(d)

    def to_json(self):
        out = [{"p": p, "q": q, "eig": fmt(e), "mult": m} for (p, q, e), m in self.items()]
        return out

    def arrows_json(self):
        return [{"from": [p, q, fmt(e)], "to": [p2, q2, fmt(e2)]}
                for (p, q, e), (p2, q2, e2) in self.arrows]

    @classmethod
    def from_json(cls, data) -> "HodgeDeligneDiagram":
        return cls(((int(e["p"]), int(e["q"]), Q(e.get("eig", 0))), int(e["mult"])) for e in data)


def tate(t: int, mult: int = 1, eig=0) -> HodgeDeligneDiagram:
    """Q(-t)^mult placed at (t, t) in the given eigenvalue class."""
    return HodgeDeligneDiagram({(t, t, eig): mult})


def to_hodge_deligne(s: WeightedSpectrum) -> HodgeDeligneDiagram:
    d: dict = {}
    for (a, w), m in s._d.items():
        p = math.floor(a)
        key = (p, w - p, a - p)
        d[key] = d.get(key, 0) + m
    return HodgeDeligneDiagram(d)


def from_hodge_deligne(d: HodgeDeligneDiagram) -> WeightedSpectrum:
    """Inverse of `to_hodge_deligne`: the cell (p, q, eig) goes back to (p + eig, p + q)."""
    return WeightedSpectrum(((p + e, p + q), m) for (p, q, e), m in d.items())


def check_pq_symmetry(d: HodgeDeligneDiagram) -> bool:
    for (p, q, e), m in d.items():
        if d.get(q, p, frac_part(-e)) != m:
            return False
    return True


def mirror_cell(p: int, q: int, eig, center: int):
    """Partner of (p, q) in an N-string centred at weight `center`."""
    j = p + q - center
    return (p - j, q - j, eig)


def check_string_centering(d: HodgeDeligneDiagram, k: int) -> bool:
    """Non-unipotent classes form strings centred at weight k, unipotent ones at k + 1."""
    for (p, q, e), m in d.items():
        center = k if e != 0 else k + 1
        if (p + q - center) == 0:
            continue
        if d[mirror_cell(p, q, e, center)] != m:
            return False
    return True


def hodge_range(k: int, n: int, klass: str, part: str) -> tuple[int, int]:
    if not isinstance(k, int) or not isinstance(n, int) or n < 0 or k < 0:
        raise InputError(f"invalid degree data k={k!r}, n={n!r}")
    if klass not in ("duBois", "rational"):
        raise InputError(f"unknown singularity class {klass!r}")
    if part == "u":
        if klass == "duBois":
            return max(1, k - n + 1), min(k, n)
        return max(2, k - n + 2), min(k - 1, n - 1)
    if part == "n":
        return max(1, k - n + 1), min(k - 1, n - 1)
    raise InputError(f"unknown part {part!r}")


def range_check(d: HodgeDeligneDiagram, k: int, n: int, klass: str, part: str | None = None) -> bool:
    """Is the unipotent (part 'u') or non-unipotent (part 'n') support inside the allowed square?

    With part=None both parts are checked against their own squares.
    """
    parts = ("u", "n") if part is None else (part,)
    for pt in parts:
        lo, hi = hodge_range(k, n, klass, pt)
        sub = d.unipotent() if pt == "u" else d.non_unipotent()
        for (p, q, _e) in sub.cells():
            if not (lo <= p <= hi and lo <= q <= hi):
                return False
    return True


def f_level(s: WeightedSpectrum | Spectrum):
    """Largest k with the classes inside F^{k+1}: min floor(alpha) - 1, or +inf when empty."""
    alphas = [k[0] if isinstance(k, tuple) else k for k in s.keys()]
    if not alphas:
        return INFINITY
    return min(math.floor(a) for a in alphas) - 1


def tss_order(s: WeightedSpectrum | Spectrum) -> int:
    """Order of the semisimple monodromy: lcm of the denominators of the exponents."""
    order = 1
    for k in s.keys():
        a = k[0] if isinstance(k, tuple) else k
        order = math.lcm(order, Fraction(a).denominator)
    return order
