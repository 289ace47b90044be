"""The SSS formula for a point on a one-dimensional singular locus.

    sigma^n - sigma^{n-1} = sigma(f + g^r) - sum_i sigma_lim,i (*) tau_lim,i

where each limit eigen-entry (alpha, w, beta) is starred with its own
vertical exponents (beta + k)/(mu r).  Also: the slc specialisation, the
catalog of non-isolated slc surface singularities and the J_{k,inf} series.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InconsistencyError, InputError, PreconditionError
from .local_models import brieskorn_pham, cusp_spectrum
from .spectra import (
    EigenEntry,
    Q,
    Spectrum,
    WeightedSpectrum,
    convolve,
    forget_weights,
    fmt,
    paired_convolution,
    to_hodge_deligne,
    tss_order,
)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class BranchData:
    mu: int
    eigen_entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "eigen_entries", tuple(self.eigen_entries))
        if self.mu < 1:
            raise InputError("branch degree mu must be >= 1")
        for e in self.eigen_entries:
            if not isinstance(e, EigenEntry):
                raise InputError(f"not an eigen-entry: {e!r}")


@dataclass(frozen=True)
class SssProblem:
    n: int
    branches: tuple
    yomdin: WeightedSpectrum
    r: int
    r_threshold: Fraction = Fraction(0)
    sigma_lower: WeightedSpectrum | None = None

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        object.__setattr__(self, "r_threshold", Q(self.r_threshold))
        if self.r < 1:
            raise InputError("r must be >= 1")
        if self.r_threshold < 0:
            raise InputError("the Puiseux threshold must be >= 0")


@dataclass
class SssReport:
    difference: object  # sigma^n - sigma^{n-1}
    sigma_n: object = None
    convolution: object = None
    warnings: list = field(default_factory=list)


def branch_convolution(branches, r: int) -> WeightedSpectrum:
    total = WeightedSpectrum()
    for b in branches:
        total = total + paired_convolution(b.eigen_entries, b.mu, r)
    return total


def _finish(report: SssReport, lower, what: str):
    if lower is not None:
        report.sigma_n = report.difference + lower
        if not report.sigma_n.is_effective():
            raise InconsistencyError(
                f"{what}: sigma^n has negative entries {report.sigma_n.negative_part()!r}",
                report)
    return report


def sss_report(problem: SssProblem) -> SssReport:
    """Weighted SSS formula; needs r strictly above the threshold."""
    if problem.r <= problem.r_threshold:
        raise PreconditionError(
            f"weighted SSS needs r > threshold ({problem.r} <= {fmt(problem.r_threshold)})")
    conv = branch_convolution(problem.branches, problem.r)
    rep = SssReport(problem.yomdin - conv, convolution=conv)
    return _finish(rep, problem.sigma_lower, "weighted SSS")


def sss_weighted(problem: SssProblem) -> WeightedSpectrum:
    """sigma~^n - sigma~^{n-1}, or sigma~^n itself when sigma_lower is given."""
    rep = sss_report(problem)
    return rep.sigma_n if rep.sigma_n is not None else rep.difference


def sss_plain(problem: SssProblem) -> SssReport:
    """Unweighted SSS formula; r equal to the threshold is allowed with a warning."""
    if problem.r < problem.r_threshold:
        raise PreconditionError(
            f"SSS needs r >= threshold ({problem.r} < {fmt(problem.r_threshold)})")
    conv = forget_weights(branch_convolution(problem.branches, problem.r))
    rep = SssReport(forget_weights(problem.yomdin) - conv, convolution=conv)
    if problem.r == problem.r_threshold:
        rep.warnings.append("r equals the threshold: only the unweighted identity is valid")
    lower = None if problem.sigma_lower is None else forget_weights(problem.sigma_lower)
    return _finish(rep, lower, "plain SSS")


def infer_sigma_lower(problem: SssProblem) -> WeightedSpectrum:
    """Smallest effective sigma~^{n-1} that makes sigma~^n effective."""
    bare = SssProblem(problem.n, problem.branches, problem.yomdin, problem.r,
                      problem.r_threshold)
    return sss_report(bare).difference.negative_part()


def lower_connected() -> WeightedSpectrum:
    """sigma^{n-1} of a germ with connected Milnor fiber in the relevant degree."""
    return WeightedSpectrum()


def lower_torus(count: int) -> WeightedSpectrum:
    """sigma~^1 = count [(1,2)], as for count+1 normal-crossing sheets."""
    return WeightedSpectrum.of((1, 2, count)) if count else WeightedSpectrum()


def slc_branches(betas) -> tuple:
    out = []
    for b in betas:
        b = Q(b)
        if b not in (0, HALF):
            raise PreconditionError(f"slc branches have beta 0 or 1/2, got {fmt(b)}")
        out.append(BranchData(1, (EigenEntry(1, 2, b),)))
    return tuple(out)


def sss_slc(sigma1: WeightedSpectrum, yomdin: WeightedSpectrum, r: int, betas) -> WeightedSpectrum:
    """sigma~^2 = sigma~^1 + yomdin - sum_i sum_k [(1 + (beta_i + k)/r, 2)].

    Raises InconsistencyError (carrying the raw result) when negative
    entries survive.
    """
    if r < 1:
        raise InputError("r must be >= 1")
    conv = branch_convolution(slc_branches(betas), r)
    result = sigma1 + yomdin - conv
    if not result.is_effective():
        raise InconsistencyError(
            f"uncancelled negative terms {result.negative_part()!r}", result)
    return result


# -- J_{k,inf} --------------------------------------------------------------

def _check_kappa(kappa):
    if not isinstance(kappa, int) or kappa < 1:
        raise InputError(f"kappa must be a positive integer, got {kappa!r}")


def jk_beta(kappa: int) -> Fraction:
    """The two A_inf branches are exchanged around the point iff kappa is odd."""
    return HALF if kappa % 2 else Fraction(0)


def jk_spectrum(kappa: int) -> WeightedSpectrum:
    _check_kappa(kappa)
    k = kappa
    terms = []
    if k % 2:
        for m in range(1, (k - 1) // 2 + 1):
            terms.append(Fraction(5 * k + 2 * m, 6 * k))
            terms.append(Fraction(13 * k - 2 * m, 6 * k))
        for m in range(1, 2 * k):
            terms.append(Fraction(7 * k + 2 * m, 6 * k))
        extra = []
    else:
        for m in range(1, k // 2):
            terms.append(Fraction(Fraction(5 * k, 2) + m, 3 * k))
            terms.append(Fraction(Fraction(13 * k, 2) - m, 3 * k))
        for m in range(1, 2 * k):
            terms.append(Fraction(Fraction(7 * k, 2) + m, 3 * k))
        extra = [((2, 4), 1)]
    return WeightedSpectrum([((a, 2), 1) for a in terms] + extra)


def jk_plain_difference(kappa: int) -> Spectrum:
    """{5/6,7/6}*{j/3k} - {1 resp. 1+1/6k}*{0, 1/3k, ..., (3k-1)/3k} by direct enumeration."""
    _check_kappa(kappa)
    n = 3 * kappa
    shift = 1 + jk_beta(kappa) / n
    pos = Spectrum((a + Fraction(j, n), 1) for a in (Fraction(5, 6), Fraction(7, 6))
                   for j in range(1, n))
    neg = Spectrum((shift + Fraction(j, n), 1) for j in range(n))
    return pos - neg


def jk_summary(kappa: int) -> dict:
    s = jk_spectrum(kappa)
    d = to_hodge_deligne(s)
    return {
        "kappa": kappa,
        "h20": sum(m for (p, q, _e), m in d.items() if (p, q) == (2, 0)),
        "h22": d.get(2, 2, 0),
        "tss_order": tss_order(s),
        "n_trivial": not any(d.get(p - 1, q - 1, e) for (p, q, e) in d.cells()),
        "total": s.total(),
    }


def genus_bound(kappas) -> int:
    return sum((int(k) - 1) // 2 for k in kappas)


# -- the catalog -------------------------------------------------------------

FAMILIES = ("A_inf", "D_inf", "T_2_inf_inf", "T_2_q_inf", "T_inf_inf_inf",
            "T_p_inf_inf", "T_p_q_inf", "J_k_inf")


@dataclass(frozen=True)
class SlcType:
    family: str
    p: int | None = None
    q: int | None = None
    kappa: int | None = None

    def __post_init__(self):
        f = self.family
        if f not in FAMILIES:
            raise InputError(f"unknown singularity family {f!r}")
        need = {"T_2_q_inf": ("q",), "T_p_inf_inf": ("p",), "T_p_q_inf": ("p", "q"),
                "J_k_inf": ("kappa",)}.get(f, ())
        for name in ("p", "q", "kappa"):
            v = getattr(self, name)
            if name in need and v is None:
                raise InputError(f"{f} needs parameter {name}")
            if name not in need and v is not None:
                raise InputError(f"{f} takes no parameter {name}")
        if f == "T_2_q_inf" and self.q < 3:
            raise InputError("T_{2,q,inf} needs q >= 3")
        if f == "T_p_inf_inf" and self.p < 3:
            raise InputError("T_{p,inf,inf} needs p >= 3")
        if f == "T_p_q_inf" and not 3 <= self.p <= self.q:
            raise InputError("T_{p,q,inf} needs q >= p >= 3")
        if f == "J_k_inf" and self.kappa < 1:
            raise InputError("J_{k,inf} needs kappa >= 1")

    @classmethod
    def from_json(cls, data) -> "SlcType":
        if isinstance(data, str):
            return cls(data)
        return cls(data["family"], data.get("p"), data.get("q"), data.get("kappa"))

    def to_json(self):
        out = {"family": self.family}
        for name in ("p", "q", "kappa"):
            if getattr(self, name) is not None:
                out[name] = getattr(self, name)
        return out

    @property
    def label(self) -> str:
        f = self.family
        return {"A_inf": "A_inf", "D_inf": "D_inf", "T_2_inf_inf": "T_{2,inf,inf}",
                "T_2_q_inf": f"T_{{2,{self.q},inf}}", "T_inf_inf_inf": "T_{inf,inf,inf}",
                "T_p_inf_inf": f"T_{{{self.p},inf,inf}}",
                "T_p_q_inf": f"T_{{{self.p},{self.q},inf}}",
                "J_k_inf": f"J_{{{self.kappa},inf}}"}[f]


@dataclass(frozen=True)
class CatalogRow:
    kind: SlcType
    local_form: str
    g_choice: str
    r_threshold: Fraction
    branch_count: int
    betas: tuple
    sigma1: WeightedSpectrum
    sigma2: WeightedSpectrum

    def to_json(self):
        return {"type": self.kind.to_json(), "label": self.kind.label,
                "local_form": self.local_form, "g": self.g_choice,
                "r_threshold": fmt(self.r_threshold), "branches": self.branch_count,
                "betas": [fmt(b) for b in self.betas],
                "sigma1": self.sigma1.to_json(), "sigma2": self.sigma2.to_json()}


def _leg(a: int) -> WeightedSpectrum:
    return WeightedSpectrum(((1 + Fraction(l, a), 2), 1) for l in range(1, a))


TOP = WeightedSpectrum.of((2, 4))
ONE = WeightedSpectrum.of((1, 2))
ZERO = WeightedSpectrum()


def slc_catalog(t: SlcType) -> CatalogRow:
    f = t.family
    if f == "A_inf":
        return CatalogRow(t, "x^2+y^2", "z", Fraction(0), 1, (0,), ONE, ZERO)
    if f == "D_inf":
        return CatalogRow(t, "x^2+y^2 z", "z-y", Fraction(3), 1, (HALF,), ZERO,
                          WeightedSpectrum.of((Fraction(3, 2), 2)))
    if f == "T_2_inf_inf":
        return CatalogRow(t, "x^2+y^2 z^2", "z-y", Fraction(4), 2, (0, 0), ONE,
                          _leg(2) + TOP)
    if f == "T_2_q_inf":
        q = t.q
        return CatalogRow(t, f"x^2+y^2 z^2+y^{q}", "z", Fraction(2 * q, q - 2), 1, (0,),
                          ZERO, _leg(2) + TOP + _leg(q))
    if f == "T_inf_inf_inf":
        return CatalogRow(t, "xyz", "x+y+z", Fraction(3), 3, (0, 0, 0), 2 * ONE, TOP)
    if f == "T_p_inf_inf":
        p = t.p
        return CatalogRow(t, f"xyz+x^{p}", "y+z", Fraction(2 * p, p - 1), 2, (0, 0), ONE,
                          _leg(p) + TOP)
    if f == "T_p_q_inf":
        p, q = t.p, t.q
        return CatalogRow(t, f"xyz+x^{p}+y^{q}", "z", Fraction(p * q, p * q - p - q), 1, (0,),
                          ZERO, _leg(p) + TOP + _leg(q))
    k = t.kappa
    return CatalogRow(t, f"x^2+y^3+y^2 z^{k}", "z", Fraction(3 * k), 1, (jk_beta(k),),
                      ZERO, jk_spectrum(k))


def table_one_types() -> list[SlcType]:
    """The seven rows, with the parametrised ones at the values exercised by the tests."""
    return [SlcType("A_inf"), SlcType("D_inf"), SlcType("T_2_inf_inf"),
            *(SlcType("T_2_q_inf", q=q) for q in (3, 4, 5)),
            SlcType("T_inf_inf_inf"),
            *(SlcType("T_p_inf_inf", p=p) for p in (3, 4)),
            *(SlcType("T_p_q_inf", p=p, q=q) for p, q in ((3, 3), (3, 4), (4, 5)))]


def smallest_r(t: SlcType) -> int:
    """Least integer strictly above the Puiseux threshold."""
    return math.floor(slc_catalog(t).r_threshold) + 1


def yomdin_model(t: SlcType, r: int) -> WeightedSpectrum:
    """sigma~^2 of the Yomdin deformation f + g^r from a closed-form model.

    A_inf gives the Brieskorn-Pham sum x^2+y^2+z^r; the T rows give hyperbolic
    cusps (f + g^r is T_{p,q,r}, T_{p,r,r}, T_{2,r,r}, T_{r,r,r}).  D_inf and
    J_{k,inf} have no closed model here and must come from fixtures.
    """
    row = slc_catalog(t)
    if r <= row.r_threshold and t.family != "A_inf":
        raise PreconditionError(f"r={r} is not above the threshold {fmt(row.r_threshold)}")
    f = t.family
    if f == "A_inf":
        return brieskorn_pham([2, 2, r])
    if f == "T_2_inf_inf":
        return cusp_spectrum(2, r, r)
    if f == "T_2_q_inf":
        return cusp_spectrum(2, t.q, r)
    if f == "T_inf_inf_inf":
        return cusp_spectrum(r, r, r)
    if f == "T_p_inf_inf":
        return cusp_spectrum(t.p, r, r)
    if f == "T_p_q_inf":
        return cusp_spectrum(t.p, t.q, r)
    raise InputError(f"no closed-form Yomdin model for {t.label}")


def catalog_sss(t: SlcType, yomdin: WeightedSpectrum, r: int) -> WeightedSpectrum:
    row = slc_catalog(t)
    return sss_slc(row.sigma1, yomdin, r, row.betas)


__all__ = [
    "BranchData", "SssProblem", "SssReport", "sss_weighted", "sss_report", "sss_plain",
    "sss_slc", "infer_sigma_lower", "lower_connected", "lower_torus", "jk_spectrum",
    "jk_plain_difference", "jk_summary", "jk_beta", "genus_bound", "SlcType", "CatalogRow",
    "slc_catalog", "table_one_types", "smallest_r", "yomdin_model", "catalog_sss", "convolve",
]
