"""Cohomology of rank-one +-1 local systems on punctured rational curves.

The sheaf H^{n-1} phi_f on a one-dimensional singular locus is modelled as
j_! L(-t) on each curve component, where L has monodromy +-1 about each
puncture, plus skyscrapers on the finite set S0 carrying V^n.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError, PreconditionError
from .linalg import rank
from .spectra import HodgeDeligneDiagram, WeightedSpectrum, to_hodge_deligne

PUNCTURE_KINDS = ("pinch", "total_space_node", "J_kappa", "gluing", "other")


@dataclass(frozen=True)
class Puncture:
    kind: str
    local_monodromy: int
    label: str = ""

    def __post_init__(self):
        if self.kind not in PUNCTURE_KINDS:
            raise InputError(f"unknown puncture kind {self.kind!r}")
        if self.local_monodromy not in (1, -1):
            raise InputError("only +1 and -1 local monodromies are supported")

    def to_json(self):
        return {"kind": self.kind, "local_monodromy": self.local_monodromy, "label": self.label}


@dataclass(frozen=True)
class CurveStratumConfig:
    """One irreducible curve of sing(X0) with its punctures.

    `punctures` excludes nothing: gluing punctures are listed too but do not
    remove their point (the sheaf extends as a constant sheaf there).
    """

    component_genus: int = 0
    punctures: tuple = ()
    twist: int = 1
    tss_sign: int = 1
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "punctures", tuple(self.punctures))
        if self.tss_sign not in (1, -1):
            raise InputError("tss_sign must be +1 or -1")
        if self.component_genus < 0:
            raise InputError("genus must be non-negative")
        if self.component_genus == 0:
            prod = 1
            for p in self.punctures:
                prod *= p.local_monodromy
            if prod != 1:
                raise InputError(
                    f"stratum {self.name or '?'}: product of local monodromies is -1; "
                    "no such rank-one local system on a rational curve")

    @property
    def holes(self):
        return [p for p in self.punctures if p.kind != "gluing"]

    @property
    def minus_count(self):
        return sum(1 for p in self.holes if p.local_monodromy == -1)

    @property
    def plus_count(self):
        return sum(1 for p in self.holes if p.local_monodromy == 1)

    @property
    def trivial(self):
        return all(p.local_monodromy == 1 for p in self.punctures)

    @property
    def eig(self):
        return Fraction(0) if self.tss_sign == 1 else Fraction(1, 2)

    def to_json(self):
        return {
            "name": self.name,
            "component_genus": self.component_genus,
            "twist": self.twist,
            "tss_sign": self.tss_sign,
            "punctures": [p.to_json() for p in self.punctures],
        }


def _require_genus_zero(cfg):
    if cfg.component_genus != 0:
        raise PreconditionError("only rational strata (genus 0) are supported")


def shriek_cohomology(cfg: CurveStratumConfig):
    """(h0, h1, h2) of j_! L on the curve minus its m non-gluing punctures."""
    _require_genus_zero(cfg)
    m = len(cfg.holes)
    if m == 0:
        return (1, 0, 1) if cfg.trivial else (0, 0, 0)
    h0 = 0
    h2 = 1 if cfg.trivial else 0
    h1 = h0 + h2 - 2 + m
    return (h0, h1, h2)


def shriek_hodge(cfg: CurveStratumConfig):
    """Hodge-Deligne diagrams of H^i(j_! L(-t)) for i = 0, 1, 2.

    For nontrivial L the double cover branched at the m_- points of
    monodromy -1 carries the pure part IH^1 (genus m_-/2 - 1); each puncture
    with trivial monodromy adds a weight-0 class (one fewer when L is trivial).
    """
    h0, h1, h2 = shriek_cohomology(cfg)
    t, e = cfg.twist, cfg.eig
    out = {0: HodgeDeligneDiagram(), 1: HodgeDeligneDiagram(), 2: HodgeDeligneDiagram()}
    if h0:
        out[0] = HodgeDeligneDiagram({(t, t, e): 1})
    if h2:
        out[2] = HodgeDeligneDiagram({(t + 1, t + 1, e): 1})
    if h1:
        g = cfg.minus_count // 2 - 1 if cfg.minus_count else 0
        w0 = cfg.plus_count - (1 if cfg.trivial else 0)
        cells = {}
        if g > 0:
            cells[(t, t + 1, e)] = g
            cells[(t + 1, t, e)] = g
        if w0 > 0:
            cells[(t, t, e)] = w0
        d = HodgeDeligneDiagram(cells)
        assert d.total() == h1
        out[1] = d
    return out


def branched_cover_genus(g: int, branch_points: int) -> int:
    """Riemann-Hurwitz for a double cover of a genus-g curve."""
    if branch_points < 0 or branch_points % 2:
        raise InputError("a double cover needs an even number of branch points")
    return 2 * g - 1 + branch_points // 2


@dataclass(frozen=True)
class SheafPiece:
    support: str  # "stratum" | "point"
    kind: str  # "shriek_local_system" | "constant" | "skyscraper" | "kulikov_kernel"
    data: object
    label: str = ""


@dataclass(frozen=True)
class SheafDescription:
    """H^{n-1} pieces (on curves) and H^n pieces (skyscrapers on S0)."""

    n: int
    lower: tuple = ()
    upper: tuple = ()

    def cohomology(self):
        """{i: diagram} for H^i of the H^{n-1} sheaf, and the H^0 of the H^n sheaf."""
        low = {0: HodgeDeligneDiagram(), 1: HodgeDeligneDiagram(), 2: HodgeDeligneDiagram()}
        for piece in self.lower:
            if piece.kind in ("shriek_local_system", "constant"):
                for i, d in shriek_hodge(piece.data).items():
                    low[i] = low[i] + d
            elif piece.kind == "kulikov_kernel":
                for i, d in piece.data.items():
                    low[i] = low[i] + d
            else:
                raise InputError(f"unknown sheaf piece {piece.kind!r}")
        up = HodgeDeligneDiagram()
        for piece in self.upper:
            up = up + piece.data
        return low, up


def puncture_monodromy(kind: str, n: int, kappa: int | None = None) -> int:
    """Local monodromy of the A_inf local system about a special point."""
    if kind == "pinch":
        return -1
    if kind == "total_space_node":
        return (-1) ** n
    if kind == "J_kappa":
        if kappa is None or kappa < 1:
            raise InputError("J_kappa puncture needs kappa >= 1")
        return -1 if kappa % 2 else 1
    if kind == "gluing":
        return 1
    raise InputError(f"no default monodromy for puncture kind {kind!r}")


@dataclass(frozen=True)
class S0Point:
    """A point of S0 lying on a stratum: a puncture plus its V^n skyscraper."""

    kind: str
    vn: WeightedSpectrum = field(default_factory=WeightedSpectrum)
    kappa: int | None = None
    local_monodromy: int | None = None
    label: str = ""


@dataclass(frozen=True)
class StratumInput:
    name: str
    points: tuple = ()
    nodes: int = 0
    genus: int = 0


def assemble_h_sheaf(strata, n: int, isolated=()) -> SheafDescription:
    """Sheaf description from strata with their special points.

    `isolated` lists S0 points not on any curve (e.g. extra nodes of X0),
    given as S0Point with only vn set.
    """
    lower, upper = [], []
    twist = n // 2
    tss = (-1) ** n
    for s in strata:
        punct = []
        for pt in s.points:
            mono = pt.local_monodromy
            if mono is None:
                mono = puncture_monodromy(pt.kind, n, pt.kappa)
            punct.append(Puncture(pt.kind, mono, pt.label))
            if pt.vn:
                upper.append(SheafPiece("point", "skyscraper", to_hodge_deligne(pt.vn), pt.label))
        for i in range(s.nodes):
            punct.append(Puncture("total_space_node", puncture_monodromy("total_space_node", n),
                                  f"{s.name}:node{i + 1}"))
        cfg = CurveStratumConfig(s.genus, tuple(punct), twist, tss, s.name)
        kind = "constant" if not cfg.holes and cfg.trivial else "shriek_local_system"
        lower.append(SheafPiece("stratum", kind, cfg, s.name))
    for pt in isolated:
        upper.append(SheafPiece("point", "skyscraper", to_hodge_deligne(pt.vn), pt.label))
    return SheafDescription(n, tuple(lower), tuple(upper))


def incidence_rank(vertices: int, edges) -> int:
    """Rank of the oriented vertex-edge incidence matrix of a graph."""
    rows = []
    for a, b in edges:
        if not (0 <= a < vertices and 0 <= b < vertices) or a == b:
            raise InputError(f"bad edge {(a, b)}")
        row = [Fraction(0)] * vertices
        row[a] += 1
        row[b] -= 1
        rows.append(row)
    return rank(rows)


def kulikov_sheaf(F: int, E: int, V: int, edges=None) -> SheafDescription:
    """H^1 = ker(normalization of the double curves -> triple points), H^2 = Q(-2)^V.

    The global sections map Q^E -> Q^V has the rank of the oriented incidence
    matrix of the dual graph's edges; V - 1 for a connected graph.
    """
    if min(F, E, V) < 1:
        raise InputError("F, E, V must be positive")
    if F != E - V + 2:
        raise InputError(f"F = E - V + 2 fails for (F, E, V) = ({F}, {E}, {V})")
    rk = V - 1 if edges is None else incidence_rank(V, edges)
    if edges is not None and len(edges) != E:
        raise InputError("edge list length differs from E")
    kernel = {
        0: HodgeDeligneDiagram({(1, 1, Fraction(0)): E - rk}),
        1: HodgeDeligneDiagram({(1, 1, Fraction(0)): V - rk}),
        2: HodgeDeligneDiagram({(2, 2, Fraction(0)): E}),
    }
    upper = (SheafPiece("point", "skyscraper", HodgeDeligneDiagram({(2, 2, Fraction(0)): V}),
                        "triple points"),)
    return SheafDescription(2, (SheafPiece("stratum", "kulikov_kernel", kernel, "double curves"),),
                            upper)
