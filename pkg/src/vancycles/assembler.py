"""Vanishing cohomology from sheaf data, and the vanishing-cycle sequence.

The E2 page of the hypercohomology spectral sequence has four possibly
nonzero terms E2^{0,n-1}, E2^{1,n-1}, E2^{2,n-1}, E2^{0,n}; the only
differential is d2: E2^{0,n} -> E2^{2,n-1}.  Everything is tracked as
Hodge-Deligne diagrams with T^ss eigenvalue classes; d2 is a morphism of
MHS commuting with T^ss, so it cancels only inside matching cells.

The long exact sequence ... -> H^k(X0) -> H^k_lim -> H^k_van -> H^{k+1}(X0) -> ...
is solved cell by cell as a linear system in the cell dimensions and the
ranks of the three maps.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .curves import (
    S0Point,
    SheafDescription,
    StratumInput,
    assemble_h_sheaf,
    kulikov_sheaf,
)
from .errors import InconsistencyError, InputError, PreconditionError
from .linear import Affine, System
from .local_models import suspend
from .spectra import HodgeDeligneDiagram, Q, WeightedSpectrum, fmt, frac_part
from .sss import SlcType, slc_catalog

ROMAN = {0: "I", 1: "II", 2: "III", 3: "IV", 4: "V"}


@dataclass
class E2Table:
    n: int
    cells: dict  # (i, j) -> HodgeDeligneDiagram
    d2_rank: int | None = None

    def get(self, i, j) -> HodgeDeligneDiagram:
        return self.cells.get((i, j), HodgeDeligneDiagram())

    @property
    def source(self):
        return self.get(0, self.n)

    @property
    def target(self):
        return self.get(2, self.n - 1)

    def euler(self) -> int:
        return sum((-1) ** (i + j) * d.total() for (i, j), d in self.cells.items())

    def to_json(self):
        out = {f"E2[{i},{j}]": d.to_json() for (i, j), d in sorted(self.cells.items()) if d}
        return {"n": self.n, "cells": out, "d2_rank": self.d2_rank}


def assemble_e2(desc: SheafDescription) -> E2Table:
    low, up = desc.cohomology()
    n = desc.n
    cells = {(i, n - 1): low[i] for i in (0, 1, 2)}
    cells[(0, n)] = up
    return E2Table(n, cells)


def van_from_d2(table: E2Table, cancelled: HodgeDeligneDiagram) -> dict:
    n = table.n
    return {
        n - 1: table.get(0, n - 1),
        n: table.get(1, n - 1) + (table.source - cancelled),
        n + 1: table.target - cancelled,
    }


def euler_van(van: dict) -> int:
    return sum((-1) ** k * d.total() for k, d in van.items())


@dataclass
class D2Solution:
    rank: int
    cancelled: HodgeDeligneDiagram
    van: dict  # degree -> HodgeDeligneDiagram

    def to_json(self):
        return {"d2_rank": self.rank, "cancelled": self.cancelled.to_json(),
                "H_van": {str(k): d.to_json() for k, d in sorted(self.van.items())}}


def _fiber_cap(fiber_hodge, k, p):
    return sum(v for (pp, _q), v in fiber_hodge.get(k, {}).items() if pp == p)


def _d2_ok(c, van, rank, fiber_hodge):
    kind = c["kind"]
    if kind == "d2_rank":
        return rank == int(c["value"])
    if kind == "van_rank":
        return van.get(int(c["degree"]), HodgeDeligneDiagram()).total() == int(c["value"])
    if kind == "hodge_cap":
        k = int(c["degree"])
        d = van.get(k, HodgeDeligneDiagram())
        ps = [int(c["p"])] if "p" in c else sorted({p for (p, _q, _e) in d.cells()})
        slack = int(c.get("slack", 0))
        return all(d.hodge_level(p) <= _fiber_cap(fiber_hodge, k, p) + slack for p in ps)
    raise InputError(f"unknown d2 constraint kind {kind!r}")


def solve_d2(table: E2Table, constraints=(), fiber_hodge=None) -> list:
    """All d2 cancellations (per matching cell) satisfying the constraints.

    Returns a list of D2Solution with distinct H_van; more than one entry means
    the data leave d2 under-determined.
    """
    fiber_hodge = fiber_hodge or {}
    src, tgt = table.source, table.target
    common = [c for c in src.cells() if tgt[c] > 0]
    ranges = [range(min(src[c], tgt[c]) + 1) for c in common]
    seen, out = set(), []
    for alloc in product(*ranges):
        canc = HodgeDeligneDiagram(dict(zip(common, alloc)))
        van = van_from_d2(table, canc)
        rank = canc.total()
        if all(_d2_ok(c, van, rank, fiber_hodge) for c in constraints):
            key = tuple(sorted((k, d) for k, d in van.items()))
            if key not in seen:
                seen.add(key)
                out.append(D2Solution(rank, canc, van))
    if not out:
        raise InconsistencyError("no d2 rank is compatible with the constraints")
    return out


# ---------------------------------------------------------------- sequences

def _ckey(cell):
    p, q, e = cell
    return f"{p},{q},{fmt(e)}"


def _name(space, k, cell):
    return f"{space}{k}[{_ckey(cell)}]"


def _symbolic(d) -> dict:
    """Cell -> Affine from a HodgeDeligneDiagram or an already symbolic dict."""
    if isinstance(d, HodgeDeligneDiagram):
        return {c: Affine({}, m) for c, m in d.items()}
    out = {}
    for c, m in d.items():
        p, q, e = c
        out[(p, q, frac_part(Q(e)))] = Affine.lift(m)
    return out


@dataclass
class SequenceResult:
    n: int
    degrees: list
    x0: dict  # k -> {cell: Affine}
    lim: dict
    van: dict
    maps: dict  # ("r1"|"r2"|"r3", k) -> {cell: Affine}
    derived: dict  # name -> Affine
    free: list
    params: list
    bounds: dict
    family: list | None

    def diagram(self, space, k) -> HodgeDeligneDiagram:
        """Concrete diagram (raises if some cell is still symbolic)."""
        cells = {"X0": self.x0, "lim": self.lim, "van": self.van}[space].get(k, {})
        out = {}
        for c, e in cells.items():
            if not e.is_constant():
                raise PreconditionError(f"{space}^{k} cell {c} is undetermined: {e}")
            v = e.int_value()
            if v:
                out[c] = v
        return HodgeDeligneDiagram(out)

    def cell(self, space, k, p, q, eig=0) -> Affine:
        cells = {"X0": self.x0, "lim": self.lim, "van": self.van}[space].get(k, {})
        return cells.get((p, q, frac_part(Q(eig))), Affine())

    def determined(self) -> bool:
        return not self.free

    def degeneration_type(self, k=None):
        k = self.n if k is None else k
        return degeneration_type(self.diagram("lim", k), k)

    def to_json(self):
        def table(d):
            return {str(k): [{"p": c[0], "q": c[1], "eig": fmt(c[2]), "mult": e.to_json()}
                             for c, e in sorted(cells.items()) if not (e.is_constant() and e.const == 0)]
                    for k, cells in sorted(d.items())}
        return {
            "H_X0": table(self.x0), "H_lim": table(self.lim), "H_van": table(self.van),
            "derived": {k: v.to_json() for k, v in sorted(self.derived.items())},
            "free": self.free, "params": self.params,
            "free_ranges": {f: [_bj(self.bounds[f][0]), _bj(self.bounds[f][1])] for f in self.free},
            "family": self.family,
        }


def _bj(x):
    if x is None:
        return None
    return int(x) if x.denominator == 1 else fmt(x)


def degeneration_type(lim: HodgeDeligneDiagram, k: int) -> str:
    """I, II, III, ... from the longest N-string: max |p + q - k| + 1."""
    depth = max((abs(p + q - k) for (p, q, _e) in lim.cells()), default=0)
    return ROMAN.get(depth, str(depth + 1))


def _box(k, n):
    lo, hi = max(0, k - n), min(k, n)
    return [(p, q) for p in range(lo, hi + 1) for q in range(lo, hi + 1)]


def vanishing_sequence_solve(van, n: int, fiber_hodge, known=(), unknowns=None, params=(),
                             clemens_schmid: bool = True, nodes: int = 0, components: int = 1,
                             degrees=None) -> SequenceResult:
    """Solve the vanishing-cycle sequence cell by cell.

    van: {k: HodgeDeligneDiagram or {cell: int|Affine}} (missing degrees are 0).
    fiber_hodge: {k: {(p, q): h}} Hodge numbers of the smooth fiber.
    known: list of {"space": "X0"|"lim", "degree": k, "cell": [p, q, eig]?, "value": v}
           (no cell and value 0 means the whole space vanishes), or {"param": name, "value": v}.
    unknowns: {name: {"map": "delta"|"sp"|"lim_to_van", "degree": k, "cell": [...]?}}
              defines derived ranks that may then be used as parameters.
    params: names appearing in van multiplicities (kept symbolic unless fixed by `known`).
    With clemens_schmid, H^k(X0) maps onto the T-invariants of H^k_lim and the image
    of delta is pure, except in type (m, m) for k = 2m when the total space has nodes.
    """
    vanS = {int(k): _symbolic(d) for k, d in van.items()}
    vanS = {k: {c: e for c, e in d.items() if not (e.is_constant() and e.const == 0)}
            for k, d in vanS.items()}
    vanS = {k: d for k, d in vanS.items() if d}
    if degrees is None:
        if not vanS:
            raise InputError("give `degrees` when the vanishing cohomology is zero")
        degrees = list(range(min(vanS), max(vanS) + 2))
    degrees = sorted(degrees)
    sysm = System()
    for p in params:
        sysm.add_var(p, param=True)
    for k in vanS:
        for e in vanS[k].values():
            for name in e.names():
                if not sysm.has(name):
                    raise InputError(f"vanishing multiplicity uses undeclared parameter {name!r}")

    even_nodal = n % 2 == 0 and nodes > 0
    m = n // 2
    x0, lim, r1, r2, r3 = {}, {}, {}, {}, {}
    for k in degrees:
        eigs = {Fraction(0)}
        for (_p, _q, e) in vanS.get(k, {}):
            eigs |= {e, frac_part(-e)}
        lim[k] = {}
        for (p, q) in _box(k, n):
            for e in sorted(eigs):
                c = (p, q, e)
                lim[k][c] = Affine.var(sysm.add_var(_name("L", k, c)))
        x0[k] = {}
        for (p, q) in _box(k, n):
            if p + q <= k:
                c = (p, q, Fraction(0))
                x0[k][c] = Affine.var(sysm.add_var(_name("X", k, c)))
    for k in degrees:
        for c in set(x0[k]) & set(lim[k]):
            r1[(k, c)] = Affine.var(sysm.add_var(_name("sp", k, c)))
        for c in vanS.get(k, {}):
            if c in lim[k]:
                r2[(k, c)] = Affine.var(sysm.add_var(_name("lv", k, c)))
            if k + 1 in x0 and c in x0[k + 1]:
                r3[(k, c)] = Affine.var(sysm.add_var(_name("dl", k, c), late=True))

    zero = Affine()
    rho_a = rho_b = None
    if even_nodal and clemens_schmid:
        rho_a = Affine.var(sysm.add_var("rho_a"))
        rho_b = Affine.var(sysm.add_var("rho_b"))

    # exactness
    for k in degrees:
        cells = set(x0[k]) | set(lim[k]) | set(vanS.get(k, {}))
        for c in cells:
            sysm.eq(x0[k].get(c, zero), r3.get((k - 1, c), zero) + r1.get((k, c), zero))
            sysm.eq(lim[k].get(c, zero), r1.get((k, c), zero) + r2.get((k, c), zero))
            if c in vanS.get(k, {}):
                sysm.eq(vanS[k][c], r2.get((k, c), zero) + r3.get((k, c), zero))
            elif (k, c) in r2 or (k, c) in r3:
                sysm.eq(r2.get((k, c), zero) + r3.get((k, c), zero), 0)
    for k in vanS:
        if k not in degrees:
            raise InputError(f"degree {k} of H_van lies outside the window {degrees}")

    # symmetry, centering, Hodge numbers of the smooth fiber
    for k in degrees:
        for (p, q, e), v in x0[k].items():
            if p < q:
                sysm.eq(v, x0[k][(q, p, e)])
        for (p, q, e), v in lim[k].items():
            mate = (q, p, frac_part(-e))
            if (p, q, e) < mate:
                sysm.eq(v, lim[k].get(mate, zero))
            j = p + q - k
            if j > 0:
                sysm.eq(v, lim[k].get((p - j, q - j, e), zero))
        fh = fiber_hodge.get(k, {})
        for level in {p for (p, _q) in _box(k, n)}:
            total = sum((v for (p, _q, _e), v in lim[k].items() if p == level), zero)
            sysm.eq(total, _fiber_cap(fiber_hodge, k, level))
        for (p, q), h in fh.items():
            if (p, q) not in _box(k, n):
                raise InputError(f"fiber Hodge number h^{{{p},{q}}} outside the range for degree {k}")

    if clemens_schmid:
        for k in degrees:
            for c, v in lim[k].items():
                p, q, e = c
                if e != 0 or p + q > k:
                    continue
                below = lim[k].get((p - 1, q - 1, e), zero)
                ker_n = v - below
                relaxed = even_nodal and k == n and (p, q) == (m, m)
                if relaxed:
                    sysm.eq(r1[(k, c)] + rho_a, ker_n)
                else:
                    sysm.eq(r1[(k, c)], ker_n)
            for (kk, c), v in r3.items():
                if kk != k:
                    continue
                p, q, e = c
                if p + q == k + 1:
                    continue
                if even_nodal and k == n and (p, q, e) == (m, m, 0):
                    sysm.eq(v, rho_b)
                else:
                    sysm.eq(v, 0)
        if even_nodal:
            if (n, (m, m, Fraction(0))) not in r3:
                sysm.eq(rho_b, 0)
            if m == 1 and components == 1:
                sysm.eq(rho_a + rho_b, nodes)
            else:
                sysm.le(rho_a + rho_b, nodes)

    derived_defs = {}
    maps_by = {"sp": r1, "lim_to_van": r2, "delta": r3}
    for name, spec in (unknowns or {}).items():
        table = maps_by.get(spec.get("map"))
        if table is None:
            raise InputError(f"unknown map in {name!r}: {spec!r}")
        k = int(spec["degree"])
        cells = [(kk, c) for (kk, c) in table if kk == k]
        if "cell" in spec:
            p, q, *rest = spec["cell"]
            want = (int(p), int(q), frac_part(Q(rest[0] if rest else 0)))
            cells = [(kk, c) for (kk, c) in cells if c == want]
        total = sum((table[key] for key in cells), zero)
        if not sysm.has(name):
            sysm.add_var(name, param=True)
        sysm.eq(Affine.var(name), total)
        derived_defs[name] = Affine.var(name)

    # known data
    spaces = {"X0": x0, "lim": lim}
    for item in known:
        if "param" in item:
            name = item["param"]
            if not sysm.has(name):
                raise InputError(f"unknown parameter {name!r}")
            sysm.eq(Affine.var(name), Affine.parse(item["value"]))
            continue
        sp = spaces.get(item.get("space"))
        if sp is None:
            raise InputError(f"unknown space in known data: {item!r}")
        k = int(item["degree"])
        if k not in sp:
            raise InputError(f"degree {k} outside the window {degrees}")
        if "cell" in item:
            p, q, *rest = item["cell"]
            c = (int(p), int(q), frac_part(Q(rest[0] if rest else 0)))
            sysm.eq(sp[k].get(c, zero), Affine.parse(item["value"]))
        else:
            if Affine.parse(item.get("value", 0)) != Affine():
                raise InputError("a whole-space entry in known data must have value 0")
            for v in sp[k].values():
                sysm.eq(v, 0)

    sol = sysm.solve()

    def ev(a: Affine):
        return a.substitute(sol.exprs)

    res_x0 = {k: {c: ev(v) for c, v in d.items()} for k, d in x0.items()}
    res_lim = {k: {c: ev(v) for c, v in d.items()} for k, d in lim.items()}
    res_van = {k: {c: ev(v) for c, v in d.items()} for k, d in vanS.items()}
    maps = {}
    for tag, table in (("sp", r1), ("lim_to_van", r2), ("delta", r3)):
        for (k, c), v in table.items():
            maps.setdefault((tag, k), {})[c] = ev(v)
    derived = {name: ev(v) for name, v in derived_defs.items()}
    if rho_a is not None:
        derived["rho_a"] = ev(rho_a)
        derived["rho_b"] = ev(rho_b)
    for p in params:
        derived.setdefault(p, ev(Affine.var(p)))
    return SequenceResult(n, degrees, res_x0, res_lim, res_van, maps, derived,
                          sol.free, sol.params, sol.bounds, sol.family())


# ---------------------------------------------------------- discrepancies

@dataclass(frozen=True)
class DiscrepancyReport:
    rho_a: object
    rho_b: object
    bound: int
    equality_case: bool
    middle_rank: object = None

    def to_json(self):
        def j(x):
            return x.to_json() if isinstance(x, Affine) else x
        return {"rho_a": j(self.rho_a), "rho_b": j(self.rho_b), "bound": self.bound,
                "equality_case": self.equality_case, "middle_rank": j(self.middle_rank)}


def csd_middle_rank(van: dict, m: int):
    """Rank of T-invariant (m,m) vanishing classes modulo the image of N.

    Assumes N vanishes on the (m,m) part, which holds when there is no
    unipotent (m-1,m-1) class; otherwise the rank is not determined by the
    diagram alone.
    """
    d = van.get(2 * m)
    if d is None:
        return 0
    d = _symbolic(d)
    low = d.get((m - 1, m - 1, Fraction(0)), Affine())
    if not (low.is_constant() and low.const == 0):
        raise PreconditionError("N on the (m,m) part is not determined by the diagram")
    mid = d.get((m, m, Fraction(0)), Affine()) - d.get((m + 1, m + 1, Fraction(0)), Affine())
    return mid.int_value() if mid.is_constant() else mid


def cs_discrepancy(n: int, nodes: int, components: int = 1, result: SequenceResult | None = None,
                   van=None) -> DiscrepancyReport:
    if nodes < 0:
        raise InputError("the number of nodes must be non-negative")
    if n % 2 == 1 or nodes == 0:
        return DiscrepancyReport(0, 0, nodes, False, 0 if van is None else None)
    m = n // 2
    eq_case = m == 1 and components == 1
    ra = rb = None
    if result is not None:
        ra, rb = result.derived["rho_a"], result.derived["rho_b"]
        if ra.is_constant() and rb.is_constant():
            ra, rb = ra.int_value(), rb.int_value()
            if ra + rb > nodes or (eq_case and ra + rb != nodes):
                raise InconsistencyError(f"rho_a + rho_b = {ra + rb} violates the bound {nodes}")
    mid = csd_middle_rank(van, m) if van is not None else None
    return DiscrepancyReport(ra, rb, nodes, eq_case, mid)


# ------------------------------------------------------------- scenarios

def _point_from_json(d, n):
    if "type" in d:
        t = SlcType.from_json(d["type"])
        row = slc_catalog(t)
        fam = t.family
        if fam == "T_inf_inf_inf":
            raise InputError("T_{inf,inf,inf} points are handled by the Kulikov model only")
        vn = suspend(row.sigma2, n - 2) if n > 2 else row.sigma2
        if fam == "D_inf":
            kind, kappa = "pinch", None
        elif fam == "J_k_inf":
            kind, kappa = "J_kappa", t.kappa
        elif row.sigma1:
            kind, kappa = "gluing", None
        else:
            kind, kappa = "other", None
        mono = d.get("local_monodromy")
        if kind == "other" and mono is None:
            mono = 1
        return S0Point(kind, vn, kappa, mono, d.get("label", t.label))
    kind = d.get("kind", "other")
    vn = WeightedSpectrum.from_json(d.get("vn", []))
    return S0Point(kind, vn, d.get("kappa"), d.get("local_monodromy"), d.get("label", kind))


def _fiber_from_json(data):
    out = {}
    for k, cells in (data or {}).items():
        out[int(k)] = {(int(c[0]), int(c[1])): int(c[2]) for c in cells}
    return out


@dataclass
class DegenerationScenario:
    name: str
    n: int
    strata: tuple = ()
    isolated: tuple = ()
    fiber_hodge: dict = field(default_factory=dict)
    components: int = 1
    d2_constraints: tuple = ()
    known: tuple = ()
    unknowns: dict = field(default_factory=dict)
    params: tuple = ()
    kulikov: dict | None = None
    clemens_schmid: bool = True

    @property
    def total_space_nodes(self) -> int:
        return sum(s.nodes for s in self.strata)

    @classmethod
    def from_json(cls, d) -> "DegenerationScenario":
        n = int(d["n"])
        if n < 1:
            raise InputError("n must be positive")
        strata = tuple(
            StratumInput(s.get("name", f"Z{i}"),
                         tuple(_point_from_json(p, n) for p in s.get("points", [])),
                         int(s.get("nodes", 0)), int(s.get("genus", 0)))
            for i, s in enumerate(d.get("strata", [])))
        isolated = tuple(_point_from_json(p, n) for p in d.get("isolated", []))
        return cls(d.get("name", ""), n, strata, isolated, _fiber_from_json(d.get("fiber_hodge")),
                   int(d.get("components", 1)), tuple(d.get("d2_constraints", [])),
                   tuple(d.get("known", [])), dict(d.get("unknowns", {})),
                   tuple(d.get("params", [])), d.get("kulikov"), bool(d.get("clemens_schmid", True)))

    def j_kappas(self):
        return [p.kappa for s in self.strata for p in s.points if p.kind == "J_kappa"]


def scenario_sheaf(sc: DegenerationScenario) -> SheafDescription:
    if sc.kulikov is not None:
        k = sc.kulikov
        return kulikov_sheaf(int(k["F"]), int(k["E"]), int(k["V"]), k.get("edges"))
    return assemble_h_sheaf(sc.strata, sc.n, sc.isolated)


def node_puncture_enrichment(sc: DegenerationScenario):
    """Effect of the total-space nodes on E2^{1,n-1}: (without nodes, with nodes, difference)."""
    bare = DegenerationScenario(sc.name, sc.n,
                                tuple(StratumInput(s.name, s.points, 0, s.genus) for s in sc.strata),
                                sc.isolated)
    before = assemble_e2(scenario_sheaf(bare)).get(1, sc.n - 1)
    after = assemble_e2(scenario_sheaf(sc)).get(1, sc.n - 1)
    return before, after, after - before


def genus_bound_check(sc: DegenerationScenario) -> bool:
    """sum floor((kappa_j - 1)/2) over the J_{kappa,inf} points is at most h^{2,0}(X_t)."""
    if sc.n != 2:
        raise PreconditionError("the genus bound concerns degenerations of surfaces")
    need = sum((k - 1) // 2 for k in sc.j_kappas())
    have = sc.fiber_hodge.get(2, {}).get((2, 0), 0)
    return need <= have


@dataclass
class ScenarioOutcome:
    e2: E2Table
    d2: list
    sequences: list  # one SequenceResult per d2 solution
    discrepancies: list


def analyze(sc: DegenerationScenario) -> ScenarioOutcome:
    desc = scenario_sheaf(sc)
    table = assemble_e2(desc)
    d2 = solve_d2(table, sc.d2_constraints, sc.fiber_hodge)
    if len(d2) == 1:
        table.d2_rank = d2[0].rank
    seqs, discs = [], []
    nodes = sc.total_space_nodes
    for sol in d2:
        van = {k: d for k, d in sol.van.items() if d}
        degrees = None if van else [sc.n]
        seq = vanishing_sequence_solve(van, sc.n, sc.fiber_hodge, sc.known, sc.unknowns,
                                       sc.params, sc.clemens_schmid, nodes, sc.components,
                                       degrees=degrees)
        seqs.append(seq)
        if sc.clemens_schmid:
            discs.append(cs_discrepancy(sc.n, nodes, sc.components, seq if nodes and sc.n % 2 == 0
                                        else None, van if nodes and sc.n % 2 == 0 else None))
    return ScenarioOutcome(table, d2, seqs, discs)


K3_FIBER = {2: {(2, 0): 1, (1, 1): 20, (0, 2): 1}, 4: {(2, 2): 1}}


@dataclass
class KulikovResult:
    e2: E2Table
    d2: D2Solution
    sequence: SequenceResult

    @property
    def h2_x0(self) -> int:
        return self.sequence.diagram("X0", 2).total()

    def van_rank(self, k) -> int:
        return self.d2.van.get(k, HodgeDeligneDiagram()).total()


def kulikov_e2(F: int, E: int, V: int, edges=None, fiber_hodge=None) -> KulikovResult:
    """Type III degeneration of K3 surfaces: F components, E double curves, V triple points.

    d2: E2^{0,2} -> E2^{2,1} is the restriction from triple points to double
    curves, of rank V - 1 for a connected dual complex.  The dual complex
    must triangulate the sphere: F - E + V = 2 and every double curve lies
    on two triple points' triangles, 3V = 2E.
    """
    if F != E - V + 2:
        raise InputError(f"F = E - V + 2 fails for (F, E, V) = ({F}, {E}, {V})")
    if 3 * V != 2 * E:
        raise InputError(f"3V = 2E fails for (E, V) = ({E}, {V}): not a triangulation")
    sc = DegenerationScenario(
        f"kulikov_F{F}", 2, fiber_hodge=dict(K3_FIBER if fiber_hodge is None else fiber_hodge),
        d2_constraints=({"kind": "d2_rank", "value": V - 1},),
        kulikov={"F": F, "E": E, "V": V, "edges": edges})
    res = analyze(sc)
    if len(res.d2) != 1:
        raise InconsistencyError(f"d2 is not determined: {len(res.d2)} candidates")
    return KulikovResult(res.e2, res.d2[0], res.sequences[0])
