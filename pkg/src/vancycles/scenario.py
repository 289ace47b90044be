"""Run one scenario description (a JSON object) and return a JSON-ready report."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

from .assembler import DegenerationScenario, analyze, genus_bound_check, node_puncture_enrichment
from .errors import InputError, PreconditionError
from .fixtures import entry_rows, load_fixture, spectrum_rows
from .spectra import (
    Q,
    forget_weights,
    paired_convolution,
    to_hodge_deligne,
    tss_order,
)
from .sss import (
    BranchData,
    SlcType,
    SssProblem,
    catalog_sss,
    jk_plain_difference,
    jk_spectrum,
    jk_summary,
    slc_catalog,
    smallest_r,
    sss_report,
    yomdin_model,
)

KINDS = ("spectrum", "sss", "slc", "jk", "assemble", "kulikov", "doublebox")


def _spec_json(s):
    return s.to_json() if s is not None else None


def _run_spectrum(d):
    s = spectrum_rows(d["spectrum"])
    return {"spectrum": s.to_json(), "plain": forget_weights(s).to_json(),
            "hodge_deligne": to_hodge_deligne(s).to_json(), "total": s.total(),
            "tss_order": tss_order(s)}


def _run_sss(d):
    if "fixture" in d:
        fx = load_fixture(d["fixture"])
        r, mu = int(fx["r"]), int(fx["mu"])
        out = {"r": r, "mu": mu}
        for which in ("limit", "nearby"):
            entries = entry_rows(fx[f"{which}_entries"])
            conv = paired_convolution(entries, mu, r)
            out[f"{which}_convolution"] = conv.to_json()
            if which == "limit":
                yomdin = spectrum_rows(fx["yomdin"])
                diff = yomdin - conv
                out["difference"] = diff.to_json()
                out["matches_reference_convolution"] = conv == spectrum_rows(fx["convolution"])
                out["matches_reference_difference"] = diff == spectrum_rows(fx["difference"])
        return out
    branches = [BranchData(int(b.get("mu", 1)), entry_rows(b["entries"])) for b in d["branches"]]
    lower = spectrum_rows(d["sigma_lower"]) if "sigma_lower" in d else None
    prob = SssProblem(int(d.get("n", 2)), branches, spectrum_rows(d["yomdin"]), int(d["r"]),
                      Q(d.get("r_threshold", 0)), lower)
    rep = sss_report(prob)
    return {"r": prob.r, "convolution": rep.convolution.to_json(),
            "difference": rep.difference.to_json(), "sigma_n": _spec_json(rep.sigma_n),
            "warnings": rep.warnings}


def _run_slc(d):
    t = SlcType.from_json(d["type"])
    row = slc_catalog(t)
    if "fixture" in d:
        fx = load_fixture(d["fixture"])
        r, yomdin = int(fx["r"]), spectrum_rows(fx["yomdin"])
        source = "fixture"
    else:
        r = int(d.get("r", smallest_r(t)))
        yomdin, source = yomdin_model(t, r), "model"
    sigma2 = catalog_sss(t, yomdin, r)
    return {"type": t.to_json(), "label": t.label, "r": r, "yomdin_source": source,
            "yomdin": yomdin.to_json(), "sigma1": row.sigma1.to_json(),
            "sigma2": sigma2.to_json(), "catalog_sigma2": row.sigma2.to_json(),
            "matches_catalog": sigma2 == row.sigma2}


def _run_jk(d):
    k = int(d["kappa"])
    s = jk_spectrum(k)
    out = jk_summary(k)
    out["spectrum"] = s.to_json()
    out["plain_matches_enumeration"] = forget_weights(s) == jk_plain_difference(k)
    return out


def _assembly_report(sc: DegenerationScenario):
    res = analyze(sc)
    outcomes = []
    for i, (sol, seq) in enumerate(zip(res.d2, res.sequences)):
        try:
            dtype = seq.degeneration_type()
        except PreconditionError:
            dtype = None
        o = {"d2_rank": sol.rank, "cancelled": sol.cancelled.to_json(),
             "van": {str(k): v.to_json() for k, v in sorted(sol.van.items()) if v},
             "sequence": seq.to_json(), "degeneration_type": dtype}
        if i < len(res.discrepancies):
            o["discrepancy"] = res.discrepancies[i].to_json()
        outcomes.append(o)
    out = {"n": sc.n, "E2": res.e2.to_json(), "outcomes": outcomes}
    if sc.total_space_nodes:
        before, after, diff = node_puncture_enrichment(sc)
        out["node_enrichment"] = {"before": before.to_json(), "after": after.to_json(),
                                  "added": diff.to_json()}
    if sc.n == 2 and sc.j_kappas():
        out["genus_bound_ok"] = genus_bound_check(sc)
    return out


def _run_assemble(d):
    return _assembly_report(DegenerationScenario.from_json(d))


def _run_kulikov(d):
    F, E, V = int(d["F"]), int(d["E"]), int(d["V"])
    body = dict(d)
    body.setdefault("n", 2)
    body["kulikov"] = {"F": F, "E": E, "V": V, "edges": d.get("edges")}
    if 3 * V != 2 * E:
        raise InputError(f"3V = 2E fails for (E, V) = ({E}, {V}): not a triangulation")
    body.setdefault("d2_constraints", [{"kind": "d2_rank", "value": V - 1}])
    out = _assembly_report(DegenerationScenario.from_json(body))
    h2 = []
    for o in out["outcomes"]:
        cells = o["sequence"]["H_X0"].get("2", [])
        vals = [c["mult"] for c in cells]
        h2.append(sum(vals) if all(isinstance(v, int) for v in vals) else None)
    out["h2_X0"] = h2[0] if len(h2) == 1 else h2
    return out


def _run_doublebox(d):
    from .doublebox import doublebox_report
    return doublebox_report(d.get("case", "dgt4"), int(d.get("seed", 1))).to_json()


RUNNERS = {"spectrum": _run_spectrum, "sss": _run_sss, "slc": _run_slc, "jk": _run_jk,
           "assemble": _run_assemble, "kulikov": _run_kulikov, "doublebox": _run_doublebox}


def run_scenario(d: dict) -> dict:
    if not isinstance(d, dict):
        raise InputError("a scenario must be a JSON object")
    kind = d.get("kind", "assemble")
    if kind not in RUNNERS:
        raise InputError(f"unknown scenario kind {kind!r}; expected one of {', '.join(KINDS)}")
    name = d.get("name", "?")
    try:
        body = RUNNERS[kind](d)
    except KeyError as e:
        raise InputError(f"scenario {name!r} is missing field {e}") from None
    except InputError as e:
        raise InputError(f"scenario {name!r}: {e}") from None
    except (TypeError, ValueError) as e:
        raise InputError(f"scenario {name!r} is malformed: {e}") from None
    return {"name": d.get("name", ""), "kind": kind, **body}


def run_document(doc, jobs: int = 1, seed: int | None = None) -> dict:
    """A single scenario, or {"scenarios": [...]}; returns {"reports": [...]}.

    Scenarios are independent, so a batch may run in `jobs` worker
    processes; reports keep the input order.  `seed` overrides the seed of
    seeded scenarios.
    """
    if isinstance(doc, dict) and "scenarios" in doc:
        items = doc["scenarios"]
        if not isinstance(items, list):
            raise InputError('"scenarios" must be a list')
    else:
        items = [doc]
    if seed is not None:
        items = [dict(x, seed=seed) if isinstance(x, dict) and x.get("kind") == "doublebox" else x
                 for x in items]
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return {"reports": list(pool.map(run_scenario, items))}
    return {"reports": [run_scenario(x) for x in items]}
