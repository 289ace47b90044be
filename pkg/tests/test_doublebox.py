import pytest

from vancycles.assembler import analyze
from vancycles.doublebox import (
    build_symanzik,
    doublebox_report,
    doublebox_scenario,
    evaluation_map_rank,
    sample_kinematics,
    verify_singular_locus,
)
from vancycles.errors import InputError
from vancycles.polys import SparsePoly


@pytest.fixture(scope="module")
def reports():
    return {case: doublebox_report(case, 1) for case in ("dgt4", "deq4")}


def test_kinematics_dgt4():
    k = sample_kinematics(1, "dgt4")
    assert k.dimension == 5 and k.d4_alphas is None
    assert all(sum(p[i] for p in k.momenta) == 0 for i in range(5))


def test_kinematics_deq4():
    k = sample_kinematics(1, "deq4")
    assert k.dimension == 4
    k.check()


def test_kinematics_reproducible():
    assert sample_kinematics(7, "deq4").to_json() == sample_kinematics(7, "deq4").to_json()


def test_kinematics_bad_case():
    with pytest.raises(InputError):
        sample_kinematics(1, "d3")


def test_symanzik_shape():
    sym = build_symanzik(sample_kinematics(1, "dgt4"))
    assert len(sym.U.terms) == 15 and sym.U.is_homogeneous(2)
    assert sym.F.is_homogeneous(3) and isinstance(sym.F, SparsePoly)
    assert sym.F.degree() == 3


def test_singular_locus_dgt4():
    k = sample_kinematics(1, "dgt4")
    rep = verify_singular_locus(k)
    assert rep.ok and rep.nodes == []
    assert rep.pinch_count == {"C": 6, "Cp": 6}


def test_singular_locus_deq4():
    k = sample_kinematics(1, "deq4")
    rep = verify_singular_locus(k)
    assert rep.ok and len(rep.nodes) == 2
    assert rep.nodes_singular and rep.U_vanishes_at_nodes and rep.nodes_ordinary
    assert rep.alt_weights_singular is False


def test_evaluation_map_dims():
    k = sample_kinematics(1, "dgt4")
    ev = evaluation_map_rank(k)
    assert (ev.dim_S2, ev.dim_0123sq, ev.dim_3456sq, ev.dim_JF) == (28, 10, 10, 7)
    assert ev.dim_ker_ev == 9 and ev.a == 3
    assert all(v is True or v == 1 for v in ev.checks.values())


@pytest.mark.parametrize("case,a", [("dgt4", 3), ("deq4", 4)])
def test_ranks_stable_across_seeds(case, a):
    evs = [doublebox_report(case, s).ev for s in (2, 3)]
    assert {e.a for e in evs} == {a}
    assert len({e.dim_ker_ev for e in evs}) == 1


def test_reports(reports):
    g, e = reports["dgt4"], reports["deq4"]
    assert g.ok and e.ok
    assert (g.ev.a, g.hodge["H5_X0"]["h22"], g.hodge["H5_X0"]["h32"], g.hodge["b"]) == (3, 9, 2, 2)
    assert (e.ev.a, e.hodge["H5_X0"]["h22"], e.hodge["H5_X0"]["h32"], e.hodge["b"]) == (4, 10, 1, 1)
    assert g.rank_V == e.rank_V == 20
    assert g.f_level == e.f_level == 1


def test_no_discrepancy_in_odd_dimension():
    out = analyze(doublebox_scenario(2))
    assert all(d.rho_a == 0 and d.rho_b == 0 for d in out.discrepancies)


def test_report_json_stable(reports):
    import json
    again = doublebox_report("deq4", 1)
    assert json.dumps(again.to_json(), sort_keys=True) == json.dumps(reports["deq4"].to_json(), sort_keys=True)
