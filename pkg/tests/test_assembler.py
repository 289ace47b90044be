from fractions import Fraction as F
from types import SimpleNamespace

import pytest

from vancycles.assembler import (
    DegenerationScenario,
    analyze,
    assemble_e2,
    cs_discrepancy,
    euler_van,
    genus_bound_check,
    kulikov_e2,
    node_puncture_enrichment,
    scenario_sheaf,
    solve_d2,
    vanishing_sequence_solve,
)
from vancycles.doublebox import doublebox_scenario
from vancycles.errors import InconsistencyError, InputError, PreconditionError
from vancycles.fixtures import load_scenario
from vancycles.linear import Affine
from vancycles.spectra import HodgeDeligneDiagram, range_check

K3 = {"2": [[2, 0, 1], [1, 1, 20], [0, 2, 1]]}


def scenario(name):
    return DegenerationScenario.from_json(load_scenario(name))


def k3_with(points, nodes=0, **extra):
    d = {"n": 2, "fiber_hodge": K3, "strata": [{"name": "C", "points": points, "nodes": nodes}]}
    d.update(extra)
    return DegenerationScenario.from_json(d)


def test_pinch_point_e2():
    t = assemble_e2(scenario_sheaf(scenario("k3_four_pinch_points")))
    assert t.get(0, 2) == HodgeDeligneDiagram({(1, 1, F(1, 2)): 4})
    assert t.get(1, 1) == HodgeDeligneDiagram({(1, 2, 0): 1, (2, 1, 0): 1})
    assert not t.get(0, 1) and not t.get(2, 1)


def test_doublebox_e2():
    for rho_d in (0, 2):
        t = assemble_e2(scenario_sheaf(doublebox_scenario(rho_d)))
        mid = t.get(1, 4)
        assert mid.total() == 20 and mid.eigenvalue_classes() == [F(1, 2)]
        assert t.get(0, 5) == HodgeDeligneDiagram({(3, 3, 0): 12 + rho_d})


def test_empty_locus():
    t = assemble_e2(scenario_sheaf(DegenerationScenario("empty", 2)))
    assert all(not d for d in t.cells.values())


def test_kulikov_tetrahedron():
    r = kulikov_e2(4, 6, 4)
    assert r.d2.rank == 3 and r.h2_x0 == 23
    assert r.d2.van[1] == HodgeDeligneDiagram({(1, 1, 0): 3})
    assert r.d2.van[2] == HodgeDeligneDiagram({(1, 1, 0): 1, (2, 2, 0): 1})
    assert range_check(r.d2.van[2], 2, 2, "duBois")


def test_kulikov_octahedron():
    assert kulikov_e2(8, 18, 12).van_rank(1) == 7


def test_kulikov_rejects_non_triangulation():
    with pytest.raises(InputError):
        kulikov_e2(2, 3, 3)
    with pytest.raises(InputError):
        kulikov_e2(5, 6, 4)


def test_d2_forced_zero_without_target():
    t = assemble_e2(scenario_sheaf(scenario("k3_four_pinch_points")))
    sols = solve_d2(t)
    assert len(sols) == 1 and sols[0].rank == 0


def test_d2_infeasible():
    t = assemble_e2(scenario_sheaf(scenario("k3_four_pinch_points")))
    with pytest.raises(InconsistencyError):
        solve_d2(t, [{"kind": "d2_rank", "value": 5}])


def test_d2_unknown_constraint():
    t = assemble_e2(scenario_sheaf(scenario("k3_four_pinch_points")))
    with pytest.raises(InputError):
        solve_d2(t, [{"kind": "magic"}])


def test_iii_prime_cancels_one_class():
    out = analyze(scenario("k3_collision_iii_prime"))
    assert [s.rank for s in out.d2] == [1]
    assert out.d2[0].cancelled == HodgeDeligneDiagram({(2, 2, 0): 1})
    assert out.sequences[0].degeneration_type() == "III"


def test_zero_van_gives_isomorphism():
    fiber = {2: {(2, 0): 1, (1, 1): 20, (0, 2): 1}}
    res = vanishing_sequence_solve({}, 2, fiber, degrees=[2])
    assert res.diagram("X0", 2) == res.diagram("lim", 2)
    assert res.diagram("X0", 2).total() == 22


def test_zero_van_needs_degrees():
    with pytest.raises(InputError):
        vanishing_sequence_solve({}, 2, {})


def test_four_pinch_points_case_a():
    out = analyze(scenario("k3_four_pinch_points"))
    seq = out.sequences[0]
    x0 = seq.diagram("X0", 2)
    assert x0.get(1, 0) == 1 and x0.get(0, 1) == 1
    assert seq.diagram("X0", 3).total() == 0
    assert seq.degeneration_type() == "II"


def test_four_pinch_points_open_family():
    out = analyze(scenario("k3_four_pinch_points_open"))
    seq = out.sequences[0]
    assert seq.free
    assert len(seq.family) == 2


def test_doublebox_b_relation():
    from vancycles.doublebox import doublebox_report
    for case in ("dgt4", "deq4"):
        rep = doublebox_report(case, 1)
        assert rep.hodge["b"] == rep.ev.a - rep.rho_d - 1


def test_discrepancy_quartic():
    out = analyze(scenario("k3_quartic_eight_nodes"))
    d = out.discrepancies[0]
    assert d.rho_a + d.rho_b == 8 and d.rho_b == 0 and d.equality_case


def test_discrepancy_odd_and_smooth():
    assert cs_discrepancy(5, 12).rho_a == 0 and cs_discrepancy(5, 12).rho_b == 0
    assert cs_discrepancy(2, 0).rho_a == 0


def test_discrepancy_bound():
    fake = SimpleNamespace(derived={"rho_a": Affine({}, 3), "rho_b": Affine({}, 0)})
    with pytest.raises(InconsistencyError):
        cs_discrepancy(2, 2, 1, fake)


def test_node_enrichment():
    _b, _a, added = node_puncture_enrichment(scenario("k3_quartic_eight_nodes"))
    assert added.total() == 8
    _b, _a, added = node_puncture_enrichment(scenario("k3_four_pinch_points"))
    assert not added
    _b, after, _d = node_puncture_enrichment(doublebox_scenario(0))
    assert after.total() == 20


def test_genus_bound_check():
    j = lambda k: {"type": {"family": "J_k_inf", "kappa": k}}
    assert genus_bound_check(k3_with([j(4)]))
    assert not genus_bound_check(k3_with([j(5), j(1)]))
    no_pg = DegenerationScenario.from_json({"n": 2, "fiber_hodge": {"2": [[1, 1, 10]]},
                                            "strata": [{"points": [j(3), j(1)]}]})
    assert not genus_bound_check(no_pg)
    with pytest.raises(PreconditionError):
        genus_bound_check(doublebox_scenario(0))


def test_euler_conserved():
    for name in ("k3_collision_i", "k3_collision_iv", "k3_quartic_eight_nodes"):
        out = analyze(scenario(name))
        for sol in out.d2:
            assert euler_van(sol.van) == out.e2.euler()


def test_scenario_validation():
    with pytest.raises(InputError):
        DegenerationScenario.from_json({"n": 0})
    with pytest.raises(InputError):
        scenario_sheaf(k3_with([{"type": "D_inf"}] * 3))
