import copy
import json

import pytest

from vancycles.cli import main
from vancycles.errors import InputError
from vancycles.fixtures import golden_cases, load_fixture, load_scenario, scenario_names, spectrum_rows
from vancycles.golden import compare, run_case, run_golden
from vancycles.render import diagram_grid, render, spectrum_line
from vancycles.scenario import run_document, run_scenario


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, obj, name="sc.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(p)


def test_fixture_registry():
    names = scenario_names()
    assert "kulikov_tetrahedron" in names and "doublebox_deq4" in names
    for n in names:
        assert load_scenario(n)["provenance"]
    assert load_fixture("pinch_point_yomdin")["r"] == 4
    with pytest.raises(InputError):
        load_scenario("nope")


def test_spectrum_rows_formats():
    a = spectrum_rows([["1/2", 0, 1]])
    b = spectrum_rows([{"alpha": "1/2", "w": 0, "mult": 1}])
    assert a == b


def test_spectrum_kind():
    rep = run_scenario({"kind": "spectrum", "spectrum": [["3/2", 2, 1], ["1", 2, 2]]})
    assert rep["hodge_deligne"] == [{"p": 1, "q": 1, "eig": "0", "mult": 2},
                                    {"p": 1, "q": 1, "eig": "1/2", "mult": 1}]
    assert rep["tss_order"] == 2


def test_sss_inline_kind():
    rep = run_scenario({"kind": "sss", "branches": [{"mu": 1, "entries": [["1", 2, "0", 1]]}],
                        "yomdin": [], "r": 3})
    assert rep["difference"] == [{"alpha": "1", "w": 2, "mult": -1}, {"alpha": "4/3", "w": 2, "mult": -1},
                                 {"alpha": "5/3", "w": 2, "mult": -1}]


def test_kulikov_scenario():
    assert run_scenario(load_scenario("kulikov_tetrahedron"))["h2_X0"] == 23


def test_jk_scenario_matches_closed_form():
    rep = run_scenario(load_scenario("jk_kappa_4"))
    alphas = [t["alpha"] for t in rep["spectrum"]]
    assert alphas == ["11/12", "5/4", "4/3", "17/12", "3/2", "19/12", "5/3", "7/4", "2", "25/12"]


def test_unknown_kind():
    with pytest.raises(InputError):
        run_scenario({"kind": "tea"})


def test_empty_batch():
    assert run_document({"scenarios": []}) == {"reports": []}


def test_render():
    grid = diagram_grid([{"p": 1, "q": 1, "eig": "0", "mult": 3}, {"p": 2, "q": 0, "eig": "1/3", "mult": 1}])
    assert grid[0].startswith("1 |") and "3" in grid[0]
    assert any("1/3" in line for line in grid)
    assert spectrum_line([{"alpha": "1/2", "w": 0, "mult": -1}, {"alpha": "1", "w": 2, "mult": 2}]) == \
        "-[(1/2,0)] + 2[(1,2)]"
    text = render({"a": True, "b": [{"alpha": "3/2", "w": 2, "mult": 1}]})
    assert "a: yes" in text and "b: [(3/2,2)]" in text


def test_compare():
    assert compare({"a": 1}, {"a": 1, "b": 2}) == []
    assert compare({"a": [1, 2]}, {"a": [1]})
    assert compare({"a": {"b": 1}}, {"a": {"b": 2}}) == ["$.a.b: expected 1, got 2"]
    assert compare({"a": 1}, {})[0] == "$.a: missing"


def test_golden_all_pass():
    results = run_golden()
    assert results and all(r.ok for r in results), [r.diffs for r in results if not r.ok]


def test_golden_perturbed_fixture_is_named():
    case = copy.deepcopy(next(c for c in golden_cases() if c["name"] == "table_D_inf"))
    case["expect"]["sigma2"][0]["w"] = 1
    res = run_case(case)
    assert not res.ok and res.name == "table_D_inf"
    assert res.diffs == ["$.sigma2[0].w: expected 1, got 2"]


def test_cli_golden(capsys):
    code, out, _ = run_cli(capsys, "--suite", "golden")
    assert code == 0 and json.loads(out)["failed"] == []


def test_cli_empty_scenario_list(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "run", "--scenario", write(tmp_path, {"scenarios": []}))
    assert code == 0 and json.loads(out) == {"reports": []}


def test_cli_exit_codes(capsys, tmp_path):
    assert run_cli(capsys, "--scenario", str(tmp_path / "missing.json"))[0] == 2
    assert run_cli(capsys, "--scenario", write(tmp_path, "{not json"))[0] == 2
    assert run_cli(capsys, "--scenario", write(tmp_path, {"kind": "jk", "kappa": 0}))[0] == 2
    bad = {"kind": "sss", "branches": [{"mu": 1, "entries": [["1", 2, "0", 1]]}], "yomdin": [],
           "r": 2, "sigma_lower": []}
    code, _, err = run_cli(capsys, "sss", "--scenario", write(tmp_path, bad))
    assert code == 1 and "inconsistency" in err
    assert run_cli(capsys)[0] == 2


def test_cli_byte_stable(capsys, tmp_path):
    doc = {"scenarios": [load_scenario("k3_collision_iv"), load_scenario("pinch_point_slc")]}
    path = write(tmp_path, doc)
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["run", "--scenario", path, "--out", str(out1)]) == 0
    assert main(["run", "--scenario", path, "--out", str(out2), "--jobs", "2"]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_cli_doublebox_seed(capsys):
    code, out, _ = run_cli(capsys, "doublebox", "--case", "dgt4", "--seed", "2")
    rep = json.loads(out)
    assert code == 0 and rep["kinematics"]["seed"] == 2 and rep["ev"]["a"] == 3


def test_cli_ascii(capsys):
    code, out, _ = run_cli(capsys, "jk", "--kappa", "3", "--format", "ascii")
    assert code == 0 and "tss_order: 18" in out


def test_cli_slc_table(capsys):
    code, out, _ = run_cli(capsys, "slc-table")
    rows = json.loads(out)["rows"]
    assert code == 0 and len(rows) == 12 and all(r["matches_catalog"] for r in rows)


def test_cli_seed_override(capsys, tmp_path):
    path = write(tmp_path, {"scenarios": [load_scenario("doublebox_deq4")]})
    code, out, _ = run_cli(capsys, "--scenario", path, "--seed", "3")
    assert code == 0 and json.loads(out)["reports"][0]["kinematics"]["seed"] == 3
