import pytest

from vancycles.errors import InconsistencyError, InputError
from vancycles.linear import Affine, System


def test_affine_arithmetic():
    a = Affine.var("x") * 2 + 3
    assert str(a) == "3 + 2*x"
    assert a.substitute({"x": 1}).value() == 5
    assert Affine.parse({"const": "1/2", "y": 2}) == Affine({"y": 2}, "1/2")


def test_solve_determined():
    s = System()
    for v in "xyz":
        s.add_var(v)
    s.eq(Affine.var("x") + Affine.var("y"), 3)
    s.eq(Affine.var("y"), Affine.var("z") + 1)
    s.eq(Affine.var("z"), 2)
    sol = s.solve()
    assert sol.expr("x").value() == 0 and sol.expr("y").value() == 3


def test_solve_bounded_family():
    s = System()
    s.add_var("x")
    s.add_var("y")
    s.eq(Affine.var("x") + Affine.var("y"), 2)
    sol = s.solve()
    assert len(sol.family()) == 3


def test_contradiction():
    s = System()
    s.add_var("x")
    s.eq(Affine.var("x"), -1)
    with pytest.raises(InconsistencyError):
        s.solve()


def test_unknown_variable():
    s = System()
    with pytest.raises(InputError):
        s.eq(Affine.var("q"), 1)


def test_inequality():
    s = System()
    s.add_var("x", hi=5)
    s.le(Affine.var("x") * 2, 3)
    sol = s.solve()
    assert sol.bounds["x"][1] == 1
