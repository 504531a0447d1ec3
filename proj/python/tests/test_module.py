import json
from fractions import Fraction

import pytest

import pizza_sharing as ps
from conftest import UNIT_SQUARE, square_instance


def test_instance_round_trip(two_colors):
    inst = ps.Instance.from_json(two_colors)
    assert inst.colors == 2
    assert inst.totals == ["1", "1/2"]
    again = ps.Instance.from_json(inst.to_json())
    assert again.totals == inst.totals


def test_bu_eval_at_horizontal_bisector(two_colors):
    inst = ps.Instance.from_json(two_colors)
    coords = ["1/2", "-1/2", "1"]
    assert [Fraction(v) for v in ps.bu_eval(inst, coords)] == [Fraction(1, 2), Fraction(1, 4)]
    assert ps.residual(inst, coords) == "0"
    for a, b in ps.region_mass(inst, coords):
        assert Fraction(a) == Fraction(b)


def test_solve_and_verify(two_colors):
    inst = ps.Instance.from_json(two_colors)
    rep = ps.solve(inst, eps=1e-3, turns=1, seed=3, seeds=8)
    assert rep["verified_exact"]
    assert rep["turns"] <= 1
    assert rep["y_monotone"]
    assert Fraction(rep["residual"]) <= Fraction(1, 1000)
    check = ps.verify_path(inst, rep["path_json"], "1/1000", 1)
    assert check["pass"]
    assert Fraction(check["max_gap"]) <= Fraction(1, 1000)


def test_solve_is_deterministic(two_colors):
    inst = ps.Instance.from_json(two_colors)
    a = ps.solve(inst, turns=1, seed=5, seeds=4)
    b = ps.solve(inst, turns=1, seed=5, seeds=4)
    assert a["coords"] == b["coords"]


def test_reduce_solve_map_back(ch_two_agents):
    inst_json, meta_json = ps.reduce(ch_two_agents, "overlapping")
    inst = ps.Instance.from_json(inst_json)
    assert inst.colors == 2
    rep = ps.solve(inst, eps=1e-4, turns=1, seed=1, seeds=16)
    assert rep["verified_exact"]
    sol = ps.map_back(meta_json, rep["path_json"])
    cuts = json.loads(sol)["cuts"]
    assert len(cuts) <= 2
    assert ps.verify_ch(ch_two_agents, sol, "1/1000")["pass"]


def test_etr_export_is_satisfied_at_an_exact_solution():
    inst = ps.Instance.from_json(square_instance([UNIT_SQUARE]))
    f = ps.export_etr(inst, 1)
    assert [v for v in f["variables"] if v.startswith("P")] == ["P1", "P2", "P3"]
    ok = ps.etr_evaluate(f["text"], ["1/2", "3/2", "0"])
    assert ok["satisfied"]
    assert ok["conjuncts"] == ok["conjuncts_satisfied"]
    assert not ps.etr_evaluate(f["text"], ["1/2", "1", "1/2"])["satisfied"]
    assert not ps.etr_evaluate(f["text"], ["1/2", "1/2", "0"])["satisfied"]


def test_render_svg(two_colors):
    inst = ps.Instance.from_json(two_colors)
    assert "<svg" in ps.render_svg(inst, "")


def test_errors():
    with pytest.raises(ValueError):
        ps.Instance.from_json("{not json")
    with pytest.raises(ValueError):
        ps.Instance.from_json(json.dumps({"masses": [{"color": 0, "polygons": [
            {"weight": "1", "outer": [["0", "0"], ["1", "0"]], "holes": []}]}]}))
    assert issubclass(ps.SolverBudgetError, RuntimeError)
