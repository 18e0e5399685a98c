import os

import pytest

import stratifold_wp as sw

FIXTURES = os.environ["STRATIFOLD_FIXTURES"]


def load(name):
    return sw.load_graph(os.path.join(FIXTURES, name))


def test_z3_orders_and_words():
    s = sw.Solver(load("FX-Z3"))
    assert s.orders()["exact"]
    assert s.orders()["sigma"] == {"b1": 3}
    assert s.solve("b.b1^3")["answer"] == "trivial"
    assert s.solve("b.b1")["answer"] == "nontrivial"
    assert s.generators() == ["b.b1", "c.e1"]


def test_relators_are_trivial():
    s = sw.Solver(load("FX-BS"))
    for r in s.relators():
        assert s.solve(r)["answer"] == "trivial"


def test_budget_keyword():
    s = sw.Solver(load("FX-ORB"), insertions=1, max_length=8)
    assert not s.orders()["exact"]
    assert s.orders()["undetermined"] == ["b1"]
    assert s.solve("b.b1")["answer"] == "undetermined"


def test_decisions():
    s = sw.Solver(load("FX-S2W"))
    assert s.is_simply_connected()
    assert s.wedge_count() == 1
    assert sw.Solver(load("FX-TOR")).is_abelian()
    assert sw.Solver(load("FX-Z3")).wedge_count() is None


def test_parse_errors_carry_kind():
    with pytest.raises(sw.StratifoldError) as info:
        sw.parse_graph("white w1 genus 0\nblack b1\nedge e1 w1 b1 2\n")
    assert info.value.kind == "BlackDegreeViolation"


def test_word_problem_shortcut():
    g = sw.parse_graph("white w1 genus -1\n")
    assert g.whites == ["w1"]
    assert sw.word_problem(g, "y.w1.1^2")["answer"] == "trivial"
