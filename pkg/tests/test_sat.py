import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from siphons import (Budget, CnfFormula, SatSolver, SolveStatus, encode_siphon,
                     enumerate_minimal_sat, evaluate, gen_chain, minimize_model)

from conftest import enzyme_net, example2_net, random_net_corpus


def brute_force_status(formula):
    for bits in product((False, True), repeat=formula.num_vars):
        if evaluate(formula, bits):
            return SolveStatus.SAT
    return SolveStatus.UNSAT


def random_formula(rng, num_vars, num_clauses):
    f = CnfFormula(num_vars)
    for _ in range(num_clauses):
        width = rng.randint(1, min(3, num_vars))
        vs = rng.sample(range(1, num_vars + 1), width)
        f.add_clause([v if rng.random() < 0.5 else -v for v in vs])
    return f


def test_trivial_sat_and_unsat():
    f = CnfFormula(1)
    f.add_clause([1])
    s = SatSolver(f)
    assert s.solve() == SolveStatus.SAT
    assert s.model == (True,)

    g = CnfFormula(1)
    g.add_clause([1])
    g.add_clause([-1])
    assert SatSolver(g).solve() == SolveStatus.UNSAT


def test_unit_propagation_chain():
    f = CnfFormula(4)
    f.add_clause([1])
    f.add_clause([-1, 2])
    f.add_clause([-2, 3])
    f.add_clause([-3, 4])
    s = SatSolver(f)
    assert s.solve() == SolveStatus.SAT
    assert s.model == (True, True, True, True)
    assert s.decisions == 0  # pure propagation


def test_false_first_polarity(enzyme):
    # default branching tries 0 before 1, biasing toward small models
    formula, varmap = encode_siphon(enzyme)
    s = SatSolver(formula)
    assert s.solve() == SolveStatus.SAT
    assert {enzyme.places[p] for p in varmap.true_places(s.model)} == {"A", "AE"}


def test_pigeonhole_unsat():
    # 3 pigeons, 2 holes: var (p,h) = 2*p + h + 1
    f = CnfFormula(6)
    for p in range(3):
        f.add_clause([2 * p + 1, 2 * p + 2])
    for h in range(2):
        for p1 in range(3):
            for p2 in range(p1 + 1, 3):
                f.add_clause([-(2 * p1 + h + 1), -(2 * p2 + h + 1)])
    assert SatSolver(f).solve() == SolveStatus.UNSAT


def test_assumptions():
    f = CnfFormula(2)
    f.add_clause([1, 2])
    s = SatSolver(f)
    assert s.solve(assumptions=[-1]) == SolveStatus.SAT
    assert s.model[1] is True
    assert s.solve(assumptions=[-1, -2]) == SolveStatus.UNSAT
    # solver stays usable after an assumption mismatch
    assert s.solve() == SolveStatus.SAT


def test_incremental_clause_addition():
    f = CnfFormula(2)
    f.add_clause([1, 2])
    s = SatSolver(f)
    assert s.solve() == SolveStatus.SAT
    s.add_clause([-1])
    s.add_clause([-2])
    assert s.solve() == SolveStatus.UNSAT


def test_conflict_budget_reports_unknown():
    rng = random.Random(5)
    # hard random 3-SAT near the phase transition
    f = CnfFormula(60)
    for _ in range(256):
        vs = rng.sample(range(1, 61), 3)
        f.add_clause([v if rng.random() < 0.5 else -v for v in vs])
    status = SatSolver(f).solve(budget=Budget(max_conflicts=1))
    assert status == SolveStatus.UNKNOWN


def test_solver_matches_brute_force():
    rng = random.Random(0)
    for _ in range(300):
        f = random_formula(rng, rng.randint(1, 8), rng.randint(1, 24))
        got = SatSolver(f).solve()
        want = brute_force_status(f)
        assert got == want
        if got == SolveStatus.SAT:
            s = SatSolver(f)
            s.solve()
            assert evaluate(f, s.model)


def test_activity_heuristic_agrees():
    rng = random.Random(1)
    for _ in range(100):
        f = random_formula(rng, rng.randint(1, 8), rng.randint(1, 20))
        assert (SatSolver(f, heuristic="activity").solve()
                == SatSolver(f, heuristic="fixed").solve())


def test_minimize_model(enzyme):
    formula, varmap = encode_siphon(enzyme)
    # a non-minimal model shrinks to a minimal one inside it
    full = (True, True, True, True)
    small = minimize_model(formula, full)
    kept = {enzyme.places[p] for p in varmap.true_places(small)}
    assert kept in ({"A", "AE"}, {"E", "AE"})
    # minimal models are fixed points
    assert minimize_model(formula, small) == small
    with pytest.raises(ValueError):
        minimize_model(formula, (False, False, False, False))


def test_minimize_is_subset():
    rng = random.Random(2)
    for _ in range(60):
        f = random_formula(rng, 6, rng.randint(1, 12))
        s = SatSolver(f)
        if s.solve() != SolveStatus.SAT:
            continue
        small = minimize_model(f, s.model)
        assert evaluate(f, small)
        assert {i for i, b in enumerate(small) if b} <= {i for i, b in enumerate(s.model) if b}


def test_enumerate_enzyme(enzyme):
    res = enumerate_minimal_sat(enzyme)
    names = {enzyme.set_names(s) for s in res.sets}
    assert names == {("A", "AE"), ("AE", "E")}
    assert res.complete
    # one solve per found set, one for the final UNSAT, plus shrink steps
    assert res.stats.solve_calls == len(res.sets) + 1 + res.stats.minimize_steps


def test_enumerate_example2():
    net = example2_net()
    res = enumerate_minimal_sat(net)
    assert [net.set_names(s) for s in res.sets] == [("A", "B")]


def test_enumerate_finds_antichain():
    for seed in range(40):
        net = random_net_corpus(1, base_seed=seed)[0]
        sets = enumerate_minimal_sat(net).sets
        for i, a in enumerate(sets):
            for b in sets[i + 1:]:
                assert not (a <= b or b <= a)


def test_enumerate_timeout_is_inexhaustive_not_wrong():
    net = gen_chain(9)
    res = enumerate_minimal_sat(net, budget=Budget(max_conflicts=40))
    assert res.stats.timed_out
    assert not res.complete
    assert len(res.sets) < 512
    for s in res.sets:
        assert net.is_siphon(s)


def test_enumerate_zero_budget_returns_nothing():
    net = gen_chain(3)
    res = enumerate_minimal_sat(net, budget=Budget(max_ms=0))
    assert res.stats.timed_out
    assert res.sets == []


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10_000))
def test_enumerate_equals_brute_force_minimal_models(seed):
    rng = random.Random(seed)
    net = random_net_corpus(1, base_seed=seed, max_places=6)[0]
    res = enumerate_minimal_sat(net)
    # collect minimal satisfying assignments of the encoding by brute force
    formula, varmap = encode_siphon(net)
    models = [frozenset(varmap.true_places(bits))
              for bits in product((False, True), repeat=formula.num_vars)
              if evaluate(formula, bits)]
    minimal = {m for m in models if not any(o < m for o in models)}
    assert set(res.sets) == minimal
