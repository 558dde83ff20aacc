import pytest
from hypothesis import given, strategies as st

from siphons import NotEnabledError, PetriNet, format_place_set, gen_chain, isomorphic

from conftest import enzyme_net, example2_net, potato_net, random_net_corpus


def place_names(net, trans_set):
    return {net.transitions[t] for t in trans_set}


def test_construction_and_indexing(enzyme):
    assert enzyme.places == ("E", "A", "AE", "B")
    assert enzyme.transitions == ("t1", "t_1", "t2")
    assert enzyme.place_index("AE") == 2
    assert enzyme.transition_index("t2") == 2
    with pytest.raises(ValueError):
        enzyme.place_index("nope")
    with pytest.raises(ValueError):
        enzyme.transition_index("nope")


def test_first_appearance_order():
    net = example2_net()
    assert net.places == ("A", "B", "C", "D")
    assert net.transitions == ("r1", "r2", "r3", "r4", "r5")


def test_weights_cleaned():
    net = PetriNet.from_transitions([("t", {"A": 2, "B": 0}, {"C": 1})])
    assert net.places == ("A", "B", "C")  # weight-0 place still declared
    a, t = net.place_index("A"), net.transition_index("t")
    assert net.weight_pt[(a, t)] == 2
    assert (net.place_index("B"), t) not in net.weight_pt
    with pytest.raises(ValueError):
        PetriNet.from_transitions([("t", {"A": -1}, {})])


def test_duplicate_names_rejected():
    with pytest.raises(ValueError):
        PetriNet(("A", "A"), ("t",), {}, {})
    with pytest.raises(ValueError):
        PetriNet.from_transitions([("t", ["A"], []), ("t", ["A"], [])])


def test_adjacency_enzyme(enzyme):
    ae = enzyme.place_index("AE")
    assert place_names(enzyme, enzyme.pre_transitions(ae)) == {"t1"}
    assert place_names(enzyme, enzyme.post_transitions(ae)) == {"t_1", "t2"}


def test_adjacency_example2(example2):
    c = example2.place_index("C")
    assert place_names(example2, example2.pre_transitions(c)) == {"r3", "r5"}


def test_adjacency_potato(potato):
    s3 = potato.place_index("S3")
    assert place_names(potato, potato.post_transitions(s3)) == {"t5"}


def test_isolated_place_has_no_neighbours():
    net = PetriNet(("A", "B"), ("t",), {(0, 0): 1}, {(0, 0): 1})
    b = net.place_index("B")
    assert net.pre_transitions(b) == frozenset()
    assert net.post_transitions(b) == frozenset()


def test_transition_pre_post_places(enzyme):
    t1 = enzyme.transition_index("t1")
    assert {enzyme.places[p] for p in enzyme.pre_places(t1)} == {"A", "E"}
    assert {enzyme.places[p] for p in enzyme.post_places(t1)} == {"AE"}


def test_is_siphon_goldens(enzyme, example2):
    assert enzyme.is_siphon(enzyme.place_set("A", "AE"))
    assert example2.is_siphon(example2.place_set("A", "B", "C", "D"))
    assert not example2.is_siphon(example2.place_set("C", "D"))
    assert not enzyme.is_siphon(frozenset())


def test_is_trap_goldens(enzyme, example2):
    assert example2.is_trap(example2.place_set("C", "D"))
    assert not enzyme.is_trap(enzyme.place_set("A"))
    assert not enzyme.is_trap(frozenset())


def test_potato_branch_variants():
    growth = PetriNet.from_transitions(
        [("t1", ["P1"], ["P1", "S1"]), ("t2", ["S1", "P2"], ["P2"]),
         ("t3", ["S1"], ["S2"]), ("t4", ["S2"], ["S3"])])
    assert growth.is_trap(growth.place_set("S2", "S3"))
    consume = PetriNet.from_transitions(
        [("t1", ["P1"], ["P1", "S1"]), ("t2", ["S1", "P2"], ["P2"]),
         ("t5", ["S3"], ["S4"]), ("t6", ["S4"], ["S1"])])
    assert consume.is_siphon(consume.place_set("S3", "S4"))
    # with both branches active neither special set survives
    full = potato_net()
    assert not full.is_trap(full.place_set("S2", "S3"))
    assert not full.is_siphon(full.place_set("S3", "S4"))


def test_is_proper_siphon(enzyme, example2):
    assert example2.is_proper_siphon(example2.place_set("A", "B"))
    assert not enzyme.is_proper_siphon(enzyme.place_set("E", "AE"))
    assert not example2.is_proper_siphon(example2.place_set("A", "B", "C", "D"))
    # non-siphons are simply not proper siphons
    assert not example2.is_proper_siphon(example2.place_set("C", "D"))


def test_dual_swaps_roles(enzyme, potato):
    d = enzyme.dual()
    ae = d.place_index("AE")
    assert place_names(d, d.pre_transitions(ae)) == {"t_1", "t2"}
    s = potato.place_set("S3", "S4")
    assert potato.is_siphon(s) == potato.dual().is_trap(s)


def test_dual_involution():
    for net in [enzyme_net(), example2_net(), potato_net(), gen_chain(3)]:
        assert net.dual().dual() == net


def test_fire_enzyme(enzyme):
    m = enzyme.marking({"A": 3, "E": 2})
    t1 = enzyme.transition_index("t1")
    assert enzyme.marking_dict(enzyme.fire(m, t1)) == {"A": 2, "E": 1, "AE": 1}


def test_fire_chain():
    net = gen_chain(2)
    m = net.marking({"A1": 1, "B1": 1})
    m2 = net.fire(m, net.transition_index("T1"))
    assert net.marking_dict(m2) == {"A2": 1, "B2": 1}


def test_fire_no_arcs_is_identity():
    net = PetriNet(("A",), ("t",), {}, {})
    m = net.marking({"A": 2})
    assert net.fire(m, 0) == m


def test_fire_requires_enabled(enzyme):
    m = enzyme.marking({})
    with pytest.raises(NotEnabledError):
        enzyme.fire(m, enzyme.transition_index("t1"))


def test_enabled_transitions(enzyme, potato):
    m = enzyme.marking({"A": 3, "E": 2})
    assert place_names(enzyme, enzyme.enabled_transitions(m)) == {"t1"}
    assert enzyme.enabled_transitions(enzyme.marking({})) == frozenset()
    m = potato.marking({"S3": 1})
    assert place_names(potato, potato.enabled_transitions(m)) == {"t5"}


def test_weighted_enabling():
    net = PetriNet.from_transitions([("t", {"A": 2}, {"B": 1})])
    assert not net.is_enabled(net.marking({"A": 1}), 0)
    m2 = net.fire(net.marking({"A": 2}), 0)
    assert net.marking_dict(m2) == {"B": 1}


def test_marking_validation(enzyme):
    with pytest.raises(ValueError):
        enzyme.marking({"A": -1})
    with pytest.raises(ValueError):
        enzyme.marking({"nope": 1})
    with pytest.raises(ValueError):
        enzyme.fire((0, 0), 0)  # wrong length


def test_format_place_set(enzyme):
    assert format_place_set(enzyme, enzyme.place_set("AE", "A")) == "{A, AE}"


def test_isomorphic_ignores_order(enzyme):
    reordered = PetriNet.from_transitions(
        [("t2", ["AE"], ["B", "E"]), ("t1", ["A", "E"], ["AE"]),
         ("t_1", ["AE"], ["A", "E"])])
    assert reordered != enzyme  # strict equality is order-sensitive
    assert isomorphic(reordered, enzyme)
    other = PetriNet.from_transitions([("t1", ["A", "E"], ["AE"])])
    assert not isomorphic(other, enzyme)


@given(st.data())
def test_siphons_and_traps_closed_under_union(data):
    seed = data.draw(st.integers(0, 500))
    net = random_net_corpus(1, base_seed=seed, max_places=8)[0]
    n = len(net.places)
    a = frozenset(data.draw(st.sets(st.integers(0, n - 1), min_size=1)))
    b = frozenset(data.draw(st.sets(st.integers(0, n - 1), min_size=1)))
    if net.is_siphon(a) and net.is_siphon(b):
        assert net.is_siphon(a | b)
    if net.is_trap(a) and net.is_trap(b):
        assert net.is_trap(a | b)


@given(st.integers(0, 300))
def test_trap_equals_siphon_of_dual(seed):
    net = random_net_corpus(1, base_seed=seed, max_places=7)[0]
    dual = net.dual()
    for mask in range(1, 1 << len(net.places)):
        s = frozenset(i for i in range(len(net.places)) if mask >> i & 1)
        assert net.is_trap(s) == dual.is_siphon(s)
        assert net.is_siphon(s) == dual.is_trap(s)
