import pytest

from taucollapse.collapse import (DoublingChain, Leaf, Node, Roles, WH_PLUS_LABEL,
                                  chain_apply, collapse_full, collapse_pair,
                                  collapsible_nodes, compute_ru, enumerate_shapes,
                                  hedden_condition, leaf_count, obstruct_bing_double,
                                  obstruct_hopf, shape_string, wh_plus_bing_labeled)
from taucollapse.dsl import parse_tree, print_expr
from taucollapse.errors import BothTreesTrivial, CollapseError, UnknownKnot
from taucollapse.expr import UNKNOT, Base, Doubling, Reverse, Sum, normalize, whitehead
from taucollapse.knots import KnotRecord, database_of
from taucollapse.tau_engine import tau

from conftest import all_collapse_sequences

O = UNKNOT
CHAIN2 = DoublingChain.of((O, -2), (O, -1))


def test_enumerate_shapes_catalan():
    assert [len(enumerate_shapes(n)) for n in range(1, 7)] == [1, 1, 2, 5, 14, 42]


def test_wh_plus_labels():
    assert wh_plus_bing_labeled(parse_tree("*")) == Leaf(WH_PLUS_LABEL)
    assert wh_plus_bing_labeled(parse_tree("(*,*)")) == Node(Leaf(WH_PLUS_LABEL), Leaf(WH_PLUS_LABEL))
    t = wh_plus_bing_labeled(parse_tree("((*,*),*)"))
    assert leaf_count(t) == 3 and shape_string(t) == "((*,*),*)"


def test_compute_ru_l1():
    r, u = compute_ru(WH_PLUS_LABEL)
    assert r == Sum(O, Reverse(O)) and u == -2
    assert normalize(r) == O


def test_compute_ru_l2():
    r, u = compute_ru(CHAIN2)
    assert normalize(r) == Doubling(O, -2, O, -2) and u == 0
    assert tau(r) == 1


def test_compute_ru_l3_order_reversal():
    a, b, c = Base("A"), Base("B"), Base("C")
    r, u = compute_ru(DoublingChain.of((a, 1), (b, 2), (c, 3)))
    assert r == Doubling(a, 1, Doubling(b, 2, Sum(c, Reverse(c)), 6), 0)
    assert u == 0


def test_compute_ru_empty():
    with pytest.raises(CollapseError):
        compute_ru(DoublingChain())


def test_collapse_pair_examples():
    t = wh_plus_bing_labeled(parse_tree("(*,*)"))
    new, rec = collapse_pair(t, "@", Roles.LEFT_IS_P)
    assert new == Leaf(CHAIN2)
    assert rec.case == "l=1" and rec.u == -2 and rec.p_leaf == "@L" and rec.q_leaf == "@R"
    swapped, rec2 = collapse_pair(t, "@", Roles.LEFT_IS_Q)
    assert swapped == new and rec2.q_leaf == "@L"

    t = Node(Leaf(CHAIN2), Leaf(WH_PLUS_LABEL))
    new, _ = collapse_pair(t, "@", Roles.LEFT_IS_P)
    assert new == Leaf(DoublingChain.of((O, -2), (O, -2), (O, -1)))


def test_collapse_pair_errors():
    t = wh_plus_bing_labeled(parse_tree("((*,*),*)"))
    with pytest.raises(CollapseError):
        collapse_pair(t, "@", Roles.LEFT_IS_P)
    with pytest.raises(CollapseError):
        collapse_pair(t, "@R", Roles.LEFT_IS_P)
    with pytest.raises(CollapseError):
        collapse_pair(t, "@LLL", Roles.LEFT_IS_P)


def test_collapse_full_examples(db):
    chain, recs = collapse_full(Leaf(WH_PLUS_LABEL))
    assert chain == WH_PLUS_LABEL and recs == []
    chain, recs = collapse_full(wh_plus_bing_labeled(parse_tree("(*,*)")))
    assert chain == CHAIN2 and len(recs) == 1

    # hand computation: two l=1 collapses give [(O,-2),(O,-1)] on each side,
    # then the l=2 collapse adds R = D_{O,-2}(O # O^r, 2*(-1)) with u = 0
    chain, recs = collapse_full(wh_plus_bing_labeled(parse_tree("((*,*),(*,*))")), db=db)
    assert [r.node for r in recs] == ["@L", "@R", "@"]
    assert [r.case for r in recs] == ["l=1", "l=1", "l>1"]
    assert chain == DoublingChain.of((Doubling(O, -2, O, -2), 0), (O, -2), (O, -1))
    assert hedden_condition(chain, db).holds


def test_deepest_leftmost_order():
    _, recs = collapse_full(wh_plus_bing_labeled(parse_tree("((*,(*,*)),(*,*))")))
    assert [r.node for r in recs] == ["@LR", "@L", "@R", "@"]


def test_custom_order_and_roles():
    t = wh_plus_bing_labeled(parse_tree("((*,*),(*,*))"))
    _, recs = collapse_full(t, ["@R", ("@L", Roles.LEFT_IS_Q), "@"])
    assert [r.node for r in recs] == ["@R", "@L", "@"]
    assert recs[1].roles is Roles.LEFT_IS_Q
    with pytest.raises(CollapseError):
        collapse_full(t, ["@"] * 3)
    with pytest.raises(CollapseError):
        collapse_full(t, ["@L"])


def test_hedden_condition_examples(db):
    assert hedden_condition(WH_PLUS_LABEL, db).holds
    assert hedden_condition(CHAIN2, db).holds
    report = hedden_condition(DoublingChain.of((O, 0)), db)
    assert not report.holds and report.ops[0].tau == 0


def test_chain_apply(db):
    k = Base("K")
    assert chain_apply(WH_PLUS_LABEL, k) == whitehead("+", k, 0)
    assert normalize(chain_apply(WH_PLUS_LABEL, O)) == O
    # inner D[O,-2](K,0): -2 < 0 and 0 < 2 -> 1; outer D[O,-1](.,0): -1 < 0 and 0 < 2 -> 1
    kdb = database_of(KnotRecord("K", tau=1))
    assert tau(chain_apply(CHAIN2, k), kdb) == 1


def test_obstruct_bing_examples(db):
    c = obstruct_bing_double(parse_tree("*"), "RHT", db)
    assert normalize(c.final_knot) == normalize(whitehead("+", Base("RHT"), 0))
    assert c.tau == 1 and c.verdict == "not_smoothly_slice" and c.steps == []

    c = obstruct_bing_double(parse_tree("((*,*),(*,*))"), "RHT", db)
    assert c.tau == 1 and c.verdict == "not_smoothly_slice" and len(c.steps) == 3

    c = obstruct_bing_double(parse_tree("(*,*)"), "4_1", db)
    assert c.tau == 0 and c.verdict == "no_obstruction"
    assert any("tau(K) > 0 fails" in n for n in c.notes)

    with pytest.raises(UnknownKnot):
        obstruct_bing_double(parse_tree("(*,*)"), "nope", db)


def test_obstruct_hopf_examples(db):
    c = obstruct_hopf(parse_tree("*"), parse_tree("(*,*)"), db)
    # P-chain [(O,-1)], Q_0 = (O,-2), (R,u) = (O # O^r, -2)
    expected = Doubling(O, -1, Doubling(O, -2, O, -2), 0)
    assert print_expr(c.final_knot) == print_expr(expected)
    assert c.tau == 1 and c.verdict == "not_smoothly_slice"
    assert c.assembly["q_tree"] == 2

    c = obstruct_hopf(parse_tree("(*,*)"), parse_tree("*"), db)
    assert c.assembly["q_tree"] == 1 and c.tau == 1

    c = obstruct_hopf(parse_tree("(*,*)"), parse_tree("(*,*)"), db)
    assert c.tau == 1 and c.verdict == "not_smoothly_slice"
    assert {s.tree for s in c.steps} == {1, 2}

    with pytest.raises(BothTreesTrivial):
        obstruct_hopf(parse_tree("*"), parse_tree("*"), db)


def test_leaf_count_drops_by_one():
    for shape in enumerate_shapes(5):
        t = wh_plus_bing_labeled(shape)
        while collapsible_nodes(t):
            before = leaf_count(t)
            t, _ = collapse_pair(t, collapsible_nodes(t)[-1])
            assert leaf_count(t) == before - 1


def test_ru_twist_law():
    # an l=1 Q-chain on a Wh+ tree is always an untouched leaf [(O,-1)]
    for n in range(2, 5):
        for shape in enumerate_shapes(n):
            for seq in all_collapse_sequences(wh_plus_bing_labeled(shape)):
                _, recs = collapse_full(wh_plus_bing_labeled(shape), list(seq))
                for r in recs:
                    assert r.u == (-2 if r.l == 1 else 0)
