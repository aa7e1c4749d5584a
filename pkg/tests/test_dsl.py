import random

import pytest
from hypothesis import given

from taucollapse.collapse import Leaf, Node
from taucollapse.dsl import parse_expr, parse_tree, print_expr
from taucollapse.errors import ParseError
from taucollapse.expr import (UNKNOT, Base, Doubling, Mirror, Reverse, Sum,
                              normalize, whitehead)

from conftest import exprs, random_expr

T = Base("T")


@pytest.mark.parametrize("text, expected", [
    ("Wh+(RHT)", Doubling(UNKNOT, -1, Base("RHT"), 0)),
    ("Wh-(RHT, 3)", Doubling(UNKNOT, 1, Base("RHT"), 3)),
    ("D[m(T),-2](T,3)", Doubling(Mirror(T), -2, T, 3)),
    ("D[T,+2](T)", Doubling(T, 2, T, 0)),
    ("T # -(T)", Sum(T, Mirror(Reverse(T)))),
    ("a # b # c", Sum(Sum(Base("a"), Base("b")), Base("c"))),
    (" r ( O ) ", Reverse(UNKNOT)),
    ("4_1", Base("4_1")),
    ("m", Base("m")),
    ("D", Base("D")),
])
def test_parse_expr(text, expected):
    assert parse_expr(text) == expected


@pytest.mark.parametrize("text, position", [
    ("", 0),
    ("D[T,](T)", 4),
    ("Wh+(T", 5),
    ("T #", 3),
    ("T T", 2),
    ("m(T", 3),
    ("D[T,1](T,x)", 9),
])
def test_parse_expr_errors(text, position):
    with pytest.raises(ParseError) as info:
        parse_expr(text)
    assert info.value.position == position


def test_twist_overflow_is_a_parse_error():
    with pytest.raises(ParseError):
        parse_expr("Wh+(T, 2147483648)")
    assert parse_expr("Wh+(T, -2147483648)").twist2 == -(2**31)


def test_parse_tree():
    assert parse_tree("*") == Leaf()
    assert parse_tree("((*,*),*)") == Node(Node(Leaf(), Leaf()), Leaf())
    assert parse_tree(" ( * , * ) ") == Node(Leaf(), Leaf())
    with pytest.raises(ParseError) as info:
        parse_tree("(*,)")
    assert info.value.position == 3
    with pytest.raises(ParseError):
        parse_tree("(*,*))")


def test_print_expr():
    assert print_expr(UNKNOT) == "O"
    assert print_expr(whitehead("+", Base("K"), 0)) == "D[O,-1](K,0)"
    assert print_expr(Reverse(Mirror(Base("K")))) == "m(r(K))"


@given(exprs)
def test_round_trip(e):
    n = normalize(e)
    assert parse_expr(print_expr(n)) == n


def test_round_trip_random_depth6():
    rng = random.Random(7)
    for _ in range(1000):
        n = normalize(random_expr(rng, 6))
        assert parse_expr(print_expr(n)) == n
