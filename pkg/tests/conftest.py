import random

import pytest
from hypothesis import strategies as st

from taucollapse.collapse import Roles, collapse_pair, collapsible_nodes, Leaf
from taucollapse.expr import (UNKNOT, Base, Doubling, Mirror, Reverse, Sum)
from taucollapse.knots import builtin_database

# the three nontrivial knots of the built-in database
NAMES = ("RHT", "LHT", "4_1")


def random_expr(rng: random.Random, depth: int = 6, twist: int = 6):
    """Random knot expression of depth at most ``depth``."""
    if depth <= 1 or rng.random() < 0.2:
        return UNKNOT if rng.random() < 0.15 else Base(rng.choice(NAMES))
    kind = rng.randrange(4)
    if kind == 0:
        return Mirror(random_expr(rng, depth - 1, twist))
    if kind == 1:
        return Reverse(random_expr(rng, depth - 1, twist))
    if kind == 2:
        return Sum(random_expr(rng, depth - 1, twist), random_expr(rng, depth - 1, twist))
    return Doubling(random_expr(rng, depth - 1, twist), rng.randint(-twist, twist),
                    random_expr(rng, depth - 1, twist), rng.randint(-twist, twist))


leaf_exprs = st.one_of(st.just(UNKNOT), st.sampled_from(NAMES).map(Base))
twists = st.integers(-6, 6)

exprs = st.recursive(
    leaf_exprs,
    lambda inner: st.one_of(
        inner.map(Mirror),
        inner.map(Reverse),
        st.builds(Sum, inner, inner),
        st.builds(Doubling, inner, twists, inner, twists),
    ),
    max_leaves=12,
)


def all_collapse_sequences(tree, prefix=()):
    """Every maximal sequence of (address, roles) collapse steps on ``tree``.

    Written against tree structure alone so it does not share the engine's
    step selection.
    """
    if isinstance(tree, Leaf):
        yield prefix
        return
    for address in collapsible_nodes(tree):
        for roles in Roles:
            nxt, _ = collapse_pair(tree, address, roles)
            yield from all_collapse_sequences(nxt, prefix + ((address, roles),))


@pytest.fixture
def db():
    return builtin_database()
