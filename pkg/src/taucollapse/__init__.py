"""Smooth-sliceness obstructions for Whitehead doubles of iterated Bing doubles."""
from .collapse import (DoublingChain, DoublingOp, Leaf, Node, Roles, chain_apply,
                       collapse_full, collapse_pair, compute_ru, hedden_condition,
                       obstruct_bing_double, obstruct_hopf, wh_plus_bing_labeled)
from .dsl import parse_expr, parse_tree, print_expr
from .expr import (UNKNOT, connected_sum, doubling, make_base, mirror, negate,
                   normalize, reverse, whitehead)
from .knots import KnotDatabase, KnotRecord, builtin_database, load_database
from .tau_engine import genus4_lower_bound, slice_obstruction, tau, tau_doubling, tau_whitehead

__version__ = "0.1.0"
