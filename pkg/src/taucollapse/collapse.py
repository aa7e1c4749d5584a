"""Labeled binary trees and the collapse calculus for iterated Bing doubles.

A leaf label is a :class:`DoublingChain` ``[o_1, ..., o_k]`` read innermost
first, denoting ``D_{o_k} o ... o D_{o_1}``.  Collapsing two sibling leaves
replaces them by one leaf whose label gains a new innermost operator
``D_{R,u}``; by the covering-link lemmas the resulting link is a 2-covering
link of the original, so a tau obstruction on the final knot obstructs
smooth sliceness of the starting link.

Nodes are addressed by path: ``"@"`` is the root and each ``L``/``R``
descends to a child (``"@LR"``).  A collapse keeps the address of the
collapsed node, so addresses are stable across a whole collapse sequence.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional, Sequence, Union

from .errors import BothTreesTrivial, CollapseError, PropagationViolation
from .expr import (UNKNOT, Doubling, KnotExpr, Reverse, Sum, base_names,
                   check_twist, make_base, normalize, serialize)
from .knots import KnotDatabase, builtin_database
from . import tau_engine as taumod

ROOT = "@"


@dataclass(frozen=True)
class DoublingOp:
    companion: KnotExpr
    twist: int

    def __post_init__(self):
        check_twist(self.twist)

    def to_json(self):
        return [serialize(normalize(self.companion)), self.twist]


@dataclass(frozen=True)
class DoublingChain:
    ops: tuple = ()

    @classmethod
    def of(cls, *pairs) -> "DoublingChain":
        return cls(tuple(DoublingOp(c, t) for c, t in pairs))

    def __len__(self):
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def __getitem__(self, i):
        return self.ops[i]

    def to_json(self):
        return [op.to_json() for op in self.ops]


WH_PLUS_LABEL = DoublingChain.of((UNKNOT, -1))


@dataclass(frozen=True)
class Leaf:
    label: Optional[DoublingChain] = None


@dataclass(frozen=True)
class Node:
    left: "Tree"
    right: "Tree"


Tree = Union[Leaf, Node]


class Roles(Enum):
    LEFT_IS_P = "left_is_p"
    LEFT_IS_Q = "left_is_q"

    def swapped(self) -> "Roles":
        return Roles.LEFT_IS_Q if self is Roles.LEFT_IS_P else Roles.LEFT_IS_P


DEFAULT_ROLES = Roles.LEFT_IS_P
DEEPEST_LEFTMOST = "deepest-leftmost"


# -- tree utilities -----------------------------------------------------------

def leaf_count(tree: Tree) -> int:
    if isinstance(tree, Leaf):
        return 1
    return leaf_count(tree.left) + leaf_count(tree.right)


def shape_string(tree: Tree) -> str:
    if isinstance(tree, Leaf):
        return "*"
    return f"({shape_string(tree.left)},{shape_string(tree.right)})"


def iter_nodes(tree: Tree, path: str = ROOT) -> Iterator:
    """Yield ``(address, subtree)`` pairs in pre-order."""
    yield path, tree
    if isinstance(tree, Node):
        yield from iter_nodes(tree.left, path + "L")
        yield from iter_nodes(tree.right, path + "R")


def subtree(tree: Tree, address: str) -> Tree:
    if not address.startswith(ROOT):
        raise CollapseError(f"bad node address {address!r}")
    for step in address[1:]:
        if not isinstance(tree, Node) or step not in "LR":
            raise CollapseError(f"no node at address {address!r}")
        tree = tree.left if step == "L" else tree.right
    return tree


def replace_subtree(tree: Tree, address: str, new: Tree) -> Tree:
    if address == ROOT:
        return new
    subtree(tree, address)
    step, rest = address[1], ROOT + address[2:]
    if step == "L":
        return Node(replace_subtree(tree.left, rest, new), tree.right)
    return Node(tree.left, replace_subtree(tree.right, rest, new))


def collapsible_nodes(tree: Tree) -> list:
    """Addresses of internal nodes whose two children are both leaves."""
    return [a for a, t in iter_nodes(tree)
            if isinstance(t, Node) and isinstance(t.left, Leaf) and isinstance(t.right, Leaf)]


def leaves(tree: Tree) -> list:
    return [(a, t) for a, t in iter_nodes(tree) if isinstance(t, Leaf)]


def enumerate_shapes(n: int) -> list:
    """All unlabeled binary trees with exactly ``n`` leaves."""
    if n == 1:
        return [Leaf()]
    out = []
    for k in range(1, n):
        for left in enumerate_shapes(k):
            for right in enumerate_shapes(n - k):
                out.append(Node(left, right))
    return out


def wh_plus_bing_labeled(shape: Tree) -> Tree:
    """Label every leaf with ``D_{O,-1}``: the tree describing Wh+(B_T(K))."""
    if isinstance(shape, Leaf):
        return Leaf(WH_PLUS_LABEL)
    return Node(wh_plus_bing_labeled(shape.left), wh_plus_bing_labeled(shape.right))


# -- the collapse move --------------------------------------------------------

def compute_ru(qchain: DoublingChain):
    """Companion and twist ``(R, u)`` of the operator produced by a collapse.

    For a Q-chain ``[(Q_1,t_1), ..., (Q_l,t_l)]`` (innermost first) this is
    ``(Q_1 # Q_1^r, 2 t_1)`` when ``l == 1`` and otherwise
    ``(D_{Q_1,t_1} o ... o D_{Q_{l-2},t_{l-2}}(D_{Q_{l-1},t_{l-1}}(Q_l # Q_l^r, 2 t_l)), 0)``.
    The innermost Q-operator ends up outermost in ``R``.
    """
    ops = list(qchain)
    if not ops:
        raise CollapseError("cannot collapse against an empty chain")
    last = ops[-1]
    doubled = Sum(last.companion, Reverse(last.companion))
    if len(ops) == 1:
        return doubled, check_twist(2 * last.twist)
    r = Doubling(ops[-2].companion, ops[-2].twist, doubled, check_twist(2 * last.twist))
    for op in reversed(ops[:-2]):
        r = Doubling(op.companion, op.twist, r, 0)
    return r, 0


@dataclass(frozen=True)
class OpCheck:
    companion: str
    twist: int
    tau: int
    holds: bool

    def to_dict(self):
        return {"companion": self.companion, "twist": self.twist,
                "tau": self.tau, "holds": self.holds}


@dataclass(frozen=True)
class HeddenReport:
    holds: bool
    ops: tuple

    def __bool__(self):
        return self.holds

    def to_dict(self):
        return {"holds": self.holds, "ops": [o.to_dict() for o in self.ops]}


def hedden_condition(chain: DoublingChain, db: Optional[KnotDatabase] = None) -> HeddenReport:
    """Check ``twist < 2 tau(companion)`` for every operator in ``chain``."""
    db = builtin_database() if db is None else db
    checks = []
    for op in chain:
        tc = taumod.tau(op.companion, db)
        checks.append(OpCheck(serialize(normalize(op.companion)), op.twist, tc,
                              op.twist < 2 * tc))
    return HeddenReport(all(c.holds for c in checks), tuple(checks))


COVERING_MOVES = (
    {"move": "branched_double_cover", "p": 2, "a": 1},
    {"move": "sublink"},
)


@dataclass(frozen=True)
class CollapseRecord:
    node: str
    p_leaf: str
    q_leaf: str
    roles: Roles
    l: int
    r: KnotExpr
    u: int
    label: DoublingChain
    hedden: Optional[HeddenReport] = None
    lemma: str = "solid_torus"
    tree: Optional[int] = None

    def __post_init__(self):
        if self.l == 1 and self.u % 2:
            raise ValueError("an l=1 collapse always has an even twist")
        if self.l > 1 and self.u != 0:
            raise ValueError("an l>1 collapse always has twist 0")

    @property
    def case(self) -> str:
        return "l=1" if self.l == 1 else "l>1"

    def to_dict(self):
        out = {
            "node": self.node,
            "p_leaf": self.p_leaf,
            "q_leaf": self.q_leaf,
            "roles": self.roles.value,
            "case": self.case,
            "l": self.l,
            "R": serialize(normalize(self.r)),
            "u": self.u,
            "label": self.label.to_json(),
            "hedden": None if self.hedden is None else self.hedden.to_dict(),
            "lemma": self.lemma,
            "covering_moves": [dict(m, branch_leaf=self.q_leaf) if m["move"] != "sublink" else dict(m)
                               for m in COVERING_MOVES],
        }
        if self.tree is not None:
            out["tree"] = self.tree
        return out


def _normalized_chain(chain: DoublingChain) -> DoublingChain:
    return DoublingChain(tuple(DoublingOp(normalize(op.companion), op.twist) for op in chain))


def collapse_pair(tree: Tree, node: str, roles: Roles = DEFAULT_ROLES,
                  db: Optional[KnotDatabase] = None):
    """Collapse the two sibling leaves below ``node``.

    Returns the new tree and a :class:`CollapseRecord`.  When ``db`` is given
    the new label's twist condition is evaluated and stored in the record.
    """
    target = subtree(tree, node)
    if not isinstance(target, Node):
        raise CollapseError(f"node {node} is a leaf, not an internal node")
    if not (isinstance(target.left, Leaf) and isinstance(target.right, Leaf)):
        raise CollapseError(f"children of {node} are not both leaves")
    left, right = target.left.label, target.right.label
    if left is None or right is None:
        raise CollapseError(f"leaves below {node} are unlabeled")
    if not len(left) or not len(right):
        raise CollapseError(f"leaves below {node} carry empty labels")
    if roles is Roles.LEFT_IS_P:
        pchain, qchain, p_leaf, q_leaf = left, right, node + "L", node + "R"
    else:
        pchain, qchain, p_leaf, q_leaf = right, left, node + "R", node + "L"
    r, u = compute_ru(qchain)
    r = normalize(r)
    label = DoublingChain((DoublingOp(r, u),) + _normalized_chain(pchain).ops)
    record = CollapseRecord(
        node=node, p_leaf=p_leaf, q_leaf=q_leaf, roles=roles, l=len(qchain),
        r=r, u=u, label=label,
        hedden=None if db is None else hedden_condition(label, db),
        lemma="bing" if node == ROOT else "solid_torus",
    )
    return replace_subtree(tree, node, Leaf(label)), record


def _parse_step(step, default_roles: Roles):
    if isinstance(step, str):
        return step, default_roles
    address, roles = step
    return address, roles


def collapse_full(tree: Tree, strategy: Union[str, Sequence] = DEEPEST_LEFTMOST,
                  roles: Roles = DEFAULT_ROLES, db: Optional[KnotDatabase] = None,
                  check_propagation: bool = False):
    """Collapse ``tree`` down to a single leaf.

    ``strategy`` is ``"deepest-leftmost"`` or an explicit order: a sequence
    of node addresses, or ``(address, Roles)`` pairs to override the role
    assignment of that step.  With ``check_propagation`` (requires ``db``),
    a label violating the twist condition after any collapse raises
    :class:`PropagationViolation`, provided every starting label satisfied it.
    """
    n = leaf_count(tree)
    if check_propagation:
        db = builtin_database() if db is None else db
        start_ok = all(hedden_condition(t.label, db).holds for _, t in leaves(tree))
    records = []
    if strategy == DEEPEST_LEFTMOST:
        steps = None
    else:
        steps = list(strategy)
        if len(steps) != n - 1:
            raise CollapseError(f"custom order has {len(steps)} steps, tree needs {n - 1}")
    for i in range(n - 1):
        if steps is None:
            # deepest first; among equals "L" < "R" sorts leftmost first
            address = min(collapsible_nodes(tree), key=lambda a: (-len(a), a))
            step_roles = roles
        else:
            address, step_roles = _parse_step(steps[i], roles)
        tree, record = collapse_pair(tree, address, step_roles, db)
        if check_propagation and start_ok and not record.hedden.holds:
            raise PropagationViolation(
                f"collapse at {address} produced a label violating twist < 2 tau: "
                f"{record.label.to_json()}")
        records.append(record)
    assert isinstance(tree, Leaf)
    return tree.label, records


def chain_apply(chain: DoublingChain, base: KnotExpr) -> KnotExpr:
    """``D_{o_k} o ... o D_{o_1}(base)``, the accumulated knot always untwisted."""
    acc = base
    for op in chain:
        acc = Doubling(op.companion, op.twist, acc, 0)
    return acc


# -- certificates -------------------------------------------------------------

CITE_COVERING = ("covering moves (sublinks and 2-fold branched covers over an unknotted "
                 "component) preserve Z_(2)-sliceness, so every covering link of a "
                 "Z_(2)-slice link is Z_(2)-slice")
CITE_COLLAPSE = ("collapse lemma: replacing sibling leaves labeled by the P- and Q-chains "
                 "with one leaf labeled [(R,u)] ++ P-chain yields a covering link")
CITE_PROPAGATION = ("collapse propagation: if every input operator has twist < 2 tau(companion), "
                    "so does every operator of the collapsed label")
CITE_HOPF = ("Hopf closure: two collapsed chains on the Hopf link give the covering knot "
             "P-chain(D[R,u](Q_0,t_0))")

NOTE_TWIST = ("for an l>1 collapse the innermost connected sum Q_l # Q_l^r carries twist "
              "2*t_l, where t_l is the twist of the outermost Q-operator")
NOTE_P2 = "all covering moves use p = 2 with branched-cover exponent a = 1"
NOTE_NO_PROOF = "no_obstruction only means tau vanishes; it is not a proof of sliceness"


@dataclass
class Certificate:
    input: dict
    steps: list
    final_knot: Optional[KnotExpr]
    tau: Optional[int]
    verdict: str
    citations: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    tau_trace: list = field(default_factory=list)
    assembly: Optional[dict] = None

    def to_dict(self) -> dict:
        out = {
            "version": 1,
            "input": self.input,
            "steps": [s.to_dict() for s in self.steps],
            "final_knot": None if self.final_knot is None else serialize(normalize(self.final_knot)),
            "tau": self.tau,
            "verdict": self.verdict,
            "citations": list(self.citations),
            "notes": list(self.notes),
            "tau_trace": [e.to_dict() for e in self.tau_trace],
        }
        if self.assembly is not None:
            out["assembly"] = self.assembly
        return out


def strategy_name(strategy) -> str:
    if strategy == DEEPEST_LEFTMOST:
        return DEEPEST_LEFTMOST
    parts = []
    for step in strategy:
        address, roles = _parse_step(step, None)
        parts.append(address if roles is None else f"{address}/{'p' if roles is Roles.LEFT_IS_P else 'q'}")
    return "custom:" + ",".join(parts)


def _knots_used(exprs, db: KnotDatabase) -> list:
    names = set()
    for e in exprs:
        names |= base_names(e)
    return [db.get(n).to_dict() for n in sorted(names) if db.get(n) is not None]


def _evaluate(final: KnotExpr, db: KnotDatabase):
    value, entries = taumod.tau_trace(normalize(final), db)
    verdict = taumod.verdict_from_tau(value, ())
    return value, entries, verdict


def obstruct_bing_double(shape: Tree, knot: str, db: Optional[KnotDatabase] = None,
                         strategy=DEEPEST_LEFTMOST, roles: Roles = DEFAULT_ROLES) -> Certificate:
    """Run the collapse pipeline on Wh+(B_T(K)) and evaluate tau of the covering knot."""
    db = builtin_database() if db is None else db
    base = make_base(knot)
    tau_base = taumod.tau(base, db)
    labeled = wh_plus_bing_labeled(shape)
    chain, records = collapse_full(labeled, strategy, roles, db, check_propagation=True)
    report = hedden_condition(chain, db)
    if not report.holds:
        raise PropagationViolation(f"terminal label violates twist < 2 tau: {chain.to_json()}")
    final = chain_apply(chain, base)
    value, entries, verdict = _evaluate(final, db)
    if tau_base > 0 and value != 1:
        raise PropagationViolation(f"tau(K) = {tau_base} > 0 but the covering knot has tau {value}")
    notes = [NOTE_TWIST, NOTE_P2]
    if not verdict.obstructed:
        notes.append(f"hypothesis tau(K) > 0 fails: tau({knot}) = {tau_base}")
        notes.append(NOTE_NO_PROOF)
    return Certificate(
        input={
            "command": "obstruct bing",
            "tree": shape_string(shape),
            "knot": knot,
            "strategy": strategy_name(strategy),
            "roles": roles.value,
            "databases": list(db.sources),
            "knots": _knots_used([base], db),
        },
        steps=records,
        final_knot=final,
        tau=value,
        verdict=verdict.kind.value,
        citations=[CITE_COVERING, CITE_COLLAPSE, CITE_PROPAGATION,
                   taumod.RULE_DOUBLING, taumod.RULE_SUM, taumod.RULE_QSLICE],
        notes=notes,
        tau_trace=entries,
    )


def hopf_final_knot(pchain: DoublingChain, qchain: DoublingChain):
    """Covering knot ``P-chain(D[R,u](Q_0,t_0))`` of the doubled Hopf link."""
    q0, rest = qchain[0], DoublingChain(qchain.ops[1:])
    r, u = compute_ru(rest)
    return chain_apply(pchain, Doubling(normalize(r), u, q0.companion, q0.twist)), normalize(r), u


def obstruct_hopf(shape1: Tree, shape2: Tree, db: Optional[KnotDatabase] = None,
                  strategy1=DEEPEST_LEFTMOST, strategy2=DEEPEST_LEFTMOST,
                  roles: Roles = DEFAULT_ROLES) -> Certificate:
    """Collapse both trees on the Hopf link and evaluate tau of the covering knot.

    Raises :class:`BothTreesTrivial` when both shapes are single leaves.
    """
    db = builtin_database() if db is None else db
    if isinstance(shape1, Leaf) and isinstance(shape2, Leaf):
        raise BothTreesTrivial()
    chains, all_records = [], []
    for idx, (shape, strategy) in enumerate(((shape1, strategy1), (shape2, strategy2)), start=1):
        chain, records = collapse_full(wh_plus_bing_labeled(shape), strategy, roles, db,
                                       check_propagation=True)
        chains.append(chain)
        # the other tree's components are still present, so every step is a solid-torus collapse
        all_records.extend(dataclasses.replace(r, tree=idx, lemma="solid_torus") for r in records)
    q_tree = 2
    if len(chains[1]) == 1 and len(chains[0]) > 1:
        q_tree = 1
    pchain, qchain = chains[2 - q_tree], chains[q_tree - 1]
    final, r, u = hopf_final_knot(pchain, qchain)
    value, entries, verdict = _evaluate(final, db)
    if value != 1:
        raise PropagationViolation(f"Hopf covering knot has tau {value}, expected 1")
    return Certificate(
        input={
            "command": "obstruct hopf",
            "tree1": shape_string(shape1),
            "tree2": shape_string(shape2),
            "strategy1": strategy_name(strategy1),
            "strategy2": strategy_name(strategy2),
            "roles": roles.value,
            "databases": list(db.sources),
            "knots": [],
        },
        steps=all_records,
        final_knot=final,
        tau=value,
        verdict=verdict.kind.value,
        citations=[CITE_COVERING, CITE_COLLAPSE, CITE_PROPAGATION, CITE_HOPF,
                   taumod.RULE_DOUBLING, taumod.RULE_SUM, taumod.RULE_QSLICE],
        notes=[NOTE_TWIST, NOTE_P2],
        tau_trace=entries,
        assembly={
            "q_tree": q_tree,
            "p_chain": pchain.to_json(),
            "q_chain": qchain.to_json(),
            "q0": qchain[0].to_json(),
            "R": serialize(r),
            "u": u,
        },
    )
