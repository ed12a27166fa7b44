"""Adjacency of maximal orders, the spanning tree of the principality graph,
leaf generators and a class-number-one check.

Every supported gate set has a single conjugacy class of maximal orders, so
the adjacency description has m = 1.  The tree routines below still follow
the general edge and level bookkeeping so they can be exercised on synthetic
adjacency data with several classes.

Functions that need the arithmetic take a context object with ``order`` (the
reference maximal order) and ``S1`` (the primes of S coprime to the
discriminant, in order).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .ideals import (
    NOT_PRINCIPAL,
    build_splitting,
    ideal_from_generators,
    left_order,
    maximal_right_ideals,
    point_of,
    principal_generator,
)
from .rings import projective_line_size

INFINITE = math.inf


class ClassNumberError(RuntimeError):
    """A right ideal without a generator turned up: the class number is not one."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class AdjDescription:
    """``adj[(s, i)]`` lists pairs ``(s', q)``: the P_i-neighbours of O_s are q O_s' q^-1.

    Class and prime indices start at 1.
    """

    orders: tuple
    primes: tuple
    adj: dict = field(hash=False)

    @property
    def m(self):
        return len(self.orders)

    @property
    def l(self):
        return len(self.primes)

    def __getitem__(self, key):
        return self.adj[key]


@dataclass(frozen=True)
class Vertex:
    """A vertex description: (IDEAL-ID, PARENT-ID, class, q); the order is q O_class q^-1."""

    ideal_id: int
    parent_id: int
    cls: int
    q: object

    def max_order(self):
        return (self.cls, self.q)


def is_equal(orders, a, b):
    """True when q1 O_s1 q1^-1 and q2 O_s2 q2^-1 coincide (a = (s1, q1), b = (s2, q2))."""
    s1, q1 = a
    s2, q2 = b
    if s1 != s2:
        return False
    O = orders[s1 - 1]
    q = q1.inverse() * q2
    qi = q.inverse()
    return all(O.contains(q * g * qi) for g in O.basis)


def max_orders_adj(ctx):
    """Adjacency description for the single class: one (1, q) per maximal ideal qO."""
    O = ctx.order
    adj = {}
    for i, P in enumerate(ctx.S1, start=1):
        row = []
        for M in maximal_right_ideals(O, P):
            g = principal_generator(M.ideal)
            if g is NOT_PRINCIPAL:
                raise ClassNumberError(f"maximal ideal over {P} at point {M.point} is not principal", M)
            # the neighbour O_l(gO) must be g O g^-1
            Ol = left_order(M.ideal).as_order()
            gi = g.inverse()
            if not all(Ol.contains(g * b * gi) for b in O.basis):
                raise ClassNumberError(f"left order of {g}O is not conjugate by {g}", M)
            row.append((1, g))
        adj[(1, i)] = tuple(row)
    return AdjDescription((O,), tuple(ctx.S1), adj)


def spanning_tree_size(adj, s0=1):
    """Depth of the spanning tree, or INFINITE when the edge sets start repeating."""
    l = adj.l
    E = frozenset((s0, j, i) for i in range(1, l + 1) for j, _ in adj[(s0, i)] if j != s0)
    seen = [E]
    k = 1
    while E:
        nxt = set()
        for s, j, i in E:
            row = adj[(j, i)]
            if s != s0 and sum(1 for t, _ in row if t == s) > 1:
                nxt.add((j, s, i))
            nxt.update((j, t, i) for t, _ in row if t != s0 and t != s)
            for i2 in range(i + 1, l + 1):
                nxt.update((j, t, i2) for t, _ in adj[(j, i2)] if t != s0)
        E = frozenset(nxt)
        if E in seen:
            return INFINITE
        seen.append(E)
        k += 1
    return k


def s_neighbors(adj, m, v):
    """P_k-neighbours of the order of ``v`` for k >= IDEAL-ID(v); ``m`` is v's position (1-based)."""
    s, q = v.max_order()
    out = []
    for k in range(v.ideal_id, adj.l + 1):
        for s2, q2 in adj[(s, k)]:
            out.append(Vertex(k, m, s2, q * q2))
    return out


def new_level(adj, s0, Vc, Vpr, equal=None):
    if equal is None:
        def equal(a, b):
            return is_equal(adj.orders, a, b)
    out = []
    for m, v in enumerate(Vc, start=1):
        if v.cls == s0:
            continue
        parent = Vpr[v.parent_id - 1].max_order()
        for v2 in s_neighbors(adj, m, v):
            if v.ideal_id == v2.ideal_id:
                # same prime: the only lower-level neighbour is the parent
                if not equal(parent, v2.max_order()):
                    out.append(v2)
            else:
                out.append(v2)
    return out


@dataclass
class TreeLevels:
    levels: list

    def __getitem__(self, k):
        return self.levels[k]

    def __len__(self):
        return len(self.levels)


def build_tree(adj, s0=1, q0=None, equal=None, depth=None):
    """Levels V_0 .. V_M of the spanning tree (M from spanning_tree_size unless given)."""
    M = spanning_tree_size(adj, s0) if depth is None else depth
    if M == INFINITE:
        return None
    if q0 is None:
        q0 = adj.orders[s0 - 1].alg.one()
    V = [[Vertex(1, 0, s0, q0)]]
    if M >= 1:
        V.append(s_neighbors(adj, 1, V[0][0]))
    for k in range(2, M + 1):
        V.append(new_level(adj, s0, V[k - 1], V[k - 2], equal))
    return TreeLevels(V)


def find_s_generators(adj, s0=1, q0=None, equal=None):
    """Leaf generators: q for every vertex of class s0 beyond the root; [] for an infinite tree."""
    tree = build_tree(adj, s0, q0, equal)
    if tree is None:
        return []
    out = []
    for level in tree.levels[1:]:
        out.extend(v.q for v in level if v.cls == s0)
    return out


def _primitive_products(gens, conj_points, points, length):
    """Index tuples of words g_1...g_n with consecutive factors not cancelling."""
    n = len(gens)
    words = [(a,) for a in range(n)]
    for _ in range(length - 1):
        words = [w + (b,) for w in words for b in range(n) if points[b] != conj_points[w[-1]]]
    return words


def class_number_witness(ctx, depth=3):
    """None when every checked ideal is principal, else a description of the first failure.

    Depth 1 checks every maximal right ideal over S1 and that its left order
    is the conjugate of O by the generator.  For k = 2 .. depth, products of
    k maximal-ideal generators over one prime that never cancel are counted
    up to right ideal; reaching Phi(P^k) distinct ideals shows every
    primitive ideal of norm P^k is principal.
    """
    if depth <= 0:
        return None
    O = ctx.order
    try:
        adj = max_orders_adj(ctx)
    except ClassNumberError as exc:
        return str(exc)

    for i, P in enumerate(ctx.S1, start=1):
        gens = [q for _, q in adj[(1, i)]]
        smap = build_splitting(O, P)
        points = [point_of(smap, g) for g in gens]
        conj_points = [point_of(smap, g.conj()) for g in gens]
        for k in range(2, depth + 1):
            expected = projective_line_size(P, k)
            seen = set()
            for w in _primitive_products(gens, conj_points, points, k):
                q = gens[w[0]]
                for a in w[1:]:
                    q = q * gens[a]
                seen.add(ideal_from_generators(O, [q]))
            if len(seen) != expected:
                return f"over {P} at depth {k}: {len(seen)} principal primitive ideals, expected {expected}"
    return None


def verify_class_number_one(ctx, depth=3):
    return class_number_witness(ctx, depth) is None


def graph_report(ctx):
    """Summary data for the ``graph`` command."""
    adj = max_orders_adj(ctx)
    size = spanning_tree_size(adj)
    gens = find_s_generators(adj)
    return {
        "m": adj.m,
        "neighbors": [(P, len(adj[(1, i)])) for i, P in enumerate(adj.primes, start=1)],
        "depth": size,
        "generators": gens,
    }


__all__ = [
    "AdjDescription",
    "ClassNumberError",
    "INFINITE",
    "TreeLevels",
    "Vertex",
    "build_tree",
    "class_number_witness",
    "find_s_generators",
    "graph_report",
    "is_equal",
    "max_orders_adj",
    "new_level",
    "s_neighbors",
    "spanning_tree_size",
    "verify_class_number_one",
]
