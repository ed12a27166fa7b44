from types import SimpleNamespace

import pytest

import exactsynth.order_graph as og
from exactsynth.ideals import NOT_PRINCIPAL
from exactsynth.order_graph import (
    INFINITE,
    AdjDescription,
    ClassNumberError,
    Vertex,
    build_tree,
    class_number_witness,
    find_s_generators,
    graph_report,
    max_orders_adj,
    spanning_tree_size,
    verify_class_number_one,
)


class Word(str):
    """Stand-in for a quaternion: multiplication concatenates."""

    def __mul__(self, other):
        return Word(str(self) + str(other))


def same(a, b):
    return a == b


def one_class(n_neighbours):
    adj = {(1, 1): tuple((1, Word(f"g{t}")) for t in range(n_neighbours))}
    return AdjDescription(("O1",), ("P1",), adj)


def test_single_class_tree_has_depth_one():
    adj = one_class(3)
    assert spanning_tree_size(adj) == 1
    tree = build_tree(adj, q0=Word(""), equal=same)
    assert len(tree) == 2
    assert [v.q for v in tree[1]] == ["g0", "g1", "g2"]
    assert find_s_generators(adj, q0=Word(""), equal=same) == ["g0", "g1", "g2"]


def test_two_class_tree_is_finite():
    # O1 has two neighbours of class 2; each class-2 order returns to class 1 only
    adj = AdjDescription(("O1", "O2"), ("P1",), {
        (1, 1): ((2, Word("a")), (2, Word("b"))),
        (2, 1): ((1, Word("x")), (1, Word("y"))),
    })
    assert spanning_tree_size(adj) == 2
    tree = build_tree(adj, q0=Word(""), equal=same)
    assert [v.cls for v in tree[1]] == [2, 2]
    leaves = find_s_generators(adj, q0=Word(""), equal=same)
    assert sorted(leaves) == ["ax", "ay", "bx", "by"]


def test_parent_is_not_revisited():
    # the parent appears among the P1-neighbours of a class-2 vertex and is dropped
    adj = AdjDescription(("O1", "O2"), ("P1",), {
        (1, 1): ((2, Word("a")),),
        (2, 1): ((1, Word("z")), (1, Word("y"))),
    })

    def equal(a, b):
        # a*z is the same order as the root
        return a[0] == b[0] and {a[1], b[1]} <= {"", "az"}

    tree = build_tree(adj, q0=Word(""), equal=equal, depth=2)
    assert [v.q for v in tree[2]] == ["ay"]
    assert all(isinstance(v, Vertex) and v.parent_id == 1 for v in tree[2])


def test_repeating_edges_mean_infinite_tree():
    adj = AdjDescription(("O1", "O2"), ("P1",), {
        (1, 1): ((2, Word("a")),),
        (2, 1): ((1, Word("x")), (2, Word("b")), (2, Word("c"))),
    })
    assert spanning_tree_size(adj) == INFINITE
    assert build_tree(adj) is None
    assert find_s_generators(adj) == []


@pytest.mark.parametrize("name,counts,gens", [
    ("clifford-t", [3], 3),
    ("v-basis", [6], 6),
    ("clifford-t-v", [3, 26], 29),
])
def test_real_adjacency(name, counts, gens, request):
    from exactsynth.synthesis import get_context

    ctx = get_context(name)
    adj = max_orders_adj(ctx)
    assert adj.m == 1
    assert [len(adj[(1, i)]) for i in range(1, adj.l + 1)] == counts
    assert spanning_tree_size(adj) == 1
    assert len(find_s_generators(adj)) == gens
    rep = graph_report(ctx)
    assert rep["depth"] == 1 and len(rep["generators"]) == gens


def test_class_number_checks(tctx, vctx):
    assert verify_class_number_one(tctx, 0)
    assert verify_class_number_one(tctx, 3)
    assert verify_class_number_one(vctx, 3)
    assert class_number_witness(vctx, 2) is None


def test_non_principal_ideal_is_reported(vctx, monkeypatch):
    monkeypatch.setattr(og, "principal_generator", lambda I: NOT_PRINCIPAL)
    ctx = SimpleNamespace(order=vctx.order, S1=vctx.S1)
    with pytest.raises(ClassNumberError) as info:
        max_orders_adj(ctx)
    assert info.value.witness is not None
    assert "not principal" in class_number_witness(ctx, 1)
