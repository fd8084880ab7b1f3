import pytest

from hyperseidel.families import gen_complete_uniform, gen_hyperstar
from hyperseidel.hypergraph import (
    Hypergraph,
    ParseError,
    StructureError,
    delete_vertex,
    delete_vertices,
    validate,
)
from hyperseidel.matrices import adjacency_matrix


def test_edges_are_sorted():
    H = Hypergraph(4, [(3, 1, 2)])
    assert H.edges == ((1, 2, 3),)


def test_out_of_range_vertex_names_vertex_and_edge():
    with pytest.raises(StructureError, match="vertex 5 in edge 1"):
        Hypergraph(4, [(0, 1), (2, 5)])


def test_repeated_vertex_rejected():
    with pytest.raises(StructureError, match="repeats a vertex"):
        Hypergraph(3, [(0, 0, 1)])


def test_singleton_edge_rejected():
    with pytest.raises(StructureError, match="cardinality 1"):
        Hypergraph(3, [(1,)])


def test_parse_error_carries_line():
    err = ParseError("bad token", 7)
    assert err.line == 7
    assert "line 7" in str(err)


class TestValidate:
    def test_worked_example(self, worked):
        rep = validate(worked)
        assert rep.rank == 4
        assert rep.corank == 3
        assert rep.uniform_k is None
        assert rep.degrees == (2, 3, 2, 2, 1)

    def test_single_edge(self):
        rep = validate(Hypergraph(2, [(0, 1)]))
        assert (rep.rank, rep.corank, rep.uniform_k, rep.regular_r) == (2, 2, 2, 1)

    def test_complete_uniform(self):
        rep = validate(gen_complete_uniform(4, 3))
        assert rep.uniform_k == 3
        assert rep.regular_r == 3

    def test_edgeless(self):
        rep = validate(Hypergraph(3))
        assert rep.rank == rep.corank == 0
        assert rep.uniform_k is None

    def test_describe(self):
        text = validate(gen_hyperstar(4, 3)).describe()
        assert "uniform k=3" in text
        assert "non-regular" in text


class TestDeleteVertex:
    def test_worked_example_last_vertex(self, worked):
        smaller = delete_vertex(worked, 4)
        assert smaller.edges == ((0, 1, 2), (1, 2, 3), (0, 1, 3))
        A = adjacency_matrix(worked)
        assert adjacency_matrix(smaller) == A.principal_submatrix([0, 1, 2, 3])

    def test_only_vertex(self):
        empty = delete_vertex(Hypergraph(1), 0)
        assert empty.n == 0
        assert empty.edges == ()

    def test_leaf_of_hyperstar(self, star43):
        rep = validate(delete_vertex(star43, 6))
        assert rep.rank == 3
        assert rep.corank == 2

    def test_small_edges_dropped(self):
        H = Hypergraph(3, [(0, 1), (1, 2)])
        assert delete_vertex(H, 1).edges == ()

    def test_out_of_range(self, worked):
        with pytest.raises(StructureError):
            delete_vertex(worked, 5)

    def test_labels_follow_vertices(self, star43):
        smaller = delete_vertex(star43, 1)
        assert smaller.label(1) == str(star43.labels[2])

    def test_delete_several_uses_original_indices(self, star43):
        smaller = delete_vertices(star43, [2, 4, 6])
        assert smaller == gen_hyperstar(4, 2)


def test_relabeling_keeps_labels_with_vertices(star43):
    order = [6, 5, 4, 3, 2, 1, 0]
    moved = star43.relabeled(order)
    assert moved.edges == ((4, 5, 6), (2, 3, 6), (0, 1, 6))
    assert moved.label(6) == str(star43.labels[0])


def test_relabeling_needs_a_permutation(star43):
    with pytest.raises(StructureError, match="permutation"):
        star43.relabeled([0, 0, 1, 2, 3, 4, 5])
