import numpy as np
import pytest

from hyperseidel.families import (
    FAMILIES,
    double_star_edges,
    edge_major_order,
    gen_complete_uniform,
    gen_double_hyperstar,
    gen_hyperstar,
    gen_power,
    gen_sunflower,
    random_hypergraph,
    star_edges,
)
from hyperseidel.hypergraph import Hypergraph, ParameterError, StructureError, validate
from hyperseidel.matrices import adjacency_matrix, seidel_matrix
from hyperseidel.spectra import eigen_symmetric
from hyperseidel.structure import Partition, quotient_matrix


def test_hyperstar_layout(star43):
    assert star43.n == 7
    assert star43.edges == ((0, 1, 2), (0, 3, 4), (0, 5, 6))
    assert star43.label(0) == "hyperstar:v0,0"


def test_double_hyperstar_layout():
    H = gen_double_hyperstar(3, 3, 3)
    assert H.n == 11
    assert H.m == 5
    assert H.edges[-1] == (0, 5, 10)
    assert validate(H).uniform_k == 3


def test_sunflower_layout():
    H = gen_sunflower(3)
    assert H.n == 7
    assert H.edges == ((1, 2, 3), (4, 5, 6), (0, 1, 4))
    assert H.degrees() == [1, 2, 1, 1, 2, 1, 1]


def test_complete_uniform():
    H = gen_complete_uniform(5, 3)
    assert H.m == 10
    rep = validate(H)
    assert (rep.uniform_k, rep.regular_r) == (3, 6)


def test_power_of_graph_adds_fill_vertices():
    H = gen_power(star_edges(3), 3, 4)
    assert H.n == 3 + 2 * 2
    assert H.edges == ((0, 1, 3, 4), (0, 2, 5, 6))


def test_power_two_is_the_graph():
    assert gen_power([(0, 1), (1, 2)], 3, 2).edges == ((0, 1), (1, 2))


def test_power_rejects_bad_pairs():
    with pytest.raises(StructureError, match="base edge 1"):
        gen_power([(0, 1), (2, 2)], 3, 3)


@pytest.mark.parametrize("gen,args", [
    (gen_hyperstar, (1, 3)),
    (gen_hyperstar, (3, 1)),
    (gen_double_hyperstar, (2, 2, 2)),
    (gen_sunflower, (1,)),
    (gen_complete_uniform, (3, 4)),
    (gen_complete_uniform, (3, 1)),
])
def test_parameter_bounds(gen, args):
    with pytest.raises(ParameterError):
        gen(*args)


def test_edge_major_order_puts_isolated_last():
    H = Hypergraph(5, [(3, 1), (1, 0)])
    assert edge_major_order(H) == [1, 3, 0, 2, 4]


def test_random_hypergraph_is_seeded():
    a = random_hypergraph(8, 6, np.random.default_rng(3), max_edge=4)
    b = random_hypergraph(8, 6, np.random.default_rng(3), max_edge=4)
    assert a == b
    assert all(2 <= len(e) <= 4 for e in a.edges)


@pytest.mark.parametrize("family,params", [
    ("hyperstar", (3, 2)),
    ("hyperstar", (5, 4)),
    ("double-hyperstar", (2, 3, 3)),
    ("double-hyperstar", (4, 2, 5)),
    ("sunflower", (2,)),
    ("sunflower", (5,)),
])
def test_canonical_partitions_are_equitable(family, params):
    _, gen, blocks = FAMILIES[family]
    H = gen(*params)
    P = Partition.from_blocks(blocks(*params), H.n)
    assert quotient_matrix(adjacency_matrix(H), P).equitable
    assert quotient_matrix(seidel_matrix(H), P).equitable


@pytest.mark.parametrize("n1,n2,k", [(2, 3, 3), (3, 3, 4)])
def test_power_of_double_star_is_cospectral_with_double_hyperstar(n1, n2, k):
    power = gen_power(double_star_edges(n1, n2), n1 + n2, k)
    direct = gen_double_hyperstar(n1, n2, k)
    np.testing.assert_allclose(eigen_symmetric(seidel_matrix(power)).values,
                               eigen_symmetric(seidel_matrix(direct)).values, atol=1e-9)


def test_power_of_star_is_cospectral_with_hyperstar():
    np.testing.assert_allclose(eigen_symmetric(adjacency_matrix(gen_power(star_edges(4), 4, 3))).values,
                               eigen_symmetric(adjacency_matrix(gen_hyperstar(4, 3))).values, atol=1e-9)


@pytest.mark.parametrize("n,k", [(2, 2), (3, 3), (4, 3), (5, 4), (6, 5)])
def test_power_of_star_is_the_hyperstar(n, k):
    power = gen_power(star_edges(n), n, k)
    assert power.relabeled(edge_major_order(power)) == gen_hyperstar(n, k)


@pytest.mark.parametrize("n1,n2,k", [(2, 2, 3), (2, 3, 3), (3, 2, 5), (3, 3, 4), (4, 5, 3)])
def test_power_of_double_star_is_the_double_hyperstar(n1, n2, k):
    power = gen_power(double_star_edges(n1, n2), n1 + n2, k)
    assert power.relabeled(edge_major_order(power)) == gen_double_hyperstar(n1, n2, k)
