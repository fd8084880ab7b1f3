import math

import numpy as np
import pytest

from hyperseidel.families import gen_complete_uniform, gen_hyperstar
from hyperseidel.hypergraph import DimensionError, Hypergraph, PoleError
from hyperseidel.matrices import IntSymMatrix, adjacency_matrix, seidel_matrix
from hyperseidel.spectra import (
    adjacency_energy,
    char_poly_eval,
    check_interlacing,
    eigen_symmetric,
    energy,
    group_spectrum,
    main_eigenvalues,
    matrix_spectrum,
    seidel_energy,
    sorted_difference,
    walk_gen_from_spectrum,
)


class TestEigen:
    def test_complete_uniform_seidel(self):
        D = eigen_symmetric(seidel_matrix(gen_complete_uniform(4, 3)))
        np.testing.assert_allclose(D.values, [3, 3, 3, -9], atol=1e-10)
        assert D.residual < 1e-9

    def test_hyperstar_adjacency(self, star43):
        values = eigen_symmetric(adjacency_matrix(star43)).values
        np.testing.assert_allclose(values, [3, 1, 1, -1, -1, -1, -2], atol=1e-10)

    def test_descending(self, worked):
        values = eigen_symmetric(seidel_matrix(worked)).values
        assert all(a >= b for a, b in zip(values, values[1:]))
        np.testing.assert_allclose(np.sort(values), np.linalg.eigvalsh(seidel_matrix(worked).to_float()), atol=1e-9)

    def test_empty(self):
        D = eigen_symmetric(IntSymMatrix(np.zeros((0, 0), dtype=int)))
        assert D.n == 0
        assert D.residual == 0.0


class TestGrouping:
    def test_close_values_merge(self):
        spec = group_spectrum([2.0000001, 2.0, -1.0], tol=1e-5)
        assert spec.pairs[0][1] == 2
        assert spec.pairs[0][0] == pytest.approx(2.00000005)
        assert spec.pairs[1] == (-1.0, 1)
        assert spec.order == 3

    def test_distinct_values_stay_apart(self):
        assert group_spectrum([1.0, 0.5, 0.0], tol=1e-7).pairs == ((1.0, 1), (0.5, 1), (0.0, 1))

    def test_hyperstar_seidel_groups(self, star43):
        spec = matrix_spectrum(seidel_matrix(star43))
        assert spec.multiplicity_at(1.0, 1e-6) == 3
        assert spec.multiplicity_at(-3.0, 1e-6) == 2
        assert len(spec.pairs) == 4
        assert list(spec.to_frame().columns) == ["value", "multiplicity"]

    def test_tolerance_must_be_positive(self):
        with pytest.raises(ValueError):
            group_spectrum([1.0], tol=0.0)


class TestCharPolyEval:
    def test_zero_matrix(self):
        assert char_poly_eval(np.zeros((2, 2)), 5.0) == pytest.approx(25.0)

    def test_at_eigenvalue(self):
        assert abs(char_poly_eval(adjacency_matrix(gen_complete_uniform(4, 3)), 6.0)) < 1e-9

    def test_matches_product_of_factors(self, worked):
        S = seidel_matrix(worked)
        values = eigen_symmetric(S).values
        for x in (-4.5, 0.25, 3.0):
            assert char_poly_eval(S, x) == pytest.approx(float(np.prod(x - values)), rel=1e-9)

    def test_empty(self):
        assert char_poly_eval(np.zeros((0, 0)), 2.0) == 1.0


class TestEnergy:
    def test_hyperstar(self, star43):
        assert seidel_energy(star43) == pytest.approx(9 + math.sqrt(33), abs=1e-9)

    def test_path(self):
        assert seidel_energy(gen_hyperstar(3, 2)) == pytest.approx(4.0, abs=1e-10)

    def test_edgeless(self):
        assert seidel_energy(Hypergraph(5)) == pytest.approx(8.0)
        assert adjacency_energy(Hypergraph(5)) == 0.0

    def test_empty(self):
        assert seidel_energy(Hypergraph(0)) == 0.0

    def test_energy_of_values(self):
        assert energy([3, -1, -2]) == 6.0


class TestMain:
    def test_regular_has_one_main(self):
        flags = main_eigenvalues(seidel_matrix(gen_complete_uniform(4, 3)))
        main = [f for f in flags if f.is_main]
        assert len(main) == 1
        assert main[0].value == pytest.approx(-9.0)
        assert main[0].projection == pytest.approx(2.0)

    def test_hyperstar_main_pair(self, star43):
        flags = main_eigenvalues(seidel_matrix(star43))
        main = sorted((f.value for f in flags if f.is_main), reverse=True)
        np.testing.assert_allclose(main, [(3 + math.sqrt(33)) / 2, (3 - math.sqrt(33)) / 2], atol=1e-9)
        assert sum(f.multiplicity for f in flags) == 7


class TestInterlacing:
    def test_holds(self):
        assert check_interlacing([3, 1, -1], [2, 0])

    def test_fails(self):
        assert not check_interlacing([1, 0, -1], [2, 0])

    def test_slack(self):
        assert check_interlacing([1, 0], [1 + 1e-12], slack=1e-9)

    def test_child_too_long(self):
        with pytest.raises(DimensionError):
            check_interlacing([1.0], [1.0, 0.0])


class TestWalkGen:
    def test_regular_weights(self):
        gen = walk_gen_from_spectrum(eigen_symmetric(adjacency_matrix(gen_complete_uniform(4, 3))))
        np.testing.assert_allclose(gen.main_values(), [6.0])
        assert gen(0.0) == pytest.approx(4.0)
        assert gen(0.1) == pytest.approx(4.0 / (1 - 0.6))
        assert gen.walks(2) == pytest.approx(144.0)

    def test_pole(self):
        gen = walk_gen_from_spectrum(eigen_symmetric(adjacency_matrix(gen_complete_uniform(4, 3))))
        with pytest.raises(PoleError):
            gen(1.0 / 6.0)

    def test_non_main_values_are_not_poles(self):
        gen = walk_gen_from_spectrum(eigen_symmetric(adjacency_matrix(gen_complete_uniform(4, 3))))
        assert gen(-0.5) == pytest.approx(1.0)


def test_sorted_difference():
    assert sorted_difference([1, 3, 2], [3.5, 1, 2]) == pytest.approx(0.5)
    with pytest.raises(DimensionError):
        sorted_difference([1], [1, 2])


def test_relabeling_keeps_the_spectrum(worked):
    moved = worked.relabeled([4, 2, 0, 3, 1])
    np.testing.assert_allclose(eigen_symmetric(seidel_matrix(moved)).values,
                               eigen_symmetric(seidel_matrix(worked)).values, atol=1e-10)


def test_expanded_spectrum(star43):
    spec = matrix_spectrum(adjacency_matrix(star43))
    np.testing.assert_allclose(spec.expanded(), [3, 1, 1, -1, -1, -1, -2], atol=1e-9)
