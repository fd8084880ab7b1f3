import math

import numpy as np
import pytest

from hyperseidel.closed_forms import (
    FactoredPoly,
    closed_forms_for,
    complete_uniform_adjacency,
    complete_uniform_regularity,
    complete_uniform_seidel,
    double_hyperstar_adjacency,
    double_hyperstar_adjacency_quotient,
    double_hyperstar_order,
    double_hyperstar_seidel,
    double_hyperstar_seidel_quotient,
    hyperstar_adjacency,
    hyperstar_energy_monotone_in_k,
    hyperstar_main_seidel,
    hyperstar_seidel,
    hyperstar_seidel_energy,
    regular_seidel_closed_form,
    regular_seidel_from_adjacency,
    regular_walk_count,
    sunflower_adjacency,
    sunflower_adjacency_cubic,
    sunflower_char_poly,
    sunflower_seidel,
    sunflower_seidel_cubic,
    sunflower_seidel_quotient,
    sunflower_seidel_quotient_printed,
)
from hyperseidel.families import (
    gen_complete_uniform,
    gen_double_hyperstar,
    gen_hyperstar,
    gen_sunflower,
)
from hyperseidel.hypergraph import NotRegularError, ParameterError
from hyperseidel.matrices import adjacency_matrix, char_poly_coeffs, seidel_matrix
from hyperseidel.models import Rational
from hyperseidel.spectra import char_poly_eval, eigen_symmetric, seidel_energy, sorted_difference
from hyperseidel.structure import quotient_eigenvalues


def _numeric(M):
    return eigen_symmetric(M).values


class TestHyperstar:
    @pytest.mark.parametrize("n,k", [(3, 2), (3, 4), (4, 3), (5, 2), (5, 5)])
    def test_spectra(self, n, k):
        H = gen_hyperstar(n, k)
        assert sorted_difference(hyperstar_adjacency(n, k).values(), _numeric(adjacency_matrix(H))) < 1e-9
        assert sorted_difference(hyperstar_seidel(n, k).values(), _numeric(seidel_matrix(H))) < 1e-9

    def test_small_adjacency(self):
        form = hyperstar_adjacency(3, 4)
        np.testing.assert_allclose(form.values(), [1 + math.sqrt(7), 2, -1, -1, -1, -1, 1 - math.sqrt(7)])

    def test_main_seidel(self):
        r1, r2 = hyperstar_main_seidel(4, 3)
        assert r1.value == pytest.approx((3 + math.sqrt(33)) / 2)
        assert r2.value == pytest.approx((3 - math.sqrt(33)) / 2)

    @pytest.mark.parametrize("n,k,expected", [(4, 3, 9 + math.sqrt(33)), (3, 2, 4.0), (6, 2, 10.0)])
    def test_energy(self, n, k, expected):
        assert hyperstar_seidel_energy(n, k) == pytest.approx(expected)
        assert seidel_energy(gen_hyperstar(n, k)) == pytest.approx(expected, abs=1e-9)

    def test_energy_grows_with_k(self):
        assert all(hyperstar_energy_monotone_in_k(n, k) for n in range(3, 7) for k in range(3, 7))

    def test_bounds(self):
        with pytest.raises(ParameterError):
            hyperstar_seidel(2, 3)
        with pytest.raises(ParameterError):
            hyperstar_energy_monotone_in_k(4, 2)


class TestRegular:
    def test_transform(self):
        assert regular_seidel_from_adjacency([6.0, -2.0, -2.0, -2.0], 4, 3, 3) == [-9.0, 3.0, 3.0, 3.0]

    def test_transform_rejects_wrong_perron(self):
        with pytest.raises(NotRegularError):
            regular_seidel_from_adjacency([5.0, -2.0], 4, 3, 3)

    @pytest.mark.parametrize("n,r", [(4, 3), (5, 3), (6, 2), (6, 6)])
    def test_exact_transform_of_complete(self, n, r):
        k, deg = complete_uniform_regularity(n, r)
        mapped = regular_seidel_closed_form(complete_uniform_adjacency(n, r), n, k, deg)
        direct = complete_uniform_seidel(n, r)
        assert sorted((d.root.exact(), d.multiplicity) for d in mapped.descriptors) == sorted(
            (d.root.exact(), d.multiplicity) for d in direct.descriptors)
        assert mapped.name == f"S(complete({n},{r}))"

    def test_exact_transform_needs_perron(self):
        with pytest.raises(NotRegularError):
            regular_seidel_closed_form(complete_uniform_adjacency(4, 3), 4, 3, 2)

    def test_walk_count(self):
        assert regular_walk_count(4, 3, 3, 3) == 864


class TestComplete:
    @pytest.mark.parametrize("n,r", [(3, 2), (4, 3), (5, 3), (6, 6)])
    def test_spectra(self, n, r):
        H = gen_complete_uniform(n, r)
        assert sorted_difference(complete_uniform_adjacency(n, r).values(), _numeric(adjacency_matrix(H))) < 1e-9
        assert sorted_difference(complete_uniform_seidel(n, r).values(), _numeric(seidel_matrix(H))) < 1e-9

    def test_regularity(self):
        assert complete_uniform_regularity(4, 3) == (3, 3)
        assert complete_uniform_regularity(6, 2) == (2, 5)


class TestDoubleHyperstar:
    @pytest.mark.parametrize("n1,n2,k", [(2, 2, 3), (3, 3, 3), (2, 4, 4), (3, 2, 5)])
    def test_spectra(self, n1, n2, k):
        H = gen_double_hyperstar(n1, n2, k)
        assert H.n == double_hyperstar_order(n1, n2, k)
        adj = double_hyperstar_adjacency(n1, n2, k)
        sei = double_hyperstar_seidel(n1, n2, k)
        assert sorted_difference(adj.values(), _numeric(adjacency_matrix(H))) < 1e-8
        assert sorted_difference(sei.values(), _numeric(seidel_matrix(H))) < 1e-8

    def test_multiplicities(self):
        form = double_hyperstar_adjacency(3, 3, 3)
        rational = {d.root.exact(): d.multiplicity for d in form.descriptors if isinstance(d.root, Rational)}
        assert rational == {-1: 4, 1: 2}
        assert form.order == 11

    def test_quotients(self):
        QA = double_hyperstar_adjacency_quotient(3, 3, 3)
        QS = double_hyperstar_seidel_quotient(3, 3, 3)
        assert QA.shape == QS.shape == (5, 5)
        sizes = [1, 4, 1, 4, 1]
        numeric = _numeric(seidel_matrix(gen_double_hyperstar(3, 3, 3)))
        for q in quotient_eigenvalues(QS, sizes):
            assert np.min(np.abs(numeric - q)) < 1e-8
        assert len(char_poly_coeffs(QA)) == 6

    def test_bounds(self):
        with pytest.raises(ParameterError):
            double_hyperstar_seidel(2, 2, 2)


class TestSunflower:
    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_spectra(self, k):
        H = gen_sunflower(k)
        assert sorted_difference(sunflower_adjacency(k).values(), _numeric(adjacency_matrix(H))) < 1e-9
        assert sorted_difference(sunflower_seidel(k).values(), _numeric(seidel_matrix(H))) < 1e-9

    def test_cubics(self):
        assert sunflower_adjacency_cubic(3) == (1, -2, -3, 2)
        assert sunflower_seidel_cubic(3) == (1, 0, -7, -2)
        assert sunflower_seidel_cubic(2) == (1, 0, -3, -2)

    def test_seidel_surds(self):
        form = sunflower_seidel(4)
        surds = sorted(d.value for d in form.descriptors if d.kind == "surd")
        np.testing.assert_allclose(surds, [-2 - math.sqrt(21), -2 + math.sqrt(21)])

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_factored_char_poly(self, k):
        poly = sunflower_char_poly(k)
        assert poly.leading == (-1) ** (k - 2)
        assert len(poly.expand()) == k * (k - 1) + 2
        A = adjacency_matrix(gen_sunflower(k))
        for x in (-2.3, 0.7, 1.9):
            assert poly.monic_evaluate(x) == pytest.approx(char_poly_eval(A, x), rel=1e-9)

    @pytest.mark.parametrize("k", [3, 4, 6])
    def test_printed_seidel_quotient(self, k):
        printed = sunflower_seidel_quotient_printed(k)
        assert (printed == sunflower_seidel_quotient(k)).all()
        assert char_poly_coeffs(printed) == list(sunflower_seidel_cubic(k))


def test_factored_poly_expand():
    poly = FactoredPoly((((1, 1), 2), ((1, -2), 1)))
    assert poly.expand() == [1, 0, -3, -2]
    assert poly.evaluate(2.0) == 0.0


class TestDispatch:
    def test_hyperstar(self):
        forms = closed_forms_for("hyperstar", {"n": 4, "k": 3})
        assert set(forms) == {"adjacency", "seidel"}

    @pytest.mark.parametrize("family,params", [
        ("hyperstar", {"n": 2, "k": 3}),
        ("power", {"k": 3, "base_n": 3}),
        (None, {}),
        ("sunflower", {}),
    ])
    def test_none(self, family, params):
        assert closed_forms_for(family, params) == {}
