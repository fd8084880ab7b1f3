import numpy as np
import pytest

from hyperseidel.families import gen_complete_uniform, gen_double_hyperstar, gen_hyperstar, hyperstar_blocks
from hyperseidel.hypergraph import Hypergraph, NotRegularError, StructureError
from hyperseidel.matrices import adjacency_matrix, seidel_matrix
from hyperseidel.structure import (
    CheckReport,
    Partition,
    quotient_matrix,
    sample_points,
    spectrum_containment,
    twin_classes,
    twin_eigenvector_check,
    verify_char_poly_identity,
    verify_multiplicity_transfer,
    verify_regular_identity,
)


@pytest.fixture
def points():
    return sample_points(20240611)


class TestPartition:
    def test_overlap(self):
        with pytest.raises(StructureError, match="blocks 0 and 1"):
            Partition.from_blocks([[0, 1], [1, 2]], 3)

    def test_missing(self):
        with pytest.raises(StructureError, match=r"\[2\]"):
            Partition.from_blocks([[0, 1]], 3)

    def test_empty_block(self):
        with pytest.raises(StructureError, match="empty"):
            Partition.from_blocks([[0, 1, 2], []], 3)

    def test_twin_classes(self, star43):
        assert twin_classes(star43).blocks == ((0,), (1, 2), (3, 4), (5, 6))

    def test_no_twins(self, worked):
        assert twin_classes(worked).sizes == [1, 1, 1, 1, 1]


class TestQuotient:
    def test_hyperstar_adjacency(self, star43):
        res = quotient_matrix(adjacency_matrix(star43), Partition.from_blocks(hyperstar_blocks(4, 3), 7))
        assert res.equitable
        assert res.as_int().tolist() == [[0, 6], [1, 1]]
        np.testing.assert_allclose(res.symmetrized(), res.symmetrized().T)

    def test_hyperstar_seidel_containment(self, star43):
        S = seidel_matrix(star43)
        res = quotient_matrix(S, Partition.from_blocks(hyperstar_blocks(4, 3), 7))
        assert res.as_int().tolist() == [[0, -6], [-1, 3]]
        assert spectrum_containment(res, S)

    def test_non_equitable_witness(self, worked):
        res = quotient_matrix(adjacency_matrix(worked), Partition.from_blocks([[0], [1, 2, 3, 4]], 5))
        assert not res.equitable
        assert res.witness == {"blocks": (1, 0), "rows": (1, 2), "sums": (2, 1)}
        with pytest.raises(StructureError):
            res.as_int()

    @pytest.mark.parametrize("i,j", [(0, 0), (0, 1), (1, 0), (1, 1)])
    def test_corrupted_quotient_is_not_contained(self, star43, i, j):
        S = seidel_matrix(star43)
        res = quotient_matrix(S, Partition.from_blocks(hyperstar_blocks(4, 3), 7))
        Q = res.as_float()
        Q[i, j] += 1
        assert not spectrum_containment(Q, S, sizes=res.sizes)

    def test_twin_quotient_of_double_hyperstar(self):
        H = gen_double_hyperstar(3, 2, 4)
        S = seidel_matrix(H)
        res = quotient_matrix(S, twin_classes(H))
        assert res.equitable
        assert spectrum_containment(res, S)

    def test_size_mismatch(self, star43):
        with pytest.raises(StructureError):
            quotient_matrix(adjacency_matrix(star43), Partition.singletons(3))


class TestIdentity:
    @pytest.mark.parametrize("H", [
        gen_hyperstar(4, 3),
        gen_complete_uniform(4, 3),
        Hypergraph(5, ((0, 1, 2), (1, 2, 3, 4), (0, 1, 3))),
        Hypergraph(4),
    ], ids=["hyperstar", "complete", "worked", "edgeless"])
    def test_holds(self, H, points):
        rep = verify_char_poly_identity(H, points)
        assert rep.passed, rep.to_dict()
        assert rep.points_used == 20

    def test_pole_is_skipped(self):
        rep = verify_char_poly_identity(gen_hyperstar(3, 2), [-1.0, 0.5])
        assert rep.points_used == 1
        assert rep.details["skipped_points"] == [-1.0]

    def test_regular(self, points):
        rep = verify_regular_identity(gen_complete_uniform(4, 3), 4, 3, 3, points + [0.0, 1.0, 4.0])
        assert rep.passed
        assert rep.max_rel_error < 1e-8

    def test_regular_rejects_irregular(self, star43, points):
        with pytest.raises(NotRegularError):
            verify_regular_identity(star43, 7, 3, 1, points)


def test_multiplicity_transfer(star43):
    rep = verify_multiplicity_transfer(star43, name="star")
    assert rep.passed
    assert rep.violations == 0
    triples = {round(t["lambda0"]): (t["m_p"], t["m_q"]) for t in rep.details["triples"]}
    assert triples == {1: (2, 2), -1: (3, 3)}


def test_twin_eigenvectors(star43):
    rep = twin_eigenvector_check(star43)
    assert rep.passed
    assert rep.details["twin_classes"] == 3


def test_sample_points_are_seeded():
    a = sample_points(7)
    assert a == sample_points(7)
    assert len(a) == 20
    assert all(-10.0 <= x < 10.0 for x in a)
    assert a != sample_points(8)


def test_report_dict_omits_empty_fields():
    assert CheckReport("main", "H", True).to_dict() == {"hypergraph": "H", "check": "main", "passed": True}
    d = CheckReport("energy", "H", False, violations=2, skipped=False).to_dict()
    assert d["violations"] == 2
    assert "skipped" not in d
