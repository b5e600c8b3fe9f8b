"""
Module provides tests to test the `khtight.classical_invariants` module
"""
import numpy as np
import pytest

from khtight.braid_link import closure_diagram, parse_braid
from khtight.errors import InvariantError
from khtight.homology_engine import HomologyTable, homology
from khtight.khovanov import build_complex
from khtight.classical_invariants import CollapseCheck, QACertificate, Thinness, \
    determinant, form_signature, goeritz, integer_determinant, qa_verify, rank_det_check, \
    recognize_braid_leaf, signature, thinness

from .utils import E125, E130, E141, corpus_words, member


def test_determinant_families():
    for r in range(9):
        assert determinant(closure_diagram(member(E125, r))) == r + 6
    for r in range(7):
        assert determinant(closure_diagram(member(E141, r))) == 9 + 3 * r
    for r in range(6):
        assert determinant(closure_diagram(member(E130, r))) == 14 + r

    assert determinant(closure_diagram(parse_braid("1,-2,1,-2"))) == 5
    assert determinant(closure_diagram(parse_braid("1"))) == 1


def test_coloring_independence():
    for w in corpus_words():
        d = closure_diagram(w)
        assert determinant(d, 0) == determinant(d, 1)
        if d.is_knot:
            assert signature(d, 0) == signature(d, 1)

    with pytest.raises(ValueError):
        goeritz(closure_diagram(parse_braid("1,1,1")), 2)


def test_signature():
    assert signature(closure_diagram(parse_braid("1,1,1"))) == 2
    assert signature(closure_diagram(parse_braid("-1,-1,-1"))) == -2
    assert signature(closure_diagram(parse_braid("1,-2,1,-2"))) == 0
    assert signature(closure_diagram(parse_braid("1,1,1,1,1"))) == 4

    for r in (5, 7):
        assert signature(closure_diagram(member(E125, r))) == 3 - r
    for r in (4, 6):
        assert signature(closure_diagram(member(E141, r))) == 4 - r


def test_matrix_helpers():
    assert integer_determinant(np.zeros((0, 0))) == 1
    assert integer_determinant(np.array([[2, 1], [1, 2]])) == 3
    assert form_signature(np.array([[-2, 1], [1, -2]])) == -2
    assert form_signature(np.array([[0, 1], [1, 0]])) == 0
    with pytest.raises(ValueError):
        form_signature(np.array([[0, 1], [0, 0]]))


def test_thinness():
    w = member(E125, 5)
    d = closure_diagram(w)
    table = homology(build_complex(d))
    sigma = signature(d)
    assert sigma == -2
    assert table.diagonals() == {-2}
    assert table.total_rank == 11
    assert thinness(table, sigma) == Thinness.THIN
    assert rank_det_check(table, determinant(d)) == CollapseCheck.COLLAPSE_CERTIFIED

    thick = HomologyTable({(0, 0): 1, (1, 4): 1})
    assert thinness(thick, 0) == Thinness.NOT_THIN
    assert rank_det_check(thick, 5) == CollapseCheck.UNKNOWN
    with pytest.raises(InvariantError):
        rank_det_check(thick, 0)


def test_recognize_braid_leaf():
    assert recognize_braid_leaf(parse_braid("1,1,1")) == ("T(2,3)", 3)
    assert recognize_braid_leaf(parse_braid("2,1,1,1,2")) == ("T(2,3)#T(2,2)", 6)
    assert recognize_braid_leaf(member(E130, 0)) is not None
    assert recognize_braid_leaf(parse_braid("1,-2,1,-2")) is None


def test_qa_verify():
    certificate = qa_verify(member(E125, 1))
    assert certificate.depth == 1
    assert certificate.root.det == 7
    assert certificate.is_consistent()
    assert QACertificate.from_dict(certificate.to_dict()) == certificate

    certificate = qa_verify(member(E125, 3), "last_negative")
    assert certificate.depth == 3
    assert certificate.is_consistent()
    for node in certificate.leaves():
        assert node.leaf is not None

    with pytest.raises(InvariantError):
        qa_verify(parse_braid("1,-2,1,-2"))
    with pytest.raises(ValueError):
        qa_verify(member(E125, 1), "no_such_strategy")
