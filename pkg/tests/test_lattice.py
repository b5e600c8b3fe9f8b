"""
Module provides tests to test the `khtight.lattice` module
"""
import numpy as np
import pytest

from khtight.errors import InvariantError
from khtight.lattice import E125_PLUMBING, E141_PLUMBING, Embedding, GramLattice, \
    Obstruction, canonical_form, complement_basis, enumerate_embeddings, integer_kernel, \
    orthogonal_complement, parity_obstruction, plumbing_gram, reduce_form, standard_product


E125_VECTORS = [[-1, 0, -1, 0, 1, 0, 0, 0],
                [-1, 0, 1, 0, 0, 0, 0, 0],
                [1, 1, 0, 0, 0, 0, 0, 0],
                [0, -1, 0, 1, 0, 0, 0, 0],
                [0, 0, 0, -1, 0, 1, 0, 0],
                [0, 0, 0, 0, 0, -1, 1, 0],
                [0, 0, 0, 0, 0, 0, -1, 1]]

E141_VECTORS = [[-1, 0, -1, 0, 1, 0, 0, 0, 0, 0],
                [-1, 0, 1, 1, 0, 0, 0, 0, 0, 0],
                [1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
                [0, -1, 0, 0, 0, 1, 0, 0, 0, 0],
                [0, 0, 0, 0, 0, -1, 1, 0, 0, 0],
                [0, 0, 0, 0, 0, 0, -1, 1, 0, 0],
                [0, 0, 0, 0, 0, 0, 0, -1, 1, 0],
                [0, 0, 0, 0, 0, 0, 0, 0, -1, 1]]


def _padded(vectors: list, n: int) -> np.ndarray:
    vectors = np.array(vectors, dtype=np.int64)
    return np.hstack([vectors, np.zeros((vectors.shape[0], n - vectors.shape[1]),
                                        dtype=np.int64)])


def test_gram_lattice():
    assert E125_PLUMBING.rank == 7
    assert E125_PLUMBING.labels[0] == "v1"
    assert E125_PLUMBING.determinant() == -11
    assert E141_PLUMBING.determinant() == 27
    assert str(GramLattice(np.diag([-11, -1]))) == "<-11> + <-1>"
    assert GramLattice.from_dict(E125_PLUMBING.to_dict()) == E125_PLUMBING

    with pytest.raises(ValueError):
        GramLattice(np.array([[-2, 1], [0, -2]]))
    with pytest.raises(ValueError):
        GramLattice(np.array([[-1, 2], [2, -1]]))
    with pytest.raises(ValueError):
        plumbing_gram([-2, -2], [(0, 0)])
    with pytest.raises(ValueError):
        GramLattice(np.diag([-1, -1]), ["a"])


def test_embedding():
    e = Embedding(E125_PLUMBING, np.array(E125_VECTORS))
    assert e.n == 8
    assert e.images()["v3"] == "e1+e2"
    assert e.images()["v1"] == "-e1-e3+e5"
    assert standard_product(E125_VECTORS[0], E125_VECTORS[2]) == 1

    rng = np.random.default_rng(3)
    for _ in range(10):
        signs = rng.choice([-1, 1], size=8)
        moved = np.array(E125_VECTORS)[:, rng.permutation(8)] * signs
        assert canonical_form(moved) == e.canonical()
        assert Embedding(E125_PLUMBING, moved) == e

    with pytest.raises(ValueError):
        Embedding(E125_PLUMBING, np.array(E125_VECTORS[:6]))
    with pytest.raises(ValueError):
        Embedding(E125_PLUMBING, -np.eye(7, 8, dtype=np.int64))


def test_enumerate_e125():
    (e,) = enumerate_embeddings(E125_PLUMBING, 8)
    assert e == Embedding(E125_PLUMBING, np.array(E125_VECTORS))
    assert enumerate_embeddings(E125_PLUMBING, 6) == []

    forced = {"v3": [1, 1, 0, 0, 0, 0, 0, 0], "v2": [-1, 0, 1, 0, 0, 0, 0, 0],
              "v1": [0, -1, 0, 1, 1, 0, 0, 0], "v4": [-1, 0, -1, 0, 0, 0, 0, 0]}
    assert enumerate_embeddings(E125_PLUMBING, 8, forced) == []

    forced = {"v3": [1, 1, 0, 0, 0, 0, 0, 0], "v2": [1, 1, 0, 0, 0, 0, 0, 0]}
    assert enumerate_embeddings(E125_PLUMBING, 8, forced) == []
    with pytest.raises(ValueError):
        enumerate_embeddings(E125_PLUMBING, 8, {"v9": [0] * 8})


def test_enumerate_e141():
    (e,) = enumerate_embeddings(E141_PLUMBING, 10)
    assert e == Embedding(E141_PLUMBING, np.array(E141_VECTORS))


def test_integer_kernel():
    kernel = integer_kernel(np.array([[1, 1, 0], [0, 1, 1]]))
    assert kernel.shape == (3, 1)
    assert abs(kernel[:, 0]).tolist() == [1, 1, 1]
    assert integer_kernel(np.eye(3, dtype=np.int64)).shape == (3, 0)

    # rational null space scaled to integers spans an index 2 sublattice here
    kernel = integer_kernel(np.array([[2, 1, 1]]))
    assert kernel.shape == (3, 2)
    assert not (np.array([[2, 1, 1]]) @ kernel).any()
    minors = [round(np.linalg.det(kernel[[a, b], :])) for a, b in [(0, 1), (0, 2), (1, 2)]]
    assert np.gcd.reduce(np.abs(minors)) == 1

    basis = reduce_form(np.array([[1, 1], [0, 1], [0, 0]]))
    assert sorted(int(b @ b) for b in basis.T) == [1, 1]


def test_complement_e125():
    e = Embedding(E125_PLUMBING, np.array(E125_VECTORS))
    complement = orthogonal_complement(e)
    assert complement.diagonal() == (-11,)
    (generator,) = complement_basis(e).T
    assert abs(generator).tolist() == [1, 1, 1, 1, 2, 1, 1, 1]
    assert np.all(np.array(E125_VECTORS) @ generator == 0)

    (found,) = enumerate_embeddings(E125_PLUMBING, 8)
    assert orthogonal_complement(found).diagonal() == (-11,)

    for n in (9, 10, 11):
        padded = Embedding(E125_PLUMBING, _padded(E125_VECTORS, n))
        complement = orthogonal_complement(padded)
        assert complement.is_diagonal()
        assert complement.diagonal() == (-11,) + (-1,) * (n - 8)


def test_complement_e141():
    e = Embedding(E141_PLUMBING, np.array(E141_VECTORS))
    complement = orthogonal_complement(e)
    assert complement.is_diagonal()
    assert complement.diagonal() == (-9, -3)
    assert abs(complement.determinant()) == 27


def test_trivial_complement():
    g = GramLattice(-np.eye(3, dtype=np.int64))
    e = Embedding(g, np.eye(3, dtype=np.int64))
    complement = orthogonal_complement(e)
    assert complement.rank == 0
    assert parity_obstruction(complement, 1).status == Obstruction.NOT_OBSTRUCTED


def test_parity_obstruction():
    result = parity_obstruction(GramLattice(np.diag([-11])), 11)
    assert result.status == Obstruction.OBSTRUCTED
    assert result.forces_d3_zero
    assert result.odd == (0,)

    result = parity_obstruction(GramLattice(np.diag([-9, -3])), 27)
    assert result.status == Obstruction.OBSTRUCTED
    assert result.to_dict()["odd"] == [0, 1]

    result = parity_obstruction(GramLattice(np.diag([-2, -4])), 3)
    assert result.status == Obstruction.NOT_OBSTRUCTED
    assert not result.forces_d3_zero

    assert parity_obstruction(GramLattice(np.diag([-3])), 2).status == \
        Obstruction.NOT_OBSTRUCTED

    with pytest.raises(ValueError):
        parity_obstruction(GramLattice(np.diag([-3])), 0)
    with pytest.raises(InvariantError):
        parity_obstruction(E125_PLUMBING, 11)
