"""
Module provides tests to test the `khtight.filtered` module
"""
import os
import numpy as np
import pytest

from khtight.braid_link import closure_diagram, parse_braid
from khtight.errors import InvariantError
from khtight.filtered import BiFilteredComplex, FilteredGenerator, Filtration, \
    cancel_reduce, from_cube_complex, homology_levels, pages, parse_bifiltered, \
    random_bifiltered
from khtight.homology_engine import GF2Eliminator
from khtight.khovanov import build_complex, dump_complex

from .utils import get_temp_folder


TOY = """
# x -> y + z
g x i=0 a=0
g y i=1 a=-2
g z i=2 a=-1
d x -> y,z
"""


def test_parse():
    c = parse_bifiltered(TOY)
    assert len(c) == 3
    assert c.targets("x") == ["y", "z"]
    assert c.differential() == {"x": ["y", "z"]}
    assert c.respects_a()
    assert parse_bifiltered(c.to_text()) == c

    # repeated targets cancel
    c = parse_bifiltered("g x i=0 a=0\ng y i=1 a=0\nd x -> y\nd x -> y\n")
    assert c.differential() == {}

    with pytest.raises(ValueError):
        parse_bifiltered("g x i=0\n")
    with pytest.raises(ValueError):
        parse_bifiltered("g x i=0 a=0\ng x i=1 a=0\n")
    with pytest.raises(ValueError):
        parse_bifiltered("g x i=0 a=0\nd x -> x\n")


def test_invalid_complexes():
    with pytest.raises(InvariantError):
        parse_bifiltered("g x i=0 a=0\ng y i=1 a=0\ng z i=2 a=0\nd x -> y\nd y -> z\n")
    with pytest.raises(InvariantError):
        parse_bifiltered("g x i=1 a=0\ng y i=0 a=0\nd x -> y\n")
    with pytest.raises(TypeError):
        BiFilteredComplex(["x"])

    increasing = parse_bifiltered("g x i=0 a=0\ng y i=1 a=2\nd x -> y\n")
    assert not increasing.respects_a()
    with pytest.raises(InvariantError):
        pages(increasing)
    with pytest.raises(InvariantError):
        homology_levels(increasing)
    with pytest.raises(ValueError):
        pages(parse_bifiltered(TOY), r_max=-1)


def test_pages_lost_class(monkeypatch):
    class Forgetful(GF2Eliminator):
        def reduce(self, v: int, combo: int = 0) -> tuple[int, int]:
            return v, combo

    monkeypatch.setattr("khtight.filtered.spectral.GF2Eliminator", Forgetful)
    with pytest.raises(InvariantError):
        pages(parse_bifiltered(TOY), Filtration.I, r_max=1)


def test_toy_spectral_sequence():
    c = parse_bifiltered(TOY)
    sequence = pages(c, Filtration.I, r_max=3)

    e1 = sequence[1]
    assert e1.dimension == 3
    assert e1.image("x") == [("y",)]
    assert e1.rank == 1

    e2 = sequence[2]
    assert e2.dimension == 1
    (survivor,) = e2.classes
    assert survivor.representative == ("z",)
    assert survivor.degree == 2
    assert survivor.level == -1
    assert sequence[3].dimension == 1

    assert sequence.homology.filtration == Filtration.A
    assert sequence.homology.rank == 1
    assert sequence.homology.levels == (-2,)
    assert homology_levels(c, Filtration.I).levels == (2,)

    data = sequence.to_dict()
    assert data["homology"]["levels"] == [-2]
    assert len(data["pages"]) == 4


def test_empty_complex():
    c = BiFilteredComplex([])
    sequence = pages(c, "A")
    assert all(page.dimension == 0 for page in sequence.pages)
    assert sequence.homology.rank == 0


def test_single_generator():
    c = BiFilteredComplex([FilteredGenerator("x", 3, 1)])
    for filtration in Filtration:
        sequence = pages(c, filtration)
        assert sequence[0].dimension == 1
        assert sequence.homology.rank == 1
    assert homology_levels(c).levels == (3,)


def test_cancel_reduce():
    c = parse_bifiltered("g x i=0 a=0\ng y i=0 a=0\ng z i=1 a=-1\nd x -> y,z\n")
    reduced = cancel_reduce(c)
    assert len(reduced) == 1
    assert reduced.generators[0].name == "z"

    toy = parse_bifiltered(TOY)
    assert cancel_reduce(toy) == toy


def _signature(c: BiFilteredComplex) -> list:
    result = []
    for filtration in Filtration:
        sequence = pages(c, filtration, r_max=4)
        result.append([page.bigraded_dims for page in sequence.pages])
        result.append(sequence.homology.levels)
    return result


def test_random_complexes():
    rng = np.random.default_rng(1234)
    for _ in range(200):
        c = random_bifiltered(rng, int(rng.integers(0, 31)))
        assert c.respects_a()
        reduced = cancel_reduce(c)
        assert len(reduced) <= len(c)
        for g in reduced.generators:
            for t in reduced.targets(g.name):
                target = reduced.generators[reduced.index(t)]
                assert (target.a, target.i) != (g.a, g.i)
        assert _signature(reduced) == _signature(c)


def test_random_pages_monotone():
    for seed in range(20):
        c = random_bifiltered(seed, 20)
        for filtration in Filtration:
            sequence = pages(c, filtration, r_max=4)
            dimensions = [page.dimension for page in sequence.pages]
            assert all(a >= b for a, b in zip(dimensions, dimensions[1:]))
            for page, following in zip(sequence.pages, sequence.pages[1:]):
                assert page.dimension - 2 * page.rank == following.dimension
            assert dimensions[-1] == sequence.homology.rank


def test_khovanov_import():
    kh = build_complex(closure_diagram(parse_braid("1,1,1")))
    c = from_cube_complex(kh)
    assert len(c) == len(kh)
    assert c.respects_a()

    file_path = os.path.join(get_temp_folder(), "trefoil.txt")
    with open(file_path, "w") as f:
        f.write(dump_complex(kh))
    with open(file_path, "r") as f:
        assert parse_bifiltered(f.read()) == c

    reduced = cancel_reduce(c)
    assert _signature(reduced) == _signature(c)

    sequence = pages(c, Filtration.I)
    assert sequence[0].rank == 0
    assert sequence[2].dimension == 3
    assert sequence.homology.rank == 3
    assert pages(c, Filtration.A).pages[-1].dimension == 3
