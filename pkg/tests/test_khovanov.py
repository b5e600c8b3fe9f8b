"""
Module provides tests to test the `khtight.khovanov` module
"""
import pytest

from khtight.braid_link import closure_diagram, parse_braid
from khtight.config import EngineLimits
from khtight.errors import InvariantError, ResourceLimitError
from khtight.homology_engine import HomologyTable, homology, ors_splitting
from khtight.khovanov import Flavor, Reduction, build_complex, build_cube, canonical_generators, \
    dump_complex, minimal_skein_generators, parse_dump_records, psi_chain, skein_level

from .utils import corpus_words


def test_trefoil_homology():
    d = closure_diagram(parse_braid("1,1,1"))
    reduced = homology(build_complex(d, Flavor.KHOVANOV_F2, Reduction.REDUCED))
    unreduced = homology(build_complex(d, Flavor.KHOVANOV_F2, Reduction.UNREDUCED))

    assert reduced == HomologyTable({(0, 2): 1, (2, 6): 1, (3, 8): 1})
    assert unreduced == HomologyTable({(0, 1): 1, (0, 3): 1, (2, 5): 1, (2, 7): 1,
                                       (3, 7): 1, (3, 9): 1})
    assert ors_splitting(unreduced, reduced)

    left = homology(build_complex(closure_diagram(parse_braid("-1,-1,-1"))))
    assert left == HomologyTable({(0, -2): 1, (-2, -6): 1, (-3, -8): 1})


def test_unknot_homology():
    reduced = homology(build_complex(closure_diagram(parse_braid("1"))))
    assert reduced == HomologyTable({(0, 0): 1})
    unreduced = homology(build_complex(closure_diagram(parse_braid("-1,2")),
                                       reduction=Reduction.UNREDUCED))
    assert unreduced == HomologyTable({(0, 1): 1, (0, -1): 1})


def test_cube():
    d = closure_diagram(parse_braid("1,1,1"))
    vertices = build_cube(d)
    assert len(vertices) == 8
    assert [v.state for v in vertices] == list(range(8))
    assert vertices[0].n_circles == 2
    assert vertices[7].n_circles == 3
    assert vertices[7].weight == 3

    with pytest.raises(ResourceLimitError):
        build_cube(d, EngineLimits(max_crossings=2))


def test_d_squared_and_filtration():
    for w in corpus_words()[:10]:
        d = closure_diagram(w)
        for flavor in Flavor:
            for reduction in Reduction:
                c = build_complex(d, flavor, reduction)
                c.check_d_squared()
                c.check_filtration()
                for k, targets in enumerate(c.differential):
                    for t in targets:
                        assert c.generators[t].a <= c.generators[k].a


def test_psi_grading():
    for w in corpus_words():
        c, psi = psi_chain(w, Reduction.REDUCED)
        assert len(psi) == 1
        assert psi.i == 0
        assert psi.q == w.self_linking() + 1
        assert len(c.apply(psi.ids)) == 0

        _, psi_unreduced = psi_chain(w, Reduction.UNREDUCED)
        assert psi_unreduced.q == w.self_linking()


def test_psi_minimal_skein_level():
    for text in ["1,1,1", "-1,2,1,1,1,2", "1,-2,1,-2"]:
        w = parse_braid(text)
        c, psi = psi_chain(w)
        level, ids = minimal_skein_generators(c)
        assert level == -w.strands
        assert frozenset(ids) == psi.ids
        assert all(skein_level(c.generators[k]) == level for k in ids)
        assert min(skein_level(g) for g in c.generators) == level


def test_canonical_generators():
    w = parse_braid("1,1,1")
    c, (g,) = canonical_generators(w, Reduction.REDUCED)
    assert len(c.apply(g.ids)) == 0
    _, psi = psi_chain(w)
    assert g.q == psi.q

    c, gens = canonical_generators(w, Reduction.UNREDUCED)
    assert len(gens) == 2
    for g in gens:
        assert len(c.apply(g.ids)) == 0

    khovanov = build_complex(closure_diagram(w))
    with pytest.raises(InvariantError):
        canonical_generators(w, c=khovanov)


def test_dump():
    c = build_complex(closure_diagram(parse_braid("1,1,1")))
    generators, arrows = parse_dump_records(dump_complex(c))
    assert len(generators) == len(c)
    for name, fields in generators.items():
        g = c.generators[int(name)]
        assert fields == {"i": g.i, "q": g.q, "a": g.a}
    assert sum(len(t) for t in arrows.values()) == sum(len(t) for t in c.differential)

    with pytest.raises(ValueError):
        parse_dump_records("g x i=0\nd x -> y\n")
    with pytest.raises(ValueError):
        parse_dump_records("generator x\n")


def test_resource_limits():
    d = closure_diagram(parse_braid("1,1,1,1,1"))
    with pytest.raises(ResourceLimitError):
        build_complex(d, limits=EngineLimits(max_crossings=4))
    with pytest.raises(ResourceLimitError):
        build_complex(d, limits=EngineLimits(generator_budget=8))
