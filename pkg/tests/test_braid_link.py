"""
Module provides tests to test the `khtight.braid_link` module
"""
import pytest

from khtight.braid_link import BraidWord, closure_diagram, expand_template, family_word, \
    oriented_resolution, oriented_smoothing, parse_braid, trace_resolution
from khtight.errors import BraidParseError

from .utils import E125, E130, E141, corpus_words, member


def test_parse_braid():
    w = parse_braid("-1,-1,2,1,1,1,2")
    assert w.strands == 3
    assert w.letters == (-1, -1, 2, 1, 1, 1, 2)
    assert w.to_text() == "-1,-1,2,1,1,1,2"
    assert parse_braid("1 1 1") == parse_braid("1,1,1")
    assert parse_braid("1", strands=4).strands == 4
    assert parse_braid("", strands=2) == BraidWord(2)

    with pytest.raises(BraidParseError):
        parse_braid("1,x")
    with pytest.raises(BraidParseError):
        parse_braid("1,0")
    with pytest.raises(BraidParseError):
        parse_braid("3", strands=3)
    with pytest.raises(BraidParseError):
        parse_braid("")
    with pytest.raises(TypeError):
        BraidWord(2.5, [1])


def test_templates():
    assert expand_template(E125, 3) == "-1,-1,-1,2,1,1,1,2"
    assert expand_template("1*2,-2", 7) == "1,1,-2"
    assert family_word(E125, 0) == BraidWord(3, [2, 1, 1, 1, 2])
    assert family_word(E130, 0).strands == 4
    with pytest.raises(BraidParseError):
        expand_template("-1*{s},2", 1)
    with pytest.raises(ValueError):
        expand_template(E125, -1)


def test_self_linking():
    for r in range(9):
        assert member(E125, r).self_linking() == 2 - r
    for r in range(7):
        assert member(E141, r).self_linking() == 3 - r
    for r in range(6):
        assert member(E130, r).self_linking() == 2 - r

    w = parse_braid("1,-2,1,-2")
    assert w.writhe() == 0
    assert w.mirror().letters == (-1, 2, -1, 2)


def test_word_operations():
    w = parse_braid("-1,2,1,1,1,2")
    assert w.rotate(1).letters == (2, 1, 1, 1, 2, -1)
    assert w.rotate(7) == w.rotate(1)
    assert w.delete_letter(0) == member(E125, 0)
    stabilized = parse_braid("1,1,1").stabilize()
    assert stabilized.strands == 3 and stabilized.letters == (1, 1, 1, 2)
    assert stabilized.self_linking() == parse_braid("1,1,1").self_linking()
    with pytest.raises(ValueError):
        w.delete_letter(6)


def test_closure_diagram():
    d = closure_diagram(parse_braid("1,1,1"))
    assert d.n_crossings == 3
    assert d.n_positive == 3 and d.n_negative == 0
    assert d.is_knot
    assert d.marked_edge == 0
    assert d.seam_edges == frozenset({0, 1})

    assert closure_diagram(parse_braid("1,1")).n_components == 2
    assert closure_diagram(member(E125, 4)).n_components == 2
    assert closure_diagram(member(E125, 5)).is_knot
    assert closure_diagram(BraidWord(3)).n_components == 3

    for w in corpus_words():
        d = closure_diagram(w)
        assert d.writhe() == w.writhe()
        assert d.euler_characteristic() == 2 * d.pieces
        for crossing in d.pd:
            assert len(crossing) == 4


def test_oriented_resolution():
    for w in corpus_words():
        resolution = oriented_resolution(w)
        assert resolution.n_circles == w.strands
        assert all(resolution.axis_linking)

    d = closure_diagram(parse_braid("1,1,1"))
    assert trace_resolution(d, 0b111).n_circles == 2
    assert oriented_smoothing(1) == 0 and oriented_smoothing(-1) == 1


def test_smooth():
    d = closure_diagram(parse_braid("1,1,1"))
    oriented = d.smooth(0, oriented_smoothing(d.signs[0]))
    assert oriented.n_crossings == 2
    assert oriented.n_components == 2
    assert abs(oriented.writhe()) == 2

    other = d.smooth(0, 1)
    assert other.n_crossings == 2
    assert other.is_knot
    with pytest.raises(ValueError):
        d.smooth(3, 0)
