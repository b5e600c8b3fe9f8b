"""
Module provides tests to test the `khtight.surgery` module
"""
import json
import numpy as np
import pytest
import sympy

from khtight.braid_link import closure_diagram, parse_braid
from khtight.classical_invariants import determinant
from khtight.errors import InvariantError
from khtight.lattice import Obstruction, ParityResult
from khtight.surgery import D3Result, Fillability, SurgeryComponent, SurgeryDiagram, \
    braid_to_surgery, d3, fillability_verdict, free_reduce, h1_order, intersection_form, \
    lift_word, linking_number

from .utils import E125, E130, E141, member


def test_component():
    c = SurgeryComponent(-1, 0, -1)
    assert c.framing == -2
    assert c.to_dict() == {"tb": -1, "rot": 0, "coeff": -1}
    with pytest.raises(ValueError):
        SurgeryComponent(-1, 0, 2)
    with pytest.raises(ValueError):
        SurgeryComponent(-1, 1, 1)
    with pytest.raises(TypeError):
        SurgeryComponent(-1.0, 0, 1)


def test_diagram_validation():
    component = SurgeryComponent(-1, 0, -1)
    with pytest.raises(ValueError):
        SurgeryDiagram([component, component], [[-2, 1], [0, -2]])
    with pytest.raises(ValueError):
        SurgeryDiagram([component], [[-1]])
    with pytest.raises(TypeError):
        SurgeryDiagram(["x"], [[-2]])

    linking = np.array([[-2]])
    s = SurgeryDiagram([component], linking)
    linking[0, 0] = 5
    assert s.linking[0, 0] == -2
    with pytest.raises(ValueError):
        s.linking[0, 0] = 1


def test_lift_word():
    assert free_reduce([1, -1, 2, -2, 3]) == [3]
    assert free_reduce([1, 2, -2, -1]) == []
    assert lift_word(parse_braid("1,1,1,2")) == (1, 1)
    assert lift_word(member(E125, 5)) == (1, 1, 2, -1, -1, -1, -1, -1)
    with pytest.raises(ValueError):
        lift_word(parse_braid("1,1,1"))

    letters = (1, 2, 1, -1)
    assert linking_number(letters, 0, 2) == -1
    assert linking_number(letters, 1, 2) == 1
    assert linking_number(letters, 0, 1) == 0


def test_braid_to_surgery():
    s = braid_to_surgery(parse_braid("1,1,1"))
    assert s.letters == (1, 1, 1)
    assert all(c.coeff == -1 for c in s.components)
    assert s.m == 0
    assert np.array_equal(s.handles, [[1, 1, 1]])
    assert np.array_equal(s.linking, [[-2, -1, -1], [-1, -2, -1], [-1, -1, -2]])

    s = braid_to_surgery(member(E125, 5))
    assert len(s) == 10
    assert s.m == 5
    assert s.handles.shape == (2, 10)
    assert all(c.tb == -1 and c.rot == 0 for c in s.components)
    assert str(s) == "surgery diagram: 10 components, m = 5, 2 one-handles"

    with pytest.warns(UserWarning):
        s = braid_to_surgery(parse_braid("1,1,1"), relative=True)
    assert s.letters == (1, 1)
    assert s.handles.shape == (0, 2)
    assert np.array_equal(s.linking, [[-2, -1], [-1, -2]])
    with pytest.raises(ValueError):
        braid_to_surgery(parse_braid("1,1,1"), stabilize=False, relative=True)

    s = braid_to_surgery(member(E125, 5), relative=True)
    assert len(s) == 8
    assert s.m == 5
    assert str(s) == "surgery diagram: 8 components, m = 5"


def test_diagram_handles():
    component = SurgeryComponent(-1, 0, -1)
    with pytest.raises(ValueError):
        SurgeryDiagram([component], [[-2]], handles=[[1, 1]])

    s = SurgeryDiagram([component, component], [[-2, 0], [0, -2]], handles=[[1, 1]])
    _, gram = intersection_form(s)
    assert gram.tolist() == [[-4]]
    assert h1_order(s) == 4
    result = d3(s)
    assert result.chi == 2
    assert result.sign == -1
    with pytest.raises(ValueError):
        s.handles[0, 0] = 2

    loose = SurgeryDiagram([component], [[-2]], handles=[[0]])
    assert h1_order(loose) == 0
    with pytest.raises(InvariantError):
        d3(loose)


def test_d3_examples():
    s = SurgeryDiagram([SurgeryComponent(-1, 0, -1)], [[-2]])
    result = d3(s)
    assert result.d3 == sympy.Rational(1, 4)
    assert result.h1_order == 2
    assert d3(braid_to_surgery(parse_braid("2,1,2"))).d3 == sympy.Rational(1, 4)

    result = d3(braid_to_surgery(parse_braid("1,1,1")))
    assert result.d3 == sympy.Rational(1, 2)
    assert result.h1_order == 3
    assert result.sign == -2
    with pytest.warns(UserWarning):
        relative = d3(braid_to_surgery(parse_braid("1,1,1"), relative=True))
    assert relative.d3 == result.d3

    empty = SurgeryDiagram([], [])
    assert h1_order(empty) == 1
    assert d3(empty).d3 == 0

    s = SurgeryDiagram([SurgeryComponent(-2, 1, -1)], [[-3]])
    result = d3(s)
    assert result.c1_sq == sympy.Rational(-1, 3)
    assert result.d3 == sympy.Rational(1, 6)
    assert d3(s.reversed_component(0)).d3 == result.d3

    singular = SurgeryDiagram([SurgeryComponent(-1, 0, 1)], [[0]])
    assert h1_order(singular) == 0
    with pytest.raises(InvariantError):
        d3(singular)


def test_d3_families():
    result = d3(braid_to_surgery(member(E125, 5)))
    assert result.d3 == sympy.Rational(-1, 2)
    assert result.c1_sq == 0
    assert result.sign == 2
    assert result.m == 5
    assert result.h1_order == 11

    assert d3(braid_to_surgery(member(E141, 4))).d3 == 0
    result = d3(braid_to_surgery(member(E141, 6)))
    assert result.d3 == sympy.Rational(-1, 2)
    assert result.h1_order == 27


def test_h1_order_matches_determinant():
    for r in range(9):
        w = member(E125, r)
        assert h1_order(braid_to_surgery(w)) == determinant(closure_diagram(w))
    for r in range(7):
        w = member(E141, r)
        assert h1_order(braid_to_surgery(w)) == determinant(closure_diagram(w))
    for r in range(6):
        s = braid_to_surgery(member(E130, r))
        assert s.handles.shape[0] == 3
        assert h1_order(s) == 14 + r


def test_d3_invariance():
    s = braid_to_surgery(member(E125, 5))
    expected = d3(s).d3
    rng = np.random.default_rng(7)
    for _ in range(5):
        order = [int(k) for k in rng.permutation(len(s))]
        assert d3(s.permuted(order)).d3 == expected
    for k in range(len(s)):
        assert d3(s.reversed_component(k)).d3 == expected
    with pytest.raises(ValueError):
        s.permuted([0, 0, 1, 2, 3, 4, 5, 6, 7, 8])


def test_serialization():
    s = braid_to_surgery(member(E141, 4))
    restored = SurgeryDiagram.from_dict(json.loads(json.dumps(s.to_dict())))
    assert restored == s
    assert restored.letters == s.letters

    result = d3(s)
    assert D3Result.from_dict(json.loads(json.dumps(result.to_dict()))) == result
    with pytest.raises(ValueError):
        D3Result(sympy.Rational(1), sympy.Integer(0), 2, -1, 0, 2)


def test_fillability():
    result = d3(braid_to_surgery(member(E125, 5)))
    obstructed = ParityResult(Obstruction.OBSTRUCTED, 11, (0,))
    free = ParityResult(Obstruction.NOT_OBSTRUCTED, 11, ())
    assert fillability_verdict(result, obstructed) == Fillability.NOT_STEIN_FILLABLE
    assert fillability_verdict(result, free) == Fillability.NO_OBSTRUCTION
    zero = d3(braid_to_surgery(member(E141, 4)))
    assert fillability_verdict(zero, obstructed) == Fillability.NO_OBSTRUCTION
