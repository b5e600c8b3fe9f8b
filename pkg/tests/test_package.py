"""
Module provides tests to test the top-level `khtight` namespace
"""
import types

import khtight
from khtight.classical_invariants.thinness import thinness
from khtight.homology_engine.homology import homology


def test_public_names():
    for name in khtight.__all__:
        assert hasattr(khtight, name), name
    assert len(set(khtight.__all__)) == len(khtight.__all__)


def test_names_resolve_to_functions():
    assert khtight.homology is homology
    assert khtight.thinness is thinness
    assert not isinstance(khtight.d3, types.ModuleType)
    assert not hasattr(khtight, "pack")
