"""
Module provides tests to test the `khtight.transverse_verdict` module
"""
import pytest

from khtight.braid_link import closure_diagram, parse_braid
from khtight.classical_invariants import Thinness, signature, thinness
from khtight.config import EngineLimits
from khtight.errors import InvariantError
from khtight.homology_engine import homology
from khtight.khovanov import Flavor, Reduction, build_complex
from khtight.transverse_verdict import PSI_ZERO_CAVEAT, PsiStatus, Verdict, VerdictReport, \
    psi_nonvanishing, psi_test, s_bound_check, s_invariant, tightness_verdict

from .utils import E125, E130, E141, NON_EXAMPLE, corpus_words, member


def test_psi_family_members():
    assert psi_nonvanishing(member(E125, 5)) == PsiStatus.NONZERO
    assert psi_nonvanishing(member(E141, 4)) == PsiStatus.NONZERO
    assert psi_nonvanishing(member(E130, 3)) == PsiStatus.NONZERO
    assert psi_nonvanishing(parse_braid("1,1,1")) == PsiStatus.NONZERO


def test_psi_vanishing():
    for r in (3, 4, 5):
        result = psi_test(member(NON_EXAMPLE, r))
        assert result.status == PsiStatus.ZERO
        assert result.witness is not None and len(result.witness) > 0

    result = psi_test(parse_braid("1,-2,1,-2"))
    assert result.status == PsiStatus.ZERO
    assert (result.i, result.q) == (0, -2)


def test_s_invariant():
    assert s_invariant(parse_braid("1")) == 0
    assert s_invariant(parse_braid("1,1,1")) == 2
    assert s_invariant(parse_braid("-1,-1,-1")) == -2
    assert s_invariant(parse_braid("1,-2,1,-2")) == 0
    assert s_invariant(member(E125, 5)) == -2
    assert s_invariant(member(E125, 7)) == -4
    assert s_invariant(member(E141, 4)) == 0

    with pytest.raises(InvariantError):
        s_invariant(parse_braid("1,1"))


def test_s_bound():
    for w in corpus_words():
        if closure_diagram(w).is_knot:
            assert s_bound_check(w)


def test_thin_knots_psi_matches_s():
    for w in corpus_words():
        d = closure_diagram(w)
        if not d.is_knot:
            continue
        table = homology(build_complex(d))
        if thinness(table, signature(d)) != Thinness.THIN:
            continue
        psi_nonzero = psi_nonvanishing(w) == PsiStatus.NONZERO
        assert psi_nonzero == (w.self_linking() == s_invariant(w) - 1)


def test_verdict_tight():
    w = member(E125, 5)
    report = tightness_verdict(w)
    assert report.verdict == Verdict.TIGHT_CERTIFIED
    assert report.sl == -3
    assert report.s == -2
    assert report.sigma == -2
    assert report.det == 11
    assert report.kh_rank == 11
    assert report.thin is True
    assert report.collapse is True
    assert report.psi_nonzero is True
    assert not report.capped
    assert VerdictReport.from_dict(report.to_dict()) == report

    link = tightness_verdict(member(E125, 4))
    assert link.components == 2
    assert link.s is None
    assert link.psi_nonzero is not None


def test_verdict_psi_zero():
    with pytest.warns(UserWarning):
        report = tightness_verdict(member(NON_EXAMPLE, 3))
    assert report.verdict == Verdict.PSI_ZERO
    assert report.psi_nonzero is False
    assert PSI_ZERO_CAVEAT in report.notes

    with pytest.warns(UserWarning):
        report = tightness_verdict(parse_braid("1,-2,1,-2"))
    assert report.verdict == Verdict.PSI_ZERO
    assert report.thin is True


def test_verdict_capped():
    report = tightness_verdict(member(E125, 5), EngineLimits(generator_budget=4))
    assert report.capped
    assert report.verdict == Verdict.INCONCLUSIVE
    assert report.det == 11
    assert report.kh_rank is None
    assert report.psi_nonzero is None
    assert any(note.startswith("homology:") for note in report.notes)


def test_report_consistency():
    with pytest.raises(ValueError):
        VerdictReport("1,1,1", 2, 1, 1, 2, 2, 3, 3, True, False, True, Verdict.TIGHT_CERTIFIED)
    with pytest.raises(ValueError):
        VerdictReport("1,1,1", 2, 1, 1, 2, 2, 3, 3, True, True, True, Verdict.INCONCLUSIVE)


def test_psi_test_with_complex():
    w = parse_braid("1,1,1")
    c = build_complex(closure_diagram(w), Flavor.KHOVANOV_F2, Reduction.REDUCED)
    assert psi_test(w, c=c) == psi_test(w)
    assert psi_test(w, EngineLimits(scan_above=2)).status == PsiStatus.NONZERO

    w = parse_braid("1,-2,1,-2")
    result = psi_test(w, EngineLimits(scan_above=2))
    assert result.status == PsiStatus.ZERO
    assert (result.i, result.q) == (0, -2)


def test_verdict_builds_once(monkeypatch):
    calls = []

    def counting_build(d, flavor=Flavor.KHOVANOV_F2, reduction=Reduction.REDUCED, limits=None):
        calls.append((flavor, reduction))
        return build_complex(d, flavor, reduction, limits)

    monkeypatch.setattr("khtight.homology_engine.scanning.build_complex", counting_build)
    report = tightness_verdict(member(E125, 5))
    assert report.verdict == Verdict.TIGHT_CERTIFIED
    assert calls == [(Flavor.KHOVANOV_F2, Reduction.REDUCED)]


def test_s_invariant_scanned():
    for w in [parse_braid("1,1,1"), parse_braid("1,-2,1,-2"), member(E125, 5),
              member(E125, 7), member(E141, 4)]:
        assert s_invariant(w, EngineLimits(scan_above=2)) == s_invariant(w)


def test_verdict_scanned():
    for w in [member(E125, 5), member(E141, 4)]:
        scanned = tightness_verdict(w, EngineLimits(scan_above=4))
        full = tightness_verdict(w)
        assert "tangle-wise" in scanned.provenance["kh_rank"]
        assert "full cube" in full.provenance["kh_rank"]
        for name in ("verdict", "s", "sigma", "det", "kh_rank", "thin", "collapse",
                     "psi_nonzero"):
            assert getattr(scanned, name) == getattr(full, name)


def test_verdict_sixteen_crossings():
    w = parse_braid(",".join(["1,-2"] * 8))
    with pytest.warns(UserWarning):
        report = tightness_verdict(w)
    assert not report.capped
    assert report.elapsed < 120
    assert report.verdict == Verdict.PSI_ZERO
    assert report.kh_rank == report.det
    assert report.thin is True
    assert report.s == report.sigma == 0
    assert report.sl == -3


def test_verdict_beyond_crossing_cap():
    w = member(E125, 17)
    report = tightness_verdict(w)
    assert not report.capped
    assert report.sl == -15
    assert report.det == report.kh_rank == 23
    assert report.s == report.sigma == -14
    assert report.verdict == Verdict.TIGHT_CERTIFIED
