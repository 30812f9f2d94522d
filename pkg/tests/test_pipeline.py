import pytest

from modkit.cyclotomic import CycNum
from modkit.datum import (KIND_BOLD, ModularDatum, RawDatum, bold_world,
                          reduce_slightly_degenerate)
from modkit.matrix import CycMatrix
from modkit.families import (pointed_cyclic, sl2_q16_counterexample, taft_double,
                             taft_J_indices, taft_normalizer)
from modkit.pipeline import emit_zmodular, verify_normalized, verify_raw

one = CycNum.from_rational(1)


def test_mode_override_mismatches():
    res = verify_raw(taft_double(3), mode="nondeg")
    assert not res.passed
    assert res.report["mode"].status == "fail"
    res = verify_raw(pointed_cyclic(5, 1, 0), mode="sldeg")
    assert not res.passed
    assert res.report["mode"].status == "fail"
    with pytest.raises(ValueError):
        verify_raw(pointed_cyclic(5, 1, 0), mode="whatever")


def test_structural_failure_short_circuits():
    bad_s = CycMatrix.from_rows([[1, 1], [0, 1]])
    raw = RawDatum(("a", "b"), 0, bad_s, (one, one), "raw-full", (0, 1))
    res = verify_raw(raw)
    assert res.report["s_raw_symmetric"].status == "fail"
    assert res.classification == "fail"


def test_verify_normalized_classifications():
    d = 3
    sld = reduce_slightly_degenerate(taft_double(d), reps=taft_J_indices(d))
    em = emit_zmodular(sld, normalizer=taft_normalizer(d))
    res = verify_normalized(em.datum)
    assert res.passed and res.classification == "Z-modular"
    trivial = ModularDatum(("1",), 0, CycMatrix.identity(1), (one,))
    res = verify_normalized(trivial)
    assert res.passed and res.classification == "N-modular"


def test_emit_rejects_wrong_normalizer():
    sld = reduce_slightly_degenerate(taft_double(3), reps=taft_J_indices(3))
    with pytest.raises(ValueError):
        emit_zmodular(sld, normalizer=CycNum.from_rational(7))


def test_emit_certificate_when_no_normalizer_exists():
    # a 1x1 toy whose scale 8 has no square root below conductor 4
    raw = RawDatum(("1",), 0, CycMatrix.from_rows([[2]]), (one,), KIND_BOLD,
                   (0,), (1,))
    em = emit_zmodular(bold_world(raw))
    assert em.datum is None
    assert em.certificate is not None
    assert "up to scalar" in em.note


def test_emit_on_counterexample_produces_failing_datum():
    # a normalizer exists here, but the emitted datum must fail its axioms
    _, bold = sl2_q16_counterexample()
    em = emit_zmodular(bold_world(bold))
    assert em.datum is not None
    from modkit.checks import check_axioms
    assert not check_axioms(em.datum).passed


def test_bold_input_with_mode_auto_runs_sldeg_suite():
    sld = reduce_slightly_degenerate(taft_double(4), reps=taft_J_indices(4))
    res = verify_raw(sld.bold)
    assert res.passed and res.classification == "Z-modular"
    assert "rank_half" not in res.report   # full-matrix checks are not run on bold input
