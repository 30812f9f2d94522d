import pytest

from modkit.cyclotomic import CycNum, zeta
from modkit.datum import RawDatum
from modkit.families import (FamilySpecError, TaftLabel, from_spec, parse_taft_label,
                             pointed_cyclic, sl2_q16_counterexample, taft_double,
                             taft_J, taft_J_indices, taft_label_index, taft_labels,
                             taft_normalized_S, taft_normalizer, taft_sdim)
from modkit.pipeline import verify_raw

one = CycNum.from_rational(1)


def taft_idx(d, l, p):
    return taft_label_index(d, TaftLabel(l, p))


# ---------------------------------------------------------------------------
# pointed family
# ---------------------------------------------------------------------------

def test_pointed_spherical_instance():
    raw = pointed_cyclic(3, 1, 0)
    assert all(raw.dim_r(k) == 1 for k in range(3))
    assert raw.s_matrix[1, 1] == zeta(3, 2)
    assert raw.s_matrix.is_symmetric()


def test_pointed_with_pivot():
    raw = pointed_cyclic(3, 1, 1)
    assert raw.dim_r(1) == zeta(3)
    assert raw.twists[1] == zeta(3, 2)   # xi * zeta = zeta^2
    assert raw.duality == (0, 2, 1)


def test_pointed_rejects_even_n():
    with pytest.raises(FamilySpecError):
        pointed_cyclic(4, 1, 0)
    with pytest.raises(FamilySpecError):
        pointed_cyclic(1, 1, 0)


# ---------------------------------------------------------------------------
# Taft family
# ---------------------------------------------------------------------------

def test_taft_unit_entry_and_labels():
    raw = taft_double(3)
    assert raw.labels[0] == "(1,0)"
    assert raw.s_matrix[0, 0] == 1
    assert raw.s_matrix.is_symmetric()
    assert raw.labels == tuple(str(x) for x in taft_labels(3))


def test_taft_fermion_column_is_minus_dims():
    for d in (3, 4, 5):
        raw = taft_double(d)
        eps = taft_idx(d, d - 1, 1)
        for i in range(raw.size):
            assert raw.s_matrix[i, eps] == -raw.dim_r(i)


def test_taft_d2_is_the_trivial_case():
    raw = taft_double(2)
    assert raw.size == 2
    assert len(taft_J(2)) == 1
    res = verify_raw(raw, reps=taft_J_indices(2))
    assert res.passed
    assert res.world.size == 1
    assert res.world.s[0, 0] == 1


def test_taft_normalizer_squares_for_all_d():
    for d in range(2, 13):
        c = taft_normalizer(d)
        assert c * c == taft_sdim(d) * (-zeta(d))


def test_taft_normalized_closed_form_vs_scaled_bold():
    d = 3
    raw = taft_double(d)
    reps = taft_J_indices(d)
    from modkit.matrix import CycMatrix
    bold = CycMatrix(len(reps), len(reps),
                     [raw.s_matrix[i, j] for i in reps for j in reps])
    assert bold.scale(taft_normalizer(d).inv()) == taft_normalized_S(d)


def test_galois_variant_still_verifies():
    d = 4
    raw = taft_double(d)
    twisted = RawDatum(raw.labels, raw.unit, raw.s_matrix.galois(3),
                       tuple(t.galois(3) for t in raw.twists), raw.kind, raw.duality)
    res = verify_raw(twisted, reps=taft_J_indices(d))
    assert res.passed and res.classification == "Z-modular"


def test_parse_taft_label():
    assert parse_taft_label(5, "(2,3)") == TaftLabel(2, 3)
    with pytest.raises(FamilySpecError):
        parse_taft_label(3, "(9,9)")
    with pytest.raises(FamilySpecError):
        parse_taft_label(3, "nonsense")


# ---------------------------------------------------------------------------
# counterexample
# ---------------------------------------------------------------------------

def test_counterexample_bracket_value():
    full, bold = sl2_q16_counterexample()
    br = zeta(16, 14) + one + zeta(16, 2)
    assert full.s_matrix[0, 1] == br
    assert bold.s_matrix[1, 1] == -1
    assert full.twists == (one, zeta(16, 4), -zeta(16, 4), -one)


def test_counterexample_full_matrix_shape():
    full, bold = sl2_q16_counterexample()
    assert full.size == 4 and bold.size == 2
    assert full.s_matrix.is_symmetric()
    assert full.s_matrix.rank() == 2


# ---------------------------------------------------------------------------
# family spec strings
# ---------------------------------------------------------------------------

def test_from_spec_roundtrips():
    inst = from_spec("taft:d=5")
    assert inst.raw.size == 20
    assert inst.normalizer is not None
    inst = from_spec("pointed:n=7,a=1,k0=2")
    assert inst.raw.size == 7
    inst = from_spec("counterexample:sl2q16")
    assert inst.raw.kind == "raw-bold"
    inst = from_spec("counterexample:sl2q16,part=full")
    assert inst.raw.size == 4


def test_from_spec_errors():
    for bad in ("taft:d=0", "taft:d=x", "taft", "pointed:n=4", "nope:1",
                "counterexample:other", "counterexample:sl2q16,part=weird"):
        with pytest.raises(FamilySpecError):
            from_spec(bad)
