import pytest

from modkit.cyclotomic import CycNum, zeta
from modkit.datum import (DegeneracyError, bar_involution, bold_world, derive_duality,
                          detect_symmetric_center, dims_of, epsilon_action,
                          nondegenerate_world, reduce_slightly_degenerate,
                          tensor_by_invertible, with_duality)
from modkit.families import (TaftLabel, pointed_cyclic, sl2_q16_counterexample,
                             taft_double, taft_epsilon_action, taft_J, taft_J_indices,
                             taft_label_index, taft_labels, taft_sdim)

one = CycNum.from_rational(1)


def taft_idx(d, l, p):
    return taft_label_index(d, TaftLabel(l, p))


# ---------------------------------------------------------------------------
# symmetric center
# ---------------------------------------------------------------------------

def test_center_pointed_primitive_is_trivial():
    assert detect_symmetric_center(pointed_cyclic(5, 1, 1)) == (0,)


def test_center_taft_is_unit_and_fermion():
    d = 3
    assert detect_symmetric_center(taft_double(d)) == (0, taft_idx(d, 2, 1))


def test_center_degenerate_pointed():
    raw = pointed_cyclic(9, 3, 0)   # braiding root of order 3 inside Z/9Z
    assert detect_symmetric_center(raw) == (0, 3, 6)


def test_center_counterexample_has_dim_plus_one():
    full, _ = sl2_q16_counterexample()
    center = detect_symmetric_center(full)
    assert len(center) == 2
    other = center[1]
    assert full.dim_r(other) == 1
    assert full.twists[other] == -1


# ---------------------------------------------------------------------------
# dimensions
# ---------------------------------------------------------------------------

def test_dims_pointed():
    raw = pointed_cyclic(3, 1, 1)
    d = dims_of(raw)
    assert d.dim_r[1] == zeta(3)
    assert d.dim_l[1] == zeta(3, 2)
    assert d.sqnorm[1] == 1
    assert d.global_dim == 3


def test_dims_taft_fermion_is_minus_one():
    raw = taft_double(3)
    d = dims_of(raw)
    assert d.dim_r[taft_idx(3, 2, 1)] == -1


def test_taft_sdim_simplifies():
    assert taft_sdim(3) == 3
    sld = reduce_slightly_degenerate(taft_double(3), reps=taft_J_indices(3))
    assert sld.sdim == 3
    assert sld.sdim == taft_sdim(3)


def test_dims_require_duality():
    raw = pointed_cyclic(5, 1, 1)
    stripped = type(raw)(raw.labels, raw.unit, raw.s_matrix, raw.twists, raw.kind)
    with pytest.raises(DegeneracyError):
        dims_of(stripped)


# ---------------------------------------------------------------------------
# duality derivation
# ---------------------------------------------------------------------------

def test_derive_duality_matches_family_data():
    for raw in (pointed_cyclic(5, 1, 1), pointed_cyclic(7, 2, 0), taft_double(4)):
        stripped = type(raw)(raw.labels, raw.unit, raw.s_matrix, raw.twists, raw.kind)
        duality, signs = derive_duality(stripped)
        assert duality == raw.duality
        assert all(s == 1 for s in signs)


def test_derive_duality_on_bold_with_orbit_signs():
    sld = reduce_slightly_degenerate(taft_double(3), reps=taft_J_indices(3))
    bold = sld.bold
    stripped = type(bold)(bold.labels, bold.unit, bold.s_matrix, bold.twists, bold.kind)
    duality, signs = derive_duality(stripped)
    assert duality == bold.duality
    assert signs == bold.duality_signs
    assert -1 in signs   # some dual leaves the representative set


# ---------------------------------------------------------------------------
# fermion action and bar involution
# ---------------------------------------------------------------------------

def test_epsilon_action_from_rows():
    for d in (3, 4):
        raw = taft_double(d)
        act = epsilon_action(raw)
        labs = taft_labels(d)
        for i, x in enumerate(labs):
            assert labs[act[i]] == taft_epsilon_action(d, x)


def test_epsilon_action_on_nondegenerate_input_fails():
    with pytest.raises(DegeneracyError):
        epsilon_action(pointed_cyclic(5, 1, 1))


def test_bar_pointed_unit_bar():
    raw = pointed_cyclic(3, 1, 1)
    bar, unit_bar = bar_involution(raw)
    assert raw.labels[unit_bar] == "d2"           # delta_{-k0} with k0 = 1


def test_bar_spherical_pointed_equals_duality():
    raw = pointed_cyclic(5, 1, 0)
    bar, unit_bar = bar_involution(raw)
    assert bar == raw.duality
    assert unit_bar == raw.unit


def test_bar_taft_bold_unit_bar():
    for d in (3, 4):
        sld = reduce_slightly_degenerate(taft_double(d), reps=taft_J_indices(d))
        assert sld.bold.labels[sld.unit_bar] == str(TaftLabel(d - 1, 0))
        assert sld.dim_unit_bar == -zeta(d)


def test_bar_collision_aborts():
    # a full slightly degenerate matrix has colliding character rows
    with pytest.raises(DegeneracyError):
        bar_involution(taft_double(3))


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------

def test_reduce_taft_with_closed_form_reps():
    d = 3
    sld = reduce_slightly_degenerate(taft_double(d), reps=taft_J_indices(d))
    assert [str(x) for x in taft_J(d)] == list(sld.bold.labels)
    assert sld.parent.labels[sld.epsilon] == "(2,1)"
    assert sld.e_matrix.is_signed_permutation() is not None
    assert sld.bar == bar_involution(sld.bold)[0]


def test_reduce_canonical_reps_contain_unit():
    sld = reduce_slightly_degenerate(taft_double(4))
    assert sld.reps[sld.bold.unit] == sld.parent.unit
    assert len(sld.reps) == 6
    assert sld.parent.labels[sld.epsilon] == "(3,1)"


def test_reduce_taft4_epsilon_action():
    sld = reduce_slightly_degenerate(taft_double(4))
    labs = taft_labels(4)
    for i, x in enumerate(labs):
        assert labs[sld.eps_action[i]] == TaftLabel(4 - x.l, (x.l + x.p) % 4)


def test_reduce_rejects_nondegenerate_input():
    with pytest.raises(DegeneracyError, match="nondegenerate"):
        reduce_slightly_degenerate(pointed_cyclic(5, 1, 0))


def test_reduce_rejects_dim_plus_one_fermion():
    full, _ = sl2_q16_counterexample()
    with pytest.raises(DegeneracyError, match="dim \\+1"):
        reduce_slightly_degenerate(full)


def test_reduce_rejects_bad_reps():
    d = 3
    raw = taft_double(d)
    with pytest.raises(DegeneracyError):
        reduce_slightly_degenerate(raw, reps=[0, 1])
    with pytest.raises(DegeneracyError):
        # two labels of the same orbit
        reduce_slightly_degenerate(raw, reps=[0, 1, taft_idx(d, 2, 2)])


def test_reduce_row_negation_and_rank():
    d = 4
    raw = taft_double(d)
    act = epsilon_action(raw)
    s = raw.s_matrix
    for i in range(raw.size):
        j = act[i]
        assert all(s[j, y] == -s[i, y] for y in range(raw.size))
    assert s.rank() == raw.size // 2


def test_tensor_by_invertible_unit_bar():
    d = 3
    raw = with_duality(taft_double(d))
    ub = taft_idx(d, 2, 0)
    t = tensor_by_invertible(raw, ub)
    # tensoring the unit gives unit_bar back
    assert t[raw.unit] == ub
    # and the map is a bijection
    assert sorted(t) == list(range(raw.size))


def test_worlds_reject_wrong_kinds():
    raw = pointed_cyclic(5, 1, 0)
    with pytest.raises(DegeneracyError):
        bold_world(raw)
    _, bold = sl2_q16_counterexample()
    with pytest.raises(DegeneracyError):
        nondegenerate_world(bold)
