from collections import Counter

import numpy as np
import pytest

from modkit.families import (TaftLabel, pointed_fusion_tensor, taft_epsilon_action,
                             taft_fusion, taft_fusion_tensor, taft_J, taft_labels)
from modkit.fusion import (canonical_reps, epsilon_action_from_fusion,
                           quotient_constants)


def test_taft_fusion_base_cases():
    assert taft_fusion(3, TaftLabel(2, 0), TaftLabel(2, 0)) == Counter({TaftLabel(1, 1): 1})
    # translation: (1,p) (x) (l',p') = (l', p+p')
    for d in (3, 4, 5, 7):
        for p in range(d):
            for lp in range(1, d):
                for pp in range(d):
                    got = taft_fusion(d, TaftLabel(1, p), TaftLabel(lp, pp))
                    assert got == Counter({TaftLabel(lp, (p + pp) % d): 1})
    # middle branch
    assert taft_fusion(5, TaftLabel(2, 0), TaftLabel(3, 1)) == \
        Counter({TaftLabel(4, 1): 1, TaftLabel(2, 2): 1})


def test_taft_fusion_commutes():
    d = 6
    labs = taft_labels(d)
    for x in labs[::3]:
        for y in labs[::4]:
            assert taft_fusion(d, x, y) == taft_fusion(d, y, x)


def test_taft_fusion_rejects_bad_labels():
    with pytest.raises(ValueError):
        taft_fusion(3, TaftLabel(9, 9), TaftLabel(1, 0))


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_taft_tensor_invariants(d):
    t = taft_fusion_tensor(d)
    assert t.validate() == []


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_pointed_tensor_invariants(n):
    t = pointed_fusion_tensor(n)
    assert t.validate() == []


def test_epsilon_action_matches_fusion():
    for d in (3, 4, 5):
        t = taft_fusion_tensor(d)
        labs = taft_labels(d)
        eps = labs.index(TaftLabel(d - 1, 1))
        act = epsilon_action_from_fusion(t, eps)
        for i, x in enumerate(labs):
            assert labs[act[i]] == taft_epsilon_action(d, x)


def test_epsilon_action_involution_no_fixed_points():
    for d in range(2, 13):
        for x in taft_labels(d):
            ex = taft_epsilon_action(d, x)
            assert ex != x
            assert taft_epsilon_action(d, ex) == x


def test_taft_J_size_and_partition():
    for d in range(2, 13):
        J = taft_J(d)
        assert len(J) == d * (d - 1) // 2
        translated = {taft_epsilon_action(d, x) for x in J}
        assert translated.isdisjoint(J)
        assert set(taft_labels(d)) == set(J) | translated


def test_quotient_unit_row_is_delta():
    for d in (3, 4, 5):
        t = taft_fusion_tensor(d)
        labs = taft_labels(d)
        eps = labs.index(TaftLabel(d - 1, 1))
        reps = [labs.index(x) for x in taft_J(d)]
        q, rep_out = quotient_constants(t, eps, -1, reps=reps)
        assert rep_out == tuple(reps)
        k = len(reps)
        u = reps.index(t.unit)
        assert np.array_equal(q[u], np.eye(k, dtype=np.int64))


def test_quotient_sign_minus_has_negative_entry_for_d3():
    d = 3
    t = taft_fusion_tensor(d)
    labs = taft_labels(d)
    eps = labs.index(TaftLabel(d - 1, 1))
    reps = [labs.index(x) for x in taft_J(d)]
    q, _ = quotient_constants(t, eps, -1, reps=reps)
    i11 = reps.index(labs.index(TaftLabel(1, 1)))
    i20 = reps.index(labs.index(TaftLabel(2, 0)))
    assert q[i11, i11, i20] == -1


def test_canonical_reps_forces_unit():
    act = (1, 0, 3, 2)
    assert canonical_reps(act, unit=0) == [0, 2]
    assert canonical_reps(act, unit=1) == [1, 2]


def test_quotient_reps_validation():
    t = taft_fusion_tensor(3)
    labs = taft_labels(3)
    eps = labs.index(TaftLabel(2, 1))
    with pytest.raises(ValueError):
        quotient_constants(t, eps, -1, reps=[0, 1])   # wrong size, missing orbits
    with pytest.raises(ValueError):
        quotient_constants(t, eps, 2)                  # bad sign
