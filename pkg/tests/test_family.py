import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from roughideal.family import (Constant, FamilyError, MinAffine, RoughFamily, UpperEnvelopeTable, closed_ball,
                               family_from_json, open_ball, radius_from_json)


def test_constant_and_min_affine_values():
    assert Constant(2.0)(np.zeros((3, 1))).tolist() == [2.0, 2.0, 2.0]
    tent = MinAffine(((1.0,), (-1.0,)), (1.0, 1.0))
    assert tent(np.array([[-1.0], [0.0], [0.5]])).tolist() == [0.0, 1.0, 0.5]


def test_radius_validation():
    with pytest.raises(FamilyError):
        Constant(-1.0)
    with pytest.raises(FamilyError):
        MinAffine(((1.0,),), (1.0, 2.0))
    with pytest.raises(FamilyError):
        UpperEnvelopeTable((np.array([0.0, 1.0]),), np.array([1.0, -1.0]))
    with pytest.raises(FamilyError):
        UpperEnvelopeTable((np.array([1.0, 0.0]),), np.array([1.0, 1.0]))


def test_table_takes_upper_envelope_at_nodes_and_between():
    t = UpperEnvelopeTable((np.array([0.0, 1.0, 2.0]),), np.array([3.0, 0.0, 1.0]))
    assert t(np.array([[0.5], [1.0], [1.5], [2.0], [5.0]])).tolist() == [3.0, 3.0, 1.0, 1.0, 1.0]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(0, 5), min_size=3, max_size=8), st.floats(-1, 9), st.floats(1e-6, 1e-3))
def test_table_is_upper_semicontinuous(vals, x, dx):
    # limsup of r near x never exceeds r(x)
    axis = np.arange(len(vals), dtype=float)
    t = UpperEnvelopeTable((axis,), np.array(vals))
    near = t(np.array([[x - dx], [x + dx]]))
    assert np.all(near <= t(np.array([[x]]))[0] + 1e-12)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.floats(-3, 3), st.floats(0, 4)), min_size=1, max_size=5),
       st.floats(-2, 2), st.floats(-2, 2), st.floats(0, 1))
def test_min_affine_is_concave(pieces, a, b, lam):
    r = MinAffine(tuple((s,) for s, _ in pieces), tuple(c for _, c in pieces))
    mid = r(np.array([[lam * a + (1 - lam) * b]]))[0]
    ends = r(np.array([[a], [b]]))
    assert mid >= lam * ends[0] + (1 - lam) * ends[1] - 1e-9


def test_family_kinds_and_validation():
    assert closed_ball(1).closed and closed_ball(1).is_ball
    assert not open_ball(1).closed
    with pytest.raises(FamilyError):
        RoughFamily("square")
    with pytest.raises(FamilyError):
        RoughFamily("general_closed")
    bad = closed_ball(MinAffine(((1.0,),), (0.0,)))
    with pytest.raises(FamilyError, match="radius negative"):
        bad.validate(np.array([[-1.0], [1.0]]))
    gen = RoughFamily("general_closed", set_distance=lambda e, p: np.abs(p[:, 0] - e[0] - 1))
    with pytest.raises(FamilyError, match="does not contain eta"):
        gen.validate(np.array([[0.0]]))


def test_family_json_round_trip():
    for fam in (closed_ball(2.5), open_ball(MinAffine(((1.0,), (-1.0,)), (1.0, 1.0))),
                closed_ball(UpperEnvelopeTable((np.array([0.0, 1.0]),), np.array([1.0, 2.0])))):
        back = family_from_json(fam.to_json())
        pts = np.linspace(-1, 2, 7)[:, None]
        assert back.kind == fam.kind
        assert np.array_equal(back.radius(pts), fam.radius(pts))
    assert radius_from_json(0.5)(np.zeros((1, 1)))[0] == 0.5
