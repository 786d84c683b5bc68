import numpy as np
import pytest

from roughideal import analysis as an
from roughideal import verify as vf
from roughideal.family import MinAffine, closed_ball, open_ball
from roughideal.geometry import Grid, GridRegion
from roughideal.ideal import Density, Fin, IndexRule
from roughideal.sequence import Alternating, Convergent, generate


def region(labels, h=1.0):
    return GridRegion(Grid((0,), (len(labels),), h), labels)


def test_near_uncertain_grows_by_band():
    r = region([0, 0, 0, 2, 0, 0, 0])
    assert vf.near_uncertain(r, 1.0).tolist() == [False, False, True, True, True, False, False]
    assert vf.near_uncertain(r, 2.0).sum() == 5


def test_disagreements_skip_bands():
    a = region([1, 1, 1, 2, 0, 0, 0])
    b = region([1, 1, 0, 0, 0, 0, 1])
    bad = vf.disagreements(a, b, 1.0)
    assert bad.ravel().tolist() == [6.0]
    with pytest.raises(vf.VerifyError):
        vf.disagreements(a, region([0] * 3), 1.0)


def test_golden_violations_against_intervals():
    r = region([0, 1, 1, 1, 0, 2, 0], h=1.0)
    expected = vf.Intervals(((1.0, 3.0),))
    assert vf.golden_violations(r, expected, 1.0).ravel().tolist() == [5.0]
    assert vf.golden_violations(r, expected, 2.0).size == 0


def test_expected_shapes():
    ball = vf.BallSet((0.0, 0.0), 1.0)
    assert ball.inside([[0.5, 0.5], [1, 1]]).tolist() == [True, False]
    poly = vf.PolygonSet(np.array([[0, 0], [2, 0], [2, 2], [0, 2]], dtype=float))
    assert poly.boundary_distance([[1, 1], [3, 1]]).tolist() == pytest.approx([1.0, 1.0])


def test_midpoint_violation_detected():
    r = region([1, 1, 0, 0, 1, 1])
    assert vf._midpoint_violations(r).size > 0
    assert vf._midpoint_violations(region([0, 1, 1, 2, 1, 0])).size == 0


def test_closedness_expected_fail_for_open_balls():
    lim = an.rough_limit_direct(generate(Alternating(), 10_000), Fin(), open_ball(3))
    rep = vf.check_closedness(lim)
    assert rep.status == vf.EXPECTED_FAIL
    assert sorted(rep.witnesses) == [[-2.0], [2.0]]
    assert rep.params["hypotheses_violated"]


def test_closedness_passes_for_closed_balls():
    lim = an.rough_limit_direct(generate(Alternating(), 10_000), Fin(), closed_ball(3))
    assert vf.check_closedness(lim).status == vf.PASS


def test_convexity_statuses():
    pre = generate(Alternating(), 10_000)
    ma = MinAffine(((0.0,), (-0.5,), (0.5,)), (1.0, 2.0, 2.0))
    assert vf.check_convexity(an.rough_limit_direct(pre, Fin(), closed_ball(ma))).status == vf.PASS
    bad = vf.check_convexity(an.rough_limit_direct(pre, Fin(), closed_ball(vf.dip_radius())))
    assert bad.status == vf.EXPECTED_FAIL and bad.witnesses


def test_vector_space_failure_matches_oracle():
    rep = vf.check_vector_space_failure(0.0, 1.0, 1.0)
    assert rep.status == vf.PASS and rep.details["smallest_failing_k"] == 3
    rep2 = vf.check_vector_space_failure((0.0, 0.0), (3.0, 4.0), 4.0, horizon=1000, h=0.1)
    assert rep2.details["oracle_k"] == 2 and rep2.status == vf.PASS


def test_vector_space_failure_preconditions():
    with pytest.raises(vf.VerifyError, match="differ"):
        vf.check_vector_space_failure(1.0, 1.0, 1.0)
    with pytest.raises(vf.VerifyError, match="NotSmall"):
        vf.check_vector_space_failure(0.0, 1.0, 1.0, ideal=Density(), partition=IndexRule("squares"))


def test_partition_witness_precondition():
    with pytest.raises(vf.VerifyError):
        vf.check_partition_witnesses(0.0, 1.5)


def test_equivalence_core_reports_parameters():
    rep = vf.check_equivalence_core(generate(Convergent(0.0, 1.0), 100_000), Fin(), 1.0)
    assert rep.status == vf.PASS
    assert rep.details["conditions"] == {"i_convergent": True, "singleton_core": True, "ball_limit_set": True}
    alt = vf.check_equivalence_core(generate(Alternating(), 100_000), Fin(), 1.0)
    assert alt.details["conditions"] == {"i_convergent": False, "singleton_core": False, "ball_limit_set": False}


def test_report_json_and_unknown_suite():
    rep = vf.CheckReport("x", vf.FAIL, [[1.0]] * 30)
    js = rep.to_json()
    assert js["witness_count"] == 30 and len(js["witnesses"]) == 20 and rep.unexpected_failure
    with pytest.raises(vf.VerifyError):
        vf.run_suite("nope")


def test_golden_suite_has_no_unexpected_failures():
    reps = vf.golden_suite()
    assert not [r.name for r in reps if r.status in (vf.FAIL, vf.UNCERTAIN)]
    expected = {r.name for r in reps if r.status == vf.EXPECTED_FAIL}
    assert expected == {"rationals_characterization_open", "alternating_open_closedness",
                        "alternating_convexity_nonconcave"}


def test_suite_is_reproducible():
    a = [r.to_json() for r in vf.golden_suite()]
    b = [r.to_json() for r in vf.golden_suite()]
    for x, y in zip(a, b):
        x.pop("runtime_s"), y.pop("runtime_s")
    assert a == b
