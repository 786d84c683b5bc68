import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from roughideal.ideal import (Density, Fin, IdealError, IndexRule, IndexSet, Summable, Verdict, WeightFunctional,
                              density_estimate, ideal_from_json, ideal_limsup, is_small, limsup_trace,
                              window_schedule)

N = 10_000


def rule(kind, **kw):
    return IndexRule(kind, **kw).materialize(N)


# --- index sets -------------------------------------------------------------

def test_index_set_algebra():
    a = IndexSet.from_indices([0, 2, 4], 6)
    b = IndexSet.from_indices([2, 3], 6)
    assert (a | b).indices().tolist() == [0, 2, 3, 4]
    assert (a & b).indices().tolist() == [2]
    assert (~a).indices().tolist() == [1, 3, 5]
    assert (a & b) <= a
    assert not a <= b
    assert len(a) == 3


def test_index_set_errors():
    with pytest.raises(IdealError, match="horizon mismatch"):
        IndexSet.empty(3) | IndexSet.empty(4)
    with pytest.raises(IdealError):
        IndexSet.from_indices([5], 3)


def test_squares_rule_matches_integer_roots():
    sq = rule("squares").indices()
    assert sq.tolist() == [i * i for i in range(100)]
    assert len(rule("nonsquares")) == N - 100


def test_rule_json_round_trip():
    for r in (IndexRule("evens"), IndexRule("mod", modulus=3, residues=(1, 2)), IndexRule("finite", members=(1, 5))):
        assert IndexRule.from_json(r.to_json()) == r


# --- density ----------------------------------------------------------------

def test_window_schedule_errors():
    with pytest.raises(IdealError, match="no windows"):
        window_schedule([], 10)
    with pytest.raises(IdealError):
        window_schedule([0.5, 0.9], 10)


def test_density_of_squares_full_window_is_exact():
    assert density_estimate(rule("squares"), [N]) == 0.01


def test_density_estimate_matches_direct_count():
    S = rule("mod", modulus=7, residues=(0, 3))
    w = window_schedule((0.5, 0.75, 0.875, 1.0), N)
    oracle = max(np.sum(S.mask[:x]) / x for x in w[2:])
    assert density_estimate(S, w) == pytest.approx(oracle, abs=0)


def test_density_verdicts():
    d = Density()
    assert is_small(d, rule("evens")).verdict == Verdict.NOT_SMALL
    assert is_small(d, rule("finite", members=(1, 2, 3))).verdict == Verdict.SMALL
    assert is_small(Density(), IndexRule("squares").materialize(100_000)).verdict == Verdict.SMALL
    # 1.5 % sits between delta and 2 delta: undecided
    S = IndexSet.from_predicate(lambda n: n % 200 < 3, N)
    assert is_small(d, S).verdict == Verdict.INCONCLUSIVE


def test_fin_verdicts():
    f = Fin()
    assert is_small(f, rule("finite", members=(3, 40))).verdict == Verdict.SMALL
    assert is_small(f, rule("odds")).verdict == Verdict.NOT_SMALL
    assert is_small(f, rule("squares")).verdict == Verdict.NOT_SMALL
    # one late member: last segment nonempty, earlier tail segment empty
    assert is_small(f, rule("finite", members=(N - 1,))).verdict == Verdict.INCONCLUSIVE


def test_summable_verdicts():
    s = Summable()
    assert is_small(s, rule("squares")).verdict == Verdict.SMALL
    assert is_small(s, IndexRule("all").materialize(10 ** 6)).verdict == Verdict.INCONCLUSIVE
    big = Summable(budget=5.0)
    assert is_small(big, IndexRule("all").materialize(10 ** 5)).verdict == Verdict.NOT_SMALL


def test_weight_functional_uniform_weights_matches_density():
    wf = WeightFunctional(tuple(np.ones(N)))
    d = Density()
    for S in (rule("evens"), rule("squares"), rule("finite", members=(4,))):
        assert is_small(wf, S).verdict == is_small(d, S).verdict


def test_horizon_mismatch():
    with pytest.raises(IdealError, match="horizon mismatch"):
        is_small(Fin(), rule("evens"), horizon=N + 1)


def test_ideal_json_round_trip():
    for ideal in (Fin(), Density(0.02), Summable(10.0, 0.8)):
        assert ideal_from_json(ideal.to_json()) == ideal


# --- property tests ---------------------------------------------------------

masks = st.lists(st.booleans(), min_size=64, max_size=400).map(np.array)


@settings(max_examples=150, deadline=None)
@given(masks, masks)
def test_small_is_hereditary(a, b):
    n = min(len(a), len(b))
    T = IndexSet(a[:n])
    S = T & IndexSet(b[:n])
    for ideal in (Fin(), Density(0.05), Summable(3.0)):
        if is_small(ideal, T).verdict == Verdict.SMALL:
            assert is_small(ideal, S).verdict == Verdict.SMALL


@settings(max_examples=150, deadline=None)
@given(masks, masks)
def test_union_of_small_sets_is_never_not_small(a, b):
    n = min(len(a), len(b))
    A, B = IndexSet(a[:n]), IndexSet(b[:n])
    for ideal in (Fin(), Density(0.05), Summable(3.0)):
        if is_small(ideal, A).verdict == is_small(ideal, B).verdict == Verdict.SMALL:
            assert is_small(ideal, A | B).verdict != Verdict.NOT_SMALL


@settings(max_examples=100, deadline=None)
@given(st.integers(50, 2000))
def test_full_set_not_small_and_empty_set_small(n):
    for ideal in (Fin(), Density()):
        assert is_small(ideal, IndexSet.full(n)).verdict == Verdict.NOT_SMALL
        assert is_small(ideal, IndexSet.empty(n)).verdict == Verdict.SMALL


# --- ideal limsup -----------------------------------------------------------

def limsup_oracle(ideal, v):
    # brute force: smallest distinct value a whose exceedance set is Small,
    # scanning downwards and stopping at the first non-Small threshold
    vals = np.unique(v)[::-1]
    best = None
    for a in vals:
        S = IndexSet(v > a)
        if is_small(ideal, S).verdict != Verdict.SMALL:
            break
        best = a
    return float(v.max() if best is None else best)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=40, max_size=200))
def test_limsup_matches_brute_force(vals):
    v = np.array(vals, dtype=float)
    for ideal in (Fin(), Density(0.05)):
        assert ideal_limsup(ideal, v) == limsup_oracle(ideal, v)


def test_limsup_alternating_is_one():
    v = np.where(np.arange(N) % 2 == 0, 1.0, -1.0)
    assert ideal_limsup(Fin(), v) == 1.0


def test_limsup_spiked_sequence_density_vs_fin():
    n = np.arange(100_000)
    v = np.where(IndexRule("squares").materialize(100_000).mask, n, 1.0)
    assert ideal_limsup(Density(), v) == 1.0
    t = limsup_trace(Fin(), v)
    assert t.value > 1000 and t.low_confidence


def test_limsup_errors():
    with pytest.raises(IdealError, match="empty prefix"):
        ideal_limsup(Fin(), [])
    with pytest.raises(IdealError):
        ideal_limsup(Fin(), [1.0, np.nan])


# --- worked examples and limsup invariants ----------------------------------

def test_fin_small_for_initial_block():
    S = IndexRule("finite", members=tuple(range(10))).materialize(1000)
    assert is_small(Fin(), S).verdict == Verdict.SMALL


def test_density_estimate_of_evens_and_empty():
    w = window_schedule((0.5, 0.75, 0.875, 1.0), N)
    assert density_estimate(rule("evens"), w) == 0.5
    assert density_estimate(IndexSet.empty(N), w) == 0.0


def test_summable_evens_stays_below_default_budget():
    # sum over evens of 1/(n+1) at N = 1e5 is about 6.39: never reaches 20
    S = IndexRule("evens").materialize(100_000)
    v = is_small(Summable(), S)
    assert v.verdict == Verdict.INCONCLUSIVE
    assert v.evidence["partial_sums"][-1] == pytest.approx(np.sum(1 / (np.arange(0, 100_000, 2) + 1)))
    assert is_small(Summable(budget=6.0), S).verdict == Verdict.NOT_SMALL


def test_limsup_examples():
    assert ideal_limsup(Fin(), np.ones(1000)) == 1.0
    assert ideal_limsup(Fin(), 1 / (np.arange(N) + 1.0)) <= 8.0 / (7 * N) + 1e-15
    n = np.arange(100_000)
    v = np.where(IndexRule("squares").materialize(100_000).mask, n, 0.0)
    assert ideal_limsup(Density(), v) == 0.0


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=40, max_size=300))
def test_fin_limsup_is_max_of_last_segment(vals):
    v = np.array(vals, dtype=float)
    b = Fin().boundaries(len(v))
    tail = v[b[-2]:b[-1]]
    assert ideal_limsup(Fin(), v) == tail.max()


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 9), min_size=64, max_size=300), st.integers(-5, 5))
def test_limsup_translation_equivariant(vals, c):
    v = np.array(vals, dtype=float)
    for ideal in (Fin(), Density(0.05)):
        assert ideal_limsup(ideal, v + c) == ideal_limsup(ideal, v) + c


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 9), min_size=64, max_size=300))
def test_limsup_decreases_with_larger_ideal(vals):
    v = np.array(vals, dtype=float)
    assert ideal_limsup(Density(0.1), v) <= ideal_limsup(Density(0.02), v)
