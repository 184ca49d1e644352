"""
Testes do módulo de sequências eventualmente periódicas
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from src.core.sequences import (
    BACKWARD,
    FORWARD,
    INF_ALL_K,
    INF_K_IN_NATURALS,
    INF_K_IN_NEGATIVES,
    NEG,
    POS,
    QUANTIFIERS,
    SUP_ALL_K,
    SUP_K_IN_NATURALS,
    SUP_K_IN_NEGATIVES,
    EventuallyPeriodicSequence,
    compare_product_to_one,
    eval_at,
    first_crossing,
    horizon_bias,
    log_sum,
    rate_exact,
    rate_horizon,
    rate_sign,
    side_rate,
    stable_crossing,
    sup_partial_product,
    tail_sign,
    window_log_sum,
    window_product,
)

HALF = Fraction(1, 2)

# razões do sistema 2^{-|k|}: 2 à esquerda de 0, 1/2 a partir de 0
VALLEY = EventuallyPeriodicSequence(0, (HALF,), (2,), (HALF,))


positive_rationals = st.builds(
    Fraction,
    st.integers(min_value=1, max_value=9),
    st.integers(min_value=1, max_value=9),
)


@st.composite
def sequences(draw, values=positive_rationals):
    core_lo = draw(st.integers(min_value=-5, max_value=5))
    core = draw(st.lists(values, min_size=1, max_size=4))
    neg = draw(st.lists(values, min_size=1, max_size=4))
    pos = draw(st.lists(values, min_size=1, max_size=4))
    return EventuallyPeriodicSequence(core_lo, tuple(core), tuple(neg), tuple(pos))


class TestEval:
    """Avaliação pela apresentação finita"""

    def test_constant_far_left(self):
        assert eval_at(EventuallyPeriodicSequence.constant(1), -10**6) == 1

    def test_positive_tail(self):
        seq = EventuallyPeriodicSequence(0, (3,), (2,), (5,))
        assert eval_at(seq, 2) == 5

    def test_negative_period_read_right_to_left(self):
        seq = EventuallyPeriodicSequence(0, (3,), (2, 4), (5,))
        assert eval_at(seq, -1) == 4
        assert eval_at(seq, -2) == 2
        assert eval_at(seq, -3) == 4

    def test_getitem_matches_eval(self):
        seq = EventuallyPeriodicSequence(-1, (3, 7), (2, 4, 6), (5, 1))
        assert [seq[k] for k in range(-8, 8)] == [eval_at(seq, k) for k in range(-8, 8)]

    def test_log_values_match_eval(self):
        seq = EventuallyPeriodicSequence(-1, (3, 7), (2, 4, 6), (5, 1))
        logs = seq.log_values(-20, 20)
        for i, k in enumerate(range(-20, 21)):
            assert logs[i] == pytest.approx(math.log(eval_at(seq, k)), rel=1e-12)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            EventuallyPeriodicSequence(0, (1,), (0,), (1,))
        with pytest.raises(ValueError):
            EventuallyPeriodicSequence(0, (), (1,), (1,))

    def test_rational_strings_are_exact(self):
        seq = EventuallyPeriodicSequence(0, ("1/2",), ("3/4",), (2,))
        assert all(isinstance(v, Fraction) for v in seq.core + seq.neg_period + seq.pos_period)
        assert seq[0] == Fraction(1, 2)

    @given(sequences(), st.integers(min_value=-40, max_value=40))
    def test_negative_tail_periodicity(self, seq, k):
        k = min(k, seq.core_lo - 1)
        assert eval_at(seq, k) == eval_at(seq, k - len(seq.neg_period))

    @given(sequences(), st.integers(min_value=-40, max_value=40))
    def test_positive_tail_periodicity(self, seq, k):
        k = max(k, seq.core_hi + 1)
        assert eval_at(seq, k) == eval_at(seq, k + len(seq.pos_period))

    @given(sequences(), st.integers(min_value=-3, max_value=3), st.integers(min_value=-3, max_value=3))
    def test_with_core_preserves_values(self, seq, grow_left, grow_right):
        wider = seq.with_core(seq.core_lo - abs(grow_left), seq.core_hi + abs(grow_right))
        assert all(wider[k] == seq[k] for k in range(-30, 31))


class TestWindowProduct:
    """Produtos em janela em espaço logarítmico"""

    def test_constant_two(self):
        assert window_product(EventuallyPeriodicSequence.constant(2), 0, 3) == pytest.approx(16)

    def test_empty_extension(self):
        seq = EventuallyPeriodicSequence(0, (3,), (2, 4), (5,))
        for k in range(-5, 5):
            assert window_product(seq, k, 0) == pytest.approx(float(eval_at(seq, k)))

    def test_step_sequence(self):
        seq = EventuallyPeriodicSequence.step(HALF, 2)
        assert window_product(seq, -1, 2) == pytest.approx(2)

    def test_negative_extent_rejected(self):
        with pytest.raises(ValueError):
            window_product(EventuallyPeriodicSequence.constant(2), 0, -1)

    def test_no_overflow_at_large_horizon(self):
        seq = EventuallyPeriodicSequence.constant(2)
        assert window_log_sum(seq, 0, 2000) == pytest.approx(2001 * math.log(2))

    @given(
        sequences(),
        st.integers(min_value=-30, max_value=30),
        st.integers(min_value=0, max_value=20),
        st.integers(min_value=0, max_value=20),
    )
    def test_log_additivity(self, seq, k, n, m):
        joined = window_log_sum(seq, k, n + m + 1)
        split = window_log_sum(seq, k, n) + window_log_sum(seq, k + n + 1, m)
        assert joined == pytest.approx(split, abs=1e-9)


class TestRates:
    """Taxas exatas e estimadores de horizonte"""

    def test_constant_rate(self):
        assert rate_exact(EventuallyPeriodicSequence.constant(2), SUP_ALL_K, FORWARD) == pytest.approx(2)

    def test_step_sup_inf(self):
        seq = EventuallyPeriodicSequence.step(HALF, 2)
        assert rate_exact(seq, SUP_ALL_K) == pytest.approx(2)
        assert rate_exact(seq, INF_ALL_K) == pytest.approx(0.5)
        assert rate_horizon(seq, SUP_ALL_K, FORWARD, 200, 500) == pytest.approx(2, abs=0.02)
        assert rate_horizon(seq, INF_ALL_K, FORWARD, 200, 500) == pytest.approx(0.5, abs=0.02)

    def test_period_geometric_mean(self):
        seq = EventuallyPeriodicSequence(0, (1,), (1, 4), (1, 4))
        assert rate_exact(seq, SUP_ALL_K) == pytest.approx(2)
        assert rate_horizon(seq, SUP_ALL_K, FORWARD, 200, 500) == pytest.approx(2, abs=0.02)

    def test_one_sided_quantifiers(self):
        seq = EventuallyPeriodicSequence.step(HALF, 2)
        assert rate_exact(seq, SUP_K_IN_NEGATIVES, BACKWARD) == pytest.approx(0.5)
        assert rate_exact(seq, INF_K_IN_NATURALS, FORWARD) == pytest.approx(2)
        # pares cruzados atravessam as duas caudas
        assert rate_exact(seq, SUP_K_IN_NEGATIVES, FORWARD) == pytest.approx(2)
        assert rate_exact(seq, INF_K_IN_NATURALS, BACKWARD) == pytest.approx(0.5)

    def test_horizon_constant_any_n(self):
        seq = EventuallyPeriodicSequence.constant(2)
        for n in (1, 7, 50):
            assert rate_horizon(seq, SUP_ALL_K, FORWARD, n, 10) == pytest.approx(2, rel=1e-12)

    def test_horizon_flat_inf(self):
        seq = EventuallyPeriodicSequence.constant(1)
        assert rate_horizon(seq, INF_ALL_K, BACKWARD, 13, 40) == pytest.approx(1)

    def test_valley_horizon_window(self):
        value = rate_horizon(VALLEY, SUP_ALL_K, FORWARD, 100, 500)
        assert 1.9 <= value <= 2.0 + 1e-12

    def test_horizon_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            rate_horizon(VALLEY, SUP_ALL_K, FORWARD, 0, 10)
        with pytest.raises(ValueError):
            rate_exact(VALLEY, "sup_somewhere", FORWARD)

    def test_side_rate(self):
        rates = side_rate(VALLEY)
        assert (rates.gm_neg, rates.gm_pos) == (pytest.approx(2), pytest.approx(0.5))

    @given(sequences())
    def test_sup_not_below_inf(self, seq):
        assert rate_exact(seq, SUP_ALL_K) >= rate_exact(seq, INF_ALL_K)

    @given(sequences(), st.sampled_from(QUANTIFIERS), st.sampled_from((FORWARD, BACKWARD)))
    def test_rate_sign_matches_rate(self, seq, quantifier, direction):
        sign = rate_sign(seq, quantifier, direction)
        rate = rate_exact(seq, quantifier, direction)
        if sign > 0:
            assert rate > 1
        elif sign < 0:
            assert rate < 1
        else:
            assert rate == pytest.approx(1)

    @settings(max_examples=50, deadline=None)
    @given(sequences())
    def test_horizon_within_bias(self, seq):
        if seq.core_lo > 0 or seq.core_hi < 0:
            seq = seq.with_core(min(seq.core_lo, 0), max(seq.core_hi, 0))
        bias = horizon_bias(seq, 200)
        for quantifier, direction in (
            (SUP_ALL_K, FORWARD),
            (INF_ALL_K, FORWARD),
            (SUP_K_IN_NEGATIVES, BACKWARD),
            (INF_K_IN_NEGATIVES, BACKWARD),
            (SUP_K_IN_NATURALS, FORWARD),
            (INF_K_IN_NATURALS, FORWARD),
        ):
            exact = math.log(rate_exact(seq, quantifier, direction))
            estimate = math.log(rate_horizon(seq, quantifier, direction, 200, 500))
            assert abs(exact - estimate) <= bias + 1e-9


class TestExactComparisons:
    """Comparações exatas contra 1"""

    def test_rational_boundary(self):
        assert compare_product_to_one([Fraction(1, 4), Fraction(4)]) == 0
        assert compare_product_to_one([Fraction(1, 4), Fraction(3)]) == -1

    def test_float_tolerance(self):
        assert compare_product_to_one([0.25, 4.0000000000001]) == 0
        assert compare_product_to_one([0.25, 4.1]) == 1

    def test_tail_sign(self):
        assert tail_sign(VALLEY, NEG) == 1
        assert tail_sign(VALLEY, POS) == -1

    def test_sup_partial_product_bounded(self):
        # a partir de 0 para a direita: 1/2, 1/4, ...
        assert sup_partial_product(VALLEY, 0, FORWARD) == pytest.approx(0.5)
        # para a esquerda a partir de -1: 2, 4, ... ilimitado
        assert sup_partial_product(VALLEY, -1, BACKWARD) == math.inf

    def test_sup_partial_product_oscillating(self):
        seq = EventuallyPeriodicSequence(0, (1,), (1,), (Fraction(1, 4), 4))
        assert sup_partial_product(seq, 1, FORWARD) == pytest.approx(1)
        assert sup_partial_product(seq, 2, FORWARD) == pytest.approx(4)


class TestClosedFormWalks:
    """Somas parciais em forma fechada"""

    @settings(max_examples=60, deadline=None)
    @given(sequences(), st.integers(min_value=-60, max_value=60), st.integers(min_value=0, max_value=120))
    def test_log_sum_matches_window(self, seq, lo, n):
        assert log_sum(seq, lo, lo + n) == pytest.approx(window_log_sum(seq, lo, n), abs=1e-9)

    def test_log_sum_empty_range(self):
        assert log_sum(VALLEY, 3, 2) == 0.0

    def test_log_sum_far_tail(self):
        # 10⁹ fatores 1/2 a partir de 0
        assert log_sum(VALLEY, 0, 10**9 - 1) == pytest.approx(-10**9 * math.log(2), rel=1e-12)

    def test_first_crossing_constant(self):
        assert first_crossing(EventuallyPeriodicSequence.constant(2), 0, FORWARD, math.log(1e6)) == 20

    def test_first_crossing_slow_tail(self):
        seq = EventuallyPeriodicSequence.constant(Fraction(10001, 10000))
        target = math.log(1e6)
        n = first_crossing(seq, 0, FORWARD, target)
        assert log_sum(seq, 0, n - 1) > target >= log_sum(seq, 0, n - 2)

    def test_first_crossing_never(self):
        assert first_crossing(EventuallyPeriodicSequence.constant(HALF), 0, FORWARD, 0.0) is None
        oscillating = EventuallyPeriodicSequence(0, (1,), (1,), (Fraction(1, 4), 4))
        assert first_crossing(oscillating, 1, FORWARD, math.log(2)) is None
        assert first_crossing(oscillating, 2, FORWARD, math.log(2)) == 1

    def test_first_crossing_backward(self):
        # lendo v_{-1}, v_{-2}, …: 2, 4, 8, …
        assert first_crossing(VALLEY, -1, BACKWARD, math.log(7)) == 3

    def test_stable_crossing_after_dips(self):
        # somas 3, 1, 4, 2, 5, 3, … (em unidades de log 2) contra 2.5
        seq = EventuallyPeriodicSequence(0, (1,), (1,), (8, Fraction(1, 4)))
        target = 2.5 * math.log(2)
        assert first_crossing(seq, 1, FORWARD, target) == 1
        assert stable_crossing(seq, 1, FORWARD, target) == 5

    def test_stable_crossing_through_core(self):
        seq = EventuallyPeriodicSequence(0, (Fraction(1, 8),), (2,), (2,))
        # somas -3, -2, -1, 0, 1, 2, … (em unidades de log 2) contra 1.5
        assert stable_crossing(seq, 0, FORWARD, 1.5 * math.log(2)) == 6

    def test_stable_crossing_needs_growing_tail(self):
        assert stable_crossing(VALLEY, 0, FORWARD, 0.0) is None
