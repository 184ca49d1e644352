"""
Testes do módulo de sombreamento
"""

from fractions import Fraction

import pytest

from src.core.sequences import NEG, POS, EventuallyPeriodicSequence
from src.core.shadowing import (
    ALL_STABLE,
    ALL_UNSTABLE,
    CUT,
    NoSplittingError,
    Pseudotrajectory,
    build_splitting,
    make_pseudotrajectory,
    shadow,
)
from src.core.simulate import ShiftOperator, ShiftVector
from src.core.systems import WeightSequence

HALF = Fraction(1, 2)
DELTA = 1e-3


def operator(seq, p=1.0):
    return ShiftOperator(WeightSequence(seq, p=p))


DOUBLE = operator(EventuallyPeriodicSequence.constant(2))
HALVING = operator(EventuallyPeriodicSequence.constant(HALF))
SPLIT = operator(EventuallyPeriodicSequence.step(HALF, 2))


class TestSplitting:
    """Decomposições certificadas"""

    def test_all_unstable(self):
        split = build_splitting(DOUBLE)
        assert split.kind == ALL_UNSTABLE
        assert split.unstable.lam == pytest.approx(0.5)
        assert split.unstable.C == pytest.approx(1)
        assert split.apriori_bound(DELTA) == pytest.approx(DELTA)

    def test_all_stable(self):
        split = build_splitting(HALVING)
        assert split.kind == ALL_STABLE
        assert split.apriori_bound(DELTA) == pytest.approx(2 * DELTA)

    def test_cut(self):
        split = build_splitting(SPLIT)
        assert split.kind == CUT
        assert split.is_stable(0) and not split.is_stable(1)
        assert split.apriori_bound(DELTA) == pytest.approx(3 * DELTA)

    def test_projection(self):
        split = build_splitting(SPLIT)
        stable, unstable = split.project(ShiftVector({-2: 1.0, 0: 2.0, 3: 4.0}))
        assert stable.support == [-2, 0]
        assert unstable.support == [3]

    def test_identity_refused(self):
        with pytest.raises(NoSplittingError):
            build_splitting(operator(EventuallyPeriodicSequence.constant(1)))

    def test_reversed_split_refused(self):
        # GM⁻ > 1 > GM⁺: nenhuma das condições a), b), c)
        with pytest.raises(NoSplittingError):
            build_splitting(operator(EventuallyPeriodicSequence.step(2, HALF)))


class TestPseudotrajectory:
    """Geração de δ-pseudotrajetórias"""

    def test_errors_within_delta(self):
        pt = make_pseudotrajectory(SPLIT, None, DELTA, 41, seed=3)
        assert len(pt) == 41
        assert pt.half_length == 20
        assert all(e.norm() <= DELTA * (1 + 1e-12) for e in pt.errors)

    def test_block_restricts_support(self):
        neg = make_pseudotrajectory(SPLIT, None, DELTA, 21, seed=2, block=NEG)
        assert all(k <= 0 for e in neg.errors for k in e.support)
        pos = make_pseudotrajectory(SPLIT, None, DELTA, 21, seed=2, block=POS)
        assert all(k >= 1 for e in pos.errors for k in e.support)

    def test_zero_errors_is_true_orbit(self):
        x0 = ShiftVector({0: 1.0})
        pt = make_pseudotrajectory(DOUBLE, x0, DELTA, 5, zero_errors=True)
        assert [x.norm() for x in pt.points] == pytest.approx([1, 2, 4, 8, 16])

    def test_deterministic(self):
        a = make_pseudotrajectory(SPLIT, None, DELTA, 31, seed=9)
        b = make_pseudotrajectory(SPLIT, None, DELTA, 31, seed=9)
        assert all(x.allclose(y, rel=0) for x, y in zip(a.points, b.points))

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            make_pseudotrajectory(DOUBLE, None, 0.0, 11)
        with pytest.raises(ValueError):
            make_pseudotrajectory(DOUBLE, None, DELTA, 10)


class TestShadow:
    """Órbitas sombreadoras"""

    def test_double_many_seeds(self):
        split = build_splitting(DOUBLE)
        for seed in range(100):
            pt = make_pseudotrajectory(DOUBLE, None, DELTA, 201, seed=seed)
            result = shadow(DOUBLE, pt, split)
            assert result.epsilon <= DELTA + 1e-12
            assert result.within_bound
            assert result.residual <= 1e-9

    def test_split_within_bound(self):
        split = build_splitting(SPLIT)
        for seed in range(20):
            pt = make_pseudotrajectory(SPLIT, None, DELTA, 101, seed=seed)
            result = shadow(SPLIT, pt, split)
            assert result.within_bound
            assert result.epsilon <= 3 * DELTA + 1e-12

    def test_split_full_scale(self):
        # cota a priori 3δ; 2δ só é ultrapassado marginalmente em raras sementes
        split = build_splitting(SPLIT)
        above_two_delta = []
        for seed in range(100):
            pt = make_pseudotrajectory(SPLIT, None, DELTA, 201, seed=seed)
            result = shadow(SPLIT, pt, split)
            assert result.within_bound
            assert result.epsilon <= 3 * DELTA + 1e-12
            if result.epsilon > 2 * DELTA:
                above_two_delta.append(result.epsilon)
        assert len(above_two_delta) <= 5
        assert all(eps <= 2.01 * DELTA for eps in above_two_delta)

    def test_inconsistent_errors_fail_orbit_check(self):
        split = build_splitting(DOUBLE)
        pt = make_pseudotrajectory(DOUBLE, None, DELTA, 51, seed=2)
        errors = list(pt.errors)
        errors[0] = errors[0] + ShiftVector({0: DELTA / 2}, DOUBLE.p)
        result = shadow(DOUBLE, Pseudotrajectory(pt.points, pt.delta, tuple(errors)), split)
        assert result.residual > 1e-6
        assert not result.orbit_ok
        assert not result.within_bound

    def test_split_stable_block(self):
        split = build_splitting(SPLIT)
        for seed in range(20):
            pt = make_pseudotrajectory(SPLIT, None, DELTA, 101, seed=seed, block=NEG)
            assert shadow(SPLIT, pt, split).epsilon <= 2 * DELTA + 1e-12

    def test_halving(self):
        split = build_splitting(HALVING)
        pt = make_pseudotrajectory(HALVING, ShiftVector({0: 5.0}), DELTA, 81, seed=1)
        result = shadow(HALVING, pt, split)
        assert result.within_bound
        assert result.residual <= 1e-9

    def test_true_orbit_is_its_own_shadow(self):
        x0 = ShiftVector({2: 1.0, -1: -0.5})
        pt = make_pseudotrajectory(SPLIT, x0, DELTA, 21, zero_errors=True)
        result = shadow(SPLIT, pt, build_splitting(SPLIT))
        assert result.epsilon == 0
        assert result.z.allclose(x0)

    def test_shadow_orbit_relation(self):
        split = build_splitting(SPLIT)
        pt = make_pseudotrajectory(SPLIT, None, DELTA, 21, seed=6)
        result = shadow(SPLIT, pt, split)
        z = result.z
        for x in pt.points:
            assert (x - z).norm() <= result.epsilon * (1 + 1e-9) + 1e-12
            z = SPLIT.apply(z, 1)

    def test_p2(self):
        op = operator(EventuallyPeriodicSequence.constant(2), p=2.0)
        split = build_splitting(op)
        pt = make_pseudotrajectory(op, None, DELTA, 61, seed=8)
        assert shadow(op, pt, split).within_bound

    def test_refuses_missing_splitting(self):
        pt = make_pseudotrajectory(DOUBLE, None, DELTA, 11)
        with pytest.raises(NoSplittingError):
            shadow(DOUBLE, pt, None)
