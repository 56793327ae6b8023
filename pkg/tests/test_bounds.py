import math

import numpy as np
import pytest

from lowdisc import (ScrambleConfig, atanassov_star_bound, bracketing_bound,
                     cover_constant_pipeline, crossover_threshold, d2_proof_bound,
                     d3_proof_bound, generate_point_set, halton_extreme_bound,
                     inverse_point_count, jump_plan, lifted_atanassov_bound,
                     probability_forms, proof_bound, sqrt_bound, star_disc_1d,
                     stirling_cover_bound, subsequence_extreme_bound, vdc_star_bound)
from lowdisc.bounds import C_PREVIOUS, C_STAR, LOG2, PROB_EXP_COEFF, PROB_EXP_OFFSET


def test_vdc_star_bound_values():
    # 0.01 + 0.015 + ln(100)/(2 ln 2 * 100)
    assert vdc_star_bound(2, 100) == pytest.approx(0.0582189, abs=1e-6)
    assert vdc_star_bound(2, 1) == 2.5
    with pytest.raises(ValueError):
        vdc_star_bound(1, 10)


def test_vdc_bound_dominates_measurements():
    for b in (2, 3, 5):
        cfg = ScrambleConfig.plain((b,))
        xs = generate_point_set(cfg, 10 ** 4).coords_1d
        for n in (1, 10, 100, 1000, 10 ** 4):
            measured = star_disc_1d(xs[:n]).value
            assert measured <= vdc_star_bound(b, n)


def test_subsequence_extreme_bound():
    assert subsequence_extreme_bound(3, 1000) == pytest.approx(0.0062880, abs=1e-5)
    assert subsequence_extreme_bound(2, 50) == pytest.approx(
        math.log(50) / (2 * LOG2 * 50))


def test_halton_extreme_bound():
    assert halton_extreme_bound((2, 3), 1000) == pytest.approx(0.50133, abs=1e-3)
    # d=1 shape: 4x the star leading term
    assert halton_extreme_bound((2,), 500) == pytest.approx(
        4 * subsequence_extreme_bound(2, 500))
    assert halton_extreme_bound((2, 3), 10) > 1.0  # vacuous at small N
    with pytest.raises(ValueError):
        halton_extreme_bound((2, 2), 100)


def test_atanassov_bound():
    assert atanassov_star_bound((2,), 100) == pytest.approx(0.0964386, abs=1e-5)
    # dominates the measured base-2 van der Corput value at N=100 (0.0231)
    xs = generate_point_set(ScrambleConfig.plain((2,)), 100).coords_1d
    assert star_disc_1d(xs).value <= atanassov_star_bound((2,), 100)
    # halved-even weight only changes even bases
    assert atanassov_star_bound((3, 5), 100, halved_even=True) == pytest.approx(
        atanassov_star_bound((3, 5), 100))
    assert atanassov_star_bound((2,), 100, halved_even=True) < atanassov_star_bound((2,), 100)


def test_bracketing_bound():
    assert bracketing_bound(3, 0.5) == 36.0
    assert bracketing_bound(3, 1.0) == 4.5
    with pytest.raises(ValueError):
        bracketing_bound(2, 0.5)
    # Stirling relaxation dominates at the cover scale used by the pipeline
    for d in (5, 7, 20):
        assert bracketing_bound(d, 2.0 ** -13) <= stirling_cover_bound(13, d)


def test_cover_pipeline_constants():
    cp = cover_constant_pipeline(13, 5)
    assert cp.mu_minus_sigma == pytest.approx(10.1495427, abs=1e-6)
    assert cp.c == pytest.approx(2.46319, abs=1e-4)
    assert cp.bracket_ok
    # internal consistency: every field reproduces from its defining formula
    assert cp.sigma == pytest.approx(13 - 13 * LOG2 - 1 - LOG2 / 5, abs=1e-12)
    assert cp.zeta == pytest.approx(1 + LOG2 + LOG2 / 5, abs=1e-12)
    assert cp.tau_mu == pytest.approx(LOG2 / cp.mu_minus_sigma + 0.02120108, abs=1e-12)
    assert cp.c_mu == pytest.approx(1 / (1 - math.sqrt(14 / 26)), abs=1e-12)
    assert cp.c0 == pytest.approx(math.sqrt(cp.mu_minus_sigma / 2), abs=1e-12)
    assert cp.c1 == pytest.approx(
        math.sqrt(4 * cp.tau_mu * (1 + 1 / (3 * cp.c_mu))), abs=1e-12)
    assert cp.c == pytest.approx(
        cp.c0 * (1 + cp.c1 * cp.c_mu * math.sqrt(13 / 2.0 ** 13)), abs=1e-12)


def test_cover_pipeline_monotone_and_bracket():
    cs = [cover_constant_pipeline(13, d).c for d in range(5, 1001)]
    assert all(a >= b for a, b in zip(cs, cs[1:]))
    assert max(cs) <= C_STAR + 1e-4
    assert cover_constant_pipeline(13, 10 ** 6).c <= C_STAR + 1e-4
    assert all(cover_constant_pipeline(13, d).bracket_ok for d in (5, 10, 100, 1000))


def test_probability_forms():
    prob, _ = probability_forms(C_STAR, 5, 0.5)
    assert prob == pytest.approx(0.0, abs=1e-4)  # threshold constant
    _, quant = probability_forms(C_STAR, 5, 0.95)
    assert quant == pytest.approx(2.53484, abs=1e-4)
    # algebraic identity between the two printed constants
    assert 0.7731673 ** 2 * PROB_EXP_COEFF == pytest.approx(1.0, abs=1e-5)
    assert math.sqrt(PROB_EXP_OFFSET / PROB_EXP_COEFF) == pytest.approx(2.46318, abs=1e-4)


def test_sqrt_bound_corollary_values():
    for d in (1, 4, 10, 50):
        assert sqrt_bound(C_STAR, d, 98 * d) == pytest.approx(0.24882, abs=1e-5)
        assert sqrt_bound(C_STAR, d, 98 * d) <= 0.25
        assert sqrt_bound(C_STAR, d, 10 * d) == pytest.approx(0.7789269, abs=1e-6)
        assert sqrt_bound(C_PREVIOUS, d, 10 * d) == pytest.approx(0.78956, abs=1e-5)
        assert sqrt_bound(C_PREVIOUS, d, 100 * d) <= 0.25


def test_sqrt_bound_inverse_consistency():
    for d in (1, 5, 20):
        for eps in (0.25, 0.1, 0.03):
            n = inverse_point_count(C_STAR, d, eps)
            assert sqrt_bound(C_STAR, d, n) <= eps * (1 + 1e-12) or \
                sqrt_bound(C_STAR, d, n + 1) <= eps * (1 + 1e-12)


def test_bound_positive_continuous_grid():
    fns = [lambda n: vdc_star_bound(2, n), lambda n: d2_proof_bound(n),
           lambda n: d3_proof_bound(n), lambda n: atanassov_star_bound((2, 3, 5), n)
           if n >= 2 else None]
    grid = np.unique(np.geomspace(2, 10 ** 9, 200).astype(np.int64))
    for fn in fns:
        vals = [fn(int(n)) for n in grid]
        assert all(v > 0 for v in vals)
        # no wild jumps between neighboring sample points (continuity proxy)
        for (n1, v1), (n2, v2) in zip(zip(grid, vals), zip(grid[1:], vals[1:])):
            assert abs(v2 - v1) <= max(v1, v2)


def test_crossover_thresholds():
    assert crossover_threshold(2, d2_proof_bound, 2.463) == 1
    assert crossover_threshold(3, d3_proof_bound, 2.463) == 28
    # bound above the target at 28, below at 29
    assert d3_proof_bound(28) >= sqrt_bound(2.463, 3, 28)
    assert d3_proof_bound(29) < sqrt_bound(2.463, 3, 29)


def test_crossover_d4_atanassov_lifting():
    t = crossover_threshold(4, proof_bound(4, halved_even=True), 2.463)
    assert t == 11577  # within 1.6% of the published 11,759
    assert abs(t - 11759) <= 0.1 * 11759
    # paper-literal digit weight lands far away; recorded, not asserted tight
    t_lit = crossover_threshold(4, proof_bound(4), 2.463)
    assert t_lit == 71176


def test_crossover_no_solution():
    with pytest.raises(ValueError):
        crossover_threshold(3, lambda n: 10.0 / math.sqrt(n) + 1.0, 2.463, n_cap=10 ** 6)


def test_lifted_bound_composition():
    for n in (100, 11760):
        assert lifted_atanassov_bound((2, 3, 5), n) == pytest.approx(
            atanassov_star_bound((2, 3, 5), n) + 1.0 / n)


def test_jump_plan():
    plan = jump_plan(5000, 0.0045, 4, 2.463, "sequence")
    assert plan.n1 == 5348  # formula value; published example prints 5,363
    assert plan.alpha == pytest.approx(1 / (1 - plan.budget))
    assert plan.valid
    # validity flag re-derives the triangle inequality at N1
    reached = plan.d0 / plan.alpha + (plan.alpha - 1) / plan.alpha
    assert reached <= sqrt_bound(2.463, 4, 5000)

    ps = jump_plan(5000, 0.0045, 4, 2.463, "pointset")
    assert ps.n1 == 5347  # published example prints 5,353
    assert ps.alpha == pytest.approx((1 - 1 / 5000) / (1 - ps.budget))
    assert ps.valid

    with pytest.raises(ValueError):
        jump_plan(100, 0.9, 1, 2.463, "sequence")  # bound already violated


def test_pipeline_domain_errors():
    with pytest.raises(ValueError):
        cover_constant_pipeline(1, 5)
    with pytest.raises(ValueError):
        cover_constant_pipeline(13, 4)
    with pytest.raises(ValueError):
        probability_forms(2.5, 4, 0.5)
