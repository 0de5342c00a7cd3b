import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from gkdv.resonance import (BudgetError, ConstraintError, DegenerateError, FrequencyTuple, cancellation_identity_check,
                            cancellation_terms, count_resonant_tuples, counting_lemma_sweep, dyadic_block,
                            kdv_factorization_check, lemma_configurations, matrix_norm_bound, quad_roots,
                            region_classify, resonance_fn, root_count_sweep, spectral_norm,
                            verify_zeta2_lower_bound, wick_nonzero, zeta_classify, zeta_events)

nonzero = st.integers(-60, 60).filter(bool)


def ft(n, *parts, sigmas=None):
    return FrequencyTuple(n, parts, sigmas)


# -- resonance function and KdV factorisation ---------------------------------------

def test_resonance_examples():
    assert resonance_fn(ft(4, 1, 1, 1, 1)) == 60
    assert resonance_fn(ft(2, 2, 2, -1, -1)) == -6


def test_resonance_is_exact_for_large_entries():
    t = ft(10 ** 6, 10 ** 6 - 3, 1, 1, 1)
    assert resonance_fn(t) == (10 ** 6) ** 3 - (10 ** 6 - 3) ** 3 - 3


@pytest.mark.parametrize("n, parts", [(3, (1, 1, 1, 1)), (1, (1, 0, -1, 1)), (0, (1, -1, 1, -1))])
def test_constraint_rejections(n, parts):
    with pytest.raises(ConstraintError):
        FrequencyTuple(n, parts)


def test_kdv_examples():
    assert kdv_factorization_check(3, 1, 2) == (18, 18)
    assert kdv_factorization_check(2, 1, 1) == (6, 6)
    with pytest.raises(ConstraintError):
        kdv_factorization_check(5, 5, 0)
    with pytest.raises(ConstraintError):
        kdv_factorization_check(5, 2, 2)


@given(nonzero, nonzero)
def test_kdv_identity_property(n1, n2):
    assume(n1 + n2 != 0)
    lhs, rhs = kdv_factorization_check(n1 + n2, n1, n2)
    assert lhs == rhs


# -- zeta classification -----------------------------------------------------------

def test_zeta_examples():
    assert zeta_classify(ft(4, 1, 1, 1, 1)).label == "zeta1"
    z = zeta_classify(ft(2, 2, 2, -1, -1))
    assert z.label == "zeta2" and set(z.events) == {"n=n1", "n=n2"}
    # a single coincidence is removed by the gauge altogether
    single = zeta_classify(ft(2, 1, -1, 1, 1))
    assert zeta_events(ft(2, 1, -1, 1, 1)) == ("n1=-n2",)
    assert single.label == "excluded" and single.multiplicity == 0


def test_zeta2_small_enumeration():
    r = verify_zeta2_lower_bound(2)
    assert r.min_ratio == pytest.approx(1.5)
    assert abs(resonance_fn(ft(*r.argmin))) / max(map(abs, r.argmin)) ** 2 == pytest.approx(1.5)


def test_zeta2_bound_at_eight():
    r = verify_zeta2_lower_bound(8)
    assert r.min_ratio >= 1 and r.count > 0


def test_zeta2_budget():
    with pytest.raises(BudgetError):
        verify_zeta2_lower_bound(65)


def test_zeta2_matches_brute_force():
    vals = [k for k in range(-3, 4) if k]
    best = np.inf
    for parts in itertools.product(vals, repeat=4):
        n = sum(parts)
        if n == 0 or abs(n) > 3:
            continue
        t = ft(n, *parts)
        if zeta_classify(t).label == "zeta2":
            best = min(best, abs(resonance_fn(t)) / t.n_max ** 2)
    assert verify_zeta2_lower_bound(3).min_ratio == pytest.approx(best)


# -- regions -------------------------------------------------------------------------

def test_region_examples():
    assert region_classify(ft(2, 1, 1, -1, 1, sigmas=(0, 0, 0, 0, 0))).region == "A-1"
    assert region_classify(ft(2, 1, 1, -1, 1, sigmas=(10, 0, 0, 0, 0))).region == "A0"
    t = ft(2, 1, 1, -1, 1)
    m2 = t.n_max ** 2
    assert region_classify(ft(2, 1, 1, -1, 1, sigmas=(0, 2 * m2, 2 * m2, 0, 0))).region == "A1"
    assert region_classify(ft(2, 1, 1, -1, 1, sigmas=(0, 0, 0, 0, -m2))).region == "A4"
    assert region_classify(ft(2, 1, 1, -1, 1, sigmas=(0, 0, 0, 0.99 * m2, 0))).region == "A-1"


def test_region_needs_weights():
    with pytest.raises(ValueError):
        region_classify(ft(4, 1, 1, 1, 1))


@given(st.lists(st.floats(-100, 100), min_size=5, max_size=5), st.floats(0.1, 2), st.floats(0.1, 2))
def test_regions_are_total(sig, c_low, c_high):
    label = region_classify(ft(2, 1, 1, -1, 1, sigmas=sig), c_low, c_high)
    assert label.region in ("A-1", "A0", "A1", "A2", "A3", "A4")


# -- quadratic roots -------------------------------------------------------------------

def test_quad_example():
    assert 1 in quad_roots(4, 1, 1, 60)


def test_quad_degenerate():
    with pytest.raises(DegenerateError):
        quad_roots(3, 2, 1, 0)


@given(nonzero, nonzero, nonzero, nonzero)
def test_quad_roots_are_roots(n, n1, n3, n4):
    n2 = n - n1 - n3 - n4
    assume(n1 + n2 != 0)
    mu = n ** 3 - n1 ** 3 - n2 ** 3 - n3 ** 3 - n4 ** 3
    roots = quad_roots(n, n3, n4, mu)
    assert n1 in roots and len(roots) <= 2
    for r in roots:
        assert n ** 3 - r ** 3 - (n - r - n3 - n4) ** 3 - n3 ** 3 - n4 ** 3 == mu


def test_root_sweep_small():
    r = root_count_sweep(8)
    assert r.max_roots <= 2 and r.checked > 0


# -- counting lemmas -------------------------------------------------------------------

def test_wick_pairing():
    assert wick_nonzero([1, 2], [2, 1])
    assert wick_nonzero([3, -3], [])
    assert not wick_nonzero([1], [2])
    assert not wick_nonzero([1, 1], [])


def test_dyadic_block():
    np.testing.assert_array_equal(dyadic_block(2), [-3, -2, 2, 3])


def test_unit_sizes():
    for lemma in ("2ci", "1bi"):
        r = count_resonant_tuples(lemma, (1, 1, 1, 1, 1))
        assert r.holds and r.count <= 1


def test_2ci_at_eight():
    r = count_resonant_tuples("2ci", (8, 8, 8, 8, 8))
    assert r.bound == 64 and r.holds


def test_empty_for_unreachable_mu():
    assert count_resonant_tuples("2ci", (4, 4, 4, 4, 4), fixed=(5, 10 ** 6)).count == 0
    assert count_resonant_tuples("1bi", (4, 4, 4, 4, 4), fixed=(4, 10 ** 6)).count == 0


def test_count_validation():
    with pytest.raises(ValueError):
        count_resonant_tuples("2ci", (8, 8, 8))
    with pytest.raises(ValueError):
        count_resonant_tuples("2ci", (8, 8, 8, 8, 6))
    with pytest.raises(BudgetError):
        count_resonant_tuples("2ci", (32, 8, 8, 8, 8))
    with pytest.raises(ValueError):
        count_resonant_tuples("3x", (1, 1, 1, 1, 1))


def test_unordered_counts_dominate():
    sizes = (4, 4, 4, 2, 1)
    assert count_resonant_tuples("2ci", sizes, ordered=False).count >= count_resonant_tuples("2ci", sizes).count


def test_configurations_respect_cases():
    for cfg in lemma_configurations("2ci", 4):
        assert cfg[2] >= cfg[3] >= cfg[4] and sorted(cfg)[1] < max(cfg)
    for cfg in lemma_configurations("1bi", 4):
        assert cfg[3] == max(cfg)


def test_small_sweeps_hold():
    for lemma in ("2ci", "1bi"):
        sweep = counting_lemma_sweep(lemma, budget=4)
        assert sweep.holds and sweep.configurations > 0


# -- cancellation identity ---------------------------------------------------------------

def test_symmetric_tuple():
    # n2..n4 and the mirrored times: both denominators coincide in size
    lhs, exact, _ = cancellation_terms(Fraction(3), 1, 1, -1, Fraction(5), Fraction(2), Fraction(1), Fraction(2))
    assert lhs == exact


def test_cancellation_small_run():
    r = cancellation_identity_check(500, seed=1)
    assert r.max_residual <= 1e-12
    assert r.max_residual_as_printed > 1e-3


def test_resample_path():
    # with all times zero, n + n2 + n3 + n4 = 0 makes a denominator vanish
    r = cancellation_identity_check(200, seed=0, max_freq=2, tau_scale=0)
    assert r.resampled > 0 and r.max_residual <= 1e-12


# -- matrix lemma ---------------------------------------------------------------------

@pytest.mark.parametrize("A, bound, norm", [(np.eye(2), 1.0, 1.0), ([[0, 1], [1, 0]], np.sqrt(2), 1.0),
                                            (np.diag([2.0, 3.0]), 3.0, 3.0)])
def test_matrix_examples(A, bound, norm):
    b, n = matrix_norm_bound(np.asarray(A, float))
    assert b == pytest.approx(bound) and n == pytest.approx(norm, rel=1e-8)


def test_matrix_validation():
    with pytest.raises(ValueError):
        matrix_norm_bound(np.zeros((2, 3)))
    with pytest.raises(BudgetError):
        matrix_norm_bound(np.zeros((513, 513)))


def test_zero_matrix():
    assert spectral_norm(np.zeros((3, 3))) == (0.0, True)


@given(st.integers(1, 12), st.integers(0, 2 ** 32 - 1))
def test_bound_dominates_norm(d, seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    b, n = matrix_norm_bound(A)
    assert n == pytest.approx(np.linalg.norm(A, 2), rel=1e-6)
    assert b >= n * (1 - 1e-9)
