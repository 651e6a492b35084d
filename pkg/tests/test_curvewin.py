"""Tests for sliding-window curve statistics.

Hand-checkable cases use F_7 and F_13; randomized cross-checks compare
the sliding update against independent per-window summation and brute
force over y.  Frozen experiment values are regression pins computed by
this module once and checked exactly thereafter.
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from curvestats.curvewin import (
    BetaScan,
    Curve,
    Histogram,
    Rect,
    ScanSpec,
    beta_residue_scan,
    condition_star,
    condition_star_witness,
    cor4_exceptional,
    curve,
    delta_array,
    discrepancy,
    experiment_thm1,
    experiment_thm2,
    experiment_thm3,
    fiber_array,
    fiber_count,
    gauss_lemma_check,
    joint_histogram,
    residue_histogram,
    restricted_window_counts,
    theorem_experiment,
    window_counts,
    window_counts_direct,
)
from curvestats.errors import HypothesisError
from curvestats.ffield import FieldSpec, legendre
from curvestats.polyff import Poly, admissible, poly, x_poly


def _field(p):
    return FieldSpec.from_prime(p)


def _random_poly(rng, p, max_deg):
    deg = int(rng.integers(1, max_deg + 1))
    coeffs = [int(rng.integers(0, p)) for _ in range(deg)]
    coeffs.append(int(rng.integers(1, p)))
    return poly(coeffs, p)


def _brute_fiber(p, ell, val):
    return sum(1 for y in range(p) if pow(y, ell, p) == val)


# ---------------------------------------------------------------- fibers


def test_fiber_examples_f7():
    fs = _field(7)
    C = curve(fs, 2, x_poly(7))
    assert fiber_count(C, 2) == 2
    assert fiber_count(C, 0) == 1
    C3 = curve(fs, 3, x_poly(7))
    assert fiber_count(C3, 1) == 3


def test_fiber_matches_brute_force():
    rng = np.random.default_rng(11)
    for p in (7, 13, 31):
        fs = _field(p)
        for ell in (2, 3, 4):
            for _ in range(5):
                C = curve(fs, ell, _random_poly(rng, p, 5))
                for x in range(p):
                    assert fiber_count(C, x) == _brute_fiber(p, ell, C.P(x))


def test_fiber_array_agrees_pointwise():
    fs = _field(31)
    C = curve(fs, 3, poly([4, 0, 1, 2], 31))
    arr = fiber_array(C, 0, 30)
    assert arr.tolist() == [fiber_count(C, x) for x in range(31)]
    assert fiber_array(C, 5, 4).size == 0


def test_curve_constructor_rejects_bad_inputs():
    fs = _field(7)
    with pytest.raises(ValueError):
        curve(fs, 1, x_poly(7))
    with pytest.raises(ValueError):
        curve(fs, 2, poly([3], 7))
    with pytest.raises(ValueError):
        curve(fs, 2, x_poly(11))


# ---------------------------------------------------------------- windows


def test_window_examples_f7():
    fs = _field(7)
    C = curve(fs, 2, x_poly(7))
    assert window_counts(C, ScanSpec(0, 1, 3)).tolist() == [4]
    assert window_counts(C, ScanSpec(3, 1, 3)).tolist() == [2]
    assert window_counts(C, ScanSpec(0, 4, 3)).tolist() == [4, 4, 2, 2]


def test_window_of_roots_counts_roots():
    fs = _field(7)
    P = poly([2, 4, 1], 7)  # (x-1)(x-2)
    assert P(1) == 0 and P(2) == 0
    C = curve(fs, 2, P)
    assert window_counts(C, ScanSpec(0, 1, 2)).tolist() == [2]


def test_sliding_equals_direct_on_random_configurations():
    rng = np.random.default_rng(2024)
    primes = [101, 1009, 10007, 99991]
    for _ in range(25):
        p = int(rng.choice(primes))
        fs = _field(p)
        ell = int(rng.choice([2, 3, 4]))
        C = curve(fs, ell, _random_poly(rng, p, 4))
        I = int(rng.integers(1, min(p // 3, 200)))
        max_scan = p - I
        scan_len = int(rng.integers(1, min(max_scan, 400) + 1))
        x_start = int(rng.integers(0, max_scan - scan_len + 1))
        spec = ScanSpec(x_start, scan_len, I)
        assert np.array_equal(window_counts(C, spec), window_counts_direct(C, spec))


def test_window_counts_thread_invariance():
    fs = _field(10007)
    C = curve(fs, 2, poly([1, 1, 0, 1], 10007))
    spec = ScanSpec(17, 3001, 64)
    base = window_counts(C, spec, threads=1)
    for threads in (2, 3, 8):
        assert np.array_equal(base, window_counts(C, spec, threads=threads))


def test_wraparound_rejected_by_name():
    fs = _field(7)
    C = curve(fs, 2, x_poly(7))
    with pytest.raises(HypothesisError) as exc:
        window_counts(C, ScanSpec(3, 2, 3))
    assert exc.value.name == "no_wraparound"


def test_scan_spec_rejects_degenerate_values():
    with pytest.raises(ValueError):
        ScanSpec(0, 0, 3).validate(7)
    with pytest.raises(ValueError):
        ScanSpec(-1, 1, 3).validate(7)


def test_scan_spec_full_leaves_margin():
    spec = ScanSpec.full(103, 10, 5)
    assert spec.x_start == 0 and spec.scan_len == 88
    spec.validate(103)
    assert spec.x_start + spec.scan_len - 1 + spec.window_len == 97


def test_parity_invariant_quadratic_curves():
    rng = np.random.default_rng(5)
    ran = 0
    for _ in range(20):
        p = int(rng.choice([101, 1009, 10007]))
        fs = _field(p)
        C = curve(fs, 2, _random_poly(rng, p, 4))
        I = int(rng.integers(1, 60))
        scan_len = int(rng.integers(1, 200))
        if scan_len + I > p:
            continue
        ran += 1
        spec = ScanSpec(0, scan_len, I)
        counts = window_counts(C, spec)
        xs = np.arange(1, scan_len + I, dtype=np.int64)
        is_root = (C.P.eval_vec(xs) == 0).astype(np.int64)
        roots_in = np.array(
            [int(is_root[s : s + I].sum()) for s in range(scan_len)], dtype=np.int64
        )
        assert np.array_equal(counts % 2, roots_in % 2)
    assert ran > 0


def test_total_points_weil_sanity():
    rng = np.random.default_rng(31)
    for p in (101, 103, 1009):
        fs = _field(p)
        for ell in (2, 3):
            for _ in range(5):
                P = _random_poly(rng, p, 4)
                if not admissible(P, ell):
                    continue
                C = curve(fs, ell, P)
                total = int(fiber_array(C, 0, p - 1).sum())
                assert abs(total - p) <= ell * (P.degree + 1) * math.sqrt(p)


# ---------------------------------------------------------------- histograms


def test_residue_histogram_examples():
    h2 = residue_histogram(np.array([4, 2]), 2)
    assert h2.counts == (2, 0) and h2.phi(0) == 1
    h3 = residue_histogram(np.array([4, 2]), 3)
    assert h3.counts == (0, 1, 1)
    assert h3.phi(1) == Fraction(1, 2) and h3.phi(2) == Fraction(1, 2)
    h1 = residue_histogram(np.array([9, 5, 0]), 1)
    assert h1.phi(0) == 1


def test_histogram_conservation():
    rng = np.random.default_rng(8)
    counts = rng.integers(0, 1000, size=500)
    for m in (1, 2, 3, 7):
        h = residue_histogram(counts, m)
        assert h.total == 500
        assert sum(h.phi(a) for a in range(m)) == 1


def test_histogram_merge():
    a = residue_histogram(np.array([1, 2, 3]), 2)
    b = residue_histogram(np.array([4]), 2)
    assert a.counts == (1, 2)
    assert a.merge(b).counts == (2, 2)
    with pytest.raises(ValueError):
        a.merge(residue_histogram(np.array([1]), 3))


def test_discrepancy_closed_forms():
    assert discrepancy(Histogram(4, (5, 5, 5, 5))) == 0
    assert discrepancy(Histogram(2, (9, 0))) == Fraction(1, 2)
    for m in (2, 3, 5, 8):
        h = Histogram(m, (7,) + (0,) * (m - 1))
        assert discrepancy(h) == 1 - Fraction(1, m)
    with pytest.raises(ValueError):
        discrepancy(Histogram(3, (0, 0, 0)))


# ---------------------------------------------------------------- joint


def test_joint_diagonal_for_cubes_vs_square_of_cubes():
    for p in (7, 13):
        fs = _field(p)
        C1 = curve(fs, 3, x_poly(p))
        C2 = curve(fs, 3, poly([0, 0, 1], p))
        spec = ScanSpec(0, p - 3, 3)
        for m in (2, 5):
            jh = joint_histogram([C1, C2], spec, m)
            assert jh.total == p - 3
            for vec, c in jh.as_dict().items():
                if vec[0] != vec[1]:
                    assert c == 0


def test_joint_single_curve_reduces_to_histogram():
    fs = _field(103)
    C = curve(fs, 2, poly([1, 3, 1], 103))
    spec = ScanSpec(0, 80, 9)
    jh = joint_histogram([C], spec, 4)
    h = residue_histogram(window_counts(C, spec), 4)
    assert jh.counts == h.counts


def test_joint_modulus_one_single_cell():
    fs = _field(31)
    Cs = [curve(fs, 2, x_poly(31)), curve(fs, 2, poly([1, 1], 31))]
    jh = joint_histogram(Cs, ScanSpec(0, 10, 5), 1)
    assert jh.counts == (10,)
    assert jh.discrepancy() == 0


def test_joint_matches_brute_force():
    fs = _field(31)
    Cs = [curve(fs, 2, poly([3, 1], 31)), curve(fs, 2, poly([1, 0, 1], 31))]
    spec = ScanSpec(2, 15, 6)
    m = 3
    jh = joint_histogram(Cs, spec, m)
    expected = {}
    for s in range(spec.scan_len):
        x0 = spec.x_start + s
        key = tuple(
            sum(fiber_count(C, x) for x in range(x0 + 1, x0 + spec.window_len + 1)) % m
            for C in Cs
        )
        expected[key] = expected.get(key, 0) + 1
    got = {k: v for k, v in jh.as_dict().items() if v}
    assert got == expected


def test_joint_rejects_mismatched_curves():
    fs = _field(31)
    with pytest.raises(ValueError):
        joint_histogram(
            [curve(fs, 2, x_poly(31)), curve(fs, 4, x_poly(31))], ScanSpec(0, 5, 3), 2
        )
    with pytest.raises(ValueError):
        joint_histogram([], ScanSpec(0, 5, 3), 2)


# ---------------------------------------------------------------- restricted rectangles


def test_condition_star_f7_examples():
    fs = _field(7)
    C = curve(fs, 2, x_poly(7))
    assert condition_star(C, Rect(0, 6, 1, 3))
    assert not condition_star(C, Rect(0, 6, 1, 6))
    assert condition_star_witness(C, Rect(0, 6, 1, 6)) == 1
    # y = 3 alone: each x with P(x) = 2 sees a single y
    assert condition_star(C, Rect(0, 6, 3, 3))


def test_restricted_example_f7():
    fs = _field(7)
    C = curve(fs, 2, x_poly(7))
    out = restricted_window_counts(C, Rect(0, 6, 1, 3), ScanSpec(0, 1, 3))
    assert out.tolist() == [2]


def test_restricted_rejects_condition_violation():
    fs = _field(7)
    C = curve(fs, 2, x_poly(7))
    with pytest.raises(HypothesisError) as exc:
        restricted_window_counts(C, Rect(0, 6, 0, 6), ScanSpec(0, 1, 3))
    assert exc.value.name == "condition_star"
    assert "x = 1" in exc.value.detail


def test_delta_zero_outside_x_interval():
    fs = _field(31)
    C = curve(fs, 2, x_poly(31))
    rect = Rect(5, 10, 1, 15)
    d = delta_array(C, rect)
    assert d.size == 6
    brute = []
    for x in range(5, 11):
        brute.append(int(any(pow(y, 2, 31) == x for y in range(1, 16))))
    assert d.tolist() == brute


def test_restricted_matches_brute_force():
    rng = np.random.default_rng(77)
    ran = 0
    for _ in range(12):
        p = int(rng.choice([31, 103, 211]))
        fs = _field(p)
        ell = int(rng.choice([2, 3]))
        C = curve(fs, ell, _random_poly(rng, p, 3))
        y_lo = int(rng.integers(0, p // 2))
        y_hi = int(rng.integers(y_lo, min(y_lo + p // 3, p - 1) + 1))
        rect = Rect(0, p - 1, y_lo, y_hi)
        if not condition_star(C, rect):
            continue
        ran += 1
        I = int(rng.integers(1, p // 4 + 1))
        scan_len = int(rng.integers(1, p - I + 1))
        spec = ScanSpec(0, scan_len, I)
        got = restricted_window_counts(C, rect, spec)
        ys = list(range(y_lo, y_hi + 1))
        powers = {pow(y, ell, p) for y in ys}
        brute = [
            sum(1 for x in range(x0 + 1, x0 + I + 1) if C.P(x) in powers)
            for x0 in range(scan_len)
        ]
        assert got.tolist() == brute
    assert ran > 0


def test_restricted_thread_invariance():
    fs = _field(1009)
    C = curve(fs, 2, x_poly(1009))
    rect = Rect(0, 1008, 1, 504)
    spec = ScanSpec(0, 900, 50)
    base = restricted_window_counts(C, rect, spec, threads=1)
    assert np.array_equal(base, restricted_window_counts(C, rect, spec, threads=4))


# ---------------------------------------------------------------- beta residues


def test_beta_example_f7():
    fs = _field(7)
    scan = beta_residue_scan(fs, Fraction(3, 7), ScanSpec(0, 1, 3))
    assert scan.y_max == 3
    assert scan.r_counts.tolist() == [2]
    assert scan.n_counts.tolist() == [1]


def test_beta_partition_and_half_case():
    for p in (31, 103):
        fs = _field(p)
        I = 7
        spec = ScanSpec(0, p - I, I)
        scan = beta_residue_scan(fs, Fraction(1, 2), spec, m=3)
        assert np.all(scan.r_counts + scan.n_counts == I)
        assert scan.r_hist.total == p - I and scan.n_hist.total == p - I
        # beta = 1/2 counts classical nonzero quadratic residues per window
        qrs = {x for x in range(1, p) if legendre(x, p) == 1}
        brute = [
            sum(1 for x in range(x0 + 1, x0 + I + 1) if x in qrs)
            for x0 in range(p - I)
        ]
        assert scan.r_counts.tolist() == brute


def test_beta_validation():
    fs = _field(31)
    with pytest.raises(ValueError):
        beta_residue_scan(fs, Fraction(2, 3), ScanSpec(0, 1, 3))
    with pytest.raises(ValueError):
        beta_residue_scan(fs, Fraction(1, 100), ScanSpec(0, 1, 3))


# ---------------------------------------------------------------- parity and gaps


def test_gauss_lemma_examples():
    assert gauss_lemma_check(3, 7) == (1, True)
    assert gauss_lemma_check(1, 7) == (0, True)
    assert gauss_lemma_check(2, 11) == (3, True)


def test_gauss_lemma_all_small_primes():
    def odd_primes(limit):
        sieve = np.ones(limit + 1, dtype=bool)
        sieve[:2] = False
        for q in range(2, int(limit**0.5) + 1):
            if sieve[q]:
                sieve[q * q :: q] = False
        return [int(q) for q in np.nonzero(sieve)[0] if q % 2 == 1]

    for p in odd_primes(300):
        for a in range(1, p):
            _, ok = gauss_lemma_check(a, p)
            assert ok


def test_gauss_lemma_rejects_multiples_of_p():
    with pytest.raises(ValueError):
        gauss_lemma_check(0, 7)
    with pytest.raises(ValueError):
        gauss_lemma_check(14, 7)


def test_cor4_f13_window_one():
    fs = _field(13)
    # exceptional x0 for a length-1 window at the nonresidue class:
    # x0 = 0 plus the five quadratic residues below 12
    assert cor4_exceptional(fs, 2, 1, 1) == 6


def test_cor4_full_window_no_exceptions():
    for p in (13, 31):
        fs = _field(p)
        assert cor4_exceptional(fs, 2, p, 0) == 0
        assert cor4_exceptional(fs, 2, p, 1) == 0


def test_cor4_monotone_in_window_length():
    fs = _field(103)
    for mu in (0, 1):
        counts = [cor4_exceptional(fs, 2, L, mu) for L in range(1, 13)]
        assert counts == sorted(counts, reverse=True)


def test_cor4_matches_brute_force():
    from curvestats.ffield import character, char_index

    for p, ell in ((31, 2), (31, 3), (31, 5)):
        fs = _field(p)
        chi = character(fs, ell)
        for mu in range(chi.d):
            for L in (1, 2, 3, 5):
                brute = 0
                for x0 in range(p - L):
                    hit = any(
                        x != 0 and char_index(chi, x) == mu
                        for x in range(x0, x0 + L)
                    )
                    brute += 0 if hit else 1
                assert cor4_exceptional(fs, ell, L, mu) == brute


def test_cor4_validation():
    fs = _field(7)
    with pytest.raises(HypothesisError) as exc:
        cor4_exceptional(fs, 5, 2, 0)
    assert exc.value.name == "p_equiv_1_mod_ell"
    with pytest.raises(ValueError):
        cor4_exceptional(fs, 2, 0, 0)
    with pytest.raises(ValueError):
        cor4_exceptional(fs, 2, 2, 2)


# ---------------------------------------------------------------- experiment drivers

# regression pins for the p = 10007 drivers, frozen from the first run
THM1_DISC = Fraction(11018, 97950609)
THM1_Q99 = 0.0005055281461205168
THM2_SHIFT_DISC = Fraction(460174, 32650203)
THM2_MIXED_DISC = Fraction(21902, 97950609)
THM3_DISC = Fraction(12152, 97950609)


def _spec10007():
    return ScanSpec.full(10007, 100, 10)


def test_thm1_report_regression():
    fs = _field(10007)
    C = curve(fs, 2, poly([1, 1, 0, 1], 10007))
    rep = experiment_thm1(C, _spec10007(), m=3, trials=50, seed=7)
    assert rep.kind == "thm1"
    assert rep.discrepancy == THM1_DISC
    assert rep.bound == pytest.approx(7 * 27 * 4 / 10)
    assert rep.bound_pass
    assert rep.model.q99 == pytest.approx(THM1_Q99)
    assert rep.model_pass is True
    assert rep.params["blocks"] == 988
    assert rep.histogram.total == 9897
    names = [c.name for c in rep.hypotheses]
    assert names == [
        "p_equiv_1_mod_ell",
        "P_nonconstant",
        "P_admissible",
        "gcd_m_ell",
        "window_len_range",
        "no_wraparound",
        "scan_interval_size",
        "block_len_regime",
    ]
    regime = rep.hypotheses[-1]
    assert not regime.passed and not regime.fatal


def test_thm1_modulus_one_trivial():
    fs = _field(10007)
    C = curve(fs, 2, x_poly(10007))
    rep = experiment_thm1(C, _spec10007(), m=1, trials=10, seed=1)
    assert rep.discrepancy == 0
    assert rep.bound > 0 and rep.bound_pass


def test_thm1_gcd_violation_named():
    fs = _field(10007)
    C = curve(fs, 2, x_poly(10007))
    with pytest.raises(HypothesisError) as exc:
        experiment_thm1(C, _spec10007(), m=2, trials=10, seed=1)
    assert exc.value.name == "gcd_m_ell"


def test_thm1_inadmissible_named():
    fs = _field(13)
    C = curve(fs, 3, poly([0, 0, 1], 13))
    spec = ScanSpec(0, 6, 5, block_len=2)
    with pytest.raises(HypothesisError) as exc:
        experiment_thm1(C, spec, m=2, trials=10, seed=1)
    assert exc.value.name == "P_admissible"


def test_thm1_window_range_named():
    fs = _field(10007)
    C = curve(fs, 2, x_poly(10007))
    spec = ScanSpec(0, 5000, 5, block_len=10)
    with pytest.raises(HypothesisError) as exc:
        experiment_thm1(C, spec, m=3, trials=10, seed=1)
    assert exc.value.name == "window_len_range"


def test_thm1_requires_block_length():
    fs = _field(10007)
    C = curve(fs, 2, x_poly(10007))
    with pytest.raises(ValueError):
        experiment_thm1(C, ScanSpec(0, 500, 50), m=3, trials=10, seed=1)


def test_thm2_mixed_family_calibrates():
    fs = _field(10007)
    Cs = [curve(fs, 2, x_poly(10007)), curve(fs, 2, poly([1, 0, 1], 10007))]
    rep = experiment_thm2(Cs, _spec10007(), m=3, trials=50, seed=7)
    assert rep.discrepancy == THM2_MIXED_DISC
    assert rep.bound == pytest.approx(7 * 3**4 * 4 / 10)
    assert rep.bound_pass
    assert rep.model_pass is True
    assert rep.joint.total == 9897


def test_thm2_shifted_family_concentrates_on_diagonal():
    # counts for x+1 are the counts for x advanced one position, so the
    # pair rarely leaves the near-diagonal cells and the idealized walk
    # understates the discrepancy at this scale
    fs = _field(10007)
    Cs = [curve(fs, 2, x_poly(10007)), curve(fs, 2, poly([1, 1], 10007))]
    rep = experiment_thm2(Cs, _spec10007(), m=3, trials=50, seed=7)
    assert rep.discrepancy == THM2_SHIFT_DISC
    assert rep.bound_pass
    assert rep.model_pass is False


def test_thm2_dependent_pair_aborts_on_independence():
    fs = _field(13)
    Cs = [curve(fs, 3, x_poly(13)), curve(fs, 3, poly([0, 0, 1], 13))]
    spec = ScanSpec(0, 6, 5, block_len=2)
    with pytest.raises(HypothesisError) as exc:
        experiment_thm2(Cs, spec, m=2, trials=10, seed=1)
    assert exc.value.name == "multiplicative_independence"


def test_thm2_needs_two_curves():
    fs = _field(13)
    with pytest.raises(ValueError):
        experiment_thm2([curve(fs, 2, x_poly(13))], ScanSpec(0, 4, 3, 1), m=3, trials=5, seed=1)


def test_thm3_report_regression():
    fs = _field(10007)
    C = curve(fs, 2, x_poly(10007))
    rect = Rect(0, 10006, 1, 5003)
    rep = experiment_thm3(C, rect, _spec10007(), m=3, trials=50, seed=7)
    assert rep.discrepancy == THM3_DISC
    assert rep.bound == pytest.approx(4 * 81 / 10)
    assert rep.bound_pass
    assert rep.model_pass is True
    assert rep.params["alpha"] == pytest.approx(5003 / 10007)
    names = [c.name for c in rep.hypotheses]
    assert "condition_star" in names and "block_len_regime_thm3" in names


def test_thm3_condition_violation_named():
    fs = _field(10007)
    C = curve(fs, 2, x_poly(10007))
    rect = Rect(0, 10006, 0, 10006)
    with pytest.raises(HypothesisError) as exc:
        experiment_thm3(C, rect, _spec10007(), m=3, trials=10, seed=1)
    assert exc.value.name == "condition_star"


def test_theorem_experiment_dispatch():
    fs = _field(10007)
    C = curve(fs, 2, x_poly(10007))
    rep = theorem_experiment("thm1", C=C, spec=_spec10007(), m=1, trials=5, seed=3)
    assert rep.kind == "thm1"
    with pytest.raises(ValueError):
        theorem_experiment("thm9")
