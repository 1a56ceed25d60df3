"""Radial surrogates: shapes, exact moments, and sampler consistency."""

import math

import numpy as np
import pytest
from scipy.special import polygamma

from prodspec.config import GinibreProductSpec, HaarProductSpec, SignPattern
from prodspec.numerics import RngStream, digamma
from prodspec.scalar_model import (
    LogSpectrum,
    factor_shape,
    log_mgf_ginibre,
    log_mgf_haar,
    log_weight_moment,
    sample_log_radius_ginibre,
    sample_log_radius_haar,
    sample_radial_spectrum,
    scaled_mean_ginibre,
)

# high-precision references (40-digit arithmetic, rounded to double)
MGF_GINIBRE_N12_J4_T15 = 0.46220791555523563  # n=12, signs "+-+", j=4, t=1.5
MGF_HAAR_N6_J2_T2 = -0.10536051565782630  # n=6, signs "+-", dims=(9,11), j=2, t=2
WEIGHT_GINIBRE_N5_T25 = 2.4816385117193408  # n=5, signs "-+", t=2.5
WEIGHT_HAAR_N4_T3 = -4.5182305942865458  # n=4, signs "+-", dims=(7,6), t=3
SCALED_MEAN_N100_J50 = 0.99501256210044526  # n=100, signs "+-", j=50


def ginibre(n, signs):
    return GinibreProductSpec(n, SignPattern.parse(signs))

def haar(n, signs, dims):
    return HaarProductSpec(n, SignPattern.parse(signs), dims)


def test_factor_shape_values():
    assert factor_shape(10, 3, 1) == 3
    assert factor_shape(10, 3, -1) == 8
    assert factor_shape(5, 5, -1) == 1


def test_factor_shape_closed_form():
    # same thing as (n + 1 + sign*(2j - 1 - n)) / 2
    for n in (3, 8, 17):
        for j in range(1, n + 1):
            for s in (1, -1):
                assert factor_shape(n, j, s) == (n + 1 + s * (2 * j - 1 - n)) / 2


def test_factor_shape_rejects_bad_args():
    with pytest.raises(ValueError, match="j:"):
        factor_shape(5, 0, 1)
    with pytest.raises(ValueError, match="j:"):
        factor_shape(5, 6, 1)
    with pytest.raises(ValueError, match="sign"):
        factor_shape(5, 2, 0)


def test_log_mgf_ginibre_single_inverse_factor():
    # one inverted factor, n=10, j=5, t=2: ratio G(4)/G(5) = 1/5
    spec = ginibre(10, "-")
    assert log_mgf_ginibre(spec, 5, 2.0) == pytest.approx(-math.log(5.0), rel=1e-12)


def test_log_mgf_ginibre_balanced_pair_is_flat_at_t2():
    # j and n+1-j shapes cancel: mean of squared radius is exactly 1
    spec = ginibre(10, "-+")
    assert log_mgf_ginibre(spec, 5, 2.0) == pytest.approx(0.0, abs=1e-12)


def test_log_mgf_ginibre_reference_value():
    assert log_mgf_ginibre(ginibre(12, "+-+"), 4, 1.5) == pytest.approx(
        MGF_GINIBRE_N12_J4_T15, rel=1e-12
    )


def test_log_mgf_ginibre_rejects_t_outside_interval():
    spec = ginibre(10, "+-")
    with pytest.raises(ValueError, match="t:"):
        log_mgf_ginibre(spec, 3, -6.0)  # t <= -2j
    with pytest.raises(ValueError, match="t:"):
        log_mgf_ginibre(spec, 3, 16.0)  # t >= 2(n+1-j)


def test_log_mgf_haar_reference_value():
    spec = haar(6, "+-", (9, 11))
    assert log_mgf_haar(spec, 2, 2.0) == pytest.approx(MGF_HAAR_N6_J2_T2, rel=1e-12)


def test_log_mgf_haar_beta_ratio_hand_value():
    # n=2, one direct factor from dim 4, j=1, t=2: B(2,2)/B(1,2) = 1/3
    spec = haar(2, "+", (4,))
    assert log_mgf_haar(spec, 1, 2.0) == pytest.approx(math.log(1.0 / 3.0), rel=1e-12)


def test_log_mgf_haar_rejects_boundary_t():
    # inverted factor, j=n: shifted beta argument hits 0 exactly at t=2
    spec = haar(2, "-", (4,))
    with pytest.raises(ValueError, match="t:"):
        log_mgf_haar(spec, 2, 2.0)


def test_log_weight_moment_hand_values():
    # single direct factor: (1/2) * Gamma((1+t)/2) at n=3,t=3 and n=1,t=1
    assert log_weight_moment(ginibre(3, "+"), 3.0) == pytest.approx(
        math.log(0.5), rel=1e-12
    )
    assert log_weight_moment(ginibre(1, "+"), 1.0) == pytest.approx(
        -math.log(2.0), rel=1e-12
    )


def test_log_weight_moment_reference_values():
    assert log_weight_moment(ginibre(5, "-+"), 2.5) == pytest.approx(
        WEIGHT_GINIBRE_N5_T25, rel=1e-12
    )
    assert log_weight_moment(haar(4, "+-", (7, 6)), 3.0) == pytest.approx(
        WEIGHT_HAAR_N4_T3, rel=1e-12
    )


def test_log_weight_moment_rejects_bad_t():
    with pytest.raises(ValueError, match="t:"):
        log_weight_moment(ginibre(5, "+"), 0.0)
    with pytest.raises(ValueError, match="t:"):
        log_weight_moment(ginibre(5, "-"), 20.0)  # factor argument crosses 0


@pytest.mark.parametrize(
    "spec",
    [
        ginibre(9, "+"),
        ginibre(9, "-+"),
        ginibre(14, "+-+"),
        haar(7, "+-", (12, 9)),
        haar(5, "--", (8, 11)),
    ],
    ids=str,
)
def test_weight_moment_ratio_reproduces_mgf(spec):
    # the weight's moment ratio at 2j-1 offsets must equal the mgf
    is_g = isinstance(spec, GinibreProductSpec)
    mgf = log_mgf_ginibre if is_g else log_mgf_haar
    for j in (1, spec.n // 2 + 1, spec.n):
        for t in (0.5, 1.0, 1.9):
            lhs = log_weight_moment(spec, 2 * j - 1 + t) - log_weight_moment(
                spec, 2 * j - 1
            )
            assert lhs == pytest.approx(mgf(spec, j, t), rel=1e-10, abs=1e-10)


def test_scaled_mean_single_factor_is_exactly_linear():
    spec = ginibre(40, "+")
    for j in (1, 13, 40):
        assert scaled_mean_ginibre(spec, j) == pytest.approx(j / 40.0, rel=1e-12)


def test_scaled_mean_reference_value():
    assert scaled_mean_ginibre(ginibre(100, "+-"), 50) == pytest.approx(
        SCALED_MEAN_N100_J50, rel=1e-12
    )


def test_sample_log_radius_ginibre_matches_mgf():
    spec = ginibre(8, "+-")
    rng = RngStream(101)
    draws = sample_log_radius_ginibre(spec, 3, rng, size=200_000)
    for t in (1.0, 2.0):
        w = np.exp(t * draws)
        expect = math.exp(log_mgf_ginibre(spec, 3, t))
        stderr = np.std(w, ddof=1) / math.sqrt(len(w))
        assert abs(np.mean(w) - expect) <= 4 * stderr


def test_sample_log_radius_haar_matches_mgf():
    spec = haar(6, "-+", (10, 13))
    rng = RngStream(102)
    draws = sample_log_radius_haar(spec, 4, rng, size=200_000)
    for t in (1.0, 2.0):
        w = np.exp(t * draws)
        expect = math.exp(log_mgf_haar(spec, 4, t))
        stderr = np.std(w, ddof=1) / math.sqrt(len(w))
        assert abs(np.mean(w) - expect) <= 4 * stderr


def test_sample_log_radius_mean_and_variance_ginibre():
    # mean (1/2) sum sign*psi(shape); variance (1/4) sum psi'(shape)
    spec = ginibre(12, "+-+")
    j = 5
    rng = RngStream(103)
    draws = sample_log_radius_ginibre(spec, j, rng, size=400_000)
    mean = sum(
        0.5 * s * digamma(factor_shape(spec.n, j, s)) for s in spec.signs
    )
    var = sum(
        0.25 * polygamma(1, factor_shape(spec.n, j, s)) for s in spec.signs
    )
    assert np.mean(draws) == pytest.approx(mean, abs=5 * math.sqrt(var / len(draws)))
    assert np.var(draws, ddof=1) == pytest.approx(var, rel=0.02)


def test_sample_log_radius_variance_haar():
    # each log-beta factor contributes psi'(a) - psi'(a+b) at quarter weight
    spec = haar(9, "+-", (14, 12))
    j = 4
    rng = RngStream(104)
    draws = sample_log_radius_haar(spec, j, rng, size=400_000)
    var = 0.0
    for s, d in zip(spec.signs, spec.dims):
        a = factor_shape(spec.n, j, s)
        var += 0.25 * (polygamma(1, a) - polygamma(1, a + d - spec.n))
    assert np.var(draws, ddof=1) == pytest.approx(var, rel=0.02)


def test_spectrum_reproducible_and_sized():
    spec = haar(25, "+-", (40, 31))
    a = sample_radial_spectrum(spec, RngStream(7).substream(0))
    b = sample_radial_spectrum(spec, RngStream(7).substream(0))
    assert isinstance(a, LogSpectrum)
    assert a.n == 25
    assert np.array_equal(a.log_radii, b.log_radii)
    assert np.all(np.isfinite(a.log_radii))


def test_spectrum_replicates_differ():
    spec = ginibre(25, "-+")
    a = sample_radial_spectrum(spec, RngStream(7).substream(0))
    b = sample_radial_spectrum(spec, RngStream(7).substream(1))
    assert not np.array_equal(a.log_radii, b.log_radii)


def test_spectrum_entry_distribution_matches_per_index_sampler():
    # pooled replicate means track the exact digamma means index by index
    spec = ginibre(30, "+-")
    rng = RngStream(105)
    reps = 4000
    total = np.zeros(spec.n)
    for r in range(reps):
        total += sample_radial_spectrum(spec, rng.substream(r)).log_radii
    got = total / reps
    for j in (1, 10, 20, 30):
        expect = sum(
            0.5 * s * digamma(factor_shape(spec.n, j, s)) for s in spec.signs
        )
        var = sum(
            0.25 * polygamma(1, factor_shape(spec.n, j, s)) for s in spec.signs
        )
        assert got[j - 1] == pytest.approx(expect, abs=5 * math.sqrt(var / reps))


def test_haar_radii_of_contractions_stay_below_one():
    # all-direct truncations are contractions, so every radius is below 1
    spec = haar(20, "++", (30, 25))
    sample = sample_radial_spectrum(spec, RngStream(9))
    assert np.all(sample.log_radii < 0)
