"""Special-function accuracy, stream reproducibility, and bisection."""

import math

import numpy as np
import pytest

from prodspec.numerics import (
    RngStream,
    digamma,
    invert_monotone,
    log_beta,
    log_gamma,
    sample_beta,
    sample_gamma,
)

# high-precision references (40-digit arithmetic, rounded to double)
LOG_GAMMA_REFS = {
    0.001: 6.907178885383853,
    0.5: 0.5723649429247001,
    1.0: 0.0,
    2.0: 0.0,
    10.0: 12.801827480081469,
    171.5: 709.1431630309282,
    1e6: 12815504.569147611,
}


@pytest.mark.parametrize("x,ref", sorted(LOG_GAMMA_REFS.items()))
def test_log_gamma_reference_values(x, ref):
    assert log_gamma(x) == pytest.approx(ref, rel=1e-12, abs=1e-12)


def test_log_gamma_recurrence():
    # log G(x+1) - log G(x) = log x across the working range
    for x in (1e-3, 0.3, 1.7, 25.0, 4000.0):
        assert log_gamma(x + 1.0) - log_gamma(x) == pytest.approx(
            math.log(x), rel=1e-10
        )


def test_log_gamma_rejects_nonpositive():
    for bad in (0.0, -1.0, -0.5):
        with pytest.raises(ValueError):
            log_gamma(bad)


def test_log_gamma_ratio_asymptotic():
    # |log G(x+b) - log G(x) - b log x| <= C |b| / x with one global C
    bs = np.array([-2.0, -1.3, -0.4, 0.7, 1.2, 2.0])
    worst = 0.0
    residual_by_x = {}
    for x in (10.0, 100.0, 1000.0):
        res = np.abs(log_gamma(x + bs) - log_gamma(x) - bs * np.log(x))
        worst = max(worst, np.max(res * x / np.abs(bs)))
        residual_by_x[x] = np.max(res)
    assert worst <= 3.0
    # residuals shrink about tenfold per decade
    assert 5.0 < residual_by_x[10.0] / residual_by_x[100.0] < 20.0
    assert 5.0 < residual_by_x[100.0] / residual_by_x[1000.0] < 20.0


def test_digamma_matches_log_asymptotics():
    # psi(t) = log t - 1/(2t) + O(1/t^2)
    for t in (10.0, 50.0, 1000.0):
        assert abs(digamma(t) - math.log(t) + 1.0 / (2 * t)) <= 1.0 / t**2


def test_digamma_euler_value():
    assert digamma(1.0) == pytest.approx(-0.5772156649015329, abs=1e-10)


def test_digamma_rejects_nonpositive():
    with pytest.raises(ValueError):
        digamma(0.0)


def test_log_beta_consistency():
    for a, b in ((1.0, 2.0), (0.5, 0.5), (3.0, 7.0), (40.0, 2.5)):
        expect = log_gamma(a) + log_gamma(b) - log_gamma(a + b)
        assert log_beta(a, b) == pytest.approx(expect, rel=1e-12)
    assert log_beta(1.0, 2.0) == pytest.approx(math.log(0.5), rel=1e-14)


def test_log_beta_rejects_nonpositive():
    with pytest.raises(ValueError):
        log_beta(0.0, 1.0)
    with pytest.raises(ValueError):
        log_beta(1.0, -2.0)


def test_stream_reproducible():
    a = RngStream(42).substream(3).gamma(2.5, size=5)
    b = RngStream(42).substream(3).gamma(2.5, size=5)
    assert np.array_equal(a, b)


def test_stream_distinct_paths_differ():
    a = RngStream(42, path=(0,)).standard_normal(size=8)
    b = RngStream(42, path=(1,)).standard_normal(size=8)
    assert not np.array_equal(a, b)


def test_substream_nesting_matches_explicit_path():
    via_nesting = RngStream(7).substream(1).substream(4).uniform(size=3)
    direct = RngStream(7, path=(1, 4)).uniform(size=3)
    assert np.array_equal(via_nesting, direct)


def test_stream_independence_is_statistical():
    # correlation between sibling streams stays at noise level
    x = RngStream(0, path=(11,)).standard_normal(size=20000)
    y = RngStream(0, path=(12,)).standard_normal(size=20000)
    assert abs(np.corrcoef(x, y)[0, 1]) < 0.03


def test_gamma_sampler_moments():
    rng = RngStream(3)
    n = 200_000
    for shape in (0.7, 1.0, 6.0):
        draws = sample_gamma(shape, rng, size=n)
        assert np.mean(draws) == pytest.approx(shape, abs=5 * math.sqrt(shape / n))


def test_gamma_sampler_log_mgf():
    # E[exp(t log X)] = G(shape+t)/G(shape), checked at 4 standard errors
    rng = RngStream(12)
    n = 1_000_000
    shape = 3.0
    logs = np.log(sample_gamma(shape, rng, size=n))
    for t in (-0.5, 0.5):
        w = np.exp(t * logs)
        expect = math.exp(log_gamma(shape + t) - log_gamma(shape))
        stderr = np.std(w, ddof=1) / math.sqrt(n)
        assert abs(np.mean(w) - expect) <= 4 * stderr


def test_beta_sampler_log_mgf():
    # E[exp(t log X)] = B(a+t,b)/B(a,b)
    rng = RngStream(13)
    n = 1_000_000
    a, b = 2.0, 5.0
    logs = np.log(sample_beta(a, b, rng, size=n))
    for t in (-0.5, 0.5):
        w = np.exp(t * logs)
        expect = math.exp(log_beta(a + t, b) - log_beta(a, b))
        stderr = np.std(w, ddof=1) / math.sqrt(n)
        assert abs(np.mean(w) - expect) <= 4 * stderr


def test_sampler_rejects_bad_parameters():
    rng = RngStream(0)
    with pytest.raises(ValueError):
        sample_gamma(0.0, rng)
    with pytest.raises(ValueError):
        sample_beta(1.0, 0.0, rng)


def test_invert_monotone_cubic():
    root = invert_monotone(lambda x: x**3, target=8.0, lo=0.0, hi=10.0, tol=1e-12)
    assert root == pytest.approx(2.0, abs=1e-10)


def test_invert_monotone_flat_segments():
    # nondecreasing with a plateau; any point of the preimage is acceptable
    f = lambda x: 0.0 if x < 1 else (x - 1.0 if x < 2 else 1.0)
    root = invert_monotone(f, target=0.5, lo=0.0, hi=3.0, tol=1e-9)
    assert f(root) == pytest.approx(0.5, abs=1e-9)


def test_invert_monotone_converges_fast():
    calls = {"n": 0}

    def f(x):
        calls["n"] += 1
        return x

    invert_monotone(f, target=0.3, lo=0.0, hi=1.0, tol=1e-15)
    assert calls["n"] <= 62  # two bracket probes plus at most 60 halvings


def test_invert_monotone_rejects_bad_bracket():
    with pytest.raises(ValueError, match="bracketed"):
        invert_monotone(lambda x: x, target=5.0, lo=0.0, hi=1.0)
    with pytest.raises(ValueError, match="lo < hi"):
        invert_monotone(lambda x: x, target=0.5, lo=1.0, hi=0.0)
    with pytest.raises(ValueError, match="tol"):
        invert_monotone(lambda x: x, target=0.5, lo=0.0, hi=1.0, tol=0.0)
