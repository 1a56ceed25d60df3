"""Independent radial surrogates for the eigenvalue moduli of a product.

The moduli of a product's eigenvalues agree in law, as an unordered set,
with n independent scalars indexed by j = 1..n. Each scalar is a
half-power product of one gamma (Gaussian factors) or beta (truncated
unitary factors) draw per factor, with shape parameter j for a direct
factor and n+1-j for an inverted one. Everything here works with the
scalars' logarithms; moment generating functions are exact gamma/beta
ratios and are kept in log form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import GinibreProductSpec, HaarProductSpec
from .numerics import RngStream, log_beta, log_gamma


@dataclass(frozen=True)
class LogSpectrum:
    """Logs of one replicate's n radial surrogates, index j at position j-1."""

    log_radii: np.ndarray

    @property
    def n(self) -> int:
        return len(self.log_radii)


def factor_shape(n: int, j: int, sign: int) -> int:
    """First shape parameter of the j-th surrogate's draw for one factor."""
    if not (1 <= j <= n):
        raise ValueError(f"j: must lie in 1..{n} (got {j})")
    if sign == 1:
        return j
    if sign == -1:
        return n + 1 - j
    raise ValueError(f"sign: must be +-1 (got {sign!r})")


def _check_index(spec, j):
    if not isinstance(j, (int, np.integer)) or not (1 <= j <= spec.n):
        raise ValueError(f"j: must be an integer in 1..{spec.n} (got {j!r})")


def sample_log_radius_ginibre(spec: GinibreProductSpec, j: int, rng: RngStream, size=None):
    """Draw log of the j-th surrogate: half the signed sum of log-gamma draws."""
    _check_index(spec, j)
    out = 0.0
    for sign in spec.signs:
        shape = factor_shape(spec.n, j, sign)
        out = out + 0.5 * sign * np.log(rng.gamma(float(shape), size=size))
    return out


def sample_log_radius_haar(spec: HaarProductSpec, j: int, rng: RngStream, size=None):
    """Same as the gamma version with Beta(shape, dims[k] - n) draws."""
    _check_index(spec, j)
    out = 0.0
    for sign, d in zip(spec.signs, spec.dims):
        shape = factor_shape(spec.n, j, sign)
        out = out + 0.5 * sign * np.log(rng.beta(float(shape), float(d - spec.n), size=size))
    return out


def sample_radial_spectrum(spec, rng: RngStream) -> LogSpectrum:
    """Draw all n surrogate logs of one replicate.

    Draws are vectorized over j one factor at a time, so a single stream
    per replicate fixes every value regardless of scheduling.
    """
    n = spec.n
    up = np.arange(1, n + 1, dtype=float)
    down = up[::-1].copy()
    total = np.zeros(n)
    if isinstance(spec, GinibreProductSpec):
        for sign in spec.signs:
            shapes = up if sign == 1 else down
            total += 0.5 * sign * np.log(rng.gamma(shapes))
    elif isinstance(spec, HaarProductSpec):
        for sign, d in zip(spec.signs, spec.dims):
            shapes = up if sign == 1 else down
            total += 0.5 * sign * np.log(rng.beta(shapes, float(d - n)))
    else:
        raise ValueError(f"spec: unsupported type {type(spec).__name__}")
    return LogSpectrum(log_radii=total)


def _check_t_domain(spec, j, t):
    # each bound binds only when a factor of that orientation is present
    lo = -2.0 * j if spec.plus_count > 0 else -math.inf
    hi = 2.0 * (spec.n + 1 - j) if spec.plus_count < spec.m else math.inf
    if not (lo < t < hi):
        raise ValueError(f"t: must lie in ({lo}, {hi}) for j={j} (got {t})")


def log_mgf_ginibre(spec: GinibreProductSpec, j: int, t: float) -> float:
    """log E[radius^t] for the j-th surrogate of a Gaussian-factor product.

    Equals p * (log_gamma(j + t/2) - log_gamma(j))
         + (m-p) * (log_gamma(n+1-j - t/2) - log_gamma(n+1-j)),
    finite exactly on -2j < t < 2(n+1-j).
    """
    _check_index(spec, j)
    _check_t_domain(spec, j, t)
    n, p, m = spec.n, spec.plus_count, spec.m
    out = 0.0
    if p > 0:
        out += p * (log_gamma(j + t / 2.0) - log_gamma(float(j)))
    if m - p > 0:
        out += (m - p) * (
            log_gamma(n + 1 - j - t / 2.0) - log_gamma(float(n + 1 - j))
        )
    return float(out)


def log_mgf_haar(spec: HaarProductSpec, j: int, t: float) -> float:
    """log E[radius^t] for the j-th surrogate of a truncated-unitary product.

    One log-beta ratio per factor; the shared t-interval is intersected
    with positivity of every shifted beta argument.
    """
    _check_index(spec, j)
    _check_t_domain(spec, j, t)
    n = spec.n
    out = 0.0
    for sign, d in zip(spec.signs, spec.dims):
        shape = factor_shape(n, j, sign)
        shifted = shape + sign * t / 2.0
        if not (shifted > 0):
            raise ValueError(
                f"t: shifted beta argument {shifted} not positive for j={j}, t={t}"
            )
        out += log_beta(shifted, float(d - n)) - log_beta(float(shape), float(d - n))
    return float(out)


def log_weight_moment(spec, t: float) -> float:
    """log of the t-th moment of the shared radial weight, t > 0.

    The surrogate densities are proportional to y^(2j-1) times a common
    weight; this closed moment makes the identity
    log_weight_moment(2j-1+t) - log_weight_moment(2j-1) = log mgf(j, t)
    available as an independent cross-check.
    """
    if not (t > 0):
        raise ValueError(f"t: must be > 0 (got {t})")
    n, m = spec.n, spec.m
    out = (m - 1) * np.log(np.pi) - np.log(2.0)
    for idx, sign in enumerate(spec.signs):
        arg = 0.5 * (n + 1 + sign * (t - n))
        if not (arg > 0):
            raise ValueError(f"t: factor argument {arg} not positive (t={t})")
        if isinstance(spec, GinibreProductSpec):
            out += log_gamma(arg)
        elif isinstance(spec, HaarProductSpec):
            out += log_beta(arg, float(spec.dims[idx] - n))
        else:
            raise ValueError(f"spec: unsupported type {type(spec).__name__}")
    return float(out)


def scaled_mean_ginibre(spec: GinibreProductSpec, j: int) -> float:
    """Exact mean of (radius^2 / scale)^(1/m) for the j-th surrogate."""
    t = 2.0 / spec.m
    return float(np.exp(log_mgf_ginibre(spec, j, t) - spec.log_scale() / spec.m))
