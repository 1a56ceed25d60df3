"""Limiting radial laws of rescaled product spectra and their finite-n curves.

Two families appear. For Gaussian-factor products the limit CDF is a
generalized inverse of the increasing bijection
    profile(alpha, x) = x^alpha * (1-x)^(alpha-1)
composed with a power of the argument. For truncated-unitary products the
limit is the inverse-function law of an increasing analytic curve given by
a power series around 1/2; only a finite coefficient prefix is ever known,
so evaluations carry a certified geometric tail bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import HaarProductSpec
from .numerics import invert_monotone


class SeriesAccuracyError(RuntimeError):
    """A truncated series cannot meet the requested accuracy."""


# ---------------------------------------------------------------------------
# profile family for Gaussian-factor products

def radial_profile(alpha: float, x: float):
    """x^alpha * (1-x)^(alpha-1) on 0 < x < 1, for 0 <= alpha <= 1."""
    _check_alpha(alpha)
    x = np.asarray(x, dtype=float)
    if np.any(~((x > 0) & (x < 1))):
        raise ValueError(f"x: must lie in (0, 1) (got {x!r})")
    out = np.exp(alpha * np.log(x) + (alpha - 1.0) * np.log1p(-x))
    return float(out) if out.ndim == 0 else out


def _check_alpha(alpha):
    if not (0.0 <= alpha <= 1.0):
        raise ValueError(f"alpha: must lie in [0, 1] (got {alpha!r})")


def _profile_log(alpha, x):
    return alpha * np.log(x) + (alpha - 1.0) * np.log1p(-x)


_EDGE = 1e-16  # evaluation guard; roots beyond it are indistinguishable from 0/1


def _profile_inverse_many(alpha, y):
    """Vector generalized inverse for 0 < alpha < 1 (bisection in log space)."""
    y = np.asarray(y, dtype=float)
    out = np.zeros(y.shape)
    pos = y > 0
    if not np.any(pos):
        return out
    target = np.full(y.shape, -np.inf)
    target[pos] = np.log(y[pos])
    lo = np.full(y.shape, _EDGE)
    hi = np.full(y.shape, 1.0 - _EDGE)
    below = target <= _profile_log(alpha, lo[0])
    above = target >= _profile_log(alpha, hi[0])
    out[above] = 1.0
    active = pos & ~below & ~above
    if np.any(active):
        lo, hi, tgt = lo[active], hi[active], target[active]
        # 60 halvings take the bracket well under the 1e-12 tolerance
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            go_up = _profile_log(alpha, mid) < tgt
            lo = np.where(go_up, mid, lo)
            hi = np.where(go_up, hi, mid)
        out[active] = 0.5 * (lo + hi)
    return out


def radial_profile_inverse(alpha: float, y):
    """Generalized inverse of the profile, extended to all of the real line.

    Below the profile's infimum the value is 0, above its supremum (finite
    only at alpha = 1) the value is 1, in between the unique root.
    The endpoint cases alpha in {0, 1} use their closed inverses.
    """
    _check_alpha(alpha)
    y_arr = np.asarray(y, dtype=float)
    scalar = y_arr.ndim == 0
    y_arr = np.atleast_1d(y_arr)
    if alpha == 0.0:
        # profile is 1/(1-x), increasing from 1
        out = np.where(y_arr > 1.0, 1.0 - 1.0 / np.maximum(y_arr, 1.0), 0.0)
    elif alpha == 1.0:
        out = np.clip(y_arr, 0.0, 1.0)
    else:
        out = _profile_inverse_many(alpha, y_arr)
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class GinibreLimit:
    """Limit parameters for a Gaussian-factor product: alpha and the power beta."""

    alpha: float
    beta: float

    def __post_init__(self):
        _check_alpha(self.alpha)
        if not (self.beta > 0 and math.isfinite(self.beta)):
            raise ValueError(f"beta: must be finite and > 0 (got {self.beta!r})")


def ginibre_limit_cdf(lim: GinibreLimit, y):
    """Limiting CDF of the rescaled moduli at y > 0."""
    y_arr = np.asarray(y, dtype=float)
    if np.any(~(y_arr > 0)):
        raise ValueError(f"y: must be > 0 (got {y!r})")
    # y^(1/beta) through logs; overflow is a genuine "beyond the support" inf
    with np.errstate(over="ignore"):
        powered = np.exp(np.log(y_arr) / lim.beta)
    return radial_profile_inverse(lim.alpha, powered)


def ginibre_limit_density(lim: GinibreLimit, y):
    """Density of the limiting CDF at y > 0; 0 outside the support."""
    y_arr = np.asarray(y, dtype=float)
    scalar = y_arr.ndim == 0
    y_arr = np.atleast_1d(y_arr)
    if np.any(~(y_arr > 0)):
        raise ValueError(f"y: must be > 0 (got {y!r})")
    with np.errstate(over="ignore"):
        powered = np.exp(np.log(y_arr) / lim.beta)
    x = np.atleast_1d(radial_profile_inverse(lim.alpha, powered))
    out = np.zeros(y_arr.shape)
    inside = (x > _EDGE) & (x < 1.0 - _EDGE) & np.isfinite(powered)
    if np.any(inside):
        xi, yi, ui = x[inside], y_arr[inside], powered[inside]
        # d profile / dx = profile * (alpha/x + (1-alpha)/(1-x)); profile(x*) = u
        dprofile = ui * (lim.alpha / xi + (1.0 - lim.alpha) / (1.0 - xi))
        out[inside] = (ui / yi) / (lim.beta * dprofile)
    return float(out[0]) if scalar else out


def spherical_product_density(k: int, r):
    """Planar density at radius r for the k-fold spherical-type product.

    Normalized against area measure: integrating 2*pi*r times this over
    r > 0 gives 1. At k = 1 it reduces to 1/(pi*(1+r^2)^2).
    """
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"k: must be a positive integer (got {k!r})")
    r_arr = np.asarray(r, dtype=float)
    if np.any(~(r_arr > 0)):
        raise ValueError(f"r: must be > 0 (got {r!r})")
    s = r_arr ** (2.0 / k)
    out = s / (k * np.pi * r_arr**2 * (1.0 + s) ** 2)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# finite-n log-mean curve for truncated-unitary products

def series_coeff(spec: HaarProductSpec, j: int) -> float:
    """j-th series coefficient of the centered log-mean curve."""
    if not (isinstance(j, (int, np.integer)) and j >= 1):
        raise ValueError(f"j: must be a positive integer (got {j!r})")
    n = spec.n
    total = 0.0
    for sign, d in zip(spec.signs, spec.dims):
        q = n / (2.0 * d - n)
        total += (-sign) ** (j - 1) * (1.0 - q**j)
    return total / j


def series_coeff_bound(spec: HaarProductSpec) -> float:
    """First coefficient; it dominates every |series_coeff(spec, j)|."""
    n = spec.n
    return sum(2.0 * (d - n) / (2.0 * (d - n) + n) for d in spec.dims)


def series_tail_bound(spec: HaarProductSpec, x, terms: int):
    """Certified bound on the dropped tail after `terms` series terms."""
    u = np.abs(2.0 * np.asarray(x, dtype=float) - 1.0)
    bound = series_coeff_bound(spec)
    with np.errstate(divide="ignore"):
        out = np.where(u < 1.0, bound * u ** (terms + 1) / (1.0 - u), np.inf)
    return float(out) if out.ndim == 0 else out


def log_mean_curve(spec: HaarProductSpec, x, mode: str = "closed", terms: int = 60):
    """Centered log-mean curve on 0 < x < 1.

    The closed form is a signed sum of log ratios, one per factor; the
    series form sums `terms` coefficients and its truncation error is
    certified by series_tail_bound.
    """
    x_arr = np.asarray(x, dtype=float)
    if np.any(~((x_arr > 0) & (x_arr < 1))):
        raise ValueError(f"x: must lie in (0, 1) (got {x!r})")
    n = spec.n
    c = x_arr - 0.5
    if mode == "closed":
        out = np.zeros(x_arr.shape)
        for sign, d in zip(spec.signs, spec.dims):
            out = out + sign * (
                np.log1p(2.0 * sign * c) - np.log1p((2.0 * n / (2.0 * d - n)) * sign * c)
            )
        return float(out) if out.ndim == 0 else out
    if mode == "series":
        if not (isinstance(terms, (int, np.integer)) and terms >= 1):
            raise ValueError(f"terms: must be a positive integer (got {terms!r})")
        coeffs = np.array([series_coeff(spec, j) for j in range(1, terms + 1)])
        t = 2.0 * c
        out = np.polyval(np.append(coeffs[::-1], 0.0), t)
        return float(out) if np.ndim(out) == 0 else out
    raise ValueError(f"mode: expected 'closed' or 'series' (got {mode!r})")


# ---------------------------------------------------------------------------
# limit law built from a coefficient prefix

@dataclass(frozen=True)
class HaarLimit:
    """Increasing analytic curve known through its first len(betas) coefficients.

    tail_bound caps the magnitude of every coefficient past the prefix;
    0 declares the prefix to be the whole series.
    """

    betas: tuple[float, ...]
    tail_bound: float = 0.0

    def __post_init__(self):
        betas = tuple(float(b) for b in self.betas)
        if len(betas) == 0:
            raise ValueError("betas: need at least the first coefficient")
        if not (betas[0] > 0 and math.isfinite(betas[0])):
            raise ValueError(f"betas[0]: must be finite and > 0 (got {betas[0]!r})")
        if not all(math.isfinite(b) for b in betas):
            raise ValueError("betas: all coefficients must be finite")
        if not (self.tail_bound >= 0 and math.isfinite(self.tail_bound)):
            raise ValueError(f"tail_bound: must be finite and >= 0 (got {self.tail_bound!r})")
        object.__setattr__(self, "betas", betas)
        object.__setattr__(self, "tail_bound", float(self.tail_bound))

    @property
    def terms(self) -> int:
        return len(self.betas)


def haar_limit_from_spec(spec: HaarProductSpec, gamma_n: float, terms: int = 80) -> HaarLimit:
    """Finite-n limit curve: series coefficients over gamma_n, bound included."""
    if not (gamma_n > 0 and math.isfinite(gamma_n)):
        raise ValueError(f"gamma_n: must be finite and > 0 (got {gamma_n!r})")
    betas = tuple(series_coeff(spec, j) / gamma_n for j in range(1, terms + 1))
    return HaarLimit(betas=betas, tail_bound=series_coeff_bound(spec) / gamma_n)


def haar_limit_from_ratios(signs, ratios, terms: int = 80) -> HaarLimit:
    """Limit curve for fixed factor count with dims growing proportionally.

    ratios[k] is the limit of n / dims[k] in (0, 1]; the curve's power is
    fixed at 2, matching squared moduli taken to the 1/2.
    """
    signs = list(signs)
    ratios = [float(a) for a in ratios]
    if len(signs) != len(ratios) or not signs:
        raise ValueError("signs and ratios must be equal-length and nonempty")
    for k, a in enumerate(ratios):
        if not (0.0 < a <= 1.0):
            raise ValueError(f"ratios[{k}]: must lie in (0, 1] (got {a!r})")
    q = [a / (2.0 - a) for a in ratios]
    betas = []
    for j in range(1, terms + 1):
        total = sum(
            (-s) ** (j - 1) * (1.0 - qq**j) for s, qq in zip(signs, q)
        )
        betas.append(total / (2.0 * j))
    return HaarLimit(betas=tuple(betas), tail_bound=betas[0])


def haar_limit_growing(plus_fraction: float, ratio: float, terms: int = 80) -> HaarLimit:
    """Limit curve when the factor count grows, with the power tied to it.

    plus_fraction is the limiting share of direct (non-inverted) factors,
    ratio the common limit of n / dims[k].
    """
    if not (0.0 <= plus_fraction <= 1.0):
        raise ValueError(f"plus_fraction: must lie in [0, 1] (got {plus_fraction!r})")
    if not (0.0 < ratio < 1.0):
        raise ValueError(f"ratio: must lie in (0, 1) (got {ratio!r})")
    q = ratio / (2.0 - ratio)
    betas = []
    for j in range(1, terms + 1):
        scale = 1.0 if j % 2 == 1 else (1.0 - 2.0 * plus_fraction)
        betas.append(scale * (1.0 - q**j) / j)
    return HaarLimit(betas=tuple(betas), tail_bound=1.0 - q)


def _curve_partial(lim: HaarLimit, t):
    coeffs = np.asarray(lim.betas)
    return np.polyval(np.append(coeffs[::-1], 0.0), t)


def limit_curve_tail(lim: HaarLimit, x):
    """Certified bound on the curve's dropped tail at x in [0, 1]."""
    u = np.abs(2.0 * np.asarray(x, dtype=float) - 1.0)
    if lim.tail_bound == 0.0:
        out = np.zeros(u.shape)
    else:
        with np.errstate(divide="ignore"):
            out = np.where(
                u < 1.0, lim.tail_bound * u ** (lim.terms + 1) / (1.0 - u), np.inf
            )
    return float(out) if out.ndim == 0 else out


def limit_curve(lim: HaarLimit, x, max_error: float | None = None):
    """Partial sum of the curve at x in [0, 1].

    With max_error set, raises SeriesAccuracyError wherever the certified
    tail bound exceeds it (this happens near the endpoints whenever the
    prefix is not the whole series).
    """
    x_arr = np.asarray(x, dtype=float)
    if np.any(~((x_arr >= 0) & (x_arr <= 1))):
        raise ValueError(f"x: must lie in [0, 1] (got {x!r})")
    if max_error is not None:
        tail = np.asarray(limit_curve_tail(lim, x_arr))
        if np.any(tail > max_error):
            worst = float(np.max(tail))
            raise SeriesAccuracyError(
                f"tail bound {worst:.3e} exceeds max_error {max_error:.3e}; "
                f"more terms or a narrower x range needed"
            )
    out = _curve_partial(lim, 2.0 * x_arr - 1.0)
    return float(out) if np.ndim(out) == 0 else out


_CURVE_EDGE = 1e-8  # endpoint stand-ins for the open unit interval


def curve_inverse_cdf(lim: HaarLimit, value):
    """CDF of the curve's value under a uniform argument, total on the line.

    0 at and below the curve's low end, 1 at and above its high end,
    otherwise the bisected preimage of the partial sum to 1e-10.
    """
    v = np.asarray(value, dtype=float)
    scalar = v.ndim == 0
    v = np.atleast_1d(v).astype(float)
    x_lo, x_hi = _CURVE_EDGE, 1.0 - _CURVE_EDGE
    f_lo = float(_curve_partial(lim, 2.0 * x_lo - 1.0))
    f_hi = float(_curve_partial(lim, 2.0 * x_hi - 1.0))
    out = np.zeros(v.shape)
    out[v >= f_hi] = 1.0
    active = (v > f_lo) & (v < f_hi)
    if np.any(active):
        tgt = v[active]
        lo = np.full(tgt.shape, x_lo)
        hi = np.full(tgt.shape, x_hi)
        # 60 halvings push the bracket below the 1e-10 tolerance
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            go_up = _curve_partial(lim, 2.0 * mid - 1.0) < tgt
            lo = np.where(go_up, mid, lo)
            hi = np.where(go_up, hi, mid)
        out[active] = 0.5 * (lo + hi)
    return float(out[0]) if scalar else out


def curve_inverse_density(lim: HaarLimit, value):
    """Density of the curve's value under a uniform argument; 0 outside."""
    v = np.asarray(value, dtype=float)
    scalar = v.ndim == 0
    v = np.atleast_1d(v).astype(float)
    x = np.atleast_1d(curve_inverse_cdf(lim, v))
    out = np.zeros(v.shape)
    inside = (x > _CURVE_EDGE) & (x < 1.0 - _CURVE_EDGE)
    if np.any(inside):
        coeffs = np.asarray(lim.betas)
        dcoeffs = coeffs * np.arange(1, lim.terms + 1)
        slope = 2.0 * np.polyval(dcoeffs[::-1], 2.0 * x[inside] - 1.0)
        out[inside] = np.where(slope > 0, 1.0 / np.maximum(slope, 1e-300), 0.0)
    return float(out[0]) if scalar else out


def haar_limit_cdf(lim: HaarLimit, y):
    """Limiting CDF of the rescaled moduli: the curve CDF at log y."""
    y_arr = np.asarray(y, dtype=float)
    scalar = y_arr.ndim == 0
    y_arr = np.atleast_1d(y_arr).astype(float)
    out = np.zeros(y_arr.shape)
    pos = y_arr > 0
    if np.any(pos):
        out[pos] = np.atleast_1d(curve_inverse_cdf(lim, np.log(y_arr[pos])))
    return float(out[0]) if scalar else out
