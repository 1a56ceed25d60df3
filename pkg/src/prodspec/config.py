"""Product specifications: which factors enter the product and how it is rescaled.

A product is described by a size n, a sign pattern (one entry per factor,
+1 for the factor itself, -1 for its inverse), and for truncated-unitary
factors the source dimensions the truncations are cut from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class SignPattern:
    """Exponent signs of the factors, one +1 or -1 per factor."""

    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) == 0:
            raise ValueError("signs: empty pattern")
        for s in self.entries:
            if s not in (-1, 1):
                raise ValueError(f"signs: sign not +-1 (got {s!r})")
        object.__setattr__(self, "entries", tuple(int(s) for s in self.entries))

    @classmethod
    def parse(cls, text: str) -> "SignPattern":
        """Build from a string such as "-+-"."""
        table = {"+": 1, "-": -1}
        try:
            return cls(tuple(table[c] for c in text))
        except KeyError as exc:
            raise ValueError(f"signs: unexpected character {exc.args[0]!r}") from None

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def plus_count(self) -> int:
        return sum(1 for s in self.entries if s == 1)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        return "".join("+" if s == 1 else "-" for s in self.entries)


@dataclass(frozen=True)
class GinibreProductSpec:
    """Product of n x n complex Gaussian factors and/or their inverses."""

    n: int
    signs: SignPattern

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n: must be a positive integer (got {self.n!r})")

    @property
    def m(self) -> int:
        return self.signs.m

    @property
    def plus_count(self) -> int:
        return self.signs.plus_count

    def log_scale(self) -> float:
        """log of the normalizing scale n^(2p - m), kept in log form."""
        return (2 * self.plus_count - self.m) * math.log(self.n)


@dataclass(frozen=True)
class HaarProductSpec:
    """Product of n x n truncations of Haar unitaries and/or their inverses.

    dims[k] is the source dimension of the k-th unitary; every dims[k]
    must exceed n, otherwise the truncation has unit singular values and
    the radial surrogates below are undefined.
    """

    n: int
    signs: SignPattern
    dims: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n: must be a positive integer (got {self.n!r})")
        if len(self.dims) != self.signs.m:
            raise ValueError(
                f"dims: length {len(self.dims)} does not match {self.signs.m} signs"
            )
        for k, d in enumerate(self.dims):
            if not isinstance(d, int) or d <= self.n:
                raise ValueError(f"dims[{k}]: need an integer > n (got {d!r})")
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))

    @property
    def m(self) -> int:
        return self.signs.m

    @property
    def plus_count(self) -> int:
        return self.signs.plus_count

    def log_scale(self) -> float:
        """log of prod_k (n / (2 dims[k] - n))^(sign_k), kept in log form."""
        n = self.n
        return sum(
            s * math.log(n / (2 * d - n)) for s, d in zip(self.signs, self.dims)
        )


ProductSpec = GinibreProductSpec | HaarProductSpec


@dataclass(frozen=True)
class ScalingPlan:
    """Power 1/gamma_n and scale applied to squared moduli before comparison."""

    gamma_n: float
    log_scale: float

    def __post_init__(self):
        if not (self.gamma_n > 0 and math.isfinite(self.gamma_n)):
            raise ValueError(f"gamma_n: must be finite and > 0 (got {self.gamma_n!r})")
        if not math.isfinite(self.log_scale):
            raise ValueError(f"log_scale: must be finite (got {self.log_scale!r})")

    @classmethod
    def for_spec(cls, spec: ProductSpec, gamma_n: float) -> "ScalingPlan":
        return cls(gamma_n=float(gamma_n), log_scale=spec.log_scale())

    def to_dict(self) -> dict:
        return {"gamma_n": self.gamma_n, "log_scale": self.log_scale}


def validate(spec: ProductSpec) -> ProductSpec:
    """Re-check a spec's invariants; returns the spec unchanged if sound."""
    if isinstance(spec, GinibreProductSpec):
        return GinibreProductSpec(spec.n, SignPattern(spec.signs.entries))
    if isinstance(spec, HaarProductSpec):
        return HaarProductSpec(spec.n, SignPattern(spec.signs.entries), spec.dims)
    raise ValueError(f"spec: unsupported type {type(spec).__name__}")


def resolve_gamma(token, m: int) -> float:
    """Turn a gamma setting into a number; "m" means the factor count."""
    if isinstance(token, str):
        if token.strip() == "m":
            return float(m)
        try:
            value = float(token)
        except ValueError:
            raise ValueError(f"gamma: expected a number or 'm' (got {token!r})") from None
    else:
        value = float(token)
    if not (value > 0 and math.isfinite(value)):
        raise ValueError(f"gamma: must be finite and > 0 (got {value!r})")
    return value
