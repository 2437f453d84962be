"""Exact moment oracles for a random variable Y and i.i.d. sums of it.

A moment model is a small frozen value object mapping n to the exact raw
moment E[Y^n].  Built-in models all have a moment generating function in a
neighborhood of 0.  Sums S_k = Y_1 + ... + Y_k of independent copies are
handled through EGF powers: the series with coefficient n equal to
E[(scale*Y)_{n,lam}] is raised to the k-th power, which is exactly the
expectation of the product over independent copies.

All expectations are memoized by value; models compare and hash by their
parameters, so equal models share cache entries.  ``clear_caches`` drops
the memo tables (results are unchanged by a cold recomputation).

The geometric model counts failures before the first success, i.e. it is
supported on {0, 1, 2, ...}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Mapping, Sequence, Union

from .ratcore import RationalLike, rat
from .series import EgfSeries, egf_coeff, egf_const, egf_degen_exp, egf_mul


class MomentOrderError(ValueError):
    """A custom model was asked for a moment beyond its declared list."""

    def __init__(self, needed: int, available: int):
        self.needed = needed
        self.available = available
        super().__init__(
            f"moment of order {needed} required, but the custom model only "
            f"declares moments up to order {available - 1}")


@dataclass(frozen=True)
class PointMass:
    """Deterministic variable equal to c."""

    c: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", rat(self.c))


@dataclass(frozen=True)
class Bernoulli:
    """Indicator variable: 1 with probability p, else 0."""

    p: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", rat(self.p))
        if not 0 <= self.p <= 1:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")


@dataclass(frozen=True)
class Binomial:
    """Number of successes in `trials` independent Bernoulli(p) trials."""

    trials: int
    p: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ValueError(f"trials must be a positive integer, got {self.trials!r}")
        object.__setattr__(self, "p", rat(self.p))
        if not 0 <= self.p <= 1:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")


@dataclass(frozen=True)
class DiscreteUniform:
    """Uniform on the integers {0, 1, ..., max}."""

    max: int

    def __post_init__(self) -> None:
        if not isinstance(self.max, int) or self.max < 0:
            raise ValueError(f"max must be a nonnegative integer, got {self.max!r}")


@dataclass(frozen=True)
class Poisson:
    """Poisson with rational rate >= 0."""

    rate: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "rate", rat(self.rate))
        if self.rate < 0:
            raise ValueError(f"rate must be nonnegative, got {self.rate}")


@dataclass(frozen=True)
class Geometric:
    """Failures before the first success, success probability p.

    Supported on {0, 1, 2, ...}; p must be positive so the MGF exists
    near 0.
    """

    p: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", rat(self.p))
        if not 0 < self.p <= 1:
            raise ValueError(f"p must lie in (0, 1], got {self.p}")


@dataclass(frozen=True)
class Custom:
    """Explicit moment list; entry n is E[Y^n], entry 0 must be 1.

    Asking for a moment past the end of the list is an error, never an
    extrapolation.
    """

    moments: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        ms = tuple(rat(v) for v in self.moments)
        if not ms or ms[0] != 1:
            raise ValueError("a custom model needs moments[0] == 1 (E[Y^0] = 1)")
        object.__setattr__(self, "moments", ms)


MomentModel = Union[PointMass, Bernoulli, Binomial, DiscreteUniform,
                    Poisson, Geometric, Custom]


@lru_cache(maxsize=None)
def raw_moment(model: MomentModel, n: int) -> Fraction:
    """Exact raw moment E[Y^n] of a moment model."""
    if n < 0:
        raise ValueError(f"moment order must be nonnegative, got {n}")
    if isinstance(model, PointMass):
        return model.c ** n
    if isinstance(model, Bernoulli):
        return Fraction(1) if n == 0 else model.p
    if isinstance(model, Binomial):
        p, q, N = model.p, 1 - model.p, model.trials
        return sum((comb(N, j) * p**j * q**(N - j) * Fraction(j)**n
                    for j in range(N + 1)), Fraction(0))
    if isinstance(model, DiscreteUniform):
        return sum((Fraction(j)**n for j in range(model.max + 1)),
                   Fraction(0)) / (model.max + 1)
    if isinstance(model, Poisson):
        # Touchard expansion: E[Y^n] = sum_k S2(n,k) rate^k.
        from .dowling import stirling2
        return sum((stirling2(n, k) * model.rate**k for k in range(n + 1)),
                   Fraction(0))
    if isinstance(model, Geometric):
        # Factorial moments E[(Y)_k] = k! ((1-p)/p)^k, then expand over the
        # falling-factorial basis.
        from .dowling import stirling2
        ratio = (1 - model.p) / model.p
        return sum((stirling2(n, k) * factorial(k) * ratio**k
                    for k in range(n + 1)), Fraction(0))
    if isinstance(model, Custom):
        if n >= len(model.moments):
            raise MomentOrderError(n, len(model.moments))
        return model.moments[n]
    raise TypeError(f"not a moment model: {model!r}")


@lru_cache(maxsize=None)
def _monomial_expansion(n: int, lam: Fraction) -> tuple[Fraction, ...]:
    """Coefficients a_0..a_n of prod_{i<n} (x - i*lam) in powers of x."""
    coeffs = [Fraction(1)]
    for i in range(n):
        shift = i * lam
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for j, c in enumerate(coeffs):
            nxt[j + 1] += c
            nxt[j] -= shift * c
        coeffs = nxt
    return tuple(coeffs)


@lru_cache(maxsize=None)
def degen_moment(model: MomentModel, n: int, lam: Fraction) -> Fraction:
    """E[Y(Y-lam)(Y-2*lam)...(Y-(n-1)*lam)], exactly.

    Expands the product into powers of Y and applies raw moments linearly.
    """
    lam = rat(lam)
    coeffs = _monomial_expansion(n, lam)
    return sum((c * raw_moment(model, j) for j, c in enumerate(coeffs) if c),
               Fraction(0))


@lru_cache(maxsize=None)
def egf_mgf_degen(model: MomentModel, scale: int, lam: Fraction,
                  order: int) -> EgfSeries:
    """Series whose n-th coefficient is E[(scale*Y)_{n,lam}].

    This is the expectation of the degenerate exponential of scale*Y,
    the generating kernel of the probabilistic Whitney families.
    """
    if scale < 1:
        raise ValueError(f"scale must be a positive integer, got {scale}")
    lam = rat(lam)
    out = []
    for n in range(order + 1):
        coeffs = _monomial_expansion(n, lam)
        out.append(sum((c * Fraction(scale)**j * raw_moment(model, j)
                        for j, c in enumerate(coeffs) if c), Fraction(0)))
    return EgfSeries(tuple(out))


@lru_cache(maxsize=None)
def _mgf_power(model: MomentModel, scale: int, lam: Fraction, order: int,
               k: int) -> EgfSeries:
    """k-th power of the scaled degenerate MGF series: the kernel of S_k."""
    if k == 0:
        return egf_const(1, order)
    return egf_mul(_mgf_power(model, scale, lam, order, k - 1),
                   egf_mgf_degen(model, scale, lam, order))


def sum_degen_moment(model: MomentModel, k: int, scale: int, shift: int,
                     n: int, lam: RationalLike) -> Fraction:
    """Exact E[(scale*S_k + shift)_{n,lam}] with S_k = Y_1 + ... + Y_k.

    Extracted as coefficient n of (E-series)^k times the degenerate
    exponential of the shift, where E-series is the scaled degenerate MGF.
    """
    if k < 0:
        raise ValueError(f"copy count must be nonnegative, got {k}")
    if shift < 0:
        raise ValueError(f"shift must be nonnegative, got {shift}")
    return _sum_degen_moment_cached(model, k, scale, shift, n, rat(lam))


@lru_cache(maxsize=None)
def _sum_degen_moment_cached(model: MomentModel, k: int, scale: int,
                             shift: int, n: int, lam: Fraction) -> Fraction:
    series = egf_mul(_mgf_power(model, scale, lam, n, k),
                     egf_degen_exp(shift, lam, n))
    return egf_coeff(series, n)


def sum_plain_falling_moment(model: MomentModel, k: int, scale: int,
                             shift: int, j: int) -> Fraction:
    """Exact E[(scale*S_k + shift)_j] with the ordinary falling factorial."""
    return sum_degen_moment(model, k, scale, shift, j, Fraction(1))


_KIND_TO_CLS = {
    "pointmass": PointMass,
    "bernoulli": Bernoulli,
    "binomial": Binomial,
    "discreteuniform": DiscreteUniform,
    "poisson": Poisson,
    "geometric": Geometric,
    "custom": Custom,
}


def model_from_config(config: Mapping[str, object]) -> MomentModel:
    """Build a moment model from its JSON object form.

    Rationals are "num/den" strings (plain "num" for integers), e.g.
    {"kind": "bernoulli", "p": "1/2"} or
    {"kind": "custom", "moments": ["1", "1/2", "1/2"]}.
    """
    if not isinstance(config, Mapping):
        raise ValueError(f"model config must be a JSON object, got {config!r}")
    kind = config.get("kind")
    if kind not in _KIND_TO_CLS:
        raise ValueError(f"unknown model kind {kind!r}; "
                         f"expected one of {sorted(_KIND_TO_CLS)}")
    fields = {k: v for k, v in config.items() if k != "kind"}
    try:
        if kind == "pointmass":
            return PointMass(rat(_str_or_int(fields.pop("c"))))
        if kind == "bernoulli":
            return Bernoulli(rat(_str_or_int(fields.pop("p"))))
        if kind == "binomial":
            return Binomial(int(fields.pop("trials")),
                            rat(_str_or_int(fields.pop("p"))))
        if kind == "discreteuniform":
            return DiscreteUniform(int(fields.pop("max")))
        if kind == "poisson":
            return Poisson(rat(_str_or_int(fields.pop("rate"))))
        if kind == "geometric":
            return Geometric(rat(_str_or_int(fields.pop("p"))))
        moments = fields.pop("moments")
        if not isinstance(moments, Sequence) or isinstance(moments, str):
            raise ValueError("custom moments must be a list of rational strings")
        return Custom(tuple(rat(_str_or_int(v)) for v in moments))
    except KeyError as exc:
        raise ValueError(f"model config for {kind!r} is missing field {exc}") from exc


def model_to_config(model: MomentModel) -> dict:
    """Inverse of model_from_config; rationals become "num/den" strings."""
    from .ratcore import format_rational as fr
    if isinstance(model, PointMass):
        return {"kind": "pointmass", "c": fr(model.c)}
    if isinstance(model, Bernoulli):
        return {"kind": "bernoulli", "p": fr(model.p)}
    if isinstance(model, Binomial):
        return {"kind": "binomial", "trials": model.trials, "p": fr(model.p)}
    if isinstance(model, DiscreteUniform):
        return {"kind": "discreteuniform", "max": model.max}
    if isinstance(model, Poisson):
        return {"kind": "poisson", "rate": fr(model.rate)}
    if isinstance(model, Geometric):
        return {"kind": "geometric", "p": fr(model.p)}
    if isinstance(model, Custom):
        return {"kind": "custom", "moments": [fr(v) for v in model.moments]}
    raise TypeError(f"not a moment model: {model!r}")


def _str_or_int(value: object) -> RationalLike:
    if isinstance(value, bool) or isinstance(value, float):
        raise ValueError(f"rationals must be given as strings or ints, got {value!r}")
    if not isinstance(value, (str, int)):
        raise ValueError(f"cannot read {value!r} as a rational")
    return value


def clear_caches() -> None:
    """Drop all moment memo tables (recomputation yields identical values)."""
    raw_moment.cache_clear()
    _monomial_expansion.cache_clear()
    degen_moment.cache_clear()
    egf_mgf_degen.cache_clear()
    _mgf_power.cache_clear()
    _sum_degen_moment_cached.cache_clear()
