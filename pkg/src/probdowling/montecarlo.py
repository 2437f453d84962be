"""Sampling cross-validation of the exact moment pipeline.

Samplers exist for every built-in distribution (not for custom moment
lists, which do not determine one).  Estimates carry the exact target
value alongside the empirical mean and standard error, so acceptance is
a 5-sigma comparison against an independently computed rational.  All
randomness flows from an explicit 64-bit seed through numpy's seedable,
splittable PCG64 generator; a run is reproducible bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .moments import (Bernoulli, Binomial, Custom, DiscreteUniform, Geometric,
                      MomentModel, PointMass, Poisson, sum_degen_moment)
from .ratcore import RationalLike, rat


class SamplerUnsupportedError(ValueError):
    """Raised for models that declare moments only and cannot be sampled."""


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo mean with its standard error and the exact target."""

    mean: float
    std_error: float
    samples: int
    target: Fraction

    def within(self, sigmas: float) -> bool:
        """Gap within `sigmas` standard errors (exact match when sigma=0)."""
        gap = abs(self.mean - float(self.target))
        if self.std_error == 0.0:
            return gap == 0.0
        return gap <= sigmas * self.std_error


def _draw(model: MomentModel, rng: np.random.Generator,
          count: int) -> np.ndarray:
    if isinstance(model, PointMass):
        return np.full(count, float(model.c))
    if isinstance(model, Bernoulli):
        return (rng.random(count) < float(model.p)).astype(np.float64)
    if isinstance(model, Binomial):
        return rng.binomial(model.trials, float(model.p), count).astype(np.float64)
    if isinstance(model, DiscreteUniform):
        return rng.integers(0, model.max + 1, size=count).astype(np.float64)
    if isinstance(model, Poisson):
        return rng.poisson(float(model.rate), count).astype(np.float64)
    if isinstance(model, Geometric):
        # numpy counts trials up to and including the first success; shift
        # to failures-before-success, supported on {0, 1, 2, ...}.
        return rng.geometric(float(model.p), count).astype(np.float64) - 1.0
    if isinstance(model, Custom):
        raise SamplerUnsupportedError(
            "custom moment lists do not determine a distribution to sample")
    raise TypeError(f"not a moment model: {model!r}")


def sample_Y(model: MomentModel, rng_seed: int, count: int) -> np.ndarray:
    """i.i.d. samples of a built-in model, deterministic given the seed."""
    if count < 0:
        raise ValueError(f"count must be nonnegative, got {count}")
    return _draw(model, np.random.default_rng(rng_seed), count)


def estimate_sum_degen_moment(model: MomentModel, k: int, scale: int,
                              shift: int, n: int, lam: RationalLike,
                              samples: int, seed: int) -> McEstimate:
    """Estimate E[(scale*S_k + shift)_{n,lam}] by simple averaging.

    Each sample draws k independent copies, forms the generalized falling
    factorial of scale*sum + shift in float arithmetic, and the estimate
    is compared against the exact value from the moment pipeline, which
    is attached as the target.
    """
    if samples < 2:
        raise ValueError(f"need at least 2 samples for a standard error, "
                         f"got {samples}")
    lam = rat(lam)
    rng = np.random.default_rng(seed)
    totals = np.zeros(samples)
    for _ in range(k):
        totals += _draw(model, rng, samples)
    arg = scale * totals + shift
    values = np.ones(samples)
    lam_f = float(lam)
    for i in range(n):
        values = values * (arg - i * lam_f)
    mean = float(values.mean())
    std_error = float(values.std(ddof=1) / math.sqrt(samples))
    target = sum_degen_moment(model, k, scale, shift, n, lam)
    return McEstimate(mean=mean, std_error=std_error, samples=samples,
                      target=target)
