"""Stirling, Whitney, and Dowling families, exact and multi-route.

The central object is the triangle W(n, k) of probabilistic degenerate
Whitney numbers attached to a moment model Y: coefficient n of
(1/k!) ((E[e_lam^(mY)(t)] - 1)/m)^k e_lam^r(t), with r = 1 for the plain
family.  The same numbers fall out of three other computations (an
alternating binomial sum over sums of copies, an expansion through
degenerate Stirling numbers, and a partial-Bell-polynomial form), which
are kept as first-class routes: agreement of the routes is the library's
correctness argument, so none of them is allowed to decay into a wrapper
around another.

Dowling polynomials are the row polynomials sum_k W(n, k) x^k; their
value at x = 1 is a Dowling number.  ``dobinski_eval`` sums the
exponentially weighted moment series for the same polynomial numerically,
with the exact polynomial value available as the oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .bell import bell_partial, bell_partial_series
from .moments import (MomentModel, degen_moment, egf_mgf_degen,
                      sum_degen_moment, sum_plain_falling_moment)
from .ratcore import Params, RationalLike, binom, degen_falling, rat
from .series import (EgfSeries, egf_coeff, egf_const, egf_degen_exp, egf_mul,
                     egf_sub)

WHITNEY_ROUTES = ("egf", "alt_sum", "stirling_expand", "bell_form")
WHITNEY_R_ROUTES = ("egf", "alt_sum")


@dataclass(frozen=True, eq=False)
class PolyX:
    """Dense polynomial in the Dowling argument x, ascending powers.

    Trailing zeros are tolerated; equality and degree ignore them.
    """

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coerced = tuple(rat(c) for c in self.coeffs) or (Fraction(0),)
        object.__setattr__(self, "coeffs", coerced)

    @property
    def degree(self) -> int:
        """Largest power with nonzero coefficient; -1 for the zero polynomial."""
        for k in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[k]:
                return k
        return -1

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def evaluate(self, x: RationalLike) -> Fraction:
        x = rat(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self, order: int = 1) -> "PolyX":
        if order < 0:
            raise ValueError(f"derivative order must be nonnegative, got {order}")
        coeffs = self.coeffs
        for _ in range(order):
            coeffs = tuple(k * c for k, c in enumerate(coeffs))[1:] or (Fraction(0),)
        return PolyX(coeffs)

    def shift_up(self) -> "PolyX":
        """Multiply by x."""
        return PolyX((Fraction(0),) + self.coeffs)

    def __add__(self, other: "PolyX") -> "PolyX":
        if not isinstance(other, PolyX):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        merged = list(a)
        for i, c in enumerate(b):
            merged[i] += c
        return PolyX(tuple(merged))

    def __mul__(self, scalar: RationalLike) -> "PolyX":
        c = rat(scalar)
        return PolyX(tuple(c * v for v in self.coeffs))

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyX):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return all(self.coeff(k) == other.coeff(k) for k in range(n))

    def __hash__(self) -> int:
        return hash(self.coeffs[:self.degree + 1])

    def __repr__(self) -> str:
        return f"PolyX({list(self.coeffs)!r})"


POLY_ZERO = PolyX((Fraction(0),))
POLY_ONE = PolyX((Fraction(1),))


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> Fraction:
    """Stirling number of the second kind, by the triangle recurrence."""
    if n < 0 or k < 0:
        raise ValueError(f"indices must be nonnegative, got ({n}, {k})")
    if n == 0 and k == 0:
        return Fraction(1)
    if k > n or k == 0:
        return Fraction(0)
    return stirling2(n - 1, k - 1) + k * stirling2(n - 1, k)


def stirling2_degen(n: int, k: int, lam: RationalLike) -> Fraction:
    """Degenerate Stirling number of the second kind.

    Coefficient n of (1/k!) (e_lam(t) - 1)^k; connects the generalized
    falling factorial to the ordinary falling-factorial basis, and
    reduces to stirling2 at lam = 0.
    """
    if k > n:
        return Fraction(0)
    lam = rat(lam)
    inner = egf_sub(egf_degen_exp(1, lam, n), egf_const(1, n))
    return egf_coeff(bell_partial_series(k, inner), n)


def stirling2_prob(model: MomentModel, n: int, k: int,
                   lam: RationalLike) -> Fraction:
    """Probabilistic degenerate Stirling number attached to a moment model.

    Coefficient n of (1/k!) (E[e_lam^Y(t)] - 1)^k; equals stirling2_degen
    when Y is the point mass at 1.
    """
    if k > n:
        return Fraction(0)
    lam = rat(lam)
    inner = egf_sub(egf_mgf_degen(model, 1, lam, n), egf_const(1, n))
    return egf_coeff(bell_partial_series(k, inner), n)


@lru_cache(maxsize=None)
def _centered_kernel(model: MomentModel, m: int, lam: Fraction,
                     order: int) -> EgfSeries:
    """(E[e_lam^(mY)(t)] - 1) / m, the generating kernel of the W triangle."""
    mgf = egf_mgf_degen(model, m, lam, order)
    return EgfSeries(tuple(c / m for c in egf_sub(mgf, egf_const(1, order)).coeffs))


@lru_cache(maxsize=None)
def _whitney_series(model: MomentModel, m: int, lam: Fraction, r: int,
                    k: int, order: int) -> EgfSeries:
    """(1/k!) ((E[e_lam^(mY)] - 1)/m)^k e_lam^r(t), truncated."""
    powers = bell_partial_series(k, _centered_kernel(model, m, lam, order))
    return egf_mul(powers, egf_degen_exp(r, lam, order))


def whitney_prob(model: MomentModel, params: Params, n: int, k: int,
                 route: str = "egf") -> Fraction:
    """Probabilistic degenerate Whitney number W(n, k) (the r = 1 family).

    All four routes return the same rational:

    - "egf": coefficient extraction from the generating kernel (production
      path);
    - "alt_sum": (1/(m^k k!)) sum_j C(k,j) (-1)^(k-j) E[(m S_j + 1)_{n,lam}];
    - "stirling_expand": the same alternating sum pushed through the
      degenerate Stirling expansion of the falling factorial, so only
      ordinary falling-factorial moments of the copy sums appear;
    - "bell_form": partial Bell polynomials of the scaled moments
      E[(Y)_{j,lam/m}] m^j, evaluated by partition enumeration.

    k > n returns 0: the generating kernel's series starts at t^k.
    """
    m, lam = params.m, params.lam
    if k < 0 or n < 0:
        raise ValueError(f"indices must be nonnegative, got ({n}, {k})")
    if k > n:
        return Fraction(0)
    if route == "egf" or route == "alt_sum":
        return whitney_prob_r(model, Params(m, lam, r=1), n, k, route)
    if route == "stirling_expand":
        total = Fraction(0)
        for j in range(n + 1):
            s = stirling2_degen(n, j, lam)
            if not s:
                continue
            inner = Fraction(0)
            for l in range(k + 1):
                term = binom(k, l) * sum_plain_falling_moment(model, l, m, 1, j)
                inner += term if (k - l) % 2 == 0 else -term
            total += s * inner
        return total / (Fraction(m) ** k * math.factorial(k))
    if route == "bell_form":
        mu = lam / m
        args = tuple(degen_moment(model, j, mu) * Fraction(m) ** j
                     for j in range(1, n - k + 2))
        total = Fraction(0)
        for l in range(k, n + 1):
            b = bell_partial(l, k, args[:l - k + 1])
            if b:
                total += binom(n, l) * b * degen_falling(1, n - l, lam)
        return total / Fraction(m) ** k
    raise ValueError(f"unknown route {route!r}; expected one of {WHITNEY_ROUTES}")


def whitney_prob_r(model: MomentModel, params: Params, n: int, k: int,
                   route: str = "egf") -> Fraction:
    """Probabilistic degenerate r-Whitney number W(n, k) with shift params.r.

    Routes: "egf" extracts coefficient n of the generating product with
    e_lam^r(t); "alt_sum" averages (m S_j + r) falling factorials with
    alternating binomial weights.  r = 1 recovers whitney_prob.
    """
    m, lam, r = params.m, params.lam, params.r
    if k < 0 or n < 0:
        raise ValueError(f"indices must be nonnegative, got ({n}, {k})")
    if k > n:
        return Fraction(0)
    if route == "egf":
        return egf_coeff(_whitney_series(model, m, lam, r, k, n), n)
    if route == "alt_sum":
        total = Fraction(0)
        for j in range(k + 1):
            term = binom(k, j) * sum_degen_moment(model, j, m, r, n, lam)
            total += term if (k - j) % 2 == 0 else -term
        return total / (Fraction(m) ** k * math.factorial(k))
    raise ValueError(f"unknown route {route!r}; expected one of {WHITNEY_R_ROUTES}")


@dataclass(frozen=True)
class WhitneyTriangle:
    """Materialized lower-triangular table of r-Whitney numbers.

    Row n holds W(n, 0), ..., W(n, n); column 0 is (r)_{n,lam} and the
    diagonal is E[Y]^n.
    """

    model: MomentModel
    params: Params
    max_n: int
    entries: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def build(cls, model: MomentModel, params: Params,
              max_n: int) -> "WhitneyTriangle":
        rows = []
        for n in range(max_n + 1):
            rows.append(tuple(whitney_prob_r(model, params, n, k)
                              for k in range(n + 1)))
        return cls(model, params, max_n, tuple(rows))

    def entry(self, n: int, k: int) -> Fraction:
        if not 0 <= n <= self.max_n:
            raise IndexError(f"row {n} out of range for max_n {self.max_n}")
        if k < 0:
            raise IndexError(f"column {k} out of range")
        return self.entries[n][k] if k <= n else Fraction(0)


def dowling_poly(model: MomentModel, params: Params, n: int) -> PolyX:
    """Dowling polynomial of degree n: coefficient k is W(n, k), r = 1."""
    return dowling_poly_r(model, Params(params.m, params.lam, r=1), n)


def dowling_poly_r(model: MomentModel, params: Params, n: int) -> PolyX:
    """r-Dowling polynomial: coefficient k is the r-Whitney number W(n, k)."""
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    return PolyX(tuple(whitney_prob_r(model, params, n, k)
                       for k in range(n + 1)))


def dowling_number(model: MomentModel, params: Params, n: int) -> Fraction:
    """Dowling number: the Dowling polynomial evaluated at x = 1."""
    return dowling_poly(model, params, n).evaluate(1)


def dobinski_eval(model: MomentModel, params: Params, n: int,
                  x: RationalLike, rel_tol: float,
                  max_terms: int = 400) -> float:
    """Evaluate the r-Dowling polynomial at x >= 0 by its moment series.

    Sums e^(-x/m) sum_k x^k / (m^k k!) E[(m S_k + r)_{n,lam}] with exact
    rational terms, stopping once the current term is below rel_tol times
    the running partial sum in absolute value for three consecutive terms
    and k exceeds n.  The exact polynomial evaluation is the correctness
    oracle for this number; the truncation rule only serves standalone
    numeric use.
    """
    x = rat(x)
    if x < 0:
        raise ValueError(f"series argument must be nonnegative, got {x}")
    if rel_tol <= 0:
        raise ValueError(f"rel_tol must be positive, got {rel_tol}")
    m, lam, r = params.m, params.lam, params.r

    shift_series = egf_degen_exp(r, lam, n)
    power = egf_const(1, n)
    mgf = egf_mgf_degen(model, m, lam, n)
    partial = Fraction(0)
    weight = Fraction(1)         # x^k / (m^k k!)
    small_streak = 0
    for k in range(max_terms + 1):
        if k > 0:
            power = egf_mul(power, mgf)
            weight = weight * x / (m * k)
        term = weight * egf_coeff(egf_mul(power, shift_series), n)
        partial += term
        if abs(float(term)) <= rel_tol * abs(float(partial)):
            small_streak += 1
        else:
            small_streak = 0
        if small_streak >= 3 and k > n:
            return math.exp(-float(x) / m) * float(partial)
    raise RuntimeError(
        f"moment series did not settle within {max_terms} terms; "
        f"last term magnitude {abs(float(term)):.3e}")


def dowling_derivative(model: MomentModel, params: Params, n: int,
                       k: int) -> PolyX:
    """k-th derivative in x of the Dowling polynomial of degree n.

    Computed twice: by formal term-wise differentiation, and through the
    probabilistic degenerate Stirling numbers at lam/m,

        k! sum_j C(n,j) D(j, x) S_{Y,lam/m}(n-j, k) m^(n-k-j).

    The two must agree exactly; disagreement means an internal bug, not
    bad input.  Returns the formal derivative; k > n yields the zero
    polynomial.
    """
    if k < 0:
        raise ValueError(f"derivative order must be nonnegative, got {k}")
    if k == 0:
        return dowling_poly(model, params, n)
    if k > n:
        return POLY_ZERO
    formal = dowling_poly(model, params, n).derivative(k)
    mu = params.lam / params.m
    acc = POLY_ZERO
    for j in range(n - k + 1):
        s = stirling2_prob(model, n - j, k, mu)
        if not s:
            continue
        scale = binom(n, j) * s * Fraction(params.m) ** (n - k - j)
        acc = acc + scale * dowling_poly(model, params, j)
    acc = math.factorial(k) * acc
    if formal != acc:
        raise RuntimeError(
            f"derivative routes disagree at n={n}, k={k}: formal {formal!r} "
            f"vs moment form {acc!r}")
    return formal


def clear_caches() -> None:
    stirling2.cache_clear()
    _centered_kernel.cache_clear()
    _whitney_series.cache_clear()
