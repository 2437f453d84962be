"""Identity checks: every structural law of the Whitney/Dowling families,
verified to exact rational equality at caller-chosen parameter points.

Each check computes both sides of one identity through routes that share
as little code as possible and returns an ``IdentityReport`` carrying the
two exact values, so a failure is diagnosable without re-running.  Scalar
identities in the polynomial argument x hold as polynomial identities
once they hold at degree+1 distinct points; callers batch the x values.

Check functions are pure and independent; a runner may execute them in
parallel.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence

from .bell import bell_args_series, bell_partial_series
from .dowling import (PolyX, dowling_number, dowling_poly, stirling2,
                      stirling2_prob, whitney_prob, whitney_prob_r)
from .moments import MomentModel, degen_moment, egf_mgf_degen, sum_degen_moment
from .ratcore import (Params, RationalLike, binom, binom_general,
                      degen_falling, rat)
from .series import egf_coeff


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of checking one identity at one parameter point.

    ``lhs`` and ``rhs`` are exact (a Fraction, a PolyX, or a bivariate
    coefficient dict); ``passed`` is exact equality of the two.
    """

    theorem_id: str
    model: Optional[MomentModel]
    params: Optional[Params]
    bounds: dict
    lhs: object
    rhs: object
    passed: bool


def _report(theorem_id: str, model, params, bounds, lhs, rhs) -> IdentityReport:
    return IdentityReport(theorem_id, model, params, bounds, lhs, rhs,
                          passed=(lhs == rhs))


def check_sum_identity(model: MomentModel, params: Params, n: int,
                       N: int) -> IdentityReport:
    """Partial sums of E[(m S_k + 1)_{n,lam}] against weighted Whitney numbers.

    sum_{k<=N} E[(m S_k + 1)_{n,lam}]
        = sum_{l<=N} l! m^l C(N+1, l+1) W(n, l).
    """
    m, lam = params.m, params.lam
    lhs = sum((sum_degen_moment(model, k, m, 1, n, lam) for k in range(N + 1)),
              Fraction(0))
    rhs = sum((factorial(l) * Fraction(m)**l * binom(N + 1, l + 1)
               * whitney_prob(model, params, n, l) for l in range(N + 1)),
              Fraction(0))
    return _report("sum_moment_identity", model, params, {"n": n, "N": N},
                   lhs, rhs)


def check_bell_expansion(model: MomentModel, params: Params,
                         n: int) -> IdentityReport:
    """Dowling polynomial as a double sum of partial Bell polynomials.

    The Bell arguments (x/m) E[(mY)_{i,lam}] carry the x dependence only
    through degree-k homogeneity, so each (l, k) term contributes
    C(n,l) (1)_{n-l,lam} B_{l,k}(E[(mY)_{1,lam}]/m, ...) x^k.
    """
    m, lam = params.m, params.lam
    lhs = dowling_poly(model, params, n)
    mgf = egf_mgf_degen(model, m, lam, max(n, 1))
    inner = bell_args_series([c / m for c in mgf.coeffs[1:]], max(n, 1))
    coeffs = [Fraction(0)] * (n + 1)
    for l in range(n + 1):
        w = binom(n, l) * degen_falling(1, n - l, lam)
        if not w:
            continue
        for k in range(l + 1):
            coeffs[k] += w * egf_coeff(bell_partial_series(k, inner), l)
    return _report("bell_expansion", model, params, {"n": n},
                   lhs, PolyX(tuple(coeffs)))


def check_recurrence(model: MomentModel, params: Params,
                     n: int) -> IdentityReport:
    """Degree-raising recurrence for Dowling polynomials.

    D(n+1, x) = sum_k (-lam)^(n-k) n!/k! D(k, x)
              + (x/m) sum_k C(n,k) D(k, x) E[(mY)_{n-k+1,lam}].
    """
    m, lam = params.m, params.lam
    lhs = dowling_poly(model, params, n + 1)
    mgf = egf_mgf_degen(model, m, lam, n + 1)
    plain = PolyX((Fraction(0),))
    weighted = PolyX((Fraction(0),))
    for k in range(n + 1):
        dk = dowling_poly(model, params, k)
        sign = Fraction(-1) ** (n - k)
        plain = plain + (sign * lam**(n - k) * Fraction(factorial(n), factorial(k))) * dk
        weighted = weighted + (binom(n, k) * egf_coeff(mgf, n - k + 1)) * dk
    rhs = plain + Fraction(1, m) * weighted.shift_up()
    return _report("recurrence", model, params, {"n": n}, lhs, rhs)


# Bivariate polynomials in (x, y) as {(i, j): coeff} with zero entries dropped.

def _biv_trim(p: dict) -> dict:
    return {ij: c for ij, c in p.items() if c}


def _biv_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for ij, c in b.items():
        out[ij] = out.get(ij, Fraction(0)) + c
    return _biv_trim(out)


def _biv_scaled(a: dict, c: Fraction) -> dict:
    return _biv_trim({ij: c * v for ij, v in a.items()})


def _biv_substitute_sum(p: PolyX) -> dict:
    """p(x + y) expanded over monomials x^i y^(d-i)."""
    out: dict = {}
    for d, c in enumerate(p.coeffs):
        if not c:
            continue
        for i in range(d + 1):
            key = (i, d - i)
            out[key] = out.get(key, Fraction(0)) + c * binom(d, i)
    return _biv_trim(out)


def _biv_outer(px: PolyX, py: PolyX) -> dict:
    """Product px(x) * py(y)."""
    out: dict = {}
    for i, cx in enumerate(px.coeffs):
        if not cx:
            continue
        for j, cy in enumerate(py.coeffs):
            if cy:
                out[(i, j)] = out.get((i, j), Fraction(0)) + cx * cy
    return _biv_trim(out)


def check_convolution(model: MomentModel, params: Params,
                      n: int) -> IdentityReport:
    """The twisted convolution law that replaces the binomial identity.

    sum_k C(n,k) (1)_{n-k,lam} D(k, x+y)
        = sum_k C(n,k) D(n-k, x) D(k, y),
    as an exact bivariate polynomial identity.
    """
    lam = params.lam
    lhs: dict = {}
    rhs: dict = {}
    for k in range(n + 1):
        dk = dowling_poly(model, params, k)
        w = binom(n, k) * degen_falling(1, n - k, lam)
        if w:
            lhs = _biv_add(lhs, _biv_scaled(_biv_substitute_sum(dk), w))
        rhs = _biv_add(rhs, _biv_scaled(
            _biv_outer(dowling_poly(model, params, n - k), dk), binom(n, k)))
    return _report("convolution", model, params, {"n": n}, lhs, rhs)


def check_binom_bell(model: MomentModel, params: Params, n: int,
                     x: RationalLike) -> IdentityReport:
    """Dowling numbers inside partial Bell polynomials, at a scalar x.

    sum_k C(n,k) (x-1)_{n-k,lam} D(k, x)
        = sum_k C(x,k) k! B_{n,k}(D(1), ..., D(n-k+1)),
    where D(j) are Dowling numbers (the polynomials at 1).
    """
    x = rat(x)
    lam = params.lam
    lhs = sum((binom(n, k) * degen_falling(x - 1, n - k, lam)
               * dowling_poly(model, params, k).evaluate(x)
               for k in range(n + 1)), Fraction(0))
    numbers = [dowling_number(model, params, j) for j in range(1, n + 1)]
    inner = bell_args_series(numbers, max(n, 1))
    rhs = sum((binom_general(x, k) * factorial(k)
               * egf_coeff(bell_partial_series(k, inner), n)
               for k in range(n + 1)), Fraction(0))
    return _report("binomial_bell", model, params, {"n": n, "x": x}, lhs, rhs)


def check_bell_rwhitney(model: MomentModel, params: Params, n: int, k: int,
                        x: RationalLike) -> IdentityReport:
    """r-Whitney numbers with shift r = k against Bell polynomials of
    staircase-weighted Dowling polynomial values.

    sum_{j<=n-k} C(n,k) k^j x^j W_(r=k)(n-k, j)
        = B_{n,k}(1*D(0,x), 2*D(1,x), ..., (n-k+1)*D(n-k,x)).
    """
    if k > n:
        raise ValueError(f"need k <= n, got k={k}, n={n}")
    x = rat(x)
    params_k = Params(params.m, params.lam, r=k)
    lhs = sum((binom(n, k) * Fraction(k)**j * x**j
               * whitney_prob_r(model, params_k, n - k, j)
               for j in range(n - k + 1)), Fraction(0))
    args = [(i + 1) * dowling_poly(model, params, i).evaluate(x)
            for i in range(n - k + 1)]
    inner = bell_args_series(args, max(n, 1))
    rhs = egf_coeff(bell_partial_series(k, inner), n)
    return _report("bell_r_whitney", model, params,
                   {"n": n, "k": k, "x": x}, lhs, rhs)


def check_stirling_bell(model: MomentModel, params: Params, n: int, k: int,
                        x: RationalLike) -> IdentityReport:
    """Bell polynomial of centered Dowling values against a Stirling-weighted
    r-Whitney sum (shift r = k).

    B_{n,k}(D(1,x) - (1)_{1,lam}, ..., D(n-k+1,x) - (1)_{n-k+1,lam})
        = sum_{j=k}^n S2(j,k) W_(r=k)(n, j) x^j.
    """
    if k > n:
        raise ValueError(f"need k <= n, got k={k}, n={n}")
    x = rat(x)
    lam = params.lam
    args = [dowling_poly(model, params, i).evaluate(x) - degen_falling(1, i, lam)
            for i in range(1, n - k + 2)]
    inner = bell_args_series(args, max(n, 1))
    lhs = egf_coeff(bell_partial_series(k, inner), n)
    params_k = Params(params.m, params.lam, r=k)
    rhs = sum((stirling2(j, k) * whitney_prob_r(model, params_k, n, j) * x**j
               for j in range(k, n + 1)), Fraction(0))
    return _report("stirling_bell", model, params,
                   {"n": n, "k": k, "x": x}, lhs, rhs)


def check_derivative(model: MomentModel, params: Params, n: int,
                     k: int) -> IdentityReport:
    """Higher x-derivatives of Dowling polynomials.

    (d/dx)^k D(n, x) = k! sum_j C(n,j) D(j, x) S_{Y,lam/m}(n-j, k) m^(n-k-j);
    for k = 1 the Stirling factor collapses to E[(Y)_{n-j,lam/m}], which is
    checked as well whenever n >= 1.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    m, lam = params.m, params.lam
    mu = lam / m
    lhs = dowling_poly(model, params, n).derivative(k)
    rhs = PolyX((Fraction(0),))
    for j in range(n - k + 1):
        s = stirling2_prob(model, n - j, k, mu)
        if s:
            rhs = rhs + (binom(n, j) * s * Fraction(m)**(n - k - j)) \
                * dowling_poly(model, params, j)
    rhs = factorial(k) * rhs
    ok = lhs == rhs
    if n >= 1:
        first = PolyX((Fraction(0),))
        for j in range(n):
            first = first + (binom(n, j) * degen_moment(model, n - j, mu)
                             * Fraction(m)**(n - j - 1)) \
                * dowling_poly(model, params, j)
        ok = ok and dowling_poly(model, params, n).derivative(1) == first
    return IdentityReport("derivative", model, params, {"n": n, "k": k},
                          lhs, rhs, passed=ok)


def check_binomial_inversion(seq: Sequence[RationalLike]) -> IdentityReport:
    """Round trip of the binomial transform and its alternating inverse."""
    a = tuple(rat(v) for v in seq)
    b = [sum(((-1) ** (k - l) * binom(k, l) * a[l] for l in range(k + 1)),
             Fraction(0)) for k in range(len(a))]
    back = tuple(sum((binom(k, l) * b[l] for l in range(k + 1)), Fraction(0))
                 for k in range(len(a)))
    return _report("binomial_inversion", None, None, {"length": len(a)},
                   a, back)
