"""Partial and complete Bell polynomials on rational argument lists.

Two independent routes are provided on purpose.  ``bell_partial``
enumerates partition index vectors directly: tuples (l_1, ..., l_{n-k+1})
with l_1 + l_2 + ... = k blocks and l_1 + 2*l_2 + ... = n elements, each
contributing n!/(l_1!...l_j!) * prod (x_i/i!)^{l_i}.  The series route
``bell_partial_series`` reads the same numbers off the k-th power of an
EGF.  The enumeration is the cross-check oracle; the series route is the
production path used by the higher-level modules.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from .ratcore import RationalLike, rat
from .series import EgfSeries, egf_const, egf_mul, egf_scale

BellArgs = Sequence[RationalLike]


def bell_partial(n: int, k: int, args: BellArgs) -> Fraction:
    """Partial Bell polynomial B_{n,k}(x_1, ..., x_{n-k+1}).

    args[i-1] holds x_i; zero when k > n, and B_{0,0} = 1.
    """
    if n < 0 or k < 0:
        raise ValueError(f"indices must be nonnegative, got ({n}, {k})")
    if k > n:
        return Fraction(0)
    needed = n - k + 1 if k > 0 else 0
    if len(args) < needed:
        raise ValueError(
            f"B_({n},{k}) needs {needed} arguments x_1..x_{needed}, "
            f"got {len(args)}")
    xs = tuple(rat(v) for v in args[:needed])
    return _bell_partial_cached(n, k, xs)


@lru_cache(maxsize=None)
def _bell_partial_cached(n: int, k: int, xs: tuple[Fraction, ...]) -> Fraction:
    total = Fraction(0)
    for ls in _index_vectors(n, k, len(xs)):
        term = Fraction(factorial(n))
        for i, l in enumerate(ls, start=1):
            if l == 0:
                continue
            term *= (xs[i - 1] / factorial(i)) ** l
            term /= factorial(l)
        total += term
    return total


def _index_vectors(n: int, k: int, width: int):
    """Yield (l_1..l_width) with sum l_i = k and sum i*l_i = n."""
    def rec(pos: int, blocks: int, weight: int, acc: list[int]):
        if pos > width:
            if blocks == 0 and weight == 0:
                yield tuple(acc)
            return
        # l_pos can use at most weight // pos of the remaining weight.
        for l in range(min(blocks, weight // pos) + 1):
            acc.append(l)
            yield from rec(pos + 1, blocks - l, weight - pos * l, acc)
            acc.pop()
    yield from rec(1, k, n, [])


@lru_cache(maxsize=None)
def bell_partial_series(k: int, inner: EgfSeries) -> EgfSeries:
    """Series whose coefficient n is B_{n,k}(inner_1, ..., inner_{n-k+1}).

    The k-th power of `inner` divided by k!, built incrementally so
    successive k values over one inner series cost one product each.
    `inner` must have zero constant term.
    """
    if k < 0:
        raise ValueError(f"block count must be nonnegative, got {k}")
    if inner.coeffs[0] != 0:
        raise ValueError(
            f"inner series must have zero constant term, got {inner.coeffs[0]}")
    if k == 0:
        return egf_const(1, inner.order)
    prev = bell_partial_series(k - 1, inner)
    return egf_scale(Fraction(1, k), egf_mul(prev, inner))


def bell_complete(n: int, args: BellArgs) -> Fraction:
    """Complete Bell polynomial B_n(x_1, ..., x_n) = sum_k B_{n,k}."""
    if n < 0:
        raise ValueError(f"index must be nonnegative, got {n}")
    if len(args) < n:
        raise ValueError(f"B_{n} needs {n} arguments x_1..x_{n}, got {len(args)}")
    return sum((bell_partial(n, k, args) for k in range(n + 1)), Fraction(0))


def bell_args_series(args: BellArgs, order: int) -> EgfSeries:
    """Pack x_1..x_order into the EGF 0 + x_1 t + x_2 t^2/2! + ...

    Missing trailing arguments are taken as zero, which leaves every
    B_{n,k} needing only x_1..x_{n-k+1} unchanged.
    """
    xs = tuple(rat(v) for v in args[:order])
    return EgfSeries((Fraction(0),) + xs + (Fraction(0),) * (order - len(xs)))


def clear_caches() -> None:
    _bell_partial_cached.cache_clear()
    bell_partial_series.cache_clear()
