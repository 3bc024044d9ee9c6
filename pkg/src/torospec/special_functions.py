"""Bessel functions of the first kind of integer order and their zeros.

Evaluation uses the ascending power series where its terms decrease from the
start (``x**2 / 4 <= k + 1``) and Miller's backward recurrence, normalised by
``J_0 + 2 * sum(J_2j) = 1``, everywhere else.  Both are accurate to a few ulp
of ``max(1, |J_k|)`` on the validated range ``k <= 50``, ``x <= 500``.

Zeros are bracketed by interlacing (``j_{k-1,n} < j_{k,n} < j_{k-1,n+1}`` and
``j_{k,n-1} < j'_{k,n} < j_{k,n}``), seeded with McMahon's expansion and
polished by a Newton iteration that falls back to bisection whenever a step
leaves the bracket.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType
from typing import Callable, Literal, Mapping

from .errors import BesselRangeError, ConvergenceError, NumericalError

MAX_ORDER = 50
MAX_ARGUMENT = 500.0
MAX_ZERO_INDEX = 20
ZERO_TOLERANCE = 1e-10

_RESCALE = 1e200


def _check_order(k, upper):
    if isinstance(k, bool) or not isinstance(k, int) or not 0 <= k <= upper:
        raise BesselRangeError(f"order must be an integer in [0, {upper}], got {k!r}")


def _check_argument(x):
    x = float(x)
    if not 0.0 <= x <= MAX_ARGUMENT:
        raise BesselRangeError(f"argument must lie in [0, {MAX_ARGUMENT:g}], got {x!r}")
    return x


def _series(k: int, x: float) -> float:
    half = 0.5 * x
    if half == 0.0:
        return 1.0 if k == 0 else 0.0
    q = half * half
    term = 1.0 if k == 0 else math.exp(k * math.log(half) - math.lgamma(k + 1))
    total = term
    j = 0
    while True:
        j += 1
        term *= -q / (j * (j + k))
        total += term
        if abs(term) <= 1e-17 * abs(total) or term == 0.0:
            return total


def _miller(kmax: int, x: float) -> list[float]:
    """J_0 .. J_kmax at ``x > 0`` by normalised backward recurrence."""
    start = int(max(kmax, x) + 30 + 12 * x ** (1 / 3))
    start += start % 2
    values = [0.0] * (kmax + 1)
    upper, current = 0.0, 1e-30
    norm = 0.0
    two_over_x = 2.0 / x
    for n in range(start, 0, -1):
        lower = n * two_over_x * current - upper
        upper, current = current, lower
        # current now holds the unnormalised J_{n-1}
        if abs(current) > _RESCALE:
            current /= _RESCALE
            upper /= _RESCALE
            norm /= _RESCALE
            for i in range(kmax + 1):
                values[i] /= _RESCALE
        if n - 1 <= kmax:
            values[n - 1] = current
        if (n - 1) % 2 == 0 and n - 1 > 0:
            norm += 2.0 * current
    norm += current
    return [v / norm for v in values]


def _j(k: int, x: float) -> float:
    if x * x <= 4.0 * (k + 1):
        return _series(k, x)
    return _miller(k, x)[k]


def _j_prime(k: int, x: float) -> float:
    if k == 0:
        return -_j(1, x)
    if x * x <= 4.0 * k:
        return 0.5 * (_series(k - 1, x) - _series(k + 1, x))
    values = _miller(k + 1, x)
    return 0.5 * (values[k - 1] - values[k + 1])


def bessel_j(k: int, x: float) -> float:
    """Bessel function of the first kind ``J_k(x)``.

    Parameters
    ----------
    k : int
        Order, ``0 <= k <= 50``.
    x : float
        Argument, ``0 <= x <= 500``.

    Raises
    ------
    BesselRangeError
        If ``k`` or ``x`` lies outside the validated range.
    """
    _check_order(k, MAX_ORDER)
    return _j(k, _check_argument(x))


def bessel_j_prime(k: int, x: float) -> float:
    """Derivative ``dJ_k/dx`` from ``J_k' = (J_{k-1} - J_{k+1}) / 2`` and ``J_0' = -J_1``."""
    _check_order(k, MAX_ORDER)
    return _j_prime(k, _check_argument(x))


def _j_second(k: int, x: float) -> float:
    # Bessel's equation solved for J''
    return -_j_prime(k, x) / x - (1.0 - (k * k) / (x * x)) * _j(k, x)


def _safeguarded_newton(
    f: Callable[[float], float],
    df: Callable[[float], float],
    lo: float,
    hi: float,
    guess: float,
    max_iter: int = 100,
) -> float:
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        raise ConvergenceError(f"no sign change on [{lo}, {hi}]")
    x = guess if lo < guess < hi else 0.5 * (lo + hi)
    for _ in range(max_iter):
        fx = f(x)
        if fx == 0.0:
            return x
        if (fx > 0) == (f_lo > 0):
            lo, f_lo = x, fx
        else:
            hi = x
        d = df(x)
        step_ok = d != 0.0
        if step_ok:
            new = x - fx / d
            step_ok = lo < new < hi
        if not step_ok:
            new = 0.5 * (lo + hi)
        if abs(new - x) <= 4e-16 * abs(new) or hi - lo <= 4e-16 * abs(hi):
            return new
        x = new
    raise ConvergenceError(f"root finder did not converge on [{lo}, {hi}]")


def _mcmahon(k: int, n: int, prime: bool) -> float:
    mu = 4.0 * k * k
    if prime:
        beta = (n + 0.5 * k - 0.75) * math.pi
        b8 = 8.0 * beta
        return beta - (mu + 3.0) / b8 - 4.0 * (7.0 * mu * mu + 82.0 * mu - 9.0) / (3.0 * b8**3)
    beta = (n + 0.5 * k - 0.25) * math.pi
    b8 = 8.0 * beta
    return beta - (mu - 1.0) / b8 - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * b8**3)


@lru_cache(maxsize=None)
def _j_zero(k: int, n: int) -> float:
    if k == 0:
        lo, hi = (n - 0.5) * math.pi, n * math.pi
    else:
        lo, hi = _j_zero(k - 1, n), _j_zero(k - 1, n + 1)
    return _safeguarded_newton(
        lambda x: _j(k, x), lambda x: _j_prime(k, x), lo, hi, _mcmahon(k, n, prime=False)
    )


@lru_cache(maxsize=None)
def _j_prime_zero(k: int, n: int) -> float:
    if k == 0:
        # the trivial extremum at x = 0 is not counted
        lo, hi = _j_zero(0, n), _j_zero(0, n + 1)
    elif n == 1:
        lo, hi = float(k), _j_zero(k, 1)
    else:
        lo, hi = _j_zero(k, n - 1), _j_zero(k, n)
    return _safeguarded_newton(
        lambda x: _j_prime(k, x), lambda x: _j_second(k, x), lo, hi, _mcmahon(k, n, prime=True)
    )


def _check_index(n):
    if isinstance(n, bool) or not isinstance(n, int) or not 1 <= n <= MAX_ZERO_INDEX:
        raise BesselRangeError(f"zero index must be an integer in [1, {MAX_ZERO_INDEX}], got {n!r}")


def bessel_zero(k: int, n: int) -> float:
    """n-th positive zero ``p_{kn}`` of ``J_k``, for ``k, n <= 20``."""
    _check_order(k, MAX_ZERO_INDEX)
    _check_index(n)
    x = _j_zero(k, n)
    if not abs(_j(k, x)) < ZERO_TOLERANCE:
        raise NumericalError(f"zero ({k}, {n}) failed the residual check")
    return x


def bessel_prime_zero(k: int, n: int) -> float:
    """n-th positive zero ``p'_{kn}`` of ``J_k'``.

    Mode labels only need ``k >= 1``.  ``k = 0`` is accepted as well; it is
    bracketed between zeros of ``J_0`` rather than read off the ``J_1`` table,
    so ``p'_{0n} = p_{1n}`` remains a meaningful check.
    """
    _check_order(k, MAX_ZERO_INDEX)
    _check_index(n)
    x = _j_prime_zero(k, n)
    if not abs(_j_prime(k, x)) < ZERO_TOLERANCE:
        raise NumericalError(f"derivative zero ({k}, {n}) failed the residual check")
    return x


def zero_over_pi(k: int, n: int, prime: bool = False) -> float:
    """Asymptotic mode constant ``z_{kn} = p_{kn}/pi`` (or ``z'_{kn}`` when ``prime``).

    Unlike :func:`bessel_zero` this accepts orders and indices beyond 20,
    which mode enumeration needs for large cutoffs.
    """
    if k < 0 or n < 1 or k >= MAX_ORDER:
        raise BesselRangeError(f"zero ({k}, {n}) outside the supported table")
    return (_j_prime_zero(k, n) if prime else _j_zero(k, n)) / math.pi


@dataclass(frozen=True)
class BesselZeroTable:
    """Immutable table of zeros of ``J_k`` (kind ``"J"``) or ``J_k'`` (kind ``"Jprime"``)."""

    kind: Literal["J", "Jprime"]
    entries: Mapping[tuple[int, int], float] = field(repr=False)
    tolerance: float = ZERO_TOLERANCE

    @classmethod
    def build(cls, kind: Literal["J", "Jprime"], kmax: int, nmax: int,
              tolerance: float = ZERO_TOLERANCE) -> "BesselZeroTable":
        if kind == "J":
            kmin, finder = 0, bessel_zero
        elif kind == "Jprime":
            kmin, finder = 1, bessel_prime_zero
        else:
            raise ValueError(f"unknown table kind {kind!r}")
        entries = {(k, n): finder(k, n) for k in range(kmin, kmax + 1) for n in range(1, nmax + 1)}
        table = cls(kind, MappingProxyType(entries), tolerance)
        table.validate()
        return table

    def __getitem__(self, key: tuple[int, int]) -> float:
        return self.entries[key]

    def validate(self) -> None:
        """Raise :class:`NumericalError` if residual or ordering invariants fail."""
        evaluate = _j if self.kind == "J" else _j_prime
        for (k, n), x in self.entries.items():
            if not abs(evaluate(k, x)) < self.tolerance:
                raise NumericalError(f"residual too large at ({k}, {n})")
            above = self.entries.get((k, n + 1))
            if above is not None and not x < above:
                raise NumericalError(f"zeros not increasing in n at ({k}, {n})")
            right = self.entries.get((k + 1, n))
            if right is not None and not x < right:
                raise NumericalError(f"zeros not increasing in k at ({k}, {n})")
