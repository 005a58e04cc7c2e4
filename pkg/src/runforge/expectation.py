"""Exact expected total run length and its asymptotic density.

The expected TRL of a random length-n word over an alpha-letter alphabet
decomposes into three exact rational terms: runs interior to the word (S1),
runs touching exactly one end (S2, prefix and suffix cases are symmetric),
and runs covering the whole word (S3).  Everything here is computed over
``fractions.Fraction``; decimals appear only when rendering.

``expected_trl_oracle`` recomputes the same quantity by brute-force
enumeration of all alpha^n words, which is the independent check that the
closed formula is right.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CapacityError
from .runs import find_runs_fast
from .words import Word

__all__ = [
    "mobius",
    "primitive_count",
    "ExpectationReport",
    "expected_trl_exact",
    "expected_trl_oracle",
    "DensityEstimate",
    "trl_density",
    "density_rounded",
    "s2_limit",
    "format_rational",
]

DEFAULT_ORACLE_BUDGET = 10**7


def mobius(m: int) -> int:
    """Moebius function: 0 if m has a squared prime factor, else (-1)^(#prime factors)."""
    if m < 1:
        raise ValueError(f"mobius is defined for m >= 1, got {m}")
    result = 1
    d = 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            result = -result
        d += 1
    if m > 1:
        result = -result
    return result


def primitive_count(p: int, alpha: int) -> int:
    """Number of primitive words of length p over an alpha-letter alphabet.

    By Moebius inversion of sum_{d | m} P(d) = alpha^m:
    P(p) = sum_{d | p} alpha^d mobius(p/d).
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if alpha < 1:
        raise ValueError(f"alpha must be >= 1, got {alpha}")
    total = 0
    for d in range(1, p + 1):
        if p % d == 0:
            total += alpha**d * mobius(p // d)
    return total


@dataclass(frozen=True)
class ExpectationReport:
    """Expected TRL split into its three exact terms (total = s1 + s2 + s3)."""

    n: int
    alpha: int
    s1: Fraction
    s2: Fraction
    s3: Fraction
    total: Fraction
    decimal: str


def expected_trl_exact(n: int, alpha: int, digits: int = 10) -> ExpectationReport:
    """Expected TRL of a uniformly random length-n word, as an exact rational.

    S1 sums k * alpha^-k over interior run placements, S2 over one-ended
    runs, S3 covers whole-word runs.  The k-sums are evaluated through
    memoized partial sums of k * alpha^-k, which is plain summation in a
    different order (bit-identical to the naive triple loop).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if alpha < 2:
        raise ValueError(f"alpha must be >= 2, got {alpha}")
    a = alpha
    # F[K] = sum_{k=0}^{K} k a^-k ; G[K] = sum_{j=0}^{K} F[j]
    top = max(n - 1, 0)
    F = [Fraction(0)] * (top + 1)
    for k in range(1, top + 1):
        F[k] = F[k - 1] + Fraction(k, a**k)
    G = [Fraction(0)] * (top + 1)
    for j in range(1, top + 1):
        G[j] = G[j - 1] + F[j]

    s1 = Fraction(0)
    for p in range(1, (n - 2) // 2 + 1):
        if n - 2 * p - 1 < 1:
            continue
        P = primitive_count(p, a)
        # sum_{i=1}^{n-2p-1} sum_{k=2p}^{n-i-1} k a^-k, reindexed over j = n-i-1
        inner = (G[n - 2] - G[2 * p - 1]) - (n - 2 * p - 1) * F[2 * p - 1]
        s1 += P * inner
    s1 *= Fraction((a - 1) ** 2, a**2)

    s2 = Fraction(0)
    for p in range(1, (n - 1) // 2 + 1):
        P = primitive_count(p, a)
        s2 += P * (F[n - 1] - F[2 * p - 1])
    s2 *= 2 * Fraction(a - 1, a)

    s3 = Fraction(n, a**n) * sum(primitive_count(p, a) for p in range(1, n // 2 + 1))

    total = s1 + s2 + s3
    return ExpectationReport(
        n=n, alpha=a, s1=s1, s2=s2, s3=s3, total=total,
        decimal=format_rational(total, digits),
    )


def _trl_sum_packed(n: int, alpha: int) -> int:
    """Sum of TRL over all alpha^n words via the vectorized kernel."""
    from .search import _chunk_trl, _pack_base  # local import to avoid a cycle

    sym_bits = 1 if alpha == 2 else 2
    total = 0
    space = alpha**n
    chunk = 1 << 19
    for lo in range(0, space, chunk):
        hi = min(lo + chunk, space)
        indices = np.arange(lo, hi, dtype=np.int64)
        packed = _pack_base(indices, n, alpha, sym_bits)
        total += int(_chunk_trl(packed, n, sym_bits).sum())
    return total


def expected_trl_oracle(
    n: int, alpha: int, budget: int = DEFAULT_ORACLE_BUDGET
) -> Fraction:
    """Average TRL over all alpha^n words by direct enumeration (exact)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if alpha < 2:
        raise ValueError(f"alpha must be >= 2, got {alpha}")
    space = alpha**n
    if space > budget:
        raise CapacityError(
            f"enumerating {alpha}^{n} = {space} words exceeds the budget of {budget}"
        )
    if alpha <= 4 and n * (1 if alpha == 2 else 2) <= 32 and n >= 2:
        total = _trl_sum_packed(n, alpha)
    else:
        total = 0
        for symbols in itertools.product(range(alpha), repeat=n):
            runs = find_runs_fast(Word(symbols, alpha))
            total += sum(r.length for r in runs)
    return Fraction(total, space)


@dataclass(frozen=True)
class DensityEstimate:
    """Partial sum of the density series with a proven bound on what was cut."""

    alpha: int
    value: Fraction
    tail_bound: Fraction
    terms: int


def _tail_majorant(alpha: int, m: int) -> Fraction:
    """Exact upper bound for sum_{p >= m} P(p) (2p(alpha-1)+1) / alpha^(2p+1).

    Since P(p) <= alpha^p, each term is at most (2p(alpha-1)+1)/alpha^(p+1),
    and both resulting geometric-style series have closed forms.
    """
    a = alpha
    sum_geo = Fraction(1, a ** (m - 1) * (a - 1))  # sum a^-p
    sum_lin = (Fraction(m * a, a - 1) + Fraction(a, (a - 1) ** 2)) / a**m  # sum p a^-p
    return Fraction(2 * (a - 1), a) * sum_lin + Fraction(1, a) * sum_geo


def trl_density(alpha: int, tolerance) -> DensityEstimate:
    """Limit of expected TRL per letter: sum_p P(p)(2p(alpha-1)+1)/alpha^(2p+1).

    Terms are added until the analytic tail majorant (not the term size)
    drops below ``tolerance``; the returned value is the partial sum and
    ``tail_bound`` brackets the truncation error from above.
    """
    if alpha < 2:
        raise ValueError(f"alpha must be >= 2, got {alpha}")
    tol = Fraction(tolerance)
    if tol <= 0:
        raise ValueError(f"tolerance must be positive, got {tolerance}")
    a = alpha
    total = Fraction(0)
    p = 0
    while True:
        p += 1
        total += Fraction(
            primitive_count(p, a) * (2 * p * (a - 1) + 1), a ** (2 * p + 1)
        )
        tail = _tail_majorant(a, p + 1)
        if tail < tol:
            return DensityEstimate(alpha=a, value=total, tail_bound=tail, terms=p)


def density_rounded(alpha: int, digits: int, tolerance) -> tuple[str, DensityEstimate]:
    """Density rounded to ``digits`` decimals, refined until rounding is stable.

    The true value lies in [value, value + tail_bound]; the series is pushed
    past ``tolerance`` if needed until both interval ends round identically,
    so the rendered digits are those of the limit itself.
    """
    tol = Fraction(tolerance)
    while True:
        est = trl_density(alpha, tol)
        lo = format_rational(est.value, digits)
        hi = format_rational(est.value + est.tail_bound, digits)
        if lo == hi:
            return lo, est
        tol /= 16


def s2_limit(alpha: int, tolerance) -> DensityEstimate:
    """Limit of the one-ended-run term S2: (2/(alpha-1)) sum_p P(p)(2p(alpha-1)+1)/alpha^(2p).

    Term by term this is (2 alpha / (alpha - 1)) times the density series,
    so it is evaluated through the same loop with a scaled tolerance.
    """
    factor = Fraction(2 * alpha, alpha - 1)
    base = trl_density(alpha, Fraction(tolerance) / factor)
    return DensityEstimate(
        alpha=alpha,
        value=base.value * factor,
        tail_bound=base.tail_bound * factor,
        terms=base.terms,
    )


def format_rational(value: Fraction, digits: int) -> str:
    """Render an exact rational as a fixed-point decimal, round-half-even."""
    if digits < 0:
        raise ValueError(f"digits must be >= 0, got {digits}")
    sign = "-" if value < 0 else ""
    num, den = abs(value.numerator), value.denominator
    scaled = num * 10**digits
    q, r = divmod(scaled, den)
    double = 2 * r
    if double > den or (double == den and q % 2 == 1):
        q += 1
    if digits == 0:
        return f"{sign}{q}"
    text = str(q).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}"
