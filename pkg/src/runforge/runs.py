"""Run (maximal periodicity) enumeration and per-word statistics.

A run of a word w is a factor whose minimal period p satisfies
length >= 2p and which cannot be extended by one letter on either side
without breaking period p.  Two independent engines are provided:

* ``find_runs_oracle`` transcribes the definition factor by factor; it is
  the ground truth and is deliberately simple (up to cubic cost).
* ``find_runs_fast`` scans match blocks per candidate period; quadratic
  with a bit-parallel fast path for binary words.

Both return identical run sets (tested exhaustively and randomly).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .words import Word, has_period, pack_binary

__all__ = [
    "Run",
    "RunStats",
    "find_runs_oracle",
    "find_runs_fast",
    "run_stats",
    "coverage",
    "run_factor_text",
    "trl_binary_packed",
    "overcount_weights",
]


@dataclass(frozen=True, order=True)
class Run:
    """A maximal periodicity: 1-based start, factor length, minimal period."""

    start: int
    length: int
    period: int

    @property
    def end(self) -> int:
        """1-based inclusive end position."""
        return self.start + self.length - 1

    @property
    def exponent(self) -> Fraction:
        return Fraction(self.length, self.period)


@dataclass(frozen=True)
class RunStats:
    """Aggregates over the run set of one word."""

    trl: int
    run_count: int
    exponent_sum: Fraction


def _sorted_runs(runs) -> list[Run]:
    # canonical output order: ascending start, then period
    return sorted(runs, key=lambda r: (r.start, r.period))


def _prefix_function(s: tuple[int, ...]) -> list[int]:
    """Longest proper border of every prefix of s (textbook failure function)."""
    pi = [0] * len(s)
    k = 0
    for q in range(1, len(s)):
        while k > 0 and s[k] != s[q]:
            k = pi[k - 1]
        if s[k] == s[q]:
            k += 1
        pi[q] = k
    return pi


def find_runs_oracle(w: Word) -> list[Run]:
    """All runs of w by literal application of the definition.

    Every factor is examined: its minimal period comes from the border of
    the factor (length minus longest border), and the two maximality
    conditions are checked by testing the period on the factor extended one
    letter left / right.  Ground truth for the fast engine.
    """
    s = w.symbols
    n = len(s)
    out = []
    for i in range(n):
        pi = _prefix_function(s[i:])
        for j in range(i + 1, n):
            length = j - i + 1
            p = length - pi[length - 1]
            if length < 2 * p:
                continue
            if i > 0 and has_period(w.factor(i, j + 1), p):
                continue
            if j < n - 1 and has_period(w.factor(i + 1, j + 2), p):
                continue
            out.append(Run(start=i + 1, length=length, period=p))
    return _sorted_runs(out)


def _runs_scalar(s: tuple[int, ...], n: int) -> list[Run]:
    runs: list[Run] = []
    seen: set[tuple[int, int]] = set()
    for p in range(1, n // 2 + 1):
        i = 0
        limit = n - p
        while i < limit:
            if s[i] != s[i + p]:
                i += 1
                continue
            j = i
            while j < limit and s[j] == s[j + p]:
                j += 1
            block = j - i
            if block >= p:
                extent = (i, i + block + p - 1)
                if extent not in seen:
                    seen.add(extent)
                    runs.append(Run(start=i + 1, length=block + p, period=p))
            i = j + 1
    return runs


def _runs_packed(value: int, n: int) -> list[Run]:
    runs: list[Run] = []
    seen: set[tuple[int, int]] = set()
    for p in range(1, n // 2 + 1):
        width = n - p
        m = ~(value ^ (value >> p)) & ((1 << width) - 1)
        while m:
            low = m & -m
            low_pos = low.bit_length() - 1
            filled = m + low
            block_bits = m & ~filled
            m &= filled
            high_pos = block_bits.bit_length() - 1
            block = high_pos - low_pos + 1
            if block >= p:
                # bit j compares symbols (n-1-p-j, n-1-j); the block covers
                # matches starting at symbol index n-1-p-high_pos
                start0 = n - 1 - p - high_pos
                extent = (start0, start0 + block + p - 1)
                if extent not in seen:
                    seen.add(extent)
                    runs.append(Run(start=start0 + 1, length=block + p, period=p))
    return runs


def find_runs_fast(w: Word) -> list[Run]:
    """All runs of w; equal to find_runs_oracle(w) as a set.

    For each candidate period p, maximal blocks of positions i with
    w[i] == w[i+p] and block length >= p give candidate extents of length
    block+p.  An extent found at period p is a run with minimal period p
    unless the same extent was already produced by a smaller period (a run
    of minimal period q resurfaces at every multiple of q that still fits
    twice), so the first period claiming an extent wins.  Binary words take
    a bit-parallel path.
    """
    n = len(w)
    if n < 2:
        return []
    if w.alphabet_size <= 2:
        runs = _runs_packed(pack_binary(w), n)
    else:
        runs = _runs_scalar(w.symbols, n)
    return _sorted_runs(runs)


def run_stats(w: Word) -> RunStats:
    runs = find_runs_fast(w)
    return RunStats(
        trl=sum(r.length for r in runs),
        run_count=len(runs),
        exponent_sum=sum((r.exponent for r in runs), Fraction(0)),
    )


def coverage(w: Word) -> list[list[Run]]:
    """For each position 1..|w|, the runs whose extent contains it."""
    cover: list[list[Run]] = [[] for _ in range(len(w))]
    for r in find_runs_fast(w):
        for pos in range(r.start - 1, r.end):
            cover[pos].append(r)
    return cover


def run_factor_text(w: Word, run: Run) -> str:
    return w.factor(run.start, run.end).text()


# --- packed fast path for hot loops (search, annealing) -------------------

_overcount: tuple[int, ...] = (0, 1)


def overcount_weights(up_to: int) -> tuple[int, ...]:
    """Weights g with sum_{k=1..m} g[m // k] == 1 for every m >= 1.

    A run of minimal period q and length ell appears as a candidate extent
    at exactly the periods kq with 2kq <= ell; weighting the candidate seen
    at period p by g[ell // (2p)] makes every run count exactly once, which
    turns TRL into a sum over match blocks with no extent bookkeeping.

    The cache is an immutable tuple replaced wholesale, so concurrent
    callers only ever see fully built tables.
    """
    global _overcount
    g = _overcount
    if up_to < len(g):
        return g
    table = list(g)
    for m in range(len(table), up_to + 1):
        table.append(1 - sum(table[m // k] for k in range(2, m + 1)))
    _overcount = g = tuple(table)
    return g


def trl_binary_packed(value: int, n: int) -> int:
    """Total run length of the length-n binary word packed into ``value``.

    Equivalent to summing run lengths from find_runs_fast; optimized for
    enumeration and annealing loops (no run objects, no extent sets).
    """
    if n < 2:
        return 0
    g = overcount_weights(n // 2)
    total = 0
    for p in range(1, n // 2 + 1):
        width = n - p
        m = ~(value ^ (value >> p)) & ((1 << width) - 1)
        two_p = 2 * p
        while m:
            low = m & -m
            filled = m + low
            block_bits = m & ~filled
            m &= filled
            block = block_bits.bit_length() - low.bit_length() + 1
            if block >= p:
                ell = block + p
                total += ell * g[ell // two_p]
    return total
