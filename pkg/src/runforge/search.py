"""Exhaustive extremal search over all words of a given length.

``tau_exhaustive`` computes the exact maximum (or minimum) total run length
over every word of length n, reporting all extremal words up to symmetry.
Enumeration is vectorized: words are packed into machine integers and the
TRL of a whole chunk is computed at once with bitwise numpy kernels, so the
full binary table up to n = 22 takes seconds rather than hours.

``verify_four_runs_theorem`` and ``verify_pair_coverage`` scan every word up
to a length bound for structural impossibilities (a position covered by two
runs of period p and two of period p+1; more than three covering runs with
periods in {2q-1, 2q}) and report the counterexample list, expected empty.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError
from .runs import Run, coverage as run_coverage, find_runs_fast, overcount_weights
from .words import Word, canonical_form, unpack_binary

__all__ = [
    "TauRecord",
    "tau_exhaustive",
    "Violation",
    "ViolationReport",
    "verify_four_runs_theorem",
    "verify_pair_coverage",
    "SUPPORTED_LIMITS",
]

# alphabet size -> largest supported n (packing width and runtime budget)
SUPPORTED_LIMITS: dict[int, int] = {2: 26, 3: 14, 4: 12}

# witness bookkeeping caps: collect at most this many raw extremal words
_RAW_WITNESS_CAP = 200_000
# report every canonical class when there are at most this many
_CLASS_REPORT_CAP = 64

_CHUNK = 1 << 19


@dataclass(frozen=True)
class TauRecord:
    """Result of one exhaustive extremal search."""

    n: int
    alphabet_size: int
    mode: str  # "max" or "min"
    value: int
    witnesses: list[Word]
    witness_count: int | None  # canonical classes; None if beyond the cap
    words_examined: int


def _second_diff_weights(n: int, p: int, g) -> np.ndarray:
    """Per-erosion-depth weights turning popcounts into a TRL contribution.

    With c_j = popcount of the period-p match mask eroded j times, a maximal
    match block of length L contributes sum_j max(L-j, 0) * weights[j] =
    v(L) where v(L) = (L+p) * g[(L+p) // (2p)] for L >= p and 0 below; the
    second difference of v is exactly what makes the telescoping work.
    """

    def v(L: int) -> int:
        if L < p:
            return 0
        ell = L + p
        return ell * g[ell // (2 * p)]

    return np.array(
        [v(j + 1) - 2 * v(j) + v(j - 1) for j in range(n - p)], dtype=np.int64
    )


def _chunk_trl(packed: np.ndarray, n: int, sym_bits: int) -> np.ndarray:
    """TRL of every packed word in ``packed`` (symbols MSB-first, sym_bits wide)."""
    g = overcount_weights(max(n // 2, 1))
    acc = np.zeros(packed.shape, dtype=np.int64)
    step = np.uint32(sym_bits)
    if sym_bits == 1:
        ones = None
    else:
        # mask with a 1 in the low bit of each symbol slot
        ones = np.uint32(sum(1 << (sym_bits * t) for t in range(n)))
    for p in range(1, n // 2 + 1):
        width = n - p
        if sym_bits == 1:
            slot_mask = np.uint32((1 << width) - 1)
            m = (~(packed ^ (packed >> np.uint32(p)))) & slot_mask
        else:
            x = packed ^ (packed >> np.uint32(sym_bits * p))
            bad = x | (x >> np.uint32(1))
            slot_mask = np.uint32(
                (ones & np.uint32((1 << (sym_bits * width)) - 1))
            )
            m = (~bad) & slot_mask
        weights = _second_diff_weights(n, p, g)
        e = m
        for j in range(width):
            wj = int(weights[j])
            if wj:
                acc += wj * np.bitwise_count(e).astype(np.int64)
            if j + 1 < width:
                e = e & (e >> step)
                if not e.any():
                    break
    return acc


def _pack_base(indices: np.ndarray, n: int, alpha: int, sym_bits: int) -> np.ndarray:
    """Pack enumeration indices (base-alpha digit strings, MSB first) into bits."""
    if alpha == 2:
        return indices.astype(np.uint32)
    packed = np.zeros(indices.shape, dtype=np.uint32)
    rest = indices.copy()
    for i in range(n - 1, -1, -1):
        digit = (rest % alpha).astype(np.uint32)
        packed |= digit << np.uint32(sym_bits * (n - 1 - i))
        rest //= alpha
    return packed


def _scan_block(args) -> tuple[int, int, list[int], int]:
    """Worker: extremal TRL over one contiguous index block.

    Returns (best value, raw extremal count, extremal indices up to the cap,
    words examined).  Pure function of its arguments, so results merge
    deterministically whatever the worker count.
    """
    start, stop, n, alpha, sym_bits, want_max = args
    best: int | None = None
    count = 0
    hits: list[int] = []
    for lo in range(start, stop, _CHUNK):
        hi = min(lo + _CHUNK, stop)
        indices = np.arange(lo, hi, dtype=np.int64)
        packed = _pack_base(indices, n, alpha, sym_bits)
        trl = _chunk_trl(packed, n, sym_bits)
        local = int(trl.max() if want_max else trl.min())
        improved = best is None or (local > best if want_max else local < best)
        if improved:
            best = local
            count = 0
            hits = []
        if local == best:
            where = np.nonzero(trl == best)[0]
            count += len(where)
            room = _RAW_WITNESS_CAP - len(hits)
            if room > 0:
                hits.extend(int(indices[i]) for i in where[:room])
    assert best is not None
    return best, count, hits, stop - start


def _index_to_word(index: int, n: int, alpha: int) -> Word:
    symbols = []
    for _ in range(n):
        symbols.append(index % alpha)
        index //= alpha
    return Word(tuple(reversed(symbols)), alpha)


def tau_exhaustive(n: int, alpha: int, mode: str = "max", jobs: int | None = None) -> TauRecord:
    """Exact extremal TRL over all length-n words on an alpha-letter alphabet.

    For alpha = 2 only words starting with 'a' are enumerated (the
    complement of a word has the same run extents, so every class is still
    seen); larger alphabets are enumerated in full.  Witnesses are reported
    as canonical forms: all of them when there are at most 64 classes,
    otherwise the lexicographically least plus the class count (None when
    even counting was capped).  The result does not depend on ``jobs``.
    """
    if mode not in ("max", "min"):
        raise ValueError(f"mode must be 'max' or 'min', got {mode!r}")
    limit = SUPPORTED_LIMITS.get(alpha)
    if limit is None:
        supported = ", ".join(
            f"alpha={a} up to n={m}" for a, m in sorted(SUPPORTED_LIMITS.items())
        )
        raise CapacityError(
            f"alphabet size {alpha} unsupported by exhaustive search ({supported})"
        )
    if not 1 <= n <= limit:
        raise CapacityError(
            f"exhaustive search supports 1 <= n <= {limit} for alpha={alpha}, got n={n}"
        )
    sym_bits = 1 if alpha == 2 else 2
    # first letter fixed to 'a' for binary; full space otherwise
    total = alpha ** (n - 1) if alpha == 2 else alpha**n
    want_max = mode == "max"

    if n == 1:
        # no runs fit in one letter; enumerate literally for the record
        witnesses = [Word((0,), alpha)] if alpha == 2 else [
            Word((s,), alpha) for s in range(alpha)
        ]
        canon = sorted({canonical_form(w).symbols for w in witnesses})
        return TauRecord(
            n=1,
            alphabet_size=alpha,
            mode=mode,
            value=0,
            witnesses=[Word(c, alpha) for c in canon],
            witness_count=len(canon),
            words_examined=total,
        )

    jobs = max(1, jobs or 1)
    blocks = _split_range(total, jobs)
    job_args = [(lo, hi, n, alpha, sym_bits, want_max) for lo, hi in blocks]
    if jobs == 1 or len(blocks) == 1:
        results = [_scan_block(a) for a in job_args]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_block, job_args))

    best = max(r[0] for r in results) if want_max else min(r[0] for r in results)
    raw_count = sum(r[1] for r in results if r[0] == best)
    hits: list[int] = []
    for r in results:
        if r[0] == best:
            room = _RAW_WITNESS_CAP - len(hits)
            if room <= 0:
                break
            hits.extend(r[2][:room])

    capped = raw_count > len(hits)
    canon = sorted({canonical_form(_index_to_word(i, n, alpha)).symbols for i in hits})
    witness_count = None if capped else len(canon)
    if capped or len(canon) > _CLASS_REPORT_CAP:
        witnesses = [Word(canon[0], alpha)]
    else:
        witnesses = [Word(c, alpha) for c in canon]
    return TauRecord(
        n=n,
        alphabet_size=alpha,
        mode=mode,
        value=best,
        witnesses=witnesses,
        witness_count=witness_count,
        words_examined=total,
    )


def _split_range(total: int, parts: int) -> list[tuple[int, int]]:
    parts = min(parts, total) or 1
    size = (total + parts - 1) // parts
    return [(lo, min(lo + size, total)) for lo in range(0, total, size)]


# --- structural verifiers ---------------------------------------------------


@dataclass(frozen=True)
class Violation:
    """A counterexample: the word, the position, and the runs involved."""

    word: str
    position: int
    periods: tuple[int, ...]
    runs: tuple[Run, ...]


@dataclass
class ViolationReport:
    words_scanned: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _all_words(n_max: int, alpha: int):
    for n in range(1, n_max + 1):
        for symbols in itertools.product(range(alpha), repeat=n):
            yield Word(symbols, alpha)


def verify_four_runs_theorem(n_max: int, alpha: int) -> ViolationReport:
    """Scan every word of length <= n_max for a position covered by two runs
    of some period p and simultaneously two runs of period p+1.

    No such configuration can exist; the returned report lists any found
    (with full run listings), so an empty list is the expected outcome.
    """
    report = ViolationReport()
    for w in _all_words(n_max, alpha):
        report.words_scanned += 1
        for pos0, covering in enumerate(run_coverage(w)):
            if len(covering) < 4:
                continue
            by_period: dict[int, list[Run]] = {}
            for r in covering:
                by_period.setdefault(r.period, []).append(r)
            for p, rs in by_period.items():
                if len(rs) >= 2 and len(by_period.get(p + 1, ())) >= 2:
                    report.violations.append(
                        Violation(
                            word=w.text(),
                            position=pos0 + 1,
                            periods=(p, p + 1),
                            runs=tuple(rs + by_period[p + 1]),
                        )
                    )
    return report


def verify_pair_coverage(n_max: int, alpha: int) -> ViolationReport:
    """Scan every word of length <= n_max for a position covered by more than
    three runs whose periods lie in one pair {2q-1, 2q}."""
    report = ViolationReport()
    for w in _all_words(n_max, alpha):
        report.words_scanned += 1
        for pos0, covering in enumerate(run_coverage(w)):
            if len(covering) < 4:
                continue
            by_pair: dict[int, list[Run]] = {}
            for r in covering:
                by_pair.setdefault((r.period + 1) // 2, []).append(r)
            for q, rs in by_pair.items():
                if len(rs) > 3:
                    report.violations.append(
                        Violation(
                            word=w.text(),
                            position=pos0 + 1,
                            periods=(2 * q - 1, 2 * q),
                            runs=tuple(rs),
                        )
                    )
    return report
