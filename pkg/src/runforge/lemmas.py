"""Empirical checkers for the classical periodicity lemmas.

Each checker scans a finite universe and returns how many words satisfied
the lemma's premise and which (if any) violated the conclusion.  The point
is machine verification at small scales: every list of failures is expected
empty, and a non-empty one means the word primitives are broken.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

from .words import Word, has_period, two_period_form

__all__ = [
    "LemmaReport",
    "check_periodicity_lemma",
    "check_period_difference_lemma",
    "check_overlap_concatenation_lemma",
    "check_two_period_structure",
]


@dataclass
class LemmaReport:
    name: str
    words_scanned: int = 0
    premise_cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _words_up_to(n_max: int, alpha: int):
    for n in range(1, n_max + 1):
        for symbols in itertools.product(range(alpha), repeat=n):
            yield Word(symbols, alpha)


def check_periodicity_lemma(n_max: int, alpha: int = 2) -> LemmaReport:
    """Fine and Wilf: periods p and q with |w| >= p + q - gcd(p, q) force period gcd(p, q)."""
    report = LemmaReport(name="periodicity-lemma")
    for w in _words_up_to(n_max, alpha):
        report.words_scanned += 1
        n = len(w)
        periods = [p for p in range(1, n + 1) if has_period(w, p)]
        pset = set(periods)
        for p, q in itertools.combinations(periods, 2):
            if n >= p + q - gcd(p, q):
                report.premise_cases += 1
                if gcd(p, q) not in pset:
                    report.failures.append(
                        f"{w.text()}: periods {p},{q} but not {gcd(p, q)}"
                    )
    return report


def check_period_difference_lemma(n_max: int, alpha: int = 2) -> LemmaReport:
    """Periods q < p <= |w| force period p - q on the prefix and suffix of length |w| - q."""
    report = LemmaReport(name="period-difference")
    for w in _words_up_to(n_max, alpha):
        report.words_scanned += 1
        n = len(w)
        for q in range(1, n):
            if not has_period(w, q):
                continue
            for p in range(q + 1, n + 1):
                if not has_period(w, p):
                    continue
                report.premise_cases += 1
                prefix = w.factor(1, n - q)
                suffix = w.factor(q + 1, n)
                if not (has_period(prefix, p - q) and has_period(suffix, p - q)):
                    report.failures.append(
                        f"{w.text()}: periods {q},{p} but length-{n - q} "
                        f"prefix/suffix lack period {p - q}"
                    )
    return report


def check_overlap_concatenation_lemma(
    len_max: int, alpha: int = 2, p_max: int | None = None
) -> LemmaReport:
    """If ab and bc share period p and |b| >= p then abc has period p.

    Scans all triples (a, b, c) of words of length <= len_max (including
    empty a and c) and all p <= p_max.
    """
    report = LemmaReport(name="overlap-concatenation")
    pieces = [()]
    for n in range(1, len_max + 1):
        pieces.extend(itertools.product(range(alpha), repeat=n))
    if p_max is None:
        p_max = 2 * len_max
    for b in pieces:
        if not b:
            continue
        report.words_scanned += 1
        for a, c in itertools.product(pieces, repeat=2):
            ab = Word(a + b, alpha)
            bc = Word(b + c, alpha)
            for p in range(1, min(len(b), p_max) + 1):
                if has_period(ab, p) and has_period(bc, p):
                    report.premise_cases += 1
                    abc = Word(a + b + c, alpha)
                    if not has_period(abc, p):
                        report.failures.append(
                            f"a={Word(a, alpha).text()!r} b={Word(b, alpha).text()!r} "
                            f"c={Word(c, alpha).text()!r}: ab,bc have period {p} "
                            "but abc does not"
                        )
    return report


def check_two_period_structure(p_max: int, alpha: int = 2) -> LemmaReport:
    """Words with a period-p length-2p prefix and a period-(p+1) suffix ending
    the word must factor as X x^(p-k) X x^(p-k+1) X x.

    For each p <= p_max and 0 <= k <= p, every word of length 2p+k+2 whose
    prefix premise holds is generated directly (first p symbols free, next p
    forced, last k+2 free), the suffix premise is tested, and the shape is
    asserted whenever both premises hold.
    """
    report = LemmaReport(name="two-period-structure")
    for p in range(1, p_max + 1):
        for k in range(0, p + 1):
            n = 2 * p + k + 2
            for head in itertools.product(range(alpha), repeat=p):
                prefix = head + head  # length 2p, period p by construction
                for tail in itertools.product(range(alpha), repeat=k + 2):
                    w = Word(prefix + tail, alpha)
                    report.words_scanned += 1
                    if not has_period(w.factor(k + 1, k + 2 * p + 2), p + 1):
                        continue
                    report.premise_cases += 1
                    if not two_period_form(w, p, k):
                        report.failures.append(
                            f"{w.text()}: p={p} k={k} premises hold but the "
                            "X/x factorization does not"
                        )
    return report
