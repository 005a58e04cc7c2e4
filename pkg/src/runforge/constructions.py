"""Explicit extremal word families and the closed-form bound checks.

``word_u(k)`` builds the square ((ab)^k a)^2, the family whose total run
length grows quadratically and yields the n^2/8 lower bound; ``word_min_trl``
builds a b a^(n-4) b a, the family attaining the minimum for binary words.
The bound evaluators work in exact integer arithmetic throughout (the
comparisons are cross-multiplied, never floated).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .words import Word

__all__ = [
    "word_u",
    "trl_u_formula",
    "word_min_trl",
    "lower_bound_holds",
    "upper_bound_expr",
    "check_upper_bound",
    "BoundCheckReport",
    "u_closed_form_in_n",
]


def word_u(k: int) -> Word:
    """The binary word ((ab)^k a)^2 of length 4k+2."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    half = (0, 1) * k + (0,)
    return Word(half + half, 2)


def trl_u_formula(k: int) -> int:
    """Closed form 2k^2 + 8k + 4 for the total run length of word_u(k).

    Valid for k >= 2.  At k = 1 the formula overshoots: the period-2 match
    blocks inside u(1) = abaaba are too short to reach exponent 2, and the
    true value is 8, not 14.  A k = 1 call warns and still returns the
    formula value so the discrepancy stays visible.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k == 1:
        warnings.warn(
            "closed form 2k^2+8k+4 does not hold at k=1 "
            "(true TRL of abaaba is 8, formula gives 14)",
            stacklevel=2,
        )
    return 2 * k * k + 8 * k + 4


def u_closed_form_in_n(n: int) -> tuple[int, int]:
    """Rewrites of the u-family closed form in terms of n = 4k+2.

    Returns (8 * TRL as given by (n^2+12n+4), claimed (n^2+4n+12)); the
    first matches 2k^2+8k+4 exactly, the second is the variant that appears
    alongside it in print but does not.  Both are returned times 8 so the
    comparison stays integral.
    """
    if n % 4 != 2:
        raise ValueError(f"the u family only has lengths n = 4k+2, got {n}")
    return n * n + 12 * n + 4, n * n + 4 * n + 12


def word_min_trl(n: int) -> Word:
    """The word a b a^(n-4) b a of length n (defined for n >= 6)."""
    if n < 6:
        raise ValueError(f"n must be >= 6, got {n}")
    return Word((0, 1) + (0,) * (n - 4) + (1, 0), 2)


def lower_bound_holds(n: int, tau_value: int) -> bool:
    """True iff tau_value > n^2 / 8, tested as 8 * tau_value > n^2."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return 8 * tau_value > n * n


def upper_bound_expr(n: int) -> int:
    """Exact value of (ceil(n/4)-floor(n/6))(n-3+2(ceil(n/4)+floor(n/6)+1)) + 3n*floor(n/6)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    c4 = -(-n // 4)
    f6 = n // 6
    return (c4 - f6) * (n - 3 + 2 * (c4 + f6 + 1)) + 3 * n * f6


@dataclass(frozen=True)
class BoundCheckReport:
    n_max: int
    failures: list[tuple[int, int, int]]  # (n, lhs, rhs) with lhs >= rhs

    @property
    def all_ok(self) -> bool:
        return not self.failures


def check_upper_bound(n_max: int, tau_values: dict[int, int] | None = None) -> BoundCheckReport:
    """Verify 72 * upper_bound_expr(n) < 47 n^2 + 144 n for 1 <= n <= n_max.

    When known extremal values are supplied, additionally verify each one
    sits strictly below the quadratic bound: 72 * tau < 47 n^2 + 144 n.
    Exact integers only.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    failures = []
    for n in range(1, n_max + 1):
        lhs = 72 * upper_bound_expr(n)
        rhs = 47 * n * n + 144 * n
        if lhs >= rhs:
            failures.append((n, lhs, rhs))
    if tau_values:
        for n, tau in sorted(tau_values.items()):
            lhs = 72 * tau
            rhs = 47 * n * n + 144 * n
            if lhs >= rhs:
                failures.append((n, lhs, rhs))
    return BoundCheckReport(n_max=n_max, failures=failures)
