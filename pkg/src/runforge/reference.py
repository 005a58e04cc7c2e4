"""Published reference values that the package recomputes and cross-checks.

``MAX_TRL`` holds the known maximum total run length over binary words of
each length up to 22, together with one example word attaining it.  The
exhaustive search reproduces these values from scratch; they are kept here
so tables and tests can validate against the published figures.

``DENSITY_4DP`` holds the published asymptotic expected TRL per letter for
several alphabet sizes, rounded to four decimals.
"""

from __future__ import annotations

# length -> (max TRL, example word attaining it)
MAX_TRL: dict[int, tuple[int, str]] = {
    1: (0, "a"),
    2: (2, "aa"),
    3: (3, "aaa"),
    4: (4, "aaaa"),
    5: (6, "aabab"),
    6: (10, "aabaab"),
    7: (12, "aabaabb"),
    8: (16, "aabbaabb"),
    9: (19, "abaaabaab"),
    10: (29, "aababaabab"),
    11: (32, "abaababaaba"),
    12: (37, "abaababaabab"),
    13: (42, "ababbababbaba"),
    14: (47, "aaabaabaaabaab"),
    15: (53, "abaabababaababa"),
    16: (60, "aabaababaabaabab"),
    17: (70, "ababaabababaababa"),
    18: (73, "aababaabababaababa"),
    19: (80, "abaababaabaababaaba"),
    20: (85, "abaababaabaababaabab"),
    21: (92, "ababaababababaabababa"),
    22: (99, "aababaababaaababaababa"),
}

# published minimum TRL over binary words of lengths 1..5
MIN_TRL_SMALL: tuple[int, ...] = (0, 0, 0, 2, 2)

# alphabet size -> expected TRL per letter (limit), rounded to 4 decimals
DENSITY_4DP: dict[int, str] = {
    2: "1.9775",
    3: "1.0290",
    5: "0.5208",
    10: "0.2296",
}
