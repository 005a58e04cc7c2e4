"""Words over small integer alphabets: parsing, periods, symmetries, canonical forms.

A word is a finite sequence of symbols 0..alpha-1 rendered as lowercase
letters ('a' = 0). Positions in all public output are 1-based; internal
indexing is 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import UnsupportedAlphabetError, WordSyntaxError

__all__ = [
    "Word",
    "parse_word",
    "word_from_symbols",
    "has_period",
    "minimal_period",
    "is_primitive",
    "reverse",
    "complement",
    "canonical_form",
    "pack_binary",
    "unpack_binary",
    "two_period_form",
]


@dataclass(frozen=True)
class Word:
    """Immutable word: a tuple of integer symbols plus its alphabet size."""

    symbols: tuple[int, ...]
    alphabet_size: int

    def __post_init__(self):
        if self.alphabet_size < 1:
            raise ValueError(f"alphabet size must be >= 1, got {self.alphabet_size}")
        for s in self.symbols:
            if not 0 <= s < self.alphabet_size:
                raise ValueError(
                    f"symbol {s} out of range for alphabet size {self.alphabet_size}"
                )

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        return self.text()

    def text(self) -> str:
        """Render as lowercase letters (0 -> 'a', 1 -> 'b', ...)."""
        return "".join(chr(ord("a") + s) for s in self.symbols)

    def factor(self, start: int, end: int) -> "Word":
        """Factor at 1-based inclusive positions start..end."""
        return Word(self.symbols[start - 1:end], self.alphabet_size)


def word_from_symbols(symbols, alphabet_size: int) -> Word:
    return Word(tuple(symbols), alphabet_size)


def parse_word(text: str, alphabet_size: int | None = None) -> Word:
    """Parse lowercase letters into a Word.

    The alphabet size defaults to 1 + the largest symbol present (1 for the
    empty word); a caller-supplied size must cover every symbol.  A character
    outside 'a'..'z' raises WordSyntaxError naming its 1-based position.
    """
    symbols = []
    for pos, ch in enumerate(text, start=1):
        code = ord(ch) - ord("a")
        if not 0 <= code < 26:
            raise WordSyntaxError(
                f"invalid character {ch!r} at position {pos}: "
                "words are lowercase letters 'a'..'z'",
                position=pos,
            )
        symbols.append(code)
    inferred = 1 + max(symbols, default=0)
    if alphabet_size is None:
        alphabet_size = inferred
    elif alphabet_size < inferred:
        raise WordSyntaxError(
            f"alphabet size {alphabet_size} too small for symbol "
            f"{max(symbols)} in {text!r}",
            position=symbols.index(max(symbols)) + 1,
        )
    return Word(tuple(symbols), alphabet_size)


def has_period(w: Word, p: int) -> bool:
    """True iff w[i] == w[i+p] wherever both sides exist (vacuously for p >= |w|)."""
    if p < 1:
        raise ValueError(f"period must be >= 1, got {p}")
    s = w.symbols
    return all(s[i] == s[i + p] for i in range(len(s) - p))


def minimal_period(w: Word) -> int:
    """Least p >= 1 such that w has period p.  Defined for nonempty words only.

    The exponent of w is len(w) / minimal_period(w).
    """
    n = len(w)
    if n == 0:
        raise ValueError("minimal period of the empty word is undefined")
    s = w.symbols
    for p in range(1, n):
        if all(s[i] == s[i + p] for i in range(n - p)):
            return p
    return n


def is_primitive(w: Word) -> bool:
    """True iff w is not an integer power of a strictly shorter word."""
    n = len(w)
    if n == 0:
        raise ValueError("primitivity of the empty word is undefined")
    for p in range(1, n):
        if n % p == 0 and has_period(w, p):
            return False
    return True


def reverse(w: Word) -> Word:
    return Word(w.symbols[::-1], w.alphabet_size)


def complement(w: Word) -> Word:
    """Interchange the two letters of a binary word."""
    if w.alphabet_size != 2:
        raise UnsupportedAlphabetError(
            f"complement is defined for binary words only (alphabet size 2, "
            f"got {w.alphabet_size})"
        )
    return Word(tuple(1 - s for s in w.symbols), 2)


def canonical_form(w: Word) -> Word:
    """Least image under the word's symmetry group.

    Binary words are closed under reversal and complementation, so the
    canonical form is the lexicographically least of the four images.  For
    other alphabet sizes only reversal applies.  Idempotent.
    """
    candidates = [w.symbols, w.symbols[::-1]]
    if w.alphabet_size == 2:
        comp = tuple(1 - s for s in w.symbols)
        candidates += [comp, comp[::-1]]
    return Word(min(candidates), w.alphabet_size)


def pack_binary(w: Word) -> int:
    """Pack a binary word into an int, first symbol at the most significant bit."""
    if w.alphabet_size > 2:
        raise UnsupportedAlphabetError(
            f"packing requires a binary word, got alphabet size {w.alphabet_size}"
        )
    value = 0
    for s in w.symbols:
        value = (value << 1) | s
    return value


def unpack_binary(value: int, n: int) -> Word:
    """Inverse of pack_binary for a length-n binary word."""
    return Word(tuple((value >> (n - 1 - i)) & 1 for i in range(n)), 2)


def two_period_form(w: Word, p: int, k: int) -> bool:
    """Check the forced shape of a word carrying interlocking periods p and p+1.

    For a word of length 2p+k+2 (0 <= k <= p) whose length-2p prefix has
    period p and whose length-(2p+2) suffix has period p+1, the word must
    factor as  X x^(p-k) X x^(p-k+1) X x  with |X| = k and x a single letter.
    Returns True iff w matches that factorization; raises if the premises
    (length and the two periods) do not hold, since the shape is only claimed
    under them.
    """
    if not 0 <= k <= p:
        raise ValueError(f"need 0 <= k <= p, got k={k}, p={p}")
    n = len(w)
    if n != 2 * p + k + 2:
        raise ValueError(f"need |w| = 2p+k+2 = {2*p+k+2}, got {n}")
    if not has_period(w.factor(1, 2 * p), p):
        raise ValueError("prefix w[1..2p] does not have period p")
    if not has_period(w.factor(k + 1, k + 2 * p + 2), p + 1):
        raise ValueError("suffix w[k+1..k+2p+2] does not have period p+1")
    s = w.symbols
    X = s[:k]
    x = s[2 * p]  # inside the second single-letter block, which is never empty
    expected = X + (x,) * (p - k) + X + (x,) * (p - k + 1) + X + (x,)
    return s == expected
