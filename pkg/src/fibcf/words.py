"""Fibonacci words, their palindromic prefixes, and separators.

Words are plain Python strings over the two-letter alphabet {'a', 'b'}.
The word sequence is w_0 = "b", w_1 = "a", w_i = w_{i-1} + w_{i-2}; its
limit is the infinite Fibonacci word "abaababa..." (each w_i with i >= 1 is
a prefix of the next).  Materialized words are capped at 10^7 letters;
deeper indices must go through the matrix recurrences in :mod:`fibcf.cf`,
which never build the words themselves.
"""

from __future__ import annotations

import threading

from .errors import ResourceLimitError

LETTER_A = "a"
LETTER_B = "b"
ALPHABET = (LETTER_A, LETTER_B)

WORD_LENGTH_CAP = 10**7

_prefix_lock = threading.Lock()
_prefix_pair = [LETTER_A, LETTER_A + LETTER_B]  # [w_i, w_{i+1}] as built so far


def fib(i: int) -> int:
    """i-th Fibonacci number with f(0) = f(1) = 1."""
    if i < 0:
        raise ValueError("index must be >= 0")
    x, y = 1, 1
    for _ in range(i):
        x, y = y, x + y
    return x


def word_term(i: int) -> str:
    """The word w_i (length fib(i) for i >= 1, and w_0 = 'b')."""
    if i < 0:
        raise ValueError("index must be >= 0")
    if i == 0:
        return LETTER_B
    if fib(i) > WORD_LENGTH_CAP:
        raise ResourceLimitError(f"w_{i} exceeds the {WORD_LENGTH_CAP}-letter cap")
    w, v = LETTER_A, LETTER_B  # w_1, w_0
    for _ in range(i - 1):
        w, v = w + v, w
    return w


def fib_word_prefix(n: int) -> str:
    """First n letters of the infinite Fibonacci word."""
    if n < 0:
        raise ValueError("length must be >= 0")
    if n > WORD_LENGTH_CAP:
        raise ResourceLimitError(f"prefix length {n} exceeds the {WORD_LENGTH_CAP}-letter cap")
    with _prefix_lock:
        while len(_prefix_pair[0]) < n:
            _prefix_pair[0], _prefix_pair[1] = (
                _prefix_pair[1],
                _prefix_pair[1] + _prefix_pair[0],
            )
        return _prefix_pair[0][:n]


def letters(limit: int = WORD_LENGTH_CAP):
    """Yield letters of the infinite Fibonacci word, at most ``limit``."""
    block = 4096
    pos = 0
    while pos < limit:
        end = min(pos + block, limit)
        chunk = fib_word_prefix(end)[pos:end]
        yield from chunk
        pos = end
        block *= 2


def separator(i: int) -> str:
    """s_i: 'ab' for even i, 'ba' for odd i (i >= 1)."""
    if i < 1:
        raise ValueError("index must be >= 1")
    return LETTER_A + LETTER_B if i % 2 == 0 else LETTER_B + LETTER_A


def palindromic_prefix(i: int) -> str:
    """The palindrome m_i, built by m_1 = 'a', m_2 = 'aba',
    m_i = m_{i-1} + s_{i-1} + m_{i-2}.  Its length is fib(i+2) - 2."""
    if i < 1:
        raise ValueError("index must be >= 1")
    if fib(i + 2) - 2 > WORD_LENGTH_CAP:
        raise ResourceLimitError(f"m_{i} exceeds the {WORD_LENGTH_CAP}-letter cap")
    if i == 1:
        return LETTER_A
    prev, cur = LETTER_A, LETTER_A + LETTER_B + LETTER_A  # m_1, m_2
    for k in range(3, i + 1):
        prev, cur = cur, cur + separator(k - 1) + prev
    return cur


def is_palindrome(w: str) -> bool:
    return w == w[::-1]
