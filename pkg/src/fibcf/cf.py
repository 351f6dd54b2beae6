"""Continued-fraction machinery for xi_{a,b} = [0; a, b, a, a, b, ...].

The partial quotients are the letters of the Fibonacci word with 'a' read
as the integer a and 'b' as b.  Two construction routes coexist on purpose:

* step-by-step convergents from the streamed partial quotients
  (:func:`convergent`), capped at 10^6 steps; and
* the word-matrix route: products over whole words w_k satisfy
  Phi(w_k) = Phi(w_{k-1}) Phi(w_{k-2}), which reaches convergent index
  fib(k) in k matrix multiplications.  :class:`XiApprox` uses it to refine
  enclosures of xi far beyond what stepping can reach.

The approximation triples x_i = (x_{i,0}, x_{i,1}, x_{i,2}) are read off
the symmetric matrices M_i = Phi(m_i) over the palindromic prefixes; they
also satisfy the recurrence M_i = M_{i-1} S_{i-1} M_{i-2} with
S_j = Phi(s_j), which is how :func:`triple_sequence` builds them.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from . import words
from .backend import mpq, mpz
from .errors import ResourceLimitError
from .exact import Mat2, Params, RatInterval, letter_matrix, phi

CONVERGENT_STEP_CAP = 10**6
CONVERGENT_INDEX_CAP = 10**7

# Escalation budget shared by every adaptive comparison in the package:
# a retry squares the current width (doubles the digit budget).
MAX_ESCALATIONS = 60


@dataclass(frozen=True)
class ConvergentPair:
    """Reduced convergent p_j / q_j of xi_{a,b}."""

    j: int
    p: object
    q: object


def partial_quotients(p: Params, limit: int = CONVERGENT_STEP_CAP):
    """Stream the partial quotients a_1, a_2, ... (at most ``limit``)."""
    for ch in words.letters(limit):
        yield p.a if ch == words.LETTER_A else p.b


def convergent(p: Params, j: int) -> ConvergentPair:
    """(p_j, q_j) from the product of the first j partial-quotient matrices."""
    if j < 1:
        raise ValueError("index must be >= 1")
    if j > CONVERGENT_STEP_CAP:
        raise ResourceLimitError(f"convergent index {j} exceeds the step cap")
    qj, qj1 = mpz(1), mpz(0)  # q_0, q_{-1}
    pj, pj1 = mpz(0), mpz(1)  # p_0, p_{-1}
    for k, a in enumerate(partial_quotients(p), start=1):
        qj, qj1 = a * qj + qj1, qj
        pj, pj1 = a * pj + pj1, pj
        if k == j:
            break
    return ConvergentPair(j, pj, qj)


class XiApprox:
    """Refinable enclosure source for xi_{a,b}.

    Caches the matrices Phi(w_k); consecutive convergents read off any of
    them bracket xi, with bracket width 1/(q_n q_{n-1}) at convergent index
    n = fib(k).  The cache only grows and all returned values are immutable,
    so instances are safe to share between threads.
    """

    def __init__(self, p: Params):
        self.params = p
        self._mats = [letter_matrix(p.a), letter_matrix(p.a) @ letter_matrix(p.b)]
        self._lock = threading.RLock()

    def word_matrix(self, k: int) -> Mat2:
        """Phi(w_k) for k >= 1; rows are (q_n, q_{n-1}) and (p_n, p_{n-1})
        at n = fib(k)."""
        if k < 1:
            raise ValueError("index must be >= 1")
        if words.fib(k) > CONVERGENT_INDEX_CAP:
            raise ResourceLimitError(
                f"convergent index fib({k}) exceeds the {CONVERGENT_INDEX_CAP} cap"
            )
        with self._lock:
            while len(self._mats) < k:
                self._mats.append(self._mats[-1] @ self._mats[-2])
            return self._mats[k - 1]

    def bracket(self, width) -> RatInterval:
        """Enclosure of xi of width <= ``width`` from consecutive convergents."""
        width = mpq(width)
        if width <= 0:
            raise ValueError("width must be positive")
        k = 1
        while True:
            m = self.word_matrix(k)
            if m.m01 > 0 and mpq(1, m.m00 * m.m01) <= width:
                c_n = mpq(m.m10, m.m00)
                c_prev = mpq(m.m11, m.m01)
                lo, hi = (c_n, c_prev) if c_n <= c_prev else (c_prev, c_n)
                return RatInterval(lo, hi)
            k += 1

    def bracket_digits(self, digits: int) -> RatInterval:
        return self.bracket(mpq(1, mpz(10) ** digits))


_xi_cache: dict[tuple[int, int], XiApprox] = {}
_xi_cache_lock = threading.Lock()


def get_xi(p: Params) -> XiApprox:
    """Shared per-(a, b) enclosure source (thread-safe)."""
    key = (p.a, p.b)
    with _xi_cache_lock:
        inst = _xi_cache.get(key)
        if inst is None:
            inst = _xi_cache[key] = XiApprox(p)
        return inst


def xi_enclosure(p: Params, precision) -> RatInterval:
    """Interval containing xi_{a,b} with width <= precision."""
    return get_xi(p).bracket(precision)


@dataclass(frozen=True)
class ApproxTriple:
    """Row i of the approximation-triple sequence; X is the bound x0."""

    i: int
    x0: object
    x1: object
    x2: object

    @property
    def X(self):
        return self.x0

    def determinant(self):
        return self.x0 * self.x2 - self.x1 * self.x1


def _triple_from_matrix(i: int, m: Mat2) -> ApproxTriple:
    assert m.is_symmetric(), f"matrix for triple {i} is not symmetric"
    return ApproxTriple(i, m.m00, m.m01, m.m11)


def triple_direct(p: Params, i: int) -> ApproxTriple:
    """Triple from the letter-by-letter product over the palindrome m_i.

    Materializes m_i, so it obeys the 10^7-letter cap; use
    :func:`triple_sequence` beyond that.
    """
    return _triple_from_matrix(i, phi(words.palindromic_prefix(i), p))


def triple_sequence(p: Params, count: int) -> list[ApproxTriple]:
    """x_1 .. x_count via M_i = M_{i-1} S_{i-1} M_{i-2}."""
    if count < 1:
        raise ValueError("count must be >= 1")
    s_even = phi(words.LETTER_A + words.LETTER_B, p)  # Phi("ab")
    s_odd = phi(words.LETTER_B + words.LETTER_A, p)  # Phi("ba")
    m_prev = phi(words.LETTER_A, p)  # M_1
    out = [_triple_from_matrix(1, m_prev)]
    if count == 1:
        return out
    m_cur = phi("aba", p)  # M_2
    out.append(_triple_from_matrix(2, m_cur))
    for i in range(3, count + 1):
        sep = s_even if (i - 1) % 2 == 0 else s_odd
        m_cur, m_prev = (m_cur @ sep) @ m_prev, m_cur
        out.append(_triple_from_matrix(i, m_cur))
    return out


def triple_via_word(p: Params, i: int, xi: XiApprox | None = None) -> ApproxTriple:
    """Independent route: w_{i+2} = m_i s_{i+2}, so
    Phi(m_i) = Phi(w_{i+2}) Phi(s_{i+2})^{-1}.

    Shares nothing with the palindrome recurrence, which makes it the
    cross-check of choice for the triple/convergent consistency tests.
    """
    xi = xi if xi is not None else get_xi(p)
    w_mat = xi.word_matrix(i + 2)
    s_inv = phi(words.separator(i + 2), p).unimodular_inverse()
    return _triple_from_matrix(i, w_mat @ s_inv)
