"""Brute-force ground truth.

Everything here enumerates words explicitly and applies the definitions
directly, so it is slow but hard to get wrong.  The DP modules are checked
against it.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import product

import numpy as np

from .alphabet import Alphabet, Word, reverse_complement, word_from_code
from .errors import BudgetExceededError, InvalidInputError

DEFAULT_BUDGET_BITS = 28
_CHUNK = 1 << 18


@dataclass(frozen=True)
class MinimizerHit:
    minimizer: Word
    position: int  # 1-based


def minimizer_of(x: Word, m: int) -> MinimizerHit:
    """Smallest m-mer of ``x``; ties go to the leftmost window."""
    if m < 1 or len(x) < m:
        raise InvalidInputError(f"need len(x) >= m >= 1, got len(x)={len(x)}, m={m}")
    letters = x.letters
    best, pos = letters[:m], 0
    for i in range(1, len(letters) - m + 1):
        cand = letters[i:i + m]
        if cand < best:
            best, pos = cand, i
    return MinimizerHit(Word(best, x.alphabet), pos + 1)


def check_budget(sigma: int, length: int, force: bool = False, bits: int = DEFAULT_BUDGET_BITS):
    need = length * math.log2(sigma)
    if need > bits and not force:
        raise BudgetExceededError(
            f"enumerating {sigma}^{length} words (~2^{need:.1f}) exceeds the 2^{bits} budget; use force to override"
        )


def _rc_codes(codes: np.ndarray, alphabet: Alphabet, k: int) -> np.ndarray:
    comp = np.array(alphabet.complement, dtype=np.int64)
    sigma = alphabet.size
    out = np.zeros_like(codes)
    rest = codes.copy()
    for _ in range(k):
        rest, digit = np.divmod(rest, sigma)
        out = out * sigma + comp[digit]
    return out


def _partition_codes(alphabet: Alphabet, m: int, k: int, canonical_only: bool) -> np.ndarray:
    """Bucket sizes indexed by minimizer code, via vectorised window extraction."""
    sigma = alphabet.size
    n_windows = k - m + 1
    size_m = sigma ** m
    counts = np.zeros(size_m, dtype=np.int64)
    total = sigma ** k
    for start in range(0, total, _CHUNK):
        codes = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        if canonical_only:
            codes = codes[codes <= _rc_codes(codes, alphabet, k)]
        # window i (0-based) is digits i..i+m-1 from the left
        windows = np.stack(
            [(codes // sigma ** (k - m - i)) % size_m for i in range(n_windows)], axis=1
        )
        # equal-length codes order like words; argmin takes the first (leftmost) minimum
        mins = windows[np.arange(len(codes)), windows.argmin(axis=1)]
        counts += np.bincount(mins, minlength=size_m)
    return counts


def brute_force_partition(
    alphabet: Alphabet,
    m: int,
    k: int,
    canonical_only: bool = False,
    force: bool = False,
) -> dict[Word, int]:
    """Count every k-mer (or canonical k-mer) into its minimizer's bucket.

    Every m-mer gets an entry, including empty buckets.  Keys are in
    lexicographic order.
    """
    if m < 1 or k < m:
        raise InvalidInputError(f"need k >= m >= 1, got m={m}, k={k}")
    if canonical_only and alphabet.complement is None:
        raise InvalidInputError(f"alphabet {alphabet} has no complement for canonical k-mers")
    check_budget(alphabet.size, k, force)
    counts = _partition_codes(alphabet, m, k, canonical_only)
    return {word_from_code(alphabet, c, m): int(n) for c, n in enumerate(counts)}


def brute_force_partition_naive(alphabet: Alphabet, m: int, k: int, canonical_only: bool = False) -> dict[Word, int]:
    """Same as ``brute_force_partition`` but one ``minimizer_of`` call per k-mer."""
    check_budget(alphabet.size, k, bits=20)
    counts = Counter()
    for letters in product(range(alphabet.size), repeat=k):
        x = Word(letters, alphabet)
        if canonical_only and reverse_complement(x).letters < letters:
            continue
        counts[minimizer_of(x, m).minimizer] += 1
    return {word_from_code(alphabet, c, m): counts[word_from_code(alphabet, c, m)] for c in range(alphabet.size ** m)}


def _lcp(x: tuple, y: tuple) -> int:
    n = 0
    for a, b in zip(x, y):
        if a != b:
            break
        n += 1
    return n


def brute_force_antemers(w: Word, alpha: int, force: bool = False) -> tuple[int, dict[int, int]]:
    """Count length-alpha words y with every m-mer of y+w, bar the last, strictly above w.

    Returns the total and the counts split by the common-prefix length of y and w.
    """
    if alpha < 0:
        raise InvalidInputError("alpha must be non-negative")
    check_budget(w.alphabet.size, alpha, force)
    m, target = len(w), w.letters
    by_prefix = Counter()
    for y in product(range(w.alphabet.size), repeat=alpha):
        s = y + target
        if all(s[i:i + m] > target for i in range(alpha)):
            by_prefix[_lcp(y, target)] += 1
    return sum(by_prefix.values()), dict(sorted(by_prefix.items()))


def brute_force_postmer_strata(w: Word, beta: int, force: bool = False) -> dict[int, int]:
    """Unanchored postmers of length beta, split by common-prefix length with w."""
    if beta < 0:
        raise InvalidInputError("beta must be non-negative")
    check_budget(w.alphabet.size, beta, force)
    m, target = len(w), w.letters
    by_prefix = Counter()
    for z in product(range(w.alphabet.size), repeat=beta):
        if all(z[i:i + m] >= target for i in range(beta - m + 1)):
            by_prefix[_lcp(z, target)] += 1
    return dict(sorted(by_prefix.items()))


def brute_force_postmers(w: Word, beta: int, anchored: bool = False, force: bool = False) -> int:
    """Count length-beta words z whose m-mers are all >= w.

    With ``anchored`` the m-mers of w+z are checked instead, which is the
    quantity P_m(beta + m).
    """
    if not anchored:
        return sum(brute_force_postmer_strata(w, beta, force).values())
    if beta < 0:
        raise InvalidInputError("beta must be non-negative")
    check_budget(w.alphabet.size, beta, force)
    m, target = len(w), w.letters
    n = 0
    for z in product(range(w.alphabet.size), repeat=beta):
        s = target + z
        if all(s[i:i + m] >= target for i in range(1, beta + 1)):
            n += 1
    return n
