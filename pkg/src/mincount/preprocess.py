"""Per-minimizer precomputation: the autocorrelation matrix and derived tables.

Indices follow the usual 1-based convention of the recurrences: ``R[i][j]``
for ``1 <= j <= i <= m`` and ``T[i][a]`` for ``1 <= i <= m``.  Index 0 of
each outer list is unused padding.  ``None`` is the empty word epsilon.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Optional

from .alphabet import Word
from .errors import InvalidInputError

INF = math.inf


@dataclass(frozen=True)
class StepFunction:
    """Right-continuous step function on the naturals.

    ``value(beta)`` is ``values[j]`` for ``thresholds[j] <= beta < thresholds[j+1]``.
    ``thresholds[0]`` is always 0.
    """

    thresholds: tuple[int, ...]
    values: tuple

    def __call__(self, beta: int):
        return self.values[bisect_right(self.thresholds, beta) - 1]

    def __str__(self):
        parts = []
        for j, (x, v) in enumerate(zip(self.thresholds, self.values)):
            hi = self.thresholds[j + 1] if j + 1 < len(self.thresholds) else None
            rng = f"[{x},{hi})" if hi is not None else f"[{x},inf)"
            parts.append(f"{rng}:{v}")
        return " ".join(parts)


def _letter_key(a: Optional[int]) -> int:
    return -1 if a is None else a


@dataclass(frozen=True)
class AutocorrTables:
    w: Word
    R: tuple[tuple[str, ...], ...]
    i_max: int
    beta_max_raw: float  # int, or math.inf when the last row has no '<' beyond j=1
    T: tuple[tuple[int, ...], ...]
    a_max: tuple[int, ...]
    sigma_eq0: tuple[frozenset, ...]
    sigma_neq0: tuple[frozenset, ...]
    T_tilde: tuple[tuple[StepFunction, ...], ...]
    a_max_tilde: tuple[StepFunction, ...]

    @property
    def m(self) -> int:
        return len(self.w)

    @property
    def sigma(self) -> int:
        return self.w.alphabet.size

    def next_letter(self, i: int) -> Optional[int]:
        """a_{i+1}, or epsilon past the end of w."""
        return self.w.letters[i] if i < self.m else None


def build_tables(w: Word) -> AutocorrTables:
    """Compute R, i_max, raw beta_max, T, a_max and the beta-gated tables for ``w``."""
    m = len(w)
    if m == 0:
        raise InvalidInputError("cannot preprocess the empty word")
    sigma = w.alphabet.size
    a = (None,) + w.letters  # 1-based

    R = [[None] * (m + 1) for _ in range(m + 1)]
    T = [[INF] * sigma for _ in range(m + 1)]
    i_max = m
    beta_raw = INF
    for i in range(1, m + 1):
        R[i][1] = "="
    T[1] = [2 if c == a[1] else 0 for c in range(sigma)]

    for j in range(2, m + 1):
        decided = None
        for i in range(j, m + 1):
            if decided is None:
                # a_j..a_{i-1} already equals a_1..a_{i-j}; only the new letters matter
                x, y = a[i], a[i - j + 1]
                if x == y:
                    nxt = a[i - j + 2]
                    if j < T[i][nxt]:
                        T[i][nxt] = j
                    R[i][j] = "="
                    continue
                decided = "<" if x < y else ">"
                if decided == "<":
                    i_max = min(i_max, i)
            R[i][j] = decided
        if R[m][j] == "<":
            beta_raw = min(beta_raw, j - 2)
        # row j is final once every column j' <= j has been swept
        T[j] = [
            t if t != INF else ((j + 1) if c == a[1] else 0)
            for c, t in enumerate(T[j])
        ]

    T = tuple(tuple(row) for row in [[0] * sigma] + T[1:])
    a_max = (None,) + tuple(
        max(c for c in range(sigma) if T[i][c] != 0) for i in range(1, m + 1)
    )

    eq0, neq0 = [frozenset()], [frozenset()]
    for i in range(1, m + 1):
        nxt = a[i + 1] if i < m else None
        eq0.append(frozenset(c for c in range(sigma) if c != nxt and T[i][c] == 0))
        neq0.append(frozenset(c for c in range(sigma) if c != nxt and T[i][c] != 0))

    zero = StepFunction((0,), (0,))
    T_tilde = [()]
    a_tilde = [None]
    for i in range(1, m + 1):
        row = []
        gates = [(0, None)]
        for c in range(sigma):
            t = T[i][c]
            if t == 0:
                row.append(zero)
            else:
                row.append(StepFunction((0, m - 1 + t), (0, t)))
                gates.append((m - 1 + t, c))
        T_tilde.append(tuple(row))
        gates.sort()
        xs, best, vals = [], None, []
        for x, c in gates:
            if _letter_key(c) > _letter_key(best) or not xs:
                best = c
                xs.append(x)
                vals.append(best)
        a_tilde.append(StepFunction(tuple(xs), tuple(vals)))

    return AutocorrTables(
        w=w,
        R=tuple(tuple(row) for row in R),
        i_max=i_max,
        beta_max_raw=beta_raw,
        T=T,
        a_max=a_max,
        sigma_eq0=tuple(eq0),
        sigma_neq0=tuple(neq0),
        T_tilde=tuple(T_tilde),
        a_max_tilde=tuple(a_tilde),
    )


def beta_max(tables: AutocorrTables, k: int) -> int:
    """Largest number of letters that may follow w inside a k-mer it minimizes."""
    if k < tables.m:
        raise InvalidInputError(f"k={k} is smaller than m={tables.m}")
    return int(min(k - tables.m, tables.beta_max_raw))
