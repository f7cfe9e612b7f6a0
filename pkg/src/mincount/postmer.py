"""Postmer counts: words that may follow the minimizer inside a k-mer.

``P(beta)`` counts length-beta words whose every m-mer is >= w, and
``P_i(beta)`` those sharing a longest common prefix of length ``i`` with w.
The row ``P_m`` is the anchored count: ``P_m(beta + m)`` is the number of
length-beta words ``z`` such that every m-mer of ``w + z`` is >= w.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alphabet import rank_phi
from .preprocess import INF, AutocorrTables


@dataclass(frozen=True)
class PostmerTable:
    beta_limit: int
    grid: tuple[tuple[int, ...], ...]  # grid[i][beta] for 0 <= i <= m
    marginal: tuple[int, ...]

    def __call__(self, beta: int) -> int:
        return self.marginal[beta] if beta >= 0 else 0

    @property
    def anchored(self) -> tuple[int, ...]:
        """P_m(beta) indexed by absolute beta (zero below m)."""
        return self.grid[-1]


@dataclass(frozen=True)
class PostmerBounds:
    lower: tuple[int, ...]
    upper: tuple[int, ...]
    # indexed by absolute beta like PostmerTable.anchored; zero below m
    anchored_lower: tuple[int, ...]
    anchored_upper: tuple[int, ...]


def _phi(sigma, c):
    return sigma if c is None else sigma - 1 - c


def _above(x, y):
    """x > y where None (epsilon) is below every letter."""
    if x is None:
        return False
    return y is None or x > y


def _dead_from(tables: AutocorrTables) -> list:
    """dead[i]: first beta at which P_i vanishes.

    A '<' at R[i][j] means a_j..a_i is already below the matching prefix of w,
    so once the word is long enough to complete it into an m-mer that m-mer is
    smaller than w.  The recurrence does not see this on its own.
    """
    m, R = tables.m, tables.R
    dead = [INF] * (m + 1)
    for i in range(2, m + 1):
        for j in range(2, i + 1):
            if R[i][j] == "<":
                dead[i] = m + j - 1
                break
    return dead


def compute_postmers(tables: AutocorrTables, beta_limit: int) -> PostmerTable:
    sigma, m = tables.sigma, tables.m
    a = (None,) + tables.w.letters + (None,)  # a[m+1] is epsilon
    phi1 = sigma - 1 - a[1]
    T, a_tilde = tables.T, tables.a_max_tilde
    neq0 = [sorted(s) for s in tables.sigma_neq0]
    n_eq0 = [len(s) for s in tables.sigma_eq0]
    dead = _dead_from(tables)

    n = beta_limit + 1
    grid = [[0] * n for _ in range(m + 1)]
    total = [0] * n
    tail = []  # tail[beta][i] = sum of grid[i'][beta] for i' >= i

    for beta in range(n):
        if beta == 0:
            grid[0][0] = 1
        elif beta < m:
            grid[0][beta] = (sigma - 1) * total[beta - 1]
            grid[beta][beta] = 1
            for i in range(1, beta):
                v = n_eq0[i] * total[beta - i - 1]
                for c in neq0[i]:
                    t = T[i][c]
                    src, lo = beta - t + 1, i - t + 2
                    if lo <= src:
                        v += tail[src][lo]
                grid[i][beta] = v
        elif beta == m:
            for i in range(m):
                grid[i][m] = (sigma - 1 - a[i + 1]) * sigma ** (m - i - 1)
            grid[m][m] = 1
        else:
            grid[0][beta] = phi1 * total[beta - 1]
            for i in range(1, m + 1):
                top = a_tilde[i](beta)
                nxt = a[i + 1]
                v = min(_phi(sigma, nxt), _phi(sigma, top)) * total[beta - i - 1]
                if _above(top, nxt):
                    t = T[i][top]  # gate is open since top is not epsilon
                    v += tail[beta - t + 1][i - t + 2]
                grid[i][beta] = v if beta < dead[i] else 0
        col = [0] * (m + 2)
        acc = 0
        for i in range(m, -1, -1):
            acc += grid[i][beta]
            col[i] = acc
        tail.append(col)
        total[beta] = acc

    return PostmerTable(beta_limit, tuple(tuple(r) for r in grid), tuple(total))


def compute_postmer_bounds(tables: AutocorrTables, beta_limit: int) -> PostmerBounds:
    sigma, m = tables.sigma, tables.m
    a = (None,) + tables.w.letters + (None,)
    phi1 = sigma - 1 - a[1]
    T, a_tilde = tables.T, tables.a_max_tilde
    n = beta_limit + 1
    lo_seq = [0] * n
    hi_seq = [0] * n

    def at(seq, x):
        return seq[x] if x >= 0 else 0

    for beta in range(min(m, n)):
        lo_seq[beta] = hi_seq[beta] = sigma ** beta
    if m < n:
        lo_seq[m] = hi_seq[m] = 1 + rank_phi(tables.w)
    for beta in range(m + 1, n):
        lo = phi1 * lo_seq[beta - 1]
        hi = phi1 * hi_seq[beta - 1]
        for i in range(1, m + 1):
            top = a_tilde[i](beta)
            nxt = a[i + 1]
            free = min(_phi(sigma, nxt), _phi(sigma, top))
            lo += free * at(lo_seq, beta - i - 1)
            hi += free * at(hi_seq, beta - i - 1)
            if _above(top, nxt):
                t = T[i][top]
                hi += at(hi_seq, beta - t + 1) - phi1 * at(hi_seq, beta - t)
        lo_seq[beta] = lo
        hi_seq[beta] = hi

    alo = [0] * n
    ahi = [0] * n
    if m < n:
        alo[m] = ahi[m] = 1
    for beta in range(m + 1, n):
        top = a_tilde[m](beta)
        f = _phi(sigma, top)
        alo[beta] = f * lo_seq[beta - m - 1]
        hi = f * hi_seq[beta - m - 1]
        if top is not None:
            t = T[m][top]
            hi += hi_seq[beta - t + 1] - phi1 * hi_seq[beta - t]
        ahi[beta] = hi
    return PostmerBounds(tuple(lo_seq), tuple(hi_seq), tuple(alo), tuple(ahi))
