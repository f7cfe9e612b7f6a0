"""Antemer counts: words that may precede the minimizer inside a k-mer.

An alpha-antemer of ``w`` is a length-alpha word ``y`` such that every m-mer of
``y + w`` other than the final ``w`` is strictly greater than ``w``.  ``A(alpha)``
counts them; ``A_i(alpha)`` counts those whose longest common prefix with ``w``
has length exactly ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .preprocess import AutocorrTables


@dataclass(frozen=True)
class AntemerTable:
    alpha_max: int
    grid: tuple[tuple[int, ...], ...]  # grid[i][alpha] for 0 <= i < i_max
    marginal: tuple[int, ...]

    def __call__(self, alpha: int) -> int:
        return self.marginal[alpha] if alpha >= 0 else 0


@dataclass(frozen=True)
class AntemerBounds:
    lower: tuple[int, ...]
    upper: tuple[int, ...]


class _Coefficients:
    """Per-prefix constants shared by the exact recurrence and the bounds."""

    __slots__ = ("phi1", "i_max", "free", "guard", "jump")

    def __init__(self, t: AutocorrTables):
        sigma = t.sigma
        a = (None,) + t.w.letters
        self.phi1 = sigma - 1 - a[1]
        self.i_max = t.i_max
        # free[i]: letters b_{i+1} above both a_max(i) and a_{i+1}, which release all constraints
        self.free = [0] * t.i_max
        self.guard = [False] * t.i_max
        self.jump = [0] * t.i_max
        for i in range(1, t.i_max):
            top = t.a_max[i]
            self.free[i] = min(sigma - 1 - top, sigma - 1 - a[i + 1])
            self.guard[i] = top > a[i + 1]
            self.jump[i] = t.T[i][top]


def _diagonal(t: AutocorrTables, i: int) -> int:
    """A_i(i): whether a_1..a_i followed by w keeps every earlier m-mer above w."""
    R, m = t.R, t.m
    for j in range(1, i + 1):
        r = R[i][j]
        if r == ">":
            continue
        if r == "=" and R[m][i - j + 2] == "<":
            continue
        return 0
    return 1


def compute_antemers(tables: AutocorrTables, alpha_max: int) -> AntemerTable:
    c = _Coefficients(tables)
    im = c.i_max
    n = alpha_max + 1
    grid = [[0] * n for _ in range(im)]
    total = [0] * n
    # tail[alpha][i] = sum of grid[i'][alpha] for i' >= i
    tail = []
    diag = [0] + [_diagonal(tables, i) for i in range(1, im)]

    for alpha in range(n):
        if alpha == 0:
            grid[0][0] = 1
        else:
            grid[0][alpha] = c.phi1 * total[alpha - 1]
            for i in range(1, min(im, alpha + 1)):
                if i == alpha:
                    grid[i][alpha] = diag[i]
                    continue
                v = c.free[i] * total[alpha - i - 1]
                if c.guard[i]:
                    t = c.jump[i]
                    src, lo = alpha - t + 1, i - t + 2
                    if src >= 0 and lo < im:
                        v += tail[src][lo]
                grid[i][alpha] = v
        col = [0] * (im + 1)
        acc = 0
        for i in range(im - 1, -1, -1):
            acc += grid[i][alpha]
            col[i] = acc
        tail.append(col)
        total[alpha] = acc

    return AntemerTable(alpha_max, tuple(tuple(r) for r in grid), tuple(total))


def compute_antemer_bounds(tables: AutocorrTables, alpha_max: int) -> AntemerBounds:
    c = _Coefficients(tables)
    lo_seq = [1] + [0] * alpha_max
    hi_seq = [1] + [0] * alpha_max

    def at(seq, x):
        return seq[x] if x >= 0 else 0

    for alpha in range(1, alpha_max + 1):
        lo = c.phi1 * lo_seq[alpha - 1]
        hi = c.phi1 * hi_seq[alpha - 1]
        for i in range(1, c.i_max):
            lo += c.free[i] * at(lo_seq, alpha - i - 1)
            hi += c.free[i] * at(hi_seq, alpha - i - 1)
            if c.guard[i]:
                t = c.jump[i]
                hi += at(hi_seq, alpha - t + 1) - c.phi1 * at(hi_seq, alpha - t)
        lo_seq[alpha] = lo
        hi_seq[alpha] = hi
    return AntemerBounds(tuple(lo_seq), tuple(hi_seq))
