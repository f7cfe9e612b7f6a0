"""Assembly of the minimizer counting function and the analyses built on it."""

from __future__ import annotations

import math
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .alphabet import Alphabet, Word, rank_phi, word_from_code
from .antemer import compute_antemer_bounds, compute_antemers
from .errors import InvalidInputError
from .postmer import compute_postmer_bounds, compute_postmers
from .preprocess import AutocorrTables, beta_max, build_tables

MODES = ("exact", "bounds", "both")


@dataclass(frozen=True)
class PiResult:
    w: Word
    k: int
    exact: Optional[int]
    lower: Optional[int]
    upper: Optional[int]
    beta_max_used: int


@dataclass(frozen=True)
class NormalizedPoint:
    x: float
    y: float


@dataclass(frozen=True)
class RegressionFit:
    slope: float
    intercept: float
    r_squared: Optional[float]
    degenerate: bool = False


def _check(w: Word, k: int):
    if len(w) < 1:
        raise InvalidInputError("minimizer must be non-empty")
    if k < len(w):
        raise InvalidInputError(f"k={k} is smaller than m={len(w)}")


def _starts_with_max(w: Word) -> bool:
    return w.letters[0] == w.alphabet.max_letter


def _exact_from(tables: AutocorrTables, k: int, bmax: int) -> int:
    m = tables.m
    A = compute_antemers(tables, k - m)
    Pm = compute_postmers(tables, bmax + m).anchored
    return sum(A(k - m - b) * Pm[b + m] for b in range(bmax + 1))


def _bounds_from(tables: AutocorrTables, k: int, bmax: int) -> tuple[int, int]:
    m = tables.m
    ab = compute_antemer_bounds(tables, k - m)
    pb = compute_postmer_bounds(tables, bmax + m)
    lo = sum(ab.lower[k - m - b] * pb.anchored_lower[b + m] for b in range(bmax + 1))
    hi = sum(ab.upper[k - m - b] * pb.anchored_upper[b + m] for b in range(bmax + 1))
    cap = (bmax + 1) * tables.sigma ** (k - m)
    return max(1, lo), min(cap, hi)


def pi_exact(w: Word, k: int, tables: Optional[AutocorrTables] = None) -> int:
    """Number of k-mers whose lexicographic minimizer is ``w``."""
    _check(w, k)
    if _starts_with_max(w):
        return 1
    tables = tables or build_tables(w)
    return _exact_from(tables, k, beta_max(tables, k))


def pi_bounds(w: Word, k: int, tables: Optional[AutocorrTables] = None) -> tuple[int, int]:
    """Cheap (lower, upper) bounds on ``pi_exact(w, k)``."""
    _check(w, k)
    if _starts_with_max(w):
        return 1, 1
    tables = tables or build_tables(w)
    return _bounds_from(tables, k, beta_max(tables, k))


def pi_convolution(w: Word, k: int, anchored: Optional[Callable[[int], int]] = None) -> int:
    """Sum over every split alpha + beta = k - m, without the beta_max cut (debug path).

    Terms past beta_max vanish, so this agrees with ``pi_exact``.  ``anchored(beta)``
    may replace the DP value P_m(beta + m), e.g. with the brute-force count.
    """
    _check(w, k)
    tables = build_tables(w)
    m = tables.m
    if anchored is None:
        Pm = compute_postmers(tables, k).anchored
        anchored = lambda b: Pm[b + m]  # noqa: E731
    A = compute_antemers(tables, k - m)
    return sum(A(k - m - b) * anchored(b) for b in range(k - m + 1))


def evaluate(w: Word, k: int, mode: str = "both") -> PiResult:
    _check(w, k)
    if mode not in MODES:
        raise InvalidInputError(f"mode must be one of {MODES}")
    if _starts_with_max(w):
        exact = 1 if mode != "bounds" else None
        lo = hi = 1 if mode != "exact" else None
        return PiResult(w, k, exact, lo, hi, 0)
    tables = build_tables(w)
    bmax = beta_max(tables, k)
    exact = _exact_from(tables, k, bmax) if mode != "bounds" else None
    lo = hi = None
    if mode != "exact":
        lo, hi = _bounds_from(tables, k, bmax)
    return PiResult(w, k, exact, lo, hi, bmax)


def pi_series(w: Word, k_from: int, k_to: int) -> list[int]:
    """``[pi_exact(w, k) for k in range(k_from, k_to + 1)]`` from one pair of DP tables."""
    _check(w, k_from)
    if k_to < k_from:
        return []
    if _starts_with_max(w):
        return [1] * (k_to - k_from + 1)
    tables = build_tables(w)
    m = tables.m
    A = compute_antemers(tables, k_to - m)
    Pm = compute_postmers(tables, beta_max(tables, k_to) + m).anchored
    out = []
    for k in range(k_from, k_to + 1):
        bmax = beta_max(tables, k)
        out.append(sum(A(k - m - b) * Pm[b + m] for b in range(bmax + 1)))
    return out


def _partition_chunk(args) -> list[PiResult]:
    alphabet, m, k, mode, start, stop = args
    return [evaluate(word_from_code(alphabet, code, m), k, mode) for code in range(start, stop)]


def pi_partition(
    alphabet: Alphabet,
    m: int,
    k: int,
    mode: str = "exact",
    workers: int = 1,
    chunk: int = 4096,
) -> Iterator[PiResult]:
    """One PiResult per m-mer, in increasing lexicographic order.

    With ``workers > 1`` chunks are computed in worker processes; output order
    does not depend on the worker count.
    """
    if m < 1 or k < m:
        raise InvalidInputError(f"need k >= m >= 1, got m={m}, k={k}")
    if mode not in MODES:
        raise InvalidInputError(f"mode must be one of {MODES}")
    n = alphabet.size ** m
    jobs = [(alphabet, m, k, mode, s, min(s + chunk, n)) for s in range(0, n, chunk)]
    if workers <= 1:
        for job in jobs:
            yield from _partition_chunk(job)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map() yields in submission order regardless of completion order
        for rows in pool.map(_partition_chunk, jobs):
            yield from rows


def log_sigma(n: int, sigma: int) -> float:
    """log base sigma of a positive (possibly huge) integer."""
    if n <= 0:
        raise InvalidInputError("logarithm of a non-positive count")
    # math.log handles arbitrarily large ints without float overflow
    return math.log(n) / math.log(sigma)


def normalized_point(w: Word, k: int, pi: int) -> NormalizedPoint:
    """Place ``w`` in the unit square: rank on x, log-size relative to the trivial cap on y."""
    _check(w, k)
    if pi < 1:
        raise InvalidInputError("pi must be at least 1")
    sigma, m = w.alphabet.size, len(w)
    x = rank_phi(w) / (sigma ** m - 1)
    if k == m:
        if pi != 1:
            raise InvalidInputError("for k == m the only possible count is 1")
        return NormalizedPoint(x, 0.0)
    y = log_sigma(pi, sigma) / ((k - m) + log_sigma(k - m + 1, sigma))
    return NormalizedPoint(x, y)


def relative_errors(exact: int, lower: int, upper: int, sigma: int = 4) -> tuple[float, float]:
    """Order-of-magnitude errors (eta_minus, eta_plus) of the two bounds."""
    if exact <= 1:
        raise InvalidInputError("relative errors are undefined when the exact count is <= 1")
    if not lower <= exact <= upper:
        raise InvalidInputError("bounds do not bracket the exact count")
    le = log_sigma(exact, sigma)
    return (le - log_sigma(lower, sigma)) / le, (log_sigma(upper, sigma) - le) / le


def fit_line(xs, ys) -> RegressionFit:
    """Ordinary least squares ``y = slope * x + intercept`` with R^2."""
    slope, intercept = statistics.linear_regression(xs, ys)
    mean = statistics.fmean(ys)
    ss_tot = sum((y - mean) ** 2 for y in ys)
    ss_res = sum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return RegressionFit(slope, intercept, r2)


def regress_slope(w: Word, k_from: int, k_to: int) -> RegressionFit:
    """Fit log_sigma pi_k(w) against k over ``k_from..k_to``."""
    _check(w, k_from)
    if k_to < k_from + 2:
        raise InvalidInputError("need at least three values of k")
    if _starts_with_max(w):
        return RegressionFit(0.0, 0.0, None, degenerate=True)
    ks = list(range(k_from, k_to + 1))
    sigma = w.alphabet.size
    ys = [log_sigma(p, sigma) for p in pi_series(w, k_from, k_to)]
    return fit_line(ks, ys)


CSV_HEADER = (
    "minimizer", "rank_phi", "k", "m", "pi_exact", "pi_lower", "pi_upper",
    "beta_max", "log4_pi", "norm_x", "norm_y",
)


def fmt_float(x: Optional[float]) -> str:
    # fixed point keeps the files free of exponents
    return "" if x is None else f"{x:.10f}"


def result_row(r: PiResult) -> dict[str, str]:
    """CSV fields for one result; counts are plain decimal strings."""
    sigma = r.w.alphabet.size
    log_pi = point = None
    if r.exact is not None:
        log_pi = log_sigma(r.exact, sigma)
        point = normalized_point(r.w, r.k, r.exact)
    return {
        "minimizer": str(r.w),
        "rank_phi": str(rank_phi(r.w)),
        "k": str(r.k),
        "m": str(len(r.w)),
        "pi_exact": "" if r.exact is None else str(r.exact),
        "pi_lower": "" if r.lower is None else str(r.lower),
        "pi_upper": "" if r.upper is None else str(r.upper),
        "beta_max": str(r.beta_max_used),
        "log4_pi": fmt_float(log_pi),
        "norm_x": fmt_float(rank_phi(r.w) / (sigma ** len(r.w) - 1)),
        "norm_y": fmt_float(point.y if point else None),
    }
