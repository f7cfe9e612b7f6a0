import math
import random

import pytest
from hypothesis import given, settings, strategies as st

import golden
from mincount import DNA, Alphabet, Word, brute_force_postmers, build_tables, pi_bounds, pi_exact
from mincount.alphabet import enumerate_words
from mincount.errors import InvalidInputError
from mincount.picount import (
    evaluate,
    fit_line,
    normalized_point,
    pi_convolution,
    pi_partition,
    pi_series,
    regress_slope,
    relative_errors,
    result_row,
)
from naive import random_word


@pytest.mark.parametrize("word", [golden.W1, golden.W2])
def test_reference_counts(word):
    w = DNA.word(word)
    assert [pi_exact(w, k) for k in range(6, 17)] == golden.PI[word]
    assert pi_series(w, 6, 16) == golden.PI[word]


@pytest.mark.parametrize("word", [golden.W1, golden.W2])
def test_reference_bounds(word):
    w = DNA.word(word)
    got = [pi_bounds(w, k) for k in range(6, 17)]
    assert [lo for lo, _ in got] == golden.PI_LOWER[word]
    assert [hi for _, hi in got] == golden.PI_UPPER[word]


def test_k_equals_m():
    for w in enumerate_words(DNA, 3):
        assert pi_exact(w, 3) == 1


def test_max_prefixed_words_count_one():
    w = DNA.word("TGCA")
    assert all(pi_exact(w, k) == 1 for k in range(4, 40))
    assert pi_bounds(w, 31) == (1, 1)


def test_k_below_m():
    with pytest.raises(InvalidInputError):
        pi_exact(DNA.word("ACACAA"), 5)
    with pytest.raises(InvalidInputError):
        pi_bounds(DNA.word("ACACAA"), 5)


def test_convolution_matches_truncated_sum():
    for w in enumerate_words(DNA, 3):
        for k in range(3, 12):
            assert pi_convolution(w, k) == pi_exact(w, k)


def test_convolution_with_brute_force_postmers():
    rng = random.Random(5)
    for _ in range(20):
        w = random_word(rng, rng.randint(1, 4))
        k = len(w) + rng.randint(0, 5)
        assert pi_convolution(w, k, lambda b: brute_force_postmers(w, b, anchored=True)) == pi_exact(w, k)


@pytest.mark.parametrize("m,k", [(1, 6), (2, 8), (3, 9), (4, 10)])
def test_partition_identity(m, k):
    assert sum(r.exact for r in pi_partition(DNA, m, k)) == 4 ** k


def test_partition_identity_other_alphabet():
    abc = Alphabet.from_strings("ABC", None)
    assert sum(r.exact for r in pi_partition(abc, 3, 8)) == 3 ** 8


def test_partition_order_and_workers():
    serial = list(pi_partition(DNA, 3, 8, "both"))
    assert [r.w.letters for r in serial] == sorted(r.w.letters for r in serial)
    parallel = list(pi_partition(DNA, 3, 8, "both", workers=2, chunk=7))
    assert parallel == serial


def test_partition_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        list(pi_partition(DNA, 4, 3))
    with pytest.raises(InvalidInputError):
        list(pi_partition(DNA, 2, 3, mode="fast"))


def test_modes():
    w = DNA.word("ACACAA")
    r = evaluate(w, 16, "exact")
    assert (r.exact, r.lower, r.upper, r.beta_max_used) == (1043199, None, None, 1)
    r = evaluate(w, 16, "bounds")
    assert (r.exact, r.lower, r.upper) == (None, 969659, 1122932)


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=10), st.integers(0, 54))
def test_sandwich(letters, extra):
    w = Word(tuple(letters))
    k = len(w) + extra
    r = evaluate(w, k, "both")
    cap = (r.beta_max_used + 1) * 4 ** (k - len(w))
    assert 1 <= r.lower <= r.exact <= r.upper <= cap


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=6))
def test_monotone_in_k(letters):
    w = Word(tuple(letters))
    series = pi_series(w, len(w), len(w) + 12)
    assert all(a <= b for a, b in zip(series, series[1:]))


def test_normalized_point():
    assert normalized_point(DNA.word("AAAA"), 8, pi_exact(DNA.word("AAAA"), 8)).x == 1.0
    assert normalized_point(DNA.word("TTTT"), 8, 1) == normalized_point(DNA.word("TTTT"), 8, 1)
    p = normalized_point(DNA.word("TTTT"), 8, 1)
    assert (p.x, p.y) == (0.0, 0.0)
    y = normalized_point(DNA.word("ACACAC"), 16, 6337559).y
    assert y == pytest.approx(math.log(6337559, 4) / (10 + math.log(11, 4)))
    # log_4 6337559 = 11.2977..., 10 + log_4 11 = 11.7297...
    assert y == pytest.approx(0.96317, abs=1e-5)
    with pytest.raises(InvalidInputError):
        normalized_point(DNA.word("ACGT"), 8, 0)


def test_relative_errors():
    lo, ex, hi = 969659, 1043199, 1122932
    em, ep = relative_errors(ex, lo, hi)
    assert ep == pytest.approx((math.log(hi, 4) - math.log(ex, 4)) / math.log(ex, 4))
    # both logs in base 4: 0.05319 / 10.0078
    assert ep == pytest.approx(0.0053148, abs=1e-7)
    assert em > 0
    assert relative_errors(7, 7, 9)[0] == 0.0
    assert relative_errors(9, 7, 9)[1] == 0.0
    with pytest.raises(InvalidInputError):
        relative_errors(1, 1, 1)


def test_fit_line_recovers_exact_line():
    xs = list(range(10))
    fit = fit_line(xs, [0.5 * x + 1 for x in xs])
    assert fit.slope == pytest.approx(0.5)
    assert fit.intercept == pytest.approx(1.0)
    assert fit.r_squared == pytest.approx(1.0)


def test_regression():
    fit = regress_slope(DNA.word("ACACAC"), 6, 106)
    assert fit.r_squared >= 0.99 and not fit.degenerate
    assert 0 < fit.slope < 1
    fit = regress_slope(DNA.word("TACA"), 6, 30)
    assert fit.degenerate and fit.slope == 0 and fit.r_squared is None
    with pytest.raises(InvalidInputError):
        regress_slope(DNA.word("ACACAC"), 6, 7)


def test_csv_row_uses_plain_integers():
    row = result_row(evaluate(DNA.word("ACACAC"), 60, "both"))
    assert row["pi_exact"].isdigit() and "e" not in row["pi_upper"]
    assert int(row["pi_exact"]) == pi_exact(DNA.word("ACACAC"), 60)
    assert row["rank_phi"] == "3822"
