import random

import pytest

import golden
from mincount import DNA, brute_force_postmers, build_tables, compute_postmer_bounds, compute_postmers
from mincount.oracle import brute_force_postmer_strata
from naive import random_word

W2 = DNA.word(golden.W2)


def test_reference_grid():
    table = compute_postmers(build_tables(W2), 10)
    assert list(table.marginal) == golden.P_W2
    assert [list(r) for r in table.grid] == golden.P_GRID_W2
    assert list(table.anchored[6:11]) == golden.PM_W2[:5]


def test_marginal_at_m_is_one_plus_rank():
    assert compute_postmers(build_tables(W2), 6)(6) == 1 + 3822


def test_reference_bounds():
    b = compute_postmer_bounds(build_tables(W2), 16)
    assert list(b.upper[:11]) == golden.P_UPPER_W2
    assert list(b.lower[:11]) == golden.P_LOWER_W2
    assert list(b.anchored_upper[6:]) == golden.PM_UPPER_W2
    assert list(b.anchored_lower[6:]) == golden.PM_LOWER_W2
    assert all(x == 0 for x in b.anchored_lower[:6] + b.anchored_upper[:6])


def test_anchored_row_vanishes_past_beta_max():
    t = build_tables(DNA.word(golden.W1))
    anchored = compute_postmers(t, 16).anchored
    assert anchored[6] == 1 and anchored[7] == 4
    assert all(v == 0 for v in anchored[8:])


@pytest.mark.parametrize("seed", range(4))
def test_against_brute_force(seed):
    rng = random.Random(100 + seed)
    for _ in range(8):
        m = rng.randint(1, 5)
        w = random_word(rng, m)
        t = build_tables(w)
        table = compute_postmers(t, 7 + m)
        bounds = compute_postmer_bounds(t, 7 + m)
        for beta in range(8):
            strata = brute_force_postmer_strata(w, beta)
            assert [table.grid[i][beta] for i in range(m + 1)] == [strata.get(i, 0) for i in range(m + 1)]
            assert table(beta) == brute_force_postmers(w, beta)
            assert table.anchored[beta + m] == brute_force_postmers(w, beta, anchored=True)
            if beta <= t.beta_max_raw:
                assert bounds.lower[beta + m] <= table(beta + m) <= bounds.upper[beta + m]
                assert bounds.anchored_lower[beta + m] <= table.anchored[beta + m] <= bounds.anchored_upper[beta + m]
