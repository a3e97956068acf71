import itertools
import random

import pytest

from fatpoints.hilbert import beta_expected, expected_dim, find_alpha, find_tau
from fatpoints.lattice import DivisorClass
from fatpoints.oracle import PointConfig, actual_nu
from fatpoints.resolution import (ExcInvariants, betti_table,
                                  classical_nu_bounds, exc_invariants,
                                  ker_mu_dim, nu_bounds_point_split,
                                  quasi_uniform_resolution)


def test_exc_invariants_examples():
    assert exc_invariants(DivisorClass(0, (0, -1, 0))) == ExcInvariants(0, 0, 0)
    assert exc_invariants(DivisorClass(1, (1, 1))) == ExcInvariants(0, 1, 1)
    assert exc_invariants(DivisorClass(6, (3, 2, 2, 2, 2, 2, 2, 2))) == ExcInvariants(3, 3, 3)
    with pytest.raises(ValueError):
        exc_invariants(DivisorClass(1, (1, 1, 1)))


def test_exc_invariants_sum_law():
    for c in [DivisorClass(1, (1, 1)), DivisorClass(2, (1, 1, 1, 1, 1)),
              DivisorClass(3, (2, 1, 1, 1, 1, 1, 1)),
              DivisorClass(4, (2, 2, 2, 1, 1, 1, 1, 1)),
              DivisorClass(5, (2, 2, 2, 2, 2, 2, 1, 1)),
              DivisorClass(6, (3, 2, 2, 2, 2, 2, 2, 2))]:
        inv = exc_invariants(c)
        assert inv.lam <= inv.big_lam
        assert inv.lam + inv.big_lam == c.degree


def test_ker_mu_examples():
    assert ker_mu_dim(DivisorClass(11, (4, 4, 4, 4, 4, 4, 4, 1))) == 2
    assert ker_mu_dim(DivisorClass(2, (3, 3, 0, 0, 0, 0, 0, 0))) == 0
    assert ker_mu_dim(DivisorClass(7, (3, 3, 3, 3, 3, 0, 0, 0))) == 5


def test_ker_mu_rejects_nine_points():
    with pytest.raises(ValueError):
        ker_mu_dim(DivisorClass(5, (1,) * 9))


def test_ker_mu_padding_and_permutation_invariance():
    rng = random.Random(2)
    for _ in range(40):
        n = rng.randrange(1, 9)
        m = [rng.randrange(0, 5) for _ in range(n)]
        t = rng.randrange(0, 14)
        base = ker_mu_dim(DivisorClass(t, m))
        rng.shuffle(m)
        assert ker_mu_dim(DivisorClass(t, m)) == base
        assert ker_mu_dim(DivisorClass(t, m + [0])) == base


def test_betti_table_examples():
    assert betti_table((3, 3, 3, 3, 3)).nu(8) == 2

    point = betti_table((1,))
    assert point.nu(1) == 2 and point.row(2)[3] == 1
    assert all(nu == 0 for t, _, nu, _ in point.rows if t not in (1,))
    assert all(s == 0 for t, _, _, s in point.rows if t != 2)

    special = betti_table((4, 4, 4, 4, 4, 4, 4, 1))
    h11 = expected_dim(DivisorClass(11, (4, 4, 4, 4, 4, 4, 4, 1)))
    h12 = expected_dim(DivisorClass(12, (4, 4, 4, 4, 4, 4, 4, 1)))
    assert special.nu(12) == h12 - 3 * h11 + 2 == 1


def test_betti_table_window():
    t = betti_table((2, 2, 1))
    assert t.rows[0][0] == t.alpha - 2
    assert t.rows[-1][0] == t.tau + 2


def _oracle_nu_checked(z, t):
    for seed in (0, 1, 2):
        cfg = PointConfig.random(len(z), seed=seed)
        values = [actual_nu(cfg, z, t)]
    return values[0]


def test_betti_vs_oracle_random_grid():
    rng = random.Random(4)
    cases = 0
    for _ in range(12):
        n = rng.randrange(1, 9)
        z = tuple(rng.randrange(0, 5) for _ in range(n))
        if sum(z) == 0:
            continue
        table = betti_table(z)
        cfg = PointConfig.random(n, seed=0)
        for t, h, nu, s in table.rows:
            if t < 0:
                continue
            assert actual_nu(cfg, z, t) == nu, (z, t)
            cases += 1
    assert cases > 30


def test_quasi_uniform_examples():
    r = quasi_uniform_resolution([5] * 20)
    assert (r.alpha, r.a, r.b, r.c, r.d) == (24, 25, 0, 24, 0)
    assert "conjectural" in r.label

    r9 = quasi_uniform_resolution([1] * 9)
    assert (r9.alpha, r9.a, r9.b, r9.c, r9.d) == (3, 1, 3, 0, 3)

    degenerate = quasi_uniform_resolution([0] * 10)
    assert (degenerate.alpha, degenerate.a, degenerate.b, degenerate.c, degenerate.d) \
        == (0, 1, 0, 0, 0)


def test_quasi_uniform_rejections():
    with pytest.raises(ValueError):
        quasi_uniform_resolution([2] * 8)
    with pytest.raises(ValueError):
        quasi_uniform_resolution([3] * 8 + [2, 2])
    with pytest.raises(ValueError):
        quasi_uniform_resolution([2, 3] + [2] * 8)


def test_classical_bounds_example_five_triple_points():
    z = (3, 3, 3, 3, 3)
    nb = classical_nu_bounds(z)
    lo, hi = nb.at(8)
    assert (lo, hi) == (1, 3)
    assert nb.total_simple == find_alpha(z) + 1 == 7
    assert nb.total_refined == find_alpha(z) + beta_expected(z) - find_tau(z) == 7


def test_classical_bounds_koszul_case():
    nb = classical_nu_bounds((1,))
    table = betti_table((1,))
    for t, lo, hi in nb.per_degree:
        assert lo <= table.nu(t) <= hi


def test_classical_bounds_inconsistent_inputs():
    with pytest.raises(ValueError):
        classical_nu_bounds((2, 2), alpha=2, beta=1, tau=3)
    with pytest.raises(ValueError):
        classical_nu_bounds((2, 2), alpha=2, beta=5, tau=3)


def test_bounds_bracket_true_nu_small_grid():
    for z in itertools.product(range(4), repeat=4):
        if sum(z) == 0:
            continue
        table = betti_table(z)
        nb = classical_nu_bounds(z)
        for t, lo, hi in nb.per_degree:
            assert lo <= table.nu(t) <= hi, (z, t)
        m = tuple(sorted(z, reverse=True))
        in_window = {r[0] for r in table.rows}
        if m[0] > 0:
            for t in range(0, table.tau + 2):
                lo2, hi2 = nu_bounds_point_split(m, t)
                nu = table.nu(t + 1) if t + 1 in in_window else 0
                assert lo2 <= nu <= hi2, (z, t)


def test_point_split_examples():
    assert nu_bounds_point_split((1,), 1) == (0, 0)
    lo, hi = nu_bounds_point_split((3, 3, 3, 3, 3), 7)
    assert lo <= 2 <= hi
    assert nu_bounds_point_split((3, 3, 3, 3, 3), 2) == (0, 0)
    with pytest.raises(ValueError):
        nu_bounds_point_split((0, 1), 2)


def test_betti_invariants_asserted_randomly():
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randrange(1, 9)
        z = tuple(rng.randrange(0, 5) for _ in range(n))
        table = betti_table(z)  # invariants asserted during construction
        assert sum(r[2] for r in table.rows) <= table.alpha + 1
        assert table.nu(table.alpha) == table.row(table.alpha)[1]
