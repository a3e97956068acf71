import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fatpoints.hilbert import (beta_expected, expected_dim, find_alpha,
                               find_tau, h1_dim, hilbert_polynomial,
                               hilbert_table, uniform_alpha_closed_form,
                               _uniform_alpha_many, _uniform_tau_many)
from fatpoints.lattice import DivisorClass

specs = st.lists(st.integers(min_value=0, max_value=6), min_size=0, max_size=9)


def test_hilbert_polynomial_examples():
    assert hilbert_polynomial([1] * 10, 3) == 0
    assert hilbert_polynomial([], 2) == 6
    assert hilbert_polynomial([3] * 5, 8) == 15


@given(specs, st.integers(min_value=-3, max_value=30))
def test_hilbert_polynomial_integrality(mults, t):
    s = sum(m * (m + 1) for m in mults)
    assert 2 * hilbert_polynomial(mults, t) == t * t + 3 * t + 2 - s


def test_expected_dim_examples():
    assert expected_dim(DivisorClass(2, (0, 0, 0))) == 6
    assert expected_dim(DivisorClass(3, (2, 2))) == 4
    assert expected_dim(DivisorClass(1, (1, 1, 1))) == 0


def test_expected_dim_reduction_invariance():
    from fatpoints.lattice import clamp_nonneg, reduce_fundamental
    for f in [DivisorClass(3, (2, 2)), DivisorClass(7, (3, 3, 3, 3)),
              DivisorClass(12, (5, 5, 4, 3, 2, 1)), DivisorClass(6, (3, 3, 3, 3, 3))]:
        t, _ = reduce_fundamental(f)
        if t.degree >= 0:
            assert expected_dim(f) == expected_dim(clamp_nonneg(t))
        else:
            assert expected_dim(f) == 0


def test_h1_examples():
    # Nine simple points impose independent conditions on cubics: h1 = 0.
    assert h1_dim(DivisorClass(3, (1,) * 9)) == 0
    assert h1_dim(DivisorClass(4, ())) == 0
    # Two double points off a conic band: e - chi stays nonnegative.
    assert h1_dim(DivisorClass(2, (2, 2))) >= 0
    with pytest.raises(ValueError):
        h1_dim(DivisorClass(-1, (0, 0)))


def test_find_alpha_examples():
    assert find_alpha((2, 2)) == 2
    assert find_alpha([2] * 8) == 6          # ceil(96/17)
    assert find_alpha([]) == 0
    assert find_alpha([0, 0]) == 0
    for m in range(1, 6):
        assert find_alpha([m] * 16) == 4 * m + 1


def test_find_tau_examples():
    assert find_tau([1] * 10) == 3
    assert find_tau([]) == 0
    for m in range(1, 6):
        assert find_tau([m] * 16) == 4 * m + 1


def test_uniform_alpha_closed_form_table():
    assert uniform_alpha_closed_form(6, 5) == 12
    assert uniform_alpha_closed_form(9, 7) == 21
    assert uniform_alpha_closed_form(1, 0) == 0
    with pytest.raises(ValueError):
        uniform_alpha_closed_form(10, 3)


def test_closed_form_matches_search_exhaustively():
    for n in range(1, 10):
        for m in range(0, 51):
            assert uniform_alpha_closed_form(n, m) == find_alpha([m] * n), (n, m)


def test_uniform_shortcut_agrees_with_expected_dims():
    # The n > 9 closed-form scans must match the reduction-based search.
    for n in range(10, 26):
        for m in range(0, 7):
            z = [m] * n
            a = _uniform_alpha_many(n, m)
            t = _uniform_tau_many(n, m)
            probe = 0
            while expected_dim(DivisorClass(probe, z)) == 0:
                probe += 1
            assert a == probe, (n, m)
            probe2 = 0
            while expected_dim(DivisorClass(probe2, z)) != hilbert_polynomial(z, probe2):
                probe2 += 1
            assert t == probe2, (n, m)


@settings(max_examples=150)
@given(specs)
def test_alpha_tau_basic_relations(mults):
    alpha = find_alpha(mults)
    tau = find_tau(mults)
    assert expected_dim(DivisorClass(alpha, mults)) > 0
    if alpha > 0:
        assert expected_dim(DivisorClass(alpha - 1, mults)) == 0
    assert expected_dim(DivisorClass(tau, mults)) == hilbert_polynomial(mults, tau)
    assert tau >= alpha - 1


@settings(max_examples=150)
@given(specs, st.integers(min_value=0, max_value=25))
def test_expected_dim_at_least_polynomial(mults, t):
    assert expected_dim(DivisorClass(t, mults)) >= max(0, hilbert_polynomial(mults, t))


@settings(max_examples=100)
@given(specs)
def test_alpha_monotone_under_extra_point(mults):
    assert find_alpha(mults) <= find_alpha(list(mults) + [1])
    assert find_alpha(mults) == find_alpha(list(mults) + [0])


def test_hilbert_table_examples():
    table = hilbert_table((2, 2))
    assert table.alpha == 2 and table.tau == 3
    assert table.value(1) == 0 and table.value(2) == 1 and table.value(3) == 4

    empty = hilbert_table([], 0, 4)
    for t, v in empty.rows:
        assert v == (t * t + 3 * t + 2) // 2

    assert hilbert_table([3] * 5).value(8) == 15


def test_hilbert_table_invariants():
    for z in [(2, 2), (3, 3, 3, 3, 3), (1,) * 9, (4, 3, 2, 1), (2,) * 12]:
        table = hilbert_table(z)
        assert table.value(table.alpha - 1) == 0
        assert table.value(table.alpha) > 0
        values = [v for _, v in table.rows]
        assert all(a <= b for a, b in zip(values, values[1:]))
        for t, v in table.rows:
            if t >= table.tau:
                assert v == hilbert_polynomial(z, t)
        assert table.exactness == ("exact" if len(z) <= 9 else "shgh-conjectural")


def test_hilbert_table_window_and_errors():
    table = hilbert_table((2, 2), 0, 6)
    assert table.rows[0] == (0, 0) and table.rows[-1] == (6, hilbert_polynomial((2, 2), 6))
    with pytest.raises(ValueError):
        hilbert_table((2, 2), 5, 1)


def test_beta_examples():
    assert beta_expected((1,)) == 1
    # Cubics through two double points all contain the connecting line, so
    # the base locus only becomes finite in degree 4.
    assert beta_expected((2, 2)) == 4
    # For five triple points the paper's lower-bound table forces the
    # one-dimensional base locus to persist through degree 7.
    assert beta_expected([3] * 5) == 8
    with pytest.raises(ValueError):
        beta_expected([0, 0])


def test_beta_between_alpha_and_tau_plus_one():
    for z in [(1,), (2, 2), (3, 3, 3, 3, 3), (2, 1, 1), (4, 4, 4, 4, 4, 4, 4, 1)]:
        assert find_alpha(z) <= beta_expected(z) <= find_tau(z) + 1
