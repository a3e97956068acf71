"""Upper bounds on the degree where a fat-point scheme imposes independent
conditions.

All methods bound tau(Z), the least degree from which the Hilbert
function agrees with the Hilbert polynomial, from above.  Most come from
specializing the points onto a curve of low degree (a conic, a cubic, a
curve of degree about sqrt(n)) or from iterated unloading; the modified
unloading variants assume characteristic 0.  Where a bound is stated for
n > 9 points only, smaller n is rejected rather than extrapolated.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .lattice import as_spec
from .report import TAU_UPPER, CHAR_ZERO, BoundReport


def _ceil(x) -> int:
    f = Fraction(x)
    return -((-f.numerator) // f.denominator)


def _clean(z) -> list[int]:
    return sorted((m for m in as_spec(z).mults if m > 0), reverse=True)


def _uniform_nm(z) -> tuple[int, int] | None:
    w = _clean(z)
    if w and len(set(w)) == 1:
        return len(w), w[0]
    return None


def segre_tau(n: int, m: int) -> BoundReport:
    """tau <= m n / 2 for n > 9 uniform points (specialization to a conic)."""
    _check_uniform_big(n, m)
    return BoundReport("conic-specialization", TAU_UPPER, m * n // 2)


def cubic_tau(n: int, m: int) -> BoundReport:
    """tau <= m n / 3 for n > 9 uniform points (specialization to a cubic)."""
    _check_uniform_big(n, m)
    return BoundReport("cubic-specialization", TAU_UPPER, m * n // 3)


def _check_uniform_big(n: int, m: int) -> None:
    if n <= 9:
        raise ValueError("bound is stated for n > 9 points only")
    if m < 1:
        raise ValueError("multiplicity must be positive")


def gimigliano_tau(z) -> BoundReport:
    """tau <= m_1 + ... + m_d for the least d with d(d+3) >= 2n.

    For n <= 2 the d = 1 case of this statement can undershoot the true
    value (two points of multiplicity >= 2 need degree m_1 + m_2 - 1);
    the computed value is still reported, with a caveat.
    """
    w = _clean(z)
    n = len(w)
    if n == 0:
        raise ValueError("the empty subscheme needs no bound")
    d = 0
    while d * (d + 3) < 2 * n:
        d += 1
    validity = () if n >= 3 else ("stated for n >= 3; can undershoot for fewer points",)
    return BoundReport("gimigliano", TAU_UPPER, sum(w[:d]), (("d", d),), validity)


def hirschowitz_tau(z) -> BoundReport:
    """Least d >= m_1 with ceil((d+3)/2) * ceil((d+2)/2) > sum m_i(m_i+1)/2."""
    w = _clean(z)
    if not w:
        raise ValueError("the empty subscheme needs no bound")
    s = sum(m * (m + 1) for m in w)
    d = w[0]
    while _ceil(Fraction(d + 3, 2)) * _ceil(Fraction(d + 2, 2)) * 2 <= s:
        d += 1
    return BoundReport("hirschowitz", TAU_UPPER, d)


def ballico_tau(n: int, m: int) -> BoundReport:
    """Least d with d(d+3) - n m(m+1) >= 2d(m-1) - 2 (uniform points)."""
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    d = 0
    while d * (d + 3) - n * m * (m + 1) < 2 * d * (m - 1) - 2:
        d += 1
    return BoundReport("ballico", TAU_UPPER, d)


def xu_tau(n: int, m: int) -> BoundReport:
    """Least d with 9 (d+3)^2 > 10 n (m+1)^2 (uniform points)."""
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    d = 0
    while 9 * (d + 3) * (d + 3) <= 10 * n * (m + 1) * (m + 1):
        d += 1
    return BoundReport("xu", TAU_UPPER, d)


def sqrt_specialization_tau(n: int, m: int) -> BoundReport:
    """tau <= m ceil(sqrt(n)) + ceil((ceil(sqrt(n)) - 3) / 2) for n >= 9.

    Specialization of the points to a smooth curve of degree
    ceil(sqrt(n)); an equality for square n >= 9 once m is large enough.
    """
    if n < 9:
        raise ValueError("bound is stated for n >= 9 points only")
    if m < 0:
        raise ValueError("multiplicity must be nonnegative")
    root = isqrt(n)
    if root * root != n:
        root += 1
    value = m * root + _ceil(Fraction(root - 3, 2))
    return BoundReport("sqrt-specialization", TAU_UPPER, value, (("d", root),))


def catalisano_tau(z) -> BoundReport:
    """Upper bound from the conic-specialization refinement.

    Needs at least five positive multiplicities.  Uniform schemes take
    the uniform branch; the general branch segments the sorted
    multiplicities at their strict drops.  One special-case test in the
    reference formulation compares against an undefined count; it is
    resolved as the number of positive multiplicities and flagged.
    """
    w = _clean(z)
    n = len(w)
    if n < 5:
        raise ValueError("bound needs at least 5 points of positive multiplicity")
    if len(set(w)) == 1:
        return BoundReport("catalisano", TAU_UPPER, _catalisano_uniform(n, w[0]))
    return BoundReport(
        "catalisano", TAU_UPPER, _catalisano_mixed(w),
        validity=("special-case count read as the number of positive multiplicities",))


def _split_floor(points: int) -> tuple[int, int]:
    # Largest f with f(f+1) <= 2*points, and least r with 2r >= 2*points - f(f+1).
    f = 0
    while (f + 1) * (f + 2) <= 2 * points:
        f += 1
    r = 0
    while 2 * r < 2 * points - f * (f + 1):
        r += 1
    return f, r


def _catalisano_uniform(n: int, m: int) -> int:
    f, r = _split_floor(n)
    d1 = f - 1 if r == 0 else f
    t = d1 + (m - 1) * f
    if 2 * t + 1 < 5 * m:
        t = _ceil(Fraction(5 * m - 1, 2))
    if t < 2 * m - 1:
        t = 2 * m - 1
    if r == f and n >= 9:
        t = m * d1 + 1
    return t


def _catalisano_mixed(w: list[int]) -> int:
    n = len(w)
    # Segment boundaries: counts where the sorted multiplicities strictly
    # drop, plus n; values are the multiplicity on each segment.
    counts: list[int] = []
    values: list[int] = []
    for i in range(n - 1):
        if w[i] > w[i + 1]:
            counts.append(i + 1)
            values.append(w[i])
    counts.append(n)
    values.append(w[n - 1])
    diffs = [values[i] - values[i + 1] for i in range(len(values) - 1)] + [values[-1]]
    fs, rs = zip(*(_split_floor(c) for c in counts))
    t = -1 if rs[-1] == 0 else 0
    d1 = t + fs[-1]
    t += sum(f * v for f, v in zip(fs, diffs))
    top5 = sum(w[:5])
    if 2 * t + 1 < top5:
        t = _ceil(Fraction(top5 - 1, 2))
    if t < w[0] + w[1] - 1:
        t = w[0] + w[1] - 1
    if rs[0] == fs[0] and n >= 9 and w[0] == w[n - 1] and w[0] > 1:
        t = w[0] * d1 + 1
    if rs[0] == 0 and n > 9 and w[0] == w[n - 2] and w[n - 1] == 1:
        t = w[0] * d1 + 1
    return t


def roe_tau(z) -> BoundReport:
    """Iterated-unloading upper bound m_1' + m_2' - 1 (clamped at 0).

    Stage i (i = 2..n-1) subtracts E1 - ... - Ei, resorting and clamping,
    while the class meets E1 - ... - E_{i+1} in less than -1.
    """
    z = as_spec(z)
    if z.n < 2:
        raise ValueError("bound needs at least 2 points")
    nm = _uniform_nm(z)
    if nm is not None and nm[0] == z.n:
        value = _roe_tau_uniform(*nm)
    else:
        value = _roe_tau_vector(list(z.mults))
    return BoundReport("roe-unloading", TAU_UPPER, max(value, 0))


def _roe_tau_vector(w: list[int]) -> int:
    n = len(w)
    w = sorted((x if x > 0 else 0 for x in w), reverse=True)
    for i1 in range(1, n - 1):
        while w[0] - sum(w[1:i1 + 2]) < -1:
            w[0] += 1
            for k in range(1, i1 + 1):
                w[k] -= 1
            w = sorted((x if x > 0 else 0 for x in w), reverse=True)
    return w[0] + w[1] - 1


def _roe_tau_uniform(n: int, m: int) -> int:
    m1 = m
    m2 = m if n > 1 else 0
    count = n - 1   # points among the rest carrying multiplicity m2
    for i in range(1, n - 1):
        while True:
            s = (i + 1) * m2 if i + 1 <= count else (i + 1) * m2 + count - i - 1
            if m1 - s >= -1:
                break
            m1 += 1
            if i < count:
                count -= i
            else:
                count = n - i + count - 1
                m2 -= 1
                if m2 < 0:
                    m2, count = 0, n - 1
    return m1 + m2 - 1


def modified_unloading_tau(z, r: int, d: int) -> BoundReport:
    """Least t from which the class unloads to a multiplicity-free one.

    Subtracts the degree-d curve through the first r points while the
    degree stays at least d - 2 and the intersection stays at least
    genus - 1 (so no first cohomology appears along the way); succeeds
    when all multiplicities reach zero.  Characteristic 0 only.
    """
    z = as_spec(z)
    if not 1 <= r <= z.n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={z.n}")
    if d < 1:
        raise ValueError("d must be positive")
    g = (d - 1) * (d - 2) // 2
    nm = _uniform_nm(z)
    if nm is not None and r <= nm[0]:
        succeeds = lambda t: _hr_tau_succeeds_uniform(t, nm[0], nm[1], r, d, g)
    else:
        v = sorted(z.mults, reverse=True)
        succeeds = lambda t: _hr_tau_succeeds(t, list(v), r, d, g)
    t = 0
    while not succeeds(t):
        t += 1
    return BoundReport("modified-unloading", TAU_UPPER, t,
                       (("r", r), ("d", d)), (CHAR_ZERO,))


def _hr_tau_succeeds(t: int, mults: list[int], r: int, d: int, g: int) -> bool:
    deg = t
    v = mults
    while deg * d - sum(v[:r]) >= g - 1 and deg >= d - 2 and v[0] > 0:
        deg -= d
        v = sorted((x - 1 if i < r else x for i, x in enumerate(v)), reverse=True)
        v = [x if x > 0 else 0 for x in v]
    return v[0] == 0


def _hr_tau_succeeds_uniform(t: int, n: int, m: int, r: int, d: int, g: int) -> bool:
    deg, top, count = t, m, n
    while deg * d - _top_r_sum(r, n, top, count) >= g - 1 and deg >= d - 2 and top > 0:
        deg -= d
        if r < count:
            count -= r
        else:
            top, count = top - 1, n - r + count
            if top <= 0:
                top, count = 0, n
    return top == 0


def _top_r_sum(r: int, n: int, top: int, count: int) -> int:
    return r * top if r <= count else r * top - r + count


def modified_unloading_tau_formula_a(n: int, m: int, r: int, d: int) -> BoundReport:
    """Closed form when 2r >= n + d^2: max(ceil((m r + g - 1)/d), (u+1) d - 2)."""
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    if 2 * r < n + d * d:
        raise ValueError("closed form (a) needs 2r >= n + d^2")
    if m == 0:
        return BoundReport("modified-unloading-formula-a", TAU_UPPER, 0,
                           (("r", r), ("d", d)), (CHAR_ZERO,))
    g = (d - 1) * (d - 2) // 2
    u = _ceil(Fraction(m * n, r)) - 1
    value = max(_ceil(Fraction(m * r + g - 1, d)), (u + 1) * d - 2)
    return BoundReport("modified-unloading-formula-a", TAU_UPPER, value,
                       (("r", r), ("d", d)), (CHAR_ZERO,))


def modified_unloading_tau_formula_b(n: int, m: int, r: int, d: int) -> BoundReport:
    """Closed form when r <= d^2: max(ceil((rho + g - 1)/d) + u d, (u+1) d - 2)."""
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    if r > d * d:
        raise ValueError("closed form (b) needs r <= d^2")
    if m == 0:
        return BoundReport("modified-unloading-formula-b", TAU_UPPER, 0,
                           (("r", r), ("d", d)), (CHAR_ZERO,))
    g = (d - 1) * (d - 2) // 2
    u = _ceil(Fraction(m * n, r)) - 1
    rho = m * n - u * r
    value = max(_ceil(Fraction(rho + g - 1, d)) + u * d, (u + 1) * d - 2)
    return BoundReport("modified-unloading-formula-b", TAU_UPPER, value,
                       (("r", r), ("d", d)), (CHAR_ZERO,))


def ran_tau(n: int, m: int, c) -> BoundReport:
    """tau <= -3 + ceil((m+1) max(sqrt(n), n/c)) from a proven alpha >= c m.

    c is an exact rational slope of a proven linear lower-bound family;
    the max is resolved by comparing n against c^2 exactly, and the
    square-root ceiling uses integer arithmetic only.
    """
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    c = Fraction(c)
    if c <= 0:
        raise ValueError("the slope c must be positive")
    if n * c.denominator ** 2 >= c.numerator ** 2:
        value = -3 + _ceil(Fraction((m + 1) * n, 1) / c)
    else:
        target = (m + 1) * (m + 1) * n
        k = isqrt(target)
        if k * k < target:
            k += 1
        value = -3 + k
    return BoundReport("ran-from-alpha", TAU_UPPER, value,
                       (("c", f"{c.numerator}/{c.denominator}" if c.denominator != 1
                         else str(c.numerator)),))
