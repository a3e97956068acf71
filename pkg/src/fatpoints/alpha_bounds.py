"""Lower bounds on the least degree of a curve through a fat-point scheme.

Every method certifies that no curve of degree t passes through
Z = m_1 p_1 + ... + m_n p_n for all t below the reported value.

* Testing against a nef class: if a nonincreasing weight vector
  a_0 >= a_1 >= ... >= a_n >= 0 satisfies a_0 d^2 >= a_1 + ... + a_r and
  r a_0 >= a_1 + ... + a_n, then alpha >= (sum a_i m_i) / (a_0 d).  Four
  canned weight families (a)-(d) cover the useful specializations.

* Unloading: repeatedly subtract the degree-d curve through the first r
  points while the class meets it negatively (keeping the multiplicities
  sorted and clamped); if the degree drops below the top multiplicity the
  original class was not effective.  The bound is the first degree the
  procedure fails to rule out, found by an upward scan, so it never
  depends on a warm start.

* Iterated unloading: subtract the classes E1-E2-...-Ei for i = 3..n in
  turn while they meet the class negatively; the final top multiplicity
  is a lower bound for alpha.

* Modified unloading: same skeleton as unloading but the subtraction is
  allowed whenever the restriction to the curve can have no sections
  (t < d with (t+1)(t+2)/2 conditions exhausted, or the intersection at
  most genus - 1), which is valid in characteristic 0 only.

* Semigroup membership: the least t whose class lands in the semigroup
  generated by exceptional classes and the anticanonical class.

Uniform schemes dispatch to counter-based versions of the unloading
loops (tracking only the top multiplicity and how many points carry it),
which makes thousand-point inputs cheap; they agree with the vector
versions exactly.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence

from .hilbert import find_alpha
from .lattice import as_spec, reduce_fundamental_raw
from .report import ALPHA_LOWER, CHAR_ZERO, BoundReport, fmt_rational


def _ceil(x) -> int:
    f = Fraction(x)
    return -((-f.numerator) // f.denominator)


def _clean(z) -> list[int]:
    # Positive multiplicities, sorted nonincreasing.
    return sorted((m for m in as_spec(z).mults if m > 0), reverse=True)


def _uniform_nm(z) -> tuple[int, int] | None:
    w = _clean(z)
    if w and len(set(w)) == 1:
        return len(w), w[0]
    return None


# ---------------------------------------------------------------------------
# Nef-class tests


def nef_test_bound(z, weights: Sequence, r: int, d: int) -> BoundReport:
    """alpha >= ceil(sum(a_i m_i) / (a_0 d)) for an admissible weight vector.

    ``weights`` is the full vector (a_0, a_1, ..., a_n); rational entries
    are cleared to integers by the common denominator before checking the
    admissibility inequalities.
    """
    z = as_spec(z)
    n = z.n
    a = [Fraction(w) for w in weights]
    if len(a) > n + 1:
        raise ValueError(f"weight vector longer than n+1 = {n + 1}")
    a += [Fraction(0)] * (n + 1 - len(a))
    lcm = 1
    for w in a:
        lcm = lcm * w.denominator // gcd(lcm, w.denominator)
    ints = [int(w * lcm) for w in a]
    if all(w == 0 for w in ints):
        raise ValueError("weights must not be all zero")
    if any(w < 0 for w in ints):
        raise ValueError("weights must be nonnegative")
    if any(ints[i] < ints[i + 1] for i in range(n)):
        raise ValueError("weights must be nonincreasing")
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    if d < 1:
        raise ValueError("d must be positive")
    if ints[0] * d * d < sum(ints[1:r + 1]):
        raise ValueError("weights violate a0*d^2 >= a1+...+ar")
    if r * ints[0] < sum(ints[1:]):
        raise ValueError("weights violate r*a0 >= a1+...+an")
    m = sorted(z.mults, reverse=True)
    value = _ceil(Fraction(sum(w * x for w, x in zip(ints[1:], m)), ints[0] * d))
    return BoundReport("nef-test", ALPHA_LOWER, value,
                       (("r", r), ("d", d),
                        ("weights", tuple(fmt_rational(w) for w in a))))


def nef_variant_bound(z, variant: str, r: int, d: int, j: int | None = None) -> BoundReport:
    """The four canned weight families for the nef test.

    (a) r^2 >= n d^2:  alpha >= mean * n * d / r
    (b) r^2 <= n d^2:  alpha >= mean * r / d
    (c) d^2 >= r:      alpha >= (m_1 + ... + m_r) / d
    (d) d^2 < r, 0 <= j <= d^2: prefix weights 1 spread over a tail of
        weight j/(r - d^2 + j), with a fractional last slot.
    n counts the positive multiplicities, which are sorted first.
    """
    w = _clean(z)
    n = len(w)
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    if d < 1:
        raise ValueError("d must be positive")
    total = sum(w)
    if variant == "a":
        if r * r < n * d * d:
            raise ValueError("variant (a) needs r^2 >= n*d^2")
        value = _ceil(Fraction(total * d, r))
    elif variant == "b":
        if r * r > n * d * d:
            raise ValueError("variant (b) needs r^2 <= n*d^2")
        value = _ceil(Fraction(total * r, n * d))
    elif variant == "c":
        if d * d < r:
            raise ValueError("variant (c) needs d^2 >= r")
        value = _ceil(Fraction(sum(w[:r]), d))
    elif variant == "d":
        if d * d >= r:
            raise ValueError("variant (d) needs d^2 < r")
        if j is None:
            raise ValueError("variant (d) needs j")
        if not 0 <= j <= d * d:
            raise ValueError("variant (d) needs 0 <= j <= d^2")
        value = _prefix_spread_bound(w, r, d, j)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    params = [("r", r), ("d", d)]
    if variant == "d":
        params.append(("j", j))
    return BoundReport(f"nef-{variant}", ALPHA_LOWER, value, tuple(params))


def _prefix_spread_bound(w: list[int], r: int, d: int, j: int) -> int:
    # Weight family (d): exact rational evaluation, fractional last slot.
    n = len(w)
    if d * d >= r:
        return _ceil(Fraction(sum(w[:r]), d))
    if j == 0:
        return _ceil(Fraction(sum(w[:d * d]), d))
    q = r - d * d
    m_cut = (q * (q + j)) // j
    head = sum(w[:d * d - j])
    tail = Fraction(sum(w[d * d - j:min(m_cut + r, n)]) * j, q + j)
    if m_cut + r < n:
        tail += w[m_cut + r] * (q - Fraction(j * m_cut, q + j))
    return _ceil((head + tail) / d)


def best_variant_d_search(z) -> BoundReport:
    """Maximum of the family-(d) bound over all r, d and j.

    Scans r over the positive multiplicities, d up to the first value
    with d^2 >= r, and 1 <= j <= d^2; ties keep the first (smallest)
    parameters.
    """
    w = _clean(z)
    n = len(w)
    if n == 0:
        raise ValueError("the empty subscheme has no bound parameters")
    best, best_r, best_d, best_j = 0, 0, 0, 0
    for r in range(1, n + 1):
        d = 0
        while d * d < r:
            d += 1
            for j in range(1, d * d + 1):
                value = _prefix_spread_bound(w, r, d, j)
                if value > best:
                    best, best_r, best_d, best_j = value, r, d, j
    return BoundReport("nef-d", ALPHA_LOWER, best,
                       (("r", best_r), ("d", best_d), ("j", best_j)))


def best_rd_a(n: int) -> tuple[int, int]:
    """(r, d) with r <= n and r^2 >= n d^2 maximizing n d / r (smallest d on ties)."""
    if n < 1:
        raise ValueError("n must be positive")
    root = isqrt(n)
    r, d = (root if root * root == n else root + 1), 1
    for cand_d in range(1, root + 1):
        cand_r = cand_d * root
        while cand_r * cand_r < cand_d * cand_d * n:
            cand_r += 1
        if cand_r * d < cand_d * r:
            r, d = cand_r, cand_d
    return r, d


def best_rd_b(n: int) -> tuple[int, int]:
    """(r, d) with r <= n and r^2 <= n d^2 maximizing r / d (smallest d on ties)."""
    if n < 1:
        raise ValueError("n must be positive")
    root = isqrt(n)
    top = root if root * root == n else root + 1
    r, d = (root if root * root == n else root - 1), 1
    for cand_d in range(1, top + 1):
        cand_r = cand_d * top
        while cand_r * cand_r > cand_d * cand_d * n:
            cand_r -= 1
        cand_r = min(cand_r, n)
        if cand_r * d > cand_d * r:
            r, d = cand_r, cand_d
    return r, d


# ---------------------------------------------------------------------------
# Unloading engines

# The degree-d curve through the first r (sorted) points is subtracted
# while the test below allows it; sorting and clamping in between realize
# the consecutive-difference and last-point subtractions implicitly.


def _top_r_sum_state(r: int, n: int, top: int, count: int) -> int:
    # Two-value state: `count` points at `top`, the rest at top-1.
    return r * top if r <= count else r * top - r + count


def _state_subtract(r: int, n: int, top: int, count: int) -> tuple[int, int]:
    if r < count:
        return top, count - r
    top, count = top - 1, n - r + count
    if top <= 0:
        return 0, n
    return top, count


def _unloading_certifies(t: int, mults: list[int], r: int, d: int) -> bool:
    deg = t
    v = mults
    while deg * d - sum(v[:r]) < 0 and deg >= v[0]:
        deg -= d
        v = sorted((x - 1 if i < r else x for i, x in enumerate(v)), reverse=True)
        v = [x if x > 0 else 0 for x in v]
    return deg < v[0]


def _unloading_certifies_uniform(t: int, n: int, m: int, r: int, d: int) -> bool:
    deg, top, count = t, m, n
    while deg * d - _top_r_sum_state(r, n, top, count) < 0 and deg >= top:
        deg -= d
        top, count = _state_subtract(r, n, top, count)
    return deg < top


def unloading_alpha(z, r: int, d: int) -> BoundReport:
    """First degree the unloading procedure fails to rule out.

    For every smaller degree the class unloads to one whose degree drops
    below its top multiplicity, so no curve of that degree exists.
    """
    z = as_spec(z)
    if not 1 <= r <= z.n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={z.n}")
    if d < 1:
        raise ValueError("d must be positive")
    nm = _uniform_nm(z)
    if nm is not None and r <= nm[0]:
        certifies = lambda t: _unloading_certifies_uniform(t, nm[0], nm[1], r, d)
    else:
        v = sorted(z.mults, reverse=True)
        certifies = lambda t: _unloading_certifies(t, list(v), r, d)
    t = 0
    while certifies(t):
        t += 1
    return BoundReport("unloading", ALPHA_LOWER, t, (("r", r), ("d", d)))


def unloading_alpha_formula(n: int, m: int, r: int, d: int) -> BoundReport:
    """Closed form of the uniform unloading bound when 2r >= n + d^2.

    With u >= 0 and 0 < rho <= r defined by m n = u r + rho:
    alpha >= 1 + u d + min(d - 1, ceil(rho / d) - 1).
    """
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    if 2 * r < n + d * d:
        raise ValueError("closed form needs 2r >= n + d^2")
    if m == 0:
        return BoundReport("unloading-formula", ALPHA_LOWER, 0, (("r", r), ("d", d)))
    u = _ceil(Fraction(m * n, r)) - 1
    rho = m * n - u * r
    value = 1 + u * d + min(d - 1, _ceil(Fraction(rho, d)) - 1)
    return BoundReport("unloading-formula", ALPHA_LOWER, value, (("r", r), ("d", d)))


def best_unloading_search(z) -> BoundReport:
    """Exhaustive maximum of the unloading bound over 1 <= r <= n, d^2 <= r."""
    w = _clean(z)
    n = len(w)
    if n == 0:
        raise ValueError("the empty subscheme has no bound parameters")
    best, best_r, best_d = 0, 0, 0
    for r in range(1, n + 1):
        d = 1
        while d * d <= r:
            value = unloading_alpha(w, r, d).value
            if value > best:
                best, best_r, best_d = value, r, d
            d += 1
    return BoundReport("best-unloading", ALPHA_LOWER, best,
                       (("r", best_r), ("d", best_d)))


# ---------------------------------------------------------------------------
# Iterated unloading


def roe_alpha(z) -> BoundReport:
    """Iterated unloading: final top multiplicity after the stage-i sweeps.

    Stage i (i = 3..n) subtracts E1 - E2 - ... - Ei while the class meets
    it negatively, i.e. raises the top multiplicity by one and lowers the
    next i-1; no curve of degree below the final top multiplicity passes
    through the scheme.
    """
    z = as_spec(z)
    nm = _uniform_nm(z)
    if nm is not None:
        value = _roe_alpha_uniform(*nm)
    else:
        value = _roe_alpha_vector(list(z.mults))
    return BoundReport("roe-unloading", ALPHA_LOWER, value)


def _roe_alpha_vector(w: list[int]) -> int:
    if len(w) < 3:
        w = w + [0, 0, 0]
    size = len(w)
    w = sorted((x if x > 0 else 0 for x in w), reverse=True)
    for i1 in range(2, size):
        while w[0] - sum(w[1:i1 + 1]) < 0:
            w[0] += 1
            for k in range(1, i1 + 1):
                w[k] -= 1
            w = sorted((x if x > 0 else 0 for x in w), reverse=True)
    return w[0]


def _roe_alpha_uniform(n: int, m: int) -> int:
    if n <= 2:
        return m
    bound = m
    top, count = m, n - 1   # the rest: `count` points at `top`, others at top-1
    for i1 in range(2, n):
        while True:
            s = i1 * top - (i1 - count) if count < i1 else i1 * top
            if bound >= s:
                break
            bound += 1
            if count < i1:
                count = n - i1 + count - 1
                top -= 1
            else:
                count -= i1
                if count == 0:
                    top -= 1
                    count = n - 1
    return bound


# ---------------------------------------------------------------------------
# Modified unloading (characteristic 0)


def _hr_subtract_allowed(deg: int, s: int, d: int, g: int) -> bool:
    # Restriction to the degree-d curve has no sections: either the
    # degree is small and the r points exhaust all (deg+1)(deg+2)/2
    # conditions, or the intersection is at most genus - 1.
    if deg * d - s < g and deg >= d - 2:
        return True
    return (deg + 1) * (deg + 2) <= 2 * s and deg < d and deg >= 0


def _hr_certifies(t: int, mults: list[int], r: int, d: int, g: int) -> bool:
    deg = t
    v = mults
    while _hr_subtract_allowed(deg, sum(v[:r]), d, g):
        deg -= d
        v = sorted((x - 1 if i < r else x for i, x in enumerate(v)), reverse=True)
        v = [x if x > 0 else 0 for x in v]
    return deg < v[0]


def _hr_certifies_uniform(t: int, n: int, m: int, r: int, d: int, g: int) -> bool:
    deg, top, count = t, m, n
    while _hr_subtract_allowed(deg, _top_r_sum_state(r, n, top, count), d, g):
        deg -= d
        top, count = _state_subtract(r, n, top, count)
    return deg < top


def modified_unloading_alpha(z, r: int, d: int) -> BoundReport:
    """Unloading with the relaxed no-sections test; valid in characteristic 0."""
    z = as_spec(z)
    if not 1 <= r <= z.n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={z.n}")
    if d < 1:
        raise ValueError("d must be positive")
    g = (d - 1) * (d - 2) // 2
    nm = _uniform_nm(z)
    if nm is not None and r <= nm[0]:
        certifies = lambda t: _hr_certifies_uniform(t, nm[0], nm[1], r, d, g)
    else:
        v = sorted(z.mults, reverse=True)
        certifies = lambda t: _hr_certifies(t, list(v), r, d, g)
    t = 0
    while certifies(t):
        t += 1
    return BoundReport("modified-unloading", ALPHA_LOWER, t,
                       (("r", r), ("d", d)), (CHAR_ZERO,))


def _u_rho(n: int, m: int, r: int) -> tuple[int, int]:
    # m*n = u*r + rho with 0 < rho <= r.
    u = _ceil(Fraction(m * n, r)) - 1
    return u, m * n - u * r


def modified_unloading_alpha_formula_a(n: int, m: int, r: int, d: int) -> BoundReport:
    """Closed form when 2n >= 2r >= n + d^2: alpha >= 1 + s + u d.

    u and rho split m n = u r + rho with 0 < rho <= r; s is the largest
    integer with (s+1)(s+2) <= 2 rho, capped at d - 1.
    """
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    if not (2 * n >= 2 * r >= n + d * d):
        raise ValueError("closed form (a) needs 2n >= 2r >= n + d^2")
    if m == 0:
        return BoundReport("modified-unloading-formula-a", ALPHA_LOWER, 0,
                           (("r", r), ("d", d)), (CHAR_ZERO,))
    u, rho = _u_rho(n, m, r)
    s = _capped_s(rho, d - 1)
    return BoundReport("modified-unloading-formula-a", ALPHA_LOWER, 1 + s + u * d,
                       (("r", r), ("d", d)), (CHAR_ZERO,))


def modified_unloading_alpha_formula_b(n: int, m: int, r: int, d: int) -> BoundReport:
    """Closed form when d(d+1)/2 <= r <= min(n, d^2).

    alpha >= 1 + min(floor((m r + g - 1) / d), s + u d) with
    g = (d-1)(d-2)/2 and u, rho, s as in form (a).
    """
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    if not (d * (d + 1) // 2 <= r <= min(n, d * d)):
        raise ValueError("closed form (b) needs d(d+1)/2 <= r <= min(n, d^2)")
    if m == 0:
        return BoundReport("modified-unloading-formula-b", ALPHA_LOWER, 0,
                           (("r", r), ("d", d)), (CHAR_ZERO,))
    g = (d - 1) * (d - 2) // 2
    u, rho = _u_rho(n, m, r)
    s = _capped_s(rho, d - 1)
    value = 1 + min((m * r + g - 1) // d, s + u * d)
    return BoundReport("modified-unloading-formula-b", ALPHA_LOWER, value,
                       (("r", r), ("d", d)), (CHAR_ZERO,))


def _capped_s(rho: int, cap: int) -> int:
    # Largest s >= 0 with (s+1)(s+2) <= 2*rho, capped; rho >= 1 makes s=0 valid.
    s = 0
    while (s + 2) * (s + 3) <= 2 * rho and s < cap:
        s += 1
    return min(s, cap)


# ---------------------------------------------------------------------------
# Semigroup membership and the square-root reference value


def _in_semigroup(t: int, mults) -> bool:
    d, m = reduce_fundamental_raw(t, mults)
    return d >= 0 and d >= m[0]


def semigroup_alpha_bound(z) -> BoundReport:
    """Least t whose class lies in the exceptional semigroup.

    Scans downward from the expected least nonzero degree, whose class is
    always a member, and returns one past the first failure.
    """
    z = as_spec(z)
    if z.nonzero_count == 0:
        raise ValueError("the empty subscheme is everywhere effective")
    t = find_alpha(z)
    while t >= 0 and _in_semigroup(t, z.mults):
        t -= 1
    return BoundReport("semigroup-membership", ALPHA_LOWER, t + 1)


def nagata_reference(n: int, m: int) -> BoundReport:
    """The conjectural reference line floor(m sqrt(n)) + 1 for n > 9 uniform.

    Not a proven bound; reported for comparison with the proven methods.
    """
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    value = isqrt(m * m * n) + 1
    return BoundReport("nagata-reference", ALPHA_LOWER, value,
                       (), ("conjectural reference, not a proven bound",))
