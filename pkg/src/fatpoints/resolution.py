"""Graded Betti numbers of fat-point ideals on at most 8 general points.

The minimal free resolution 0 -> F1 -> F0 -> I(Z) -> 0 is determined by
the generator counts nu_t and syzygy counts s_t, linked through
nu_t - s_t = (third difference of the Hilbert function at t).  The
generator count in degree t+1 is the cokernel dimension of the
multiplication map mu_t : I_t (x) R_1 -> I_{t+1}, and for up to 8
general points that dimension follows from a case analysis: either some
exceptional curve meets the class too negatively (subtract it; the
kernel dimension is unchanged), or the class is orthogonal to the line
through the first two points (two correction terms), or it sits on one
special ray (kernel r+1, cokernel r), or the map has maximal rank.

Also here: the classical per-degree generator bounds that the exact
algorithm sharpens, and the predicted resolution shape for quasi-uniform
schemes on 9 or more points (conjectural; callers must label it so).
"""

from __future__ import annotations

from dataclasses import dataclass

from .hilbert import expected_dim, find_alpha, find_tau, hilbert_polynomial
from .lattice import DivisorClass, as_spec, canonical_class, intersection

MAX_POINTS = 8

# Sorted representatives of the exceptional orbits on 8 points, checked in
# this order against a sorted class, each with the intersection threshold
# below which the curve is subtracted (threshold = smaller of the top
# multiplicity and degree minus it).
_EXC_TESTS: tuple[tuple[DivisorClass, int], ...] = (
    (DivisorClass(6, (3, 2, 2, 2, 2, 2, 2, 2)), 3),
    (DivisorClass(5, (2, 2, 2, 2, 2, 2, 1, 1)), 2),
    (DivisorClass(4, (2, 2, 2, 1, 1, 1, 1, 1)), 2),
    (DivisorClass(3, (2, 1, 1, 1, 1, 1, 1, 0)), 1),
    (DivisorClass(2, (1, 1, 1, 1, 1, 0, 0, 0)), 1),
    (DivisorClass(1, (1, 1, 0, 0, 0, 0, 0, 0)), 0),
)


@dataclass(frozen=True)
class ExcInvariants:
    """Split of an exceptional curve's degree around its top multiplicity."""

    lam: int
    big_lam: int
    m_c: int


def exc_invariants(c: DivisorClass) -> ExcInvariants:
    """(min, max) of the top multiplicity and degree minus it; (0,0,0) for E_i."""
    if not _looks_exceptional(c):
        raise ValueError(f"{c} is not an exceptional class")
    if c.degree == 0:
        return ExcInvariants(0, 0, 0)
    m_c = max(c.mults)
    rest = c.degree - m_c
    return ExcInvariants(min(m_c, rest), max(m_c, rest), m_c)


def _looks_exceptional(c: DivisorClass) -> bool:
    k = canonical_class(len(c.mults))
    return intersection(c, c) == -1 and intersection(c, k) == -1


def _as8(mults) -> tuple[int, ...]:
    m = tuple(mults)
    if sum(1 for x in m if x != 0) > MAX_POINTS:
        raise ValueError("resolution algorithm supports at most 8 points")
    m = tuple(x for x in m if x != 0)
    return m + (0,) * (MAX_POINTS - len(m))


def ker_mu_dim(f: DivisorClass) -> int:
    """Kernel dimension of the multiplication map out of the system of f.

    Case analysis for 8 general points: clamp and sort; an empty system
    has zero kernel; subtract any exceptional representative the class
    meets below its threshold and repeat; then either the two-term
    correction (class orthogonal to the line through the first two
    points), the special ray (kernel r+1), or maximal rank.
    """
    d = f.degree
    m = list(_as8(f.mults))
    while True:
        m = sorted((x if x > 0 else 0 for x in m), reverse=True)
        if expected_dim(DivisorClass(d, m)) == 0:
            return 0
        for c, lam in _EXC_TESTS:
            if d * c.degree - sum(a * b for a, b in zip(m, c.mults)) < lam:
                d -= c.degree
                m = [a - b for a, b in zip(m, c.mults)]
                break
        else:
            break
    if d - m[0] - m[1] == 0:
        left = expected_dim(DivisorClass(d - 1, [m[0] - 1] + m[1:]))
        right = expected_dim(DivisorClass(d - 1, [m[0], m[1] - 1] + m[2:]))
        return left + right
    r = m[7]
    if d == 8 * r + 3 and m == [3 * r + 1] * 7 + [r]:
        return r + 1
    here = expected_dim(DivisorClass(d, m))
    above = expected_dim(DivisorClass(d + 1, m))
    return max(0, 3 * here - above)


@dataclass(frozen=True)
class BettiTable:
    """Rows (t, h, nu, s) of Hilbert values, generator and syzygy counts."""

    alpha: int
    tau: int
    rows: tuple[tuple[int, int, int, int], ...]

    def row(self, t: int) -> tuple[int, int, int, int]:
        for r in self.rows:
            if r[0] == t:
                return r
        raise KeyError(f"degree {t} outside table window")

    def nu(self, t: int) -> int:
        return self.row(t)[2]


def betti_table(z) -> BettiTable:
    """Hilbert values and Betti numbers for t from alpha-2 to tau+2 (n <= 8)."""
    z = as_spec(z)
    mults = _as8(z.mults)
    alpha = find_alpha(mults)
    tau = find_tau(mults)
    degrees = list(range(alpha - 2, tau + 3))
    h = [expected_dim(DivisorClass(t, mults)) for t in degrees]
    ker = [0 if t < alpha else ker_mu_dim(DivisorClass(t, mults)) for t in degrees]
    nu = []
    for i, t in enumerate(degrees):
        if i < 2:
            nu.append(0)
        else:
            nu.append(h[i] - 3 * h[i - 1] + ker[i - 1])
    s = []
    for i, t in enumerate(degrees):
        if i < 3:
            s.append(0)
        else:
            s.append(nu[i] - h[i] + 3 * h[i - 1] - 3 * h[i - 2] + h[i - 3])
    rows = tuple(zip(degrees, h, nu, s))
    table = BettiTable(alpha, tau, rows)
    _check_betti(table, z)
    return table


def _check_betti(table: BettiTable, z) -> None:
    # Structural identities that hold for every valid table.
    degrees = [r[0] for r in table.rows]
    h = {r[0]: r[1] for r in table.rows}
    for t, ht, nut, st in table.rows:
        def hv(u: int) -> int:
            if u in h:
                return h[u]
            return 0 if u < table.alpha else hilbert_polynomial(z, u)
        d3 = hv(t) - 3 * hv(t - 1) + 3 * hv(t - 2) - hv(t - 3)
        if nut - st != d3:
            raise RuntimeError(f"nu-s != third difference at degree {t}")
        if t == table.alpha and nut != ht:
            raise RuntimeError("generator count at alpha != Hilbert value")
        if t > table.tau + 1 and nut != 0:
            raise RuntimeError(f"generators above tau+1 at degree {t}")
        if nut < 0 or st < 0:
            raise RuntimeError(f"negative Betti number at degree {t}")
    if sum(r[2] for r in table.rows) > table.alpha + 1:
        raise RuntimeError("total generator count exceeds alpha + 1")


@dataclass(frozen=True)
class QuasiUniformResolution:
    """Predicted resolution 0 -> R[-a-2]^d + R[-a-1]^c -> R[-a-1]^b + R[-a]^a -> I."""

    alpha: int
    a: int
    b: int
    c: int
    d: int
    label: str = "conjectural (quasi-uniform prediction)"


def quasi_uniform_resolution(z) -> QuasiUniformResolution:
    """Predicted resolution shape for a quasi-uniform scheme.

    Requires n >= 9 points, nonincreasing multiplicities with the first
    nine equal.  Uses h(t) = max(P(t), 0); the output is conjectural and
    carries that label.  An all-zero scheme gives the whole ring.
    """
    z = as_spec(z)
    m = z.mults
    if len(m) < 9:
        raise ValueError("quasi-uniform requires at least 9 points")
    if any(m[i] < m[i + 1] for i in range(len(m) - 1)):
        raise ValueError("quasi-uniform requires nonincreasing multiplicities")
    if m[0] != m[8]:
        raise ValueError("quasi-uniform requires the first nine multiplicities equal")
    if all(x == 0 for x in m):
        return QuasiUniformResolution(0, 1, 0, 0, 0)

    def h(t: int) -> int:
        return max(hilbert_polynomial(z, t), 0)

    alpha = 0
    while h(alpha) == 0:
        alpha += 1
    a = h(alpha)
    b = max(h(alpha + 1) - 3 * a, 0)
    c = max(3 * a - h(alpha + 1), 0)
    d = a + b - c - 1
    return QuasiUniformResolution(alpha, a, b, c, d)


@dataclass(frozen=True)
class NuBounds:
    """Per-degree generator-count bounds plus the two total bounds."""

    per_degree: tuple[tuple[int, int, int], ...]  # (t, lower, upper)
    total_simple: int      # alpha + 1
    total_refined: int     # alpha + beta - tau

    def at(self, t: int) -> tuple[int, int]:
        for deg, lo, hi in self.per_degree:
            if deg == t:
                return lo, hi
        raise KeyError(f"degree {t} outside bound window")


def classical_nu_bounds(z, alpha: int | None = None, beta: int | None = None,
                        tau: int | None = None) -> NuBounds:
    """Classical bracketing of the generator counts from the Hilbert function.

    With eps_t = 0 below alpha, 1 for alpha <= t < beta and 2 for
    beta <= t <= tau: nu_{t+1} <= (second difference of h at t+1) - eps_t,
    and nu_t >= max(third difference of h at t, 1 if t = beta, 0).
    Degrees covered: alpha to tau + 1.
    """
    from .hilbert import beta_expected
    z = as_spec(z)
    if alpha is None:
        alpha = find_alpha(z)
    if beta is None:
        beta = beta_expected(z)
    if tau is None:
        tau = find_tau(z)
    if not (alpha <= beta <= tau + 1):
        raise ValueError(f"inconsistent characters: alpha={alpha}, beta={beta}, tau={tau}")

    def h(t: int) -> int:
        if t < alpha:
            return 0
        return expected_dim(z.divisor_class(t))

    def eps(t: int) -> int:
        if t < alpha:
            return 0
        if t < beta:
            return 1
        if t <= tau:
            return 2
        return 0

    out = []
    for t in range(alpha, tau + 2):
        upper = h(t) - 2 * h(t - 1) + h(t - 2) - eps(t - 1)
        d3 = h(t) - 3 * h(t - 1) + 3 * h(t - 2) - h(t - 3)
        lower = max(d3, 1 if t == beta else 0, 0)
        out.append((t, lower, upper))
    return NuBounds(tuple(out), alpha + 1, alpha + beta - tau)


def nu_bounds_point_split(z, t: int) -> tuple[int, int]:
    """Bracket nu_{t+1} by adding/removing one simple point at the first slot.

    With Z'' = Z - p_1 and Z' = Z + p_1:
    max(h_Z(t+1) - 3 h_Z(t) + h_{Z''}(t-1), 0) <= nu_{t+1}
    <= h_Z(t+1) - 3 h_Z(t) + h_{Z''}(t-1) + h_{Z'}(t).
    Exact Hilbert values for n <= 9, conjectural beyond.
    """
    z = as_spec(z)
    if z.n == 0 or z.mults[0] == 0:
        raise ValueError("point-split bounds need a positive first multiplicity")
    m = z.mults
    z_minus = (m[0] - 1,) + m[1:]
    z_plus = (m[0] + 1,) + m[1:]
    base = expected_dim(DivisorClass(t + 1, m)) \
        - 3 * expected_dim(DivisorClass(t, m)) \
        + expected_dim(DivisorClass(t - 1, z_minus))
    upper = base + expected_dim(DivisorClass(t, z_plus))
    return max(base, 0), upper
