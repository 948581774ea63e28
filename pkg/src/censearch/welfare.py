"""Welfare accounting and comparative statics of the cost distribution.

Consumer surplus under a censored strategy splits into the expected value of
the purchased product minus the expected accumulated search cost; both have
closed forms per cost type, with a branch at the threshold whose marginal
searcher has exactly that cost.  The comparative-statics transforms (scale
stretches, first-order shifts, mixing toward the uniform, mean-preserving
spreads) reproduce the predicted movements of the maximal threshold.
"""

from __future__ import annotations

import numpy as np

from ._poly import gauss_nodes, nodes_for_degree, polyval, real_roots_in, polyder
from .costshape import _require_continuous
from .dists import PiecewisePolyDist, incremental_benefit, mean, reservation_value, truncated_mean_above

__all__ = [
    "consumer_surplus_type",
    "consumer_surplus",
    "expected_search_length",
    "alpha_stretch",
    "fosd_compare",
    "uniform_interpolate",
    "classify_density_shape",
    "mps_check",
    "surplus_ranking_hypothesis",
]


def _value_of_best_of_n(F: PiecewisePolyDist, m: float, n: int) -> float:
    """int_0^m x d(F(x)^n): contribution of the maximum of n revealed draws
    conditional on all landing below m (unnormalized); exact per piece."""
    total = 0.0
    deg = 4 * n + 4
    xg, wg = gauss_nodes(nodes_for_degree(deg))
    for i in range(len(F.coefs)):
        lo, hi = float(F.breaks[i]), float(F.breaks[i + 1])
        hi = min(hi, m)
        if hi <= lo:
            break
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        ts = mid + half * xg
        dens = polyval(F.coefs[i], ts)
        cdfs = F.cdf_vec(ts)
        total += half * float(np.dot(wg, ts * n * cdfs ** (n - 1) * dens))
    return total


def consumer_surplus_type(
    F: PiecewisePolyDist, a: float, c: float, n: int
) -> tuple[float, float, float]:
    """(expected purchased value, expected accumulated search cost, surplus)
    for a consumer with cost c facing the censored strategy with threshold a.

    When the threshold sits at or below the consumer's cutoff image a_c, only
    the pooled signal stops them: they buy the pool on the first hit or the
    best revealed draw after exhausting all firms.  Above a_c they stop at
    any signal clearing a_c, so the branch quantities freeze at a_c.
    """
    if c <= 0:
        raise ValueError("surplus formulas need a strictly positive cost type")
    mu = mean(F)
    a_c = reservation_value(F, c) if c < mu else 0.0
    m = min(a, a_c)
    Fm = F.cdf(m)
    k_m = truncated_mean_above(F, m)
    best = _value_of_best_of_n(F, m, n) if m > F.support_lo else 0.0
    value = best + k_m * (1.0 - Fm**n)
    searches = (1.0 - Fm**n) / (1.0 - Fm) if Fm < 1.0 else float(n)
    cost = searches * c
    return float(value), float(cost), float(value - cost)


def consumer_surplus(
    F: PiecewisePolyDist, H: PiecewisePolyDist, a: float, n: int
) -> float:
    """Expected consumer surplus under the censored strategy: the per-type
    surplus integrated over the cost distribution (quadrature over the cost
    pieces, split at the branch cost)."""
    _require_continuous(H)
    cfa = incremental_benefit(F, a)
    cuts = sorted({float(b) for b in H.breaks} | ({cfa} if 0 < cfa < H.support_hi else set()))
    xg, wg = gauss_nodes(64)
    total = 0.0
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        if hi - lo < 1e-15:
            continue
        i = H._segment_index(0.5 * (lo + hi))
        if np.max(np.abs(H.coefs[i])) == 0.0:
            continue
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        cs = mid + half * xg
        dens = polyval(H.coefs[i], cs)
        vals = np.array([consumer_surplus_type(F, a, float(c), n)[2] for c in cs])
        total += half * float(np.dot(wg, dens * vals))
    return float(total)


def expected_search_length(F: PiecewisePolyDist, a: float, n: int) -> float:
    """Expected number of searches when only the pooled signal stops
    consumers: (1 - F(a)^n) / (1 - F(a)); 1 at a = 0."""
    Fa = F.cdf(a)
    if Fa >= 1.0:
        return float(n)
    return float((1.0 - Fa**n) / (1.0 - Fa))


def alpha_stretch(
    H: PiecewisePolyDist, alpha: float, prior_mean: float | None = None
) -> PiecewisePolyDist:
    """Scale every cost by alpha >= 1: support stretches to [0, alpha*cbar],
    density rescales by 1/alpha, the shape is preserved.  When the prior
    mean is supplied, enforces alpha < mean/cbar so the stretched market
    stays valid."""
    if alpha < 1.0:
        raise ValueError("stretch factor must be at least 1")
    if prior_mean is not None and alpha >= prior_mean / H.support_hi:
        raise ValueError("stretch factor must keep the cost top below the prior mean")
    if alpha == 1.0:
        return H
    breaks = [float(b) * alpha for b in H.breaks]
    coefs = []
    for c in H.coefs:
        scaled = np.array([c[j] / alpha ** (j + 1) for j in range(len(c))])
        coefs.append(scaled)
    atoms = [(float(a) * alpha, float(m)) for a, m in zip(H.atom_locs, H.atom_masses)]
    return PiecewisePolyDist(breaks, coefs, atoms=atoms)


def fosd_compare(H1: PiecewisePolyDist, H2: PiecewisePolyDist, grid: int = 4097) -> str:
    """Pointwise CDF comparison on a common scan grid: 'H2_dominates' when
    H2 sits weakly below H1 everywhere (stochastically larger costs),
    'H1_dominates' for the reverse, 'equal', or 'incomparable'."""
    lo = min(H1.support_lo, H2.support_lo)
    hi = max(H1.support_hi, H2.support_hi)
    cs = np.unique(np.concatenate([np.linspace(lo, hi, grid), H1.breaks, H2.breaks]))
    d = H2.cdf_vec(cs) - H1.cdf_vec(cs)
    tol = 1e-11
    if np.all(np.abs(d) <= tol):
        return "equal"
    if np.all(d <= tol):
        return "H2_dominates"
    if np.all(d >= -tol):
        return "H1_dominates"
    return "incomparable"


def uniform_interpolate(
    H0: PiecewisePolyDist, lam: float, cbar: float
) -> PiecewisePolyDist:
    """Mix the cost distribution with the uniform on [0, cbar]: density
    lam/cbar + (1 - lam) h0.  Requires a matching support."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError("mixing weight must lie in [0, 1]")
    if abs(H0.support_hi - cbar) > 1e-12 or abs(H0.support_lo) > 1e-12:
        raise ValueError("interpolation needs the cost support [0, cbar]")
    if lam == 0.0:
        return H0
    uni = PiecewisePolyDist.uniform(0.0, cbar)
    return PiecewisePolyDist.mixture([uni, H0], [lam, 1.0 - lam])


def classify_density_shape(H: PiecewisePolyDist, tol: float = 1e-11) -> str:
    """'quasi_convex_interior_dip' when the density falls then rises with a
    strict interior minimum, 'quasi_concave_interior_peak' for the mirror
    pattern, else 'neither'."""
    _require_continuous(H)
    lo, hi = H.support_lo, H.support_hi
    # sign pattern of h' across pieces and kinks
    signs: list[int] = []

    def push(s: int):
        if s != 0 and (not signs or signs[-1] != s):
            signs.append(s)

    for i in range(len(H.coefs)):
        a, b = float(H.breaks[i]), float(H.breaks[i + 1])
        if i > 0:
            jump = polyval(H.coefs[i], a) - polyval(H.coefs[i - 1], a)
            if abs(jump) > tol:
                push(1 if jump > 0 else -1)
        d = polyder(H.coefs[i])
        cuts = [a] + [float(r) for r in real_roots_in(d, a, b)] + [b]
        for u, v in zip(cuts[:-1], cuts[1:]):
            if v - u < 1e-14:
                continue
            val = polyval(d, 0.5 * (u + v))
            push(1 if val > tol else (-1 if val < -tol else 0))
    if signs == [-1, 1]:
        return "quasi_convex_interior_dip"
    if signs == [1, -1]:
        return "quasi_concave_interior_peak"
    return "neither"


def mps_check(H1: PiecewisePolyDist, H2: PiecewisePolyDist, tol: float = 1e-9, grid: int = 4097) -> bool:
    """Is H2 a mean-preserving spread of H1?  Equal means and the cumulative
    CDF integral of H2 dominating H1's everywhere on the scan grid."""
    if abs(mean(H1) - mean(H2)) > tol:
        return False
    lo = min(H1.support_lo, H2.support_lo)
    hi = max(H1.support_hi, H2.support_hi)
    cs = np.unique(np.concatenate([np.linspace(lo, hi, grid), H1.breaks, H2.breaks]))
    for c in cs:
        if H2.cdf_integral(float(c)) < H1.cdf_integral(float(c)) - tol:
            return False
    return True


def surplus_ranking_hypothesis(
    F: PiecewisePolyDist, a1: float, a2: float, cbar: float
) -> bool:
    """Hypothesis gate for cross-distribution surplus comparisons: both
    thresholds must sit at or below the image of the top cost (every type
    then stops only at the pooled signal), so the purchase-value and search
    terms separate cleanly."""
    a_top = reservation_value(F, cbar)
    return a1 <= a_top + 1e-12 and a2 <= a_top + 1e-12
