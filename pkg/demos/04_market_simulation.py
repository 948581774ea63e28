"""Replaying the search game by Monte Carlo.

A quarter-million simulated consumers draw costs, form cutoffs, and walk the
market in random order with recall.  The empirical demand curve (estimated
with a probe firm whose signal sweeps the whole space) lands on the analytic
curve bin by bin; deviation runs confirm which censorship thresholds are
actually immune to profitable deviations.
"""

import numpy as np

from censearch import (
    DemandCurve,
    PiecewisePolyDist,
    SimConfig,
    consumer_surplus,
    expected_payoff,
    simulate_deviation,
    simulate_market,
    upper_censorship,
)

F = PiecewisePolyDist.uniform(0.0, 1.0)
H = PiecewisePolyDist.uniform(0.0, 0.18)
U4 = upper_censorship(F, 0.4)
N = 250_000

out = simulate_market(SimConfig(U4, H, n=2, consumers=N, seed=42, bins=20))
curve = DemandCurve(U4, 2, H)
print(f"{N} consumers, duopoly, censorship threshold 0.4")
print(f"  firm payoffs: {np.round(out.firm_payoffs, 4).tolist()}  (symmetric 1/2)")
print(f"  search length: {out.search_length_mean:.4f}  (analytic 1.4)")
print(f"  consumer surplus: {out.cs_mean:.5f}  (analytic {consumer_surplus(F, H, 0.4, 2):.5f})")

print("\nempirical vs analytic demand (every bin, probe-based):")
for m, d, se in zip(out.bin_mids, out.empirical_demand, out.demand_se):
    bar = "#" * int(40 * d)
    print(f"  x={m:5.3f}  emp={d:6.4f} (se {se:.4f})  ana={curve.value(float(m)):6.4f}  {bar}")

print("\ndeviation experiments (same consumer draws as the baseline):")
for a in (0.35, 0.45):
    Ua = upper_censorship(F, a)
    atom = PiecewisePolyDist.point_mass(float(Ua.max_supp()))
    pay, se, _ = simulate_deviation(SimConfig(Ua, H, 2, N, seed=42), atom)
    ana = expected_payoff(atom, Ua, 2, H)
    print(f"  all-in on the pooled signal vs threshold {a}: payoff {pay:.4f} "
          f"(analytic {ana:.4f})")
print("\nsee the acceptance suite for the signed partial-purchase deviations "
      "that separate equilibrium thresholds from the rest.")
