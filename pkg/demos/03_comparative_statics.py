"""Comparative statics of the maximal threshold in the cost distribution.

Three monotone channels and one non-monotone one:
  * scaling all costs up (a stretch) always reduces disclosure;
  * first-order stochastically larger costs reduce disclosure;
  * mixing toward the uniform distribution raises disclosure;
  * a mean-preserving spread can push disclosure either way -- it polarizes
    dip-shaped densities (less even) but flattens peak-shaped ones (more
    even).
Plus the two limit walks: shrinking supports drive disclosure to full
transparency, concentrating costs near the top kills it entirely.
"""

import numpy as np

from censearch import (
    PiecewisePolyDist,
    alpha_stretch,
    classify_density_shape,
    fosd_compare,
    solve_a_max,
    uniform_interpolate,
)

F = PiecewisePolyDist.uniform(0.0, 1.0)
H = PiecewisePolyDist.uniform(0.0, 0.18)

print("stretching the cost scale (threshold falls):")
for alpha in (1.0, 1.1, 1.3, 1.5):
    Hs = alpha_stretch(H, alpha, prior_mean=0.5)
    print(f"  alpha = {alpha:.1f}: a_max = {solve_a_max(F, Hs)[0]:.5f}")

print("\nfirst-order shift: uniform [0,0.18] vs uniform [0,0.27]")
H27 = alpha_stretch(H, 1.5, prior_mean=0.5)
H_ext = PiecewisePolyDist([0, 0.18, 0.27], [np.array([1 / 0.18]), np.zeros(1)])
print(f"  comparison on the common support: {fosd_compare(H_ext, H27)}")
print(f"  thresholds: {solve_a_max(F, H)[0]:.4f} -> {solve_a_max(F, H27)[0]:.4f}")

print("\nmean-preserving spreads move disclosure BOTH ways:")
cbar = 0.18
for beta in (300.0, 600.0):
    gamma = (1 - beta * cbar**3 / 12) / cbar
    Hd = PiecewisePolyDist([0, cbar], [np.array([gamma + beta * 0.09**2, -beta * cbar, beta])])
    print(f"  dip density  (beta={beta:3.0f}, {classify_density_shape(Hd)}): "
          f"a_max = {solve_a_max(F, Hd)[0]:.5f}")
for B in (500.0, 250.0):
    A = (1 - B * cbar**3 / 6) / cbar
    Hp = PiecewisePolyDist([0, cbar], [np.array([A, B * cbar, -B])])
    print(f"  peak density (B={B:3.0f}, {classify_density_shape(Hp)}): "
          f"a_max = {solve_a_max(F, Hp)[0]:.5f}")

print("\nmixing a lumpy distribution toward the uniform (threshold rises):")
H0 = PiecewisePolyDist([0, 0.05, 0.13, 0.18], [np.array([8.0]), np.array([1.0]), np.array([10.4])])
for lam in (0.0, 0.25, 0.5, 0.75, 1.0):
    Hmix = uniform_interpolate(H0, lam, 0.18)
    print(f"  weight on uniform {lam:4.2f}: a_max = {solve_a_max(F, Hmix)[0]:.5f}")

print("\nlimit walks:")
halving = [solve_a_max(F, PiecewisePolyDist.uniform(0, 0.18 / 2**k))[0] for k in range(9)]
print(f"  halving supports: {np.round(halving, 4).tolist()} -> full disclosure")
ramp = []
for k in range(2, 8):
    cut = 0.18 * (1 - 1 / k)
    Hr = PiecewisePolyDist([0, cut, 0.18],
                           [np.array([(1 / k) / cut]), np.array([(1 - 1 / k) / (0.18 - cut)])])
    ramp.append(solve_a_max(F, Hr)[0])
print(f"  concentrating at the top: {np.round(ramp, 4).tolist()} -> no disclosure")
