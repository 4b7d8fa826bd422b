"""Half-space boundary layer: density profile and its integrals.

The local spectral density at scaled distance t from a Dirichlet wall
vanishes at t = 0, overshoots, and settles at the bulk value L_d. The
integrated deficit against the bulk recovers the boundary coefficient
(1/4) L_{d-1}; the t-weighted absolute correction stays integrable.
"""

from pathlib import Path

import numpy as np

from weylkit import (
    boundary_coefficient,
    boundary_partial_sums,
    constants,
    density_profile,
    profile_to_csv,
    tail_bound_check,
)

OUT = Path("demo_out")
OUT.mkdir(exist_ok=True)

d = 2
bulk = constants(d).L_d
print(f"bulk density L_{d} = {bulk:.8f}")
print(f"\n{'t':>8} {'rho(t)':>12} {'rho/L_d':>9}")
for t in (0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 20.0, 100.0):
    rho = density_profile(d, t)
    print(f"{t:8.2f} {rho:12.8f} {rho / bulk:9.4f}")

print("\nboundary coefficient (integrated deficit) vs (1/4) L_{d-1}:")
for dd in (2, 3):
    val = boundary_coefficient(dd, 200.0)
    tgt = 0.25 * constants(dd - 1).L_d
    print(f"  d={dd}: {val:.10f} vs {tgt:.10f} (dev {abs(val - tgt):.2e})")

ts, partial = boundary_partial_sums(2, 25.0)
print("\npartial integrals bracket the limit (alternating signs):")
print("  " + "  ".join(f"{p:+.6f}" for p in partial[:6]))

print("\nt-weighted absolute correction, extrapolated:")
for horizon in (100.0, 400.0):
    print(f"  horizon {horizon:5.0f}: {tail_bound_check(2, horizon):.6f}")

profile_to_csv(d, np.linspace(0.0, 30.0, 301), OUT / "halfspace_profile.csv")
print(f"\nwrote {OUT/'halfspace_profile.csv'} (columns t,rho,bulk)")
