"""Semiclassical constants and their quadrature cross-check.

For each dimension the closed forms

    omega_d = pi^{d/2} / Gamma(d/2 + 1)
    C_d     = omega_d / (2 pi)^d
    L_d     = 2/(d+2) C_d

are compared against radial quadrature of the phase-space integrals of
(|p|^2 - 1)_-^0 and (|p|^2 - 1)_-.
"""

from weylkit import constants, phase_space_integral

TWO_PI = 2.0 * 3.141592653589793

print(f"{'d':>2} {'omega_d':>12} {'C_d':>12} {'L_d':>12} {'|C dev|':>9} {'|L dev|':>9}")
for d in range(1, 7):
    c = constants(d)
    c_quad = phase_space_integral(d, 0) / TWO_PI**d
    l_quad = phase_space_integral(d, 1) / TWO_PI**d
    print(
        f"{d:>2} {c.omega_d:12.8f} {c.C_d:12.8f} {c.L_d:12.8f} "
        f"{abs(c.C_d - c_quad):9.1e} {abs(c.L_d - l_quad):9.1e}"
    )

print("\nRatios L_d / C_d (exactly 2/(d+2)):")
print("  " + "  ".join(f"d={d}: {constants(d).L_d / constants(d).C_d:.6f}" for d in range(1, 7)))
