"""Exact spectra across the boundary family, and the fingerprint reduction.

Energy levels come from transcendental conditions in k (positive sector)
and kappa (negative sector), plus a zero-mode existence test.  Everything
the spectrum depends on is the triple (xi, Re alpha, Im beta) plus L0: two
boundary points sharing that fingerprint are isospectral even though their
Hamiltonians differ.
"""

import numpy as np

from pointspec import (
    BoxGeometry,
    find_negative_roots,
    find_positive_roots,
    make_u2,
    spectral_fingerprint,
    spectrum,
)

g = BoxGeometry(l=1.0, hbar=1.0, mass=0.5)  # units: hbar = 2m = 1

print("Dirichlet ladder (n pi)^2:")
spec = spectrum(make_u2(0.0, -1.0, 0.0), g, 5)
print("  ", [f"{lv.energy / np.pi**2:.12f}" for lv in spec.levels], "x pi^2")

print("\nMixed walls (0, inf): half-integer ladder ((n + 1/2) pi)^2:")
spec = spectrum(make_u2(np.pi / 2, 1j, 0.0), g, 5)
print("  ", [f"{lv.energy / np.pi**2:.12f}" for lv in spec.levels], "x pi^2")

print("\nTwisted circle, twist theta: levels at ((theta + 2 n pi)/l)^2 for both signs:")
theta = 1.0
p = make_u2(np.pi / 2, 0.0, complex(-np.sin(theta), -np.cos(theta)))
roots = find_positive_roots(p, g, 20.0)
print("   k l =", [f"{k:.6f}" for k, _ in roots])
print("   vs  ", [f"{v:.6f}" for v in sorted(
    [theta, 2 * np.pi - theta, theta + 2 * np.pi, 4 * np.pi - theta, theta + 4 * np.pi, 6 * np.pi - theta])])

print("\nDegenerate pole Im(beta) = +1: every level doubly degenerate:")
p = make_u2(np.pi / 2, 0.0, 1j)
print("  ", [(f"{k / np.pi:.6f} pi", m) for k, m in find_positive_roots(p, g, 12.0)])

print("\nDeep symmetric well: two bound states pinching kappa = 1/L0:")
p = make_u2(np.pi / 2, 1.0, 0.0, 1.0)
g10 = BoxGeometry(l=10.0, hbar=1.0, mass=0.5)
for kappa, _ in find_negative_roots(p, g10):
    print(f"   kappa = {kappa:.10f}   E = {-kappa**2:.10f}")
print("   (for l >> L0 they approach the half-line bound state at E = -1)")

print("\nFingerprint reduction: same (xi, Re alpha, Im beta, L0), different rest:")
rng = np.random.default_rng(8)
xi, a_r, b_i = 0.9, 0.4, -0.35
r = np.sqrt(1 - a_r**2 - b_i**2)
for chi in rng.uniform(0, 2 * np.pi, size=2):
    p = make_u2(xi, complex(a_r, r * np.cos(chi)), complex(r * np.sin(chi), b_i))
    spec = spectrum(p, g, 4)
    print(f"   completion angle {chi:.3f}: fingerprint {spectral_fingerprint(p)}")
    print("      energies:", [f"{lv.energy:.12f}" for lv in spec.levels])

print("\nIsospectral sphere (xi = 0, Im beta = 0): positive ladder frozen at (n pi)^2,")
print("while the bound state still remembers Re(alpha):")
for a_r in (0.2, 0.6, 0.9):
    rest = np.sqrt(1 - a_r**2)
    p = make_u2(0.0, complex(a_r, rest * 0.6), complex(rest * 0.8, 0.0))
    pos = find_positive_roots(p, g, 12.0)
    neg = find_negative_roots(p, g)
    print(f"   Re(alpha) = {a_r}: k l / pi = {[f'{k/np.pi:.10f}' for k, _ in pos]},"
          f" bound kappa = {[f'{k:.6f}' for k, _ in neg]}")
