"""Shared samplers for randomized tests (all seeded by the caller)."""

import numpy as np

from pointspec import make_u2


def haar_point(rng, L0=None):
    """Roughly uniform boundary point: xi uniform, (alpha, beta) isotropic."""
    xi = float(rng.uniform(0.0, np.pi))
    v = rng.normal(size=4)
    n = float(np.sqrt(np.sum(v * v)))
    if L0 is None:
        L0 = float(np.exp(rng.uniform(-1.0, 1.0)))
    return make_u2(xi, complex(v[0], v[1]) / n, complex(v[2], v[3]) / n, L0)


def separated_point(rng, L0=None):
    """Random diagonal-U point (beta = 0)."""
    xi = float(rng.uniform(0.0, np.pi))
    phi = float(rng.uniform(0.0, 2.0 * np.pi))
    if L0 is None:
        L0 = float(np.exp(rng.uniform(-1.0, 1.0)))
    return make_u2(xi, complex(np.cos(phi), np.sin(phi)), 0.0, L0)


def scale_invariant_point(rng, L0=1.0, beta_im_margin=0.0):
    """Random point of the scale-invariant sphere, optionally away from the poles."""
    while True:
        w = rng.normal(size=3)
        w = w / np.sqrt(np.sum(w * w))
        if abs(w[2]) <= 1.0 - beta_im_margin:
            break
    return make_u2(np.pi / 2, complex(0.0, w[0]), complex(w[1], w[2]), L0)


def fingerprint_pair(rng, L0=1.0):
    """Two points sharing (xi, Re alpha, Im beta, L0) with different completions."""
    while True:
        a_r = float(rng.uniform(-1.0, 1.0))
        b_i = float(rng.uniform(-1.0, 1.0))
        r2 = 1.0 - a_r * a_r - b_i * b_i
        if r2 > 1e-4:
            break
    xi = float(rng.uniform(0.0, np.pi))
    r = np.sqrt(r2)
    chi1, chi2 = rng.uniform(0.0, 2.0 * np.pi, size=2)
    p1 = make_u2(xi, complex(a_r, r * np.cos(chi1)), complex(r * np.sin(chi1), b_i), L0)
    p2 = make_u2(xi, complex(a_r, r * np.cos(chi2)), complex(r * np.sin(chi2), b_i), L0)
    return p1, p2
