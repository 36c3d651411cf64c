# Copyright 2026 The spencerkit Authors
# SPDX-License-Identifier: Apache-2.0
"""Least-squares oracles for the standard structure on C (k = 7 grids).

1. Best approximation of conj(z) by polynomials in z of degree d on [-1,1]^2:
   the positive floor used by the factorization tests.
2. Cocycle residual of (z, z + z^2/10, 2z) by box half-width: the
   transition z + z^2/10 -> 2z is not polynomial, so only small boxes pass
   at 1e-8."""
import numpy as np


def grid(r, k):
    t = np.linspace(-r, r, k)
    return np.array([complex(a, b) for a in t for b in t])


def lsq(w, h, d):
    A = np.vander(w, d + 1, increasing=True)
    c, *_ = np.linalg.lstsq(A, h, rcond=None)
    return c, np.max(np.abs(A @ c - h))


z = grid(1.0, 7)
for d in range(7):
    print("conj(z) fit degree", d, "residual", repr(lsq(z, np.conj(z), d)[1]))

for r in (1.0, 0.5, 0.25, 0.1):
    z = grid(r, 7)
    for d in (4, 6):
        print("cocycle half-width", r, "degree", d, "residual", lsq(z + z ** 2 / 10, 2 * z, d)[1])
