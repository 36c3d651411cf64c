# Copyright 2026 The spencerkit Authors
# SPDX-License-Identifier: Apache-2.0
"""Symbolic oracle for the twisted_r4 structure J = S^-1 J0 S, S = I + x1*E,
E the unit matrix at (row 2, column 3). Prints J, the Nijenhuis tensor for
every axis pair, its max-norm over the k = 7 grid of [-0.5, 0.5]^4, and the
exact dimension of the almost holomorphic polynomial space by degree.

Frozen into tests/unit/test_jfield.cpp and test_crsolve.cpp."""
import itertools

import sympy as sp

x = sp.symbols("x1:5", real=True)
J0 = sp.zeros(4)
J0[0, 1], J0[1, 0], J0[2, 3], J0[3, 2] = -1, 1, -1, 1
E = sp.zeros(4)
E[1, 2] = 1
S = sp.eye(4) + x[0] * E
J = sp.expand(S.inv() * J0 * S)
print("J =", J.tolist())
assert sp.expand(J * J + sp.eye(4)) == sp.zeros(4)


def nijenhuis(a, b):
    ja, jb = J[:, a], J[:, b]
    bracket = sp.Matrix([sum(ja[j] * sp.diff(jb[k], x[j]) - jb[j] * sp.diff(ja[k], x[j])
                             for j in range(4)) for k in range(4)])
    t2 = J * sp.Matrix([-sp.diff(ja[k], x[b]) for k in range(4)])
    t3 = J * sp.Matrix([sp.diff(jb[k], x[a]) for k in range(4)])
    return sp.expand(bracket - t2 - t3)


N = {(a, b): nijenhuis(a, b) for a in range(4) for b in range(a + 1, 4)}
for key, value in N.items():
    print("N", key, list(value))

pts = [sp.Rational(-1, 2) + sp.Rational(i, 6) for i in range(7)]
worst = 0
for p in itertools.product(pts, repeat=4):
    sub = dict(zip(x, p))
    for v in N.values():
        worst = max(worst, max(abs(c.subs(sub)) for c in v))
print("nijenhuis grid max (k=7):", worst)

for deg in (1, 2, 3):
    mons = [m for d in range(1, deg + 1) for m in itertools.combinations_with_replacement(range(4), d)]
    cs = sp.symbols("c0:%d" % len(mons))
    f = sum(c * sp.Mul(*[x[i] for i in m]) for c, m in zip(cs, mons))
    df = sp.Matrix([[sp.diff(f, v) for v in x]])
    residual = sp.expand(df * J - sp.I * df)
    eqs = []
    for e in residual:
        eqs += sp.Poly(e, *x).coeffs()
    A = sp.Matrix([[sp.diff(e, c) for c in cs] for e in eqs])
    basis = A.nullspace()
    funcs = [sp.expand(sum(v[i] * sp.Mul(*[x[j] for j in mons[i]]) for i in range(len(mons))))
             for v in basis]
    print("degree", deg, "dimension", len(basis), funcs)
