# Copyright 2026 The spencerkit Authors
# SPDX-License-Identifier: Apache-2.0
"""Which placements of the unit matrix E in S = I + x1*E make S^-1 J0 S
non-integrable. The (row 3, column 2) placement is integrable (and then
z2 + i*x1^2/2 is almost holomorphic), so twisted_r4 uses (row 2, column 3)."""
import sympy as sp

x = sp.symbols("x1:5", real=True)
J0 = sp.zeros(4)
J0[0, 1], J0[1, 0], J0[2, 3], J0[3, 2] = -1, 1, -1, 1


def nijenhuis(J, a, b):
    ja, jb = J[:, a], J[:, b]
    bracket = sp.Matrix([sum(ja[j] * sp.diff(jb[k], x[j]) - jb[j] * sp.diff(ja[k], x[j])
                             for j in range(4)) for k in range(4)])
    t2 = J * sp.Matrix([-sp.diff(ja[k], x[b]) for k in range(4)])
    t3 = J * sp.Matrix([sp.diff(jb[k], x[a]) for k in range(4)])
    return sp.expand(bracket - t2 - t3)


for r in range(4):
    for c in range(4):
        if r == c:
            continue
        E = sp.zeros(4)
        E[r, c] = 1
        S = sp.eye(4) + x[0] * E
        J = sp.expand(S.inv() * J0 * S)
        nonzero = any(nijenhuis(J, a, b) != sp.zeros(4, 1) for a in range(4) for b in range(a + 1, 4))
        print("E at (row %d, col %d):" % (r + 1, c + 1), "non-integrable" if nonzero else "integrable")

E = sp.zeros(4)
E[2, 1] = 1
J = sp.expand((sp.eye(4) + x[0] * E).inv() * J0 * (sp.eye(4) + x[0] * E))
g = x[2] + sp.I * x[3] + sp.I * x[0] ** 2 / 2
df = sp.Matrix([[sp.diff(g, v) for v in x]])
print("(3,2): J^T dg - i dg =", sp.simplify(df * J - sp.I * df))
