"""
Conditional expectation on a finite atomic space
================================================

Averages over the blocks of a partition, checked against the block
identity and the even-part formula on a symmetric grid.
"""

import numpy as np

import wctop

sp = wctop.build_space([0.1, 0.2, 0.3, 0.4])
P = wctop.build_partition(sp, [[0, 3], [1, 2]])
f = np.array([1.0, 2.0, 3.0, 4.0])
Ef = wctop.cond_expect(f, P, sp)
print("E(f) =", Ef.real)

# integrals over each block are preserved
for atoms in P.blocks:
    print(atoms, np.sum(f[atoms] * sp.weights[atoms]), np.sum(Ef[atoms] * sp.weights[atoms]).real)

###############################################################################
# On the symmetric grid E(f)(t) = (f(t) + f(-t)) / 2, so E(e^t) = cosh t.

sym, Psym, grid = wctop.symmetric_space(6)
E_exp = wctop.cond_expect(np.exp(sym.labels), Psym, sym).real
print("max |E(e^t) - cosh t| =", np.max(np.abs(E_exp - np.cosh(sym.labels))))
