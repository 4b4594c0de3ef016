"""
Normal and hyponormal operators
===============================

The pointwise comparison u E(|w|^2)^(1/2) >= w E(|u|^2)^(1/2) does not
give hyponormality once the data change sign.
"""

import numpy as np

import wctop

sp = wctop.build_space([0.5, 0.5])
P = wctop.build_partition(sp, [[0, 1]])

T = wctop.WctOperator([1.0, 1.0], [1.0, -1.0], P, sp)
h = wctop.hyponormality_test(T)
print("pointwise comparison holds:", h.sufficient_holds)
print("smallest eigenvalue of T*T - TT*:", h.form_min_eig)

# w = c conj(u) with c > 0 constant on blocks is normal
u = np.array([1 + 1j, 2 - 1j])
N = wctop.normality_test(wctop.WctOperator(u, 3 * np.conj(u), P, sp))
print("normal:", N.matrix_normal, "commutator norm:", N.commutator_norm)
