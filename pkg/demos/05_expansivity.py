"""
k-isometries and k-expansive operators
======================================

E M_v on the symmetric grid with v = e^t fails to be 2-expansive, while a
unimodular multiplication operator is a k-isometry for every k.
"""

import numpy as np

import wctop

res = wctop.example_noncontractive_check(8)
print("(cosh^2 t - 1)^2 on the grid:", np.round(res["values"], 6))
print("2-expansive:", res["is_2_expansive"])

sp = wctop.build_space(np.full(5, 0.2))
v = np.exp(1j * np.linspace(0, 3, 5))
rep = wctop.multiplication_classify(v, sp)
print("unimodular v, k-isometry for k = 1..4:", [rep.is_k_isometry(k) for k in range(1, 5)])
print("consequences:", wctop.two_expansive_consequences(v, wctop.discrete_partition(sp), sp))

###############################################################################
# x^n is completely alternating only at x = 1.

for x in (0.5, 1.0, 1.5):
    print(x, wctop.completely_alternating_check(x).verdict)
