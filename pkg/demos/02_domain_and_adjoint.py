"""
Domain, adjoint and norm of M_w E M_u
=====================================

On a finite space the operator is bounded; the domain questions are asked
along a ladder of truncations of the geometric space instead.
"""

import numpy as np

import wctop

rng = np.random.default_rng(0)
sp = wctop.build_space(rng.uniform(0.1, 1.0, 6))
P = wctop.build_partition(sp, [[0, 1, 2], [3, 4], [5]])
u = rng.standard_normal(6) + 1j * rng.standard_normal(6)
w = rng.standard_normal(6) + 1j * rng.standard_normal(6)
T = wctop.WctOperator(u, w, P, sp)

M = wctop.to_matrix(T)
print("||T||                =", M.norm())
print("sqrt(max E|w|^2E|u|^2) =", wctop.norm_bound(T))

f, g = rng.standard_normal(6), rng.standard_normal(6)
Ts = wctop.adjoint(T)
print("<Tf, g> - <f, T*g>   =", wctop.pairing(T(f), g, sp) - wctop.pairing(f, Ts(g), sp))

###############################################################################
# Ladders: a bounded weight stabilizes, u = 2^t blows up on both blocks.

sizes = list(range(10, 110, 10))
good = wctop.geometric_ladder(0.5, sizes, {"u": lambda t: np.cos(t) + 2, "w": lambda t: 1 / t})
bad = wctop.geometric_ladder(0.5, sizes, {"u": lambda t: 2.0**t, "w": lambda t: np.ones_like(t)})
print("bounded  :", wctop.densely_defined_check(good).status)
print("divergent:", wctop.densely_defined_check(bad).status)

###############################################################################
# Cutting f down to the set where J - 1 is small.

sp4 = wctop.build_space([1, 1, 1, 1])
P4 = wctop.build_partition(sp4, [[0, 1], [2], [3]])
T = wctop.WctOperator([1e8, 1e8, 1.0, 2.0], 1, P4, sp4)
g, N, cert = wctop.domain_approximant(T, [0.01, 0.01, 1.0, 1.0], eps=0.01)
print("N =", N, "g =", g.real, "bound holds:", cert.holds)
