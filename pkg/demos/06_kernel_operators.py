"""
Kernel integral operators as E M_v
==================================

On a product space conditioned on the first coordinate, E M_k with the
kernel k as multiplier acts like the integral operator with kernel k.
"""

import numpy as np

import wctop

rng = np.random.default_rng(3)
sp = wctop.build_space(np.full(4, 0.25))
k = rng.standard_normal((4, 4))
f = rng.standard_normal(4)

T = wctop.kernel_operator_bridge(k, sp)
via_bridge = wctop.marginal(T(wctop.lift_second(f, 4)), 4)
direct = wctop.kernel_apply(k, f, sp)
print("max gap:", np.max(np.abs(via_bridge - direct)))
