"""
Polar decomposition and spectrum
================================

Closed-form polar factors and spectrum, next to
their dense-matrix counterparts.
"""

import numpy as np

import wctop

sp, P = wctop.geometric_nat_space(0.5, 60)
fns = wctop.geometric_functions(sp)
T = wctop.WctOperator(fns["u"], fns["w"], P, sp)

res = wctop.polar_residuals(T)
for k, v in res.items():
    print(f"{k:18s} {v:.2e}")

rep = wctop.spectrum(T)
a1, a2 = wctop.alpha_coefficients(fns["u"] * fns["w"], sp)
print("predicted nonzero spectrum:", [round(z.real, 10) for z in rep.nonzero_predicted(1e-9)])
print("series values             :", round(a1.real, 10), round(a2.real, 10))
print("radius (matrix, formula)  :", rep.radius, wctop.spectral_radius(T))
