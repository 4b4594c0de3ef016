"""Dense linear algebra under the weighted pairing <f, g> = sum f conj(g) mu.

With ``D = diag(mu)`` the map ``f -> D^(1/2) f`` is a unitary from
``L2(mu)`` onto plain ``C^n``, so a matrix ``M`` acting on coordinates is
handled through its symmetrized form ``D^(1/2) M D^(-1/2)``.
"""

import numpy as np


def symmetrize(m, weights):
    s = np.sqrt(weights)
    return s[:, None] * m / s[None, :]


def desymmetrize(a, weights):
    s = np.sqrt(weights)
    return a * s[None, :] / s[:, None]


def adjoint(m, weights):
    """``D^-1 M^H D``, the adjoint of ``M`` for the weighted pairing."""
    return np.conj(m.T) * weights[None, :] / weights[:, None]


def opnorm(m, weights):
    """Operator norm on L2(mu) via the largest singular value."""
    return float(np.linalg.norm(symmetrize(m, weights), 2))


def frobenius(m, weights):
    return float(np.linalg.norm(symmetrize(m, weights)))


def hermitian_eigvals(m, weights):
    """Eigenvalues of a weighted-selfadjoint ``m`` (hermitian part taken to kill rounding)."""
    a = symmetrize(m, weights)
    return np.linalg.eigvalsh(0.5 * (a + np.conj(a.T)))


def sqrt_psd(m, weights):
    """Principal square root of a weighted-positive ``m`` by eigendecomposition."""
    a = symmetrize(m, weights)
    a = 0.5 * (a + np.conj(a.T))
    lam, vec = np.linalg.eigh(a)
    # eigenvalues at roundoff level are zeros; their square roots would be ~1e-8 noise
    floor = a.shape[0] * np.finfo(float).eps * max(float(np.max(np.abs(lam))), np.finfo(float).tiny)
    lam = np.where(lam > floor, lam, 0.0)
    root = (vec * np.sqrt(lam)) @ np.conj(vec.T)
    return desymmetrize(root, weights)
