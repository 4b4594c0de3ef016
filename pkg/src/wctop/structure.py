"""Structure of ``T = M_w E M_u`` on L2: polar decomposition, spectrum, normality.

Every closed-form statement here comes with a dense-matrix oracle so the
two can be compared.  Adjoints, square roots and singular values are all
taken with respect to the weighted pairing (see :mod:`wctop._weighted`).
"""

from dataclasses import dataclass

import numpy as np

from . import _weighted
from .condexp import block_values
from .errors import NonRealComparison
from .operator import WctOperator, _require_p2, to_matrix

#: a block value at or below this counts as zero when deciding supports
SUPPORT_EPS = 1e-14


def _sq_moments(T):
    """Block values of ``E(|u|^2)`` and ``E(|w|^2)``."""
    P, sp = T.partition, T.space
    eu2 = block_values(np.abs(T.u) ** 2, P, sp).real
    ew2 = block_values(np.abs(T.w) ** 2, P, sp).real
    return eu2, ew2


@dataclass(frozen=True, eq=False)
class PolarPair:
    """``|T| = M_{u'} E M_u`` and ``U = M_{w'} E M_u``."""

    modulus: WctOperator
    isometry_part: WctOperator
    support_S: frozenset
    support_G: frozenset

    @property
    def u_prime(self):
        return self.modulus.w

    @property
    def w_prime(self):
        return self.isometry_part.w


def polar_decompose(T):
    """Polar decomposition of ``T`` in closed form.

    With ``S = S(E|u|^2)`` and ``G = S(E|w|^2)``::

        u' = sqrt(E|w|^2 / E|u|^2) conj(u)   on S, 0 elsewhere
        w' = w / sqrt(E|w|^2 E|u|^2)          on S & G, 0 elsewhere

    The ratios are only evaluated on the supports, so nothing is divided
    by zero.
    """
    _require_p2(T, "polar_decompose")
    eu2, ew2 = _sq_moments(T)
    in_S = eu2 > SUPPORT_EPS
    in_G = ew2 > SUPPORT_EPS
    both = in_S & in_G
    ratio = np.zeros_like(eu2)
    ratio[in_S] = np.sqrt(ew2[in_S] / eu2[in_S])
    scale = np.zeros_like(eu2)
    scale[both] = 1.0 / np.sqrt(ew2[both] * eu2[both])
    b = T.partition.block_of
    u_prime = ratio[b] * np.conj(T.u)
    w_prime = scale[b] * T.w
    return PolarPair(
        modulus=T.with_functions(w=u_prime),
        isometry_part=T.with_functions(w=w_prime),
        support_S=frozenset(np.flatnonzero(in_S[b]).tolist()),
        support_G=frozenset(np.flatnonzero(in_G[b]).tolist()),
    )


def polar_residuals(T, pair=None):
    """Frobenius residuals of the polar identities, all under the weighted pairing.

    Keys: ``product`` (``||U|T| - T|| / (1 + ||T||)``), ``square``
    (``|| |T|^2 - T*T || / (1 + ||T*T||)``), ``partial_isometry``
    (``||U U* U - U||``), ``modulus_oracle`` (max entry gap between the
    closed-form ``|T|`` and ``sqrt(T*T)`` by Hermitian eigendecomposition),
    ``modulus_min_eig`` (smallest eigenvalue of ``|T|``).
    """
    pair = polar_decompose(T) if pair is None else pair
    wts = T.space.weights
    M = to_matrix(T)
    A = to_matrix(pair.modulus)
    U = to_matrix(pair.isometry_part)
    TtT = M.adjoint() @ M
    fro = lambda m: _weighted.frobenius(m, wts)  # noqa: E731
    root = _weighted.sqrt_psd(TtT.entries, wts)
    return {
        "product": fro((U @ A).entries - M.entries) / (1.0 + M.frobenius()),
        "square": fro((A @ A).entries - TtT.entries) / (1.0 + TtT.frobenius()),
        "partial_isometry": fro((U @ U.adjoint() @ U).entries - U.entries),
        "modulus_oracle": float(np.max(np.abs(A.entries - root))),
        "modulus_min_eig": float(np.min(_weighted.hermitian_eigvals(A.entries, wts))),
    }


# ----------------------------------------------------------------------
# spectrum


def _dedupe(values, tol):
    out = []
    for z in values:
        if all(abs(z - y) > tol for y in out):
            out.append(z)
    return out


def _sort_complex(values):
    return sorted(values, key=lambda z: (round(z.real, 12), round(z.imag, 12)))


@dataclass
class SpectrumReport:
    predicted: list
    zero_in_spectrum: bool
    oracle_eigenvalues: list
    radius: float

    def nonzero_predicted(self, tol):
        return [z for z in self.predicted if abs(z) > tol]

    def nonzero_oracle(self, tol):
        return [z for z in self.oracle_eigenvalues if abs(z) > tol]

    def sets_agree(self, tol):
        """Nonzero predicted values and nonzero eigenvalues coincide as sets within ``tol``."""
        a, b = self.nonzero_predicted(tol), self.nonzero_oracle(tol)
        return all(min((abs(x - y) for y in b), default=np.inf) <= tol for x in a) and all(
            min((abs(x - y) for y in a), default=np.inf) <= tol for x in b
        )


def spectrum(T, tol=1e-9):
    """Spectrum of ``T``: the distinct block values of ``E(uw)``, plus 0 when it belongs.

    Membership of 0 is read off the matrix (smallest singular value below
    ``tol``) or forced by a non-singleton block, never predicted from
    ``E(uw)``.
    """
    _require_p2(T, "spectrum")
    vals = block_values(T.u * T.w, T.partition, T.space)
    predicted = _sort_complex(_dedupe([complex(z) for z in vals], tol))
    M = to_matrix(T)
    eig = np.linalg.eigvals(_weighted.symmetrize(M.entries, T.space.weights))
    smin = float(np.linalg.svd(_weighted.symmetrize(M.entries, T.space.weights), compute_uv=False)[-1])
    zero = smin < tol or not T.partition.is_discrete()
    radius = float(np.max(np.abs(eig)))
    return SpectrumReport(predicted, bool(zero), _sort_complex([complex(z) for z in eig]), radius)


def spectral_radius(T):
    """``max_B |E(uw)|``."""
    _require_p2(T, "spectral_radius")
    return float(np.max(np.abs(block_values(T.u * T.w, T.partition, T.space))))


# ----------------------------------------------------------------------
# normality


@dataclass
class NormalityReport:
    sufficient_holds: bool
    matrix_normal: bool
    necessary_identity_holds: bool
    commutator_norm: float


@dataclass
class HyponormalityReport:
    sufficient_holds: bool
    form_nonneg: bool
    necessary_inequality_holds: bool
    form_min_eig: float


def _normal_sides(T):
    """``u E(|w|^2)^(1/2)`` and ``conj(w) E(|u|^2)^(1/2)`` as functions on atoms."""
    eu2, ew2 = _sq_moments(T)
    b = T.partition.block_of
    return T.u * np.sqrt(ew2[b]), np.conj(T.w) * np.sqrt(eu2[b])


def _moment_sides(T):
    """Block values of ``E(|w|^2)|E(u)|^2`` and ``E(|u|^2)|E(w)|^2``."""
    eu2, ew2 = _sq_moments(T)
    eu = np.abs(block_values(T.u, T.partition, T.space)) ** 2
    ew = np.abs(block_values(T.w, T.partition, T.space)) ** 2
    return ew2 * eu, eu2 * ew


def _commutator(T):
    M = to_matrix(T)
    Ms = M.adjoint()
    return M, (Ms @ M).entries - (M @ Ms).entries


def normality_test(T, tol=1e-9):
    """Normality of ``T`` three ways.

    ``sufficient_holds``: ``u E(|w|^2)^(1/2) = conj(w) E(|u|^2)^(1/2)``
    within ``tol`` (sup norm).  ``matrix_normal``: ``||[T*, T]||_F <=
    tol ||T||_F``.  ``necessary_identity_holds``: per block
    ``E(|w|^2)|E(u)|^2 = E(|u|^2)|E(w)|^2`` within ``tol (1 + ||T||_F^2)``;
    that scale dominates every quadratic-form value of the commutator on a
    block indicator, so the chain sufficient => normal => identity is not
    broken by the choice of tolerances.
    """
    _require_p2(T, "normality_test")
    lhs, rhs = _normal_sides(T)
    sufficient = float(np.max(np.abs(lhs - rhs))) < tol
    M, C = _commutator(T)
    wts = T.space.weights
    cnorm = _weighted.frobenius(C, wts)
    mnorm = M.frobenius()
    a, b = _moment_sides(T)
    scale = 1.0 + mnorm**2
    return NormalityReport(
        sufficient_holds=bool(sufficient),
        matrix_normal=bool(cnorm <= tol * mnorm),
        necessary_identity_holds=bool(np.all(np.abs(a - b) <= tol * scale)),
        commutator_norm=cnorm,
    )


def hyponormality_test(T, tol=1e-9, check_sufficient=True):
    """Hyponormality of ``T``.

    ``form_nonneg``: the smallest eigenvalue of ``T*T - TT*`` is at least
    ``-tol (1 + ||T||_F^2)``.  ``necessary_inequality_holds``: per block
    ``E(|w|^2)|E(u)|^2 >= E(|u|^2)|E(w)|^2`` within the same slack.

    ``sufficient_holds`` is the pointwise comparison
    ``u E(|w|^2)^(1/2) >= w E(|u|^2)^(1/2)``, defined for real data only.
    It is reported, not trusted: for signed data it can hold while ``T``
    fails to be hyponormal (``u = (1, 1)``, ``w = (1, -1)`` on one
    two-atom block).  For nonnegative data it forces normality.

    Raises
    ------
    NonRealComparison
        If ``check_sufficient`` is set and ``u`` or ``w`` is not real.
    """
    _require_p2(T, "hyponormality_test")
    if check_sufficient:
        if np.any(T.u.imag != 0) or np.any(T.w.imag != 0):
            raise NonRealComparison("the pointwise order needs real u and w")
        lhs, rhs = _normal_sides(T)
        sufficient = bool(np.all(lhs.real >= rhs.real - tol))
    else:
        sufficient = False
    M, C = _commutator(T)
    wts = T.space.weights
    scale = 1.0 + M.frobenius() ** 2
    lam = float(np.min(_weighted.hermitian_eigvals(C, wts)))
    a, b = _moment_sides(T)
    return HyponormalityReport(
        sufficient_holds=sufficient,
        form_nonneg=bool(lam >= -tol * scale),
        necessary_inequality_holds=bool(np.all(a - b >= -tol * scale)),
        form_min_eig=lam,
    )
