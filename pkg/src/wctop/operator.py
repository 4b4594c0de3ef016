"""Weighted conditional type operators ``T = M_w E M_u``, ``Tf = w E(u f)``.

On a single finite space every such operator is bounded and everywhere
defined, so the domain questions are posed either on one large space
(huge values of ``J - 1`` standing in for infinity) or along a
:class:`~wctop.measure.TruncationLadder`.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import _weighted
from .condexp import block_integrals, block_values, cond_expect
from .errors import (
    InvalidExponent,
    LadderTooShort,
    NoSuchN,
    NotConvergent,
    SpaceMismatch,
)
from .measure import as_function, check_partition, lp_norm


def conjugate_exponent(p):
    if p == 1:
        return math.inf
    return p / (p - 1.0)


@dataclass(frozen=True, eq=False)
class WctOperator:
    """``M_w E M_u`` on ``L^p(space)``; ``E`` is conditional expectation onto ``partition``."""

    u: np.ndarray
    w: np.ndarray
    partition: object
    space: object
    p: float = 2.0

    def __post_init__(self):
        if not self.p >= 1:
            raise InvalidExponent(f"p must be >= 1, got {self.p!r}")
        check_partition(self.partition, self.space)
        object.__setattr__(self, "u", as_function(self.u, self.space))
        object.__setattr__(self, "w", as_function(self.w, self.space))
        object.__setattr__(self, "p", float(self.p))

    @property
    def q(self):
        return conjugate_exponent(self.p)

    def E(self, f):
        return cond_expect(f, self.partition, self.space)

    def __call__(self, f):
        return apply_wct(self, f)

    def with_functions(self, u=None, w=None, p=None):
        return WctOperator(
            self.u if u is None else u,
            self.w if w is None else w,
            self.partition,
            self.space,
            self.p if p is None else p,
        )


def apply_wct(T, f):
    """``w * E(u * f)``."""
    f = np.asarray(f, dtype=complex)
    if f.shape != (T.space.n,):
        raise SpaceMismatch(f"function has shape {f.shape}, operator acts on {T.space.n} atoms")
    return T.w * T.E(T.u * f)


def _require_hilbert_exponent(T, name):
    if T.p == 1:
        raise InvalidExponent(f"{name} needs p > 1 (q = inf is not supported)")


def _require_p2(T, name):
    if T.p != 2:
        raise InvalidExponent(f"{name} needs p = 2, got p = {T.p!r}")


# ----------------------------------------------------------------------
# domain


def j_minus_one_blocks(T):
    """Block values of ``E(|w|^p) E(|u|^q)^(p/q)``.

    For ``p = 1`` the second factor is ``ess sup_B |u|`` raised to 1,
    the ``q -> inf`` limit of ``E(|u|^q)^(1/q)``.
    """
    P, sp = T.partition, T.space
    ew = block_values(np.abs(T.w) ** T.p, P, sp).real
    if T.p == 1:
        eu = np.array([np.max(np.abs(T.u[b])) for b in P.blocks])
    else:
        eu = block_values(np.abs(T.u) ** T.q, P, sp).real ** (T.p / T.q)
    with np.errstate(invalid="ignore"):
        out = ew * eu
    # 0 * inf is taken as 0: w vanishing on a block kills the block
    return np.where(ew == 0, 0.0, out)


def j_minus_one(T):
    """``J - 1`` as a function on atoms."""
    return j_minus_one_blocks(T)[T.partition.block_of]


@dataclass
class DomainVerdict:
    """Outcome of a density-of-domain analysis.

    ``aggregates`` holds, per level, the per-block partial integrals
    ``int_B |u|^q``, ``int_B |w|^p``, the block masses and the
    ``mu_{J-1}`` block masses, so callers can re-judge the heuristics.
    """

    J_minus_1: np.ndarray
    finite_ae: bool
    sigma_finite_restriction: bool
    stabilized: bool
    status: str = "densely-defined"
    diverging_blocks: list = field(default_factory=list)
    aggregates: list = field(default_factory=list)

    @property
    def densely_defined(self):
        return self.finite_ae and self.sigma_finite_restriction


def domain_verdict(T):
    """Single-space verdict: finite data means dense (indeed full) domain."""
    j = j_minus_one(T)
    finite = bool(np.all(np.isfinite(j)))
    return DomainVerdict(
        J_minus_1=j,
        finite_ae=finite,
        sigma_finite_restriction=finite,
        stabilized=True,
        status="densely-defined" if finite else "not-densely-defined",
        diverging_blocks=[] if finite else sorted(
            {int(b) for b in T.partition.block_of[~np.isfinite(j)]}
        ),
    )


def _level_aggregates(space, partition, u, w, p):
    q = conjugate_exponent(p)
    u = as_function(u, space)
    w = as_function(w, space)
    with np.errstate(over="ignore"):
        iu = block_integrals(np.abs(u) ** q, partition, space).real
        iw = block_integrals(np.abs(w) ** p, partition, space).real
    mass = partition.block_masses(space)
    with np.errstate(over="ignore", invalid="ignore"):
        jm1 = (iw / mass) * (iu / mass) ** (p / q)
        jm1 = np.where(iw == 0, 0.0, jm1)
        mu_j = jm1 * mass
    return {"int_u_q": iu, "int_w_p": iw, "mass": mass, "J_minus_1": jm1, "mu_J_minus_1": mu_j}


def _rel_change(a, b):
    scale = np.maximum(np.abs(a), np.abs(b))
    with np.errstate(invalid="ignore"):
        return np.where(scale == 0, 0.0, np.abs(b - a) / scale)


def densely_defined_check(
    ladder, p=2.0, u="u", w="w", growth_cap=1e12, window=5, rel_tol=1e-8
):
    """Judge finiteness of ``J - 1`` along a truncation ladder.

    The per-block partial integrals of ``|u|^q`` and ``|w|^p`` only grow
    with the level.  A block *diverges* when either integral has passed
    ``growth_cap`` and is still growing at the last level; it has
    *stabilized* when both integrals and its ``mu_{J-1}`` mass moved by
    less than ``rel_tol`` (relative) over each of the last ``window``
    steps.  Only blocks present in the last ``window + 1`` levels are
    judged.

    ``u`` and ``w`` name the ladder functions to use.  The verdict's
    ``status`` is ``"undecided"`` when some block neither diverged nor
    stabilized.
    """
    if p <= 1:
        raise InvalidExponent("the ladder criterion needs 1 < p < inf")
    if len(ladder) < window + 1:
        raise LadderTooShort(f"need at least {window + 1} levels, ladder has {len(ladder)}")
    aggs = [
        _level_aggregates(lv.space, lv.partition, lv.functions[u], lv.functions[w], p)
        for lv in ladder.levels
    ]
    tail = aggs[-(window + 1):]
    nb = min(a["mass"].size for a in tail)

    def series(key):
        return np.array([a[key][:nb] for a in tail])

    iu, iw, muj = series("int_u_q"), series("int_w_p"), series("mu_J_minus_1")
    growing = (iu[-1] > iu[-2]) | (iw[-1] > iw[-2])
    big = (iu[-1] > growth_cap) | (iw[-1] > growth_cap) | ~np.isfinite(iu[-1]) | ~np.isfinite(iw[-1])
    diverging = big & (growing | ~np.isfinite(iu[-1]) | ~np.isfinite(iw[-1]))

    def settled(s):
        steps = np.array([_rel_change(s[i], s[i + 1]) for i in range(window)])
        return np.all(np.isfinite(s), axis=0) & np.all(steps < rel_tol, axis=0)

    agg_settled = settled(iu) & settled(iw)
    mass_settled = settled(muj)
    finite_ae = bool(not diverging.any() and agg_settled.all())
    sigma = bool(not diverging.any() and mass_settled.all())
    if diverging.any():
        status = "not-densely-defined"
    elif finite_ae and sigma:
        status = "densely-defined"
    else:
        status = "undecided"
    last = ladder.levels[-1]
    jm1 = aggs[-1]["J_minus_1"][last.partition.block_of]
    return DomainVerdict(
        J_minus_1=jm1,
        finite_ae=finite_ae,
        sigma_finite_restriction=sigma,
        stabilized=bool(agg_settled.all() and mass_settled.all()),
        status=status,
        diverging_blocks=np.flatnonzero(diverging).tolist(),
        aggregates=aggs,
    )


@dataclass
class ApproximantCertificate:
    N: int
    distance_p: float  # ||g - f||_p^p
    image_norm_p: float  # int |w E(u g)|^p
    bound: float  # (N - 1) int_{C_N} |f|^p
    holds: bool


def domain_approximant(T, f, eps):
    """Cut ``f`` down to ``g = f * chi_{C_N}`` with ``C_N = {J - 1 < N - 1}``.

    ``N`` is the smallest positive integer with ``||g - f||_p^p < eps``.
    The certificate records the domain bound
    ``int |w E(u g)|^p <= (N - 1) int_{C_N} |f|^p``, both sides summed
    directly.

    Returns
    -------
    g, N, certificate
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    f = as_function(f, T.space)
    j = j_minus_one(T)
    mass = np.abs(f) ** T.p * T.space.weights
    # the tail int_{J-1 >= t} |f|^p only drops when t passes floor(j) + 1
    finite = np.isfinite(j)
    cands = np.unique(np.concatenate([[0.0], np.floor(j[finite]) + 1.0]))
    N = None
    for t in cands:
        tail = np.sum(mass[~(j < t)])
        if tail < eps:
            N = int(t) + 1
            break
    if N is None:
        raise NoSuchN(
            f"no cut-off reaches eps={eps!r}: remaining mass on J = inf is {np.sum(mass[~finite])!r}"
        )
    inside = j < N - 1
    g = np.where(inside, f, 0.0)
    dist = float(np.sum(np.abs(g - f) ** T.p * T.space.weights))
    img = float(np.sum(np.abs(apply_wct(T, g)) ** T.p * T.space.weights))
    bound = float((N - 1) * np.sum(mass[inside]))
    holds = img <= bound + 1e-12 * (1.0 + bound)
    return g, N, ApproximantCertificate(N, dist, img, bound, bool(holds))


# ----------------------------------------------------------------------
# adjoint, matrices, norms


def adjoint(T):
    """``T* = M_{conj u} E M_{conj w}`` acting on ``L^q``."""
    _require_hilbert_exponent(T, "adjoint")
    return WctOperator(np.conj(T.w), np.conj(T.u), T.partition, T.space, T.q)


def pairing(f, g, space):
    """``int f conj(g) dmu``: the L^p-L^q duality (and the L2 inner product)."""
    return complex(np.sum(f * np.conj(g) * space.weights))


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Matrix of an operator in the atom basis, with the weights it is paired against."""

    entries: np.ndarray
    weights: np.ndarray

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            return OperatorMatrix(self.entries @ other.entries, self.weights)
        return self.entries @ other

    def adjoint(self):
        return OperatorMatrix(_weighted.adjoint(self.entries, self.weights), self.weights)

    def norm(self):
        return _weighted.opnorm(self.entries, self.weights)

    def frobenius(self):
        return _weighted.frobenius(self.entries, self.weights)


def to_matrix(T):
    """Column ``j`` is ``T`` applied to the indicator of atom ``j``."""
    _require_p2(T, "to_matrix")
    n = T.space.n
    cols = [apply_wct(T, np.eye(1, n, j, dtype=complex)[0]) for j in range(n)]
    return OperatorMatrix(np.column_stack(cols), T.space.weights)


def norm_bound(T):
    """``max_B E(|w|^p)^(1/p) E(|u|^q)^(1/q)``, an upper bound for ``||T||``."""
    _require_hilbert_exponent(T, "norm_bound")
    P, sp = T.partition, T.space
    ew = block_values(np.abs(T.w) ** T.p, P, sp).real ** (1.0 / T.p)
    eu = block_values(np.abs(T.u) ** T.q, P, sp).real ** (1.0 / T.q)
    return float(np.max(ew * eu))


# ----------------------------------------------------------------------
# closedness


@dataclass
class ClosednessReport:
    limit: np.ndarray
    image_limit: np.ndarray
    residual: float
    closed: bool


def closedness_witness(T, sequence, limit=None, tol=1e-9):
    """Check the graph identity ``T(lim f_n) = lim T f_n`` on a finite sequence.

    The sequence counts as convergent when its last two terms, and their
    images, are within ``tol`` in ``L^p``.  ``limit`` defaults to the last
    term.
    """
    fs = [as_function(f, T.space) for f in sequence]
    if len(fs) < 2:
        raise NotConvergent("need at least two terms")
    images = [apply_wct(T, f) for f in fs]
    if lp_norm(fs[-1] - fs[-2], T.p, T.space) > tol:
        raise NotConvergent("the sequence is not Cauchy within tolerance")
    if lp_norm(images[-1] - images[-2], T.p, T.space) > tol:
        raise NotConvergent("the image sequence is not Cauchy within tolerance")
    f = fs[-1] if limit is None else as_function(limit, T.space)
    if lp_norm(f - fs[-1], T.p, T.space) > tol:
        raise NotConvergent("the given limit is not within tolerance of the sequence")
    g = images[-1]
    residual = lp_norm(apply_wct(T, f) - g, T.p, T.space)
    # the image sequence itself is only known to within tol
    return ClosednessReport(f, g, residual, bool(residual <= tol * (1.0 + _lipschitz(T))))


def _lipschitz(T):
    return norm_bound(T) if T.p > 1 else float(np.max(np.abs(T.u)) * np.max(np.abs(T.w)))
