"""Worked example families.

* ``symmetric``: midpoint grid on [-1, 1] with mu = dx/2, conditioned on the
  reflection-invariant sets, so that E(f)(t) = (f(t) + f(-t)) / 2.
* ``geometric``: the naturals with mu({t}) = p q^(t-1), conditioned on
  {multiples of 3} and its complement (truncated at N).
* ``product``: a product of two spaces conditioned on the first coordinate;
  kernel integral operators embed here as ``E M_v``.
"""

import math

import numpy as np

from .condexp import cond_expect
from .errors import DimensionMismatch, WrongGalleryFamily
from .expansivity import classify, poly_A
from .measure import (
    TruncationLadder,
    as_function,
    build_partition,
    build_space,
)
from .operator import WctOperator


def symmetric_space(n_pairs):
    """Grid ``+-t_k``, ``t_k = (k - 1/2) / n_pairs``, each atom of weight ``1 / (2 n_pairs)``.

    Atom ``k - 1`` sits at ``-t_k`` and atom ``n_pairs + k - 1`` at ``+t_k``;
    the partition pairs them.  Returns ``(space, partition, grid)`` with
    ``grid`` the positive ``t_k``.
    """
    if n_pairs < 1:
        raise ValueError("n_pairs must be at least 1")
    grid = (np.arange(1, n_pairs + 1) - 0.5) / n_pairs
    labels = np.concatenate([-grid, grid])
    weights = np.full(2 * n_pairs, 0.5 / n_pairs)
    space = build_space(weights, labels, family="symmetric", params=(n_pairs,))
    partition = build_partition(space, [[k, n_pairs + k] for k in range(n_pairs)])
    return space, partition, grid


def geometric_nat_space(p_param, N):
    """Atoms ``t = 1..N`` (ids ``0..N-1``) with weights ``p q^(t-1)``.

    Block 0 is the multiples of 3, block 1 the rest.  Total mass is
    ``1 - q^N``.
    """
    if not 0 < p_param < 1:
        raise ValueError("p must lie in (0, 1)")
    if N < 3:
        raise ValueError("N must be at least 3 so both blocks are non-empty")
    t = np.arange(1, N + 1)
    q = 1.0 - p_param
    space = build_space(p_param * q ** (t - 1.0), t, family="geometric", params=(p_param, N))
    partition = build_partition(space, [np.flatnonzero(t % 3 == 0), np.flatnonzero(t % 3 != 0)])
    return space, partition


def geometric_ladder(p_param, sizes, functions=None):
    """Truncation ladder of geometric spaces; ``functions`` maps names to callables of ``t``."""
    functions = functions or {}

    def build(N):
        space, part = geometric_nat_space(p_param, N)
        return space, part, {k: as_function(fn(space.labels.astype(float)), space) for k, fn in functions.items()}

    return TruncationLadder.from_builder(build, sizes)


def alpha_coefficients(f, space):
    """The two block averages on a geometric space, from the series.

    Computed from the weights ``p q^(t-1)`` afresh (not from the space's
    stored weights) with exact float summation::

        alpha1 = sum_{3 | t} f(t) p q^(t-1) / sum_{3 | t} p q^(t-1)
        alpha2 = (sum_t f(t) p q^(t-1) - sum_{3|t} ...) / (sum_t p q^(t-1) - sum_{3|t} ...)
    """
    if space.family != "geometric":
        raise WrongGalleryFamily(f"expected a geometric space, got {space.family or 'a plain space'!r}")
    p, N = space.params
    q = 1.0 - p
    f = as_function(f, space)
    t = np.arange(1, N + 1)
    mu = [p * q ** (int(s) - 1) for s in t]
    three = [i for i, s in enumerate(t) if s % 3 == 0]

    def csum(xs):
        xs = list(xs)
        return complex(math.fsum(z.real for z in xs), math.fsum(z.imag for z in xs))

    num1 = csum(f[i] * mu[i] for i in three)
    den1 = math.fsum(mu[i] for i in three)
    num_all = csum(f[i] * mu[i] for i in range(N))
    den_all = math.fsum(mu)
    return num1 / den1, (num_all - num1) / (den_all - den1)


def product_space(space1, space2):
    """Product space with the partition ``{a1} x Omega2``.

    Atom ``(a1, a2)`` has id ``a1 * n2 + a2`` and weight ``mu1(a1) mu2(a2)``.
    """
    n1, n2 = space1.n, space2.n
    weights = np.outer(space1.weights, space2.weights).ravel()
    labels = np.arange(n1 * n2)
    space = build_space(weights, labels, family="product", params=(n1, n2))
    partition = build_partition(space, [range(a * n2, (a + 1) * n2) for a in range(n1)])
    return space, partition


def lift_second(f, n1):
    """``f'(t, s) = f(s)`` on the product of an ``n1``-atom space with ``f``'s space."""
    return np.tile(np.asarray(f, dtype=complex), n1)


def marginal(F, n1):
    """Restrict an A-measurable product function to the first coordinate."""
    return np.asarray(F).reshape(n1, -1)[:, 0]


def kernel_operator_bridge(kernel, space):
    """Realize ``Tf(t) = sum_s k(t, s) f(s) mu(s)`` as ``E M_v`` with ``v = k``.

    ``space`` should be a probability space, otherwise ``E M_v`` is ``T``
    divided by the total mass.
    """
    k = np.asarray(kernel, dtype=complex)
    if k.shape != (space.n, space.n):
        raise DimensionMismatch(f"kernel has shape {k.shape}, space has {space.n} atoms")
    pspace, partition = product_space(space, space)
    return WctOperator(k.ravel(), 1.0, partition, pspace, 2.0)


def kernel_apply(kernel, f, space):
    """Direct kernel sum ``sum_s k(t, s) f(s) mu(s)``."""
    return np.asarray(kernel, dtype=complex) @ (np.asarray(f, dtype=complex) * space.weights)


def example_noncontractive_check(n_pairs, tol=1e-9):
    """``E M_v`` with ``v = e^t`` on the symmetric grid is not 2-expansive.

    Evaluates ``1 - 2 cosh^2 t + cosh^4 t = (cosh^2 t - 1)^2`` per grid pair
    and confirms the verdict with the eigenvalue classifier.
    """
    space, part, grid = symmetric_space(n_pairs)
    v = np.exp(space.labels)
    ev = cond_expect(v, part, space).real[n_pairs:]
    values = poly_A(2, ev**2, 0)
    closed = (np.cosh(grid) ** 2 - 1) ** 2
    report = classify(v, part, space, k_max=2, horizon=2, tol=tol)
    return {
        "grid": grid,
        "values": values,
        "closed_form_gap": float(np.max(np.abs(values - closed))),
        "nonnegative": bool(np.all(values >= -tol)),
        "strictly_positive_somewhere": bool(np.any(values > tol)),
        "is_2_expansive": report.is_k_expansive(2),
    }


def symmetric_functions(space):
    """Default data on the symmetric grid: ``u = v = e^t``, ``w = 1``."""
    e = np.exp(space.labels)
    return {"u": e, "w": np.ones(space.n), "v": e}


def geometric_functions(space):
    """Default data on the geometric space: ``u = 1/t``, ``w = t/(t+1)``."""
    t = space.labels.astype(float)
    return {"u": 1.0 / t, "w": t / (t + 1.0)}
