"""Conditional expectation onto a partition.

On an atomic space ``E(f)`` is the weighted block average

    E(f)|_B = sum_{a in B} f(a) mu(a) / mu(B),

so the defining identity ``int_B f = int_B E(f)`` holds block by block.
"""

import numpy as np

from .errors import EmptySpace, ExponentMismatch, InvalidExponent, NegativeDensity
from .measure import AtomicMeasureSpace, as_function, check_partition


def block_integrals(f, partition, space):
    """``int_B f dmu`` for every block, as an array indexed by block id."""
    fm = f * space.weights
    # np.sum is pairwise on contiguous slices, keeping per-block error ~1e-16
    return np.array([np.sum(fm[atoms]) for atoms in partition.blocks])


def block_values(f, partition, space):
    """The constant value of ``E(f)`` on each block."""
    check_partition(partition, space)
    f = as_function(f, space)
    return block_integrals(f, partition, space) / partition.block_masses(space)


def cond_expect(f, partition, space):
    """Conditional expectation of ``f`` with respect to ``partition``."""
    return block_values(f, partition, space)[partition.block_of]


def expectation_matrix(partition, space):
    """Matrix of E in the atom basis: ``E[a, b] = mu(b) / mu(B)`` when a, b share block B."""
    check_partition(partition, space)
    masses = partition.block_masses(space)[partition.block_of]
    same = partition.block_of[:, None] == partition.block_of[None, :]
    return np.where(same, space.weights[None, :] / masses[:, None], 0.0)


def conditional_holder_slack(f, g, p, q, partition, space):
    """Pointwise slack ``E(|f|^p)^(1/p) E(|g|^q)^(1/q) - |E(fg)|`` of conditional Hoelder.

    Nonnegative up to rounding for conjugate ``p``, ``q``; negative values
    beyond ``-1e-10`` are genuine violations and are returned unclamped.
    """
    if not (p > 1 and q > 1):
        raise InvalidExponent(f"need p, q > 1, got {p!r}, {q!r}")
    if abs(1.0 / p + 1.0 / q - 1.0) > 1e-12:
        raise ExponentMismatch(f"1/p + 1/q = {1.0 / p + 1.0 / q!r}, not 1")
    f = as_function(f, space)
    g = as_function(g, space)
    lhs = cond_expect(np.abs(f) ** p, partition, space).real ** (1.0 / p)
    rhs = cond_expect(np.abs(g) ** q, partition, space).real ** (1.0 / q)
    return lhs * rhs - np.abs(cond_expect(f * g, partition, space))


def measure_with_density(space, f):
    """The space ``(atoms where f > 0, f * mu)``.

    Atoms with zero density are dropped; the new space's labels are the
    labels of the atoms kept.
    """
    f = as_function(f, space)
    if np.any(np.abs(f.imag) > 0):
        raise NegativeDensity("density must be real")
    d = f.real
    if np.any(d < 0):
        raise NegativeDensity(f"density is negative at atoms {np.flatnonzero(d < 0).tolist()}")
    keep = d > 0
    if not np.any(keep):
        raise EmptySpace("density vanishes identically")
    return AtomicMeasureSpace(d[keep] * space.weights[keep], space.labels[keep])
