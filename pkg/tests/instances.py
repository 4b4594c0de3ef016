"""Random test instances shared by the test modules."""

import numpy as np

from wctop import WctOperator, build_partition, build_space


def random_space(rng, n_max=12, n_min=1):
    n = int(rng.integers(n_min, n_max + 1))
    return build_space(rng.uniform(0.1, 2.0, n))


def random_partition(rng, space, discrete=False):
    n = space.n
    if discrete:
        return build_partition(space, [[a] for a in range(n)])
    k = int(rng.integers(1, n + 1))
    labels = rng.integers(0, k, n)
    return build_partition(space, [np.flatnonzero(labels == b) for b in np.unique(labels)])


def random_proper_partition(rng, space):
    """A partition with at least one block of two or more atoms (needs n >= 2)."""
    while True:
        P = random_partition(rng, space)
        if not P.is_discrete():
            return P


def cnormal(rng, n, scale=1.0):
    return scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n))


def a_measurable(rng, partition, real=False):
    vals = rng.standard_normal(partition.n_blocks)
    if not real:
        vals = vals + 1j * rng.standard_normal(partition.n_blocks)
    return vals[partition.block_of].astype(complex)


def random_operator(rng, n_max=12, n_min=1, p=2.0, discrete=False):
    sp = random_space(rng, n_max, n_min)
    P = random_partition(rng, sp, discrete)
    return WctOperator(cnormal(rng, sp.n), cnormal(rng, sp.n), P, sp, p)
