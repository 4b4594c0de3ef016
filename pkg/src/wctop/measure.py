"""Atomic measure spaces, partitions and functions on them.

A finite atomic measure space is a vector of strictly positive atom
weights.  A sub-sigma-algebra of the discrete sigma-algebra is the same
thing as a partition of the atoms, so :class:`Partition` plays that role.
Measurable functions are plain 1-D complex numpy arrays indexed by atom id;
:func:`as_function` coerces and validates them.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EmptySpace,
    InvalidExponent,
    LevelOutOfRange,
    NonPositiveWeight,
    NotAPartition,
    SpaceMismatch,
    ZeroMeasureBlock,
)

#: absolute tolerance for function equality
FN_TOL = 1e-9
#: tolerance for algebraic identities on well-conditioned inputs
ALG_TOL = 1e-12


def _frozen(a, dtype):
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class AtomicMeasureSpace:
    """Atoms ``0..n-1`` with positive weights.

    ``labels`` are the points the atoms stand for (grid coordinates,
    natural numbers, ...) and default to the atom ids.  ``family`` and
    ``params`` record which gallery constructor produced the space, if any.
    """

    weights: np.ndarray
    labels: np.ndarray = None
    family: str = ""
    params: tuple = ()

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise EmptySpace("a measure space needs at least one atom")
        if not np.all(np.isfinite(w)) or np.any(w <= 0):
            bad = int(np.flatnonzero(~(w > 0) | ~np.isfinite(w))[0])
            raise NonPositiveWeight(f"atom {bad} has weight {w[bad]!r}")
        object.__setattr__(self, "weights", _frozen(w, float))
        labels = np.arange(w.size) if self.labels is None else self.labels
        labels = np.asarray(labels)
        if labels.shape != w.shape:
            raise SpaceMismatch("labels must have one entry per atom")
        object.__setattr__(self, "labels", _frozen(labels, labels.dtype))
        object.__setattr__(self, "params", tuple(self.params))

    @property
    def n(self):
        return self.weights.size

    @property
    def atoms(self):
        return range(self.n)

    @property
    def total_mass(self):
        return float(np.sum(self.weights))

    def measure(self, atoms):
        return float(np.sum(self.weights[np.asarray(list(atoms), dtype=int)]))

    def __eq__(self, other):
        if not isinstance(other, AtomicMeasureSpace):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.weights, other.weights)
            and np.array_equal(self.labels, other.labels)
            and self.family == other.family
            and self.params == other.params
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Partition:
    """A partition of the atoms of a space, i.e. an atomic sub-sigma-algebra.

    ``block_of[a]`` is the block id of atom ``a``; ``blocks[b]`` is the sorted
    array of atoms in block ``b``.  Block ids follow the order the blocks
    were given in.
    """

    block_of: np.ndarray
    blocks: tuple = field(repr=False)

    @property
    def n_blocks(self):
        return len(self.blocks)

    @property
    def n_atoms(self):
        return self.block_of.size

    def is_discrete(self):
        """True when every block is a singleton (the partition is all of Sigma)."""
        return self.n_blocks == self.n_atoms

    def block_masses(self, space):
        return np.array([np.sum(space.weights[b]) for b in self.blocks])

    def indicator(self, b):
        chi = np.zeros(self.n_atoms, dtype=complex)
        chi[self.blocks[b]] = 1.0
        return chi

    def as_lists(self):
        return [[int(a) for a in b] for b in self.blocks]

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(self.block_of, other.block_of) and self.n_blocks == other.n_blocks

    __hash__ = None


def build_space(weights, labels=None, family="", params=()):
    """Build an :class:`AtomicMeasureSpace` with atoms ``0..len(weights)-1``."""
    if weights is None or len(weights) == 0:
        raise EmptySpace("weights must be a non-empty list")
    return AtomicMeasureSpace(np.asarray(weights, dtype=float), labels, family, params)


def build_partition(space, blocks):
    """Validate ``blocks`` (iterables of atom ids) as a partition of ``space``.

    Raises
    ------
    NotAPartition
        If a block is empty, an atom id is out of range, blocks overlap or
        some atom is not covered.
    ZeroMeasureBlock
        If a block carries no mass.
    """
    blocks = [sorted(int(a) for a in b) for b in blocks]
    if not blocks:
        raise NotAPartition("blocks: no blocks given")
    block_of = np.full(space.n, -1, dtype=int)
    for b, atoms in enumerate(blocks):
        if not atoms:
            raise NotAPartition(f"blocks: block {b} is empty")
        for a in atoms:
            if not 0 <= a < space.n:
                raise NotAPartition(f"blocks: atom {a} is not an atom of the space")
            if block_of[a] != -1:
                raise NotAPartition(f"blocks: atom {a} lies in blocks {block_of[a]} and {b}")
            block_of[a] = b
    missing = np.flatnonzero(block_of < 0)
    if missing.size:
        raise NotAPartition(f"blocks: atoms {missing.tolist()} are not covered")
    arrays = tuple(_frozen(atoms, int) for atoms in blocks)
    for b, atoms in enumerate(arrays):
        if not np.sum(space.weights[atoms]) > 0:
            raise ZeroMeasureBlock(f"blocks: block {b} has zero measure")
    return Partition(_frozen(block_of, int), arrays)


def discrete_partition(space):
    """Singleton blocks: the full sigma-algebra, on which E is the identity."""
    return build_partition(space, [[a] for a in space.atoms])


def trivial_partition(space):
    """One block holding every atom."""
    return build_partition(space, [list(space.atoms)])


def as_function(values, space):
    """Return ``values`` as a complex array on ``space``.

    Scalars broadcast to constant functions.
    """
    f = np.asarray(values, dtype=complex)
    if f.ndim == 0:
        return np.full(space.n, f[()], dtype=complex)
    if f.shape != (space.n,):
        raise SpaceMismatch(f"function has shape {f.shape}, space has {space.n} atoms")
    return f


def check_partition(partition, space):
    if partition.n_atoms != space.n:
        raise SpaceMismatch(
            f"partition covers {partition.n_atoms} atoms, space has {space.n}"
        )


def lp_norm(f, p, space):
    """``(sum |f|^p mu)^(1/p)``."""
    if not p >= 1:
        raise InvalidExponent(f"p must be >= 1, got {p!r}")
    f = as_function(f, space)
    a = np.abs(f)
    if np.isinf(p):
        return float(np.max(a))
    return float(np.sum(a**p * space.weights) ** (1.0 / p))


def inner_product(f, g, space):
    """L2 pairing ``sum f * conj(g) * mu``."""
    f = as_function(f, space)
    g = as_function(g, space)
    return complex(np.sum(f * np.conj(g) * space.weights))


def support(f, tol=0.0):
    """Atom ids where ``|f| > tol``."""
    return frozenset(np.flatnonzero(np.abs(np.asarray(f)) > tol).tolist())


def is_A_measurable(f, partition, tol=FN_TOL):
    """Whether ``f`` is constant on every block up to absolute deviation ``tol``."""
    f = np.asarray(f, dtype=complex)
    if f.shape != (partition.n_atoms,):
        raise SpaceMismatch("function and partition disagree on the number of atoms")
    for atoms in partition.blocks:
        vals = f[atoms]
        if np.max(np.abs(vals - vals[0])) > tol:
            return False
    return True


@dataclass(frozen=True, eq=False)
class Level:
    space: AtomicMeasureSpace
    partition: Partition
    functions: dict


class TruncationLadder:
    """Nested finite truncations of a countable atomic space.

    Level ``m`` (1-based) holds a space, a partition and a dict of named
    functions.  Atom sets must be nested as prefixes: the atoms of level
    ``m`` are the first atoms of level ``m + 1``, with equal weights, equal
    block ids and equal function values.
    """

    def __init__(self, levels):
        self.levels = tuple(
            lv if isinstance(lv, Level) else Level(*lv) for lv in levels
        )
        if not self.levels:
            raise LevelOutOfRange("a ladder needs at least one level")
        for lv in self.levels:
            check_partition(lv.partition, lv.space)
            for name, fn in lv.functions.items():
                as_function(fn, lv.space)
        for lo, hi in zip(self.levels, self.levels[1:]):
            _check_nested(lo, hi)

    @classmethod
    def from_builder(cls, build, sizes):
        """Ladder whose level ``m`` is ``build(sizes[m-1])``.

        ``build`` returns ``(space, partition, functions)``.
        """
        return cls([build(n) for n in sizes])

    def __len__(self):
        return len(self.levels)

    def sizes(self):
        return [lv.space.n for lv in self.levels]


def _check_nested(lo, hi):
    n = lo.space.n
    if hi.space.n < n:
        raise NotAPartition("ladder levels must grow")
    if not np.array_equal(hi.space.weights[:n], lo.space.weights):
        raise NotAPartition("ladder weights disagree on shared atoms")
    if not np.array_equal(hi.partition.block_of[:n], lo.partition.block_of):
        raise NotAPartition("ladder partitions are not compatible")
    for name, fn in lo.functions.items():
        if name not in hi.functions or not np.array_equal(
            np.asarray(hi.functions[name])[:n], np.asarray(fn)
        ):
            raise NotAPartition(f"ladder function {name!r} disagrees on shared atoms")


def truncate(ladder, level):
    """The ``(space, partition, functions)`` snapshot at 1-based ``level``."""
    if not 1 <= level <= len(ladder):
        raise LevelOutOfRange(f"level {level} not in 1..{len(ladder)}")
    lv = ladder.levels[level - 1]
    return lv.space, lv.partition, dict(lv.functions)
