import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from instances import cnormal, random_partition, random_space

from wctop import (
    EmptySpace,
    InvalidExponent,
    LevelOutOfRange,
    NonPositiveWeight,
    NotAPartition,
    SpaceMismatch,
    TruncationLadder,
    build_partition,
    build_space,
    cond_expect,
    inner_product,
    is_A_measurable,
    lp_norm,
    support,
    truncate,
)
from wctop.gallery import geometric_ladder


def test_build_space_basic():
    sp = build_space([1.0])
    assert sp.n == 1 and sp.total_mass == 1.0
    sp = build_space([0.5, 0.5])
    assert list(sp.atoms) == [0, 1]
    assert sp.total_mass == 1.0


def test_geometric_weights_total_mass():
    p = 0.5
    for N in (5, 20, 60):
        t = np.arange(1, N + 1)
        sp = build_space(p * (1 - p) ** (t - 1))
        assert sp.total_mass == pytest.approx(1 - 0.5**N, abs=1e-15)


@pytest.mark.parametrize("weights", [[1.0, 0.0], [-1.0], [1.0, np.nan]])
def test_build_space_rejects_bad_weights(weights):
    with pytest.raises(NonPositiveWeight):
        build_space(weights)


def test_build_space_rejects_empty():
    with pytest.raises(EmptySpace):
        build_space([])


def test_space_is_immutable():
    sp = build_space([1.0, 2.0])
    with pytest.raises(ValueError):
        sp.weights[0] = 3.0


def test_partition_both_views():
    sp = build_space([1, 1, 1, 1])
    P = build_partition(sp, [{2, 0}, [1, 3]])
    assert P.block_of.tolist() == [0, 1, 0, 1]
    assert [b.tolist() for b in P.blocks] == [[0, 2], [1, 3]]


@pytest.mark.parametrize(
    "blocks", [[[0, 1], [1, 2]], [[0, 1]], [], [[0, 1, 2], []], [[0, 1, 2, 7]]]
)
def test_partition_rejects(blocks):
    sp = build_space([1, 1, 1])
    with pytest.raises(NotAPartition):
        build_partition(sp, blocks)


def test_singleton_blocks_give_identity_and_one_block_gives_mean():
    sp = build_space([0.2, 0.3, 0.5])
    f = np.array([1.0, -2.0, 4.0 + 1j])
    single = build_partition(sp, [[0], [1], [2]])
    np.testing.assert_allclose(cond_expect(f, single, sp), f, atol=1e-15)
    whole = build_partition(sp, [[0, 1, 2]])
    mean = (0.2 * 1 - 0.3 * 2 + 0.5 * (4 + 1j)) / 1.0
    np.testing.assert_allclose(cond_expect(f, whole, sp), mean, atol=1e-15)


def test_lp_norm_values():
    sp = build_space([0.5, 0.5])
    assert lp_norm([0, 0], 2, sp) == 0
    for p in (1, 1.5, 2, 3):
        assert lp_norm([1, 1], p, sp) == pytest.approx(1.0)
    # 0.5 * 1 + 0.5 * 4
    assert lp_norm([1, 2], 2, sp) == pytest.approx(np.sqrt(2.5), abs=1e-15)
    with pytest.raises(InvalidExponent):
        lp_norm([1, 2], 0.5, sp)


def test_triangle_inequality_random():
    rng = np.random.default_rng(0)
    for _ in range(200):
        sp = random_space(rng)
        f, g = cnormal(rng, sp.n), cnormal(rng, sp.n)
        for p in (1, 1.5, 2, 3):
            lhs = lp_norm(f + g, p, sp)
            rhs = lp_norm(f, p, sp) + lp_norm(g, p, sp)
            assert lhs <= rhs * (1 + 1e-12)


def test_inner_product_properties():
    rng = np.random.default_rng(1)
    for _ in range(100):
        sp = random_space(rng)
        f, g = cnormal(rng, sp.n), cnormal(rng, sp.n)
        ff = inner_product(f, f, sp)
        assert abs(ff.imag) <= 1e-12 * abs(ff) and ff.real >= 0
        assert ff.real == pytest.approx(lp_norm(f, 2, sp) ** 2, rel=1e-12)
        assert inner_product(f, g, sp) == pytest.approx(np.conj(inner_product(g, f, sp)), rel=1e-12)
    sp = build_space([0.25, 4.0])
    e0 = np.array([1, 0]) / np.sqrt(0.25)
    e1 = np.array([0, 1]) / np.sqrt(4.0)
    assert inner_product(e0, e1, sp) == 0
    assert inner_product(e0, e0, sp) == pytest.approx(1.0)


def test_inner_product_space_mismatch():
    with pytest.raises(SpaceMismatch):
        inner_product([1, 2, 3], [1, 2], build_space([1, 1]))


def test_support():
    assert support(np.zeros(4)) == frozenset()
    chi = np.array([0, 1, 1, 0, 1])
    assert support(chi) == {1, 2, 4}
    rng = np.random.default_rng(2)
    for _ in range(100):
        sp = random_space(rng)
        P = random_partition(rng, sp)
        f = rng.uniform(0, 1, sp.n) * (rng.uniform(size=sp.n) < 0.5)
        assert support(f, 0) <= support(cond_expect(f, P, sp), 0)


def test_is_A_measurable():
    sp = build_space([1, 1, 1, 1])
    P = build_partition(sp, [[0, 1], [2, 3]])
    assert is_A_measurable(np.full(4, 3.0), P)
    assert not is_A_measurable([1, 0, 0, 0], P)
    rng = np.random.default_rng(3)
    for _ in range(200):
        sp = random_space(rng)
        P = random_partition(rng, sp)
        assert is_A_measurable(cond_expect(cnormal(rng, sp.n), P, sp), P, 1e-12)


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.floats(0.01, 100), min_size=1, max_size=10),
    st.data(),
)
def test_expectation_is_measurable_hypothesis(weights, data):
    sp = build_space(weights)
    labels = data.draw(st.lists(st.integers(0, 3), min_size=sp.n, max_size=sp.n))
    labels = np.array(labels)
    P = build_partition(sp, [np.flatnonzero(labels == b) for b in np.unique(labels)])
    f = np.array(data.draw(st.lists(st.floats(-1e3, 1e3), min_size=sp.n, max_size=sp.n)))
    assert is_A_measurable(cond_expect(f, P, sp), P, 1e-9)


def test_ladder_nesting_and_truncate():
    lad = geometric_ladder(0.5, [6, 9, 12, 30], {"u": lambda t: 1 / t})
    assert len(lad) == 4
    sp, P, fns = truncate(lad, 2)
    assert sp.n == 9
    for m in range(1, 4):
        for n in range(m + 1, 5):
            sm, Pm, fm = truncate(lad, m)
            sn, Pn, fn = truncate(lad, n)
            k = sm.n
            assert np.array_equal(sn.weights[:k], sm.weights)
            assert np.array_equal(Pn.block_of[:k], Pm.block_of)
            assert np.array_equal(fn["u"][:k], fm["u"])
    with pytest.raises(LevelOutOfRange):
        truncate(lad, 0)
    with pytest.raises(LevelOutOfRange):
        truncate(lad, 5)


def test_ladder_rejects_incompatible_levels():
    a = build_space([1.0, 1.0])
    b = build_space([1.0, 2.0, 1.0])
    lv_a = (a, build_partition(a, [[0, 1]]), {})
    with pytest.raises(NotAPartition):
        TruncationLadder([lv_a, (b, build_partition(b, [[0, 1, 2]]), {})])
    c = build_space([1.0, 1.0, 1.0])
    with pytest.raises(NotAPartition):
        TruncationLadder([lv_a, (c, build_partition(c, [[0], [1, 2]]), {})])
