import numpy as np
import pytest
from instances import cnormal, random_operator, random_partition, random_space

from wctop import (
    InvalidExponent,
    LadderTooShort,
    NoSuchN,
    NotConvergent,
    SpaceMismatch,
    WctOperator,
    adjoint,
    apply_wct,
    build_partition,
    build_space,
    closedness_witness,
    cond_expect,
    densely_defined_check,
    domain_approximant,
    domain_verdict,
    expectation_matrix,
    geometric_ladder,
    j_minus_one,
    norm_bound,
    pairing,
    symmetric_space,
    to_matrix,
)
from wctop import _weighted


def basis(n, j):
    e = np.zeros(n, dtype=complex)
    e[j] = 1
    return e


# ---------------------------------------------------------------- apply


def test_apply_special_cases():
    rng = np.random.default_rng(20)
    sp = random_space(rng, n_min=3)
    P = random_partition(rng, sp)
    f = cnormal(rng, sp.n)
    E = WctOperator(1, 1, P, sp)
    np.testing.assert_allclose(apply_wct(E, f), cond_expect(f, P, sp), atol=1e-15)
    single = build_partition(sp, [[a] for a in sp.atoms])
    u, w = cnormal(rng, sp.n), cnormal(rng, sp.n)
    np.testing.assert_allclose(apply_wct(WctOperator(u, w, single, sp), f), u * w * f, atol=1e-14)


def test_apply_symmetric_cosh():
    sp, P, grid = symmetric_space(6)
    T = WctOperator(np.exp(sp.labels), 1, P, sp)
    np.testing.assert_allclose(apply_wct(T, np.ones(sp.n)).real, np.cosh(sp.labels), rtol=1e-14)


def test_apply_linearity():
    rng = np.random.default_rng(21)
    for _ in range(100):
        T = random_operator(rng)
        f, g = cnormal(rng, T.space.n), cnormal(rng, T.space.n)
        a, b = complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2))
        lhs = apply_wct(T, a * f + b * g)
        rhs = a * apply_wct(T, f) + b * apply_wct(T, g)
        np.testing.assert_allclose(lhs, rhs, atol=1e-11)


def test_apply_space_mismatch():
    T = WctOperator(1, 1, build_partition(build_space([1, 1]), [[0, 1]]), build_space([1, 1]))
    with pytest.raises(SpaceMismatch):
        apply_wct(T, [1, 2, 3])


# ---------------------------------------------------------------- domain


def _divergent_ladder(p_geo=0.5, sizes=range(10, 110, 10)):
    q = 1 - p_geo
    # |u|^2 mu(t) = p q^(t-1) q^(-2t) grows like 2^t on both blocks
    return geometric_ladder(p_geo, list(sizes), {"u": lambda t: q ** (-t), "w": lambda t: np.ones_like(t)})


def _bounded_ladder(p_geo=0.5, sizes=range(10, 110, 10)):
    return geometric_ladder(
        p_geo, list(sizes), {"u": lambda t: np.cos(t) + 2, "w": lambda t: 1 / t}
    )


def test_densely_defined_bounded_and_divergent():
    good = densely_defined_check(_bounded_ladder())
    assert good.status == "densely-defined"
    assert good.finite_ae and good.sigma_finite_restriction and good.stabilized
    assert good.densely_defined
    bad = densely_defined_check(_divergent_ladder())
    assert bad.status == "not-densely-defined"
    assert not bad.finite_ae
    assert bad.diverging_blocks == [0, 1]


def test_divergence_oracle_partial_sums():
    # the partial sums themselves, computed without the library
    p, q = 0.5, 0.5
    t = np.arange(1, 101)
    terms = q ** (-2.0 * t) * p * q ** (t - 1)
    assert np.sum(terms[t % 3 == 0]) > 1e12
    assert np.all(np.diff(np.cumsum(terms)) > 0)


def test_undecided_when_growing_slowly():
    # int_B |u|^2 grows like log N: unbounded but far below the cap
    lad = geometric_ladder(
        0.5, list(range(10, 70, 10)), {"u": lambda t: np.sqrt(2.0**t / t), "w": lambda t: np.ones_like(t)}
    )
    v = densely_defined_check(lad)
    assert v.status == "undecided"
    assert not v.finite_ae


def test_J_minus_1_from_raw_sums():
    lad = _bounded_ladder(p_geo=0.3)
    v = densely_defined_check(lad, p=3.0)
    lv = lad.levels[-1]
    sp, P, fns = lv.space, lv.partition, lv.functions
    q = 1.5
    for atoms in P.blocks:
        m = sum(sp.weights[a] for a in atoms)
        ew = sum(abs(fns["w"][a]) ** 3 * sp.weights[a] for a in atoms) / m
        eu = sum(abs(fns["u"][a]) ** q * sp.weights[a] for a in atoms) / m
        assert v.J_minus_1[atoms[0]] == pytest.approx(ew * eu ** (3 / q), rel=1e-12)


def test_ladder_aggregates_monotone():
    for lad in (_bounded_ladder(), _divergent_ladder()):
        v = densely_defined_check(lad)
        for lo, hi in zip(v.aggregates, v.aggregates[1:]):
            assert np.all(hi["int_u_q"] >= lo["int_u_q"])
            assert np.all(hi["int_w_p"] >= lo["int_w_p"])


def test_ladder_too_short():
    with pytest.raises(LadderTooShort):
        densely_defined_check(_bounded_ladder(sizes=[5, 10, 15]), window=5)


def test_single_space_verdict():
    rng = np.random.default_rng(22)
    T = random_operator(rng)
    v = domain_verdict(T)
    assert v.finite_ae and v.sigma_finite_restriction
    np.testing.assert_allclose(v.J_minus_1, j_minus_one(T))


# ---------------------------------------------------------------- approximant


def test_approximant_everything_inside():
    rng = np.random.default_rng(23)
    T = random_operator(rng, n_min=4)
    f = cnormal(rng, T.space.n)
    M = np.max(j_minus_one(T))
    eps = 0.5 * np.min(np.abs(f) ** 2 * T.space.weights)
    g, N, cert = domain_approximant(T, f, eps)
    np.testing.assert_array_equal(g, f)
    assert cert.distance_p == 0
    assert N <= int(np.ceil(M)) + 2
    assert cert.holds


def test_approximant_kills_f_on_huge_block():
    sp = build_space([0.5, 0.5, 1.0])
    P = build_partition(sp, [[0, 1], [2]])
    T = WctOperator([1e20, 1e20, 1.0], [1.0, 1.0, 1.0], P, sp)
    f = np.array([1.0, 2.0, 0.0])
    g, N, cert = domain_approximant(T, f, eps=np.sum(np.abs(f) ** 2 * sp.weights) + 1)
    assert np.all(g == 0)
    # a tighter eps still has to cut the huge block away
    g, N, cert = domain_approximant(T, np.array([1.0, 2.0, 3.0]), eps=2.6)
    np.testing.assert_array_equal(g, [0, 0, 3])
    assert cert.holds


def test_approximant_no_such_N():
    sp = build_space([1.0, 1.0])
    P = build_partition(sp, [[0], [1]])
    T = WctOperator([np.inf, 1.0], [1.0, 1.0], P, sp)
    with pytest.raises(NoSuchN), np.errstate(invalid="ignore", over="ignore"):
        domain_approximant(T, np.array([1.0, 1.0]), eps=0.5)


def test_approximant_certificate_by_direct_sums():
    rng = np.random.default_rng(24)
    for _ in range(50):
        T = random_operator(rng, n_min=3, p=float(rng.choice([1.0, 1.5, 2.0, 3.0])))
        T = T.with_functions(u=T.u * rng.pareto(1.0, T.space.n), w=T.w * rng.pareto(1.0, T.space.n))
        f = cnormal(rng, T.space.n)
        eps = float(rng.uniform(0.01, 1.0)) * np.sum(np.abs(f) ** T.p * T.space.weights)
        g, N, cert = domain_approximant(T, f, eps)
        j = j_minus_one(T)
        inside = j < N - 1
        lhs = sum(abs(x) ** T.p * m for x, m in zip(apply_wct(T, g), T.space.weights))
        rhs = (N - 1) * sum(abs(x) ** T.p * m for x, m, c in zip(f, T.space.weights, inside) if c)
        dist = sum(abs(x) ** T.p * m for x, m in zip(g - f, T.space.weights))
        assert dist < eps
        assert lhs <= rhs * (1 + 1e-12) + 1e-300
        assert cert.holds
        # minimality: N - 1 leaves too much outside
        if N > 1:
            outside = ~(j < N - 2)
            assert sum(abs(f[outside]) ** T.p * T.space.weights[outside]) >= eps


# ---------------------------------------------------------------- adjoint


def test_adjoint_examples():
    rng = np.random.default_rng(25)
    sp = random_space(rng, n_min=3)
    single = build_partition(sp, [[a] for a in sp.atoms])
    u, w = rng.standard_normal(sp.n), rng.standard_normal(sp.n)
    T = WctOperator(u, w, single, sp)
    np.testing.assert_allclose(to_matrix(adjoint(T)).entries, to_matrix(T).entries)
    P = random_partition(rng, sp)
    E = WctOperator(1, 1, P, sp)
    np.testing.assert_allclose(to_matrix(adjoint(E)).entries, to_matrix(E).entries)


def test_adjoint_pairing_on_basis():
    rng = np.random.default_rng(26)
    for _ in range(100):
        T = random_operator(rng)
        Ts = adjoint(T)
        n = T.space.n
        worst = max(
            abs(pairing(apply_wct(T, basis(n, i)), basis(n, j), T.space)
                - pairing(basis(n, i), apply_wct(Ts, basis(n, j)), T.space))
            for i in range(n) for j in range(n)
        )
        assert worst < 1e-10


@pytest.mark.parametrize("p", [1.5, 3.0])
def test_adjoint_lp_pairing(p):
    rng = np.random.default_rng(27)
    for _ in range(50):
        T = random_operator(rng, p=p)
        Ts = adjoint(T)
        assert Ts.p == pytest.approx(p / (p - 1))
        f, g = cnormal(rng, T.space.n), cnormal(rng, T.space.n)
        lhs = sum(a * np.conj(b) * m for a, b, m in zip(apply_wct(T, f), g, T.space.weights))
        rhs = sum(a * np.conj(b) * m for a, b, m in zip(f, apply_wct(Ts, g), T.space.weights))
        assert abs(lhs - rhs) < 1e-10 * (1 + abs(lhs))


def test_adjoint_involution_and_p1():
    rng = np.random.default_rng(28)
    T = random_operator(rng)
    TT = adjoint(adjoint(T))
    for j in range(T.space.n):
        np.testing.assert_allclose(apply_wct(TT, basis(T.space.n, j)), apply_wct(T, basis(T.space.n, j)), atol=1e-11)
    with pytest.raises(InvalidExponent):
        adjoint(T.with_functions(p=1.0))


# ---------------------------------------------------------------- matrices


def test_to_matrix_examples():
    sp = build_space([0.5, 0.5])
    E = WctOperator(1, 1, build_partition(sp, [[0, 1]]), sp)
    np.testing.assert_allclose(to_matrix(E).entries, np.full((2, 2), 0.5))
    rng = np.random.default_rng(29)
    sp = random_space(rng, n_min=3)
    u, w = cnormal(rng, sp.n), cnormal(rng, sp.n)
    D = WctOperator(u, w, build_partition(sp, [[a] for a in sp.atoms]), sp)
    np.testing.assert_allclose(to_matrix(D).entries, np.diag(u * w), atol=1e-15)
    with pytest.raises(InvalidExponent):
        to_matrix(D.with_functions(p=3.0))


def test_matrix_action_factorization_and_adjoint():
    rng = np.random.default_rng(30)
    for _ in range(100):
        T = random_operator(rng)
        M = to_matrix(T)
        f = cnormal(rng, T.space.n)
        np.testing.assert_allclose(M @ f, apply_wct(T, f), atol=1e-12)
        Em = to_matrix(WctOperator(1, 1, T.partition, T.space)).entries
        np.testing.assert_allclose(M.entries, np.diag(T.w) @ Em @ np.diag(T.u), atol=1e-12)
        np.testing.assert_allclose(Em, expectation_matrix(T.partition, T.space), atol=1e-15)
        D = np.diag(T.space.weights)
        np.testing.assert_allclose(
            to_matrix(adjoint(T)).entries, np.linalg.inv(D) @ np.conj(M.entries.T) @ D, atol=1e-11
        )


def test_norm_bound():
    rng = np.random.default_rng(31)
    sp = random_space(rng, n_min=3)
    P = random_partition(rng, sp)
    E = WctOperator(1, 1, P, sp)
    assert norm_bound(E) == pytest.approx(1.0)
    assert to_matrix(E).norm() == pytest.approx(1.0)
    u, w = cnormal(rng, sp.n), cnormal(rng, sp.n)
    D = WctOperator(u, w, build_partition(sp, [[a] for a in sp.atoms]), sp)
    assert norm_bound(D) == pytest.approx(np.max(np.abs(u * w)), rel=1e-12)
    assert to_matrix(D).norm() == pytest.approx(norm_bound(D), rel=1e-12)
    for _ in range(200):
        T = random_operator(rng)
        sv = np.linalg.svd(_weighted.symmetrize(to_matrix(T).entries, T.space.weights), compute_uv=False)[0]
        assert sv <= norm_bound(T) + 1e-9
    with pytest.raises(InvalidExponent):
        norm_bound(D.with_functions(p=1.0))


# ---------------------------------------------------------------- closedness


def test_closedness():
    rng = np.random.default_rng(32)
    T = random_operator(rng, n_min=3)
    f, h = cnormal(rng, T.space.n), cnormal(rng, T.space.n)
    assert closedness_witness(T, [f, f]).closed
    seq = [f + h / n for n in (1, 10, 1e3, 1e6, 1e12, 1e15)]
    rep = closedness_witness(T, seq, limit=f)
    assert rep.closed and rep.residual <= 1e-9
    for _ in range(20):
        T = random_operator(rng)
        f = cnormal(rng, T.space.n)
        seq = [f + cnormal(rng, T.space.n) * 10.0 ** (-k) for k in range(14)]
        assert closedness_witness(T, seq, limit=f).closed
    with pytest.raises(NotConvergent):
        closedness_witness(T, [f, f + 1])
