"""Factorizations and the GLS-to-GLS transform-norm chains, both cases."""

import math

import numpy as np
import pytest

from hygls import (
    FactorizationError,
    GroupFunction,
    PsiFunction,
    constant_function,
    factorization_from_components,
    factorize_trivial,
    indicator,
    make_group,
    make_measure_pair,
    natural_function,
    psi_constant,
    psi_power,
    psi_singleton,
    random_function,
    theorem21_bound,
    theorem22_bound,
    verify_hy,
    verify_hy_conjugate,
    verify_theorem21,
    verify_theorem22,
)


@pytest.fixture()
def compact_pair():
    return make_measure_pair(make_group([8, 3]), 1.0)


def trivial(psi, pair, case, mode="as-derived"):
    return factorize_trivial(psi, pair, case, mode=mode, n_grid=96)


def test_trivial_factorization_identity_residual(compact_pair):
    for psi in (psi_constant(1.0, n_grid=128), psi_power(0.5, n_grid=128)):
        fact = trivial(psi, compact_pair, "compact")
        assert fact.residual <= 1e-12
        for q in fact.grid[::17]:
            target = fact.target(float(q))
            ratio = fact.theta.eval(float(q)) / fact.nu.eval(float(q))
            assert ratio == pytest.approx(target, rel=1e-12)


def test_trivial_factorization_components(compact_pair):
    pair4 = make_measure_pair(compact_pair.group, 4.0)
    psi = psi_constant(1.0, n_grid=1024)
    fact = trivial(psi, pair4, "compact")
    assert all(fact.theta.eval(float(q)) == 1.0 for q in fact.grid[::11])
    # nu(q) = 1 / sup_{p >= t(q)} 4^(1/p): about 4^(-1/t(q)) at grid resolution
    q = float(fact.grid[0])
    assert q == 2.0
    assert fact.nu.eval(q) == pytest.approx(0.5, rel=0.02)


def test_factorization_rejects_degenerate_weight(compact_pair):
    with pytest.raises(Exception):
        trivial(PsiFunction(lambda p: 0.0), compact_pair, "compact")


def test_user_factorization_validated(compact_pair):
    psi = psi_constant(1.0, n_grid=128)
    base = trivial(psi, compact_pair, "compact")
    # scaling theta and nu by the same constant keeps the identity
    theta = PsiFunction(lambda q: 3.0, base.grid[0], math.inf, grid=base.grid)
    nu = PsiFunction(lambda q: 3.0 / base.target(q), base.grid[0], math.inf, grid=base.grid)
    fact = factorization_from_components(theta, nu, psi, compact_pair, "compact")
    assert fact.residual <= 1e-10

    bad_nu = PsiFunction(lambda q: 1.7, base.grid[0], math.inf, grid=base.grid)
    with pytest.raises(FactorizationError, match="identity"):
        factorization_from_components(theta, bad_nu, psi, compact_pair, "compact")


def test_scaled_factorization_leaves_final_check_invariant(compact_pair):
    psi = psi_power(0.5, n_grid=128)
    base = trivial(psi, compact_pair, "compact")
    c = 5.0
    theta = PsiFunction(lambda q: c, base.grid[0], math.inf, grid=base.grid)
    nu = PsiFunction(lambda q: c / base.target(q), base.grid[0], math.inf, grid=base.grid)
    scaled = factorization_from_components(theta, nu, psi, compact_pair, "compact")
    f = random_function(compact_pair, np.random.default_rng(0))
    rec_base = verify_theorem21(f, psi, base, compact_pair)[-1]
    rec_scaled = verify_theorem21(f, psi, scaled, compact_pair)[-1]
    # lhs and rhs both scale by 1/c, so the slack ratio is invariant
    assert rec_scaled.lhs == pytest.approx(rec_base.lhs / c, rel=1e-9)
    assert rec_scaled.rhs == pytest.approx(rec_base.rhs / c, rel=1e-9)
    assert rec_scaled.passed


def test_theorem21_bound_frozen_values():
    group = make_group([8])
    half = make_measure_pair(group, 0.5)
    fact = trivial(psi_constant(1.0, n_grid=256), half, "compact")
    # attained at q = 2: (1/2) * 2^(1/2)
    assert theorem21_bound(fact, half) == pytest.approx(2.0 ** -0.5, rel=1e-9)
    unit = make_measure_pair(group, 1.0)
    fact1 = trivial(psi_constant(1.0, n_grid=256), unit, "compact")
    assert theorem21_bound(fact1, unit) == pytest.approx(1.0, rel=1e-12)
    four = make_measure_pair(group, 4.0)
    fact4 = trivial(psi_constant(1.0, n_grid=256), four, "compact")
    # sup of 4^(-1/q) is only approached toward the open upper end
    assert theorem21_bound(fact4, four) == pytest.approx(4.0, rel=1e-4)


def test_theorem22_bound_frozen_values():
    group = make_group([16])
    pair_b4 = make_measure_pair(group, group.order / 4.0)
    fact = trivial(psi_constant(1.0, 1.0, 2.0, n_grid=256), pair_b4, "discrete")
    assert theorem22_bound(fact, pair_b4) == pytest.approx(1.0, rel=1e-12)
    pair_b1 = make_measure_pair(group, float(group.order))
    fact1 = trivial(psi_constant(1.0, 1.0, 2.0, n_grid=256), pair_b1, "discrete")
    assert theorem22_bound(fact1, pair_b1) == pytest.approx(1.0, rel=1e-12)


def test_bound_case_mismatch_errors(compact_pair):
    psi = psi_constant(1.0, n_grid=64)
    fact = trivial(psi, compact_pair, "compact")
    with pytest.raises(ValueError, match="discrete-case"):
        theorem22_bound(fact, compact_pair)
    discrete = trivial(psi_constant(1.0, 1.0, 2.0, n_grid=64), compact_pair, "discrete")
    with pytest.raises(ValueError, match="compact-case"):
        theorem21_bound(discrete, compact_pair)


def test_theorem21_natural_weight_all_records_pass(compact_pair):
    rng = np.random.default_rng(1)
    for _ in range(5):
        f = random_function(compact_pair, rng)
        psi = natural_function([f], n_grid=128)
        fact = trivial(psi, compact_pair, "compact")
        records = verify_theorem21(f, psi, fact, compact_pair)
        assert len(records) > 10
        assert all(r.passed for r in records)


def test_theorem21_soundness_across_normalizations():
    rng = np.random.default_rng(2)
    group = make_group([8])
    for A in (0.5, 1.0, 4.0):
        pair = make_measure_pair(group, A)
        for psi in (psi_constant(1.0, n_grid=128), psi_power(1.0, n_grid=128),
                    psi_power(0.5, n_grid=128)):
            fact = trivial(psi, pair, "compact")
            for _ in range(5):
                records = verify_theorem21(random_function(pair, rng), psi, fact, pair)
                assert all(r.passed for r in records)


def test_theorem21_zero_function(compact_pair):
    psi = psi_constant(1.0, n_grid=64)
    fact = trivial(psi, compact_pair, "compact")
    zero = GroupFunction(compact_pair, "X", np.zeros(compact_pair.group.order))
    records = verify_theorem21(zero, psi, fact, compact_pair)
    assert all(r.passed and r.lhs == 0.0 for r in records)


def test_theorem21_constant_equality_structure():
    # A = 1, natural weight of the constant: final record is an exact equality
    pair = make_measure_pair(make_group([8]), 1.0)
    f = constant_function(pair)
    psi = natural_function([f], n_grid=128)
    fact = trivial(psi, pair, "compact")
    final = verify_theorem21(f, psi, fact, pair)[-1]
    assert final.lhs == pytest.approx(final.rhs, abs=1e-12)


def test_theorem22_natural_weight_all_records_pass():
    group = make_group([8, 3])
    pair = make_measure_pair(group, float(group.order))
    rng = np.random.default_rng(3)
    for _ in range(5):
        f = random_function(pair, rng)
        psi = natural_function([f], 1.0, 2.0, n_grid=128)
        fact = trivial(psi, pair, "discrete")
        records = verify_theorem22(f, psi, fact, pair)
        assert len(records) > 10
        assert all(r.passed for r in records)


def test_theorem22_soundness_across_normalizations():
    rng = np.random.default_rng(4)
    group = make_group([12])
    for B in (0.5, 1.0, 4.0):
        pair = make_measure_pair(group, group.order / B)
        for psi in (psi_constant(1.0, 1.0, 2.0, n_grid=128),
                    psi_power(1.0, 1.0, 2.0, n_grid=128)):
            fact = trivial(psi, pair, "discrete")
            for _ in range(5):
                records = verify_theorem22(random_function(pair, rng), psi, fact, pair)
                assert all(r.passed for r in records)


def test_theorem21_narrow_support_filters_inadmissible_exponents(compact_pair):
    # support [1, 1.5) admits only q > 3 (the conjugate of the upper end)
    psi = psi_constant(1.0, 1.0, 1.5, n_grid=64)
    fact = trivial(psi, compact_pair, "compact")
    assert fact.grid[0] > 3.0
    f = random_function(compact_pair, np.random.default_rng(9))
    assert all(r.passed for r in verify_theorem21(f, psi, fact, compact_pair))


def test_theorem22_zero_function():
    group = make_group([12])
    pair = make_measure_pair(group, float(group.order))
    psi = psi_constant(1.0, 1.0, 2.0, n_grid=64)
    fact = trivial(psi, pair, "discrete")
    zero = GroupFunction(pair, "X", np.zeros(12))
    records = verify_theorem22(zero, psi, fact, pair)
    assert all(r.passed and r.lhs == 0.0 for r in records)


def test_theorem22_point_mass_equality_at_counting_normalization():
    group = make_group([12])
    pair = make_measure_pair(group, float(group.order))  # B = 1
    f = indicator(pair, 0)
    psi = psi_constant(1.0, 1.0, 2.0, n_grid=128)
    fact = trivial(psi, pair, "discrete")
    records = verify_theorem22(f, psi, fact, pair)
    for r in records:
        assert r.passed
        assert abs(r.slack) <= 1e-12 * max(abs(r.lhs), abs(r.rhs), 1e-300)


def test_singleton_weight_reduces_to_hy_records(compact_pair):
    # degenerate GLS chain records coincide with the plain L_p -> L_q records
    f = random_function(compact_pair, np.random.default_rng(5))
    p0 = 1.5
    fact = trivial(psi_singleton(p0), compact_pair, "compact")
    qs = [3.0, 4.0, 6.0, 10.0]
    steps = verify_theorem21(f, psi_singleton(p0), fact, compact_pair, record_qs=qs)[:-1]
    assert len(steps) == len(qs)
    for record, q in zip(steps, qs):
        hy = verify_hy(f, p0, q)
        assert record.lhs == pytest.approx(hy.lhs, rel=1e-10)
        assert record.rhs == pytest.approx(hy.rhs, rel=1e-10)


def test_singleton_weight_reduces_to_conjugate_records():
    group = make_group([12])
    pair = make_measure_pair(group, group.order / 4.0)  # B = 4
    f = random_function(pair, np.random.default_rng(6))
    p0 = 1.5
    fact = trivial(psi_singleton(p0), pair, "discrete")
    qs = [1.2, 1.5, 2.0, 2.5, 3.0]  # all q <= p0' = 3
    steps = verify_theorem22(f, psi_singleton(p0), fact, pair, record_qs=qs)[:-1]
    assert len(steps) == len(qs)
    for record, q in zip(steps, qs):
        conj = verify_hy_conjugate(f, p0, q)
        assert record.lhs == pytest.approx(conj.lhs, rel=1e-10)
        assert record.rhs == pytest.approx(conj.rhs, rel=1e-10)


def test_as_written_mode_is_available_and_labelled():
    group = make_group([8])
    pair = make_measure_pair(group, float(group.order))
    psi = psi_constant(1.0, 2.0, math.inf, n_grid=96)
    fact = trivial(psi, pair, "discrete", mode="as-written")
    assert fact.mode == "as-written"
    f = random_function(pair, np.random.default_rng(7))
    records = verify_theorem22(f, psi, fact, pair)
    assert records
    assert all(r.name.endswith("as_written") for r in records)
    # the literal chain asserts inequalities that are not theorems; it is kept
    # behind the flag for inspection and is allowed to fail


def test_verify_rejects_mismatched_inputs(compact_pair):
    psi = psi_constant(1.0, n_grid=64)
    fact = trivial(psi, compact_pair, "compact")
    other = make_measure_pair(compact_pair.group, 2.0)
    f = random_function(other, np.random.default_rng(8))
    with pytest.raises(ValueError, match="disagree"):
        verify_theorem21(f, psi, fact, other)
    on_y = GroupFunction(compact_pair, "Y", np.ones(compact_pair.group.order))
    with pytest.raises(ValueError, match="side X"):
        verify_theorem21(on_y, psi, fact, compact_pair)
