import numpy as np
import pytest

from lyapscat import (Direction, DomainKind, ParameterError, ResonanceParams,
                      SMatrixModel, StateVector, apply_z_app,
                      build_hardy_projectors, build_lyapunov_pair, build_z_app,
                      evolve, halfline_child, make_grid, semigroup_defect,
                      transition_decompose, z_backward, z_forward)
from lyapscat.evolution import z_forward_matrix
from lyapscat.grid import apply_operator


@pytest.fixture(scope="module")
def setup():
    full = make_grid(DomainKind.FULL_LINE, 1024, 50.0)
    hp = build_hardy_projectors(full)
    half = halfline_child(full)
    pair = build_lyapunov_pair(hp, half)
    rng = np.random.default_rng(5)
    v = np.zeros(half.n, complex)
    for _ in range(4):
        a = rng.uniform(0.15, 0.6) * half.e_max
        s = rng.uniform(0.03, 0.08) * half.e_max
        v += (rng.standard_normal() + 1j * rng.standard_normal()) \
            * np.exp(-((half.nodes - a) ** 2) / (2 * s ** 2))
    v /= np.sqrt(np.sum(half.weights * np.abs(v) ** 2))
    return pair, StateVector(half, v)


def test_evolve_identity_unitarity_composition(setup):
    pair, psi = setup
    assert np.array_equal(evolve(psi, 0.0).values, psi.values)
    assert np.isclose(evolve(psi, 17.3).norm(), psi.norm(), rtol=1e-14)
    ab = evolve(evolve(psi, 3.0), 4.0)
    direct = evolve(psi, 7.0)
    assert np.max(np.abs(ab.values - direct.values)) < 1e-12


def test_z_forward_at_zero_and_contraction(setup):
    pair, phi = setup
    z0 = z_forward(pair, phi, 0.0)
    assert np.allclose(z0.values, pair.apply_lambda_f(phi).values)
    # nonincreasing up to the same discretization tolerance as the
    # Lyapunov traces (||Z_F(t) Lambda phi||^2 is such a trace)
    norms = np.array([z_forward(pair, phi, t).norm()
                      for t in np.linspace(0, 15, 13)])
    viol = np.max(np.maximum(np.diff(norms ** 2), 0.0), initial=0.0)
    assert viol <= 1e-5


def test_z_forward_rejects_negative_time(setup):
    pair, phi = setup
    with pytest.raises(ParameterError):
        z_forward(pair, phi, -1.0)
    with pytest.raises(ParameterError):
        z_backward(pair, phi, 1.0)


def test_exact_semigroup_law_on_range(setup):
    # through the intertwining representation the law is pure phase algebra
    pair, phi = setup
    z12 = z_forward(pair, evolve(phi, 12.0), 8.0)
    zs = z_forward(pair, phi, 20.0)
    defect = np.sqrt(np.sum(phi.grid.weights * np.abs(z12.values - zs.values) ** 2))
    assert defect <= 1e-10 * phi.norm()


def test_z_backward_contraction_toward_past(setup):
    pair, phi = setup
    norms = np.array([z_backward(pair, phi, -t).norm()
                      for t in np.linspace(0, 15, 13)])
    viol = np.max(np.maximum(np.diff(norms ** 2), 0.0), initial=0.0)
    assert viol <= 1e-5
    # strong decay for a smooth peaked packet well before the grid horizon
    far = z_backward(pair, phi, -0.5 * np.pi / phi.grid.spacing)
    assert far.norm() <= 0.05 * z_backward(pair, phi, 0.0).norm()


def test_z_app_matrix_matches_factored_action(setup):
    pair, psi = setup
    model = SMatrixModel(ResonanceParams(1.0, 0.1))
    zop = build_z_app(pair, model, 3.0)
    via_matrix = apply_operator(zop, psi)
    via_apply = apply_z_app(pair, model, 3.0, psi)
    assert np.max(np.abs(via_matrix.values - via_apply.values)) < 1e-10


def test_z_app_zero_time_is_product_of_roots(setup):
    pair, psi = setup
    model = SMatrixModel(ResonanceParams(1.0, 0.1))
    z0 = apply_z_app(pair, model, 0.0, psi)
    sdiag = (psi.grid.nodes - (1 + 0.1j)) / (psi.grid.nodes - (1 - 0.1j))
    x = StateVector(psi.grid, np.conj(sdiag) * psi.values)
    x = pair.apply_lambda_b(x)
    x = StateVector(psi.grid, sdiag * x.values)
    x = pair.apply_lambda_f(x)
    assert np.max(np.abs(z0.values - x.values)) < 1e-12


def test_z_app_contraction_and_nontrivial_defect(setup):
    pair, psi = setup
    model = SMatrixModel(ResonanceParams(1.0, 0.1), extra_poles=(4 - 0.8j,),
                         phase_a=0.05)
    for t in (0.0, 5.0, 20.0):
        assert apply_z_app(pair, model, t, psi).norm() <= psi.norm() * (1 + 1e-10)
    rep = semigroup_defect(pair, model, psi, 10.0, 10.0)
    assert rep.defect > 1e-4          # not an exact semigroup
    assert rep.contraction_ok


def test_transition_components_sum_to_evolved_state(setup):
    pair, psi = setup
    for direction in (Direction.FORWARD, Direction.BACKWARD):
        b, f = transition_decompose(pair, psi, 4.0, direction)
        target = evolve(psi, 4.0)
        assert np.max(np.abs(b.values + f.values - target.values)) < 1e-12


def test_transition_asymptotics(setup):
    pair, psi = setup
    horizon = 0.5 * np.pi / psi.grid.spacing
    # forward: the Lambda_F component dies toward the future
    b0, _ = transition_decompose(pair, psi, 0.0, Direction.FORWARD)
    bT, _ = transition_decompose(pair, psi, horizon, Direction.FORWARD)
    assert bT.norm() <= 0.05 * b0.norm()
    # backward: the Lambda_B component dies toward the past
    _, f0 = transition_decompose(pair, psi, 0.0, Direction.BACKWARD)
    _, fT = transition_decompose(pair, psi, -horizon, Direction.BACKWARD)
    assert fT.norm() <= 0.05 * f0.norm()


def test_z_forward_matrix_intertwining_residual(setup):
    # diagnostic dense form: residual of Lambda_F U(t) - Z(t) Lambda_F is
    # reported against the eigen floor, not rounding
    pair, psi = setup
    t = 2.0
    zmat = z_forward_matrix(pair, t)
    lhs = pair.apply_lambda_f(evolve(psi, t))
    rhs = apply_operator(zmat, pair.apply_lambda_f(psi))
    resid = np.sqrt(np.sum(psi.grid.weights * np.abs(lhs.values - rhs.values) ** 2))
    assert resid <= np.sqrt(pair.eigen_floor)
