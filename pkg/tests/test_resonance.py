import numpy as np
import pytest

from lyapscat import (BOUND_CONSTANT, DomainKind, PreconditionError,
                      ResonanceParams, SMatrixModel, StateVector, UsageError,
                      background_bound, bound_chain_report,
                      build_hardy_projectors, build_lyapunov_pair,
                      build_resonance_states, closed_form_norm_app2,
                      closed_form_ratio, decompose_lambda_plus,
                      eigenvector_deviation, halfline_child, inner, make_grid,
                      projection_defect_report, survival_decomposition)

MU = ResonanceParams(1.0, 0.1)


@pytest.fixture(scope="module")
def setup():
    full = make_grid(DomainKind.FULL_LINE, 2048, 50.0)
    hp = build_hardy_projectors(full)
    half = halfline_child(full)
    pair = build_lyapunov_pair(hp, half)
    states = build_resonance_states(pair, MU)
    return pair, states


def test_constant_value():
    assert np.isclose(BOUND_CONSTANT, 3.1213203435596424)


def test_closed_forms():
    assert np.isclose(closed_form_norm_app2(MU), 30.419240010986313)
    assert np.isclose(closed_form_ratio(MU), 0.9682744825694465)
    assert np.isclose(background_bound(MU), 0.25807664322, atol=1e-9)


def test_preconditions():
    full = make_grid(DomainKind.FULL_LINE, 512, 50.0)
    hp = build_hardy_projectors(full)
    pair = build_lyapunov_pair(hp, halfline_child(full))
    with pytest.raises(PreconditionError):
        # gamma below 2 node spacings: unresolvable
        build_resonance_states(pair, ResonanceParams(1.0, 0.05))
    with pytest.raises(PreconditionError):
        # resonance too close to the truncation edge
        build_resonance_states(pair, ResonanceParams(48.0, 1.0))


def test_norms_and_ratio(setup):
    _, states = setup
    assert abs(states.norm_app2 - closed_form_norm_app2(MU)) / closed_form_norm_app2(MU) < 5e-3
    target = np.pi / MU.gamma
    assert abs(states.norm_res2 - target) / target < 3e-2
    # contraction of Lambda_F forces the ordering of the norms
    assert states.norm_res2 >= states.norm_app2
    assert abs(states.ratio - closed_form_ratio(MU)) / closed_form_ratio(MU) < 5e-3


def test_decomposition_orthogonality_and_reconstruction(setup):
    pair, states = setup
    rng = np.random.default_rng(3)
    half = pair.grid_half
    psi = StateVector(half, rng.standard_normal(half.n) + 1j * rng.standard_normal(half.n))
    b, coeff = decompose_lambda_plus(states, pair, psi)
    # reconstruction is the definition
    lam_psi = pair.apply_lambda_f(psi)
    recon = b.values + coeff * states.psi_res.values
    assert np.max(np.abs(recon - lam_psi.values)) < 1e-10
    # residual orthogonal to the resonance direction
    assert abs(inner(b, states.psi_res)) < 1e-8 * b.norm() * states.psi_res.norm()


def test_decomposition_resonance_coefficient(setup):
    pair, states = setup
    # applying the decomposition to psi_app itself isolates the resonance
    # direction with weight ||psi_app||^2/||psi_res||^2 = ratio
    _, coeff = decompose_lambda_plus(states, pair, states.psi_app)
    assert np.isclose(coeff.real, states.ratio, rtol=1e-3)
    assert abs(coeff.imag) < 1e-6


def test_decomposition_orthogonal_state_kills_coefficient(setup):
    pair, states = setup
    rng = np.random.default_rng(4)
    half = pair.grid_half
    raw = StateVector(half, rng.standard_normal(half.n) + 1j * rng.standard_normal(half.n))
    # orthogonalize against the resonance-coefficient functional: exact kill
    app_kept = pair.apply_lambda_f(states.psi_res)
    c = inner(app_kept, raw) / app_kept.norm2()
    psi = StateVector(half, raw.values - c * app_kept.values)
    _, coeff = decompose_lambda_plus(states, pair, psi)
    assert abs(coeff) < 1e-12
    # orthogonalizing against the sampled profile kills it to the level of
    # the unresolved spectral mass
    c2 = inner(states.psi_app, raw) / states.norm_app2
    psi2 = StateVector(half, raw.values - c2 * states.psi_app.values)
    _, coeff2 = decompose_lambda_plus(states, pair, psi2)
    assert abs(coeff2) < 1e-2


def test_survival_decomposition(setup):
    pair, states = setup
    times = np.linspace(0.0, 0.5 * np.pi / pair.grid_half.spacing, 32)
    recs = survival_decomposition(states, pair, times)
    assert np.isclose(abs(recs[0]["amplitude"]), 1.0, atol=1e-12)
    assert abs(recs[0]["background"]) < 1e-10
    bound = background_bound(MU)
    assert all(abs(r["background"]) <= bound * (1 + 1e-3) for r in recs)


def test_projection_defect_report_pure_model(setup):
    pair, states = setup
    rep = projection_defect_report(states, pair, SMatrixModel(MU))
    assert rep.passed
    assert rep.rhs_terms["phase_deviation_term"] <= 1e-10
    assert np.isclose(rep.rhs_terms["sharpness_term"],
                      BOUND_CONSTANT * np.sqrt(1 - closed_form_ratio(MU)),
                      rtol=1e-12)
    assert rep.constant_c == pytest.approx(3.1213203435596424)


def test_projection_defect_report_perturbed_model(setup):
    pair, states = setup
    model = SMatrixModel(MU, extra_poles=(4 - 0.8j,), phase_a=0.05)
    rep = projection_defect_report(states, pair, model)
    assert rep.passed
    assert rep.rhs_terms["phase_deviation_term"] > 1e-3


def test_projection_defect_rejects_mismatched_pole(setup):
    pair, states = setup
    with pytest.raises(UsageError):
        projection_defect_report(states, pair, SMatrixModel(ResonanceParams(2.0, 0.1)))


def test_eigenvector_deviation_bounded(setup):
    pair, states = setup
    times = (0.0, 1.0, 5.0, 20.0, 50.0)
    for model in (SMatrixModel(MU),
                  SMatrixModel(MU, extra_poles=(4 - 0.8j,), phase_a=0.05)):
        reports = eigenvector_deviation(states, pair, model, times)
        assert all(r.passed for r in reports)
        # at t = 0 the two sides coincide by definition
        assert np.isclose(reports[0].lhs, reports[0].rhs_total, rtol=1e-12)


def test_bound_chain(setup):
    pair, states = setup
    for model in (SMatrixModel(MU),
                  SMatrixModel(MU, extra_poles=(4 - 0.8j,), phase_a=0.05)):
        reports = {r.name: r for r in bound_chain_report(states, pair, model)}
        assert reports["backward-root-defect"].passed
        assert reports["state-difference"].passed
        assert reports["state-difference"].extra["slack"] > 0
        assert reports["phase-deviation-identity"].passed
        assert reports["reflected-kernel-projection"].passed


def test_norm_res_convergence_with_window():
    # fixed resolution, growing window: the resonance norm approaches the
    # full-line value pi/gamma monotonically
    errs = []
    for n, e_max in ((512, 25.0), (1024, 50.0), (2048, 100.0)):
        full = make_grid(DomainKind.FULL_LINE, 2 * n, e_max)
        hp = build_hardy_projectors(full)
        pair = build_lyapunov_pair(hp, halfline_child(full))
        st = build_resonance_states(pair, MU)
        errs.append(abs(st.norm_res2 - np.pi / MU.gamma) / (np.pi / MU.gamma))
    assert errs[0] > errs[1] > errs[2]
