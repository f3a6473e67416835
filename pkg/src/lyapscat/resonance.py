"""Resonance states, survival decomposition, and the bound verifiers.

For a simple S-matrix pole at ``mu = e0 - i gamma`` the approximate
resonance state in the outgoing representation is the sampled Lorentzian
profile ``psi_app(E) = 1/(E - mu)`` on the half line; the resonance state
``psi_res`` is its preimage under ``Lambda_F``, obtained through the
spectral factorization with components below the eigen floor dropped
(truncated inverse).  Closed forms used as oracles:

    ||psi_app||^2 = (1/gamma) (pi/2 + arctan(e0/gamma))      (half line)
    ||psi_res||^2 -> pi/gamma                                 (n -> inf)
    r = ||psi_app||^2 / ||psi_res||^2 -> 1/2 + arctan(e0/gamma)/pi

The contraction property of Lambda_F forces r <= 1 at every grid size.

The verifiers turn each inequality of the resonance analysis into a
``BoundReport`` with the measured left side, every right-side term, the
collected constant, and a pass flag at a stated relative report tolerance.
The projection-defect bound reads

    || psin - L+ L- psin || <= C (1 - r)^(1/2)
        + ( integral |1 - ((E-mu)/(E-conj mu)) S(E)|^2 |psi_app|^2 / ||psi_app||^2 )^(1/2)

with C = 1 + sqrt(2) + 1/sqrt(2), the smallest constant supported by the
chain of intermediate estimates (see ``bound_chain_report``); the second
term vanishes identically for a pure Blaschke model.  The right side is
evaluated with the closed-form r (the independent oracle); the measured
discrete r is reported alongside.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionError, UsageError
from .grid import DomainKind, EnergyGrid, StateVector, inner
from .lyapunov import LyapunovPair
from .smatrix import ResonanceParams, SMatrixModel, eval_smatrix, pole_factor_deviation
from .evolution import apply_z_app

__all__ = ["ResonanceStates", "BoundReport", "build_resonance_states",
           "decompose_lambda_plus", "survival_decomposition",
           "eigenvector_deviation", "projection_defect_report",
           "bound_chain_report", "BOUND_CONSTANT", "closed_form_ratio",
           "closed_form_norm_app2", "background_bound"]

#: constant collected from the intermediate estimates: (1 + sqrt 2) from the
#: psi_res - psi_app comparison plus 1/sqrt 2 from the Hardy norm of the
#: reflected kernel
BOUND_CONSTANT = 1.0 + np.sqrt(2.0) + 1.0 / np.sqrt(2.0)

REPORT_TOL = 1e-3


def closed_form_norm_app2(params: ResonanceParams) -> float:
    """(1/gamma)(pi/2 + arctan(e0/gamma)): half-line mass of the Lorentzian."""
    return (np.pi / 2 + np.arctan(params.e0 / params.gamma)) / params.gamma


def closed_form_ratio(params: ResonanceParams) -> float:
    """r = 1/2 + arctan(e0/gamma)/pi, the sharpness ratio of the resonance."""
    return 0.5 + np.arctan(params.e0 / params.gamma) / np.pi


def background_bound(params: ResonanceParams) -> float:
    """(1/r^2 - 1)^(1/2): bound on the survival-amplitude background term."""
    r = closed_form_ratio(params)
    return float(np.sqrt(1.0 / r ** 2 - 1.0))


@dataclass(frozen=True)
class BoundReport:
    """One verified inequality: lhs <= sum(rhs_terms) up to report_tol."""

    name: str
    lhs: float
    rhs_terms: dict
    rhs_total: float
    constant_c: float
    passed: bool
    grid_meta: tuple
    extra: dict = field(default_factory=dict)

    @staticmethod
    def make(name, lhs, rhs_terms, grid, constant_c=float("nan"),
             tol=REPORT_TOL, atol=1e-12, extra=None):
        total = float(sum(rhs_terms.values()))
        return BoundReport(
            name=name, lhs=float(lhs), rhs_terms=dict(rhs_terms),
            rhs_total=total, constant_c=float(constant_c),
            passed=bool(lhs <= total * (1.0 + tol) + atol),
            grid_meta=(grid.n, grid.e_max), extra=dict(extra or {}))


@dataclass(frozen=True)
class ResonanceStates:
    params: ResonanceParams
    psi_app: StateVector
    psi_res: StateVector
    norm_app2: float
    norm_res2: float
    ratio: float
    conditioning: float

    @property
    def psi_res_normalized(self) -> StateVector:
        return StateVector(self.psi_res.grid,
                           self.psi_res.values / np.sqrt(self.norm_res2),
                           self.psi_res.rep_tag)


def build_resonance_states(pair: LyapunovPair, params: ResonanceParams) -> ResonanceStates:
    """Sample psi_app analytically and solve Lambda_F psi_res = psi_app.

    Preconditions: the resonance must sit well inside the grid
    (e0 + 10 gamma < e_max) and be resolvable (gamma >= 2 * node spacing;
    below 4 spacings the resolution is marginal and reported values carry
    visibly larger discretization errors).

    The solve uses the spectral factorization of Lambda_F with components
    below the pair's eigen floor dropped; the recorded conditioning is the
    inverse floor.  Accurate resonance norms additionally require the pair
    to have been built with its window dressing covering the pole (the
    default dressing family includes the built-in suite; see
    ``build_lyapunov_pair``).
    """
    grid = pair.grid_half
    if grid.domain_kind is not DomainKind.HALF_LINE:
        raise UsageError("resonance states live on the half-line grid")
    sp = grid.spacing
    if params.gamma < 2.0 * sp:
        raise PreconditionError(
            f"resonance width gamma={params.gamma:g} is below 2 node spacings "
            f"({2 * sp:g}); increase n to at least "
            f"{int(np.ceil(grid.n * 2 * sp / params.gamma))} or shrink e_max")
    if params.e0 + 10.0 * params.gamma >= grid.e_max:
        raise PreconditionError(
            f"resonance at e0={params.e0:g} (width {params.gamma:g}) sits too "
            f"close to the truncation edge e_max={grid.e_max:g}")
    psi_app = StateVector(grid, 1.0 / (grid.nodes - params.mu))
    psi_res = pair.solve_lambda_f(psi_app)
    na2 = psi_app.norm2()
    nr2 = psi_res.norm2()
    return ResonanceStates(
        params=params, psi_app=psi_app, psi_res=psi_res,
        norm_app2=na2, norm_res2=nr2, ratio=na2 / nr2,
        conditioning=pair.conditioning)


def decompose_lambda_plus(states: ResonanceStates, pair: LyapunovPair,
                          psi: StateVector):
    """Resonance-pole-induced decomposition of Lambda_F psi.

    Returns ``(b, coeff)`` with

        Lambda_F psi = b + coeff * psi_res,
        coeff = <Lambda_F psi_res, psi> / ||psi_res||^2,

    and b orthogonal to psi_res exactly (b is the residual after the
    orthogonal projection onto the resonance direction).  In the continuum
    Lambda_F psi_res is the approximate resonance state itself, so the
    coefficient is the overlap with psi_app; at finite n the resolved part
    of the solve is used, which preserves the orthogonality identity to
    rounding (the raw-mass difference is far below the spectral floor's
    inverse-weighted significance).  Applying the decomposition to
    psi = psi_app itself gives coeff = ratio up to that same tiny defect;
    a state orthogonal to psi_app produces a vanishing coefficient.
    """
    lam_psi = pair.apply_lambda_f(psi)
    app_kept = pair.apply_lambda_f(states.psi_res)
    coeff = inner(app_kept, psi) / states.norm_res2
    b = StateVector(psi.grid, lam_psi.values - coeff * states.psi_res.values, psi.rep_tag)
    return b, coeff


def survival_decomposition(states: ResonanceStates, pair: LyapunovPair, times):
    """Survival amplitude of psi_app split into pole term and background.

    amplitude(t) = <psi_app, u(t) psi_app> / ||psi_app||^2  (direct quadrature)
    pole_term(t) = exp(-i mu t)
    background(t) = amplitude - pole_term

    The background obeys |B(t)| <= (1/r^2 - 1)^(1/2) for all t >= 0.
    """
    times = np.asarray(times, float)
    if np.any(times < 0):
        raise UsageError("survival decomposition is a forward-time object")
    grid = states.psi_app.grid
    w2 = grid.weights * np.abs(states.psi_app.values) ** 2
    out = []
    mu = states.params.mu
    for t in times:
        amp = complex(np.sum(w2 * np.exp(-1j * grid.nodes * t))) / states.norm_app2
        pole = complex(np.exp(-1j * mu * t))
        out.append({"t": float(t), "amplitude": amp, "pole_term": pole,
                    "background": amp - pole})
    return out


def eigenvector_deviation(states: ResonanceStates, pair: LyapunovPair,
                          s: SMatrixModel, times) -> list:
    """Per-time check that the normalized resonance state is an approximate
    eigenvector of the approximate Lax-Phillips semigroup:

        || Z_app(t) psin - exp(-i mu t) psin || <= || psin - L+ L- psin ||.

    The right side is time independent (it is the t = 0 left side)."""
    if abs(s.pole.mu - states.params.mu) > 1e-12:
        raise UsageError("S-matrix model and resonance states carry different poles")
    psin = states.psi_res_normalized
    grid = psin.grid
    w = grid.weights
    z0 = apply_z_app(pair, s, 0.0, psin)
    rhs = float(np.sqrt(np.sum(w * np.abs(psin.values - z0.values) ** 2)))
    mu = states.params.mu
    reports = []
    for t in np.asarray(times, float):
        if t < 0:
            raise UsageError("eigenvector deviation is a forward-time check")
        zt = apply_z_app(pair, s, float(t), psin)
        lhs = float(np.sqrt(np.sum(w * np.abs(zt.values - np.exp(-1j * mu * t) * psin.values) ** 2)))
        reports.append(BoundReport.make(
            f"eigenvector-deviation[t={t:g}]", lhs,
            {"projection_defect": rhs}, grid, extra={"t": float(t)}))
    return reports


def _deviation_term(states: ResonanceStates, s: SMatrixModel) -> float:
    """Second right-side term: weighted quadrature of the phase-shift
    deviation integrand |1 - ((E - mu)/(E - conj mu)) S(E)|^2."""
    grid = states.psi_app.grid
    dev = pole_factor_deviation(s, grid.nodes)
    w2 = grid.weights * np.abs(states.psi_app.values) ** 2
    return float(np.sqrt(np.sum(w2 * dev ** 2) / states.norm_app2))


def projection_defect_report(states: ResonanceStates, pair: LyapunovPair,
                             s: SMatrixModel) -> BoundReport:
    """Main estimate: the defect of L+ L- on the normalized resonance state
    is bounded by the sharpness term plus the phase-deviation term."""
    if abs(s.pole.mu - states.params.mu) > 1e-12:
        raise UsageError("S-matrix model and resonance states carry different poles")
    psin = states.psi_res_normalized
    w = psin.grid.weights
    z0 = apply_z_app(pair, s, 0.0, psin)
    lhs = float(np.sqrt(np.sum(w * np.abs(psin.values - z0.values) ** 2)))
    r = closed_form_ratio(states.params)
    term1 = BOUND_CONSTANT * np.sqrt(1.0 - r)
    term2 = _deviation_term(states, s)
    return BoundReport.make(
        "projection-defect", lhs,
        {"sharpness_term": term1, "phase_deviation_term": term2},
        psin.grid, constant_c=BOUND_CONSTANT,
        extra={"ratio_closed_form": r, "ratio_measured": states.ratio,
               "sharpness": states.params.sharpness})


def bound_chain_report(states: ResonanceStates, pair: LyapunovPair,
                       s: SMatrixModel) -> list:
    """Verify the intermediate estimates feeding the main bound.

    (a) ||(I - L_B) S* psi_res||^2 <= <S* psi_res, M_F S* psi_res>
    (b) ||psi_res - psi_app|| <= (1 + sqrt 2) (1 - r)^(1/2) ||psi_res||
        with the measured discrete r (pure operator algebra)
    (c) the deviation term equals the norm of psi_app - S * (reflected
        kernel), an identity of the diagonal multipliers
    (d) ||P+ (zero-extended reflected kernel)|| against its closed form
        (1/sqrt 2) (1 - r)^(1/2) ||psi_app||, evaluated via M_B:
        ||P+ embed(g)||^2 = <g, (I - M_B) g> on the half line... the block
        identity <g, M_F g> is used directly.
    """
    grid = pair.grid_half
    w = grid.weights
    mu = states.params.mu
    sdiag = eval_smatrix(s, grid.nodes)
    reports = []

    x = StateVector(grid, np.conj(sdiag) * states.psi_res.values)
    lbx = pair.apply_lambda_b(x)
    lhs_a = float(np.sum(w * np.abs(x.values - lbx.values) ** 2))
    mfx = pair.apply_m_f(x)
    rhs_a = float(np.real(np.sum(w * np.conj(x.values) * mfx.values)))
    reports.append(BoundReport.make(
        "backward-root-defect", lhs_a, {"forward_expectation": rhs_a}, grid))

    diff = states.psi_res.values - states.psi_app.values
    lhs_b = float(np.sqrt(np.sum(w * np.abs(diff) ** 2)))
    rhs_b = (1 + np.sqrt(2)) * np.sqrt(max(0.0, 1 - states.ratio)) * np.sqrt(states.norm_res2)
    reports.append(BoundReport.make(
        "state-difference", lhs_b, {"sharpness_bound": rhs_b}, grid,
        constant_c=1 + np.sqrt(2),
        extra={"slack": rhs_b - lhs_b}))

    refl = 1.0 / (grid.nodes - np.conj(mu))
    lhs_c = float(np.sqrt(np.sum(w * np.abs(states.psi_app.values - sdiag * refl) ** 2)))
    rhs_c = _deviation_term(states, s) * np.sqrt(states.norm_app2)
    reports.append(BoundReport.make(
        "phase-deviation-identity", lhs_c, {"deviation_norm": rhs_c}, grid,
        tol=1e-9))

    gv = StateVector(grid, refl)
    mfg = pair.apply_m_f(gv)
    lhs_d = float(np.sqrt(np.real(np.sum(w * np.conj(gv.values) * mfg.values))))
    r = closed_form_ratio(states.params)
    rhs_d = np.sqrt(0.5 * (1 - r) * closed_form_norm_app2(states.params))
    reports.append(BoundReport.make(
        "reflected-kernel-projection", lhs_d, {"closed_form": rhs_d}, grid,
        constant_c=1 / np.sqrt(2), tol=2e-2,
        extra={"relative_error": abs(lhs_d - rhs_d) / rhs_d}))
    return reports
