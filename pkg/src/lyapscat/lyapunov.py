"""Forward and backward Lyapunov operators and their square roots.

On the half line the forward Lyapunov operator is the compression of the
upper-Hardy projection::

    M_F = (P_{R+} P_+ P_{R+}) restricted to L2(R+),

a positive, contractive, injective operator whose expectation value along
any trajectory ``psi(t) = exp(-iEt) psi`` decreases monotonically in time;
its complement ``M_B = I - M_F`` (the compression of P_-) decreases toward
the past.  Their square roots ``Lambda_F, Lambda_B`` intertwine the unitary
evolution with contraction semigroups and are the building blocks of the
approximate Lax-Phillips semigroup.

When the spectrum fills the whole line the compression step disappears and
both operators collapse to the exact Hardy projections (the classical
Lax-Phillips situation): M^2 = M and Lambda = M.

Discretization notes
--------------------
The half-line block is taken from the translation-invariant bulk of the
Hardy splitting (see ``hardy.bulk_halfline_block``) and symmetrized; its
raw spectrum lies in [0, 1] up to rounding (measured defects below 1e-13),
and eigenvalues are floored at a tiny positive value so the strict
positivity of the continuum operator (injectivity) is represented
numerically.  The spectrum of the compression clusters exponentially at
both ends; ``eigen_floor`` marks the smallest value treated as resolved by
inverse applications.  The continuum operator is injective with dense
range and unboundedly invertible, which at finite n shows up as a
condition number growing with n, not as exact singularity.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError, UsageError
from .grid import (DomainKind, EnergyGrid, OperatorMatrix, OpFlag, StateVector,
                   halfline_child, is_halfline_child)
from .hardy import HardyProjector

__all__ = ["LyapunovPair", "build_m_f", "build_m_b", "build_m_general",
           "build_lyapunov_pair", "sqrt_operator", "lyapunov_trace"]

_SPD_FLAGS = frozenset({OpFlag.SELF_ADJOINT, OpFlag.POSITIVE, OpFlag.CONTRACTION})

#: numerical stand-in for strict positivity: eigenvalues whose true values
#: are exponentially small get floored here instead of at rounding noise
POSITIVITY_FLOOR = 1e-14

#: spectral values below this are boundary-layer artifacts of the
#: compression at practical grid sizes; inverse solves drop them
DEFAULT_EIGEN_FLOOR = 1e-2


def _check_child(hp: HardyProjector, half: EnergyGrid):
    if half.domain_kind is not DomainKind.HALF_LINE:
        raise UsageError("expected a half-line grid")
    if not is_halfline_child(half, hp.grid):
        raise UsageError("half-line grid is not the child of the projector grid")


def _halfline_raw(hp: HardyProjector, half: EnergyGrid) -> np.ndarray:
    _check_child(hp, half)
    m = hp.bulk_halfline_block()
    return 0.5 * (m + m.conj().T)


def build_m_f(hp: HardyProjector, half: EnergyGrid) -> OperatorMatrix:
    """Forward Lyapunov operator: half-line compression of p_plus.

    The symmetrized block's spectrum already sits in [0, 1] to rounding
    (the eigenvalue clip would move nothing beyond ~1e-13), so no
    eigendecomposition is spent here; structural flags are verified by the
    test suite via ``verify_flags``.
    """
    return OperatorMatrix(half, _halfline_raw(hp, half), _SPD_FLAGS)


def build_m_b(hp: HardyProjector, half: EnergyGrid) -> OperatorMatrix:
    """Backward Lyapunov operator: half-line compression of p_minus."""
    return OperatorMatrix(half, np.eye(half.n) - _halfline_raw(hp, half), _SPD_FLAGS)


def build_m_general(hp: HardyProjector, sigma=None):
    """General construction M+- for a spectrum sigma_ac in {R, R+}.

    ``sigma=None`` (or the projector's own full-line grid) selects the
    full-line case: the spectral projection is the identity and the pair
    collapses to the exact Hardy projections.  Passing the half-line child
    grid reproduces (M_F, M_B).
    """
    if sigma is None or (isinstance(sigma, EnergyGrid)
                         and sigma.domain_kind is DomainKind.FULL_LINE):
        if isinstance(sigma, EnergyGrid) and sigma != hp.grid:
            raise UsageError("full-line sigma must be the projector's own grid")
        return hp.p_plus, hp.p_minus
    if isinstance(sigma, EnergyGrid) and sigma.domain_kind is DomainKind.HALF_LINE:
        return build_m_f(hp, sigma), build_m_b(hp, sigma)
    raise UsageError(f"unsupported spectral support {sigma!r}")


def sqrt_operator(m: OperatorMatrix) -> OperatorMatrix:
    """Spectral square root of a positive contraction.

    Eigenvalues are clipped to [0, 1] before the root, so the result is
    again a positive contraction; the square root of a projection is the
    projection itself (idempotent spectrum).
    """
    if OpFlag.SELF_ADJOINT not in m.flags or OpFlag.POSITIVE not in m.flags:
        raise UsageError("sqrt_operator needs an operator flagged self-adjoint and positive")
    lam, v = np.linalg.eigh(0.5 * (m.entries + m.entries.conj().T))
    root = (v * np.sqrt(np.clip(lam, 0.0, 1.0))) @ v.conj().T
    return OperatorMatrix(m.grid, root, _SPD_FLAGS)


class LyapunovPair:
    """M_F, M_B and their square roots on a shared eigenbasis.

    One Hermitian eigendecomposition serves all four operators, which makes
    the complementarity M_F + M_B = I and the commutation of the roots
    exact to rounding.  Dense operator matrices are materialized lazily;
    applications go through the factored basis.

    ``eigen_floor`` is the smallest spectral value considered resolved.
    Inverse applications either drop components below it (truncated
    inverse; default for state solves) or damp them smoothly (Tikhonov;
    preferred for semigroup-action diagnostics, where the hard cut causes
    spurious dephasing).
    """

    def __init__(self, grid_half: EnergyGrid, basis: np.ndarray,
                 spectrum: np.ndarray, eigen_floor: float):
        self.grid_half = grid_half
        self.basis = basis
        self.spectrum = spectrum
        self.eigen_floor = float(eigen_floor)
        self._cache = {}

    def _materialize(self, key, values):
        if key not in self._cache:
            entries = (self.basis * values) @ self.basis.conj().T
            self._cache[key] = OperatorMatrix(self.grid_half, entries, _SPD_FLAGS)
        return self._cache[key]

    @property
    def m_f(self) -> OperatorMatrix:
        return self._materialize("m_f", self.spectrum)

    @property
    def m_b(self) -> OperatorMatrix:
        return self._materialize("m_b", 1.0 - self.spectrum)

    @property
    def lambda_f(self) -> OperatorMatrix:
        return self._materialize("lambda_f", np.sqrt(self.spectrum))

    @property
    def lambda_b(self) -> OperatorMatrix:
        return self._materialize("lambda_b", np.sqrt(1.0 - self.spectrum))

    @property
    def conditioning(self) -> float:
        return 1.0 / self.eigen_floor

    def _coeff(self, psi: StateVector) -> np.ndarray:
        if psi.grid != self.grid_half:
            raise UsageError("state lives on a different grid than the Lyapunov pair")
        return self.basis.conj().T @ psi.values

    def _assemble(self, coef: np.ndarray, like: StateVector) -> StateVector:
        return StateVector(like.grid, self.basis @ coef, like.rep_tag)

    def apply_spectral(self, fn, psi: StateVector) -> StateVector:
        """Apply f(M_F) through the shared eigenbasis."""
        return self._assemble(fn(self.spectrum) * self._coeff(psi), psi)

    def apply_m_f(self, psi: StateVector) -> StateVector:
        return self.apply_spectral(lambda lam: lam, psi)

    def apply_m_b(self, psi: StateVector) -> StateVector:
        return self.apply_spectral(lambda lam: 1.0 - lam, psi)

    def apply_lambda_f(self, psi: StateVector) -> StateVector:
        return self.apply_spectral(np.sqrt, psi)

    def apply_lambda_b(self, psi: StateVector) -> StateVector:
        return self.apply_spectral(lambda lam: np.sqrt(1.0 - lam), psi)

    def _inverse_weights(self, power: float, floor: float, method: str) -> np.ndarray:
        lam = self.spectrum
        if method == "truncate":
            keep = lam >= floor
            w = np.zeros_like(lam)
            w[keep] = lam[keep] ** (-power)
            return w
        if method == "tikhonov":
            # lam^(2-power) / (lam^2 + floor^2): equals lam^(-power) for
            # lam >> floor, vanishes smoothly below it
            return lam ** (2.0 - power) / (lam ** 2 + floor ** 2)
        raise ParameterError(f"unknown inverse method {method!r}")

    def solve_lambda_f(self, psi: StateVector, floor: float = None,
                       method: str = "truncate") -> StateVector:
        """Regularized inverse of Lambda_F (components below the floor are
        unresolved at this grid size)."""
        floor = self.eigen_floor if floor is None else floor
        return self._assemble(
            self._inverse_weights(0.5, floor, method) * self._coeff(psi), psi)

    def solve_m_f(self, psi: StateVector, floor: float = None,
                  method: str = "truncate") -> StateVector:
        floor = self.eigen_floor if floor is None else floor
        return self._assemble(
            self._inverse_weights(1.0, floor, method) * self._coeff(psi), psi)


def build_lyapunov_pair(hp: HardyProjector, half: EnergyGrid = None,
                        eigen_floor: float = DEFAULT_EIGEN_FLOOR) -> LyapunovPair:
    """Eigendecompose the half-line compression once and derive all four
    operators (M_F, M_B, Lambda_F, Lambda_B) from the shared basis."""
    if half is None:
        half = halfline_child(hp.grid)
    m = _halfline_raw(hp, half)
    lam, v = np.linalg.eigh(m)
    lam = np.clip(lam, POSITIVITY_FLOOR, 1.0)
    return LyapunovPair(half, v, lam, eigen_floor)


def lyapunov_trace(m: OperatorMatrix, psi: StateVector, times) -> np.ndarray:
    """tau(t) = <psi(t), M psi(t)> along the free evolution of psi.

    For a forward Lyapunov operator the sequence is nonincreasing over
    increasing times and tends to zero; for the backward operator the
    mirror statement holds toward the past.  The faithful-evolution horizon
    of a uniform grid is |t| < pi/spacing (beyond it the discrete dynamics
    wraps around); keep the time grid inside it.
    """
    times = np.asarray(times, float)
    if times.ndim != 1 or (times.size > 1 and np.any(np.diff(times) <= 0)):
        raise ParameterError("times must be a strictly increasing 1-d array")
    if m.grid != psi.grid:
        raise UsageError("operator and state live on different grids")
    e = m.grid.nodes
    w = m.grid.weights
    phases = np.exp(-1j * np.outer(e, times))
    states = phases * psi.values[:, None]
    mstates = m.entries @ states
    return np.real(np.sum(np.conj(states) * (w[:, None] * mstates), axis=0))
