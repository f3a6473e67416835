"""Scalar S-matrix models with a single simple resonance pole.

The model family is

    S(E) = ((E - conj(mu)) / (E - mu)) * S1(E),
    S1(E) = prod_k ((E - conj(mu_k)) / (E - mu_k)) * exp(i a E),

a Blaschke factor carrying the resonance pole at ``mu = e0 - i*gamma``
(lower half-plane), times an inner factor S1 made of further Blaschke
factors and an exponential phase.  On the real axis every factor is
unimodular, so |S(E)| = 1 identically; S1 has no pole at mu by
construction.  The "ideal" resonance is S1 == 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .grid import EnergyGrid, OperatorMatrix, OpFlag

__all__ = ["ResonanceParams", "SMatrixModel", "eval_smatrix",
           "multiplication_operator", "pole_factor_deviation"]


@dataclass(frozen=True)
class ResonanceParams:
    """Location of the resonance pole mu = e0 - i*gamma (Im mu < 0)."""

    e0: float
    gamma: float

    def __post_init__(self):
        if self.e0 <= 0:
            raise ParameterError(f"resonance energy must be positive, got {self.e0}")
        if self.gamma <= 0:
            raise ParameterError(f"resonance half-width must be positive, got {self.gamma}")

    @property
    def mu(self) -> complex:
        return complex(self.e0, -self.gamma)

    @property
    def sharpness(self) -> float:
        """gamma / e0; small values mean a sharp (narrow) resonance."""
        return self.gamma / self.e0


@dataclass(frozen=True)
class SMatrixModel:
    pole: ResonanceParams
    extra_poles: tuple = field(default_factory=tuple)
    phase_a: float = 0.0

    def __post_init__(self):
        extras = tuple(ResonanceParams(p.e0, p.gamma) if isinstance(p, ResonanceParams)
                       else ResonanceParams(float(np.real(p)), float(-np.imag(p)))
                       for p in self.extra_poles)
        object.__setattr__(self, "extra_poles", extras)
        if self.phase_a < 0:
            raise ParameterError("phase coefficient must be >= 0")

    @property
    def is_pure_blaschke(self) -> bool:
        return not self.extra_poles and self.phase_a == 0.0


def _blaschke(E, mu: complex):
    return (E - np.conj(mu)) / (E - mu)


def eval_smatrix(model: SMatrixModel, E):
    """Evaluate S(E) on real energies; the result is unimodular."""
    E = np.asarray(E, float)
    s = _blaschke(E, model.pole.mu)
    for p in model.extra_poles:
        s = s * _blaschke(E, p.mu)
    if model.phase_a:
        s = s * np.exp(1j * model.phase_a * E)
    return s


def eval_inner_factor(model: SMatrixModel, E):
    """S1(E) = S(E) * (E - mu)/(E - conj(mu)); finite at E = e0."""
    E = np.asarray(E, float)
    s = np.ones_like(E, dtype=complex)
    for p in model.extra_poles:
        s = s * _blaschke(E, p.mu)
    if model.phase_a:
        s = s * np.exp(1j * model.phase_a * E)
    return s


def pole_factor_deviation(model: SMatrixModel, E):
    """|1 - ((E - mu)/(E - conj(mu))) * S(E)| = |1 - S1(E)|.

    This measures how far the model's phase shift is from an ideal
    single-Blaschke (Breit-Wigner) resonance; it vanishes identically for
    the pure model.
    """
    return np.abs(1.0 - eval_inner_factor(model, E))


def multiplication_operator(model: SMatrixModel, grid: EnergyGrid,
                            conjugate: bool = False) -> OperatorMatrix:
    """Diagonal operator multiplying samples by S(E_i) (or its conjugate)."""
    d = eval_smatrix(model, grid.nodes)
    if conjugate:
        d = np.conj(d)
    return OperatorMatrix(grid, np.diag(d), frozenset({OpFlag.UNITARY, OpFlag.CONTRACTION}))
