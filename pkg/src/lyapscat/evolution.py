"""Free evolution, the intertwined contraction semigroups, and the
approximate Lax-Phillips semigroup.

In an energy representation the evolution group is diagonal,
``[u(t) psi](E) = exp(-iEt) psi(E)``, exactly unitary on the grid.  The
forward semigroup ``Z_F`` is represented through the intertwining relation

    Lambda_F u(t) = Z_F(t) Lambda_F,      t >= 0,

i.e. its action on a vector of the form ``Lambda_F phi`` is *defined* as
``Lambda_F u(t) phi``.  On this representation the composition law holds to
rounding for any grid (pure phase arithmetic) and no operator inverse ever
enters; a dense matrix form with a regularized inverse exists only as a
diagnostic.  The backward semigroup mirrors this for t <= 0 through
``Lambda_B``.

The approximate Lax-Phillips semigroup in the outgoing representation is

    Z_app(t) = Lambda_F S u(t) Lambda_B S*,

with S the diagonal S-matrix multiplication carrying the incoming
representation over to the outgoing one.  Unlike Z_F on its range,
``Z_app`` is *not* an exact semigroup; ``semigroup_defect`` quantifies the
failure.  In full-line (Lax-Phillips limit) mode the Lyapunov roots are
exact projections, Z_app reduces to P+ u(t) P-, and Z(t) = P+ u(t)
satisfies the exact law.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, UsageError
from .grid import OperatorMatrix, OpFlag, StateVector, apply_operator, inner
from .lyapunov import LyapunovPair
from .smatrix import SMatrixModel, eval_smatrix

__all__ = ["evolve", "z_forward", "z_backward", "build_z_app",
           "transition_decompose", "semigroup_defect", "SemigroupDefectReport",
           "Direction"]


def evolve(psi: StateVector, t: float) -> StateVector:
    """Free evolution: pointwise multiplication by exp(-i E t); exactly
    norm-preserving."""
    return StateVector(psi.grid, np.exp(-1j * psi.grid.nodes * t) * psi.values, psi.rep_tag)


def z_forward(pair: LyapunovPair, phi: StateVector, t: float) -> StateVector:
    """Forward semigroup through the intertwining representation.

    Acts on ``psi = Lambda_F phi``; the caller supplies the preimage phi.
    Returns ``Z_F(t) Lambda_F phi = Lambda_F u(t) phi`` for t >= 0.
    """
    if t < 0:
        raise ParameterError("the forward semigroup is defined for t >= 0")
    return pair.apply_lambda_f(evolve(phi, t))


def z_backward(pair: LyapunovPair, phi: StateVector, t: float) -> StateVector:
    """Backward semigroup on ``Lambda_B phi``, defined for t <= 0."""
    if t > 0:
        raise ParameterError("the backward semigroup is defined for t <= 0")
    return pair.apply_lambda_b(evolve(phi, t))


def build_z_app(pair: LyapunovPair, s: SMatrixModel, t: float) -> OperatorMatrix:
    """Dense approximate Lax-Phillips semigroup element at time t >= 0.

    Composition in the outgoing representation:
    ``Lambda_F . S . exp(-iEt) . Lambda_B . S*``; at t = 0 this is the
    product Lambda_+ Lambda_- whose deviation from the identity on the
    resonance state is the subject of the main estimate.  The result is a
    product of contractions and unitaries, hence itself a contraction.
    """
    if t < 0:
        raise ParameterError("the approximate Lax-Phillips semigroup is defined for t >= 0")
    grid = pair.grid_half
    sdiag = eval_smatrix(s, grid.nodes)
    phases = np.exp(-1j * grid.nodes * t)
    inner_part = (sdiag * phases)[:, None] * pair.lambda_b.entries * np.conj(sdiag)[None, :]
    entries = pair.lambda_f.entries @ inner_part
    return OperatorMatrix(grid, entries, frozenset({OpFlag.CONTRACTION}))


def _zapp_values(pair: LyapunovPair, sdiag, t: float, values):
    x = np.conj(sdiag) * values
    x = pair.basis @ (np.sqrt(1.0 - pair.spectrum) * (pair.basis.conj().T @ x))
    x = np.exp(-1j * pair.grid_half.nodes * t) * sdiag * x
    return pair.basis @ (np.sqrt(pair.spectrum) * (pair.basis.conj().T @ x))


def apply_z_app(pair: LyapunovPair, s: SMatrixModel, t: float,
                psi: StateVector) -> StateVector:
    """Matrix-free action of Z_app(t) (same composition as build_z_app)."""
    if t < 0:
        raise ParameterError("the approximate Lax-Phillips semigroup is defined for t >= 0")
    grid = pair.grid_half
    if psi.grid != grid:
        raise UsageError("state lives on a different grid than the Lyapunov pair")
    sdiag = eval_smatrix(s, grid.nodes)
    return StateVector(grid, _zapp_values(pair, sdiag, t, psi.values), psi.rep_tag)


@dataclass(frozen=True)
class SemigroupDefectReport:
    """Composition defect ||Z(t1) Z(t2) psi - Z(t1+t2) psi|| for Z_app."""

    t1: float
    t2: float
    defect: float
    contraction_ok: bool


def semigroup_defect(pair: LyapunovPair, s: SMatrixModel, psi: StateVector,
                     t1: float, t2: float) -> SemigroupDefectReport:
    z2 = apply_z_app(pair, s, t2, psi)
    z12 = apply_z_app(pair, s, t1, z2)
    zsum = apply_z_app(pair, s, t1 + t2, psi)
    defect = float(np.sqrt(np.sum(psi.grid.weights * np.abs(z12.values - zsum.values) ** 2)))
    nrm = psi.norm()
    ok = (z12.norm() <= nrm * (1 + 1e-10)) and (zsum.norm() <= nrm * (1 + 1e-10))
    return SemigroupDefectReport(t1=t1, t2=t2, defect=defect, contraction_ok=bool(ok))


class Direction:
    FORWARD = "forward"
    BACKWARD = "backward"


def transition_decompose(pair: LyapunovPair, psi: StateVector, t: float,
                         direction: str = Direction.FORWARD):
    """Split the evolved state into backward- and forward-asymptotic parts.

    Forward uses (Lambda_F, I - Lambda_F): the Lambda_F component dies out
    as t -> +infinity and carries the state in the far past.  Backward uses
    (I - Lambda_B, Lambda_B) with the mirrored roles.  The two components
    sum to the evolved state exactly.
    """
    psit = evolve(psi, t)
    if direction == Direction.FORWARD:
        backward = pair.apply_lambda_f(psit)
    elif direction == Direction.BACKWARD:
        lb = pair.apply_lambda_b(psit)
        backward = StateVector(psit.grid, psit.values - lb.values, psit.rep_tag)
        return backward, lb
    else:
        raise ParameterError(f"unknown direction {direction!r}")
    forward = StateVector(psit.grid, psit.values - backward.values, psit.rep_tag)
    return backward, forward


def z_forward_matrix(pair: LyapunovPair, t: float, floor: float = None) -> OperatorMatrix:
    """Diagnostic dense form Z_F(t) = Lambda_F u(t) Lambda_F^{-1} with the
    truncated (floored) inverse.  The continuum inverse is unbounded, so the
    residual of the intertwining relation in this form is reported against
    the eigen floor, not against rounding."""
    if t < 0:
        raise ParameterError("the forward semigroup is defined for t >= 0")
    floor = pair.eigen_floor if floor is None else floor
    grid = pair.grid_half
    v, lam = pair.basis, pair.spectrum
    keep = lam >= floor
    inv = np.zeros_like(lam)
    inv[keep] = 1.0 / np.sqrt(lam[keep])
    right = (v * inv) @ v.conj().T
    mid = np.exp(-1j * grid.nodes * t)[:, None] * right
    entries = (v * np.sqrt(lam)) @ (v.conj().T @ mid)
    return OperatorMatrix(grid, entries, frozenset())
