"""Energy-axis discretization and the basic sampled-state algebra.

The library works in energy representations: a state is a complex-valued
function of energy, sampled on a finite quadrature grid.  Two domains occur,
the full line (continuous spectrum filling all of R) and the half line
(spectrum bounded from below, shifted to R+).  The infinite axis is truncated
at ``e_max`` and discretized either with a uniform midpoint rule or with
composite Gauss-Legendre panels.

Inner products carry the quadrature weights::

    <phi, psi> = sum_i w_i conj(phi_i) psi_i

so sampled values stay directly comparable to analytic formulas.  Full-line
grids are built by mirroring a half-line node set, which makes the half-line
grid exactly embeddable into its full-line parent (bit-identical nodes).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError, UsageError


class DomainKind(enum.Enum):
    FULL_LINE = "full-line"
    HALF_LINE = "half-line"


class RepTag(enum.Enum):
    """Which energy representation the samples live in."""

    OUTGOING = "outgoing"
    INCOMING = "incoming"


class OpFlag(enum.Enum):
    SELF_ADJOINT = "self-adjoint"
    POSITIVE = "positive"
    CONTRACTION = "contraction"
    UNITARY = "unitary"


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class EnergyGrid:
    """Quadrature discretization of the (truncated) energy axis."""

    nodes: np.ndarray
    weights: np.ndarray
    domain_kind: DomainKind
    e_max: float
    scheme: str = "uniform"

    def __post_init__(self):
        object.__setattr__(self, "nodes", _readonly(np.asarray(self.nodes, float)))
        object.__setattr__(self, "weights", _readonly(np.asarray(self.weights, float)))
        if self.nodes.ndim != 1 or self.nodes.shape != self.weights.shape:
            raise ParameterError("nodes and weights must be 1-d arrays of equal length")
        if not np.all(np.diff(self.nodes) > 0):
            raise ParameterError("grid nodes must be strictly increasing")
        if not np.all(self.weights > 0):
            raise ParameterError("quadrature weights must be strictly positive")
        if self.domain_kind is DomainKind.HALF_LINE and self.nodes[0] <= 0:
            raise ParameterError("half-line grid must have strictly positive nodes")

    @property
    def n(self) -> int:
        return self.nodes.size

    @property
    def spacing(self) -> float:
        """Largest gap between adjacent nodes (resolution limit of the grid)."""
        return float(np.max(np.diff(self.nodes))) if self.n > 1 else float(self.e_max)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, EnergyGrid)
            and self.domain_kind is other.domain_kind
            and self.n == other.n
            and np.array_equal(self.nodes, other.nodes)
            and np.array_equal(self.weights, other.weights)
        )

    def __hash__(self):
        return hash((self.domain_kind, self.n, float(self.nodes[0]), float(self.e_max)))


def _half_nodes(n: int, e_max: float, scheme: str):
    """Nodes and weights on (0, e_max]."""
    if scheme == "uniform":
        h = e_max / n
        return h * (np.arange(n) + 0.5), np.full(n, h)
    if scheme == "gauss":
        # composite Gauss-Legendre, panels of ~16 nodes over equal subintervals
        k = max(1, n // 16)
        base, rem = divmod(n, k)
        edges = np.linspace(0.0, e_max, k + 1)
        nodes, weights = [], []
        for i in range(k):
            order = base + (1 if i < rem else 0)
            x, w = np.polynomial.legendre.leggauss(order)
            a, b = edges[i], edges[i + 1]
            nodes.append(0.5 * (b - a) * x + 0.5 * (a + b))
            weights.append(0.5 * (b - a) * w)
        return np.concatenate(nodes), np.concatenate(weights)
    raise ParameterError(f"unknown quadrature scheme {scheme!r}")


def make_grid(domain_kind: DomainKind, n: int, e_max: float, scheme: str = "uniform") -> EnergyGrid:
    """Build an energy grid on [-e_max, e_max] or (0, e_max].

    Parameters
    ----------
    domain_kind : DomainKind
        Full line (symmetric about 0) or half line (positive energies).
    n : int
        Total node count; must be >= 8, and even for full-line grids so the
        node set is closed under negation with no node at 0.
    e_max : float
        Truncation energy.  The Lorentzian tail of 1/|E - mu|^2 beyond e_max
        scales like 1/e_max, so e_max >= 100 * max(|Re mu|, gamma, 1) keeps
        the lost mass below 1e-3 relative.
    scheme : str
        ``"uniform"`` midpoint rule (default) or ``"gauss"`` composite
        Gauss-Legendre panels.
    """
    if n < 8:
        raise ParameterError(f"need n >= 8 nodes, got {n}")
    if e_max <= 0:
        raise ParameterError(f"need e_max > 0, got {e_max}")
    if domain_kind is DomainKind.HALF_LINE:
        nodes, weights = _half_nodes(n, e_max, scheme)
        return EnergyGrid(nodes, weights, domain_kind, float(e_max), scheme)
    if domain_kind is DomainKind.FULL_LINE:
        if n % 2:
            raise ParameterError("full-line grids need even n (mirrored half-line nodes)")
        hn, hw = _half_nodes(n // 2, e_max, scheme)
        nodes = np.concatenate([-hn[::-1], hn])
        weights = np.concatenate([hw[::-1], hw])
        return EnergyGrid(nodes, weights, domain_kind, float(e_max), scheme)
    raise ParameterError(f"unknown domain kind {domain_kind!r}")


def halfline_child(grid: EnergyGrid) -> EnergyGrid:
    """The half-line grid made of the positive nodes of a full-line grid."""
    if grid.domain_kind is not DomainKind.FULL_LINE:
        raise UsageError("halfline_child expects a full-line grid")
    pos = grid.nodes > 0
    return EnergyGrid(grid.nodes[pos], grid.weights[pos], DomainKind.HALF_LINE,
                      grid.e_max, grid.scheme)


def fullline_parent(grid: EnergyGrid) -> EnergyGrid:
    """The symmetric full-line grid whose positive nodes are this half-line grid."""
    if grid.domain_kind is not DomainKind.HALF_LINE:
        raise UsageError("fullline_parent expects a half-line grid")
    nodes = np.concatenate([-grid.nodes[::-1], grid.nodes])
    weights = np.concatenate([grid.weights[::-1], grid.weights])
    return EnergyGrid(nodes, weights, DomainKind.FULL_LINE, grid.e_max, grid.scheme)


def is_halfline_child(half: EnergyGrid, full: EnergyGrid) -> bool:
    if half.domain_kind is not DomainKind.HALF_LINE or full.domain_kind is not DomainKind.FULL_LINE:
        return False
    pos = full.nodes > 0
    return (pos.sum() == half.n
            and np.array_equal(full.nodes[pos], half.nodes)
            and np.array_equal(full.weights[pos], half.weights))


@dataclass(frozen=True)
class StateVector:
    """Complex samples of a state in an energy representation."""

    grid: EnergyGrid
    values: np.ndarray
    rep_tag: RepTag = RepTag.OUTGOING

    def __post_init__(self):
        v = np.asarray(self.values, complex)
        if v.shape != (self.grid.n,):
            raise UsageError(f"value array of length {v.shape} does not match grid n={self.grid.n}")
        object.__setattr__(self, "values", _readonly(v))

    def norm2(self) -> float:
        return float(np.sum(self.grid.weights * np.abs(self.values) ** 2))

    def norm(self) -> float:
        return float(np.sqrt(self.norm2()))


def sample(grid: EnergyGrid, fn, rep_tag: RepTag = RepTag.OUTGOING) -> StateVector:
    """Sample a callable f(E) on the grid nodes."""
    return StateVector(grid, np.asarray(fn(grid.nodes), complex), rep_tag)


def inner(phi: StateVector, psi: StateVector) -> complex:
    """Weighted L2 pairing, conjugate-linear in the first argument."""
    if phi.grid != psi.grid:
        raise UsageError("inner product requires states on the same grid")
    if phi.rep_tag is not psi.rep_tag:
        raise UsageError("inner product requires states in the same representation")
    return complex(np.sum(phi.grid.weights * np.conj(phi.values) * psi.values))


def embed_halfline(psi: StateVector, parent: EnergyGrid) -> StateVector:
    """Zero-extend a half-line state onto its full-line parent grid.

    The extension is an exact isometry: values are copied onto the positive
    nodes and all non-positive nodes carry zeros.
    """
    if not is_halfline_child(psi.grid, parent):
        raise UsageError("state grid is not the half-line child of the given parent")
    values = np.zeros(parent.n, complex)
    values[parent.nodes > 0] = psi.values
    return StateVector(parent, values, psi.rep_tag)


def restrict_fullline(psi: StateVector, child: EnergyGrid) -> StateVector:
    """Restrict a full-line state to the positive nodes (section of embed_halfline)."""
    if not is_halfline_child(child, psi.grid):
        raise UsageError("given half-line grid is not the child of the state grid")
    return StateVector(child, psi.values[psi.grid.nodes > 0], psi.rep_tag)


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense operator acting on sampled values, with declared structure flags.

    The entries act on raw sample vectors; the quadrature weights enter only
    through the pairing.  Self-adjointness therefore means
    ``w_i A_ij == conj(A_ji) w_j``.
    """

    grid: EnergyGrid
    entries: np.ndarray
    flags: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        a = np.asarray(self.entries, complex)
        if a.shape != (self.grid.n, self.grid.n):
            raise UsageError(f"entry matrix {a.shape} does not match grid n={self.grid.n}")
        object.__setattr__(self, "entries", _readonly(a))
        object.__setattr__(self, "flags", frozenset(self.flags))


def apply_operator(op: OperatorMatrix, psi: StateVector) -> StateVector:
    if op.grid != psi.grid:
        raise UsageError("operator and state live on different grids")
    return StateVector(psi.grid, op.entries @ psi.values, psi.rep_tag)


def compose(a: OperatorMatrix, b: OperatorMatrix, flags=frozenset()) -> OperatorMatrix:
    if a.grid != b.grid:
        raise UsageError("cannot compose operators on different grids")
    return OperatorMatrix(a.grid, a.entries @ b.entries, flags)


def _flat(op: OperatorMatrix) -> np.ndarray:
    # similarity transform making the weighted adjoint the plain conjugate
    # transpose: B = W^(1/2) A W^(-1/2)
    s = np.sqrt(op.grid.weights)
    return (s[:, None] * op.entries) / s[None, :]


def hermiticity_defect(op: OperatorMatrix) -> float:
    """max_ij |A_ij - conj(A_ji) w_j / w_i|, zero for weighted-self-adjoint A."""
    w = op.grid.weights
    return float(np.max(np.abs(op.entries - (np.conj(op.entries.T) * w[None, :]) / w[:, None])))


def operator_norm(op: OperatorMatrix) -> float:
    """Operator norm with respect to the weighted inner product."""
    return float(np.linalg.norm(_flat(op), 2))


def spectral_range(op: OperatorMatrix) -> tuple:
    """(min, max) eigenvalue of the weighted-Hermitian part of the operator."""
    b = _flat(op)
    ev = np.linalg.eigvalsh(0.5 * (b + b.conj().T))
    return float(ev[0]), float(ev[-1])


def verify_flags(op: OperatorMatrix, hermiticity_tol: float = 1e-6,
                 spec_tol: float = 1e-8) -> dict:
    """Measure the defects behind each declared structure flag."""
    out = {}
    if OpFlag.SELF_ADJOINT in op.flags:
        out["hermiticity_defect"] = hermiticity_defect(op)
        out["self_adjoint_ok"] = out["hermiticity_defect"] <= hermiticity_tol
    if OpFlag.POSITIVE in op.flags:
        lo, hi = spectral_range(op)
        out["min_eigenvalue"] = lo
        out["positive_ok"] = lo >= -spec_tol
    if OpFlag.CONTRACTION in op.flags:
        out["operator_norm"] = operator_norm(op)
        out["contraction_ok"] = out["operator_norm"] <= 1.0 + spec_tol
    if OpFlag.UNITARY in op.flags:
        b = _flat(op)
        out["unitarity_defect"] = float(np.max(np.abs(b.conj().T @ b - np.eye(op.grid.n))))
        out["unitary_ok"] = out["unitarity_defect"] <= spec_tol
    return out


def identity_operator(grid: EnergyGrid) -> OperatorMatrix:
    return OperatorMatrix(grid, np.eye(grid.n, dtype=complex),
                          frozenset({OpFlag.SELF_ADJOINT, OpFlag.POSITIVE,
                                     OpFlag.CONTRACTION, OpFlag.UNITARY}))
