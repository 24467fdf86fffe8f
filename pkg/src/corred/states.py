"""Density operators and the special states used throughout the package.

Units: hbar = k_B = 1 everywhere; energies and frequencies are dimensionless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import matrixcore as mc
from .errors import (
    IndexOutOfRange,
    NonPositiveTemperature,
    NotHermitian,
    NotNonnegative,
    ValidationError,
    ZeroTrace,
)

#: Eigenvalue floor for positivity validation.
POSITIVITY_TOL = 1e-10


class DensityMatrix:
    """Validated state operator: hermitian, unit trace, positive semidefinite.

    ``validation='strict'`` rejects any eigenvalue below -tol;
    ``validation='relaxed'`` records the minimum eigenvalue but permits small
    negativity from roundoff (used for intermediate iterates).
    """

    __slots__ = ("matrix", "validation", "min_eigenvalue")

    def __init__(self, matrix, validation: str = "strict", tol: float = POSITIVITY_TOL):
        m = mc.as_matrix(matrix)
        if m.shape[0] != m.shape[1]:
            raise ValidationError(f"density matrix must be square, got {m.shape}")
        if not mc.is_hermitian(m, tol):
            raise ValidationError("density matrix is not hermitian within tolerance")
        tr = m.trace()
        if abs(tr - 1.0) > max(tol, 1e-12):
            raise ValidationError(f"trace must be 1, got {tr}")
        self.min_eigenvalue = float(np.linalg.eigvalsh(mc.hermitize(m)).min())
        if validation == "strict":
            if self.min_eigenvalue < -tol:
                raise ValidationError(
                    f"negative eigenvalue {self.min_eigenvalue} below -{tol}"
                )
        elif validation != "relaxed":
            raise ValueError(f"validation must be 'strict' or 'relaxed', got {validation!r}")
        self.matrix = m
        self.validation = validation

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def to_json(self) -> dict:
        obj = mc.matrix_to_json(self.matrix)
        obj["kind"] = "density"
        obj["validation"] = self.validation
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "DensityMatrix":
        return cls(mc.matrix_from_json(obj), validation=obj.get("validation", "strict"))

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim}, validation={self.validation!r})"


@dataclass(frozen=True)
class Observable:
    """Hermitian operator of a subsystem observable."""

    matrix: np.ndarray
    label: str = ""

    def __post_init__(self):
        m = mc.as_matrix(self.matrix)
        if not mc.is_hermitian(m):
            raise NotHermitian(f"observable {self.label!r} is not hermitian")
        object.__setattr__(self, "matrix", m)


def minimum_information_state(dim: int) -> DensityMatrix:
    """Maximally mixed state (1/N) I, the infinite-temperature steady state."""
    if dim < 1:
        raise IndexOutOfRange(f"dimension must be >= 1, got {dim}")
    return DensityMatrix(np.eye(dim) / dim)


def thermal_state(h, temperature: float) -> DensityMatrix:
    """Boltzmann state exp(-H/T) / Tr exp(-H/T) of a hermitian hamiltonian.

    ``temperature`` is in energy units (k_B = 1); ``math.inf`` gives the
    minimum-information state.
    """
    h = mc.as_matrix(h)
    if not mc.is_hermitian(h):
        raise NotHermitian("hamiltonian is not hermitian")
    if math.isinf(temperature):
        return minimum_information_state(h.shape[0])
    if temperature <= 0:
        raise NonPositiveTemperature(f"finite temperature must be > 0, got {temperature}")
    spec = mc.hermitian_eig(h)
    # Shift by the ground energy before exponentiating to avoid overflow.
    w = np.exp(-(spec.eigenvalues - spec.eigenvalues.min()) / temperature)
    w /= w.sum()
    v = spec.eigenvectors
    return DensityMatrix((v * w) @ v.conj().T)


def projector_state(dim: int, level: int) -> DensityMatrix:
    """Rank-1 projector |level><level| (level 0 is the highest-energy state)."""
    if not 0 <= level < dim:
        raise IndexOutOfRange(f"level {level} outside [0, {dim})")
    m = np.zeros((dim, dim), dtype=complex)
    m[level, level] = 1.0
    return DensityMatrix(m)


def epr_state() -> DensityMatrix:
    """Maximally entangled singlet-like two-qubit state (coherences -1/2)."""
    m = np.zeros((4, 4), dtype=complex)
    m[1, 1] = m[2, 2] = 0.5
    m[1, 2] = m[2, 1] = -0.5
    return DensityMatrix(m)


def triplet_state() -> DensityMatrix:
    """Triplet-like two-qubit state: as the EPR state with +1/2 coherences."""
    m = np.zeros((4, 4), dtype=complex)
    m[1, 1] = m[2, 2] = 0.5
    m[1, 2] = m[2, 1] = 0.5
    return DensityMatrix(m)


def spin_pair_initial(phi: float) -> DensityMatrix:
    """Pure initial state of the spin pair, parametrized by the mixing angle.

    Populations cos^2(phi) on |21> and sin^2(phi) on |12>, coherences
    -sin(phi)cos(phi); phi = pi/4 gives the EPR-like state.
    """
    c, s = math.cos(phi), math.sin(phi)
    m = np.zeros((4, 4), dtype=complex)
    m[1, 1] = c * c
    m[2, 2] = s * s
    m[1, 2] = m[2, 1] = -s * c
    return DensityMatrix(m)


def state_from_observable(a: Observable | np.ndarray) -> DensityMatrix:
    """Unit-trace normalization A / Tr A of a nonnegative observable."""
    m = a.matrix if isinstance(a, Observable) else mc.as_matrix(a)
    if not mc.is_hermitian(m):
        raise NotHermitian("operator is not hermitian")
    if np.linalg.eigvalsh(mc.hermitize(m)).min() < -POSITIVITY_TOL:
        raise NotNonnegative("operator has a negative eigenvalue")
    tr = float(np.real(m.trace()))
    if tr <= 1e-14:
        raise ZeroTrace(f"trace {tr} too small to normalize")
    return DensityMatrix(m / tr, validation="relaxed")
