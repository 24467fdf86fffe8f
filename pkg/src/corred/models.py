"""Exactly soluble reference models: the coupled spin pair and the resonant
Jaynes-Cummings model (JCM), with closed-form evolution operators and the
analytic formulas used as test oracles.

Basis conventions (hbar = 1 throughout):

* Spin pair: composite basis |22>, |21>, |12>, |11> (descending energy within
  each spin, alpha index major).
* JCM: atom levels |2> (excited, index 0) and |1> (ground, index 1), tensored
  with Fock states |0> .. |n_max> in ascending photon number, so the
  composite dimension is 2 * (n_max + 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import matrixcore as mc
from .errors import DimensionMismatch
from .matrixcore import BipartiteSystem
from .states import DensityMatrix, spin_pair_initial

SPIN_PAIR_SYSTEM = BipartiteSystem(2, 2)


@dataclass(frozen=True)
class SpinPairParams:
    """Zeeman frequency and spin-spin couplings of the identical spin pair."""

    omega: float
    j_coupling: float = 0.0
    c_coupling: float = 0.0
    d_coupling: float = 0.0


def spin_pair_hamiltonian(p: SpinPairParams) -> np.ndarray:
    """4x4 hamiltonian of a pair of identical spins-1/2 in a d-c field."""
    w, j, c, d = p.omega, p.j_coupling, p.c_coupling, p.d_coupling
    return np.array(
        [
            [w + j, 0.0, 0.0, d],
            [0.0, -j, c, 0.0],
            [0.0, c, -j, 0.0],
            [d, 0.0, 0.0, -w + j],
        ],
        dtype=complex,
    )


def spin_pair_evolution(p: SpinPairParams, t: float, adjoint: bool = False) -> np.ndarray:
    """Closed-form evolution operator of the spin pair.

    The outer block {|22>, |11>} rotates at Omega = sqrt(omega^2 + d^2) (the
    unique rate that makes the block unitary), the inner block {|21>, |12>}
    at the flip-flop coupling c; ``adjoint=True`` returns U^dag(t).
    """
    w, j, c, d = p.omega, p.j_coupling, p.c_coupling, p.d_coupling
    big_omega = math.hypot(w, d)
    sgn = 1.0 if not adjoint else -1.0
    if big_omega > 0:
        co, so = math.cos(big_omega * t), math.sin(big_omega * t)
        wr, dr = w / big_omega, d / big_omega
    else:
        co, so, wr, dr = 1.0, 0.0, 0.0, 0.0
    ph_out = np.exp(-1j * sgn * j * t)
    ph_in = np.exp(1j * sgn * j * t)
    ci, si = math.cos(c * t), math.sin(c * t)
    u = np.zeros((4, 4), dtype=complex)
    u[0, 0] = ph_out * (co - 1j * sgn * wr * so)
    u[3, 3] = ph_out * (co + 1j * sgn * wr * so)
    u[0, 3] = u[3, 0] = -1j * sgn * dr * ph_out * so
    u[1, 1] = u[2, 2] = ph_in * ci
    u[1, 2] = u[2, 1] = -1j * sgn * ph_in * si
    return u


def spin_pair_density(p: SpinPairParams, phi: float, t: float) -> DensityMatrix:
    """Evolved state U(t) rho(0) U^dag(t) of the spin-pair initial condition."""
    u = spin_pair_evolution(p, t)
    rho0 = spin_pair_initial(phi).matrix
    return DensityMatrix(mc.hermitize(u @ rho0 @ u.conj().T), validation="relaxed")


def spin_pair_correlation(phi: float, c: float, t: float) -> float:
    """Oscillating correlation C(phi, t) = cos(2 phi) cos(2 c t)."""
    return math.cos(2 * phi) * math.cos(2 * c * t)


def spin_pair_populations(phi: float, c: float, t: float) -> tuple[float, float]:
    """Analytic |21> and |12> populations (P/2, M/2) of the evolved state."""
    corr = spin_pair_correlation(phi, c, t)
    return (1.0 + corr) / 2.0, (1.0 - corr) / 2.0


def spin_pair_coherence(phi: float, c: float, t: float) -> complex:
    """Analytic (21,12) coherence of the evolved spin-pair state."""
    return 0.5 * (1j * math.cos(2 * phi) * math.sin(2 * c * t) - math.sin(2 * phi))


@dataclass(frozen=True)
class JcmParams:
    """Resonant JCM: field/atom frequency, atom-field coupling, Fock cutoff."""

    omega: float
    rabi: float
    n_max: int = 16

    def __post_init__(self):
        if self.n_max < 1:
            raise DimensionMismatch(f"n_max must be >= 1, got {self.n_max}")


def jcm_system(p: JcmParams) -> BipartiteSystem:
    """Atom (dim 2) x truncated field (dim n_max + 1)."""
    return BipartiteSystem(2, p.n_max + 1)


def lowering_operator(dim: int) -> np.ndarray:
    """Truncated photon annihilation operator, a|n> = sqrt(n) |n-1>."""
    a = np.zeros((dim, dim), dtype=complex)
    for n in range(1, dim):
        a[n - 1, n] = math.sqrt(n)
    return a


def _atom_proj(i: int, j: int) -> np.ndarray:
    m = np.zeros((2, 2), dtype=complex)
    m[i, j] = 1.0
    return m


def jcm_hamiltonian(p: JcmParams) -> np.ndarray:
    """Resonant JCM hamiltonian on the truncated composite space.

    Atom term (omega/2)(P22 - P11), symmetrized field term
    (omega/2)(a^dag a + a a^dag), interaction (i Omega/2)(P21 a - P12 a^dag).
    """
    nf = p.n_max + 1
    a = lowering_operator(nf)
    ad = a.conj().T
    h_atom = np.kron((p.omega / 2) * (_atom_proj(0, 0) - _atom_proj(1, 1)), np.eye(nf))
    h_field = np.kron(np.eye(2), (p.omega / 2) * (ad @ a + a @ ad))
    h_int = (1j * p.rabi / 2) * (
        np.kron(_atom_proj(0, 1), a) - np.kron(_atom_proj(1, 0), ad)
    )
    return h_atom + h_field + h_int


def jcm_evolution(p: JcmParams, t: float, adjoint: bool = False) -> np.ndarray:
    """Closed-form JCM evolution operator via number-basis operator functions.

    cos/sin of sqrt(a a^dag) and sqrt(a^dag a) are diagonal in the number
    basis; the phase operators exp(+-i phi) are the normalized shift
    operators (a^dag a + 1)^(-1/2) a and its adjoint. At the truncation edge
    the shift is only a partial isometry, so the top Fock block of the
    returned matrix deviates from the infinite-dimensional operator (probability
    leaks out of the |2, n_max> column); everything below it is exactly unitary.
    """
    nf = p.n_max + 1
    a = lowering_operator(nf)
    ad = a.conj().T
    n_op = np.arange(nf, dtype=float)  # diagonal of a^dag a
    sgn = -1.0 if not adjoint else 1.0

    phase_down = np.diag(np.exp(sgn * 1j * p.omega * t * (n_op + 1.0)))  # exp(-i w t a a^dag)
    phase_up = np.diag(np.exp(sgn * 1j * p.omega * t * n_op))  # exp(-i w t a^dag a)
    cos_down = np.diag(np.cos(p.rabi * t / 2 * np.sqrt(n_op + 1.0)))
    cos_up = np.diag(np.cos(p.rabi * t / 2 * np.sqrt(n_op)))
    sin_down = np.diag(np.sin(p.rabi * t / 2 * np.sqrt(n_op + 1.0)))
    sin_up = np.diag(np.sin(p.rabi * t / 2 * np.sqrt(n_op)))

    norm = np.diag(1.0 / np.sqrt(n_op + 1.0))
    exp_iphi = norm @ a  # lowers photon number
    exp_miphi = ad @ norm  # raises photon number

    pm = -1.0 if adjoint else 1.0
    u = (
        np.kron(_atom_proj(0, 0), phase_down @ cos_down)
        + np.kron(_atom_proj(1, 1), phase_up @ cos_up)
        + pm * np.kron(_atom_proj(0, 1), phase_down @ exp_iphi @ sin_up)
        - pm * np.kron(_atom_proj(1, 0), phase_up @ exp_miphi @ sin_down)
    )
    return u


def jcm_vacuum_density(p: JcmParams, t: float) -> DensityMatrix:
    """Evolved state of an excited atom in the vacuum field.

    Supported on {|2,0>, |1,1>} for all t, so any n_max >= 1 is exact.
    """
    nf = p.n_max + 1
    rho0 = np.zeros((2 * nf, 2 * nf), dtype=complex)
    rho0[0, 0] = 1.0  # |2,0><2,0|
    u = jcm_evolution(p, t)
    return DensityMatrix(mc.hermitize(u @ rho0 @ u.conj().T), validation="relaxed")


def vacuum_rabi_populations(p: JcmParams, t: float) -> tuple[float, float]:
    """Analytic excited/ground atom populations (cos^2, sin^2 of Omega t / 2)."""
    c = math.cos(p.rabi * t / 2)
    return c * c, 1.0 - c * c


def jcm_correlated_limit(t: float, p: JcmParams) -> tuple[float, float]:
    """Step-function limit (C(t), S(t)) of the correlated reduction.

    C(t) is 1 where cos^2(Omega t / 2) > sin^2, 0 where it is smaller, and
    exactly 1/2 at the tie points t = (2l+1) pi / (2 Omega); S = 1 - C.
    """
    c2 = math.cos(p.rabi * t / 2) ** 2
    s2 = 1.0 - c2
    if abs(c2 - s2) < 1e-12:
        c_val = 0.5
    elif c2 > s2:
        c_val = 1.0
    else:
        c_val = 0.0
    return c_val, 1.0 - c_val


def jcm_tie_times(p: JcmParams, t_max: float) -> list[float]:
    """Tie points t = (2l+1) pi / (2 Omega) of the step limit up to t_max."""
    if p.rabi == 0:
        return []
    step = math.pi / (2 * abs(p.rabi))
    ties = []
    k = 0
    while (tie := (2 * k + 1) * step) <= t_max:
        ties.append(tie)
        k += 1
    return ties
