"""Lorentz rotors and the discrete C, P, T maps.

Rotors act two-sidedly on multivector fields, ``psi_M -> S psi_M ~S``, while
the spinor ``psi_M w`` picks up the one-sided ``S``.  A transformed field
remembers ``S`` in its ``frame`` so bilinears stay covariant.

Discrete maps at a point (``C`` flips the sign of the ``j``-odd constituents):

* ``P``: ``X -> g0 X g0`` with ``x -> -x``
* pure ``T``: ``X -> -g0 I X I g0``; full ``T`` is pure ``T`` after ``C``, with ``t -> -t``
* ``CPT``: ``X -> -I X I`` with ``(t, x) -> (-t, -x)``
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import algebra as alg
from .algebra import Multivector
from .complexified import DiracFieldValue, charge_conjugate, charge_conjugate_array
from .dynamics.state import FieldState, reflect_grid
from .errors import DomainError
from .representation import rep_tables


@dataclass(frozen=True)
class Rotor:
    R: Multivector
    R_rev: Multivector = field(init=False, repr=False)

    def __post_init__(self):
        R = self.R if isinstance(self.R, Multivector) else Multivector(self.R)
        if np.any(R.coeffs[alg.ODD] != 0.0):
            raise DomainError("a rotor must be even")
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "R_rev", ~R)
        if not (R * self.R_rev).allclose(alg.ONE, atol=1e-12):
            raise DomainError("rotor does not satisfy R ~R = 1")

    @classmethod
    def identity(cls) -> "Rotor":
        return cls(alg.ONE)

    @classmethod
    def from_parameters(cls, omega) -> "Rotor":
        """``exp(-1/4 omega_{mu nu} g^mu ^ g^nu)`` for an antisymmetric 4x4 ``omega``."""
        omega = np.asarray(omega, dtype=float)
        if omega.shape != (4, 4) or not np.allclose(omega, -omega.T, rtol=0.0, atol=1e-14):
            raise DomainError("omega must be an antisymmetric 4x4 array")
        B = np.zeros(alg.N_BLADES)
        for mu, nu in alg.BIVECTOR_PAIRS:
            B[alg.bivector_mask(mu, nu)] = -0.5 * omega[mu, nu]
        return cls(Multivector(alg.exp_bivector(B)))

    @classmethod
    def boost(cls, axis: int, rapidity: float) -> "Rotor":
        """Positive rapidity boosts ``g^0`` towards ``+g^axis``."""
        omega = np.zeros((4, 4))
        omega[0, axis], omega[axis, 0] = rapidity, -rapidity
        return cls.from_parameters(omega)

    @classmethod
    def rotation(cls, i: int, j: int, angle: float) -> "Rotor":
        omega = np.zeros((4, 4))
        omega[i, j], omega[j, i] = angle, -angle
        return cls.from_parameters(omega)

    def inverse(self) -> "Rotor":
        return Rotor(self.R_rev)

    def __matmul__(self, other: "Rotor") -> "Rotor":
        return Rotor(self.R * other.R)

    def apply(self, m: Multivector) -> Multivector:
        return self.R * m * self.R_rev

    def vector_matrix(self) -> np.ndarray:
        """``L[mu, nu]``: coefficient of ``g^nu`` in ``R g^mu ~R``."""
        return np.array(
            [[self.apply(alg.GAMMA[mu])[alg.vector_mask(nu)] for nu in range(4)] for mu in range(4)]
        )


def transform_multivector(R: Rotor, m: Multivector) -> Multivector:
    return R.apply(m)


def transform_field(S: Rotor, v: DiracFieldValue) -> DiracFieldValue:
    """Conjugate every constituent by ``S`` and compose ``S`` into the frame."""
    return DiracFieldValue(
        S.apply(v.psi_e), S.apply(v.psi_o), S.apply(v.psi_e2), S.apply(v.psi_o2),
        frame=S.R * v.frame,
    )


# -- discrete maps -------------------------------------------------------------

class SymmetryLabel(enum.Enum):
    C = "C"
    P = "P"
    T = "T"


def _conjugation(a: Multivector, b: Multivector, sign: float = 1.0) -> np.ndarray:
    return sign * alg.left_matrix(a.coeffs) @ alg.right_matrix(b.coeffs)


PARITY_MATRIX = _conjugation(alg.G0, alg.G0)
PURE_T_MATRIX = _conjugation(alg.G0 * alg.I, alg.I * alg.G0, -1.0)
CPT_MATRIX = _conjugation(alg.I, alg.I, -1.0)


def _act(matrix: np.ndarray, x: np.ndarray) -> np.ndarray:
    return np.einsum("ij,...j->...i", matrix, x)


def parity_pointwise(psi: np.ndarray) -> np.ndarray:
    return _act(PARITY_MATRIX, psi)


def pure_time_reversal_pointwise(psi: np.ndarray) -> np.ndarray:
    return _act(PURE_T_MATRIX, psi)


def time_reversal_pointwise(psi: np.ndarray) -> np.ndarray:
    return _act(PURE_T_MATRIX, charge_conjugate_array(psi))


def cpt_pointwise(psi: np.ndarray) -> np.ndarray:
    return _act(CPT_MATRIX, psi)


def _mapped_value(v: DiracFieldValue, psi: np.ndarray, matrix: np.ndarray) -> DiracFieldValue:
    return DiracFieldValue.from_array(psi, frame=Multivector(matrix @ v.frame.coeffs))


def apply_C(v: DiracFieldValue) -> DiracFieldValue:
    return charge_conjugate(v)


def parity_value(v: DiracFieldValue) -> DiracFieldValue:
    """Pointwise part of ``P``; the caller supplies the reflected argument."""
    return _mapped_value(v, parity_pointwise(v.as_array()), PARITY_MATRIX)


def time_reversal_value(v: DiracFieldValue) -> DiracFieldValue:
    return _mapped_value(v, time_reversal_pointwise(v.as_array()), PURE_T_MATRIX)


def apply_CPT(v: DiracFieldValue) -> DiracFieldValue:
    """Pointwise ``-I (.) I``; the caller supplies the reversed argument ``-x``."""
    return _mapped_value(v, cpt_pointwise(v.as_array()), CPT_MATRIX)


def compose(*labels: SymmetryLabel):
    """Pointwise composition, applied right to left."""
    table = {
        SymmetryLabel.C: apply_C,
        SymmetryLabel.P: parity_value,
        SymmetryLabel.T: time_reversal_value,
    }

    def mapped(v: DiracFieldValue) -> DiracFieldValue:
        for label in reversed(labels):
            v = table[label](v)
        return v

    return mapped


# -- grid states ---------------------------------------------------------------

def _check_reflectable(state: FieldState) -> None:
    if any(n % 2 for n in state.grid_shape):
        raise DomainError("reflection needs an even number of grid points")


def _frame(matrix: np.ndarray, state: FieldState) -> np.ndarray:
    return matrix @ state.frame


def apply_C_state(state: FieldState) -> FieldState:
    """Charge conjugate; the image solves the equations with ``-e``."""
    dt = None if state.dt_psi is None else charge_conjugate_array(state.dt_psi)
    return state.replace(psi=charge_conjugate_array(state.psi), dt_psi=dt, charge=-state.charge)


def apply_P(state: FieldState) -> FieldState:
    """Parity image on a reflection-symmetric grid, with ``A`` reflected too."""
    _check_reflectable(state)
    n = state.ndim

    def m(x):
        return None if x is None else reflect_grid(parity_pointwise(x), n)

    return state.replace(
        psi=m(state.psi),
        dt_psi=m(state.dt_psi),
        potential=state.potential.reflected(),
        frame=_frame(PARITY_MATRIX, state),
    )


def apply_T(state: FieldState) -> FieldState:
    """Time-reversal image at ``-t``.

    External sources are reversed with the field: the image solves the
    equations with the same ``e`` and potential ``(A_0, -A_i)(-t, x)``.
    """
    dt = None if state.dt_psi is None else -time_reversal_pointwise(state.dt_psi)
    return state.replace(
        psi=time_reversal_pointwise(state.psi),
        dt_psi=dt,
        t=-state.t,
        potential=state.potential.time_reversed(),
        frame=_frame(PURE_T_MATRIX, state),
    )


def apply_CPT_state(state: FieldState) -> FieldState:
    """``-I psi(-x) I`` at ``-t``; solves the equations with ``-e`` and ``A(-x)``."""
    _check_reflectable(state)
    n = state.ndim
    dt = None if state.dt_psi is None else -reflect_grid(cpt_pointwise(state.dt_psi), n)
    return state.replace(
        psi=reflect_grid(cpt_pointwise(state.psi), n),
        dt_psi=dt,
        t=-state.t,
        charge=-state.charge,
        potential=state.potential.spacetime_reversed(),
        frame=_frame(CPT_MATRIX, state),
    )


# -- spinor-level maps ---------------------------------------------------------

def _gammas4() -> list[np.ndarray]:
    rep = rep_tables()
    return [rep.dirac4[alg.vector_mask(mu)] for mu in range(4)]


def spinor_C(s: np.ndarray) -> np.ndarray:
    g = _gammas4()
    return 1j * g[2] @ np.conj(s)


def spinor_P(s: np.ndarray) -> np.ndarray:
    return _gammas4()[0] @ s


def spinor_T(s: np.ndarray) -> np.ndarray:
    g = _gammas4()
    return 1j * g[1] @ g[3] @ np.conj(s)


def relative_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-12) -> complex:
    """Unit-modulus ``z`` with ``a = z b``, read off the first nonzero entry of ``b``.

    Raises :class:`DomainError` when no such phase exists within ``tol``.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    nz = np.flatnonzero(np.abs(b) > tol)
    if nz.size == 0:
        if np.max(np.abs(a), initial=0.0) > tol:
            raise DomainError("reference spinor vanishes but the other does not")
        return 1.0 + 0.0j
    z = a[nz[0]] / b[nz[0]]
    if abs(abs(z) - 1.0) > tol or np.max(np.abs(a - z * b)) > tol * max(1.0, np.max(np.abs(b))):
        raise DomainError("spinors are not related by a unit-modulus phase")
    return complex(z)


# -- operator-interpretation table (cross-reference only) ----------------------

def operator_C(psi_e: Multivector) -> Multivector:
    return -psi_e * alg.G1 * alg.G0


def operator_P(psi_e: Multivector) -> Multivector:
    return alg.G0 * psi_e * alg.G0


def operator_T(psi_e: Multivector) -> Multivector:
    return -(alg.I * alg.G0 * psi_e * alg.G1)
