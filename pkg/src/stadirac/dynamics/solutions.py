"""Closed-form solutions sampled on periodic grids, with exact time derivatives."""

from __future__ import annotations

import math

import numpy as np

from .. import algebra as alg
from ..complexified import constituents_to_complex
from ..errors import DomainError
from .state import FieldState, Potential


def _grid(grid_shape) -> tuple[int, ...]:
    if isinstance(grid_shape, (int, np.integer)):
        return (int(grid_shape),)
    return tuple(int(n) for n in grid_shape)


def _check_periodic(k: float, grid: tuple[int, ...], dx: float) -> None:
    length = grid[-1] * dx
    cycles = k * length / (2.0 * math.pi)
    if abs(cycles - round(cycles)) > 1e-9:
        raise DomainError(f"wavenumber {k} is not periodic on a box of length {length}")


def _blank(grid) -> np.ndarray:
    return np.zeros(grid + (alg.N_BLADES,))


def rest_oscillator(grid_shape=8, dx: float = 2 * math.pi / 8, omega0: float = 1.0, t: float = 0.0) -> FieldState:
    """``psi_M = cos(w0 t) - j g0 sin(w0 t)``, uniform in space."""
    grid = _grid(grid_shape)
    c, s = math.cos(omega0 * t), math.sin(omega0 * t)
    re, im, dre, dim = (_blank(grid) for _ in range(4))
    re[..., 0] = c
    im[..., alg.vector_mask(0)] = -s
    dre[..., 0] = -omega0 * s
    dim[..., alg.vector_mask(0)] = -omega0 * c
    return FieldState.from_complex(re, im, dx, t=t, omega0=omega0, dt_complex=(dre, dim))


EM_WAVE_POLARISATION = alg.from_fields(E=(1.0, 0.0, 0.0), B=(0.0, 1.0, 0.0))


def em_plane_wave(grid_shape=256, dx: float = 2 * math.pi / 256, k: float = 1.0,
                  amplitude: float = 1.0, t: float = 0.0) -> FieldState:
    """Vacuum wave ``E_x = B_y = a cos(k (z - t))`` with ``f = g = 0``."""
    grid = _grid(grid_shape)
    _check_periodic(k, grid, dx)
    state = FieldState(np.zeros(grid + (4, 16)), dx, t=t)
    phase = k * (state.coordinates()[2] - t)
    re = amplitude * np.cos(phase)[..., None] * EM_WAVE_POLARISATION
    dre = amplitude * k * np.sin(phase)[..., None] * EM_WAVE_POLARISATION
    zero = np.zeros_like(re)
    return FieldState.from_complex(re, zero, dx, t=t, dt_complex=(dre, zero))


def charged_rest(grid_shape=8, dx: float = 2 * math.pi / 8, omega0: float = 1.0,
                 charge: float = 1.0, A0: float = 0.25, t: float = 0.0) -> FieldState:
    """``psi_M = exp(-j W t) (1 + g0)`` with ``W = w0 + e A0`` in constant ``A = A0 g^0``."""
    grid = _grid(grid_shape)
    W = omega0 + charge * A0
    spinor = alg.basis(0) + alg.basis(alg.vector_mask(0))
    c, s = math.cos(W * t), math.sin(W * t)
    re = np.broadcast_to(c * spinor, grid + (16,)).copy()
    im = np.broadcast_to(-s * spinor, grid + (16,)).copy()
    dre = np.broadcast_to(-W * s * spinor, grid + (16,)).copy()
    dim = np.broadcast_to(-W * c * spinor, grid + (16,)).copy()
    return FieldState.from_complex(
        re, im, dx, t=t, omega0=omega0, charge=charge,
        potential=Potential.constant(A0), dt_complex=(dre, dim),
    )


def plane_wave(grid_shape=64, dx: float = 2 * math.pi / 64, *, k: float = 1.0, omega0: float = 1.0,
               charge: float = 0.0, A=(0.0, 0.0, 0.0, 0.0), spinor=None, branch: int = 1,
               t: float = 0.0) -> FieldState:
    """General plane wave in a constant potential.

    ``psi_M = exp(-j s phi) U`` with ``phi = E t - k z``, ``s = branch``
    (+1 or -1), ``U = (w0 + P) V`` and ``P = s p - e A`` on the mass shell
    ``P.P = w0^2``, where ``p = E g^0 - k g^3``.  ``V`` is any real
    multivector (default: 1).
    """
    if branch not in (1, -1):
        raise DomainError("branch must be +1 or -1")
    grid = _grid(grid_shape)
    _check_periodic(k, grid, dx)
    A = np.asarray(A, dtype=float)
    s = float(branch)
    P_space = np.array([-charge * A[1], -charge * A[2], -s * k - charge * A[3]])
    P0 = math.sqrt(omega0**2 + float(P_space @ P_space))
    E = s * (P0 + charge * A[0])
    P = np.zeros(16)
    P[alg.vector_mask(0)] = P0
    for i in range(3):
        P[alg.vector_mask(i + 1)] = P_space[i]
    V = alg.basis(0) if spinor is None else np.asarray(spinor, dtype=float)
    U = alg.gp(omega0 * alg.basis(0) + P, V)
    potential = Potential.constant(A[0], A[1:]) if np.any(A) else Potential.zero()
    probe = FieldState(np.zeros(grid + (4, 16)), dx)
    phi = E * t - k * probe.coordinates()[2]
    c, sn = np.cos(s * phi)[..., None], np.sin(s * phi)[..., None]
    re, im = c * U, -sn * U
    dre, dim = -s * E * sn * U, -s * E * c * U
    return FieldState.from_complex(
        re, im, dx, t=t, omega0=omega0, charge=charge, potential=potential, dt_complex=(dre, dim)
    )


def gauge_transformed(state: FieldState, amplitude: float, k: float, w: float) -> FieldState:
    """Apply ``psi -> exp(-j e chi) psi`` with ``chi = a sin(k z - w t)``.

    The result solves the equations in ``A + grad chi``; ``state`` must carry
    an exact time derivative and no potential of its own.
    """
    if not state.potential.is_zero:
        raise DomainError("gauge_transformed expects a state without potential")
    if state.dt_psi is None:
        raise DomainError("gauge_transformed needs the time derivative")
    _check_periodic(k, state.grid_shape, state.dx)
    e = state.charge
    arg = k * state.coordinates()[2] - w * state.t
    chi = amplitude * np.sin(arg)[..., None]
    dchi_dt = -amplitude * w * np.cos(arg)[..., None]
    re, im = state.complex_parts()
    dre, dim = constituents_to_complex(state.dt_psi)
    c, s = np.cos(e * chi), np.sin(e * chi)
    # (c - j s)(re + j im) and its time derivative
    new_re, new_im = c * re + s * im, c * im - s * re
    rot_re, rot_im = c * dre + s * dim, c * dim - s * dre
    dnew_re = rot_re + e * dchi_dt * new_im
    dnew_im = rot_im - e * dchi_dt * new_re
    potential = Potential.plane_wave((-amplitude * w, 0.0, 0.0, amplitude * k), k, w)
    return FieldState.from_complex(
        new_re, new_im, state.dx, t=state.t, omega0=state.omega0, charge=e,
        potential=potential, dt_complex=(dnew_re, dnew_im),
    )


def sample(builder, times, **kw) -> list[FieldState]:
    """Evaluate a solution builder at each time in ``times``."""
    return [builder(t=float(t), **kw) for t in times]
