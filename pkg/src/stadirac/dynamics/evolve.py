"""Explicit RK4 evolution and trajectory diagnostics."""

from __future__ import annotations

import numpy as np

from .. import algebra as alg
from ..complexified import complex_to_constituents
from ..errors import DomainError, NumericalError
from .operators import d1, d2, time_derivative, uniform_step
from .state import FieldState

MAX_SLICES = 10_000
MAX_CFL = 0.5

_G0 = alg.basis(alg.vector_mask(0))
_G0_LEFT = alg.left_matrix(_G0)
_G0GI_LEFT = {
    mu: alg.left_matrix(alg.gp(_G0, alg.basis(alg.vector_mask(mu)))) for mu in (1, 2, 3)
}


def _apply(M: np.ndarray, x: np.ndarray) -> np.ndarray:
    # M is (16, 16) or (*grid, 16, 16)
    if M.ndim == 2:
        return x @ M.T
    return np.einsum("...ij,...j->...i", M, x)


def _vector_field(A: np.ndarray) -> np.ndarray:
    out = np.zeros(A.shape[:-1] + (alg.N_BLADES,))
    for mu in range(4):
        out[..., alg.vector_mask(mu)] = A[..., mu]
    return out


class DiracRHS:
    """``d_t psi = -g0 g^i d_i psi - j w0 g0 psi - j e g0 A psi`` on ``(re, im)``."""

    def __init__(self, state: FieldState):
        self.template = state
        self.dx = state.dx
        self.axes = state.spatial_axes()
        self.omega0 = state.omega0
        self.charge = state.charge
        self.potential = state.potential
        self.static = state.potential.kind in ("zero", "constant", "tabulated")
        self._coupling = None
        if state.charge != 0.0 and not state.potential.is_zero and self.static:
            self._coupling = self._coupling_matrix(0.0)

    def _coupling_matrix(self, t: float) -> np.ndarray:
        A = self.potential.values(t, self.template)
        return self.charge * alg.left_matrix(alg.gp(_G0, _vector_field(A)))

    def __call__(self, t: float, re: np.ndarray, im: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        dre = np.zeros_like(re)
        dim = np.zeros_like(im)
        for axis, mu in self.axes:
            M = _G0GI_LEFT[mu]
            dre -= _apply(M, d1(re, self.dx, axis))
            dim -= _apply(M, d1(im, self.dx, axis))
        if self.omega0 != 0.0:
            dre += self.omega0 * _apply(_G0_LEFT, im)
            dim -= self.omega0 * _apply(_G0_LEFT, re)
        if self.charge != 0.0 and not self.potential.is_zero:
            C = self._coupling if self.static else self._coupling_matrix(t)
            dre += _apply(C, im)
            dim -= _apply(C, re)
        return dre, dim


def rk4_step(rhs: DiracRHS, t: float, re: np.ndarray, im: np.ndarray, dt: float):
    k1 = rhs(t, re, im)
    k2 = rhs(t + dt / 2, re + dt / 2 * k1[0], im + dt / 2 * k1[1])
    k3 = rhs(t + dt / 2, re + dt / 2 * k2[0], im + dt / 2 * k2[1])
    k4 = rhs(t + dt, re + dt * k3[0], im + dt * k3[1])
    return (
        re + dt / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
        im + dt / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]),
    )


def check_cfl(dt: float, dx: float) -> None:
    if not dt > 0:
        raise DomainError("dt must be positive")
    if dt / dx > MAX_CFL:
        raise DomainError(f"CFL number {dt / dx:.4g} exceeds {MAX_CFL}")


def evolve(state: FieldState, dt: float, steps: int, *, every: int = 1) -> list[FieldState]:
    """Integrate ``steps`` RK4 steps, keeping every ``every``-th slice (initial included).

    Each stored slice carries the semi-discrete right-hand side as ``dt_psi``.
    """
    check_cfl(dt, state.dx)
    if steps < 0 or every < 1:
        raise DomainError("steps must be >= 0 and every >= 1")
    if steps // every + 1 > MAX_SLICES:
        raise DomainError(f"trajectory would exceed {MAX_SLICES} slices; raise the cadence")
    rhs = DiracRHS(state)
    re, im = state.complex_parts()
    t0 = state.t

    def snapshot(n: int, re, im) -> FieldState:
        t = t0 + n * dt
        dre, dim = rhs(t, re, im)
        return state.replace(
            psi=complex_to_constituents(re, im),
            dt_psi=complex_to_constituents(dre, dim),
            t=t,
        )

    out = [snapshot(0, re, im)]
    for n in range(1, steps + 1):
        # overflow is reported below as NumericalError
        with np.errstate(over="ignore", invalid="ignore"):
            re, im = rk4_step(rhs, t0 + (n - 1) * dt, re, im, dt)
        if not (np.all(np.isfinite(re)) and np.all(np.isfinite(im))):
            raise NumericalError(f"non-finite field values at step {n}")
        if n % every == 0:
            out.append(snapshot(n, re, im))
    return out


def with_time_derivatives(trajectory: list[FieldState]) -> list[FieldState]:
    """Replace ``dt_psi`` by finite differences along the stored slices."""
    if len(trajectory) < 3:
        raise DomainError("need at least 3 slices")
    h = uniform_step([s.t for s in trajectory])
    dpsi = time_derivative(np.stack([s.psi for s in trajectory]), h)
    return [s.replace(dt_psi=d) for s, d in zip(trajectory, dpsi)]


def kg_residual(trajectory: list[FieldState]) -> float:
    """Max residual of the second-order equation over interior slices.

    With ``D = grad + j e A`` the first-order equation implies
    ``D D psi = -w0^2 psi``, i.e.

        box psi + w0^2 psi + j e [(grad A) psi + 2 A^mu d_mu psi] - e^2 (A.A) psi = 0,

    which is the plain Klein-Gordon equation when ``e A = 0``.  Time
    derivatives use second-order central differences.
    """
    if len(trajectory) < 3:
        raise DomainError("kg_residual needs at least 3 slices")
    h = uniform_step([s.t for s in trajectory])
    ref = trajectory[0]
    parts = [s.complex_parts() for s in trajectory]
    re = np.stack([p[0] for p in parts])
    im = np.stack([p[1] for p in parts])
    w2 = ref.omega0**2
    worst = 0.0
    for n in range(1, len(trajectory) - 1):
        s = trajectory[n]
        res = []
        for x, series in ((re[n], re), (im[n], im)):
            box = (series[n + 1] - 2.0 * x + series[n - 1]) / (h * h)
            for axis, _ in s.spatial_axes():
                box = box - d2(x, s.dx, axis)
            res.append(box + w2 * x)
        if s.charge != 0.0 and not s.potential.is_zero:
            A = s.potential.values(s.t, s)
            gradA = s.potential.gradient(s.t, s)
            A_up = alg.raise_vector(A)
            # grad A = g^nu g^mu d_nu A_mu
            gA = np.zeros(A.shape[:-1] + (alg.N_BLADES,))
            for nu in range(4):
                gA += alg.gp(
                    np.broadcast_to(alg.basis(alg.vector_mask(nu)), gA.shape),
                    _vector_field(gradA[..., nu, :]),
                )
            AA = np.einsum("...a,...a->...", A, A_up)[..., None]
            deriv = []
            for x, series in ((re[n], re), (im[n], im)):
                d = [(series[n + 1] - series[n - 1]) / (2.0 * h)]
                d += [np.zeros_like(x)] * 3
                for axis, mu in s.spatial_axes():
                    d[mu] = d1(x, s.dx, axis)
                deriv.append(sum(A_up[..., mu, None] * d[mu] for mu in range(4)))
            e = s.charge
            # j * X adds X to the imaginary part and -X to the real part
            coupling_re = alg.gp(gA, re[n]) + 2.0 * deriv[0]
            coupling_im = alg.gp(gA, im[n]) + 2.0 * deriv[1]
            res[0] = res[0] - e * coupling_im - e * e * AA * re[n]
            res[1] = res[1] + e * coupling_re - e * e * AA * im[n]
        worst = max(worst, float(np.max(np.abs(complex_to_constituents(*res)))))
    return worst


def fit_frequency(times, signal) -> float:
    """Angular frequency from a least-squares fit to interpolated zero crossings."""
    times = np.asarray(times, dtype=float)
    signal = np.asarray(signal, dtype=float)
    idx = np.flatnonzero(np.signbit(signal[:-1]) != np.signbit(signal[1:]))
    if idx.size < 2:
        raise DomainError("need at least two zero crossings to fit a frequency")
    s0, s1 = signal[idx], signal[idx + 1]
    crossings = times[idx] + (times[idx + 1] - times[idx]) * s0 / (s0 - s1)
    slope = np.polyfit(np.arange(crossings.size), crossings, 1)[0]
    return float(np.pi / slope)
