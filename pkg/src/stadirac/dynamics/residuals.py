"""Residuals of the field equations, each evaluated along independent routes.

Three routes are compared on every call:

* tensor components: the ten scalar/vector/tensor equations written in terms
  of ``f, v, F, p, g`` and their primed partners;
* four real multivector equations, one per constituent;
* the single complex equation ``j grad psi_M - e A psi_M - w0 psi_M = 0``.

Disagreement beyond ``AGREEMENT_TOL`` (scaled by the size of the inputs)
raises :class:`ConsistencyError`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import algebra as alg
from ..complexified import DiracFieldValue, complex_to_constituents, constituents_to_complex
from ..errors import ConsistencyError, DomainError
from .operators import d1
from .state import FieldState

LABELS = ("scalar", "pseudoscalar", "bivector", "vector-divergence", "pseudovector-divergence")
PRIMED_LABELS = tuple(label + "'" for label in LABELS)
AGREEMENT_TOL = 1e-12

_GAMMA_LEFT = np.stack([alg.left_matrix(alg.basis(alg.vector_mask(mu))) for mu in range(4)])


@dataclass
class ResidualReport:
    max_abs: dict[str, float]
    l2: dict[str, float]
    agreement: float = 0.0
    fields: dict[str, np.ndarray] = field(default_factory=dict, repr=False)

    @property
    def total_max(self) -> float:
        return max(self.max_abs.values(), default=0.0)

    @property
    def total_l2(self) -> float:
        return float(np.sqrt(sum(v * v for v in self.l2.values())))

    def as_dict(self) -> dict:
        return {
            "max_abs": dict(self.max_abs),
            "l2": dict(self.l2),
            "total_max": self.total_max,
            "total_l2": self.total_l2,
            "agreement": self.agreement,
        }


def spacetime_partials(state: FieldState) -> np.ndarray:
    """``d_mu psi`` stacked on a new last-but-two axis: ``(*grid, 4 [c], 4 [mu], 16)``."""
    if state.dt_psi is None:
        raise DomainError("state carries no time derivative")
    parts = [state.dt_psi, np.zeros_like(state.psi), np.zeros_like(state.psi), np.zeros_like(state.psi)]
    for axis, mu in state.spatial_axes():
        parts[mu] = d1(state.psi, state.dx, axis)
    return np.stack(parts, axis=-2)


def _grad(dpsi: np.ndarray) -> np.ndarray:
    return np.einsum("mij,...mj->...i", _GAMMA_LEFT, dpsi)


def dirac_derivative_array(state: FieldState) -> np.ndarray:
    """``g^mu d_mu`` applied to each constituent: ``(*grid, 4, 16)``."""
    dpsi = spacetime_partials(state)
    return _grad(dpsi)


def dirac_derivative(state: FieldState, point) -> DiracFieldValue:
    """``grad psi_M`` at one grid point, re-split into constituents by parity."""
    idx = (point,) if np.isscalar(point) else tuple(point)
    if len(idx) != state.ndim or any(not 0 <= i < n for i, n in zip(idx, state.grid_shape)):
        raise DomainError(f"point {point} is outside the grid {state.grid_shape}")
    re, im = constituents_to_complex(dirac_derivative_array(state)[idx])
    return DiracFieldValue.from_array(complex_to_constituents(re, im))


def _vector_field(A: np.ndarray) -> np.ndarray:
    """Lower components ``A_mu`` to coefficient arrays of ``A_mu g^mu``."""
    out = np.zeros(A.shape[:-1] + (alg.N_BLADES,))
    for mu in range(4):
        out[..., alg.vector_mask(mu)] = A[..., mu]
    return out


def _div(T: np.ndarray) -> np.ndarray:
    # d_b T^{b a} where T[..., b(derivative), b, a]
    return np.einsum("...bba->...a", T)


def _contract(A_low: np.ndarray, T_up: np.ndarray) -> np.ndarray:
    return np.einsum("...b,...ba->...a", A_low, T_up)


def _wedge_up(a_up: np.ndarray, b_up: np.ndarray) -> np.ndarray:
    t = a_up[..., :, None] * b_up[..., None, :]
    return t - np.swapaxes(t, -1, -2)


def _dual_of_wedge(a_low: np.ndarray, b_low: np.ndarray) -> np.ndarray:
    t = a_low[..., :, None] * b_low[..., None, :]
    return alg.dual_tensor(t - np.swapaxes(t, -1, -2))


def component_residuals(psi, dpsi, A, omega0: float, e: float) -> dict[str, np.ndarray]:
    """The ten tensor equations, as ``lhs - rhs`` with upper indices.

    ``psi``: ``(*grid, 4, 16)``; ``dpsi``: ``(*grid, 4, 4 [mu], 16)``;
    ``A``: ``(*grid, 4)`` lower components.
    """
    c = alg.split_components(psi)
    d = alg.split_components(dpsi)
    A_up = alg.raise_vector(A)
    eta = alg.METRIC
    out: dict[str, np.ndarray] = {}
    # (even, odd, partner even, partner odd, coupling sign)
    sectors = ((0, 1, 2, 3, -1.0, LABELS), (2, 3, 0, 1, 1.0, PRIMED_LABELS))
    for xe, xo, ye, yo, s, labels in sectors:
        se = s * e
        f, F, g = c["f"][..., xe], c["F"][..., xe, :, :], c["g"][..., xe]
        fy, Fy, gy = c["f"][..., ye], c["F"][..., ye, :, :], c["g"][..., ye]
        v, p = c["v"][..., xo, :], c["p"][..., xo, :]
        vy, py = c["v"][..., yo, :], c["p"][..., yo, :]
        df, dF, dg = d["f"][..., xe, :], d["F"][..., xe, :, :, :], d["g"][..., xe, :]
        dv, dp = d["v"][..., xo, :, :], d["p"][..., xo, :, :]

        out[labels[0]] = (
            alg.raise_vector(df) + se * A_up * fy[..., None]
            + _div(alg.raise_tensor(dF)) + se * _contract(A, alg.raise_tensor(Fy))
            - omega0 * alg.raise_vector(v)
        )
        out[labels[1]] = (
            alg.raise_vector(dg) + se * A_up * gy[..., None]
            + _div(alg.dual_tensor(dF)) + se * _contract(A, alg.dual_tensor(Fy))
            + omega0 * alg.raise_vector(p)
        )
        dv_up = alg.raise_tensor(dv)
        out[labels[2]] = (
            (dv_up - np.swapaxes(dv_up, -1, -2)) + se * _wedge_up(A_up, alg.raise_vector(vy))
            + alg.dual_tensor(dp - np.swapaxes(dp, -1, -2)) + se * _dual_of_wedge(A, py)
            + omega0 * alg.raise_tensor(F)
        )
        out[labels[3]] = (
            np.einsum("...aa,a->...", dv, eta) + se * np.einsum("...a,...a,a->...", A, vy, eta)
            + omega0 * f
        )
        out[labels[4]] = (
            np.einsum("...aa,a->...", dp, eta) + se * np.einsum("...a,...a,a->...", A, py, eta)
            - omega0 * g
        )
    return out


def multivector_residuals(psi, grad_psi, A, omega0: float, e: float) -> np.ndarray:
    """The four constituent equations ``(*grid, 4, 16)``; ``grad_psi`` is ``g^mu d_mu psi``."""
    Apsi = np.einsum("...ij,...cj->...ci", alg.left_matrix(_vector_field(A)), psi)
    out = np.empty_like(psi)
    out[..., 0, :] = grad_psi[..., 0, :] - e * Apsi[..., 2, :] - omega0 * psi[..., 1, :]
    out[..., 1, :] = grad_psi[..., 2, :] + e * Apsi[..., 0, :] - omega0 * psi[..., 3, :]
    out[..., 2, :] = grad_psi[..., 1, :] - e * Apsi[..., 3, :] + omega0 * psi[..., 0, :]
    out[..., 3, :] = grad_psi[..., 3, :] + e * Apsi[..., 1, :] + omega0 * psi[..., 2, :]
    return out


def complex_residual(psi, grad_psi, A, omega0: float, e: float) -> tuple[np.ndarray, np.ndarray]:
    """``j grad psi_M - e A psi_M - w0 psi_M`` as ``(re, im)``."""
    re, im = constituents_to_complex(psi)
    gre, gim = constituents_to_complex(grad_psi)
    Am = _vector_field(A)
    return (
        -gim - e * alg.gp(Am, re) - omega0 * re,
        gre - e * alg.gp(Am, im) - omega0 * im,
    )


def _components_from_multivector(E: np.ndarray) -> dict[str, np.ndarray]:
    """Read the ten tensor residuals off the four multivector residuals."""
    out = {}
    for (vec_eq, div_eq), labels in (((0, 2), LABELS), ((1, 3), PRIMED_LABELS)):
        a = alg.split_components(E[..., vec_eq, :])
        b = alg.split_components(E[..., div_eq, :])
        out[labels[0]] = alg.raise_vector(a["v"])
        out[labels[1]] = -alg.raise_vector(a["p"])
        out[labels[2]] = alg.raise_tensor(b["F"])
        out[labels[3]] = b["f"]
        out[labels[4]] = -b["g"]
    return out


def _multivector_from_complex(zre: np.ndarray, zim: np.ndarray) -> np.ndarray:
    return np.stack(
        [alg.odd_part(zim), -alg.odd_part(zre), -alg.even_part(zre), -alg.even_part(zim)],
        axis=-2,
    )


def _norms(res: np.ndarray, cell: float) -> tuple[float, float]:
    r = np.abs(res)
    return float(r.max(initial=0.0)), float(np.sqrt(np.sum(r * r) * cell))


def _evaluate(state: FieldState, omega0: float, e: float, check: bool) -> ResidualReport:
    dpsi = spacetime_partials(state)
    grad = _grad(dpsi)
    A = state.potential_values()
    comp = component_residuals(state.psi, dpsi, A, omega0, e)
    E = multivector_residuals(state.psi, grad, A, omega0, e)
    from_mv = _components_from_multivector(E)
    E_complex = _multivector_from_complex(*complex_residual(state.psi, grad, A, omega0, e))

    agreement = max(
        max(float(np.max(np.abs(comp[k] - from_mv[k]), initial=0.0)) for k in comp),
        float(np.max(np.abs(E - E_complex), initial=0.0)),
    )
    scale = max(
        1.0,
        float(np.max(np.abs(dpsi), initial=0.0)),
        float(np.max(np.abs(state.psi), initial=0.0))
        * max(abs(omega0), abs(e) * float(np.max(np.abs(A), initial=0.0))),
    )
    if check and agreement > AGREEMENT_TOL * scale:
        raise ConsistencyError(
            f"component and multivector residuals disagree by {agreement:.3g}"
        )
    max_abs, l2 = {}, {}
    for k, r in comp.items():
        max_abs[k], l2[k] = _norms(r, state.cell_volume)
    return ResidualReport(max_abs, l2, agreement, fields={"multivector": E, **comp})


def residual_massless(state: FieldState, *, check: bool = True) -> ResidualReport:
    if state.omega0 != 0.0:
        raise DomainError("residual_massless needs omega0 = 0")
    return _evaluate(state, 0.0, 0.0, check)


def residual_massive(state: FieldState, *, check: bool = True) -> ResidualReport:
    """Uncoupled massive equations; the primed sector is evaluated on its own."""
    if state.charge != 0.0:
        raise DomainError("residual_massive needs charge = 0")
    return _evaluate(state, state.omega0, 0.0, check)


def residual_charged(state: FieldState, *, check: bool = True) -> ResidualReport:
    return _evaluate(state, state.omega0, state.charge, check)


def residual_operator_form(state: FieldState) -> ResidualReport:
    """``grad psi_e - w0 psi_e g2 g1 g0`` for the even constituent."""
    grad = dirac_derivative_array(state)[..., 0, :]
    ref = alg.REF_PSEUDOVECTOR.coeffs
    res = grad - state.omega0 * alg.gp(state.psi[..., 0, :], ref)
    m, l2 = _norms(res, state.cell_volume)
    return ResidualReport({"operator-form": m}, {"operator-form": l2})
