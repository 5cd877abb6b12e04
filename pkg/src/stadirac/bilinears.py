"""Quadratic observables: current vector and two spin constructions.

For a field ``psi_M = r + j i`` whose projection bispinor carries the frame
rotor ``F`` (``F = 1`` unless the field was Lorentz transformed), with
``u = F g0 ~F``:

    current  J = <r (1 + u) ~r + i (1 + u) ~i>_1
    spin     S = 1/2 <r K ~r + i K ~i>_3,   K = F g2 g1 (1 + g0) ~F
    spin'    S = 1/2 <r (1 + u) ~i - i (1 + u) ~r>_3

``spin`` realises the spinor ``i`` geometrically (right multiplication by
``g2 g1``), ``spin'`` realises it with ``j``.  For ``F = 1`` and an uncharged
field these reduce to ``psi_e g0 ~psi_e + psi_o g0 ~psi_o`` and the familiar
sandwiches with ``g2 g1 g0``.  Every formula equals the spinor bilinear
``psibar M psi`` read off with :func:`representation.bilinear_extract`.

Components: ``j^mu = <J g^mu>`` (upper index), ``S^{0ij} = <S g^0 g^i g^j>``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra as alg
from .algebra import Multivector
from .complexified import DiracFieldValue, constituents_to_complex
from .dynamics.operators import d1, time_derivative, uniform_step
from .dynamics.state import FieldState
from .errors import DomainError

SPIN_PLANES = ((1, 2), (2, 3), (3, 1))
SPIN_LABELS = ("S012", "S023", "S031")

_G0 = alg.G0.coeffs
_ONE = alg.ONE.coeffs
_GEO = (alg.GEOMETRIC_I * (alg.ONE + alg.G0)).coeffs


def _spin_probe(i: int, j: int) -> np.ndarray:
    return (alg.G0 * alg.GAMMA[i] * alg.GAMMA[j]).coeffs


_SPIN_PROBES = np.stack([_spin_probe(i, j) for i, j in SPIN_PLANES])
_VECTOR_PROBES = np.stack([alg.GAMMA[mu].coeffs for mu in range(4)])


def _sandwich(a: np.ndarray, K: np.ndarray, b: np.ndarray) -> np.ndarray:
    return alg.gp(alg.gp(a, K), alg.reverse(b))


def _frame_terms(frame: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    frame_rev = alg.reverse(frame)
    one_u = _ONE + alg.gp(alg.gp(frame, _G0), frame_rev)
    K = alg.gp(alg.gp(frame, _GEO), frame_rev)
    return one_u, K


def current_vector_array(psi: np.ndarray, frame: np.ndarray = _ONE) -> np.ndarray:
    """Grade-1 current multivector for constituent arrays ``(..., 4, 16)``."""
    r, i = constituents_to_complex(psi)
    one_u, _ = _frame_terms(frame)
    return alg.grade(_sandwich(r, one_u, r) + _sandwich(i, one_u, i), 1)


def spin_geometric_array(psi: np.ndarray, frame: np.ndarray = _ONE) -> np.ndarray:
    r, i = constituents_to_complex(psi)
    _, K = _frame_terms(frame)
    return 0.5 * alg.grade(_sandwich(r, K, r) + _sandwich(i, K, i), 3)


def spin_nongeometric_array(psi: np.ndarray, frame: np.ndarray = _ONE) -> np.ndarray:
    r, i = constituents_to_complex(psi)
    one_u, _ = _frame_terms(frame)
    return 0.5 * alg.grade(_sandwich(r, one_u, i) - _sandwich(i, one_u, r), 3)


def vector_components(J: np.ndarray) -> np.ndarray:
    """Upper components ``<J g^mu>``."""
    return np.stack([alg.scalar_part(alg.gp(J, _VECTOR_PROBES[mu])) for mu in range(4)], axis=-1)


def spin_components(S: np.ndarray) -> np.ndarray:
    """``(S^{012}, S^{023}, S^{031})`` of a pseudovector."""
    return np.stack([alg.scalar_part(alg.gp(S, probe)) for probe in _SPIN_PROBES], axis=-1)


def current_array(psi: np.ndarray, frame: np.ndarray = _ONE) -> np.ndarray:
    return vector_components(current_vector_array(psi, frame))


@dataclass(frozen=True)
class BilinearSet:
    j: np.ndarray
    S: np.ndarray
    construction_tag: str

    def __post_init__(self):
        if self.construction_tag not in ("geometric", "nongeometric"):
            raise DomainError(f"unknown construction {self.construction_tag!r}")


def current_vector(v: DiracFieldValue) -> Multivector:
    return Multivector(current_vector_array(v.as_array(), v.frame.coeffs))


def current(v: DiracFieldValue) -> np.ndarray:
    """``j^mu``, equal to ``psibar g^mu psi``."""
    return vector_components(current_vector(v).coeffs)


def spin_pseudovector(v: DiracFieldValue, construction: str = "geometric") -> Multivector:
    fn = {"geometric": spin_geometric_array, "nongeometric": spin_nongeometric_array}.get(construction)
    if fn is None:
        raise DomainError(f"unknown construction {construction!r}")
    return Multivector(fn(v.as_array(), v.frame.coeffs))


def spin_geometric(v: DiracFieldValue) -> np.ndarray:
    return spin_components(spin_pseudovector(v, "geometric").coeffs)


def spin_nongeometric(v: DiracFieldValue) -> np.ndarray:
    return spin_components(spin_pseudovector(v, "nongeometric").coeffs)


def bilinear_set(v: DiracFieldValue, construction: str = "geometric") -> BilinearSet:
    S = spin_components(spin_pseudovector(v, construction).coeffs)
    return BilinearSet(current(v), S, construction)


# -- closed forms for an even field f + F + g I ----------------------------------

def current_closed_form(f=0.0, E=(0.0, 0.0, 0.0), B=(0.0, 0.0, 0.0), g=0.0) -> np.ndarray:
    """Upper components of ``(f^2+g^2+E^2+B^2) g0 - 2 (fE + gB + E x B)_i g^i``."""
    E, B = np.asarray(E, dtype=float), np.asarray(B, dtype=float)
    j0 = f * f + g * g + E @ E + B @ B
    flux = 2.0 * (f * E + g * B + np.cross(E, B))
    return np.concatenate([[j0], flux])


def spin012_closed_form(f=0.0, E=(0.0, 0.0, 0.0), B=(0.0, 0.0, 0.0), g=0.0) -> float:
    E, B = np.asarray(E, dtype=float), np.asarray(B, dtype=float)
    return 0.5 * (f * f + g * g - E @ E - B @ B + 2.0 * E[2] ** 2 + 2.0 * B[2] ** 2)


# -- conservation along trajectories -----------------------------------------------

def current_conservation_residual(states: list[FieldState]) -> float:
    """Max of ``|d_mu j^mu|`` over the grid and the interior time slices.

    Time derivatives use a five-point centered stencil when at least five
    slices are given, a three-point one otherwise; space uses the fourth-order
    periodic stencil.
    """
    if len(states) < 3:
        raise DomainError("current conservation needs at least 3 time slices")
    h = uniform_step([s.t for s in states])
    frame = states[0].frame
    j = np.stack([current_array(s.psi, frame) for s in states])
    dj0 = time_derivative(j[..., 0], h)
    margin = 2 if len(states) >= 5 else 1
    worst = 0.0
    for n in range(margin, len(states) - margin):
        s = states[n]
        div = dj0[n].copy()
        for axis, mu in s.spatial_axes():
            div += d1(j[n][..., mu], s.dx, axis)
        worst = max(worst, float(np.max(np.abs(div))))
    return worst
