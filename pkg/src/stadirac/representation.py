"""Matrix images of the algebra and the projection-bispinor bridge.

Two faithful representations are built from the blade basis:

* ``dirac4``: 4x4 complex Dirac-basis matrices, ``g^0 = diag(1, 1, -1, -1)``,
  ``g^i = [[0, s_i], [-s_i, 0]]``.  A complex multivector is mapped with
  ``j -> i``, which is the usual identification C (x) Cl(1,3) = M_4(C).
* ``real16``: 16x16 real orthogonal matrices on C (x) M_2(R) (x) H, ordered so
  the C factor is outermost: component ``((a * 2) + b) * 4 + c``.  Here ``j``
  acts through its own generator and stays distinct from ``g^2 g^1``.

The reference bispinors are ``w = e_0`` in both.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass

import numpy as np

from . import algebra as alg
from .algebra import Multivector
from .complexified import ComplexMultivector, J, j_conjugate, _lift
from .errors import ConsistencyError

SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

# real 2x2 images of the M_2(R) basis and of the complex unit
M1 = np.array([[0.0, 1.0], [1.0, 0.0]])
M2 = np.array([[0.0, -1.0], [1.0, 0.0]])
M3 = np.array([[1.0, 0.0], [0.0, -1.0]])
J2 = np.array([[0.0, -1.0], [1.0, 0.0]])

# real 4x4 images of the quaternion units
Q1 = np.array([[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]], dtype=float)
Q2 = np.array([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]], dtype=float)
Q3 = np.array([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]], dtype=float)
QUATERNION_UNITS = (Q1, Q2, Q3)


def dirac_gammas() -> list[np.ndarray]:
    zero = np.zeros((2, 2), dtype=complex)
    one = np.eye(2, dtype=complex)
    gammas = [np.block([[one, zero], [zero, -one]])]
    for s in SIGMA:
        gammas.append(np.block([[zero, s], [-s, zero]]))
    return gammas


def real16_generators() -> list[np.ndarray]:
    one2, one4 = np.eye(2), np.eye(4)
    gens = [np.kron(one2, np.kron(M3, one4))]
    for q in QUATERNION_UNITS:
        gens.append(np.kron(one2, np.kron(M1, q)))
    return gens


def _blade_images(generators: list[np.ndarray]) -> np.ndarray:
    dim = generators[0].shape[0]
    images = []
    for m in range(alg.N_BLADES):
        mat = np.eye(dim, dtype=generators[0].dtype)
        for k in range(4):
            if m >> k & 1:
                mat = mat @ generators[k]
        images.append(mat)
    return np.array(images)


def _homomorphism_defect(images: np.ndarray, table: np.ndarray = alg.PRODUCT) -> float:
    worst = 0.0
    for a in range(alg.N_BLADES):
        for b in range(alg.N_BLADES):
            expected = np.einsum("k,kij->ij", table[a, b], images)
            worst = max(worst, float(np.max(np.abs(images[a] @ images[b] - expected))))
    return worst


@dataclass(frozen=True)
class RepTable:
    dirac4: np.ndarray  # (16, 4, 4) complex
    real16: np.ndarray  # (16, 16, 16) real
    j16: np.ndarray  # (16, 16) image of j
    w4: np.ndarray
    w16: np.ndarray

    def image4(self, x) -> np.ndarray:
        """Dirac-basis matrix of a real or complex multivector (``j -> i``)."""
        x = _lift(x) if not isinstance(x, np.ndarray) else x
        if isinstance(x, ComplexMultivector):
            return self.image4(x.re.coeffs) + 1j * self.image4(x.im.coeffs)
        return np.einsum("...m,mij->...ij", np.asarray(x, dtype=float), self.dirac4)

    def image16(self, x) -> np.ndarray:
        x = _lift(x) if not isinstance(x, np.ndarray) else x
        if isinstance(x, ComplexMultivector):
            return self.image16(x.re.coeffs) + self.j16 @ self.image16(x.im.coeffs)
        return np.einsum("...m,mij->...ij", np.asarray(x, dtype=float), self.real16)

    def to_json(self) -> dict:
        def cmat(m):
            return [[[float(z.real), float(z.imag)] for z in row] for row in m]

        return {
            "schema": 1,
            "blades": list(alg.BLADE_NAMES),
            "dirac4": {alg.BLADE_NAMES[m]: cmat(self.dirac4[m]) for m in range(alg.N_BLADES)},
            "real16": {
                alg.BLADE_NAMES[m]: self.real16[m].astype(int).tolist()
                for m in range(alg.N_BLADES)
            },
            "j16": self.j16.astype(int).tolist(),
            "w4": [[float(z.real), float(z.imag)] for z in self.w4],
            "w16": self.w16.astype(int).tolist(),
        }


def build_rep_tables() -> RepTable:
    """Construct both representations and validate them on all 256 blade pairs."""
    dirac4 = _blade_images(dirac_gammas())
    real16 = _blade_images(real16_generators())
    j16 = np.kron(J2, np.eye(8))
    for name, images in (("dirac4", dirac4), ("real16", real16)):
        defect = _homomorphism_defect(images)
        if defect != 0.0:
            raise ConsistencyError(f"{name} is not a homomorphism (defect {defect:g})")
    if np.any(j16 @ j16 != -np.eye(16)) or any(
        np.any(j16 @ m != m @ j16) for m in real16
    ):
        raise ConsistencyError("j16 must square to -1 and commute with every blade")
    w4 = np.zeros(4, dtype=complex)
    w4[0] = 1.0
    w16 = np.zeros(16)
    w16[0] = 1.0
    return RepTable(dirac4, real16, j16, w4, w16)


@functools.lru_cache(maxsize=1)
def rep_tables() -> RepTable:
    return build_rep_tables()


def dump_rep_json(path=None) -> str:
    text = json.dumps(rep_tables().to_json(), indent=1, sort_keys=True)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text


def multivector_to_spinor(v, which: str = "dirac4") -> np.ndarray:
    """``psi = psi_M w`` in the chosen representation."""
    rep = rep_tables()
    if which == "dirac4":
        return rep.image4(v) @ rep.w4
    if which == "real16":
        return rep.image16(v) @ rep.w16
    raise ValueError(f"unknown representation {which!r}")


@functools.lru_cache(maxsize=1)
def _even_lift_matrix() -> tuple[np.ndarray, np.ndarray]:
    rep = rep_tables()
    masks = np.flatnonzero(alg.EVEN)
    cols = []
    for m in masks:
        s = rep.dirac4[m] @ rep.w4
        cols.append(np.concatenate([s.real, s.imag]))
    return masks, np.linalg.inv(np.array(cols).T)


def spinor_to_multivector(s: np.ndarray) -> ComplexMultivector:
    """Even-grade multivector whose Dirac spinor is ``s``.

    The lift from 8 real spinor components to the 8 even-grade coefficients
    is a bijection; odd grades and the ``j`` part are left at zero.  Other
    lifts exist (``1`` and ``g^0`` project to the same component of ``w``).
    """
    s = np.asarray(s, dtype=complex)
    masks, inv = _even_lift_matrix()
    coeffs = inv @ np.concatenate([s.real, s.imag])
    x = np.zeros(alg.N_BLADES)
    x[masks] = coeffs
    return ComplexMultivector.real(Multivector(x))


def geometric_i_action(v):
    """Right-multiply by ``g^2 g^1``; acts on the Dirac spinor as ``i``."""
    v = _lift(v)
    return v * alg.GEOMETRIC_I


def _eq7_value(x: np.ndarray) -> complex:
    # < X (1 + g0 - i g2 g1 - i g2 g1 g0) >
    one_g0 = (alg.ONE + alg.G0).coeffs
    i_part = (alg.GEOMETRIC_I + alg.REF_PSEUDOVECTOR).coeffs
    re = alg.scalar_part(alg.gp(x, one_g0))
    im = -alg.scalar_part(alg.gp(x, i_part))
    return complex(re, im)


def bilinear_extract(M, left, right, *, check: bool = True, tol: float = 1e-10) -> complex:
    """``psibar M psi`` with ``psibar`` built from ``left`` and ``psi`` from ``right``.

    The value is computed on three routes: the Dirac-basis spinor sandwich,
    the scalar-part formula with the projector ``1 + g0 - i g2g1 - i g2g1g0``,
    and the real 16-dimensional sandwich ``w^T (.) w``.  The first two carry
    both an ``i`` and a ``j`` imaginary part; the real route sees only the
    ``i``-real parts.  The returned Python complex holds those parts, with
    ``1j`` standing for ``j``.
    """
    rep = rep_tables()
    M, left, right = _lift(M), _lift(left), _lift(right)
    X = alg.G0 * (~j_conjugate(left)) * M * right

    w = rep.w4
    route4 = [np.vdot(w, rep.image4(part.coeffs) @ w) for part in (X.re, X.im)]
    route7 = [_eq7_value(part.coeffs) for part in (X.re, X.im)]
    w16 = rep.w16
    route16 = [
        w16 @ rep.image16(X) @ w16,
        w16 @ rep.image16((-1j) * X) @ w16,
    ]
    value = complex(route16[0], route16[1])
    if check:
        disagreement = max(
            max(abs(a - b) for a, b in zip(route4, route7)),
            max(abs(a.real - b) for a, b in zip(route4, route16)),
        )
        if disagreement > tol:
            raise ConsistencyError(f"bilinear routes disagree by {disagreement:g}")
    return value


def bilinear_routes(M, left, right) -> dict[str, tuple[complex, complex]]:
    """The unreduced per-route values (``j``-real part, ``j``-imaginary part)."""
    rep = rep_tables()
    M, left, right = _lift(M), _lift(left), _lift(right)
    X = alg.G0 * (~j_conjugate(left)) * M * right
    w = rep.w4
    return {
        "dirac4": tuple(complex(np.vdot(w, rep.image4(p.coeffs) @ w)) for p in (X.re, X.im)),
        "scalar_part": tuple(_eq7_value(p.coeffs) for p in (X.re, X.im)),
        "real16": (
            complex(rep.w16 @ rep.image16(X) @ rep.w16),
            complex(rep.w16 @ rep.image16((-1j) * X) @ rep.w16),
        ),
    }


__all__ = [
    "RepTable",
    "build_rep_tables",
    "rep_tables",
    "dump_rep_json",
    "multivector_to_spinor",
    "spinor_to_multivector",
    "geometric_i_action",
    "bilinear_extract",
    "bilinear_routes",
    "dirac_gammas",
    "real16_generators",
    "J",
]
