"""The complexified algebra C (x) Cl(1,3) with a non-geometric unit ``j``.

``j`` squares to -1 and commutes with every blade; it is *not* the
geometric imaginary ``g^2 g^1``.  A charged Dirac field is stored as four
real constituents ``(psi_e, psi_o, psi_e', psi_o')`` with

    psi_M = psi_1 + j psi_2,  psi_1 = psi_e + j psi_o,  psi_2 = psi_e' + j psi_o'.

Because the two ``j`` are the same unit, ``psi_M`` as a single complex
multivector is ``(psi_e - psi_o') + j (psi_o + psi_e')``; the grade parity of
each constituent makes that split invertible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import algebra as alg
from .algebra import Multivector
from .errors import DomainError


def _as_mv(x) -> Multivector:
    if isinstance(x, Multivector):
        return x
    if np.isscalar(x):
        return Multivector.scalar(float(x))
    return Multivector(np.asarray(x, dtype=float))


def cgp(a_re, a_im, b_re, b_im):
    """Complex geometric product on raw coefficient arrays."""
    return (
        alg.gp(a_re, b_re) - alg.gp(a_im, b_im),
        alg.gp(a_re, b_im) + alg.gp(a_im, b_re),
    )


@dataclass(frozen=True)
class ComplexMultivector:
    """``re + j im`` with real multivector parts.

    Python complex scalars multiply as ``a + j b``.
    """

    re: Multivector = field(default_factory=Multivector)
    im: Multivector = field(default_factory=Multivector)

    def __post_init__(self):
        object.__setattr__(self, "re", _as_mv(self.re))
        object.__setattr__(self, "im", _as_mv(self.im))

    @classmethod
    def real(cls, x) -> "ComplexMultivector":
        return cls(_as_mv(x), Multivector())

    @classmethod
    def from_arrays(cls, re: np.ndarray, im: np.ndarray) -> "ComplexMultivector":
        return cls(Multivector(re), Multivector(im))

    def __add__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return ComplexMultivector(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexMultivector(-self.re, -self.im)

    def __sub__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return ComplexMultivector(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        re, im = cgp(self.re.coeffs, self.im.coeffs, other.re.coeffs, other.im.coeffs)
        return ComplexMultivector.from_arrays(re, im)

    def __rmul__(self, other):
        other = _lift(other)
        if other is None:
            return NotImplemented
        return other * self

    def reverse(self) -> "ComplexMultivector":
        return ComplexMultivector(~self.re, ~self.im)

    def __invert__(self):
        return self.reverse()

    def grade(self, k: int) -> "ComplexMultivector":
        return ComplexMultivector(self.re.grade(k), self.im.grade(k))

    def scalar_part(self) -> complex:
        return complex(self.re.scalar_part(), self.im.scalar_part())

    def allclose(self, other: "ComplexMultivector", atol: float = 1e-12) -> bool:
        return self.re.allclose(other.re, atol) and self.im.allclose(other.im, atol)

    def as_array(self) -> np.ndarray:
        return np.stack([self.re.coeffs, self.im.coeffs])


def _lift(x) -> ComplexMultivector | None:
    if isinstance(x, ComplexMultivector):
        return x
    if isinstance(x, Multivector):
        return ComplexMultivector.real(x)
    if isinstance(x, complex):
        return ComplexMultivector(Multivector.scalar(x.real), Multivector.scalar(x.imag))
    if np.isscalar(x):
        return ComplexMultivector.real(float(x))
    return None


J = ComplexMultivector(Multivector(), alg.ONE)


def j_conjugate(a: ComplexMultivector) -> ComplexMultivector:
    """Flip the sign of every ``j``; blades are untouched."""
    return ComplexMultivector(a.re, -a.im)


def grade_involute(a: ComplexMultivector) -> ComplexMultivector:
    """Negate odd grades; equal to ``-I a I``."""
    return ComplexMultivector(
        Multivector(alg.involute(a.re.coeffs)), Multivector(alg.involute(a.im.coeffs))
    )


def complex_conjugate_geometric(a: ComplexMultivector) -> ComplexMultivector:
    """``g^2 I conj_j(a) I g^2``: the image of entrywise conjugation in the Dirac basis."""
    left = alg.G2 * alg.I
    right = alg.I * alg.G2
    return left * j_conjugate(a) * right


# -- array forms of the constituent <-> complex split -------------------------

def constituents_to_complex(psi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``(..., 4, 16)`` constituents to ``(re, im)`` of ``psi_M``."""
    return psi[..., 0, :] - psi[..., 3, :], psi[..., 1, :] + psi[..., 2, :]


def complex_to_constituents(re: np.ndarray, im: np.ndarray) -> np.ndarray:
    return np.stack(
        [alg.even_part(re), alg.odd_part(im), alg.even_part(im), -alg.odd_part(re)],
        axis=-2,
    )


CONSTITUENT_NAMES = ("psi_e", "psi_o", "psi_e'", "psi_o'")
_CONSTITUENT_PARITY = (alg.EVEN, alg.ODD, alg.EVEN, alg.ODD)


def check_parity(psi: np.ndarray) -> None:
    """Raise unless every constituent has exact zeros in its forbidden grades."""
    for k, allowed in enumerate(_CONSTITUENT_PARITY):
        if np.any(psi[..., k, ~allowed] != 0.0):
            raise DomainError(f"{CONSTITUENT_NAMES[k]} has coefficients of the wrong parity")


@dataclass(frozen=True)
class DiracFieldValue:
    """The four real constituents of a (possibly charged) massive Dirac field.

    ``frame`` is the rotor carried by the projection bispinor: a field whose
    bispinor has been Lorentz transformed with ``S`` has ``frame = S``.
    Bilinears need it to stay covariant.
    """

    psi_e: Multivector = field(default_factory=Multivector)
    psi_o: Multivector = field(default_factory=Multivector)
    psi_e2: Multivector = field(default_factory=Multivector)
    psi_o2: Multivector = field(default_factory=Multivector)
    frame: Multivector = field(default_factory=lambda: alg.ONE)

    def __post_init__(self):
        for name in ("psi_e", "psi_o", "psi_e2", "psi_o2", "frame"):
            object.__setattr__(self, name, _as_mv(getattr(self, name)))
        check_parity(self.as_array())

    @classmethod
    def from_array(cls, psi: np.ndarray, frame: Multivector = alg.ONE) -> "DiracFieldValue":
        return cls(*(Multivector(psi[k]) for k in range(4)), frame=frame)

    @classmethod
    def from_complex(cls, psi_M: ComplexMultivector, frame: Multivector = alg.ONE) -> "DiracFieldValue":
        return cls.from_array(complex_to_constituents(psi_M.re.coeffs, psi_M.im.coeffs), frame)

    @classmethod
    def uncharged(cls, psi_e, psi_o=None, frame: Multivector = alg.ONE) -> "DiracFieldValue":
        return cls(psi_e, psi_o if psi_o is not None else Multivector(), frame=frame)

    def as_array(self) -> np.ndarray:
        return np.stack([self.psi_e.coeffs, self.psi_o.coeffs, self.psi_e2.coeffs, self.psi_o2.coeffs])

    @property
    def psi1(self) -> ComplexMultivector:
        return ComplexMultivector(self.psi_e, self.psi_o)

    @property
    def psi2(self) -> ComplexMultivector:
        return ComplexMultivector(self.psi_e2, self.psi_o2)

    @property
    def psi_M(self) -> ComplexMultivector:
        return self.psi1 + J * self.psi2

    def allclose(self, other: "DiracFieldValue", atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.as_array(), other.as_array(), rtol=0.0, atol=atol))


def charge_conjugate(v: DiracFieldValue) -> DiracFieldValue:
    """``psi_1 + j psi_2 -> psi_1 - j psi_2``."""
    return DiracFieldValue(v.psi_e, v.psi_o, -v.psi_e2, -v.psi_o2, frame=v.frame)


def charge_conjugate_array(psi: np.ndarray) -> np.ndarray:
    out = psi.copy()
    out[..., 2:, :] *= -1.0
    return out
