"""Real spacetime algebra Cl(1,3) on a 16-blade bitmask basis.

Blade ``m`` is the ordered product of the upper-index vectors ``g^k`` whose
bit ``k`` is set in ``m``, taken in ascending ``k``.  The metric is
``diag(+1, -1, -1, -1)``.

Sign convention for the pseudoscalar: ``I = g_0 g_1 g_2 g_3 = -g^0 g^1 g^2 g^3``,
so ``I`` is *minus* the mask-15 blade.  Physical components of a field

    psi = f + v_mu g^mu + 1/2 F_{mu nu} g^mu ^ g^nu + p_mu I g^mu + g I

are read off with :func:`split_components` and written with
:func:`assemble`; lower-index coefficients pair with upper-index blades.

Everything here works on plain ``(..., 16)`` float arrays so the same
kernels serve single values and whole grids.  :class:`Multivector` is a thin
immutable wrapper for interactive use.
"""

from __future__ import annotations

import itertools
import math
from typing import Iterable

import numpy as np

from .errors import DomainError

N_BLADES = 16
METRIC = np.array([1.0, -1.0, -1.0, -1.0])
GRADES = np.array([bin(m).count("1") for m in range(N_BLADES)])
EVEN = GRADES % 2 == 0
ODD = ~EVEN
REVERSE_SIGNS = np.array([(-1.0) ** (k * (k - 1) // 2) for k in GRADES])
INVOLUTE_SIGNS = np.where(EVEN, 1.0, -1.0)

SCALAR = 0
PSEUDOSCALAR_MASK = 15


def blade_name(mask: int) -> str:
    if mask == 0:
        return "1"
    return "g" + "".join(str(k) for k in range(4) if mask >> k & 1)


BLADE_NAMES = [blade_name(m) for m in range(N_BLADES)]


def vector_mask(mu: int) -> int:
    return 1 << mu


def bivector_mask(mu: int, nu: int) -> int:
    return (1 << mu) | (1 << nu)


def blade_product(a: int, b: int) -> tuple[int, int]:
    """Return ``(sign, mask)`` with ``blade(a) * blade(b) = sign * blade(mask)``."""
    swaps = 0
    for j in range(4):
        if b >> j & 1:
            # every vector of ``a`` with a higher index must hop over g^j
            swaps += bin(a >> (j + 1)).count("1")
    sign = -1 if swaps % 2 else 1
    common = a & b
    for k in range(4):
        if common >> k & 1:
            sign *= int(METRIC[k])
    return sign, a ^ b


def build_product_tensor(fault: tuple[int, int] | None = None) -> np.ndarray:
    """Structure constants ``C[i, j, k]`` of the geometric product.

    ``fault`` flips the sign of one basis product; it exists only so the
    verification suite can prove it notices a corrupted table.
    """
    table = np.zeros((N_BLADES, N_BLADES, N_BLADES))
    for a in range(N_BLADES):
        for b in range(N_BLADES):
            sign, m = blade_product(a, b)
            if fault is not None and (a, b) == tuple(fault):
                sign = -sign
            table[a, b, m] = sign
    return table


PRODUCT = build_product_tensor()
# outer product keeps only products of disjoint blades
OUTER = PRODUCT * np.array(
    [[1.0 if a & b == 0 else 0.0 for b in range(N_BLADES)] for a in range(N_BLADES)]
)[:, :, None]


def gp(x: np.ndarray, y: np.ndarray, table: np.ndarray = PRODUCT) -> np.ndarray:
    """Geometric product of coefficient arrays, broadcasting over leading axes."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    pairs = x[..., :, None] * y[..., None, :]
    return pairs.reshape(pairs.shape[:-2] + (N_BLADES * N_BLADES,)) @ table.reshape(-1, N_BLADES)


def outer(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return gp(x, y, OUTER)


def left_matrix(a: np.ndarray) -> np.ndarray:
    """Matrix ``L`` with ``L @ y == gp(a, y)``; broadcasts over leading axes of ``a``."""
    return np.einsum("...i,ijk->...kj", a, PRODUCT)


def right_matrix(b: np.ndarray) -> np.ndarray:
    return np.einsum("...j,ijk->...ki", b, PRODUCT)


def reverse(x: np.ndarray) -> np.ndarray:
    return x * REVERSE_SIGNS


def involute(x: np.ndarray) -> np.ndarray:
    return x * INVOLUTE_SIGNS


def grade(x: np.ndarray, k: int) -> np.ndarray:
    if not 0 <= k <= 4:
        raise DomainError(f"grade must be in [0, 4], got {k}")
    return np.where(GRADES == k, x, 0.0)


def even_part(x: np.ndarray) -> np.ndarray:
    return np.where(EVEN, x, 0.0)


def odd_part(x: np.ndarray) -> np.ndarray:
    return np.where(ODD, x, 0.0)


def scalar_part(x: np.ndarray) -> np.ndarray:
    return x[..., SCALAR]


def basis(mask: int) -> np.ndarray:
    out = np.zeros(N_BLADES)
    out[mask] = 1.0
    return out


def _pseudovector_table() -> tuple[list[int], np.ndarray]:
    masks, signs = [], []
    for mu in range(4):
        # I g^mu = -(blade15 * g^mu)
        s, m = blade_product(PSEUDOSCALAR_MASK, vector_mask(mu))
        masks.append(m)
        signs.append(-s)
    return masks, np.array(signs, dtype=float)


PSEUDOVECTOR_MASKS, PSEUDOVECTOR_SIGNS = _pseudovector_table()
BIVECTOR_PAIRS = [(mu, nu) for mu in range(4) for nu in range(mu + 1, 4)]


def _levi_civita() -> np.ndarray:
    eps = np.zeros((4, 4, 4, 4))
    for perm in itertools.permutations(range(4)):
        inversions = sum(
            1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j]
        )
        eps[perm] = -1.0 if inversions % 2 else 1.0
    return eps


# eps^{0123} = +1; this sign makes the component equations match the
# grade split of the multivector equations.
LEVI_CIVITA = _levi_civita()
ETA = np.diag(METRIC)


def raise_vector(v: np.ndarray) -> np.ndarray:
    return v * METRIC


def raise_tensor(F: np.ndarray) -> np.ndarray:
    """Raise both indices of a rank-2 array ``(..., 4, 4)``; also lowers."""
    return F * METRIC[:, None] * METRIC[None, :]


def split_components(x: np.ndarray) -> dict[str, np.ndarray]:
    """Lower-index physical components ``f, v_mu, F_{mu nu}, p_mu, g``."""
    x = np.asarray(x, dtype=float)
    lead = x.shape[:-1]
    F = np.zeros(lead + (4, 4))
    for mu, nu in BIVECTOR_PAIRS:
        c = x[..., bivector_mask(mu, nu)]
        F[..., mu, nu] = c
        F[..., nu, mu] = -c
    v = np.stack([x[..., vector_mask(mu)] for mu in range(4)], axis=-1)
    p = np.stack(
        [x[..., PSEUDOVECTOR_MASKS[mu]] * PSEUDOVECTOR_SIGNS[mu] for mu in range(4)],
        axis=-1,
    )
    return {
        "f": x[..., SCALAR],
        "v": v,
        "F": F,
        "p": p,
        "g": -x[..., PSEUDOSCALAR_MASK],
    }


def assemble(f=0.0, v=None, F=None, p=None, g=0.0) -> np.ndarray:
    """Inverse of :func:`split_components`.  ``F`` must be antisymmetric."""
    shapes = [np.shape(f), np.shape(g)]
    shapes += [np.shape(a)[:-1] for a in (v, p) if a is not None]
    if F is not None:
        shapes.append(np.shape(F)[:-2])
    lead = np.broadcast_shapes(*shapes)
    x = np.zeros(lead + (N_BLADES,))
    x[..., SCALAR] = f
    x[..., PSEUDOSCALAR_MASK] = -np.asarray(g, dtype=float)
    if v is not None:
        v = np.asarray(v, dtype=float)
        for mu in range(4):
            x[..., vector_mask(mu)] = v[..., mu]
    if p is not None:
        p = np.asarray(p, dtype=float)
        for mu in range(4):
            x[..., PSEUDOVECTOR_MASKS[mu]] = p[..., mu] * PSEUDOVECTOR_SIGNS[mu]
    if F is not None:
        F = np.asarray(F, dtype=float)
        for mu, nu in BIVECTOR_PAIRS:
            x[..., bivector_mask(mu, nu)] = F[..., mu, nu]
    return x


def electric_field(x: np.ndarray) -> np.ndarray:
    """``E_i = F^{i0}`` for i = 1..3."""
    F_up = raise_tensor(split_components(x)["F"])
    return np.stack([F_up[..., i, 0] for i in (1, 2, 3)], axis=-1)


def magnetic_field(x: np.ndarray) -> np.ndarray:
    """``B_i = -1/2 eps^{ijk} F^{jk}`` for i = 1..3."""
    F_up = raise_tensor(split_components(x)["F"])
    return np.stack(
        [-F_up[..., 2, 3], -F_up[..., 3, 1], -F_up[..., 1, 2]], axis=-1
    )


def from_fields(f=0.0, E=(0.0, 0.0, 0.0), B=(0.0, 0.0, 0.0), g=0.0) -> np.ndarray:
    """Even multivector from scalar, E, B and pseudoscalar values."""
    E = np.asarray(E, dtype=float)
    B = np.asarray(B, dtype=float)
    F_up = np.zeros(E.shape[:-1] + (4, 4))
    for i in range(3):
        F_up[..., i + 1, 0] = E[..., i]
        F_up[..., 0, i + 1] = -E[..., i]
    for i, j, k in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        F_up[..., j, k] = -B[..., i - 1]
        F_up[..., k, j] = B[..., i - 1]
    return assemble(f=f, F=raise_tensor(F_up), g=g)


def dual_tensor(F: np.ndarray) -> np.ndarray:
    """Hodge dual ``1/2 eps^{ab cd} F_{cd}`` of a lower-index antisymmetric array.

    The result carries upper indices; lower it with :func:`raise_tensor`
    before dualising again.  Twice round gives ``-F`` in this signature.
    """
    return 0.5 * np.einsum("abcd,...cd->...ab", LEVI_CIVITA, F)


def exp_bivector(B: np.ndarray, *, tol: float = 1e-16, max_terms: int = 64) -> np.ndarray:
    """Geometric-product exponential of a pure bivector.

    Scaling and squaring around a truncated power series; general bivectors
    in Cl(1,3) are not simple, so no closed form is used.
    """
    B = np.asarray(B, dtype=float)
    if np.any(B[~(GRADES == 2)] != 0.0):
        raise DomainError("exp_bivector expects a pure bivector")
    norm = float(np.sum(np.abs(B)))
    squarings = max(0, math.ceil(math.log2(norm / 0.5))) if norm > 0.5 else 0
    X = B / 2.0**squarings
    total = basis(SCALAR)
    term = basis(SCALAR)
    for n in range(1, max_terms + 1):
        term = gp(term, X) / n
        total = total + term
        if np.max(np.abs(term)) < tol:
            break
    for _ in range(squarings):
        total = gp(total, total)
    return total


class Multivector:
    """Immutable element of Cl(1,3).

    Supports ``+``, ``-``, ``*`` (geometric product, or scaling by a real),
    ``^`` (outer product) and ``~`` (reversion).
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[float] | np.ndarray = ()):
        c = np.zeros(N_BLADES)
        arr = np.asarray(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs, dtype=float)
        if arr.size:
            if arr.shape != (N_BLADES,):
                raise DomainError(f"expected 16 coefficients, got shape {arr.shape}")
            c[:] = arr
        c.flags.writeable = False
        self._c = c

    @classmethod
    def scalar(cls, value: float) -> "Multivector":
        return cls(value * basis(SCALAR))

    @classmethod
    def blade(cls, mask: int, value: float = 1.0) -> "Multivector":
        return cls(value * basis(mask))

    @classmethod
    def vector(cls, components: Iterable[float]) -> "Multivector":
        return cls(assemble(v=np.asarray(list(components), dtype=float)))

    @classmethod
    def from_components(cls, **kwargs) -> "Multivector":
        return cls(assemble(**kwargs))

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    def __getitem__(self, mask: int) -> float:
        return float(self._c[mask])

    def grade(self, k: int) -> "Multivector":
        return Multivector(grade(self._c, k))

    def even(self) -> "Multivector":
        return Multivector(even_part(self._c))

    def odd(self) -> "Multivector":
        return Multivector(odd_part(self._c))

    def scalar_part(self) -> float:
        return float(self._c[SCALAR])

    def components(self) -> dict[str, np.ndarray]:
        return split_components(self._c)

    def reverse(self) -> "Multivector":
        return Multivector(reverse(self._c))

    def __invert__(self) -> "Multivector":
        return self.reverse()

    def __neg__(self) -> "Multivector":
        return Multivector(-self._c)

    def __add__(self, other):
        if isinstance(other, Multivector):
            return Multivector(self._c + other._c)
        if np.isscalar(other):
            return self + Multivector.scalar(float(other))
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Multivector):
            return Multivector(self._c - other._c)
        if np.isscalar(other):
            return self - Multivector.scalar(float(other))
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return Multivector(gp(self._c, other._c))
        if np.isscalar(other) and not isinstance(other, complex):
            return Multivector(self._c * float(other))
        return NotImplemented

    def __rmul__(self, other):
        if np.isscalar(other) and not isinstance(other, complex):
            return Multivector(self._c * float(other))
        return NotImplemented

    def __truediv__(self, other):
        if np.isscalar(other):
            return Multivector(self._c / float(other))
        return NotImplemented

    def __xor__(self, other):
        if isinstance(other, Multivector):
            return Multivector(outer(self._c, other._c))
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, Multivector):
            return bool(np.array_equal(self._c, other._c))
        return NotImplemented

    __hash__ = None

    def allclose(self, other: "Multivector", atol: float = 1e-12) -> bool:
        return bool(np.allclose(self._c, other._c, rtol=0.0, atol=atol))

    def __repr__(self) -> str:
        terms = [
            f"{c:+.6g}*{BLADE_NAMES[m]}" if m else f"{c:+.6g}"
            for m, c in enumerate(self._c)
            if c != 0.0
        ]
        return "Multivector(" + (" ".join(terms) if terms else "0") + ")"


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    return a * b


def wedge(a: Multivector, b: Multivector) -> Multivector:
    return a ^ b


def grade_project(a: Multivector, k: int) -> Multivector:
    return a.grade(k)


ONE = Multivector.scalar(1.0)
G0, G1, G2, G3 = (Multivector.blade(vector_mask(mu)) for mu in range(4))
GAMMA = (G0, G1, G2, G3)
# I = g_0 g_1 g_2 g_3 = -g^0 g^1 g^2 g^3
I = Multivector.blade(PSEUDOSCALAR_MASK, -1.0)
# the reference pseudovector g^2 g^1 g^0 and the geometric imaginary g^2 g^1
REF_PSEUDOVECTOR = G2 * G1 * G0
GEOMETRIC_I = G2 * G1
