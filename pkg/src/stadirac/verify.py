"""Named self-checks of the algebra, representations, bilinears and symmetries.

Each check returns a measured error and a tolerance.  ``run_checks`` takes an
optional faulty product table so the harness can prove that a broken sign is
caught (the first failing check is then ``anticommutation``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import algebra as alg
from . import bilinears as bl
from . import symmetry as sym
from .algebra import Multivector
from .complexified import ComplexMultivector, DiracFieldValue, complex_conjugate_geometric
from .dynamics import charged_rest, residual_charged
from .representation import (
    _homomorphism_defect,
    bilinear_extract,
    multivector_to_spinor,
    rep_tables,
    spinor_to_multivector,
)

REPORT_SCHEMA = 1


@dataclass
class CheckResult:
    name: str
    error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.error) and self.error <= self.tolerance)

    def as_dict(self) -> dict:
        return {"name": self.name, "error": self.error, "tolerance": self.tolerance, "passed": self.passed}


def random_field(rng: np.random.Generator, *, charged: bool = True, frame=None) -> DiracFieldValue:
    psi = rng.normal(size=(4, 16))
    psi[0, alg.ODD] = psi[2, alg.ODD] = 0.0
    psi[1, alg.EVEN] = psi[3, alg.EVEN] = 0.0
    if not charged:
        psi[2:] = 0.0
    return DiracFieldValue.from_array(psi, frame if frame is not None else alg.ONE)


def random_rotor(rng: np.random.Generator, bound: float = 0.5) -> sym.Rotor:
    upper = np.triu(rng.uniform(-bound, bound, size=(4, 4)), 1)
    return sym.Rotor.from_parameters(upper - upper.T)


# -- individual checks ---------------------------------------------------------

def check_anticommutation(table: np.ndarray) -> float:
    err = 0.0
    for mu in range(4):
        for nu in range(4):
            a, b = alg.basis(1 << mu), alg.basis(1 << nu)
            lhs = alg.gp(a, b, table) + alg.gp(b, a, table)
            rhs = 2.0 * alg.ETA[mu, nu] * alg.basis(0)
            err = max(err, float(np.max(np.abs(lhs - rhs))))
    return err


def check_blade_signs(table: np.ndarray) -> float:
    """Every product of two blades against the product of their Dirac matrices."""
    return _homomorphism_defect(rep_tables().dirac4, table)


def check_rep16_homomorphism(table: np.ndarray) -> float:
    return _homomorphism_defect(rep_tables().real16, table)


def check_rep16_orthogonal(table: np.ndarray) -> float:
    mats = rep_tables().real16
    eye = np.eye(16)
    orth = max(float(np.max(np.abs(m @ m.T - eye))) for m in mats)
    entries = float(np.max(np.abs(np.abs(mats) * (np.abs(mats) - 1.0))))
    return max(orth, entries)


def check_projection_identity(table: np.ndarray) -> float:
    """``w^T M w = Re <M (1 + g0)>`` for all sixteen blades."""
    rep = rep_tables()
    one_g0 = alg.basis(0) + alg.basis(1)
    err = 0.0
    for m in range(alg.N_BLADES):
        lhs = rep.w16 @ rep.real16[m] @ rep.w16
        rhs = alg.scalar_part(alg.gp(alg.basis(m), one_g0, table))
        err = max(err, abs(float(lhs - rhs)))
    return err


def check_pseudoscalar(table: np.ndarray) -> float:
    I = alg.I.coeffs
    return float(np.max(np.abs(alg.gp(I, I, table) + alg.basis(0))))


def even_field_column(f: float, F: np.ndarray, g: float) -> np.ndarray:
    """Dirac spinor of ``f + F + g I`` written out by components (lower ``F``)."""
    return np.array([
        f - 1j * F[1, 2],
        -1j * F[2, 3] + F[3, 1],
        1j * g - F[3, 0],
        -F[1, 0] - 1j * F[2, 0],
    ])


def check_spinor_bridge(rng: np.random.Generator) -> float:
    err = 0.0
    units = [("f", None)] + [("F", pair) for pair in alg.BIVECTOR_PAIRS] + [("g", None)]
    for kind, pair in units:
        f, g, F = 0.0, 0.0, np.zeros((4, 4))
        if kind == "f":
            f = 1.0
        elif kind == "g":
            g = 1.0
        else:
            F[pair], F[pair[::-1]] = 1.0, -1.0
        s = multivector_to_spinor(Multivector(alg.assemble(f=f, F=F, g=g)))
        err = max(err, float(np.max(np.abs(s - even_field_column(f, F, g)))))
    for _ in range(100):
        s = rng.normal(size=4) + 1j * rng.normal(size=4)
        back = multivector_to_spinor(spinor_to_multivector(s))
        err = max(err, float(np.max(np.abs(back - s))))
    return err


def _bilinear_triple(rng: np.random.Generator, n: int) -> float:
    err = 0.0
    for _ in range(n):
        v = random_field(rng, frame=random_rotor(rng).R)
        psi = v.psi_M * v.frame
        j_routes = np.array([bilinear_extract(alg.GAMMA[mu], psi, psi).real for mu in range(4)])
        err = max(err, float(np.max(np.abs(bl.current(v) - j_routes))))
        for construction, right in (("geometric", psi * alg.GEOMETRIC_I), ("nongeometric", 1j * psi)):
            routes = np.array([
                bilinear_extract(0.5 * alg.G0 * alg.GAMMA[i] * alg.GAMMA[k], psi, right).real
                for i, k in bl.SPIN_PLANES
            ])
            S = bl.bilinear_set(v, construction).S
            err = max(err, float(np.max(np.abs(S - routes))))
    return err


def check_closed_forms(rng: np.random.Generator) -> float:
    err = 0.0
    for _ in range(100):
        f, g = rng.normal(size=2)
        E, B = rng.normal(size=3), rng.normal(size=3)
        v = DiracFieldValue.uncharged(alg.from_fields(f, E, B, g))
        err = max(err, float(np.max(np.abs(bl.current(v) - bl.current_closed_form(f, E, B, g)))))
        err = max(err, abs(bl.spin_geometric(v)[0] - bl.spin012_closed_form(f, E, B, g)))
    return err


def check_lorentz_covariance(rng: np.random.Generator) -> float:
    err = 0.0
    for _ in range(20):
        S = random_rotor(rng)
        v = random_field(rng)
        lhs = bl.current_vector(sym.transform_field(S, v))
        rhs = S.apply(bl.current_vector(v))
        err = max(err, float(np.max(np.abs((lhs - rhs).coeffs))))
    return err


def check_boost(rng: np.random.Generator) -> float:
    a = 0.3
    image = sym.Rotor.boost(1, a).apply(alg.G0)
    expected = np.cosh(a) * alg.G0 + np.sinh(a) * alg.G1
    return float(np.max(np.abs((image - expected).coeffs)))


def check_complex_conjugation(rng: np.random.Generator) -> float:
    rep = rep_tables()
    err = 0.0
    for _ in range(100):
        x = ComplexMultivector.from_arrays(rng.normal(size=16), rng.normal(size=16))
        lhs = rep.image4(complex_conjugate_geometric(x))
        err = max(err, float(np.max(np.abs(lhs - np.conj(rep.image4(x))))))
    return err


def check_cpt_composition(rng: np.random.Generator) -> float:
    cpt = sym.compose(sym.SymmetryLabel.C, sym.SymmetryLabel.P, sym.SymmetryLabel.T)
    err = 0.0
    for m in range(alg.N_BLADES):
        for slot in range(4):
            if alg.EVEN[m] != (slot % 2 == 0):
                continue
            psi = np.zeros((4, 16))
            psi[slot, m] = 1.0
            v = DiracFieldValue.from_array(psi)
            direct = -alg.I * Multivector(psi[slot]) * alg.I
            err = max(err, float(np.max(np.abs(cpt(v).as_array()[slot] - direct.coeffs))))
            err = max(err, float(np.max(np.abs(cpt(v).as_array() - sym.apply_CPT(v).as_array()))))
    return err


def check_charge_conjugation_solution(rng: np.random.Generator) -> float:
    state = sym.apply_C_state(charged_rest(t=0.37))
    return residual_charged(state).total_max


CHECKS: list[tuple[str, Callable, float, bool]] = [
    # name, function, tolerance, uses the product table
    ("anticommutation", check_anticommutation, 0.0, True),
    ("blade-signs", check_blade_signs, 0.0, True),
    ("pseudoscalar-square", check_pseudoscalar, 0.0, True),
    ("rep16-homomorphism", check_rep16_homomorphism, 0.0, True),
    ("rep16-orthogonal", check_rep16_orthogonal, 0.0, True),
    ("projection-identity", check_projection_identity, 0.0, True),
    ("spinor-bridge", check_spinor_bridge, 1e-14, False),
    ("bilinear-triple-agreement", lambda rng: _bilinear_triple(rng, 100), 1e-12, False),
    ("bilinear-closed-forms", check_closed_forms, 1e-12, False),
    ("lorentz-covariance", check_lorentz_covariance, 1e-10, False),
    ("boost-gamma0", check_boost, 1e-12, False),
    ("complex-conjugation", check_complex_conjugation, 1e-13, False),
    ("cpt-composition", check_cpt_composition, 0.0, False),
    ("charge-conjugation-solution", check_charge_conjugation_solution, 1e-10, False),
]


def run_checks(*, seed: int = 0, fault: tuple[int, int] | None = None) -> list[CheckResult]:
    table = alg.build_product_tensor(fault)
    results = []
    for name, fn, tol, uses_table in CHECKS:
        rng = np.random.default_rng([seed, len(results)])
        error = fn(table) if uses_table else fn(rng)
        results.append(CheckResult(name, float(error), tol))
    return results


def report(results: list[CheckResult]) -> dict:
    return {
        "schema": REPORT_SCHEMA,
        "checks": [r.as_dict() for r in results],
        "passed": all(r.passed for r in results),
    }
