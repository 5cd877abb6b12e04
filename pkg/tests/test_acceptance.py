"""End-to-end acceptance criteria, one test per criterion.

Each test records a ``PASS``/``FAIL`` line (shown in the terminal summary)
before asserting.  Run directly with ``python3 tests/test_acceptance.py``.
"""

import math
import time

import numpy as np
import pytest

from conftest import record_acceptance
from stadirac import algebra as alg
from stadirac import bilinears as bl
from stadirac import symmetry as sym
from stadirac.algebra import G0, G1, G2, GAMMA, I, ONE, Multivector
from stadirac.complexified import ComplexMultivector, DiracFieldValue, complex_conjugate_geometric
from stadirac.dynamics import (
    FieldState,
    charged_rest,
    em_plane_wave,
    evolve,
    fit_frequency,
    kg_residual,
    residual_charged,
    residual_massless,
    rest_oscillator,
    with_time_derivatives,
)
from stadirac.representation import bilinear_routes, multivector_to_spinor, rep_tables, spinor_to_multivector
from stadirac.verify import random_field, random_rotor


def report(n, title, checks):
    """``checks`` maps a label to ``(measured, bound)``; pass means measured <= bound."""
    ok = all(bool(np.isfinite(m) and m <= b) for m, b in checks.values())
    detail = "; ".join(f"{k}={m:.3g} (<= {b:.3g})" for k, (m, b) in checks.items())
    record_acceptance(f"{'PASS' if ok else 'FAIL'} criterion {n:2d} {title}: {detail}")
    assert ok, detail


def dirac_oracle():
    s1 = np.array([[0, 1], [1, 0]], dtype=complex)
    s2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
    s3 = np.array([[1, 0], [0, -1]], dtype=complex)
    z, e = np.zeros((2, 2)), np.eye(2)
    gam = [np.block([[e, z], [z, -e]])] + [np.block([[z, s], [-s, z]]) for s in (s1, s2, s3)]
    images = []
    for mask in range(16):
        m = np.eye(4, dtype=complex)
        for k in range(4):
            if mask >> k & 1:
                m = m @ gam[k]
        images.append(m)
    return np.array(images)


def test_criterion_01_algebra_axioms():
    start = time.perf_counter()
    images = dirac_oracle()
    anti = max(
        float(np.max(np.abs((GAMMA[a] * GAMMA[b] + GAMMA[b] * GAMMA[a]).coeffs - 2 * alg.ETA[a, b] * ONE.coeffs)))
        for a in range(4) for b in range(4)
    )
    inverses = [np.linalg.inv(m) for m in images]
    mismatches = 0
    for a in range(16):
        for b in range(16):
            prod = images[a] @ images[b]
            coeffs = np.array([np.trace(inv @ prod) / 4 for inv in inverses])
            expected = np.rint(coeffs.real).astype(int)
            mismatches += not np.array_equal(alg.PRODUCT[a, b].astype(int), expected)
    elapsed = time.perf_counter() - start
    report(1, "algebra axioms", {"anticommutation": (anti, 0.0), "sign mismatches": (mismatches, 0),
                                 "seconds": (elapsed, 1.0)})


def test_criterion_02_representation_faithfulness():
    start = time.perf_counter()
    rep = rep_tables()
    hom = sum(
        not np.array_equal(rep.real16[a] @ rep.real16[b], alg.blade_product(a, b)[0] * rep.real16[alg.blade_product(a, b)[1]])
        for a in range(16) for b in range(16)
    )
    orth = max(float(np.max(np.abs(m @ m.T - np.eye(16)))) for m in rep.real16)
    proj = max(
        abs(rep.w16 @ rep.real16[m] @ rep.w16 - alg.scalar_part(alg.gp(alg.basis(m), (ONE + G0).coeffs)))
        for m in range(16)
    )
    elapsed = time.perf_counter() - start
    report(2, "representation faithfulness", {"homomorphism failures": (hom, 0), "orthogonality": (orth, 0.0),
                                               "projection identity": (proj, 0.0), "seconds": (elapsed, 1.0)})


def _unit_F(mu, nu):
    F = np.zeros((4, 4))
    F[mu, nu], F[nu, mu] = 1.0, -1.0
    return Multivector(alg.assemble(F=F))


def test_criterion_03_spinor_bridge():
    columns = [
        (ONE, [1, 0, 0, 0]),
        (Multivector(alg.assemble(g=1.0)), [0, 0, 1j, 0]),
        (_unit_F(1, 2), [-1j, 0, 0, 0]),
        (_unit_F(2, 3), [0, -1j, 0, 0]),
        (_unit_F(3, 1), [0, 1, 0, 0]),
        (_unit_F(3, 0), [0, 0, -1, 0]),
        (_unit_F(1, 0), [0, 0, 0, -1]),
        (_unit_F(2, 0), [0, 0, 0, -1j]),
    ]
    column_err = max(float(np.max(np.abs(multivector_to_spinor(x) - np.array(c)))) for x, c in columns)
    rng = np.random.default_rng(3)
    trip = 0.0
    for _ in range(100):
        s = rng.normal(size=4) + 1j * rng.normal(size=4)
        trip = max(trip, float(np.max(np.abs(multivector_to_spinor(spinor_to_multivector(s)) - s))))
    report(3, "spinor bridge", {"unit columns": (column_err, 0.0), "round trip": (trip, 1e-14)})


def test_criterion_04_bilinear_triple_agreement():
    rng = np.random.default_rng(4)
    err = 0.0
    for _ in range(100):
        v = random_field(rng, frame=random_rotor(rng).R)
        psi = v.psi_M * v.frame
        j = bl.current(v)
        for mu in range(4):
            for route in bilinear_routes(GAMMA[mu], psi, psi).values():
                err = max(err, abs(j[mu] - route[0].real))
        for construction, right in (("geometric", psi * alg.GEOMETRIC_I), ("nongeometric", 1j * psi)):
            S = bl.bilinear_set(v, construction).S
            for k, (a, b) in enumerate(bl.SPIN_PLANES):
                for route in bilinear_routes(0.5 * G0 * GAMMA[a] * GAMMA[b], psi, right).values():
                    err = max(err, abs(S[k] - route[0].real))
    closed = 0.0
    for _ in range(100):
        f, g = rng.normal(size=2)
        E, B = rng.normal(size=3), rng.normal(size=3)
        v = DiracFieldValue.uncharged(Multivector(alg.from_fields(f, E, B, g)))
        psi = v.psi_M
        sandwich_j = np.array([bilinear_routes(GAMMA[mu], psi, psi)["dirac4"][0].real for mu in range(4)])
        sandwich_s = bilinear_routes(0.5 * G0 * G1 * G2, psi, psi * alg.GEOMETRIC_I)["dirac4"][0].real
        closed = max(closed, float(np.max(np.abs(bl.current_closed_form(f, E, B, g) - sandwich_j))))
        closed = max(closed, abs(bl.spin012_closed_form(f, E, B, g) - sandwich_s))
    report(4, "bilinear triple agreement", {"routes": (err, 1e-12), "closed forms": (closed, 1e-12)})


def test_criterion_05_lorentz_covariance():
    rng = np.random.default_rng(5)
    err = 0.0
    for _ in range(20):
        S, v = random_rotor(rng, bound=0.5), random_field(rng)
        lhs = bl.current_vector(sym.transform_field(S, v))
        err = max(err, float(np.max(np.abs((lhs - S.apply(bl.current_vector(v))).coeffs))))
    a = 0.3
    image = sym.Rotor.boost(1, a).apply(G0)
    upper = np.array([image.coeffs[alg.vector_mask(mu)] for mu in range(4)])
    boost = float(np.max(np.abs(upper - [math.cosh(a), math.sinh(a), 0.0, 0.0])))
    report(5, "Lorentz covariance", {"current covariance": (err, 1e-10), "boost of g0": (boost, 1e-12)})


def test_criterion_06_discrete_symmetries():
    rep = rep_tables()
    rng = np.random.default_rng(6)
    conj = 0.0
    for _ in range(100):
        x = ComplexMultivector.from_arrays(rng.normal(size=16), rng.normal(size=16))
        expected = np.conj(rep.image4(x))
        literal = ComplexMultivector(G2 * I * x.re * I * G2, -(G2 * I * x.im * I * G2))
        conj = max(conj, float(np.max(np.abs(rep.image4(complex_conjugate_geometric(x)) - expected))))
        conj = max(conj, float(np.max(np.abs(rep.image4(literal) - expected))))

    cpt = sym.compose(sym.SymmetryLabel.C, sym.SymmetryLabel.P, sym.SymmetryLabel.T)
    blade_err = 0.0
    for m in range(16):
        slot = 0 if alg.EVEN[m] else 1
        psi = np.zeros((4, 16))
        psi[slot, m] = 1.0
        direct = (-I * Multivector(psi[slot]) * I).coeffs
        blade_err = max(blade_err, float(np.max(np.abs(cpt(DiracFieldValue.from_array(psi)).as_array()[slot] - direct))))
    N = 16
    values = rng.integers(-3, 4, size=(N, 4, 16)).astype(float)
    values[:, 0, alg.ODD] = values[:, 2, alg.ODD] = values[:, 1, alg.EVEN] = values[:, 3, alg.EVEN] = 0.0
    image = sym.apply_CPT_state(FieldState(values, 0.1)).psi
    grid_err = 0.0
    for i in range(N):
        src = values[(-i) % N]
        for slot in range(4):
            direct = (-I * Multivector(src[slot]) * I).coeffs
            grid_err = max(grid_err, float(np.max(np.abs(image[i, slot] - direct))))

    state = charged_rest(t=0.37)
    conjugate = sym.apply_C_state(state)
    c_res = residual_charged(conjugate).total_max
    flipped = float(conjugate.charge == -state.charge)
    report(6, "discrete symmetries", {"complex conjugation": (conj, 1e-13), "CPT on blades": (blade_err, 0.0),
                                       "CPT on grid": (grid_err, 0.0), "C image residual": (c_res, 1e-10),
                                       "charge flipped": (1.0 - flipped, 0.0)})


def _oscillator_error(dt, steps):
    traj = evolve(rest_oscillator(8, omega0=1.0), dt, steps)
    f = np.array([s.psi[0, 0, 0] for s in traj])
    t = np.array([s.t for s in traj])
    return float(np.max(np.abs(f - np.cos(t))))


def test_criterion_07_rest_oscillator():
    coarse = _oscillator_error(0.01, 1000)
    fine = _oscillator_error(0.005, 2000)
    ratio = coarse / fine
    report(7, "rest-frame oscillator", {"max |f - cos t|": (coarse, 1e-6), "|ratio - 16|": (abs(ratio - 16), 3.0)})


def _em_trajectory(N=256, steps=64, cfl=0.4):
    dx = 2 * math.pi / N
    return evolve(em_plane_wave(N, dx), cfl * dx, steps)


def test_criterion_08_massless_sector():
    traj = _em_trajectory()
    residual = max(residual_massless(s).total_max for s in with_time_derivatives(traj))
    conservation = bl.current_conservation_residual(traj)
    odd = max(float(np.max(np.abs(s.psi[:, 1::2]))) for s in traj)
    report(8, "massless sector", {"residual": (residual, 1e-6), "current conservation": (conservation, 1e-6),
                                   "odd sector": (odd, 1e-12)})


def _charged_trajectory(dt=0.01, steps=2000):
    return evolve(charged_rest(8, omega0=1.0, charge=1.0, A0=0.25), dt, steps)


def test_criterion_09_charged():
    traj = _charged_trajectory()
    t = np.array([s.t for s in traj])
    omega = fit_frequency(t, np.array([s.psi[0, 0, 0] for s in traj]))
    agreement = 0.0
    for s in with_time_derivatives(traj):
        scale = max(1.0, float(np.max(np.abs(s.dt_psi))))
        agreement = max(agreement, residual_charged(s).agreement / scale)
    report(9, "charged oscillator", {"|omega - 1.25|": (abs(omega - 1.25), 1e-4),
                                      "form agreement": (agreement, 1e-12)})


def test_criterion_10_klein_gordon():
    ratios = {
        "oscillator": kg_residual(evolve(rest_oscillator(8), 0.01, 200)) /
        kg_residual(evolve(rest_oscillator(8), 0.005, 400)),
        "em wave": kg_residual(_em_trajectory(steps=32)) / kg_residual(_em_trajectory(steps=64, cfl=0.2)),
        "charged": kg_residual(_charged_trajectory(0.01, 200)) / kg_residual(_charged_trajectory(0.005, 400)),
    }
    report(10, "Klein-Gordon consistency", {f"|{k} ratio - 4|": (abs(r - 4.0), 1.0) for k, r in ratios.items()})


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
