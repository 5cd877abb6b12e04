import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import bivector, coeff, mv_arrays
from stadirac import algebra as alg
from stadirac.algebra import G0, G1, G2, G3, GAMMA, I, ONE, Multivector, grade_project, wedge
from stadirac.errors import DomainError


def _oracle_images():
    """Dirac-basis images of all 16 blades, built without the library."""
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


ORACLE = _oracle_images()


def _decompose(matrix):
    """Blade coefficients of a 4x4 matrix via trace orthogonality."""
    return np.array([np.trace(np.linalg.inv(ORACLE[m]) @ matrix) / 4 for m in range(16)])


def test_all_blade_products_match_dirac_matrices_exactly():
    for a in range(16):
        for b in range(16):
            expected = _decompose(ORACLE[a] @ ORACLE[b])
            assert np.allclose(expected.imag, 0.0)
            expected = np.rint(expected.real).astype(int)
            got = alg.PRODUCT[a, b].astype(int)
            assert np.array_equal(got, expected), (a, b)


def test_anticommutation_is_exact():
    for mu in range(4):
        for nu in range(4):
            lhs = GAMMA[mu] * GAMMA[nu] + GAMMA[nu] * GAMMA[mu]
            assert lhs == Multivector.scalar(2.0 * alg.ETA[mu, nu])


def test_metric_squares():
    assert G0 * G0 == ONE
    for g in (G1, G2, G3):
        assert g * g == -ONE


def test_pseudoscalar_squares_to_minus_one():
    assert I * I == -ONE
    assert np.allclose(_decompose(ORACLE[15] @ ORACLE[15]).real, -alg.basis(0))


def test_pseudoscalar_lower_index_form():
    lower = [g * float(alg.METRIC[mu]) for mu, g in enumerate(GAMMA)]
    assert lower[0] * lower[1] * lower[2] * lower[3] == I
    assert G0 * G1 * G2 * G3 == -I


def test_geometric_i_squares_to_minus_one():
    gi = G2 * G1
    assert gi * gi == -ONE


def test_reverse_examples():
    assert (G2 * G1).reverse() == -(G2 * G1)
    assert (ONE + G0).reverse() == ONE + G0
    assert I.reverse() == I


def test_reverse_is_anti_automorphism_on_basis():
    for a in range(16):
        for b in range(16):
            A, B = Multivector.blade(a), Multivector.blade(b)
            assert ~(A * B) == (~B) * (~A)


@given(mv_arrays, mv_arrays, mv_arrays)
def test_associativity(a, b, c):
    a, b, c = Multivector(a), Multivector(b), Multivector(c)
    lhs, rhs = ((a * b) * c).coeffs, (a * (b * c)).coeffs
    scale = max(1.0, float(np.max(np.abs(lhs))))
    assert np.max(np.abs(lhs - rhs)) <= 1e-13 * scale


@given(mv_arrays)
def test_pseudoscalar_commutes_with_even_and_anticommutes_with_odd(x):
    x = Multivector(x)
    assert (I * x.even()).allclose(x.even() * I)
    assert (I * x.odd()).allclose(-(x.odd() * I))


@given(mv_arrays, mv_arrays)
def test_scalar_part_cyclic(a, b):
    a, b = Multivector(a), Multivector(b)
    assert abs((a * b).scalar_part() - (b * a).scalar_part()) <= 1e-13 * max(1.0, abs((a * b).scalar_part()))


@given(mv_arrays, mv_arrays, mv_arrays)
def test_scalar_part_cyclic_three(a, b, c):
    a, b, c = Multivector(a), Multivector(b), Multivector(c)
    x, y = (a * b * c).scalar_part(), (c * a * b).scalar_part()
    assert abs(x - y) <= 1e-12 * max(1.0, abs(x))


@given(mv_arrays)
def test_grade_projections_sum_to_input(x):
    m = Multivector(x)
    total = sum((grade_project(m, k) for k in range(5)), Multivector())
    assert total == m


def test_grade_project_examples():
    f, g = 1.5, -0.25
    assert grade_project(ONE * f + I * g, 0) == ONE * f
    assert grade_project(G0 + G2 * G1, 2) == G2 * G1


@pytest.mark.parametrize("k", [-1, 5])
def test_grade_out_of_range(k):
    with pytest.raises(DomainError):
        grade_project(ONE, k)


def test_wedge_examples():
    assert wedge(G1, G2) == G1 * G2
    assert wedge(G1, G1) == Multivector()
    got = wedge(G0 + G1, G0)
    assert got == Multivector.blade(alg.bivector_mask(0, 1), -1.0)


@given(mv_arrays, mv_arrays)
def test_wedge_of_vectors_is_antisymmetrised_product(a, b):
    a, b = Multivector(a).grade(1), Multivector(b).grade(1)
    assert wedge(a, b).allclose((a * b - b * a) * 0.5)


@given(mv_arrays)
def test_split_assemble_round_trip(x):
    parts = alg.split_components(x)
    assert np.array_equal(alg.assemble(**parts), x)


def test_component_placement():
    x = alg.assemble(p=np.array([0.0, 0.0, 0.0, 1.0]))
    assert Multivector(x) == I * G3
    x = alg.assemble(g=1.0)
    assert Multivector(x) == I


@given(st.tuples(coeff, coeff, coeff), st.tuples(coeff, coeff, coeff), coeff, coeff)
def test_field_accessors_round_trip(E, B, f, g):
    x = alg.from_fields(f, E, B, g)
    assert np.allclose(alg.electric_field(x), E, atol=1e-15)
    assert np.allclose(alg.magnetic_field(x), B, atol=1e-15)
    parts = alg.split_components(x)
    assert parts["f"] == f and parts["g"] == g


def test_electric_field_is_F_upper_i0():
    F = np.zeros((4, 4))
    F[1, 0], F[0, 1] = -1.0, 1.0  # F_{10} = -1 -> F^{10} = +1
    assert np.allclose(alg.electric_field(alg.assemble(F=F)), [1.0, 0.0, 0.0])


def test_dual_of_electric_field_is_magnetic():
    x = alg.from_fields(E=(1.0, 0.0, 0.0))
    dual_up = alg.dual_tensor(alg.split_components(x)["F"])
    y = alg.assemble(F=alg.raise_tensor(dual_up))
    assert np.allclose(alg.electric_field(y), 0.0)
    assert np.count_nonzero(alg.magnetic_field(y)) == 1


@given(st.lists(coeff, min_size=6, max_size=6))
def test_double_dual_is_minus_identity(values):
    F = alg.split_components(bivector(values))["F"]
    twice = alg.dual_tensor(alg.raise_tensor(alg.dual_tensor(F)))
    assert np.allclose(alg.raise_tensor(twice), -F, atol=1e-14)


def test_dual_of_zero():
    assert np.array_equal(alg.dual_tensor(np.zeros((4, 4))), np.zeros((4, 4)))


def test_levi_civita_convention():
    assert alg.LEVI_CIVITA[0, 1, 2, 3] == 1.0
    assert alg.LEVI_CIVITA[1, 0, 2, 3] == -1.0
    assert np.count_nonzero(alg.LEVI_CIVITA) == 24


def test_exp_examples():
    assert np.array_equal(alg.exp_bivector(np.zeros(16)), alg.basis(0))
    rot = alg.exp_bivector((math.pi / 2) * (G1 * G2).coeffs)
    assert Multivector(rot).allclose(G1 * G2, atol=1e-14)
    a = 0.3
    boost = alg.exp_bivector(a * (G1 * G0).coeffs)
    assert Multivector(boost).allclose(ONE * math.cosh(a) + (G1 * G0) * math.sinh(a), atol=1e-15)


@given(st.floats(-6.0, 6.0))
def test_exp_matches_simple_blade_closed_forms(theta):
    rot = Multivector(alg.exp_bivector(0.5 * theta * (G1 * G2).coeffs))
    assert rot.allclose(ONE * math.cos(theta / 2) + (G1 * G2) * math.sin(theta / 2), atol=1e-13)
    boost = Multivector(alg.exp_bivector(0.5 * theta * (G1 * G0).coeffs))
    expected = ONE * math.cosh(theta / 2) + (G1 * G0) * math.sinh(theta / 2)
    assert boost.allclose(expected, atol=1e-13 * math.cosh(theta / 2))


@settings(max_examples=200)
@given(st.lists(st.floats(-1.0, 1.0), min_size=6, max_size=6))
def test_exp_is_a_rotor(values):
    B = bivector(values)
    R = Multivector(alg.exp_bivector(B))
    assert (R * ~R).allclose(ONE, atol=1e-12)
    assert (R * Multivector(alg.exp_bivector(-B))).allclose(ONE, atol=1e-12)


def test_exp_rejects_non_bivector():
    with pytest.raises(DomainError):
        alg.exp_bivector(alg.basis(1))


def test_multivector_is_immutable():
    m = Multivector(alg.basis(3))
    with pytest.raises(ValueError):
        m.coeffs[0] = 1.0


def test_multivector_rejects_wrong_length():
    with pytest.raises(DomainError):
        Multivector(np.zeros(5))


def test_fault_injection_changes_one_sign():
    faulty = alg.build_product_tensor((1, 2))
    diff = np.argwhere(faulty != alg.PRODUCT)
    assert {tuple(d[:2]) for d in diff} == {(1, 2)}
