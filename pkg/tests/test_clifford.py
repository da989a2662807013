import numpy as np
import pytest

from cptlab import linalg as la
from cptlab.clifford import (CliffordElement, clifford_mul, pin_element,
                             pin_project, reflection_matrix, unit_vector,
                             verify_axioms)
from cptlab.lorentz import Galilean, GroupError, Signature
from cptlab.scalars import QI


def basis(sig):
    return [CliffordElement(sig, {(k,): QI(1)}) for k in range(sig.dim)]


@pytest.mark.parametrize("p,q", [(1, 2), (1, 3)])
def test_defining_relations_all_basis_pairs(p, q):
    sig = Signature(p, q)
    e = basis(sig)
    for i in range(sig.dim):
        for j in range(sig.dim):
            anti = e[i] * e[j] + e[j] * e[i]
            want = CliffordElement.scalar(sig, 2 * sig.eta_diag[i] if i == j else 0)
            assert anti.approx_eq(want, 0.0)


def test_basic_squares():
    sig = Signature(1, 3)
    e = basis(sig)
    assert (e[0] * e[0]).scalar_part() == QI(1)
    sq = (e[0] * e[1]) * (e[0] * e[1])
    assert sq.scalar_part() == QI(-sig.eta_diag[0] * sig.eta_diag[1])
    assert (e[1] * e[2] + e[2] * e[1]).norm_inf() == 0.0


def test_mul_associative_random():
    sig = Signature(1, 3)
    rng = np.random.default_rng(0)
    def rand_el():
        el = CliffordElement(sig, {})
        for _ in range(3):
            blade = tuple(sorted(set(rng.integers(0, 4, size=rng.integers(0, 4)))))
            el = el + CliffordElement(sig, {blade: complex(rng.normal(), rng.normal())})
        return el
    for _ in range(50):
        a, b, c = rand_el(), rand_el(), rand_el()
        assert ((a * b) * c).approx_eq(a * (b * c), 1e-9)


def test_mixed_signature_rejected():
    a = CliffordElement.scalar(Signature(1, 2), 1)
    b = CliffordElement.scalar(Signature(1, 3), 1)
    with pytest.raises(GroupError):
        clifford_mul(a, b)


def test_single_reflection():
    sig = Signature(1, 3)
    v = [0.0, 1.0, 0.0, 0.0]     # spacelike unit
    m = la.to_numpy(reflection_matrix(sig, v)).real
    assert abs(np.linalg.det(m) + 1.0) < 1e-12
    assert np.max(np.abs(m - np.diag([-1.0, 1.0, -1.0, -1.0]))) < 1e-12


def test_empty_product_is_identity():
    sig = Signature(1, 3)
    assert la.mat_equal(pin_project(sig, []), la.identity(4))


def test_total_reflection_product():
    sig = Signature(1, 3)
    vs = [[1.0 if k == j else 0.0 for k in range(4)] for j in range(4)]
    m = la.to_numpy(pin_project(sig, vs)).real
    assert np.max(np.abs(m + np.eye(4))) < 1e-12


def test_null_vector_rejected():
    sig = Signature(1, 1)
    with pytest.raises(GroupError):
        reflection_matrix(sig, [1.0, 1.0])
    with pytest.raises(GroupError):
        unit_vector(sig, [1.0, 1.0])


@pytest.mark.parametrize("p,q", [(1, 2), (1, 3)])
def test_pin_project_matches_composed_reflections(p, q):
    sig = Signature(p, q)
    rng = np.random.default_rng(9)
    for _ in range(25):
        fs = [unit_vector(sig, rng.normal(size=sig.dim) + 1j * rng.normal(size=sig.dim))
              for _ in range(int(rng.integers(1, 5)))]
        lhs = la.to_numpy(pin_project(sig, fs))
        rhs = np.eye(sig.dim, dtype=complex)
        for v in fs:
            rhs = rhs @ la.to_numpy(reflection_matrix(sig, v))
        assert np.max(np.abs(lhs - rhs)) < 1e-9
        # even products preserve the complex metric with det +1
        if len(fs) % 2 == 0:
            assert abs(np.linalg.det(lhs) - 1.0) < 1e-8


def test_pin_homomorphism_against_element_product():
    # projecting the Clifford product of factors equals the matrix product
    sig = Signature(1, 3)
    rng = np.random.default_rng(13)
    for _ in range(10):
        fs = [unit_vector(sig, rng.normal(size=4) + 1j * rng.normal(size=4))
              for _ in range(2)]
        gs = [unit_vector(sig, rng.normal(size=4) + 1j * rng.normal(size=4))
              for _ in range(2)]
        lhs = la.to_numpy(pin_project(sig, fs + gs))
        rhs = la.to_numpy(pin_project(sig, fs)) @ la.to_numpy(pin_project(sig, gs))
        assert np.max(np.abs(lhs - rhs)) < 1e-9
        el = pin_element(sig, fs + gs)
        assert el.approx_eq(pin_element(sig, fs) * pin_element(sig, gs), 1e-9)


def test_spinor_norm_component_invariant():
    sig = Signature(1, 3)
    e = basis(sig)
    boost = CliffordElement.scalar(sig, np.cosh(0.7)) + \
        (e[0] * e[1]).scaled(np.sinh(0.7))
    assert abs(complex(boost.spinor_norm()) - 1.0) < 1e-12
    i_scalar = CliffordElement.scalar(sig, 1j)
    assert abs(complex((i_scalar * boost).spinor_norm()) + 1.0) < 1e-12


@pytest.mark.parametrize("p,q", [(1, 2), (1, 3), (2, 2)])
def test_axioms_pass(p, q):
    rep = verify_axioms(Signature(p, q), samples=40, seed=3)
    assert rep.passed, rep.to_text()


def test_axioms_2d_failure():
    rep = verify_axioms(Signature(1, 1), samples=40, seed=3)
    by_name = {r.name.split()[0]: r for r in rep.results}
    assert by_name["PT-1"].passed
    assert by_name["PT-2"].passed is False
    assert by_name["PT-3"].passed is False
    assert "orthochronous" in by_name["PT-3"].detail
    assert not rep.passed


def test_axioms_galilean_failure():
    rep = verify_axioms(Galilean(3), samples=30, seed=3)
    by_name = {r.name.split()[0]: r for r in rep.results}
    assert by_name["PT-1"].passed
    assert by_name["PT-2"].passed is False
    assert by_name["PT-3"].passed is False
    assert by_name["PT-4"].passed is None
    assert not rep.passed


def test_dimension_guard():
    with pytest.raises(GroupError):
        verify_axioms(Signature(3, 4), samples=4, seed=0)
