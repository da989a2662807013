import random

import numpy as np
import pytest

from cptlab import linalg as la
from cptlab.actions import (BOTH, CONJUGATING, NEITHER, PRESERVING,
                            action_from_matrices, classical_action,
                            classify_charge, classify_transform,
                            holomorphic_classical_action,
                            holomorphic_structure_action, infinitesimal_action,
                            quantum_action)
from cptlab.algebra import (COMMUTATIVE, SUPER, AlgebraContext, AlgebraError,
                            FieldDecl, FieldSymbolSpace, conjugation_C,
                            hash_involution, star_involution, strong_reflection,
                            w_matrix_of)
from cptlab.lorentz import (COVER_ANTI_A, COVER_ORTHO, SIG13, GroupError,
                            Signature, element, lie_basis, lie_matrix_float,
                            pt_representative, sample_cover,
                            sample_proper_ortho, total_reflection_lift)
from cptlab.reps import dirac, trivial, vector, weyl_left
from cptlab.scalars import QI

from test_algebra import random_element


@pytest.fixture(scope="module")
def scalar_space():
    return FieldSymbolSpace(SIG13, (FieldDecl("phi", trivial(2), charged=True),))


@pytest.fixture(scope="module")
def tensor_space():
    return FieldSymbolSpace(SIG13, (FieldDecl("u", vector()),))


@pytest.fixture(scope="module")
def spinor_space():
    return FieldSymbolSpace(SIG13, (FieldDecl("psi", weyl_left(), charged=True),))


def test_complex_scalar_table(scalar_space):
    ctx = AlgebraContext(scalar_space, COMMUTATIVE)
    F = ctx.sym("phi[0]").scaled(QI(0, 1))
    pt = pt_representative(SIG13)
    hs = hash_involution(scalar_space)
    assert classical_action(scalar_space, pt).apply(F) == \
        ctx.sym("phi[0]").scaled(QI(0, 1))
    assert quantum_action(scalar_space, pt).apply(F) == \
        ctx.sym("conj(phi)[0]").scaled(QI(0, -1))
    assert conjugation_C(hs, classical_action(scalar_space, pt).apply(F)) == \
        ctx.sym("conj(phi)[0]").scaled(QI(0, 1))
    assert conjugation_C(hs, quantum_action(scalar_space, pt).apply(F)) == \
        ctx.sym("phi[0]").scaled(QI(0, -1))


def test_identity_action(tensor_space):
    from cptlab.lorentz import identity_element
    ctx = AlgebraContext(tensor_space, COMMUTATIVE)
    rng = random.Random(0)
    F = random_element(ctx, rng)
    g = identity_element(SIG13)
    assert classical_action(tensor_space, g).apply(F) == F


def test_derivative_slot_rotation(tensor_space):
    # rotation by pi/2 in the (1,2) plane sends d1 to a d2 symbol
    ctx = AlgebraContext(tensor_space, COMMUTATIVE)
    m = np.eye(4)
    m[1, 1] = m[2, 2] = 0.0
    m[2, 1] = 1.0
    m[1, 2] = -1.0
    g = element(m, SIG13)
    F = ctx.sym("u[0]", (1,))
    img = classical_action(tensor_space, g).apply(F)
    want_terms = {}
    for mono, c in ctx.sym("u[0]", (2,)).terms.items():
        want_terms[mono] = complex(c.to_complex())
    assert img.approx_eq(ctx.element(want_terms), 1e-9)


def test_quantum_equals_classical_orthochronous(scalar_space):
    rng = random.Random(2)
    ctx = AlgebraContext(scalar_space, COMMUTATIVE)
    for seed in range(50):
        g = sample_proper_ortho(seed, SIG13)
        F = random_element(ctx, rng, max_factors=2, n_terms=2)
        a = classical_action(scalar_space, g).apply(F)
        b = quantum_action(scalar_space, g).apply(F)
        assert a.approx_eq(b, 1e-9)


def test_quantum_is_cstar_after_classical(scalar_space):
    rng = random.Random(3)
    ctx = AlgebraContext(scalar_space, COMMUTATIVE)
    pt = pt_representative(SIG13)
    star = star_involution(scalar_space)
    for _ in range(25):
        F = random_element(ctx, rng, max_factors=2, n_terms=2)
        assert quantum_action(scalar_space, pt).apply(F) == \
            conjugation_C(star, classical_action(scalar_space, pt).apply(F))


def test_actions_are_representations(spinor_space):
    rng = np.random.default_rng(6)
    ctx = AlgebraContext(spinor_space, SUPER)
    pr = random.Random(8)
    for _ in range(20):
        c1 = sample_cover(int(rng.integers(1 << 30)), COVER_ORTHO)
        c2 = sample_cover(int(rng.integers(1 << 30)), COVER_ORTHO)
        F = random_element(ctx, pr, max_factors=2, n_terms=2)
        lhs = classical_action(spinor_space, c1).apply(
            classical_action(spinor_space, c2).apply(F))
        rhs = classical_action(spinor_space, c1.compose(c2)).apply(F)
        assert lhs.approx_eq(rhs, 1e-8)
    # two time-reversing quantum actions compose to a linear map
    tr = total_reflection_lift()
    for _ in range(10):
        F = random_element(ctx, pr, max_factors=2, n_terms=2)
        twice = quantum_action(spinor_space, tr).apply(
            quantum_action(spinor_space, tr).apply(F))
        comp = tr.compose(tr)      # = tau, orthochronous
        direct = quantum_action(spinor_space, comp).apply(F)
        assert twice == direct


def test_classical_commutes_with_strong_reflection(spinor_space):
    rng = random.Random(12)
    ctx = AlgebraContext(spinor_space, SUPER)
    tr = total_reflection_lift()
    for _ in range(20):
        F = random_element(ctx, rng, max_factors=3, n_terms=2)
        a = strong_reflection(classical_action(spinor_space, tr).apply(F))
        b = classical_action(spinor_space, tr).apply(strong_reflection(F))
        assert a == b


def test_improper_rejected(tensor_space):
    m = np.diag([1.0, -1.0, 1.0, 1.0])
    g = element(m, SIG13)
    with pytest.raises(GroupError):
        classical_action(tensor_space, g)


def test_spinor_needs_cover(spinor_space):
    g = sample_proper_ortho(1, SIG13)
    with pytest.raises(GroupError):
        classical_action(spinor_space, g)


def test_anti_a_sheet_needs_holomorphic(spinor_space):
    c = sample_cover(1, COVER_ANTI_A)
    with pytest.raises(GroupError):
        classical_action(spinor_space, c)
    holomorphic_classical_action(spinor_space, c)
    holomorphic_structure_action(spinor_space, c)


# -- infinitesimal action --------------------------------------------------------

def test_derivation_kills_units(tensor_space):
    ctx = AlgebraContext(tensor_space, COMMUTATIVE)
    x = lie_basis(SIG13)[0]
    assert infinitesimal_action(tensor_space, x, ctx.one()).is_zero_element


def test_derivation_leibniz(tensor_space):
    ctx = AlgebraContext(tensor_space, COMMUTATIVE)
    x = lie_basis(SIG13)[2]
    a = ctx.sym("u[0]")
    b = ctx.sym("u[2]", (1,))
    lhs = infinitesimal_action(tensor_space, x, a * b)
    rhs = infinitesimal_action(tensor_space, x, a) * b + \
        a * infinitesimal_action(tensor_space, x, b)
    assert lhs == rhs


def test_derivation_finite_difference(tensor_space):
    rng = random.Random(4)
    ctx = AlgebraContext(tensor_space, COMMUTATIVE)
    eps = 1e-6
    from cptlab.lorentz import expm
    for x in lie_basis(SIG13):
        F = random_element(ctx, rng, max_factors=2, n_terms=2)
        g = element(expm(eps * lie_matrix_float(x)), SIG13)
        img = classical_action(tensor_space, g).apply(F)
        diff = img - F
        want = infinitesimal_action(tensor_space, x, F)
        scaled = {m: complex(c.to_complex() if isinstance(c, QI) else c) / eps
                  for m, c in diff.terms.items()}
        approx = ctx.element(scaled)
        assert approx.approx_eq(want, 1e-4)


# -- charge classification --------------------------------------------------------

def test_classify_examples(scalar_space):
    pt = pt_representative(SIG13)
    star = star_involution(scalar_space)
    assert classify_transform(
        scalar_space, classical_action(scalar_space, pt).apply) == PRESERVING
    assert classify_transform(
        scalar_space, lambda x: conjugation_C(star, x)) == CONJUGATING
    neutral = FieldSymbolSpace(SIG13, (FieldDecl("u", vector()),))
    assert classify_transform(neutral, lambda x: x) == BOTH
    # a neither map: phi -> phi + conj(phi) direction mix
    mix = la.qi_matrix([[QI(1), QI(1)], [QI(0), QI(1)]])

    def mixer(x):
        from cptlab.algebra import map_symbols, FieldSymbol
        inner = AlgebraContext(x.space, x.mode)
        def image(entry, derivs):
            terms = {}
            for s, c in enumerate(mix[entry]):
                if c:
                    terms[(FieldSymbol(s, derivs),)] = c
            return inner.element(terms)
        return map_symbols(x, image)
    assert classify_transform(scalar_space, mixer) == NEITHER


def test_classify_rejects_singular(scalar_space):
    sing = la.qi_matrix([[QI(1), QI(0)], [QI(0), QI(0)]])
    with pytest.raises(AlgebraError):
        classify_charge(scalar_space, sing)


def test_pt_element_charge_preserving_when_lpo_is(scalar_space):
    # the section-5 claim at block-structure level: classical rho' at the PT
    # element stays charge-preserving
    pt = pt_representative(SIG13)
    m = w_matrix_of(scalar_space,
                    classical_action(scalar_space, pt).apply)
    assert classify_charge(scalar_space, m) == PRESERVING
