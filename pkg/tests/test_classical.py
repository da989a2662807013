from fractions import Fraction

import numpy as np
import pytest

from cptlab import linalg as la
from cptlab.algebra import (COMMUTATIVE, SUPER, AlgebraContext, AlgebraError,
                            FieldDecl, FieldSymbolSpace)
from cptlab.classical import (Poly, PolyField, apply_operator,
                              pullback_transform, pullback_with_matrices,
                              random_polyfield, verify_correspondence)
from cptlab.corpus import _model, DIRAC_EQUATION_SRC, MAXWELL_SRC
from cptlab.gammas import GAMMA, GAMMA5
from cptlab.lorentz import SIG13, element, pt_representative, sample_proper_ortho
from cptlab.reps import trivial, vector
from cptlab.scalars import QI


@pytest.fixture(scope="module")
def scalar_space():
    return FieldSymbolSpace(SIG13, (FieldDecl("phi", trivial(2), charged=True),))


def test_poly_basics():
    p = Poly.variable(2, 0) * Poly.variable(2, 0) + Poly.constant(2, QI(3))
    assert p.diff(0) == Poly.variable(2, 0).scaled(QI(2))
    assert p.evaluate([QI(2), QI(0)]) == QI(7)
    m = la.qi_matrix([[QI(0), QI(1)], [QI(1), QI(0)]])
    assert p.subst_linear(m) == Poly.variable(2, 1) * Poly.variable(2, 1) + \
        Poly.constant(2, QI(3))


def test_apply_operator_constant_and_slope(scalar_space):
    ctx = AlgebraContext(scalar_space, COMMUTATIVE)
    # constant field: Phi^lambda evaluates to lambda(c)
    const = PolyField(scalar_space, (Poly.constant(4, QI(2)), Poly.constant(4, QI(5))))
    out = apply_operator(ctx.sym("phi[0]"), const)
    assert out == Poly.constant(4, QI(2, 5))
    # linear field: a derivative extracts the slope
    lin = PolyField(scalar_space, (Poly.variable(4, 1).scaled(QI(3)),
                                   Poly.constant(4, 0)))
    out = apply_operator(ctx.sym("phi[0]", (1,)), lin)
    assert out == Poly.constant(4, QI(3))
    out2 = apply_operator(ctx.sym("phi[0]", (1, 1)), lin)
    assert out2 == Poly.constant(4, 0)


def test_odd_nonlinear_rejected():
    from cptlab.reps import weyl_left
    space = FieldSymbolSpace(SIG13, (FieldDecl("psi", weyl_left(), charged=True),))
    ctx = AlgebraContext(space, SUPER)
    f = ctx.sym("psi[0]") * ctx.sym("psi[1]")
    phi = random_polyfield(space, 1)
    with pytest.raises(AlgebraError):
        apply_operator(f, phi)


def test_pullback_examples(scalar_space):
    from cptlab.lorentz import identity_element
    phi = random_polyfield(scalar_space, 8, degree=2)
    ident = pullback_transform(scalar_space, identity_element(SIG13), phi)
    assert all(a == b for a, b in zip(ident.components, phi.components))
    # scalar field under total reflection: coordinates negated
    pt = pt_representative(SIG13)
    refl = pullback_transform(scalar_space, pt, phi)
    minus = la.mat_scale(QI(-1), la.identity(4))
    for a, b in zip(refl.components, phi.components):
        assert a == b.subst_linear(minus)


def test_pullback_vector_field_substitution_oracle():
    space = FieldSymbolSpace(SIG13, (FieldDecl("u", vector()),))
    g = sample_proper_ortho(4, SIG13)
    phi = random_polyfield(space, 9, degree=2)
    out = pullback_transform(space, g, phi)
    rng = np.random.default_rng(0)
    ginv = np.linalg.inv(g.matrix)
    for _ in range(10):
        x = rng.normal(size=4)
        lhs = np.array([complex(_c(p.evaluate(list(x)))) for p in out.components])
        rhs = g.matrix @ np.array(
            [complex(_c(p.evaluate(list(ginv @ x)))) for p in phi.components])
        assert np.max(np.abs(lhs - rhs)) < 1e-8


def _c(x):
    return x.to_complex() if isinstance(x, QI) else x


def test_correspondence_identity_element(scalar_space):
    from cptlab.lorentz import identity_element
    ctx = AlgebraContext(scalar_space, COMMUTATIVE)
    F = ctx.sym("phi[0]", (0,)) * ctx.sym("conj(phi)[0]") - ctx.one()
    phi = random_polyfield(scalar_space, 2, degree=3)
    rep = verify_correspondence(scalar_space, identity_element(SIG13), F, phi)
    assert rep.exact and rep.holds


def test_correspondence_exact_for_corpus_theories():
    for src, names in ((MAXWELL_SRC, ["maxwell"]),):
        model = _model(src)
        for name in names:
            t = model.theories[name]
            pt = pt_representative(SIG13)
            for seed in range(6):
                phi = random_polyfield(model.space, seed, degree=3)
                for F in t.generators:
                    rep = verify_correspondence(model.space, pt, F, phi)
                    assert rep.exact and rep.holds


def test_correspondence_float_samples(scalar_space):
    ctx = AlgebraContext(scalar_space, COMMUTATIVE)
    F = ctx.sym("phi[0]", (2,)) * ctx.sym("conj(phi)[0]", (2,)) + \
        ctx.sym("phi[0]") * ctx.sym("conj(phi)[0]")
    for seed in range(20):
        g = sample_proper_ortho(seed + 100, SIG13)
        phi = random_polyfield(scalar_space, seed, degree=3)
        rep = verify_correspondence(scalar_space, g, F, phi, tol=1e-8)
        assert rep.holds, rep.detail


def test_maxwell_solution_spot_check():
    model = _model(MAXWELL_SRC)
    space = model.space
    t = model.theories["maxwell"]
    phi = random_polyfield(space, 33, degree=2)
    comps = list(phi.components)
    pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    pidx = {p: k for k, p in enumerate(pairs)}
    for a in range(4):
        p = Poly(4, {})
        for b in range(4):
            if b == a:
                continue
            comp, s = (pidx[(a, b)], QI(1)) if a < b else (pidx[(b, a)], QI(-1))
            p = p + comps[comp].diff(b).scaled(s)
        comps[6 + a] = p
    sol = PolyField(space, tuple(comps))
    assert all(not apply_operator(g, sol).coeffs for g in t.generators)
    moved = pullback_transform(space, pt_representative(SIG13).inverse(), sol)
    assert all(not apply_operator(g, moved).coeffs for g in t.generators)


def _complex_components(phi: PolyField):
    out = []
    for a in range(4):
        out.append(phi.components[2 * a] +
                   phi.components[2 * a + 1].scaled(QI(0, 1)))
    return out


def test_dirac_gamma5_reflection_is_a_symmetry():
    """The operator identity behind the gamma5 x total-reflection map: the
    Dirac operator of the transformed field is gamma5 times the reflected
    Dirac operator of the original, for any mass and any polynomial field."""
    model = _model(DIRAC_EQUATION_SRC)
    space = model.space
    t = model.theories["dirac"]
    phi = random_polyfield(space, 12, degree=3)
    minus = la.mat_scale(QI(-1), la.identity(4))
    # real 8x8 form of the complex-linear gamma5
    g5real = [[QI(0)] * 8 for _ in range(8)]
    for a in range(4):
        for b in range(4):
            z = GAMMA5[a][b]
            g5real[2 * a][2 * b] = QI(z.re)
            g5real[2 * a][2 * b + 1] = QI(-z.im)
            g5real[2 * a + 1][2 * b] = QI(z.im)
            g5real[2 * a + 1][2 * b + 1] = QI(z.re)
    g5real = tuple(tuple(r) for r in g5real)
    moved = pullback_with_matrices(space, g5real, minus, phi)
    lhs = [apply_operator(g, moved) for g in t.generators]
    base = [apply_operator(g, phi).subst_linear(minus) for g in t.generators]
    for a in range(4):
        want = Poly(4, {})
        for b in range(4):
            z = GAMMA5[a][b]
            if z:
                want = want + base[b].scaled(z)
        assert lhs[a] == want


def test_massless_dirac_polynomial_solutions_map_to_solutions():
    # psi(x) = (x0 + x1)^k c with (gamma0 + gamma1) c = 0 solves the massless
    # equation; the gamma5 reflection maps solutions to solutions
    model = _model(DIRAC_EQUATION_SRC)
    space = model.space
    ctx = AlgebraContext(space, SUPER)
    gens = []
    for a in range(4):
        g = ctx.zero()
        for mu in range(4):
            for b in range(4):
                c = GAMMA[mu][a][b]
                if c:
                    g = g + ctx.sym("psi[%d]" % b, (mu,)).scaled(QI(0, -1) * c)
        gens.append(g)
    # kernel vector of gamma0 + gamma1 in the chiral basis
    m = la.mat_add(GAMMA[0], GAMMA[1])
    mn = la.to_numpy(m)
    _, _, vh = np.linalg.svd(mn)
    c = vh[-1].conj()
    assert np.max(np.abs(mn @ c)) < 1e-9
    base = Poly(4, {(1, 0, 0, 0): QI(1), (0, 1, 0, 0): QI(1)})
    sq = base * base
    comps = []
    for a in range(4):
        za = complex(c[a])
        comps.append(sq.scaled(za.real) + Poly(4, {}))
        comps[-1] = sq.scaled(za.real)
        comps.append(sq.scaled(za.imag))
    phi = PolyField(space, tuple(comps))
    residuals = [apply_operator(g, phi) for g in gens]
    assert all(p.approx_eq(Poly(4, {}), 1e-9) for p in residuals)
    # transform and recheck
    minus = la.mat_scale(QI(-1), la.identity(4))
    g5real = [[0.0] * 8 for _ in range(8)]
    for a in range(4):
        for b in range(4):
            z = complex(GAMMA5[a][b].to_complex())
            g5real[2 * a][2 * b] = z.real
            g5real[2 * a][2 * b + 1] = -z.imag
            g5real[2 * a + 1][2 * b] = z.imag
            g5real[2 * a + 1][2 * b + 1] = z.real
    moved = pullback_with_matrices(space, np.array(g5real), la.to_numpy(minus), phi)
    residuals = [apply_operator(g, moved) for g in gens]
    assert all(p.approx_eq(Poly(4, {}), 1e-9) for p in residuals)
