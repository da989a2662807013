"""Finite-dimensional representations as matrix-functor combinator trees.

Primitives are trivial(n), vector and the two 4D Weyl spinors; nodes are
dual, tensor product, direct sum and the (anti)symmetric square.  Every node
is a matrix functor, so complexification is evaluation of the same functor at
complex arguments and no Lie-theoretic machinery is needed at instance level.

Weyl spinors keep V real: a spinor (x, y, z, w) is encoded through the
bracket map [v] = (x+iy, z+iw, x-iy, z-iw), and a cover pair (A, B) acts on
brackets by diag(A, B) (left) or diag(B, A) (right).  The grading operator is
the value at tau and is diagonal with entries +-1 in every combinator tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import linalg as la
from .lorentz import (SIG13, CoverElement, GroupError,
                      cover_project_complex, lie_basis)
from .scalars import QI


@dataclass(frozen=True)
class RepSpec:
    kind: str
    n: int = 0
    children: tuple["RepSpec", ...] = ()

    def __str__(self):
        if self.kind == "trivial":
            return "trivial(%d)" % self.n
        if self.kind in ("vector", "weyl_left", "weyl_right"):
            return self.kind
        if self.kind == "dual":
            return "dual(%s)" % self.children[0]
        if self.kind == "antisym2":
            return "antisym2(%s)" % self.children[0]
        if self.kind == "sym2":
            return "sym2(%s)" % self.children[0]
        op = " (x) " if self.kind == "tensor" else " (+) "
        return "(" + op.join(str(c) for c in self.children) + ")"


def trivial(n: int) -> RepSpec:
    return RepSpec("trivial", n=n)


def vector() -> RepSpec:
    return RepSpec("vector")


def weyl_left() -> RepSpec:
    return RepSpec("weyl_left")


def weyl_right() -> RepSpec:
    return RepSpec("weyl_right")


def dual(r: RepSpec) -> RepSpec:
    return RepSpec("dual", children=(r,))


def tensor(a: RepSpec, b: RepSpec) -> RepSpec:
    return RepSpec("tensor", children=(a, b))


def direct_sum(a: RepSpec, b: RepSpec) -> RepSpec:
    return RepSpec("sum", children=(a, b))


def antisym2(r: RepSpec) -> RepSpec:
    return RepSpec("antisym2", children=(r,))


def sym2(r: RepSpec) -> RepSpec:
    return RepSpec("sym2", children=(r,))


def dirac() -> RepSpec:
    return direct_sum(weyl_left(), weyl_right())


def has_spinor(rep: RepSpec) -> bool:
    if rep.kind in ("weyl_left", "weyl_right"):
        return True
    return any(has_spinor(c) for c in rep.children)


def is_complex_rep(rep: RepSpec) -> bool:
    """Whether the rep carries the built-in complex structure needed for the
    holomorphic extension (Weyl spinors, trivial reps, and their sums)."""
    if rep.kind in ("weyl_left", "weyl_right", "trivial"):
        return True
    if rep.kind == "sum":
        return all(is_complex_rep(c) for c in rep.children)
    return False


def rep_dim(rep: RepSpec, d: int) -> int:
    if rep.kind == "trivial":
        return rep.n
    if rep.kind == "vector":
        return d
    if rep.kind in ("weyl_left", "weyl_right"):
        return 4
    if rep.kind == "dual":
        return rep_dim(rep.children[0], d)
    if rep.kind == "tensor":
        return rep_dim(rep.children[0], d) * rep_dim(rep.children[1], d)
    if rep.kind == "sum":
        return sum(rep_dim(c, d) for c in rep.children)
    k = rep_dim(rep.children[0], d)
    if rep.kind == "antisym2":
        return k * (k - 1) // 2
    if rep.kind == "sym2":
        return k * (k + 1) // 2
    raise ValueError("unknown rep kind %r" % rep.kind)


def tau_signs(rep: RepSpec, d: int) -> tuple[int, ...]:
    """Diagonal of the grading operator rho(tau); +1 on V0, -1 on V1."""
    if rep.kind in ("trivial", "vector"):
        return (1,) * rep_dim(rep, d)
    if rep.kind in ("weyl_left", "weyl_right"):
        return (-1, -1, -1, -1)
    if rep.kind == "dual":
        return tau_signs(rep.children[0], d)
    if rep.kind == "tensor":
        sa = tau_signs(rep.children[0], d)
        sb = tau_signs(rep.children[1], d)
        return tuple(x * y for x in sa for y in sb)
    if rep.kind == "sum":
        out: tuple[int, ...] = ()
        for c in rep.children:
            out = out + tau_signs(c, d)
        return out
    s = tau_signs(rep.children[0], d)
    k = len(s)
    if rep.kind == "antisym2":
        return tuple(s[i] * s[j] for i in range(k) for j in range(i + 1, k))
    if rep.kind == "sym2":
        return tuple(s[i] * s[j] for i in range(k) for j in range(i, k))
    raise ValueError("unknown rep kind %r" % rep.kind)


# -- (anti)symmetric square plumbing ---------------------------------------

@lru_cache(maxsize=None)
def _square_maps(k: int, anti: bool):
    """Exact injection/projection between the pair basis and V (x) V."""
    half = QI(Fraction(1, 2))
    pairs = [(i, j) for i in range(k) for j in range(i + (1 if anti else 0), k)]
    m = len(pairs)
    inj = [[QI(0)] * m for _ in range(k * k)]
    proj = [[QI(0)] * (k * k) for _ in range(m)]
    for col, (i, j) in enumerate(pairs):
        if i == j:
            inj[i * k + i][col] = QI(1)
            proj[col][i * k + i] = QI(1)
        else:
            inj[i * k + j][col] = QI(1)
            inj[j * k + i][col] = QI(-1) if anti else QI(1)
            proj[col][i * k + j] = half
            proj[col][j * k + i] = -half if anti else half
    return (tuple(tuple(r) for r in inj), tuple(tuple(r) for r in proj))


def _square_conjugate(mat, k: int, anti: bool):
    inj, proj = _square_maps(k, anti)
    if not la.is_exact_matrix(mat):
        inj, proj = la.to_numpy(inj), la.to_numpy(proj)
    return la.mat_mul(proj, la.mat_mul(mat, inj))


# -- Weyl bracket encoding ---------------------------------------------------

def _bracket_T():
    one, i, z = QI(1), QI(0, 1), QI(0)
    t = ((one, i, z, z), (z, z, one, i), (one, -i, z, z), (z, z, one, -i))
    half = QI(Fraction(1, 2))
    mi = QI(0, Fraction(-1, 2))
    pi = QI(0, Fraction(1, 2))
    tinv = ((half, z, half, z), (mi, z, pi, z), (z, half, z, half), (z, mi, z, pi))
    return t, tinv


BRACKET_T, BRACKET_T_INV = _bracket_T()


def _from_brackets(a2, b2):
    """Real-coordinate matrix of the bracket-diagonal action diag(a2, b2)."""
    t = BRACKET_T
    tinv = BRACKET_T_INV
    if not (la.is_exact_matrix(a2) and la.is_exact_matrix(b2)):
        t, tinv = la.to_numpy(t), la.to_numpy(tinv)
    return la.mat_mul(tinv, la.mat_mul(la.mat_blockdiag([a2, b2]), t))


def _weyl_matrix(c: CoverElement, left: bool):
    if left:
        return _from_brackets(c.a, c.b)
    # right-handed: the (A^dagger)^-1 rep, holomorphically (B^T)^-1 on
    # brackets, paired with (A^T)^-1 for the conjugate block
    bt_inv = la.mat_inv(la.mat_transpose(c.b))
    at_inv = la.mat_inv(la.mat_transpose(c.a))
    return _from_brackets(bt_inv, at_inv)


def _realify_c2(x2):
    """Real 4x4 form of a complex-linear 2x2 action on C^2 = R^4."""
    return _from_brackets(x2, la.mat_conj(x2))


# -- evaluation --------------------------------------------------------------

def evaluate(rep: RepSpec, arg, d: int):
    """Matrix of the rep at a group argument.

    Tensor combinators accept a (real or complex) d x d matrix or a cover
    element; Weyl primitives require a cover element.
    """
    if rep.kind == "trivial":
        return la.identity(rep.n) if _arg_exact(arg) else np.eye(rep.n, dtype=complex)
    if rep.kind == "vector":
        if isinstance(arg, CoverElement):
            return cover_project_complex(arg)
        return arg
    if rep.kind == "weyl_left":
        if not isinstance(arg, CoverElement):
            raise GroupError("Weyl spinors transform under the cover, not the Lorentz group")
        return _weyl_matrix(arg, left=True)
    if rep.kind == "weyl_right":
        if not isinstance(arg, CoverElement):
            raise GroupError("Weyl spinors transform under the cover, not the Lorentz group")
        return _weyl_matrix(arg, left=False)
    if rep.kind == "dual":
        m = evaluate(rep.children[0], arg, d)
        return la.mat_transpose(la.mat_inv(m))
    if rep.kind == "tensor":
        return la.mat_kron(evaluate(rep.children[0], arg, d),
                           evaluate(rep.children[1], arg, d))
    if rep.kind == "sum":
        return la.mat_blockdiag([evaluate(c, arg, d) for c in rep.children])
    if rep.kind in ("antisym2", "sym2"):
        child = rep.children[0]
        m = evaluate(child, arg, d)
        return _square_conjugate(la.mat_kron(m, m), rep_dim(child, d),
                                 rep.kind == "antisym2")
    raise ValueError("unknown rep kind %r" % rep.kind)


def _arg_exact(arg) -> bool:
    if isinstance(arg, CoverElement):
        return arg.exact
    return la.is_exact_matrix(arg)


def hol_evaluate(rep: RepSpec, c: CoverElement, d: int):
    """Holomorphic extension for complex reps: the cover argument acts
    complex-linearly on (V, J)."""
    if not is_complex_rep(rep):
        raise GroupError("rep carries no complex structure")
    if rep.kind == "trivial":
        return la.identity(rep.n) if c.exact else np.eye(rep.n, dtype=complex)
    if rep.kind == "weyl_left":
        return _realify_c2(c.a)
    if rep.kind == "weyl_right":
        return _realify_c2(la.mat_inv(la.mat_transpose(c.b)))
    if rep.kind == "sum":
        return la.mat_blockdiag([hol_evaluate(ch, c, d) for ch in rep.children])
    raise GroupError("rep carries no complex structure")


def grading_matrix(rep: RepSpec, d: int, exact: bool = True):
    """diag(i^n) over coordinates, n the grade; the twist entering rho'."""
    signs = tau_signs(rep, d)
    if exact:
        return tuple(tuple((QI(0, 1) if signs[i] < 0 else QI(1)) if i == j else QI(0)
                           for j in range(len(signs))) for i in range(len(signs)))
    return np.diag([1j if s < 0 else 1.0 for s in signs]).astype(complex)


def prime_evaluate(rep: RepSpec, g, d: int, tol: float = 1e-9):
    """The canonical extension rho' at a proper non-orthochronous argument.

    Tensor arguments are real matrices in the non-orthochronous proper
    component and the functor is evaluated directly; cover arguments g must
    lie in the I-translated sheet, and rho'(g) = i^n rho_c(I^-1 g) on V_n.
    The result is always a real matrix.
    """
    from .lorentz import COVER_ANTI, cover_I

    if isinstance(g, CoverElement):
        if g.component != COVER_ANTI:
            raise GroupError("rho' on covers expects the time-reversing sheet "
                             "containing I")
        c = cover_I().inverse().compose(g)
        m = evaluate(rep, c, d)
        m = la.mat_mul(m, grading_matrix(rep, d, exact=_arg_exact(g)))
    else:
        m = evaluate(rep, g, d)
    return _require_real(m, tol)


def _require_real(m, tol: float):
    if la.is_exact_matrix(m):
        for row in m:
            for x in row:
                if x.im != 0:
                    raise GroupError("rho' produced a non-real matrix")
        return m
    if np.max(np.abs(np.imag(m))) > tol:
        raise GroupError("rho' produced a non-real matrix")
    return np.real(m).astype(float)


# -- infinitesimal action ----------------------------------------------------

def _hermitian_bracket(v):
    """<v> for an exact complex 4-vector."""
    return ((v[0] + v[3], v[1] - QI(0, 1) * v[2]),
            (v[1] + QI(0, 1) * v[2], v[0] - v[3]))


@lru_cache(maxsize=1)
def _weyl_lie_images():
    """Exact sl(2,C) images of the integer so(1,3) basis generators.

    Solves <X e_mu> = x <e_mu> + <e_mu> x^dagger for traceless x, once.
    """
    cols = [_hermitian_bracket(tuple(QI(1 if k == mu else 0) for k in range(4)))
            for mu in range(4)]
    # unknown vector u: re/im of x00 x01 x10 x11
    def entry_terms(r, c, mu):
        # coefficient rows (as QI pairs of columns) for Re and Im of
        # (x S + S x^dagger)[r][c], S = cols[mu]
        s = cols[mu]
        re_row = [QI(0)] * 8
        im_row = [QI(0)] * 8
        for k in range(2):
            # x[r][k] * s[k][c]
            idx = 2 * (2 * r + k)
            re_row[idx] += s[k][c].re
            re_row[idx + 1] += -s[k][c].im
            im_row[idx] += s[k][c].im
            im_row[idx + 1] += s[k][c].re
            # s[r][k] * conj(x[c][k])
            idx = 2 * (2 * c + k)
            re_row[idx] += s[r][k].re
            re_row[idx + 1] += s[r][k].im
            im_row[idx] += s[r][k].im
            im_row[idx + 1] += -s[r][k].re
        return (re_row, im_row)

    images = []
    for f in lie_basis(SIG13):
        rows = []
        rhs = []
        for mu in range(4):
            xv = tuple(f[k][mu] for k in range(4))
            target = _hermitian_bracket(xv)
            for r in range(2):
                for c in range(2):
                    re_row, im_row = entry_terms(r, c, mu)
                    rows.append(re_row)
                    rhs.append(QI(target[r][c].re))
                    rows.append(im_row)
                    rhs.append(QI(target[r][c].im))
        # traceless: re x00 + re x11 = 0, im x00 + im x11 = 0
        tr_re = [QI(0)] * 8
        tr_re[0] = tr_re[6] = QI(1)
        tr_im = [QI(0)] * 8
        tr_im[1] = tr_im[7] = QI(1)
        rows.extend([tr_re, tr_im])
        rhs.extend([QI(0), QI(0)])
        columns = [[rows[i][j] for i in range(len(rows))] for j in range(8)]
        sol = la.solve_exact(columns, rhs)
        if sol is None:
            raise RuntimeError("sl2 image solve failed")
        x = ((QI(sol[0].re, sol[1].re), QI(sol[2].re, sol[3].re)),
             (QI(sol[4].re, sol[5].re), QI(sol[6].re, sol[7].re)))
        images.append(x)
    return images


def weyl_lie_image(x_matrix):
    """sl(2,C) image of an exact so(1,3) element (linear in the basis)."""
    eta = SIG13.eta_diag
    images = _weyl_lie_images()
    out = ((QI(0), QI(0)), (QI(0), QI(0)))
    idx = 0
    for a in range(4):
        for b in range(a + 1, 4):
            coeff = x_matrix[a][b] * QI(eta[b])
            if coeff:
                img = images[idx]
                out = tuple(tuple(out[r][c] + coeff * img[r][c] for c in range(2))
                            for r in range(2))
            idx += 1
    return out


def lie_evaluate(rep: RepSpec, x, d: int):
    """Derivative d rho(X) of the rep functor at an exact Lie-algebra element."""
    if rep.kind == "trivial":
        return la.zeros(rep.n, rep.n)
    if rep.kind == "vector":
        return x
    if rep.kind in ("weyl_left", "weyl_right"):
        a2 = weyl_lie_image(x)
        if rep.kind == "weyl_left":
            return _require_real(_from_brackets(a2, la.mat_conj(a2)), 0.0)
        # derivative of (A^dagger)^-1 at the identity is -a^dagger
        adag = la.mat_neg(la.mat_conj(la.mat_transpose(a2)))
        return _require_real(_from_brackets(adag, la.mat_conj(adag)), 0.0)
    if rep.kind == "dual":
        return la.mat_neg(la.mat_transpose(lie_evaluate(rep.children[0], x, d)))
    if rep.kind == "tensor":
        da = lie_evaluate(rep.children[0], x, d)
        db = lie_evaluate(rep.children[1], x, d)
        na, nb = la.mat_shape(da)[0], la.mat_shape(db)[0]
        return la.mat_add(la.mat_kron(da, la.identity(nb)),
                          la.mat_kron(la.identity(na), db))
    if rep.kind == "sum":
        return la.mat_blockdiag([lie_evaluate(c, x, d) for c in rep.children])
    if rep.kind in ("antisym2", "sym2"):
        child = rep.children[0]
        dm = lie_evaluate(child, x, d)
        k = rep_dim(child, d)
        lifted = la.mat_add(la.mat_kron(dm, la.identity(k)),
                            la.mat_kron(la.identity(k), dm))
        return _square_conjugate(lifted, k, rep.kind == "antisym2")
    raise ValueError("unknown rep kind %r" % rep.kind)


def rho_apply(rep: RepSpec, g, v, d: int = 4):
    """Apply the representation at an orthochronous argument to a vector."""
    from .lorentz import COVER_ORTHO, LorentzElement, PROPER_ORTHO
    if isinstance(g, LorentzElement):
        if g.component != PROPER_ORTHO:
            raise GroupError("rho acts on the orthochronous group; use rho'")
        return la.mat_vec(evaluate(rep, g.matrix, d), v)
    if isinstance(g, CoverElement):
        if g.component != COVER_ORTHO:
            raise GroupError("rho acts on the orthochronous cover; use rho'")
        return la.mat_vec(evaluate(rep, g, d), v)
    return la.mat_vec(evaluate(rep, g, d), v)


def rho_complex_apply(rep: RepSpec, arg, v, d: int = 4):
    """The complexified representation at a complex group argument."""
    return la.mat_vec(evaluate(rep, arg, d), v)


def rho_prime_apply(rep: RepSpec, g, v, d: int = 4):
    """The canonical extension at a proper non-orthochronous argument."""
    return la.mat_vec(prime_evaluate(rep, g, d), v)


def rho_hol_apply(rep: RepSpec, g: CoverElement, v, d: int = 4):
    """The holomorphic extension for complex reps."""
    return la.mat_vec(hol_evaluate(rep, g, d), v)


def grade_split(rep: RepSpec, v, d: int):
    """Split a coordinate vector into its even and odd grading parts."""
    signs = tau_signs(rep, d)
    if isinstance(v, np.ndarray):
        v0 = np.array([x if s > 0 else 0.0 for x, s in zip(v, signs)])
        v1 = np.array([x if s < 0 else 0.0 for x, s in zip(v, signs)])
        return v0, v1
    zero = QI(0)
    v0 = tuple(x if s > 0 else zero for x, s in zip(v, signs))
    v1 = tuple(x if s < 0 else zero for x, s in zip(v, signs))
    return v0, v1
