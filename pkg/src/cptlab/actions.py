"""Classical and quantum actions of group elements on algebra elements.

The classical action sends the symbol with functional lambda and derivative
directions xi_1..xi_n to the symbol with functional lambda o rho(g^-1) and
directions omega(g) xi_j, extended as an algebra automorphism.  The quantum
action composes an extra complex conjugation of W exactly when omega(g)
reverses time, making it anti-linear there.

Non-orthochronous proper arguments act through the canonical extension rho';
cover elements of the I-translated sheet act through the i^n-graded rho' of
the spinorial construction.  The holomorphic actions evaluate the same symbol
rule at complex group arguments.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import linalg as la
from .algebra import (AlgebraContext, AlgebraElement, AlgebraError, FieldSymbol,
                      FieldSymbolSpace, map_symbols, w_matrix_of)
from .lorentz import (COVER_ANTI, COVER_ANTI_A, COVER_ORTHO, PROPER_ANTI,
                      PROPER_ORTHO, CoverElement, GroupError, LorentzElement,
                      cover_project, cover_project_complex)
from .reps import evaluate, has_spinor, hol_evaluate, lie_evaluate, prime_evaluate
from .scalars import QI, as_scalar, conj, is_exact, is_zero


@dataclass
class AlgebraAction:
    """A symbol-rule action on the algebra, given by the matrix of
    rho(g^-1) on V and of omega(g) on M."""

    name: str
    space: FieldSymbolSpace
    v_matrix: object        # rho(g^{-1}) over real V coordinates (may be complex)
    omega: object           # omega(g), d x d (may be complex); None = identity
    antilinear: bool = False

    def __post_init__(self):
        self._coeff_cache: dict = {}
        self._image_cache: dict = {}

    def _entry_coeffs(self, entry: int):
        cached = self._coeff_cache.get(entry)
        if cached is not None:
            return cached
        row = self.space.entries[entry].row
        row = la.vec_mat(row, self.v_matrix)
        if self.antilinear:
            row = la.vec_conj(row)
        coeffs = self.space.row_to_coeffs(row)
        out = []
        for s, c in enumerate(coeffs):
            c = as_scalar(c)
            if is_zero(c, 0.0 if is_exact(c) else 1e-14):
                continue
            out.append((s, c))
        self._coeff_cache[entry] = out
        return out

    def _deriv_expansions(self, derivs: tuple):
        """All ways of expanding omega(g) applied to each derivative slot."""
        if self.omega is None or not derivs:
            return [(QI(1), derivs)]
        cols = []
        om = self.omega
        exact = la.is_exact_matrix(om)
        d = self.space.d
        for k in derivs:
            col = []
            for l in range(d):
                c = om[l][k] if exact else om[l, k]
                c = as_scalar(c)
                if is_zero(c, 0.0 if is_exact(c) else 1e-14):
                    continue
                col.append((l, c))
            cols.append(col)
        out = []
        for combo in itertools.product(*cols):
            coeff = QI(1)
            for _, c in combo:
                coeff = coeff * c
            out.append((coeff, tuple(sorted(l for l, _ in combo))))
        return out

    def symbol_image(self, entry: int, derivs: tuple) -> AlgebraElement:
        raise NotImplementedError

    def apply(self, x: AlgebraElement) -> AlgebraElement:
        ctx = AlgebraContext(x.space, x.mode)
        cache = self._image_cache

        def image(entry: int, derivs: tuple) -> AlgebraElement:
            key = (entry, derivs, x.mode)
            if key in cache:
                return cache[key]
            terms: dict = {}
            for s, cs in self._entry_coeffs(entry):
                for cd, new_derivs in self._deriv_expansions(derivs):
                    mono = (FieldSymbol(s, new_derivs),)
                    c = cs * cd
                    acc = terms.get(mono)
                    terms[mono] = c if acc is None else acc + c
            el = ctx.element(terms)
            cache[key] = el
            return el

        return map_symbols(x, image, antilinear=self.antilinear)

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        return self.apply(x)


def _blockdiag_v(space: FieldSymbolSpace, per_field: Callable):
    return la.mat_blockdiag([per_field(f.rep) for f in space.fields])


def _tensor_guard(space: FieldSymbolSpace):
    if any(has_spinor(f.rep) for f in space.fields):
        raise GroupError("spinor fields transform under the cover; "
                         "pass a cover element")


def classical_action(space: FieldSymbolSpace, g, name: str = "") -> AlgebraAction:
    """The classical action of g; proper non-orthochronous arguments use the
    canonical extension rho'."""
    d = space.d
    if isinstance(g, LorentzElement):
        _tensor_guard(space)
        if g.component == PROPER_ORTHO:
            inv = g.inverse().matrix
            v = _blockdiag_v(space, lambda rep: evaluate(rep, inv, d))
        elif g.component == PROPER_ANTI:
            inv = g.inverse().matrix
            v = _blockdiag_v(space, lambda rep: prime_evaluate(rep, inv, d))
        else:
            raise GroupError("improper element outside the declared group")
        return AlgebraAction(name or "classical(%s)" % g.component, space, v,
                             g.matrix)
    if isinstance(g, CoverElement):
        comp = g.component
        ginv = g.inverse()
        if comp == COVER_ORTHO:
            v = _blockdiag_v(space, lambda rep: evaluate(rep, ginv, d))
        elif comp == COVER_ANTI:
            v = _blockdiag_v(space, lambda rep: prime_evaluate(rep, ginv, d))
        elif comp == COVER_ANTI_A:
            raise GroupError("the sheet through tau*I supports only the "
                             "holomorphic action; rho' lives on the I-sheet")
        else:
            raise GroupError("complex pair outside the real cover")
        return AlgebraAction(name or "classical(%s)" % comp, space, v,
                             cover_project(g).matrix)
    raise GroupError("unsupported group element %r" % (g,))


def quantum_action(space: FieldSymbolSpace, g, name: str = "") -> AlgebraAction:
    """The quantum action: conjugated symbol rule on time-reversing
    arguments, identical to the classical action otherwise."""
    base = classical_action(space, g)
    reversing = (g.time_reversing if isinstance(g, (LorentzElement, CoverElement))
                 else False)
    return AlgebraAction(name or "quantum" + base.name[9:], space, base.v_matrix,
                         base.omega, antilinear=reversing)


def holomorphic_classical_action(space: FieldSymbolSpace, c: CoverElement,
                                 name: str = "") -> AlgebraAction:
    """The holomorphic extension of the classical action, evaluated at a
    (possibly properly complex) cover argument."""
    d = space.d
    cinv = c.inverse()
    v = _blockdiag_v(space, lambda rep: evaluate(rep, cinv, d))
    return AlgebraAction(name or "holomorphic", space, v,
                         cover_project_complex(c))


def holomorphic_structure_action(space: FieldSymbolSpace, c: CoverElement,
                                 name: str = "") -> AlgebraAction:
    """The action through rho_hol for complex reps (holomorphic PT maps);
    defined on the sheet of the cover lying over the real group."""
    d = space.d
    comp = c.component
    if comp not in (COVER_ORTHO, COVER_ANTI_A):
        raise GroupError("rho_hol acts through the double cover containing "
                         "the (A, -conj A) sheet")
    cinv = c.inverse()
    v = _blockdiag_v(space, lambda rep: hol_evaluate(rep, cinv, d))
    return AlgebraAction(name or "holomorphic-pt", space, v,
                         cover_project(c).matrix)


def action_from_matrices(space: FieldSymbolSpace, v_matrix, omega,
                         antilinear: bool = False, name: str = "custom") -> AlgebraAction:
    """Explicit action from the matrix of rho(g^-1) on V and omega(g) on M;
    the escape hatch for user-supplied full-group representations."""
    return AlgebraAction(name, space, v_matrix, omega, antilinear)


def infinitesimal_action(space: FieldSymbolSpace, x_matrix,
                         F: AlgebraElement, dv_matrix=None) -> AlgebraElement:
    """The derivation d/dt rho_F(exp tX)|_0: acts by -d rho(X) on functionals
    and by X on each derivative slot, extended by the Leibniz rule.

    dv_matrix overrides the functor derivative d rho(X) on V, for
    representations outside the combinator vocabulary.
    """
    d = space.d
    if dv_matrix is not None:
        dv = dv_matrix
    else:
        dv = _blockdiag_v(space, lambda rep: lie_evaluate(rep, x_matrix, d))
    ctx = AlgebraContext(space, F.mode)
    coeff_cache: dict = {}

    def lambda_coeffs(entry: int):
        if entry in coeff_cache:
            return coeff_cache[entry]
        row = la.vec_mat(space.entries[entry].row, dv)
        coeffs = space.row_to_coeffs(row)
        out = [(s, -as_scalar(c)) for s, c in enumerate(coeffs)
               if not is_zero(as_scalar(c), 0.0 if is_exact(as_scalar(c)) else 1e-14)]
        coeff_cache[entry] = out
        return out

    def dsym(sym: FieldSymbol) -> AlgebraElement:
        terms: dict = {}
        for s, c in lambda_coeffs(sym.entry):
            mono = (FieldSymbol(s, sym.derivs),)
            terms[mono] = terms.get(mono, QI(0)) + c
        for j, k in enumerate(sym.derivs):
            for l in range(d):
                c = as_scalar(x_matrix[l][k])
                if is_zero(c):
                    continue
                new = tuple(sorted(sym.derivs[:j] + (l,) + sym.derivs[j + 1:]))
                mono = (FieldSymbol(sym.entry, new),)
                terms[mono] = terms.get(mono, QI(0)) + c
        return ctx.element(terms)

    out = ctx.zero()
    for mono, coeff in F.terms.items():
        for pos in range(len(mono)):
            acc = ctx.scalar(coeff)
            for i, s in enumerate(mono):
                acc = acc * (dsym(s) if i == pos else ctx.sym_at(s.entry, s.derivs))
            out = out + acc
    return out


# -- charge classification ---------------------------------------------------

PRESERVING = "preserving"
CONJUGATING = "conjugating"
BOTH = "both"
NEITHER = "neither"

_FLIP = {"+": "-", "-": "+", "0": "0"}


def classify_charge(space: FieldSymbolSpace, w_rows, tol: float = 1e-9) -> str:
    """Classify a real-linear map of W by its charge-sector block structure."""
    exact = la.is_exact_matrix(w_rows)
    n = len(space.entries)
    if exact:
        if not la.mat_det(w_rows):
            raise AlgebraError("map is not invertible on W")
    else:
        if abs(np.linalg.det(np.asarray(w_rows))) < tol:
            raise AlgebraError("map is not invertible on W")
    preserving = True
    conjugating = True
    for r in range(n):
        src = space.sector(r)
        for s in range(n):
            c = w_rows[r][s] if exact else w_rows[r, s]
            mag = abs(c.to_complex()) if isinstance(c, QI) else abs(c)
            if mag <= (0.0 if exact else tol):
                continue
            dst = space.sector(s)
            if dst != src:
                preserving = False
            if dst != _FLIP[src]:
                conjugating = False
    if preserving and conjugating:
        return BOTH
    if preserving:
        return PRESERVING
    if conjugating:
        return CONJUGATING
    return NEITHER


def classify_transform(space: FieldSymbolSpace,
                       transform: Callable[[AlgebraElement], AlgebraElement],
                       tol: float = 1e-9) -> str:
    """Charge classification of any W-preserving algebra transformation."""
    return classify_charge(space, w_matrix_of(space, transform), tol)
