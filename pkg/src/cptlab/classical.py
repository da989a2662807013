"""Polynomial classical fields and the exact correspondence identity.

Polynomial fields keep every computation exact: differentiation, products
and composition with linear maps stay inside rational arithmetic, so the
correspondence between transforming a formula and transforming the field it
acts on is a decidable polynomial identity rather than a numerical test.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg as la
from .actions import classical_action
from .algebra import AlgebraElement, AlgebraError, FieldSymbolSpace
from .lorentz import LorentzElement
from .reps import evaluate
from .scalars import QI, as_scalar, is_zero


class Poly:
    """Sparse multivariate polynomial: exponent tuple -> coefficient."""

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs: dict | None = None):
        self.nvars = nvars
        self.coeffs = {}
        for e, c in (coeffs or {}).items():
            c = as_scalar(c)
            if is_zero(c):
                continue
            self.coeffs[tuple(e)] = c

    @classmethod
    def constant(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: as_scalar(c)})

    @classmethod
    def variable(cls, nvars: int, k: int) -> "Poly":
        e = [0] * nvars
        e[k] = 1
        return cls(nvars, {tuple(e): QI(1)})

    def __add__(self, other: "Poly") -> "Poly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            acc = out.get(e)
            acc = c if acc is None else acc + c
            if is_zero(acc):
                out.pop(e, None)
            else:
                out[e] = acc
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def scaled(self, c) -> "Poly":
        c = as_scalar(c)
        return Poly(self.nvars, {e: v * c for e, v in self.coeffs.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                acc = out.get(e)
                acc = c if acc is None else acc + c
                if is_zero(acc):
                    out.pop(e, None)
                else:
                    out[e] = acc
        return Poly(self.nvars, out)

    def diff(self, k: int) -> "Poly":
        out = {}
        for e, c in self.coeffs.items():
            if e[k] == 0:
                continue
            e2 = list(e)
            e2[k] -= 1
            out[tuple(e2)] = c * e[k]
        return Poly(self.nvars, out)

    def subst_linear(self, m, powers=None) -> "Poly":
        """Compose with the linear map: x_j := sum_k m[j][k] y_k.

        A `powers` cache from linear_form_powers can be shared across the
        components of one field to avoid re-expanding the same forms.
        """
        n = self.nvars
        if powers is None:
            powers = linear_form_powers(n, m)
        total = Poly(n, {})
        for e, c in self.coeffs.items():
            term = Poly.constant(n, c)
            for j, p in enumerate(e):
                if p:
                    term = term * powers(j, p)
            total = total + term
        return total

    def evaluate(self, point):
        out = as_scalar(0)
        for e, c in self.coeffs.items():
            term = c
            for j, p in enumerate(e):
                for _ in range(p):
                    term = term * as_scalar(point[j])
            out = out + term
        return out

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def approx_eq(self, other: "Poly", tol: float = 1e-8) -> bool:
        exps = set(self.coeffs) | set(other.coeffs)
        for e in exps:
            d = self.coeffs.get(e, QI(0)) - other.coeffs.get(e, QI(0))
            mag = abs(d.to_complex()) if isinstance(d, QI) else abs(d)
            if mag > tol:
                return False
        return True

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for e in sorted(self.coeffs):
            mono = "*".join("x%d^%d" % (j, p) for j, p in enumerate(e) if p)
            bits.append("(%s)%s" % (self.coeffs[e], ("*" + mono) if mono else ""))
        return " + ".join(bits)


def linear_form_powers(n: int, m):
    """Cached powers of the linear forms of a substitution matrix."""
    exact = la.is_exact_matrix(m)

    @lru_cache(maxsize=None)
    def form_power(j: int, p: int) -> "Poly":
        if p == 0:
            return Poly.constant(n, 1)
        if p == 1:
            out = Poly(n, {})
            for k in range(n):
                c = m[j][k] if exact else m[j, k]
                c = as_scalar(c)
                if is_zero(c, 0.0 if isinstance(c, QI) else 1e-15):
                    continue
                out = out + Poly.variable(n, k).scaled(c)
            return out
        return form_power(j, p - 1) * form_power(j, 1)

    return form_power


@dataclass
class PolyField:
    """A V-valued polynomial map on spacetime: one polynomial per real
    coordinate of V, in d spacetime variables."""

    space: FieldSymbolSpace
    components: tuple

    def __post_init__(self):
        if len(self.components) != self.space.total_dim:
            raise AlgebraError("component count does not match V")


def random_polyfield(space: FieldSymbolSpace, seed: int, degree: int = 3,
                     terms: int = 4) -> PolyField:
    rng = np.random.default_rng(seed)
    d = space.d
    comps = []
    for _ in range(space.total_dim):
        p = Poly(d, {})
        for _ in range(terms):
            e = tuple(int(x) for x in rng.integers(0, degree + 1, size=d))
            if sum(e) > degree:
                continue
            p = p + Poly(d, {e: QI(int(rng.integers(-3, 4)))})
        comps.append(p)
    return PolyField(space, tuple(comps))


def apply_operator(F: AlgebraElement, phi: PolyField) -> Poly:
    """Evaluate the differential operator of a commutative formula on a
    polynomial field, by exact differentiation of derived components."""
    for mono in F.monomials():
        if len(mono) > 1 and any(F.space.grade(s.entry) for s in mono):
            raise AlgebraError("no classical semantics for products of odd "
                               "symbols; only linear spinorial formulae evaluate")
    space = F.space
    d = space.d
    cache: dict = {}

    def component(entry: int, derivs: tuple) -> Poly:
        key = (entry, derivs)
        if key in cache:
            return cache[key]
        if derivs:
            base = component(entry, derivs[:-1])
            out = base.diff(derivs[-1])
        else:
            row = space.entries[entry].row
            out = Poly(d, {})
            for j, c in enumerate(row):
                if c:
                    out = out + phi.components[j].scaled(c)
        cache[key] = out
        return out

    total = Poly(d, {})
    for mono, coeff in F.terms.items():
        term = Poly.constant(d, coeff)
        for s in mono:
            term = term * component(s.entry, s.derivs)
        total = total + term
    return total


def pullback_transform(space: FieldSymbolSpace, g: LorentzElement,
                       phi: PolyField) -> PolyField:
    """The geometric action on fields: rho(g) o phi o omega(g^-1)."""
    d = space.d
    ginv = g.inverse().matrix
    rho = la.mat_blockdiag([evaluate(f.rep, g.matrix, d) for f in space.fields])
    powers = linear_form_powers(d, ginv)
    subbed = [p.subst_linear(ginv, powers) for p in phi.components]
    exact = la.is_exact_matrix(rho)
    comps = []
    n = space.total_dim
    for i in range(n):
        out = Poly(d, {})
        for j in range(n):
            c = rho[i][j] if exact else rho[i, j]
            c = as_scalar(c)
            if is_zero(c, 0.0 if isinstance(c, QI) else 1e-15):
                continue
            out = out + subbed[j].scaled(c)
        comps.append(out)
    return PolyField(space, tuple(comps))


def pullback_with_matrices(space: FieldSymbolSpace, rho, omega_inv,
                           phi: PolyField) -> PolyField:
    """Pullback with explicit matrices, for maps outside the Lorentz group."""
    powers = linear_form_powers(space.d, omega_inv)
    subbed = [p.subst_linear(omega_inv, powers) for p in phi.components]
    exact = la.is_exact_matrix(rho)
    n = space.total_dim
    comps = []
    for i in range(n):
        out = Poly(space.d, {})
        for j in range(n):
            c = rho[i][j] if exact else rho[i, j]
            c = as_scalar(c)
            if is_zero(c, 0.0 if isinstance(c, QI) else 1e-15):
                continue
            out = out + subbed[j].scaled(c)
        comps.append(out)
    return PolyField(space, tuple(comps))


@dataclass
class CorrespondenceReport:
    exact: bool
    holds: bool
    residual: float
    detail: str

    def to_json(self):
        return {"exact": self.exact, "verdict": "pass" if self.holds else "fail",
                "residual": self.residual, "detail": self.detail}


def verify_correspondence_set(space: FieldSymbolSpace, g: LorentzElement,
                              formulas, phi: PolyField, sample_points=None,
                              tol: float = 1e-8) -> list:
    """Check D_F(u(g)^-1 Phi) = D_{rho_F(g) F}(Phi) o omega(g) for several
    formulas, sharing the pullback and the action.

    The two sides go through independent code paths: polynomial pullback and
    differentiation on the left, the symbol-rule action on the right.
    """
    moved = pullback_transform(space, g.inverse(), phi)
    action = classical_action(space, g)
    powers = linear_form_powers(space.d, g.matrix)
    exact = g.exact and all(isinstance(c, QI) for p in phi.components
                            for c in p.coeffs.values())
    reports = []
    for F in formulas:
        lhs = apply_operator(F, moved)
        rhs = apply_operator(action.apply(F), phi).subst_linear(g.matrix, powers)
        if exact and sample_points is None:
            holds = lhs == rhs
            reports.append(CorrespondenceReport(
                True, holds, 0.0, "exact polynomial identity" if holds
                else "polynomials differ"))
            continue
        pts = sample_points
        if pts is None:
            rng = np.random.default_rng(17)
            pts = [rng.normal(size=space.d) for _ in range(20)]
        worst = 0.0
        for pt in pts:
            a = complex(_c(lhs.evaluate(list(pt))))
            b = complex(_c(rhs.evaluate(list(pt))))
            scale = max(1.0, abs(a), abs(b))
            worst = max(worst, abs(a - b) / scale)
        reports.append(CorrespondenceReport(
            False, worst <= tol, worst,
            "pointwise relative residual %.3g" % worst))
    return reports


def verify_correspondence(space: FieldSymbolSpace, g: LorentzElement,
                          F: AlgebraElement, phi: PolyField,
                          sample_points=None, tol: float = 1e-8) -> CorrespondenceReport:
    return verify_correspondence_set(space, g, [F], phi, sample_points, tol)[0]


def _c(x):
    return x.to_complex() if isinstance(x, QI) else x
