"""The free complex algebra on field symbols and its quotients.

A field symbol is a basis functional of W = Hom(V, C) together with a
multiset of spacetime derivative directions.  Elements are finite complex
combinations of ordered symbol monomials, kept in canonical form for one of
three modes: free (no relations), commutative, or supercommutative (even
symbols central, odd symbols pairwise anticommuting).

Strong reflection S fixes symbols and reverses products; $-conjugation C_$
applies an involution of W symbol-wise; dagger_$ = S o C_$ is the abstract
Hermitian conjugate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from . import linalg as la
from .reps import RepSpec, rep_dim, tau_signs
from .scalars import QI, as_scalar, conj, is_exact, is_zero, scalar_str

FREE = "free"
COMMUTATIVE = "commutative"
SUPER = "supercommutative"
MODES = (FREE, COMMUTATIVE, SUPER)

SECTOR_PLUS = "+"
SECTOR_ZERO = "0"
SECTOR_MINUS = "-"


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class FieldDecl:
    """A declared field: name, how it transforms, and its charge sector."""
    name: str
    rep: RepSpec
    charged: bool = False


class SymbolEntry(NamedTuple):
    name: str
    field_index: int
    sector: str
    grade: int
    row: tuple          # functional on V as a complex row over real coordinates
    conj_index: int


class FieldSymbol(NamedTuple):
    entry: int
    derivs: tuple


class FieldSymbolSpace:
    """Basis data of W for a list of declared fields over one spacetime.

    Conjugation lambda -> * o lambda is an entry permutation: it swaps the
    + and - sectors and fixes the neutral one.  Charged fields pair real
    coordinates (x_{2k}, x_{2k+1}) into the complex component x_{2k} + i
    x_{2k+1}; a neutral field contributes its real coordinate functionals.
    """

    def __init__(self, spacetime, fields: tuple[FieldDecl, ...]):
        self.spacetime = spacetime
        self.d = spacetime.dim
        self.fields = tuple(fields)
        entries: list[SymbolEntry] = []
        offsets = []
        total = 0
        for f in self.fields:
            offsets.append(total)
            total += rep_dim(f.rep, self.d)
        self.total_dim = total
        self.field_offsets = tuple(offsets)
        for fi, f in enumerate(self.fields):
            n = rep_dim(f.rep, self.d)
            signs = tau_signs(f.rep, self.d)
            off = offsets[fi]
            if not f.charged:
                for j in range(n):
                    row = tuple(QI(1 if k == off + j else 0) for k in range(total))
                    grade = 0 if signs[j] > 0 else 1
                    entries.append(SymbolEntry("%s[%d]" % (f.name, j), fi,
                                               SECTOR_ZERO, grade, row,
                                               len(entries)))
            else:
                if n % 2:
                    raise AlgebraError("charged field %s needs an even-dimensional rep"
                                       % f.name)
                base = len(entries)
                half = n // 2
                for k in range(half):
                    if signs[2 * k] != signs[2 * k + 1]:
                        raise AlgebraError("coordinate pair of %s mixes grades" % f.name)
                    grade = 0 if signs[2 * k] > 0 else 1
                    row = tuple(QI(1 if t == off + 2 * k else 0)
                                + QI(0, 1 if t == off + 2 * k + 1 else 0)
                                for t in range(total))
                    entries.append(SymbolEntry("%s[%d]" % (f.name, k), fi,
                                               SECTOR_PLUS, grade, row,
                                               base + half + k))
                for k in range(half):
                    grade = 0 if signs[2 * k] > 0 else 1
                    row = tuple(QI(1 if t == off + 2 * k else 0)
                                + QI(0, -1 if t == off + 2 * k + 1 else 0)
                                for t in range(total))
                    entries.append(SymbolEntry("conj(%s)[%d]" % (f.name, k), fi,
                                               SECTOR_MINUS, grade, row,
                                               base + k))
        self.entries = tuple(entries)
        self.by_name = {e.name: i for i, e in enumerate(entries)}
        if len(entries) != total:
            raise AlgebraError("symbol basis does not span W")
        self.basis_matrix = tuple(e.row for e in entries)
        self.basis_inv = la.mat_inv(self.basis_matrix)

    def grade(self, entry: int) -> int:
        return self.entries[entry].grade

    def sector(self, entry: int) -> str:
        return self.entries[entry].sector

    def conj_entry(self, entry: int) -> int:
        return self.entries[entry].conj_index

    def entry_index(self, name: str) -> int:
        if name not in self.by_name:
            raise AlgebraError("undeclared symbol %r" % name)
        return self.by_name[name]

    def row_to_coeffs(self, row):
        """Express a W functional (complex row over V coordinates) in the
        entry basis."""
        return la.vec_mat(row, self.basis_inv)

    def field_rep_blocks(self):
        return [(f.rep, self.field_offsets[i]) for i, f in enumerate(self.fields)]

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return id(self)


def _sorted_monomial(space: FieldSymbolSpace, mode: str, factors):
    """Canonical ordering with the supercommutative sign; None when the
    monomial dies (repeated odd symbol)."""
    if mode == FREE:
        return 1, tuple(factors)
    fs = list(factors)
    sign = 1
    for i in range(1, len(fs)):
        j = i
        while j > 0 and fs[j] < fs[j - 1]:
            if (mode == SUPER and space.grade(fs[j].entry)
                    and space.grade(fs[j - 1].entry)):
                sign = -sign
            fs[j], fs[j - 1] = fs[j - 1], fs[j]
            j -= 1
    if mode == SUPER:
        for a, b in zip(fs, fs[1:]):
            if a == b and space.grade(a.entry):
                return 0, ()
    return sign, tuple(fs)


class AlgebraElement:
    """A canonical-form element of Kf, Kfc or Kfs."""

    __slots__ = ("space", "mode", "terms")

    def __init__(self, space: FieldSymbolSpace, mode: str, terms: dict,
                 _canonical: bool = False):
        if mode not in MODES:
            raise AlgebraError("unknown algebra mode %r" % mode)
        self.space = space
        self.mode = mode
        if _canonical:
            self.terms = terms
            return
        out: dict = {}
        for mono, coeff in terms.items():
            coeff = as_scalar(coeff)
            if is_zero(coeff):
                continue
            sign, canon = _sorted_monomial(space, mode, mono)
            if sign == 0:
                continue
            c = coeff if sign == 1 else -coeff
            acc = out.get(canon)
            acc = c if acc is None else acc + c
            if is_zero(acc):
                out.pop(canon, None)
            else:
                out[canon] = acc
        self.terms = out

    # -- ring structure ------------------------------------------------------

    def _check(self, other: "AlgebraElement"):
        if self.space is not other.space or self.mode != other.mode:
            raise AlgebraError("mixed-mode or mixed-space operands")

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = out.get(mono)
            acc = coeff if acc is None else acc + coeff
            if is_zero(acc):
                out.pop(mono, None)
            else:
                out[mono] = acc
        return AlgebraElement(self.space, self.mode, out, _canonical=True)

    def __neg__(self):
        return AlgebraElement(self.space, self.mode,
                              {m: -c for m, c in self.terms.items()},
                              _canonical=True)

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def scaled(self, c):
        c = as_scalar(c)
        if is_zero(c):
            return AlgebraElement(self.space, self.mode, {}, _canonical=True)
        return AlgebraElement(self.space, self.mode,
                              {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            out: dict = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    sign, canon = _sorted_monomial(self.space, self.mode, m1 + m2)
                    if sign == 0:
                        continue
                    c = c1 * c2
                    if sign == -1:
                        c = -c
                    acc = out.get(canon)
                    acc = c if acc is None else acc + c
                    if is_zero(acc):
                        out.pop(canon, None)
                    else:
                        out[canon] = acc
            return AlgebraElement(self.space, self.mode, out, _canonical=True)
        return self.scaled(other)

    def __rmul__(self, other):
        return self.scaled(other)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self.space is other.space and self.mode == other.mode
                and self.terms == other.terms)

    def __hash__(self):
        return hash((id(self.space), self.mode, frozenset(self.terms.items())))

    @property
    def is_zero_element(self) -> bool:
        return not self.terms

    def approx_eq(self, other: "AlgebraElement", tol: float = 1e-9) -> bool:
        self._check(other)
        monos = set(self.terms) | set(other.terms)
        for m in monos:
            a = self.terms.get(m, QI(0))
            b = other.terms.get(m, QI(0))
            diff = a - b
            mag = abs(diff.to_complex()) if isinstance(diff, QI) else abs(diff)
            if mag > tol:
                return False
        return True

    def max_degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    def monomials(self):
        return self.terms.keys()

    # -- display -------------------------------------------------------------

    def serialize(self) -> str:
        """Deterministic text form: sorted monomials, exact coefficients as
        a/b+c/d*i."""
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))
        parts = []
        for mono, coeff in items:
            syms = "*".join(self._symbol_str(s) for s in mono)
            if syms:
                parts.append("(%s)*%s" % (scalar_str(coeff), syms))
            else:
                parts.append("(%s)" % scalar_str(coeff))
        return " + ".join(parts)

    def _symbol_str(self, s: FieldSymbol) -> str:
        pre = "".join("d[%d]" % k for k in s.derivs)
        return pre + self.space.entries[s.entry].name

    def __repr__(self):
        return "<%s %s>" % (self.mode, self.serialize())


class AlgebraContext:
    """Element factory bound to one space and mode."""

    def __init__(self, space: FieldSymbolSpace, mode: str):
        self.space = space
        self.mode = mode

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self.space, self.mode, {})

    def one(self) -> AlgebraElement:
        return self.scalar(1)

    def scalar(self, c) -> AlgebraElement:
        return AlgebraElement(self.space, self.mode, {(): as_scalar(c)})

    def sym(self, name: str, derivs=()) -> AlgebraElement:
        idx = self.space.entry_index(name)
        fs = FieldSymbol(idx, tuple(sorted(derivs)))
        return AlgebraElement(self.space, self.mode, {(fs,): QI(1)})

    def sym_at(self, entry: int, derivs=()) -> AlgebraElement:
        fs = FieldSymbol(entry, tuple(sorted(derivs)))
        return AlgebraElement(self.space, self.mode, {(fs,): QI(1)})

    def element(self, terms: dict) -> AlgebraElement:
        return AlgebraElement(self.space, self.mode, terms)


# -- canonical form, reflection, conjugation ---------------------------------

def normal_form(x: AlgebraElement) -> AlgebraElement:
    """Re-canonicalise an element; idempotent."""
    return AlgebraElement(x.space, x.mode, dict(x.terms))


def reinterpret(x: AlgebraElement, mode: str) -> AlgebraElement:
    """Image of an element under the quotient map onto another mode."""
    return AlgebraElement(x.space, mode, dict(x.terms))


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x * y


def map_symbols(x: AlgebraElement, image: Callable[[int, tuple], AlgebraElement],
                antilinear: bool = False, reverse: bool = False) -> AlgebraElement:
    """Extend a symbol-wise map to the whole algebra.

    The map sends the symbol with entry r and derivative multiset D to an
    arbitrary element; products map to products of images (reversed for
    anti-automorphisms), coefficients conjugate when antilinear.
    """
    ctx = AlgebraContext(x.space, x.mode)
    out = ctx.zero()
    for mono, coeff in x.terms.items():
        c = conj(coeff) if antilinear else coeff
        acc = ctx.scalar(c)
        factors = reversed(mono) if reverse else mono
        for s in factors:
            acc = acc * image(s.entry, s.derivs)
        out = out + acc
    return out


def strong_reflection(x: AlgebraElement) -> AlgebraElement:
    """S: identity on symbols, anti-automorphism of products."""
    out: dict = {}
    for mono, coeff in x.terms.items():
        sign, canon = _sorted_monomial(x.space, x.mode, tuple(reversed(mono)))
        if sign == 0:
            continue
        c = coeff if sign == 1 else -coeff
        acc = out.get(canon)
        acc = c if acc is None else acc + c
        if is_zero(acc):
            out.pop(canon, None)
        else:
            out[canon] = acc
    return AlgebraElement(x.space, x.mode, out, _canonical=True)


@dataclass(frozen=True)
class InvolutionSpec:
    """An involution $ of W given by its matrix on the entry basis.

    Row r lists the coefficients of $(lambda_r) over the basis.  The
    linearity flag fixes how C_$ extends to the algebra.
    """

    name: str
    space: FieldSymbolSpace
    matrix: tuple
    antilinear: bool

    def __post_init__(self):
        m = self.matrix
        if la.is_exact_matrix(m):
            twice = la.mat_mul(la.mat_conj(m) if self.antilinear else m, m)
            if twice != la.identity(len(m)):
                raise AlgebraError("$ is not an involution on W")
        else:
            twice = la.mat_mul(np.conj(m) if self.antilinear else m, m)
            if np.max(np.abs(twice - np.eye(len(m)))) > 1e-9:
                raise AlgebraError("$ is not an involution on W")

    def apply_row(self, r: int):
        m = self.matrix
        if isinstance(m, np.ndarray):
            return m[r]
        return m[r]


def identity_involution(space: FieldSymbolSpace) -> InvolutionSpec:
    return InvolutionSpec("id", space, la.identity(len(space.entries)), False)


def _conj_permutation(space: FieldSymbolSpace):
    n = len(space.entries)
    return tuple(tuple(QI(1 if space.conj_entry(r) == s else 0) for s in range(n))
                 for r in range(n))


def star_involution(space: FieldSymbolSpace) -> InvolutionSpec:
    """$ = *: lambda -> * o lambda; the anti-linear sector swap."""
    return InvolutionSpec("*", space, _conj_permutation(space), True)


def hash_involution(space: FieldSymbolSpace) -> InvolutionSpec:
    """Default internal charge conjugation: the same sector swap, taken
    complex-linearly (conjugation of each charged pair of V)."""
    return InvolutionSpec("#", space, _conj_permutation(space), False)


def star_hash_involution(space: FieldSymbolSpace) -> InvolutionSpec:
    """$ = *#: anti-linear, identity on the symbol basis."""
    return InvolutionSpec("*#", space, la.identity(len(space.entries)), True)


def involution_from_v_matrix(space: FieldSymbolSpace, vmat, antilinear: bool,
                             name: str) -> InvolutionSpec:
    """Build $ from an involution of V: $(lambda) = (* o)? lambda o vmat."""
    rows = []
    for e in space.entries:
        row = la.vec_mat(e.row, vmat)
        if antilinear:
            row = la.vec_conj(row)
        rows.append(space.row_to_coeffs(row))
    if any(isinstance(r, np.ndarray) for r in rows):
        m = np.array([la.to_numpy_vec(r) for r in rows])
    else:
        m = tuple(tuple(r) for r in rows)
    return InvolutionSpec(name, space, m, antilinear)


def named_involution(space: FieldSymbolSpace, name: str) -> InvolutionSpec:
    table = {"id": identity_involution, "star": star_involution,
             "*": star_involution, "hash": hash_involution,
             "#": hash_involution, "starhash": star_hash_involution,
             "*#": star_hash_involution}
    if name not in table:
        raise AlgebraError("unknown involution %r" % name)
    return table[name](space)


def conjugation_C(dollar: InvolutionSpec, x: AlgebraElement) -> AlgebraElement:
    """C_$: applies $ to every symbol, extended as a (complex-linear or
    anti-linear) algebra automorphism."""
    if dollar.space is not x.space:
        raise AlgebraError("involution belongs to a different symbol space")
    ctx = AlgebraContext(x.space, x.mode)

    def image(entry: int, derivs: tuple) -> AlgebraElement:
        row = dollar.apply_row(entry)
        terms = {}
        for s, c in enumerate(row):
            c = as_scalar(c)
            if is_zero(c, 1e-15 if not is_exact(c) else 0.0):
                continue
            terms[(FieldSymbol(s, derivs),)] = c
        return ctx.element(terms)

    return map_symbols(x, image, antilinear=dollar.antilinear)


def dagger(dollar: InvolutionSpec, x: AlgebraElement) -> AlgebraElement:
    """dagger_$ = S o C_$ = C_$ o S."""
    return strong_reflection(conjugation_C(dollar, x))


def w_matrix_of(space: FieldSymbolSpace, transform: Callable[[AlgebraElement], AlgebraElement],
                mode: str = FREE):
    """Matrix of a transformation restricted to W (pure underived symbols)."""
    ctx = AlgebraContext(space, mode)
    n = len(space.entries)
    rows = []
    for r in range(n):
        img = transform(ctx.sym_at(r))
        row = [QI(0)] * n
        exact = True
        for mono, coeff in img.terms.items():
            if len(mono) != 1 or mono[0].derivs:
                raise AlgebraError("transformation does not preserve W")
            row[mono[0].entry] = coeff
            exact = exact and isinstance(coeff, QI)
        if not exact:
            row = [c.to_complex() if isinstance(c, QI) else c for c in row]
        rows.append(row)
    if any(not isinstance(c, QI) for row in rows for c in row):
        return np.array([[complex(c.to_complex()) if isinstance(c, QI) else c
                          for c in row] for row in rows])
    return tuple(tuple(row) for row in rows)
