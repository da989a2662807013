"""The theory-file language: lexer, parser, pretty-printer and elaboration.

A source file declares a spacetime, fields with their representation
expressions and charge sectors, an algebra mode, named formulae, and named
theories over those formulae.  Formula expressions are complex-rational
combinations of indexed field symbols, with prefix derivative operators and
the Dirac sugar psibar(...) and gamma[mu].

Every diagnostic carries a line/column span; the parser recovers at
statement boundaries and never raises.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import reps
from .algebra import (COMMUTATIVE, FREE, SUPER, AlgebraContext, AlgebraElement,
                      AlgebraError, FieldDecl, FieldSymbol, FieldSymbolSpace)
from .gammas import gamma
from .lorentz import Galilean, Signature
from .scalars import QI
from .theories import FormalTheory, TheoryError

KEYWORDS = {
    "space", "dim", "signature", "galilean", "field", "charge", "mode",
    "formula", "theory", "equations", "density", "conj", "psibar", "gamma",
    "d", "vector", "weyl_left", "weyl_right", "trivial", "dual", "antisym2",
    "sym2", "free", "commutative", "supercommutative", "i",
}

MODES = {"free": FREE, "commutative": COMMUTATIVE, "supercommutative": SUPER}


@dataclass(frozen=True)
class Span:
    line: int
    col: int

    def __str__(self):
        return "%d:%d" % (self.line, self.col)


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    message: str
    span: Span

    def __str__(self):
        return "%s: %s: %s" % (self.span, self.severity, self.message)


class ParseError(Exception):
    def __init__(self, diag: Diagnostic):
        super().__init__(str(diag))
        self.diag = diag


@dataclass(frozen=True)
class Token:
    kind: str       # ident, number, punct, otimes, oplus, eof
    text: str
    value: object
    span: Span


def _lex(src: str):
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(src)
    diags = []
    while i < n:
        c = src[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and src[i] != "\n":
                i += 1
            continue
        span = Span(line, col)
        if c == "(" and src[i:i + 3] in ("(x)", "(+)"):
            tokens.append(Token("otimes" if src[i + 1] == "x" else "oplus",
                                src[i:i + 3], None, span))
            i += 3
            col += 3
            continue
        if c.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            num = src[i:j]
            den = None
            if j < n and src[j] == "/" and j + 1 < n and src[j + 1].isdigit():
                k = j + 1
                while k < n and src[k].isdigit():
                    k += 1
                den = src[j + 1:k]
                j = k
            imag = False
            if j < n and src[j] == "i" and not (j + 1 < n and
                                                (src[j + 1].isalnum() or src[j + 1] == "_")):
                imag = True
                j += 1
            frac = Fraction(int(num), int(den) if den else 1)
            value = QI(0, frac) if imag else QI(frac)
            tokens.append(Token("number", src[i:j], value, span))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            word = src[i:j]
            if word == "i":
                tokens.append(Token("number", word, QI(0, 1), span))
            else:
                tokens.append(Token("ident", word, word, span))
            col += j - i
            i = j
            continue
        if c in "()[]{}+-*=:,":
            tokens.append(Token("punct", c, c, span))
            i += 1
            col += 1
            continue
        diags.append(Diagnostic("error", "unexpected character %r" % c, span))
        i += 1
        col += 1
    tokens.append(Token("eof", "", None, Span(line, col)))
    return tokens, diags


# -- AST ----------------------------------------------------------------------

@dataclass(frozen=True)
class SpaceDecl:
    dim: int
    signature: tuple | None      # (p, q) or None for galilean
    span: Span = dc_field(compare=False, default=Span(0, 0))


@dataclass(frozen=True)
class FieldStmt:
    name: str
    rep: object                  # RepSpec
    charge: str                  # "+" or "0"
    span: Span = dc_field(compare=False, default=Span(0, 0))


@dataclass(frozen=True)
class Num:
    value: QI


@dataclass(frozen=True)
class Sum:
    items: tuple


@dataclass(frozen=True)
class Prod:
    items: tuple


@dataclass(frozen=True)
class Neg:
    item: object


@dataclass(frozen=True)
class Atom:
    vec: object
    index: int
    span: Span = dc_field(compare=False, default=Span(0, 0))


@dataclass(frozen=True)
class VField:
    name: str


@dataclass(frozen=True)
class VConj:
    name: str


@dataclass(frozen=True)
class VPsibar:
    name: str


@dataclass(frozen=True)
class VGamma:
    mu: int
    child: object


@dataclass(frozen=True)
class VDeriv:
    mu: int
    child: object


@dataclass(frozen=True)
class FormulaStmt:
    name: str
    expr: object
    span: Span = dc_field(compare=False, default=Span(0, 0))


@dataclass(frozen=True)
class TheoryStmt:
    name: str
    formulas: tuple
    kind: str
    span: Span = dc_field(compare=False, default=Span(0, 0))


@dataclass(frozen=True)
class SourceSpec:
    space: SpaceDecl | None
    fields: tuple
    mode: str
    formulas: tuple
    theories: tuple


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.pos = 0
        self.diags: list[Diagnostic] = []

    def peek(self) -> Token:
        return self.toks[self.pos]

    def next(self) -> Token:
        t = self.toks[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def error(self, msg: str, span=None):
        raise ParseError(Diagnostic("error", msg, span or self.peek().span))

    def expect_punct(self, ch: str) -> Token:
        t = self.peek()
        if t.kind == "punct" and t.text == ch:
            return self.next()
        self.error("expected %r, found %r" % (ch, t.text or "end of input"))

    def expect_ident(self, what="identifier") -> Token:
        t = self.peek()
        if t.kind == "ident":
            return self.next()
        self.error("expected %s, found %r" % (what, t.text or "end of input"))

    def expect_int(self) -> int:
        t = self.peek()
        if t.kind == "number" and isinstance(t.value, QI) and t.value.im == 0 \
                and t.value.re.denominator == 1:
            self.next()
            return int(t.value.re)
        self.error("expected an integer, found %r" % (t.text or "end of input"))

    def at_keyword(self, *words) -> bool:
        t = self.peek()
        return t.kind == "ident" and t.text in words

    # -- statements ----------------------------------------------------------

    def parse_spec(self) -> SourceSpec:
        space = None
        fields = []
        mode = COMMUTATIVE
        formulas = []
        theories = []
        while self.peek().kind != "eof":
            t = self.peek()
            try:
                if self.at_keyword("space"):
                    space = self.parse_space()
                elif self.at_keyword("field"):
                    fields.append(self.parse_field())
                elif self.at_keyword("mode"):
                    self.next()
                    w = self.expect_ident("algebra mode")
                    if w.text not in MODES:
                        self.error("unknown mode %r" % w.text, w.span)
                    mode = MODES[w.text]
                elif self.at_keyword("formula"):
                    formulas.append(self.parse_formula())
                elif self.at_keyword("theory"):
                    theories.append(self.parse_theory())
                else:
                    self.error("expected a declaration, found %r"
                               % (t.text or "end of input"))
            except ParseError as exc:
                self.diags.append(exc.diag)
                self.recover()
        return SourceSpec(space, tuple(fields), mode, tuple(formulas),
                          tuple(theories))

    def recover(self):
        while self.peek().kind != "eof" and not self.at_keyword(
                "space", "field", "mode", "formula", "theory"):
            self.next()

    def parse_space(self) -> SpaceDecl:
        start = self.next()
        dim = None
        signature = None
        galilean = False
        while True:
            if self.at_keyword("dim"):
                self.next()
                dim = self.expect_int()
            elif self.at_keyword("signature"):
                self.next()
                p = self.expect_int()
                self.expect_punct(",")
                q = self.expect_int()
                signature = (p, q)
            elif self.at_keyword("galilean"):
                self.next()
                galilean = True
            else:
                break
        if signature is not None:
            dim = signature[0] + signature[1] if dim is None else dim
            if dim != signature[0] + signature[1]:
                self.error("dim does not match the signature", start.span)
            return SpaceDecl(dim, signature, start.span)
        if galilean:
            if dim is None:
                self.error("galilean space needs dim", start.span)
            return SpaceDecl(dim, None, start.span)
        self.error("space needs a signature or galilean", start.span)

    def parse_field(self) -> FieldStmt:
        start = self.next()
        name = self.expect_ident("field name")
        if name.text in KEYWORDS:
            self.error("field name %r is reserved" % name.text, name.span)
        self.expect_punct(":")
        rep = self.parse_repexpr()
        charge = "0"
        if self.at_keyword("charge"):
            self.next()
            t = self.peek()
            if t.kind == "punct" and t.text == "+":
                self.next()
                charge = "+"
            elif t.kind == "number" and t.value == QI(0):
                self.next()
                charge = "0"
            else:
                self.error("charge must be + or 0")
        return FieldStmt(name.text, rep, charge, start.span)

    def parse_repexpr(self):
        left = self.parse_repterm()
        while self.peek().kind in ("otimes", "oplus"):
            op = self.next()
            right = self.parse_repterm()
            left = (reps.tensor(left, right) if op.kind == "otimes"
                    else reps.direct_sum(left, right))
        return left

    def parse_repterm(self):
        t = self.peek()
        if t.kind == "punct" and t.text == "(":
            self.next()
            inner = self.parse_repexpr()
            self.expect_punct(")")
            return inner
        if t.kind != "ident":
            self.error("expected a representation, found %r"
                       % (t.text or "end of input"))
        word = self.next()
        if word.text == "vector":
            return reps.vector()
        if word.text == "weyl_left":
            return reps.weyl_left()
        if word.text == "weyl_right":
            return reps.weyl_right()
        if word.text == "trivial":
            self.expect_punct("(")
            n = self.expect_int()
            self.expect_punct(")")
            return reps.trivial(n)
        if word.text in ("dual", "antisym2", "sym2"):
            self.expect_punct("(")
            inner = self.parse_repexpr()
            self.expect_punct(")")
            return {"dual": reps.dual, "antisym2": reps.antisym2,
                    "sym2": reps.sym2}[word.text](inner)
        self.error("unknown representation %r" % word.text, word.span)

    def parse_formula(self) -> FormulaStmt:
        start = self.next()
        name = self.expect_ident("formula name")
        self.expect_punct("=")
        expr = self.parse_expr()
        return FormulaStmt(name.text, expr, start.span)

    def parse_theory(self) -> TheoryStmt:
        start = self.next()
        name = self.expect_ident("theory name")
        self.expect_punct("{")
        names = []
        while self.peek().kind == "ident":
            names.append(self.next().text)
        self.expect_punct("}")
        kind = "equations"
        if self.at_keyword("equations", "density"):
            kind = self.next().text
        if not names:
            self.error("theory needs at least one formula", start.span)
        return TheoryStmt(name.text, tuple(names), kind, start.span)

    # -- expressions -----------------------------------------------------------

    def parse_expr(self):
        items = [self.parse_term()]
        while self.peek().kind == "punct" and self.peek().text in "+-":
            op = self.next()
            term = self.parse_term()
            items.append(Neg(term) if op.text == "-" else term)
        return items[0] if len(items) == 1 else Sum(tuple(items))

    def parse_term(self):
        items = [self.parse_factor()]
        while self.peek().kind == "punct" and self.peek().text == "*":
            self.next()
            items.append(self.parse_factor())
        return items[0] if len(items) == 1 else Prod(tuple(items))

    def parse_factor(self):
        t = self.peek()
        if t.kind == "punct" and t.text == "-":
            self.next()
            return Neg(self.parse_factor())
        if t.kind == "number":
            self.next()
            return Num(t.value)
        if t.kind == "punct" and t.text == "(":
            # try a parenthesised field expression first: (gamma[5] psi)[0]
            mark = self.pos
            try:
                return self.parse_atom()
            except ParseError:
                self.pos = mark
            self.next()
            inner = self.parse_expr()
            self.expect_punct(")")
            return inner
        return self.parse_atom()

    def parse_atom(self):
        span = self.peek().span
        vec = self.parse_vexpr()
        self.expect_punct("[")
        idx = self.expect_int()
        self.expect_punct("]")
        return Atom(vec, idx, span)

    def parse_vexpr(self):
        t = self.peek()
        if t.kind == "punct" and t.text == "(":
            self.next()
            inner = self.parse_vexpr()
            self.expect_punct(")")
            return inner
        if t.kind != "ident":
            self.error("expected a field expression, found %r"
                       % (t.text or "end of input"))
        word = self.next()
        if word.text in ("conj", "psibar"):
            self.expect_punct("(")
            name = self.expect_ident("field name")
            self.expect_punct(")")
            return (VConj if word.text == "conj" else VPsibar)(name.text)
        if word.text == "gamma":
            self.expect_punct("[")
            mu = self.expect_int()
            self.expect_punct("]")
            if mu not in (0, 1, 2, 3, 5):
                self.error("gamma index must be 0..3 or 5", word.span)
            return VGamma(mu, self.parse_vexpr())
        if word.text == "d":
            self.expect_punct("[")
            mu = self.expect_int()
            self.expect_punct("]")
            return VDeriv(mu, self.parse_vexpr())
        if word.text in KEYWORDS:
            self.error("%r is reserved" % word.text, word.span)
        return VField(word.text)


def parse(source: str):
    """Parse a theory file; returns (SourceSpec | None, diagnostics)."""
    try:
        tokens, diags = _lex(source)
        parser = _Parser(tokens)
        spec = parser.parse_spec()
        diags = diags + parser.diags
        if any(d.severity == "error" for d in diags):
            return None, diags
        return spec, diags
    except ParseError as exc:
        return None, [exc.diag]
    except RecursionError:
        return None, [Diagnostic("error", "input nests too deeply", Span(1, 1))]
    except Exception as exc:  # parser bugs surface as diagnostics, not crashes
        return None, [Diagnostic("error", "internal parser error: %s" % exc,
                                 Span(1, 1))]


# -- pretty printer -----------------------------------------------------------

def _print_vexpr(v) -> str:
    if isinstance(v, VField):
        return v.name
    if isinstance(v, VConj):
        return "conj(%s)" % v.name
    if isinstance(v, VPsibar):
        return "psibar(%s)" % v.name
    if isinstance(v, VGamma):
        return "gamma[%d] %s" % (v.mu, _print_vexpr(v.child))
    if isinstance(v, VDeriv):
        return "d[%d] %s" % (v.mu, _print_vexpr(v.child))
    raise TypeError(v)


def _print_scalar(value: QI) -> str:
    def frac(f: Fraction) -> str:
        return str(f.numerator) if f.denominator == 1 else "%d/%d" % (
            f.numerator, f.denominator)
    if value.im == 0:
        return frac(value.re)
    if value.re == 0:
        return ("i" if value.im == 1 else frac(value.im) + "i")
    raise ValueError("mixed literal should have been split")


def _print_expr(e, prec: int = 0) -> str:
    if isinstance(e, Num):
        v = e.value
        if v.re != 0 and v.im != 0:
            inner = "%s + %s" % (_print_scalar(QI(v.re)), _print_scalar(QI(0, v.im)))
            return "(%s)" % inner if prec > 0 else inner
        if (v.re < 0 or v.im < 0) and prec > 0:
            return "(%s)" % _print_scalar(v)
        return _print_scalar(v)
    if isinstance(e, Sum):
        parts = []
        for k, x in enumerate(e.items):
            if k and isinstance(x, Neg):
                parts.append(" - " + _print_expr(x.item, 2))
            elif k:
                parts.append(" + " + _print_expr(x, 1))
            else:
                parts.append(_print_expr(x, 1))
        s = "".join(parts)
        return "(%s)" % s if prec > 1 else s
    if isinstance(e, Prod):
        return "*".join(_print_expr(x, 2) for x in e.items)
    if isinstance(e, Neg):
        if isinstance(e.item, (Sum, Prod)):
            return "-(%s)" % _print_expr(e.item, 0)
        return "-" + _print_expr(e.item, 2)
    if isinstance(e, Atom):
        return "%s[%d]" % (_print_vexpr(e.vec), e.index)
    raise TypeError(e)


def pretty_print(spec: SourceSpec) -> str:
    lines = []
    if spec.space is not None:
        if spec.space.signature is not None:
            lines.append("space dim %d signature %d,%d"
                         % (spec.space.dim, *spec.space.signature))
        else:
            lines.append("space dim %d galilean" % spec.space.dim)
    for f in spec.fields:
        charge = " charge +" if f.charge == "+" else ""
        lines.append("field %s : %s%s" % (f.name, f.rep, charge))
    mode_name = {v: k for k, v in MODES.items()}[spec.mode]
    lines.append("mode %s" % mode_name)
    for f in spec.formulas:
        lines.append("formula %s = %s" % (f.name, _print_expr(f.expr)))
    for t in spec.theories:
        kind = "" if t.kind == "equations" else " " + t.kind
        lines.append("theory %s { %s }%s" % (t.name, " ".join(t.formulas), kind))
    return "\n".join(lines) + "\n"


# -- elaboration ---------------------------------------------------------------

@dataclass
class Model:
    spec: SourceSpec
    space: FieldSymbolSpace
    mode: str
    formulas: dict
    theories: dict
    group: str


def _field_indices(space: FieldSymbolSpace, decl: FieldDecl) -> int:
    from .reps import rep_dim
    n = rep_dim(decl.rep, space.d)
    return n // 2 if decl.charged else n


def elaborate(spec: SourceSpec):
    """Build the symbol space, formulas and theories; returns
    (Model | None, diagnostics)."""
    diags: list[Diagnostic] = []

    def fail(msg, span):
        diags.append(Diagnostic("error", msg, span))

    if spec.space is None:
        fail("no space declaration", Span(1, 1))
        return None, diags
    if spec.space.signature is not None:
        p, q = spec.space.signature
        try:
            st = Signature(p, q)
        except ValueError as exc:
            fail(str(exc), spec.space.span)
            return None, diags
    else:
        try:
            st = Galilean(spec.space.dim)
        except ValueError as exc:
            fail(str(exc), spec.space.span)
            return None, diags

    decls = []
    seen = set()
    has_spinor = False
    for f in spec.fields:
        if f.name in seen:
            fail("field %r declared twice" % f.name, f.span)
            continue
        seen.add(f.name)
        if reps.has_spinor(f.rep):
            has_spinor = True
            if not (isinstance(st, Signature) and st.p == 1 and st.q == 3):
                fail("Weyl spinors need signature 1,3", f.span)
        decls.append(FieldDecl(f.name, f.rep, charged=(f.charge == "+")))
    if diags:
        return None, diags
    if not decls:
        fail("no fields declared", Span(1, 1))
        return None, diags
    try:
        space = FieldSymbolSpace(st, tuple(decls))
    except AlgebraError as exc:
        fail(str(exc), spec.fields[0].span if spec.fields else Span(1, 1))
        return None, diags

    by_name = {f.name: f for f in decls}
    ctx = AlgebraContext(space, spec.mode)

    def linear_symbols(v, span):
        """Resolve a field expression to {index -> linear element map}."""
        if isinstance(v, VField):
            f = by_name.get(v.name)
            if f is None:
                fail("undeclared symbol %r" % v.name, span)
                return None, 0
            n = _field_indices(space, f)
            return (lambda a: ctx.sym("%s[%d]" % (v.name, a))), n
        if isinstance(v, VConj):
            f = by_name.get(v.name)
            if f is None:
                fail("undeclared symbol %r" % v.name, span)
                return None, 0
            n = _field_indices(space, f)
            if not f.charged:
                return (lambda a: ctx.sym("%s[%d]" % (v.name, a))), n
            return (lambda a: ctx.sym("conj(%s)[%d]" % (v.name, a))), n
        if isinstance(v, VPsibar):
            f = by_name.get(v.name)
            if f is None:
                fail("undeclared symbol %r" % v.name, span)
                return None, 0
            if not f.charged or _field_indices(space, f) != 4:
                fail("psibar needs a charged four-component spinor field", span)
                return None, 0
            g0 = gamma(0)

            def bar(a):
                out = ctx.zero()
                for b in range(4):
                    c = g0[b][a]
                    if c:
                        out = out + ctx.sym("conj(%s)[%d]" % (v.name, b)).scaled(c)
                return out
            return bar, 4
        if isinstance(v, VGamma):
            root = v.child
            while isinstance(root, (VGamma, VDeriv)):
                root = root.child
            rf = by_name.get(getattr(root, "name", None))
            if rf is None or not rf.charged or _field_indices(space, rf) != 4:
                fail("gamma acts on charged four-component spinor expressions",
                     span)
                return None, 0
            child, n = linear_symbols(v.child, span)
            if child is None:
                return None, 0
            mat = gamma(v.mu)

            def apply(a):
                out = ctx.zero()
                for b in range(4):
                    c = mat[a][b]
                    if c:
                        out = out + child(b).scaled(c)
                return out
            return apply, 4
        if isinstance(v, VDeriv):
            child, n = linear_symbols(v.child, span)
            if child is None:
                return None, 0

            def derived(a):
                el = child(a)
                terms = {}
                for mono, coeff in el.terms.items():
                    s = mono[0]
                    new = FieldSymbol(s.entry, tuple(sorted(s.derivs + (v.mu,))))
                    terms[(new,)] = terms.get((new,), QI(0)) + coeff
                return ctx.element(terms)
            return derived, n
        raise TypeError(v)

    def eval_expr(e) -> AlgebraElement | None:
        if isinstance(e, Num):
            return ctx.scalar(e.value)
        if isinstance(e, Sum):
            out = ctx.zero()
            for item in e.items:
                v = eval_expr(item)
                if v is None:
                    return None
                out = out + v
            return out
        if isinstance(e, Prod):
            out = ctx.one()
            for item in e.items:
                v = eval_expr(item)
                if v is None:
                    return None
                out = out * v
            return out
        if isinstance(e, Neg):
            v = eval_expr(e.item)
            return None if v is None else -v
        if isinstance(e, Atom):
            fn, n = linear_symbols(e.vec, e.span)
            if fn is None:
                return None
            if not 0 <= e.index < n:
                fail("index %d out of range for the rep dimension (%d components)"
                     % (e.index, n), e.span)
                return None
            return fn(e.index)
        raise TypeError(e)

    formulas = {}
    for f in spec.formulas:
        if f.name in formulas:
            fail("formula %r declared twice" % f.name, f.span)
            continue
        val = eval_expr(f.expr)
        if val is not None:
            formulas[f.name] = val
    if diags:
        return None, diags

    group = "cover" if has_spinor else "lorentz"
    theories = {}
    for t in spec.theories:
        gens = []
        missing = False
        for name in t.formulas:
            if name not in formulas:
                fail("theory %r uses unknown formula %r" % (t.name, name), t.span)
                missing = True
                continue
            gens.append(formulas[name])
        if missing:
            continue
        try:
            theories[t.name] = FormalTheory(t.name, space, spec.mode,
                                            tuple(gens), t.kind, group)
        except TheoryError as exc:
            fail(str(exc), t.span)
    if diags:
        return None, diags
    return Model(spec, space, spec.mode, formulas, theories, group), diags


def _atoms(e):
    if isinstance(e, Atom):
        yield e
    elif isinstance(e, (Sum, Prod)):
        for item in e.items:
            yield from _atoms(item)
    elif isinstance(e, Neg):
        yield from _atoms(e.item)


def load(source: str):
    """Parse and elaborate, collecting all diagnostics."""
    spec, diags = parse(source)
    if spec is None:
        return None, diags
    model, more = elaborate(spec)
    return model, diags + more
