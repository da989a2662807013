"""Formal field theories as finitely generated complex affine subspaces.

A theory is a non-empty generator list; the represented set is the affine
span {sum a_i g_i : sum a_i = 1}.  Equation-set theories implicitly contain
zero, making the span a complex subspace.  Membership is decided exactly by
Gaussian elimination over Gaussian rationals, or in float mode by least
squares with a residual threshold.

The theorem harnesses check the premises of the invariance theorems
(orthochronous invariance through all Lie generators exactly plus sampled
finite elements, the spin-statistics mode, Hermiticity where required) and
then assert the concluded non-orthochronous invariance at the exact
representative and at sampled products.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from . import linalg as la
from .algebra import (COMMUTATIVE, SUPER, AlgebraContext, AlgebraElement,
                      AlgebraError, FieldSymbolSpace, InvolutionSpec,
                      conjugation_C, dagger, strong_reflection)
from .actions import (CONJUGATING, PRESERVING, action_from_matrices,
                      classical_action, classify_transform,
                      holomorphic_structure_action, infinitesimal_action)
from .lorentz import (COVER_ANTI_A, COVER_ORTHO, CoverElement, Galilean,
                      Signature, galilean_sample, galilean_time_reversal,
                      lie_basis, pt_representative, sample_cover,
                      sample_proper_ortho, total_reflection_lift)
from .reps import is_complex_rep
from .scalars import QI, scalar_str

DEFAULT_TOL = 1e-9
SUPPORT_CAP = 20000


class TheoryError(ValueError):
    pass


@dataclass(frozen=True)
class FormalTheory:
    """Finitely many generators spanning a complex affine subspace."""

    name: str
    space: FieldSymbolSpace
    mode: str
    generators: tuple[AlgebraElement, ...]
    kind: str = "equations"           # "equations" | "density"
    group: str = "lorentz"            # "lorentz" | "cover"

    def __post_init__(self):
        if not self.generators:
            raise TheoryError("a theory needs at least one generator")
        for g in self.generators:
            if g.space is not self.space or g.mode != self.mode:
                raise TheoryError("generators share one space and mode")
        if self.kind not in ("equations", "density"):
            raise TheoryError("interpretation tag must be equations or density")

    def effective_generators(self) -> tuple[AlgebraElement, ...]:
        """Generators of the affine span; equation sets include zero."""
        if self.kind == "equations":
            ctx = AlgebraContext(self.space, self.mode)
            return self.generators + (ctx.zero(),)
        return self.generators


@dataclass
class Membership:
    member: bool
    certificate: Optional[list] = None
    residual: Optional[float] = None

    def describe(self) -> str:
        if self.member and self.certificate is not None:
            return "certificate [%s]" % ", ".join(scalar_str(c) for c in self.certificate)
        if self.member:
            return "residual %.3g" % self.residual
        if self.residual is not None:
            return "no affine combination (residual %.3g)" % self.residual
        return "no affine combination"


def _coords(elements, cap=None):
    cap = SUPPORT_CAP if cap is None else cap
    monos = set()
    for e in elements:
        monos.update(e.monomials())
    if len(monos) > cap:
        raise TheoryError("monomial support %d exceeds the cap %d" % (len(monos), cap))
    order = sorted(monos, key=lambda m: (len(m), m))
    index = {m: i for i, m in enumerate(order)}
    return order, index


def _all_exact(elements) -> bool:
    return all(isinstance(c, QI) for e in elements for c in e.terms.values())


def affine_membership(F: AlgebraElement, theory: FormalTheory,
                      tol: float = DEFAULT_TOL) -> Membership:
    """Decide membership of F in the affine span of the theory's generators."""
    gens = theory.effective_generators()
    if F.space is not theory.space or F.mode != theory.mode:
        raise TheoryError("formula lives in a different algebra")
    order, index = _coords(gens + (F,))
    m = len(order)
    if _all_exact(gens + (F,)):
        cols = []
        for g in gens:
            col = [QI(0)] * (m + 1)
            for mono, c in g.terms.items():
                col[index[mono]] = c
            col[m] = QI(1)
            cols.append(col)
        rhs = [QI(0)] * (m + 1)
        for mono, c in F.terms.items():
            rhs[index[mono]] = c
        rhs[m] = QI(1)
        sol = la.solve_exact(cols, rhs)
        if sol is None:
            return Membership(False)
        return Membership(True, certificate=sol)
    a = np.zeros((m + 1, len(gens)), dtype=complex)
    for j, g in enumerate(gens):
        for mono, c in g.terms.items():
            a[index[mono], j] = c.to_complex() if isinstance(c, QI) else c
        a[m, j] = 1.0
    rhs = np.zeros(m + 1, dtype=complex)
    for mono, c in F.terms.items():
        rhs[index[mono]] = c.to_complex() if isinstance(c, QI) else c
    rhs[m] = 1.0
    sol, *_ = np.linalg.lstsq(a, rhs, rcond=None)
    residual = float(np.max(np.abs(a @ sol - rhs))) if m else 0.0
    return Membership(residual <= tol, certificate=None, residual=residual)


def direction_membership(F: AlgebraElement, theory: FormalTheory,
                         tol: float = DEFAULT_TOL) -> Membership:
    """Membership of F in the direction space span{g_i - g_0} of the span."""
    gens = theory.effective_generators()
    base = gens[0]
    dirs = [g - base for g in gens[1:]]
    order, index = _coords(tuple(dirs) + (F,))
    m = len(order)
    if _all_exact(tuple(dirs) + (F,)):
        cols = []
        for g in dirs:
            col = [QI(0)] * m
            for mono, c in g.terms.items():
                col[index[mono]] = c
            cols.append(col)
        rhs = [QI(0)] * m
        for mono, c in F.terms.items():
            rhs[index[mono]] = c
        if not cols:
            return Membership(not F.terms, certificate=[])
        sol = la.solve_exact(cols, rhs)
        if sol is None:
            return Membership(False)
        return Membership(True, certificate=sol)
    a = np.zeros((m, max(len(dirs), 1)), dtype=complex)
    for j, g in enumerate(dirs):
        for mono, c in g.terms.items():
            a[index[mono], j] = c.to_complex() if isinstance(c, QI) else c
    rhs = np.zeros(m, dtype=complex)
    for mono, c in F.terms.items():
        rhs[index[mono]] = c.to_complex() if isinstance(c, QI) else c
    sol, *_ = np.linalg.lstsq(a, rhs, rcond=None)
    residual = float(np.max(np.abs(a @ sol - rhs))) if m else 0.0
    return Membership(residual <= tol, residual=residual)


# -- transformations ----------------------------------------------------------

@dataclass
class FiniteTransform:
    name: str
    fn: Callable[[AlgebraElement], AlgebraElement]


@dataclass
class InfinitesimalTransform:
    name: str
    x_matrix: object
    dv_matrix: object = None    # optional override of d rho(X) on V


@dataclass
class TransformVerdict:
    name: str
    passed: bool
    details: list

    def to_json(self):
        return {"name": self.name, "verdict": "pass" if self.passed else "fail",
                "details": self.details}


@dataclass
class InvarianceReport:
    theory: str
    verdicts: list

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def to_json(self):
        return {"theory": self.theory,
                "transformations": [v.to_json() for v in self.verdicts],
                "verdict": "pass" if self.passed else "fail"}


def check_invariance(theory: FormalTheory, transformations,
                     tol: float = DEFAULT_TOL) -> InvarianceReport:
    verdicts = []
    for tr in transformations:
        details = []
        ok = True
        if isinstance(tr, InfinitesimalTransform):
            for i, g in enumerate(theory.generators):
                img = infinitesimal_action(theory.space, tr.x_matrix, g,
                                           dv_matrix=tr.dv_matrix)
                res = direction_membership(img, theory, tol)
                if res.member:
                    details.append("generator %d: %s" % (i, res.describe()))
                else:
                    ok = False
                    details.append("generator %d: image %s not in direction space"
                                   % (i, img.serialize()))
        else:
            for i, g in enumerate(theory.generators):
                img = tr.fn(g)
                res = affine_membership(img, theory, tol)
                if res.member:
                    details.append("generator %d: %s" % (i, res.describe()))
                else:
                    ok = False
                    witness = img.serialize() if len(img.terms) <= 12 else "(large image)"
                    details.append("generator %d: image %s is not a member" % (i, witness))
        verdicts.append(TransformVerdict(tr.name, ok, details))
    return InvarianceReport(theory.name, verdicts)


def is_hermitian(theory: FormalTheory, dollar: InvolutionSpec,
                 tol: float = DEFAULT_TOL) -> InvarianceReport:
    """$-Hermiticity: invariance under dagger_$ = S o C_$."""
    tr = FiniteTransform("dagger_%s" % dollar.name, lambda x: dagger(dollar, x))
    return check_invariance(theory, [tr], tol)


# -- orthochronous premise -----------------------------------------------------

def _ortho_samples(theory: FormalTheory, samples: int, seed: int):
    out = []
    if theory.group == "cover":
        for k in range(samples):
            c = sample_cover(seed * 1000 + k, COVER_ORTHO)
            out.append((("cover sample %d" % k), c))
    else:
        sig = theory.space.spacetime
        for k in range(samples):
            out.append((("sample %d" % k), sample_proper_ortho(seed * 1000 + k, sig)))
    return out


def orthochronous_invariance(theory: FormalTheory, samples: int = 25, seed: int = 1,
                             tol: float = DEFAULT_TOL) -> InvarianceReport:
    """The theorems' premise: exact infinitesimal invariance on every Lie
    generator plus sampled finite confirmation."""
    space = theory.space
    if isinstance(space.spacetime, Galilean):
        raise TheoryError("use the Galilean counterexample driver")
    sig = space.spacetime
    transforms = [InfinitesimalTransform("lie generator %d" % i, x)
                  for i, x in enumerate(lie_basis(sig))]
    for label, g in _ortho_samples(theory, samples, seed):
        transforms.append(FiniteTransform(
            label, lambda x, g=g: classical_action(space, g).apply(x)))
    return check_invariance(theory, transforms, tol)


# -- harnesses ----------------------------------------------------------------

THEOREM_KINDS = ("pt", "sr", "cpt", "holpt")


@dataclass
class Premise:
    name: str
    ok: bool
    detail: str = ""

    def to_json(self):
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class HarnessReport:
    theory: str
    theorem: str
    premises: list
    applicable: bool
    conclusion: Optional[InvarianceReport]
    classification: Optional[str]
    notes: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.applicable and self.conclusion is not None and self.conclusion.passed

    def to_json(self):
        out = {"theory": self.theory, "theorem": self.theorem,
               "premises": [p.to_json() for p in self.premises],
               "applicable": self.applicable,
               "classification": self.classification,
               "verdict": ("pass" if self.passed else
                           ("not applicable" if not self.applicable else "fail"))}
        if self.conclusion is not None:
            out["transformations"] = self.conclusion.to_json()["transformations"]
        if self.notes:
            out["notes"] = self.notes
        return out


def _all_even(theory: FormalTheory) -> bool:
    return all(e.grade == 0 for e in theory.space.entries)


def _holomorphic_subalgebra(theory: FormalTheory) -> bool:
    for g in theory.generators:
        for mono in g.monomials():
            for s in mono:
                if theory.space.sector(s.entry) != "+":
                    return False
    return True


def exact_pt_element(theory: FormalTheory):
    if theory.group == "cover":
        return total_reflection_lift()
    return pt_representative(theory.space.spacetime)


def _conclusion_elements(theory: FormalTheory, samples: int, seed: int):
    base = exact_pt_element(theory)
    out = [("exact representative", base)]
    for label, h in _ortho_samples(theory, samples, seed + 7):
        out.append(("representative * %s" % label, base.compose(h)))
    return out


def theorem_harness(theory: FormalTheory, kind: str,
                    dollar: Optional[InvolutionSpec] = None,
                    samples: int = 5, premise_samples: int = 10,
                    seed: int = 3, tol: float = DEFAULT_TOL,
                    force: bool = False) -> HarnessReport:
    """Check a theorem's premises, then assert its conclusion.

    kind "pt": the classical PT theorem for tensor theories.
    kind "sr": strong reflection invariance (tensor or spinor version).
    kind "cpt": the general PT/CPT theorem for an involution $.
    kind "holpt": the holomorphic PT theorem for complex spinor reps.

    With force=True the conclusion is evaluated even when premises fail,
    to exhibit the obstruction.
    """
    if kind not in THEOREM_KINDS:
        raise TheoryError("unknown theorem kind %r" % kind)
    premises = []
    notes = []
    theorem_name = {"pt": "classical PT", "sr": "strong reflection",
                    "cpt": "PT/CPT for $=%s" % (dollar.name if dollar else "?"),
                    "holpt": "holomorphic PT"}[kind]

    if kind == "pt":
        ok = _all_even(theory) and theory.group == "lorentz"
        premises.append(Premise("tensorial (true representation)", ok,
                                "all symbols even" if ok else "odd symbols present"))
    elif kind in ("sr", "cpt"):
        if theory.mode == SUPER:
            premises.append(Premise("spin-statistics (supercommutative)", True))
        elif theory.mode == COMMUTATIVE and _all_even(theory):
            premises.append(Premise("spin-statistics (commutative tensors)", True))
        elif theory.mode == COMMUTATIVE:
            premises.append(Premise(
                "spin-statistics", False,
                "odd symbols forced to commute violate the spin-statistics mode"))
        else:
            premises.append(Premise("spin-statistics", False,
                                    "free mode carries no commutation law"))
    elif kind == "holpt":
        ok_rep = all(is_complex_rep(f.rep) for f in theory.space.fields)
        ok_sub = _holomorphic_subalgebra(theory)
        premises.append(Premise("complex representation", ok_rep))
        premises.append(Premise("holomorphic subalgebra", ok_sub,
                                "" if ok_sub else "anti-linear symbols appear"))
        if theory.group != "cover":
            premises.append(Premise("spinorial group", False, "declare the cover"))

    inv = orthochronous_invariance(theory, premise_samples, seed, tol)
    premises.append(Premise("orthochronous invariance", inv.passed,
                            "" if inv.passed else "premise invariance fails"))

    if kind == "cpt":
        if dollar is None:
            raise TheoryError("the PT/CPT theorem needs an involution $")
        herm = is_hermitian(theory, dollar, tol)
        premises.append(Premise("$-Hermitian", herm.passed,
                                "" if herm.passed else
                                "theory is not dagger_%s-invariant" % dollar.name))

    applicable = all(p.ok for p in premises)
    if not applicable and not force:
        return HarnessReport(theory.name, theorem_name, premises, False, None, None,
                             ["theorem not applicable"])

    space = theory.space
    transforms = []
    if kind == "holpt":
        lifts = [("lift (1,-1)", CoverElement(la.identity(2),
                                              la.mat_scale(QI(-1), la.identity(2)))),
                 ("lift (-1,1)", CoverElement(la.mat_scale(QI(-1), la.identity(2)),
                                              la.identity(2)))]
        for k in range(samples):
            lifts.append(("sampled (A,-conj A) %d" % k,
                          sample_cover(seed * 99 + k, COVER_ANTI_A)))
        for label, c in lifts:
            transforms.append(FiniteTransform(
                "rho_hol at %s" % label,
                lambda x, c=c: holomorphic_structure_action(space, c).apply(x)))
    else:
        for label, g in _conclusion_elements(theory, samples, seed):
            if kind == "pt":
                fn = lambda x, g=g: classical_action(space, g).apply(x)
                nm = "classical action at %s" % label
            elif kind == "sr":
                fn = lambda x, g=g: strong_reflection(classical_action(space, g).apply(x))
                nm = "S o rho' at %s" % label
            else:
                fn = lambda x, g=g, dollar=dollar: conjugation_C(
                    dollar, classical_action(space, g).apply(x))
                nm = "C_%s o rho' at %s" % (dollar.name, label)
            transforms.append(FiniteTransform(nm, fn))

    conclusion = check_invariance(theory, transforms, tol)

    classification = None
    if kind in ("pt", "cpt"):
        g = exact_pt_element(theory)
        if kind == "pt":
            concluded = lambda x: classical_action(space, g).apply(x)
        else:
            concluded = lambda x: conjugation_C(dollar, classical_action(space, g).apply(x))
        try:
            label = classify_transform(space, concluded)
            classification = {PRESERVING: "PT (charge-preserving)",
                              CONJUGATING: "CPT (charge-conjugating)"}.get(label, label)
        except AlgebraError as exc:
            classification = "unclassifiable: %s" % exc
    if not applicable:
        notes.append("premises fail; conclusion evaluated under force")
    return HarnessReport(theory.name, theorem_name, premises, applicable,
                         conclusion, classification, notes)


# -- counterexamples -----------------------------------------------------------

@dataclass
class ScenarioReport:
    name: str
    checks: list            # (label, passed, detail)
    obstruction: str = ""

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def to_json(self):
        return {"scenario": self.name, "obstruction": self.obstruction,
                "checks": [{"name": n, "ok": ok, "detail": d}
                           for n, ok, d in self.checks],
                "verdict": "pass" if self.passed else "fail"}


def counterexample_2d(alphas=(1, -1, 2, -2, Fraction(1, 2), Fraction(-1, 2)),
                      samples: int = 10, seed: int = 5) -> ScenarioReport:
    """The two-dimensional failure: Phi^3 d_xi Phi = 1 under the boost-weight
    representation admits no real PT scalar (the obstruction alpha^4 = -1)."""
    from .algebra import FieldDecl
    from .reps import trivial

    sig = Signature(1, 1)
    space = FieldSymbolSpace(sig, (FieldDecl("phi", trivial(1)),))
    ctx = AlgebraContext(space, COMMUTATIVE)
    phi = ctx.sym("phi[0]")
    dxi = ctx.sym("phi[0]", (0,)) + ctx.sym("phi[0]", (1,))
    gen = phi * phi * phi * dxi - ctx.one()
    theory = FormalTheory("2d-null-weight", space, COMMUTATIVE, (gen,), "equations")

    checks = []
    # exact infinitesimal invariance under the boost, with d rho(K) = 1/4
    boost = ((QI(0), QI(1)), (QI(1), QI(0)))
    quarter = ((QI(Fraction(1, 4)),),)
    img = infinitesimal_action(space, boost, gen, dv_matrix=quarter)
    res = direction_membership(img, theory)
    checks.append(("boost generator (exact, weight 1/4)", res.member, res.describe()))
    # sampled finite boosts
    rng = np.random.default_rng(seed)
    for k in range(samples):
        t = float(rng.normal(0, 1.2))
        omega = np.array([[np.cosh(t), np.sinh(t)], [np.sinh(t), np.cosh(t)]])
        v = np.array([[np.exp(-t / 4.0)]])
        a = action_from_matrices(space, v, omega, name="boost sample")
        res = affine_membership(a.apply(gen), theory)
        checks.append(("boost sample %d" % k, res.member, res.describe()))
    # PT candidates: scalar alpha on V, total reflection on M
    reflect = ((QI(-1), QI(0)), (QI(0), QI(-1)))
    failures = []
    for alpha in alphas:
        for label, anti in (("classical", False), ("quantum", True)):
            a = action_from_matrices(space, ((QI(alpha),),), reflect,
                                     antilinear=anti, name="PT candidate")
            image = a.apply(gen)
            res = affine_membership(image, theory)
            ok = not res.member
            failures.append(ok)
            checks.append(("%s PT candidate alpha=%s fails" % (label, alpha), ok,
                           "image %s" % image.serialize()))
    obstruction = ("transformed generator equals -(alpha^4) * phi^3 d_xi phi - 1; "
                   "membership forces alpha^4 = -1, impossible for real alpha")
    return ScenarioReport("2d", checks, obstruction)


def counterexample_galilean(d: int = 3, alphas=(1, -1, 2, -2),
                            samples: int = 8, seed: int = 6) -> ScenarioReport:
    """The Galilean failure: d_t Phi = Phi with vanishing spatial gradient is
    invariant under rotations and boosts but under no time-reversing map."""
    from .algebra import FieldDecl
    from .reps import trivial

    st = Galilean(d)
    space = FieldSymbolSpace(st, (FieldDecl("phi", trivial(1)),))
    ctx = AlgebraContext(space, COMMUTATIVE)
    gens = [ctx.sym("phi[0]", (0,)) - ctx.sym("phi[0]")]
    for i in range(1, d):
        gens.append(ctx.sym("phi[0]", (i,)))
    theory = FormalTheory("galilean-flow", space, COMMUTATIVE, tuple(gens),
                          "equations")
    checks = []
    # exact Galilean boost: t -> t, x -> x + v t with integer v
    boost = [[QI(1 if i == j else 0) for j in range(d)] for i in range(d)]
    for i in range(1, d):
        boost[i][0] = QI(i)  # velocity (1, 2, ...)
    boost = tuple(tuple(r) for r in boost)
    ident = ((QI(1),),)
    a = action_from_matrices(space, ident, boost, name="exact boost")
    ok = all(affine_membership(a.apply(g), theory).member for g in theory.generators)
    checks.append(("exact integer boost", ok, "symbolic membership"))
    # sampled rotations + boosts
    for k in range(samples):
        omega = galilean_sample(seed * 100 + k, st)
        a = action_from_matrices(space, np.array([[1.0]]), omega, name="sample")
        ok = all(affine_membership(a.apply(g), theory).member
                 for g in theory.generators)
        checks.append(("rotation/boost sample %d" % k, ok, ""))
    # time-reversing candidates
    trev = galilean_time_reversal(st)
    for alpha in alphas:
        for label, anti in (("classical", False), ("quantum", True)):
            a = action_from_matrices(space, ((QI(alpha),),), trev,
                                     antilinear=anti, name="T candidate")
            image = a.apply(theory.generators[0])
            res = affine_membership(image, theory)
            ok = not res.member
            checks.append(("%s time reversal alpha=%s fails" % (label, alpha), ok,
                           "image %s" % image.serialize()))
    obstruction = ("the image of d_t Phi - Phi needs a coefficient a0 with "
                   "a0 = alpha and a0 = -alpha on the two monomials; "
                   "impossible for alpha != 0")
    return ScenarioReport("galilean", checks, obstruction)


def report_to_text(obj) -> str:
    return json.dumps(obj.to_json(), indent=2)
