"""Built-in example theories with their expected verdicts.

Each entry carries a theory-file source (when the surface language can
express it), a semantic builder, and a runner that performs the entry's
distinctive checks against the recorded expectations.  The acceptance suite
and the `examples` command drive this registry.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable

from . import linalg as la
from .actions import (action_from_matrices, classical_action,
                      holomorphic_structure_action, quantum_action)
from .algebra import (COMMUTATIVE, AlgebraContext, FieldSymbolSpace,
                      conjugation_C, hash_involution, star_involution)
from .dsl import load
from .gammas import gamma
from .lorentz import SIG13, pt_representative, total_reflection_lift
from .reps import antisym2, vector
from .scalars import QI
from .theories import (FiniteTransform, affine_membership, check_invariance,
                       counterexample_2d, counterexample_galilean,
                       orthochronous_invariance, theorem_harness)


@dataclass
class EntryReport:
    name: str
    passed: bool
    lines: list

    def to_json(self):
        return {"example": self.name,
                "verdict": "pass" if self.passed else "fail",
                "checks": self.lines}


@dataclass
class CorpusEntry:
    name: str
    title: str
    source: str | None
    expected: dict
    run: Callable[[int, int], EntryReport] = dc_field(repr=False, default=None)


def _model(source: str):
    model, diags = load(source)
    if model is None:
        raise RuntimeError("corpus source failed to load: %s"
                           % "; ".join(str(d) for d in diags))
    return model


# -- sources -------------------------------------------------------------------

COMPLEX_SCALAR_SRC = """\
space dim 4 signature 1,3
field phi : trivial(2) charge +
mode commutative
formula f = i*phi[0]
theory scalar { f }
"""

KLEIN_GORDON_SRC = """\
space dim 4 signature 1,3
field phi : trivial(2) charge +
mode commutative
formula lag = d[0] conj(phi)[0]*d[0] phi[0] - d[1] conj(phi)[0]*d[1] phi[0] \
- d[2] conj(phi)[0]*d[2] phi[0] - d[3] conj(phi)[0]*d[3] phi[0] \
- conj(phi)[0]*phi[0]
theory kg { lag } density
"""


def _maxwell_source() -> str:
    pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    pidx = {p: k for k, p in enumerate(pairs)}
    lines = ["space dim 4 signature 1,3",
             "field F : antisym2(vector)",
             "field J : vector",
             "mode commutative"]
    names = []
    for a in range(4):
        terms = []
        for b in range(4):
            if b == a:
                continue
            if a < b:
                terms.append("d[%d] F[%d]" % (b, pidx[(a, b)]))
            else:
                terms.append("- d[%d] F[%d]" % (b, pidx[(b, a)]))
        expr = " + ".join(terms).replace("+ -", "-") + " - J[%d]" % a
        names.append("mx%d" % a)
        lines.append("formula mx%d = %s" % (a, expr))
    lines.append("theory maxwell { %s }" % " ".join(names))
    return "\n".join(lines) + "\n"


MAXWELL_SRC = _maxwell_source()


def _dirac_equation_source() -> str:
    lines = ["space dim 4 signature 1,3",
             "field psi : weyl_right (+) weyl_left charge +",
             "mode supercommutative"]
    names = []
    for a in range(4):
        terms = ["-i*(gamma[%d] d[%d] psi)[%d]" % (mu, mu, a) for mu in range(4)]
        lines.append("formula deq%d = %s + psi[%d]" % (a, " + ".join(terms), a))
        names.append("deq%d" % a)
    lines.append("theory dirac { %s }" % " ".join(names))
    return "\n".join(lines) + "\n"


DIRAC_EQUATION_SRC = _dirac_equation_source()

DIRAC_CONSTRAINT_SRC = """\
space dim 4 signature 1,3
field psi : weyl_right (+) weyl_left charge +
mode supercommutative
formula con = psibar(psi)[0]*psi[0] + psibar(psi)[1]*psi[1] \
+ psibar(psi)[2]*psi[2] + psibar(psi)[3]*psi[3] - 1
theory constraint { con }
"""

DIRAC_CONSTRAINT_COMMUTATIVE_SRC = DIRAC_CONSTRAINT_SRC.replace(
    "mode supercommutative", "mode commutative")


def _dirac_lagrangian_source() -> str:
    lines = ["space dim 4 signature 1,3",
             "field psi : weyl_right (+) weyl_left charge +",
             "mode supercommutative"]
    terms = []
    for mu in range(4):
        for a in range(4):
            terms.append("1/2i*psibar(psi)[%d]*(gamma[%d] d[%d] psi)[%d]"
                         % (a, mu, mu, a))
            terms.append("- 1/2i*(d[%d] psibar(psi))[%d]*(gamma[%d] psi)[%d]"
                         % (mu, a, mu, a))
    for a in range(4):
        terms.append("- psibar(psi)[%d]*psi[%d]" % (a, a))
    expr = " ".join(t if t.startswith("-") else ("+ " + t) for t in terms)[2:]
    lines.append("formula lag = " + expr)
    lines.append("theory dirac_lagrangian { lag } density")
    return "\n".join(lines) + "\n"


DIRAC_LAGRANGIAN_SRC = _dirac_lagrangian_source()


# -- runners -------------------------------------------------------------------

def _run_complex_scalar(samples: int, seed: int) -> EntryReport:
    model = _model(COMPLEX_SCALAR_SRC)
    space = model.space
    F = model.formulas["f"]
    ctx = AlgebraContext(space, COMMUTATIVE)
    pt = pt_representative(SIG13)
    got = {
        "classical PT": classical_action(space, pt).apply(F),
        "quantum CPT": quantum_action(space, pt).apply(F),
        "classical CPT": conjugation_C(hash_involution(space),
                                       classical_action(space, pt).apply(F)),
        "quantum PT": conjugation_C(hash_involution(space),
                                    quantum_action(space, pt).apply(F)),
    }
    want = {
        "classical PT": ctx.sym("phi[0]").scaled(QI(0, 1)),
        "quantum CPT": ctx.sym("conj(phi)[0]").scaled(QI(0, -1)),
        "classical CPT": ctx.sym("conj(phi)[0]").scaled(QI(0, 1)),
        "quantum PT": ctx.sym("phi[0]").scaled(QI(0, -1)),
    }
    lines = []
    ok = True
    for key in want:
        hit = got[key] == want[key]
        ok = ok and hit
        lines.append("%s: i*phi[0] -> %s [%s]"
                     % (key, got[key].serialize(), "ok" if hit else "MISMATCH"))
    return EntryReport("complex-scalar", ok, lines)


def _run_kg(samples: int, seed: int) -> EntryReport:
    model = _model(KLEIN_GORDON_SRC)
    t = model.theories["kg"]
    rep = theorem_harness(t, "cpt", star_involution(model.space),
                          samples=min(3, samples), premise_samples=min(6, samples),
                          seed=seed)
    lines = ["theorem: %s" % rep.theorem,
             "classification: %s" % rep.classification]
    ok = rep.passed and rep.classification.startswith("CPT")
    return EntryReport("complex-scalar-density", ok, lines)


def _maxwell_theory(pseudo: bool):
    model = _model(MAXWELL_SRC)
    return model.space, model.theories["maxwell"]


def _pseudo_pt_action(space: FieldSymbolSpace):
    """The contrast rep of Example-style pseudo-vectors: the current picks up
    the component sign character at the PT element."""
    from .reps import evaluate
    pt = pt_representative(SIG13)
    inv = pt.inverse().matrix
    v_f = evaluate(antisym2(vector()), inv, 4)
    v_j = la.mat_scale(QI(-1), evaluate(vector(), inv, 4))
    return action_from_matrices(space, la.mat_blockdiag([v_f, v_j]),
                                pt.matrix, name="pseudo PT")


def _run_maxwell_tensor(samples: int, seed: int) -> EntryReport:
    space, t = _maxwell_theory(pseudo=False)
    inv = orthochronous_invariance(t, samples=samples, seed=seed)
    pt = pt_representative(SIG13)
    ptrep = check_invariance(t, [FiniteTransform(
        "classical PT", lambda x: classical_action(space, pt).apply(x))])
    lines = ["orthochronous invariance: %s" % inv.passed,
             "exact PT element: %s" % ptrep.passed]
    return EntryReport("maxwell-tensor", inv.passed and ptrep.passed, lines)


def _run_maxwell_pseudo(samples: int, seed: int) -> EntryReport:
    space, t = _maxwell_theory(pseudo=True)
    inv = orthochronous_invariance(t, samples=max(3, samples // 5), seed=seed)
    rep = check_invariance(t, [FiniteTransform("pseudo-vector PT",
                                               _pseudo_pt_action(space).apply)])
    lines = ["orthochronous invariance: %s" % inv.passed,
             "pseudo-vector PT fails as expected: %s" % (not rep.passed)]
    return EntryReport("maxwell-pseudo", inv.passed and not rep.passed, lines)


def _reflection_lifts():
    one = la.identity(2)
    mone = la.mat_scale(QI(-1), la.identity(2))
    from .lorentz import CoverElement
    return [CoverElement(one, mone), CoverElement(mone, one)]


def _run_dirac_equation(samples: int, seed: int) -> EntryReport:
    model = _model(DIRAC_EQUATION_SRC)
    t = model.theories["dirac"]
    inv = orthochronous_invariance(t, samples=max(3, samples // 5), seed=seed)
    lines = ["orthochronous invariance: %s" % inv.passed]
    ok = inv.passed
    for c in _reflection_lifts():
        rep = check_invariance(t, [FiniteTransform(
            "holomorphic PT", holomorphic_structure_action(model.space, c).apply)])
        ok = ok and rep.passed
        lines.append("gamma5 reflection lift maps equations into themselves: %s"
                     % rep.passed)
    return EntryReport("dirac-equation", ok, lines)


def _run_dirac_constraint(samples: int, seed: int) -> EntryReport:
    model = _model(DIRAC_CONSTRAINT_SRC)
    t = model.theories["constraint"]
    c = _reflection_lifts()[0]
    img = holomorphic_structure_action(model.space, c).apply(t.generators[0])
    member = affine_membership(img, t).member
    lines = ["image under the gamma5 map: %s" % img.serialize(),
             "not a member (the map is not a symmetry): %s" % (not member)]
    return EntryReport("dirac-constraint", not member, lines)


def _run_dirac_lagrangian(samples: int, seed: int) -> EntryReport:
    model = _model(DIRAC_LAGRANGIAN_SRC)
    t = model.theories["dirac_lagrangian"]
    rep = theorem_harness(t, "cpt", star_involution(model.space),
                          samples=min(2, samples), premise_samples=min(4, samples),
                          seed=seed)
    lines = ["premises: %s" % ", ".join("%s=%s" % (p.name, p.ok) for p in rep.premises),
             "conclusion at the exact lift (i,i): %s" % rep.passed,
             "classification: %s" % rep.classification]
    ok = rep.passed and rep.classification.startswith("CPT")
    return EntryReport("dirac-lagrangian", ok, lines)


def _run_dirac_commutative(samples: int, seed: int) -> EntryReport:
    model = _model(DIRAC_CONSTRAINT_COMMUTATIVE_SRC)
    t = model.theories["constraint"]
    space = model.space
    ctx = AlgebraContext(space, COMMUTATIVE)
    tr = total_reflection_lift()
    img = conjugation_C(star_involution(space),
                        classical_action(space, tr).apply(t.generators[0]))
    # -(psibar psi) - 1, i.e. the incompatible equation -psibar psi = 1
    g0 = gamma(0)
    bar = ctx.zero()
    for c in range(4):
        for b in range(4):
            if g0[c][b]:
                bar = bar + (ctx.sym("conj(psi)[%d]" % c)
                             * ctx.sym("psi[%d]" % b)).scaled(g0[c][b])
    expected = -bar - ctx.one()
    member = affine_membership(img, t).member
    lines = ["CPT image: %s" % img.serialize(),
             "equals -(psibar psi) - 1: %s" % (img == expected),
             "membership fails (sign obstruction): %s" % (not member)]
    ok = (img == expected) and not member
    return EntryReport("dirac-commutative-constraint", ok, lines)


def _run_2d(samples: int, seed: int) -> EntryReport:
    rep = counterexample_2d(samples=max(4, samples // 10), seed=seed)
    lines = [rep.obstruction] + ["%s: %s" % (n, "ok" if ok else "FAIL")
                                 for n, ok, _ in rep.checks]
    return EntryReport("counterexample-2d", rep.passed, lines)


def _run_galilean(samples: int, seed: int) -> EntryReport:
    rep = counterexample_galilean(3, samples=max(4, samples // 10), seed=seed)
    lines = [rep.obstruction] + ["%s: %s" % (n, "ok" if ok else "FAIL")
                                 for n, ok, _ in rep.checks]
    return EntryReport("counterexample-galilean", rep.passed, lines)


def builtin_examples() -> dict:
    """The corpus registry; every entry records its expected outcomes."""
    entries = [
        CorpusEntry(
            "complex-scalar", "the four transformations of i*phi",
            COMPLEX_SCALAR_SRC,
            {"classical PT": "i*phi", "quantum CPT": "-i*conj(phi)",
             "classical CPT": "i*conj(phi)", "quantum PT": "-i*phi"},
            _run_complex_scalar),
        CorpusEntry(
            "complex-scalar-density", "charged Klein-Gordon density",
            KLEIN_GORDON_SRC,
            {"harness": "quantum CPT invariance holds",
             "classification": "conjugating"},
            _run_kg),
        CorpusEntry(
            "maxwell-tensor", "Maxwell equations, tensor current",
            MAXWELL_SRC,
            {"orthochronous": "pass", "PT": "pass"},
            _run_maxwell_tensor),
        CorpusEntry(
            "maxwell-pseudo", "Maxwell equations, pseudo-vector current",
            MAXWELL_SRC,
            {"orthochronous": "pass", "PT": "fail"},
            _run_maxwell_pseudo),
        CorpusEntry(
            "dirac-equation", "Dirac equation under the gamma5 reflection",
            DIRAC_EQUATION_SRC,
            {"holomorphic PT": "maps the generator set into itself"},
            _run_dirac_equation),
        CorpusEntry(
            "dirac-constraint", "psibar psi = 1 under the gamma5 reflection",
            DIRAC_CONSTRAINT_SRC,
            {"holomorphic PT": "not a symmetry"},
            _run_dirac_constraint),
        CorpusEntry(
            "dirac-lagrangian", "Hermitian Dirac density, supercommutative",
            DIRAC_LAGRANGIAN_SRC,
            {"harness": "CPT theorem passes at the exact lift",
             "classification": "conjugating"},
            _run_dirac_lagrangian),
        CorpusEntry(
            "dirac-commutative-constraint",
            "psibar psi = 1 with commuting spinors",
            DIRAC_CONSTRAINT_COMMUTATIVE_SRC,
            {"CPT image": "-(psibar psi) = 1, incompatible"},
            _run_dirac_commutative),
        CorpusEntry(
            "counterexample-2d", "two-dimensional null-weight scalar",
            None,
            {"orthochronous": "pass", "PT": "alpha^4 = -1 obstruction"},
            _run_2d),
        CorpusEntry(
            "counterexample-galilean", "Galilean flow equation",
            None,
            {"orthochronous": "pass", "time reversal": "fails for all candidates"},
            _run_galilean),
    ]
    return {e.name: e for e in entries}
