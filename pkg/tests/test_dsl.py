import random

import pytest
from hypothesis import given, settings, strategies as st

from cptlab import corpus
from cptlab.dsl import (Diagnostic, elaborate, load, parse, pretty_print)
from cptlab.scalars import QI


CORPUS_SOURCES = [
    corpus.COMPLEX_SCALAR_SRC,
    corpus.KLEIN_GORDON_SRC,
    corpus.MAXWELL_SRC,
    corpus.DIRAC_EQUATION_SRC,
    corpus.DIRAC_CONSTRAINT_SRC,
    corpus.DIRAC_CONSTRAINT_COMMUTATIVE_SRC,
    corpus.DIRAC_LAGRANGIAN_SRC,
]


@pytest.mark.parametrize("src", CORPUS_SOURCES)
def test_corpus_round_trip(src):
    spec, diags = parse(src)
    assert spec is not None and not diags
    printed = pretty_print(spec)
    spec2, diags2 = parse(printed)
    assert spec2 is not None and not diags2
    assert spec2 == spec
    assert pretty_print(spec2) == printed


@pytest.mark.parametrize("src", CORPUS_SOURCES)
def test_corpus_elaborates(src):
    model, diags = load(src)
    assert model is not None, [str(d) for d in diags]
    assert model.theories


def test_printed_source_elaborates_identically():
    src = corpus.DIRAC_LAGRANGIAN_SRC
    model1, _ = load(src)
    spec, _ = parse(src)
    model2, _ = load(pretty_print(spec))
    (n1, t1), = model1.theories.items()
    (n2, t2), = model2.theories.items()
    assert n1 == n2
    assert [g.serialize() for g in t1.generators] == \
        [g.serialize() for g in t2.generators]


def test_diagnostics_have_spans():
    model, diags = load("space dim 4 signature 1,3\nfield u : vector\n"
                        "mode free\nformula f = u[7]\n")
    assert model is None
    assert diags
    for d in diags:
        assert d.span.line >= 1 and d.span.col >= 1
    assert "out of range" in diags[0].message


def test_undeclared_symbol():
    model, diags = load("space dim 4 signature 1,3\nfield u : vector\n"
                        "formula f = v[0]\n")
    assert model is None
    assert any("undeclared" in d.message for d in diags)


def test_parse_errors_recover_per_statement():
    src = ("space dim 4 signature 1,3\n"
           "field u : !!!\n"
           "field w : vector\n"
           "formula f = w[0]\n")
    spec, diags = parse(src)
    assert spec is None
    assert diags


def test_charge_and_weyl_guards():
    model, diags = load("space dim 3 signature 1,2\n"
                        "field psi : weyl_left charge +\n"
                        "formula f = psi[0]\n")
    assert model is None
    assert any("signature 1,3" in d.message for d in diags)
    model, diags = load("space dim 4 signature 1,3\n"
                        "field u : trivial(3) charge +\n"
                        "formula f = u[0]\n")
    assert model is None
    assert any("even-dimensional" in d.message for d in diags)


def test_theory_with_unknown_formula():
    model, diags = load("space dim 4 signature 1,3\nfield u : vector\n"
                        "formula f = u[0]\ntheory t { f g }\n")
    assert model is None
    assert any("unknown formula" in d.message for d in diags)


def test_literals():
    model, diags = load("space dim 4 signature 1,3\nfield u : vector\n"
                        "formula f = 3/2*u[0] + 2i*u[1] - i*u[2] + 1\n")
    assert model is not None
    s = model.formulas["f"].serialize()
    assert "(3/2)*u[0]" in s and "(2*i)*u[1]" in s and "(-i)*u[2]" in s


def test_gamma_and_conj_need_right_shapes():
    model, diags = load("space dim 4 signature 1,3\nfield u : vector\n"
                        "mode commutative\nformula f = (gamma[0] u)[0]\n")
    assert model is None
    assert any("four-component" in d.message or "spinor" in d.message
               for d in diags)
    # conj of a neutral field resolves to the field itself
    model, diags = load("space dim 4 signature 1,3\nfield u : vector\n"
                        "formula f = conj(u)[1] - u[1]\n")
    assert model is not None
    assert model.formulas["f"].is_zero_element


def test_fuzz_never_crashes():
    rng = random.Random(99)
    for _ in range(10000):
        n = rng.randrange(0, 60)
        raw = bytes(rng.randrange(256) for _ in range(n))
        try:
            text = raw.decode("utf-8", errors="replace")
        except Exception:
            continue
        spec, diags = parse(text)
        assert spec is not None or isinstance(diags, list)


@settings(max_examples=300, deadline=None)
@given(st.text(max_size=80))
def test_fuzz_text_never_crashes(text):
    spec, diags = parse(text)
    if spec is None:
        assert diags
