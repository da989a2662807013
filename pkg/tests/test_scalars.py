from fractions import Fraction

from hypothesis import given, strategies as st

from cptlab.scalars import QI, as_scalar, conj, is_zero, scalar_str

rationals = st.fractions(max_denominator=40)
gaussians = st.builds(QI, rationals, rationals)


def test_basic_arithmetic():
    a = QI(Fraction(1, 2), Fraction(-3, 4))
    b = QI(2, 1)
    assert a + b == QI(Fraction(5, 2), Fraction(1, 4))
    assert a * QI(0, 1) == QI(Fraction(3, 4), Fraction(1, 2))
    assert (a / a) == QI(1)
    assert a - a == QI(0)
    assert (QI(3) / QI(2)) == QI(Fraction(3, 2))


def test_conjugate_and_power():
    z = QI(2, 5)
    assert conj(z) == QI(2, -5)
    assert z ** 3 == z * z * z
    assert QI(0, 1) ** 2 == QI(-1)


def test_promotion():
    assert as_scalar(3) == QI(3)
    assert isinstance(as_scalar(0.5), complex)
    assert QI(1, 1) + 0.5 == 1.5 + 1j


def test_strings():
    assert scalar_str(QI(Fraction(3, 2))) == "3/2"
    assert scalar_str(QI(0, 1)) == "i"
    assert scalar_str(QI(0, -1)) == "-i"
    assert scalar_str(QI(Fraction(-3, 2), Fraction(1, 3))) == "-3/2+1/3*i"
    assert scalar_str(QI(1, -2)) == "1-2*i"
    assert scalar_str(QI(0)) == "0"


def test_is_zero():
    assert is_zero(QI(0))
    assert not is_zero(QI(0, Fraction(1, 10 ** 12)))
    assert is_zero(1e-12, tol=1e-9)


@given(gaussians, gaussians, gaussians)
def test_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * (b * c) == (a * b) * c
    assert a + b == b + a
    assert conj(a * b) == conj(a) * conj(b)


@given(gaussians)
def test_division_inverts(a):
    if a:
        assert (a / a) == QI(1)
        assert a * (QI(1) / a) == QI(1)
