from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qsubfactor.errors import DomainError
from qsubfactor.qnum import LaurentPoly, bar_symmetric, evaluate, qint

Q = LaurentPoly.monomial(1)


def polys(lo=-6, hi=6):
    return st.dictionaries(st.integers(lo, hi), st.integers(-5, 5), max_size=5).map(LaurentPoly)


def test_qint_examples():
    assert qint(1) == LaurentPoly.constant(1)
    assert qint(2) == LaurentPoly({-1: 1, 1: 1})
    assert qint(3) == LaurentPoly({-2: 1, 0: 1, 2: 1})


def test_qint_matches_division_oracle():
    # (q^-n - q^n) = (q^-1 - q) [n]_q, checked by exact multiplication
    for n in range(1, 10):
        assert (Q.bar() - Q) * qint(n) == LaurentPoly({-n: 1, n: -1})


@pytest.mark.parametrize("n", [0, -1, -5])
def test_qint_domain(n):
    with pytest.raises(DomainError):
        qint(n)


def test_eval_examples():
    assert evaluate(qint(1), 0.3) == 1.0
    assert evaluate(qint(2), 0.5) == 2.5
    assert abs(evaluate(qint(3), 1 - 1e-8) - 3.0) < 1e-6


@pytest.mark.parametrize("q", [0.0, 1.0, -0.2, 1.5])
def test_eval_domain(q):
    with pytest.raises(DomainError):
        evaluate(qint(2), q)


def test_bar_symmetric_examples():
    assert all(bar_symmetric(qint(n)) for n in range(1, 13))
    assert not bar_symmetric(Q)
    assert bar_symmetric(LaurentPoly())


def test_canonical_form():
    p = LaurentPoly({0: 0, 2: Fraction(0), 3: 1})
    assert p.coeffs == {3: 1}
    assert (Q - Q).is_zero() and (Q - Q).coeffs == {}


def test_text_and_json():
    assert qint(3).to_text() == "q^-2 + 1 + q^2"
    assert qint(2).to_text() == "q^-1 + q"
    assert (qint(2) ** 2).to_text() == "q^-2 + 2 + q^2"
    assert LaurentPoly({-1: Fraction(-1, 2), 0: 3}).to_text() == "-(1/2)q^-1 + 3"
    assert LaurentPoly().to_text() == "0"
    p = LaurentPoly({-3: Fraction(2, 7), 4: -1})
    assert p.to_json() == {"-3": "2/7", "4": "-1"}
    assert LaurentPoly.from_json(p.to_json()) == p


@given(polys(), polys(), polys())
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("n", range(2, 15))
def test_q2_telescoping(n):
    assert qint(2) * qint(n) == qint(n - 1) + qint(n + 1)


@given(polys(-10, 10), polys(-10, 10), st.floats(0.3, 0.95))
def test_eval_is_ring_homomorphism(a, b, q):
    def scale(p):
        return sum(abs(float(c)) * q**k for k, c in p) or 1.0

    prod = evaluate(a * b, q)
    assert abs(prod - evaluate(a, q) * evaluate(b, q)) <= 1e-12 * scale(a) * scale(b)
    assert abs(evaluate(a + b, q) - evaluate(a, q) - evaluate(b, q)) <= 1e-12 * (scale(a) + scale(b))
