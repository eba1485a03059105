from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qmatball.qcore import ONE, Q, LaurentScalar, minus_q_power, scalar_eval


def test_scalar_eval_examples():
    assert scalar_eval(1 - Q * Q, 0.5) == pytest.approx(0.75, abs=0)
    assert scalar_eval(Q - Q ** -1, 0.5) == -1.5
    assert scalar_eval(minus_q_power(1 - 2), 0.5) == -2.0


def test_scalar_eval_domain():
    for q in (0.0, 1.0, -0.2, 1.5):
        with pytest.raises(ValueError):
            scalar_eval(Q, q)


def test_zero_coefficients_dropped():
    s = (Q + 1) - Q
    assert s == ONE and s.coeffs == {0: Fraction(1)}
    assert (Q - Q).is_zero()


laurents = st.dictionaries(st.integers(-4, 4), st.fractions(min_value=-20, max_value=20, max_denominator=7),
                           max_size=4).map(LaurentScalar)
qs = st.sampled_from([Fraction(1, 3), Fraction(1, 2), Fraction(7, 10), Fraction(9, 10)])


def exact(s, q):
    return sum((c * q ** k for k, c in s.coeffs.items()), Fraction(0))


@given(laurents, laurents, qs)
def test_arithmetic_is_exact(a, b, q):
    assert exact(a * b, q) == exact(a, q) * exact(b, q)
    assert exact(a + b, q) == exact(a, q) + exact(b, q)
    assert exact(a - b, q) == exact(a, q) - exact(b, q)


@given(laurents, laurents, qs)
def test_scalar_eval_multiplicative(a, b, q):
    lhs = scalar_eval(a * b, float(q))
    rhs = scalar_eval(a, float(q)) * scalar_eval(b, float(q))
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


@given(laurents, st.integers(-3, 3))
def test_power_and_hash(a, n):
    if a.is_zero() and n < 0:
        return
    if n < 0 and len(a.coeffs) != 1:
        return
    b = a ** n
    assert b == LaurentScalar.coerce(b)
    assert hash(a * ONE) == hash(a)


@given(st.integers(-6, 6))
def test_minus_q_power(k):
    assert scalar_eval(minus_q_power(k), 0.5) == pytest.approx((-0.5) ** k, rel=1e-15)
