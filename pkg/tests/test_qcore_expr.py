import cmath

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import oracle_dense
from strategies import expression_pairs, expressions
from qmatball import qsu
from qmatball.qcore import (CIRCLE, FOCK, Q, TensorExpression, circle_eval, lift_circle, num_equal,
                            q_limit, simplify, tau_eval)
from qmatball.qcore.expr import SignatureError

F = TensorExpression.fock


def test_adjoint_examples():
    assert F("S", "").adjoint() == F("Sd", "")
    T = qsu.base_rep()
    assert T[1][1].adjoint() == T[0][0]
    assert F("Cq S").adjoint() == F("Sd Cq")


def test_mul_identity_and_signature():
    b = F("S Cq", "Dq", coeff=Q)
    assert TensorExpression.identity(b.kinds) * b == b
    with pytest.raises(SignatureError):
        b * F("S")


def test_diagonal_products_commute_numerically():
    a, b = F("Dq"), F("Cq")
    assert a * b != b * a
    assert num_equal(a * b, b * a, 0.5, 6)
    assert np.allclose(oracle_dense(a * b, 0.5, 6), oracle_dense(b * a, 0.5, 6))


def test_t12_t21_commute():
    (_, T12), (T21, _) = qsu.base_rep()
    assert T12 * T21 == F("Dq Dq", coeff=-Q) == T21 * T12


def test_canonical_form_merges_and_orders():
    e = F("S") + F("Cq") + F("S")
    assert list(e.terms) == sorted(e.terms)
    assert e.terms[(("S",),)] == 2 * Q ** 0
    assert (e - e).is_zero()


def test_circle_atoms_rejected_on_fock_factor():
    with pytest.raises(ValueError):
        TensorExpression((FOCK,), {(("Z",),): 1})
    with pytest.raises(ValueError):
        TensorExpression((CIRCLE,), {(("S",),): 1})


def test_tau_examples():
    phi = 0.7
    T = qsu.base_rep()
    t11 = tau_eval(T[0][0], 0, phi)
    assert t11.kinds == () and complex(t11.terms[()].coeffs[0]) == pytest.approx(cmath.exp(-1j * phi))
    assert tau_eval(T[1][0], 0, phi).is_zero()
    assert tau_eval(T[0][1], 0, phi).is_zero()
    with pytest.raises(ValueError):
        tau_eval(TensorExpression((CIRCLE,), {(("Z",),): 1}), 0, phi)


def test_tau_at_zero_stays_exact():
    assert tau_eval(F("S", "Cq S"), 0, 0.0).is_exact


@given(expressions((FOCK, FOCK)), expressions((FOCK, FOCK)), st.floats(0, 6.2))
def test_tau_multiplicative(a, b, phi):
    lhs = tau_eval(a * b, 0, phi)
    rhs = tau_eval(a, 0, phi) * tau_eval(b, 0, phi)
    assert num_equal(lhs, rhs, 0.5, 8, tol=1e-10)


@given(expressions((FOCK, FOCK)), st.floats(0, 6.2))
def test_tau_adjoint_compatible(a, phi):
    assert num_equal(tau_eval(a.adjoint(), 0, phi), tau_eval(a, 0, phi).adjoint(), 0.5, 8, tol=1e-10)


@given(expression_pairs())
def test_adjoint_is_involutive_antihomomorphism(pair):
    a, b = pair
    assert a.adjoint().adjoint() == a
    assert (a * b).adjoint() == b.adjoint() * a.adjoint()
    assert (a + b).adjoint() == a.adjoint() + b.adjoint()


@given(expression_pairs(max_terms=2))
def test_adjoint_matches_dense_conjugate_transpose(pair):
    a, _ = pair
    assert np.allclose(oracle_dense(a.adjoint(), 0.6, 5), oracle_dense(a, 0.6, 5).conj().T)


def test_simplify_rules():
    assert simplify(F("Sd S")) == F("")
    assert simplify(F("P S")).is_zero()
    assert simplify(F("Sd P")).is_zero()
    assert simplify(F("P P")) == F("P")
    z = TensorExpression((CIRCLE,), {(("Z", "Zbar"),): 1})
    assert simplify(z) == TensorExpression.identity((CIRCLE,))


def test_q_limit_of_base_entries():
    T = qsu.base_rep()
    assert q_limit(T[1][1]) == F("S")  # (I - P) S = S since P S = 0
    assert q_limit(T[0][0]) == F("Sd")
    assert q_limit(T[1][0]) == F("P")
    assert q_limit(T[0][1]).is_zero()
    with pytest.raises(ValueError):
        q_limit(F("S", coeff=Q ** -1))


def test_circle_eval_and_lift():
    e = TensorExpression((CIRCLE, FOCK), {(("Z",), ("S",)): 2})
    v = circle_eval(e, 0, np.pi / 2)
    assert complex(v.terms[(("S",),)].coeffs[0]) == pytest.approx(2j)
    assert lift_circle(e) == F("S", "S", coeff=2)
