import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qmatball import polmat as pm
from qmatball.polmat import Gen, z, zs
from qmatball.qcore import ONE, Q, FOCK, Space, TensorExpression, apply, compile_expr, num_equal, residual
from qmatball.repcat import coherent_rep, fock_rep

QS = (0.3, 0.5, 0.7, 0.9)
free_elements = st.integers(0, 2 ** 31).map(lambda s: pm.random_element(np.random.default_rng(s), max_degree=2))


def test_explicit_relation_list():
    rels = pm.explicit_relations_n2()
    assert len(rels) == 16
    els = [r.element for r in rels]
    assert any(pm.proportional(e, z(1, 1) * z(2, 1) - Q * z(2, 1) * z(1, 1)) for e in els)
    target = zs(2, 2) * z(2, 2) - Q * Q * z(2, 2) * zs(2, 2) - (1 - Q * Q)
    assert target in els


def test_r_matrix_table():
    assert pm.r_matrix(1, 2, 1, 2) == Q ** -1
    assert pm.r_matrix(1, 1, 1, 1) == ONE
    assert pm.r_matrix(1, 1, 2, 2) == -(Q ** -2 - 1)
    assert pm.r_matrix(2, 2, 1, 1).is_zero()
    assert pm.r_matrix(1, 2, 2, 1).is_zero()


def test_generated_relation_examples():
    rels = {r.label: r.element for r in pm.generated_relations(2)}
    assert rels["holo-q a=1,alpha=1,b=1,beta=2"] == z(1, 1) * z(1, 2) - Q * z(1, 2) * z(1, 1)
    target = zs(2, 2) * z(2, 2) - Q * Q * z(2, 2) * zs(2, 2) - (1 - Q * Q)
    assert rels["mixed b=2,beta=2,a=2,alpha=2"] == target
    (disc,) = pm.generated_relations(1)
    assert disc.element == zs(1, 1) * z(1, 1) - Q * Q * z(1, 1) * zs(1, 1) - (1 - Q * Q)
    with pytest.raises(ValueError):
        pm.generated_relations(4)


def test_generated_relations_n3_are_distinct_and_nonzero():
    rels = pm.generated_relations(3)
    assert all(not r.element.is_zero() for r in rels)
    assert len({r.label for r in rels}) == len(rels)


def test_matching():
    gen, exp = pm.generated_relations(2), pm.explicit_relations_n2()
    rep = pm.match_relation_sets(gen, pm.star_closure(exp))
    assert rep.complete and not rep.unmatched_a and not rep.unmatched_b
    same = pm.match_relation_sets(exp, exp)
    assert same.complete and all(a == b for a, b in same.pairs)
    scaled = [pm.Relation(r.label, r.element.scale(Q ** 3)) if i == 0 else r for i, r in enumerate(exp)]
    assert pm.match_relation_sets(scaled, exp).complete
    short = pm.match_relation_sets(exp[:-1], exp)
    assert not short.complete and len(short.unmatched_b) == 1


def test_relations_json():
    data = json.loads(pm.relations_to_json(pm.explicit_relations_n2()))
    assert len(data) == 16 and {"label", "terms"} <= set(data[0])


def test_monomial_and_grade():
    assert pm.monomial(np.zeros((2, 2), int)) == pm.FreeElement.unit() and pm.grade(np.zeros((2, 2))) == 0
    E11 = [[1, 0], [0, 0]]
    assert pm.monomial(E11) == z(1, 1) and pm.grade(E11) == 1
    A = [[1, 0], [0, 2]]
    assert pm.monomial(A) == z(2, 2) ** 2 * z(1, 1) and pm.grade(A) == 3
    with pytest.raises(ValueError):
        pm.monomial([[-1, 0], [0, 0]])


@given(st.lists(st.integers(0, 2), min_size=4, max_size=4), st.lists(st.integers(0, 2), min_size=4, max_size=4))
def test_grade_additive(a, b):
    A, B = np.reshape(a, (2, 2)), np.reshape(b, (2, 2))
    assert (pm.monomial(A) * pm.monomial(B)).degree == pm.grade(A) + pm.grade(B)


def test_psi():
    x = pm.element_x()
    e = pm.random_element(np.random.default_rng(3))
    assert pm.psi_automorphism((0.0, 0.0), e) == e
    for phis in ((0.4, 1.1), (math.pi / 3, 0.0)):
        assert pm.psi_automorphism(phis, x) == x
        assert pm.psi_automorphism(phis, x, index="upper") == x


def test_psi_preserves_relations_under_fock():
    pi = fock_rep()
    for r in pm.explicit_relations_n2():
        e = pm.psi_automorphism((0.7, -0.3), r.element)
        assert residual(pm.evaluate(e, pi), 0.5, 8, trials=2) <= 1e-9, r.label


def test_zeta_image():
    assert pm.zeta_image(Gen(1, 1)) == (-(Q ** -1), (3, 3))
    assert pm.zeta_image(Gen(2, 2)) == (ONE, (4, 4))
    assert pm.zeta_image(Gen(1, 2)) == (-(Q ** -1), (3, 4))
    with pytest.raises(ValueError):
        pm.zeta_image(Gen(1, 1, True))


def test_evaluate_unit_and_missing_symbol():
    pi = fock_rep()
    assert pm.evaluate(pm.FreeElement.unit(), pi) == TensorExpression.identity(pi.kinds)
    with pytest.raises(KeyError):
        pm.evaluate(z(1, 1), {Gen(2, 2): TensorExpression.fock("S")})


def test_element_x_expansion():
    x = pm.element_x()
    a, b, c = z(2, 1) * zs(2, 1), z(2, 2) * zs(2, 2), z(1, 2) * zs(1, 2)
    words = {w for e in (a, b, c, a * c, a * b, b * c, b * b) for w in e.terms} | {()}
    assert set(x.terms) == words and len(x) == 8
    assert x.terms[b.terms.popitem()[0]] == -2 * ONE


def test_x_self_adjoint_under_fock():
    E = pm.evaluate(pm.element_x(), fock_rep())
    assert num_equal(E, E.adjoint(), 0.5, 8)


@pytest.mark.parametrize("kjm", [(0, 0, 0), (0, 1, 0), (1, 0, 0), (0, 0, 1), (2, 1, 1), (1, 2, 3)])
def test_coherent_monomial(kjm):
    k, j, m = kjm
    mono, c = pm.coherent_monomial(k, j, m)
    assert mono.degree == k + j + m
    q = 0.6
    sp = Space((FOCK,) * 3, 8)
    out = apply(pm.evaluate(mono, coherent_rep(0.0)), q, sp.vacuum(), sp)
    assert np.allclose(out, c(q) * sp.basis(k, j, m), atol=1e-13)
    if kjm == (0, 1, 0) or kjm == (1, 0, 0):
        assert c(q) == pytest.approx(math.sqrt(1 - q * q))


def test_monomials_linearly_independent():
    pi = fock_rep()
    grades = [A for A in (np.array(t).reshape(2, 2) for t in np.ndindex(3, 3, 3, 3)) if A.sum() <= 2]
    ops = [pm.evaluate(pm.monomial(A) * pm.monomial(B).adjoint(), pi)
           for A in grades for B in grades if A.sum() + B.sum() <= 2]
    assert len(ops) == 45
    sp = Space(pi.kinds, 6)
    rng = np.random.default_rng(0)
    probes = [np.where(sp.fock_mask([3] * 4), rng.standard_normal(sp.dims), 0) + 0j for _ in range(3)]
    M = np.array([np.concatenate([apply(e, 0.5, v, sp).ravel() for v in probes]) for e in ops])
    assert np.linalg.matrix_rank(M, tol=1e-8) == len(ops)


@given(free_elements, free_elements)
def test_free_adjoint_antihomomorphism(a, b):
    assert a.adjoint().adjoint() == a
    assert (a * b).adjoint() == b.adjoint() * a.adjoint()


@given(free_elements, free_elements)
def test_evaluate_is_star_homomorphism(a, b):
    pi = coherent_rep(0.0)
    assert pm.evaluate(a * b, pi) == pm.evaluate(a, pi) * pm.evaluate(b, pi)
    assert pm.evaluate(a.adjoint(), pi) == pm.evaluate(a, pi).adjoint()
    assert pm.evaluate(a + b, pi) == pm.evaluate(a, pi) + pm.evaluate(b, pi)


def test_scaled():
    assert pm.scaled(z(1, 1) * zs(1, 1) + z(2, 2)) == (Q * Q) * z(1, 1) * zs(1, 1) + z(2, 2)
    assert pm.scaled(z(1, 1), Q) == Q * z(1, 1)
