import math

import numpy as np
import pytest

from conftest import oracle_dense
from qmatball.qcore import (FOCK, Space, TensorExpression, compile_expr, dq_series_check,
                            essential_norm_estimate, essential_norm_schedule, lanczos_norm,
                            operator_norm, power_norm)
from qmatball.repcat import standard_catalog
from qmatball.repcat import GENERATORS

F = TensorExpression.fock


def test_norm_examples():
    assert operator_norm(F("S"), 0.5, 12) == pytest.approx(1.0, abs=1e-9)
    assert operator_norm(F("Dq"), 0.5, 12) == pytest.approx(1.0, abs=1e-9)
    target = max(abs(math.sqrt(1 - 0.25 ** (m + 1)) - 1) for m in range(11))
    assert target == pytest.approx(1 - math.sqrt(0.75))
    assert operator_norm(F("Cq S") - F("S"), 0.5, 12) == pytest.approx(target, abs=1e-9)


def test_lanczos_matches_dense_svd():
    e = F("S Cq", "Dq") + F("Sd", "S S", coeff=2) - F("P", "Cq")
    for N in (8, 24):
        op = compile_expr(e, 0.6, N)
        exact = np.linalg.norm(oracle_dense(e, 0.6, N), 2)
        assert lanczos_norm(op).value == pytest.approx(exact, rel=1e-9)
        assert power_norm(op).value == pytest.approx(exact, rel=1e-6)


def test_lanczos_is_lower_bound_on_large_space():
    e = F("Cq S", "Sd Cq", "Dq") - F("S", "P", "S")
    op = compile_expr(e, 0.5, 10)
    dense = np.linalg.norm(oracle_dense(e, 0.5, 10), 2)
    assert lanczos_norm(op).value <= dense * (1 + 1e-12)
    assert lanczos_norm(op).value == pytest.approx(dense, rel=1e-7)


def test_essential_examples():
    q = 0.5
    assert essential_norm_estimate(F("P", "P", "P"), q, 6, 1) == 0.0
    assert essential_norm_estimate(F("", "", ""), q, 6, 2) == pytest.approx(1.0, abs=1e-12)
    x = F("Dq Dq", "Dq Dq Dq Dq", "Dq Dq")
    assert essential_norm_estimate(x, q, 12, 4) == pytest.approx(q ** 8, abs=1e-12)
    with pytest.raises(ValueError):
        essential_norm_estimate(x, q, 6, 6)


def test_essential_matches_dense_compression():
    e = F("S", "Dq") + F("Cq", "Sd")
    N, cut = 7, 3
    sp = Space(e.kinds, N)
    keep = sp.tail_mask(cut).ravel()
    A = oracle_dense(e, 0.4, N)[np.ix_(keep, keep)]
    assert essential_norm_estimate(e, 0.4, N, cut) == pytest.approx(np.linalg.norm(A, 2), rel=1e-9)


def test_essential_nonincreasing_on_schedule():
    for rep in list(standard_catalog(math.pi / 3).values())[:2]:
        e = z11, z12, _, z22 = (rep.image(g) for g in GENERATORS)
        e = z11 * z22.adjoint() + z12
        if len(e.kinds) > 3:
            continue
        vals = list(essential_norm_schedule(e, 0.7, 10, (2, 4, 6)).values())
        assert all(b <= a + 1e-6 for a, b in zip(vals, vals[1:]))


def test_norm_monotone_in_N_on_catalog():
    for rep in standard_catalog(0.4).values():
        if len(rep.kinds) > 3:
            continue
        for g in GENERATORS:
            e = rep.image(g)
            assert operator_norm(e, 0.5, 6) <= operator_norm(e, 0.5, 12) + 1e-6


def test_dq_series_examples():
    q = 0.5
    assert dq_series_check(q, 8, 8) <= 1e-12
    assert dq_series_check(q, 8, 1) == pytest.approx(q, abs=1e-12)
    assert dq_series_check(0.01, 8, 3) < dq_series_check(0.1, 8, 3) < 1e-2
    with pytest.raises(ValueError):
        dq_series_check(q, 8, 9)
