import math

import pytest

from qmatball import limitlab as ll
from qmatball import polmat as pm
from qmatball.polmat import z
from qmatball.qcore import Q, TensorExpression, operator_norm, simplify

F = TensorExpression.fock


@pytest.mark.parametrize("kw", [dict(qs=(0.0,)), dict(qs=()), dict(N=3), dict(grid=2), dict(tol=0.0),
                                dict(cuts=(12,)), dict(rhs_N=8)])
def test_sweep_config_validation(kw):
    with pytest.raises(ValueError):
        ll.SweepConfig(**kw)


def test_reference_N_defaults_to_twice_N():
    assert ll.SweepConfig(N=10).reference_N == 20
    assert ll.SweepConfig(N=10, rhs_N=14).reference_N == 14


@pytest.fixture(scope="module")
def table():
    return ll.limit_distance_table(ll.SweepConfig())


def _value(rows, gen, comp, q):
    (v,) = [r["value"] for r in rows if (r["generator"], r["component"], r["q"]) == (gen, comp, q)]
    return v


def test_z22_distance(table):
    assert _value(table, "z_2^2", "xi+phi", 0.5) == pytest.approx(1 - math.sqrt(0.75), abs=1e-9)


def test_z21_distance_bound(table):
    for q in ll.DEFAULT_QS:
        v = _value(table, "z_2^1", "xi+phi", q)
        assert v <= max(q, 1 - math.sqrt(1 - q * q)) + 1e-9 <= q + q * q + 1e-9


def test_omega0_z11_limit_decreases(table):
    vals = [_value(table, "z_1^1", "omega0", q) for q in ll.DEFAULT_QS]
    assert vals == sorted(vals) and vals[0] < 0.15


def test_limit_sweep_report(table):
    rep = ll.limit_sweep_report(ll.SweepConfig(), table)
    assert rep.passed, [(c.name, c.value) for c in rep.failures()]


def test_dq_square_series():
    for q in (0.3, 0.9):
        assert ll.dq_square_series_check(q, 8, 8) <= 1e-12
        assert ll.dq_square_series_check(q, 8, 0) == pytest.approx(q * q, abs=1e-12)
    with pytest.raises(ValueError):
        ll.dq_square_series_check(0.5, 8, 9)


def test_gap_projection_is_vacuum_projection():
    kx, kp = ll._w_components()[0].kinds, ll._w_components()[1].kinds
    targets = (TensorExpression.product(kx, ["", "", "P"]), TensorExpression.product(kp, ["P", "", ""]))
    for w, t in zip(ll._w_components(), targets):
        assert operator_norm(TensorExpression.identity(w.kinds) - w * w.adjoint() - t, 0.5, 8) <= 1e-12


@pytest.mark.parametrize("q", [0.3, 0.5, 0.7, 0.9])
def test_generation_identities(q):
    rep = ll.generation_identities_check(q)
    assert rep.passed, [(c.name, c.value) for c in rep.failures()]


def test_series_report():
    assert ll.series_report((0.5,), 8).passed


def test_norm_inequality_examples():
    cfg = ll.SweepConfig(qs=(0.5,), N=10, rhs_N=12)
    els = [pm.FreeElement.unit(), z(2, 2), pm.element_x()]
    rep = ll.norm_inequality_sample(cfg, els)
    assert [c.passed for c in rep.checks] == [True, True, False]
    unit, z22, x = (c.detail for c in rep.checks)
    assert unit["rhs"] == pytest.approx(1.0, abs=1e-12) and max(unit["estimates"]) == pytest.approx(1.0, abs=1e-12)
    bound = max(math.sqrt(1 - 0.25 ** m) for m in range(1, 13))
    assert max(z22["estimates"]) <= z22["rhs"] + 1e-12 and z22["rhs"] <= bound + 1e-12 < 1
    # x is compact modulo the boundary: the cut-c surrogate is exactly q^(2c) and tends to 0,
    # while the boundary norm vanishes, so every finite cut reports a positive excess
    assert x["estimates"] == pytest.approx([0.5 ** (2 * c) for c in cfg.cuts], rel=1e-9)
    assert 0 <= x["rhs"] < 1e-12


def test_norm_inequality_sample_is_seeded():
    cfg = ll.SweepConfig(qs=(0.7,), N=8, samples=3, cuts=(2, 4))
    a, b = ll.sample_elements(cfg), ll.sample_elements(cfg)
    assert a == b and len(a) == 3 and all(e.degree <= 3 for e in a)
    r1, r2 = ll.norm_inequality_sample(cfg), ll.norm_inequality_sample(cfg)
    assert [c.to_json() for c in r1.checks] == [c.to_json() for c in r2.checks]


def test_continuity_examples():
    rows = ll.continuity_sweep(z(1, 1), (0.5, 0.5), N=8)
    assert rows == [{"q": 0.5, "s": 0.5, "omega0": 0.0, "xi+phi": 0.0}]
    qs = (0.3, 0.5, 0.7, 0.9)
    rows = ll.continuity_sweep(z(2, 2), qs, N=12)
    for r in rows:
        assert r["omega0"] <= abs(r["q"] ** 2 - r["s"] ** 2) + 1e-9
    dev = {(r["q"], r["s"]): r["omega0"] for r in rows}
    for q in qs:
        for s in qs:
            for t in qs:
                # moving s away from q on one side increases the deviation; across sides it need not
                if q not in (s, t) and (s - q) * (t - q) > 0 and abs(q - s) < abs(q - t):
                    assert dev[tuple(sorted((q, s)))] <= dev[tuple(sorted((q, t)))] + 1e-9


def test_phi0_and_x_images():
    assert ll.phi0_images_check(12, 4).passed
    for q in (0.3, 0.9):
        assert ll.omega_x_check(q).passed


def test_scaled_generator_matches_transform():
    assert pm.scaled(z(1, 1)) == (-Q) * z(1, 1)
