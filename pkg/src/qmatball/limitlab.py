"""The q -> 0 laboratory.

Distances from the (scaled) generator images to their limit operators,
the series identities behind the generation argument, the norm inequality
between the coherent representation modulo compacts and the boundary
families, and continuity sweeps in ``q``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import polmat
from .polmat import FreeElement, Gen
from .qcore import (CIRCLE, FOCK, LinearCombination, Q, Space, TensorExpression, compile_expr,
                    essential_norm_estimate, num_equal, operator_norm, q_limit, residual, simplify)
from .qcore.norms import estimate_norm
from .repcat import (GENERATORS, Z11_SCALE, b0_generators, coherent_rep, limit_generators,
                     lifted_limit_pairs, omega0_limits, phi_rep, scaled_images, xi_rep)
from .report import Report

DEFAULT_QS = (0.1, 0.3, 0.5, 0.7, 0.9)


@dataclass(frozen=True)
class SweepConfig:
    qs: tuple[float, ...] = DEFAULT_QS
    N: int = 12
    grid: int = 8
    trials: int = 4
    tol: float = 1e-9
    seed: int = 0
    cuts: tuple[int, ...] = (2, 4, 6)
    samples: int = 50
    max_degree: int = 3
    #: truncation used for the right-hand side of the norm inequality
    rhs_N: int | None = None

    def __post_init__(self):
        if not self.qs or any(not 0 < q < 1 for q in self.qs):
            raise ValueError("every q must lie in (0, 1)")
        if self.N < 4 or self.grid < 4:
            raise ValueError("need N >= 4 and grid >= 4")
        if self.tol <= 0 or self.trials <= 0 or self.samples < 0:
            raise ValueError("tol and trials must be positive")
        if any(not 0 <= c < self.N for c in self.cuts):
            raise ValueError("cuts must satisfy 0 <= cut < N")
        if self.rhs_N is not None and self.rhs_N < self.N:
            raise ValueError("rhs_N must be at least N")

    @property
    def reference_N(self) -> int:
        return self.rhs_N if self.rhs_N is not None else 2 * self.N


def gen_label(g: Gen) -> str:
    return f"z_{g.a}^{g.alpha}"


# ---------------------------------------------------------------------------
# limit distances

def limb0_reference() -> dict[Gen, TensorExpression]:
    """Limits of the scaled coherent images, typed in.

    ``z_1^2`` carries ``P`` in the middle leg next to a first-leg shift and
    ``z_2^1`` next to a last-leg shift, matching the ``Omega_0`` images.
    """
    f = TensorExpression.fock
    return {Gen(1, 1): f("S", "Sd", "S"), Gen(1, 2): f("S", "P", ""),
            Gen(2, 1): f("", "P", "S"), Gen(2, 2): f("", "S", "")}


def limit_distance_table(cfg: SweepConfig = SweepConfig()) -> list[dict]:
    """Rows ``{generator, component, q, N, value}``; ``z_1^1`` is scaled by ``-q``."""
    comps = {
        "xi": (xi_rep(), {g: pair[0] for g, pair in limit_generators().items()}),
        "phi": (phi_rep(), {g: pair[1] for g, pair in limit_generators().items()}),
        "omega0": (coherent_rep(0.0), omega0_limits()),
    }
    rows = []
    for g in GENERATORS:
        for q in cfg.qs:
            vals = {}
            for name, (rep, lims) in comps.items():
                diff = scaled_images(rep)[g] - lims[g]
                vals[name] = operator_norm(diff, q, cfg.N, cfg.grid, seed=cfg.seed)
            vals["xi+phi"] = max(vals["xi"], vals["phi"])
            for name in ("xi", "phi", "xi+phi", "omega0"):
                rows.append({"generator": gen_label(g), "component": name, "q": q, "N": cfg.N,
                             "value": vals[name]})
    return rows


def limit_sweep_report(cfg: SweepConfig = SweepConfig(), rows: list[dict] | None = None) -> Report:
    """Envelope ``<= 2q``, monotonicity in ``q`` and the ``q = 0.1`` bound."""
    rows = rows if rows is not None else limit_distance_table(cfg)
    rep = Report("limit sweep", meta={"N": cfg.N, "grid": cfg.grid, "qs": list(cfg.qs)})
    series: dict[tuple[str, str], list[tuple[float, float]]] = {}
    for r in rows:
        series.setdefault((r["generator"], r["component"]), []).append((r["q"], r["value"]))
    for (g, comp), pts in sorted(series.items()):
        pts.sort()
        env = max(v - 2 * q for q, v in pts)
        rep.add(f"{g}/{comp} distance <= 2q", max(env, 0.0), 1e-12, worst_excess=env)
        # nonincreasing as q decreases: violations of v(q_k) <= v(q_{k+1})
        mono = max((a[1] - b[1] for a, b in zip(pts, pts[1:])), default=0.0)
        rep.add(f"{g}/{comp} monotone in q", max(mono, 0.0), 1e-9)
        small = [v for q, v in pts if abs(q - 0.1) < 1e-12]
        if small:
            rep.add(f"{g}/{comp} distance at q=0.1", small[0], 0.15)
    return rep


# ---------------------------------------------------------------------------
# series and generation identities

def _w_components() -> tuple[TensorExpression, TensorExpression]:
    """``Z_1^1 Z_2^2`` on the two summands, simplified."""
    lim = limit_generators()
    return tuple(simplify(lim[Gen(1, 1)][k] * lim[Gen(2, 2)][k]) for k in (0, 1))


def _dq2_targets() -> tuple[TensorExpression, TensorExpression]:
    kx, kp = (CIRCLE, FOCK, FOCK), (FOCK, FOCK, CIRCLE)
    p = TensorExpression.product
    return p(kx, ["", "", "Dq Dq"]), p(kp, ["Dq Dq", "", ""])


def dq_square_series_partial(K: int) -> tuple[TensorExpression, TensorExpression]:
    """``sum_{k=0}^{K} q^{2k} W^k (I - W W^*) W^{*k}`` with ``W = Z_1^1 Z_2^2``, per summand."""
    out = []
    for w in _w_components():
        one = TensorExpression.identity(w.kinds)
        gap = one - w * w.adjoint()
        total = TensorExpression.zero(w.kinds)
        wk = one
        for k in range(K + 1):
            total = total + (Q ** (2 * k)) * (wk * gap * wk.adjoint())
            wk = simplify(wk * w)
        out.append(simplify(total))
    return tuple(out)


def dq_square_series_check(q: float, N: int, K: int, grid: int = 8) -> float:
    """``|| (I(x)I(x)d_q^2) (+) (d_q^2(x)I(x)I) - partial sum ||``, zero once ``K >= N - 1``."""
    if not 0 <= K <= N:
        raise ValueError("need 0 <= K <= N")
    parts = dq_square_series_partial(K)
    return max(operator_norm(t - s, q, N, grid) for t, s in zip(_dq2_targets(), parts))


def generation_identities_check(q: float, N: int = 8, *, grid: int = 8, trials: int = 4, seed: int = 0) -> Report:
    rep = Report("generation identities", meta={"q": q, "N": N, "grid": grid})
    kx, kp = (CIRCLE, FOCK, FOCK), (FOCK, FOCK, CIRCLE)
    p = TensorExpression.product
    # (i) left inverse of the z_2^2 image: S* C_q^+ applied after C_q S
    for k in (kx, kp):
        left = p(k, ["", "Sd Cqinv", ""]) * p(k, ["", "Cq S", ""])
        r = residual(left - TensorExpression.identity(k), q, N, trials=trials, grid=grid, seed=seed)
        rep.add(f"left inverse on {'xi' if k == kx else 'phi'} summand", r, 1e-10)
    # (ii) C_q^2 = I - d_q^2 on the relevant leg
    for k, leg in ((kx, 2), (kp, 0)):
        legs_c = ["", "", ""]
        legs_d = ["", "", ""]
        legs_c[leg], legs_d[leg] = "Cq Cq", "Dq Dq"
        diff = p(k, legs_c) - (TensorExpression.identity(k) - p(k, legs_d))
        rep.add(f"C_q^2 = I - d_q^2 on {'xi' if k == kx else 'phi'} summand",
                operator_norm(diff, q, N, grid) if not diff.is_zero() else 0.0, 1e-12)
    # (iii) Z_1^1 Z_2^2 in closed form
    wx, wp = _w_components()
    rep.add("Z_1^1 Z_2^2 = (z(x)I(x)S)(+)(S(x)I(x)z)",
            0.0 if (wx, wp) == (p(kx, ["Z", "", "S"]), p(kp, ["S", "", "Z"])) else 1.0, 0.0)
    # (iv) I - W W^* is the vacuum projection on the shifted leg
    for w, k, leg in ((wx, kx, 2), (wp, kp, 0)):
        legs = ["", "", ""]
        legs[leg] = "P"
        gap = TensorExpression.identity(k) - w * w.adjoint()
        rep.add(f"I - WW^* = P on {'xi' if k == kx else 'phi'} summand",
                operator_norm(gap - p(k, legs), q, N, grid), 1e-12)
    return rep


def series_report(qs=(0.3, 0.5, 0.7, 0.9), N: int = 8, grid: int = 8) -> Report:
    from .qcore import dq_series_check

    rep = Report("series identities", meta={"N": N, "qs": list(qs)})
    for q in qs:
        rep.add(f"d_q series K=N q={q}", dq_series_check(q, N, N), 1e-12)
        rep.add(f"d_q^2 series K=N q={q}", dq_square_series_check(q, N, N, grid), 1e-12)
        for c in generation_identities_check(q, N, grid=grid).checks:
            rep.add(f"{c.name} q={q}", c.value, max(c.tol, 1e-10))
    return rep


# ---------------------------------------------------------------------------
# norm inequality

def sample_elements(cfg: SweepConfig) -> list[FreeElement]:
    rng = np.random.default_rng(cfg.seed)
    return [polmat.random_element(rng, max_degree=cfg.max_degree) for _ in range(cfg.samples)]


def boundary_norm(a: FreeElement, q: float, N: int, grid: int = 8, seed: int = 0) -> float:
    """``|| (Xi_q (+) Phi_q)(a) ||``."""
    return max(operator_norm(r(a), q, N, grid, seed=seed) for r in (xi_rep(), phi_rep()))


def norm_inequality_sample(cfg: SweepConfig = SweepConfig(), elements: list[FreeElement] | None = None,
                           tol: float = 1e-6) -> Report:
    """Essential-norm surrogates of ``Omega_0(a)`` against the boundary norm.

    The right-hand side is a supremum over truncations, so it is evaluated at
    ``cfg.reference_N``; the same quantity at ``cfg.N`` is reported as
    ``rhs_at_N`` together with the resulting truncation allowance.
    """
    elements = elements if elements is not None else sample_elements(cfg)
    om = coherent_rep(0.0)
    rep = Report("norm inequality", meta={"N": cfg.N, "rhs_N": cfg.reference_N, "grid": cfg.grid,
                                          "cuts": list(cfg.cuts), "qs": list(cfg.qs), "seed": cfg.seed,
                                          "samples": len(elements)})
    for q in cfg.qs:
        for i, a in enumerate(elements):
            e = om(a)
            ests = {c: essential_norm_estimate(e, q, cfg.N, c, cfg.grid, seed=cfg.seed) for c in cfg.cuts}
            rhs_n = boundary_norm(a, q, cfg.N, cfg.grid, cfg.seed)
            rhs = boundary_norm(a, q, cfg.reference_N, cfg.grid, cfg.seed) if cfg.reference_N != cfg.N else rhs_n
            excess = max(ests.values()) - rhs
            rep.add(f"q={q} element {i}", max(excess, 0.0), tol, excess=excess, rhs=rhs, rhs_at_N=rhs_n,
                    allowance=rhs - rhs_n, estimates=[ests[c] for c in cfg.cuts], witness=str(a))
    return rep


# ---------------------------------------------------------------------------
# continuity in q

def _omega_op(a: FreeElement, q: float, space: Space):
    return compile_expr(coherent_rep(0.0)(a), q, space.N, space.grid)


def continuity_sweep(a: FreeElement, qs=(0.3, 0.5, 0.7, 0.9), N: int = 12, grid: int = 8, *,
                     factor=Q, seed: int = 0) -> list[dict]:
    """Pairwise ``|| rep^{(q)}(J(Z_q)) - rep^{(s)}(J(Z_s)) ||`` for ``Omega_0`` and ``Xi (+) Phi``.

    ``a`` is a polynomial ``J``; ``z_1^1`` is replaced by ``factor * z_1^1``.
    """
    j = polmat.scaled(a, factor)
    reps = {"omega0": (coherent_rep(0.0),), "xi+phi": (xi_rep(), phi_rep())}
    rows = []
    for q, s in combinations(sorted(qs), 2):
        row = {"q": q, "s": s}
        for name, parts in reps.items():
            dev = 0.0
            for r in parts:
                e = r(j)
                ops = [compile_expr(e, q, N, grid), compile_expr(e, s, N, grid)]
                lc = LinearCombination([(1, ops[0]), (-1, ops[1])])
                dev = max(dev, estimate_norm(lc, seed=seed).value)
            row[name] = dev
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# the q -> 0 images in B_0

def phi0_images_check(N: int = 12, cut: int = 4, q: float = 0.5) -> Report:
    """Limits of the scaled coherent images against the typed references and ``b0_generators``."""
    rep = Report("phi_0 images", meta={"N": N, "cut": cut,
                                       "assignment": {"Z_1^1": "S(x)S*(x)S", "Z_1^2": "S(x)P(x)I",
                                                      "Z_2^1": "I(x)P(x)S", "Z_2^2": "I(x)S(x)I"}})
    lims = omega0_limits()
    ref = limb0_reference()
    b0 = b0_generators()
    lifted = lifted_limit_pairs()
    for g in GENERATORS:
        lab = gen_label(g)
        rep.add(f"lim Omega_0({lab}) canonical", 0.0 if lims[g] == ref[g] else 1.0, 0.0)
        rep.add(f"lim Omega_0({lab}) in b0 set", 0.0 if lims[g] in b0 else 1.0, 0.0)
        rep.add(f"lifted Z({lab}) matches", 0.0 if lifted[g] == lims[g] else 1.0, 0.0)
        diff = lifted[g] - lims[g]
        est = 0.0 if diff.is_zero() else essential_norm_estimate(diff, q, N, cut)
        rep.add(f"phi_0(Z({lab})) - b0 essential", est, 1e-10)
    return rep


def omega_x_check(q: float, N: int = 12, grid: int = 8) -> Report:
    """``Omega_0(x)`` and ``Pi_q(x)`` as diagonal tensor products."""
    from .repcat import pi_q_rep

    x = polmat.element_x()
    f = TensorExpression.fock
    om_target = f("Dq Dq", "Dq Dq Dq Dq", "Dq Dq")
    pi_target = TensorExpression.product((CIRCLE, FOCK, FOCK, FOCK), ["", "Dq Dq", "Dq Dq Dq Dq", "Dq Dq"])
    rep = Report("x images", meta={"q": q, "N": N})
    rep.add("Omega_0(x) = d^2 (x) d^4 (x) d^2", residual(coherent_rep(0.0)(x) - om_target, q, N), 1e-12)
    rep.add("Pi_q(x) = I (x) d^2 (x) d^4 (x) d^2", residual(pi_q_rep()(x) - pi_target, q, min(N, 8), grid=grid), 1e-12)
    return rep
