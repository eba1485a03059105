"""Catalogue of *-representations of Pol(Mat_2)_q.

Every representation stores the images of the four unstarred generators as
:class:`~qmatball.qcore.TensorExpression` objects with exact coefficients in
``q``; the deformation parameter is supplied only at evaluation time.  Fock
factors are truncated ``ell^2(Z_+)``, circle factors are ``L^2(T)`` sampled
on a phase grid.

Box diagrams have four slots.  Slot ``k`` is tensor factor ``k`` of the Fock
representation built from the reduced word ``(2, 1, 3, 2)``: slot 1 is the
lower-left box, slot 2 the upper-left, slot 3 the lower-right and slot 4 the
upper-right.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import polmat
from .polmat import FreeElement, Gen, Relation
from .qcore import (CIRCLE, FOCK, LaurentScalar, Q, Space, TensorExpression, apply, circle_eval,
                    essential_norm_estimate, lift_circle, operator_norm, q_limit, residual, simplify,
                    tau_eval)
from .qsu import tensor_rep
from .report import Report

SIGMA_WORD = (2, 1, 3, 2)
GENERATORS = (Gen(1, 1), Gen(1, 2), Gen(2, 1), Gen(2, 2))

WHITE, DARK, LIGHT = "white", "dark", "light"


@dataclass
class Representation:
    name: str
    kinds: tuple[str, ...]
    images: dict[Gen, TensorExpression]
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.kinds = tuple(self.kinds)
        for g, e in self.images.items():
            if g.star:
                raise ValueError("store unstarred images only; starred images are adjoints")
            if e.kinds != self.kinds:
                raise ValueError(f"image of {g} has signature {e.kinds}, expected {self.kinds}")

    def image(self, g: Gen) -> TensorExpression:
        base = self.images.get(Gen(g.a, g.alpha))
        if base is None:
            raise KeyError(f"{self.name} has no image for {g}")
        return base.adjoint() if g.star else base

    def __call__(self, e: FreeElement) -> TensorExpression:
        return polmat.evaluate(e, self)

    def map_images(self, fn, name: str | None = None, **meta) -> "Representation":
        images = {g: fn(e) for g, e in self.images.items()}
        kinds = next(iter(images.values())).kinds
        return Representation(name or self.name, kinds, images, {**self.meta, **meta})

    def to_json(self, q: float | None = None) -> dict:
        return {
            "name": self.name,
            "kinds": list(self.kinds),
            "images": {str(g): self.images[g].to_json(q) for g in sorted(self.images)},
            "meta": self.meta,
        }


@dataclass
class DirectSum:
    """``A (+) B (+) ...``, each summand evaluated on its own space."""

    name: str
    parts: tuple[Representation, ...]

    def __call__(self, e: FreeElement) -> tuple[TensorExpression, ...]:
        return tuple(p(e) for p in self.parts)

    def norm(self, e: FreeElement, q: float, N: int, grid: int = 8, **kw) -> float:
        return max(operator_norm(p(e), q, N, grid, **kw) for p in self.parts)


# ---------------------------------------------------------------------------
# Fock representation

def _t(g, i, j):
    return g[i - 1][j - 1]


def fock_images_from_sigma(order: str = "ltr") -> dict[Gen, TensorExpression]:
    """``pi_sigma o zeta`` on the four unstarred generators."""
    g = tensor_rep(SIGMA_WORD, 4, order=order)
    out = {}
    for gen in GENERATORS:
        coeff, (i, j) = polmat.zeta_image(gen, 2)
        out[gen] = coeff * _t(g, i, j)
    return out


def printed_fock_images() -> dict[Gen, TensorExpression]:
    """The four Fock images as displayed in the literature, typed in leg by leg."""
    f = TensorExpression.fock
    return {
        Gen(1, 1): f("Dq", "Sd Cq", "", "Dq") + f("Cq S", "", "Sd Cq", "Cq S", coeff=-(Q ** -1)),
        Gen(1, 2): f("Cq S", "", "Dq", ""),
        Gen(2, 1): f("", "", "Dq", "Cq S"),
        Gen(2, 2): f("", "", "Cq S", ""),
    }


def corrected_fock_z11() -> TensorExpression:
    """Displayed ``z_1^1`` formula with ``C_q S`` in the second leg of the first summand."""
    f = TensorExpression.fock
    return f("Dq", "Cq S", "", "Dq") + f("Cq S", "", "Sd Cq", "Cq S", coeff=-(Q ** -1))


def fock_regression() -> dict[str, bool]:
    """Canonical-form comparison of ``pi_sigma o zeta`` with the displayed Fock images."""
    computed = fock_images_from_sigma()
    printed = printed_fock_images()
    out = {f"{g} verbatim": computed[g] == printed[g] for g in GENERATORS}
    out["z_1^1 corrected"] = computed[Gen(1, 1)] == corrected_fock_z11()
    return out


def vacuum_annihilation(rep: Representation, q: float, N: int = 4, grid: int = 8) -> dict[Gen, float]:
    """``|| rep(g)^* vac ||`` for each unstarred generator."""
    space = Space(rep.kinds, N, grid)
    vac = space.vacuum()
    return {g: float(np.linalg.norm(apply(rep.image(g.adjoint()), q, vac, space))) for g in GENERATORS}


def fock_rep() -> Representation:
    return Representation("fock", (FOCK,) * 4, fock_images_from_sigma(),
                          {"word": list(SIGMA_WORD), "vacuum": [0, 0, 0, 0]})


# ---------------------------------------------------------------------------
# box diagrams

@dataclass(frozen=True)
class BoxDiagram:
    """Colours of slots 1..4; ``phases[k]`` is used only where ``colors[k] == "light"``."""

    colors: tuple[str, str, str, str]
    phases: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)

    def __post_init__(self):
        if len(self.colors) != 4 or len(self.phases) != 4:
            raise ValueError("a box diagram has exactly four slots")
        bad = [c for c in self.colors if c not in (WHITE, DARK, LIGHT)]
        if bad:
            raise ValueError(f"unknown colours {bad}")

    def with_phases(self, *phis: float) -> "BoxDiagram":
        """Assign ``phis`` to the light slots in slot order."""
        light = [k for k, c in enumerate(self.colors) if c == LIGHT]
        if len(phis) != len(light):
            raise ValueError(f"diagram has {len(light)} light slots, got {len(phis)} phases")
        ph = list(self.phases)
        for k, p in zip(light, phis):
            ph[k] = float(p)
        return BoxDiagram(self.colors, tuple(ph))

    @property
    def white_slots(self) -> tuple[int, ...]:
        return tuple(k + 1 for k, c in enumerate(self.colors) if c == WHITE)

    def to_json(self) -> dict:
        return {"colors": list(self.colors), "phases": list(self.phases)}


#: sign ``s`` in ``tau_{s phi}`` for light boxes, fixed by the coherent vacuum eigenvalue
LIGHT_SIGN = 1


def diagram_rep(d: BoxDiagram, *, light_sign: int | None = None, name: str | None = None) -> Representation:
    """Apply ``tau_0`` on dark slots and ``tau_{+-phi}`` on light slots of the Fock images."""
    s = LIGHT_SIGN if light_sign is None else light_sign
    base = fock_rep()

    def reduce(e: TensorExpression) -> TensorExpression:
        for k in range(3, -1, -1):
            c = d.colors[k]
            if c == DARK:
                e = tau_eval(e, k, 0.0)
            elif c == LIGHT:
                e = tau_eval(e, k, s * d.phases[k])
        return e

    return base.map_images(reduce, name or "diagram", diagram=d.to_json(), light_sign=s,
                           factors=[k for k in d.white_slots])


FAMILIES: dict[str, BoxDiagram] = {
    "fock": BoxDiagram((WHITE, WHITE, WHITE, WHITE)),
    "coherent": BoxDiagram((WHITE, LIGHT, WHITE, WHITE)),
    "xi": BoxDiagram((LIGHT, DARK, WHITE, WHITE)),
    "phi": BoxDiagram((WHITE, DARK, WHITE, LIGHT)),
    "xi_phi": BoxDiagram((LIGHT, DARK, WHITE, LIGHT)),
    "dark12_light3": BoxDiagram((DARK, DARK, LIGHT, WHITE)),
    "dark12_light34": BoxDiagram((DARK, DARK, LIGHT, LIGHT)),
}

#: arrow ``a -> b`` means the kernel of ``b`` is contained in the kernel of ``a``
KERNEL_EDGES: tuple[tuple[str, str], ...] = (
    ("coherent", "fock"),
    ("xi", "coherent"),
    ("phi", "coherent"),
    ("dark12_light3", "phi"),
    ("xi_phi", "phi"),
    ("dark12_light3", "xi"),
    ("xi_phi", "xi"),
    ("dark12_light34", "dark12_light3"),
    ("dark12_light34", "xi_phi"),
)


def kernel_poset() -> dict:
    nodes = list(FAMILIES)
    targets = {b for _, b in KERNEL_EDGES}
    sources = {a for a, _ in KERNEL_EDGES}
    return {
        "nodes": nodes,
        "edges": [list(e) for e in KERNEL_EDGES],
        "top": sorted(n for n in nodes if n not in sources),
        "bottom": sorted(n for n in nodes if n not in targets),
    }


def family_rep(name: str, *phis: float) -> Representation:
    d = FAMILIES[name].with_phases(*phis) if phis else FAMILIES[name]
    return diagram_rep(d, name=name)


# ---------------------------------------------------------------------------
# coherent representations

def _z11_vacuum_eigenvalue(rep: Representation, q: float) -> complex:
    space = Space(rep.kinds, 4)
    vac = space.vacuum()
    out = apply(rep.image(Gen(1, 1)), q, vac, space)
    return complex(np.vdot(vac, out))


def choose_light_sign(phi: float = 1.0, q: float = 0.5) -> int:
    """Sign ``s`` such that ``tau_{s phi}`` on the coherent slot gives vacuum eigenvalue ``e^{i phi}``."""
    target = complex(math.cos(phi), math.sin(phi))
    for s in (1, -1):
        rep = diagram_rep(FAMILIES["coherent"].with_phases(phi), light_sign=s)
        if abs(_z11_vacuum_eigenvalue(rep, q) - target) < 1e-12:
            return s
    raise RuntimeError("no light-box sign reproduces the coherent vacuum eigenvalue")


def coherent_rep(phi: float = 0.0) -> Representation:
    """``Omega_phi`` on the three white factors 1, 3, 4 of the Fock representation."""
    rep = diagram_rep(FAMILIES["coherent"].with_phases(phi), name=f"coherent(phi={phi:.6g})")
    rep.meta["phi"] = phi
    return rep


# ---------------------------------------------------------------------------
# boundary families as direct integrals over a circle factor

def xi_rep() -> Representation:
    """``Xi_q`` on ``L^2(T) (x) ell^2 (x) ell^2``."""
    k = (CIRCLE, FOCK, FOCK)
    p = TensorExpression.product
    return Representation("xi", k, {
        Gen(2, 2): p(k, ["", "Cq S", ""]),
        Gen(1, 2): p(k, ["Z", "Dq", ""]),
        Gen(2, 1): p(k, ["", "Dq", "Cq S"]),
        Gen(1, 1): p(k, ["Z", "Sd Cq", "Cq S"], -(Q ** -1)),
    })


def phi_rep() -> Representation:
    """``Phi_q`` on ``ell^2 (x) ell^2 (x) L^2(T)``."""
    k = (FOCK, FOCK, CIRCLE)
    p = TensorExpression.product
    return Representation("phi", k, {
        Gen(2, 2): p(k, ["", "Cq S", ""]),
        Gen(1, 2): p(k, ["Cq S", "Dq", ""]),
        Gen(2, 1): p(k, ["", "Dq", "Z"]),
        Gen(1, 1): p(k, ["Cq S", "Sd Cq", "Z"], -(Q ** -1)),
    })


def xi_phi_sum() -> DirectSum:
    return DirectSum("xi+phi", (xi_rep(), phi_rep()))


def cross_validate_boundary(q: float, N: int = 6, grid: int = 8) -> Report:
    """Direct ``Xi``/``Phi`` formulas against the coloured diagrams at every grid phase."""
    rep = Report("boundary cross-validation", meta={"q": q, "N": N, "grid": grid})
    phis = 2 * np.pi * np.arange(grid) / grid
    for direct, fam, circ in ((xi_rep(), "xi", 0), (phi_rep(), "phi", 2)):
        worst = 0.0
        for phi in phis:
            diag = family_rep(fam, float(phi))
            for g in GENERATORS:
                diff = circle_eval(direct.images[g], circ, float(phi)) - diag.images[g]
                worst = max(worst, residual(diff, q, N, trials=2) if not diff.is_zero() else 0.0)
        rep.add(f"{fam} direct vs diagram", worst, 1e-10)
    return rep


# ---------------------------------------------------------------------------
# limits and Pi_q

def limit_generators() -> dict[Gen, tuple[TensorExpression, TensorExpression]]:
    """``Z_i^j`` as (Xi component, Phi component)."""
    kx, kp = (CIRCLE, FOCK, FOCK), (FOCK, FOCK, CIRCLE)
    p = TensorExpression.product
    return {
        Gen(2, 2): (p(kx, ["", "S", ""]), p(kp, ["", "S", ""])),
        Gen(1, 2): (p(kx, ["Z", "P", ""]), p(kp, ["S", "P", ""])),
        Gen(2, 1): (p(kx, ["", "P", "S"]), p(kp, ["", "P", "Z"])),
        Gen(1, 1): (p(kx, ["Z", "Sd", "S"]), p(kp, ["S", "Sd", "Z"])),
    }


def b0_generators() -> list[TensorExpression]:
    f = TensorExpression.fock
    return [f("S", "Sd", "S"), f("", "P", "S"), f("S", "P", ""), f("", "S", "")]


#: scale applied to ``z_1^1`` before taking ``q -> 0`` limits
Z11_SCALE = -Q


def scaled_images(rep: Representation) -> dict[Gen, TensorExpression]:
    return {g: (Z11_SCALE * e if g == Gen(1, 1) else e) for g, e in rep.images.items()}


def omega0_limits() -> dict[Gen, TensorExpression]:
    """``q -> 0`` limits of the scaled ``Omega_0`` images."""
    return {g: q_limit(e) for g, e in scaled_images(coherent_rep(0.0)).items()}


def pi_q_rep() -> Representation:
    """``z_m^j -> z (x) Omega_0(z_m^j)``."""
    om = coherent_rep(0.0)
    zleg = TensorExpression.product((CIRCLE,), ["Z"])
    return Representation("pi_q", (CIRCLE,) + om.kinds, {g: zleg.tensor(e) for g, e in om.images.items()})


# ---------------------------------------------------------------------------
# relation checks and catalogue

def relation_residuals(rep: Representation, rels: Sequence[Relation], q: float, N: int, *,
                       grid: int = 8, trials: int = 3, seed: int = 0, tol: float = 1e-9) -> Report:
    out = Report(f"relations under {rep.name}", meta={"q": q, "N": N, "grid": grid})
    for r in rels:
        e = rep(r.element)
        out.add(r.label, residual(e, q, N, trials=trials, grid=grid, seed=seed), tol)
    return out


def standard_catalog(phi: float = math.pi / 3) -> dict[str, Representation]:
    """Named representations used by the checks."""
    return {
        "fock": fock_rep(),
        "omega_0": coherent_rep(0.0),
        "omega_phi": coherent_rep(phi),
        "xi": xi_rep(),
        "phi": phi_rep(),
        "pi_q": pi_q_rep(),
    }


def catalog_json(q: float, phi: float = math.pi / 3) -> str:
    cat = standard_catalog(phi)
    fams = {n: family_rep(n, *([phi] * FAMILIES[n].colors.count(LIGHT))).to_json(q) for n in FAMILIES}
    doc = {
        "schema": 1,
        "q": q,
        "representations": {n: r.to_json(q) for n, r in cat.items()},
        "families": fams,
        "kernel_poset": kernel_poset(),
        "light_sign": LIGHT_SIGN,
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def gamma_surrogate(e: FreeElement, q: float, N: int, cut: int, grid: int = 8, **kw) -> float:
    """Essential-norm surrogate of ``Omega_0(e)``."""
    return essential_norm_estimate(coherent_rep(0.0)(e), q, N, cut, grid, **kw)


def lifted_limit_pairs() -> dict[Gen, TensorExpression]:
    """Each ``Z_i^j`` lifted to ``ell^2`` legs by ``z -> S``; used to match against ``b0_generators``."""
    return {g: simplify(lift_circle(pair[0])) for g, pair in limit_generators().items()}
