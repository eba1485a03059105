"""Representations of the quantum group C[SU_n]_q on truncated Fock spaces.

Entries of a generator matrix are :class:`~qmatball.qcore.TensorExpression`
objects sharing one factor signature.  ``tensor_rep`` realises the
iterated comultiplication ``pi_{j1} (x) ... (x) pi_{jm}`` with leg ``k`` on
tensor factor ``k``.
"""
from __future__ import annotations

import cmath
import math
from itertools import product as _iproduct
from typing import Sequence

import numpy as np

from . import permutations as perm
from .qcore import FOCK, LaurentScalar, Q, TensorExpression, minus_q_power, residual
from .report import Report

GenMatrix = list[list[TensorExpression]]

#: leg order of the iterated comultiplication fixed by the Fock-formula regression
DEFAULT_ORDER = "ltr"


def _zero(kinds) -> TensorExpression:
    return TensorExpression.zero(kinds)


def base_rep() -> GenMatrix:
    """``T11 = S* C_q, T12 = -q d_q, T21 = d_q, T22 = C_q S`` on one Fock factor."""
    k = (FOCK,)
    return [
        [TensorExpression.product(k, ["Sd Cq"]), TensorExpression.product(k, ["Dq"], -Q)],
        [TensorExpression.product(k, ["Dq"]), TensorExpression.product(k, ["Cq S"])],
    ]


def identity_matrix(n: int, kinds=()) -> GenMatrix:
    return [[TensorExpression.identity(kinds) if i == j else _zero(kinds) for j in range(n)] for i in range(n)]


def phi_embed(i: int, n: int) -> GenMatrix:
    """``pi o phi_i``: the base representation on rows/columns ``i, i+1``."""
    if not 1 <= i < n:
        raise ValueError(f"phi_{i} needs 1 <= i < n={n}")
    g = identity_matrix(n, (FOCK,))
    b = base_rep()
    for a in range(2):
        for c in range(2):
            g[i - 1 + a][i - 1 + c] = b[a][c]
    return g


def _kron_matrix(A: GenMatrix, B: GenMatrix, order: str) -> GenMatrix:
    n = len(A)
    out = []
    for c in range(n):
        row = []
        for d in range(n):
            acc = None
            for k in range(n):
                if order == "ltr":
                    term = A[c][k].tensor(B[k][d])
                else:
                    term = A[k][d].tensor(B[c][k])
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return out


def tensor_rep(w: Sequence[int], n: int, *, order: str = DEFAULT_ORDER, allow_nonreduced: bool = False) -> GenMatrix:
    """Generator matrix of ``pi_{w1} (x) ... (x) pi_{wm}``.

    ``order="ltr"`` uses ``Delta(t_ij) = sum_k t_ik (x) t_kj`` iterated from
    the left; ``order="rtl"`` uses the opposite coproduct.
    """
    w = tuple(w)
    if order not in ("ltr", "rtl"):
        raise ValueError("order must be 'ltr' or 'rtl'")
    if w and not allow_nonreduced and not perm.is_reduced(w, n):
        raise ValueError(f"word {w} is not reduced in S_{n}")
    g = identity_matrix(n)
    for i in w:
        g = _kron_matrix(g, phi_embed(i, n), order)
    return g


def check_phases(phases: Sequence[float]) -> None:
    total = sum(phases) / (2 * math.pi)
    if abs(total - round(total)) > 1e-12:
        raise ValueError(f"phases must sum to 0 mod 2pi, got {sum(phases)}")


def chi_phi(phases: Sequence[float]) -> GenMatrix:
    """One-dimensional representation ``t_ij -> e^{i phi_j} delta_ij`` (zero tensor factors)."""
    check_phases(phases)
    n = len(phases)
    return [[TensorExpression.identity((), cmath.exp(1j * phases[j])) if i == j else _zero(())
             for j in range(n)] for i in range(n)]


def qdet(g: GenMatrix, *, convention: str = "row") -> TensorExpression:
    """``sum_w (-q)^{l(w)} t_{1,w(1)} ... t_{n,w(n)}`` (``convention="column"`` permutes row indices)."""
    n = len(g)
    if n > 4:
        raise ValueError("qdet is limited to n <= 4")
    kinds = g[0][0].kinds
    total = _zero(kinds)
    for w in perm.all_permutations(n):
        term = TensorExpression.identity(kinds, minus_q_power(perm.length(w)))
        for i in range(n):
            entry = g[i][w[i] - 1] if convention == "row" else g[w[i] - 1][i]
            term = term * entry
            if term.is_zero():
                break
        total = total + term
    return total


def slq_relations(g: GenMatrix) -> dict[str, TensorExpression]:
    """The defining quadratic relations of C[SL_n]_q plus ``det_q t = 1``, as expressions that must vanish."""
    n = len(g)
    kinds = g[0][0].kinds
    rel: dict[str, TensorExpression] = {}
    t = lambda i, j: g[i - 1][j - 1]  # noqa: E731
    for a, al, b, be in _iproduct(range(1, n + 1), repeat=4):
        name = f"t{al}{a}*t{be}{b}"
        if (a == b and al < be) or (a < b and al == be):
            rel["q-commute " + name] = t(al, a) * t(be, b) - Q * (t(be, b) * t(al, a))
        elif al < be and a > b:
            rel["commute " + name] = t(al, a) * t(be, b) - t(be, b) * t(al, a)
        elif al < be and a < b:
            rel["cross " + name] = (t(al, a) * t(be, b) - t(be, b) * t(al, a)
                                    - (Q - Q ** -1) * (t(be, a) * t(al, b)))
    rel["det_q = 1"] = qdet(g) - TensorExpression.identity(kinds)
    if n == 2:
        rel["t11* = t22"] = t(1, 1).adjoint() - t(2, 2)
        rel["t12* = -q t21"] = t(1, 2).adjoint() + Q * t(2, 1)
    return rel


def tsu2q_identities(g: GenMatrix | None = None) -> dict[str, TensorExpression]:
    """The identities satisfied by the base ``T_ij``; the determinant line is ``= I``."""
    g = g or base_rep()
    (T11, T12), (T21, T22) = g
    I = TensorExpression.identity(T11.kinds)
    return {
        "T11 = T22*": T11 - T22.adjoint(),
        "T11 T22 - q T12 T21 = I": T11 * T22 - Q * (T12 * T21) - I,
        "T12 T21 = T21 T12": T12 * T21 - T21 * T12,
        "T11 T12 = q T12 T11": T11 * T12 - Q * (T12 * T11),
        "T11 T21 = q T21 T11": T11 * T21 - Q * (T21 * T11),
        "T21^2 = I - T22 T11": T21 * T21 - (I - T22 * T11),
        "T11 T22 = q^2 T22 T11 + (1-q^2) I": T11 * T22 - (Q * Q) * (T22 * T11) - I.scale(1 - Q * Q),
    }


def verify_slq_relations(g: GenMatrix, q: float, N: int, *, tol: float = 1e-10, trials: int = 3,
                         seed: int = 0, extra: dict[str, TensorExpression] | None = None) -> Report:
    rep = Report("slq-relations", meta={"q": q, "N": N, "n": len(g)})
    rels = dict(slq_relations(g))
    if extra:
        rels.update(extra)
    for name, e in rels.items():
        if not e.kinds:
            val = _scalar_residual(e, q)
        else:
            val = residual(e, q, N, trials=trials, seed=seed)
        rep.add(name, val, tol)
    return rep


def _scalar_residual(e: TensorExpression, q: float) -> float:
    from .qcore import scalar_eval

    return abs(sum(complex(scalar_eval(c, q)) for c in e.terms.values()))


def entry(g: GenMatrix, i: int, j: int) -> TensorExpression:
    """1-based accessor."""
    return g[i - 1][j - 1]
