"""Shared fixtures and an independent dense oracle for tensor-leg expressions."""
from __future__ import annotations

import warnings
from functools import reduce

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from qmatball.qcore import FOCK, NormNotConverged, scalar_eval

settings.register_profile("repo", deadline=None, derandomize=True, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

QS = (0.3, 0.5, 0.7, 0.9)


def oracle_atom(a: str, q: float, N: int) -> np.ndarray:
    """Atom matrices written out from their defining action on ``e_m``."""
    m = np.arange(N)
    if a == "S":
        return np.eye(N, k=-1)
    if a == "Sd":
        return np.eye(N, k=1)
    if a == "Cq":
        return np.diag(np.sqrt(1 - q ** (2 * m)))
    if a == "Dq":
        return np.diag(q ** m.astype(float))
    if a == "P":
        out = np.zeros((N, N))
        out[0, 0] = 1.0
        return out
    if a == "Cqinv":
        c = np.sqrt(1 - q ** (2 * m))
        return np.diag(np.where(c > 0, 1 / np.where(c > 0, c, 1), 0.0))
    raise KeyError(a)


def oracle_dense(expr, q: float, N: int, grid: int = 8) -> np.ndarray:
    """Kronecker-product matrix of ``expr``; circle factors are diagonal in the phase grid."""
    phis = 2 * np.pi * np.arange(grid) / grid
    total = None
    for legs, c in expr.terms.items():
        mats = []
        for kind, word in zip(expr.kinds, legs):
            if kind == FOCK:
                m = np.eye(N)
                for a in word:
                    m = m @ oracle_atom(a, q, N)
            else:
                k = sum(1 if a == "Z" else -1 for a in word)
                m = np.diag(np.exp(1j * k * phis))
            mats.append(m)
        term = complex(scalar_eval(c, q)) * reduce(np.kron, mats, np.eye(1))
        total = term if total is None else total + term
    if total is None:
        dim = int(np.prod([N if k == FOCK else grid for k in expr.kinds]))
        total = np.zeros((dim, dim), complex)
    return total


@pytest.fixture(autouse=True)
def _quiet_norm_warnings():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NormNotConverged)
        yield


#: criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
