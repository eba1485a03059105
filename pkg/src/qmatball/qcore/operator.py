"""Matrix-free evaluation of tensor expressions on truncated spaces."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import backend
from .atoms import circle_weights, compile_word
from .expr import CIRCLE, FOCK, TensorExpression
from .laurent import scalar_eval


@dataclass(frozen=True)
class Space:
    """Truncated carrier: ``N`` basis vectors per Fock factor, ``grid`` phases per circle factor."""

    kinds: tuple[str, ...]
    N: int
    grid: int = 8

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("N must be at least 2")
        if self.grid < 1:
            raise ValueError("grid must be positive")

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(self.N if k == FOCK else self.grid for k in self.kinds)

    @property
    def size(self) -> int:
        return int(np.prod(self.dims, dtype=np.int64)) if self.kinds else 1

    @cached_property
    def phis(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.grid) / self.grid

    def basis(self, *index: int) -> np.ndarray:
        v = np.zeros(self.dims, dtype=complex)
        v[tuple(index)] = 1.0
        return v

    def vacuum(self) -> np.ndarray:
        """``e_0`` on every Fock factor, the constant function 1 on circle factors."""
        v = np.zeros(self.dims, dtype=complex)
        idx = tuple(0 if k == FOCK else slice(None) for k in self.kinds)
        v[idx] = 1.0
        return v

    def fock_mask(self, limits) -> np.ndarray:
        """Boolean mask of basis vectors whose Fock indices are ``<= limits[f]``."""
        mask = np.ones(self.dims, dtype=bool)
        for f, (k, lim) in enumerate(zip(self.kinds, limits)):
            if k != FOCK:
                continue
            shape = [1] * len(self.kinds)
            shape[f] = self.N
            mask = mask & (np.arange(self.N) <= lim).reshape(shape)
        return mask

    def tail_mask(self, cut: int) -> np.ndarray:
        """Range of ``I - P_{<cut} (x) ... (x) P_{<cut}`` (some Fock index ``>= cut``)."""
        head = self.fock_mask([cut - 1] * len(self.kinds))
        if FOCK not in self.kinds:
            return np.zeros(self.dims, dtype=bool)
        return ~head


def _eval_coeff(c, q):
    return complex(scalar_eval(c, q))


class CompiledOperator:
    """A tensor expression frozen at one ``q`` on one :class:`Space`."""

    def __init__(self, expr: TensorExpression, q: float, space: Space):
        if expr.kinds != space.kinds:
            raise ValueError(f"factor mismatch: expression {expr.kinds} vs space {space.kinds}")
        self.expr = expr
        self.q = q
        self.space = space
        dims = space.dims
        F = len(dims)
        T = len(expr.terms)
        maxdim = max(dims, default=1)
        self._dims = np.asarray(dims, dtype=np.int64)
        self._shifts = np.zeros((T, F), dtype=np.int64)
        self._weights = np.zeros((T, F, maxdim), dtype=complex)
        self._coeffs = np.zeros(T, dtype=complex)
        for t, (legs, c) in enumerate(expr.terms.items()):
            self._coeffs[t] = _eval_coeff(c, q)
            for f, (w, kind) in enumerate(zip(legs, space.kinds)):
                if kind == FOCK:
                    s, wt = compile_word(w, q, space.N)
                    self._shifts[t, f] = s
                    self._weights[t, f, : space.N] = wt
                else:
                    self._weights[t, f, : space.grid] = circle_weights(w, space.phis)
        self._adj: CompiledOperator | None = None

    @property
    def kernel_args(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """``(dims, shifts, weights, coeffs)`` as passed to the term kernel."""
        return self._dims, self._shifts, self._weights, self._coeffs

    @property
    def shape(self) -> tuple[int, int]:
        return (self.space.size, self.space.size)

    def matvec(self, v: np.ndarray) -> np.ndarray:
        dims = self.space.dims
        flat = np.ascontiguousarray(np.asarray(v, dtype=complex).reshape(-1))
        if not self.space.kinds:
            return (flat * self._coeffs.sum()).reshape(dims)
        if len(self._coeffs) == 0:
            return np.zeros(dims, dtype=complex)
        out = backend.apply_terms(flat, self._dims, self._shifts, self._weights, self._coeffs)
        return np.asarray(out).reshape(dims)

    __call__ = matvec

    def rmatvec(self, v: np.ndarray) -> np.ndarray:
        if self._adj is None:
            self._adj = CompiledOperator(self.expr.adjoint(), self.q, self.space)
        return self._adj.matvec(v)

    def dense(self) -> np.ndarray:
        """Materialise the matrix column by column (small spaces only)."""
        n = self.space.size
        if n > 8 ** 4:
            raise ValueError("refusing to densify a space this large")
        out = np.zeros((n, n), dtype=complex)
        for j in range(n):
            e = np.zeros(n, dtype=complex)
            e[j] = 1
            out[:, j] = self.matvec(e).reshape(-1)
        return out


class LinearCombination:
    """``sum_i c_i A_i`` over compiled operators on one space (possibly different ``q``)."""

    def __init__(self, parts):
        self.parts = [(complex(c), op) for c, op in parts]
        spaces = {op.space for _, op in self.parts}
        if len(spaces) != 1:
            raise ValueError("all parts must live on the same space")
        self.space = spaces.pop()

    def matvec(self, v):
        return sum(c * op.matvec(v) for c, op in self.parts)

    def rmatvec(self, v):
        return sum(np.conj(c) * op.rmatvec(v) for c, op in self.parts)


def compile_expr(expr: TensorExpression, q: float, N: int, grid: int = 8) -> CompiledOperator:
    return CompiledOperator(expr, q, Space(expr.kinds, N, grid))


def apply(expr: TensorExpression, q: float, v: np.ndarray, space: Space | None = None, *, N: int | None = None, grid: int = 8) -> np.ndarray:
    """Apply ``expr`` at parameter ``q`` to the array ``v`` (shaped over the space dims)."""
    if space is None:
        if N is None:
            raise ValueError("need a space or N")
        space = Space(expr.kinds, N, grid)
    return CompiledOperator(expr, q, space).matvec(v)


def interior_limits(expr_or_band, space: Space) -> tuple[int, ...]:
    band = expr_or_band.bandwidth() if isinstance(expr_or_band, TensorExpression) else tuple(expr_or_band)
    lims = []
    for k, b in zip(space.kinds, band):
        lim = space.N - 1 - b if k == FOCK else space.grid - 1
        if lim < 0:
            raise ValueError(f"N={space.N} too small for bandwidth {b}")
        lims.append(lim)
    return tuple(lims)


def random_vectors(space: Space, count: int, rng: np.random.Generator, mask: np.ndarray | None = None) -> list[np.ndarray]:
    out = []
    for _ in range(count):
        v = rng.standard_normal(space.dims) + 1j * rng.standard_normal(space.dims)
        if mask is not None:
            v = np.where(mask, v, 0)
        out.append(v)
    return out
