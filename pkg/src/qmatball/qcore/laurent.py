"""Exact Laurent polynomials in the deformation parameter ``q``."""
from __future__ import annotations

from fractions import Fraction
from numbers import Complex, Rational
from typing import Mapping, Union

Coeff = Union[Fraction, complex]
ScalarLike = Union["LaurentScalar", int, Fraction, complex, float]


def _coerce_coeff(c) -> Coeff:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (bool, int)) or isinstance(c, Rational):
        return Fraction(c)
    if isinstance(c, float):
        if c.is_integer():
            return Fraction(int(c))
        return complex(c)
    if isinstance(c, Complex):
        return complex(c)
    raise TypeError(f"unsupported coefficient {c!r}")


def _scalar_like(x) -> bool:
    return isinstance(x, (LaurentScalar, Complex))


def _is_zero(c: Coeff) -> bool:
    return c == 0


class LaurentScalar:
    """A finite sum ``sum_k c_k q**k`` with exponents in Z.

    Coefficients are :class:`~fractions.Fraction` (exact mode) or ``complex``
    (numeric mode, used once unit-modulus phases enter).  Mixing the two
    promotes to complex.  Instances are immutable and hashable.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        clean: dict[int, Coeff] = {}
        for k, v in (coeffs or {}).items():
            v = _coerce_coeff(v)
            if not _is_zero(v):
                clean[int(k)] = v
        self._c = dict(sorted(clean.items()))
        self._hash = None

    # constructors ----------------------------------------------------------
    @classmethod
    def const(cls, c) -> "LaurentScalar":
        return cls({0: c})

    @classmethod
    def monomial(cls, k: int, c=1) -> "LaurentScalar":
        return cls({k: c})

    @classmethod
    def coerce(cls, x: ScalarLike) -> "LaurentScalar":
        return x if isinstance(x, LaurentScalar) else cls.const(x)

    # inspection ------------------------------------------------------------
    @property
    def coeffs(self) -> dict[int, Coeff]:
        return dict(self._c)

    @property
    def is_exact(self) -> bool:
        return all(isinstance(v, Fraction) for v in self._c.values())

    def is_zero(self) -> bool:
        return not self._c

    def min_degree(self) -> int | None:
        return min(self._c) if self._c else None

    def constant_term(self) -> Coeff:
        return self._c.get(0, Fraction(0))

    # arithmetic ------------------------------------------------------------
    def __add__(self, other: ScalarLike) -> "LaurentScalar":
        if not _scalar_like(other):
            return NotImplemented
        other = LaurentScalar.coerce(other)
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, 0) + v
        return LaurentScalar(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentScalar":
        return LaurentScalar({k: -v for k, v in self._c.items()})

    def __sub__(self, other: ScalarLike) -> "LaurentScalar":
        if not _scalar_like(other):
            return NotImplemented
        return self + (-LaurentScalar.coerce(other))

    def __rsub__(self, other: ScalarLike) -> "LaurentScalar":
        return LaurentScalar.coerce(other) - self

    def __mul__(self, other: ScalarLike) -> "LaurentScalar":
        if not _scalar_like(other):
            return NotImplemented
        other = LaurentScalar.coerce(other)
        out: dict[int, Coeff] = {}
        for k1, v1 in self._c.items():
            for k2, v2 in other._c.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + v1 * v2
        return LaurentScalar(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentScalar":
        if n < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials can be inverted")
            (k, v), = self._c.items()
            return LaurentScalar({k * n: 1 / v ** (-n) if isinstance(v, complex) else Fraction(1) / v ** (-n)})
        out = LaurentScalar.const(1)
        for _ in range(n):
            out = out * self
        return out

    def conjugate(self) -> "LaurentScalar":
        """Complex conjugation of coefficients (``q`` is real)."""
        return LaurentScalar({k: (v.conjugate() if isinstance(v, complex) else v) for k, v in self._c.items()})

    def to_numeric(self) -> "LaurentScalar":
        return LaurentScalar({k: complex(v) for k, v in self._c.items()})

    # evaluation ------------------------------------------------------------
    def __call__(self, q: float) -> complex | float:
        return scalar_eval(self, q)

    # comparison ------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, float, complex)):
            other = LaurentScalar.const(other)
        if not isinstance(other, LaurentScalar):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._c.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentScalar({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for k, v in self._c.items():
            if isinstance(v, Fraction):
                cs = str(v)
            else:
                cs = f"({v.real:.12g}{v.imag:+.12g}j)"
            parts.append(cs if k == 0 else f"{cs}*q^{k}")
        return " + ".join(parts)

    def to_json(self) -> list[list]:
        """``[[exponent, coefficient], ...]``; exact coefficients as ``"p/q"`` strings."""
        out = []
        for k, v in self._c.items():
            if isinstance(v, Fraction):
                out.append([k, str(v)])
            else:
                out.append([k, [v.real, v.imag]])
        return out


Q = LaurentScalar.monomial(1)
ONE = LaurentScalar.const(1)
ZERO = LaurentScalar()


def scalar_eval(s: ScalarLike, q: float) -> float | complex:
    """Evaluate at ``0 < q < 1``; real output when all coefficients are real."""
    if not 0 < q < 1:
        raise ValueError(f"q must lie in (0, 1), got {q}")
    s = LaurentScalar.coerce(s)
    if s.is_exact:
        # exact rational arithmetic on Fraction(q) keeps cancellations clean
        fq = Fraction(q)
        total = sum((v * fq ** k for k, v in s.coeffs.items()), Fraction(0))
        return float(total)
    total = sum(complex(v) * q ** k for k, v in s.coeffs.items())
    return total


def minus_q_power(k: int) -> LaurentScalar:
    """``(-q)**k`` for any integer ``k``."""
    return LaurentScalar.monomial(k, (-1) ** (k % 2))
