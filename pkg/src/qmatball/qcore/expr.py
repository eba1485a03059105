"""Symbolic tensor-leg expressions.

A :class:`TensorExpression` is a finite sum of ``coefficient * (w_1 (x) ... (x) w_f)``
where each leg ``w_k`` is a word in the single-factor atoms below, read as an
operator product (the rightmost atom acts first).  Fock factors carry
``ell^2(Z_+)``; circle factors carry functions on the unit circle sampled on a
phase grid.

Atoms
-----
``S``, ``Sd``   unilateral shift ``e_k -> e_{k+1}`` and its adjoint
``Cq``          ``e_m -> sqrt(1 - q^{2m}) e_m``
``Dq``          ``e_m -> q^m e_m``
``P``           ``I - S S*``, the projection onto ``e_0``
``Cqinv``       Moore-Penrose inverse of ``Cq`` (zero on ``e_0``)
``Z``, ``Zbar`` multiplication by the circle coordinate and its conjugate

The identity is the empty word.  Canonical form only merges equal leg tuples
and drops zero coefficients; no operator identities are applied (see
:func:`simplify` for the shift calculus).
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .laurent import LaurentScalar, ScalarLike

FOCK = "fock"
CIRCLE = "circle"

FOCK_ATOMS = frozenset({"S", "Sd", "Cq", "Dq", "P", "Cqinv"})
CIRCLE_ATOMS = frozenset({"Z", "Zbar"})
_ADJ = {"S": "Sd", "Sd": "S", "Z": "Zbar", "Zbar": "Z", "Cq": "Cq", "Dq": "Dq", "P": "P", "Cqinv": "Cqinv"}

_PRETTY = {"S": "S", "Sd": "S*", "Cq": "C_q", "Dq": "d_q", "P": "P", "Cqinv": "C_q^+", "Z": "z", "Zbar": "z*"}

Word = tuple[str, ...]
Legs = tuple[Word, ...]


class SignatureError(ValueError):
    pass


def _check_word(word: Sequence[str], kind: str) -> Word:
    word = tuple(a for a in word if a != "I")
    allowed = FOCK_ATOMS if kind == FOCK else CIRCLE_ATOMS
    for a in word:
        if a not in allowed:
            raise ValueError(f"atom {a!r} is not legal on a {kind} factor")
    return word


def adjoint_word(word: Word) -> Word:
    return tuple(_ADJ[a] for a in reversed(word))


class TensorExpression:
    """Immutable canonical sum of tensor-leg terms on a fixed factor signature."""

    __slots__ = ("kinds", "terms", "_hash")

    def __init__(self, kinds: Sequence[str], terms: Mapping[Legs, ScalarLike] | Iterable = ()):
        self.kinds: tuple[str, ...] = tuple(kinds)
        for k in self.kinds:
            if k not in (FOCK, CIRCLE):
                raise ValueError(f"unknown factor kind {k!r}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Legs, LaurentScalar] = {}
        for legs, c in items:
            if len(legs) != len(self.kinds):
                raise SignatureError(f"term has {len(legs)} legs, expected {len(self.kinds)}")
            legs = tuple(_check_word(w, k) for w, k in zip(legs, self.kinds))
            acc[legs] = acc.get(legs, LaurentScalar()) + LaurentScalar.coerce(c)
        self.terms: dict[Legs, LaurentScalar] = {
            k: acc[k] for k in sorted(acc) if not acc[k].is_zero()
        }
        self._hash = None

    # constructors ----------------------------------------------------------
    @classmethod
    def zero(cls, kinds: Sequence[str]) -> "TensorExpression":
        return cls(kinds, {})

    @classmethod
    def identity(cls, kinds: Sequence[str], coeff: ScalarLike = 1) -> "TensorExpression":
        return cls(kinds, {tuple(() for _ in kinds): coeff})

    @classmethod
    def product(cls, kinds: Sequence[str], legs: Sequence[Sequence[str] | str], coeff: ScalarLike = 1) -> "TensorExpression":
        """Single elementary tensor; a leg may be a word or a space-separated string."""
        words = tuple(tuple(w.split()) if isinstance(w, str) else tuple(w) for w in legs)
        return cls(kinds, {words: coeff})

    @classmethod
    def fock(cls, *legs: Sequence[str] | str, coeff: ScalarLike = 1) -> "TensorExpression":
        return cls.product((FOCK,) * len(legs), legs, coeff)

    # structure -------------------------------------------------------------
    @property
    def factors(self) -> int:
        return len(self.kinds)

    @property
    def is_exact(self) -> bool:
        return all(c.is_exact for c in self.terms.values())

    @property
    def scalar_mode(self) -> str:
        return "exact" if self.is_exact else "numeric"

    def is_zero(self) -> bool:
        return not self.terms

    def _same(self, other: "TensorExpression") -> None:
        if self.kinds != other.kinds:
            raise SignatureError(f"factor signature mismatch: {self.kinds} vs {other.kinds}")

    def bandwidth(self) -> tuple[int, ...]:
        """Per-factor maximal upward excursion of any leg word."""
        out = [0] * self.factors
        for legs in self.terms:
            for f, w in enumerate(legs):
                pos = top = 0
                for a in reversed(w):
                    if a == "S":
                        pos += 1
                        top = max(top, pos)
                    elif a == "Sd":
                        pos -= 1
                out[f] = max(out[f], top)
        return tuple(out)

    # algebra ---------------------------------------------------------------
    def __add__(self, other: "TensorExpression") -> "TensorExpression":
        if not isinstance(other, TensorExpression):
            return NotImplemented
        self._same(other)
        return TensorExpression(self.kinds, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "TensorExpression":
        return TensorExpression(self.kinds, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "TensorExpression") -> "TensorExpression":
        return self + (-other)

    def scale(self, c: ScalarLike) -> "TensorExpression":
        c = LaurentScalar.coerce(c)
        return TensorExpression(self.kinds, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other) -> "TensorExpression":
        if not isinstance(other, TensorExpression):
            return self.scale(other)
        self._same(other)
        out: list = []
        for la, ca in self.terms.items():
            for lb, cb in other.terms.items():
                out.append((tuple(wa + wb for wa, wb in zip(la, lb)), ca * cb))
        return TensorExpression(self.kinds, out)

    def __rmul__(self, c) -> "TensorExpression":
        return self.scale(c)

    def __pow__(self, n: int) -> "TensorExpression":
        out = TensorExpression.identity(self.kinds)
        for _ in range(n):
            out = out * self
        return out

    def adjoint(self) -> "TensorExpression":
        return TensorExpression(
            self.kinds,
            {tuple(adjoint_word(w) for w in legs): c.conjugate() for legs, c in self.terms.items()},
        )

    def tensor(self, other: "TensorExpression") -> "TensorExpression":
        """Kronecker product; factors of ``other`` are appended."""
        out = []
        for la, ca in self.terms.items():
            for lb, cb in other.terms.items():
                out.append((la + lb, ca * cb))
        return TensorExpression(self.kinds + other.kinds, out)

    # comparison ------------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorExpression):
            return NotImplemented
        return self.kinds == other.kinds and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.kinds, tuple(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"TensorExpression({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for legs, c in self.terms.items():
            body = " (x) ".join("".join(_PRETTY[a] for a in w) or "I" for w in legs)
            parts.append(f"[{c}] {body}")
        return " + ".join(parts)

    def to_json(self, q: float | None = None) -> dict:
        from .laurent import scalar_eval

        terms = []
        for legs, c in self.terms.items():
            entry: dict = {"legs": [list(w) for w in legs]}
            if q is None:
                entry["coeff"] = c.to_json()
            else:
                v = complex(scalar_eval(c, q))
                entry["coeff"] = [v.real, v.imag]
            terms.append(entry)
        return {"kinds": list(self.kinds), "terms": terms}


# ---------------------------------------------------------------------------
# evaluation of single factors

def _tau_value(a: str, phase) -> object:
    if a == "S":
        return phase
    if a == "Sd":
        return phase.conjugate() if isinstance(phase, complex) else phase
    if a in ("Cq", "Cqinv"):
        return 1
    if a in ("Dq", "P"):
        return 0
    raise ValueError(f"tau is not defined on atom {a!r}")


def _phase(phi: float):
    # exact +-1 where possible so dark boxes keep exact scalars
    if phi == 0:
        return Fraction(1)
    return cmath.exp(1j * phi)


def tau_eval(e: TensorExpression, factor: int, phi: float) -> TensorExpression:
    """Apply the character ``S -> e^{i phi}`` of the Toeplitz algebra to one Fock factor.

    ``Cq -> 1``, ``Dq -> 0``, ``P -> 0``.  The factor disappears from the
    signature.  ``phi == 0`` keeps exact scalars.
    """
    if e.kinds[factor] != FOCK:
        raise ValueError(f"factor {factor} is a circle factor; tau acts on Fock factors only")
    ph = _phase(phi)
    kinds = e.kinds[:factor] + e.kinds[factor + 1:]
    out = []
    for legs, c in e.terms.items():
        val = 1
        for a in legs[factor]:
            val = val * _tau_value(a, ph)
            if val == 0:
                break
        if val == 0:
            continue
        out.append((legs[:factor] + legs[factor + 1:], c * LaurentScalar.const(val)))
    return TensorExpression(kinds, out)


def circle_eval(e: TensorExpression, factor: int, phi: float) -> TensorExpression:
    """Evaluate a circle factor at the point ``e^{i phi}``."""
    if e.kinds[factor] != CIRCLE:
        raise ValueError(f"factor {factor} is not a circle factor")
    ph = _phase(phi)
    kinds = e.kinds[:factor] + e.kinds[factor + 1:]
    out = []
    for legs, c in e.terms.items():
        wind = sum(1 if a == "Z" else -1 for a in legs[factor])
        val = ph ** wind if wind >= 0 else (ph.conjugate() ** (-wind) if isinstance(ph, complex) else ph)
        out.append((legs[:factor] + legs[factor + 1:], c * LaurentScalar.const(val)))
    return TensorExpression(kinds, out)


def lift_circle(e: TensorExpression) -> TensorExpression:
    """Replace every circle factor by a Fock factor, ``Z -> S`` and ``Zbar -> Sd``."""
    ren = {"Z": "S", "Zbar": "Sd"}
    kinds = tuple(FOCK for _ in e.kinds)
    return TensorExpression(kinds, [(tuple(tuple(ren.get(a, a) for a in w) for w in legs), c) for legs, c in e.terms.items()])


# ---------------------------------------------------------------------------
# shift calculus

_RULES: dict[tuple[str, str], Word | None] = {
    ("Sd", "S"): (),          # S*S = I
    ("P", "S"): None,          # P S = 0
    ("Sd", "P"): None,         # S* P = 0
    ("P", "P"): ("P",),
    ("Z", "Zbar"): (),
    ("Zbar", "Z"): (),
}


def _simplify_word(w: Word) -> Word | None:
    changed = True
    w = tuple(w)
    while changed:
        changed = False
        for i in range(len(w) - 1):
            rule = _RULES.get((w[i], w[i + 1]), False)
            if rule is False:
                continue
            if rule is None:
                return None
            w = w[:i] + rule + w[i + 2:]
            changed = True
            break
    return w


def simplify(e: TensorExpression) -> TensorExpression:
    """Apply the identities ``S*S = I``, ``PS = 0``, ``S*P = 0``, ``P^2 = P``, ``z z* = 1``.

    These hold on ``ell^2(Z_+)``; on a truncated space they hold on interior
    vectors only, which is why canonical form does not apply them.
    """
    out = []
    for legs, c in e.terms.items():
        new = []
        for w in legs:
            s = _simplify_word(w)
            if s is None:
                break
            new.append(s)
        else:
            out.append((tuple(new), c))
    return TensorExpression(e.kinds, out)


def q_limit(e: TensorExpression) -> TensorExpression:
    """Norm limit as ``q -> 0`` of an exact expression.

    ``Dq -> P``, ``Cq -> I - P``; coefficients go to their constant terms and
    must not contain negative powers of ``q``.  The result is simplified.
    """
    out = TensorExpression.zero(e.kinds)
    for legs, c in e.terms.items():
        md = c.min_degree()
        if md is not None and md < 0:
            raise ValueError(f"coefficient {c} diverges as q -> 0")
        c0 = c.constant_term()
        if c0 == 0:
            continue
        # expand each Cq into I - P
        expanded_legs: list[list[tuple[Word, int]]] = []
        for w in legs:
            opts: list[tuple[Word, int]] = [((), 1)]
            for a in w:
                if a == "Dq":
                    choices = [(("P",), 1)]
                elif a == "Cq":
                    choices = [((), 1), (("P",), -1)]
                elif a == "Cqinv":
                    raise ValueError("Cqinv has no q -> 0 limit in this calculus")
                else:
                    choices = [((a,), 1)]
                opts = [(ow + cw, os * cs) for ow, os in opts for cw, cs in choices]
            expanded_legs.append(opts)
        combos: list[tuple[Legs, int]] = [((), 1)]
        for opts in expanded_legs:
            combos = [(lg + (w,), s * t) for lg, s in combos for w, t in opts]
        out = out + TensorExpression(e.kinds, [(lg, LaurentScalar.const(c0 * s)) for lg, s in combos])
    return simplify(out)
