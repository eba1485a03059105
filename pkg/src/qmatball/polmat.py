"""Free *-algebra on the generators ``z_a^alpha`` and the relations of Pol(Mat_n)_q.

Index convention: in ``z_a^alpha`` the *lower* index ``a`` comes first in
:class:`Gen`, the upper index ``alpha`` second.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from itertools import product as _iproduct
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .qcore import LaurentScalar, ONE, Q, TensorExpression, minus_q_power
from .qcore.laurent import ScalarLike


class Gen(NamedTuple):
    a: int          # lower index
    alpha: int      # upper index
    star: bool = False

    def adjoint(self) -> "Gen":
        return Gen(self.a, self.alpha, not self.star)

    def __str__(self) -> str:
        s = f"z_{self.a}^{self.alpha}"
        return f"({s})*" if self.star else s


def z(a: int, alpha: int) -> "FreeElement":
    return FreeElement({(Gen(a, alpha),): 1})


def zs(a: int, alpha: int) -> "FreeElement":
    return FreeElement({(Gen(a, alpha, True),): 1})


def generators(n: int = 2, *, starred: bool = False) -> list[Gen]:
    gens = [Gen(a, al) for a in range(1, n + 1) for al in range(1, n + 1)]
    if starred:
        gens += [g.adjoint() for g in gens]
    return gens


class FreeElement:
    """Finite linear combination of words in the generators, exact Laurent coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, ScalarLike] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[Gen, ...], LaurentScalar] = {}
        for w, c in items:
            w = tuple(Gen(*g) for g in w)
            acc[w] = acc.get(w, LaurentScalar()) + LaurentScalar.coerce(c)
        self.terms = {w: acc[w] for w in sorted(acc, key=_word_key) if not acc[w].is_zero()}

    @classmethod
    def unit(cls, c: ScalarLike = 1) -> "FreeElement":
        return cls({(): c})

    def __add__(self, other) -> "FreeElement":
        other = _coerce(other)
        return FreeElement(list(self.terms.items()) + list(other.terms.items()))

    __radd__ = __add__

    def __neg__(self) -> "FreeElement":
        return FreeElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other) -> "FreeElement":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "FreeElement":
        return _coerce(other) - self

    def __mul__(self, other) -> "FreeElement":
        if not isinstance(other, FreeElement):
            return self.scale(other)
        out = []
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out.append((w1 + w2, c1 * c2))
        return FreeElement(out)

    def __rmul__(self, c) -> "FreeElement":
        return self.scale(c)

    def __pow__(self, k: int) -> "FreeElement":
        out = FreeElement.unit()
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c: ScalarLike) -> "FreeElement":
        c = LaurentScalar.coerce(c)
        return FreeElement({w: v * c for w, v in self.terms.items()})

    def adjoint(self) -> "FreeElement":
        return FreeElement({tuple(g.adjoint() for g in reversed(w)): c.conjugate() for w, c in self.terms.items()})

    @property
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def symbols(self) -> set[Gen]:
        return {g for w in self.terms for g in w}

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"FreeElement({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"[{c}]" + ("".join(str(g) for g in w) or "1") for w, c in self.terms.items())

    def to_json(self) -> list[dict]:
        return [{"word": [[g.a, g.alpha, g.star] for g in w], "coeff": c.to_json()} for w, c in self.terms.items()]


def _word_key(w):
    return (len(w), w)


def _coerce(x) -> FreeElement:
    return x if isinstance(x, FreeElement) else FreeElement.unit(x)


@dataclass(frozen=True)
class Relation:
    label: str
    element: FreeElement

    def adjoint(self) -> "Relation":
        return Relation(self.label + " (adjoint)", self.element.adjoint())

    def to_json(self) -> dict:
        return {"label": self.label, "terms": self.element.to_json()}


# ---------------------------------------------------------------------------
# relations for n = 2, written out term by term

def explicit_relations_n2() -> list[Relation]:
    """The sixteen displayed relations of Pol(Mat_2)_q (holomorphic, diagonal mixed, off-diagonal mixed)."""
    qi = Q ** -1
    one_m_q2 = 1 - Q * Q
    rels = [
        ("z11 z21 = q z21 z11", z(1, 1) * z(2, 1) - Q * z(2, 1) * z(1, 1)),
        ("z21 z12 = z12 z21", z(2, 1) * z(1, 2) - z(1, 2) * z(2, 1)),
        ("z11 z12 = q z12 z11", z(1, 1) * z(1, 2) - Q * z(1, 2) * z(1, 1)),
        ("z21 z22 = q z22 z21", z(2, 1) * z(2, 2) - Q * z(2, 2) * z(2, 1)),
        ("z11 z22 - z22 z11 = (q - 1/q) z12 z21",
         z(1, 1) * z(2, 2) - z(2, 2) * z(1, 1) - (Q - qi) * z(1, 2) * z(2, 1)),
        ("z12 z22 = q z22 z12", z(1, 2) * z(2, 2) - Q * z(2, 2) * z(1, 2)),
        ("z11* z11",
         zs(1, 1) * z(1, 1) - Q * Q * z(1, 1) * zs(1, 1)
         + one_m_q2 * (z(2, 1) * zs(2, 1) + z(1, 2) * zs(1, 2))
         - (qi * qi * one_m_q2 * one_m_q2) * z(2, 2) * zs(2, 2) - one_m_q2),
        ("z21* z21", zs(2, 1) * z(2, 1) - Q * Q * z(2, 1) * zs(2, 1) + one_m_q2 * z(2, 2) * zs(2, 2) - one_m_q2),
        ("z12* z12", zs(1, 2) * z(1, 2) - Q * Q * z(1, 2) * zs(1, 2) + one_m_q2 * z(2, 2) * zs(2, 2) - one_m_q2),
        ("z22* z22", zs(2, 2) * z(2, 2) - Q * Q * z(2, 2) * zs(2, 2) - one_m_q2),
        ("z11* z21", zs(1, 1) * z(2, 1) - Q * z(2, 1) * zs(1, 1) - (Q - qi) * z(2, 2) * zs(1, 2)),
        ("z22* z21", zs(2, 2) * z(2, 1) - Q * z(2, 1) * zs(2, 2)),
        ("z11* z12", zs(1, 1) * z(1, 2) - Q * z(1, 2) * zs(1, 1) - (Q - qi) * z(2, 2) * zs(2, 1)),
        ("z22* z12", zs(2, 2) * z(1, 2) - Q * z(1, 2) * zs(2, 2)),
        ("z11* z22", zs(1, 1) * z(2, 2) - z(2, 2) * zs(1, 1)),
        ("z12* z21", zs(1, 2) * z(2, 1) - z(2, 1) * zs(1, 2)),
    ]
    return [Relation(label, el) for label, el in rels]


def star_closure(rels: Sequence[Relation]) -> list[Relation]:
    """Add adjoints of relations whose adjoint is not proportional to an existing member."""
    out = list(rels)
    for r in rels:
        adj = r.adjoint()
        if not any(proportional(adj.element, s.element) for s in out):
            out.append(adj)
    return out


# ---------------------------------------------------------------------------
# R-matrix generation

def r_matrix(i: int, j: int, k: int, l: int) -> LaurentScalar:
    """``R_{ij}^{kl}``."""
    if i != j and i == k and j == l:
        return Q ** -1
    if i == j == k == l:
        return ONE
    if i == j and k == l and l > j:
        return -(Q ** -2 - 1)
    return LaurentScalar()


MAX_GENERATED_N = 3


def generated_relations(n: int) -> list[Relation]:
    """All index instances of the holomorphic, antiholomorphic and mixed relation families."""
    if not 1 <= n <= MAX_GENERATED_N:
        raise ValueError(f"generated_relations supports 1 <= n <= {MAX_GENERATED_N}")
    rng = range(1, n + 1)
    rels: list[Relation] = []
    for a, al, b, be in _iproduct(rng, repeat=4):
        tag = f"a={a},alpha={al},b={b},beta={be}"
        if (a == b and al < be) or (a < b and al == be):
            rels.append(Relation(f"holo-q {tag}", z(a, al) * z(b, be) - Q * z(b, be) * z(a, al)))
            rels.append(Relation(f"anti-q {tag}", zs(b, be) * zs(a, al) - Q * zs(a, al) * zs(b, be)))
        elif al < be and a > b:
            rels.append(Relation(f"holo-comm {tag}", z(a, al) * z(b, be) - z(b, be) * z(a, al)))
            rels.append(Relation(f"anti-comm {tag}", zs(b, be) * zs(a, al) - zs(a, al) * zs(b, be)))
        elif al < be and a < b:
            rels.append(Relation(f"holo-cross {tag}",
                                 z(a, al) * z(b, be) - z(b, be) * z(a, al) - (Q - Q ** -1) * z(a, be) * z(b, al)))
            rels.append(Relation(f"anti-cross {tag}",
                                 zs(b, be) * zs(a, al) - zs(a, al) * zs(b, be) - (Q - Q ** -1) * zs(b, al) * zs(a, be)))
    for b, be, a, al in _iproduct(rng, repeat=4):
        rhs = FreeElement()
        for a2, b2, al2, be2 in _iproduct(rng, repeat=4):
            c = r_matrix(b, a, b2, a2) * r_matrix(be, al, be2, al2)
            if not c.is_zero():
                rhs = rhs + (Q * Q * c) * (z(a2, al2) * zs(b2, be2))
        if a == b and al == be:
            rhs = rhs + (1 - Q * Q)
        el = zs(b, be) * z(a, al) - rhs
        if not el.is_zero():
            rels.append(Relation(f"mixed b={b},beta={be},a={a},alpha={al}", el))
    return rels


def proportional(x: FreeElement, y: FreeElement) -> bool:
    """``x = c y`` for a nonzero scalar ``c`` in the field of rational functions of ``q``."""
    if x.is_zero() or y.is_zero():
        return x.is_zero() and y.is_zero()
    if set(x.terms) != set(y.terms):
        return False
    w0 = next(iter(x.terms))
    xa, ya = x.terms[w0], y.terms[w0]
    return all(x.terms[w] * ya == y.terms[w] * xa for w in x.terms)


@dataclass
class MatchReport:
    pairs: list[tuple[int, int]]
    unmatched_a: list[int]
    unmatched_b: list[int]

    @property
    def complete(self) -> bool:
        return not self.unmatched_a and not self.unmatched_b

    def to_json(self, A=None, B=None) -> dict:
        lab = lambda R, i: R[i].label if R is not None else i  # noqa: E731
        return {
            "complete": self.complete,
            "pairs": [[lab(A, i), lab(B, j)] for i, j in self.pairs],
            "unmatched_a": [lab(A, i) for i in self.unmatched_a],
            "unmatched_b": [lab(B, j) for j in self.unmatched_b],
        }


def match_relation_sets(A: Sequence[Relation], B: Sequence[Relation]) -> MatchReport:
    """Maximum matching of ``A`` against ``B`` under exact proportionality."""
    adj = [[j for j, s in enumerate(B) if proportional(r.element, s.element)] for r in A]
    match_b: dict[int, int] = {}

    def augment(i, seen):
        for j in adj[i]:
            if j in seen:
                continue
            seen.add(j)
            if j not in match_b or augment(match_b[j], seen):
                match_b[j] = i
                return True
        return False

    for i in range(len(A)):
        augment(i, set())
    pairs = sorted((i, j) for j, i in match_b.items())
    matched_a = {i for i, _ in pairs}
    return MatchReport(pairs, [i for i in range(len(A)) if i not in matched_a],
                       [j for j in range(len(B)) if j not in match_b])


def relations_to_json(rels: Sequence[Relation]) -> str:
    return json.dumps([r.to_json() for r in rels], indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# monomials, automorphisms, embeddings

def monomial(A) -> FreeElement:
    """Ordered monomial ``z(A)``: lower index ``n`` down to 1, upper index ``n`` down to 1."""
    A = np.asarray(A, dtype=int)
    n = A.shape[0]
    if A.shape != (n, n) or (A < 0).any():
        raise ValueError("A must be a square matrix of nonnegative integers")
    word = []
    for j in range(n, 0, -1):
        for k in range(n, 0, -1):
            word += [Gen(j, k)] * int(A[j - 1, k - 1])
    return FreeElement({tuple(word): 1})


def grade(A) -> int:
    return int(np.asarray(A, dtype=int).sum())


def psi_automorphism(phis: Sequence[float], e: FreeElement, *, index: str = "lower") -> FreeElement:
    """``z_j^k -> e^{i phi_j} z_j^k``, starred generators get the conjugate phase.

    ``index="upper"`` indexes the phase by ``k`` instead.
    """
    out = []
    for w, c in e.terms.items():
        ang = 0.0
        for g in w:
            j = g.a if index == "lower" else g.alpha
            ang += -phis[j - 1] if g.star else phis[j - 1]
        ph = 1 if ang == 0 else cmath.exp(1j * ang)
        out.append((w, c * LaurentScalar.const(ph)))
    return FreeElement(out)


def zeta_image(g: Gen, n: int = 2) -> tuple[LaurentScalar, tuple[int, int]]:
    """``z_k^j -> (-q)^{k-n} t_{n+k, n+j}``."""
    if g.star:
        raise ValueError("zeta_image takes unstarred generators; use the adjoint for starred ones")
    k, j = g.a, g.alpha
    return minus_q_power(k - n), (n + k, n + j)


def element_x() -> FreeElement:
    one = FreeElement.unit()
    return ((one - z(2, 1) * zs(2, 1) - z(2, 2) * zs(2, 2))
            * (one - z(1, 2) * zs(1, 2) - z(2, 2) * zs(2, 2)))


def scaled(e: FreeElement, factor: ScalarLike = -Q) -> FreeElement:
    """Substitute ``z_1^1 -> factor * z_1^1`` (and the conjugate factor on its adjoint)."""
    f = LaurentScalar.coerce(factor)
    out = []
    for w, c in e.terms.items():
        for g in w:
            if (g.a, g.alpha) == (1, 1):
                c = c * (f.conjugate() if g.star else f)
        out.append((w, c))
    return FreeElement(out)


def coherent_monomial(k: int, j: int, m: int) -> tuple[FreeElement, Callable[[float], float]]:
    """Monomial sending the coherent vacuum to ``c(q) e_k (x) e_j (x) e_m``.

    ``(z_2^2)^j (z_1^2)^k (z_2^1)^m``: the two ladders weighted by ``d_q`` on the
    middle factor act while that factor is still at ``e_0``.
    """
    if min(k, j, m) < 0:
        raise ValueError("indices must be nonnegative")
    word = (Gen(2, 2),) * j + (Gen(1, 2),) * k + (Gen(2, 1),) * m

    def c(q: float) -> float:
        return math.prod(math.sqrt(1 - q ** (2 * i)) for r in (k, j, m) for i in range(1, r + 1))

    return FreeElement({word: 1}), c


# ---------------------------------------------------------------------------
# evaluation in a representation

def evaluate(e: FreeElement, rep) -> TensorExpression:
    """*-homomorphic substitution.

    ``rep`` is anything with ``kinds`` and ``image(gen)``, or a mapping from
    unstarred :class:`Gen` to expressions.
    """
    if isinstance(rep, Mapping):
        images = dict(rep)
        kinds = next(iter(images.values())).kinds

        def image(g):
            base = images.get(Gen(g.a, g.alpha))
            if base is None:
                raise KeyError(f"representation has no image for {g}")
            return base.adjoint() if g.star else base
    else:
        kinds, image = rep.kinds, rep.image
    cache: dict[Gen, TensorExpression] = {}
    total = TensorExpression.zero(kinds)
    for w, c in e.terms.items():
        term = TensorExpression.identity(kinds, c)
        for g in w:
            if g not in cache:
                cache[g] = image(g)
            term = term * cache[g]
            if term.is_zero():
                break
        total = total + term
    return total


def random_element(rng: np.random.Generator, *, max_degree: int = 3, max_terms: int = 4, n: int = 2) -> FreeElement:
    """Seeded random element with small integer coefficients."""
    gens = generators(n, starred=True)
    out = FreeElement()
    while out.is_zero():
        for _ in range(int(rng.integers(1, max_terms + 1))):
            d = int(rng.integers(0, max_degree + 1))
            word = tuple(gens[int(i)] for i in rng.integers(0, len(gens), size=d))
            coeff = int(rng.integers(-3, 4))
            out = out + FreeElement({word: coeff})
    return out
