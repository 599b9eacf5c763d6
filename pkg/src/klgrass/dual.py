"""The dual parabolic module M', realized on squarefree polynomials.

M' lives on sign sequences like M (``kind="M'"`` in :mod:`klgrass.parabolic`)
and is identified with the span of squarefree monomials of degree n-k via

    w_lambda(base)  ->  v^(-|lambda|) * prod(x_i for eps_i == '-').

Under that identification T_i - v becomes ``nabla_op(i, .)``, which is
(v x_{i+1} - x_i / v) times the divided difference in x_i, x_{i+1}.
"""
from __future__ import annotations

from typing import Mapping, Sequence

from .combinatorics import (
    GrassmannShape,
    base_sequence,
    check_signs,
)
from .hecke import Permutation, _acc, act_on_signs, is_min_coset_rep, perm_reduced_word
from .laurent import ONE, V, V_INV, RationalFunction
from .parabolic import SAME_DUAL, MElement, _act_T, _check_gen, kl_by_signs, sign_length

__all__ = [
    "KIND",
    "MultilinearPoly",
    "act_gen_shifted",
    "iso_to_poly",
    "poly_to_iso",
    "divided_difference",
    "nabla_op",
    "pair_signs",
    "q_factors",
    "q_polynomial",
    "format_q",
    "factorized_dual",
    "dual_parabolic_kl",
]

KIND = "M'"
Monomial = tuple  # sorted variable indices


class MultilinearPoly:
    """Squarefree polynomial in x_1..x_n with rational-function coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping | None = None):
        self.n = n
        clean = {}
        for mono, c in (terms or {}).items():
            mono = tuple(sorted(mono))
            if len(set(mono)) != len(mono) or any(not 1 <= t <= n for t in mono):
                raise ValueError(f"monomial {mono} is not squarefree in x_1..x_{n}")
            if not isinstance(c, RationalFunction):
                c = RationalFunction(c)
            _acc(clean, mono, c)
        self.terms = clean

    @classmethod
    def monomial(cls, n: int, variables: Sequence[int], coeff=ONE) -> "MultilinearPoly":
        return cls(n, {tuple(variables): coeff})

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, c)
        return MultilinearPoly(self.n, out)

    def __neg__(self):
        return MultilinearPoly(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "MultilinearPoly":
        return MultilinearPoly(self.n, {m: c * x for m, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultilinearPoly):
            return self.scale(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            s1 = set(m1)
            for m2, c2 in other.terms.items():
                if s1.isdisjoint(m2):
                    _acc(out, tuple(sorted(m1 + m2)), c1 * c2)
                else:
                    raise ValueError("product leaves the squarefree polynomials")
        return MultilinearPoly(self.n, out)

    def __eq__(self, other):
        if not isinstance(other, MultilinearPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def degrees(self) -> set[int]:
        return {len(m) for m in self.terms}

    def in_space(self, k: int) -> bool:
        """Membership in P(k, n): every monomial has degree n - k."""
        return self.degrees() <= {self.n - k}

    def at_zero(self) -> "MultilinearPoly":
        """Specialize v = 0; raises if some coefficient has a pole there."""
        out = {}
        for m, c in self.terms.items():
            val = c.valuation()
            if val < 0:
                raise ValueError(f"coefficient {c} of {m} has a pole at v = 0")
            if val == 0:
                const, rem = divmod(c.num.coeffs[0], c.den.coeffs[0])
                if rem:
                    raise ValueError(f"constant term of {c} is not an integer")
                out[m] = RationalFunction.from_int(const)
        return MultilinearPoly(self.n, out)

    def sorted_monomials(self) -> list[Monomial]:
        return sorted(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in self.sorted_monomials():
            c = self.terms[m]
            mono = " ".join(f"x{t}" for t in m) or "1"
            parts.append(f"({c}) {mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"MultilinearPoly(n={self.n}: {self})"

    def to_json(self) -> list[dict]:
        return [{"vars": list(m), "coeff": self.terms[m].to_json()} for m in self.sorted_monomials()]

    @classmethod
    def from_json(cls, data, n: int) -> "MultilinearPoly":
        return cls(n, {tuple(d["vars"]): RationalFunction.from_json(d["coeff"]) for d in data})


def _x(n: int, i: int, coeff=ONE) -> MultilinearPoly:
    return MultilinearPoly(n, {(i,): coeff})


# --------------------------------------------------------------------------
# the module M' and the isomorphism
# --------------------------------------------------------------------------

def act_gen_shifted(i: int, x: MElement) -> MElement:
    """(T_i - v) acting on an element of M'."""
    if x.kind != KIND:
        raise ValueError("act_gen_shifted needs an element of M'")
    _check_gen(i, x.shape)
    out = _act_T(i, x.terms, SAME_DUAL)
    for e, c in x.terms.items():
        _acc(out, e, -V * c)
    return MElement(x.shape, out, KIND)


def _monomial_of(eps: str) -> Monomial:
    return tuple(t for t, s in enumerate(eps, 1) if s == "-")


def iso_to_poly(x: MElement) -> MultilinearPoly:
    out = {}
    for e, c in x.terms.items():
        out[_monomial_of(e)] = c * RationalFunction.monomial(-sign_length(e))
    return MultilinearPoly(x.shape.n, out)


def poly_to_iso(f: MultilinearPoly, k: int) -> MElement:
    shape = GrassmannShape(f.n, k)
    if not f.in_space(k):
        raise ValueError(f"polynomial is not homogeneous of degree {f.n - k}")
    out = {}
    for m, c in f.terms.items():
        eps = "".join("-" if t in m else "+" for t in range(1, f.n + 1))
        out[eps] = c * RationalFunction.monomial(sign_length(eps))
    return MElement(shape, out, KIND)


def divided_difference(i: int, f: MultilinearPoly) -> MultilinearPoly:
    """(f - f^{s_i}) / (x_i - x_{i+1}); for f = A + x_i B + x_{i+1} C + x_i x_{i+1} D this is B - C."""
    if not 1 <= i <= f.n - 1:
        raise ValueError(f"divided difference index {i} out of range for n={f.n}")
    out: dict = {}
    for m, c in f.terms.items():
        has_i, has_j = i in m, i + 1 in m
        if has_i and not has_j:
            _acc(out, tuple(t for t in m if t != i), c)
        elif has_j and not has_i:
            _acc(out, tuple(t for t in m if t != i + 1), -c)
    return MultilinearPoly(f.n, out)


def nabla_op(i: int, f: MultilinearPoly) -> MultilinearPoly:
    """f -> (v x_{i+1} - x_i / v) * divided_difference(i, f)."""
    d = divided_difference(i, f)
    lin = _x(f.n, i + 1, RationalFunction.laurent(V)) + _x(f.n, i, RationalFunction.laurent(-V_INV))
    return lin * d


# --------------------------------------------------------------------------
# the parenthesis pairing and Q_eps
# --------------------------------------------------------------------------

def pair_signs(eps: str) -> tuple[list[tuple[int, int]], list[int]]:
    """Match '-' (opening) with later '+' (closing); returns (pairs, single minuses)."""
    check_signs(eps)
    stack, pairs = [], []
    for t, s in enumerate(eps, 1):
        if s == "-":
            stack.append(t)
        elif stack:
            pairs.append((stack.pop(), t))
    return sorted(pairs), stack


def q_factors(eps: str) -> tuple[int, list[int], list[tuple[int, int, int]]]:
    """(v exponent of the prefactor, singles, pairs as (i, j, v-exponent of x_j))."""
    pairs, singles = pair_signs(eps)
    return (-sign_length(eps), singles, [(i, j, j + 1 - i) for i, j in pairs])


def q_polynomial(eps: str) -> MultilinearPoly:
    """v^(-|lambda|) * prod(x_i - v^(j+1-i) x_j over pairs) * prod(x_i over singles)."""
    n = len(eps)
    pre, singles, pairs = q_factors(eps)
    f = MultilinearPoly(n, {(): RationalFunction.monomial(pre)})
    for i in singles:
        f = f * _x(n, i)
    for i, j, e in pairs:
        f = f * (_x(n, i) + _x(n, j, RationalFunction.monomial(e, -1)))
    return f


def format_q(eps: str, style: str = "plain") -> str:
    """Factored rendering, e.g. ``v^-10 x2 x7 (x3 - v^2 x4)(x5 - v^2 x6)``."""
    pre, singles, pairs = q_factors(eps)
    if style == "tex":
        var = lambda t: f"x_{{{t}}}" if t >= 10 else f"x_{t}"
        vp = lambda e: f"v^{{{e}}}" if (e < 0 or e >= 10) else f"v^{e}"
        head = [vp(pre)] if pre else []
        head += [var(t) for t in singles]
        tail = "".join(f"({var(i)}-{vp(e)}{var(j)})" for i, j, e in pairs)
    else:
        var = lambda t: f"x{t}"
        vp = lambda e: f"v^{e}"
        head = [vp(pre)] if pre else []
        head += [var(t) for t in singles]
        tail = "".join(f"({var(i)} - {vp(e)} {var(j)})" for i, j, e in pairs)
    if tail:
        head.append(tail)
    return " ".join(head) or "1"


# --------------------------------------------------------------------------
# factorized basis and the triangular oracle
# --------------------------------------------------------------------------

def _dual_start(y: Permutation, k: int) -> GrassmannShape:
    shape = GrassmannShape(len(y), k)
    if not is_min_coset_rep(tuple(y), shape.J):
        raise ValueError(f"{list(y)} is not a minimal coset representative for k={k}")
    return shape


def factorized_dual(y: Permutation, k: int, word: Sequence[int] | None = None) -> MElement:
    """(T_{j} - v) ... (T_{h} - v) applied to the base, for a reduced word j..h of y.

    The word is in product order; its last letter acts first.
    """
    shape = _dual_start(y, k)
    if word is None:
        word = perm_reduced_word(tuple(y))
    x = MElement.one(shape, KIND)
    for i in reversed(word):
        x = act_gen_shifted(i, x)
    return x


def dual_parabolic_kl(y: Permutation, k: int) -> MElement:
    """C'^J_y from the bar-matrix triangular solver on M'."""
    shape = _dual_start(y, k)
    return kl_by_signs(act_on_signs(tuple(y), base_sequence(shape)), KIND)
