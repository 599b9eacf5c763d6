"""The parabolic module on sign sequences, its KL basis, and X_lambda acting on it.

Two module structures share this code.  Both act on the span of sign
sequences with k pluses, with T_i sending (+-) to the swapped sequence and
(-+) to swapped + (v - 1/v) * itself; they differ on (++) and (--):

* ``M``:  T_i eps = -1/v * eps   (induced from T_j -> -1/v)
* ``M'``: T_i eps = v * eps      (induced from T_j -> v), see :mod:`klgrass.dual`

In both, T_y applied to the base sequence ``+^k -^(n-k)`` is exactly y(base)
for a minimal coset representative y, so the sign-sequence basis *is* the
standard basis m_y.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Mapping

from .combinatorics import (
    GrassmannShape,
    YoungDiagram,
    all_sign_sequences,
    base_sequence,
    check_signs,
    to_sign_sequence,
    weight,
)
from .hecke import (
    HeckeElement,
    Permutation,
    Q_SHIFT,
    _acc,
    _axpy,
    act_on_signs,
    is_min_coset_rep,
    perm_reduced_word,
    x_lambda_factors,
)
from .laurent import ONE, ONE_L, V, V_INV, LaurentPoly, RationalFunction, quantum_integer

__all__ = [
    "MElement",
    "act_gen",
    "act_hecke",
    "bar_m",
    "parabolic_kl",
    "kl_by_signs",
    "apply_x_lambda",
    "check_leading_term",
    "check_valuation_bound",
    "valuation_report",
    "sign_length",
]

SAME_M = -V_INV
SAME_DUAL = V


def sign_length(eps: str) -> int:
    """Length of the minimal coset representative, i.e. |lambda|: inversions (-,+)."""
    total = minus = 0
    for s in eps:
        if s == "-":
            minus += 1
        else:
            total += minus
    return total


class MElement:
    """Combination of sign sequences with rational-function coefficients."""

    __slots__ = ("shape", "terms", "kind")

    def __init__(self, shape: GrassmannShape, terms: Mapping | None = None, kind: str = "M"):
        self.shape = shape
        self.kind = kind
        clean = {}
        for eps, c in (terms or {}).items():
            if not isinstance(c, RationalFunction):
                c = RationalFunction(c)
            if c:
                clean[check_signs(eps, shape)] = c
        self.terms = clean

    @classmethod
    def basis(cls, eps: str, shape: GrassmannShape | None = None, kind: str = "M") -> "MElement":
        if shape is None:
            shape = GrassmannShape(len(eps), eps.count("+"))
        return cls(shape, {eps: ONE}, kind)

    @classmethod
    def one(cls, shape: GrassmannShape, kind: str = "M") -> "MElement":
        return cls(shape, {base_sequence(shape): ONE}, kind)

    def _check(self, other):
        if not isinstance(other, MElement):
            raise TypeError(f"expected MElement, got {type(other).__name__}")
        if other.shape != self.shape or other.kind != self.kind:
            raise ValueError("context mismatch between module elements")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            _acc(out, e, c)
        return MElement(self.shape, out, self.kind)

    def __neg__(self):
        return MElement(self.shape, {e: -c for e, c in self.terms.items()}, self.kind)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "MElement":
        return MElement(self.shape, {e: c * x for e, x in self.terms.items()}, self.kind)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, MElement):
            return NotImplemented
        return (self.shape, self.kind, self.terms) == (other.shape, other.kind, other.terms)

    def __hash__(self):
        return hash((self.shape, self.kind, frozenset(self.terms.items())))

    def coeff(self, eps: str) -> RationalFunction:
        return self.terms.get(eps, RationalFunction())

    def is_integral(self) -> bool:
        return all(c.is_laurent() for c in self.terms.values())

    def sorted_signs(self) -> list[str]:
        return sorted(self.terms, key=lambda e: (-sign_length(e), e))

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"MElement({self.kind}, n={self.shape.n}, k={self.shape.k}: {self})"

    def to_json(self) -> list[dict]:
        return [{"sign": e, "coeff": self.terms[e].to_json()} for e in self.sorted_signs()]

    @classmethod
    def from_json(cls, data, shape: GrassmannShape | None = None, kind: str = "M") -> "MElement":
        terms = {d["sign"]: RationalFunction.from_json(d["coeff"]) for d in data}
        if shape is None:
            if not terms:
                raise ValueError("cannot infer the shape of an empty element")
            e = next(iter(terms))
            shape = GrassmannShape(len(e), e.count("+"))
        return cls(shape, terms, kind)


def format_coeff_prefix(c: RationalFunction, first: bool) -> str:
    """Render c as a signed prefix for a basis vector."""
    if c == ONE:
        return "" if first else "+ "
    if c == -ONE:
        return "-" if first else "- "
    terms = c.num.terms if c.is_laurent() else None
    if terms is not None and len(terms) == 1:
        (e, x), = terms.items()
        mag = abs(x)
        body = "v" if e == 1 else f"v^{e}" if e else ""
        text = (f"{mag} {body}" if mag != 1 else body).strip() if body else str(mag)
        sign = "-" if x < 0 else "+"
        if first:
            return f"-{text} " if sign == "-" else f"{text} "
        return f"{sign} {text} "
    text = f"({c})"
    return f"{text} " if first else f"+ {text} "


def format_element(x: MElement) -> str:
    if not x.terms:
        return "0"
    parts = []
    for i, e in enumerate(x.sorted_signs()):
        parts.append(f"{format_coeff_prefix(x.terms[e], i == 0)}({e})")
    return " ".join(parts)


# --------------------------------------------------------------------------
# generator action kernels
# --------------------------------------------------------------------------

def _swap(eps: str, i: int) -> str:
    return eps[: i - 1] + eps[i] + eps[i - 1] + eps[i + 1:]


def _act_T(i: int, terms: Mapping, same) -> dict:
    out: dict = {}
    for eps, c in terms.items():
        a, b = eps[i - 1], eps[i]
        if a == b:
            _acc(out, eps, same * c)
        else:
            _acc(out, _swap(eps, i), c)
            if a == "-":
                _acc(out, eps, Q_SHIFT * c)
    return out


def _check_gen(i: int, shape: GrassmannShape):
    if not 1 <= i <= shape.n - 1:
        raise ValueError(f"generator index {i} out of range for n={shape.n}")


def act_gen(i: int, x: MElement) -> MElement:
    """T_i acting on x."""
    _check_gen(i, x.shape)
    same = SAME_M if x.kind == "M" else SAME_DUAL
    return MElement(x.shape, _act_T(i, x.terms, same), x.kind)


def act_hecke(h: HeckeElement, x: MElement) -> MElement:
    if h.n != x.shape.n:
        raise ValueError(f"context mismatch: S_{h.n} acting on n={x.shape.n}")
    same = SAME_M if x.kind == "M" else SAME_DUAL
    out: dict = {}
    for w, c in h.terms.items():
        cur = x.terms
        for i in reversed(perm_reduced_word(w)):
            cur = _act_T(i, cur, same)
        _axpy(out, c, cur)
    return MElement(x.shape, out, x.kind)


# --------------------------------------------------------------------------
# bar involution and the triangular KL solver
# --------------------------------------------------------------------------

def _descent(eps: str) -> int | None:
    for i in range(1, len(eps)):
        if eps[i - 1] == "-" and eps[i] == "+":
            return i
    return None


@lru_cache(maxsize=None)
def _bar_basis(eps: str, kind: str) -> dict:
    # bar(m_eps) = T_i^{-1} bar(m_{s_i eps}), T_i^{-1} = T_i - (v - 1/v)
    i = _descent(eps)
    if i is None:
        return {eps: ONE_L}
    prev = _bar_basis(_swap(eps, i), kind)
    out = _act_T(i, prev, SAME_M if kind == "M" else SAME_DUAL)
    _axpy(out, -Q_SHIFT, prev)
    return out


def bar_m(x: MElement) -> MElement:
    """Bar-semilinear involution fixing the base sequence."""
    out: dict = {}
    for eps, c in x.terms.items():
        _axpy(out, c.bar(), _bar_basis(eps, x.kind))
    return MElement(x.shape, out, x.kind)


def _positive_part(q: LaurentPoly, where: str) -> LaurentPoly:
    terms = q.terms
    if terms.get(0) or any(terms.get(-e, 0) != -c for e, c in terms.items()):
        raise ArithmeticError(f"bar system inconsistent at {where}: {q} is not anti-symmetric")
    return LaurentPoly.from_terms({e: c for e, c in terms.items() if e > 0})


@lru_cache(maxsize=None)
def _kl_solve(top: str, kind: str) -> dict:
    """Coefficients p_z of C_top = sum p_z m_z from bar(C) = C, solved downwards.

    p_x - bar(p_x) = sum_{z > x} bar(p_z) R_{x,z} where bar(m_z) = sum_x R_{x,z} m_x,
    and p_x is the part of the right side with positive exponents.
    """
    shape = GrassmannShape(len(top), top.count("+"))
    ell = sign_length(top)
    p = {top: ONE_L}
    lower = [e for e in all_sign_sequences(shape) if sign_length(e) < ell]
    lower.sort(key=lambda e: -sign_length(e))
    bars = {z: _bar_basis(z, kind) for z in [top] + lower}
    for x in lower:
        q = None
        for z, pz in p.items():
            r = bars[z].get(x)
            if r is not None:
                term = pz.bar() * r
                q = term if q is None else q + term
        if q:
            px = _positive_part(q, f"{x} under {top}")
            if px:
                p[x] = px
    return p


def kl_by_signs(eps: str, kind: str = "M") -> MElement:
    """KL basis element indexed by a sign sequence."""
    check_signs(eps)
    shape = GrassmannShape(len(eps), eps.count("+"))
    p = _kl_solve(eps, kind)
    return MElement(shape, {z: RationalFunction.laurent(c) for z, c in p.items()}, kind)


def parabolic_kl(y: Permutation, k: int, kind: str = "M") -> MElement:
    """C^J_y for y a minimal coset representative of S_n / (S_k x S_{n-k})."""
    shape = GrassmannShape(len(y), k)
    if not is_min_coset_rep(tuple(y), shape.J):
        raise ValueError(f"{list(y)} is not a minimal coset representative for k={k}")
    return kl_by_signs(act_on_signs(tuple(y), base_sequence(shape)), kind)


# --------------------------------------------------------------------------
# X_lambda on the base vector, and the valuation checks
# --------------------------------------------------------------------------

def apply_x_lambda(lam: YoungDiagram, factors=None) -> MElement:
    """X_lambda applied to the base sequence, one factor at a time, box (1,1) first.

    ``factors`` overrides the (generator, shift) list, for fault injection.
    """
    shape = lam.shape
    if factors is None:
        factors = x_lambda_factors(lam)
    terms = {base_sequence(shape): ONE_L}
    denom = ONE_L
    for i, r in reversed(factors):
        _check_gen(i, shape)
        out = {e: quantum_integer(r) * c for e, c in _act_T(i, terms, SAME_M).items()}
        _axpy(out, -V.shift(r - 1), terms)
        terms = out
        denom = denom * quantum_integer(r)
    return MElement(shape, {e: RationalFunction(c, denom) for e, c in terms.items()})


def check_leading_term(lam: YoungDiagram, x: MElement | None = None) -> bool:
    """Coefficient 1 + O(v) at w_lambda(base), O(v) everywhere else."""
    if x is None:
        x = apply_x_lambda(lam)
    lead = to_sign_sequence(lam)
    c = x.coeff(lead)
    if not c or c.valuation() != 0 or (c - ONE) and (c - ONE).valuation() < 1:
        return False
    return all(c.valuation() >= 1 for e, c in x.terms.items() if e != lead)


def valuation_report(lam: YoungDiagram, x: MElement | None = None) -> dict:
    """Per-sequence comparison of coefficient valuations with the weight."""
    if x is None:
        x = apply_x_lambda(lam)
    violations, tight = [], []
    for e, c in x.terms.items():
        val, wt = c.valuation(), weight(lam, e)
        if val < wt:
            violations.append({"sign": e, "valuation": val, "weight": wt, "coeff": str(c)})
        elif val == wt:
            tight.append(e)
    return {"violations": violations, "tight": sorted(tight)}


def check_valuation_bound(lam: YoungDiagram, x: MElement | None = None) -> bool:
    """valuation(c_eps) >= weight(lam, eps) for every nonzero coefficient."""
    return not valuation_report(lam, x)["violations"]
