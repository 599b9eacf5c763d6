"""Hecke algebra of S_n with quadratic relation (T_i - v)(T_i + 1/v) = 0.

Permutations are tuples in one-line notation.  ``s_i w`` swaps the *values*
i and i+1 of ``w``; ``w s_i`` swaps the *positions* i and i+1.

Coefficients are :class:`RationalFunction`.  The products that appear in the
factorized elements, (T_i - v^r/[r]) ..., are evaluated on numerators
([r] T_i - v^r) with Laurent coefficients and divided by the product of the
quantum integers once at the end, which keeps gcd computations off the hot
path.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Mapping, Sequence

from .combinatorics import YoungDiagram, reduced_word, shifts
from .laurent import (
    ONE,
    ONE_L,
    V,
    V_INV,
    LaurentPoly,
    RationalFunction,
    factor_scalar,
    quantum_integer,
)

__all__ = [
    "Permutation",
    "HeckeElement",
    "identity",
    "length",
    "perm_from_word",
    "perm_reduced_word",
    "all_reduced_words",
    "bruhat_le",
    "act_on_signs",
    "parabolic_blocks",
    "parabolic_subgroup",
    "longest_parabolic",
    "max_coset_rep",
    "min_coset_rep",
    "is_min_coset_rep",
    "grassmannian_perm",
    "mul_gen_left",
    "multiply",
    "bar",
    "kl_element",
    "c_parabolic",
    "yang_baxter",
    "yb_scalars",
    "x_lambda",
    "x_lambda_factors",
    "apply_factors",
    "MAX_KL_N",
]

Permutation = tuple

Q_SHIFT = V - V_INV  # v - 1/v
MAX_KL_N = 8


# --------------------------------------------------------------------------
# permutations
# --------------------------------------------------------------------------

def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def check_perm(w: Sequence[int]) -> Permutation:
    w = tuple(int(x) for x in w)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise ValueError(f"{list(w)} is not a permutation of 1..{len(w)}")
    return w


@lru_cache(maxsize=None)
def length(w: Permutation) -> int:
    n = len(w)
    return sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])


def _swap_values(w: Permutation, i: int) -> Permutation:
    return tuple(i + 1 if x == i else i if x == i + 1 else x for x in w)


def _swap_positions(w: Permutation, i: int) -> Permutation:
    lst = list(w)
    lst[i - 1], lst[i] = lst[i], lst[i - 1]
    return tuple(lst)


def perm_from_word(word: Iterable[int], n: int) -> Permutation:
    """The product s_{word[0]} s_{word[1]} ... in one-line notation."""
    w = identity(n)
    for i in word:
        if not 1 <= i <= n - 1:
            raise ValueError(f"generator s_{i} out of range for S_{n}")
        w = _swap_positions(w, i)
    return w


@lru_cache(maxsize=None)
def perm_reduced_word(w: Permutation) -> tuple[int, ...]:
    """A reduced word in product order, found by peeling left descents."""
    word = []
    while True:
        for i in range(1, len(w)):
            if w.index(i + 1) < w.index(i):
                word.append(i)
                w = _swap_values(w, i)
                break
        else:
            return tuple(word)


def all_reduced_words(w: Permutation) -> list[tuple[int, ...]]:
    @lru_cache(maxsize=None)
    def rec(u):
        out = []
        for i in range(1, len(u)):
            if u.index(i + 1) < u.index(i):
                out.extend((i,) + rest for rest in rec(_swap_values(u, i)))
        return out or [()]
    return rec(w)


def bruhat_le(u: Permutation, w: Permutation) -> bool:
    """Tableau criterion: sorted prefixes of u are dominated by those of w."""
    for i in range(1, len(u)):
        su, sw = sorted(u[:i]), sorted(w[:i])
        if any(a > b for a, b in zip(su, sw)):
            return False
    return True


def act_on_signs(w: Permutation, eps: str) -> str:
    """Positional action: the sign at position q moves to position w(q)."""
    out = [""] * len(eps)
    for q, s in enumerate(eps):
        out[w[q] - 1] = s
    return "".join(out)


def parabolic_blocks(J: Iterable[int], n: int) -> list[tuple[int, ...]]:
    """Maximal runs of positions joined by generators in J."""
    J = set(J)
    blocks, cur = [], [1]
    for p in range(1, n):
        if p in J:
            cur.append(p + 1)
        else:
            blocks.append(tuple(cur))
            cur = [p + 1]
    blocks.append(tuple(cur))
    return blocks


def parabolic_subgroup(J: Iterable[int], n: int) -> list[Permutation]:
    blocks = parabolic_blocks(J, n)
    out = []
    for choice in product(*(permutations(b) for b in blocks)):
        out.append(tuple(x for part in choice for x in part))
    return out


def longest_parabolic(J: Iterable[int], n: int) -> Permutation:
    return max_coset_rep(identity(n), J)


def max_coset_rep(w: Permutation, J: Iterable[int]) -> Permutation:
    """Longest element of the coset w W_J: sort each J-block of positions decreasingly."""
    out = []
    for b in parabolic_blocks(J, len(w)):
        out.extend(sorted((w[p - 1] for p in b), reverse=True))
    return tuple(out)


def min_coset_rep(w: Permutation, J: Iterable[int]) -> Permutation:
    out = []
    for b in parabolic_blocks(J, len(w)):
        out.extend(sorted(w[p - 1] for p in b))
    return tuple(out)


def is_min_coset_rep(w: Permutation, J: Iterable[int]) -> bool:
    return all(w[j - 1] < w[j] for j in J)


def grassmannian_perm(lam: YoungDiagram) -> Permutation:
    return perm_from_word(reduced_word(lam), lam.shape.n)


# --------------------------------------------------------------------------
# coefficient-dict kernels; values may be LaurentPoly or RationalFunction
# --------------------------------------------------------------------------

def _acc(out: dict, key, val):
    cur = out.get(key)
    if cur is not None:
        val = cur + val
    if val:
        out[key] = val
    elif cur is not None:
        del out[key]


def _gen_left(i: int, terms: Mapping) -> dict:
    out: dict = {}
    for w, c in terms.items():
        sw = _swap_values(w, i)
        _acc(out, sw, c)
        if w.index(i + 1) < w.index(i):
            _acc(out, w, Q_SHIFT * c)
    return out


def _gen_right(terms: Mapping, i: int) -> dict:
    out: dict = {}
    for w, c in terms.items():
        ws = _swap_positions(w, i)
        _acc(out, ws, c)
        if w[i - 1] > w[i]:
            _acc(out, w, Q_SHIFT * c)
    return out


def _axpy(out: dict, scale, terms: Mapping):
    for w, c in terms.items():
        _acc(out, w, scale * c)


def _scaled_factor_left(i: int, r: int, terms: Mapping) -> dict:
    # ([r] T_i - v^r) * terms
    out = {w: quantum_integer(r) * c for w, c in _gen_left(i, terms).items()}
    _axpy(out, -V.shift(r - 1), terms)
    return out


# --------------------------------------------------------------------------
# HeckeElement
# --------------------------------------------------------------------------

class HeckeElement:
    """Finite combination of T_w with rational-function coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping | None = None):
        self.n = n
        clean = {}
        for w, c in (terms or {}).items():
            if not isinstance(c, RationalFunction):
                c = RationalFunction(c)
            if c:
                if len(w) != n:
                    raise ValueError(f"permutation {w} does not live in S_{n}")
                clean[tuple(w)] = c
        self.terms = clean

    @classmethod
    def T(cls, w: Sequence[int], coeff=ONE) -> "HeckeElement":
        w = check_perm(w)
        return cls(len(w), {w: coeff})

    @classmethod
    def one(cls, n: int) -> "HeckeElement":
        return cls(n, {identity(n): ONE})

    @classmethod
    def gen(cls, i: int, n: int) -> "HeckeElement":
        return cls.T(perm_from_word([i], n))

    def _check(self, other: "HeckeElement"):
        if not isinstance(other, HeckeElement):
            raise TypeError(f"expected HeckeElement, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"context mismatch: S_{self.n} vs S_{other.n}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            _acc(out, w, c)
        return HeckeElement(self.n, out)

    def __neg__(self):
        return HeckeElement(self.n, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HeckeElement":
        return HeckeElement(self.n, {w: c * x for w, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    def coeff(self, w) -> RationalFunction:
        return self.terms.get(tuple(w), RationalFunction())

    def is_integral(self) -> bool:
        return all(c.is_laurent() for c in self.terms.values())

    def bar(self) -> "HeckeElement":
        return bar(self)

    def __repr__(self):
        return f"HeckeElement(n={self.n}, {len(self.terms)} terms)"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda u: (length(u), u)):
            parts.append(f"({self.terms[w]}) T[{''.join(map(str, w))}]")
        return " + ".join(parts)

    def to_json(self) -> list[dict]:
        return [{"perm": list(w), "coeff": self.terms[w].to_json()}
                for w in sorted(self.terms, key=lambda u: (length(u), u))]

    @classmethod
    def from_json(cls, data, n: int | None = None) -> "HeckeElement":
        terms = {tuple(d["perm"]): RationalFunction.from_json(d["coeff"]) for d in data}
        if n is None:
            if not terms:
                raise ValueError("cannot infer n from an empty element")
            n = len(next(iter(terms)))
        return cls(n, terms)


def mul_gen_left(i: int, h: HeckeElement) -> HeckeElement:
    """T_i * h."""
    if not 1 <= i <= h.n - 1:
        raise ValueError(f"generator index {i} out of range for S_{h.n}")
    return HeckeElement(h.n, _gen_left(i, h.terms))


def multiply(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    """Product via generator actions along reduced words of the smaller side."""
    a._check(b)
    out: dict = {}
    if len(a.terms) <= len(b.terms):
        for w, c in a.terms.items():
            cur = b.terms
            for i in reversed(perm_reduced_word(w)):
                cur = _gen_left(i, cur)
            _axpy(out, c, cur)
    else:
        for u, c in b.terms.items():
            cur = a.terms
            for i in perm_reduced_word(u):
                cur = _gen_right(cur, i)
            _axpy(out, c, cur)
    return HeckeElement(a.n, out)


# --------------------------------------------------------------------------
# bar involution
# --------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _bar_T(w: Permutation) -> dict:
    # bar(T_w) = T_i^{-1} bar(T_{s_i w}) with T_i^{-1} = T_i - (v - 1/v)
    word = perm_reduced_word(w)
    if not word:
        return {w: ONE_L}
    i = word[0]
    prev = _bar_T(_swap_values(w, i))
    out = _gen_left(i, prev)
    _axpy(out, -Q_SHIFT, prev)
    return out


def bar(h: HeckeElement) -> HeckeElement:
    """Ring involution: v -> 1/v, T_w -> (T_{w^{-1}})^{-1}."""
    out: dict = {}
    for w, c in h.terms.items():
        _axpy(out, c.bar(), _bar_T(w))
    return HeckeElement(h.n, out)


# --------------------------------------------------------------------------
# Kazhdan-Lusztig basis (triangular correction solver)
# --------------------------------------------------------------------------

_KL_CACHE: dict[Permutation, dict] = {}


def _symmetrized_low_part(c: LaurentPoly) -> LaurentPoly | None:
    if not c.coeffs or c.low > 0:
        return None
    terms = {}
    for e, x in c.terms.items():
        if e <= 0:
            terms[e] = terms.get(e, 0) + x
            if e < 0:
                terms[-e] = terms.get(-e, 0) + x
    return LaurentPoly.from_terms(terms)


def _kl_terms(w: Permutation) -> dict:
    hit = _KL_CACHE.get(w)
    if hit is not None:
        return hit
    word = perm_reduced_word(w)
    if not word:
        res = {w: ONE_L}
    else:
        i = word[0]
        prev = _kl_terms(_swap_values(w, i))
        # (T_i - v) C_{s_i w} is bar-invariant with leading term T_w
        x = _gen_left(i, prev)
        _axpy(x, -V, prev)
        top = length(w)
        for ell in range(top - 1, -1, -1):
            for z in [z for z in x if length(z) == ell]:
                p = _symmetrized_low_part(x[z])
                if p is not None:
                    _axpy(x, -p, _kl_terms(z))
        res = x
    _KL_CACHE[w] = res
    return res


def kl_element(w: Sequence[int], force: bool = False) -> HeckeElement:
    """C_w: bar-invariant, T_w plus v Z[v]-combinations of lower T_y."""
    w = check_perm(w)
    if len(w) > MAX_KL_N and not force:
        raise ValueError(f"KL basis for S_{len(w)} refused above n={MAX_KL_N}; pass force=True")
    return HeckeElement(len(w), {u: RationalFunction.laurent(c) for u, c in _kl_terms(w).items()})


def c_parabolic(J: Iterable[int], n: int) -> HeckeElement:
    """C_J = sum over the parabolic subgroup W_J of (-v)^(l(w_0^J) - l(w)) T_w."""
    J = frozenset(J)
    if any(not 1 <= j <= n - 1 for j in J):
        raise ValueError(f"J={sorted(J)} is not a subset of 1..{n - 1}")
    top = length(longest_parabolic(J, n))
    terms = {}
    for w in parabolic_subgroup(J, n):
        d = top - length(w)
        terms[w] = RationalFunction.monomial(d, (-1) ** d)
    return HeckeElement(n, terms)


# --------------------------------------------------------------------------
# factorized products: Yang-Baxter elements and X_lambda
# --------------------------------------------------------------------------

def apply_factors(factors: Sequence[tuple[int, int]], h: HeckeElement) -> HeckeElement:
    """(T_{i_1} - v^{r_1}/[r_1]) ... (T_{i_m} - v^{r_m}/[r_m]) * h, factors in product order."""
    if h.is_integral():
        terms = {w: c.num for w, c in h.terms.items()}
        denom = ONE_L
        for i, r in reversed(factors):
            if not 1 <= i <= h.n - 1:
                raise ValueError(f"generator index {i} out of range for S_{h.n}")
            terms = _scaled_factor_left(i, r, terms)
            denom = denom * quantum_integer(r)
        return HeckeElement(h.n, {w: RationalFunction(c, denom) for w, c in terms.items()})
    cur = h
    for i, r in reversed(factors):
        cur = mul_gen_left(i, cur) - cur.scale(factor_scalar(r))
    return cur


def yb_scalars(word: Sequence[int], n: int) -> list[int]:
    """Spectral shifts r_m for a word in product order (last letter acts first).

    Raises ValueError if the word is not reduced.
    """
    seq = list(range(1, n + 1))
    rs = []
    for i in reversed(word):
        if not 1 <= i <= n - 1:
            raise ValueError(f"generator index {i} out of range for S_{n}")
        a, b = seq[i - 1], seq[i]
        if b - a <= 0:
            raise ValueError(f"word {list(word)} is not reduced")
        rs.append(b - a)
        seq[i - 1], seq[i] = b, a
    return rs[::-1]


def yang_baxter(word: Sequence[int], n: int) -> HeckeElement:
    """Yang-Baxter element for a reduced word given in product order."""
    rs = yb_scalars(word, n)
    return apply_factors(list(zip(word, rs)), HeckeElement.one(n))


def x_lambda_factors(lam: YoungDiagram) -> list[tuple[int, int]]:
    """(generator, shift) per box, in reading order (leftmost factor first)."""
    k = lam.shape.k
    r = shifts(lam)
    out = []
    for i in range(len(lam.rows), 0, -1):
        for j in range(lam.rows[i - 1], 0, -1):
            out.append((k + j - i, r[i, j]))
    return out


def x_lambda(lam: YoungDiagram) -> HeckeElement:
    return apply_factors(x_lambda_factors(lam), HeckeElement.one(lam.shape.n))
