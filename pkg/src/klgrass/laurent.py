"""Exact Laurent polynomials in ``v`` and their field of fractions.

Polynomials are stored densely: a lowest exponent plus a tuple of integer
coefficients whose first and last entries are nonzero.  Python integers give
arbitrary precision, so nothing here can overflow.

A :class:`RationalFunction` is kept in canonical form

    numerator / denominator

where the denominator is an ordinary polynomial with nonzero constant term and
positive leading coefficient, numerator and denominator are coprime, and the
integer content of the pair is 1.  Any power of ``v`` lives in the numerator's
exponent offset.  Canonical form makes ``==`` and ``hash`` structural.
"""
from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt
from typing import Iterable, Mapping

__all__ = [
    "LaurentPoly",
    "RationalFunction",
    "quantum_integer",
    "factor_scalar",
    "bar",
    "valuation",
]


# --------------------------------------------------------------------------
# dense integer polynomial helpers; tuples ordered from the constant term up
# --------------------------------------------------------------------------

def _trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _pmul(a, b):
    if not a or not b:
        return ()
    if len(b) == 1:
        y = b[0]
        return tuple(x * y for x in a)
    if len(a) == 1:
        y = a[0]
        return tuple(x * y for x in b)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _content(a) -> int:
    g = 0
    for x in a:
        g = gcd(g, x)
        if g == 1:
            break
    return g


def _pdivexact(a, b):
    """Return a / b if b divides a in Z[v], otherwise None."""
    if not a:
        return ()
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        return None
    rem = list(a)
    lead = b[-1]
    q = [0] * (da - db + 1)
    for i in range(da - db, -1, -1):
        c = rem[i + db]
        if c:
            qc, r = divmod(c, lead)
            if r:
                return None
            q[i] = qc
            for j, y in enumerate(b):
                rem[i + j] -= qc * y
    if any(rem[:db]):
        return None
    return tuple(q)


def _peval(a, x: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _interpolate(h: int, x: int):
    # symmetric base-x digits of h
    out = []
    half = x // 2
    while h:
        d = h % x
        if d > half:
            d -= x
        out.append(d)
        h = (h - d) // x
    return tuple(out)


def _primitive(a):
    c = _content(a)
    if a[-1] < 0:
        c = -c
    if c == 1:
        return a
    return tuple(x // c for x in a)


def _prem(a, b):
    # pseudo-remainder of a by b
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    while len(rem) - 1 >= db and rem:
        c = rem[-1]
        shift = len(rem) - 1 - db
        rem = [x * lead for x in rem]
        for j, y in enumerate(b):
            rem[shift + j] -= c * y
        rem = list(_trim(rem))
    return tuple(rem)


def _prs_gcd(a, b):
    a, b = _primitive(a), _primitive(b)
    while b:
        r = _prem(a, b)
        a, b = b, (_primitive(r) if r else ())
    return _primitive(a)


def _heu_gcd(a, b):
    """Heuristic gcd of primitive polynomials (evaluate, integer gcd, interpolate).

    Returns None when no candidate is confirmed; the caller falls back to PRS.
    """
    na = max(abs(x) for x in a)
    nb = max(abs(x) for x in b)
    bound = 2 * min(na, nb) + 29
    x = max(min(bound, 99 * isqrt(bound)),
            2 * min(na // abs(a[-1]), nb // abs(b[-1])) + 2)
    for _ in range(6):
        ha, hb = _peval(a, x), _peval(b, x)
        if ha and hb:
            h = _interpolate(gcd(ha, hb), x)
            if h:
                h = _primitive(h)
                if _pdivexact(a, h) is not None and _pdivexact(b, h) is not None:
                    return h
        x = 73794 * x * isqrt(isqrt(x)) // 27011
    return None


def _poly_gcd(a, b):
    """Primitive gcd (positive leading coefficient) of nonzero integer polynomials."""
    if len(a) == 1 or len(b) == 1:
        return (1,)
    a, b = _primitive(a), _primitive(b)
    if a == b:
        return a
    h = _heu_gcd(a, b)
    if h is None:
        h = _prs_gcd(a, b)
    return h


# --------------------------------------------------------------------------
# LaurentPoly
# --------------------------------------------------------------------------

class LaurentPoly:
    """Integer Laurent polynomial ``sum c_e v^e``; immutable."""

    __slots__ = ("low", "coeffs", "_hash")

    def __init__(self, low: int = 0, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        start = 0
        while start < len(c) and c[start] == 0:
            start += 1
        c = _trim(c[start:])
        self.low = low + start if c else 0
        self.coeffs = c
        self._hash = None

    @classmethod
    def _raw(cls, low: int, coeffs: tuple[int, ...]) -> "LaurentPoly":
        # caller guarantees first and last coefficients are nonzero
        obj = object.__new__(cls)
        obj.low = low if coeffs else 0
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def from_terms(cls, terms: Mapping[int, int]) -> "LaurentPoly":
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return ZERO_L
        lo, hi = min(terms), max(terms)
        return cls(lo, [terms.get(e, 0) for e in range(lo, hi + 1)])

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls._raw(exponent, (coeff,)) if coeff else ZERO_L

    @property
    def terms(self) -> dict[int, int]:
        return {self.low + i: c for i, c in enumerate(self.coeffs) if c}

    @property
    def high(self) -> int:
        return self.low + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def valuation(self) -> int:
        if not self.coeffs:
            raise ValueError("valuation of zero is +infinity")
        return self.low

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, int):
                other = LaurentPoly.monomial(0, other)
            else:
                return NotImplemented
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        out = [0] * (hi - lo + 1)
        off = self.low - lo
        for i, c in enumerate(self.coeffs):
            out[off + i] += c
        off = other.low - lo
        for i, c in enumerate(other.coeffs):
            out[off + i] += c
        return LaurentPoly(lo, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw(self.low, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.monomial(0, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return ZERO_L
            return LaurentPoly._raw(self.low, tuple(c * other for c in self.coeffs))
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return ZERO_L
        return LaurentPoly._raw(self.low + other.low, _pmul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are RationalFunction territory")
        out = ONE_L
        for _ in range(e):
            out = out * self
        return out

    def shift(self, e: int) -> "LaurentPoly":
        """Multiply by ``v**e``."""
        return LaurentPoly._raw(self.low + e, self.coeffs) if self.coeffs else self

    def bar(self) -> "LaurentPoly":
        """Substitute ``v -> 1/v``."""
        if not self.coeffs:
            return self
        return LaurentPoly._raw(-self.high, self.coeffs[::-1])

    def evaluate(self, x):
        return sum(c * x ** (self.low + i) for i, c in enumerate(self.coeffs) if c)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.low == other.low and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == LaurentPoly.monomial(0, other)
        if isinstance(other, RationalFunction):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.low, self.coeffs))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({format_laurent(self)!r})"

    def __str__(self):
        return format_laurent(self)

    def to_json(self) -> list[list]:
        return [[e, str(c)] for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        return cls.from_terms({int(e): int(c) for e, c in data})


ZERO_L = LaurentPoly._raw(0, ())
ONE_L = LaurentPoly._raw(0, (1,))
V = LaurentPoly._raw(1, (1,))
V_INV = LaurentPoly._raw(-1, (1,))


# --------------------------------------------------------------------------
# RationalFunction
# --------------------------------------------------------------------------

class RationalFunction:
    """Element of Q(v) in canonical form; immutable.

    >>> RationalFunction(LaurentPoly(2, [1]), quantum_integer(2))
    RationalFunction('v^3 / (1 + v^2)')
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=ZERO_L, den=ONE_L):
        num = _as_laurent(num)
        den = _as_laurent(den)
        if not den.coeffs:
            raise ZeroDivisionError("rational function with zero denominator")
        self.num, self.den = _canonical(num, den)
        self._hash = None

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "RationalFunction":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def laurent(cls, p: LaurentPoly) -> "RationalFunction":
        return cls._raw(p, ONE_L) if p.coeffs else ZERO

    @classmethod
    def from_int(cls, c: int) -> "RationalFunction":
        return cls.laurent(LaurentPoly.monomial(0, c))

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "RationalFunction":
        return cls.laurent(LaurentPoly.monomial(exponent, coeff))

    def is_laurent(self) -> bool:
        return self.den.coeffs == (1,)

    def is_zero(self) -> bool:
        return not self.num.coeffs

    def __bool__(self):
        return bool(self.num.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not other.num.coeffs:
            return self
        if not self.num.coeffs:
            return other
        if self.den.coeffs == (1,) and other.den.coeffs == (1,):
            return RationalFunction.laurent(self.num + other.num)
        if self.den == other.den:
            return _make(self.num + other.num, self.den)
        return _make(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self.num.coeffs or not other.num.coeffs:
            return ZERO
        if self.den.coeffs == (1,) and other.den.coeffs == (1,):
            return RationalFunction._raw(self.num * other.num, ONE_L)
        return _make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not other.num.coeffs:
            raise ZeroDivisionError("division by the zero rational function")
        return _make(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def bar(self) -> "RationalFunction":
        """Substitute ``v -> 1/v``; no gcd needed since reversal keeps coprimality."""
        num = self.num.bar()
        if self.den.coeffs == (1,):
            return RationalFunction._raw(num, ONE_L)
        d = self.den.coeffs
        rev = d[::-1]
        num = num.shift(len(d) - 1)
        if rev[-1] < 0:
            rev = tuple(-c for c in rev)
            num = -num
        return RationalFunction._raw(num, LaurentPoly._raw(0, rev))

    def valuation(self) -> int:
        if not self.num.coeffs:
            raise ValueError("valuation of zero is +infinity")
        # den has nonzero constant term by construction
        return self.num.low

    def as_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self):
        return f"RationalFunction({format_rational(self)!r})"

    def __str__(self):
        return format_rational(self)

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "RationalFunction":
        return cls(LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"]))


def _as_laurent(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.monomial(0, x)
    raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")


def _coerce(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, LaurentPoly):
        return RationalFunction.laurent(x)
    if isinstance(x, int):
        return RationalFunction.from_int(x)
    return None


def _canonical(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if not num.coeffs:
        return ZERO_L, ONE_L
    # strip v-powers of the denominator into the numerator offset
    low = num.low - den.low
    n, d = num.coeffs, den.coeffs
    if len(d) > 1:
        q = _pdivexact(n, d)
        if q is not None:
            n, d = q, (1,)
        else:
            g = _poly_gcd(n, d)
            if g != (1,):
                n = _pdivexact(n, g)
                d = _pdivexact(d, g)
    c = gcd(_content(n), _content(d))
    if d[-1] < 0:
        c = -c
    if c != 1:
        n = tuple(x // c for x in n)
        d = tuple(x // c for x in d)
    return LaurentPoly._raw(low, n), LaurentPoly._raw(0, d)


def _make(num: LaurentPoly, den: LaurentPoly) -> RationalFunction:
    n, d = _canonical(num, den)
    return RationalFunction._raw(n, d)


ZERO = RationalFunction._raw(ZERO_L, ONE_L)
ONE = RationalFunction._raw(ONE_L, ONE_L)


# --------------------------------------------------------------------------
# quantum integers and friends
# --------------------------------------------------------------------------

@lru_cache(maxsize=None)
def quantum_integer(r: int) -> LaurentPoly:
    """``[r] = v^(r-1) + v^(r-3) + ... + v^(1-r)``."""
    if r < 1:
        raise ValueError(f"quantum integer needs r >= 1, got {r}")
    c = [0] * (2 * r - 1)
    c[::2] = [1] * r
    return LaurentPoly._raw(1 - r, tuple(c))


@lru_cache(maxsize=None)
def factor_scalar(r: int) -> RationalFunction:
    """The scalar ``v^r / [r]`` subtracted from ``T_i`` in the factorized elements."""
    if r < 1:
        raise ValueError(f"factor scalar needs r >= 1, got {r}")
    return RationalFunction(V.shift(r - 1), quantum_integer(r))


def bar(f):
    """The involution ``v -> 1/v`` on Laurent polynomials and rational functions."""
    if isinstance(f, (LaurentPoly, RationalFunction)):
        return f.bar()
    raise TypeError(f"bar is not defined for {type(f).__name__}")


def valuation(f) -> int:
    """Order of vanishing at ``v = 0``; raises on zero."""
    if isinstance(f, (LaurentPoly, RationalFunction)):
        return f.valuation()
    raise TypeError(f"valuation is not defined for {type(f).__name__}")


# --------------------------------------------------------------------------
# rendering
# --------------------------------------------------------------------------

def _vpow(e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return "v"
    return f"v^{e}"


def format_laurent(p: LaurentPoly) -> str:
    if not p.coeffs:
        return "0"
    parts = []
    for e, c in sorted(p.terms.items()):
        mag = abs(c)
        body = _vpow(e)
        if not body:
            term = str(mag)
        elif mag == 1:
            term = body
        else:
            term = f"{mag}*{body}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(parts)


def format_rational(f: RationalFunction) -> str:
    if f.is_laurent():
        return format_laurent(f.num)
    num = format_laurent(f.num)
    if len(f.num.terms) > 1:
        num = f"({num})"
    return f"{num} / ({format_laurent(f.den)})"
