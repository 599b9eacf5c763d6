"""Young diagrams in the k x (n-k) box and the Grassmannian data attached to them.

Sign sequences are plain strings over ``"+-"`` of length ``n`` with ``k``
pluses; positions are 1-based in every public function, matching the usual
indexing of the generators ``s_1 .. s_{n-1}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

__all__ = [
    "GrassmannShape",
    "YoungDiagram",
    "Rectangle",
    "Peel",
    "parse_partition",
    "check_signs",
    "reduced_word",
    "to_sign_sequence",
    "from_sign_sequence",
    "shifts",
    "stairs",
    "peel_rectangle",
    "weight",
    "satisfies_support_condition",
    "all_diagrams",
    "all_sign_sequences",
    "base_sequence",
]

SignSequence = str


@dataclass(frozen=True, order=True)
class GrassmannShape:
    n: int
    k: int

    def __post_init__(self):
        if not (1 <= self.k <= self.n - 1):
            raise ValueError(f"need 1 <= k <= n-1, got n={self.n}, k={self.k}")

    @property
    def J(self) -> frozenset[int]:
        """Generators of the parabolic subgroup S_k x S_{n-k}."""
        return frozenset(i for i in range(1, self.n) if i != self.k)


@dataclass(frozen=True, order=True)
class YoungDiagram:
    rows: tuple[int, ...]
    shape: GrassmannShape

    def __init__(self, rows: Sequence[int], shape: GrassmannShape):
        rows = tuple(int(r) for r in rows)
        while rows and rows[-1] == 0:
            rows = rows[:-1]
        if any(r <= 0 for r in rows):
            raise ValueError(f"partition parts must be positive: {rows}")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise ValueError(f"partition must be weakly decreasing: {rows}")
        if len(rows) > shape.k or (rows and rows[0] > shape.n - shape.k):
            raise ValueError(
                f"{list(rows)} does not fit in the {shape.k} x {shape.n - shape.k} box")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "shape", shape)

    @property
    def size(self) -> int:
        return sum(self.rows)

    def row(self, i: int) -> int:
        """Length of row ``i`` (1-based), 0 past the last row."""
        return self.rows[i - 1] if i <= len(self.rows) else 0

    def boxes(self) -> Iterator[tuple[int, int]]:
        for i, length in enumerate(self.rows, 1):
            for j in range(1, length + 1):
                yield i, j

    def __contains__(self, box) -> bool:
        i, j = box
        return 1 <= i and 1 <= j <= self.row(i)

    def contains(self, other: "YoungDiagram") -> bool:
        return all(self.row(i) >= r for i, r in enumerate(other.rows, 1))

    def __str__(self):
        return ",".join(map(str, self.rows)) or "()"


@dataclass(frozen=True)
class Rectangle:
    """Placement of a rectangular block: top-left box, row count, column count."""
    top: int
    left: int
    rows: int
    cols: int

    def boxes(self):
        for i in range(self.top, self.top + self.rows):
            for j in range(self.left, self.left + self.cols):
                yield i, j


@dataclass(frozen=True)
class Peel:
    rest: YoungDiagram
    block: Rectangle
    I: tuple[int, ...]
    J: tuple[int, ...]


def parse_partition(text: str, shape: GrassmannShape) -> YoungDiagram:
    text = text.strip()
    if text in ("", "()", "0"):
        return YoungDiagram((), shape)
    try:
        parts = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ValueError(f"malformed partition {text!r}; expected e.g. 6,3,3,1,1") from None
    return YoungDiagram(parts, shape)


def check_signs(eps: str, shape: GrassmannShape | None = None) -> str:
    if set(eps) - {"+", "-"}:
        raise ValueError(f"sign sequence must use only '+' and '-': {eps!r}")
    if shape is not None:
        if len(eps) != shape.n:
            raise ValueError(f"sign sequence {eps!r} should have length {shape.n}")
        if eps.count("+") != shape.k:
            raise ValueError(f"sign sequence {eps!r} should have {shape.k} pluses")
    return eps


def base_sequence(shape: GrassmannShape) -> str:
    return "+" * shape.k + "-" * (shape.n - shape.k)


def reduced_word(lam: YoungDiagram) -> list[int]:
    """Reduced word of w_lambda, product order: first entry is the leftmost factor.

    Boxes are read bottom row first, each row right to left, ending at (1,1);
    box (i, j) contributes the generator s_{k+j-i}.
    """
    k = lam.shape.k
    word = []
    for i in range(len(lam.rows), 0, -1):
        for j in range(lam.rows[i - 1], 0, -1):
            word.append(k + j - i)
    return word


def to_sign_sequence(lam: YoungDiagram) -> str:
    n, k = lam.shape.n, lam.shape.k
    out = ["-"] * n
    for i in range(1, k + 1):
        out[k + lam.row(i) - i] = "+"
    return "".join(out)


def from_sign_sequence(eps: str, shape: GrassmannShape | None = None) -> YoungDiagram:
    check_signs(eps, shape)
    if shape is None:
        shape = GrassmannShape(len(eps), eps.count("+"))
    k = shape.k
    plus = [t for t, s in enumerate(eps, 1) if s == "+"]
    # plus positions sorted ascending are a(k) < ... < a(1); lambda_i = a(i) - k + i - 1
    rows = [plus[k - i] - k + i - 1 for i in range(1, k + 1)]
    return YoungDiagram(rows, shape)


def shifts(lam: YoungDiagram) -> dict[tuple[int, int], int]:
    """Shift table: r_ij = max(r_{i,j+1}, r_{i+1,j}) + 1, zero outside the diagram."""
    r: dict[tuple[int, int], int] = {}
    for i in range(len(lam.rows), 0, -1):
        for j in range(lam.rows[i - 1], 0, -1):
            r[i, j] = max(r.get((i, j + 1), 0), r.get((i + 1, j), 0)) + 1
    return r


def stairs(lam: YoungDiagram) -> list[tuple[int, int]]:
    """Boundary steps (width increment, height), bottom stair first."""
    if not lam.rows:
        raise ValueError("the empty diagram has no stairs")
    steps = []
    prev = 0
    i = len(lam.rows)
    while i >= 1:
        length = lam.rows[i - 1]
        h = 0
        while i >= 1 and lam.rows[i - 1] == length:
            h += 1
            i -= 1
        steps.append((length - prev, h))
        prev = length
    return steps


def peel_rectangle(lam: YoungDiagram) -> Peel:
    """Split lam = rest + block with the block rectangular and shifts of rest unchanged.

    Stair s (width a_s, height b_s) can be removed without disturbing any other
    shift exactly when a_s <= b_{s-1} and b_s <= a_{s+1}, with infinite
    sentinels at both ends.  Such a stair always exists; the topmost one is
    taken.
    """
    st = stairs(lam)
    inf = float("inf")
    a = [inf] + [w for w, _ in st] + [inf]
    b = [inf] + [h for _, h in st] + [inf]
    s = max(s for s in range(1, len(st) + 1) if a[s] <= b[s - 1] and b[s] <= a[s + 1])
    width, height = st[s - 1]
    # rows of stair s sit above the rows of stairs 1..s-1
    bottom = len(lam.rows) - sum(h for _, h in st[: s - 1])
    right = lam.rows[bottom - 1]
    block = Rectangle(top=bottom - height + 1, left=right - width + 1, rows=height, cols=width)
    rows = list(lam.rows)
    for i in range(block.top, bottom + 1):
        rows[i - 1] -= width
    rest = YoungDiagram(rows, lam.shape)
    kp = lam.shape.k - block.top + block.left
    I = tuple(range(kp - height + 1, kp + width))
    J = tuple(t for t in I if t != kp)
    return Peel(rest, block, I, J)


def _plus_positions(lam: YoungDiagram) -> list[int]:
    # a(1) > a(2) > ... > a(k), padded with a(k+1) = 0
    k = lam.shape.k
    return [0] + [k + lam.row(i) - i + 1 for i in range(1, k + 1)] + [0]


def weight(lam: YoungDiagram, eps: str) -> int:
    """Discrepancy weight r_lambda(eps) between eps and w_lambda(1).

    (i)  t = a(i) carrying '-' adds r_{i, lambda_i} - 1 (shift 0 outside lam),
    (ii) a(i+1) < t < a(i) carrying '+' adds r_{i, t-k+i},
    with a(k+1) = 0 so the stretch before the last plus belongs to row k.
    """
    check_signs(eps, lam.shape)
    k = lam.shape.k
    r = shifts(lam)
    a = _plus_positions(lam)
    total = 0
    for i in range(1, k + 1):
        if eps[a[i] - 1] == "-":
            total += r.get((i, lam.row(i)), 0) - 1
        for t in range(a[i + 1] + 1, a[i]):
            if eps[t - 1] == "+":
                total += r.get((i, t - k + i), 0)
    return total


def satisfies_support_condition(lam: YoungDiagram, eps: str) -> bool:
    """eps is '+' up to k - (#rows) and '-' past k + (#columns)."""
    k = lam.shape.k
    nrows = len(lam.rows)
    ncols = lam.rows[0] if lam.rows else 0
    return all(s == "+" for s in eps[: k - nrows]) and all(s == "-" for s in eps[k + ncols:])


def all_sign_sequences(shape: GrassmannShape) -> list[str]:
    n, k = shape.n, shape.k
    out = []
    for pos in combinations(range(n), k):
        s = ["-"] * n
        for p in pos:
            s[p] = "+"
        out.append("".join(s))
    return out


def all_diagrams(shape: GrassmannShape) -> list[YoungDiagram]:
    """All diagrams in the box, sorted by size then lexicographically by rows."""
    diagrams = [from_sign_sequence(e, shape) for e in all_sign_sequences(shape)]
    return sorted(diagrams, key=lambda d: (d.size, d.rows))
