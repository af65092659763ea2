"""Exact scalar arithmetic: rationals, F2[U] polynomials, GF(2) linear algebra.

Rationals are stdlib ``fractions.Fraction`` (already exact, lowest terms,
positive denominator); this module only adds the string forms used by the
JSON interfaces.  GF(2) vectors are ints used as bitmasks (bit j = coordinate
j) and matrices are lists of row masks, so all elimination is word-parallel.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional

__all__ = [
    "Fraction",
    "parse_rational",
    "format_rational",
    "F2UPoly",
    "BitMatrix",
    "solve_f2",
    "nullspace_f2",
    "Echelon",
    "subspace_not_contained",
]


def parse_rational(s: str) -> Fraction:
    """Parse an exact rational from a "p/q" or integer string."""
    try:
        return Fraction(str(s).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {s!r}") from exc


def format_rational(r: Fraction) -> str:
    """Format a rational the way the JSON interfaces expect ("-1/2", "3")."""
    return str(Fraction(r))


class F2UPoly:
    """Polynomial in U over GF(2), stored as the set of exponents with
    coefficient 1.  Addition is symmetric difference; multiplication is
    the usual convolution with mod-2 cancellation."""

    __slots__ = ("exps",)

    def __init__(self, exps: Iterable[int] = ()):
        es = frozenset(exps)
        for e in es:
            if not isinstance(e, int) or e < 0:
                raise ValueError(f"bad exponent {e!r}")
        self.exps = es

    @classmethod
    def zero(cls) -> "F2UPoly":
        return cls()

    @classmethod
    def one(cls) -> "F2UPoly":
        return cls((0,))

    @classmethod
    def monomial(cls, k: int) -> "F2UPoly":
        return cls((k,))

    def is_zero(self) -> bool:
        return not self.exps

    def shift(self, k: int) -> "F2UPoly":
        """Multiply by U**k."""
        return F2UPoly(e + k for e in self.exps)

    def valuation(self) -> Optional[int]:
        """Lowest exponent, or None for the zero polynomial."""
        return min(self.exps) if self.exps else None

    def __add__(self, other: "F2UPoly") -> "F2UPoly":
        return F2UPoly(self.exps ^ other.exps)

    def __mul__(self, other: "F2UPoly") -> "F2UPoly":
        acc: set[int] = set()
        for a in self.exps:
            for b in other.exps:
                acc ^= {a + b}
        return F2UPoly(acc)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, F2UPoly) and self.exps == other.exps

    def __hash__(self) -> int:
        return hash(self.exps)

    def __bool__(self) -> bool:
        return bool(self.exps)

    def __repr__(self) -> str:
        if not self.exps:
            return "0"
        return " + ".join("1" if e == 0 else f"U^{e}" for e in sorted(self.exps))


class BitMatrix:
    """GF(2) matrix with bit-packed rows (bit j of rows[i] = entry (i, j))."""

    __slots__ = ("rows", "n_cols")

    def __init__(self, rows: Iterable[int], n_cols: int):
        self.rows = list(rows)
        self.n_cols = n_cols
        mask = (1 << n_cols) - 1
        for r in self.rows:
            if r < 0 or r & ~mask:
                raise ValueError("row has bits outside the column range")

    @classmethod
    def from_columns(cls, cols: Iterable[int], n_rows: int) -> "BitMatrix":
        cols = list(cols)
        rows = [0] * n_rows
        for j, c in enumerate(cols):
            for i in range(n_rows):
                if c >> i & 1:
                    rows[i] |= 1 << j
        return cls(rows, len(cols))

    def rank(self) -> int:
        ech = Echelon()
        for r in self.rows:
            ech.add(r)
        return ech.rank

    def solve(self, b: int) -> Optional[int]:
        """One solution x (bitmask over columns) of A x = b, or None.

        b is a bitmask over rows; free variables are set to 0.
        """
        n = self.n_cols
        aug = [self.rows[i] | ((b >> i & 1) << n) for i in range(len(self.rows))]
        pivots: list[int] = []
        r = 0
        for c in range(n):
            p = next((i for i in range(r, len(aug)) if aug[i] >> c & 1), None)
            if p is None:
                continue
            aug[r], aug[p] = aug[p], aug[r]
            for i in range(len(aug)):
                if i != r and aug[i] >> c & 1:
                    aug[i] ^= aug[r]
            pivots.append(c)
            r += 1
            if r == len(aug):
                break
        for i in range(r, len(aug)):
            if aug[i]:
                return None
        x = 0
        for i, c in enumerate(pivots):
            if aug[i] >> n & 1:
                x |= 1 << c
        return x

    def nullspace(self) -> list[int]:
        """Basis (bitmasks over columns) of {x : A x = 0}."""
        n = self.n_cols
        rows = list(self.rows)
        pivot_of_col: dict[int, int] = {}
        r = 0
        for c in range(n):
            p = next((i for i in range(r, len(rows)) if rows[i] >> c & 1), None)
            if p is None:
                continue
            rows[r], rows[p] = rows[p], rows[r]
            for i in range(len(rows)):
                if i != r and rows[i] >> c & 1:
                    rows[i] ^= rows[r]
            pivot_of_col[c] = r
            r += 1
            if r == len(rows):
                break
        basis = []
        for c in range(n):
            if c in pivot_of_col:
                continue
            v = 1 << c
            for pc, pr in pivot_of_col.items():
                if rows[pr] >> c & 1:
                    v |= 1 << pc
            basis.append(v)
        return basis


def solve_f2(rows: list[int], n_cols: int, b: int) -> Optional[int]:
    """Solve the GF(2) system given by row masks; returns None if inconsistent."""
    return BitMatrix(rows, n_cols).solve(b)


def nullspace_f2(rows: list[int], n_cols: int) -> list[int]:
    return BitMatrix(rows, n_cols).nullspace()


class Echelon:
    """Incremental row-echelon basis keyed by highest set bit."""

    __slots__ = ("pivots",)

    def __init__(self, vectors: Iterable[int] = ()):
        self.pivots: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    def reduce(self, v: int) -> int:
        while v:
            p = v.bit_length() - 1
            row = self.pivots.get(p)
            if row is None:
                return v
            v ^= row
        return 0

    def add(self, v: int) -> bool:
        """Insert v; True if it enlarged the span."""
        v = self.reduce(v)
        if v == 0:
            return False
        self.pivots[v.bit_length() - 1] = v
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    @property
    def rank(self) -> int:
        return len(self.pivots)


def subspace_not_contained(zs: Iterable[int], ws: Iterable[int]) -> Optional[int]:
    """An element of span(zs) outside span(ws), or None if span(zs) <= span(ws)."""
    ech = Echelon(ws)
    for z in zs:
        if not ech.contains(z):
            return z
    return None
