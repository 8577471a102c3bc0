"""Exact linear algebra over the rationals.

Dense matrices of :class:`fractions.Fraction` with deterministic Gaussian
elimination: affine solves with explicit kernel bases, exact rank, Gram
matrices, leading principal minors, and semidefiniteness certificates.

There is no floating point anywhere in this package.  Pivoting is "first
nonzero in column order", kernel bases come from the reduced row echelon
form with free variables in ascending column order, so identical inputs
always produce identical outputs.  Rank and semidefiniteness use
fraction-free (Bareiss) elimination on integer-scaled rows, which keeps
the bulk of the arithmetic in plain integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, NamedTuple, Sequence

Vec = tuple[Fraction, ...]


class InconsistentSystem(ValueError):
    """The right-hand side is not in the image of the matrix."""


def rat(value: int | str | Fraction) -> Fraction:
    """Coerce to Fraction, rejecting floats (exactness is the contract)."""
    if isinstance(value, float):
        raise TypeError("floating-point values are not allowed; use int, str or Fraction")
    return Fraction(value)


def format_rat(x: Fraction) -> str:
    """Render as ``p/q``, or just ``p`` when the denominator is 1."""
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


class RatMatrix:
    """Immutable dense matrix of rationals.

    Zero-row and zero-column matrices are allowed (they occur as operators
    in and out of empty stratum lattices); an empty row list needs an
    explicit ``ncols``.
    """

    __slots__ = ("_rows", "_ncols")

    def __init__(self, rows: Iterable[Iterable[int | str | Fraction]], ncols: int | None = None):
        data = tuple(tuple(rat(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise ValueError("rows have unequal lengths")
            if ncols is not None and ncols != width:
                raise ValueError(f"ncols={ncols} disagrees with row width {width}")
        else:
            if ncols is None:
                raise ValueError("an empty matrix needs an explicit column count")
            width = ncols
        self._rows = data
        self._ncols = width

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[Fraction(i == j) for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RatMatrix":
        return cls([[Fraction(0)] * ncols for _ in range(nrows)], ncols=ncols)

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def rows(self) -> tuple[Vec, ...]:
        return self._rows

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self._rows[i][j]

    def row(self, i: int) -> Vec:
        return self._rows[i]

    def column(self, j: int) -> Vec:
        return tuple(row[j] for row in self._rows)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(
            [[self._rows[i][j] for i in range(self.nrows)] for j in range(self._ncols)],
            ncols=self.nrows,
        )

    def matmul(self, other: "RatMatrix") -> "RatMatrix":
        if self._ncols != other.nrows:
            raise ValueError(f"shape mismatch: {self.nrows}x{self._ncols} @ {other.nrows}x{other.ncols}")
        return RatMatrix(
            [[dot(row, other.column(j)) for j in range(other.ncols)] for row in self._rows],
            ncols=other.ncols,
        )

    def matvec(self, v: Sequence[Fraction]) -> Vec:
        if len(v) != self._ncols:
            raise ValueError(f"vector length {len(v)} does not match {self._ncols} columns")
        return tuple(dot(row, v) for row in self._rows)

    def add(self, other: "RatMatrix") -> "RatMatrix":
        if (self.nrows, self._ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in matrix sum")
        return RatMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self._rows, other._rows)],
            ncols=self._ncols,
        )

    def scale(self, c: int | str | Fraction) -> "RatMatrix":
        f = rat(c)
        return RatMatrix([[f * x for x in row] for row in self._rows], ncols=self._ncols)

    def is_symmetric(self) -> bool:
        if self.nrows != self._ncols:
            return False
        return all(
            self._rows[i][j] == self._rows[j][i]
            for i in range(self.nrows)
            for j in range(i + 1, self._ncols)
        )

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._rows for x in row)

    def first_nonzero(self) -> tuple[int, int, Fraction] | None:
        for i, row in enumerate(self._rows):
            for j, x in enumerate(row):
                if x != 0:
                    return (i, j, x)
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self._ncols == other._ncols and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self._ncols, self._rows))

    def __repr__(self) -> str:
        return f"RatMatrix({self.nrows}x{self._ncols})"


class AffineSolution(NamedTuple):
    particular: Vec
    kernel_basis: tuple[Vec, ...]


@dataclass(frozen=True)
class SemidefiniteReport:
    is_semidefinite: bool
    rank: int
    witness: str | None


def rref(m: RatMatrix) -> tuple[RatMatrix, tuple[int, ...]]:
    """Reduced row echelon form with first-nonzero pivoting.

    Returns the reduced matrix and the tuple of pivot columns.
    """
    rows = [list(row) for row in m.rows]
    nrows, ncols = m.nrows, m.ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        inv = Fraction(1) / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return RatMatrix(rows, ncols=ncols), tuple(pivots)


def _kernel_from_rref(reduced: RatMatrix, pivots: Sequence[int], ncols: int) -> tuple[Vec, ...]:
    pivot_set = set(pivots)
    basis: list[Vec] = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -reduced[i, f]
        basis.append(tuple(v))
    return tuple(basis)


def kernel_basis(m: RatMatrix) -> tuple[Vec, ...]:
    """Deterministic basis of the right kernel.

    One vector per free column (ascending), each with a single 1 in its
    free position.
    """
    reduced, pivots = rref(m)
    return _kernel_from_rref(reduced, pivots, m.ncols)


def solve_affine(m: RatMatrix, b: Sequence[int | str | Fraction]) -> AffineSolution:
    """Solve ``m @ x = b`` exactly.

    Returns one particular solution together with a kernel basis; raises
    :class:`InconsistentSystem` when ``b`` is not in the image.
    """
    rhs = [rat(x) for x in b]
    if len(rhs) != m.nrows:
        raise ValueError(f"right-hand side length {len(rhs)} does not match {m.nrows} rows")
    augmented = RatMatrix(
        [list(row) + [bv] for row, bv in zip(m.rows, rhs)], ncols=m.ncols + 1
    )
    reduced, pivots = rref(augmented)
    if m.ncols in pivots:
        raise InconsistentSystem("right-hand side is not in the column span of the matrix")
    x = [Fraction(0)] * m.ncols
    for i, p in enumerate(pivots):
        x[p] = reduced[i, m.ncols]
    return AffineSolution(tuple(x), _kernel_from_rref(reduced, pivots, m.ncols))


def _int_rows(m: RatMatrix) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (rank preserving)."""
    out: list[list[int]] = []
    for row in m.rows:
        den = reduce(math.lcm, (x.denominator for x in row), 1)
        out.append([int(x * den) for x in row])
    return out


def _exact_div(num: int, den: int) -> int:
    q, rem = divmod(num, den)
    if rem:
        raise ArithmeticError("fraction-free elimination lost exact divisibility")
    return q


def _int_echelon_rank(rows: list[list[int]]) -> int:
    """Rank by fraction-free (Bareiss) elimination with row pivoting."""
    if not rows or not rows[0]:
        return 0
    nrows, ncols = len(rows), len(rows[0])
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(r + 1, nrows):
            x = rows[i][c]
            ri, rr = rows[i], rows[r]
            for j in range(c, ncols):
                ri[j] = _exact_div(p * ri[j] - x * rr[j], prev)
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def rank(m: RatMatrix) -> int:
    """Exact rank over the rationals."""
    return _int_echelon_rank(_int_rows(m))


def gram(vectors: Sequence[Sequence[int | str | Fraction]], pairing: RatMatrix) -> RatMatrix:
    """Gram matrix ``G[i][j] = v_i^T pairing v_j`` of a symmetric pairing."""
    if not pairing.is_symmetric():
        raise ValueError("pairing must be symmetric")
    vs = [tuple(rat(x) for x in v) for v in vectors]
    for v in vs:
        if len(v) != pairing.nrows:
            raise ValueError(f"vector length {len(v)} does not match pairing dimension {pairing.nrows}")
    images = [pairing.matvec(v) for v in vs]
    return RatMatrix([[dot(v, w) for w in images] for v in vs], ncols=len(vs))


def leading_principal_minors(m: RatMatrix) -> tuple[Fraction, ...]:
    """Leading principal minors ``det(m[:k,:k])`` for k = 1..n.

    Computed by fraction-free elimination without pivoting; the sequence is
    truncated after the first zero minor, where elimination cannot continue.
    """
    if m.nrows != m.ncols:
        raise ValueError("matrix must be square")
    n = m.nrows
    a = [list(row) for row in m.rows]
    minors: list[Fraction] = []
    prev = Fraction(1)
    for k in range(n):
        piv = a[k][k]
        minors.append(piv)
        if piv == 0:
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (piv * a[i][j] - a[i][k] * a[k][j]) / prev
        prev = piv
    return tuple(minors)


def negative_semidefinite_rank(m: RatMatrix) -> SemidefiniteReport:
    """Exact negative-semidefiniteness test for a symmetric matrix.

    Runs fraction-free symmetric elimination with diagonal pivoting on the
    negated, integer-scaled matrix.  The form is negative semidefinite
    exactly when the elimination completes with positive pivots and a zero
    residual block; the number of pivots is the rank of the form.
    """
    if m.nrows != m.ncols:
        raise ValueError("matrix must be square")
    if not m.is_symmetric():
        raise ValueError("matrix must be symmetric")
    n = m.nrows
    if n == 0:
        return SemidefiniteReport(True, 0, None)
    scale = reduce(math.lcm, (x.denominator for row in m.rows for x in row), 1)
    a = [[int(-x * scale) for x in row] for row in m.rows]
    perm = list(range(n))
    prev = 1
    rk = 0
    for k in range(n):
        piv = next((j for j in range(k, n) if a[j][j]), None)
        if piv is None:
            for i in range(k, n):
                for j in range(i + 1, n):
                    if a[i][j]:
                        return SemidefiniteReport(
                            False, rk, f"indefinite 2x2 principal block at indices ({perm[i]}, {perm[j]})"
                        )
            return SemidefiniteReport(True, rk, None)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for row in a:
                row[k], row[piv] = row[piv], row[k]
            perm[k], perm[piv] = perm[piv], perm[k]
        p = a[k][k]
        if p < 0:
            return SemidefiniteReport(
                False, rk, f"direction with positive self-pairing at index {perm[k]}"
            )
        rk += 1
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = _exact_div(p * a[i][j] - aik * a[k][j], prev)
        prev = p
    return SemidefiniteReport(True, rk, None)
