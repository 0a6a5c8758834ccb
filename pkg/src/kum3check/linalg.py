"""Exact linear algebra over arbitrary-precision rationals.

Scalars are ``fractions.Fraction`` values, which are always stored in
lowest terms with a positive denominator and print as ``p/q`` (or ``p``
when the denominator is 1).  That string form is the wire format used by
every config file and report in this package.

Matrices are immutable and dense.  Row reduction is done fraction-free:
each working row is scaled to integers, updated by cross-multiplication,
and divided by its content (gcd of the entries) after every update.  The
final normalization by pivots recovers the same reduced echelon data as
textbook rational elimination; the unit tests compare both paths on
random matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

RationalLike = Union[Fraction, int, str]


def rat(value: RationalLike) -> Fraction:
    """Coerce an int, a ``p/q`` string, or a Fraction to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(value: Fraction) -> str:
    """Render a rational as ``p/q``, or plain ``p`` for integers."""
    return str(value)


def vector(values: Iterable[RationalLike]) -> tuple[Fraction, ...]:
    return tuple(rat(v) for v in values)


class Matrix:
    """Immutable dense matrix with exact rational entries."""

    __slots__ = ("entries", "rows", "cols")

    def __init__(self, entries: Iterable[Iterable[RationalLike]]):
        data = tuple(tuple(rat(x) for x in row) for row in entries)
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise ValueError("ragged rows in matrix")
        else:
            width = 0
        object.__setattr__(self, "entries", data)
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", width)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[0] * cols for _ in range(rows)])

    def __getitem__(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols})"

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.entries)) if self.rows else Matrix([])

    def mat_vec(self, x: Sequence[RationalLike]) -> tuple[Fraction, ...]:
        v = vector(x)
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(
            sum((a * b for a, b in zip(row, v) if a and b), Fraction(0))
            for row in self.entries
        )

    def to_lists(self) -> list[list[str]]:
        """Rows rendered in the ``p/q`` wire format (for reports and trails)."""
        return [[format_rational(x) for x in row] for row in self.entries]


def _integer_rows(m: Matrix) -> list[list[int]]:
    """Scale each row by the lcm of its denominators."""
    out = []
    for row in m.entries:
        den = 1
        for x in row:
            d = x.denominator
            den = den * d // gcd(den, d)
        out.append([int(x.numerator * (den // x.denominator)) for x in row])
    return out


def _reduce_content(row: list[int]) -> list[int]:
    g = gcd(*row) if row else 0
    if g > 1:
        return [a // g for a in row]
    return row


def _forward_echelon(rows: list[list[int]], cols: int) -> tuple[list[list[int]], list[int]]:
    """In-place forward elimination; returns (rows, pivot column indices).

    After the call, rows[i] for i < len(pivots) form an upper echelon with
    integer entries and rows beyond that are zero.
    """
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(cols):
        sel = None
        for i in range(r, nrows):
            if rows[i][c]:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        piv_row = rows[r]
        p = piv_row[c]
        for i in range(r + 1, nrows):
            m = rows[i][c]
            if not m:
                continue
            cur = rows[i]
            rows[i] = _reduce_content([p * a - m * b for a, b in zip(cur, piv_row)])
        pivots.append(c)
        r += 1
    return rows, pivots


def _back_substitute(
    ech: list[list[int]],
    pivots: list[int],
    x: list[Fraction],
    width: int,
) -> list[Fraction]:
    """Solve the echelon system in place for the pivot coordinates of x.

    Entries of x at non-pivot positions must already be set; pivot entries
    are overwritten from the bottom row up so the full vector satisfies
    every echelon row restricted to the first ``width`` columns.
    """
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        row = ech[i]
        acc = Fraction(0)
        for j in range(c + 1, width):
            v = row[j]
            if v and x[j]:
                acc += v * x[j]
        x[c] = -acc / row[c]
    return x


def rank(m: Matrix) -> int:
    rows, pivots = _forward_echelon(_integer_rows(m), m.cols)
    return len(pivots)


def kernel_basis(m: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel in reduced row-echelon parametrization.

    One vector per free column f, ordered by ascending f: coordinate f is 1,
    the other free coordinates are 0, and pivot coordinates are solved
    exactly.  Returns [] when the kernel is trivial.
    """
    ech, pivots = _forward_echelon(_integer_rows(m), m.cols)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        x = [Fraction(0)] * m.cols
        x[f] = Fraction(1)
        _back_substitute(ech, pivots, x, m.cols)
        basis.append(tuple(x))
    return basis


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row-echelon form and its pivot columns."""
    rows, pivots = _forward_echelon(_integer_rows(m), m.cols)
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        piv_row = rows[i]
        p = piv_row[c]
        for k in range(i):
            mk = rows[k][c]
            if mk:
                rows[k] = _reduce_content([p * a - mk * b for a, b in zip(rows[k], piv_row)])
    out = []
    for i in range(m.rows):
        if i < len(pivots):
            p = Fraction(rows[i][pivots[i]])
            out.append([Fraction(a) / p for a in rows[i]])
        else:
            out.append([Fraction(0)] * m.cols)
    return Matrix(out), tuple(pivots)


@dataclass(frozen=True)
class SolveResult:
    """Outcome of an exact linear solve.

    status is "unique", "inconsistent", or "underdetermined"; solution is
    None unless status is "unique".  Inconsistency is an outcome, not an
    exception: callers report it.
    """

    status: str
    solution: tuple[Fraction, ...] | None
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "unique"


def solve_linear(a: Matrix, b: Sequence[RationalLike]) -> SolveResult:
    """Solve A x = b exactly for square or overdetermined A."""
    rhs = vector(b)
    if len(rhs) != a.rows:
        raise ValueError("right-hand side length does not match row count")
    if a.rows < a.cols:
        raise ValueError("system is underdetermined by shape (rows < cols)")
    aug_width = a.cols + 1
    rows = _integer_rows(Matrix([list(row) + [v] for row, v in zip(a.entries, rhs)]))
    ech, pivots = _forward_echelon(rows, aug_width)
    if pivots and pivots[-1] == a.cols:
        i = len(pivots) - 1
        return SolveResult(
            status="inconsistent",
            solution=None,
            detail=f"row {i} reduces to 0 = {Fraction(ech[i][a.cols])}",
        )
    if len(pivots) < a.cols:
        free = [c for c in range(a.cols) if c not in set(pivots)]
        return SolveResult(
            status="underdetermined",
            solution=None,
            detail=f"free columns {free}",
        )
    x = [Fraction(0)] * aug_width
    x[a.cols] = Fraction(-1)
    _back_substitute(ech, pivots, x, aug_width)
    return SolveResult(status="unique", solution=tuple(x[: a.cols]))
