"""Exact dense linear algebra over the rationals.

Everything reduces to one integer Gauss-Jordan elimination primitive with
two interchangeable engines: a compiled kernel (``wittkit._elim``, built
from Cython) and a pure-Python fallback (``wittkit._elim_py``).  The
compiled engine works in int64 and raises OverflowError when a row update
cannot be kept in range, in which case the computation silently reruns on
the pure engine.  Results are canonical - the reduced row echelon form is
unique and kernel bases follow the rref free-column convention - so the
engine choice never changes any output.

Rational rows are scaled to integers (by the lcm of the denominators)
before elimination; pivot rows are divided back by their pivot entry when
results are read off.  Pivots are chosen deterministically: leftmost
nonzero column, first available row.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from . import _elim_py

try:
    from . import _elim as _elim_c
except ImportError:
    _elim_c = None

_ENGINE = "auto"
if os.environ.get("WITTKIT_ENGINE") in ("pure", "compiled", "auto"):
    _ENGINE = os.environ["WITTKIT_ENGINE"]


def set_engine(name: str) -> None:
    """Select 'compiled', 'pure', or 'auto' (compiled when available)."""
    global _ENGINE
    if name not in ("auto", "compiled", "pure"):
        raise ValueError(f"unknown engine {name!r}")
    if name == "compiled" and _elim_c is None:
        raise RuntimeError("compiled engine is not available")
    _ENGINE = name


def active_engine() -> str:
    """The engine that will actually run: 'compiled' or 'pure'."""
    if _ENGINE == "pure" or (_ENGINE == "auto" and _elim_c is None):
        return "pure"
    return "compiled"


def _eliminate(rows: list[list[int]], pivot_limit: int) -> list[int]:
    if active_engine() == "compiled":
        try:
            # the compiled engine works on its own buffer and mutates `rows`
            # only on success, so falling back needs no copy
            return _elim_c.eliminate(rows, pivot_limit)
        except OverflowError:
            pass
    return _elim_py.eliminate(rows, pivot_limit)


@dataclass(frozen=True)
class RationalMatrix:
    """Dense matrix of Fractions, entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )

    @staticmethod
    def from_rows(rows: Sequence[Sequence[Fraction | int]]) -> RationalMatrix:
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        entries = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows")
            entries.extend(Fraction(v) for v in row)
        return RationalMatrix(nrows, ncols, tuple(entries))

    @staticmethod
    def zero(rows: int, cols: int) -> RationalMatrix:
        return RationalMatrix(rows, cols, (Fraction(0),) * (rows * cols))

    @staticmethod
    def identity(n: int) -> RationalMatrix:
        return RationalMatrix(
            n, n, tuple(Fraction(1 if i == j else 0) for i in range(n) for j in range(n))
        )

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def mat_vec(self, vec: Sequence[Fraction]) -> list[Fraction]:
        if len(vec) != self.cols:
            raise ValueError(f"vector length {len(vec)} != cols {self.cols}")
        return [sum((a * b for a, b in zip(self.row(i), vec)), Fraction(0)) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.entries)

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols})"


@dataclass(frozen=True)
class SolveOutcome:
    """Classification of a linear system M x = b.

    kind is 'unique', 'underdetermined', or 'inconsistent'.  ``particular``
    is present unless inconsistent; ``kernel_basis`` is the canonical
    nullspace basis of M (empty when the solution is unique).  For an
    inconsistent system ``bad_row`` is the index of the first equation the
    candidate solution fails to satisfy.
    """

    kind: str
    particular: tuple[Fraction, ...] | None
    kernel_basis: tuple[tuple[Fraction, ...], ...]
    bad_row: int | None = None


def _int_rows(m_rows: Sequence[Sequence[Fraction]], extra: Sequence[Sequence[Fraction]] | None = None) -> list[list[int]]:
    """Scale each (row + extra-columns) to coprime integers."""
    out = []
    n_extra = len(extra) if extra else 0
    for i, row in enumerate(m_rows):
        full = list(row)
        if extra:
            full.extend(extra[j][i] for j in range(n_extra))
        den = 1
        for v in full:
            den = lcm(den, v.denominator)
        ints = [int(v * den) for v in full]
        g = 0
        for v in ints:
            if v:
                g = gcd(g, v)
                if g == 1:
                    break
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def _dedupe_nonzero(int_rows: list[list[int]]) -> list[list[int]]:
    """Drop all-zero and duplicate rows (first occurrence kept)."""
    seen: set[tuple[int, ...]] = set()
    out = []
    for row in int_rows:
        key = tuple(row)
        if key in seen or not any(row):
            continue
        seen.add(key)
        out.append(row)
    return out


def rref(m: RationalMatrix) -> RationalMatrix:
    """Reduced row echelon form (unique, hence deterministic)."""
    reduced, pivots = _rref_rows(m.to_rows(), m.cols)
    while len(reduced) < m.rows:
        reduced.append([Fraction(0)] * m.cols)
    return RationalMatrix.from_rows(reduced[: m.rows])


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    int_rows = _int_rows(rows)
    pivots = _eliminate(int_rows, ncols)
    out = []
    for k, c in enumerate(pivots):
        pv = int_rows[k][c]
        out.append([Fraction(v, pv) for v in int_rows[k]])
    return out, pivots


def rank(m: RationalMatrix) -> int:
    int_rows = _dedupe_nonzero(_int_rows(m.to_rows()))
    return len(_eliminate(int_rows, m.cols))


def kernel(m: RationalMatrix) -> list[tuple[Fraction, ...]]:
    """Canonical nullspace basis: one vector per rref free column, with a 1
    at the free column and the negated rref column above the pivots."""
    int_rows = _dedupe_nonzero(_int_rows(m.to_rows()))
    pivots = _eliminate(int_rows, m.cols)
    return _kernel_from_reduced(int_rows, pivots, m.cols)


def _kernel_from_reduced(int_rows: list[list[int]], pivots: list[int], ncols: int) -> list[tuple[Fraction, ...]]:
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for k, c in enumerate(pivots):
            vec[c] = -Fraction(int_rows[k][free], int_rows[k][c])
        basis.append(tuple(vec))
    return basis


def solve(m: RationalMatrix, b: Sequence[Fraction | int]) -> SolveOutcome:
    """Solve M x = b exactly, classifying the solution set."""
    if len(b) != m.rows:
        raise ValueError(f"rhs length {len(b)} != rows {m.rows}")
    return solve_many(m, [b])[0]


def solve_many(m: RationalMatrix, bs: Sequence[Sequence[Fraction | int]]) -> list[SolveOutcome]:
    """Solve M x = b for several right-hand sides with one elimination."""
    m_rows = m.to_rows()
    cols = [[Fraction(v) for v in b] for b in bs]
    for b in cols:
        if len(b) != m.rows:
            raise ValueError(f"rhs length {len(b)} != rows {m.rows}")
    int_rows = _dedupe_nonzero(_int_rows(m_rows, cols))
    pivots = _eliminate(int_rows, m.cols)
    kernel_basis = tuple(_kernel_from_reduced(int_rows, pivots, m.cols))
    outcomes = []
    for j, b in enumerate(cols):
        x = [Fraction(0)] * m.cols
        for k, c in enumerate(pivots):
            x[c] = Fraction(int_rows[k][m.cols + j], int_rows[k][c])
        bad = _first_residual(m_rows, x, b)
        if bad is not None:
            outcomes.append(SolveOutcome("inconsistent", None, kernel_basis, bad))
        elif kernel_basis:
            outcomes.append(SolveOutcome("underdetermined", tuple(x), kernel_basis))
        else:
            outcomes.append(SolveOutcome("unique", tuple(x), ()))
    return outcomes


def _first_residual(m_rows: list[list[Fraction]], x: list[Fraction], b: list[Fraction]) -> int | None:
    for i, row in enumerate(m_rows):
        acc = Fraction(0)
        for a, v in zip(row, x):
            if a and v:
                acc += a * v
        if acc != b[i]:
            return i
    return None


class RowSpace:
    """Incrementally maintained row space over the rationals.

    Internally keeps the integer-scaled reduced row echelon form of all
    vectors added so far, so membership tests and the canonical basis come
    for free.  The final basis depends only on the span, not on insertion
    order.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: list[list[int]] = []
        self._pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def add(self, vec: Sequence[Fraction | int]) -> bool:
        """Add a vector; return True when it enlarged the span."""
        if len(vec) != self.ncols:
            raise ValueError(f"vector length {len(vec)} != {self.ncols}")
        before = len(self._rows)
        rows = self._rows + _int_rows([[Fraction(v) for v in vec]])
        self._pivots = _eliminate(rows, self.ncols)
        self._rows = rows[: len(self._pivots)]
        return len(self._rows) > before

    def contains(self, vec: Sequence[Fraction | int]) -> bool:
        probe = RowSpace(self.ncols)
        probe._rows = [list(r) for r in self._rows]
        probe._pivots = list(self._pivots)
        return not probe.add(vec)

    def basis(self) -> list[tuple[Fraction, ...]]:
        """Canonical rref basis of the span."""
        out = []
        for row, c in zip(self._rows, self._pivots):
            pv = row[c]
            out.append(tuple(Fraction(v, pv) for v in row))
        return out
