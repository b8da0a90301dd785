"""Problem families and their variable layouts.

Three families share one encoding: a matrix of +/-1 entries, some columns
unknown, arranged column-major as binary variables.  The energy of an
assignment is the sum over all column pairs of the squared inner product, so
it is zero exactly when every pair of columns is orthogonal.

Variable numbering: unknown column ``c`` occupies indices ``c*M .. c*M+M-1``
(row-major within the column).  Ancilla variables follow the main block, one
per (unknown-column pair, row), with column pairs enumerated in lexicographic
order (0,1), (0,2), ..., (1,2), ...  Known columns carry no variables and are
treated as constants; for indexing purposes they sit after the unknowns.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence, Union

from .poly import Domain, Polynomial

Column = tuple[int, ...]


def _check_order(order: int) -> None:
    # Hadamard matrices exist only for orders 1, 2 and (conjecturally) 4k;
    # the same restriction is applied to all families.
    if order < 1 or (order > 2 and order % 4 != 0):
        raise ValueError(f"order must be 1, 2 or a multiple of 4, got {order}")


def _check_column(col: Sequence[int], order: int) -> Column:
    col = tuple(col)
    if len(col) != order:
        raise ValueError(f"known column has length {len(col)}, expected {order}")
    if any(v not in (-1, 1) for v in col):
        raise ValueError(f"known column entries must be +1/-1: {col}")
    return col


@dataclass(frozen=True)
class HSearch:
    """Find a full M-order Hadamard matrix."""

    order: int

    def __post_init__(self):
        _check_order(self.order)


@dataclass(frozen=True)
class OrthoSet:
    """Find ``count`` mutually orthogonal +/-1 vectors of length ``order``."""

    order: int
    count: int

    def __post_init__(self):
        _check_order(self.order)
        if not 1 <= self.count <= self.order:
            raise ValueError(f"count must be in 1..{self.order}, got {self.count}")


@dataclass(frozen=True)
class Completion:
    """Recover the missing columns of a partially known Hadamard matrix."""

    order: int
    known: tuple[Column, ...]

    def __post_init__(self):
        _check_order(self.order)
        known = tuple(_check_column(c, self.order) for c in self.known)
        if not known:
            raise ValueError("completion requires at least one known column")
        if self.order - len(known) < 1:
            raise ValueError("at least one column must be unknown")
        object.__setattr__(self, "known", known)


ProblemSpec = Union[HSearch, OrthoSet, Completion]


def problem_name(spec: ProblemSpec) -> str:
    return {HSearch: "hsearch", OrthoSet: "orthoset", Completion: "completion"}[type(spec)]


def unknown_columns(spec: ProblemSpec) -> int:
    if isinstance(spec, HSearch):
        return spec.order
    if isinstance(spec, OrthoSet):
        return spec.count
    return spec.order - len(spec.known)


def known_columns(spec: ProblemSpec) -> tuple[Column, ...]:
    return spec.known if isinstance(spec, Completion) else ()


@dataclass(frozen=True)
class Layout:
    """Index grid mapping (row, column) positions to variable ids.

    The main block holds ``unknown_cols`` columns of ``order`` variables each;
    the ancilla block holds one variable per (unknown-column pair, row).
    """

    order: int
    unknown_cols: int
    known: tuple[Column, ...] = ()

    @property
    def main_count(self) -> int:
        return self.order * self.unknown_cols

    @property
    def pair_count(self) -> int:
        return self.unknown_cols * (self.unknown_cols - 1) // 2

    @property
    def ancilla_count(self) -> int:
        return self.order * self.pair_count

    @property
    def total_vars(self) -> int:
        return self.main_count + self.ancilla_count

    def main_var(self, row: int, col: int) -> int:
        if not (0 <= row < self.order and 0 <= col < self.unknown_cols):
            raise ValueError(f"position ({row}, {col}) outside layout")
        return col * self.order + row

    def column_pairs(self) -> list[tuple[int, int]]:
        return list(itertools.combinations(range(self.unknown_cols), 2))

    def ancilla_var(self, pair_index: int, row: int) -> int:
        if not (0 <= pair_index < self.pair_count and 0 <= row < self.order):
            raise ValueError(f"ancilla position ({pair_index}, {row}) outside layout")
        return self.main_count + pair_index * self.order + row

    def ancilla_triples(self) -> list[tuple[int, int, int]]:
        """All (main_i, main_j, ancilla) substitution triples in canonical
        order: column pairs lexicographic, rows ascending within a pair."""
        triples = []
        for p, (i, j) in enumerate(self.column_pairs()):
            for r in range(self.order):
                triples.append((self.main_var(r, i), self.main_var(r, j), self.ancilla_var(p, r)))
        return triples

    def ancilla_pair(self, var: int) -> tuple[int, int]:
        """The two main variables whose product the ancilla ``var`` stands for."""
        if not self.main_count <= var < self.total_vars:
            raise ValueError(f"variable {var} is not an ancilla")
        offset = var - self.main_count
        pair_index, row = divmod(offset, self.order)
        i, j = self.column_pairs()[pair_index]
        return self.main_var(row, i), self.main_var(row, j)


def layout_for(spec: ProblemSpec) -> Layout:
    return Layout(order=spec.order, unknown_cols=unknown_columns(spec), known=known_columns(spec))


def _column_polys(layout: Layout, col: int) -> list[Polynomial]:
    """Column ``col`` of the full matrix as per-row polynomials; known columns
    are constants."""
    if col < layout.unknown_cols:
        return [
            Polynomial.variable(Domain.SPIN, layout.main_var(r, col))
            for r in range(layout.order)
        ]
    const = layout.known[col - layout.unknown_cols]
    return [Polynomial.constant(Domain.SPIN, const[r]) for r in range(layout.order)]


def build_ek_s(spec: ProblemSpec) -> Polynomial:
    """The k-body spin energy: sum over all column pairs of the squared
    symbolic inner product, with s^2=1 folded in by spin-domain arithmetic.

    Unknown/unknown pairs contribute a constant M plus quartic terms,
    unknown/known pairs a constant M plus quadratics, and known/known pairs a
    constant residual (zero when the supplied columns are orthogonal).
    """
    layout = layout_for(spec)
    ncols = layout.unknown_cols + len(layout.known)
    energy = Polynomial.zero(Domain.SPIN)
    for i, j in itertools.combinations(range(ncols), 2):
        a = _column_polys(layout, i)
        b = _column_polys(layout, j)
        dot = Polynomial.zero(Domain.SPIN)
        for r in range(layout.order):
            dot = dot + a[r] * b[r]
        energy = energy + dot * dot
    return energy


def ek_constant(spec: ProblemSpec) -> int:
    """Expected constant term of the k-body energy: M per column pair that
    involves an unknown column, plus the squared inner products of the
    known-only pairs."""
    layout = layout_for(spec)
    n_unknown = layout.unknown_cols
    n_known = len(layout.known)
    unknown_pairs = layout.pair_count + n_unknown * n_known
    residual = sum(
        sum(x * y for x, y in zip(a, b)) ** 2
        for a, b in itertools.combinations(layout.known, 2)
    )
    return layout.order * unknown_pairs + residual


def sylvester_hadamard(order: int) -> tuple[Column, ...]:
    """Columns of the Sylvester Hadamard matrix of the given power-of-two
    order (test-fixture helper)."""
    if order < 1 or order & (order - 1):
        raise ValueError(f"Sylvester construction needs a power-of-two order, got {order}")
    rows = [[1]]
    while len(rows) < order:
        rows = [r + r for r in rows] + [r + [-x for x in r] for r in rows]
    return tuple(tuple(rows[r][c] for r in range(order)) for c in range(order))


def parse_known_columns(text: str, order: int | None = None) -> tuple[Column, ...]:
    """Parse known columns from text: one column per line, entries "+"/"-"
    or "+1"/"-1" separated by spaces."""
    tokens = {"+": 1, "+1": 1, "-": -1, "-1": -1}
    columns = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            col = tuple(tokens[t] for t in line.split())
        except KeyError as exc:
            raise ValueError(f"line {lineno}: unrecognized entry {exc.args[0]!r}") from None
        columns.append(col)
    if not columns:
        raise ValueError("no columns found")
    lengths = {len(c) for c in columns}
    if len(lengths) != 1:
        raise ValueError(f"columns have inconsistent lengths {sorted(lengths)}")
    if order is not None and lengths != {order}:
        raise ValueError(f"columns have length {lengths.pop()}, expected {order}")
    return tuple(columns)


def read_known_columns(path: str | Path, order: int | None = None) -> tuple[Column, ...]:
    return parse_known_columns(Path(path).read_text(), order)
