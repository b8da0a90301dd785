"""Decoding, orthogonality checks and brute-force ground-state oracles.

The oracle never touches the polynomial pipeline: it enumerates assignments
of the main variables, decodes each into a sign matrix and scores it directly
from the Gram matrix.  Penalties vanish on consistent ancilla extensions, so
enumerating main variables only is exact while cutting the search space from
2^total to 2^main.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .poly import Polynomial
from .problems import Layout, ProblemSpec, layout_for

DEFAULT_BUDGET = 1 << 24


class BudgetExceededError(RuntimeError):
    """The exhaustive enumeration would exceed the configured state budget."""


def decode(layout: Layout, spins: Sequence[int]) -> np.ndarray:
    """Reshape the main block of an assignment into the M x C sign matrix,
    column-major, with the known columns appended; ancilla values (anything
    past the main block) are ignored."""
    spins = np.asarray(spins, dtype=np.int64)
    if spins.ndim != 1 or spins.shape[0] < layout.main_count:
        raise ValueError(
            f"need at least {layout.main_count} spins for the main block, got {spins.shape}"
        )
    main = spins[: layout.main_count].reshape(layout.unknown_cols, layout.order).T
    if layout.known:
        known = np.array(layout.known, dtype=np.int64).T
        return np.hstack([main, known])
    return main


def is_hadamard(matrix: np.ndarray) -> bool:
    """True iff the square +/-1 matrix has pairwise orthogonal columns."""
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {matrix.shape}")
    if not np.all(np.abs(matrix) == 1):
        raise ValueError("matrix entries must be +1/-1")
    m = matrix.shape[0]
    return bool(np.array_equal(matrix.T @ matrix, m * np.eye(m, dtype=matrix.dtype)))


def mutual_orthogonality(vectors: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    """Pairs (i, j) of vectors whose inner product is nonzero; empty means
    the set is mutually orthogonal."""
    arr = np.asarray(list(vectors), dtype=np.int64)
    if arr.ndim != 2:
        raise ValueError("vectors must all have the same length")
    gram = arr @ arr.T
    bad = []
    for i in range(arr.shape[0]):
        for j in range(i + 1, arr.shape[0]):
            if gram[i, j] != 0:
                bad.append((i, j))
    return bad


def consistent_ancilla_extension(layout: Layout, main: Sequence[int]) -> tuple[int, ...]:
    """Extend a main-block assignment by setting every ancilla to the product
    of its designated pair (the AND, for 0/1 values)."""
    main = tuple(main)
    if len(main) != layout.main_count:
        raise ValueError(f"expected {layout.main_count} main values, got {len(main)}")
    ancillas = [main[vi] * main[vj] for vi, vj, _ in layout.ancilla_triples()]
    return main + tuple(ancillas)


def evaluate_batch(poly: Polynomial, spins: np.ndarray) -> np.ndarray:
    """Evaluate a spin polynomial with integer coefficients on many +/-1
    assignments at once (rows of ``spins``), via monomial sign parities."""
    monos = list(poly.terms)
    if any(poly.terms[m].denominator != 1 for m in monos):
        raise ValueError("batch evaluation requires integer coefficients")
    coeffs = np.array([int(poly.terms[m]) for m in monos], dtype=np.int64)
    n = spins.shape[1]
    mask = np.zeros((len(monos), n), dtype=np.int64)
    for t, mono in enumerate(monos):
        for v in mono:
            mask[t, v] = 1
    negatives = (spins < 0).astype(np.int64)
    parity = negatives @ mask.T  # count of -1 factors per (row, monomial)
    signs = 1 - 2 * (parity & 1)
    return signs @ coeffs


@dataclass(frozen=True)
class GroundReport:
    min_energy: int
    minimizer_count: int
    witness: tuple[int, ...]  # main-block assignment of one minimizer


def _batch_direct_energy(layout: Layout, mains: np.ndarray) -> np.ndarray:
    """Direct energy of a batch of main-block assignments: sum of squared
    off-diagonal Gram entries of the decoded matrices (knowns included)."""
    batch = mains.shape[0]
    cols = mains.reshape(batch, layout.unknown_cols, layout.order).transpose(0, 2, 1)
    if layout.known:
        known = np.broadcast_to(
            np.array(layout.known, dtype=mains.dtype).T,
            (batch, layout.order, len(layout.known)),
        )
        cols = np.concatenate([cols, known], axis=2)
    gram = np.einsum("bri,brj->bij", cols, cols)
    ncols = gram.shape[1]
    iu = np.triu_indices(ncols, k=1)
    return np.einsum("bk,bk->b", gram[:, iu[0], iu[1]], gram[:, iu[0], iu[1]])


def direct_energy(spec: ProblemSpec, main: Sequence[int]) -> int:
    """Oracle energy of one main-block assignment, computed straight from the
    decoded matrix without any polynomial machinery."""
    layout = layout_for(spec)
    mains = np.asarray(main, dtype=np.int64).reshape(1, -1)
    if mains.shape[1] != layout.main_count:
        raise ValueError(f"expected {layout.main_count} main values, got {mains.shape[1]}")
    return int(_batch_direct_energy(layout, mains)[0])


def brute_force_ground(spec: ProblemSpec, budget: int = DEFAULT_BUDGET) -> GroundReport:
    """Exhaustively enumerate all 2^main assignments of the main block and
    report the minimum direct energy, how many assignments achieve it, and
    the first witness in enumeration order."""
    layout = layout_for(spec)
    n = layout.main_count
    total = 1 << n
    if total > budget:
        raise BudgetExceededError(
            f"2^{n} = {total} main-block states exceed the budget of {budget}"
        )
    bit_cols = np.arange(n, dtype=np.uint32)
    best = None
    count = 0
    witness = None
    chunk = 1 << 16
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.uint32)
        # bit b of the index gives variable b; bit 0 -> +1, bit 1 -> -1
        mains = 1 - 2 * ((idx[:, None] >> bit_cols) & 1).astype(np.int64)
        energies = _batch_direct_energy(layout, mains)
        lo = int(energies.min())
        if best is None or lo < best:
            best = lo
            count = 0
            witness = None
        if lo == best:
            hits = np.flatnonzero(energies == best)
            count += len(hits)
            if witness is None:
                witness = tuple(int(v) for v in mains[hits[0]])
    return GroundReport(min_energy=best, minimizer_count=count, witness=witness)
