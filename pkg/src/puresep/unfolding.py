"""Mode-k amplitude matrices and their zero-pruned versions.

For party ``k`` the unfolding ``M_k`` has one column per level of party
``k`` and one row per multi-index of the remaining parties, enumerated
lexicographically with the last remaining party fastest.  Entry
``M_k[row, c]`` is the amplitude at the multi-index obtained by inserting
``c`` at position ``k`` of ``row_index(row)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateStateError
from .state import DEFAULT_TOL, PureState, _check_party

__all__ = ["ModeUnfolding", "PrunedUnfolding", "build_unfolding", "build_all", "prune"]


@dataclass(frozen=True, eq=False)
class ModeUnfolding:
    party: int
    dims: tuple[int, ...]
    entries: np.ndarray

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def complement_dims(self) -> tuple[int, ...]:
        k = self.party
        return self.dims[:k] + self.dims[k + 1:]

    def row_index(self, row: int) -> tuple[int, ...]:
        """Complement multi-index of ``row`` (stride arithmetic, no table)."""
        if not 0 <= row < self.rows:
            raise IndexError(f"row {row} outside [0, {self.rows})")
        out = []
        for dk in reversed(self.complement_dims):
            row, i = divmod(row, dk)
            out.append(i)
        return tuple(reversed(out))

    def multi_index(self, row: int, col: int) -> tuple[int, ...]:
        """Full multi-index of entry ``(row, col)``."""
        if not 0 <= col < self.cols:
            raise IndexError(f"column {col} outside [0, {self.cols})")
        rest = self.row_index(row)
        return rest[:self.party] + (col,) + rest[self.party:]

    def scatter(self) -> np.ndarray:
        """Flat amplitude vector reassembled from the unfolding."""
        k = self.party
        shape = self.complement_dims + (self.dims[k],)
        return np.moveaxis(self.entries.reshape(shape), -1, k).reshape(-1)


@dataclass(frozen=True, eq=False)
class PrunedUnfolding:
    """``source`` with its all-zero rows and columns deleted."""

    source: ModeUnfolding
    entries: np.ndarray
    kept_rows: np.ndarray
    kept_cols: np.ndarray

    @property
    def party(self) -> int:
        return self.source.party

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape


def build_unfolding(state: PureState, k: int) -> ModeUnfolding:
    """Materialize ``M_k`` for party ``k`` (0-based)."""
    _check_party(state.profile, k)
    dk = state.dims[k]
    entries = np.ascontiguousarray(np.moveaxis(state.tensor, k, -1).reshape(-1, dk))
    entries.flags.writeable = False
    return ModeUnfolding(k, state.dims, entries)


def build_all(state: PureState) -> list[ModeUnfolding]:
    return [build_unfolding(state, k) for k in range(state.n)]


def prune(unf: ModeUnfolding, zero_tol: float = DEFAULT_TOL.zero, counter=None) -> PrunedUnfolding:
    """Delete rows and columns whose entries all have modulus ``<= zero_tol``."""
    nonzero = np.abs(unf.entries) > zero_tol
    if counter is not None:
        counter.tally(comparisons=unf.entries.size, phase="prune")
    rows = np.flatnonzero(nonzero.any(axis=1))
    cols = np.flatnonzero(nonzero.any(axis=0))
    if rows.size == 0:
        raise DegenerateStateError(
            f"unfolding of party {unf.party} has no entry above {zero_tol:g}"
        )
    entries = unf.entries[np.ix_(rows, cols)]
    return PrunedUnfolding(unf, entries, rows, cols)


def frobenius(m: np.ndarray) -> float:
    return math.sqrt(float(np.vdot(m, m).real))
