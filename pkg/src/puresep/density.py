"""Reduced density matrices of single-party cuts.

``gram_large(M_k) = M_k M_k^dagger`` is the reduced state of the parties
other than ``k`` (party ``k`` traced out); :func:`partial_trace` computes the
same matrix directly from the state as a check.  ``gram_small`` is the
``d_k x d_k`` twin ``M_k^dagger M_k`` with the same nonzero spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._linalg import jacobi_eigh, jacobi_gram_spectrum
from .state import DEFAULT_TOL, PureState, ToleranceConfig, _check_party
from .unfolding import ModeUnfolding

__all__ = [
    "ReducedDensity",
    "gram_large",
    "gram_small",
    "partial_trace",
    "gram_spectrum",
    "jacobi_eigh",
]


@dataclass(frozen=True, eq=False)
class ReducedDensity:
    entries: np.ndarray
    origin: str
    party: int

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def eigenvalues(self) -> np.ndarray:
        """Descending eigenvalues via cyclic Jacobi."""
        return jacobi_eigh(self.entries)[0]

    def check(self, tol: ToleranceConfig = DEFAULT_TOL, herm_tol: float = 1e-12,
              psd_tol: float = 1e-10) -> None:
        """Raise ``AssertionError`` if a density-matrix invariant fails."""
        e = self.entries
        assert np.max(np.abs(e - e.conj().T), initial=0.0) <= herm_tol, "not Hermitian"
        assert abs(self.trace() - 1.0) <= tol.norm, f"trace {self.trace()!r} != 1"
        assert self.eigenvalues().min() >= -psd_tol, "not positive semidefinite"


def gram_large(unf: ModeUnfolding, counter=None) -> ReducedDensity:
    m = unf.entries
    if counter is not None:
        r, dk = m.shape
        counter.tally(mults=r * r * dk, adds=r * r * (dk - 1), phase="gram")
    return ReducedDensity(m @ m.conj().T, "gram-large", unf.party)


def gram_small(unf: ModeUnfolding, counter=None) -> ReducedDensity:
    m = unf.entries
    if counter is not None:
        r, dk = m.shape
        counter.tally(mults=dk * dk * r, adds=dk * dk * (r - 1), phase="gram")
    return ReducedDensity(m.conj().T @ m, "gram-small", unf.party)


def partial_trace(state: PureState, k: int) -> ReducedDensity:
    """Trace party ``k`` out of ``|psi><psi|`` without forming the projector.

    ``rho = sum_c (I x <c| x I)|psi><psi|(I x |c> x I)``: each term is the
    outer product of the slice of the amplitude tensor at level ``c`` of
    party ``k``.
    """
    _check_party(state.profile, k)
    t = state.tensor
    r = state.d // state.dims[k]
    rho = np.zeros((r, r), dtype=np.complex128)
    for c in range(state.dims[k]):
        v = np.take(t, c, axis=k).reshape(-1)
        rho += np.outer(v, v.conj())
    return ReducedDensity(rho, "partial-trace", k)


def gram_spectrum(unf: ModeUnfolding, counter=None) -> np.ndarray:
    """Descending eigenvalues of ``gram_small(unf)`` (squared singular values).

    Computed by one-sided Jacobi on the unfolding itself, which is the
    Jacobi method on the small Gram matrix without rounding that matrix
    explicitly.
    """
    return jacobi_gram_spectrum(unf.entries, counter=counter)
