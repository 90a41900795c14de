"""Brute-force ground truth from bipartite Schmidt ranks.

Nothing here calls :mod:`puresep.unfolding`, :mod:`puresep.density` or
:mod:`puresep.criteria`: each single-party matrix is filled by its own index
loop and its singular values come from LAPACK rather than from the Jacobi
kernels used by the criteria.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import NumericalFailure
from .state import DEFAULT_TOL, PureState, ToleranceConfig

__all__ = ["OracleReport", "oracle_schmidt", "cut_matrix", "cross_validate", "CrossValidation"]


@dataclass(frozen=True)
class OracleReport:
    singular_values: tuple[np.ndarray, ...]
    schmidt_numbers: tuple[int, ...]
    margins: tuple[float, ...]
    separable: bool

    @property
    def margin(self) -> float:
        """Largest ``sigma_2 / sigma_1`` over all cuts."""
        return max(self.margins, default=0.0)


def cut_matrix(state: PureState, k: int) -> np.ndarray:
    """``d/d_k x d_k`` matrix of party ``k`` against the rest, by explicit loop."""
    dims = state.dims
    dk = dims[k]
    # strides of the complement, last remaining party fastest
    rest = [j for j in range(len(dims)) if j != k]
    stride = {}
    acc = 1
    for j in reversed(rest):
        stride[j] = acc
        acc *= dims[j]
    out = np.zeros((acc, dk), dtype=np.complex128)
    amps = state.amplitudes
    for flat in range(state.d):
        rem = flat
        row = 0
        col = 0
        for j in range(len(dims) - 1, -1, -1):
            rem, i = divmod(rem, dims[j])
            if j == k:
                col = i
            else:
                row += i * stride[j]
        out[row, col] = amps[flat]
    return out


def oracle_schmidt(state: PureState, tol: ToleranceConfig = DEFAULT_TOL) -> OracleReport:
    """Schmidt spectrum of every single-party cut.

    A cut's Schmidt number counts singular values above
    ``tol.rank * sigma_1``; the state is separable when every count is 1.
    """
    svs, counts, margins = [], [], []
    for k in range(state.n):
        try:
            sv = np.linalg.svd(cut_matrix(state, k), compute_uv=False)
        except np.linalg.LinAlgError as exc:
            raise NumericalFailure(f"SVD of cut {k} did not converge") from exc
        svs.append(sv)
        counts.append(int(np.count_nonzero(sv > tol.rank * sv[0])))
        margins.append(float(sv[1] / sv[0]) if sv.size > 1 and sv[0] > 0 else 0.0)
    return OracleReport(tuple(svs), tuple(counts), tuple(margins), all(c == 1 for c in counts))


def is_decisive(margin: float, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Whether ``sigma_2/sigma_1`` is outside ``[tol.rank / 10, tol.rank * 10]``."""
    return not (tol.rank / 10 <= margin <= tol.rank * 10)


@dataclass
class CrossValidation:
    """Agreement of each criterion with the oracle over a battery.

    ``agreement[a][b]`` counts decisive states on which methods ``a`` and
    ``b`` returned the same verdict.
    """

    methods: tuple[str, ...]
    records: list = field(default_factory=list)
    indecisive: list = field(default_factory=list)
    disagreements: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    agreement: dict = field(default_factory=dict)

    @property
    def decisive_count(self) -> int:
        return sum(1 for rec in self.records if rec["decisive"])

    @property
    def unanimous(self) -> bool:
        return not self.disagreements and not self.errors

    def summary(self) -> str:
        lines = [f"{len(self.records)} states, {self.decisive_count} decisive, "
                 f"{len(self.indecisive)} excluded, {len(self.disagreements)} disagreements"]
        width = max(len(m) for m in self.methods)
        lines.append(" " * (width + 1) + " ".join(f"{m:>{width}}" for m in self.methods))
        for a in self.methods:
            row = " ".join(f"{self.agreement[a][b]:>{width}}" for b in self.methods)
            lines.append(f"{a:>{width}} {row}")
        return "\n".join(lines)


def cross_validate(battery: Sequence[PureState], tol: ToleranceConfig = DEFAULT_TOL,
                   criteria: Sequence[str] = ("det", "rank", "minors", "prop")) -> CrossValidation:
    """Run the criteria and the oracle on every state of ``battery``.

    Disagreements on decisive states are collected, never raised.
    """
    from .criteria import _run  # oracle results are computed first, independently

    if len(battery) == 0:
        raise ValueError("battery is empty")
    methods = tuple(criteria) + ("oracle",)
    report = CrossValidation(methods)
    report.agreement = {a: {b: 0 for b in methods} for a in methods}
    for idx, state in enumerate(battery):
        oracle = oracle_schmidt(state, tol)
        decisive = is_decisive(oracle.margin, tol)
        verdicts = {"oracle": oracle.separable}
        try:
            for name in criteria:
                verdicts[name] = _run(name, state, tol, extract=False).separable
        except NumericalFailure as exc:
            report.errors.append((idx, repr(exc)))
            continue
        rec = {"index": idx, "dims": state.dims, "margin": oracle.margin,
               "decisive": decisive, "verdicts": verdicts}
        report.records.append(rec)
        if not decisive:
            report.indecisive.append(idx)
            continue
        for a in methods:
            for b in methods:
                if verdicts[a] == verdicts[b]:
                    report.agreement[a][b] += 1
        if len(set(verdicts.values())) > 1:
            report.disagreements.append(rec)
    return report
