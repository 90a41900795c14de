"""Full-separability tests for pure states and extraction of product factors.

A pure state is fully separable exactly when every single-party unfolding
``M_k`` has rank one.  The four tests below check that condition in four
equivalent ways:

``det``
    ``det(M_k M_k^dagger - E) = 0`` for every ``k``.
``rank``
    ``sigma_2(M_k) / sigma_1(M_k) = 0`` for every ``k``.
``minors``
    every 2x2 minor of every ``M_k`` vanishes.
``prop``
    after deleting zero rows and columns, every column of ``M_k`` is a
    multiple of a pivot column (checked through one pivot entry).

All zero-tests are scaled to the same level, ``tol.rank`` relative to the
leading singular value, so the four verdicts agree except on states whose
``sigma_2 / sigma_1`` lies within about a decade of ``tol.rank``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from ._linalg import lu_determinant
from .density import gram_large, gram_spectrum
from .errors import CriteriaConflict, EntangledStateError, NumericalFailure
from .state import DEFAULT_TOL, PureState, ToleranceConfig, product_state
from .unfolding import ModeUnfolding, build_unfolding, frobenius, prune

__all__ = [
    "PartyEvidence",
    "Witness",
    "Verdict",
    "det_criterion",
    "det_value",
    "rank_criterion",
    "minor_criterion",
    "proportionality_criterion",
    "extract_factors",
    "classify",
    "CRITERIA",
]


@dataclass(frozen=True)
class PartyEvidence:
    """What one criterion measured on one unfolding."""

    party: int
    value: complex | float
    threshold: float
    passed: bool


@dataclass(frozen=True)
class Witness:
    """Coordinates at which a zero-test failed.

    For ``minors`` and ``prop`` the violation is the 2x2 minor of ``M_party``
    on ``rows`` and ``cols`` (original, unpruned indices); for ``prop`` the
    first row and column are the pivot.  For ``det`` and ``rank`` only the
    party and the measured value are meaningful.
    """

    criterion: str
    party: int
    value: complex | float
    threshold: float
    rows: tuple[int, ...] = ()
    cols: tuple[int, ...] = ()

    def recheck(self, state: PureState) -> bool:
        """Re-evaluate the violation from raw amplitudes.

        Returns ``True`` when the zero-test still fails, i.e. the witness is
        genuine.
        """
        if self.criterion in ("minors", "prop"):
            (p, q), (s, t) = self.rows, self.cols
            a = lambda row, col: state.amplitude(_insert(state.dims, self.party, row, col))
            minor = a(p, s) * a(q, t) - a(p, t) * a(q, s)
            return abs(minor) > self.threshold
        sv = _raw_singular_values(state, self.party)
        if self.criterion == "rank":
            return (sv[1] / sv[0] if sv.size > 1 else 0.0) > self.threshold
        r = state.d // state.dims[self.party]
        return abs(_det_from_spectrum(sv**2, r)) > self.threshold


@dataclass(frozen=True)
class Verdict:
    """Outcome of one criterion (or of :func:`classify`).

    ``factors`` and ``fidelity`` are set exactly when ``separable`` is true;
    ``witness`` is set exactly when it is false.  ``per_party`` may stop
    early when a criterion exits at its first violation.
    """

    criterion: str
    separable: bool
    per_party: tuple[PartyEvidence, ...]
    factors: tuple[PureState, ...] | None = None
    fidelity: float | None = None
    witness: Witness | None = None
    components: dict = field(default_factory=dict)


def _insert(dims, k, row, col):
    rest = dims[:k] + dims[k + 1:]
    idx = []
    for dk in reversed(rest):
        row, i = divmod(row, dk)
        idx.append(i)
    idx.reverse()
    return tuple(idx[:k]) + (col,) + tuple(idx[k:])


def _raw_singular_values(state: PureState, k: int) -> np.ndarray:
    m = np.moveaxis(state.tensor, k, -1).reshape(-1, state.dims[k])
    return np.linalg.svd(m, compute_uv=False)


def _det_from_spectrum(lam: np.ndarray, r: int) -> float:
    """``det(M M^dagger - E_r)`` from the eigenvalues of ``M^dagger M``.

    Only the ``min(r, d_k)`` largest eigenvalues can be nonzero; every
    remaining eigenvalue of the ``r x r`` matrix is zero and contributes a
    factor ``-1``.  The leading factor ``lambda_1 - 1`` is taken as minus the
    sum of the other eigenvalues (unit trace), which keeps it accurate when
    it is tiny.
    """
    lam = np.clip(np.asarray(lam, dtype=float), 0.0, None)
    m = min(r, lam.size)
    top = lam[:m]
    lead = -float(np.sum(top[1:]))
    rest = float(np.prod(top[1:] - 1.0)) if m > 1 else 1.0
    sign = -1.0 if (r - m) % 2 else 1.0
    return sign * lead * rest


def _check_pre(state: PureState, tol: ToleranceConfig) -> None:
    state.require_normalized(tol)


def _finish(name, state, tol, separable, evidence, witness, extract) -> Verdict:
    if separable and extract:
        factors, fid = _factorize(state, tol)
        return Verdict(name, True, tuple(evidence), factors, fid)
    return Verdict(name, separable, tuple(evidence), witness=None if separable else witness)


def det_value(state: PureState, k: int, dense: bool = False, counter=None) -> float:
    """``det(M_k M_k^dagger - E)`` for party ``k``.

    ``dense=False`` uses the spectrum of the ``d_k x d_k`` Gram matrix;
    ``dense=True`` forms the ``r x r`` matrix and eliminates it directly.
    """
    unf = build_unfolding(state, k)
    r = unf.rows
    if dense:
        g = gram_large(unf, counter).entries
        if counter is not None:
            counter.tally(adds=r, phase="det")
        return lu_determinant(g - np.eye(r), counter).real
    return _det_from_spectrum(gram_spectrum(unf, counter), r)


def det_criterion(state: PureState, tol: ToleranceConfig = DEFAULT_TOL, *, dense: bool = False,
                  exhaustive: bool = False, counter=None, extract: bool = True) -> Verdict:
    """Separable iff ``|det(M_k M_k^dagger - E)| <= tol.det`` for every party.

    Every party is evaluated.  The witness is the first failing party, or
    the one with the largest value when ``exhaustive``.
    """
    _check_pre(state, tol)
    evidence = []
    for k in range(state.n):
        value = det_value(state, k, dense=dense, counter=counter)
        evidence.append(PartyEvidence(k, value, tol.det, abs(value) <= tol.det))
    failing = [e for e in evidence if not e.passed]
    witness = None
    if failing:
        worst = max(failing, key=lambda e: abs(e.value)) if exhaustive else failing[0]
        witness = Witness("det", worst.party, worst.value, tol.det)
    name = "det-dense" if dense else "det"
    return _finish(name, state, tol, not failing, evidence, witness, extract)


def rank_criterion(state: PureState, tol: ToleranceConfig = DEFAULT_TOL, *,
                   exhaustive: bool = False, counter=None, extract: bool = True) -> Verdict:
    """Separable iff ``sigma_2 / sigma_1 <= tol.rank`` for every unfolding."""
    _check_pre(state, tol)
    evidence = []
    for k in range(state.n):
        lam = np.clip(gram_spectrum(build_unfolding(state, k), counter), 0.0, None)
        ratio = math.sqrt(lam[1] / lam[0]) if lam.size > 1 and lam[0] > 0 else 0.0
        evidence.append(PartyEvidence(k, ratio, tol.rank, ratio <= tol.rank))
    failing = [e for e in evidence if not e.passed]
    witness = None
    if failing:
        worst = max(failing, key=lambda e: e.value) if exhaustive else failing[0]
        witness = Witness("rank", worst.party, worst.value, tol.rank)
    return _finish("rank", state, tol, not failing, evidence, witness, extract)


def _scan_minors(unf: ModeUnfolding, threshold: float, exhaustive: bool, counter):
    """Return ``(max |minor|, first-or-worst violation)`` for one unfolding."""
    m = unf.entries
    r, dk = m.shape
    worst_abs = 0.0
    hit = None
    for s in range(dk - 1):
        for t in range(s + 1, dk):
            cs, ct = m[:, s], m[:, t]
            for p in range(r - 1):
                minors = cs[p] * ct[p + 1:] - ct[p] * cs[p + 1:]
                mags = np.abs(minors)
                if counter is not None:
                    n = r - 1 - p
                    counter.tally(mults=2 * n, adds=n, comparisons=n, phase="minors")
                j = int(np.argmax(mags))
                if mags[j] > worst_abs:
                    worst_abs = float(mags[j])
                if exhaustive:
                    if mags[j] > threshold and (hit is None or mags[j] > abs(hit[1])):
                        hit = ((p, p + 1 + j), minors[j], (s, t))
                else:
                    over = np.flatnonzero(mags > threshold)
                    if over.size:
                        j = int(over[0])
                        return float(mags[j]), ((p, p + 1 + j), complex(minors[j]), (s, t))
    return worst_abs, hit


def minor_criterion(state: PureState, tol: ToleranceConfig = DEFAULT_TOL, *,
                    exhaustive: bool = False, counter=None, extract: bool = True) -> Verdict:
    """Separable iff every 2x2 minor of every ``M_k`` is at most ``tol.rank * ||M_k||_F**2``.

    Scans parties, then column pairs ``(s, t)``, then row pairs ``(p, q)`` in
    lexicographic order and stops at the first violation unless
    ``exhaustive``, in which case the largest violation is the witness.
    """
    _check_pre(state, tol)
    evidence = []
    witness = None
    for k in range(state.n):
        unf = build_unfolding(state, k)
        threshold = tol.rank * frobenius(unf.entries) ** 2
        worst, hit = _scan_minors(unf, threshold, exhaustive, counter)
        evidence.append(PartyEvidence(k, worst, threshold, hit is None))
        if hit is not None:
            rows, value, cols = hit
            w = Witness("minors", k, complex(value), threshold, rows, cols)
            if witness is None or (exhaustive and abs(w.value) > abs(witness.value)):
                witness = w
            if not exhaustive:
                break
    return _finish("minors", state, tol, witness is None, evidence, witness, extract)


def proportionality_criterion(state: PureState, tol: ToleranceConfig = DEFAULT_TOL, *,
                              exhaustive: bool = False, counter=None,
                              extract: bool = True) -> Verdict:
    """Column-proportionality test on the zero-pruned unfoldings.

    For each party: build ``M_k``, delete zero rows and columns, take the
    entry of largest modulus ``a*`` (lowest row, then column, on ties) as
    pivot at ``(rho, s)`` and require, for every other column ``t``::

        |a* M_k[:, t] - M_k[rho, t] M_k[:, s]| <= tol.rank * |a*| * ||M_k||_F

    entrywise.  Each residual entry is the 2x2 minor on rows ``(rho, q)``
    and columns ``(s, t)``, so the test is linear in the size of ``M_k``.
    """
    _check_pre(state, tol)
    evidence = []
    witness = None
    for k in range(state.n):
        unf = build_unfolding(state, k)
        pr = prune(unf, tol.zero, counter)
        p_m = pr.entries
        rows, cols = p_m.shape
        mags = np.abs(p_m)
        flat = int(np.argmax(mags))
        rho, s = divmod(flat, cols)
        pivot = p_m[rho, s]
        norm = frobenius(p_m)
        if counter is not None:
            counter.tally(comparisons=p_m.size, phase="pivot")
            counter.tally(mults=p_m.size, adds=p_m.size, phase="pivot")
        threshold = float(tol.rank * abs(pivot) * norm)
        worst = 0.0
        hit = None
        for t in range(cols):
            if t == s:
                continue
            resid = pivot * p_m[:, t] - p_m[rho, t] * p_m[:, s]
            rmag = np.abs(resid)
            if counter is not None:
                counter.tally(mults=2 * rows, adds=rows, comparisons=rows, phase="prop")
            j = int(np.argmax(rmag))
            worst = max(worst, float(rmag[j]))
            over = np.flatnonzero(rmag > threshold)
            if over.size:
                q = int(over[0]) if not exhaustive else j
                cand = Witness(
                    "prop", k, complex(resid[q]), threshold,
                    (int(pr.kept_rows[rho]), int(pr.kept_rows[q])),
                    (int(pr.kept_cols[s]), int(pr.kept_cols[t])),
                )
                if hit is None or (exhaustive and abs(cand.value) > abs(hit.value)):
                    hit = cand
                if not exhaustive:
                    break
        evidence.append(PartyEvidence(k, worst, threshold, hit is None))
        if hit is not None:
            if witness is None or (exhaustive and abs(hit.value) / hit.threshold
                                   > abs(witness.value) / witness.threshold):
                witness = hit
            if not exhaustive:
                break
    return _finish("prop", state, tol, witness is None, evidence, witness, extract)


def _factorize(state: PureState, tol: ToleranceConfig):
    factors = []
    for k in range(state.n):
        m = build_unfolding(state, k).entries
        norms = np.einsum("ij,ij->i", m.conj(), m).real
        row = m[int(np.argmax(norms))]
        factors.append(row / math.sqrt(norms.max()))
    recon = product_state([PureState((f.size,), f) for f in factors], tol)
    z = complex(np.vdot(recon.amplitudes, state.amplitudes))
    fid = abs(z)
    if fid > 0:
        factors[0] = factors[0] * (z / fid)
    if fid < 1.0 - tol.fid:
        raise NumericalFailure(
            f"factor reconstruction fidelity {fid:.17g} below 1 - {tol.fid:g}", fidelity=fid
        )
    return tuple(PureState((f.size,), f) for f in factors), fid


def extract_factors(state: PureState, tol: ToleranceConfig = DEFAULT_TOL) -> tuple[PureState, ...]:
    """Single-party factors of a separable state.

    Factor ``k`` is the largest-norm row of ``M_k``, normalized; the global
    phase is put on factor 0 so that the overlap of the reconstruction with
    ``state`` is real and positive.

    Raises
    ------
    EntangledStateError
        If :func:`rank_criterion` does not find the state separable.
    NumericalFailure
        If the reconstruction fidelity is below ``1 - tol.fid``.
    """
    if not rank_criterion(state, tol, extract=False).separable:
        raise EntangledStateError("state is entangled; it has no product factors")
    return _factorize(state, tol)[0]


CRITERIA: dict[str, Callable[..., Verdict]] = {
    "det": det_criterion,
    "rank": rank_criterion,
    "minors": minor_criterion,
    "prop": proportionality_criterion,
}
ALL = ("det", "rank", "minors", "prop")


def _run(name: str, state, tol, **kw) -> Verdict:
    if name == "det-dense":
        return det_criterion(state, tol, dense=True, **kw)
    try:
        fn = CRITERIA[name]
    except KeyError:
        raise ValueError(f"unknown criterion {name!r}; choose from {sorted(CRITERIA)}") from None
    return fn(state, tol, **kw)


def classify(state: PureState, tol: ToleranceConfig = DEFAULT_TOL,
             criteria: Iterable[str] = ALL, *, exhaustive: bool = False) -> Verdict:
    """Run several criteria and insist that they agree.

    Returns a combined verdict whose ``components`` hold the individual
    verdicts.  Factors are extracted once when the state is separable.

    Raises
    ------
    CriteriaConflict
        If two selected criteria disagree.
    """
    names = list(dict.fromkeys(criteria))
    if not names:
        raise ValueError("select at least one criterion")
    verdicts = {name: _run(name, state, tol, exhaustive=exhaustive, extract=False) for name in names}
    first = names[0]
    for other in names[1:]:
        if verdicts[other].separable != verdicts[first].separable:
            raise CriteriaConflict((first, other), verdicts)
    label = "+".join(names)
    if verdicts[first].separable:
        factors, fid = _factorize(state, tol)
        return Verdict(label, True, (), factors, fid, components=verdicts)
    return Verdict(label, False, (), witness=verdicts[first].witness, components=verdicts)
