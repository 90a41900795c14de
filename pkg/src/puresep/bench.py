"""Operation-count sweeps and log-log slope fits.

Every point runs a criterion in exhaustive mode on a generic random state,
where no early exit and no pruning can shorten the work.  Counts are exact
tallies of the scalar operations performed, so they are identical from run
to run; wall time is reported alongside but never fitted.

Slopes are fitted against both problem parameters.  With ``n`` parties of
a fixed local dimension the count behaves like ``n * f(z)``, where ``z`` is
the total dimension ``d`` (or the unfolding height ``r`` for the dense
determinant).  The ``z``-slope is fitted to the per-party count
``count / n``; the ``n``-slope is fitted to ``count / z**p`` with ``p`` the
fitted ``z``-slope.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .counters import OpCounters
from .criteria import det_criterion, minor_criterion, proportionality_criterion, rank_criterion
from .state import random_state

FAMILIES = {"qubit": 2, "qutrit": 3}

# criterion name -> (callable, fitted phase or None for the total, slope variable)
RUNNERS = {
    "prop": (proportionality_criterion, None, "d"),
    "minors": (minor_criterion, None, "d"),
    "det-dense": (lambda s, **kw: det_criterion(s, dense=True, **kw), "det", "r"),
    "det": (det_criterion, None, "d"),
    "rank": (rank_criterion, None, "d"),
}

# per-point memory model in bytes: state + unfolding copies + work arrays
_BYTES = 16


class MemoryBoundExceeded(ValueError):
    pass


@dataclass(frozen=True)
class BenchPoint:
    criterion: str
    n: int
    dims: tuple[int, ...]
    d: int
    r: int
    counts: dict
    fitted_count: int
    seconds: float


@dataclass
class BenchReport:
    points: list = field(default_factory=list)
    fits: dict = field(default_factory=dict)
    skipped: list = field(default_factory=list)


def estimate_bytes(criterion: str, dims) -> int:
    d = math.prod(dims)
    r = d // min(dims)
    est = 4 * d * _BYTES
    if criterion == "det-dense":
        est += 3 * r * r * _BYTES
    elif criterion == "minors":
        est += 4 * r * _BYTES
    return est


def sweep_points(family: str, n_min: int, n_max: int) -> list[tuple[int, ...]]:
    try:
        dk = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown dims family {family!r}; choose from {sorted(FAMILIES)}") from None
    if n_min < 2 or n_max < n_min:
        raise ValueError(f"need 2 <= n_min <= n_max, got {n_min}..{n_max}")
    return [(dk,) * n for n in range(n_min, n_max + 1)]


def loglog_slope(x, y) -> float:
    """Least-squares slope of ``log y`` against ``log x``."""
    lx, ly = np.log(np.asarray(x, float)), np.log(np.asarray(y, float))
    if lx.size < 2 or np.ptp(lx) == 0:
        return float("nan")
    return float(np.polyfit(lx, ly, 1)[0])


def fit_slopes(points: list[BenchPoint]) -> dict:
    """``{criterion: {"variable", "d_slope", "n_slope", "points"}}``."""
    fits = {}
    for name in dict.fromkeys(p.criterion for p in points):
        pts = [p for p in points if p.criterion == name]
        var = RUNNERS[name][2]
        z = [p.r if var == "r" else p.d for p in pts]
        ns = [p.n for p in pts]
        c = [p.fitted_count for p in pts]
        z_slope = loglog_slope(z, [ci / ni for ci, ni in zip(c, ns)])
        n_slope = loglog_slope(ns, [ci / zi**z_slope for ci, zi in zip(c, z)])
        fits[name] = {"variable": var, "d_slope": z_slope, "n_slope": n_slope, "points": len(pts)}
    return fits


def run_point(criterion: str, dims, reps: int = 1, seed: int = 0) -> BenchPoint:
    fn, phase, _ = RUNNERS[criterion]
    state = random_state(dims, seed)
    counts = None
    times = []
    for _ in range(max(reps, 1)):
        counter = OpCounters()
        t0 = time.perf_counter()
        fn(state, exhaustive=True, counter=counter, extract=False)
        times.append(time.perf_counter() - t0)
        snapshot = counter.as_dict()
        if counts is not None and snapshot != counts:
            raise RuntimeError(f"operation counts changed between repetitions at {dims}")
        counts = snapshot
        fitted = counter.phase_total(phase) if phase else counter.total
    d = math.prod(dims)
    return BenchPoint(criterion, len(dims), tuple(dims), d, d // dims[0], counts, fitted,
                      float(np.median(times)))


def run_bench(dims_list, criteria, reps: int = 1, seed: int = 0,
              max_bytes: int = 1 << 30, dense_max_r: int = 64) -> BenchReport:
    """Run every criterion on every point and fit slopes.

    Raises
    ------
    MemoryBoundExceeded
        Before any allocation, if a point's estimated footprint exceeds
        ``max_bytes``.
    """
    for name in criteria:
        if name not in RUNNERS:
            raise ValueError(f"unknown criterion {name!r}; choose from {sorted(RUNNERS)}")
    for name in criteria:
        for dims in dims_list:
            need = estimate_bytes(name, dims)
            if need > max_bytes:
                raise MemoryBoundExceeded(
                    f"{name} at dims {dims} needs about {need} bytes, bound is {max_bytes}"
                )
    report = BenchReport()
    for name in criteria:
        for dims in dims_list:
            if name == "det-dense" and math.prod(dims) // dims[0] > dense_max_r:
                report.skipped.append((name, tuple(dims)))
                continue
            report.points.append(run_point(name, dims, reps, seed))
    report.fits = fit_slopes(report.points)
    return report


def format_table(report: BenchReport) -> str:
    head = f"{'criterion':<10} {'n':>3} {'d':>7} {'r':>6} {'mults':>12} {'adds':>12} " \
           f"{'cmps':>10} {'fitted':>12} {'seconds':>10}"
    lines = [head, "-" * len(head)]
    for p in report.points:
        c = p.counts
        lines.append(f"{p.criterion:<10} {p.n:>3} {p.d:>7} {p.r:>6} {c['mults']:>12} "
                     f"{c['adds']:>12} {c['comparisons']:>10} {p.fitted_count:>12} "
                     f"{p.seconds:>10.4f}")
    lines.append("")
    for name, f in report.fits.items():
        lines.append(f"{name:<10} slope vs {f['variable']}: {f['d_slope']:.3f}   "
                     f"slope vs n: {f['n_slope']:.3f}   ({f['points']} points)")
    for name, dims in report.skipped:
        lines.append(f"skipped {name} at dims {dims} (unfolding height above dense limit)")
    return "\n".join(lines)
