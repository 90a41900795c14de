"""Plain-text state files.

::

    QSTATE 1
    # comments may appear on any line after the header
    3
    2 2 2
    0.70710678118654757 0
    0 0
    ...

Line 2 is the number of parties, line 3 the local dimensions, then one
``re im`` pair per amplitude in flat-index order (last party fastest).
Values are written with 17 significant digits so that reading a written
file reproduces every double exactly.
"""

from __future__ import annotations

import math
import os
import warnings
from typing import Iterable

import numpy as np

from .errors import SeparabilityError
from .state import AUTO_NORMALIZE_LIMIT, DEFAULT_TOL, PureState, ToleranceConfig, normalize

HEADER = "QSTATE 1"


class StateFileError(SeparabilityError, ValueError):
    """Malformed state file; ``line`` is 1-based (0 when not line-specific)."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def _content_lines(text: str):
    lines = text.splitlines()
    if not lines or lines[0].strip() != HEADER:
        raise StateFileError(f"first line must be {HEADER!r}", 1)
    for no, raw in enumerate(lines[1:], start=2):
        s = raw.strip()
        if s and not s.startswith("#"):
            yield no, s


def parse_state(text: str, tol: ToleranceConfig = DEFAULT_TOL) -> PureState:
    """Parse state-file text.

    A state whose squared norm is within ``1e-3`` of one is normalized
    (with a ``UserWarning`` if it was off by more than ``tol.norm``);
    anything further off raises :class:`StateFileError`.
    """
    body = _content_lines(text)
    try:
        no, s = next(body)
    except StopIteration:
        raise StateFileError("missing party count", 2) from None
    try:
        n = int(s)
    except ValueError:
        raise StateFileError(f"party count must be an integer, got {s!r}", no) from None
    if n < 1:
        raise StateFileError(f"party count must be positive, got {n}", no)
    try:
        no, s = next(body)
    except StopIteration:
        raise StateFileError("missing dimension line", no + 1) from None
    try:
        dims = tuple(int(x) for x in s.split())
    except ValueError:
        raise StateFileError(f"dimensions must be integers, got {s!r}", no) from None
    if len(dims) != n:
        raise StateFileError(f"expected {n} dimensions, got {len(dims)}", no)
    if any(x < 1 for x in dims):
        raise StateFileError(f"dimensions must be positive, got {dims}", no)
    d = math.prod(dims)
    amps = []
    last = no
    for no, s in body:
        parts = s.split()
        if len(parts) != 2:
            raise StateFileError(f"expected 're im', got {s!r}", no)
        try:
            re, im = float(parts[0]), float(parts[1])
        except ValueError:
            raise StateFileError(f"cannot parse amplitude {s!r}", no) from None
        if not (math.isfinite(re) and math.isfinite(im)):
            raise StateFileError(f"amplitude is not finite: {s!r}", no)
        amps.append(complex(re, im))
        last = no
    if len(amps) != d:
        raise StateFileError(f"expected {d} amplitudes for dims {dims}, got {len(amps)}", last)
    state = PureState(dims, np.array(amps, dtype=np.complex128))
    dev = abs(state.norm_squared() - 1.0)
    if dev > AUTO_NORMALIZE_LIMIT:
        raise StateFileError(f"squared norm {state.norm_squared():.6g} deviates from 1 by more than "
                             f"{AUTO_NORMALIZE_LIMIT:g}")
    if dev > tol.norm:
        warnings.warn(f"state norm deviates from 1 by {dev:.3g}; normalizing", UserWarning,
                      stacklevel=2)
        state = normalize(state, tol)
    return state


def read_state(path, tol: ToleranceConfig = DEFAULT_TOL) -> PureState:
    with open(path, encoding="utf-8") as fh:
        return parse_state(fh.read(), tol)


def format_state(state: PureState, comments: Iterable[str] = ()) -> str:
    lines = [HEADER]
    lines += [f"# {c}" for c in comments]
    lines.append(str(state.n))
    lines.append(" ".join(str(x) for x in state.dims))
    lines += [f"{a.real:.17g} {a.imag:.17g}" for a in state.amplitudes]
    return "\n".join(lines) + "\n"


def write_state(state: PureState, path, comments: Iterable[str] = ()) -> None:
    text = format_state(state, comments)
    tmp = f"{os.fspath(path)}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


__all__ = ["HEADER", "StateFileError", "parse_state", "read_state", "format_state", "write_state"]
