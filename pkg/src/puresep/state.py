"""Dense representation of n-partite pure states and test-state generators.

Amplitudes are stored as a flat ``complex128`` vector.  The flat position of
a multi-index ``(i_1, ..., i_n)`` is the row-major (C-order) position, so the
last party index varies fastest::

    flat = ((i_1 * d_2 + i_2) * d_3 + ...) * d_n + i_n
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DegenerateStateError, NotNormalizedError, ShapeError

__all__ = [
    "DimensionProfile",
    "PureState",
    "ToleranceConfig",
    "flat_index",
    "multi_index",
    "normalize",
    "inner_product",
    "cat_state",
    "w_state",
    "basis_state",
    "product_state",
    "random_product_factors",
    "random_product_state",
    "random_state",
    "perturb",
]

# Inputs further than this from unit norm are rejected rather than rescaled.
AUTO_NORMALIZE_LIMIT = 1e-3


@dataclass(frozen=True)
class ToleranceConfig:
    """Thresholds that turn exact zero-tests into floating point decisions.

    Parameters
    ----------
    norm : float
        Allowed deviation of ``sum |a|^2`` from one.
    zero : float
        Entries with modulus at or below this are treated as zero when
        pruning unfoldings.
    det : float
        Bound on ``|det(M M^dagger - E)|`` for the determinant test.  The
        determinant behaves like ``sigma_2**2``, hence the square of ``rank``.
    rank : float
        Bound on ``sigma_2 / sigma_1``.  The 2x2-minor and column
        proportionality tests are scaled to the same level.
    fid : float
        Slack on the reconstruction fidelity of extracted factors.
    """

    norm: float = 1e-9
    zero: float = 1e-12
    det: float = 1e-16
    rank: float = 1e-8
    fid: float = 1e-9

    def __post_init__(self):
        for name in ("norm", "zero", "det", "rank", "fid"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"tolerance {name!r} must be positive and finite, got {value!r}")


DEFAULT_TOL = ToleranceConfig()


@dataclass(frozen=True)
class DimensionProfile:
    """Local dimensions ``(d_1, ..., d_n)`` of a composite system."""

    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(x) for x in self.dims)
        if len(dims) == 0:
            raise ShapeError("a state needs at least one party")
        if any(x < 1 for x in dims):
            raise ShapeError(f"local dimensions must be positive, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def d(self) -> int:
        return math.prod(self.dims)

    @property
    def D(self) -> int:
        return max(self.dims)

    def complement(self, k: int) -> tuple[int, ...]:
        """Dimensions of every party except ``k``."""
        _check_party(self, k)
        return self.dims[:k] + self.dims[k + 1:]

    def __iter__(self):
        return iter(self.dims)

    def __len__(self):
        return len(self.dims)


def _as_profile(dims) -> DimensionProfile:
    if isinstance(dims, DimensionProfile):
        return dims
    if isinstance(dims, (int, np.integer)):
        return DimensionProfile((int(dims),))
    return DimensionProfile(tuple(dims))


def _check_party(profile: DimensionProfile, k: int) -> None:
    if not 0 <= k < profile.n:
        raise IndexError(f"party index {k} out of range for {profile.n} parties")


@dataclass(frozen=True, eq=False)
class PureState:
    """An unnormalized-or-normalized amplitude vector with its dimensions.

    Instances are immutable: the amplitude array is copied and marked
    read-only.  Use :meth:`from_amplitudes` to apply the input policy for
    external data (auto-normalize close-to-unit vectors, reject others).
    """

    profile: DimensionProfile
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        profile = _as_profile(self.profile)
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != profile.d:
            raise ShapeError(
                f"expected {profile.d} amplitudes for dims {profile.dims}, got {amps.size}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        amps.flags.writeable = False
        object.__setattr__(self, "profile", profile)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, dims, amplitudes, tol: ToleranceConfig = DEFAULT_TOL) -> "PureState":
        """Build a state from external data, normalizing small deviations.

        A vector within ``1e-3`` of unit norm is rescaled (with a warning if
        it was further than ``tol.norm`` away); anything else raises
        :class:`NotNormalizedError`.
        """
        state = cls(dims, amplitudes)
        dev = abs(state.norm_squared() - 1.0)
        if dev <= tol.norm:
            return state
        if dev <= AUTO_NORMALIZE_LIMIT:
            warnings.warn(
                f"state norm deviates from 1 by {dev:.3g}; normalizing", UserWarning, stacklevel=2
            )
            return normalize(state, tol)
        raise NotNormalizedError(f"squared norm {state.norm_squared():.17g} is not close to 1")

    @property
    def dims(self) -> tuple[int, ...]:
        return self.profile.dims

    @property
    def n(self) -> int:
        return self.profile.n

    @property
    def d(self) -> int:
        return self.profile.d

    @property
    def tensor(self) -> np.ndarray:
        """Read-only view with one axis per party."""
        return self.amplitudes.reshape(self.dims)

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def is_normalized(self, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
        return abs(self.norm_squared() - 1.0) <= tol.norm

    def require_normalized(self, tol: ToleranceConfig = DEFAULT_TOL) -> None:
        if not self.is_normalized(tol):
            raise NotNormalizedError(
                f"state is not normalized: sum |a|^2 = {self.norm_squared():.17g}"
            )

    def amplitude(self, multi: Sequence[int]) -> complex:
        return complex(self.amplitudes[flat_index(self.profile, multi)])

    def with_phase(self, theta: float) -> "PureState":
        return PureState(self.profile, np.exp(1j * theta) * self.amplitudes)

    def permute(self, order: Sequence[int]) -> "PureState":
        """Relabel parties so that new party ``j`` is old party ``order[j]``."""
        order = tuple(order)
        if sorted(order) != list(range(self.n)):
            raise ValueError(f"{order} is not a permutation of {self.n} parties")
        dims = tuple(self.dims[j] for j in order)
        return PureState(dims, np.transpose(self.tensor, order).reshape(-1))

    def __eq__(self, other):
        if not isinstance(other, PureState):
            return NotImplemented
        return self.dims == other.dims and np.array_equal(self.amplitudes, other.amplitudes)

    def __hash__(self):
        return hash((self.dims, self.amplitudes.tobytes()))


def flat_index(profile, multi: Sequence[int]) -> int:
    """Position of a multi-index in the flat amplitude vector.

    Raises
    ------
    IndexError
        If ``multi`` has the wrong length or a component is out of range.
    """
    profile = _as_profile(profile)
    multi = tuple(multi)
    if len(multi) != profile.n:
        raise IndexError(f"expected {profile.n} indices, got {len(multi)}")
    flat = 0
    for k, (i, dk) in enumerate(zip(multi, profile.dims)):
        if not 0 <= i < dk:
            # 1-based in messages, matching the usual a_{i1 i2 ...} notation
            raise IndexError(f"index {i + 1} of party {k + 1} outside 1..{dk}")
        flat = flat * dk + int(i)
    return flat


def multi_index(profile, flat: int) -> tuple[int, ...]:
    """Inverse of :func:`flat_index`."""
    profile = _as_profile(profile)
    if not 0 <= flat < profile.d:
        raise IndexError(f"flat index {flat} outside [0, {profile.d})")
    out = []
    for dk in reversed(profile.dims):
        flat, i = divmod(flat, dk)
        out.append(i)
    return tuple(reversed(out))


def normalize(state: PureState, tol: ToleranceConfig = DEFAULT_TOL) -> PureState:
    norm = math.sqrt(state.norm_squared())
    if norm <= tol.zero:
        raise DegenerateStateError("cannot normalize a zero vector")
    return PureState(state.profile, state.amplitudes / norm)


def inner_product(a: PureState, b: PureState) -> complex:
    """``<a|b>``, conjugate-linear in the first argument."""
    if a.dims != b.dims:
        raise ShapeError(f"profile mismatch: {a.dims} vs {b.dims}")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def basis_state(dims, multi: Sequence[int]) -> PureState:
    profile = _as_profile(dims)
    amps = np.zeros(profile.d, dtype=np.complex128)
    amps[flat_index(profile, multi)] = 1.0
    return PureState(profile, amps)


def cat_state(n: int, levels: int = 2) -> PureState:
    """``(|0...0> + |1...1>) / sqrt(2)`` on ``n`` parties of dimension ``levels``."""
    if n < 2:
        raise ValueError(f"a cat state needs n >= 2 parties, got {n}")
    if levels < 2:
        raise ValueError(f"a cat state needs levels >= 2, got {levels}")
    profile = DimensionProfile((levels,) * n)
    amps = np.zeros(profile.d, dtype=np.complex128)
    amps[0] = amps[flat_index(profile, (1,) * n)] = 1 / math.sqrt(2)
    return PureState(profile, amps)


def w_state(n: int) -> PureState:
    """Uniform superposition of the ``n`` single-excitation qubit basis states."""
    if n < 2:
        raise ValueError(f"a W state needs n >= 2 parties, got {n}")
    amps = np.zeros(2**n, dtype=np.complex128)
    for k in range(n):
        amps[1 << (n - 1 - k)] = 1 / math.sqrt(n)
    return PureState((2,) * n, amps)


def product_state(factors: Sequence[PureState], tol: ToleranceConfig = DEFAULT_TOL) -> PureState:
    """Tensor product of single-party states, party order as given."""
    if len(factors) == 0:
        raise ValueError("need at least one factor")
    amps = np.ones(1, dtype=np.complex128)
    dims = []
    for j, f in enumerate(factors):
        if f.n != 1:
            raise ShapeError(f"factor {j} has {f.n} parties, expected 1")
        if not f.is_normalized(tol):
            raise NotNormalizedError(f"factor {j} is not normalized")
        amps = np.kron(amps, f.amplitudes)
        dims.append(f.d)
    return PureState(tuple(dims), amps)


def _complex_unit_vector(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_product_factors(dims, seed: int) -> list[PureState]:
    """The single-party factors used by :func:`random_product_state`."""
    profile = _as_profile(dims)
    rng = np.random.default_rng(seed)
    return [PureState((dk,), _complex_unit_vector(rng, dk)) for dk in profile.dims]


def random_product_state(dims, seed: int) -> PureState:
    return product_state(random_product_factors(dims, seed))


def random_state(dims, seed: int) -> PureState:
    """Gaussian real and imaginary parts, normalized (Haar-distributed ket)."""
    profile = _as_profile(dims)
    rng = np.random.default_rng(seed)
    parts = rng.standard_normal((profile.d, 2))
    return normalize(PureState(profile, parts[:, 0] + 1j * parts[:, 1]))


def perturb(state: PureState, direction: PureState, eps: float,
            tol: ToleranceConfig = DEFAULT_TOL) -> PureState:
    """Move ``state`` a distance ``eps`` along the part of ``direction`` orthogonal to it.

    The orthogonalized direction is rescaled to unit length, so for small
    ``eps`` the result differs from ``state`` by ``eps`` in norm.
    """
    if state.dims != direction.dims:
        raise ShapeError(f"profile mismatch: {state.dims} vs {direction.dims}")
    psi = state.amplitudes
    v = direction.amplitudes - np.vdot(psi, direction.amplitudes) / np.vdot(psi, psi) * psi
    vnorm = np.linalg.norm(v)
    if vnorm <= tol.zero:
        raise DegenerateStateError("direction is parallel to the state")
    return normalize(PureState(state.profile, psi + eps * (v / vnorm)), tol)
