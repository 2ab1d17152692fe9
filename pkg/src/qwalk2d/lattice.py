"""
Walker + coin states on a bounded square lattice.

A :class:`WalkState` stores the amplitude tensor ``psi[x + R, y + R, c]`` for
sites ``-R <= x, y <= R`` and coin index ``c``. Coin labels follow the usual
basis ordering: for the four-level coin 0..3 mean left-down, left-up,
right-down, right-up; for the qubit coin 0 moves toward negative coordinates
and 1 toward positive ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np
from numpy.typing import NDArray

__all__ = [
    "COIN_NORM_TOL",
    "STATE_NORM_TOL",
    "CoinState",
    "WalkState",
    "ProbabilityDistribution",
    "RadiusOverflowError",
    "new_state",
    "grover_initial_coin",
    "alternate_initial_coin",
    "norm_squared",
    "probability_distribution",
    "origin_probability",
    "crop",
]

COIN_NORM_TOL = 1e-9
STATE_NORM_TOL = 1e-12


class RadiusOverflowError(ValueError):
    """Evolution would push amplitude past the storage radius."""


@dataclass(frozen=True)
class CoinState:
    """Normalized coin vector of dimension 2 or 4."""

    amplitudes: NDArray[np.complex128]

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size not in (2, 4):
            raise ValueError(f"coin dimension must be 2 or 4, got {amps.size}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("coin amplitudes must be finite")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > COIN_NORM_TOL:
            raise ValueError(f"coin is not normalized (|c|^2 = {norm2!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def __iter__(self) -> Iterator[complex]:
        return iter(complex(a) for a in self.amplitudes)


def grover_initial_coin() -> CoinState:
    """The unique Grover-walk coin state that avoids localization at the origin."""
    return CoinState(np.array([0.5, -0.5, -0.5, 0.5], dtype=np.complex128))


def alternate_initial_coin() -> CoinState:
    """Symmetric qubit coin (|0> + i|1>)/sqrt(2)."""
    r = np.sqrt(0.5)
    return CoinState(np.array([r, 1j * r], dtype=np.complex128))


@dataclass(eq=False)
class WalkState:
    """
    Amplitudes of a walker on ``[-radius, radius]^2`` with a ``coin_dim`` coin.

    Parameters
    ----------
    coin_dim : int
        2 for the alternate walk, 4 for the Grover walk.
    radius : int
        Largest storable ``|x|`` and ``|y|``.
    time : int
        Number of walk steps already applied.
    amplitudes : ndarray, shape (2R+1, 2R+1, coin_dim), complex128
        ``amplitudes[x + R, y + R, c]``.
    """

    coin_dim: int
    radius: int
    time: int
    amplitudes: NDArray[np.complex128] = field(repr=False)

    def __post_init__(self) -> None:
        if self.coin_dim not in (2, 4):
            raise ValueError(f"coin_dim must be 2 or 4, got {self.coin_dim}")
        if self.radius < 0:
            raise ValueError(f"radius must be >= 0, got {self.radius}")
        if self.time < 0:
            raise ValueError(f"time must be >= 0, got {self.time}")
        if self.time > self.radius:
            raise RadiusOverflowError(
                f"time {self.time} exceeds storage radius {self.radius}"
            )
        n = 2 * self.radius + 1
        shape = (n, n, self.coin_dim)
        if self.amplitudes.shape != shape:
            raise ValueError(
                f"amplitude array has shape {self.amplitudes.shape}, expected {shape}"
            )

    @property
    def size(self) -> int:
        return 2 * self.radius + 1

    @property
    def coords(self) -> NDArray[np.int64]:
        """Lattice coordinates ``-R..R`` along either axis."""
        return np.arange(-self.radius, self.radius + 1)

    def amplitude(self, x: int, y: int, c: int) -> complex:
        """Amplitude at site ``(x, y)`` and coin index ``c`` (0 outside storage)."""
        R = self.radius
        if abs(x) > R or abs(y) > R:
            return 0j
        return complex(self.amplitudes[x + R, y + R, c])

    def coin_vector(self, x: int, y: int) -> NDArray[np.complex128]:
        R = self.radius
        return self.amplitudes[x + R, y + R].copy()

    def copy(self) -> WalkState:
        return WalkState(self.coin_dim, self.radius, self.time, self.amplitudes.copy())

    def with_amplitudes(self, amplitudes: NDArray[np.complex128], time: int | None = None) -> WalkState:
        return WalkState(
            self.coin_dim,
            self.radius,
            self.time if time is None else time,
            amplitudes,
        )


def new_state(coin_dim: int, radius: int, coin: CoinState | Sequence[complex]) -> WalkState:
    """
    Walker localized at the origin with coin state ``coin``, at time 0.

    Raises
    ------
    ValueError
        If the coin dimension differs from ``coin_dim`` or the coin is not
        normalized within ``COIN_NORM_TOL``.
    """
    if not isinstance(coin, CoinState):
        coin = CoinState(np.asarray(coin, dtype=np.complex128))
    if coin.dim != coin_dim:
        raise ValueError(f"coin has dimension {coin.dim} but walk needs {coin_dim}")
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    n = 2 * radius + 1
    amps = np.zeros((n, n, coin_dim), dtype=np.complex128)
    amps[radius, radius, :] = coin.amplitudes
    return WalkState(coin_dim, radius, 0, amps)


def norm_squared(state: WalkState) -> float:
    """Sum of ``|psi|^2`` over the whole lattice and coin."""
    a = state.amplitudes
    return float(np.sum(a.real * a.real + a.imag * a.imag))


@dataclass(frozen=True)
class ProbabilityDistribution:
    """Spatial probability ``p(x, y)`` on ``[-radius, radius]^2``, coin traced out."""

    radius: int
    values: NDArray[np.float64] = field(repr=False)

    def __getitem__(self, site: tuple[int, int]) -> float:
        x, y = site
        R = self.radius
        if abs(x) > R or abs(y) > R:
            return 0.0
        return float(self.values[x + R, y + R])

    def total(self) -> float:
        return float(self.values.sum())

    def items(self) -> Iterator[tuple[tuple[int, int], float]]:
        """Nonzero sites in lexicographic ``(x, y)`` order."""
        R = self.radius
        xs, ys = np.nonzero(self.values)
        for i, j in zip(xs.tolist(), ys.tolist()):
            yield (i - R, j - R), float(self.values[i, j])

    def padded(self, radius: int) -> NDArray[np.float64]:
        """Values embedded in a larger ``[-radius, radius]^2`` grid."""
        if radius < self.radius:
            raise ValueError("cannot pad to a smaller radius")
        off = radius - self.radius
        out = np.zeros((2 * radius + 1, 2 * radius + 1))
        out[off:off + self.values.shape[0], off:off + self.values.shape[1]] = self.values
        return out


def probability_distribution(state: WalkState) -> ProbabilityDistribution:
    a = state.amplitudes
    p = np.sum(a.real * a.real + a.imag * a.imag, axis=2)
    return ProbabilityDistribution(state.radius, p)


def origin_probability(state: WalkState) -> float:
    return probability_distribution(state)[0, 0]


def crop(state: WalkState, radius: int) -> WalkState:
    """
    Copy of ``state`` stored on a smaller lattice.

    Raises
    ------
    ValueError
        If nonzero amplitude lies outside the requested radius.
    """
    if radius > state.radius:
        raise ValueError(f"crop radius {radius} exceeds state radius {state.radius}")
    off = state.radius - radius
    n = 2 * radius + 1
    outer = state.amplitudes.copy()
    outer[off:off + n, off:off + n] = 0
    if np.any(outer):
        raise ValueError(f"state has support outside radius {radius}")
    inner = state.amplitudes[off:off + n, off:off + n].copy()
    return WalkState(state.coin_dim, radius, state.time, inner)
