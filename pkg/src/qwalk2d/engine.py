"""
Coin and shift operators, single steps and multi-step evolution.

Two walks are supported:

- ``grover``: four-level coin ``G`` followed by a diagonal shift that moves coin
  ``c`` by ``(-1,-1), (-1,+1), (+1,-1), (+1,+1)`` for ``c = 0, 1, 2, 3``.
- ``alternate``: qubit coin ``H``, shift along x, ``H`` again, shift along y.

Every operator returns a new :class:`~qwalk2d.lattice.WalkState`; inputs are
never mutated.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from numpy.typing import NDArray

from .lattice import RadiusOverflowError, WalkState

__all__ = [
    "UNITARY_TOL",
    "CoinOperator",
    "WalkKind",
    "hadamard",
    "grover4",
    "apply_coin",
    "shift_axis",
    "shift_2d",
    "step",
    "evolve",
    "scalar_recurrence_oracle",
]

UNITARY_TOL = 1e-12

# (dx, dy) for the four-level coin labels
GROVER_MOVES = ((-1, -1), (-1, 1), (1, -1), (1, 1))


@dataclass(frozen=True)
class CoinOperator:
    """Unitary ``dim x dim`` coin; unitarity is checked on construction."""

    matrix: NDArray[np.complex128]

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in (2, 4):
            raise ValueError(f"coin operator must be 2x2 or 4x4, got shape {m.shape}")
        err = np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0])))
        if err > UNITARY_TOL:
            raise ValueError(f"coin operator is not unitary (max |UU^dag - I| = {err:.3e})")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __getitem__(self, ij: tuple[int, int]) -> complex:
        return complex(self.matrix[ij])

    def __matmul__(self, other: CoinOperator) -> CoinOperator:
        return CoinOperator(self.matrix @ other.matrix)

    @classmethod
    def identity(cls, dim: int) -> CoinOperator:
        return cls(np.eye(dim, dtype=np.complex128))


class WalkKind(str, enum.Enum):
    GROVER = "grover"
    ALTERNATE = "alternate"

    @property
    def coin_dim(self) -> int:
        return 4 if self is WalkKind.GROVER else 2

    def default_coin(self) -> CoinOperator:
        return grover4() if self is WalkKind.GROVER else hadamard()


def hadamard() -> CoinOperator:
    return CoinOperator(np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0))


def grover4() -> CoinOperator:
    """Grover diffusion coin: -1/2 on the diagonal, +1/2 elsewhere."""
    return CoinOperator(0.5 * (np.ones((4, 4)) - 2.0 * np.eye(4)))


def _check_dim(state: WalkState, dim: int, what: str) -> None:
    if state.coin_dim != dim:
        raise ValueError(f"{what} needs coin dimension {dim}, state has {state.coin_dim}")


def apply_coin(state: WalkState, op: CoinOperator) -> WalkState:
    """Apply ``op`` to the coin vector at every site."""
    _check_dim(state, op.dim, "coin operator")
    return state.with_amplitudes(state.amplitudes @ op.matrix.T)


def _shift_plane(plane: NDArray[np.complex128], axis: int, delta: int) -> NDArray[np.complex128]:
    """Move a 2-D slab by ``delta`` (+1 or -1) along ``axis``, no wraparound."""
    edge = [slice(None), slice(None)]
    edge[axis] = 0 if delta < 0 else -1
    if np.any(plane[tuple(edge)]):
        raise RadiusOverflowError("shift would move amplitude past the storage radius")
    out = np.zeros_like(plane)
    src = [slice(None), slice(None)]
    dst = [slice(None), slice(None)]
    if delta < 0:
        src[axis], dst[axis] = slice(1, None), slice(None, -1)
    else:
        src[axis], dst[axis] = slice(None, -1), slice(1, None)
    out[tuple(dst)] = plane[tuple(src)]
    return out


def shift_axis(state: WalkState, axis: str) -> WalkState:
    """
    Conditional shift of the qubit coin along ``axis`` ('x' or 'y').

    Coin 0 moves one site toward negative coordinates, coin 1 toward positive.
    The other axis and the time stamp are unchanged.
    """
    _check_dim(state, 2, "shift_axis")
    if axis not in ("x", "y"):
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    ax = 0 if axis == "x" else 1
    a = state.amplitudes
    out = np.empty_like(a)
    out[:, :, 0] = _shift_plane(a[:, :, 0], ax, -1)
    out[:, :, 1] = _shift_plane(a[:, :, 1], ax, +1)
    return state.with_amplitudes(out)


def shift_2d(state: WalkState) -> WalkState:
    """Diagonal shift of the four-level coin (see ``GROVER_MOVES``)."""
    _check_dim(state, 4, "shift_2d")
    a = state.amplitudes
    out = np.empty_like(a)
    for c, (dx, dy) in enumerate(GROVER_MOVES):
        out[:, :, c] = _shift_plane(_shift_plane(a[:, :, c], 0, dx), 1, dy)
    return state.with_amplitudes(out)


def _resolve(state: WalkState, kind: WalkKind | str, coin: Optional[CoinOperator]) -> tuple[WalkKind, CoinOperator]:
    kind = WalkKind(kind)
    _check_dim(state, kind.coin_dim, f"{kind.value} walk")
    coin = kind.default_coin() if coin is None else coin
    if coin.dim != kind.coin_dim:
        raise ValueError(f"{kind.value} walk needs a {kind.coin_dim}-dim coin, got {coin.dim}")
    return kind, coin


def step(state: WalkState, kind: WalkKind | str, coin: Optional[CoinOperator] = None) -> WalkState:
    """
    One time step of the given walk.

    ``coin`` defaults to ``grover4()`` or ``hadamard()``; passing another unitary
    of the right size runs the same walk with a different coin.
    """
    kind, coin = _resolve(state, kind, coin)
    if state.time + 1 > state.radius:
        raise RadiusOverflowError(
            f"step to t={state.time + 1} exceeds storage radius {state.radius}"
        )
    if kind is WalkKind.GROVER:
        out = shift_2d(apply_coin(state, coin))
    else:
        out = shift_axis(apply_coin(shift_axis(apply_coin(state, coin), "x"), coin), "y")
    return out.with_amplitudes(out.amplitudes, time=state.time + 1)


def evolve(
    state: WalkState,
    kind: WalkKind | str,
    steps: int,
    observer: Optional[Callable[[WalkState], None]] = None,
    coin: Optional[CoinOperator] = None,
) -> WalkState:
    """
    Apply ``steps`` walk steps.

    ``observer`` is called with the state after every step, so time series can
    be collected without keeping all intermediate states.
    """
    kind, coin = _resolve(state, kind, coin)
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    if state.time + steps > state.radius:
        raise RadiusOverflowError(
            f"evolving to t={state.time + steps} exceeds storage radius {state.radius}"
        )
    for _ in range(steps):
        state = step(state, kind, coin)
        if observer is not None:
            observer(state)
    return state


def scalar_recurrence_oracle(kind: WalkKind | str, init: WalkState, steps: int) -> WalkState:
    """
    Evolve by iterating the amplitude recurrences site by site.

    Grover::

        a'[x, y, k] = sum_j G[k, j] a[x + (-1)^m, y + (-1)^n, j],  m = k // 2, n = k % 2

    Alternate (``i`` = 0, 1, ``s = (-1)^i``)::

        b'[x, y, i] = (b[x+1, y+s, 0] + b[x+1, y+s, 1] + s (b[x-1, y+s, 0] - b[x-1, y+s, 1])) / 2

    Plain Python loops on purpose: this must stay independent of the
    array-operator code in :func:`step`.
    """
    kind = WalkKind(kind)
    _check_dim(init, kind.coin_dim, f"{kind.value} walk")
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    if init.time + steps > init.radius:
        raise RadiusOverflowError(
            f"evolving to t={init.time + steps} exceeds storage radius {init.radius}"
        )
    R = init.radius
    n = 2 * R + 1
    d = init.coin_dim
    amp = init.amplitudes.tolist()
    G = [[-0.5 if k == j else 0.5 for j in range(4)] for k in range(4)]

    def get(grid, x, y, c):
        i, j = x + R, y + R
        if 0 <= i < n and 0 <= j < n:
            return grid[i][j][c]
        return 0j

    for s in range(steps):
        reach = min(R, init.time + s + 1)
        new = [[[0j] * d for _ in range(n)] for _ in range(n)]
        for x in range(-reach, reach + 1):
            for y in range(-reach, reach + 1):
                cell = new[x + R][y + R]
                if kind is WalkKind.GROVER:
                    for k in range(4):
                        sx = x + (1 if k // 2 == 0 else -1)
                        sy = y + (1 if k % 2 == 0 else -1)
                        acc = 0j
                        for j in range(4):
                            acc += G[k][j] * get(amp, sx, sy, j)
                        cell[k] = acc
                else:
                    for i in range(2):
                        sg = 1 if i == 0 else -1
                        right0 = get(amp, x + 1, y + sg, 0)
                        right1 = get(amp, x + 1, y + sg, 1)
                        left0 = get(amp, x - 1, y + sg, 0)
                        left1 = get(amp, x - 1, y + sg, 1)
                        cell[i] = 0.5 * (right0 + right1 + sg * (left0 - left1))
        amp = new
    return WalkState(d, R, init.time + steps, np.array(amp, dtype=np.complex128).reshape(n, n, d))
