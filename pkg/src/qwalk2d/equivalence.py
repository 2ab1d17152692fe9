"""
Numerical checks that the alternate walk reproduces the Grover walk.

For the non-localized Grover initial coin and the symmetric qubit coin the
amplitudes are related site by site by::

    b[x, y, 0] = (-1)^t e^{i pi/4} ( a[x, y, 0] + i a[x, y, 2])
    b[x, y, 1] = (-1)^t e^{i pi/4} (-a[x, y, 1] + i a[x, y, 3])

which relies on two linear identities of the Grover amplitudes (see
:func:`check_alpha_identities`). All checks report max-abs residuals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from . import engine
from .lattice import ProbabilityDistribution, WalkState

__all__ = [
    "ResidualReport",
    "check_alpha_identities",
    "map_grover_to_alternate",
    "check_beta_mapping",
    "check_commutation",
    "distribution_distance",
    "alpha_imaginary_residual",
]

# e^{i pi/4} without trigonometric rounding
_EIGHTH_TURN = (np.sqrt(2.0) / 2.0) * (1.0 + 1.0j)


@dataclass(frozen=True)
class ResidualReport:
    t: int
    max_abs_residual: float
    worst_site: tuple[int, int]
    checks_evaluated: int

    def passed(self, tol: float) -> bool:
        return self.max_abs_residual < tol


def _require_dim(state: WalkState, dim: int) -> None:
    if state.coin_dim != dim:
        raise ValueError(f"expected a {dim}-level coin state, got coin_dim={state.coin_dim}")


def _report(t: int, residual: NDArray[np.float64], radius: int, checks: int) -> ResidualReport:
    """Max over a site-indexed residual grid; ties resolve to the first site."""
    i, j = np.unravel_index(int(np.argmax(residual)), residual.shape)
    return ResidualReport(
        t=t,
        max_abs_residual=float(residual[i, j]),
        worst_site=(int(i) - radius, int(j) - radius),
        checks_evaluated=checks,
    )


def check_alpha_identities(state: WalkState) -> ResidualReport:
    """
    Evaluate, at every stored site (x, y), the two Grover-amplitude identities

        a[x-1, y, 0] + a[x-1, y, 1] + a[x+1, y, 2] + a[x+1, y, 3] = 0
        a[x, y-1, 0] + a[x, y-1, 2] + a[x, y+1, 1] + a[x, y+1, 3] = 0

    Amplitudes outside storage count as 0. ``checks_evaluated`` counts both
    identities at every site.
    """
    _require_dim(state, 4)
    R = state.radius
    a = np.pad(state.amplitudes, ((1, 1), (1, 1), (0, 0)))
    n = state.size
    # padded index of site (x, y) is (x + R + 1, y + R + 1)
    core = slice(1, n + 1)
    lo, hi = slice(0, n), slice(2, n + 2)
    lhs_x = a[lo, core, 0] + a[lo, core, 1] + a[hi, core, 2] + a[hi, core, 3]
    lhs_y = a[core, lo, 0] + a[core, lo, 2] + a[core, hi, 1] + a[core, hi, 3]
    residual = np.maximum(np.abs(lhs_x), np.abs(lhs_y))
    return _report(state.time, residual, R, 2 * residual.size)


def _phase(t: int) -> complex:
    return -_EIGHTH_TURN if t % 2 else _EIGHTH_TURN


def map_grover_to_alternate(state4: WalkState) -> WalkState:
    """Predicted alternate-walk state from a Grover-walk state at the same time."""
    _require_dim(state4, 4)
    a = state4.amplitudes
    ph = _phase(state4.time)
    out = np.empty(a.shape[:2] + (2,), dtype=np.complex128)
    out[:, :, 0] = ph * (a[:, :, 0] + 1j * a[:, :, 2])
    out[:, :, 1] = ph * (-a[:, :, 1] + 1j * a[:, :, 3])
    return WalkState(2, state4.radius, state4.time, out)


def _embed(a: NDArray[np.complex128], radius: int, target: int) -> NDArray[np.complex128]:
    if radius == target:
        return a
    off = target - radius
    out = np.zeros((2 * target + 1, 2 * target + 1) + a.shape[2:], dtype=a.dtype)
    out[off:off + a.shape[0], off:off + a.shape[1]] = a
    return out


def _amplitude_residual(predicted: WalkState, actual: WalkState) -> ResidualReport:
    R = max(predicted.radius, actual.radius)
    diff = np.abs(
        _embed(actual.amplitudes, actual.radius, R) - _embed(predicted.amplitudes, predicted.radius, R)
    )
    return _report(actual.time, diff.max(axis=2), R, diff.size)


def check_beta_mapping(state4: WalkState, state2: WalkState) -> ResidualReport:
    """Max |b_actual - b_predicted| over all sites and both coin values."""
    _require_dim(state4, 4)
    _require_dim(state2, 2)
    if state4.time != state2.time:
        raise ValueError(f"time mismatch: Grover t={state4.time}, alternate t={state2.time}")
    return _amplitude_residual(map_grover_to_alternate(state4), state2)


def check_commutation(state4: WalkState) -> ResidualReport:
    """
    Map-then-step versus step-then-map for one step from ``state4``.

    This is the inductive step of the equivalence, checked on actual data.
    Needs ``state4.time + 1 <= state4.radius``.
    """
    _require_dim(state4, 4)
    via_alternate = engine.step(map_grover_to_alternate(state4), engine.WalkKind.ALTERNATE)
    via_grover = map_grover_to_alternate(engine.step(state4, engine.WalkKind.GROVER))
    return _amplitude_residual(via_grover, via_alternate)


def distribution_distance(p: ProbabilityDistribution, q: ProbabilityDistribution) -> tuple[float, float]:
    """(max |p - q|, total variation distance) over the union of both grids."""
    R = max(p.radius, q.radius)
    diff = np.abs(p.padded(R) - q.padded(R))
    return float(diff.max()), float(0.5 * diff.sum())


def alpha_imaginary_residual(state4: WalkState) -> float:
    """Largest |Im a| -- zero when the Grover amplitudes stay real."""
    _require_dim(state4, 4)
    return float(np.max(np.abs(state4.amplitudes.imag)))
