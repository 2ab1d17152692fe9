"""
Coin-position entropy and x-y negativity of walk states.

Entropies are in bits. The position density matrix is built on the
compressed support basis: only x (and y) values whose marginal probability
exceeds ``SUPPORT_TOL`` are kept, rows ordered as ``ix * len(ys) + iy``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .hermitian import HermitianMatrix, hermitian_eigenvalues
from .lattice import WalkState

__all__ = [
    "SUPPORT_TOL",
    "SupportBasis",
    "reduced_coin_density",
    "von_neumann_entropy",
    "coin_position_entanglement",
    "position_density",
    "partial_transpose_x",
    "xy_negativity",
]

SUPPORT_TOL = 1e-14
EIG_CUTOFF = 1e-14
PSD_TOL = 1e-10
TRACE_TOL = 1e-8


@dataclass(frozen=True)
class SupportBasis:
    """Occupied x and y coordinates, each sorted ascending."""

    xs: tuple[int, ...]
    ys: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.xs or not self.ys:
            raise ValueError("support basis must be nonempty on both axes")

    @property
    def dim(self) -> int:
        return len(self.xs) * len(self.ys)

    def labels(self) -> list[tuple[int, int]]:
        return [(x, y) for x in self.xs for y in self.ys]


def reduced_coin_density(state: WalkState) -> HermitianMatrix:
    """rho_C[c, c'] = sum over sites of psi[x, y, c] conj(psi[x, y, c'])."""
    m = state.amplitudes.reshape(-1, state.coin_dim)
    rho = m.T @ m.conj()
    return HermitianMatrix(rho, labels=list(range(state.coin_dim)))


def von_neumann_entropy(rho: HermitianMatrix) -> float:
    """
    -sum(l * log2(l)) over the eigenvalues of a density matrix.

    Eigenvalues below ``1e-14`` contribute nothing.

    Raises
    ------
    ValueError
        If the trace differs from 1 by more than ``1e-8`` or an eigenvalue is
        below ``-1e-10``.
    """
    if not isinstance(rho, HermitianMatrix):
        rho = HermitianMatrix(np.asarray(rho))
    tr = rho.trace()
    if abs(tr - 1.0) > TRACE_TOL:
        raise ValueError(f"density matrix trace is {tr!r}, expected 1")
    lam = hermitian_eigenvalues(rho).eigenvalues
    if lam.size and lam[0] < -PSD_TOL:
        raise ValueError(f"density matrix has negative eigenvalue {lam[0]:.3e}")
    lam = lam[lam > EIG_CUTOFF]
    # a pure state's top eigenvalue can round to 1 + eps, giving -1e-16
    return max(float(-np.sum(lam * np.log2(lam))), 0.0)


def coin_position_entanglement(state: WalkState) -> float:
    return von_neumann_entropy(reduced_coin_density(state))


def _support(state: WalkState) -> tuple[SupportBasis, NDArray[np.complex128]]:
    a = state.amplitudes
    p = np.sum(a.real * a.real + a.imag * a.imag, axis=2)
    ix = np.flatnonzero(p.sum(axis=1) > SUPPORT_TOL)
    iy = np.flatnonzero(p.sum(axis=0) > SUPPORT_TOL)
    R = state.radius
    basis = SupportBasis(tuple(int(i) - R for i in ix), tuple(int(j) - R for j in iy))
    return basis, a[np.ix_(ix, iy)]


def position_density(state: WalkState) -> tuple[HermitianMatrix, SupportBasis]:
    """Coin-traced density matrix over the occupied (x, y) product basis."""
    basis, psi = _support(state)
    m = psi.reshape(basis.dim, state.coin_dim)
    rho = m @ m.conj().T
    return HermitianMatrix(rho, labels=basis.labels()), basis


def partial_transpose_x(rho: HermitianMatrix, basis: SupportBasis) -> HermitianMatrix:
    """Swap the x indices: out[(x, y), (x', y')] = rho[(x', y), (x, y')]."""
    nx, ny = len(basis.xs), len(basis.ys)
    if rho.dim != nx * ny:
        raise ValueError(f"matrix dim {rho.dim} does not match basis {nx}x{ny}")
    t = rho.entries.reshape(nx, ny, nx, ny).transpose(2, 1, 0, 3).reshape(nx * ny, nx * ny)
    return HermitianMatrix(t, labels=rho.labels)


def xy_negativity(state: WalkState) -> float:
    """
    Normalized negativity ``(||rho^{T_x}||_1 - 1) / (d - 1)`` between the axes.

    ``d`` is the smaller of the two occupied axis supports; a single occupied
    row or column means no entanglement and gives 0.
    """
    rho, basis = position_density(state)
    d = min(len(basis.xs), len(basis.ys))
    if d == 1:
        return 0.0
    lam = hermitian_eigenvalues(partial_transpose_x(rho, basis)).eigenvalues
    n = (float(np.sum(np.abs(lam))) - 1.0) / (d - 1)
    # trace norm is >= trace = 1, so anything below 0 is rounding
    return max(n, 0.0)
