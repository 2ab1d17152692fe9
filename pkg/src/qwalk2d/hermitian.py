"""
Dense complex Hermitian matrices and a cyclic Jacobi eigenvalue solver.

The solver sweeps the strict upper triangle in row-major order. Each
rotation first removes the phase of ``a[p, q]`` and then applies a real
Jacobi rotation, so the pivot becomes exactly zero and the diagonal stays
real. Only eigenvalues are produced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

import numba
import numpy as np
from numpy.typing import ArrayLike, NDArray

__all__ = [
    "HERMITIAN_TOL",
    "HermitianMatrix",
    "EigenResult",
    "JacobiConvergenceError",
    "hermitian_eigenvalues",
    "trace_norm",
]

HERMITIAN_TOL = 1e-10
OFFDIAG_RTOL = 1e-13
MAX_SWEEPS = 100


class JacobiConvergenceError(RuntimeError):
    def __init__(self, sweeps: int, offdiag_norm: float):
        super().__init__(
            f"Jacobi iteration did not converge after {sweeps} sweeps "
            f"(off-diagonal norm {offdiag_norm:.3e})"
        )
        self.sweeps = sweeps
        self.offdiag_norm = offdiag_norm


def _hermiticity_error(m: NDArray[np.complex128]) -> float:
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m - m.conj().T)))


@dataclass(frozen=True)
class HermitianMatrix:
    """
    Square complex Hermitian matrix with optional basis labels.

    ``labels`` are opaque: coin indices for coin density matrices, ``(x, y)``
    sites for position density matrices.
    """

    entries: NDArray[np.complex128]
    labels: Optional[Sequence[Any]] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        m = np.array(self.entries, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"matrix must be square, got shape {m.shape}")
        scale = max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0
        err = _hermiticity_error(m)
        if err > HERMITIAN_TOL * scale:
            raise ValueError(f"matrix is not Hermitian (max |A - A^dag| = {err:.3e})")
        if self.labels is not None and len(self.labels) != m.shape[0]:
            raise ValueError(f"{len(self.labels)} labels for a {m.shape[0]}-dim matrix")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.entries).real)


@dataclass(frozen=True)
class EigenResult:
    eigenvalues: NDArray[np.float64]
    iterations: int
    offdiag_norm: float


@numba.njit(cache=True)
def _offdiag_norm(a):
    n = a.shape[0]
    acc = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            v = a[i, j]
            acc += v.real * v.real + v.imag * v.imag
    return math.sqrt(2.0 * acc)


@numba.njit(cache=True)
def _jacobi_sweeps(a, tol, max_sweeps):
    """Diagonalize ``a`` in place; returns (sweeps used, final off-diagonal norm)."""
    n = a.shape[0]
    # pivots below this cannot keep the off-diagonal norm above tol
    negligible = tol / n
    sweep = 0
    off = _offdiag_norm(a)
    while off > tol and sweep < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                g = abs(apq)
                if g <= negligible:
                    continue
                phase = apq / g
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * g)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # A <- J^dag A J with J = diag(1, e^{-i phi}) R(c, s); off the
                # (p, q) block, rows p and q depend only on the old rows p and q
                for k in range(n):
                    if k == p or k == q:
                        continue
                    apk = a[p, k]
                    aqk = a[q, k] * phase
                    new_p = c * apk - s * aqk
                    new_q = s * apk + c * aqk
                    a[p, k] = new_p
                    a[q, k] = new_q
                    a[k, p] = new_p.conjugate()
                    a[k, q] = new_q.conjugate()
                a[p, p] = app - t * g
                a[q, q] = aqq + t * g
                a[p, q] = 0.0
                a[q, p] = 0.0
        sweep += 1
        off = _offdiag_norm(a)
    return sweep, off


def _as_array(m: HermitianMatrix | ArrayLike) -> NDArray[np.complex128]:
    if isinstance(m, HermitianMatrix):
        return m.entries
    return HermitianMatrix(np.asarray(m)).entries


def hermitian_eigenvalues(m: HermitianMatrix | ArrayLike, max_sweeps: int = MAX_SWEEPS) -> EigenResult:
    """
    Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Iteration stops once the off-diagonal Frobenius norm drops below
    ``1e-13`` times the Frobenius norm of the input.

    Raises
    ------
    ValueError
        If ``m`` is not Hermitian within ``HERMITIAN_TOL``.
    JacobiConvergenceError
        If ``max_sweeps`` sweeps do not reach the threshold.
    """
    a = np.array(_as_array(m), dtype=np.complex128, order="C")
    n = a.shape[0]
    if n == 0:
        return EigenResult(np.zeros(0), 0, 0.0)
    # symmetrize so rounding in the input cannot bias the rotations
    a = 0.5 * (a + a.conj().T)
    tol = OFFDIAG_RTOL * float(np.linalg.norm(a))
    sweeps, off = _jacobi_sweeps(a, tol, max_sweeps)
    if off > tol:
        raise JacobiConvergenceError(sweeps, off)
    return EigenResult(np.sort(np.diag(a).real), sweeps, off)


def trace_norm(m: HermitianMatrix | ArrayLike) -> float:
    """Sum of absolute eigenvalues."""
    return float(np.sum(np.abs(hermitian_eigenvalues(m).eigenvalues)))
