"""
Regenerate tests/data/golden_entanglement.json.

States come from the site-by-site recurrence oracle (not the operator
engine) and spectra from numpy's LAPACK eigvalsh (not the Jacobi solver),
so the golden trajectories are independent of both code paths under test.

    python scripts/make_golden.py [--steps 20] [--out tests/data/golden_entanglement.json]
"""

import argparse
import json
from pathlib import Path

import numpy as np

from qwalk2d.engine import WalkKind, scalar_recurrence_oracle
from qwalk2d.lattice import alternate_initial_coin, grover_initial_coin, new_state


def entropy_bits(psi):
    m = psi.reshape(-1, psi.shape[-1])
    lam = np.linalg.eigvalsh(m.T @ m.conj())
    lam = lam[lam > 1e-14]
    return max(float(-np.sum(lam * np.log2(lam))), 0.0)


def negativity(psi):
    p = np.sum(np.abs(psi) ** 2, axis=2)
    ix = np.flatnonzero(p.sum(axis=1) > 1e-14)
    iy = np.flatnonzero(p.sum(axis=0) > 1e-14)
    d = min(ix.size, iy.size)
    if d == 1:
        return 0.0
    sub = psi[np.ix_(ix, iy)]
    nx, ny, c = sub.shape
    m = sub.reshape(nx * ny, c)
    rho = (m @ m.conj().T).reshape(nx, ny, nx, ny)
    pt = rho.transpose(2, 1, 0, 3).reshape(nx * ny, nx * ny)
    lam = np.linalg.eigvalsh(pt)
    return max((float(np.abs(lam).sum()) - 1.0) / (d - 1), 0.0)


def trajectories(kind, coin, steps):
    state = new_state(kind.coin_dim, steps, coin)
    entropy, neg = [], []
    for t in range(steps + 1):
        if t:
            state = scalar_recurrence_oracle(kind, state, 1)
        entropy.append(entropy_bits(state.amplitudes))
        neg.append(negativity(state.amplitudes))
    return entropy, neg


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    ap.add_argument("--steps", type=int, default=20)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "tests/data/golden_entanglement.json"))
    args = ap.parse_args()

    doc = {"steps": args.steps, "coin-position": {}, "xy-negativity": {}}
    for kind, coin in ((WalkKind.GROVER, grover_initial_coin()), (WalkKind.ALTERNATE, alternate_initial_coin())):
        s, n = trajectories(kind, coin, args.steps)
        doc["coin-position"][kind.value] = s
        doc["xy-negativity"][kind.value] = n
        print(f"[golden] {kind.value}: S(t={args.steps})={s[-1]:.6f} N(t={args.steps})={n[-1]:.6f}")
    Path(args.out).write_text(json.dumps(doc, indent=1) + "\n")
    print(f"[golden] wrote {args.out}")


if __name__ == "__main__":
    main()
