"""
``qwalk2d`` command line: ``run``, ``entangle`` and ``verify``.

Exit codes: 0 success, 1 verification failure, 2 usage/config error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import engine, entanglement, equivalence
from .lattice import (
    CoinState,
    WalkState,
    alternate_initial_coin,
    crop,
    grover_initial_coin,
    new_state,
    probability_distribution,
)

MAX_STEPS = 10_000

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_IO = 3

COIN_PRESETS: dict[str, Callable[[], CoinState]] = {
    "grover-nonlocalized": grover_initial_coin,
    "alt-symmetric": alternate_initial_coin,
}
DEFAULT_PRESET = {"grover": "grover-nonlocalized", "alternate": "alt-symmetric"}

MEASURES: dict[str, Callable[[WalkState], float]] = {
    "coin-position": entanglement.coin_position_entanglement,
    "xy-negativity": entanglement.xy_negativity,
}
CHECKS = ("alpha-identities", "beta-mapping", "distribution-match", "oracle-match")
DEFAULT_TOLERANCE = {"distribution-match": 1e-11}


class ConfigError(ValueError):
    pass


CoinSpec = Union[str, list[complex]]


@dataclass(frozen=True)
class RunConfig:
    walk: str
    steps: int
    coin_init: CoinSpec
    output: Optional[str] = None
    format: str = "csv"

    def __post_init__(self) -> None:
        if self.walk not in DEFAULT_PRESET:
            raise ConfigError(f"unknown walk {self.walk!r}")
        _check_steps(self.steps)
        if self.format not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.format!r}")
        self.coin()

    @property
    def kind(self) -> engine.WalkKind:
        return engine.WalkKind(self.walk)

    def coin(self) -> CoinState:
        if isinstance(self.coin_init, str):
            try:
                coin = COIN_PRESETS[self.coin_init]()
            except KeyError:
                raise ConfigError(f"unknown coin preset {self.coin_init!r}") from None
        else:
            try:
                coin = CoinState(np.array(self.coin_init, dtype=np.complex128))
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        if coin.dim != self.kind.coin_dim:
            raise ConfigError(
                f"{self.walk} walk needs a {self.kind.coin_dim}-amplitude coin, "
                f"got {coin.dim} amplitudes"
            )
        return coin

    def initial_state(self) -> WalkState:
        return new_state(self.kind.coin_dim, self.steps, self.coin())

    def coin_init_json(self):
        if isinstance(self.coin_init, str):
            return self.coin_init
        return [_complex_json(z) for z in self.coin_init]


def _check_steps(steps: int) -> None:
    if not 0 <= steps <= MAX_STEPS:
        raise ConfigError(f"steps must be in [0, {MAX_STEPS}], got {steps}")


def parse_coin_init(text: str) -> CoinSpec:
    """A preset name, or comma-separated ``re:im`` pairs (``im`` optional)."""
    if text in COIN_PRESETS:
        return text
    values = []
    for item in text.split(","):
        re_part, _, im_part = item.strip().partition(":")
        try:
            values.append(complex(float(re_part), float(im_part) if im_part else 0.0))
        except ValueError:
            raise ConfigError(
                f"bad coin amplitude {item!r}: expected a preset "
                f"({', '.join(COIN_PRESETS)}) or re:im pairs"
            ) from None
    return values


def _complex_json(z: complex) -> dict[str, float]:
    return {"re": float(z.real), "im": float(z.imag)}


def _csv_text(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _write(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _amplitude_rows(state: WalkState):
    R = state.radius
    a = state.amplitudes
    for i, j, c in zip(*np.nonzero(a)):
        z = complex(a[i, j, c])
        yield int(i) - R, int(j) - R, int(c), z


def render_distribution(cfg: RunConfig, state: WalkState, dump_amplitudes: bool = False) -> str:
    """Distribution (or raw amplitudes) of ``state`` in the configured format."""
    rows = [(x, y, p) for (x, y), p in probability_distribution(state).items()]
    if cfg.format == "json":
        doc = {
            "walk": cfg.walk,
            "steps": cfg.steps,
            "coin_init": cfg.coin_init_json(),
            "data": [{"x": x, "y": y, "p": p} for x, y, p in rows],
        }
        if dump_amplitudes:
            doc["amplitudes"] = [
                {"x": x, "y": y, "c": c, "amplitude": _complex_json(z)}
                for x, y, c, z in _amplitude_rows(state)
            ]
        return json.dumps(doc, indent=1) + "\n"
    if dump_amplitudes:
        return _csv_text(
            ("x", "y", "c", "re", "im"),
            ((x, y, c, z.real, z.imag) for x, y, c, z in _amplitude_rows(state)),
        )
    return _csv_text(("x", "y", "p"), rows)


def cmd_run(cfg: RunConfig, dump_amplitudes: bool = False) -> int:
    final = engine.evolve(cfg.initial_state(), cfg.kind, cfg.steps)
    _write(render_distribution(cfg, final, dump_amplitudes), cfg.output)
    return EXIT_OK


def entanglement_series(cfg: RunConfig, measure: str, jobs: int = 1) -> list[tuple[int, float]]:
    """(t, value) for t = 0..steps; values are identical for any ``jobs``."""
    try:
        fn = MEASURES[measure]
    except KeyError:
        raise ConfigError(f"unknown measure {measure!r}") from None
    if jobs < 1:
        raise ConfigError(f"jobs must be >= 1, got {jobs}")
    state = cfg.initial_state()
    if jobs == 1:
        values = [fn(state)]
        engine.evolve(state, cfg.kind, cfg.steps, observer=lambda s: values.append(fn(s)))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(fn, state)]
            engine.evolve(
                state,
                cfg.kind,
                cfg.steps,
                observer=lambda s: futures.append(pool.submit(fn, crop(s, s.time))),
            )
            values = [f.result() for f in futures]
    return list(enumerate(values))


def cmd_entangle(cfg: RunConfig, measure: str, jobs: int = 1) -> int:
    series = entanglement_series(cfg, measure, jobs)
    if cfg.format == "json":
        doc = {
            "walk": cfg.walk,
            "steps": cfg.steps,
            "coin_init": cfg.coin_init_json(),
            "measure": measure,
            "data": [{"t": t, "value": v} for t, v in series],
        }
        text = json.dumps(doc, indent=1) + "\n"
    else:
        text = _csv_text(("t", "value"), series)
    _write(text, cfg.output)
    return EXIT_OK


def _matched_pair(steps: int) -> tuple[WalkState, WalkState]:
    return (
        new_state(4, steps, grover_initial_coin()),
        new_state(2, steps, alternate_initial_coin()),
    )


def verification_residuals(check: str, steps: int) -> list[tuple[int, float, tuple[int, int]]]:
    """(t, worst residual, worst site) at every t in 0..steps."""
    _check_steps(steps)
    grover, alt = _matched_pair(steps)
    out = []
    if check == "alpha-identities":
        def record(s: WalkState) -> None:
            rep = equivalence.check_alpha_identities(s)
            out.append((rep.t, rep.max_abs_residual, rep.worst_site))

        record(grover)
        engine.evolve(grover, engine.WalkKind.GROVER, steps, observer=record)
        return out
    if check not in CHECKS:
        raise ConfigError(f"unknown check {check!r}")
    g_oracle, a_oracle = grover, alt
    for t in range(steps + 1):
        if t > 0:
            grover = engine.step(grover, engine.WalkKind.GROVER)
            alt = engine.step(alt, engine.WalkKind.ALTERNATE)
        if check == "beta-mapping":
            rep = equivalence.check_beta_mapping(grover, alt)
            out.append((t, rep.max_abs_residual, rep.worst_site))
        elif check == "distribution-match":
            max_abs, tv = equivalence.distribution_distance(
                probability_distribution(grover), probability_distribution(alt)
            )
            out.append((t, max(max_abs, tv), (0, 0)))
        else:
            if t > 0:
                g_oracle = engine.scalar_recurrence_oracle(engine.WalkKind.GROVER, g_oracle, 1)
                a_oracle = engine.scalar_recurrence_oracle(engine.WalkKind.ALTERNATE, a_oracle, 1)
            worst = max(
                float(np.max(np.abs(grover.amplitudes - g_oracle.amplitudes))),
                float(np.max(np.abs(alt.amplitudes - a_oracle.amplitudes))),
            )
            out.append((t, worst, (0, 0)))
    return out


def cmd_verify(check: str, steps: int, tolerance: Optional[float] = None) -> int:
    if check not in CHECKS:
        raise ConfigError(f"unknown check {check!r}")
    tol = DEFAULT_TOLERANCE.get(check, 1e-12) if tolerance is None else tolerance
    if not tol > 0:
        raise ConfigError(f"tolerance must be positive, got {tol}")
    residuals = verification_residuals(check, steps)
    t, worst, site = max(residuals, key=lambda r: r[1])
    ok = all(r < tol for _, r, _ in residuals)
    where = f" site={site}" if check in ("alpha-identities", "beta-mapping") else ""
    print(
        f"{check}: steps={steps} worst_residual={worst!r} at t={t}{where} "
        f"tolerance={tol!r} {'PASS' if ok else 'FAIL'}"
    )
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwalk2d",
        description="Two-dimensional discrete-time quantum walks: Grover vs alternate qubit-coin walk.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def walk_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--walk", choices=sorted(DEFAULT_PRESET), required=True)
        p.add_argument("--steps", type=int, required=True)
        p.add_argument(
            "--coin-init",
            default=None,
            help="preset (grover-nonlocalized, alt-symmetric) or re:im pairs, e.g. 1:0,0:0,0:0,0:0",
        )
        p.add_argument("--output", default=None, help="output file (default: standard output)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p_run = sub.add_parser("run", help="spatial probability distribution at the final step")
    walk_args(p_run)
    p_run.add_argument("--dump-amplitudes", action="store_true", help="write raw amplitudes too")

    p_ent = sub.add_parser("entangle", help="entanglement time series t = 0..steps")
    walk_args(p_ent)
    p_ent.add_argument("--measure", choices=sorted(MEASURES), required=True)
    p_ent.add_argument("--jobs", type=int, default=1)

    p_ver = sub.add_parser("verify", help="check the Grover/alternate equivalence at every step")
    p_ver.add_argument("--check", choices=CHECKS, required=True)
    p_ver.add_argument("--steps", type=int, required=True)
    p_ver.add_argument("--tolerance", type=float, default=None)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    coin = DEFAULT_PRESET[args.walk] if args.coin_init is None else parse_coin_init(args.coin_init)
    return RunConfig(args.walk, args.steps, coin, args.output, args.format)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return cmd_run(_config(args), args.dump_amplitudes)
        if args.command == "entangle":
            return cmd_entangle(_config(args), args.measure, args.jobs)
        return cmd_verify(args.check, args.steps, args.tolerance)
    except ConfigError as exc:
        print(f"qwalk2d: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"qwalk2d: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
