"""Command-line entry point: ``stadirac {verify,evolve,bilinears,dump-rep}``.

Exit codes: 0 success, 2 invalid input, 3 numerical failure, 4 internal
consistency failure.  Every error path prints one line to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import bilinears as bl
from . import verify as vf
from .complexified import complex_to_constituents
from .dynamics import (
    FieldState,
    Potential,
    charged_rest,
    em_plane_wave,
    evolve,
    fit_frequency,
    kg_residual,
    residual_charged,
    rest_oscillator,
    with_time_derivatives,
    write_snapshot,
)
from .dynamics.evolve import MAX_CFL, MAX_SLICES
from .errors import ConsistencyError, DomainError, NumericalError
from .representation import dump_rep_json

INITS = ("rest-oscillator", "em-plane-wave", "charged-rest", "random-seeded")
EXIT_CODES = {DomainError: 2, NumericalError: 3, ConsistencyError: 4}


def parse_potential(text: str | None) -> Potential | None:
    """``zero``, ``constant:A0[,A1,A2,A3]`` or ``plane-wave:a0,a1,a2,a3,k,w``."""
    if text is None:
        return None
    kind, _, args = text.partition(":")
    try:
        values = [float(x) for x in args.split(",")] if args else []
    except ValueError as exc:
        raise DomainError(f"bad potential values in {text!r}") from exc
    if not all(math.isfinite(x) for x in values):
        raise DomainError("potential values must be finite")
    if kind == "zero" and not values:
        return Potential.zero()
    if kind == "constant" and len(values) in (1, 4):
        values += [0.0] * (4 - len(values))
        return Potential.constant(values[0], values[1:])
    if kind == "plane-wave" and len(values) == 6:
        return Potential.plane_wave(values[:4], values[4], values[5])
    raise DomainError(f"cannot parse potential {text!r}")


@dataclass
class RunConfig:
    subcommand: str
    grid_n: int = 256
    dx: float | None = None
    dt: float | None = None
    steps: int = 0
    every: int = 1
    omega0: float | None = None
    charge: float | None = None
    potential: str | None = None
    init: str = "rest-oscillator"
    seed: int = 0
    serial: bool = True
    out: str | None = None
    json: bool = False
    construction: str = "geometric"
    snapshot_format: str = "binary"
    snapshot_every: int = 0
    inject_fault: tuple[int, int] | None = field(default=None, repr=False)

    def resolved(self) -> "RunConfig":
        """Fill preset-dependent defaults and validate before any allocation."""
        c = RunConfig(**asdict(self))
        if c.grid_n < 8 or c.grid_n % 2:
            raise DomainError(f"--grid-n must be even and >= 8, got {c.grid_n}")
        if c.dx is None:
            c.dx = 2.0 * math.pi / c.grid_n
        if not (math.isfinite(c.dx) and c.dx > 0):
            raise DomainError("--dx must be positive")
        if c.dt is None:
            c.dt = 0.4 * c.dx
        if not (math.isfinite(c.dt) and c.dt > 0):
            raise DomainError("--dt must be positive")
        if c.dt / c.dx > MAX_CFL:
            raise DomainError(f"CFL number {c.dt / c.dx:.4g} exceeds {MAX_CFL}")
        if c.steps < 0 or c.every < 1 or c.snapshot_every < 0:
            raise DomainError("--steps must be >= 0, --every >= 1, --snapshot-every >= 0")
        if c.steps // c.every + 1 > MAX_SLICES:
            raise DomainError(f"more than {MAX_SLICES} stored slices; raise --every")
        if c.init not in INITS:
            raise DomainError(f"unknown --init {c.init!r}")
        if c.seed < 0:
            raise DomainError("--seed must be non-negative")
        defaults = {
            "rest-oscillator": (1.0, 0.0, "zero"),
            "em-plane-wave": (0.0, 0.0, "zero"),
            "charged-rest": (1.0, 1.0, "constant:0.25"),
            "random-seeded": (1.0, 0.0, "zero"),
        }[c.init]
        if c.omega0 is None:
            c.omega0 = defaults[0]
        if c.charge is None:
            c.charge = defaults[1]
        if c.potential is None:
            c.potential = defaults[2]
        for name in ("omega0", "charge"):
            if not math.isfinite(getattr(c, name)):
                raise DomainError(f"--{name} must be finite")
        parse_potential(c.potential)
        if c.init == "charged-rest" and parse_potential(c.potential).kind not in ("zero", "constant"):
            raise DomainError("charged-rest needs a constant potential")
        if c.init == "em-plane-wave" and (c.omega0 != 0.0 or c.charge != 0.0):
            raise DomainError("em-plane-wave is a solution only for omega0 = 0 and charge = 0")
        return c


def initial_state(c: RunConfig) -> FieldState:
    grid = (c.grid_n,)
    potential = parse_potential(c.potential)
    if c.init == "rest-oscillator":
        state = rest_oscillator(grid, c.dx, c.omega0)
    elif c.init == "em-plane-wave":
        state = em_plane_wave(grid, c.dx, k=2.0 * math.pi / (c.grid_n * c.dx))
    elif c.init == "charged-rest":
        A0 = potential.amplitude[0] if potential.kind == "constant" else 0.0
        state = charged_rest(grid, c.dx, c.omega0, c.charge, A0)
        state = state.replace(potential=potential)
    else:
        state = random_smooth_state(grid, c.dx, c.seed)
    return state.replace(omega0=c.omega0, charge=c.charge, potential=potential, dt_psi=None)


def random_smooth_state(grid: tuple[int, ...], dx: float, seed: int, modes: int = 3) -> FieldState:
    """A few random Fourier modes with random multivector amplitudes."""
    rng = np.random.default_rng(seed)
    z = np.arange(grid[0]) * dx
    L = grid[0] * dx
    re = np.zeros(grid + (16,))
    im = np.zeros(grid + (16,))
    for m in range(modes + 1):
        k = 2.0 * math.pi * m / L
        for part in (re, im):
            part += np.cos(k * z)[:, None] * rng.normal(size=16) / (1 + m)
            part += np.sin(k * z)[:, None] * rng.normal(size=16) / (1 + m)
    return FieldState(complex_to_constituents(re, im), dx)


# -- subcommands ---------------------------------------------------------------

def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_verify(c: RunConfig) -> int:
    results = vf.run_checks(seed=c.seed, fault=c.inject_fault)
    rep = vf.report(results)
    text = json.dumps(rep, indent=1, sort_keys=True) + "\n"
    if c.out is not None:
        Path(c.out).write_text(text)
    if c.json:
        sys.stdout.write(text)
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'} {r.name} error={r.error:.3e} tol={r.tolerance:.1e}")
    failing = [r.name for r in results if not r.passed]
    if failing:
        print(f"error: consistency: check failed: {failing[0]}", file=sys.stderr)
        return 4
    return 0


def _trajectory(c: RunConfig) -> list[FieldState]:
    state = initial_state(c)
    return evolve(state, c.dt, c.steps, every=c.every)


def _grid_mean(x: np.ndarray) -> np.ndarray:
    return x.reshape(-1, x.shape[-1]).mean(axis=0)


def _fmt(x: float) -> str:
    return repr(float(x))


def cmd_evolve(c: RunConfig) -> int:
    traj = _trajectory(c)
    diag = with_time_derivatives(traj) if len(traj) >= 3 else traj
    rows = []
    for n, s in enumerate(diag):
        residual = residual_charged(s).total_max if s.dt_psi is not None else float("nan")
        j = _grid_mean(bl.current_array(s.psi, s.frame))
        Sg = _grid_mean(bl.spin_components(bl.spin_geometric_array(s.psi, s.frame)))
        Sn = _grid_mean(bl.spin_components(bl.spin_nongeometric_array(s.psi, s.frame)))
        rows.append([n * c.every, s.t, residual, *j, *Sg, *Sn, s.psi[(0,) * s.ndim + (0, 0)]])
    header = ["step", "t", "residual_max", "j0", "j1", "j2", "j3",
              "S012", "S023", "S031", "S012_j", "S023_j", "S031_j", "f_origin"]

    summary: dict = {"schema": 1, "init": c.init, "steps": c.steps, "dt": c.dt, "dx": c.dx,
                     "slices": len(traj), "final_t": traj[-1].t}
    finite = [r[2] for r in rows if math.isfinite(r[2])]
    summary["final_residual"] = finite[-1] if finite else None
    summary["max_residual"] = max(finite) if finite else None
    if len(traj) >= 3:
        summary["current_conservation"] = bl.current_conservation_residual(traj)
        summary["kg_residual"] = kg_residual(traj)
    ts = np.array([r[1] for r in rows])
    f = np.array([r[-1] for r in rows])
    if c.init == "rest-oscillator":
        summary["max_abs_f_minus_cos"] = float(np.max(np.abs(f - np.cos(c.omega0 * ts))))
    if c.init == "charged-rest":
        try:
            summary["fitted_frequency"] = fit_frequency(ts, f)
        except DomainError:
            summary["fitted_frequency"] = None
    if c.init == "em-plane-wave":
        exact = em_plane_wave((c.grid_n,), c.dx, k=2.0 * math.pi / (c.grid_n * c.dx), t=traj[-1].t)
        summary["final_max_error"] = float(np.max(np.abs(traj[-1].psi - exact.psi)))

    if c.out is not None:
        out = Path(c.out)
        out.mkdir(parents=True, exist_ok=True)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([r[0]] + [_fmt(x) for x in r[1:]])
        (out / "evolve.csv").write_text(buf.getvalue())
        ext = "bin" if c.snapshot_format == "binary" else "csv"
        for n, s in enumerate(traj):
            step = n * c.every
            last = n == len(traj) - 1
            if last or (c.snapshot_every and step % c.snapshot_every == 0):
                write_snapshot(out / f"snapshot_{step:06d}.{ext}", s, dt=c.dt, body=c.snapshot_format)
        (out / "summary.json").write_text(json.dumps(summary, indent=1, sort_keys=True) + "\n")
    if c.json:
        sys.stdout.write(json.dumps(summary, indent=1, sort_keys=True) + "\n")
    else:
        print(f"final max residual: {summary['final_residual']}")
    return 0


def cmd_bilinears(c: RunConfig) -> int:
    traj = _trajectory(c)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "x", "j0", "j1", "j2", "j3", "S012", "S023", "S031"])
    spin = bl.spin_geometric_array if c.construction == "geometric" else bl.spin_nongeometric_array
    for s in traj:
        j = bl.current_array(s.psi, s.frame)
        S = bl.spin_components(spin(s.psi, s.frame))
        z = s.coordinates()[2]
        for k in range(s.grid_shape[0]):
            w.writerow([_fmt(s.t), _fmt(z[k]), *(_fmt(x) for x in j[k]), *(_fmt(x) for x in S[k])])
    _emit(buf.getvalue(), c.out)
    return 0


def cmd_dump_rep(c: RunConfig) -> int:
    _emit(dump_rep_json() + "\n", c.out)
    return 0


COMMANDS = {"verify": cmd_verify, "evolve": cmd_evolve, "bilinears": cmd_bilinears, "dump-rep": cmd_dump_rep}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(2, f"error: usage: {message}\n")


def _fault(text: str) -> tuple[int, int]:
    a, b = (int(x) for x in text.split(","))
    if not (0 <= a < 16 and 0 <= b < 16):
        raise argparse.ArgumentTypeError("fault masks must be in 0..15")
    return a, b


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--grid-n", type=int, default=256)
    common.add_argument("--dx", type=float)
    common.add_argument("--dt", type=float)
    common.add_argument("--steps", type=int, default=0)
    common.add_argument("--every", type=int, default=1, help="keep every n-th step in memory")
    common.add_argument("--omega0", type=float)
    common.add_argument("--charge", type=float)
    common.add_argument("--potential", help="zero | constant:A0[,A1,A2,A3] | plane-wave:a0,a1,a2,a3,k,w")
    common.add_argument("--init", choices=INITS, default="rest-oscillator")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--serial", action="store_true", help="serial execution (always the case)")
    common.add_argument("--out")
    common.add_argument("--json", action="store_true")

    parser = _Parser(prog="stadirac", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    p = sub.add_parser("verify", parents=[common])
    p.add_argument("--inject-fault", type=_fault, help=argparse.SUPPRESS)
    p = sub.add_parser("evolve", parents=[common])
    p.add_argument("--snapshot-every", type=int, default=0)
    p.add_argument("--snapshot-format", choices=("binary", "csv"), default="binary")
    p = sub.add_parser("bilinears", parents=[common])
    p.add_argument("--construction", choices=("geometric", "nongeometric"), default="geometric")
    sub.add_parser("dump-rep", parents=[common])
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    known = RunConfig.__dataclass_fields__
    return RunConfig(**{k: v for k, v in vars(args).items() if k in known})


def exit_code(exc: Exception) -> int:
    for cls, code in EXIT_CODES.items():
        if isinstance(exc, cls):
            return code
    raise exc


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args).resolved()
        return COMMANDS[config.subcommand](config)
    except (DomainError, NumericalError, ConsistencyError) as exc:
        code = exit_code(exc)
        kind = {2: "validation", 3: "numerical", 4: "consistency"}[code]
        print(f"error: {kind}: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
