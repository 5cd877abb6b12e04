"""Field state on a periodic grid, external potentials, snapshot files."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .. import algebra as alg
from ..complexified import check_parity, complex_to_constituents, constituents_to_complex
from ..errors import DomainError
from .operators import d1

SNAPSHOT_FORMAT = "stadirac-snapshot"
SNAPSHOT_VERSION = 1
SCHEME = {"space": "central-4", "time": "rk4"}


@dataclass(frozen=True)
class Potential:
    """Real external potential ``A = A_mu g^mu`` (lower components).

    ``kind`` is one of ``zero``, ``constant``, ``plane-wave`` or ``tabulated``.
    A plane wave is ``amplitude_mu * cos(k z - w t + phase)``.  The sign
    fields record reflections applied after construction:

        A'_mu(t, x) = component_signs[mu] * A_mu(time_sign * t, space_sign * x)
    """

    kind: str = "zero"
    amplitude: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)
    wavenumber: float = 0.0
    frequency: float = 0.0
    phase: float = 0.0
    table: np.ndarray | None = field(default=None, compare=False)
    time_sign: float = 1.0
    space_sign: float = 1.0
    component_signs: tuple[float, float, float, float] = (1.0, 1.0, 1.0, 1.0)

    def __post_init__(self):
        if self.kind not in ("zero", "constant", "plane-wave", "tabulated"):
            raise DomainError(f"unknown potential kind {self.kind!r}")
        if self.kind == "tabulated":
            if self.table is None:
                raise DomainError("tabulated potential needs a table")
            tab = np.asarray(self.table, dtype=float)
            if tab.shape[-1] != 4 or not np.all(np.isfinite(tab)):
                raise DomainError("potential table must be real with 4 components per point")
            object.__setattr__(self, "table", tab)
        object.__setattr__(self, "amplitude", tuple(float(a) for a in self.amplitude))
        object.__setattr__(self, "component_signs", tuple(float(s) for s in self.component_signs))

    @classmethod
    def zero(cls) -> "Potential":
        return cls()

    @classmethod
    def constant(cls, A0: float = 0.0, A=(0.0, 0.0, 0.0)) -> "Potential":
        return cls("constant", (A0, *A))

    @classmethod
    def plane_wave(cls, amplitude, wavenumber: float, frequency: float, phase: float = 0.0) -> "Potential":
        return cls("plane-wave", tuple(amplitude), wavenumber, frequency, phase)

    @classmethod
    def tabulated(cls, table: np.ndarray) -> "Potential":
        return cls("tabulated", table=np.asarray(table, dtype=float))

    @property
    def is_zero(self) -> bool:
        return self.kind == "zero" or (
            self.kind in ("constant", "plane-wave") and not any(self.amplitude)
        )

    def reflected(self) -> "Potential":
        """Parity image: ``(A_0, -A_i)`` evaluated at ``-x``."""
        signs = np.array(self.component_signs) * np.array([1.0, -1.0, -1.0, -1.0])
        return replace(self, space_sign=-self.space_sign, component_signs=tuple(signs))

    def time_reversed(self) -> "Potential":
        """``(A_0, -A_i)`` evaluated at ``-t``: sources flip with time."""
        signs = np.array(self.component_signs) * np.array([1.0, -1.0, -1.0, -1.0])
        return replace(self, time_sign=-self.time_sign, component_signs=tuple(signs))

    def spacetime_reversed(self) -> "Potential":
        return replace(self, time_sign=-self.time_sign, space_sign=-self.space_sign)

    def values(self, t: float, state_like: "FieldState") -> np.ndarray:
        """``A_mu`` on the grid, shape ``(*grid, 4)``."""
        grid = state_like.grid_shape
        signs = np.array(self.component_signs)
        if self.kind == "zero":
            return np.zeros(grid + (4,))
        if self.kind == "constant":
            return np.broadcast_to(np.array(self.amplitude) * signs, grid + (4,)).copy()
        if self.kind == "plane-wave":
            z = self.space_sign * state_like.coordinates()[2]
            arg = self.wavenumber * z - self.frequency * self.time_sign * t + self.phase
            return np.cos(arg)[..., None] * (np.array(self.amplitude) * signs)
        tab = self.table
        if tab.shape[:-1] != grid:
            raise DomainError(f"potential table shape {tab.shape[:-1]} does not match grid {grid}")
        if self.space_sign < 0:
            tab = reflect_grid(tab, len(grid))
        return tab * signs

    def gradient(self, t: float, state_like: "FieldState") -> np.ndarray:
        """``d_nu A_mu`` with shape ``(*grid, 4 [nu], 4 [mu])``."""
        grid = state_like.grid_shape
        out = np.zeros(grid + (4, 4))
        if self.kind in ("zero", "constant"):
            return out
        signs = np.array(self.component_signs)
        if self.kind == "plane-wave":
            z = self.space_sign * state_like.coordinates()[2]
            arg = self.wavenumber * z - self.frequency * self.time_sign * t + self.phase
            s = np.sin(arg)[..., None] * (np.array(self.amplitude) * signs)
            out[..., 0, :] = self.frequency * self.time_sign * s
            out[..., 3, :] = -self.wavenumber * self.space_sign * s
            return out
        vals = self.values(t, state_like)
        for axis, mu in state_like.spatial_axes():
            out[..., mu, :] = d1(vals, state_like.dx, axis)
        return out

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "amplitude": list(self.amplitude),
            "wavenumber": self.wavenumber,
            "frequency": self.frequency,
            "phase": self.phase,
            "time_sign": self.time_sign,
            "space_sign": self.space_sign,
            "component_signs": list(self.component_signs),
        }
        if self.table is not None:
            d["table"] = self.table.tolist()
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Potential":
        d = dict(d)
        if "table" in d:
            d["table"] = np.asarray(d["table"], dtype=float)
        d["amplitude"] = tuple(d.get("amplitude", (0.0,) * 4))
        d["component_signs"] = tuple(d.get("component_signs", (1.0,) * 4))
        return cls(**d)


def reflect_grid(a: np.ndarray, ndim: int) -> np.ndarray:
    """Index map ``k -> -k mod N`` on the first ``ndim`` axes."""
    for axis in range(ndim):
        a = np.roll(np.flip(a, axis=axis), 1, axis=axis)
    return a


@dataclass
class FieldState:
    """Constituent coefficients ``psi[..., c, m]`` on a periodic grid.

    ``c`` runs over ``(psi_e, psi_o, psi_e', psi_o')`` and ``m`` over blades.
    A 1D grid varies along z; a 3D grid is indexed ``(x, y, z)``.  Grid point
    ``k`` sits at ``k * dx``.  ``dt_psi`` optionally holds the time
    derivative, which the residual evaluators need.
    """

    psi: np.ndarray
    dx: float
    t: float = 0.0
    omega0: float = 0.0
    charge: float = 0.0
    potential: Potential = field(default_factory=Potential)
    dt_psi: np.ndarray | None = None
    frame: np.ndarray = field(default_factory=lambda: alg.basis(alg.SCALAR))

    def __post_init__(self):
        self.psi = np.asarray(self.psi, dtype=float)
        if self.psi.ndim not in (3, 5) or self.psi.shape[-2:] != (4, 16):
            raise DomainError(f"psi must have shape (*grid, 4, 16) with 1 or 3 grid axes, got {self.psi.shape}")
        for n in self.grid_shape:
            if n < 8 or n % 2:
                raise DomainError(f"grid sizes must be even and >= 8, got {self.grid_shape}")
        if not self.dx > 0:
            raise DomainError("dx must be positive")
        check_parity(self.psi)
        if self.dt_psi is not None:
            self.dt_psi = np.asarray(self.dt_psi, dtype=float)
            if self.dt_psi.shape != self.psi.shape:
                raise DomainError("dt_psi must match psi")

    @classmethod
    def from_complex(cls, re: np.ndarray, im: np.ndarray, dx: float, **kw) -> "FieldState":
        dt = kw.pop("dt_complex", None)
        if dt is not None:
            kw["dt_psi"] = complex_to_constituents(*dt)
        return cls(complex_to_constituents(re, im), dx, **kw)

    @property
    def grid_shape(self) -> tuple[int, ...]:
        return self.psi.shape[:-2]

    @property
    def ndim(self) -> int:
        return len(self.grid_shape)

    @property
    def cell_volume(self) -> float:
        return self.dx**self.ndim

    def spatial_axes(self) -> list[tuple[int, int]]:
        """``(array axis, spacetime index)`` pairs for the grid directions."""
        if self.ndim == 1:
            return [(0, 3)]
        return [(0, 1), (1, 2), (2, 3)]

    def coordinates(self) -> list[np.ndarray]:
        """``[x, y, z]`` arrays broadcastable to the grid (zeros for absent axes)."""
        n = self.grid_shape
        if self.ndim == 1:
            zero = np.zeros(n)
            return [zero, zero, np.arange(n[0]) * self.dx]
        axes = [np.arange(k) * self.dx for k in n]
        return list(np.meshgrid(*axes, indexing="ij"))

    def complex_parts(self) -> tuple[np.ndarray, np.ndarray]:
        return constituents_to_complex(self.psi)

    def replace(self, **kw) -> "FieldState":
        return replace(self, **kw)

    def potential_values(self, t: float | None = None) -> np.ndarray:
        return self.potential.values(self.t if t is None else t, self)


def header_for(state: FieldState, dt: float | None = None, body: str = "binary") -> dict:
    return {
        "format": SNAPSHOT_FORMAT,
        "version": SNAPSHOT_VERSION,
        "grid_shape": list(state.grid_shape),
        "dx": state.dx,
        "dt": dt,
        "t": state.t,
        "omega0": state.omega0,
        "charge": state.charge,
        "potential": state.potential.to_dict(),
        "frame": state.frame.tolist(),
        "scheme": dict(SCHEME),
        "body": body,
        "layout": "point-major (C order); per point 4 constituents x 16 blades; float64 little-endian",
        "constituents": ["psi_e", "psi_o", "psi_e'", "psi_o'"],
        "blades": list(alg.BLADE_NAMES),
    }


def write_snapshot(path, state: FieldState, *, dt: float | None = None, body: str = "binary") -> None:
    """One JSON header line, then the body (raw little-endian doubles or CSV rows)."""
    if body not in ("binary", "csv"):
        raise DomainError(f"unknown snapshot body {body!r}")
    header = json.dumps(header_for(state, dt, body), sort_keys=True).encode() + b"\n"
    flat = state.psi.reshape(-1, 64)
    with open(path, "wb") as fh:
        fh.write(header)
        if body == "binary":
            fh.write(flat.astype("<f8").tobytes())
        else:
            for row in flat:
                fh.write((",".join(repr(float(x)) for x in row) + "\n").encode())


def read_snapshot(path) -> tuple[FieldState, dict]:
    raw = Path(path).read_bytes()
    line, _, body = raw.partition(b"\n")
    header = json.loads(line)
    if header.get("format") != SNAPSHOT_FORMAT:
        raise DomainError(f"{path} is not a snapshot file")
    if header.get("version") != SNAPSHOT_VERSION:
        raise DomainError(f"unsupported snapshot version {header.get('version')}")
    grid = tuple(header["grid_shape"])
    if header["body"] == "binary":
        flat = np.frombuffer(body, dtype="<f8")
    else:
        flat = np.array(
            [[float(x) for x in row.split(",")] for row in body.decode().splitlines() if row]
        )
    psi = flat.reshape(grid + (4, 16)).astype(float)
    state = FieldState(
        psi,
        header["dx"],
        t=header["t"],
        omega0=header["omega0"],
        charge=header["charge"],
        potential=Potential.from_dict(header["potential"]),
        frame=np.asarray(header.get("frame", alg.basis(alg.SCALAR)), dtype=float),
    )
    return state, header
