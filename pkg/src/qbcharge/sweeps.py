"""Deterministic parameter grids over the charging model.

Every sweep returns a :class:`SweepGrid` whose rows follow row-major order
over the axes as declared. Evaluation is split into fixed-size chunks, so the
worker count changes who computes a chunk but never what it computes.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import minimize

from . import kernels
from .dynamics import amplitude_arrays
from .errors import AxisError
from .params import ModelParams, validate

CHUNK_ROWS = 8192
MAX_DENSE_LT_POINTS = 100_001
FEASIBILITY_TOL = 1e-12

KEY_COLUMNS = ("lt", "R", "zeta1", "theta", "phi")
CSV_COLUMNS = KEY_COLUMNS + kernels.OBSERVABLE_COLUMNS


@dataclass(frozen=True)
class AxisSpec:
    name: str
    min: float
    max: float
    points: int

    def __post_init__(self):
        if int(self.points) != self.points or self.points < 1:
            raise AxisError(f"axis {self.name!r}: points must be a positive integer, got {self.points!r}")
        if not (math.isfinite(self.min) and math.isfinite(self.max)):
            raise AxisError(f"axis {self.name!r}: bounds must be finite")
        if self.min > self.max:
            raise AxisError(f"axis {self.name!r}: min {self.min!r} > max {self.max!r}")
        if self.points == 1 and self.min != self.max:
            raise AxisError(f"axis {self.name!r}: a single point needs min == max")

    def values(self) -> np.ndarray:
        if self.points == 1:
            return np.array([float(self.min)])
        return np.linspace(self.min, self.max, int(self.points))

    def check_within(self, lo: float, hi: float):
        if self.min < lo or self.max > hi:
            raise AxisError(f"axis {self.name!r} must lie within [{lo}, {hi}]")


@dataclass(eq=False)
class SweepGrid:
    axes: tuple[AxisSpec, ...]
    columns: dict[str, np.ndarray]
    metadata: dict = field(default_factory=dict)

    @property
    def n_rows(self) -> int:
        return len(self.columns["lt"])

    def __len__(self):
        return self.n_rows

    def __getitem__(self, name: str) -> np.ndarray:
        return self.columns[name]

    def row(self, i: int) -> dict[str, float]:
        return {name: float(col[i]) for name, col in self.columns.items()}

    def argmax(self, name: str) -> int:
        """Index of the first row attaining the maximum of a column (NaNs skipped)."""
        return int(np.nanargmax(self.columns[name]))

    def to_csv(self, fp) -> None:
        fp.write(",".join(CSV_COLUMNS) + "\n")
        text = [[format_value(x) for x in self.columns[name].tolist()] for name in CSV_COLUMNS]
        fp.writelines(",".join(cells) + "\n" for cells in zip(*text))


def format_value(x: float) -> str:
    """12 significant digits; empty for undefined (NaN); no negative zero."""
    if x != x:
        return ""
    if x == 0.0:
        return "0"
    return format(x, ".12g")


def evaluate_rows(eta1, eta2, theta, lt, workers: int = 1) -> np.ndarray:
    """``kernels.row_observables`` over fixed chunks, optionally in threads."""
    n = len(eta1)
    bounds = [(s, min(s + CHUNK_ROWS, n)) for s in range(0, n, CHUNK_ROWS)]

    def run(bound):
        s, e = bound
        return kernels.row_observables(eta1[s:e], eta2[s:e], theta[s:e], lt[s:e])

    if n == 0:
        return np.empty((0, len(kernels.OBSERVABLE_COLUMNS)))
    if workers <= 1 or len(bounds) == 1:
        parts = [run(b) for b in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, bounds))
    return np.concatenate(parts, axis=0)


def _assemble(axes, keys, eta1, eta2, workers, metadata, blank=None):
    obs = evaluate_rows(eta1, eta2, keys["theta"], keys["lt"], workers)
    if blank is not None:
        obs[blank, 2:] = np.nan
    columns = {name: np.asarray(keys[name], dtype=np.float64) for name in KEY_COLUMNS}
    for j, name in enumerate(kernels.OBSERVABLE_COLUMNS):
        columns[name] = obs[:, j]
    return SweepGrid(axes=tuple(axes), columns=columns, metadata=metadata)


def _params_dict(p: ModelParams) -> dict:
    return {
        "lambda": p.lam,
        "R": p.coupling_ratio,
        "zeta1": p.zeta1,
        "zeta2": p.zeta2,
        "theta": p.theta,
        "phi": p.phi,
        "omega0": p.omega0,
    }


def densified_lt_axis(lt_axis: AxisSpec, r_max: float) -> AxisSpec:
    """Multiply the time resolution by max(1, R), capped at 100001 points."""
    factor = max(1.0, r_max)
    if factor <= 1.0 or lt_axis.points == 1:
        return lt_axis
    n = min(int(math.ceil((lt_axis.points - 1) * factor)) + 1, MAX_DENSE_LT_POINTS)
    return replace(lt_axis, points=max(n, lt_axis.points))


def sweep_dynamics(
    template: ModelParams,
    R_axis: AxisSpec,
    lt_axis: AxisSpec,
    *,
    densify: bool = True,
    workers: int = 1,
) -> SweepGrid:
    """Time evolution over a (R, lt) grid, R outer."""
    template = validate(template)
    R_axis.check_within(0.0, math.inf)
    lt_axis.check_within(0.0, math.inf)
    R_vals = R_axis.values()
    if densify:
        lt_axis = densified_lt_axis(lt_axis, float(R_vals.max()))
    lt_vals = lt_axis.values()
    e1_parts, e2_parts = [], []
    for R in R_vals:
        e1, e2 = amplitude_arrays(replace(template, coupling_ratio=float(R)), lt_vals)
        e1_parts.append(e1)
        e2_parts.append(e2)
    n = len(R_vals) * len(lt_vals)
    keys = {
        "lt": np.tile(lt_vals, len(R_vals)),
        "R": np.repeat(R_vals, len(lt_vals)),
        "zeta1": np.full(n, template.zeta1),
        "theta": np.full(n, template.theta),
        "phi": np.full(n, template.phi),
    }
    meta = {"sweep": "dynamics", "params": _params_dict(template), "densify": densify}
    return _assemble(
        (R_axis, lt_axis), keys, np.concatenate(e1_parts), np.concatenate(e2_parts), workers, meta
    )


def steady_amplitude_arrays(theta, phi, zeta1):
    """Long-time amplitudes (mu = 0) for arrays of theta and zeta1."""
    zeta1 = np.asarray(zeta1, dtype=np.float64)
    zeta2 = np.sqrt(np.maximum(1.0 - zeta1 * zeta1, 0.0))
    theta = np.asarray(theta, dtype=np.float64)
    rest = 0.5 * np.pi - theta
    upper = theta > 0.25 * np.pi
    # evaluate near pi/2 through the complement so the endpoint is exact
    e01 = np.where(upper, np.cos(rest), np.sin(theta)) * np.exp(1j * phi)
    e02 = np.where(upper, np.sin(rest), np.cos(theta))
    eta1 = zeta2 * zeta2 * e01 - zeta1 * zeta2 * e02
    eta2 = zeta1 * zeta1 * e02 - zeta1 * zeta2 * e01
    return eta1.astype(np.complex128), eta2.astype(np.complex128)


def sweep_steady(
    phi: float = 0.0,
    theta_axis: AxisSpec | None = None,
    zeta1_axis: AxisSpec | None = None,
    *,
    workers: int = 1,
) -> SweepGrid:
    """Steady-state observables over a (theta, zeta1) grid, theta outer.

    Any R > 0 relaxes to the same state, so the R column is left empty.
    """
    if theta_axis is None:
        theta_axis = AxisSpec("theta", 0.25 * math.pi, 0.5 * math.pi, 201)
    if zeta1_axis is None:
        zeta1_axis = AxisSpec("zeta1", 0.0, 1.0, 201)
    theta_axis.check_within(0.0, 0.5 * math.pi + 1e-12)
    zeta1_axis.check_within(0.0, 1.0)
    th = np.minimum(theta_axis.values(), 0.5 * math.pi)
    z1 = zeta1_axis.values()
    TH, Z1 = (g.ravel() for g in np.meshgrid(th, z1, indexing="ij"))
    eta1, eta2 = steady_amplitude_arrays(TH, phi, Z1)
    n = len(TH)
    keys = {
        "lt": np.full(n, np.inf),
        "R": np.full(n, np.nan),
        "zeta1": Z1,
        "theta": TH,
        "phi": np.full(n, float(phi)),
    }
    meta = {"sweep": "steady", "phi": float(phi)}
    return _assemble((theta_axis, zeta1_axis), keys, eta1, eta2, workers, meta)


def sweep_transfer_plane(
    a_axis: AxisSpec | None = None,
    b_axis: AxisSpec | None = None,
    *,
    workers: int = 1,
) -> SweepGrid:
    """Observables over populations a = |eta1|^2, b = |eta2|^2 (a outer).

    Amplitudes are real and nonnegative and the start is the separable
    theta = pi/2 state, so delta_e_a = a - 1 and delta_e_b = b. Points with
    a + b > 1 keep only these two coordinates; everything else is empty.
    """
    if a_axis is None:
        a_axis = AxisSpec("a", 0.0, 1.0, 201)
    if b_axis is None:
        b_axis = AxisSpec("b", 0.0, 1.0, 201)
    a_axis.check_within(0.0, 1.0)
    b_axis.check_within(0.0, 1.0)
    A, B = (g.ravel() for g in np.meshgrid(a_axis.values(), b_axis.values(), indexing="ij"))
    infeasible = A + B > 1.0 + FEASIBILITY_TOL
    eta1 = np.sqrt(np.where(infeasible, 0.0, A)).astype(np.complex128)
    eta2 = np.sqrt(np.where(infeasible, 0.0, B)).astype(np.complex128)
    n = len(A)
    keys = {
        "lt": np.full(n, np.nan),
        "R": np.full(n, np.nan),
        "zeta1": np.full(n, np.nan),
        "theta": np.full(n, 0.5 * math.pi),
        "phi": np.zeros(n),
    }
    meta = {"sweep": "plane", "infeasible": int(infeasible.sum())}
    grid = _assemble((a_axis, b_axis), keys, eta1, eta2, workers, meta, blank=infeasible)
    # exact grid coordinates rather than |sqrt(a)|^2
    grid.columns["delta_e_a"] = A - 1.0
    grid.columns["delta_e_b"] = B.copy()
    return grid


def point_grid(params: ModelParams, lt: float) -> SweepGrid:
    """A one-row grid holding the full report for a single (params, lt)."""
    params = validate(params)
    axis = AxisSpec("lt", lt, lt, 1)
    return sweep_dynamics(
        params, AxisSpec("R", params.coupling_ratio, params.coupling_ratio, 1), axis, densify=False
    )


def steady_peak(
    phi: float, theta_axis: AxisSpec, zeta1_axis: AxisSpec
) -> tuple[float, float, float]:
    """Maximum of the steady stored energy: grid search, then a bounded polish.

    Returns ``(theta, zeta1, delta_e_b)``. The polish stays inside the grid
    cells adjacent to the best sample.
    """
    grid = sweep_steady(phi, theta_axis, zeta1_axis)
    i = grid.argmax("delta_e_b")
    x0 = np.array([grid["theta"][i], grid["zeta1"][i]])
    bounds = []
    for axis, x in zip((theta_axis, zeta1_axis), x0):
        if axis.points == 1:
            bounds.append((x, x))
            continue
        h = (axis.max - axis.min) / (axis.points - 1)
        bounds.append((max(axis.min, x - h), min(axis.max, x + h)))

    def neg_energy(x):
        e1, e2 = steady_amplitude_arrays(np.array([x[0]]), phi, np.array([x[1]]))
        return -(float(np.abs(e2[0]) ** 2) - 0.5 * (1.0 + math.cos(2.0 * x[0])))

    res = minimize(neg_energy, x0, method="L-BFGS-B", bounds=bounds,
                   options={"ftol": 1e-15, "gtol": 1e-12})
    best = grid["delta_e_b"][i]
    if -res.fun >= best:
        return float(res.x[0]), float(res.x[1]), float(-res.fun)
    return float(x0[0]), float(x0[1]), float(best)
