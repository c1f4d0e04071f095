"""Parameter sweeps, numerical derivatives, critical points and MIN thresholds."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .model import PARAM_NAMES, ModelParams
from .transfer import X_PATTERN, thermal_elements

OBSERVABLES = ("N1", "N2", "dN1_dDelta", "rho_element")

# operational "zero" for MIN at finite temperature
DEFAULT_EPSILON = 1e-4


class NoCriticalPoint(ValueError):
    """Raised when a derivative series has no peak to speak of."""


@dataclass(frozen=True)
class Axis:
    name: str
    lo: float
    hi: float
    steps: int

    def __post_init__(self):
        if self.name not in PARAM_NAMES:
            raise ValueError(f"unknown axis {self.name!r}; choose from {PARAM_NAMES}")
        if self.steps < 2:
            raise ValueError(f"axis {self.name}: steps must be >= 2, got {self.steps}")
        if not self.lo < self.hi:
            raise ValueError(f"axis {self.name}: need min < max, got {self.lo} >= {self.hi}")

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


@dataclass(frozen=True)
class SweepSpec:
    """One or two varying axes over a fixed parameter record.

    ``element`` selects the density-matrix entry for ``observable="rho_element"``;
    diagonal entries are reported as real numbers, the coherence as a modulus.
    """

    varying: tuple[Axis, ...]
    fixed: ModelParams = field(default_factory=ModelParams)
    observable: str = "N1"
    element: tuple[int, int] = (2, 3)

    def __post_init__(self):
        if isinstance(self.varying, Axis):
            object.__setattr__(self, "varying", (self.varying,))
        if not 1 <= len(self.varying) <= 2:
            raise ValueError("a sweep varies one or two axes")
        names = [a.name for a in self.varying]
        if len(set(names)) != len(names):
            raise ValueError(f"repeated axis in {names}")
        if self.observable not in OBSERVABLES:
            raise ValueError(f"unknown observable {self.observable!r}; choose from {OBSERVABLES}")
        if self.observable == "dN1_dDelta" and "delta" not in names:
            raise ValueError("dN1_dDelta needs delta among the varying axes")
        if tuple(self.element) not in X_PATTERN:
            raise ValueError(f"element {self.element} lies outside the X pattern")


@dataclass
class SweepResult:
    """Grid coordinates and observable values, ``values.shape == (len(ax) for ax in axes)``.

    Flattening is row-major: the last axis varies fastest.
    """

    axes: dict
    values: np.ndarray
    observable: str
    meta: dict = field(default_factory=dict)

    @property
    def ndim(self) -> int:
        return len(self.axes)

    def rows(self) -> tuple[list[str], np.ndarray]:
        """Long-format table: one column per axis, then the observable."""
        names = list(self.axes)
        grids = np.meshgrid(*self.axes.values(), indexing="ij")
        table = np.column_stack([g.ravel() for g in grids] + [self.values.ravel()])
        return names + [self.observable], table


def _grid_params(fixed: ModelParams, axes: dict) -> dict:
    grids = np.meshgrid(*axes.values(), indexing="ij")
    values = fixed.as_dict()
    for name, grid in zip(axes, grids):
        values[name] = grid
    return values


def evaluate(fixed: ModelParams, observable: str = "N1", element=(2, 3), **overrides) -> np.ndarray:
    """Pointwise observable with some parameters replaced by broadcastable arrays."""
    values = fixed.as_dict()
    for name, v in overrides.items():
        if name not in PARAM_NAMES:
            raise ValueError(f"unknown parameter {name!r}")
        values[name] = v
    els = thermal_elements(*(values[n] for n in PARAM_NAMES))
    if observable == "N1":
        return 2.0 * np.abs(els[2, 3])
    if observable == "N2":
        return 2.0 * np.abs(els[2, 3]) ** 2
    if observable == "rho_element":
        i, j = element
        return els[i, j].real if i == j else np.abs(els[i, j])
    raise ValueError(f"observable {observable!r} is not pointwise")


def sweep(spec: SweepSpec) -> SweepResult:
    axes = {a.name: a.values for a in spec.varying}
    grid = _grid_params(spec.fixed, axes)
    meta = {
        "params": spec.fixed.as_dict(),
        "varying": {a.name: [a.lo, a.hi, a.steps] for a in spec.varying},
        "observable": spec.observable,
        "version": __version__,
    }
    if spec.observable == "dN1_dDelta":
        n1 = evaluate(spec.fixed, "N1", **{k: grid[k] for k in axes})
        k = list(axes).index("delta")
        values = np.gradient(n1, axes["delta"][1] - axes["delta"][0], axis=k)
    else:
        values = evaluate(spec.fixed, spec.observable, spec.element, **{k: grid[k] for k in axes})
        if spec.observable == "rho_element":
            meta["element"] = list(spec.element)
    return SweepResult(axes=axes, values=np.asarray(values, dtype=float),
                       observable=spec.observable, meta=meta)


def derivative(result: SweepResult) -> SweepResult:
    """Central differences inside, one-sided differences at the two ends."""
    if result.ndim != 1:
        raise ValueError("derivative needs a one-dimensional sweep")
    (name, x), = result.axes.items()
    step = np.diff(x)
    if not np.allclose(step, step[0], rtol=1e-9, atol=0.0):
        raise ValueError("derivative needs a uniform grid")
    d = np.gradient(result.values, step[0])
    meta = dict(result.meta, derivative_of=result.observable)
    return SweepResult(axes=dict(result.axes), values=d,
                       observable=f"d{result.observable}_d{name}", meta=meta)


@dataclass(frozen=True)
class CriticalPoint:
    location: float
    peak_value: float


def critical_point(result: SweepResult, floor: float = 1e-9) -> CriticalPoint:
    """Peak of |derivative|, refined by a parabola through the three top samples."""
    if result.ndim != 1:
        raise ValueError("critical_point needs a one-dimensional series")
    (_, x), = result.axes.items()
    y = np.abs(result.values)
    k = int(np.argmax(y))
    if y[k] < floor:
        raise NoCriticalPoint(f"series is flat (max |value| = {y[k]:.3g})")
    if k == 0 or k == len(y) - 1:
        return CriticalPoint(float(x[k]), float(result.values[k]))
    y0, y1, y2 = y[k - 1], y[k], y[k + 1]
    curv = y0 - 2.0 * y1 + y2
    if curv >= 0:
        return CriticalPoint(float(x[k]), float(result.values[k]))
    h = x[k + 1] - x[k]
    shift = 0.5 * (y0 - y2) / curv
    peak = y1 - 0.25 * (y0 - y2) * shift
    return CriticalPoint(float(x[k] + shift * h), float(np.sign(result.values[k]) * peak))


@dataclass
class BoundaryCurve:
    """Points where N1 crosses ``epsilon`` along scan lines of the second axis.

    ``points[:, 0]`` holds the scan-line coordinate, ``points[:, 1]`` the
    crossing; ``brackets`` keeps the final bisection interval of each point.
    """

    axes: tuple[str, str]
    points: np.ndarray
    brackets: np.ndarray
    epsilon: float
    fixed: ModelParams
    meta: dict = field(default_factory=dict)

    def verify(self) -> bool:
        """Re-evaluate N1 at every bracket end and confirm the sign change."""
        if len(self.points) == 0:
            return True
        a1, a2 = self.axes
        lo = evaluate(self.fixed, "N1", **{a1: self.points[:, 0], a2: self.brackets[:, 0]})
        hi = evaluate(self.fixed, "N1", **{a1: self.points[:, 0], a2: self.brackets[:, 1]})
        return bool(np.all((lo - self.epsilon) * (hi - self.epsilon) <= 0))


def threshold_boundary(scan: Axis, line: Axis, fixed: ModelParams = ModelParams(),
                       epsilon: float = DEFAULT_EPSILON, xtol: float = 1e-6) -> BoundaryCurve:
    """Trace the N1 = epsilon contour in the (scan, line) plane.

    Every value of ``scan`` defines a line along ``line``; the line is sampled
    on ``line.steps`` points, each sign change of N1 - epsilon is bisected down
    to ``xtol``.  Lines without a sign change contribute nothing and are listed
    in ``meta["no_crossing"]``.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be > 0")
    if scan.name == line.name:
        raise ValueError("the two axes must differ")
    s_vals, l_vals = scan.values, line.values
    S, L = np.meshgrid(s_vals, l_vals, indexing="ij")
    g = evaluate(fixed, "N1", **{scan.name: S, line.name: L}) - epsilon
    flips = np.signbit(g[:, :-1]) != np.signbit(g[:, 1:])
    rows, cols = np.nonzero(flips)
    lo, hi = l_vals[cols].copy(), l_vals[cols + 1].copy()
    s = s_vals[rows]
    g_lo = g[rows, cols]
    # all brackets are bisected together
    while len(lo) and np.max(hi - lo) > xtol:
        mid = 0.5 * (lo + hi)
        g_mid = evaluate(fixed, "N1", **{scan.name: s, line.name: mid}) - epsilon
        same = np.signbit(g_mid) == np.signbit(g_lo)
        lo = np.where(same, mid, lo)
        g_lo = np.where(same, g_mid, g_lo)
        hi = np.where(same, hi, mid)
    points = np.column_stack([s, 0.5 * (lo + hi)]) if len(lo) else np.empty((0, 2))
    brackets = np.column_stack([lo, hi]) if len(lo) else np.empty((0, 2))
    no_crossing = [float(v) for v in s_vals[~flips.any(axis=1)]]
    meta = {
        "params": fixed.as_dict(),
        "scan": [scan.name, scan.lo, scan.hi, scan.steps],
        "line": [line.name, line.lo, line.hi, line.steps],
        "epsilon": epsilon,
        "no_crossing": no_crossing,
        "version": __version__,
    }
    return BoundaryCurve((scan.name, line.name), points, brackets, epsilon, fixed, meta)


def nonzero_mask(fixed: ModelParams, a1: Axis, a2: Axis,
                 epsilon: float = DEFAULT_EPSILON) -> np.ndarray:
    """Boolean grid of N1 >= epsilon over the (a1, a2) plane."""
    res = sweep(SweepSpec((a1, a2), fixed, "N1"))
    return res.values >= epsilon
