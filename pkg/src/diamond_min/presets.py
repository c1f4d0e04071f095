"""Named figure presets; each one runs its sweeps and returns a data table.

The ``note`` carried in every table states what is plotted and at which
couplings, so an emitted CSV documents itself.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import __version__
from .analysis import Axis, SweepSpec, derivative, sweep, threshold_boundary
from .io import Table
from .model import ModelParams

DELTA_AXIS = Axis("delta", -1.0, 2.0, 601)       # grid step 0.005
FIG6_DS = (0.0, 0.5, 0.8, 1.0)


@dataclass(frozen=True)
class Preset:
    name: str
    note: str
    run: Callable[[int | None], Table]


def _curves(base: ModelParams, axis: Axis, labels: dict, observable: str,
            note: str) -> Table:
    """Stack 1D sweeps for every combination of the label parameters."""
    names = list(labels)
    blocks = []
    for combo in itertools.product(*labels.values()):
        params = base.with_(**dict(zip(names, combo)))
        res = sweep(SweepSpec((axis,), params, "N1"))
        if observable == "dN1_dDelta":
            res = derivative(res)
        label_cols = np.tile(np.asarray(combo, dtype=float), (axis.steps, 1))
        blocks.append(np.column_stack([label_cols, res.axes[axis.name], res.values]))
    return Table(
        columns=names + [axis.name, observable],
        rows=np.vstack(blocks),
        meta={"note": note, "params": base.as_dict(), "curves": labels,
              "axis": [axis.name, axis.lo, axis.hi, axis.steps], "version": __version__},
    )


def _steps(steps, default):
    return default if steps is None else steps


def _fig1(temps, observable):
    def run(steps=None):
        axis = Axis("delta", DELTA_AXIS.lo, DELTA_AXIS.hi, _steps(steps, DELTA_AXIS.steps))
        what = "N1" if observable == "N1" else "dN1/d(delta), unscaled"
        note = f"{what} versus delta at J=J1=h=1 for D in (0, 1, 2), T in {temps}"
        return _curves(ModelParams(J=1, J1=1, h=1), axis,
                       {"D": [0.0, 1.0, 2.0], "T": list(temps)}, observable, note)
    return run


def _fig3(steps=None):
    axis = Axis("T", 0.01, 3.0, _steps(steps, 300))
    return _curves(ModelParams(J=1, J1=1, h=1, D=0), axis,
                   {"delta": [0.5, 0.8, 1.0, 1.2, 1.5, 2.0]}, "N1",
                   "N1 versus temperature at J=J1=h=1, D=0 for several delta")


def _fig4(observable):
    def run(steps=None):
        axis = Axis("delta", DELTA_AXIS.lo, DELTA_AXIS.hi, _steps(steps, DELTA_AXIS.steps))
        what = "N1" if observable == "N1" else "dN1/d(delta), unscaled"
        return _curves(ModelParams(J=1, J1=1, h=2.5, D=0), axis,
                       {"T": [0.05, 0.1, 0.2, 0.3]}, observable,
                       f"{what} versus delta at J=J1=1, h=2.5, D=0 for several temperatures")
    return run


def _density(base: ModelParams, a1: Axis, a2: Axis, note: str) -> Table:
    res = sweep(SweepSpec((a1, a2), base, "N1"))
    columns, rows = res.rows()
    return Table(columns, rows, {"note": note, "params": base.as_dict(),
                                 "varying": res.meta["varying"], "version": __version__})


def _fig5(D):
    def run(steps=None):
        n = _steps(steps, 121)
        return _density(ModelParams(J=1, J1=1, h=1, D=D),
                        Axis("delta", -1.0, 3.0, n), Axis("T", 0.01, 2.0, n),
                        f"N1 density over (delta, T) at J=J1=1, h=1, D={D:g}")
    return run


def _fig_j1h(D):
    def run(steps=None):
        n = _steps(steps, 121)
        return _density(ModelParams(J=1, delta=1, T=0.5, D=D),
                        Axis("J1", -4.0, 4.0, n), Axis("h", 0.0, 6.0, n),
                        f"N1 density over (J1, h) at J=delta=1, T=0.5, D={D:g}")
    return run


def _boundaries(scan: Axis, base: ModelParams, note: str, steps=None) -> Table:
    line = Axis("T", 0.01, 2.0, _steps(steps, 400))
    blocks, no_cross = [], {}
    for D in FIG6_DS:
        curve = threshold_boundary(scan, line, base.with_(D=D))
        pts = curve.points
        blocks.append(np.column_stack([np.full(len(pts), D), pts]))
        no_cross[f"D={D:g}"] = curve.meta["no_crossing"]
    return Table(
        columns=["D", scan.name, "T_th"],
        rows=np.vstack(blocks),
        meta={"note": note, "params": base.as_dict(), "epsilon": curve.epsilon,
              "scan": [scan.name, scan.lo, scan.hi, scan.steps],
              "line": [line.name, line.lo, line.hi, line.steps],
              "no_crossing": no_cross, "version": __version__},
    )


def _fig6a(steps=None):
    return _boundaries(Axis("J1", -4.0, 4.0, 161), ModelParams(J=1, delta=1, h=1),
                       "threshold temperature of N1 versus J1 at J=delta=h=1, "
                       "D in (0, 0.5, 0.8, 1)", steps)


def _fig6b(steps=None):
    return _boundaries(Axis("h", 0.0, 6.0, 121), ModelParams(J=1, delta=1, J1=1),
                       "threshold temperature of N1 versus h at J=delta=J1=1, "
                       "D in (0, 0.5, 0.8, 1)", steps)


def _fig7(steps=None):
    axis = Axis("h", 0.0, 4.0, _steps(steps, 401))
    return _curves(ModelParams(J=1, J1=1, D=1, delta=1), axis,
                   {"T": [0.1, 0.2, 0.5, 1.0]}, "N1",
                   "N1 versus h at J=J1=D=delta=1 for several temperatures")


def _delta_h_boundary(steps=None):
    scan = Axis("h", 0.0, 4.0, 81)
    line = Axis("delta", -2.0, 6.0, _steps(steps, 400))
    base = ModelParams(J=1, J1=1, D=0, T=0.05)
    curve = threshold_boundary(scan, line, base)
    return Table(["h", "delta"], curve.points,
                 {"note": "N1 = epsilon contour in the (delta, h) plane at J=J1=1, D=0, "
                          "T=0.05, for comparison with the line delta - 3h + 3 = 0",
                  "params": base.as_dict(), "epsilon": curve.epsilon,
                  "no_crossing": curve.meta["no_crossing"], "version": __version__})


PRESETS = {p.name: p for p in [
    Preset("fig1a", "N1 vs delta, T in (0.15, 0.2)", _fig1((0.15, 0.2), "N1")),
    Preset("fig1b", "dN1/d(delta), T in (0.15, 0.2)", _fig1((0.15, 0.2), "dN1_dDelta")),
    Preset("fig1c", "N1 vs delta, T in (0.1, 0.25)", _fig1((0.1, 0.25), "N1")),
    Preset("fig1d", "dN1/d(delta), T in (0.1, 0.25)", _fig1((0.1, 0.25), "dN1_dDelta")),
    Preset("fig3", "N1 vs T for several delta", _fig3),
    Preset("fig4a", "N1 vs delta at h=2.5", _fig4("N1")),
    Preset("fig4b", "dN1/d(delta) at h=2.5", _fig4("dN1_dDelta")),
    Preset("fig5a", "N1 density over (delta, T), D=0", _fig5(0.0)),
    Preset("fig5b", "N1 density over (delta, T), D=1", _fig5(1.0)),
    Preset("fig6a", "threshold curves in the (J1, T) plane", _fig6a),
    Preset("fig6b", "threshold curves in the (h, T) plane", _fig6b),
    Preset("fig7", "N1 vs h for several T", _fig7),
    Preset("fig_j1h_a", "N1 density over (J1, h), D=0", _fig_j1h(0.0)),
    Preset("fig_j1h_b", "N1 density over (J1, h), D=1", _fig_j1h(1.0)),
    Preset("boundary_delta_h", "N1 threshold in the (delta, h) plane", _delta_h_boundary),
]}


def run_figure(name: str, steps: int | None = None) -> Table:
    try:
        preset = PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}") from None
    table = preset.run(steps)
    table.meta = {"preset": name, **table.meta}
    return table
