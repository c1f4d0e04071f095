"""``diamond-min`` command-line front end.

Settings are resolved as flags > config file > built-in defaults.  A config
file holds flat ``key = value`` lines; ``#`` starts a comment.
"""
from __future__ import annotations

import argparse
import contextlib
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .analysis import DEFAULT_EPSILON, OBSERVABLES, Axis, SweepSpec, sweep, threshold_boundary
from .io import Table, write_table
from .min import bloch_decompose, min_hilbert_schmidt, min_trace, min_xstate
from .model import ALL_PAIRS, PARAM_NAMES, ModelParams, block_spectrum
from .presets import PRESETS, run_figure
from .selftest import SUITES, run_selftest
from .transfer import thermal_state

COMMANDS = ("spectrum", "state", "min", "sweep", "boundary", "figure", "selftest")
DEFAULTS = dict(J=1.0, J1=1.0, delta=1.0, D=0.0, h=1.0, T=0.2)
CONFIG_KEYS = PARAM_NAMES + ("out", "format", "steps", "seed", "epsilon", "observable")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    params: ModelParams
    output: str = "-"
    format: str = "csv"
    steps: int | None = None
    seed: int = 0
    epsilon: float = DEFAULT_EPSILON
    observable: str = "N1"
    options: dict = field(default_factory=dict)


def read_config_file(path: str) -> dict:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key = key.strip()
            if not sep:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
            if key not in CONFIG_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = value.strip()
    return values


def _number(key: str, value, kind=float):
    try:
        return kind(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{key}: malformed number {value!r}") from None


def _axis(text: str, default_steps: int | None, key: str) -> Axis:
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise ConfigError(f"{key}: expected NAME:MIN:MAX[:STEPS], got {text!r}")
    name = parts[0]
    if name not in PARAM_NAMES:
        raise ConfigError(f"{key}: unknown parameter {name!r}")
    lo, hi = _number(key, parts[1]), _number(key, parts[2])
    steps = _number(key, parts[3], int) if len(parts) == 4 else (default_steps or 101)
    try:
        return Axis(name, lo, hi, steps)
    except ValueError as exc:
        raise ConfigError(f"{key}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    for name in PARAM_NAMES:
        common.add_argument(f"--{name}", dest=name, default=None, metavar="X")
    common.add_argument("--config", default=None, metavar="FILE")
    common.add_argument("--out", default=None, metavar="FILE")
    common.add_argument("--format", default=None, choices=("csv", "jsonl"))
    common.add_argument("--steps", default=None, metavar="N")
    common.add_argument("--seed", default=None, metavar="N")

    parser = argparse.ArgumentParser(prog="diamond-min", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common], help="block eigenvalues and eigenvectors")
    sub.add_parser("state", parents=[common], help="thermal two-qubit density matrix")
    sub.add_parser("min", parents=[common], help="N1 and N2 of the thermal state")
    p = sub.add_parser("sweep", parents=[common], help="grid evaluation over one or two axes")
    p.add_argument("--axis", action="append", default=[], metavar="NAME:MIN:MAX[:STEPS]")
    p.add_argument("--observable", default=None, choices=OBSERVABLES)
    p.add_argument("--element", default="2,3", metavar="I,J")
    p = sub.add_parser("boundary", parents=[common], help="N1 = epsilon contour in a plane")
    p.add_argument("--scan", required=False, default=None, metavar="NAME:MIN:MAX[:STEPS]")
    p.add_argument("--line", required=False, default=None, metavar="NAME:MIN:MAX[:STEPS]")
    p.add_argument("--epsilon", default=None, metavar="EPS")
    p = sub.add_parser("figure", parents=[common], help="run a figure preset")
    p.add_argument("preset", metavar="PRESET", help=f"one of: {', '.join(PRESETS)}")
    p = sub.add_parser("selftest", parents=[common], help="cross-oracle checks")
    p.add_argument("--suite", action="append", default=None, choices=tuple(SUITES))
    p.add_argument("--quick", action="store_true")
    return parser


def parse_config(argv) -> RunConfig:
    args = build_parser().parse_args(argv)
    file_values = read_config_file(args.config) if args.config else {}
    flags = vars(args)

    def pick(key, default=None):
        if flags.get(key) is not None:
            return flags[key]
        return file_values.get(key, default)

    values = {}
    for name in PARAM_NAMES:
        values[name] = _number(name, pick(name, DEFAULTS[name]))
    if not values["T"] > 0:
        raise ConfigError("T must be > 0")
    try:
        params = ModelParams(**values)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    steps = pick("steps")
    cfg = RunConfig(
        command=args.command,
        params=params,
        output=pick("out", "-"),
        format=pick("format", "csv"),
        steps=None if steps is None else _number("steps", steps, int),
        seed=_number("seed", pick("seed", 0), int),
        epsilon=_number("epsilon", pick("epsilon", DEFAULT_EPSILON)),
        observable=pick("observable", "N1"),
    )
    if cfg.format not in ("csv", "jsonl"):
        raise ConfigError(f"format: expected csv or jsonl, got {cfg.format!r}")
    if cfg.observable not in OBSERVABLES:
        raise ConfigError(f"observable: unknown {cfg.observable!r}")
    if cfg.steps is not None and cfg.steps < 2:
        raise ConfigError("steps must be >= 2")
    if cfg.epsilon <= 0:
        raise ConfigError("epsilon must be > 0")

    if args.command == "sweep":
        if not args.axis:
            raise ConfigError("axis: sweep needs at least one --axis NAME:MIN:MAX[:STEPS]")
        cfg.options["axes"] = tuple(_axis(a, cfg.steps, "axis") for a in args.axis)
        try:
            cfg.options["element"] = tuple(int(v) for v in args.element.split(","))
        except ValueError:
            raise ConfigError(f"element: expected I,J, got {args.element!r}") from None
    elif args.command == "boundary":
        for key in ("scan", "line"):
            text = getattr(args, key)
            if text is None:
                raise ConfigError(f"{key}: boundary needs --{key} NAME:MIN:MAX[:STEPS]")
            cfg.options[key] = _axis(text, cfg.steps, key)
    elif args.command == "figure":
        if args.preset not in PRESETS:
            raise ConfigError(f"unknown preset {args.preset!r}; available: {', '.join(PRESETS)}")
        cfg.options["preset"] = args.preset
    elif args.command == "selftest":
        cfg.options["suites"] = args.suite
        cfg.options["quick"] = args.quick
    return cfg


def _spectrum_table(params: ModelParams) -> Table:
    rows = []
    for pair in ALL_PAIRS:
        spec = block_spectrum(params, pair)
        for k in range(4):
            v = spec.vectors[:, k]
            rows.append([pair.mu_i, pair.mu_ip1, k + 1, spec.lambdas[k],
                         *np.column_stack([v.real, v.imag]).ravel()])
    cols = ["mu_i", "mu_ip1", "level", "lambda"]
    for basis in ("00", "01", "10", "11"):
        cols += [f"v{basis}_re", f"v{basis}_im"]
    return Table(cols, np.array(rows), {"params": params.as_dict(), "version": __version__})


def _state_table(params: ModelParams) -> Table:
    rho = thermal_state(params).rho
    rows = [[i + 1, j + 1, rho[i, j].real, rho[i, j].imag] for i in range(4) for j in range(4)]
    return Table(["i", "j", "re", "im"], np.array(rows),
                 {"params": params.as_dict(), "version": __version__})


def _min_table(params: ModelParams) -> Table:
    state = thermal_state(params)
    res = min_xstate(state)
    b = bloch_decompose(state)
    row = [res.n1, res.n2, min_trace(b), min_hilbert_schmidt(b), float(res.maximizer_degenerate)]
    return Table(["N1", "N2", "N1_closed_form", "N2_closed_form", "degenerate_marginal"],
                 np.array([row]), {"params": params.as_dict(), "version": __version__})


def execute(cfg: RunConfig, out) -> int:
    if cfg.command == "selftest":
        results = run_selftest(cfg.seed, cfg.options.get("suites"), cfg.options.get("quick", False))
        for r in results:
            out.write(r.line() + "\n")
        ok = all(r.passed for r in results)
        out.write(("all suites passed" if ok else "selftest FAILED") + "\n")
        return 0 if ok else 1

    if cfg.command == "spectrum":
        table = _spectrum_table(cfg.params)
    elif cfg.command == "state":
        table = _state_table(cfg.params)
    elif cfg.command == "min":
        table = _min_table(cfg.params)
    elif cfg.command == "sweep":
        res = sweep(SweepSpec(cfg.options["axes"], cfg.params, cfg.observable,
                              cfg.options["element"]))
        columns, rows = res.rows()
        table = Table(columns, rows, res.meta)
    elif cfg.command == "boundary":
        curve = threshold_boundary(cfg.options["scan"], cfg.options["line"], cfg.params, cfg.epsilon)
        table = Table(list(curve.axes), curve.points, curve.meta)
    elif cfg.command == "figure":
        table = run_figure(cfg.options["preset"], cfg.steps)
    else:  # pragma: no cover - argparse restricts the choices
        raise ConfigError(f"unknown command {cfg.command!r}")
    write_table(table, out, cfg.format)
    return 0


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except ConfigError as exc:
        print(f"diamond-min: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"diamond-min: error: {exc}", file=sys.stderr)
        return 2
    with contextlib.ExitStack() as stack:
        if cfg.output == "-":
            out = sys.stdout
        else:
            out = stack.enter_context(open(cfg.output, "w", encoding="utf-8", newline="\n"))
        try:
            return execute(cfg, out)
        except ValueError as exc:
            print(f"diamond-min: error: {exc}", file=sys.stderr)
            return 2


if __name__ == "__main__":
    sys.exit(main())
