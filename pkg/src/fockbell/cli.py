"""Command-line front end.

Exit codes: 0 success, 1 golden-value mismatch (``reproduce``), 2 usage error.
"""

from __future__ import annotations

import argparse
import ast
import csv
import io
import json
import math
import operator
import re
import sys
from dataclasses import dataclass, field

from . import __version__
from .bell import (
    ChSettings,
    all_strategies,
    ch_value,
    classify,
    deterministic_ch_value,
    lhv_bounds,
    reference_settings,
)
from .errors import BadGrid, DegenerateState
from .fock import IDENTITY, make_state, singlet_analog
from .measurements import MeasurementSetting, commutator_norm, expectation, mode_projector
from .optimize import (
    SETTING_PARAMS,
    STATE_PARAMS,
    Axis,
    SearchOptions,
    SweepGrid,
    minimize_ch,
    sweep_settings,
    sweep_state,
)

GOLDEN_TOL = 1e-12

# Expected values for the one-particle state at the reference settings.
GOLDEN = {
    "P_a'": 0.5,
    "P_b'": 0.5,
    "P_aP_b": 0.0,
    "P_aP_b'": 0.375,
    "P_a'P_b": 0.375,
    "P_a'P_b'": 0.375,
    "ch_value": -0.125,
}

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}
_UNARY = {ast.UAdd: operator.pos, ast.USub: operator.neg}
_NAMES = {"pi": math.pi, "i": 1j, "j": 1j}
_FUNCS = {"sqrt": lambda x: x**0.5}


def parse_number(text: str) -> complex:
    """Evaluate a numeric literal such as ``pi/6``, ``1/sqrt(2)`` or ``0.5+0.5i``."""
    src = re.sub(r"(\d|\.)i\b", r"\1j", text.strip())

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)):
            return node.value
        if isinstance(node, ast.Name) and node.id in _NAMES:
            return _NAMES[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNARY:
            return _UNARY[type(node.op)](ev(node.operand))
        if (
            isinstance(node, ast.Call)
            and isinstance(node.func, ast.Name)
            and node.func.id in _FUNCS
            and len(node.args) == 1
            and not node.keywords
        ):
            return _FUNCS[node.func.id](ev(node.args[0]))
        raise ValueError(f"unsupported literal {text!r}")

    try:
        value = ev(ast.parse(src, mode="eval"))
    except (SyntaxError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse {text!r}: {exc}") from None
    if not math.isfinite(abs(value)):
        raise ValueError(f"non-finite value {text!r}")
    return value


def parse_real(text: str) -> float:
    value = parse_number(text)
    if isinstance(value, complex):
        if value.imag != 0:
            raise ValueError(f"expected a real number, got {text!r}")
        value = value.real
    return float(value)


def parse_state(text: str) -> tuple[complex, complex, complex]:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError("--state expects p,q,r")
    return tuple(complex(parse_number(x)) for x in parts)


def parse_settings(text: str) -> ChSettings:
    parts = text.split(",")
    if len(parts) != 8:
        raise ValueError("--settings expects 8 comma-separated angles")
    return ChSettings.from_angles([parse_real(x) for x in parts])


def parse_axis(text: str) -> Axis:
    parts = text.split(":")
    if len(parts) != 4:
        raise ValueError(f"--grid expects name:lo:hi:steps, got {text!r}")
    name, lo, hi, steps = parts
    try:
        n = int(steps)
    except ValueError:
        raise ValueError(f"steps must be an integer in {text!r}") from None
    return Axis(name.strip(), parse_real(lo), parse_real(hi), n)


def fmt(x: float) -> str:
    return format(float(x), ".17g")


@dataclass
class RunConfig:
    command: str
    state: tuple[complex, complex, complex] = (1 / math.sqrt(2), -1 / math.sqrt(2), 0.0)
    settings: ChSettings | None = None
    axes: tuple[Axis, ...] = ()
    options: SearchOptions = field(default_factory=SearchOptions)
    setting: MeasurementSetting | None = None
    out: str | None = None
    seed: int = 0
    json: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        cfg = cls(command=args.command, out=args.out, seed=args.seed, json=getattr(args, "json", False))
        if getattr(args, "state", None):
            cfg.state = parse_state(args.state)
            make_state(*cfg.state)
        if getattr(args, "settings", None):
            cfg.settings = parse_settings(args.settings)
        if getattr(args, "grid", None):
            cfg.axes = tuple(parse_axis(g) for g in args.grid)
            SweepGrid(cfg.axes)
        if args.command == "sweep":
            cfg._check_sweep()
        elif args.command == "optimize":
            cfg.options = cfg._search_options(args)
        elif args.command == "commutator":
            cfg.setting = MeasurementSetting(parse_real(args.theta), parse_real(args.phi))
        return cfg

    def _check_sweep(self):
        if not self.axes:
            raise ValueError("sweep needs at least one --grid axis")
        names = {ax.name for ax in self.axes}
        if names & set(SETTING_PARAMS) and names & set(STATE_PARAMS):
            raise ValueError("cannot sweep state coefficients and setting angles together")
        if self.json:
            raise ValueError("sweep writes CSV; --json is not supported")

    def _search_options(self, args) -> SearchOptions:
        box, points = {}, {}
        if self.settings is not None:
            for name, x in zip(SETTING_PARAMS, self.settings.angles()):
                box[name] = (x, x)
        for ax in self.axes:
            if ax.name not in SETTING_PARAMS:
                raise ValueError(f"optimize searches settings only; cannot box {ax.name!r}")
            box[ax.name] = (ax.lower, ax.upper)
            points[ax.name] = ax.steps
        return SearchOptions(
            grid_points=args.points,
            iterations=args.iters,
            initial_step=args.step,
            shrink=args.shrink,
            tol=args.tol,
            full_phase=args.full_phase,
            box=box,
            axis_points=points,
        )


def cmd_reproduce(cfg: RunConfig, golden: dict[str, float] = GOLDEN) -> tuple[str, int]:
    s = singlet_analog()
    c = reference_settings()
    p = {name: mode_projector(getattr(c, name)) for name in ("a", "a_prime", "b", "b_prime")}
    values = {
        "P_a'": expectation(s, p["a_prime"], IDENTITY),
        "P_b'": expectation(s, IDENTITY, p["b_prime"]),
        "P_aP_b": expectation(s, p["a"], p["b"]),
        "P_aP_b'": expectation(s, p["a"], p["b_prime"]),
        "P_a'P_b": expectation(s, p["a_prime"], p["b"]),
        "P_a'P_b'": expectation(s, p["a_prime"], p["b_prime"]),
        "ch_value": ch_value(s, c),
    }
    lower, upper = lhv_bounds()
    label = classify(values["ch_value"]).classification.value

    mismatches = [
        f"{k}: got {fmt(values[k])}, expected {fmt(v)}"
        for k, v in golden.items()
        if abs(values[k] - v) > GOLDEN_TOL
    ]
    if (lower, upper) != (0, 1):
        mismatches.append(f"lhv bounds: got ({lower}, {upper}), expected (0, 1)")
    if label != "BELOW_LOWER":
        mismatches.append(f"classification: got {label}, expected BELOW_LOWER")
    code = 1 if mismatches else 0

    if cfg.json:
        record = dict(values, lhv_min=lower, lhv_max=upper, classification=label, match=not mismatches)
        return json.dumps(record) + "\n", code
    lines = [f"{'quantity':<16}{'value':>12}{'expected':>12}"]
    for k, v in values.items():
        lines.append(f"<{k}>".ljust(16) + f"{v:>12.6f}{golden.get(k, math.nan):>12.6f}")
    lines.append(f"{'lhv bounds':<16}{f'[{lower}, {upper}]':>12}")
    lines.append(f"{'classification':<16}{label:>12}")
    lines.append(f"{'status':<16}{'OK' if not mismatches else 'MISMATCH':>12}")
    lines.extend(f"  diff {m}" for m in mismatches)
    return "\n".join(lines) + "\n", code


def cmd_sweep(cfg: RunConfig) -> tuple[str, int]:
    grid = SweepGrid(cfg.axes)
    if grid.names[0] in STATE_PARAMS:
        records = sweep_state(cfg.settings or reference_settings(), grid, base=cfg.state)
    else:
        records = sweep_settings(make_state(*cfg.state), grid, base=cfg.settings)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([*grid.names, "ch_value", "classification"])
    for rec in records:
        writer.writerow([*(fmt(v) for _, v in rec.params), fmt(rec.ch_value), rec.classification])
    return buf.getvalue(), 0


def cmd_optimize(cfg: RunConfig) -> tuple[str, int]:
    result = minimize_ch(make_state(*cfg.state), cfg.options)
    label = classify(result.value).classification.value
    named = zip(("a", "a'", "b", "b'"), (result.settings.a, result.settings.a_prime, result.settings.b, result.settings.b_prime))
    if cfg.json:
        record = {name: x for name, x in zip(SETTING_PARAMS, result.settings.angles())}
        record.update(
            ch_value=result.value, grid_value=result.grid_value, classification=label, evaluations=result.evaluations
        )
        return json.dumps(record) + "\n", 0
    lines = [f"setting {name:<3} theta={fmt(m.theta)} phi={fmt(m.phi)}" for name, m in named]
    lines += [
        f"ch_value        {fmt(result.value)}",
        f"grid_value      {fmt(result.grid_value)}",
        f"classification  {label}",
        f"evaluations     {result.evaluations}",
    ]
    return "\n".join(lines) + "\n", 0


def cmd_lhv(cfg: RunConfig) -> tuple[str, int]:
    rows = [(d, deterministic_ch_value(d)) for d in all_strategies()]
    lower, upper = lhv_bounds()
    if cfg.json:
        record = {
            "strategies": [[d.out_a, d.out_a_prime, d.out_b, d.out_b_prime, v] for d, v in rows],
            "min": lower,
            "max": upper,
        }
        return json.dumps(record) + "\n", 0
    lines = ["a a' b b' ch"]
    lines += [f"{d.out_a} {d.out_a_prime}  {d.out_b} {d.out_b_prime}  {v:>2}" for d, v in rows]
    lines += [f"min {lower}", f"max {upper}"]
    return "\n".join(lines) + "\n", 0


def cmd_commutator(cfg: RunConfig) -> tuple[str, int]:
    value = commutator_norm(cfg.setting)
    if cfg.json:
        return json.dumps({"theta": cfg.setting.theta, "phi": cfg.setting.phi, "norm": value}) + "\n", 0
    return fmt(value) + "\n", 0


COMMANDS = {
    "reproduce": cmd_reproduce,
    "sweep": cmd_sweep,
    "optimize": cmd_optimize,
    "lhv": cmd_lhv,
    "commutator": cmd_commutator,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed (all commands are deterministic)")
    common.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
    common.add_argument("--json", action="store_true", help="emit a JSON record")

    physics = argparse.ArgumentParser(add_help=False)
    physics.add_argument("--state", metavar="p,q,r", help="coefficients of p|10> + q|01> + r|00>")
    physics.add_argument("--settings", metavar="ANGLES", help="θa,φa,θa',φa',θb,φb,θb',φb' (pi/6 style allowed)")
    physics.add_argument("--grid", action="append", metavar="name:lo:hi:steps", help="grid axis (repeatable)")

    parser = argparse.ArgumentParser(prog="fockbell", description="One-particle nonlocality in two-mode Fock space.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("reproduce", parents=[common], help="reproduce the single-particle CH violation")
    sub.add_parser("sweep", parents=[common, physics], help="CSV sweep over settings or state coefficients")
    opt = sub.add_parser("optimize", parents=[common, physics], help="search for the strongest violation")
    opt.add_argument("--iters", type=int, default=200)
    opt.add_argument("--step", type=float, default=0.1)
    opt.add_argument("--shrink", type=float, default=0.5)
    opt.add_argument("--tol", type=float, default=1e-10)
    opt.add_argument("--points", type=int, default=24, help="grid points per angle axis")
    opt.add_argument("--full-phase", action="store_true", help="search phases too, not just {0, pi}")
    sub.add_parser("lhv", parents=[common], help="enumerate deterministic local strategies")
    com = sub.add_parser("commutator", parents=[common], help="norm of [P(theta, phi), N]")
    com.add_argument("theta")
    com.add_argument("phi")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
    except (ValueError, BadGrid, DegenerateState) as exc:
        parser.error(str(exc))
    text, code = COMMANDS[cfg.command](cfg)
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
