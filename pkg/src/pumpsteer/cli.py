"""Command-line front end: ``pumpsteer <command> [flags]``.

Values resolve in the order built-in defaults < ``--config`` file < flags.
The config file holds ``key=value`` lines (flag names, dashes or
underscores) with ``#`` comments.
"""
from __future__ import annotations

import argparse
import dataclasses
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import __version__
from .coupling import PumpSetting, coupling_matrix, involved_pump_integrals
from .errors import IoError, PumpSteerError, UsageError
from .figures import PRESETS, TEST_RES
from .gaussian import VACUUM_VARIANCE, Bipartition, mean_photons, reduce, state
from .hg import WaistConfig, calibrated_overlap_table
from .measures import (
    DEFAULT_TOL,
    QuadScale,
    SteeringReport,
    classify,
    classify_pair,
    genuine_pentapartite,
    steer_multi,
)
from .scan import Axis, GenuineMap, MultiPresence, PairClass, SweepPlan, sweep
from .serialize import csv_text, dumps_json, grid_csv, grid_json, grid_ppm, legend_dict, matrix_csv

COMMANDS = (
    "overlaps",
    "integrals",
    "coupling",
    "cm",
    "photons",
    "steer",
    "classify-pair",
    "multi-scan",
    "genuine",
    "scan",
)

FORMATS = {
    "overlaps": ("csv", "json"),
    "integrals": ("json", "csv"),
    "coupling": ("csv", "json"),
    "cm": ("csv", "json"),
    "photons": ("csv", "json"),
    "steer": ("json",),
    "classify-pair": ("json",),
    "genuine": ("json",),
    "scan": ("csv", "json", "ppm"),
    "multi-scan": ("csv", "json", "ppm"),
}


@dataclass
class RunConfig:
    command: str
    b: float = 1 / math.sqrt(2)
    c: float = 1 / math.sqrt(2)
    theta: float = math.pi / 4
    t: float = 0.5
    chi: float = 1.0
    a: str = "1"
    bpart: str = "3"
    format: str | None = None
    output: str | None = None
    quad_scale: str = QuadScale.UNIT.value
    tol: float = DEFAULT_TOL
    pump_waist: float = 1.0
    signal_waist: float = 1.0
    quad_points: int = 40
    power: int = 1
    task: str = "pair"
    pair: str = "2,3"
    partitions: str = "3>1,2;4>1,2;5>1,2"
    x: str = "b"
    x_range: str = "0,1"
    x_num: int = TEST_RES
    y: str = "c"
    y_range: str = "0,1"
    y_num: int = TEST_RES
    preset: str | None = None
    workers: int = 1
    config: str | None = field(default=None, repr=False)

    # resolved values, filled by parse_config
    a_modes: tuple[int, ...] = ()
    b_modes: tuple[int, ...] = ()

    def setting(self) -> PumpSetting:
        return PumpSetting(self.b, self.c, self.theta, self.chi)

    def waists(self) -> WaistConfig:
        return WaistConfig(self.signal_waist, self.pump_waist, self.quad_points)

    def resolved(self) -> dict[str, Any]:
        skip = {"config", "a_modes", "b_modes", "output"}
        return {f.name: getattr(self, f.name) for f in dataclasses.fields(self) if f.name not in skip}


_CONVERTERS = {
    f.name: {"float": float, "int": int}.get(str(f.type).split(" ")[0], str)
    for f in dataclasses.fields(RunConfig)
}
_CONVERTERS["theta_pi"] = float
_CONFIG_KEYS = set(_CONVERTERS) - {"command", "config", "a_modes", "b_modes"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False, allow_abbrev=False)
    S = argparse.SUPPRESS
    for name in sorted(_CONFIG_KEYS):
        flag = "--" + name.replace("_", "-")
        common.add_argument(flag, dest=name, default=S, type=_CONVERTERS[name])
    common.add_argument("--config", dest="config", default=S)
    parser = _Parser(prog="pumpsteer", description=__doc__.splitlines()[0], allow_abbrev=False)
    parser.add_argument("--version", action="version", version=f"pumpsteer {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _read_config_file(path: str) -> dict[str, Any]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc.strerror}") from None
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        if key not in _CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown config key {key!r}")
        try:
            out[key] = _CONVERTERS[key](value.strip())
        except ValueError:
            raise UsageError(f"{path}:{lineno}: bad value for {key!r}: {value.strip()!r}") from None
    return out


def parse_modes(text: str, flag: str) -> tuple[int, ...]:
    try:
        modes = tuple(int(tok) for tok in text.replace(" ", "").split(",") if tok)
    except ValueError:
        raise UsageError(f"{flag}: mode list must be comma-separated integers, got {text!r}") from None
    if not modes:
        raise UsageError(f"{flag}: empty mode list")
    bad = [m for m in modes if not 1 <= m <= 5]
    if bad:
        raise UsageError(f"{flag}: mode {bad[0]} does not exist (modes are 1..5)")
    if len(set(modes)) != len(modes):
        raise UsageError(f"{flag}: repeated mode in {text!r}")
    return modes


def parse_partitions(text: str) -> tuple[Bipartition, ...]:
    """``"3>1,2;4>1,2"``: each item is steering modes > steered modes."""
    parts = []
    for item in text.split(";"):
        lhs, sep, rhs = item.partition(">")
        if not sep:
            raise UsageError(f"--partitions: expected A>B items, got {item!r}")
        a, b = parse_modes(lhs, "--partitions"), parse_modes(rhs, "--partitions")
        if set(a) & set(b):
            raise UsageError(f"--partitions: parties overlap in {item!r}")
        parts.append(Bipartition(a, b))
    return tuple(parts)


def _parse_axis(name: str, rng: str, num: int, flag: str) -> Axis:
    try:
        start, stop = (float(v) for v in rng.split(","))
        return Axis(name, start, stop, num)
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def parse_config(argv: Sequence[str]) -> RunConfig:
    """Resolve flags and an optional config file into a validated RunConfig."""
    ns = vars(_build_parser().parse_args(list(argv)))
    command = ns.pop("command")
    file_values = _read_config_file(ns.pop("config")) if "config" in ns else {}
    # Within one source --theta-pi beats --theta; flags beat the file.
    for source in (file_values, ns):
        if "theta_pi" in source:
            source["theta"] = source.pop("theta_pi") * math.pi
    cfg = RunConfig(command=command, **{**file_values, **ns})

    if cfg.format is None:
        cfg.format = FORMATS[command][0]
    if cfg.format not in FORMATS[command]:
        raise UsageError(f"--format {cfg.format} not supported by {command} (choose from {FORMATS[command]})")
    for knob in ("b", "c"):
        if not 0.0 <= getattr(cfg, knob) <= 1.0:
            raise UsageError(f"--{knob} must lie in [0, 1]")
    if not math.isfinite(cfg.theta):
        raise UsageError("--theta must be finite")
    if cfg.t < 0:
        raise UsageError("--t must be non-negative")
    if cfg.chi <= 0:
        raise UsageError("--chi must be positive")
    if cfg.tol <= 0:
        raise UsageError("--tol must be positive")
    if cfg.power not in (1, 2):
        raise UsageError("--power must be 1 or 2")
    if cfg.workers < 1:
        raise UsageError("--workers must be at least 1")
    try:
        QuadScale(cfg.quad_scale)
    except ValueError:
        raise UsageError(f"--quad-scale must be 'half' or 'unit', got {cfg.quad_scale!r}") from None
    if cfg.task not in ("pair", "multi", "genuine"):
        raise UsageError(f"--task must be pair, multi or genuine, got {cfg.task!r}")
    if cfg.preset is not None and cfg.preset not in PRESETS:
        raise UsageError(f"--preset {cfg.preset!r} unknown (choose from {sorted(PRESETS)})")
    if cfg.format == "ppm" and cfg.output is None:
        raise UsageError("--format ppm needs --output")

    cfg.a_modes = parse_modes(cfg.a, "--a")
    cfg.b_modes = parse_modes(cfg.bpart, "--bpart")
    if set(cfg.a_modes) & set(cfg.b_modes):
        raise UsageError("--a and --bpart must be disjoint")
    if command == "classify-pair" and (len(cfg.a_modes) != 1 or len(cfg.b_modes) != 1):
        raise UsageError("classify-pair needs exactly one mode in --a and in --bpart")
    if command in ("scan", "multi-scan"):
        _plan(cfg)  # validate now so errors surface as usage errors
    return cfg


def _plan(cfg: RunConfig) -> SweepPlan:
    if cfg.preset is not None:
        num = cfg.x_num
        return PRESETS[cfg.preset](num)
    task_name = "multi" if cfg.command == "multi-scan" else cfg.task
    if task_name == "pair":
        pair = parse_modes(cfg.pair, "--pair")
        if len(pair) != 2:
            raise UsageError("--pair needs exactly two modes")
        task = PairClass(pair[0], pair[1], cfg.tol)
    elif task_name == "multi":
        task = MultiPresence(parse_partitions(cfg.partitions))
    else:
        task = GenuineMap(QuadScale(cfg.quad_scale))
    ax1 = _parse_axis(cfg.x, cfg.x_range, cfg.x_num, "--x")
    ax2 = _parse_axis(cfg.y, cfg.y_range, cfg.y_num, "--y")
    fixed = {k: getattr(cfg, k) for k in ("b", "c", "theta") if k not in (cfg.x, cfg.y)}
    fixed["t"] = cfg.t
    fixed["chi"] = cfg.chi
    try:
        return SweepPlan(ax1, ax2, fixed, task)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def metadata(cfg: RunConfig) -> dict[str, Any]:
    table = calibrated_overlap_table(cfg.waists())
    return {
        "tool": "pumpsteer",
        "version": __version__,
        "command": cfg.command,
        "parameters": cfg.resolved(),
        "conventions": {
            "vacuum_variance": VACUUM_VARIANCE,
            "quadrature_order": "X1..Xk,Y1..Yk",
            "quad_scale": cfg.quad_scale,
            "calibration_factor": table.calibration_factor,
        },
    }


def _emit_text(text: str, cfg: RunConfig) -> None:
    if cfg.output is None:
        sys.stdout.write(text)
    else:
        _write(Path(cfg.output), text.encode())


def _write(path: Path, data: bytes) -> None:
    try:
        path.write_bytes(data)
    except OSError as exc:
        raise IoError(path, exc.strerror) from None


def _json_out(result: dict[str, Any], cfg: RunConfig) -> None:
    _emit_text(dumps_json({"metadata": metadata(cfg), "result": result}), cfg)


def run(cfg: RunConfig) -> None:
    """Execute a resolved configuration and write its output."""
    cmd = cfg.command
    if cmd == "overlaps":
        table = calibrated_overlap_table(cfg.waists())
        rows = [(str(p), str(s), str(i), v) for p, s, i, v in table.rows()]
        if cfg.format == "csv":
            _emit_text(csv_text(rows, ["pump", "signal", "idler", "lambda"]), cfg)
        else:
            _json_out({"rows": [dict(zip(("pump", "signal", "idler", "lambda"), r)) for r in rows]}, cfg)
        return
    if cmd == "integrals":
        values = involved_pump_integrals(cfg.power, calibrated_overlap_table(cfg.waists()))
        notes = {
            "12": "HG12 weight sqrt(1-c^2)*sin(theta)",
            "12c": "alternative HG12 weight c*sin(theta)",
        }
        if cfg.format == "csv":
            _emit_text(csv_text([(k, v, notes.get(k, "")) for k, v in values.items()], ["pump", "integral", "note"]), cfg)
        else:
            _json_out({"power": cfg.power, "integrals": values, "notes": notes}, cfg)
        return

    setting = cfg.setting()
    table = calibrated_overlap_table(cfg.waists())
    if cmd == "coupling":
        g = coupling_matrix(setting, table)
        if cfg.format == "csv":
            _emit_text(matrix_csv(g), cfg)
        else:
            _json_out({"modes": [1, 2, 3, 4, 5], "coupling_matrix": g.tolist()}, cfg)
        return

    if cmd in ("scan", "multi-scan"):
        grid = sweep(_plan(cfg), workers=cfg.workers)
        if cfg.format == "csv":
            _emit_text(grid_csv(grid, {"tool": f"pumpsteer {__version__}"}), cfg)
            if cfg.output is not None:
                legend = Path(cfg.output).with_suffix(".legend.json")
                _write(legend, dumps_json(legend_dict(grid)).encode())
        elif cfg.format == "json":
            _json_out(grid_json(grid), cfg)
        else:
            _write(Path(cfg.output), grid_ppm(grid))
        return

    cm = state(setting, cfg.t, table)
    if cmd == "cm":
        header = [f"X{m}" for m in cm.modes] + [f"Y{m}" for m in cm.modes]
        if cfg.format == "csv":
            _emit_text(matrix_csv(cm.sigma, header), cfg)
        else:
            _json_out({"order": header, "sigma": cm.sigma.tolist()}, cfg)
    elif cmd == "photons":
        n = mean_photons(cm)
        if cfg.format == "csv":
            _emit_text(csv_text(list(zip(cm.modes, n.tolist())), ["mode", "n"]), cfg)
        else:
            _json_out({"modes": list(cm.modes), "mean_photons": n.tolist()}, cfg)
    elif cmd == "classify-pair":
        rep = classify_pair(reduce(cm, cfg.a_modes + cfg.b_modes), cfg.tol)
        _json_out({"a": list(cfg.a_modes), "b": list(cfg.b_modes), **rep.as_dict()}, cfg)
    elif cmd == "steer":
        sub = reduce(cm, cfg.a_modes + cfg.b_modes)
        if len(cfg.a_modes) == 1 and len(cfg.b_modes) == 1:
            rep = classify_pair(sub, cfg.tol)
        else:
            part = Bipartition(cfg.a_modes, cfg.b_modes)
            g_ab, g_ba = steer_multi(sub, part, "AB"), steer_multi(sub, part, "BA")
            rep = SteeringReport(g_ab, g_ba, None, classify(g_ab, g_ba, cfg.tol))
        _json_out({"a": list(cfg.a_modes), "b": list(cfg.b_modes), **rep.as_dict()}, cfg)
    elif cmd == "genuine":
        res = genuine_pentapartite(cm, QuadScale(cfg.quad_scale))
        _json_out(res.as_dict(), cfg)


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
        run(cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (PumpSteerError, IoError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
