"""Command-line front end: check-params, run, sweep.

Exit codes: 0 pass, 1 hypothesis violation or failed check, 2 open endpoint
(unknown), 3 numerical failure (truncation, blow-up, non-contraction),
4 usage error.
"""

from __future__ import annotations

import argparse
import copy
import json
import os
import sys
import warnings
from pathlib import Path

from .field.grid import TruncationWarning
from .params import (SideParams, Status, UPParams, check_cor2, check_cor3,
                     check_lp_heisenberg, check_moment_growth, check_nls, check_thm1,
                     check_thm2, check_thm5, InadmissibleError)
from .propagators.nls import BlowUpError, NonContractionError
from .experiments.records import dumps, fmt6
from .experiments.runner import ConfigError, run_experiment, validate

EXIT_OK, EXIT_VIOLATION, EXIT_UNKNOWN, EXIT_NUMERICAL, EXIT_USAGE = 0, 1, 2, 3, 4

_STATUS_CODE = {Status.ADMISSIBLE: EXIT_OK, Status.VIOLATED: EXIT_VIOLATION,
                Status.UNKNOWN: EXIT_UNKNOWN}


class UsageError(Exception):
    pass


def load_config(path) -> dict:
    try:
        cfg = json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise UsageError(f"config file {path} not found") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    return cfg


def _theorem_verdict(cfg: dict):
    """Verdict for configs that name a theorem instead of an experiment."""
    p = cfg.get("params", {})
    n = int(cfg.get("grid", {}).get("dim", p.get("n", 1)))
    thm = cfg["theorem"]
    if thm == "thm1":
        s1 = SideParams(n, **p["side1"])
        s2 = SideParams(int(p.get("n2", n)), **p["side2"])
        return check_thm1(UPParams(s1, s2, p["q1"], p["q2"], p["m1"], p["m2"]))
    if thm == "thm2":
        return check_thm2(n, SideParams(n, **p["side1"]), SideParams(n, **p["side2"]))
    if thm == "cor2":
        return check_cor2(n, p["theta"], p["phi"], p["p"], p["q"], p["r"])
    if thm == "cor3":
        return check_cor3(n, p["theta"], p["p"], p["q"])
    if thm == "lp_heisenberg":
        return check_lp_heisenberg(n, p["p"])
    if thm == "moment_growth":
        return check_moment_growth(n, p["a"], p["b"])
    if thm == "thm5":
        return check_thm5(n, *(p[k] for k in ("a1", "b1", "k1", "a2", "b2", "k2")))
    if thm == "nls":
        return check_nls(n, p["p"], p["m"])
    raise ConfigError(f"unknown theorem {thm!r}")


def config_verdict(cfg: dict):
    try:
        if "theorem" in cfg:
            return _theorem_verdict(cfg)
        return validate(cfg)
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed parameters: {exc}") from None


def cmd_check_params(cfg: dict, out=None) -> int:
    out = out or sys.stdout
    verdict = config_verdict(cfg)
    for line in verdict.lines():
        print(line, file=out)
    status = verdict.status
    if status is Status.UNKNOWN:
        print("UNKNOWN (open endpoint)", file=out)
    elif status is Status.VIOLATED:
        print("VIOLATED: " + ", ".join(verdict.violations), file=out)
    else:
        print("ADMISSIBLE", file=out)
    return _STATUS_CODE[status]


def _apply_overrides(cfg: dict, args) -> dict:
    cfg = copy.deepcopy(cfg)
    if args.seed is not None:
        cfg["seed"] = args.seed
    return cfg


def _out_dir(args, cfg) -> Path:
    return Path(args.out or os.environ.get("LPUP_OUT") or cfg.get("out") or "lpup_out")


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("LPUP_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"LPUP_THREADS must be an integer, got {env!r}") from None
    return 1


def _execute(cfg: dict, out_dir: Path, threads: int, stem: str | None, out=None,
             plots: bool = True) -> tuple[int, Path | None]:
    """Validate and run one config; returns (exit code, record path)."""
    out = out or sys.stdout
    verdict = config_verdict(cfg)
    if not verdict.ok:
        for line in verdict.lines():
            print(line, file=out)
        code = _STATUS_CODE[verdict.status]
        print(("UNKNOWN (open endpoint)" if code == EXIT_UNKNOWN else "VIOLATED") +
              "; nothing computed", file=out)
        return code, None
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("error", TruncationWarning)
            record = run_experiment(cfg, threads=threads)
    except TruncationWarning as exc:
        print(f"numerical failure: {exc}. Enlarge the grid half-width L "
              f"(and N to keep the spacing).", file=out)
        return EXIT_NUMERICAL, None
    except (BlowUpError, NonContractionError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=out)
        return EXIT_NUMERICAL, None
    except RuntimeError as exc:
        print(f"numerical failure: {exc}", file=out)
        return EXIT_NUMERICAL, None
    except InadmissibleError as exc:
        print(f"VIOLATED: {exc}", file=out)
        return EXIT_VIOLATION, None
    path = record.write(out_dir, stem=stem, plots=plots)
    print(record.summary(), file=out)
    print(f"record: {path}", file=out)
    return (EXIT_OK if record.ok in (True, None) else EXIT_VIOLATION), path


def cmd_run(cfg: dict, out_dir: Path, threads: int, out=None, plots: bool = True):
    return _execute(cfg, out_dir, threads, None, out, plots)


def _set_path(cfg: dict, dotted: str, value):
    node = cfg
    keys = dotted.split(".")
    for k in keys[:-1]:
        node = node.setdefault(k, {})
    node[keys[-1]] = value


def cmd_sweep(cfg: dict, axis: str, values: list, out_dir: Path, threads: int,
              out=None, plots: bool = True) -> int:
    """Run ``cfg`` once per value of ``axis`` (a dotted path into the config)."""
    out = out or sys.stdout
    if not values:
        print("empty sweep; nothing to do", file=out)
        return EXIT_OK
    tag = cfg.get("experiment", "sweep")
    entries, worst = [], EXIT_OK
    for i, v in enumerate(values):
        member = copy.deepcopy(cfg)
        _set_path(member, axis, v)
        try:
            code, path = _execute(member, out_dir, threads, f"{tag}_{i:03d}", out, plots)
        except ConfigError as exc:
            print(f"member {i}: usage error: {exc}", file=out)
            code, path = EXIT_USAGE, None
        entries.append({"index": i, "value": v, "exit": code,
                        "record": path.name if path else None})
        worst = max(worst, code)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / f"{tag}_sweep.json").write_text(dumps({"axis": axis, "members": entries}))
    print(f"sweep over {axis}: {len(values)} members, worst exit {worst}", file=out)
    return worst


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lpuncertainty",
                                     description="L^p uncertainty principle experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="JSON config file")
        p.add_argument("--out", help="output directory (env LPUP_OUT)")
        p.add_argument("--threads", type=int, help="worker threads (env LPUP_THREADS)")
        p.add_argument("--seed", type=int, help="override the config seed")
        p.add_argument("--no-plots", action="store_true", help="skip PNG rendering")

    common(sub.add_parser("check-params", help="print admissibility diagnostics"))
    common(sub.add_parser("run", help="run one experiment"))
    sw = sub.add_parser("sweep", help="run an experiment across a parameter axis")
    common(sw)
    sw.add_argument("--axis", help="dotted config path, e.g. params.alpha")
    sw.add_argument("--values", help="JSON list of values")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        cfg = _apply_overrides(load_config(args.config), args)
        threads = _threads(args)
        if args.command == "check-params":
            return cmd_check_params(cfg)
        out_dir = _out_dir(args, cfg)
        if args.command == "run":
            code, _ = cmd_run(cfg, out_dir, threads, plots=not args.no_plots)
            return code
        sweep = cfg.get("sweep", {})
        axis = args.axis or sweep.get("axis")
        if args.values is not None:
            try:
                values = json.loads(args.values)
            except json.JSONDecodeError as exc:
                raise UsageError(f"--values must be a JSON list: {exc}") from None
        else:
            values = sweep.get("values", [])
        if not isinstance(values, list):
            raise UsageError("sweep values must be a list")
        if values and not axis:
            raise UsageError("sweep needs an axis")
        return cmd_sweep(cfg, axis, values, out_dir, threads, plots=not args.no_plots)
    except (UsageError, ConfigError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, TypeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
