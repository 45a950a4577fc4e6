"""Command-line front end.

    momentlab verify {charsums,mellin,petersson,sieve,diagonal} [options]
    momentlab experiment {residual,scaling,large-sieve} [options]
    momentlab rerun MANIFEST

Exit codes: 0 success, 1 a numerical check failed, 2 input data missing or
unreadable, 3 invalid configuration.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
from pathlib import Path

from . import __version__
from .config import EXPERIMENTS, SUITES, ConfigError, RunConfig, parse_config_text

CSV_SCHEMA = 1
EXIT_FAIL, EXIT_DATA, EXIT_CONFIG = 1, 2, 3


def git_blob_hash(data: bytes) -> str:
    """The object id git would give this content."""
    return hashlib.sha1(b"blob %d\0" % len(data) + data).hexdigest()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="momentlab", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"momentlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="flat key = value config file")
        sp.add_argument("--q", type=int)
        sp.add_argument("--q-list", help="comma-separated levels")
        sp.add_argument("--q-max", type=int)
        sp.add_argument("--weight", type=int)
        sp.add_argument("--alpha", help="three comma-separated shifts, e.g. 0,0,0")
        sp.add_argument("--data", help="newform JSON Lines file")
        sp.add_argument("--out", help="output directory")
        sp.add_argument("--threads", type=int)
        sp.add_argument("--trunc-c", type=int, help="Kloosterman c-sums run to trunc_c * q")
        sp.add_argument("--contour-T", type=float, dest="contour_T", help="height cut of the diagonal triple contour")
        sp.add_argument("--t-grid", help="start:stop:step for the large sieve gaps")
        sp.add_argument("--q-odd-squarefree-max", type=int)

    v = sub.add_parser("verify", help="run an invariant suite and print a pass/fail table")
    v.add_argument("name", choices=SUITES)
    common(v)
    e = sub.add_parser("experiment", help="run an experiment and write CSV, plot data and a manifest")
    e.add_argument("name", choices=EXPERIMENTS)
    common(e)
    r = sub.add_parser("rerun", help="repeat a run from its manifest")
    r.add_argument("manifest")
    return p


def config_from_args(args) -> RunConfig:
    values = {}
    if getattr(args, "config", None):
        values.update(parse_config_text(Path(args.config).read_text()))
    values["command"], values["name"] = args.command, args.name
    for key in ("q", "q_max", "weight", "alpha", "data", "out", "threads", "trunc_c", "contour_T",
                "t_grid", "q_odd_squarefree_max"):
        val = getattr(args, key, None)
        if val is not None:
            values[key] = val
    if getattr(args, "q_list", None):
        try:
            values["q_list"] = [int(x) for x in args.q_list.split(",")]
        except ValueError:
            raise ConfigError([f"cannot read q-list {args.q_list!r}"]) from None
    return RunConfig.from_mapping(values).validate()


# ---------------------------------------------------------------- output

def _fmt(x) -> str:
    if isinstance(x, complex):
        return f"{x.real:.12e}{x.imag:+.12e}j"
    if isinstance(x, float):
        return f"{x:.12e}"
    return str(x)


def render_csv(kind: str, header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    buf.write(f"# momentlab-csv schema={CSV_SCHEMA} kind={kind}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(x) for x in row])
    return buf.getvalue()


def render_plot(kind: str, x: str, y: str, points, hints: str) -> str:
    buf = io.StringIO()
    buf.write(f"# momentlab-plot schema={CSV_SCHEMA} kind={kind} x={x} y={y} {hints}\n")
    buf.write(f"{x},{y}\n")
    for a, b in points:
        buf.write(f"{_fmt(a)},{_fmt(b)}\n")
    return buf.getvalue()


def write_artifacts(cfg: RunConfig, files: dict[str, str], inputs: dict[str, bytes]) -> Path:
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        (out / name).write_text(text)
    manifest = {
        "momentlab_version": __version__,
        "config": cfg.echo(),
        "inputs": {k: git_blob_hash(v) for k, v in sorted(inputs.items())},
        "outputs": {k: git_blob_hash(v.encode()) for k, v in sorted(files.items())},
    }
    manifest["content_hash"] = git_blob_hash(json.dumps(
        {"config": cfg.canonical(), "inputs": manifest["inputs"]}, sort_keys=True).encode())
    path = out / f"{cfg.name}.manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


# ---------------------------------------------------------------- commands

def _data_bytes(cfg: RunConfig) -> dict[str, bytes]:
    from .forms import data_path

    path = data_path(cfg.data)
    return {path.name: path.read_bytes()}


def run_experiment(cfg: RunConfig) -> dict[str, str]:
    from . import moment, suites
    from .forms import available_levels

    if cfg.name == "scaling":
        levels = cfg.levels() or [q for q in available_levels(cfg.weight, cfg.data) if q <= cfg.q_max]
        rows = moment.subconvexity_scaling(levels, cfg.weight, cfg.data)
        table = [[r["q"], r["max_L"], r["min_L"], r["ratio"]] for r in rows]
        return {"scaling.csv": render_csv("scaling", ["q", "max_L", "min_L", "ratio"], table),
                "scaling.plot.csv": render_plot("scaling", "q", "ratio", [(r["q"], r["ratio"]) for r in rows],
                                                "scale=linear reference=q^(1/3)(log q)^(7/3)")}
    if cfg.name == "residual":
        levels = cfg.levels() or [q for q in available_levels(cfg.weight, cfg.data) if q <= cfg.q_max
                                  and q % 4 == (3 if cfg.weight % 4 == 2 else 1)]
        trunc = (cfg.trunc_c or 2000)
        reports = suites._pmap(lambda q: moment.residual_report(q, cfg.weight, cfg.shifts(), cfg.data,
                                                                trunc=trunc * q), levels, cfg.threads)
        rows = [r.row() for r in reports]
        header = list(rows[0]) if rows else ["q"]
        table = [[row[h] for h in header] for row in rows]
        env = [(r.q, abs(r.residual) / moment.envelope(r.q, cfg.weight)) for r in reports]
        slope = moment.fit_exponent(*zip(*env)) if len(env) > 1 else float("nan")
        return {"residual.csv": render_csv("residual", header, table),
                "residual.plot.csv": render_plot("residual", "q", "envelope_ratio", env,
                                                 f"scale=loglog fitted_exponent={slope:.6f}")}
    t_values = cfg.t_values()
    rows = suites.large_sieve_table(cfg.q_odd_squarefree_max, t_values, cfg.threads)
    per_q = {}
    for q, *_, ratio in rows:
        per_q[q] = max(per_q.get(q, 0.0), ratio)
    return {"large-sieve.csv": render_csv("large-sieve", ["q", "t1", "t2", "lhs", "reference", "ratio"],
                                          [list(r) for r in rows]),
            "large-sieve.plot.csv": render_plot("large-sieve", "q", "max_ratio", sorted(per_q.items()),
                                                "scale=linear")}


class _Context:
    def __init__(self, cfg: RunConfig):
        self.threads = cfg.threads
        self.data = cfg.data
        self.trunc_factor = cfg.trunc_c
        self.contour_T = cfg.contour_T


def cmd_verify(cfg: RunConfig, stream=None) -> int:
    stream = stream or sys.stdout
    from . import suites

    checks = suites.SUITES[cfg.name](_Context(cfg))
    for c in checks:
        print(c.line(), file=stream)
    failed = [c for c in checks if not c.passed]
    if failed:
        print(f"first failure: {failed[0].name} {failed[0].detail}", file=stream)
        return EXIT_FAIL
    return 0


def cmd_experiment(cfg: RunConfig, stream=None) -> int:
    stream = stream or sys.stdout
    inputs = _data_bytes(cfg) if cfg.name in ("scaling", "residual") else {}
    files = run_experiment(cfg)
    manifest = write_artifacts(cfg, files, inputs)
    for name in sorted(files):
        print(Path(cfg.out) / name, file=stream)
    print(manifest, file=stream)
    return 0


def rerun(manifest_path: str, stream=None) -> int:
    """Repeat a run in place and check that every recorded output hash comes back unchanged."""
    stream = stream or sys.stdout
    manifest = json.loads(Path(manifest_path).read_text())
    cfg = RunConfig.from_mapping(manifest["config"]).validate()
    code = dispatch(cfg, stream)
    if code or cfg.command != "experiment":
        return code
    for name, digest in sorted(manifest.get("outputs", {}).items()):
        now = git_blob_hash((Path(cfg.out) / name).read_bytes())
        if now != digest:
            print(f"rerun mismatch: {name} {digest} -> {now}", file=stream)
            return EXIT_FAIL
    return 0


def dispatch(cfg: RunConfig, stream=None) -> int:
    return cmd_verify(cfg, stream) if cfg.command == "verify" else cmd_experiment(cfg, stream)


def main(argv=None) -> int:
    from .forms import NewformDataError

    args = build_parser().parse_args(argv)
    try:
        if args.command == "rerun":
            return rerun(args.manifest)
        cfg = config_from_args(args)
        return dispatch(cfg)
    except ConfigError as exc:
        for problem in exc.problems:
            print(f"config error: {problem}", file=sys.stderr)
        return EXIT_CONFIG
    except (NewformDataError, FileNotFoundError, LookupError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
