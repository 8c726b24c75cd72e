"""Command line front end.

Subcommands: ``check`` (cone verdicts), ``poly`` (identity and delta0),
``mass`` (Monge-Ampere ladder and concentration), ``transport`` ((1,1)
transport along a family).

Exit codes: 0 affirmative verdict or successful experiment, 1 negative
verdict or failed experiment check, 2 input error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from . import cone, transport as tr
from ._exact import ExactnessError, rational
from .linalg import DimensionError
from .mass import concentration as mc
from .mass import monge_ampere as ma
from .models import ManifoldModel, ModelError, load_class, load_model
from .polyid import CertificationError, PolyIdentityError, certify_delta0, find_delta0, identity

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_NUMERICAL = 0, 1, 2, 3
MODES = ("P", "kahler", "nef", "component", "dual")

# (module, attribute, default) per subcommand; overrides may only tighten
TOLERANCES = {
    "check": {"float_rtol": (cone, "FLOAT_RTOL"), "lp": (cone, "LP_TOL")},
    "mass": {"ma_n1": (ma, "N1_TOL"), "ma_n2": (ma, "N2_TOL")},
    "transport": {"defect": (tr, "DEFECT_TOL"), "start": (tr, "START_TOL"), "drift": (tr, "DEFECT_TOL")},
    "poly": {},
}


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    options: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    out: str | None = None
    fmt: str = "text"


def _read(path, what):
    if path is None:
        raise InputError(f"--{what} is required")
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {what} file {path}: {exc.strerror or exc}") from None


def parse_tolerances(sub, items):
    allowed = TOLERANCES[sub]
    out = {}
    for item in items or []:
        name, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"--tol expects NAME=VALUE, got {item!r}")
        if name not in allowed:
            names = ", ".join(sorted(allowed)) or "none"
            raise InputError(f"unknown tolerance {name!r} for {sub} (known: {names})")
        try:
            v = float(value)
        except ValueError:
            raise InputError(f"tolerance {name} must be a number, got {value!r}") from None
        mod, attr = allowed[name]
        default = getattr(mod, attr)
        if not 0 < v <= default:
            raise InputError(f"tolerance {name}={v:g} would loosen the default {default:g}; overrides may only tighten")
        out[name] = v
    return out


@contextmanager
def _tightened(sub, tols):
    saved = []
    for name, v in tols.items():
        mod, attr = TOLERANCES[sub][name]
        if name == "drift":
            continue
        saved.append((mod, attr, getattr(mod, attr)))
        setattr(mod, attr, v)
    try:
        yield
    finally:
        for mod, attr, v in saved:
            setattr(mod, attr, v)


# ----------------------------------------------------------------------------
# subcommands


def _run_check(cfg: RunConfig):
    from . import report

    o = cfg.options
    model = load_model(_read(o.get("model"), "model"))
    cls_ = load_class(_read(o.get("class"), "class"), model)
    omega = load_class(_read(o["omega"], "omega"), model) if o.get("omega") else None
    mode = o.get("mode") or "P"
    banner = cone.BANNER
    if mode == "P":
        v = cone.in_P(model, cls_)
    elif mode == "kahler":
        v = cone.is_kahler(model, cls_, omega)
    elif mode == "nef":
        v = cone.is_nef(model, cls_, omega)
    elif mode == "component":
        label = cone.classify_component(model, cls_)
        v = cone.in_P(model, cls_)
        text = report.component_text(label, v, banner)
        return (EXIT_OK if label.in_P else EXIT_NEGATIVE), text, report.verdict_csv(v), None
    else:
        refs = [omega if omega is not None else model.default_reference()]
        gens = cone.dual_cone_generators(model, refs)
        v = cone.in_dual_cone(gens, model.coordinates(cls_))
        extra = ["generators: " + "; ".join(f"{g.label}=(" + ", ".join(report.fmt(x) for x in g.coords) + ")" for g in gens)]
        return _verdict_code(v), report.verdict_text(v, banner, extra), report.verdict_csv(v), None
    return _verdict_code(v), report.verdict_text(v, banner), report.verdict_csv(v), None


def _verdict_code(v):
    return EXIT_OK if v.answer == "yes" else EXIT_NEGATIVE


def _run_poly(cfg: RunConfig):
    from . import report

    o = cfg.options
    p = o.get("p")
    n = o.get("n")
    if p is None and n is None:
        raise InputError("poly needs --p and/or --n")
    p = p if p is not None else n
    ident = identity(p)
    if o.get("find_delta0"):
        d, info = find_delta0(n if n is not None else p)
        text = report.poly_text(ident, d, info["certificates"], info["tried"])
        return EXIT_OK, text, text, None
    if o.get("delta0") is not None:
        ok, certs = certify_delta0(n if n is not None else p, rational(o["delta0"]))
        text = report.poly_text(ident, None, certs) + f"delta0 = {o['delta0']} {'certified' if ok else 'not certified'}\n"
        return (EXIT_OK if ok else EXIT_NEGATIVE), text, text, None
    text = report.poly_text(ident)
    return EXIT_OK, text, text, None


def _mass_class(o, n):
    if o.get("class"):
        h = load_class(_read(o["class"], "class"), ManifoldModel.torus(n))
        return np.array(h.to_numpy(), dtype=complex)
    return np.eye(n, dtype=complex)


def _run_mass(cfg: RunConfig):
    from . import report
    from .mass import GridChart, run_ladder, single_chart, two_chart
    from .mass.grid import GridError

    o = cfg.options
    n = o.get("n") or 1
    if n not in (1, 2):
        raise InputError("mass runs support n = 1 and n = 2")
    layout = o.get("layout") or ("plane" if n == 1 else "slice")
    if layout == "tube":
        raise InputError("the tube layout carries no analytic subset; use plane (n=1) or slice (n=2)")
    res = o.get("resolution") or (512 if n == 1 else 128)
    eps = o.get("eps") or [0.2, 0.1, 0.05]
    try:
        chart = GridChart(n, res, layout)
    except GridError as exc:
        raise InputError(str(exc)) from None
    system = (two_chart if o.get("charts") == "two" else single_chart)(layout)
    alpha = _mass_class(o, n)
    runs = run_ladder(alpha, eps, system, chart)
    rep = mc.concentration_report(runs, p=o.get("p"), system_name=system.name)
    figures = None
    if o.get("figures") and cfg.out:
        from .plotting import mass_figures

        figures = lambda: mass_figures(rep, runs, cfg.out)  # noqa: E731
    return (EXIT_OK if rep.ok else EXIT_NEGATIVE), report.mass_text(rep), report.mass_csv(rep), figures


def _run_transport(cfg: RunConfig):
    from . import report

    o = cfg.options
    path = tr.load_family(_read(o.get("family"), "family"))
    cls_text = _read(o.get("class"), "class")
    alpha0 = load_class(cls_text, ManifoldModel.torus(path.n))
    steps = o.get("steps") or 1000
    if steps < tr.MIN_STEPS:
        raise InputError(f"--steps must be >= {tr.MIN_STEPS}")
    drift_tol = float(cfg.tolerances.get("drift", tr.DEFECT_TOL))
    try:
        result = tr.transport(path, alpha0, steps, tol=tr.DEFECT_TOL)
    except tr.FamilyError as exc:
        raise InputError(str(exc)) from None
    pairings = tr.all_pairings(result)
    inv = tr.verdict_invariance(result, every=max(1, steps // 100))
    ok = all(p.drift <= drift_tol for p in pairings) and inv.constant and result.norm_controlled
    figures = None
    if o.get("figures") and cfg.out:
        from .plotting import transport_figures

        figures = lambda: transport_figures(result, pairings, cfg.out)  # noqa: E731
    text = report.transport_text(result, pairings, inv, tr.BANNER, drift_tol)
    return (EXIT_OK if ok else EXIT_NEGATIVE), text, report.transport_csv(result, pairings, inv), figures


RUNNERS = {"check": _run_check, "poly": _run_poly, "mass": _run_mass, "transport": _run_transport}


def execute(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        tols = parse_tolerances(cfg.subcommand, [f"{k}={v}" for k, v in cfg.tolerances.items()])
        with _tightened(cfg.subcommand, tols):
            code, text, csv_text, figures = RUNNERS[cfg.subcommand](cfg)
        body = csv_text if cfg.fmt == "csv" else text
        if cfg.out:
            try:
                Path(cfg.out).write_text(body)
            except OSError as exc:
                raise InputError(f"cannot write {cfg.out}: {exc.strerror or exc}") from None
            if cfg.fmt == "csv":
                stdout.write(text)
            if figures is not None:
                for p in figures():
                    stdout.write(f"figure: {p}\n")
        else:
            stdout.write(body)
        return code
    except (InputError, ModelError, DimensionError, ExactnessError, PolyIdentityError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (ma.MASolverError, CertificationError, cone.LPSolverError, tr.TransportDefectError, ArithmeticError, np.linalg.LinAlgError) as exc:
        stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICAL
    except mc.InconsistentRunsError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except ValueError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


# ----------------------------------------------------------------------------
# argument parsing


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML file of option defaults; command-line flags win")
    common.add_argument("--out", help="output file (CSV or text); figures go next to it")
    common.add_argument("--format", choices=("text", "csv"), default=None)
    common.add_argument("--tol", action="append", metavar="NAME=VALUE", help="tighten a tolerance")

    parser = argparse.ArgumentParser(prog="kahlercone", description="Kahler-cone verdicts and experiments on finite models.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("check", parents=[common], help="cone verdicts for a class on a model")
    p.add_argument("--model")
    p.add_argument("--class", dest="class_")
    p.add_argument("--mode", choices=MODES)
    p.add_argument("--omega", help="reference Kahler class document")

    p = sub.add_parser("poly", parents=[common], help="the nef-certifying polynomial identity")
    p.add_argument("--p", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--find-delta0", action="store_true", default=None)
    p.add_argument("--delta0", help="certify a given rational delta0 for p <= n")

    p = sub.add_parser("mass", parents=[common], help="Monge-Ampere ladder and mass concentration")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--eps", type=float, action="append")
    p.add_argument("--resolution", type=int)
    p.add_argument("--class", dest="class_")
    p.add_argument("--charts", choices=("single", "two"))
    p.add_argument("--layout", choices=("plane", "slice"))
    p.add_argument("--figures", action="store_true", default=None)

    p = sub.add_parser("transport", parents=[common], help="(1,1) transport along a family of complex structures")
    p.add_argument("--family")
    p.add_argument("--class", dest="class_")
    p.add_argument("--steps", type=int)
    p.add_argument("--figures", action="store_true", default=None)
    return parser


def config_from_args(args) -> RunConfig:
    opts = {k.rstrip("_"): v for k, v in vars(args).items() if k not in ("subcommand", "config", "out", "format", "tol")}
    out, fmt, tols = args.out, args.format, list(args.tol or [])
    if args.config:
        data = yaml.safe_load(_read(args.config, "config")) or {}
        if not isinstance(data, dict):
            raise InputError("config file must be a mapping")
        for key, value in data.items():
            k = key.replace("-", "_")
            if k == "out":
                out = out or value
            elif k == "format":
                fmt = fmt or value
            elif k == "tol":
                given = {t.partition("=")[0] for t in tols}
                tols = [f"{n}={v}" for n, v in (value or {}).items() if n not in given] + tols
            elif k in opts:
                if opts[k] is None:
                    opts[k] = value
            else:
                raise InputError(f"unknown config key {key!r}")
    tol_map = {}
    for t in tols:
        name, sep, value = t.partition("=")
        if not sep:
            raise InputError(f"--tol expects NAME=VALUE, got {t!r}")
        tol_map[name] = value
    return RunConfig(args.subcommand, opts, tol_map, out, fmt or "text")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = config_from_args(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    return execute(cfg)


if __name__ == "__main__":
    sys.exit(main())
