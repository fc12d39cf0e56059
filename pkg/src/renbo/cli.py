"""Command-line front end.

    renbo binding | effpot | spectrum | radial | corrections | verify [options]

Output is JSON ({config, rows, summary, findings}) or CSV (one header line,
17 significant digits, summary and findings as trailing '#' lines).
Exit codes: 0 ok, 1 usage/config, 2 solver failure, 3 unstable fit,
4 invariant failure.
"""
from __future__ import annotations

import argparse
import dataclasses
import io
import json
import math
import sys
import warnings
from dataclasses import dataclass

import numpy as np

from . import checks, effpot, heavy, pert
from .binding import PhysicalParams, binding_point, w_asymptotic
from .errors import ConvergenceError, DomainError

EXIT_OK, EXIT_USAGE, EXIT_SOLVER, EXIT_FIT, EXIT_INVARIANT = 0, 1, 2, 3, 4

COLUMNS = {
    "binding": ["u", "w", "w2", "dw", "d2w", "w2_asym0", "w2_asym1", "residual", "status"],
    "effpot": ["u", "t1b", "t1c", "t1d", "t2", "t3a", "t3b", "total", "cross_coeff", "status"],
    "spectrum": ["n", "K_analytic", "K_shooting", "discrepancy", "energy_ratio", "energy", "status"],
    "radial": ["n", "z", "R"],
    "corrections": ["label", "closed", "quadrature", "discrepancy", "order_tag", "scale_c"],
    "verify": ["criterion", "name", "value", "tol", "passed"],
}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    mass_ratio: float = 1000.0
    m: float | None = None
    M: float | None = None
    hbar: float | None = None
    epsilon: float | None = None
    umin: float = 1e-3
    umax: float = 20.0
    ucount: int = 200
    ulog: bool = True
    beta2: str = "paper"
    levels: int = 4
    tol: float | None = None
    format: str = "json"
    out: str | None = None

    def __post_init__(self):
        if not (self.umin > 0.0 and self.umax > self.umin):
            raise UsageError(f"u grid needs 0 < umin < umax, got {self.umin}, {self.umax}")
        if self.ucount < 2:
            raise UsageError(f"ucount must be >= 2, got {self.ucount}")
        if not 1 <= self.levels <= 11:
            raise UsageError(f"levels must be in 1..11, got {self.levels}")
        if self.format not in ("json", "csv"):
            raise UsageError(f"format must be json or csv, got {self.format!r}")
        if self.tol is not None and not self.tol > 0.0:
            raise UsageError(f"tol must be > 0, got {self.tol}")
        if not self.mass_ratio >= 1.0:
            raise UsageError(f"mass ratio must be >= 1, got {self.mass_ratio}")
        dims = [self.m, self.M, self.hbar, self.epsilon]
        if any(v is not None for v in dims) and any(v is None for v in dims):
            raise UsageError("dimensional mode needs all of m, M, hbar, epsilon")
        if self.beta2 not in ("paper", "extracted"):
            try:
                v = float(self.beta2)
            except ValueError:
                raise UsageError(f"beta2 must be paper, extracted or a number, got {self.beta2!r}")
            if not v > 0.0:
                raise UsageError(f"beta2 must be > 0, got {v}")

    @property
    def dimensional(self):
        return self.m is not None

    def params(self):
        try:
            if self.dimensional:
                return PhysicalParams(m=self.m, M=self.M, hbar=self.hbar, epsilon=self.epsilon)
            return PhysicalParams.reduced(self.mass_ratio)
        except DomainError as exc:
            raise UsageError(str(exc))

    def grid(self):
        if self.ulog:
            return np.geomspace(self.umin, self.umax, self.ucount)
        return np.linspace(self.umin, self.umax, self.ucount)

    def as_dict(self):
        return dataclasses.asdict(self)


_FIELD_TYPES = {f.name: f.type for f in dataclasses.fields(RunConfig)}


def _coerce(key, text):
    if key not in _FIELD_TYPES:
        raise UsageError(f"unknown config key {key!r}")
    kind = _FIELD_TYPES[key]
    try:
        if key == "ulog":
            if text.lower() in ("1", "true", "yes", "on"):
                return True
            if text.lower() in ("0", "false", "no", "off"):
                return False
            raise ValueError(text)
        if "int" in kind:
            return int(text)
        if "float" in kind:
            return float(text)
    except ValueError:
        raise UsageError(f"bad value for {key}: {text!r}")
    return text


def read_config(path):
    """Flat key = value file; '#' starts a comment."""
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}")
    for num, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{num}: expected key = value")
        key, val = (s.strip() for s in line.split("=", 1))
        values[key.replace("-", "_")] = _coerce(key.replace("-", "_"), val)
    return values


# ---------------------------------------------------------------------------
# output


def _clean(v):
    if isinstance(v, (bool, str)) or v is None:
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else None
    if isinstance(v, dict):
        return {k: _clean(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_clean(x) for x in v]
    return str(v)


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)


def render(doc, fmt, columns):
    doc = _clean(doc)
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    buf.write(",".join(columns) + "\n")
    for row in doc["rows"]:
        buf.write(",".join(_fmt(row.get(c)) for c in columns) + "\n")
    for key, val in doc["summary"].items():
        buf.write(f"# {key}={json.dumps(val)}\n")
    for item in doc["findings"]:
        buf.write(f"# finding: {json.dumps(item)}\n")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# commands


def resolve_beta2(cfg):
    if cfg.beta2 == "paper":
        return effpot.CLAIMED_BETA2, "paper"
    if cfg.beta2 == "extracted":
        fit = effpot.beta_squared()
        return fit.value, "extracted"
    return float(cfg.beta2), "explicit"


def cmd_binding(cfg):
    rows, code = [], EXIT_OK
    for u in cfg.grid():
        try:
            p = binding_point(u)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                a0, a1 = w_asymptotic(u, 0), w_asymptotic(u, 1)
            rows.append(
                dict(u=u, w=p.w, w2=p.w**2, dw=p.dw, d2w=p.d2w, w2_asym0=a0, w2_asym1=a1,
                     residual=p.residual, status="ok")
            )
        except (ConvergenceError, DomainError):
            rows.append(dict(u=u, status="solver_failure"))
            code = EXIT_SOLVER
    worst = max((abs(r["residual"]) for r in rows if r["status"] == "ok"), default=None)
    return {"rows": rows, "summary": {"max_residual": worst}, "findings": []}, code


def _fit_record(label, fits, target):
    vals = [f.value for f in fits]
    return {
        "term": label,
        "value": vals[0],
        "windows": [list(f.window) for f in fits],
        "values": vals,
        "spread": checks.spread(fits),
        "stable": checks.spread(fits) <= 1e-3,
        "claimed": target,
    }


def cmd_effpot(cfg):
    rows = []
    for u in cfg.grid():
        tb = effpot.term_breakdown(u)
        row = tb.as_dict()
        row["status"] = "ok"
        rows.append(row)
    targets = {"(1_c)": 0.25, "(2)": -0.25, "(3_a)": 0.5}
    records = [
        _fit_record(label, checks.fit_over_windows(f), targets[label]) for label, f, _ in checks.ANCHORED
    ]
    adj = checks.adjudication()
    records.append(_fit_record("(1_d)", adj["(1_d)"], effpot.CLAIMED_T1D))
    records.append(_fit_record("total", adj["total"], effpot.CLAIMED_BETA2))
    summary = {"fits": records, "beta2_claimed": effpot.CLAIMED_BETA2, "beta2_extracted": adj["total"][0].value}
    code = EXIT_OK if all(r["stable"] for r in records) else EXIT_FIT
    return {"rows": rows, "summary": summary, "findings": checks.adjudication_findings(adj)}, code


def cmd_spectrum(cfg):
    params = cfg.params()
    beta2, source = resolve_beta2(cfg)
    rows, code = [], EXIT_OK
    for n in range(cfg.levels):
        lv = heavy.energy_level(n, params, beta2)
        try:
            ks = heavy.shoot_eigenvalue(n, beta2)
            status = "ok"
        except ConvergenceError:
            ks, status, code = None, f"shooting_failed_level_{n}", EXIT_SOLVER
        rows.append(
            dict(n=n, K_analytic=lv.K_analytic, K_shooting=ks,
                 discrepancy=None if ks is None else abs(ks - lv.K_analytic),
                 energy_ratio=lv.energy_ratio, energy=lv.energy_ratio * params.energy_unit, status=status)
        )
    ez = heavy.expect_z(params, beta2)
    summary = {
        "beta2": beta2,
        "beta2_source": source,
        "z0": params.z0,
        "expect_z": ez,
        "expect_z_over_zeta0": ez / params.zeta0,
        "expect_z_over_z0": ez / params.z0,
        "corrections": {r.label: r.closed for r in pert.all_corrections(params, beta2)},
    }
    findings = [checks.energy_finding(params, beta2), checks.z0_finding(params)]
    return {"rows": rows, "summary": summary, "findings": findings}, code


def cmd_radial(cfg):
    params = cfg.params()
    beta2, source = resolve_beta2(cfg)
    rows, norms = [], {}
    for n in range(cfg.levels):
        wave = heavy.radial_wavefunction(n, beta2, params.z0)
        rows.extend(dict(n=n, z=z, R=r) for z, r in zip(wave.z, wave.R))
        norms[str(n)] = {
            "C": wave.C,
            "norm_quadrature": heavy.density_moment(params, beta2, lambda z: 1.0, n),
            "interior_zeros": wave.interior_zeros(),
        }
    return {"rows": rows, "summary": {"beta2": beta2, "beta2_source": source, "levels": norms},
            "findings": []}, EXIT_OK


def cmd_corrections(cfg):
    params = cfg.params()
    beta2, source = resolve_beta2(cfg)
    reps = pert.all_corrections(params, beta2)
    rows = [
        dict(label=r.label, closed=r.closed, quadrature=r.quadrature, discrepancy=r.discrepancy,
             order_tag=r.order_tag, scale_c=r.scale_c)
        for r in reps
    ]
    summary = {
        "beta2": beta2,
        "beta2_source": source,
        "E0_ratio": heavy.energy_level(0, params, beta2).energy_ratio,
        "anticommutator_shift": pert.anticommutator_shift(params, beta2),
        "all_agree": all(r.agrees for r in reps),
    }
    code = EXIT_OK if summary["all_agree"] else EXIT_INVARIANT
    return {"rows": rows, "summary": summary, "findings": []}, code


def cmd_verify(cfg):
    results, fits = checks.run_all(cfg.tol)
    rows = [c.as_dict() for c in results]
    failed = [c.name for c in results if not c.passed]
    params = cfg.params()
    findings = checks.adjudication_findings(fits) + [
        checks.energy_finding(params, effpot.CLAIMED_BETA2),
        checks.z0_finding(params),
    ]
    summary = {"checks": len(results), "failed": failed}
    return {"rows": rows, "summary": summary, "findings": findings}, EXIT_INVARIANT if failed else EXIT_OK


COMMANDS = {
    "binding": cmd_binding,
    "effpot": cmd_effpot,
    "spectrum": cmd_spectrum,
    "radial": cmd_radial,
    "corrections": cmd_corrections,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="renbo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(
            name,
            help=f"{name} table",
            epilog="CSV columns: " + ",".join(COLUMNS[name]),
        )
        p.add_argument("--config", help="flat key = value file")
        p.add_argument("--umin", type=float)
        p.add_argument("--umax", type=float)
        p.add_argument("--ucount", type=int)
        p.add_argument("--ulog", choices=["true", "false"])
        p.add_argument("--beta2", help="paper | extracted | <value>")
        p.add_argument("--mass-ratio", dest="mass_ratio", type=float)
        p.add_argument("--levels", type=int)
        p.add_argument("--format", choices=["csv", "json"])
        p.add_argument("--out")
        p.add_argument("--tol", type=float)
    return parser


def make_config(args):
    values = read_config(args.config) if args.config else {}
    for key in ("umin", "umax", "ucount", "beta2", "mass_ratio", "levels", "format", "out", "tol"):
        v = getattr(args, key)
        if v is not None:
            values[key] = v
    if args.ulog is not None:
        values["ulog"] = args.ulog == "true"
    return RunConfig(**values)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args)
        doc, code = COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"renbo: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"renbo: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    doc = {"config": cfg.as_dict(), **doc}
    text = render(doc, cfg.format, COLUMNS[args.command])
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
