"""Config-driven experiment runner.

    opuc run <config.json> [--out DIR] [--jobs N]
    opuc bands --period p --beta <list> [--tol T]
    opuc oracle --gamma G --omega W --n N

Each run writes ``summary.json`` and ``table.csv``.  The exit status is 0 iff
every tolerance gate passed, 1 if a gate failed, and 2 when the run could not
be carried out (the error class name goes to stderr).
"""
from __future__ import annotations

import argparse
import cmath
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from . import asymptotics as asy
from .coeffs import CoefficientSequence, custom, describe, make_sequence, parse_complex
from .errors import ConfigError, OpucError
from .jacobi_bridge import (
    JacobiSpec,
    bv_propagation_check,
    gap_endpoint_check,
    interleave_opuc,
    sieved_alphas,
)
from .pointmass import (
    PointMassSpec,
    deltas_from_trajectory,
    geronimus_sequence,
    moment_oracle_alpha,
    perturbed_coefficients,
    simon_alpha,
)
from .spectral import compute_bands, delta_infinity, limit_phase, period_traces
from .szego import trajectory

SCENARIOS = ("theorem1", "theorem2", "theorem3", "corollary1", "appendix", "oracle_check", "bands")
CSV_VERSION = 1
CSV_COLUMNS = ("n", "re", "im", "abs_err", "bv", "log_scale", "flags")
SEED_ENV = "OPUC_SEED"  # reserved; every computation here is deterministic

DEFAULT_TOLS = {
    "theorem1": {"limit": 1e-6},
    "theorem2": {"cauchy": 1e-5, "interior": 1e-2},
    "theorem3": {"limit": 1e-4, "identity": 1e-10},
    "corollary1": {"limit": 0.1},
    "appendix": {"limit": 1e-4, "residual": 1e-12, "edge": 1e-3},
    "oracle_check": {"discrepancy": 1e-8},
    "bands": {"edge": 1e-8},
}


# -- configuration ------------------------------------------------------------

@dataclass
class ExperimentConfig:
    scenario: str
    sequence: dict | None = None
    points: list[dict] = field(default_factory=list)
    n_max: int = 1000
    checkpoints: list[int] = field(default_factory=list)
    tolerances: dict = field(default_factory=dict)
    format: str = "csv"
    name: str | None = None
    jacobi: dict | None = None
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        if not isinstance(raw, dict):
            raise ConfigError("a run configuration must be a JSON object")
        scenario = raw.get("scenario")
        if scenario not in SCENARIOS:
            raise ConfigError(f"scenario must be one of {SCENARIOS}, got {scenario!r}")
        points = raw.get("points")
        if points is None:
            points = [raw["point"]] if "point" in raw else []
        if not isinstance(points, list) or not all(isinstance(p, dict) for p in points):
            raise ConfigError("'points' must be a list of objects")
        n_max = raw.get("n_max", 1000)
        if not isinstance(n_max, int) or isinstance(n_max, bool) or n_max < 1:
            raise ConfigError("'n_max' must be a positive integer")
        checkpoints = raw.get("checkpoints") or [n_max]
        if (not all(isinstance(k, int) and not isinstance(k, bool) and 0 <= k <= n_max for k in checkpoints)
                or list(checkpoints) != sorted(checkpoints)):
            raise ConfigError("'checkpoints' must be sorted integers in [0, n_max]")
        tols = dict(DEFAULT_TOLS[scenario])
        user_tols = raw.get("tolerances", {})
        if not isinstance(user_tols, dict):
            raise ConfigError("'tolerances' must be an object")
        for key, val in user_tols.items():
            if not isinstance(val, (int, float)) or isinstance(val, bool) or not val > 0:
                raise ConfigError(f"tolerance {key!r} must be a positive number")
            tols[key] = float(val)
        fmt = raw.get("format", "csv")
        if fmt != "csv":
            raise ConfigError("only the 'csv' output format is supported")
        known = {"scenario", "sequence", "points", "point", "n_max", "checkpoints", "tolerances",
                 "format", "name", "jacobi"}
        extra = {k: v for k, v in raw.items() if k not in known}
        return cls(scenario, raw.get("sequence"), points, n_max, list(checkpoints), tols, fmt,
                   raw.get("name"), raw.get("jacobi"), extra)

    def seq(self) -> CoefficientSequence:
        if self.sequence is None:
            raise ConfigError(f"scenario {self.scenario!r} needs a 'sequence'")
        return make_sequence(self.sequence)

    def point_specs(self, required: bool = True) -> list[PointMassSpec]:
        out = []
        for p in self.points:
            try:
                out.append(PointMassSpec(float(p["omega"]), float(p.get("gamma", 0.5))))
            except KeyError:
                raise ConfigError("every point needs an 'omega'") from None
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        if required and not out:
            raise ConfigError(f"scenario {self.scenario!r} needs at least one point")
        return out


def load_config(path: str | Path) -> list[ExperimentConfig]:
    """One run, or several under a top-level ``runs`` list."""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if isinstance(raw, dict) and "runs" in raw:
        runs = raw["runs"]
        if not isinstance(runs, list) or not runs:
            raise ConfigError("'runs' must be a non-empty list")
        return [ExperimentConfig.from_dict(r) for r in runs]
    return [ExperimentConfig.from_dict(raw)]


# -- results ----------------------------------------------------------------------

@dataclass
class RunResult:
    scenario: str
    rows: list[tuple] = field(default_factory=list)
    gates: list[dict] = field(default_factory=list)
    reports: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    def gate(self, name: str, value: float, tol: float, passed: bool | None = None) -> None:
        ok = bool(value < tol) if passed is None else bool(passed)
        self.gates.append({"name": name, "value": _jsonable(value), "tol": tol, "passed": ok})

    @property
    def passed(self) -> bool:
        return all(g["passed"] for g in self.gates)


def _jsonable(x: Any) -> Any:
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": _jsonable(float(x.real)), "im": _jsonable(float(x.imag))}
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else repr(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in x]
    return x


def _report(rep: asy.LimitReport) -> dict:
    return _jsonable({
        "estimate": complex(rep.estimate),
        "method": rep.method,
        "err_indicator": rep.err_indicator,
        "bv_partial": rep.bv_partial,
        "n_used": rep.n_used,
        "flags": list(rep.flags),
        "extras": rep.extras,
    })


def _fmt(x: Any) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return "%.17g" % float(x)


def write_csv(path: Path, rows: list[tuple], scenario: str) -> None:
    lines = [f"# opuc-table v{CSV_VERSION} scenario={scenario} columns={','.join(CSV_COLUMNS)}",
             ",".join(CSV_COLUMNS)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_summary(path: Path, payload: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n")


# -- scenarios -------------------------------------------------------------------------

def _delta_rows(deltas, traj, checkpoints, expected, flags="") -> list[tuple]:
    bv = np.concatenate(([0.0], np.cumsum(np.abs(np.diff(deltas)))))
    rows = []
    for n in checkpoints:
        d = complex(deltas[n])
        err = abs(d - expected) if expected is not None else math.nan
        rows.append((n, d.real, d.imag, err, bv[n], float(traj.s[n]) if traj is not None else math.nan, flags))
    return rows


def run_theorem1(cfg: ExperimentConfig) -> RunResult:
    """Single point, or several points added one after another (compose_points)."""
    res = RunResult("theorem1")
    specs = cfg.point_specs()
    base: CoefficientSequence | np.ndarray = cfg.seq()
    part = base.periodic_part
    L = part[0] if part is not None and len(part) == 1 else None
    prev_base = None
    prev_spec = None
    n = cfg.n_max
    for stage, spec in enumerate(specs, start=1):
        key = f"stage{stage}"
        same = prev_spec is not None and abs(cmath.exp(1j * spec.omega) - prev_spec.zeta) < 1e-12
        if same:
            two = asy.pure_point_delta_sequence(prev_base, prev_spec, n + 1, gamma2=spec.gamma)
            idx = np.arange(n // 10, n + 1)
            slope, _, r2 = asy.log_linear_fit(idx, two.log_abs[idx])
            rows = []
            for k in cfg.checkpoints:
                d = complex(two.delta[k])
                rows.append((k, d.real, d.imag, abs(d), math.nan, float(two.log_abs[k]), f"{key};pure_point"))
            res.rows += rows
            res.reports[key] = {"pure_point": True, "slope": slope, "r2": r2,
                                "log_abs_final": float(two.log_abs[-1])}
            res.gate(f"{key}.slope_negative", slope, 0.0)
            res.gate(f"{key}.r2", 1.0 - r2, 1.0 - 0.99)
            # the next stage, if any, continues from the perturbed table
            base_next = custom(two.alphas_stage1 + two.delta)
        else:
            traj = trajectory(base, spec.zeta, n + 1)
            deltas = deltas_from_trajectory(traj, spec)
            expected = None
            if L is not None and L != 0:
                try:
                    expected = delta_infinity(L, spec.omega)
                except OpucError:
                    expected = None
            rep = asy.delta_limit(base, spec, n)
            res.rows += _delta_rows(deltas, traj, cfg.checkpoints, expected, key)
            info = _report(rep)
            info["expected"] = _jsonable(expected) if expected is not None else None
            res.reports[key] = info
            if expected is not None:
                res.gate(f"{key}.limit", abs(deltas[n] - expected), cfg.tolerances["limit"])
                res.gate(f"{key}.modulus", abs(abs(expected + L) - abs(L)), 1e-12)
                L = limit_phase(L, spec.omega)  # limit of the perturbed coefficients
            else:
                res.gate(f"{key}.cauchy", rep.err_indicator, cfg.tolerances["limit"])
            base_next = custom(geronimus_sequence(base, spec, n + 2))
        prev_base, prev_spec, base = base, spec, base_next
    return res


def run_theorem2(cfg: ExperimentConfig) -> RunResult:
    res = RunResult("theorem2")
    seq = cfg.seq()
    beta = seq.periodic_part
    if beta is None:
        raise ConfigError("theorem2 needs a periodic or periodic_plus_decay sequence")
    p = len(beta)
    specs = cfg.point_specs(required=False)
    if not specs:
        geo = compute_bands(beta)
        if not geo.arcs:
            raise ConfigError("no gap found; give an explicit point")
        specs = [PointMassSpec(geo.midpoints()[0], float(cfg.extra.get("gamma", 0.5)))]
    spec = specs[0]
    k_max = cfg.n_max // p
    reps = asy.periodic_residue_limits(seq, p, spec, k_max)
    deltas = asy.delta_sequence(seq, spec, k_max * p - 1)
    for n in cfg.checkpoints:
        if n < len(deltas):
            d = complex(deltas[n])
            ref = reps[n % p].estimate
            res.rows.append((n, d.real, d.imag, abs(d - ref), math.nan, math.nan, f"residue{n % p}"))
    for j, rep in enumerate(reps):
        res.reports[f"residue{j}"] = _report(rep)
        if asy.BAND_INTERIOR in rep.flags:
            res.gate(f"residue{j}.interior_tail", rep.extras["tail_abs_max"], cfg.tolerances["interior"])
        else:
            res.gate(f"residue{j}.cauchy", abs(rep.estimate - rep.extras["half_horizon_estimate"]),
                     cfg.tolerances["cauchy"])
    stride = asy.bv_partial_sums(deltas, p)
    res.info["bv_stride_half"] = float(stride[len(stride) // 2 - 1])
    res.info["bv_stride_full"] = float(stride[-1])
    res.info["omega"] = spec.omega
    return res


def run_theorem3(cfg: ExperimentConfig) -> RunResult:
    res = RunResult("theorem3")
    seq = cfg.seq()
    if seq.kind != "twisted":
        raise ConfigError("theorem3 needs a twisted sequence")
    specs = cfg.point_specs(required=False)
    gamma = specs[0].gamma if specs else float(cfg.extra.get("gamma", 0.5))
    rep = asy.twisted_limit_check(seq.limit, seq.zeta, gamma, cfg.n_max)
    res.reports["twisted"] = _report(rep)
    expected = -2.0 * complex(seq.limit)
    spec = PointMassSpec(cmath.phase(seq.zeta), gamma)
    traj = trajectory(seq, spec.zeta, cfg.n_max + 1)
    deltas = deltas_from_trajectory(traj, spec) * np.power(seq.zeta, np.arange(cfg.n_max + 1))
    res.rows += _delta_rows(deltas, traj, cfg.checkpoints, expected, "twisted")
    res.gate("limit", abs(rep.estimate - expected), cfg.tolerances["limit"])
    res.gate("direct_tail", abs(rep.extras["direct"] - expected), cfg.tolerances["limit"])
    res.gate("identity", rep.extras["identity_max_residual"], cfg.tolerances["identity"])
    return res


def run_corollary1(cfg: ExperimentConfig) -> RunResult:
    res = RunResult("corollary1")
    seq = cfg.seq()
    if seq.kind != "constant_plus_decay":
        raise ConfigError("corollary1 needs a constant_plus_decay sequence")
    L = complex(seq.limit)
    if L.imag != 0 or not L.real < 0:
        raise ConfigError("corollary1 needs a negative real limit L")
    specs = cfg.point_specs(required=False)
    gamma = specs[0].gamma if specs else float(cfg.extra.get("gamma", 0.5))
    rep = asy.corollary1_rate(L.real, seq.decay, gamma, cfg.n_max, cfg.checkpoints)
    default = rep.extras["expected"]
    if "expected" not in cfg.extra and default is None:
        raise ConfigError("no first-order limit for this decay; give 'expected' explicitly")
    expected = float(cfg.extra.get("expected", default))
    res.reports["rate"] = _report(rep)
    ratios = rep.extras["checkpoints"]
    for n in cfg.checkpoints:
        if n in ratios:
            res.rows.append((n, ratios[n], 0.0, abs(ratios[n] - expected), math.nan, math.nan, "ratio"))
    res.gate("limit", abs(rep.estimate.real - expected), cfg.tolerances["limit"])
    dists = [abs(ratios[n] - expected) for n in sorted(ratios)]
    res.gate("monotone", float(sum(b >= a for a, b in zip(dists, dists[1:]))), 0.5)
    if "aux" in cfg.tolerances:
        res.gate("aux", abs(rep.extras["aux_ratio"] - rep.extras["aux_limit"]), cfg.tolerances["aux"])
    return res


def _jacobi(cfg: ExperimentConfig) -> JacobiSpec:
    j = cfg.jacobi
    if not isinstance(j, dict) or "y" not in j:
        raise ConfigError("appendix needs a 'jacobi' object with 'y' and 'a'")
    y = float(j["y"])
    a = j.get("a", {"form": "free"})
    form = a.get("form")
    try:
        if form == "power":
            return JacobiSpec.power(float(a["exponent"]), y)
        if form == "geometric":
            return JacobiSpec.geometric(float(a["ratio"]), y)
        if form == "free":
            return JacobiSpec.free(y)
    except KeyError as exc:
        raise ConfigError(f"jacobi 'a' of form {form!r} is missing {exc}") from None
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    raise ConfigError(f"unknown jacobi form {form!r}")


def run_appendix(cfg: ExperimentConfig) -> RunResult:
    res = RunResult("appendix")
    spec = _jacobi(cfg)
    rep = bv_propagation_check(spec, cfg.n_max)
    alphas = sieved_alphas(spec, cfg.n_max)
    bv = np.concatenate(([0.0], np.cumsum(np.abs(np.diff(alphas)))))
    for n in cfg.checkpoints:
        res.rows.append((n, alphas[n], 0.0, abs(alphas[n] + spec.a_y), bv[n], math.nan, "sieved"))
    res.reports["sieved"] = _report(rep)
    res.info["interleaved_head"] = [float(v) for v in interleave_opuc(alphas[:4])]
    res.gate("limit", rep.extras["distance_to_limit"], cfg.tolerances["limit"])
    res.gate("interleave_residual", rep.extras["interleave_max_residual"], cfg.tolerances["residual"])
    res.gate("increment_residual", rep.extras["increment_max_residual"], cfg.tolerances["residual"])
    res.gate("negative", rep.extras["max_alpha"], 0.0)
    res.gate("admissible", -rep.extras["min_alpha"], 1.0)
    res.gate("gap_edge", gap_endpoint_check(spec), cfg.tolerances["edge"])
    return res


def oracle_discrepancy(spec: PointMassSpec, n: int) -> tuple[float, np.ndarray]:
    """Largest disagreement among the formula routes and the moment oracle on the free base."""
    zeros = np.zeros(n + 2, dtype=complex)
    oracle = moment_oracle_alpha("free", spec, n)
    ger = geronimus_sequence(zeros, spec, n + 1)
    dlt = perturbed_coefficients(zeros, spec, n + 1)
    sim = np.array([simon_alpha(zeros, spec, k) for k in range(n + 1)])
    worst = np.max(np.abs(np.stack([ger - oracle, dlt - oracle, sim - oracle, ger - sim, ger - dlt])), axis=0)
    return float(np.max(worst)), oracle


def run_oracle_check(cfg: ExperimentConfig) -> RunResult:
    res = RunResult("oracle_check")
    for i, spec in enumerate(cfg.point_specs()):
        worst, oracle = oracle_discrepancy(spec, cfg.n_max)
        for n in cfg.checkpoints:
            res.rows.append((n, oracle[n].real, oracle[n].imag, worst, math.nan, math.nan, f"point{i}"))
        res.reports[f"point{i}"] = {"omega": spec.omega, "gamma": spec.gamma, "max_discrepancy": worst}
        res.gate(f"point{i}.discrepancy", worst, cfg.tolerances["discrepancy"])
    return res


def bands_rows(beta, tol: float) -> tuple[list[tuple], Any]:
    geo = compute_bands(beta, tol=tol)
    rows = []
    for i, (lo, hi) in enumerate(geo.arcs):
        res_lo, res_hi = (abs(abs(t) - 2.0) for t in period_traces(beta, np.array([lo, hi])))
        rows.append((2 * i, lo, 0.0, res_lo, math.nan, math.nan, "gap_start"))
        rows.append((2 * i + 1, hi, 0.0, res_hi, math.nan, math.nan, "gap_end"))
    return rows, geo


def run_bands(cfg: ExperimentConfig) -> RunResult:
    res = RunResult("bands")
    seq = cfg.seq()
    beta = seq.periodic_part
    if beta is None:
        raise ConfigError("bands needs a constant or periodic sequence")
    tol = float(cfg.extra.get("bisect_tol", 1e-12))
    res.rows, geo = bands_rows(beta, tol)
    res.reports["bands"] = {"arcs": [list(a) for a in geo.arcs], "band_count": geo.band_count,
                            "period": geo.period}
    if len(beta) == 1 and beta[0] != 0:
        half = 2.0 * math.asin(abs(beta[0]))
        lo, hi = geo.arcs[0]
        res.gate("edge", max(abs(lo + half), abs(hi - half)), cfg.tolerances["edge"])
    return res


RUNNERS = {
    "theorem1": run_theorem1,
    "theorem2": run_theorem2,
    "theorem3": run_theorem3,
    "corollary1": run_corollary1,
    "appendix": run_appendix,
    "oracle_check": run_oracle_check,
    "bands": run_bands,
}


def execute(cfg: ExperimentConfig) -> RunResult:
    return RUNNERS[cfg.scenario](cfg)


def _execute_safe(cfg: ExperimentConfig) -> tuple[RunResult | None, str | None]:
    try:
        return execute(cfg), None
    except (OpucError, ValueError, ArithmeticError) as exc:
        return None, f"{type(exc).__name__}: {exc}"


def _summary(cfg: ExperimentConfig, result: RunResult) -> dict:
    return {
        "scenario": cfg.scenario,
        "name": cfg.name,
        "sequence": describe(make_sequence(cfg.sequence)) if cfg.sequence else None,
        "n_max": cfg.n_max,
        "passed": result.passed,
        "gates": result.gates,
        "reports": result.reports,
        "info": result.info,
        "version": CSV_VERSION,
    }


def run_configs(configs: list[ExperimentConfig], out: Path, jobs: int = 1) -> int:
    out.mkdir(parents=True, exist_ok=True)
    if jobs > 1 and len(configs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_execute_safe, configs))
    else:
        outcomes = [_execute_safe(c) for c in configs]
    single = len(configs) == 1
    status = 0
    merged = []
    for i, (cfg, (result, err)) in enumerate(zip(configs, outcomes)):
        key = cfg.name or f"run{i:03d}_{cfg.scenario}"
        if err is not None:
            print(err, file=sys.stderr)
            status = 2
            merged.append({"key": key, "error": err})
            continue
        target = out if single else out / key
        target.mkdir(parents=True, exist_ok=True)
        write_csv(target / "table.csv", result.rows, cfg.scenario)
        summary = _summary(cfg, result)
        write_summary(target / "summary.json", summary)
        for g in result.gates:
            mark = "PASS" if g["passed"] else "FAIL"
            print(f"{mark} {key} {g['name']} value={g['value']} tol={g['tol']}")
        if not result.passed and status == 0:
            status = 1
        merged.append({"key": key, "passed": result.passed})
    if not single:
        write_summary(out / "summary.json", {"runs": sorted(merged, key=lambda r: r["key"])})
    return status


# -- entry points -----------------------------------------------------------------------

def _parse_beta(text: str) -> list[complex]:
    text = text.strip()
    if text.startswith("["):
        try:
            return [parse_complex(v) for v in json.loads(text)]
        except json.JSONDecodeError as exc:
            raise ConfigError(f"cannot parse beta list: {exc}") from None
    try:
        return [complex(v.strip().replace(" ", "")) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"cannot parse beta list: {exc}") from None


def _cmd_run(args) -> int:
    configs = load_config(args.config)
    return run_configs(configs, Path(args.out), max(1, args.jobs))


def _cmd_bands(args) -> int:
    beta = _parse_beta(args.beta)
    if args.period is not None and args.period != len(beta):
        raise ConfigError(f"--period {args.period} does not match {len(beta)} beta values")
    rows, geo = bands_rows(beta, args.tol)
    print(f"# opuc-bands v{CSV_VERSION} period={len(beta)} gaps={geo.gap_count}")
    print("index,theta,trace_residual,kind")
    for idx, theta, _, resid, _, _, kind in rows:
        print(f"{idx},{_fmt(theta)},{_fmt(resid)},{kind}")
    return 0


def _cmd_oracle(args) -> int:
    spec = PointMassSpec(args.omega, args.gamma)
    worst, _ = oracle_discrepancy(spec, args.n)
    ok = worst < args.tol
    print(f"max discrepancy {worst:.3e} over n <= {args.n} ({'PASS' if ok else 'FAIL'} at {args.tol:g})")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="opuc", description="Point-mass perturbation experiments on the unit circle.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("run", help="run the experiment(s) described by a JSON config")
    p.add_argument("config")
    p.add_argument("--out", default="opuc-out")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_run)
    p = sub.add_parser("bands", help="print the gap edges of periodic coefficients")
    p.add_argument("--period", type=int)
    p.add_argument("--beta", required=True, help="comma-separated or JSON list")
    p.add_argument("--tol", type=float, default=1e-12)
    p.set_defaults(func=_cmd_bands)
    p = sub.add_parser("oracle", help="compare the perturbation formulas with the moment oracle")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=_cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OpucError, ValueError, ArithmeticError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
