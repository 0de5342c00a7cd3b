"""Command-line experiment runner.

Every subcommand builds a configuration (embedded defaults, then an
optional JSON file given with ``--config``, then ``--set key.path=value``
overrides and subcommand shortcuts), runs one pipeline, and writes its
artifacts and a ``manifest.json`` into the run directory.  The run directory
is ``--out`` if given, else ``$GKDV_OUTPUT_ROOT/<kind>-<config hash>``
(``./gkdv-runs`` when the variable is unset).

Exit status: 0 when every diagnostic passes, 1 when one fails, 2 for usage
and configuration errors (the message names the offending key path).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import platform
import sys
import time
import warnings
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__
from .config import DEFAULTS, ConfigError, load_config
from .flow import FlowConfig, FlowError, cauchy_rate, evolve
from .gauge import apply_gauge
from .invariance import (conservation_report, invariance_test, jacobian_det, parse_observables, scale_map,
                         vector_field_divergence)
from .io import atomic_write, load_field, write_ensemble, write_field, write_trajectory
from .resonance import (cancellation_identity_check, counting_lemma_sweep, count_resonant_tuples,
                        kdv_factorization_check, matrix_norm_bound, root_count_sweep, verify_zeta2_lower_bound)
from .spectral import SpectralField
from .sampler import (InsufficientESS, WienerSpec, sample_gibbs, sample_gibbs_ensemble, sample_wiener,
                      wiener_coeffs)
from .xsb import calculus_inequality_check, linear_window_ratios, parseval_check, smoothing_diagnostic

ENV_OUTPUT_ROOT = "GKDV_OUTPUT_ROOT"
DEFAULT_OUTPUT_ROOT = "gkdv-runs"
MANIFEST = "manifest.json"


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _flow_config(section: dict, N: int, T: float | None = None) -> FlowConfig:
    kw = {k: section[k] for k in ("dt", "integrator", "variant", "nonlin_coeff", "output_stride", "adaptive", "courant")}
    if section.get("max_dt") is not None:
        kw["max_dt"] = section["max_dt"]
    try:
        return FlowConfig(N=N, T=section.get("T", 1.0) if T is None else T, **kw)
    except ValueError as exc:
        key = "flow.dt" if "dt" in str(exc) else "flow"
        raise ConfigError(key, str(exc)) from None


def _initial_data(data: dict, base: Path):
    spec = WienerSpec(data["N"], data["seed"], data["stream_id"])
    if data["kind"] == "wiener":
        return sample_wiener(spec)
    if data["kind"] == "gibbs":
        return sample_gibbs(spec, data["B"])
    if not data["path"]:
        raise ConfigError("data.path", "required when data.kind is 'file'")
    path = Path(data["path"])
    if not path.is_absolute():
        path = base / path
    try:
        return load_field(path)
    except (OSError, ValueError) as exc:
        raise ConfigError("data.path", str(exc)) from None


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(float(x)) if isinstance(x, (float, np.floating)) else x for x in r])
    return buf.getvalue()


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return v if math.isfinite(v) else repr(v)
    return obj


def _sobolev_seeds(seed: int, count: int, N: int, stream: int = 0) -> np.ndarray:
    return wiener_coeffs(WienerSpec(N, seed, stream), count)


# ---------------------------------------------------------------------------
# pipelines; each returns (passed, results, {artifact name: bytes or str})
# ---------------------------------------------------------------------------

def run_sample(cfg, out, base):
    spec = WienerSpec(cfg["N"], cfg["seed"], cfg["stream_id"])
    ens = sample_gibbs_ensemble(spec, cfg["B"], cfg["M"])
    write_ensemble(out / "ensemble.bin", ens)
    res = {"ess": ens.ess, "accepted": int(np.count_nonzero(ens.weights)), "M": ens.M}
    return ens.ess >= cfg["min_ess"], res, {}


def run_evolve(cfg, out, base):
    f0 = _initial_data(cfg["data"], base)
    traj = evolve(f0, _flow_config(cfg["flow"], f0.max_mode))
    write_trajectory(out / "trajectory.bin", traj)
    rep = conservation_report(traj)
    return True, {"steps_out": len(traj), "l2_drift": rep.l2_drift, "H_drift": rep.H_drift}, {}


def run_gauge(cfg, out, base):
    f0 = _initial_data(cfg["data"], base)
    flow = cfg["flow"]
    source = "ungauged" if cfg["direction"] == "forward" else "gauged"
    traj = evolve(f0, replace(_flow_config(flow, f0.max_mode), variant=source))
    mapped = apply_gauge(traj, cfg["direction"])
    back = apply_gauge(mapped, "inverse" if cfg["direction"] == "forward" else "forward")
    err = float(np.max(np.abs(back.states - traj.states)))
    write_trajectory(out / "trajectory.bin", mapped)
    return err <= cfg["tol"], {"roundtrip_error": err, "direction": cfg["direction"]}, {}


def run_conserve(cfg, out, base):
    f0 = _initial_data(cfg["data"], base)
    write_field(out / "initial.bin", f0)
    traj = evolve(f0, _flow_config(cfg["flow"], f0.max_mode))
    rep = conservation_report(traj)
    l2d = np.abs(rep.l2 - rep.l2[0]) / rep.l2[0]
    Hd = np.abs(rep.H - rep.H[0]) / (abs(rep.H[0]) or 1.0)
    table = _csv(["t", "l2", "H", "l2_rel_drift", "H_rel_drift"],
                 zip(rep.times, rep.l2, rep.H, l2d, Hd))
    passed = rep.l2_drift <= cfg["l2_tol"] and rep.H_drift <= cfg["H_tol"]
    res = {"l2_drift": rep.l2_drift, "H_drift": rep.H_drift, "l2_tol": cfg["l2_tol"], "H_tol": cfg["H_tol"],
           "H0": float(rep.H[0]), "l2_0": float(rep.l2[0])}
    return passed, res, {"report.csv": table}


def run_liouville(cfg, out, base):
    rows, worst = [], 0.0
    for N in cfg["Ns"]:
        flow = _flow_config(cfg["flow"], N, 1.0)
        c = _sobolev_seeds(cfg["seed"], cfg["samples"], N)
        for i, ci in enumerate(c):
            for t in cfg["times"]:
                d = jacobian_det(N, SpectralField(ci), t, flow)
                worst = max(worst, abs(d - 1))
                rows.append((N, i, t, d, abs(d - 1)))
    div = cfg["divergence"]
    drows, dworst = [], 0.0
    for N in div["Ns"]:
        c = _sobolev_seeds(cfg["seed"], div["samples"], N, stream=1)
        vals = [vector_field_divergence(N, SpectralField(ci)) for ci in c]
        m = float(np.max(np.abs(vals)))
        dworst = max(dworst, m)
        drows.append((N, div["samples"], m))
    passed = worst <= cfg["det_tol"] and dworst <= div["tol"]
    res = {"max_det_error": worst, "det_tol": cfg["det_tol"], "max_divergence": dworst, "div_tol": div["tol"]}
    return passed, res, {"jacobian.csv": _csv(["N", "sample", "t", "det", "abs_err"], rows),
                         "divergence.csv": _csv(["N", "samples", "max_abs_divergence"], drows)}


def run_invariance(cfg, out, base):
    ens = sample_gibbs_ensemble(WienerSpec(cfg["N"], cfg["seed"], cfg["stream_id"]), cfg["B"], cfg["M"])
    obs = parse_observables(cfg["observables"])
    flow = _flow_config(cfg["flow"], cfg["N"], cfg["T"])
    res = {"ess": ens.ess}
    try:
        rep = invariance_test(ens, cfg["T"], flow, obs, threshold=cfg["threshold"])
    except InsufficientESS as exc:
        res["error"] = str(exc)
        return False, res, {}
    res["flow"] = rep.to_dict()
    passed = rep.passed
    rows = [("flow", o.name, o.mean_t0, o.mean_tT, o.z, o.z_paired) for o in rep.observables]
    if cfg["control_factor"] is not None:
        ctl = invariance_test(ens, cfg["T"], flow, obs, premap=scale_map(cfg["control_factor"]),
                              threshold=cfg["threshold"])
        res["control"] = ctl.to_dict()
        res["control_rejected"] = not ctl.passed
        passed = passed and not ctl.passed
        rows += [("control", o.name, o.mean_t0, o.mean_tT, o.z, o.z_paired) for o in ctl.observables]
    return passed, res, {"z_table.csv": _csv(["map", "observable", "mean_t0", "mean_T", "z", "z_paired"], rows)}


def run_smoothing(cfg, out, base):
    Nmax = cfg["Ns"][-1]
    spec = WienerSpec(Nmax, cfg["seed"], cfg["stream_id"])
    ens = sample_gibbs_ensemble(spec, cfg["B"], cfg["samples"])
    # samples outside the cutoff carry zero Gibbs weight; the medians are unweighted
    c = ens.coeffs[ens.weights > 0]
    flow = _flow_config(cfg["flow"], Nmax, cfg["T"])
    tab = smoothing_diagnostic(c, cfg["Ns"], cfg["delta"], cfg["T"], flow)
    gap = tab.data_slope - tab.duhamel_slope
    passed = abs(tab.data_slope - tab.analytic_slope) <= cfg["slope_tol"] and gap >= cfg["min_gap"]
    res = {"data_slope": tab.data_slope, "analytic_slope": tab.analytic_slope, "duhamel_slope": tab.duhamel_slope,
           "gap": gap, "s": tab.s, "samples_used": int(len(c)), "ess": ens.ess}
    return passed, res, {"smoothing.csv": _csv(["N", "median_duhamel", "median_data"], tab.rows())}


def run_cauchy(cfg, out, base):
    Nmax = cfg["Ns"][-1]
    c = wiener_coeffs(WienerSpec(Nmax, cfg["seed"], cfg["stream_id"]), cfg["samples"])
    flow = _flow_config(cfg["flow"], Nmax, cfg["T"])
    rows, slopes = [], []
    for i, ci in enumerate(c):
        r = cauchy_rate(SpectralField(ci), cfg["Ns"], cfg["s"], cfg["T"], flow)
        slopes.append(r.slope)
        rows.append((i, r.slope, *r.errors))
    finite = [s for s in slopes if math.isfinite(s)]
    med = float(np.median(finite)) if finite else float("nan")
    head = ["sample", "slope"] + [f"err_{a}_{b}" for a, b in zip(cfg["Ns"], cfg["Ns"][1:])]
    return bool(finite) and med < 0, {"median_slope": med, "slopes": slopes}, {"cauchy.csv": _csv(head, rows)}


def run_xsb(cfg, out, base):
    p = cfg["parseval"]
    f0 = sample_wiener(WienerSpec(p["N"], p["seed"], 0))
    traj = evolve(f0, FlowConfig(N=p["N"], T=p["T"], dt=min(1e-3, 0.5 / p["N"])))
    gap = parseval_check(traj)
    lin = cfg["linear"]
    ratios = linear_window_ratios(lin["N"], lin["s"], lin["b"], window=lin["window"])
    spread = float(np.max(ratios) / np.min(ratios))
    cal = cfg["calculus"]
    a = np.linspace(0.0, cal["a_max"], cal["points"])
    cc = calculus_inequality_check(cal["delta1"], cal["delta2"], a)
    passed = gap <= p["tol"] and spread <= lin["max_spread"] and cc.max_ratio <= cal["max_ratio"]
    res = {"parseval_gap": gap, "linear_ratio_spread": spread, "linear_ratios": ratios,
           "calculus_max_ratio": cc.max_ratio, "calculus_alpha": cc.alpha, "calculus_warnings": list(cc.warnings)}
    return passed, res, {"calculus.csv": _csv(["a", "integral", "ratio"], zip(cc.a, cc.integrals, cc.ratios))}


def _kdv_sweep(bound: int) -> int:
    checked = 0
    for n1 in range(-bound, bound + 1):
        for n2 in range(-bound, bound + 1):
            n = n1 + n2
            if n1 == 0 or n2 == 0 or n == 0:
                continue
            lhs, rhs = kdv_factorization_check(n, n1, n2)
            if lhs != rhs:
                raise AssertionError((n, n1, n2))
            checked += 1
    return checked


def _matrix_check(count: int, max_dim: int, seed: int):
    rng = np.random.default_rng(seed)
    worst = np.inf
    bad = []
    for k in range(count):
        d = int(rng.integers(1, max_dim + 1))
        A = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        bound, norm = matrix_norm_bound(A)
        worst = min(worst, bound - norm)
        if bound < norm * (1 - 1e-9):
            bad.append((k, d, bound, norm))
    return worst, bad


def run_resonance(cfg, out, base):
    action = cfg["action"]
    res, arts, passed = {}, {}, True
    if action in ("suite", "kdv"):
        res["kdv_checked"] = _kdv_sweep(cfg["kdv_max"])
    if action in ("suite", "verify-zeta2"):
        z = verify_zeta2_lower_bound(cfg["zeta2_max"])
        res["zeta2"] = {"count": z.count, "min_ratio": z.min_ratio, "argmin": z.argmin}
        passed &= z.min_ratio >= 1
    if action in ("suite", "roots"):
        r = root_count_sweep(cfg["roots_bound"])
        res["roots"] = {"max_roots": r.max_roots, "checked": r.checked, "witness": r.witness}
        passed &= r.max_roots <= 2
    if action in ("suite", "cancel"):
        c = cancellation_identity_check(cfg["cancel_samples"], seed=cfg["seed"])
        res["cancel"] = c.__dict__
        passed &= c.max_residual <= cfg["cancel_tol"]
    if action == "suite":
        rows = []
        for lemma in ("2ci", "1bi"):
            sw = counting_lemma_sweep(lemma, cfg["count_budget"])
            res[f"count_{lemma}"] = {"configurations": sw.configurations, "nonempty": sw.nonempty,
                                    "violations": len(sw.violations),
                                    "worst": None if sw.worst is None else
                                    {"sizes": sw.worst.sizes, "count": sw.worst.count, "bound": sw.worst.bound}}
            rows += [(v.lemma, *v.sizes, v.count, v.bound) for v in sw.violations]
            passed &= sw.holds
        arts["counterexamples.csv"] = _csv(["lemma", "N", "N1", "N2", "N3", "N4", "count", "bound"], rows)
    if action == "count":
        if len(cfg["sizes"]) != 5:
            raise ConfigError("sizes", "need five dyadic sizes N,N1,N2,N3,N4")
        r = count_resonant_tuples(cfg["lemma"], cfg["sizes"], budget=cfg["count_budget"])
        res["count"] = {"lemma": r.lemma, "sizes": r.sizes, "count": r.count, "bound": r.bound, "at": r.fixed}
        passed &= r.holds
        rows = [] if r.holds else [(r.lemma, *r.sizes, r.count, r.bound)]
        arts["counterexamples.csv"] = _csv(["lemma", "N", "N1", "N2", "N3", "N4", "count", "bound"], rows)
    if action in ("suite", "matrix"):
        margin, bad = _matrix_check(cfg["matrices"], cfg["matrix_max_dim"], cfg["seed"])
        res["matrix"] = {"min_margin": margin, "violations": len(bad)}
        passed &= not bad
    return bool(passed), res, arts


RUNNERS = {
    "sample": run_sample, "evolve": run_evolve, "gauge": run_gauge, "conserve": run_conserve,
    "liouville": run_liouville, "invariance": run_invariance, "smoothing": run_smoothing,
    "cauchy": run_cauchy, "xsb": run_xsb, "resonance": run_resonance,
}


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

ANCHORS = {
    "l2_drift": "L2 norm drift (truncated L2 conservation)",
    "H_drift": "energy drift (truncated Hamiltonian conservation)",
    "max_det_error": "|det DPhi - 1| (Liouville, volume preservation)",
    "max_divergence": "vector-field divergence (divergence-free truncated field)",
    "ess": "effective sample size of the Gibbs weights",
    "roundtrip_error": "gauge roundtrip error (conjugacy of the two flows)",
    "data_slope": "data-norm slope (growth of the random partial sums)",
    "duhamel_slope": "Duhamel-part slope (nonlinear smoothing)",
    "median_slope": "Cauchy-rate slope (convergence of truncations)",
    "parseval_gap": "space-time Parseval consistency",
    "linear_ratio_spread": "windowed linear evolution spread across modes",
    "calculus_max_ratio": "calculus inequality constant",
}


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def render_report(run_dir: Path) -> str:
    path = run_dir / MANIFEST
    if not path.is_file():
        raise UsageError(f"no {MANIFEST} in {run_dir}")
    man = json.loads(path.read_text())
    res = man.get("results", {})
    lines = [f"run: {run_dir}", f"kind: {man['kind']}", f"status: {'PASS' if man['passed'] else 'FAIL'}",
             f"elapsed: {man.get('elapsed_s', float('nan')):.2f} s", ""]
    for key, label in ANCHORS.items():
        if key in res and not isinstance(res[key], (list, dict)):
            lines.append(f"  {label}: {_fmt(res[key])}")
    if man["kind"] == "invariance":
        for part in ("flow", "control"):
            if part in res:
                lines.append(f"  {part} map (|z| threshold {res[part]['threshold']}):")
                for o in res[part]["observables"]:
                    lines.append(f"    {o['name']:<24} z = {_fmt(o['z']):>10}   paired z = {_fmt(o['z_paired'])}")
        if "error" in res:
            lines.append(f"  refused: {res['error']}")
    elif "error" in res:
        lines.append(f"  error: {res['error']}")
    if man["kind"] == "resonance":
        for key in ("kdv_checked", "zeta2", "roots", "cancel", "count_2ci", "count_1bi", "count", "matrix"):
            if key in res:
                lines.append(f"  {key}: {json.dumps(res[key])}")
    if man.get("artifacts"):
        lines.append("")
        lines.append("artifacts: " + ", ".join(man["artifacts"]))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

SHORTCUTS = {
    "sample": {"N": "N", "M": "M", "B": "B", "seed": "seed"},
    "evolve": {"N": "data.N", "seed": "data.seed", "data": "data.kind", "input": "data.path", "dt": "flow.dt",
               "T": "flow.T", "integrator": "flow.integrator", "variant": "flow.variant"},
    "gauge": {"N": "data.N", "seed": "data.seed", "input": "data.path", "dt": "flow.dt", "T": "flow.T",
              "direction": "direction"},
    "conserve": {"N": "data.N", "seed": "data.seed", "data": "data.kind", "input": "data.path", "dt": "flow.dt",
                 "T": "flow.T", "integrator": "flow.integrator"},
    "liouville": {"seed": "seed", "dt": "flow.dt", "samples": "samples"},
    "invariance": {"N": "N", "B": "B", "M": "M", "T": "T", "seed": "seed", "dt": "flow.dt"},
    "smoothing": {"samples": "samples", "T": "T", "delta": "delta", "seed": "seed", "dt": "flow.dt"},
    "cauchy": {"samples": "samples", "T": "T", "s": "s", "seed": "seed", "dt": "flow.dt"},
    "xsb": {},
    "resonance": {"max": "zeta2_max", "lemma": "lemma", "sizes": "sizes", "samples": "cancel_samples",
                  "bound": "roots_bound", "seed": "seed"},
}
_STRINGS = {"data", "input", "integrator", "variant", "direction", "lemma"}


def _shortcut_value(name: str, raw: str):
    if name in _STRINGS:
        return json.dumps(raw)
    if name == "sizes":
        return json.dumps([int(x) for x in raw.split(",") if x])
    return raw


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gkdv", description="Truncated quartic gKdV experiments")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for kind in RUNNERS:
        sp = sub.add_parser(kind, help=f"run the {kind} pipeline")
        if kind == "resonance":
            sp.add_argument("action", nargs="?", default=None,
                            choices=["suite", "kdv", "verify-zeta2", "roots", "count", "cancel", "matrix"])
        sp.add_argument("--config", help="JSON file with overrides of the embedded defaults")
        sp.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override one entry, for example flow.dt=5e-4")
        sp.add_argument("--out", help="run directory (default: $%s/<kind>-<hash>)" % ENV_OUTPUT_ROOT)
        sp.add_argument("--print-config", action="store_true", help="print the merged configuration and exit")
        for flag in SHORTCUTS[kind]:
            sp.add_argument(f"--{flag}", dest=f"short_{flag}", default=None)
    rp = sub.add_parser("report", help="summarise a run directory")
    rp.add_argument("run_dir")
    return p


def _overrides(kind: str, args) -> list[str]:
    items = list(args.set)
    for flag, key in SHORTCUTS[kind].items():
        raw = getattr(args, f"short_{flag}")
        if raw is not None:
            items.append(f"{key}={_shortcut_value(flag, raw)}")
    if kind == "resonance" and args.action:
        items.append(f"action={json.dumps(args.action)}")
    return items


def _run_dir(kind: str, cfg: dict, explicit: str | None) -> Path:
    if explicit:
        return Path(explicit)
    root = Path(os.environ.get(ENV_OUTPUT_ROOT) or DEFAULT_OUTPUT_ROOT)
    digest = hashlib.sha256(json.dumps(cfg, sort_keys=True).encode()).hexdigest()[:10]
    return root / f"{kind}-{digest}"


def execute(kind: str, cfg: dict, run_dir: Path, base: Path | None = None) -> tuple[int, dict]:
    """Run one pipeline and write its manifest; returns ``(exit status, manifest)``."""
    run_dir.mkdir(parents=True, exist_ok=True)
    started = time.time()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            passed, results, artifacts = RUNNERS[kind](cfg, run_dir, base or Path.cwd())
        except FlowError as exc:
            # a diverged integration is a failed diagnostic, not a crash
            passed, results, artifacts = False, {"error": f"flow diverged: {exc}"}, {}
    written = sorted(p.name for p in run_dir.iterdir() if p.is_file() and not p.name.startswith("."))
    for name, content in artifacts.items():
        atomic_write(run_dir / name, content)
        written.append(name)
    manifest = {
        "kind": kind,
        "config": cfg,
        "defaults": DEFAULTS[kind],
        "passed": bool(passed),
        "results": _jsonable(results),
        "warnings": sorted({str(w.message) for w in caught}),
        "artifacts": sorted(set(written) - {MANIFEST}),
        "version": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "started_unix": started,
        "elapsed_s": time.time() - started,
    }
    atomic_write(run_dir / MANIFEST, json.dumps(manifest, indent=2, sort_keys=True))
    return (0 if passed else 1), manifest


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "report":
            sys.stdout.write(render_report(Path(args.run_dir)))
            return 0
        kind = args.command
        cfg = load_config(kind, args.config, _overrides(kind, args))
        if args.print_config:
            print(json.dumps(cfg, indent=2))
            return 0
        base = Path(args.config).resolve().parent if args.config else Path.cwd()
        run_dir = _run_dir(kind, cfg, args.out)
        status, manifest = execute(kind, cfg, run_dir, base)
    except ConfigError as exc:
        print(f"gkdv: configuration error at '{exc.path}': {exc.message}", file=sys.stderr)
        return 2
    except UsageError as exc:
        print(f"gkdv: {exc}", file=sys.stderr)
        return 2
    print(f"{'PASS' if status == 0 else 'FAIL'} {kind} -> {run_dir}")
    for k, v in manifest["results"].items():
        if not isinstance(v, (dict, list)):
            print(f"  {k}: {_fmt(v)}")
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
