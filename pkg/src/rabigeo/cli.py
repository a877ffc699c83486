"""Batch command-line front-end: sweeps, dynamics, resonance scans, spectra.

Subcommands
-----------
sweep      grid sweep over one or two model parameters, any set of quantities
dynamics   time series (population, Bloch vector, path length) over n periods
resonance  per-bias resonance positions by the requested methods
spectrum   (quasi)energy bands over a tunneling range with crossing labels
check      invariant suite at a single parameter point

All behaviour is driven by a JSON config (``--config``) with flag overrides.
Datasets are CSV with a ``#``-prefixed JSON header line (or pure JSON with
``--format json``); floats use shortest round-trip formatting so identical
configs yield byte-identical files.  Exit codes: 0 ok, 2 config error,
3 dataset contains flagged rows, 4 hard numeric failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__
from .model import (
    DEFAULT_POLICY,
    ModelParams,
    NoRootInBracket,
    NumericPolicy,
)
from .propagate import propagate, verify_su2_structure
from .geometry import (
    aa_phases,
    bloch_trajectory,
    bloch_vectors,
    cyclic_decomposition,
    dynamical_phase,
    time_energy_uncertainty,
    unwrap_sweep,
)
from .chrw import chrw_phases, resonance_position, solve_self_consistent
from .perturbation import first_order_correction
from .floquet import (
    build_quantum_rabi,
    build_semiclassical_floquet,
    converged_spectrum,
    hidden_symmetry_check,
    quasienergy_gap,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PARTIAL = 3
EXIT_NUMERIC = 4

_SWEEPABLE = ("delta", "epsilon", "amplitude", "omega")
_QUANTITIES = ("aa_phase", "uncertainty", "quasienergy", "p_up", "bloch",
               "chrw", "chrw_pt", "spectrum_semiclassical", "spectrum_quantum",
               "resonances", "hidden_symmetry")


class ConfigError(ValueError):
    """Invalid or inconsistent configuration input."""


# ---------------------------------------------------------------------------
# config plumbing

def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}")
    if not isinstance(cfg, dict):
        raise ConfigError(f"config {path}: top level must be a JSON object")
    return cfg


def _policy_from(cfg: dict, args) -> NumericPolicy:
    fields = {
        "step_tol": args.tol_step,
        "quad_points": args.quad_points,
        "unitarity_tol": args.tol_unitarity,
        "root_tol": args.tol_root,
        "degeneracy_tol": args.tol_degeneracy,
        "spectrum_tol": args.tol_spectrum,
        "singular_tol": args.tol_singular,
    }
    merged = dict(cfg.get("policy", {}))
    for name, val in fields.items():
        if val is not None:
            merged[name] = val
    try:
        return NumericPolicy(**{**DEFAULT_POLICY.__dict__, **merged})
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid policy override: {exc}")


def _axis(spec, name: str) -> np.ndarray:
    """A fixed scalar or a {start, stop, count} range for one parameter."""
    if isinstance(spec, (int, float)):
        return np.array([float(spec)])
    if isinstance(spec, dict) and {"start", "stop", "count"} <= set(spec):
        count = int(spec["count"])
        if count < 2:
            raise ConfigError(f"{name}: range count must be >= 2")
        return np.linspace(float(spec["start"]), float(spec["stop"]), count)
    raise ConfigError(f"{name}: expected a number or {{start, stop, count}}")


def _params_grid(cfg: dict):
    """(swept symbol names, list of ModelParams in row-major sweep order)."""
    raw = cfg.get("params")
    if not isinstance(raw, dict):
        raise ConfigError("config field 'params' (object) is required")
    axes = {}
    for name in _SWEEPABLE:
        if name not in raw:
            raise ConfigError(f"params.{name} is required")
        axes[name] = _axis(raw[name], f"params.{name}")
    swept = [n for n in _SWEEPABLE if len(axes[n]) > 1]
    if not 1 <= len(swept) <= 2:
        raise ConfigError("exactly one or two parameters must be swept")
    grids = np.meshgrid(*[axes[n] for n in _SWEEPABLE], indexing="ij")
    flat = [g.ravel() for g in grids]
    points = []
    for vals in zip(*flat):
        kw = dict(zip(_SWEEPABLE, (float(v) for v in vals)))
        try:
            points.append(ModelParams(**kw))
        except ValueError as exc:
            raise ConfigError(f"invalid parameter point {kw}: {exc}")
    return swept, points


def _float_str(x) -> str:
    """Shortest round-trip decimal form (repr of a Python float)."""
    x = float(x)
    if math.isnan(x):
        return "nan"
    return repr(x)


def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# dataset emission

def _write_dataset(out, header: dict, columns: list[str], rows: list[list],
                   fmt: str) -> None:
    if fmt == "json":
        doc = {"header": header, "columns": columns,
               "rows": [[_float_str(v) if isinstance(v, float) else v
                         for v in row] for row in rows]}
        text = _canonical(doc) + "\n"
    else:
        lines = ["#" + _canonical(header), ",".join(columns)]
        for row in rows:
            lines.append(",".join(
                _float_str(v) if isinstance(v, float) else str(v)
                for v in row))
        text = "\n".join(lines) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _header(command: str, cfg: dict, policy: NumericPolicy) -> dict:
    return {
        "command": command,
        "config": cfg,
        "policy": dict(sorted(policy.__dict__.items())),
        "version": __version__,
    }


# ---------------------------------------------------------------------------
# restartable execution

def _journal_path(out: str) -> str:
    return out + ".journal"


def _run_points(worker, jobs_args: list, jobs: int, out: str | None,
                resume: bool, config_key: str):
    """Compute one row per job arg, in order, with an on-disk resume journal."""
    done: dict[int, list] = {}
    jpath = _journal_path(out) if out else None
    if resume and jpath and os.path.exists(jpath):
        with open(jpath, "r", encoding="utf-8") as fh:
            first = fh.readline().strip()
            if first == config_key:
                for line in fh:
                    rec = json.loads(line)
                    done[rec["i"]] = rec["row"]
    pending = [i for i in range(len(jobs_args)) if i not in done]

    journal = None
    if jpath:
        fresh = not (resume and done)
        journal = open(jpath, "w" if fresh else "a", encoding="utf-8")
        if fresh:
            journal.write(config_key + "\n")
            for i in sorted(done):
                done.pop(i)
            pending = list(range(len(jobs_args)))

    try:
        if jobs > 1 and len(pending) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for i, row in zip(pending,
                                  pool.map(worker, [jobs_args[i] for i in pending])):
                    done[i] = row
                    if journal:
                        journal.write(_canonical({"i": i, "row": row}) + "\n")
        else:
            for i in pending:
                row = worker(jobs_args[i])
                done[i] = row
                if journal:
                    journal.write(_canonical({"i": i, "row": row}) + "\n")
    finally:
        if journal:
            journal.close()
    return [done[i] for i in range(len(jobs_args))]


# ---------------------------------------------------------------------------
# sweep

def _sweep_columns(quantities: list[str]) -> list[str]:
    cols = list(_SWEEPABLE)
    table = {
        "aa_phase": ["gamma_plus", "gamma_minus", "theta_plus", "alpha_plus",
                     "degenerate"],
        "uncertainty": ["uncertainty"],
        "quasienergy": ["q_plus", "q_minus"],
        "p_up": ["p_up_mean"],
        "bloch": ["bloch_x0", "bloch_y0", "bloch_z0"],
        "chrw": ["gamma_plus_chrw", "alpha_plus_chrw", "omega_eff", "xi", "zeta"],
        "chrw_pt": ["gamma_plus_chrw_pt", "k_total", "omega_eff_pt", "singular"],
        "spectrum_semiclassical": ["q1_floquet", "q2_floquet", "floquet_n"],
        "spectrum_quantum": ["energy_0", "energy_1", "energy_2", "energy_3",
                             "fock_n"],
        "resonances": ["delta_res_2nd", "delta_res_3rd"],
        "hidden_symmetry": ["phase_gap", "identity_distance", "unique"],
    }
    for q in quantities:
        cols.extend(table[q])
    cols.append("error")
    return cols


def _sweep_point(arg):
    p_fields, quantities, policy_fields, g = arg
    p = ModelParams(**p_fields)
    policy = NumericPolicy(**policy_fields)
    row = [p.delta, p.epsilon, p.amplitude, p.omega]
    err = ""
    needs_prop = any(q in quantities for q in
                     ("aa_phase", "uncertainty", "quasienergy", "p_up",
                      "bloch", "hidden_symmetry"))
    r = geo = None
    try:
        if needs_prop:
            r = propagate(p, policy)
            geo = aa_phases(r, p)
    except Exception as exc:  # recorded in-row, sweep continues
        err = type(exc).__name__

    def fill(n):
        row.extend([float("nan")] * n)

    for q in quantities:
        try:
            if q == "aa_phase":
                if geo is None:
                    fill(4); row.append("")
                else:
                    row.extend([float(geo.aa_phases[0]), float(geo.aa_phases[1]),
                                float(geo.total_phases[0]),
                                float(geo.dynamical_phases[0]),
                                int(geo.degenerate)])
            elif q == "uncertainty":
                row.append(float(geo.uncertainty) if geo else float("nan"))
            elif q == "quasienergy":
                if geo is None:
                    fill(2)
                else:
                    row.extend([float(geo.quasienergies[0]),
                                float(geo.quasienergies[1])])
            elif q == "p_up":
                if r is None:
                    fill(1)
                else:
                    psi = r.unitaries @ geo.cyclic_states[0]
                    row.append(float(np.mean(np.abs(psi[:, 0]) ** 2)))
            elif q == "bloch":
                if geo is None:
                    fill(3)
                else:
                    row.extend(float(v) for v in
                               bloch_vectors(geo.cyclic_states[:1])[0])
            elif q == "chrw":
                sol = solve_self_consistent(p, policy)
                th, al, ga = chrw_phases(sol)
                row.extend([float(ga[0]), float(al[0]), float(sol.Omega_t),
                            float(sol.xi), float(sol.zeta)])
            elif q == "chrw_pt":
                sol = solve_self_consistent(p, policy)
                pert = first_order_correction(sol, policy.singular_tol)
                row.extend([float(pert.gamma_pt[0]), float(pert.k),
                            float(pert.Omega_pt),
                            int(any(pert.singular_flags.values()))])
            elif q == "spectrum_semiclassical":
                res = converged_spectrum(
                    lambda N: build_semiclassical_floquet(p, N), policy=policy)
                row.extend([float(res.folded_quasienergies[0]),
                            float(res.folded_quasienergies[1]),
                            res.truncation_used])
            elif q == "spectrum_quantum":
                res = converged_spectrum(
                    lambda N: build_quantum_rabi(g, p, N), policy=policy)
                row.extend([float(v) for v in res.eigenvalues[:4]])
                row.append(res.truncation_used)
            elif q == "resonances":
                for order in (1, 2):
                    try:
                        row.append(float(resonance_position(
                            p, order=order, method="chrw", policy=policy)))
                    except NoRootInBracket:
                        row.append(float("nan"))
            elif q == "hidden_symmetry":
                hs = hidden_symmetry_check(p, r, policy)
                row.extend([float(hs.total_phase_gap),
                            float(hs.identity_distance),
                            int(hs.geometric_quantities_unique)])
        except Exception as exc:
            missing = len(_sweep_columns([q])) - len(_SWEEPABLE) - 1
            fill(missing)
            err = err or type(exc).__name__
    row.append(err)
    return row


def cmd_sweep(cfg: dict, args) -> int:
    policy = _policy_from(cfg, args)
    swept, points = _params_grid(cfg)
    quantities = cfg.get("quantities", ["aa_phase", "uncertainty"])
    bad = [q for q in quantities if q not in _QUANTITIES]
    if bad:
        raise ConfigError(f"unknown quantities {bad}; choose from {_QUANTITIES}")
    g = float(cfg.get("g", 1.0))
    if "spectrum_quantum" in quantities and "g" not in cfg:
        raise ConfigError("quantity spectrum_quantum requires config field 'g'")

    work = [(p.__dict__, quantities, policy.__dict__, g) for p in points]
    key = _canonical({"cfg": cfg, "policy": policy.__dict__, "v": __version__})
    key = hashlib.sha256(key.encode()).hexdigest()
    rows = _run_points(_sweep_point, work, args.jobs, args.out, args.resume, key)

    columns = _sweep_columns(quantities)
    if args.unwrap and len(swept) == 1:
        for name in ("gamma_plus", "gamma_plus_chrw", "gamma_plus_chrw_pt"):
            if name in columns:
                j = columns.index(name)
                col = np.array([row[j] for row in rows], dtype=float)
                if np.all(np.isfinite(col)):
                    for row, v in zip(rows, unwrap_sweep(col)):
                        row[j] = float(v)
    header = _header("sweep", cfg, policy)
    _write_dataset(args.out, header, columns, rows, args.format)
    flagged = any(row[-1] for row in rows)
    return EXIT_PARTIAL if flagged else EXIT_OK


# ---------------------------------------------------------------------------
# dynamics

def _initial_state(sel, p: ModelParams, policy: NumericPolicy) -> np.ndarray:
    if isinstance(sel, dict) and sel.get("type") == "vector":
        v = np.asarray(sel["value"], dtype=float)
        if v.shape != (4,):
            raise ConfigError("vector state needs [re0, im0, re1, im1]")
        psi = v[0] + 1j * v[1], v[2] + 1j * v[3]
        psi = np.array(psi, dtype=complex)
        n = np.linalg.norm(psi)
        if n == 0:
            raise ConfigError("vector state must be nonzero")
        return psi / n
    kind = sel.get("type") if isinstance(sel, dict) else sel
    if kind in ("cyclic_plus", "cyclic_minus"):
        src = p
    elif kind == "cyclic_of":
        src = ModelParams(float(sel["delta"]), p.epsilon, p.amplitude, p.omega)
    else:
        raise ConfigError(f"unknown initial_state selector {sel!r}")
    r = propagate(src, policy)
    states, _, _, _ = cyclic_decomposition(r.unitaries[-1], src,
                                           policy.degeneracy_tol)
    return states[0 if kind != "cyclic_minus" else 1]


def cmd_dynamics(cfg: dict, args) -> int:
    policy = _policy_from(cfg, args)
    raw = cfg.get("params")
    if not isinstance(raw, dict):
        raise ConfigError("config field 'params' (object) is required")
    try:
        p = ModelParams(**{k: float(raw[k]) for k in _SWEEPABLE if k in raw})
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid params: {exc}")
    n_periods = int(cfg.get("n_periods", 1))
    if n_periods < 1:
        raise ConfigError("n_periods must be >= 1")
    stride = int(cfg.get("sample_stride", 8))

    psi0 = _initial_state(cfg.get("initial_state", "cyclic_plus"), p, policy)
    r = propagate(p, policy)
    UT = r.unitaries[-1]

    rows = []
    length = 0.0
    start = psi0
    last_point = None
    for k in range(n_periods):
        psi = (r.unitaries @ start)[::stride]
        pts = bloch_vectors(psi)
        if last_point is not None:
            gap = np.linalg.norm(pts[0] - last_point)
            length += 2.0 * float(np.arcsin(np.clip(0.5 * gap, -1.0, 1.0)))
        chords = np.linalg.norm(np.diff(pts, axis=0), axis=1)
        arcs = 2.0 * np.arcsin(np.clip(0.5 * chords, -1.0, 1.0))
        cum = length + np.concatenate([[0.0], np.cumsum(arcs)])
        ts = r.grid[::stride] + k * p.period
        first = 1 if k else 0  # period boundary point already emitted
        for j in range(first, len(ts)):
            rows.append([float(ts[j]), float(np.abs(psi[j, 0]) ** 2),
                         float(pts[j, 0]), float(pts[j, 1]), float(pts[j, 2]),
                         float(cum[j])])
        length = float(cum[-1])
        last_point = pts[-1]
        start = UT @ start

    header = _header("dynamics", cfg, policy)
    columns = ["t", "p_up", "bloch_x", "bloch_y", "bloch_z", "path_length"]
    _write_dataset(args.out, header, columns, rows, args.format)
    return EXIT_OK


# ---------------------------------------------------------------------------
# resonance

def _resonance_point(arg):
    p_fields, methods, order, policy_fields = arg
    p = ModelParams(**p_fields)
    policy = NumericPolicy(**policy_fields)
    row = [p.epsilon]
    err = ""
    for method in methods:
        try:
            row.append(float(resonance_position(p, order=order, method=method,
                                                policy=policy)))
        except NoRootInBracket:
            row.append(float("nan"))
            err = "NoRootInBracket"
        except Exception as exc:
            row.append(float("nan"))
            err = err or type(exc).__name__
    row.append(err)
    return row


def cmd_resonance(cfg: dict, args) -> int:
    policy = _policy_from(cfg, args)
    raw = cfg.get("params", {})
    base = ModelParams(
        delta=float(raw.get("delta", 2.0)),
        epsilon=0.0,
        amplitude=float(raw.get("amplitude", 1.0)),
        omega=float(raw.get("omega", 1.0)),
    )
    eps_axis = _axis(cfg.get("epsilon_range"), "epsilon_range")
    methods = cfg.get("methods", ["numeric", "chrw"])
    for m in methods:
        if m not in ("numeric", "chrw", "second_order"):
            raise ConfigError(f"unknown method {m!r}")
    order = int(cfg.get("order", 1))
    if order not in (1, 2):
        raise ConfigError("order must be 1 (second harmonic) or 2 (third)")

    work = [(ModelParams(base.delta, float(e), base.amplitude,
                         base.omega).__dict__, methods, order, policy.__dict__)
            for e in eps_axis]
    key = _canonical({"cfg": cfg, "policy": policy.__dict__, "v": __version__})
    key = hashlib.sha256(key.encode()).hexdigest()
    rows = _run_points(_resonance_point, work, args.jobs, args.out,
                       args.resume, key)

    header = _header("resonance", cfg, policy)
    columns = ["epsilon"] + [f"delta_res_{m}" for m in methods] + ["error"]
    _write_dataset(args.out, header, columns, rows, args.format)
    flagged = any(row[-1] for row in rows)
    return EXIT_PARTIAL if flagged else EXIT_OK


# ---------------------------------------------------------------------------
# spectrum

def _spectrum_point(arg):
    """Row layout: delta, values..., truncation, defect, error."""
    kind, p_fields, g, policy_fields = arg
    p = ModelParams(**p_fields)
    policy = NumericPolicy(**policy_fields)
    row = [p.delta]
    try:
        if kind == "semiclassical":
            res = converged_spectrum(
                lambda N: build_semiclassical_floquet(p, N), policy=policy)
            q1, q2 = res.folded_quasienergies
            d = abs(q1 - q2) % p.omega
            row.extend([float(q1), float(q2), float(min(d, p.omega - d))])
        else:
            res = converged_spectrum(
                lambda N: build_quantum_rabi(g, p, N), policy=policy)
            ev = res.eigenvalues[:6]
            row.extend([float(v) for v in ev])
            row.append(float(np.min(np.diff(ev))))
        row.extend([res.truncation_used, float(res.convergence_defect), ""])
    except Exception as exc:
        n_vals = 3 if kind == "semiclassical" else 7
        row.extend([float("nan")] * n_vals)
        row.extend([0, float("nan"), type(exc).__name__])
    return row


def cmd_spectrum(cfg: dict, args) -> int:
    policy = _policy_from(cfg, args)
    kind = cfg.get("kind")
    if kind not in ("semiclassical", "quantum"):
        raise ConfigError("config field 'kind' must be semiclassical or quantum")
    raw = cfg.get("params", {})
    eps = float(raw.get("epsilon", 0.0))
    omega = float(raw.get("omega", 1.0))
    amp = float(raw.get("amplitude", 1.0))
    g = float(cfg.get("g", 1.0))
    deltas = _axis(cfg.get("delta_range"), "delta_range")
    if len(deltas) < 1:
        raise ConfigError("delta_range is required")

    work = [(kind, ModelParams(float(d), eps, amp, omega).__dict__, g,
             policy.__dict__) for d in deltas]
    key = _canonical({"cfg": cfg, "policy": policy.__dict__, "v": __version__})
    key = hashlib.sha256(key.encode()).hexdigest()
    rows = _run_points(_spectrum_point, work, args.jobs, args.out,
                       args.resume, key)

    # label local gap minima on the swept grid
    gap_col = 3 if kind == "semiclassical" else 7
    gaps = np.array([row[gap_col] for row in rows], dtype=float)
    labels = [""] * len(rows)
    for k in range(1, len(rows) - 1):
        if np.isfinite(gaps[k]) and gaps[k] <= gaps[k - 1] and gaps[k] <= gaps[k + 1]:
            labels[k] = ("crossing" if gaps[k] < policy.degeneracy_tol * omega
                         else "anti_crossing")
    rows = [row[:-1] + [label, row[-1]] for row, label in zip(rows, labels)]

    header = _header("spectrum", cfg, policy)
    if kind == "semiclassical":
        columns = ["delta", "q1", "q2", "gap", "truncation", "defect",
                   "classification", "error"]
    else:
        columns = (["delta"] + [f"energy_{i}" for i in range(6)]
                   + ["min_gap", "truncation", "defect", "classification",
                      "error"])
    _write_dataset(args.out, header, columns, rows, args.format)
    flagged = any(row[-1] for row in rows)
    return EXIT_PARTIAL if flagged else EXIT_OK


# ---------------------------------------------------------------------------
# check

def cmd_check(cfg: dict, args) -> int:
    policy = _policy_from(cfg, args)
    raw = cfg.get("params")
    if not isinstance(raw, dict):
        raise ConfigError("config field 'params' (object) is required")
    p = ModelParams(**{k: float(raw[k]) for k in _SWEEPABLE if k in raw})

    checks = []
    r = propagate(p, policy)
    geo = aa_phases(r, p)
    checks.append(("su2_structure", verify_su2_structure(r) <= 1e-10,
                   verify_su2_structure(r)))
    th_sum = abs(float(np.remainder(np.sum(geo.total_phases) + np.pi,
                                    2 * np.pi) - np.pi))
    checks.append(("total_phase_sum", th_sum <= 1e-8, th_sum))
    al_sum = abs(float(np.sum(geo.dynamical_phases)))
    checks.append(("dynamical_phase_antisymmetry", al_sum <= 1e-8, al_sum))
    ortho = abs(np.vdot(geo.cyclic_states[0], geo.cyclic_states[1]))
    checks.append(("cyclic_orthogonality", ortho <= 1e-8, float(ortho)))
    traj = bloch_trajectory(r, geo.cyclic_states[0])
    s_err = abs(geo.uncertainty - traj.path_length)
    checks.append(("uncertainty_is_path_length", s_err <= 1e-6, s_err))
    s_other = time_energy_uncertainty(r, geo.cyclic_states[1])
    checks.append(("uncertainty_branch_equal",
                   abs(geo.uncertainty - s_other) <= 1e-8,
                   abs(geo.uncertainty - s_other)))
    try:
        sol = solve_self_consistent(p, policy)
        res_max = float(np.max(np.abs(sol.residuals)))
        checks.append(("chrw_residuals", res_max <= 1e-12, res_max))
    except Exception as exc:
        checks.append((f"chrw_residuals[{type(exc).__name__}]", False,
                       float("nan")))
    spec = converged_spectrum(lambda N: build_semiclassical_floquet(p, N),
                              policy=policy)
    q_err = float(np.max(np.abs(np.sort(spec.folded_quasienergies)
                                - np.sort(geo.quasienergies))))
    checks.append(("floquet_vs_propagator", q_err <= 1e-7 * p.omega, q_err))

    all_ok = all(ok for _, ok, _ in checks)
    lines = []
    for name, ok, value in checks:
        lines.append(f"{'PASS' if ok else 'FAIL'} {name} ({value:.3e})")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    sys.stdout.write(text)
    return EXIT_OK if all_ok else EXIT_PARTIAL


# ---------------------------------------------------------------------------
# entry point

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rabigeo",
        description="Geometric phases, uncertainty and spectra of a driven "
                    "two-level system.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, fn in (("sweep", cmd_sweep), ("dynamics", cmd_dynamics),
                     ("resonance", cmd_resonance), ("spectrum", cmd_spectrum),
                     ("check", cmd_check)):
        sp = sub.add_parser(name)
        sp.set_defaults(func=fn)
        sp.add_argument("--config", help="JSON config file")
        sp.add_argument("--out", help="output dataset path (default stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--unwrap", action="store_true",
                        help="unwrap swept phase columns")
        sp.add_argument("--resume", action="store_true",
                        help="reuse rows from an existing journal")
        sp.add_argument("--quad-points", type=int, default=None)
        for tol in ("step", "unitarity", "root", "degeneracy", "spectrum",
                    "singular"):
            sp.add_argument(f"--tol-{tol}", type=float, default=None)
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _load_config(args.config)
        return args.func(cfg, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:
        print(f"numeric failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
