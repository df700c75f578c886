"""Multi-trial, multi-hyperparameter experiment runner.

A sweep is the Cartesian product of the configured axes; every point runs T
independent chains whose seeds derive from (master_seed, point index, trial
index) through a counter-keyed hash, so reruns are reproducible and trial
streams never overlap.  Results aggregate to mean and standard error
(sample std over sqrt(T)) per metric and land in a CSV plus a JSON mirror.

Config files are flat ``key = value`` text; lists use ``[a, b, c]`` and
lattice shapes ``(d, m)``.  Recognized keys: target, topology.kind,
topology.d, topology.m, p_join, beta, update_mode, N, M, T, burn_in,
init_halfwidth, master_seed, and sweep.<axis> for axis in {target,
topology, p_join, beta, update_mode, N}.
"""
from __future__ import annotations

import csv
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .diagnostics import MetricReport, compute_metric_report
from .engine import ChainConfig, run_chain
from .graphs import GraphEnsembleSpec, GraphKind
from .kernel import KernelParams, UpdateMode
from .targets import make_target

CSV_COLUMNS = [
    "target", "kind", "d", "m", "p_join",
    "d_eff_config", "d_eff_realized_mean",
    "beta", "update_mode", "N", "M", "T",
    "d_mean", "d_mean_se", "d_cov", "d_cov_se",
    "rejection_rate", "rejection_rate_se",
    "tau_dec", "tau_dec_se",
    "f_0_1", "f_1_2", "f_2_3", "f_3_inf",
    "eval_count_mean", "wall_seconds_mean", "trials_failed",
]

SWEEP_AXES = ("target", "topology", "p_join", "beta", "update_mode", "N")

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class SweepPoint:
    """One hyperparameter tuple of a sweep."""

    target: str
    kind: str
    d: int | None
    m: int | None
    p_join: float
    beta: float
    update_mode: str
    N: int
    M: int

    def graph_spec(self) -> GraphEnsembleSpec:
        return GraphEnsembleSpec(
            kind=GraphKind(self.kind), M=self.M, p_join=self.p_join,
            d=self.d, m=self.m,
        )

    def d_eff_config(self) -> float:
        return self.graph_spec().d_eff_configured


@dataclass
class ExperimentConfig:
    target: str = "symmetric(2,1.5,0.25)"
    kind: str = "hypercubic"
    d: int | None = 2
    m: int | None = 9
    p_join: float = 0.5
    beta: float = 0.01
    update_mode: str = "gibbs"
    N: int = 10000
    M: int = 81
    T: int = 100
    burn_in: float = 0.10
    init_halfwidth: float = 100.0
    master_seed: int = 0
    sweep_axes: dict = field(default_factory=dict)

    def points(self) -> list[SweepPoint]:
        """Cartesian product of the sweep axes, base values filling in
        missing axes; every point is validated before anything runs."""
        if self.T < 1:
            raise ValueError(f"T must be >= 1, got {self.T}")
        axes = {}
        for name in SWEEP_AXES:
            if name == "topology":
                axes[name] = self.sweep_axes.get(name, [(self.d, self.m)])
            else:
                base = getattr(self, name if name != "target" else "target")
                axes[name] = self.sweep_axes.get(name, [base])
        er = self.kind == GraphKind.ERDOS_RENYI.value
        pts = []
        for tgt in axes["target"]:
            for topo in axes["topology"]:
                # Erdos-Renyi has no lattice shape; keep those cells empty
                d, m = (None, None) if er or topo is None else topo
                for p in axes["p_join"]:
                    for b in axes["beta"]:
                        for um in axes["update_mode"]:
                            for n in axes["N"]:
                                pts.append(SweepPoint(
                                    target=str(tgt), kind=self.kind,
                                    d=None if d is None else int(d),
                                    m=None if m is None else int(m),
                                    p_join=float(p), beta=float(b),
                                    update_mode=str(um), N=int(n), M=self.M,
                                ))
        for pt in pts:
            pt.graph_spec()           # validates m**d == M, p_join range
            UpdateMode(pt.update_mode)
            make_target(pt.target)
        return pts


def _parse_scalar(text: str):
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        return tuple(_parse_scalar(p) for p in s[1:-1].split(","))
    try:
        return int(s)
    except ValueError:
        pass
    try:
        return float(s)
    except ValueError:
        pass
    return s


def _parse_value(text: str):
    s = text.strip()
    if s.startswith("[") and s.endswith("]"):
        inner = s[1:-1].strip()
        if not inner:
            return []
        items, depth, start = [], 0, 0
        for i, ch in enumerate(inner):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                items.append(inner[start:i])
                start = i + 1
        items.append(inner[start:])
        return [_parse_scalar(p) for p in items]
    return _parse_scalar(s)


def parse_config(text: str) -> ExperimentConfig:
    """Parse the flat key = value format (pass file contents, not a path)."""
    cfg = ExperimentConfig()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, val = line.partition("=")
        key = key.strip()
        value = _parse_value(val)
        if key == "target":
            cfg.target = str(value)
        elif key == "topology.kind":
            cfg.kind = str(value)
        elif key == "topology.d":
            cfg.d = int(value)
        elif key == "topology.m":
            cfg.m = int(value)
        elif key == "p_join":
            cfg.p_join = float(value)
        elif key == "beta":
            cfg.beta = float(value)
        elif key == "update_mode":
            cfg.update_mode = str(value)
        elif key == "N":
            cfg.N = int(value)
        elif key == "M":
            cfg.M = int(value)
        elif key == "T":
            cfg.T = int(value)
        elif key == "burn_in":
            cfg.burn_in = float(value)
        elif key == "init_halfwidth":
            cfg.init_halfwidth = float(value)
        elif key == "master_seed":
            cfg.master_seed = int(value)
        elif key.startswith("sweep."):
            axis = key[len("sweep."):]
            if axis not in SWEEP_AXES:
                raise ValueError(f"line {lineno}: unknown sweep axis {axis!r}")
            cfg.sweep_axes[axis] = value if isinstance(value, list) else [value]
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    return cfg


def load_config(path) -> ExperimentConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def derive_trial_seed(master_seed: int, point_index: int, trial_index: int) -> int:
    """128-bit chain seed from a counter-keyed hash of the three indices."""
    ss = np.random.SeedSequence((master_seed & _MASK64, point_index, trial_index))
    a, b = ss.generate_state(2, np.uint64)
    return int(a) | (int(b) << 64)


@dataclass
class TrialRecord:
    trial_index: int
    seed: int
    report: MetricReport
    realized_deff: float
    wall_seconds: float


def run_single_trial(
    point: SweepPoint,
    trial_seed: int,
    trial_index: int = 0,
    burn_in: float = 0.10,
    init_halfwidth: float = 100.0,
) -> TrialRecord:
    """One chain at one sweep point with a fresh target (its own counter)."""
    target = make_target(point.target)
    config = ChainConfig(
        target=target,
        graph=point.graph_spec(),
        kernel=KernelParams(point.beta, UpdateMode(point.update_mode)),
        N=point.N,
        M=point.M,
        init_box_halfwidth=init_halfwidth,
        burn_in_fraction=burn_in,
        seed=trial_seed,
    )
    t0 = time.perf_counter()
    record = run_chain(config)
    wall = time.perf_counter() - t0
    report = compute_metric_report(record, target, burn_in)
    return TrialRecord(
        trial_index=trial_index,
        seed=trial_seed,
        report=report,
        realized_deff=record.mean_realized_deff(),
        wall_seconds=wall,
    )


def _trial_worker(args):
    point, seed, idx, burn_in, init_halfwidth = args
    return run_single_trial(point, seed, idx, burn_in, init_halfwidth)


def run_trials(
    point: SweepPoint,
    T: int,
    master_seed: int,
    point_index: int = 0,
    burn_in: float = 0.10,
    init_halfwidth: float = 100.0,
    workers: int = 1,
) -> tuple[list[TrialRecord], list[str]]:
    """T independent trials of one point; failures are collected, not raised."""
    jobs = [
        (point, derive_trial_seed(master_seed, point_index, t), t, burn_in, init_halfwidth)
        for t in range(T)
    ]
    records: list[TrialRecord] = []
    failures: list[str] = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_trial_worker, job) for job in jobs]
            for t, fut in enumerate(futures):
                try:
                    records.append(fut.result())
                except Exception as exc:  # noqa: BLE001 - per-trial isolation
                    failures.append(f"trial {t}: {exc}")
    else:
        for job in jobs:
            try:
                records.append(_trial_worker(job))
            except Exception as exc:  # noqa: BLE001 - per-trial isolation
                failures.append(f"trial {job[2]}: {exc}")
    records.sort(key=lambda r: r.trial_index)
    return records, failures


def aggregate(values) -> tuple[float, float]:
    """Mean and standard error (sample std with 1/(T-1), over sqrt(T)).

    One value gives (value, nan): the error is undefined and flagged as
    such.  No values gives (nan, nan).
    """
    arr = np.asarray([v for v in values], dtype=float)
    if arr.size == 0:
        return math.nan, math.nan
    if arr.size == 1:
        return float(arr[0]), math.nan
    return float(arr.mean()), float(arr.std(ddof=1) / np.sqrt(arr.size))


def point_row(point: SweepPoint, T: int, records: list[TrialRecord], failures: list[str]) -> dict:
    """Aggregate one point's trials into a CSV row dict."""
    d_mean, d_mean_se = aggregate(r.report.d_mean for r in records)
    d_cov, d_cov_se = aggregate(r.report.d_cov for r in records)
    rej, rej_se = aggregate(r.report.rejection_rate for r in records)
    tau, tau_se = aggregate(r.report.tau_dec for r in records)
    deff_real, _ = aggregate(r.realized_deff for r in records)
    evals, _ = aggregate(r.report.eval_count for r in records)
    wall, _ = aggregate(r.wall_seconds for r in records)
    if records:
        tails = np.mean([r.report.tail_fractions for r in records], axis=0)
    else:
        tails = np.full(4, math.nan)
    return {
        "target": point.target,
        "kind": point.kind,
        "d": "" if point.d is None else point.d,
        "m": "" if point.m is None else point.m,
        "p_join": point.p_join,
        "d_eff_config": point.d_eff_config(),
        "d_eff_realized_mean": deff_real,
        "beta": point.beta,
        "update_mode": point.update_mode,
        "N": point.N,
        "M": point.M,
        "T": T,
        "d_mean": d_mean, "d_mean_se": d_mean_se,
        "d_cov": d_cov, "d_cov_se": d_cov_se,
        "rejection_rate": rej, "rejection_rate_se": rej_se,
        "tau_dec": tau, "tau_dec_se": tau_se,
        "f_0_1": tails[0], "f_1_2": tails[1], "f_2_3": tails[2], "f_3_inf": tails[3],
        "eval_count_mean": evals,
        "wall_seconds_mean": wall,
        "trials_failed": len(failures),
    }


def _format_cell(value) -> str:
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def _point_key(row: dict) -> tuple:
    return tuple(
        _format_cell(row[c])
        for c in ("target", "kind", "d", "m", "p_join", "beta", "update_mode", "N", "M", "T")
    )


def _point_key_from(point: SweepPoint, T: int) -> tuple:
    return _point_key({
        "target": point.target, "kind": point.kind,
        "d": "" if point.d is None else point.d,
        "m": "" if point.m is None else point.m,
        "p_join": point.p_join, "beta": point.beta,
        "update_mode": point.update_mode, "N": point.N, "M": point.M, "T": T,
    })


def _completed_points(csv_path) -> set[tuple]:
    done = set()
    try:
        with open(csv_path, "r", newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames != CSV_COLUMNS:
                return set()
            for row in reader:
                if all(row.get(c) is not None for c in CSV_COLUMNS):
                    done.add(_point_key(row))
    except FileNotFoundError:
        pass
    return done


def run_sweep(
    config: ExperimentConfig,
    out_csv,
    workers: int = 1,
    resume: bool = False,
) -> list[dict]:
    """Run every point of the sweep and write the CSV plus a JSON mirror.

    Rows are flushed per point, so an interrupted sweep resumes from the
    completed rows when ``resume`` is set.  Failed trials never abort a
    point; they are excluded from aggregation and counted in
    ``trials_failed``.
    """
    points = config.points()
    done = _completed_points(out_csv) if resume else set()
    mode = "a" if (resume and done) else "w"
    with open(out_csv, mode, newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        if mode == "w":
            writer.writerow(CSV_COLUMNS)
        for index, point in enumerate(points):
            if _point_key_from(point, config.T) in done:
                continue
            records, failures = run_trials(
                point, config.T, config.master_seed, index,
                config.burn_in, config.init_halfwidth, workers=workers,
            )
            row = point_row(point, config.T, records, failures)
            writer.writerow([_format_cell(row[c]) for c in CSV_COLUMNS])
            fh.flush()
    json_path = str(out_csv)
    json_path = json_path[: -len(".csv")] + ".json" if json_path.endswith(".csv") else json_path + ".json"
    _write_json_mirror(out_csv, json_path)
    with open(out_csv, "r", newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def _write_json_mirror(csv_path, json_path) -> None:
    with open(csv_path, "r", newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    with open(json_path, "w", encoding="utf-8") as fh:
        json.dump({"columns": CSV_COLUMNS, "rows": rows}, fh, indent=2)
        fh.write("\n")
