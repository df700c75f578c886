"""Command-line harness: run, sweep, oracle, baseline-slice, selfcheck."""
from __future__ import annotations

import argparse
import sys

import numpy as np

from .diagnostics import (
    autocovariance,
    decay_time,
    region_masses,
    tail_fractions,
)
from .engine import ChainConfig, run_chain
from .graphs import (
    GraphEnsembleSpec,
    GraphKind,
    draw_adjacency,
    effective_dimension,
    validate_adjacency,
)
from .harness import (
    CSV_COLUMNS,
    load_config,
    point_row,
    run_sweep,
    run_trials,
)
from .kernel import (
    KernelParams,
    ScalarProposalContext,
    UpdateMode,
    conditional_form,
    log_kernel_density,
)
from .slice_baseline import SliceParams, slice_gibbs_chain
from .targets import make_target, true_moments


def _cmd_run(args) -> int:
    cfg = load_config(args.config)
    points = cfg.points()
    if len(points) != 1:
        print(f"config expands to {len(points)} points; use 'sweep' for multi-point runs",
              file=sys.stderr)
        return 2
    records, failures = run_trials(
        points[0], cfg.T, cfg.master_seed, 0, cfg.burn_in, cfg.init_halfwidth,
        workers=args.workers,
    )
    row = point_row(points[0], cfg.T, records, failures)
    width = max(len(c) for c in CSV_COLUMNS)
    for col in CSV_COLUMNS:
        print(f"{col:<{width}}  {row[col]}")
    for msg in failures:
        print(f"FAILED {msg}", file=sys.stderr)
    if args.out:
        import csv as _csv

        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            writer = _csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            writer.writerow([row[c] for c in CSV_COLUMNS])
        print(f"wrote {args.out}")
    return 0


def _cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    out = args.out or "sweep.csv"
    rows = run_sweep(cfg, out, workers=args.workers, resume=args.resume)
    print(f"wrote {len(rows)} rows to {out} (+ JSON mirror)")
    return 0


def _cmd_oracle(args) -> int:
    target = make_target(args.target_spec)
    mean, cov = true_moments(target)
    np.set_printoptions(precision=6, suppress=True)
    print(f"target        {target.name}")
    print(f"dimension     {target.dim}")
    print(f"true mean     {mean}")
    print("true cov")
    print(cov)
    if target.oracle_mean_se is not None:
        print(f"(mean from 1e6-draw oracle, se per coordinate {target.oracle_mean_se})")
    masses = region_masses(target)
    labels = ["0-1 sigma", "1-2 sigma", "2-3 sigma", ">3 sigma"]
    print("tail shell masses (Mahalanobis, 1e6-draw oracle):")
    for lab, p in zip(labels, masses):
        print(f"  {lab:<10} {p:.6f}")
    return 0


def _cmd_baseline_slice(args) -> int:
    cfg = load_config(args.config)
    points = cfg.points()
    if len(points) != 1:
        print("baseline-slice wants a single-point config", file=sys.stderr)
        return 2
    point = points[0]
    sub_records, sub_failures = run_trials(
        point, cfg.T, cfg.master_seed, 0, cfg.burn_in, cfg.init_halfwidth,
    )

    # slice trials: same derived seeds as the coupled runs (paired starts),
    # same metric pipeline
    from .diagnostics import compute_metric_report
    from .harness import TrialRecord, derive_trial_seed
    import time as _time

    params = SliceParams(initial_width=args.width, max_doublings=args.max_doublings)
    slice_records, slice_failures = [], []
    for t in range(cfg.T):
        seed = derive_trial_seed(cfg.master_seed, 0, t)
        try:
            target = make_target(point.target)
            chain_cfg = ChainConfig(
                target=target, graph=point.graph_spec(),
                kernel=KernelParams(point.beta, UpdateMode(point.update_mode)),
                N=point.N, M=point.M,
                init_box_halfwidth=cfg.init_halfwidth,
                burn_in_fraction=cfg.burn_in, seed=seed,
            )
            t0 = _time.perf_counter()
            record = slice_gibbs_chain(chain_cfg, params)
            wall = _time.perf_counter() - t0
            report = compute_metric_report(record, target, cfg.burn_in)
            slice_records.append(TrialRecord(t, seed, report, 0.0, wall))
        except Exception as exc:  # noqa: BLE001 - per-trial isolation
            slice_failures.append(f"trial {t}: {exc}")

    target = make_target(point.target)
    coords = point.N * point.M * target.dim
    sub_evals = np.mean([r.report.eval_count for r in sub_records]) if sub_records else float("nan")
    sl_evals = np.mean([r.report.eval_count for r in slice_records]) if slice_records else float("nan")
    print(f"point: {point.target} {point.kind} d={point.d} m={point.m} "
          f"p_join={point.p_join} beta={point.beta} N={point.N} M={point.M} T={cfg.T}")
    print(f"slice width {params.initial_width}, max doublings {params.max_doublings}")
    print(f"{'':<22}{'coupled':>14}{'slice':>14}")
    for label, a, b in [
        ("evals / coordinate", sub_evals / coords, sl_evals / coords),
        ("d_mean", np.mean([r.report.d_mean for r in sub_records]),
         np.mean([r.report.d_mean for r in slice_records])),
        ("d_cov", np.mean([r.report.d_cov for r in sub_records]),
         np.mean([r.report.d_cov for r in slice_records])),
        ("tau_dec", np.mean([r.report.tau_dec for r in sub_records]),
         np.mean([r.report.tau_dec for r in slice_records])),
    ]:
        print(f"{label:<22}{a:>14.4f}{b:>14.4f}")
    print(f"query ratio (slice / coupled): {sl_evals / sub_evals:.2f}")
    if args.out:
        import csv as _csv

        slice_point_row = point_row(point, cfg.T, slice_records, slice_failures)
        slice_point_row["kind"] = "slice"
        slice_point_row["update_mode"] = "slice"
        sub_row = point_row(point, cfg.T, sub_records, sub_failures)
        for suffix, row in (("suburban", sub_row), ("slice", slice_point_row)):
            path = f"{args.out}_{suffix}.csv"
            with open(path, "w", newline="", encoding="utf-8") as fh:
                writer = _csv.writer(fh)
                writer.writerow(CSV_COLUMNS)
                writer.writerow([row[c] for c in CSV_COLUMNS])
            print(f"wrote {path}")
    return 0


def _selfcheck_kernel_exactness() -> bool:
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(200):
        beta = float(10.0 ** rng.uniform(-3, 2))
        n = int(rng.integers(0, 9))
        ctx = ScalarProposalContext(
            float(rng.normal(scale=3)), rng.normal(scale=3, size=n), beta
        )
        a, b = float(rng.normal(scale=4)), float(rng.normal(scale=4))

        def quad(x_new):
            alpha = 2.0 * beta - n * beta
            delta = x_new - ctx.x_old
            out = -alpha * delta ** 2
            for v in ctx.neighbor_values:
                out -= beta * (delta - (v - ctx.x_old)) ** 2
            return out

        lhs = log_kernel_density(a, ctx) - log_kernel_density(b, ctx)
        rhs = quad(a) - quad(b)
        worst = max(worst, abs(lhs - rhs))
        _, var = conditional_form(ctx)
        if var != 1.0 / (4.0 * beta):
            return False
    return worst < 1e-10


def _selfcheck_graphs() -> bool:
    rng = np.random.default_rng(5)
    for d, m in [(1, 81), (2, 9), (4, 3)]:
        spec = GraphEnsembleSpec(GraphKind.HYPERCUBIC, M=81, p_join=1.0, d=d, m=m)
        A = draw_adjacency(spec, rng)
        validate_adjacency(A)
        if effective_dimension(A) != d:
            return False
    return True


def _selfcheck_diagnostics() -> bool:
    V = np.array([0.0, 1.0])
    return (
        autocovariance(V, 0) == 0.25
        and autocovariance(V, 1) == -0.125
        and autocovariance(V, -1) == -0.125
        and decay_time(V) == 1.5
    )


def _selfcheck_determinism() -> bool:
    def tiny_chain(force_generic):
        target = make_target("symmetric(2,1.5,0.25)")
        config = ChainConfig(
            target=target,
            graph=GraphEnsembleSpec(GraphKind.HYPERCUBIC, M=9, p_join=0.5, d=2, m=3),
            kernel=KernelParams(0.01),
            N=40, M=9, seed=77,
        )
        return run_chain(config, force_generic=force_generic)

    a = tiny_chain(False)
    b = tiny_chain(False)
    c = tiny_chain(True)
    return (
        np.array_equal(a.samples, b.samples)
        and np.array_equal(a.samples, c.samples)
        and a.accept_count == c.accept_count
        and a.eval_count == c.eval_count
    )


def _selfcheck_tails() -> bool:
    target = make_target("symmetric(2,1.5,0.25)")
    rng = np.random.default_rng(3)
    from .targets import direct_sample

    pts = direct_sample(target, rng, 20000)
    f = tail_fractions(pts, target, oracle_sample_count=10 ** 5)
    return abs(f.sum()) < 1e-12 and np.all(np.abs(f) < 0.02)


def _cmd_selfcheck(_args) -> int:
    checks = [
        ("kernel closed form vs quadratic form", _selfcheck_kernel_exactness),
        ("graph draws valid, full-torus d_eff = d", _selfcheck_graphs),
        ("autocovariance / decay-time hand values", _selfcheck_diagnostics),
        ("chain determinism and path equivalence", _selfcheck_determinism),
        ("tail fractions sum to zero, self-consistent", _selfcheck_tails),
    ]
    failed = 0
    for name, fn in checks:
        try:
            ok = fn()
        except Exception as exc:  # noqa: BLE001 - report, do not crash
            ok = False
            name = f"{name} ({exc})"
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
        failed += not ok
    return 1 if failed else 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="suburban",
        description="Ensemble MCMC over a fluctuating random graph: runner and diagnostics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one config point (T trials) and print metrics")
    p_run.add_argument("config")
    p_run.add_argument("--out", default=None, help="optional single-row CSV")
    p_run.add_argument("--workers", type=int, default=1)
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run the full hyperparameter sweep to CSV + JSON")
    p_sweep.add_argument("config")
    p_sweep.add_argument("--out", default=None)
    p_sweep.add_argument("--workers", type=int, default=1)
    p_sweep.add_argument("--resume", action="store_true",
                         help="skip points already present in the output CSV")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_oracle = sub.add_parser("oracle", help="print a target's true moments and tail masses")
    p_oracle.add_argument("target_spec")
    p_oracle.set_defaults(func=_cmd_oracle)

    p_slice = sub.add_parser("baseline-slice",
                             help="compare the coupled sampler against slice-within-Gibbs")
    p_slice.add_argument("config")
    p_slice.add_argument("--width", type=float, default=1.0)
    p_slice.add_argument("--max-doublings", type=int, default=10)
    p_slice.add_argument("--out", default=None, help="prefix for the two comparison CSVs")
    p_slice.set_defaults(func=_cmd_baseline_slice)

    p_check = sub.add_parser("selfcheck", help="run the fast invariant suite")
    p_check.set_defaults(func=_cmd_selfcheck)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
