"""Command line front end: example, evaluate, sweep and compare."""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .classifiers import ClassifierSpec, spec_to_text
from .dataset import CURATED_SUBSETS, DatasetError, load_dataset, load_manifest
from .evaluation import (
    DEFAULT_K_GRID,
    DEFAULT_KAPPA_GRID,
    EvalReport,
    ExperimentConfig,
    compare,
    evaluate_specs,
    sweep,
)
from .example import run_example
from .reporting import (
    format_curve_table,
    format_report_table,
    render_curve_figure,
    render_ratio_figure,
    render_report_figure,
    write_curve_csv,
    write_report_csv,
)

DEFAULT_OUT = "localbayes-out"


def _parse_grid(text: str, integer: bool) -> tuple:
    """Accepts "a,b,c" or "start:stop:step" (stop inclusive)."""
    cast = int if integer else float
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError("grid ranges need start:stop:step")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ValueError("grid step must be positive")
        values = np.arange(start, stop + step / 2, step)
        return tuple(cast(v) for v in values)
    return tuple(cast(float(tok)) for tok in text.split(",") if tok.strip())


def _parse_features(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split(",") if tok.strip())


def _add_shared_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--folds", type=int, default=10, help="cross-validation folds (default 10)")
    parser.add_argument("--resamples", type=int, default=10, help="independent reshuffles (default 10)")
    parser.add_argument("--seed", type=int, default=0, help="base random seed (default 0)")
    parser.add_argument("--features", type=_parse_features, default=None, metavar="I,J,...",
                        help="attribute indices to keep, overriding the manifest")
    parser.add_argument("--paper", action="store_true",
                        help="use the curated per-dataset feature subset shipped with the package")
    parser.add_argument("--no-normalize", action="store_true",
                        help="skip range normalization in distance-based classifiers")
    parser.add_argument("--stratified", action="store_true",
                        help="stratify folds by class (default: plain shuffled folds)")
    parser.add_argument("--workers", type=int, default=1, help="worker threads (default 1)")
    parser.add_argument("--out", default=DEFAULT_OUT, metavar="DIR",
                        help=f"output directory (default ./{DEFAULT_OUT})")


def _resolve_subset(args, name: str):
    if args.features is not None:
        return args.features
    if args.paper:
        if name not in CURATED_SUBSETS:
            raise DatasetError(f"no curated feature subset is known for dataset {name!r}")
        return CURATED_SUBSETS[name]  # None means all attributes
    return None


def _load(args, manifest_path):
    manifest = load_manifest(manifest_path)
    subset = _resolve_subset(args, manifest.name)
    ds = load_dataset(manifest, feature_subset=subset)
    return manifest, ds, subset


def _config(args, specs=()) -> ExperimentConfig:
    return ExperimentConfig(
        folds=args.folds,
        resamples=args.resamples,
        base_seed=args.seed,
        specs=tuple(specs),
        kappa_grid=getattr(args, "kappa_grid", None) or DEFAULT_KAPPA_GRID,
        k_grid=getattr(args, "k_grid", None) or DEFAULT_K_GRID,
        stratified=args.stratified,
        workers=args.workers,
    )


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_run_config(out: Path, command: str, args, specs, manifests=(), extras=None):
    lines = [
        f"command = {command}",
        f"version = {__version__}",
        f"folds = {args.folds}",
        f"resamples = {args.resamples}",
        f"seed = {args.seed}",
        f"stratified = {'true' if args.stratified else 'false'}",
        f"workers = {args.workers}",
    ]
    for manifest in manifests:
        lines.append(f"dataset = {manifest.name} ({manifest.path})")
    for key, value in (extras or {}).items():
        lines.append(f"{key} = {value}")
    blocks = ["\n".join(lines) + "\n"]
    blocks.extend(spec_to_text(s) for s in specs)
    (out / "run_config.txt").write_text("\n".join(blocks), encoding="utf-8")


def _echo(text: str):
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def cmd_example(args) -> int:
    outcome = run_example()
    names = outcome.dataset.class_names
    first, second = names[0], names[1]
    lines = [
        "worked example: two classes on one numeric attribute",
        f"training {first}: 5 10 11",
        f"training {second}: 1 2 7 8",
        f"query: x = {outcome.query[0]:g} (true class {outcome.true_class})",
        "",
        f"laplace_nb   p({first}|x) = {outcome.laplace_posteriors[first]:.6f}   "
        f"p({second}|x) = {outcome.laplace_posteriors[second]:.6f}   -> {outcome.laplace_predicted}",
        f"gaussian_nb  p({first}|x) = {outcome.gaussian_posteriors[first]:.6f}   "
        f"p({second}|x) = {outcome.gaussian_posteriors[second]:.6f}   -> {outcome.gaussian_predicted}",
        "",
        f"kappa_bayes with unnormalized distances, score ratio F = {first}/{second}:",
    ]
    for kappa, ratio, predicted in outcome.ratios:
        lines.append(f"  kappa = {kappa:<6g} F = {ratio:<12.6g} -> {predicted}")
    if outcome.threshold is not None:
        lines.append(f"the ratio crosses 1 at kappa = {outcome.threshold:.4f}")
    else:
        lines.append("the ratio never crosses 1 on the scanned range")
    _echo("\n".join(lines))

    if args.out is not None:
        out = _out_dir(args)
        from .example import load_example_split, score_ratio

        _, X_train, y_train, x_query, _ = load_example_split()
        kappas = [float(k) for k in range(0, 101)]
        ratios = [score_ratio(k, X_train, y_train, x_query) for k in kappas]
        with open(out / "ratio_curve.csv", "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(("kappa", "score_ratio"))
            for k, r in zip(kappas, ratios):
                writer.writerow((f"{k:g}", f"{r:.9g}"))
        render_ratio_figure(kappas, ratios, out / "ratio_curve.png")
        sys.stderr.write(f"wrote {out / 'ratio_curve.csv'} and {out / 'ratio_curve.png'}\n")
    return 0


def _evaluate_spec_list(args) -> list[ClassifierSpec]:
    normalize = not args.no_normalize
    specs: list[ClassifierSpec] = []
    chose_any = args.all or args.laplace or args.gaussian or args.kappa is not None or args.knn is not None
    if args.all or not chose_any:
        return [
            ClassifierSpec(kind="kappa_bayes", kappa=60.0, normalize=normalize),
            ClassifierSpec(kind="laplace_nb"),
            ClassifierSpec(kind="gaussian_nb"),
            ClassifierSpec(kind="knn", k_neighbors=5, normalize=normalize),
        ]
    if args.kappa is not None:
        specs.append(ClassifierSpec(kind="kappa_bayes", kappa=args.kappa, normalize=normalize))
    if args.laplace:
        specs.append(ClassifierSpec(kind="laplace_nb"))
    if args.gaussian:
        specs.append(ClassifierSpec(kind="gaussian_nb"))
    if args.knn is not None:
        specs.append(ClassifierSpec(kind="knn", k_neighbors=args.knn, normalize=normalize))
    return specs


def cmd_evaluate(args) -> int:
    manifest, ds, subset = _load(args, args.manifest)
    specs = _evaluate_spec_list(args)
    cfg = _config(args, specs)
    report = evaluate_specs(ds, cfg, dataset_name=manifest.name)
    _echo(format_report_table(report))

    out = _out_dir(args)
    write_report_csv(report, out / f"{manifest.name}_report.csv")
    render_report_figure(report, out / f"{manifest.name}_report.png")
    (out / f"{manifest.name}_report.txt").write_text(format_report_table(report), encoding="utf-8")
    _write_run_config(out, "evaluate", args, specs, [manifest],
                      extras={"feature_subset": _subset_note(subset, manifest)})
    sys.stderr.write(f"wrote report files under {out}\n")
    return 0


def _subset_note(subset, manifest) -> str:
    effective = subset if subset is not None else manifest.feature_subset
    return "all" if effective is None else ",".join(str(i) for i in effective)


def cmd_sweep(args) -> int:
    manifest, ds, subset = _load(args, args.manifest)
    normalize = not args.no_normalize
    kind = args.classifier
    base = ClassifierSpec(kind=kind, normalize=normalize)
    cfg = _config(args, [base])
    grid = cfg.kappa_grid if kind == "kappa_bayes" else cfg.k_grid
    curve = sweep(ds, kind, grid, cfg)
    _echo(format_curve_table(curve))

    out = _out_dir(args)
    stem = f"{manifest.name}_{kind}_sweep"
    write_curve_csv(curve, out / f"{stem}.csv")
    render_curve_figure({manifest.name: curve}, out / f"{stem}.png", title=manifest.name)
    _write_run_config(out, "sweep", args, [base], [manifest],
                      extras={"feature_subset": _subset_note(subset, manifest),
                              "grid": ",".join(f"{v:g}" for v in curve.values)})
    sys.stderr.write(f"wrote {stem}.csv and {stem}.png under {out}\n")
    return 0


def cmd_compare(args) -> int:
    normalize = not args.no_normalize
    specs = [
        ClassifierSpec(kind="kappa_bayes", kappa=60.0, normalize=normalize),
        ClassifierSpec(kind="laplace_nb"),
        ClassifierSpec(kind="gaussian_nb"),
        ClassifierSpec(kind="knn", normalize=normalize),
    ]
    cfg = _config(args, specs)
    out = _out_dir(args)
    reports: list[EvalReport] = []
    manifests = []
    for manifest_path in args.manifests:
        manifest, ds, subset = _load(args, manifest_path)
        manifests.append(manifest)
        report = compare(ds, cfg, dataset_name=manifest.name)
        reports.append(report)
        _echo(format_report_table(report))
        _print_timing_note(report)
        write_report_csv(report, out / f"{manifest.name}_report.csv")
        render_report_figure(report, out / f"{manifest.name}_report.png")
        for kind, curve in report.sweep_curves.items():
            stem = f"{manifest.name}_{kind}_sweep"
            write_curve_csv(curve, out / f"{stem}.csv")
            render_curve_figure({manifest.name: curve}, out / f"{stem}.png", title=manifest.name)

    write_report_csv(reports, out / "comparison.csv")
    if len(reports) > 1:
        _echo(_aggregate_table(reports))
    _write_run_config(out, "compare", args, specs, manifests)
    sys.stderr.write(f"wrote comparison files under {out}\n")
    return 0


def _print_timing_note(report: EvalReport):
    by_label = {row.label: row for row in report.rows}
    laplace = by_label.get("laplace_nb")
    fixed = next((row for row in report.rows if row.label.startswith("proposed (kappa=")), None)
    if laplace and fixed and laplace.wall_time_s > 0:
        ratio = fixed.wall_time_s / laplace.wall_time_s
        sys.stderr.write(
            f"timing ({report.dataset_name}): {fixed.label} took {ratio:.2f}x the laplace_nb "
            "wall time (hardware dependent)\n"
        )


def _aggregate_table(reports) -> str:
    labels: list[str] = []
    for report in reports:
        for row in report.rows:
            if row.label not in labels:
                labels.append(row.label)
    lines = [f"mean accuracy over {len(reports)} datasets"]
    for label in labels:
        values = [
            row.mean_accuracy for report in reports for row in report.rows if row.label == label
        ]
        if len(values) == len(reports):
            lines.append(f"  {label:<26} {float(np.mean(values)):.4f}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="localbayes",
        description="Neighborhood-weighted Bayes classification benchmarks",
    )
    parser.add_argument("--version", action="version", version=f"localbayes {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_example = sub.add_parser("example", help="print the built-in worked example")
    p_example.add_argument("--out", default=None, metavar="DIR",
                           help="also write the score ratio curve (CSV and PNG) here")
    p_example.set_defaults(func=cmd_example)

    p_eval = sub.add_parser("evaluate", help="cross-validate classifiers at fixed hyperparameters")
    p_eval.add_argument("manifest", help="dataset manifest file")
    p_eval.add_argument("--all", action="store_true", help="all four classifiers at defaults")
    p_eval.add_argument("--kappa", type=float, default=None, help="run kappa_bayes at this kappa")
    p_eval.add_argument("--knn", type=int, default=None, metavar="K", help="run knn at this k")
    p_eval.add_argument("--laplace", action="store_true", help="run the categorical naive Bayes")
    p_eval.add_argument("--gaussian", action="store_true", help="run the Gaussian naive Bayes")
    _add_shared_flags(p_eval)
    p_eval.set_defaults(func=cmd_evaluate)

    p_sweep = sub.add_parser("sweep", help="accuracy curve over a hyperparameter grid")
    p_sweep.add_argument("manifest", help="dataset manifest file")
    p_sweep.add_argument("--classifier", choices=("kappa_bayes", "knn"), default="kappa_bayes")
    p_sweep.add_argument("--kappa-grid", type=lambda t: _parse_grid(t, integer=False),
                         default=None, metavar="GRID", help='e.g. "0:95:5" or "0,5,10"')
    p_sweep.add_argument("--k-grid", type=lambda t: _parse_grid(t, integer=True),
                         default=None, metavar="GRID", help='e.g. "1:31:2" or "1,3,5"')
    _add_shared_flags(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_cmp = sub.add_parser("compare", help="full four-classifier comparison with sweeps")
    p_cmp.add_argument("manifests", nargs="+", help="dataset manifest files")
    p_cmp.add_argument("--kappa-grid", type=lambda t: _parse_grid(t, integer=False),
                       default=None, metavar="GRID")
    p_cmp.add_argument("--k-grid", type=lambda t: _parse_grid(t, integer=True),
                       default=None, metavar="GRID")
    _add_shared_flags(p_cmp)
    p_cmp.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING, format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DatasetError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
