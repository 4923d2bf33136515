"""Command-line surface: generate / measure / calibrate / plot.

All state comes from flags (or a JSON config file via ``--config``;
explicit flags win).  Outputs are byte-deterministic for a fixed
command line: JSON is written with sorted keys, floats at full repr
precision, and the SVG renderer embeds no timestamps.

Exit codes: 0 success, 2 invalid input, 3 algorithm failure (e.g. a
single-mode score distribution, or an empty group in a gamma
partition).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bias as bias_mod
from .bias import BiasMetricKind, risk_estimate, score_bias, threshold_bias
from .calibration import calibrate_dataset, fit, model_to_dict
from .conditional import (
    MeanshiftConfig,
    cond_calibrate_dataset,
    fit_conditional,
    model_to_dict_conditional,
)
from .dataset import (
    GroupId,
    GroupVocabulary,
    PAIR_HEADER,
    RECORD_HEADER,
    Schema,
    ScoreDataset,
    dataset_from_rows,
    parse_rows,
)
from .empirical import DEFAULT_SIGMA, StepCurve, auc
from .errors import (
    AlgorithmError,
    InputError,
    ScoreCalibError,
    SingleModeError,
)
from .report import BiasReport
from .svgplot import render_gap_svg
from .synth import BetaParams, SynthSpec, generate

DEFAULT_THRESHOLDS = (0.1, 0.5, 0.95)

_METRICS = {k.value: k for k in BiasMetricKind}


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _pct(value) -> str:
    return "n/a" if value is None else f"{100.0 * value:.2f}%"


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise InputError("--config file must contain a JSON object")
    return data


def _opt(args, config: dict, key: str, default=None):
    value = getattr(args, key, None)
    if value is not None:
        return value
    if key in config:
        return config[key]
    return default


def _load_input(args, config) -> tuple[ScoreDataset, Schema, list[list[str]]]:
    path = _opt(args, config, "input")
    if not path:
        raise InputError("--input is required")
    schema = Schema(_opt(args, config, "schema", "pair"))
    vocab = GroupVocabulary(
        _opt(args, config, "minority_token", "minority"),
        _opt(args, config, "majority_token"),
    )
    rows = parse_rows(path, schema)
    return dataset_from_rows(rows, schema, vocab), schema, rows


def _metric_kinds(args, config) -> list[BiasMetricKind]:
    names = _opt(args, config, "metric", ["dp"])
    kinds = []
    for name in names:
        if name not in _METRICS:
            raise InputError(f"unknown metric {name!r}")
        if _METRICS[name] not in kinds:
            kinds.append(_METRICS[name])
    return kinds


def _metric_curve_set(d: ScoreDataset, kind: BiasMetricKind, stage: str):
    """Curves to dump for one metric: {filename_stem: StepCurve}."""
    out = {}
    parts = (
        [BiasMetricKind.EO, BiasMetricKind.FPR_GAP]
        if kind is BiasMetricKind.EOD
        else [kind]
    )
    for part in parts:
        curves = bias_mod.group_curves(d, part)
        for group, curve in curves.items():
            out[f"{part.value}_{group.value}_{stage}"] = curve
    return out


def _safe_auc(d: ScoreDataset):
    try:
        return auc(d)
    except ScoreCalibError:
        return None


def _bias_report(
    d: ScoreDataset,
    kind: BiasMetricKind,
    calibrated: ScoreDataset | None,
    thresholds,
) -> tuple[BiasReport, dict]:
    report = BiasReport(metric=kind, before=score_bias(d, kind))
    if kind is BiasMetricKind.EOD:
        report.components = {
            "eo": {"before": score_bias(d, BiasMetricKind.EO)},
            "fpr_gap": {"before": score_bias(d, BiasMetricKind.FPR_GAP)},
        }
    report.curves = _metric_curve_set(d, kind, "before")
    if calibrated is not None:
        report.after = score_bias(calibrated, kind)
        if kind is BiasMetricKind.EOD:
            report.components["eo"]["after"] = score_bias(calibrated, BiasMetricKind.EO)
            report.components["fpr_gap"]["after"] = score_bias(
                calibrated, BiasMetricKind.FPR_GAP
            )
        report.curves.update(_metric_curve_set(calibrated, kind, "after"))
        report.risk = risk_estimate(d.scores(), calibrated.scores())
        if d.labeled:
            report.auc_before = _safe_auc(d)
            report.auc_after = _safe_auc(calibrated)
    entry = report.to_dict()
    entry["threshold_bias"] = {
        repr(t): threshold_bias(d, kind, t) for t in thresholds
    }
    if calibrated is not None:
        entry["threshold_bias_after"] = {
            repr(t): threshold_bias(calibrated, kind, t) for t in thresholds
        }
    return report, entry


def _auc_by_group(d: ScoreDataset):
    if not d.labeled:
        return None
    return {
        group.value: _safe_auc(d.subset(group))
        for group in GroupId
    }


def _dump_curves(out_dir: Path, reports: list[BiasReport]) -> None:
    seen = {}
    for report in reports:
        seen.update(report.curves)
    for stem, curve in sorted(seen.items()):
        curve.to_csv(out_dir / f"{stem}.csv")


def _print_summary(entries: dict, auc_by_group, header: str) -> None:
    print(header)
    for name, entry in entries.items():
        line = f"  {name.upper()} bias: before {_pct(entry['before'])}"
        if entry["after"] is not None:
            line += f"  after {_pct(entry['after'])}"
        print(line)
        for theta, value in entry["threshold_bias"].items():
            print(f"    at theta={theta}: {_pct(value)}")
    if auc_by_group is not None:
        shown = "  ".join(f"{g}: {_pct(v)}" for g, v in auc_by_group.items())
        print(f"  AUC by group: {shown}")


def cmd_generate(args) -> int:
    config = _load_config(args.config)

    def beta_field(key):
        raw = _opt(args, config, key)
        if raw is None:
            raise InputError(f"missing synthetic spec field {key!r}")
        if isinstance(raw, str):
            parts = raw.split(",")
            if len(parts) != 2:
                raise InputError(f"{key!r} must be 'shape1,shape2', got {raw!r}")
            raw = [float(p) for p in parts]
        return BetaParams(float(raw[0]), float(raw[1]))

    def required(key, cast):
        value = _opt(args, config, key)
        if value is None:
            raise InputError(f"missing synthetic spec field {key!r}")
        return cast(value)

    spec = SynthSpec(
        n_minority=required("n_minority", int),
        n_majority=required("n_majority", int),
        pos_rate_a=required("pos_rate_a", float),
        pos_rate_b=required("pos_rate_b", float),
        minority_pos=beta_field("minority_pos"),
        minority_neg=beta_field("minority_neg"),
        majority_pos=beta_field("majority_pos"),
        majority_neg=beta_field("majority_neg"),
        seed=int(_opt(args, config, "seed", 0)),
    )
    out_dir = Path(_opt(args, config, "out_dir", "."))
    out_dir.mkdir(parents=True, exist_ok=True)
    dataset = generate(spec)
    from .dataset import dump_dataset

    dest = out_dir / "dataset.csv"
    dump_dataset(dataset, dest)
    print(
        f"wrote {len(dataset)} pairs ({spec.n_minority} minority, "
        f"{spec.n_majority} majority) to {dest}"
    )
    return 0


def cmd_measure(args) -> int:
    config = _load_config(args.config)
    d, _, _ = _load_input(args, config)
    kinds = _metric_kinds(args, config)
    thresholds = [float(t) for t in _opt(args, config, "thresholds", DEFAULT_THRESHOLDS)]
    out_dir = Path(_opt(args, config, "out_dir", "."))
    out_dir.mkdir(parents=True, exist_ok=True)

    reports, entries = [], {}
    for kind in kinds:
        report, entry = _bias_report(d, kind, None, thresholds)
        reports.append(report)
        entries[kind.value] = entry
    auc_groups = _auc_by_group(d)
    payload = {
        "command": "measure",
        "dataset": {
            "n": len(d),
            "n_minority": d.count(GroupId.MINORITY),
            "n_majority": d.count(GroupId.MAJORITY),
            "labeled": d.labeled,
        },
        "metrics": entries,
        "auc_by_group": auc_groups,
    }
    _write_json(out_dir / "report.json", payload)
    _dump_curves(out_dir, reports)
    _print_summary(entries, auc_groups, f"measured {len(d)} pairs")
    return 0


def cmd_calibrate(args) -> int:
    config = _load_config(args.config)
    d, schema, rows = _load_input(args, config)
    kinds = _metric_kinds(args, config)
    thresholds = [float(t) for t in _opt(args, config, "thresholds", DEFAULT_THRESHOLDS)]
    algorithm = _opt(args, config, "algorithm", "calib")
    sigma = float(_opt(args, config, "sigma", DEFAULT_SIGMA))
    seed = int(_opt(args, config, "seed", 0))
    gamma = _opt(args, config, "gamma")
    bandwidth = _opt(args, config, "bandwidth")
    out_dir = Path(_opt(args, config, "out_dir", "."))
    out_dir.mkdir(parents=True, exist_ok=True)

    fit_sel = _opt(args, config, "fit", "self")
    if fit_sel == "self":
        fit_set = d
    else:
        vocab = GroupVocabulary(
            _opt(args, config, "minority_token", "minority"),
            _opt(args, config, "majority_token"),
        )
        fit_set = dataset_from_rows(parse_rows(fit_sel, schema), schema, vocab)

    model_payload = None
    if algorithm == "none":
        calibrated = d
    elif algorithm == "calib":
        model = fit(fit_set, sigma, seed)
        calibrated = calibrate_dataset(model, d)
        model_payload = {"algorithm": "calib", **model_to_dict(model)}
    elif algorithm == "ccalib":
        cfg = MeanshiftConfig(bandwidth=float(bandwidth)) if bandwidth else MeanshiftConfig()
        model = fit_conditional(
            fit_set,
            sigma,
            seed,
            gamma_override=None if gamma is None else float(gamma),
            cfg=cfg,
            use_true_labels=bool(_opt(args, config, "use_true_labels", False)),
        )
        calibrated = cond_calibrate_dataset(model, d)
        model_payload = {"algorithm": "ccalib", **model_to_dict_conditional(model)}
    else:
        raise InputError(f"unknown algorithm {algorithm!r}")

    reports, entries = [], {}
    for kind in kinds:
        report, entry = _bias_report(d, kind, calibrated, thresholds)
        reports.append(report)
        entries[kind.value] = entry

    # emit the calibrated dataset in the input schema, original tokens kept
    header = PAIR_HEADER if schema is Schema.PAIR_LEVEL else RECORD_HEADER
    lines = [",".join(header)]
    new_scores = calibrated.scores()
    for row, score in zip(rows, new_scores):
        out_row = list(row)
        out_row[1] = repr(float(score))
        lines.append(",".join(out_row))
    (out_dir / "calibrated.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    risk = risk_estimate(d.scores(), new_scores)
    auc_groups_before = _auc_by_group(d)
    auc_groups_after = _auc_by_group(calibrated)
    payload = {
        "command": "calibrate",
        "algorithm": algorithm,
        "sigma": sigma,
        "seed": seed,
        "fit": fit_sel,
        "dataset": {
            "n": len(d),
            "n_minority": d.count(GroupId.MINORITY),
            "n_majority": d.count(GroupId.MAJORITY),
            "labeled": d.labeled,
        },
        "metrics": entries,
        "risk": risk,
        "auc_before": _safe_auc(d) if d.labeled else None,
        "auc_after": _safe_auc(calibrated) if d.labeled else None,
        "auc_by_group_before": auc_groups_before,
        "auc_by_group_after": auc_groups_after,
        "gamma": model_payload.get("gamma") if model_payload else None,
    }
    _write_json(out_dir / "report.json", payload)
    if model_payload is not None:
        _write_json(out_dir / "model.json", model_payload)
    _dump_curves(out_dir, reports)
    _print_summary(
        entries, auc_groups_before, f"calibrated {len(d)} pairs with {algorithm}"
    )
    print(f"  risk: {_pct(risk)}")
    if payload["auc_before"] is not None and payload["auc_after"] is not None:
        delta = payload["auc_after"] - payload["auc_before"]
        print(
            f"  AUC: before {_pct(payload['auc_before'])}  after "
            f"{_pct(payload['auc_after'])}  (delta {100 * delta:+.2f}pp)"
        )
    return 0


def cmd_plot(args) -> int:
    config = _load_config(args.config)
    inputs = _opt(args, config, "input")
    if not inputs or len(inputs) != 2:
        raise InputError("plot requires exactly two --input curve CSVs")
    out_dir = Path(_opt(args, config, "out_dir", "."))
    out_dir.mkdir(parents=True, exist_ok=True)
    curve_a = StepCurve.from_csv(inputs[0])
    curve_b = StepCurve.from_csv(inputs[1])
    title = _opt(args, config, "title", "threshold curves")
    svg = render_gap_svg(
        curve_a,
        curve_b,
        label_a=Path(inputs[0]).stem,
        label_b=Path(inputs[1]).stem,
        title=title,
    )
    dest = out_dir / "curves.svg"
    dest.write_text(svg, encoding="utf-8")
    print(f"wrote {dest}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scorecalib",
        description="Measure threshold-integrated group bias in matching scores "
        "and remove it by post-processing calibration.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="JSON config file; explicit flags override it")
        p.add_argument("--out-dir", dest="out_dir", help="output directory (default .)")

    g = sub.add_parser("generate", help="write a synthetic scored-pair CSV")
    add_common(g)
    g.add_argument("--n-minority", dest="n_minority", type=int)
    g.add_argument("--n-majority", dest="n_majority", type=int)
    g.add_argument("--pos-rate-a", dest="pos_rate_a", type=float)
    g.add_argument("--pos-rate-b", dest="pos_rate_b", type=float)
    g.add_argument("--beta-minority-pos", dest="minority_pos", metavar="S1,S2")
    g.add_argument("--beta-minority-neg", dest="minority_neg", metavar="S1,S2")
    g.add_argument("--beta-majority-pos", dest="majority_pos", metavar="S1,S2")
    g.add_argument("--beta-majority-neg", dest="majority_neg", metavar="S1,S2")
    g.add_argument("--seed", type=int)
    g.set_defaults(func=cmd_generate)

    def add_dataset_flags(p):
        p.add_argument("--input", help="input CSV path")
        p.add_argument("--schema", choices=["pair", "record"])
        p.add_argument("--minority-token", dest="minority_token")
        p.add_argument(
            "--majority-token",
            dest="majority_token",
            help="declare a closed group vocabulary; other tokens are rejected",
        )
        p.add_argument(
            "--labels",
            choices=["auto"],
            help="label handling; 'auto' detects labels from the label column",
        )
        p.add_argument(
            "--metric",
            nargs="+",
            choices=sorted(_METRICS),
            help="bias metrics to report (default: dp)",
        )
        p.add_argument("--thresholds", nargs="+", type=float)

    m = sub.add_parser("measure", help="report bias for a scored-pair CSV")
    add_common(m)
    add_dataset_flags(m)
    m.set_defaults(func=cmd_measure)

    c = sub.add_parser("calibrate", help="calibrate scores and report before/after")
    add_common(c)
    add_dataset_flags(c)
    c.add_argument("--algorithm", choices=["calib", "ccalib", "none"])
    c.add_argument("--sigma", type=float, help="jitter stddev (default 0.05)")
    c.add_argument("--seed", type=int)
    c.add_argument("--gamma", type=float, help="explicit split threshold for ccalib")
    c.add_argument("--bandwidth", type=float, help="meanshift bandwidth for ccalib")
    c.add_argument(
        "--fit",
        help="'self' to fit on the input, or a CSV path for a held-out fit set",
    )
    c.add_argument(
        "--use-true-labels",
        dest="use_true_labels",
        action="store_const",
        const=True,
        help="partition a labeled fit set by its labels instead of by gamma (ccalib)",
    )
    c.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("plot", help="render two curve CSVs as an SVG with gap band")
    add_common(p)
    p.add_argument("--input", nargs=2, metavar=("CURVE_A", "CURVE_B"))
    p.add_argument("--title")
    p.set_defaults(func=cmd_plot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SingleModeError as exc:
        print(f"error: {exc} (use --gamma to set the threshold)", file=sys.stderr)
        return 3
    except AlgorithmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
