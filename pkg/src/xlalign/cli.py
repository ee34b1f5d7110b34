"""Command-line surface: fit, eval, ortho, dilation, synth.

Report tables mirror the column order of the evaluation and diagnostics
tables this toolkit is built around, so human diffing is direct. With
--format json a subcommand emits exactly one JSON object on stdout;
progress and diagnostics go to stderr. Exit codes: 0 success, 1 runtime
error, 2 usage error.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys

import numpy as np

from . import core, diagnostics, fitting, metrics, synth
from . import io as xio
from .errors import XlalignError

CLI_METHODS = {"ols": "ols", "sgd": "distance_sgd", "procrustes": "procrustes"}
SYNTH_KINDS = {"orthogonal": "orthogonal", "linear": "general_linear"}


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _nonneg_float(text: str) -> float:
    value = float(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {text}")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xlalign",
        description="Fit and audit linear maps between multilingual embedding spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_fit = sub.add_parser("fit", help="fit a linear map from paired embedding files")
    p_fit.add_argument("--src", required=True, help="source-language embedding file")
    p_fit.add_argument("--tgt", required=True, help="target-language embedding file")
    p_fit.add_argument("--method", required=True, choices=sorted(CLI_METHODS))
    p_fit.add_argument("--out", required=True, help="output map file")
    p_fit.add_argument("--val-count", type=_nonneg_int, default=0)
    p_fit.add_argument("--test-count", type=_nonneg_int, default=0)
    p_fit.add_argument("--seed", type=_nonneg_int, default=0,
                       help="seed for the split permutation and SGD batching")
    p_fit.add_argument("--config", help="JSON file with fit hyperparameters; flags override")
    p_fit.add_argument("--max-epochs", type=_positive_int)
    p_fit.add_argument("--batch-size", type=_positive_int)
    p_fit.add_argument("--learning-rate", type=_positive_float)
    p_fit.add_argument("--patience", type=_positive_int)
    p_fit.add_argument("--tolerance", type=_positive_float)
    p_fit.set_defaults(func=cmd_fit)

    p_eval = sub.add_parser("eval", help="score a map on paired embedding files")
    p_eval.add_argument("--map", required=True, dest="map_path")
    p_eval.add_argument("--src", required=True)
    p_eval.add_argument("--tgt", required=True)
    p_eval.add_argument("--format", choices=("json", "csv", "md"), default="json")
    p_eval.add_argument("--use-split", action="store_true",
                        help="evaluate only the test rows recorded in the map's provenance")
    p_eval.set_defaults(func=cmd_eval)

    p_ortho = sub.add_parser("ortho", help="orthogonality audit of a map file")
    p_ortho.add_argument("--map", required=True, dest="map_path")
    p_ortho.add_argument("--threshold", type=float, default=diagnostics.DEFAULT_FLAG_THRESHOLD)
    p_ortho.add_argument("--format", choices=("json", "csv", "md"), default="json")
    p_ortho.set_defaults(func=cmd_ortho)

    p_dil = sub.add_parser("dilation", help="dilation-uniformity audit of a map file")
    p_dil.add_argument("--map", required=True, dest="map_path")
    p_dil.add_argument("--format", choices=("json", "csv", "md"), default="json")
    p_dil.set_defaults(func=cmd_dilation)

    p_synth = sub.add_parser("synth", help="generate synthetic paired embeddings")
    p_synth.add_argument("--n", required=True, type=_positive_int)
    p_synth.add_argument("--dim", required=True, type=_positive_int)
    p_synth.add_argument("--alpha", type=_positive_float, default=1.0)
    p_synth.add_argument("--noise", type=_nonneg_float, default=0.0)
    p_synth.add_argument("--shift", type=_nonneg_float, default=0.0)
    p_synth.add_argument("--kind", choices=sorted(SYNTH_KINDS), default="orthogonal")
    p_synth.add_argument("--seed", type=_nonneg_int, default=0)
    p_synth.add_argument("--out-src", required=True)
    p_synth.add_argument("--out-tgt", required=True)
    p_synth.add_argument("--out-truth", required=True)
    p_synth.set_defaults(func=cmd_synth)

    return parser


def _load_pairs(src_path: str, tgt_path: str) -> core.PairedEmbeddings:
    return core.PairedEmbeddings(
        source=xio.read_embeddings(src_path),
        target=xio.read_embeddings(tgt_path),
    )


def _fit_config(args) -> fitting.FitConfig:
    values: dict = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            loaded = json.load(fh)
        if not isinstance(loaded, dict):
            raise XlalignError(f"{args.config}: config must be a JSON object")
        unknown = set(loaded) - {
            "method", "max_epochs", "batch_size", "learning_rate",
            "patience", "tolerance", "seed",
        }
        if unknown:
            raise XlalignError(f"{args.config}: unknown config keys {sorted(unknown)}")
        values.update(loaded)
    overrides = {
        "max_epochs": args.max_epochs,
        "batch_size": args.batch_size,
        "learning_rate": args.learning_rate,
        "patience": args.patience,
        "tolerance": args.tolerance,
    }
    values.update({k: v for k, v in overrides.items() if v is not None})
    values["method"] = CLI_METHODS[args.method]
    values["seed"] = args.seed
    return fitting.FitConfig(**values)


def cmd_fit(args) -> int:
    pairs = _load_pairs(args.src, args.tgt)
    spec = core.SplitSpec(test_count=args.test_count, val_count=args.val_count, seed=args.seed)
    indices = core.split_indices(pairs.count, spec)
    train = pairs.take(indices["train"])
    val = pairs.take(indices["val"]) if args.val_count else None

    method = CLI_METHODS[args.method]
    if method == "ols":
        result = fitting.fit_ols(train, val)
    elif method == "procrustes":
        result = fitting.fit_procrustes(train, val)
    else:
        if val is None:
            raise XlalignError("--method sgd needs --val-count >= 1")
        config = _fit_config(args)

        def log_epoch(stats: fitting.EpochStats):
            print(
                f"epoch {stats.epoch}: train {stats.train_loss:.6g} "
                f"val {stats.val_loss:.6g} lr {stats.learning_rate:.3g}",
                file=sys.stderr,
            )

        result = fitting.fit_distance_sgd(train, val, config, on_epoch=log_epoch)

    provenance = dict(result.map.provenance)
    provenance.update(
        {
            "source_file": args.src,
            "target_file": args.tgt,
            "source_lang": pairs.source.lang,
            "target_lang": pairs.target.lang,
            "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
            "split": {
                "seed": args.seed,
                "test_count": args.test_count,
                "val_count": args.val_count,
                "test_indices": [int(i) for i in indices["test"]],
            },
        }
    )
    fitted = core.LinearMap(A=result.map.A, b=result.map.b, provenance=provenance)
    xio.write_map(fitted, args.out)

    summary = {
        "method": args.method,
        "dim": fitted.dim,
        "train_count": train.count,
        "train_loss": result.train_loss,
        "val_loss": result.val_loss,
        "epochs_run": result.epochs_run,
        "converged": result.converged,
        "out": args.out,
    }
    print(json.dumps(summary))
    return 0


def _emit(report_dict: dict, fmt: str, md_columns: list[str], float_fmt: str = "{:.3f}"):
    if fmt == "json":
        print(json.dumps(report_dict))
        return
    columns = list(report_dict)
    if fmt == "csv":
        print(",".join(columns))
        print(",".join(repr(report_dict[c]) if isinstance(report_dict[c], float)
                       else str(report_dict[c]) for c in columns))
        return
    # md: human-facing, report-table column order and 3-decimal rounding
    cells = []
    for col in md_columns:
        value = report_dict[col]
        cells.append(float_fmt.format(value) if isinstance(value, float) else str(value))
    print("| " + " | ".join(md_columns) + " |")
    print("|" + "---|" * len(md_columns))
    print("| " + " | ".join(cells) + " |")


def cmd_eval(args) -> int:
    fitted = xio.read_map(args.map_path)
    pairs = _load_pairs(args.src, args.tgt)
    if args.use_split:
        split_meta = fitted.provenance.get("split")
        if not split_meta or not split_meta.get("test_indices"):
            raise XlalignError(f"{args.map_path}: provenance has no recorded test indices")
        pairs = pairs.take(np.asarray(split_meta["test_indices"], dtype=np.intp))
    report = metrics.evaluate(fitted, pairs)
    payload = {"dD": report.dD, "dC": report.dC, "fD": report.fD, "fC": report.fC,
               "n": report.n}
    if args.format == "json":
        payload.update({"d_original": report.d_original, "d_mapped": report.d_mapped})
    _emit(payload, args.format, md_columns=["dD", "dC", "fD", "fC"])
    return 0


def cmd_ortho(args) -> int:
    fitted = xio.read_map(args.map_path)
    report = diagnostics.ortho_report(fitted, threshold=args.threshold)
    _emit(
        report.as_dict(),
        args.format,
        md_columns=["mean_abs_p", "sigma_p", "min_p", "max_p", "flagged_pairs"],
    )
    return 0


def cmd_dilation(args) -> int:
    fitted = xio.read_map(args.map_path)
    report = diagnostics.dilation_report(fitted)
    _emit(
        report.as_dict(),
        args.format,
        md_columns=["alpha_bar", "nstd", "range", "min_alpha", "max_alpha"],
    )
    return 0


def cmd_synth(args) -> int:
    spec = synth.SynthSpec(
        n=args.n,
        dim=args.dim,
        alpha=args.alpha,
        shift_scale=args.shift,
        noise_sigma=args.noise,
        transform_kind=SYNTH_KINDS[args.kind],
        seed=args.seed,
    )
    pairs, truth = synth.generate(spec)
    xio.write_embeddings(pairs.source, args.out_src)
    xio.write_embeddings(pairs.target, args.out_tgt)
    xio.write_map(truth, args.out_truth)
    print(json.dumps({
        "n": spec.n,
        "dim": spec.dim,
        "kind": args.kind,
        "out_src": args.out_src,
        "out_tgt": args.out_tgt,
        "out_truth": args.out_truth,
    }))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (XlalignError, OSError, json.JSONDecodeError) as exc:
        print(f"xlalign {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
