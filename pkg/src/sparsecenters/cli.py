"""Command-line interface: train, predict, path, evaluate, verify.

Exit status: 0 success, 1 usage/validation error, 2 data error, 3 internal
consistency error.  Diagnostics go to stderr; results go to files or
stdout, so commands compose in pipelines.
"""

from __future__ import annotations

import argparse
import csv
import sys

import numpy as np

from ._util import fmt_real
from .dataset import load_csv, standardize
from .errors import DataError, InternalConsistencyError
from .evaluate import evaluate, write_report_csv
from .model import (
    CenterModel,
    discriminant_matrix,
    labels_from_scores,
    load_model,
    save_model,
)
from .oracle import MAX_ORACLE_FEATURES, brute_force, objectives_close
from .sparse_l1 import objective_l1, sparsity_path_l1, train_l1
from .sparse_l2 import objective_l2, sparsity_path_l2, train_l2
from .sparsity_path import write_path_csv

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; remap to the documented
    # usage status by raising instead.
    def error(self, message):
        raise _UsageError(message)


def _add_data_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("data", help="CSV file, header row, one sample per row")
    p.add_argument("--label-col", default="label", help="label column name")
    p.add_argument("--pos", default="1", help="raw label mapped to +1")
    p.add_argument("--neg", default="-1", help="raw label mapped to -1")


def _add_scale_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--scale",
        choices=("none", "sd", "variance"),
        default="none",
        help="per-feature standardization before training",
    )
    p.add_argument(
        "--ddof",
        type=int,
        default=1,
        help="delta degrees of freedom of the sd/variance estimate",
    )


def _load_training_data(args):
    d = load_csv(args.data, args.label_col, args.pos, args.neg)
    scale = None
    if args.scale != "none":
        d, scale = standardize(d, mode=args.scale, ddof=args.ddof)
    return d, scale


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sparsecenters", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a sparse center model")
    _add_data_flags(p)
    p.add_argument("--kind", choices=("l1", "l2"), required=True)
    p.add_argument("--k", type=int, required=True, help="max differing features")
    _add_scale_flags(p)
    p.add_argument("--out", required=True, help="model JSON output path")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="classify CSV rows with a saved model")
    p.add_argument("model", help="model JSON file")
    p.add_argument("data", help="CSV of samples (feature columns only, or "
                                "a superset matched by name)")
    p.add_argument("--out", help="output CSV (default: stdout)")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("path", help="objective at every sparsity level")
    _add_data_flags(p)
    p.add_argument("--kind", choices=("l1", "l2"), required=True)
    _add_scale_flags(p)
    p.add_argument("--out", help="output CSV (default: stdout)")
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("evaluate", help="repeated-split sparsity-accuracy curve")
    _add_data_flags(p)
    p.add_argument("--kind", choices=("l1", "l2"), required=True)
    p.add_argument(
        "--k-range",
        required=True,
        help="sparsity levels: 'lo:hi', 'lo:hi:step', or 'k1,k2,...'",
    )
    p.add_argument("--splits", type=int, default=50)
    p.add_argument("--fraction", type=float, default=0.8)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--split-mode", choices=("stratified", "uniform"), default="stratified"
    )
    p.add_argument("--out", help="output CSV (default: stdout)")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("verify", help="check a trained model against brute force")
    _add_data_flags(p)
    p.add_argument("--kind", choices=("l1", "l2"), required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--perturb", type=float, default=0.0, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    return parser


def _parse_k_range(spec: str, m: int) -> list[int]:
    try:
        if "," in spec:
            ks = [int(part) for part in spec.split(",")]
        elif ":" in spec:
            parts = [int(part) for part in spec.split(":")]
            if len(parts) == 2:
                lo, hi, step = parts[0], parts[1], 1
            elif len(parts) == 3:
                lo, hi, step = parts
            else:
                raise ValueError
            if step < 1 or hi < lo:
                raise ValueError
            ks = list(range(lo, hi + 1, step))
        else:
            ks = [int(spec)]
    except ValueError:
        raise ValueError(
            f"cannot parse k range {spec!r}: use 'lo:hi', 'lo:hi:step' or a "
            "comma-separated list"
        ) from None
    for k in ks:
        if not 0 <= k <= m:
            raise ValueError(f"k out of range: {k} (0..{m})")
    return ks


def _open_out(path):
    if path is None:
        return sys.stdout, False
    return open(path, "w", encoding="utf-8", newline=""), True


def cmd_train(args) -> int:
    d, scale = _load_training_data(args)
    if not 0 <= args.k <= d.n_features:
        raise ValueError(f"k out of range: {args.k} (0..{d.n_features})")
    train = train_l2 if args.kind == "l2" else train_l1
    objective = objective_l2 if args.kind == "l2" else objective_l1
    model = train(d, args.k)
    if scale is not None:
        model = CenterModel(
            kind=model.kind,
            theta_pos=model.theta_pos,
            theta_neg=model.theta_neg,
            selected=model.selected,
            k=model.k,
            scale=scale,
            feature_names=model.feature_names,
        )
    save_model(model, args.out)
    names = model.feature_names or [f"f{i}" for i in range(model.n_features)]
    chosen = ",".join(names[i] for i in model.selected)
    value = objective(d, model.theta_pos, model.theta_neg)
    print(
        f"trained kind={args.kind} k={args.k} selected=[{chosen}] "
        f"objective={fmt_real(value)}",
        file=sys.stderr,
    )
    return EXIT_OK


def _load_prediction_matrix(path, model: CenterModel) -> np.ndarray:
    """Feature columns of a prediction CSV as an (m, n_rows) matrix.

    With named model features, columns are matched by name (extra columns
    such as a label are ignored); otherwise the file must have exactly the
    model's m columns in training order.
    """
    try:
        fh = open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: empty file, expected a header row") from None
        if model.feature_names is not None:
            positions = []
            for name in model.feature_names:
                hits = [i for i, h in enumerate(header) if h == name]
                if not hits:
                    raise DataError(f"{path}: missing feature column {name!r}")
                if len(hits) > 1:
                    raise DataError(f"{path}: ambiguous feature column {name!r}")
                positions.append(hits[0])
        else:
            if len(header) != model.n_features:
                raise DataError(
                    f"{path}: dimension mismatch: {len(header)} columns, "
                    f"model expects {model.n_features}"
                )
            positions = list(range(model.n_features))
        rows = []
        for row_num, cells in enumerate(reader, start=2):
            if len(cells) != len(header):
                raise DataError(
                    f"{path}: row {row_num} has {len(cells)} cells, "
                    f"expected {len(header)}"
                )
            try:
                rows.append([float(cells[i]) for i in positions])
            except ValueError:
                raise DataError(
                    f"{path}: row {row_num}: cannot parse feature values"
                ) from None
    return np.array(rows, dtype=np.float64).reshape(len(rows), model.n_features).T


def cmd_predict(args) -> int:
    model = load_model(args.model)
    X = _load_prediction_matrix(args.data, model)
    scores = discriminant_matrix(model, X)
    labels = labels_from_scores(scores)
    out, close = _open_out(args.out)
    try:
        out.write("label,delta\n")
        for label, delta in zip(labels, scores):
            out.write(f"{int(label)},{fmt_real(delta)}\n")
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_path(args) -> int:
    d, _ = _load_training_data(args)
    path = sparsity_path_l2(d) if args.kind == "l2" else sparsity_path_l1(d)
    out, close = _open_out(args.out)
    try:
        write_path_csv(path, out)
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_evaluate(args) -> int:
    d = load_csv(args.data, args.label_col, args.pos, args.neg)
    k_list = _parse_k_range(args.k_range, d.n_features)
    report = evaluate(
        d,
        kind=args.kind,
        k_list=k_list,
        n_splits=args.splits,
        fraction=args.fraction,
        seed=args.seed,
        split_mode=args.split_mode,
    )
    out, close = _open_out(args.out)
    try:
        write_report_csv(report, out)
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_verify(args) -> int:
    d = load_csv(args.data, args.label_col, args.pos, args.neg)
    if d.n_features > MAX_ORACLE_FEATURES:
        raise ValueError(
            f"verify refuses {d.n_features} features; brute force is capped "
            f"at {MAX_ORACLE_FEATURES}"
        )
    if not 0 <= args.k <= d.n_features:
        raise ValueError(f"k out of range: {args.k} (0..{d.n_features})")
    train = train_l2 if args.kind == "l2" else train_l1
    objective = objective_l2 if args.kind == "l2" else objective_l1
    model = train(d, args.k)
    theta_pos = model.theta_pos.copy()
    if args.perturb != 0.0 and model.selected.size:
        theta_pos[model.selected[0]] += args.perturb
    value = objective(d, theta_pos, model.theta_neg)
    result = brute_force(d, args.k, args.kind)
    if objectives_close(value, result.best_objective):
        print(
            f"PASS kind={args.kind} k={args.k} "
            f"objective={fmt_real(value)} oracle={fmt_real(result.best_objective)}"
        )
        return EXIT_OK
    print(
        f"FAIL kind={args.kind} k={args.k} "
        f"objective={fmt_real(value)} oracle={fmt_real(result.best_objective)}"
    )
    return EXIT_INTERNAL


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except InternalConsistencyError as exc:
        print(f"internal consistency error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
