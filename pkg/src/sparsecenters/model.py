"""Trained center classifier: discrimination functions, prediction, JSON I/O.

A model classifies x by comparing its distance to two center vectors.  Only
coordinates where the centers differ can influence the decision, and the
trainers guarantee at most k such coordinates, recorded in ``selected``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from ._util import fmt_real
from .dataset import FeatureScale
from .errors import DataError

MODEL_FORMAT_VERSION = 1


@dataclass(frozen=True)
class CenterModel:
    """Immutable trained classifier.

    ``theta_pos``/``theta_neg`` are the class centers (in scaled space when
    ``scale`` is present), ``selected`` the sorted indices where they may
    differ, and ``k`` the sparsity bound they were trained under.
    """

    kind: str  # "l1" or "l2"
    theta_pos: np.ndarray
    theta_neg: np.ndarray
    selected: np.ndarray
    k: int
    scale: FeatureScale | None = None
    feature_names: list[str] | None = None

    def __post_init__(self):
        if self.kind not in ("l1", "l2"):
            raise ValueError(f"unknown model kind {self.kind!r}")
        tp = np.asarray(self.theta_pos, dtype=np.float64)
        tn = np.asarray(self.theta_neg, dtype=np.float64)
        sel = np.asarray(self.selected, dtype=np.intp)
        if tp.ndim != 1 or tp.shape != tn.shape:
            raise ValueError("center vectors must be equal-length vectors")
        if not (np.all(np.isfinite(tp)) and np.all(np.isfinite(tn))):
            raise ValueError("center vectors must be finite")
        m = tp.shape[0]
        if sel.ndim != 1 or (sel.size and (sel.min() < 0 or sel.max() >= m)):
            raise ValueError("selected indices out of range")
        if np.unique(sel).size != sel.size:
            raise ValueError("selected indices must be distinct")
        sel = np.sort(sel)
        if self.k < 0:
            raise ValueError(f"k must be nonnegative, got {self.k}")
        if sel.size > self.k:
            raise ValueError(f"{sel.size} selected features exceed k={self.k}")
        off = np.ones(m, dtype=bool)
        off[sel] = False
        if not np.array_equal(tp[off], tn[off]):
            raise ValueError("centers must agree exactly off the selected set")
        if self.scale is not None and self.scale.sigma.shape[0] != m:
            raise ValueError("scale length does not match the model dimension")
        if self.feature_names is not None:
            names = list(self.feature_names)
            if len(names) != m:
                raise ValueError("feature_names length does not match dimension")
            object.__setattr__(self, "feature_names", names)
        for name, arr in (("theta_pos", tp), ("theta_neg", tn), ("selected", sel)):
            arr = arr.copy() if arr is getattr(self, name) else arr
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        # Prediction works on the selected coordinates only; the constant
        # part of the linear squared-distance form is fixed at build time.
        object.__setattr__(self, "_tp_sel", self.theta_pos[self.selected])
        object.__setattr__(self, "_tn_sel", self.theta_neg[self.selected])
        object.__setattr__(self, "_diff_sel", self._tp_sel - self._tn_sel)
        object.__setattr__(
            self,
            "_l2_const",
            float(np.dot(tn, tn) - np.dot(tp, tp)),
        )

    @property
    def n_features(self) -> int:
        return int(self.theta_pos.shape[0])


def _selected_coords(model: CenterModel, x: np.ndarray) -> np.ndarray:
    xs = x[model.selected]
    if model.scale is not None:
        xs = xs / model.scale.sigma[model.selected]
    return xs


def discriminant(model: CenterModel, x) -> float:
    """Signed score of x: positive means nearer the positive center.

    For squared-distance models this is the linear form
    (|theta_neg|^2 - |theta_pos|^2) + 2 x . (theta_pos - theta_neg); for
    absolute-distance models it is the difference of the two L1 distances.
    Either way, only selected coordinates of x contribute.  When the model
    carries a scale, x is taken raw and standardized internally.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != model.n_features:
        raise ValueError(
            f"dimension mismatch: x has {x.shape} entries, "
            f"model expects {model.n_features}"
        )
    xs = _selected_coords(model, x)
    if model.kind == "l2":
        return model._l2_const + 2.0 * float(np.dot(xs, model._diff_sel))
    return float(
        np.sum(np.abs(xs - model._tn_sel)) - np.sum(np.abs(xs - model._tp_sel))
    )


def discriminant_matrix(model: CenterModel, X) -> np.ndarray:
    """Discriminant of every column of an (m, n) sample matrix."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] != model.n_features:
        raise ValueError(
            f"dimension mismatch: matrix has {X.shape[0] if X.ndim == 2 else X.ndim} "
            f"rows, model expects {model.n_features}"
        )
    Xs = X[model.selected, :]
    if model.scale is not None:
        Xs = Xs / model.scale.sigma[model.selected, None]
    if model.kind == "l2":
        return model._l2_const + 2.0 * (model._diff_sel @ Xs)
    return np.sum(
        np.abs(Xs - model._tn_sel[:, None]) - np.abs(Xs - model._tp_sel[:, None]),
        axis=0,
    )


def predict(model: CenterModel, x, strict_ties: bool = False) -> tuple[int, float]:
    """Label x as +1 or -1 by the sign of the discriminant.

    An exact tie resolves to +1; with ``strict_ties`` it is reported as
    label 0 so callers can count ties separately.
    """
    delta = discriminant(model, x)
    if delta > 0.0:
        return 1, delta
    if delta < 0.0:
        return -1, delta
    return (0, delta) if strict_ties else (1, delta)


def labels_from_scores(delta: np.ndarray) -> np.ndarray:
    """Vector form of the prediction rule (ties map to +1)."""
    return np.where(delta >= 0.0, 1, -1)


def save_model(model: CenterModel, path) -> None:
    """Write the model as JSON with 17-significant-digit reals.

    The schema is flat and fixed: format_version, kind, k, selected,
    theta_pos, theta_neg, scale (nullable), feature_names (nullable).
    Output is deterministic, so identical models give identical files.
    """

    def real_array(values) -> str:
        return "[" + ", ".join(fmt_real(v) for v in values) + "]"

    scale = "null" if model.scale is None else real_array(model.scale.sigma)
    names = (
        "null"
        if model.feature_names is None
        else json.dumps(model.feature_names, ensure_ascii=False)
    )
    selected = "[" + ", ".join(str(int(i)) for i in model.selected) + "]"
    text = (
        "{\n"
        f'  "format_version": {MODEL_FORMAT_VERSION},\n'
        f'  "kind": {json.dumps(model.kind)},\n'
        f'  "k": {int(model.k)},\n'
        f'  "selected": {selected},\n'
        f'  "theta_pos": {real_array(model.theta_pos)},\n'
        f'  "theta_neg": {real_array(model.theta_neg)},\n'
        f'  "scale": {scale},\n'
        f'  "feature_names": {names}\n'
        "}\n"
    )
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def load_model(path) -> CenterModel:
    """Read a model written by save_model, revalidating all invariants."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: not valid JSON: {exc}") from exc
    try:
        version = doc["format_version"]
        if version != MODEL_FORMAT_VERSION:
            raise DataError(f"{path}: unsupported format_version {version!r}")
        scale = doc["scale"]
        names = doc["feature_names"]
        model = CenterModel(
            kind=doc["kind"],
            theta_pos=np.array(doc["theta_pos"], dtype=np.float64),
            theta_neg=np.array(doc["theta_neg"], dtype=np.float64),
            selected=np.array(doc["selected"], dtype=np.intp),
            k=int(doc["k"]),
            scale=None if scale is None else FeatureScale(np.array(scale, dtype=np.float64)),
            feature_names=None if names is None else [str(n) for n in names],
        )
    except KeyError as exc:
        raise DataError(f"{path}: missing model field {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise DataError(f"{path}: invalid model: {exc}") from exc
    return model
