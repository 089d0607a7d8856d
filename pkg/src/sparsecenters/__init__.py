"""Sparse center classifiers with exact, quasi-linear-time training.

Trains nearest-centroid (squared distance) and nearest-median (absolute
distance) binary classifiers under a hard bound k on how many features the
two class centers may differ in.  Both trainers are exact: the selected
feature set is globally optimal for the training objective, certified by
the brute-force oracle on small instances.  One feature ranking yields the
models for every sparsity level at once.
"""

from .dataset import Dataset, FeatureScale, load_csv, partition, standardize, write_csv
from .errors import DataError, InternalConsistencyError
from .evaluate import EvalReport, KStats, balanced_accuracy, evaluate, split
from .model import (
    CenterModel,
    discriminant,
    discriminant_matrix,
    load_model,
    predict,
    save_model,
)
from .oracle import OracleResult, brute_force
from .robust import (
    ClassCenters,
    DispersionTriple,
    class_centroids,
    class_medians,
    dispersion_triple,
    recursive_centroid_update,
    weighted_median,
)
from .sparse_l1 import (
    L1TrainArtifacts,
    objective_l1,
    sparsity_path_l1,
    train_artifacts_l1,
    train_l1,
)
from .sparse_l2 import (
    L2TrainArtifacts,
    OnlineL2Trainer,
    closed_form_optimum_l2,
    objective_l2,
    sparsity_path_l2,
    train_artifacts_l2,
    train_l2,
)
from .sparsity_path import SparsityPath

__version__ = "0.1.0"

__all__ = [
    "CenterModel",
    "ClassCenters",
    "DataError",
    "Dataset",
    "DispersionTriple",
    "EvalReport",
    "FeatureScale",
    "InternalConsistencyError",
    "KStats",
    "L1TrainArtifacts",
    "L2TrainArtifacts",
    "OnlineL2Trainer",
    "OracleResult",
    "SparsityPath",
    "balanced_accuracy",
    "brute_force",
    "class_centroids",
    "class_medians",
    "closed_form_optimum_l2",
    "discriminant",
    "discriminant_matrix",
    "dispersion_triple",
    "evaluate",
    "load_csv",
    "load_model",
    "objective_l1",
    "objective_l2",
    "partition",
    "predict",
    "recursive_centroid_update",
    "save_model",
    "sparsity_path_l1",
    "sparsity_path_l2",
    "split",
    "standardize",
    "train_artifacts_l1",
    "train_artifacts_l2",
    "train_l1",
    "train_l2",
    "weighted_median",
    "write_csv",
]
