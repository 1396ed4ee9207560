"""fairdep: kernel-dependence screening of sensitive features.

Given a tabular binary-classification dataset, the package one-hot
encodes categorical features, scores every feature and subfeature
against the label vector with a normalized kernel dependence measure
(NOCCO), flags the features scoring at or above the median as sensitive,
and can validate the flags against group-fairness disparities of a
cross-validated random-forest classifier.
"""

from .data import (
    Column,
    Dataset,
    EncodedDataset,
    Schema,
    Subfeature,
    encode,
    load_dataset,
    standardize_numeric,
)
from .dependence import DependenceConfig, hsic, nocco, regularized_operator
from .detector import (
    DependenceReport,
    FeatureScore,
    audit_dataset,
    detect,
    score_features,
    subsample,
)
from .errors import DataError, FairdepError, NumericsError, SchemaError
from .fairness import (
    FairnessMeasures,
    GroupConfusion,
    fairness_measures,
    group_confusion,
    one_vs_all_measures,
)
from .forest import ForestConfig, RandomForest
from .kernels import LINEAR, RBF, KernelSpec, center, gram
from .synth import PlantedFeature, SynthSpec, generate
from .validation import (
    KernelConsistency,
    ValidationReport,
    cross_validate,
    kernel_consistency,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "Column",
    "Dataset",
    "DataError",
    "DependenceConfig",
    "DependenceReport",
    "EncodedDataset",
    "FairdepError",
    "FairnessMeasures",
    "FeatureScore",
    "ForestConfig",
    "GroupConfusion",
    "KernelConsistency",
    "KernelSpec",
    "LINEAR",
    "NumericsError",
    "PlantedFeature",
    "RBF",
    "RandomForest",
    "Schema",
    "SchemaError",
    "Subfeature",
    "SynthSpec",
    "ValidationReport",
    "audit_dataset",
    "center",
    "cross_validate",
    "detect",
    "encode",
    "fairness_measures",
    "generate",
    "gram",
    "group_confusion",
    "hsic",
    "kernel_consistency",
    "load_dataset",
    "nocco",
    "one_vs_all_measures",
    "regularized_operator",
    "score_features",
    "standardize_numeric",
    "subsample",
    "validate",
]
