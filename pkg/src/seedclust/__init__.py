"""Semi-supervised clustering grown from seed labels.

Clusters are grown by alternately ejecting anomalies (points whose expected
occurrence under a uniform-noise model of deviations from the cluster median
is below one) and absorbing pool points the model accepts.
"""

from .anomaly import AnomalyModel, classify, expectation, expectation_many, fit
from .bench import BenchmarkSpec, gen_1d, gen_2d, sample_seeds
from .core import (
    ANOMALY_LABEL,
    Dataset,
    coordinate_median,
    euclidean_distance,
    mean_squared_deviation,
)
from .engine import (
    ClusterAssignment,
    RunReport,
    assign_new,
    order_clusters,
    run,
)
from .evaluation import EvalReport, cluster_recovery, evaluate

__version__ = "0.1.0"

__all__ = [
    "ANOMALY_LABEL",
    "AnomalyModel",
    "BenchmarkSpec",
    "ClusterAssignment",
    "Dataset",
    "EvalReport",
    "RunReport",
    "assign_new",
    "classify",
    "cluster_recovery",
    "coordinate_median",
    "euclidean_distance",
    "evaluate",
    "expectation",
    "expectation_many",
    "fit",
    "gen_1d",
    "gen_2d",
    "mean_squared_deviation",
    "order_clusters",
    "run",
    "sample_seeds",
]
