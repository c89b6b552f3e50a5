"""Multi-view subspace clustering with featurewise weighting and adaptive local graphs."""

from .data import (
    MultiViewDataset,
    SynthSpec,
    ViewMatrix,
    generate_synthetic,
    load_dataset,
    normalize,
    save_dataset,
)
from .metrics import MetricReport, compute_metrics
from .solver import ClusteringResult, ConvergenceTrace, SolverConfig, SolverState, solve
from .spectral import ncut_baseline

__all__ = [
    "ClusteringResult",
    "ConvergenceTrace",
    "MetricReport",
    "MultiViewDataset",
    "SolverConfig",
    "SolverState",
    "SynthSpec",
    "ViewMatrix",
    "compute_metrics",
    "generate_synthetic",
    "load_dataset",
    "ncut_baseline",
    "normalize",
    "save_dataset",
    "solve",
]
