"""Immanant-filtered randomized benchmarking for passive linear-optical circuits.

Submodules
----------
partitions      irrep labels, duals, the tensor-product decomposition
symmetric_group permutations and exact S_d characters
immanants       immanant / permanent / determinant kernels
gt_patterns     Gelfand-Tsetlin basis enumeration and weights
irrep_matrices  Fock matrices, ladder operators, lifts, Casimir projectors
kostant         zero-weight-trace vs immanant identity checks
simulator       Haar gates, CPTP noise, sequences, synthetic data
analysis        filter matrices, decay fits, figure of merit, baselines
cli             command-line pipelines
"""

from . import (
    analysis,
    gt_patterns,
    immanants,
    irrep_matrices,
    kostant,
    partitions,
    simulator,
    symmetric_group,
)
from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = [
    "analysis",
    "gt_patterns",
    "immanants",
    "irrep_matrices",
    "kostant",
    "partitions",
    "simulator",
    "symmetric_group",
    "KERNEL_BACKEND",
    "__version__",
]
