"""Exact lattice-fan computations for quotient pairs C^n/G with G finite abelian diagonal."""

from .census import CensusReport, SODComponent, projective_collection, sod_census
from .fan import (
    FanModel,
    coefficient,
    coefficient_functional,
    compare_log_canonical,
    is_terminal,
    k0_rank,
    wall_degree,
)
from .groups import (
    DiagonalGroup,
    GroupElement,
    boundary_divisor,
    cyclic,
    fixed_locus_census,
    generate_group,
    parse_group_spec,
    sl_intersection,
)
from .lattice import OverLattice, build_overlattice
from .report import JobSpec, run_pipeline, run_report
from .sod import (
    LocalCaseOneModel,
    StackLineBundle,
    hom_graded_dim,
    lambda_set,
    phi_image,
    verify_case1_sod,
)
from .terminalize import (
    build_maximal_terminalization,
    candidate_rays,
    flop_connect,
    mmp_decompose,
)

__version__ = "0.1.0"

__all__ = [
    "CensusReport",
    "DiagonalGroup",
    "FanModel",
    "GroupElement",
    "JobSpec",
    "LocalCaseOneModel",
    "OverLattice",
    "SODComponent",
    "StackLineBundle",
    "boundary_divisor",
    "build_maximal_terminalization",
    "build_overlattice",
    "candidate_rays",
    "coefficient",
    "coefficient_functional",
    "compare_log_canonical",
    "cyclic",
    "fixed_locus_census",
    "flop_connect",
    "generate_group",
    "hom_graded_dim",
    "is_terminal",
    "k0_rank",
    "lambda_set",
    "mmp_decompose",
    "parse_group_spec",
    "phi_image",
    "projective_collection",
    "run_pipeline",
    "run_report",
    "sl_intersection",
    "sod_census",
    "verify_case1_sod",
    "wall_degree",
]
