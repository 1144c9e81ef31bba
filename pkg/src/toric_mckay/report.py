"""End-to-end pipeline: group -> lattice -> terminalization -> MMP -> census."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .census import CensusReport, sod_census
from .fan import CoefficientFunctional, coefficient_functional, rational_str, ray_json
from .groups import (
    DEFAULT_GROUP_CAP,
    DiagonalGroup,
    boundary_divisor,
    fixed_locus_census,
    minimal_generators,
    parse_group_spec,
    sl_intersection,
)
from .lattice import OverLattice, build_overlattice
from .terminalize import TerminalizationResult, build_maximal_terminalization

DEFAULT_CUTOFF = 8


@dataclass(frozen=True)
class JobSpec:
    group: str
    subcommand: str = "analyze"
    cutoff: int = DEFAULT_CUTOFF
    group_cap: int = DEFAULT_GROUP_CAP
    mmp_cap: int | None = None          # None: 10 * number of candidate rays
    strategy: str = "pulling"

    def __post_init__(self) -> None:
        if self.cutoff < 0:
            raise ValueError("cutoff must be non-negative")
        if self.group_cap < 1 or (self.mmp_cap is not None and self.mmp_cap < 1):
            raise ValueError("caps must be positive")


@dataclass
class Pipeline:
    group: DiagonalGroup
    lattice: OverLattice
    psi: CoefficientFunctional
    result: TerminalizationResult
    census: CensusReport | None


def run_pipeline(group: DiagonalGroup, strategy: str = "pulling", mmp_cap: int | None = None,
                 census: bool = True) -> Pipeline:
    lat = build_overlattice(group)
    psi = coefficient_functional(lat)
    res = build_maximal_terminalization(lat, psi, strategy, mmp_cap)
    rep = sod_census(res, group) if census else None
    return Pipeline(group, lat, psi, res, rep)


def group_json(group: DiagonalGroup) -> dict:
    h, r, _ = sl_intersection(group)
    return {
        "n": group.n,
        "order": group.order,
        "exponent": group.exponent,
        "generators": [[str(q) for q in g.weights] for g in minimal_generators(group)],
        "sl_intersection_order": h.order,
        "determinant_index": r,
        "boundary_divisor": [rational_str(b) for b in boundary_divisor(group).coefficients],
        "fixed_loci": [{"subspace": rec.label(), "inertia_order": rec.inertia.order,
                        "quotient_order": rec.quotient_order}
                       for rec in fixed_locus_census(group)],
    }


def lattice_json(lat: OverLattice) -> dict:
    return {
        "basis": [[rational_str(x) for x in row] for row in lat.basis],
        "index": lat.index,
        "boundary_rays": [ray_json(lat, r) for r in lat.boundary_rays()],
    }


def run_report(spec: JobSpec) -> dict:
    """Report document for the analyze / terminalize / census subcommands."""
    group = parse_group_spec(spec.group, spec.group_cap)
    want_census = spec.subcommand in ("analyze", "census")
    pipe = run_pipeline(group, spec.strategy, spec.mmp_cap, census=want_census)
    if spec.subcommand == "terminalize":
        return {"group": group_json(group), "terminalization": pipe.result.to_json()}
    if spec.subcommand == "census":
        return {"group": group_json(group), "census": pipe.census.to_json()}
    if spec.subcommand != "analyze":
        raise ValueError(f"unknown subcommand {spec.subcommand!r}")
    return {
        "group": group_json(group),
        "lattice": lattice_json(pipe.lattice),
        "candidates": [c.to_json() for c in pipe.result.candidates],
        "terminalization": pipe.result.to_json(),
        "census": pipe.census.to_json(),
    }


def dumps(doc) -> str:
    """Deterministic serialization: sorted keys, fixed separators."""
    return json.dumps(doc, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"
