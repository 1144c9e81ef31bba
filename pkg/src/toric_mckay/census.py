"""Semi-orthogonal census of a quotient pair, with K0-rank bookkeeping.

Starting from the stack of Y without boundary, the chain

    Y~  ->  (Y, B_Y)  ->  ...  ->  (X, B)

first restores the boundary orders one divisor at a time (each a case-1
drop, contributing |Lambda| = r - 1 copies of the divisor's model) and then
follows the MMP steps.  Every link adds exactly the rank it gains, and the
multiplicity of a step is that gain divided by the rank of its center.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .fan import face_model_rank, k0_rank, ray_json
from .groups import (
    DiagonalGroup,
    FixedLocusRecord,
    fixed_locus_census,
    record_for_subspace,
)
from .sod import lambda_set
from .terminalize import MMPStep, TerminalizationResult

__all__ = ["SODComponent", "CensusReport", "CensusError", "k0_rank", "sod_census",
           "projective_collection", "ProjectiveCollectionReport"]


class CensusError(AssertionError):
    """The rank bookkeeping does not close up; carries the trace so far."""

    def __init__(self, message: str, trace: list | None = None):
        super().__init__(message)
        self.trace = trace or []


@dataclass(frozen=True)
class SODComponent:
    component_type: int                 # dimension of the center: 0 point, 1 curve, 2 surface
    center: tuple[int, ...]             # coordinate indices spanning the center's subspace
    record: int | None                  # index into the fixed-locus census
    multiplicity: int
    rank_each: int
    provenance: str                     # "boundary_drop" or "step"
    source: int                         # boundary index or MMP step index
    detail: dict = field(default_factory=dict, compare=False)

    @property
    def rank(self) -> int:
        return self.multiplicity * self.rank_each

    def center_label(self) -> str:
        if not self.center:
            return "origin"
        return "span(" + ",".join(f"e{i + 1}" for i in self.center) + ")"

    def to_json(self) -> dict:
        return {
            "type": self.component_type,
            "center": self.center_label(),
            "record": self.record,
            "multiplicity": self.multiplicity,
            "rank_each": self.rank_each,
            "provenance": {"kind": self.provenance, "index": self.source, **self.detail},
        }


@dataclass
class CensusReport:
    group_order: int
    y_rank: int
    components: list[SODComponent]
    records: list[FixedLocusRecord]
    trace: list[dict]

    @property
    def total_rank(self) -> int:
        return self.y_rank + sum(c.rank for c in self.components)

    @property
    def consistent(self) -> bool:
        return self.total_rank == self.group_order

    def count(self, component_type: int) -> int:
        return sum(c.multiplicity for c in self.components if c.component_type == component_type)

    def to_json(self) -> dict:
        return {
            "group_order": self.group_order,
            "y_rank": self.y_rank,
            "total_rank": self.total_rank,
            "components": [c.to_json() for c in self.components],
            "counts_by_type": {str(t): self.count(t) for t in range(3)},
            "fixed_loci": [{"index": j, "subspace": r.label(), "inertia_order": r.inertia.order,
                            "quotient_order": r.quotient_order} for j, r in enumerate(self.records)],
            "rank_trace": self.trace,
        }


def _support(tau) -> set[int]:
    return {i for r in tau for i, x in enumerate(r) if x}


def center_subspace(n: int, tau) -> tuple[int, ...]:
    """Coordinates of the orbit closure of the smallest orthant face containing tau."""
    sup = _support(tau)
    return tuple(i for i in range(n) if i not in sup)


def sod_census(result: TerminalizationResult, group: DiagonalGroup) -> CensusReport:
    """Components cut out along Y~ -> (Y, B_Y) -> ... -> (X, B)."""
    y = result.y
    n = y.n
    records = fixed_locus_census(group)
    components: list[SODComponent] = []
    trace: list[dict] = []

    def fail(msg: str):
        raise CensusError(msg, trace)

    bare = y.without_boundary()
    y_rank = k0_rank(bare)
    trace.append({"link": "Y~", "rank": y_rank})

    # boundary orders restored one divisor at a time, in coordinate order
    cur = bare
    orders = {}
    for i, (ray, r) in enumerate(y.boundary_orders):
        if r == 1:
            continue
        orders[ray] = r
        nxt = cur.with_orders(orders)
        delta = k0_rank(nxt) - k0_rank(cur)
        face = face_model_rank(nxt, (ray,))
        lam = lambda_set(r, 1)
        trace.append({"link": f"order {r} on D{i + 1}", "rank": k0_rank(nxt), "delta": delta,
                      "face_rank": face, "lambda": len(lam)})
        if delta != len(lam) * face:
            fail(f"boundary drop on D{i + 1}: rank gain {delta} != {len(lam)} * {face}")
        sub = center_subspace(n, [ray])
        components.append(SODComponent(
            n - 1, sub, record_for_subspace(records, group, sub), len(lam), face,
            "boundary_drop", i, {"order": r, "lambda": sorted(lam)}))
        cur = nxt
    if cur.cones != y.cones or cur.boundary_orders != y.boundary_orders:
        fail("boundary restoration did not reach (Y, B_Y)")

    for k, step in enumerate(result.steps):
        comp = _step_component(step, k, group, records, trace)
        if comp is not None:
            components.append(comp)

    report = CensusReport(group.order, y_rank, components, records, trace)
    if not report.consistent:
        fail(f"total rank {report.total_rank} != |G| = {group.order}")
    return report


def _step_component(step: MMPStep, k: int, group, records, trace) -> SODComponent | None:
    n = step.before.n
    before, after = k0_rank(step.before), k0_rank(step.after)
    delta = after - before
    entry = {"link": f"step {k} ({step.kind})", "rank": after, "delta": delta}
    trace.append(entry)
    if step.crepant:
        if delta:
            raise CensusError(f"crepant step {k} changes the rank by {delta}", trace)
        return None
    if step.kind == "divisorial":
        tau = step.center
        rank_each = face_model_rank(step.after, tau)
        ctype = n - len(tau)
    else:                                   # flip: the flipped curve maps to a point
        tau = step.center
        rank_each = 1
        ctype = 0
    entry["face_rank"] = rank_each
    mult, rem = divmod(delta, rank_each)
    if rem or mult < 1:
        raise CensusError(f"step {k}: rank gain {delta} is not a positive multiple of {rank_each}",
                          trace)
    sub = center_subspace(n, tau) if ctype else ()
    lat = step.before.lattice
    detail = {"step_kind": step.kind}
    if step.contracted_ray is not None:
        detail["contracted_ray"] = ray_json(lat, step.contracted_ray)
    return SODComponent(ctype, sub, record_for_subspace(records, group, sub), mult, rank_each,
                        "step", k, detail)


# ---------------------------------------------------------------- projective compactification

@dataclass
class ProjectiveCollectionReport:
    n: int
    group_order: int
    count: int
    characters: int
    checks: int
    failures: list[dict]
    hh0_rank: int

    @property
    def passed(self) -> bool:
        return not self.failures and self.count == (self.n + 1) * self.group_order \
            and self.characters == self.group_order and self.hh0_rank == self.count

    def to_json(self) -> dict:
        return {"n": self.n, "group_order": self.group_order, "count": self.count,
                "characters": self.characters, "checks": self.checks,
                "failures": self.failures, "hh": {"0": self.hh0_rank, "other": 0},
                "passed": self.passed}


def _character_of(exponent, gens) -> tuple[Fraction, ...]:
    # value of the monomial x^a on each generator, as an angle mod 1
    return tuple(sum((a * q for a, q in zip(exponent, g.weights)), Fraction(0)) % 1 for g in gens)


def _monomials(nvars: int, degree: int):
    """Exponents of a basis of H^m(P^{nvars-1}, O(degree)), paired with m."""
    if degree >= 0:
        for a in product(range(degree + 1), repeat=nvars):
            if sum(a) == degree:
                yield 0, a
    elif degree <= -nvars:
        top = -degree - nvars + 1
        for a in product(range(1, top + 1), repeat=nvars):
            if sum(a) == -degree:
                yield nvars - 1, tuple(-x for x in a)


def projective_collection(n: int, group: DiagonalGroup) -> ProjectiveCollectionReport:
    """Check the collection V_rho(iL), -n <= i <= 0, on [P^n / G] for abelian G.

    G acts on the coordinates x_1..x_n of P^n and trivially on x_0.  The
    G-invariant part of Hom(V_rho(iL), V_rho'(jL)[m]) = H^m(O(j - i)) x rho^-1 rho'
    is counted monomial by monomial, keeping those of character rho rho'^-1.
    """
    if group.n != n:
        raise ValueError("group dimension differs from n")
    gens = group.generators or tuple(sorted(group.elements))
    zero = tuple(Fraction(0) for _ in gens)
    # characters are the images of the coordinate characters x_1..x_n
    units = [_character_of(tuple(int(i == j) for j in range(n)), gens) for i in range(n)]
    chars = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for c in frontier:
            for u in units:
                d = tuple((a + b) % 1 for a, b in zip(c, u))
                if d not in chars:
                    chars.add(d)
                    nxt.append(d)
        frontier = nxt
    chars = sorted(chars)

    failures = []
    checks = 0
    for d in range(-n, 1):
        # dims[m][chi]: multiplicity of chi in H^m(O(d)) of P^n
        dims: dict[tuple[int, tuple], int] = {}
        for m, a in _monomials(n + 1, d):
            key = (m, _character_of(a[1:], gens))
            dims[key] = dims.get(key, 0) + 1
        for rho, rho2 in product(chars, repeat=2):
            # invariants of H^m(O(d)) x rho^-1 rho' need a monomial of character rho rho'^-1
            want = tuple((a - b) % 1 for a, b in zip(rho, rho2))
            for m in range(n + 1):
                checks += 1
                got = dims.get((m, want), 0)
                expected = 1 if (d == 0 and m == 0 and rho == rho2) else 0
                if got != expected:
                    failures.append({"degree": d, "m": m, "rho": [str(x) for x in rho],
                                     "rho_prime": [str(x) for x in rho2], "dim": got})
    count = (n + 1) * len(chars)
    return ProjectiveCollectionReport(n, group.order, count, len(chars), checks, failures,
                                      hh0_rank=count)
