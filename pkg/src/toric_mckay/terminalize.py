"""Maximal Q-factorial terminalizations and their MMP decomposition.

The terminalization is built as a stellar (pulling) triangulation of sigma_0
on every candidate ray, which makes it regular and terminal by construction.
The MMP back down to X runs in two phases:

1. contract the divisors with positive coefficient, each step negative
   against K + B + (1 + eps) E (pairs compared lexicographically);
2. contract the remaining crepant divisors against F = sum of their D_v,
   using crepant contractions and flops.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping

from .fan import (
    B_GREATER,
    EQUAL,
    Cone,
    CoefficientFunctional,
    FanModel,
    TerminalityResult,
    adjacent,
    compare_log_canonical,
    fan_to_json,
    integer_degree,
    is_terminal,
    log_canonical_values,
    make_cone,
    quotient_cone_model,
    rational_str,
    ray_json,
    regularity_heights,
    scale_to_integers,
    stellar_subdivide,
    unsubdivide,
    wall_degree,
    wall_exchange,
)
from .intmath import IntVec
from .lattice import OverLattice

STRATEGIES = ("pulling", "reverse")


class TerminalizationError(RuntimeError):
    pass


class MMPError(RuntimeError):
    """No admissible step was found, or the iteration cap was hit."""

    def __init__(self, message: str, state: FanModel | None = None):
        super().__init__(message)
        self.state = state


class FlopSearchError(RuntimeError):
    pass


@dataclass(frozen=True)
class CandidateRay:
    ray: IntVec                 # scaled
    coefficient: Fraction
    vector: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {"ray": [rational_str(x) for x in self.vector],
                "coefficient": rational_str(self.coefficient)}


def candidate_rays(lattice: OverLattice, psi: CoefficientFunctional) -> list[CandidateRay]:
    """Primitive N-points of sigma_0 with psi <= 1 other than the boundary rays.

    Every N-point is a coset representative in [0,1)^n plus an integer
    vector; psi(v) <= 1 bounds each coordinate by 1/psi(e_i).
    """
    d = lattice.scale
    limits = []
    for i in range(lattice.n):
        unit_value = psi(lattice.unit(i))      # psi at the integral unit vector
        limits.append(int(d / unit_value))     # largest scaled coordinate allowed
    boundary = set(lattice.boundary_rays())
    out = []
    for f in lattice.fundamental_points():
        ranges = [range(0, (limits[i] - f[i]) // d + 1) if f[i] <= limits[i] else range(0)
                  for i in range(lattice.n)]
        for ks in product(*ranges):
            p = tuple(f[i] + ks[i] * d for i in range(lattice.n))
            if not any(p) or p in boundary:
                continue
            if psi(p) > 1 or not lattice.is_primitive_scaled(p):
                continue
            out.append(CandidateRay(p, psi.coefficient(p), lattice.to_rational(p)))
    out.sort(key=lambda c: (-c.coefficient, c.ray))
    return out


def insertion_order(cands: list[CandidateRay], strategy: str) -> list[CandidateRay]:
    ordered = sorted(cands, key=lambda c: (-c.coefficient, c.ray))
    if strategy == "pulling":
        return ordered
    if strategy == "reverse":
        return ordered[::-1]
    raise ValueError(f"unknown strategy {strategy!r}")


# ---------------------------------------------------------------- MMP steps

@dataclass
class MMPStep:
    kind: str                       # divisorial | flip | crepant_divisorial | flop
    phase: int
    before: FanModel
    after: FanModel
    contracted_ray: IntVec | None = None
    wall: Cone | None = None        # exchanged wall (flip / flop)
    new_wall: Cone | None = None
    center: Cone = ()               # face of `after` carrying the image of the exceptional locus
    degree_certificate: dict = field(default_factory=dict)
    monotonicity: str = ""
    heights: dict | None = field(default=None, repr=False)   # regularity certificate of `after`

    @property
    def monotone(self) -> bool:
        """K + B does not decrease: the target's log-canonical divisor dominates."""
        return self.monotonicity in (B_GREATER, EQUAL)

    @property
    def crepant(self) -> bool:
        return self.kind in ("crepant_divisorial", "flop")

    @property
    def center_dimension(self) -> int:
        return self.before.n - len(self.center)

    def to_json(self) -> dict:
        lat = self.before.lattice
        doc = {"kind": self.kind, "phase": self.phase}
        if self.contracted_ray is not None:
            doc["contracted_ray"] = ray_json(lat, self.contracted_ray)
        if self.wall is not None:
            doc["wall"] = [ray_json(lat, r) for r in self.wall]
            doc["new_wall"] = [ray_json(lat, r) for r in self.new_wall]
        doc["center"] = [ray_json(lat, r) for r in self.center]
        doc["degree_certificate"] = self.degree_certificate
        doc["monotonicity"] = self.monotonicity
        doc["after_cones"] = len(self.after.cones)
        return doc


def _divisors(fan: FanModel, psi: CoefficientFunctional, phase: int):
    """(D0, D1) with the step functional D0 + eps*D1.

    Phase 1: D0 = K + B + E = -psi (linear), D1 = E.
    Phase 2: D0 = K + B (= -psi once E is gone), D1 = F.
    """
    lam = log_canonical_values(fan)
    exc = set(fan.exceptional_rays)
    e = {v: psi.coefficient(v) for v in exc}
    d0 = {v: -lam[v] + e.get(v, 0) for v in fan.rays}
    if phase == 1:
        d1 = {v: e[v] for v in exc}
    else:
        d1 = {v: Fraction(1) for v in exc}
    return d0, d1


def _pair(fan: FanModel, wall: Cone, d0, d1) -> tuple[Fraction, Fraction]:
    return wall_degree(fan, wall, d0), wall_degree(fan, wall, d1)


def _all_pairs(fan: FanModel, walls, d0, d1) -> dict[Cone, tuple[Fraction, Fraction]]:
    """Degree pairs of every wall, computed over a common integer scaling."""
    i0, s0 = scale_to_integers(d0)
    i1, s1 = scale_to_integers(d1)
    out = {}
    for w in walls:
        a, den = integer_degree(fan, w, i0)
        b, _ = integer_degree(fan, w, i1)
        out[w] = (Fraction(a, den * s0), Fraction(b, den * s1))
    return out


def _pair_json(p) -> list[str]:
    return [rational_str(p[0]), rational_str(p[1])]


def _regular(fan: FanModel, hint=None) -> dict | None:
    """Height certificate of the target fan ({} in dimension <= 2, where any fan is regular)."""
    if fan.n < 3:
        return {}
    return regularity_heights(fan, hint)


def _try_divisorial(fan: FanModel, v: IntVec, pairs: Mapping[Cone, tuple], hint=None) -> tuple | None:
    res = unsubdivide(fan, v)
    if res is None:
        return None
    coarse, tau = res
    contracted = []
    for w, adj in fan.walls().items():
        if v in w and len(adj) == 2 and adj[0][1] in tau and adj[1][1] in tau:
            contracted.append(w)
    contracted.sort()
    if not contracted or any(pairs[w] >= (0, 0) for w in contracted):
        return None
    heights = _regular(coarse, hint)
    if heights is None:
        return None
    return coarse, tau, contracted, heights


def _try_flip(fan: FanModel, wall: Cone) -> tuple | None:
    new = wall_exchange(fan, wall)
    if new is None:
        return None
    heights = _regular(new)
    return None if heights is None else (new, heights)


def _step_order(fan: FanModel, psi, strategy: str) -> list[IntVec]:
    rays = sorted(fan.exceptional_rays, key=lambda v: (-psi.coefficient(v), v))
    return rays if strategy == "pulling" else rays[::-1]


def mmp_decompose(y: FanModel, x: FanModel, psi: CoefficientFunctional,
                  strategy: str = "pulling", cap: int | None = None) -> list[MMPStep]:
    """Decompose Y -> X into monotone divisorial contractions and wall exchanges."""
    if not set(x.rays) <= set(y.rays):
        raise ValueError("rays(X) must be a subset of rays(Y)")
    n_exc = len(y.exceptional_rays)
    if cap is None:
        cap = 10 * max(1, n_exc)
    steps: list[MMPStep] = []
    cur = y
    heights = regularity_heights(y) if y.n == 3 else {}
    while cur.exceptional_rays:
        if len(steps) >= cap:
            raise MMPError(f"MMP iteration cap {cap} exceeded", cur)
        positive = any(psi.coefficient(v) > 0 for v in cur.exceptional_rays)
        phase = 1 if positive else 2
        step = _next_step(cur, psi, phase, strategy, heights)
        if step is None:
            raise MMPError(f"no admissible phase-{phase} step from a fan with "
                           f"{len(cur.cones)} cones and rays {list(cur.rays)}", cur)
        step.monotonicity = compare_log_canonical(step.before, step.after)
        steps.append(step)
        cur, heights = step.after, step.heights
    if cur.cones != x.cones:
        raise MMPError("MMP ended on a fan different from X", cur)
    return steps


def _next_step(cur: FanModel, psi, phase: int, strategy: str, hint=None) -> MMPStep | None:
    d0, d1 = _divisors(cur, psi, phase)
    walls = cur.interior_walls()
    pairs = _all_pairs(cur, walls, d0, d1)
    negative = {w for w in walls if pairs[w] < (0, 0)}
    if not negative:
        return None
    # divisorial contractions first, rays in strategy order
    for v in _step_order(cur, psi, strategy):
        if not any(v in w for w in negative):
            continue
        res = _try_divisorial(cur, v, pairs, hint)
        if res is None:
            continue
        coarse, tau, contracted, heights = res
        e = psi.coefficient(v)
        kind = "divisorial" if e > 0 else "crepant_divisorial"
        cert = {
            "functional": "K+B+(1+eps)E" if phase == 1 else "K+B+eps*F",
            "wall": [ray_json(cur.lattice, r) for r in contracted[0]],
            "degree": _pair_json(pairs[contracted[0]]),
            "contracted_walls": len(contracted),
            "coefficient": rational_str(e),
        }
        return MMPStep(kind, phase, cur, coarse, contracted_ray=v, center=tuple(tau),
                       degree_certificate=cert, heights=heights)
    for w in sorted(negative):
        res = _try_flip(cur, w)
        if res is None:
            continue
        new, heights = res
        u, u2 = adjacent(cur, w)
        nw = make_cone([u, u2])
        kb = pairs[w][0] if phase == 2 else pairs[w][0] - pairs[w][1]
        # (K+B).C: phase 2 has E = 0; in phase 1 K+B = D0 - E
        kind = "flop" if kb == 0 else "flip"
        nd0, nd1 = _divisors(new, psi, phase)
        cert = {
            "functional": "K+B+(1+eps)E" if phase == 1 else "K+B+eps*F",
            "wall": [ray_json(cur.lattice, r) for r in w],
            "degree": _pair_json(pairs[w]),
            "degree_after": _pair_json(_pair(new, nw, nd0, nd1)),
            "log_canonical_degree": rational_str(kb),
        }
        return MMPStep(kind, phase, cur, new, wall=w, new_wall=nw,
                       center=tuple(sorted(set(w) | {u, u2})), degree_certificate=cert,
                       heights=heights)
    return None


# ---------------------------------------------------------------- terminalization

@dataclass
class TerminalizationResult:
    x: FanModel
    y: FanModel
    psi: CoefficientFunctional
    candidates: list[CandidateRay]
    steps: list[MMPStep]
    strategy: str
    terminality: dict[Cone, TerminalityResult]
    heights: dict[IntVec, Fraction] | None

    @property
    def complete(self) -> bool:
        return set(self.y.exceptional_rays) == {c.ray for c in self.candidates}

    @property
    def all_terminal(self) -> bool:
        return all(self.terminality.values())

    def certificate(self) -> dict:
        lat = self.y.lattice
        return {
            "candidate_rays_complete": self.complete,
            "all_cones_terminal": self.all_terminal,
            "non_terminal_witnesses": [
                {"cone": [ray_json(lat, r) for r in c],
                 "witness": [rational_str(x) for x in t.witness]}
                for c, t in sorted(self.terminality.items()) if not t],
            "regular": self.heights is not None,
            "heights": None if self.heights is None else
            [{"ray": ray_json(lat, r), "height": rational_str(h)} for r, h in sorted(self.heights.items())],
            "all_steps_monotone": all(s.monotone for s in self.steps),
        }

    def to_json(self) -> dict:
        return {
            "strategy": self.strategy,
            "candidates": [c.to_json() for c in self.candidates],
            "Y": fan_to_json(self.y),
            "X": fan_to_json(self.x),
            "steps": [s.to_json() for s in self.steps],
            "certificate": self.certificate(),
        }


def build_maximal_terminalization(lattice: OverLattice, psi: CoefficientFunctional,
                                  strategy: str = "pulling", cap: int | None = None,
                                  decompose: bool = True) -> TerminalizationResult:
    x = quotient_cone_model(lattice, psi.orders)
    cands = candidate_rays(lattice, psi)
    y = x
    for c in insertion_order(cands, strategy):
        y = stellar_subdivide(y, c.ray)
    terminality = {c: is_terminal(c, lattice) for c in y.sorted_cones()}
    heights = regularity_heights(y)
    if heights is None:
        raise TerminalizationError("stellar triangulation failed the regularity certificate")
    steps = mmp_decompose(y, x, psi, strategy, cap) if decompose else []
    return TerminalizationResult(x, y, psi, cands, steps, strategy, terminality, heights)


# ---------------------------------------------------------------- flops

@dataclass(frozen=True)
class FlopMove:
    wall: Cone
    new_wall: Cone
    degree: Fraction        # (K + B + E) . C, zero for a flop


def flop_connect(y1: FanModel, y2: FanModel, psi: CoefficientFunctional,
                 cap: int = 5000) -> list[FlopMove]:
    """Breadth-first search for wall exchanges turning y1 into y2.

    Every intermediate fan uses the same rays and is checked to be regular;
    each move carries its degree against K + B + E, which must vanish.
    """
    if set(y1.rays) != set(y2.rays):
        raise ValueError("terminalizations must share their rays")
    if y1.cones == y2.cones:
        return []
    if y1.n < 3:
        raise FlopSearchError("fans on a fixed ray set are unique in dimension <= 2")
    start, goal = y1.cones, y2.cones
    parent: dict[frozenset, tuple[frozenset, FlopMove] | None] = {start: None}
    queue = deque([y1])
    while queue:
        cur = queue.popleft()
        d0, _ = _divisors(cur, psi, 1)
        for w in cur.interior_walls():
            new = wall_exchange(cur, w)
            if new is None or new.cones in parent:
                continue
            if _regular(new) is None:
                continue
            u, u2 = adjacent(cur, w)
            move = FlopMove(w, make_cone([u, u2]), wall_degree(cur, w, d0))
            if move.degree != 0:
                continue
            parent[new.cones] = (cur.cones, move)
            if new.cones == goal:
                path = []
                key = goal
                while parent[key] is not None:
                    prev, mv = parent[key]
                    path.append(mv)
                    key = prev
                return path[::-1]
            if len(parent) > cap:
                raise FlopSearchError(f"flop search exceeded {cap} triangulations")
            queue.append(new)
    raise FlopSearchError("no flop path found")
