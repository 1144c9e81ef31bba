"""Simplicial fans subdividing the positive orthant, and functionals on them.

A :class:`FanModel` is the combinatorial stand-in for a partial resolution
Y -> X = C^n/G together with the stack orders of its boundary divisors.
Cones are sorted tuples of scaled ray vectors (see :mod:`.lattice`), so a fan
is hashable and its serialization is deterministic.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .intmath import IntVec, det, lcm, solve_in_basis
from .lattice import LatticeError, OverLattice

Cone = tuple[IntVec, ...]

EQUAL = "equal"
A_GREATER = "A_greater"
B_GREATER = "B_greater"
INCOMPARABLE = "incomparable"


def make_cone(rays: Iterable[IntVec]) -> Cone:
    return tuple(sorted(rays))


@dataclass(frozen=True)
class FanModel:
    lattice: OverLattice
    cones: frozenset[Cone]
    boundary_orders: tuple[tuple[IntVec, int], ...]
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def n(self) -> int:
        return self.lattice.n

    @property
    def orders(self) -> dict[IntVec, int]:
        return dict(self.boundary_orders)

    @property
    def boundary_rays(self) -> tuple[IntVec, ...]:
        return tuple(r for r, _ in self.boundary_orders)

    @property
    def rays(self) -> tuple[IntVec, ...]:
        if "rays" not in self._cache:
            self._cache["rays"] = tuple(sorted({r for c in self.cones for r in c}))
        return self._cache["rays"]

    @property
    def exceptional_rays(self) -> tuple[IntVec, ...]:
        b = set(self.boundary_rays)
        return tuple(r for r in self.rays if r not in b)

    def order(self, ray: IntVec) -> int:
        return self.orders.get(ray, 1)

    def sorted_cones(self) -> list[Cone]:
        if "sorted" not in self._cache:
            self._cache["sorted"] = sorted(self.cones)
        return self._cache["sorted"]

    def star(self, ray: IntVec) -> list[Cone]:
        return [c for c in self.sorted_cones() if ray in c]

    def walls(self) -> dict[Cone, list[tuple[Cone, IntVec]]]:
        """(n-1)-faces mapped to their adjacent maximal cones and opposite rays."""
        if "walls" not in self._cache:
            out: dict[Cone, list[tuple[Cone, IntVec]]] = defaultdict(list)
            for c in self.sorted_cones():
                for u in c:
                    w = tuple(r for r in c if r != u)
                    out[w].append((c, u))
            self._cache["walls"] = dict(out)
        return self._cache["walls"]

    def interior_walls(self) -> list[Cone]:
        return sorted(w for w, adj in self.walls().items() if len(adj) == 2)

    def with_cones(self, cones: Iterable[Cone]) -> "FanModel":
        return FanModel(self.lattice, frozenset(cones), self.boundary_orders)

    def with_orders(self, orders: Mapping[IntVec, int]) -> "FanModel":
        return FanModel(self.lattice, self.cones,
                        tuple((r, orders.get(r, 1)) for r in self.boundary_rays))

    def without_boundary(self) -> "FanModel":
        return self.with_orders({})


def quotient_cone_model(lattice: OverLattice, orders: Sequence[int] | None = None) -> FanModel:
    """The model X itself: the single cone sigma_0 on the boundary rays."""
    b = lattice.boundary_rays()
    if orders is None:
        orders = natural_orders(lattice)
    return FanModel(lattice, frozenset([make_cone(b)]), tuple(zip(b, orders)))


def natural_orders(lattice: OverLattice) -> tuple[int, ...]:
    """Boundary orders of the quotient pair: e_i' = e_i / r_i."""
    return tuple(lattice.scale // r[i] for i, r in enumerate(lattice.boundary_rays()))


# ------------------------------------------------------------------ geometry

def barycentric(cone: Sequence[IntVec], p: Sequence[int]) -> tuple[Fraction, ...]:
    return solve_in_basis(cone, p)


def _cramer_numerators(cone: Sequence[IntVec], p: Sequence[int]) -> tuple[int, list[int]]:
    d = det(cone)
    rows = [list(r) for r in cone]
    nums = []
    for i in range(len(rows)):
        saved = rows[i]
        rows[i] = list(p)
        nums.append(det(rows))
        rows[i] = saved
    return d, nums


def in_cone(cone: Sequence[IntVec], p: Sequence[int]) -> bool:
    d, nums = _cramer_numerators(cone, p)
    return all(x * d >= 0 for x in nums)


def locate(fan: FanModel, p: Sequence[int], cones: Iterable[Cone] | None = None
           ) -> tuple[Cone, tuple[Fraction, ...]]:
    for c in (fan.sorted_cones() if cones is None else cones):
        d, nums = _cramer_numerators(c, p)
        if all(x * d >= 0 for x in nums):
            return c, tuple(Fraction(x, d) for x in nums)
    raise LatticeError(f"point {tuple(p)} outside the support of the fan")


def pl_value(fan: FanModel, values: Mapping[IntVec, Fraction], p: Sequence[int],
             cones: Iterable[Cone] | None = None) -> Fraction:
    """Value at p of the function linear on each cone with given ray values."""
    p = tuple(p)
    if p in values and p in fan.rays:
        return Fraction(values[p])
    c, lam = locate(fan, p, cones)
    return sum((lam[i] * values[r] for i, r in enumerate(c)), Fraction(0))


def total_volume(fan: FanModel) -> Fraction:
    """Area of the slice sum(x) = 1 covered by the cones, in units of det.

    Each cone contributes |det(rays)| / prod(sum(r)), the volume of the
    simplex cut out by the slicing hyperplane, which is additive under
    subdivision (unlike the multiplicities).
    """
    total = Fraction(0)
    for c in fan.cones:
        den = 1
        for r in c:
            den *= sum(r)
        total += Fraction(abs(det(c)), den)
    return total


def is_subdivision_of_orthant(fan: FanModel) -> bool:
    """Cones lie in sigma_0, are non-degenerate and fit together across walls."""
    lat = fan.lattice
    if total_volume(fan) != total_volume(quotient_cone_model(lat)):
        return False
    if any(x < 0 for r in fan.rays for x in r):
        return False
    for w, adj in fan.walls().items():
        if len(adj) > 2:
            return False
        if len(adj) == 2:
            try:
                wall_relation(w, adj[0][1], adj[1][1])
            except ValueError:
                return False
    return True


# ------------------------------------------------------------------ functionals

@dataclass(frozen=True)
class CoefficientFunctional:
    """The linear functional psi_B on sigma_0 with psi_B(e_i') = 1 - b_i.

    ``coefficient(v) = 1 - psi_B(v)`` is the coefficient of the divisor of v
    in f^*(K_X + B) = K_Y + sum e(v) E_v, and psi_B(v) its log discrepancy.
    """

    lattice: OverLattice
    boundary: tuple[Fraction, ...]      # b_i on the i-th boundary ray

    def __call__(self, p: Sequence[int]) -> Fraction:
        return sum((w * x for w, x in zip(self._weights, p) if x), Fraction(0))

    @cached_property
    def _weights(self) -> tuple[Fraction, ...]:
        # v = sum lam_i e_i' with lam_i = v_i / (e_i')_i
        return tuple((1 - b) / r[i] for i, (r, b) in
                     enumerate(zip(self.lattice.boundary_rays(), self.boundary)))

    def coefficient(self, p: Sequence[int]) -> Fraction:
        return 1 - self(p)

    @property
    def orders(self) -> tuple[int, ...]:
        out = []
        for b in self.boundary:
            inv = 1 / (1 - b)
            if inv.denominator != 1:
                raise ValueError("boundary coefficient is not of the form 1 - 1/r")
            out.append(int(inv))
        return tuple(out)


def coefficient_functional(lattice: OverLattice, orders: Sequence[int] | None = None) -> CoefficientFunctional:
    """psi_B for B = sum (1 - 1/r_i) D_i; natural orders reproduce the quotient pair."""
    if orders is None:
        orders = natural_orders(lattice)
    return CoefficientFunctional(lattice, tuple(1 - Fraction(1, r) for r in orders))


def coefficient(psi: CoefficientFunctional, ray: Sequence[int]) -> Fraction:
    """e(v) = 1 - psi_B(v) for a scaled ray v."""
    return psi.coefficient(ray)


def log_canonical_values(fan: FanModel) -> dict[IntVec, Fraction]:
    """Ray values 1 - b of the model's log-canonical functional.

    K_Y + B_Y = -sum (1 - b_v) D_v with b_v = 1 - 1/r_v on boundary rays and
    0 on exceptional rays, so these are the coefficients of -(K_Y + B_Y).
    """
    orders = fan.orders
    return {r: Fraction(1, orders.get(r, 1)) for r in fan.rays}


# ------------------------------------------------------------------ terminality

@dataclass(frozen=True)
class TerminalityResult:
    terminal: bool
    witness: tuple[Fraction, ...] | None = None     # rational point of N
    level: Fraction | None = None                   # ell_c(witness)

    def __bool__(self) -> bool:
        return self.terminal


def is_terminal(cone: Sequence[IntVec], lattice: OverLattice) -> TerminalityResult:
    """True iff 0 and the ray generators are the only N-points with ell_c <= 1.

    ell_c is the linear functional equal to 1 on every ray of the cone.  A
    non-vertex point with ell_c <= 1 lies in the half-open parallelepiped, so
    scanning its mult(c) points is enough.
    """
    cone = list(cone)
    if lattice.cone_multiplicity(cone) == 1:
        return TerminalityResult(True)
    best = None
    for lam in lattice.parallelepiped_points(cone):
        s = sum(lam)
        if s == 0 or s > 1:
            continue
        p = tuple(sum(lam[i] * cone[i][j] for i in range(len(cone))) for j in range(lattice.n))
        key = (s, p)
        if best is None or key < best:
            best = key
    if best is None:
        return TerminalityResult(True)
    s, p = best
    return TerminalityResult(False, tuple(Fraction(x) / lattice.scale for x in p), s)


# ------------------------------------------------------------------ walls

@dataclass(frozen=True)
class WallRelation:
    """alpha*u + u' = sum c_k w_k for a wall w between cones (w,u) and (w,u')."""

    wall: Cone
    u: IntVec
    u_prime: IntVec
    alpha: Fraction
    c: tuple[Fraction, ...]


def wall_relation(wall: Sequence[IntVec], u: IntVec, u_prime: IntVec) -> WallRelation:
    basis = list(wall) + [u]
    coef = solve_in_basis(basis, u_prime)
    alpha = -coef[-1]
    if alpha <= 0:
        raise ValueError("rays u and u' lie on the same side of the wall")
    return WallRelation(tuple(wall), u, u_prime, alpha, tuple(coef[:-1]))


def adjacent(fan: FanModel, wall: Cone) -> tuple[IntVec, IntVec]:
    adj = fan.walls().get(tuple(wall))
    if adj is None or len(adj) != 2:
        raise ValueError("wall is not shared by exactly two maximal cones")
    (_, u1), (_, u2) = adj
    return u1, u2


def wall_degree_form(fan: FanModel, wall: Cone) -> dict[IntVec, Fraction]:
    """Coefficients k_v with D.C_wall = sum_v k_v d_v for D = sum d_v D_v."""
    u, u2 = adjacent(fan, wall)
    return _degree_form(fan.lattice, tuple(wall), u, u2)


@lru_cache(maxsize=200_000)
def _degree_form(lat: OverLattice, wall, u, u2) -> dict[IntVec, Fraction]:
    # the form only depends on the two adjacent cones, so it is shared by
    # every fan containing them; callers must not mutate the result
    rel = wall_relation(wall, u, u2)
    # D_u . C = mult(wall) / mult(wall + u)
    scale = Fraction(lat.saturation_index(list(wall)), lat.cone_multiplicity(list(wall) + [u]))
    form: dict[IntVec, Fraction] = defaultdict(Fraction)
    form[u] += scale
    form[u2] += scale / rel.alpha
    for w, ck in zip(wall, rel.c):
        form[w] -= scale * ck / rel.alpha
    return dict(form)


@lru_cache(maxsize=200_000)
def _integer_form(lat: OverLattice, wall, u, u2) -> tuple[tuple[tuple[IntVec, int], ...], int]:
    """The degree form as integer coefficients over a common denominator."""
    form = _degree_form(lat, wall, u, u2)
    den = 1
    for k in form.values():
        den = lcm(den, k.denominator)
    return tuple((v, int(k * den)) for v, k in form.items()), den


def integer_wall_form(fan: FanModel, wall: Cone):
    u, u2 = adjacent(fan, wall)
    return _integer_form(fan.lattice, tuple(wall), u, u2)


def scale_to_integers(values: Mapping[IntVec, Fraction]) -> tuple[dict[IntVec, int], int]:
    """(L * values, L) for the least L making every value integral."""
    den = 1
    for x in values.values():
        den = lcm(den, Fraction(x).denominator)
    return {v: int(x * den) for v, x in values.items()}, den


def integer_degree(fan: FanModel, wall: Cone, divisor: Mapping[IntVec, int]) -> tuple[int, int]:
    """Numerator and positive denominator of D.C for an integer-valued divisor."""
    form, den = integer_wall_form(fan, wall)
    return sum(k * divisor.get(v, 0) for v, k in form), den


def wall_degree(fan: FanModel, wall: Cone, divisor: Mapping[IntVec, Fraction]) -> Fraction:
    """Intersection number D.C of a T-divisor with the curve of an interior wall.

    ``divisor`` maps rays v to the coefficient d_v of D_v in D (missing rays
    count as 0).  Divisors of characters have degree zero, and D_u.C > 0 for
    a ray u adjacent to but not on the wall.
    """
    ints, scale = scale_to_integers(divisor)
    num, den = integer_degree(fan, wall, ints)
    return Fraction(num, den * scale)


# ------------------------------------------------------------------ stellar moves

def minimal_face(fan: FanModel, v: Sequence[int]) -> tuple[Cone, list[Cone]]:
    """The face tau with v in its relative interior, and the cones containing v."""
    tau = None
    hits = []
    for c in fan.sorted_cones():
        d, nums = _cramer_numerators(c, v)
        if all(x * d >= 0 for x in nums):
            hits.append(c)
            if tau is None:
                tau = tuple(r for r, x in zip(c, nums) if x)
    if tau is None:
        raise LatticeError("point outside the support of the fan")
    return tau, hits


def stellar_subdivide(fan: FanModel, v: IntVec) -> FanModel:
    """Insert the ray v by starring every cone that contains it."""
    if v in fan.rays:
        raise ValueError("ray already present")
    tau, hits = minimal_face(fan, v)
    new = set(fan.cones) - set(hits)
    for c in hits:
        for t in tau:
            new.add(make_cone([r for r in c if r != t] + [v]))
    return fan.with_cones(new)


def unsubdivide(fan: FanModel, v: IntVec) -> tuple[FanModel, Cone] | None:
    """Inverse of :func:`stellar_subdivide` when the star of v allows it.

    Returns the coarser fan and the face tau whose relative interior contains
    v, or None when the star of v is not a stellar subdivision.
    """
    star = fan.star(v)
    link = sorted({r for c in star for r in c if r != v})
    n = fan.n
    cands: list[Cone] = []
    if len(link) == n and len(star) == n:
        cands.append(tuple(link))
    if n == 3 and len(star) in (2, 4):
        cands.extend(combinations(link, 2))
    for tau in cands:
        if not _in_relint(tau, v, n):
            continue
        target = set()
        for c in star:
            missing = [t for t in tau if t not in c]
            if len(missing) != 1:
                break
            target.add(make_cone([r for r in c if r != v] + missing))
        else:
            if any(det(c) == 0 for c in target):
                continue
            coarse = fan.with_cones((set(fan.cones) - set(star)) | target)
            if stellar_subdivide(coarse, v).cones == fan.cones:
                return coarse, tuple(tau)
    return None


def _in_relint(tau: Sequence[IntVec], v: Sequence[int], n: int) -> bool:
    k = len(tau)
    if k == n:
        d, nums = _cramer_numerators(tau, v)
        return d != 0 and all(x * d > 0 for x in nums)
    # complete tau by unit vectors to a basis and require zero extra weights
    for extra in combinations(range(n), n - k):
        basis = list(tau) + [tuple(int(i == j) for j in range(n)) for i in extra]
        d, nums = _cramer_numerators(basis, v)
        if d == 0:
            continue
        return all(x * d > 0 for x in nums[:k]) and not any(nums[k:])
    return False


def wall_exchange(fan: FanModel, wall: Cone) -> FanModel | None:
    """Bistellar exchange across an interior wall (3D); None if not convex."""
    if fan.n != 3:
        return None
    u, u2 = adjacent(fan, wall)
    rel = wall_relation(wall, u, u2)
    if any(ck <= 0 for ck in rel.c):
        return None
    old = {make_cone(list(wall) + [u]), make_cone(list(wall) + [u2])}
    new = {make_cone([u, u2, w]) for w in wall}
    return fan.with_cones((set(fan.cones) - old) | new)


# ------------------------------------------------------------------ rank

def k0_rank(fan: FanModel) -> int:
    """Sum over maximal cones of |N : sum Z r_i w_i| with r_i the ray orders."""
    orders = fan.orders
    lat = fan.lattice
    total = 0
    for c in fan.cones:
        rows = [tuple(orders.get(r, 1) * x for x in r) for r in c]
        total += lat.cone_multiplicity(rows)
    return total


def face_model_rank(fan: FanModel, tau: Sequence[IntVec]) -> int:
    """K0-rank of the stacky orbit closure V(tau).

    Its fan is the star of tau projected to N / (N cap span tau).  A ray
    image equal to t times a primitive vector with stack order r contributes
    order r*t, which is exactly what the index of the scaled images measures.
    """
    orders = fan.orders
    lat = fan.lattice
    tau = list(tau)
    if len(tau) == fan.n:
        return 1
    project = lat.quotient_map(tau) if tau else lat.coords
    total = 0
    for c in fan.cones:
        if not all(t in c for t in tau):
            continue
        imgs = [project(tuple(orders.get(r, 1) * x for x in r)) for r in c if r not in tau]
        total += abs(det(imgs))
    return total


# ------------------------------------------------------------------ regularity

def regularity_heights(fan: FanModel, hint: Mapping[IntVec, Fraction] | None = None
                       ) -> dict[IntVec, Fraction] | None:
    """Exact heights whose PL interpolation is strictly convex across every wall.

    ``hint`` (for instance the heights of a finer model) is tried first.  In
    dimension 3 the heights otherwise come from an LP solved in floating
    point, then rounded to rationals and re-verified exactly; None means no
    certificate was found.
    """
    walls = fan.interior_walls()
    rays = fan.rays
    if not walls:
        return {r: Fraction(0) for r in rays}
    if hint is not None and all(r in hint for r in rays):
        h = {r: hint[r] for r in rays}
        if verify_heights(fan, h):
            return h
    if fan.n == 2:
        return _heights_2d(fan)
    import numpy as np
    from scipy.optimize import linprog

    idx = {r: i for i, r in enumerate(rays)}
    boundary = set(fan.boundary_rays)
    a = np.zeros((len(walls), len(rays)))
    for k, w in enumerate(walls):
        for v, coef in wall_degree_form(fan, w).items():
            a[k, idx[v]] = float(coef)
    bounds = [(0, 0) if r in boundary else (None, 0) for r in rays]
    # heights are <= 0 (convex and zero on the boundary), so maximize their sum
    res = linprog(-np.ones(len(rays)), A_ub=-a, b_ub=-2 * np.ones(len(walls)),
                  bounds=bounds, method="highs")
    if res.status != 0:
        return None
    for limit in (10**3, 10**6, 10**9):
        h = {r: Fraction(float(res.x[idx[r]])).limit_denominator(limit) for r in rays}
        if verify_heights(fan, h):
            return h
    return None


def _heights_2d(fan: FanModel) -> dict[IntVec, Fraction]:
    # walk the rays in angular order, bending by exactly 1 at each interior ray
    order = sorted(fan.rays, key=lambda r: Fraction(r[1], r[0] + r[1]))
    h = {r: Fraction(0) for r in order}
    for i in range(2, len(order)):
        u, w, u2 = order[i - 2], order[i - 1], order[i]
        form = _degree_form(fan.lattice, (w,), u, u2)
        rest = sum((k * h[v] for v, k in form.items() if v != u2), Fraction(0))
        h[u2] = (1 - rest) / form[u2]
    return h


def verify_heights(fan: FanModel, h: Mapping[IntVec, Fraction]) -> bool:
    ints, _ = scale_to_integers(h)
    return all(integer_degree(fan, w, ints)[0] > 0 for w in fan.interior_walls())


def is_regular(fan: FanModel) -> bool:
    return regularity_heights(fan) is not None


# ------------------------------------------------------------------ comparison

def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _in_sector(d, a1, a2) -> bool:
    """d in the 2D cone spanned by a1, a2 (d coplanar with them)."""
    nrm = _cross(a1, a2)
    return _dot(_cross(d, a2), nrm) >= 0 and _dot(_cross(a1, d), nrm) >= 0


def _faces(cones: Iterable[Cone], k: int) -> set[Cone]:
    return {f for c in cones for f in combinations(c, k)}


def _crossing_points(da: Iterable[Cone], db: Iterable[Cone]) -> set[IntVec]:
    pts = set()
    fb = [(b, _cross(*b)) for b in sorted(_faces(db, 2))]
    for a1, a2 in sorted(_faces(da, 2)):
        na = _cross(a1, a2)
        for (b1, b2), nb in fb:
            d = _cross(na, nb)
            if not any(d):
                continue
            for cand in (d, tuple(-x for x in d)):
                if _in_sector(cand, a1, a2) and _in_sector(cand, b1, b2):
                    pts.add(cand)
    return pts


def _pl_exact(fan: FanModel, values: Mapping[IntVec, int], p: IntVec,
              cones: Iterable[Cone] | None) -> Fraction:
    if p in values and p in fan.rays:
        return Fraction(values[p])
    for c in (fan.sorted_cones() if cones is None else cones):
        d, nums = _cramer_numerators(c, p)
        if all(x * d >= 0 for x in nums):
            return Fraction(sum(x * values[r] for x, r in zip(nums, c)), d)
    raise LatticeError(f"point {p} outside the support of the fan")


def compare_functionals(a: FanModel, va: Mapping[IntVec, Fraction],
                        b: FanModel, vb: Mapping[IntVec, Fraction]) -> tuple[str, list]:
    """Compare two PL functions pointwise on the rays of the common refinement.

    Returns ``equal``, ``ge`` (a >= b everywhere), ``le`` or ``incomparable``
    with the list of (point, a - b) values examined.  Only the region where
    the fans differ needs point location; shared rays compare directly.
    """
    if a.lattice != b.lattice:
        raise ValueError("models live on different lattices")
    # one common integer scaling keeps the inner loops free of Fractions
    both = {("a", v): x for v, x in va.items()}
    both.update({("b", v): x for v, x in vb.items()})
    ints, scale = scale_to_integers(both)
    ia = {v: ints[("a", v)] for v in va}
    ib = {v: ints[("b", v)] for v in vb}
    da = sorted(a.cones - b.cones)
    db = sorted(b.cones - a.cones)
    ra, rb = set(a.rays), set(b.rays)
    diffs = []
    for p in sorted(ra & rb):
        diffs.append((p, Fraction(ia[p] - ib[p])))
    for p in sorted(ra - rb):
        diffs.append((p, ia[p] - _pl_exact(b, ib, p, db or None)))
    for p in sorted(rb - ra):
        diffs.append((p, _pl_exact(a, ia, p, da or None) - ib[p]))
    if a.n == 3 and da:
        for p in sorted(_crossing_points(da, db) - ra - rb):
            diffs.append((p, _pl_exact(a, ia, p, da) - _pl_exact(b, ib, p, db)))
    diffs = [(p, d / scale) for p, d in diffs]
    ge = all(d >= 0 for _, d in diffs)
    le = all(d <= 0 for _, d in diffs)
    if ge and le:
        return EQUAL, diffs
    if ge:
        return "ge", diffs
    if le:
        return "le", diffs
    return INCOMPARABLE, diffs


def compare_log_canonical(a: FanModel, b: FanModel) -> str:
    """Compare K_A + B_A with K_B + B_B after pulling back to a common model.

    ``A_greater`` means the pullback of K_A + B_A dominates that of K_B + B_B.
    """
    res, _ = compare_functionals(a, log_canonical_values(a), b, log_canonical_values(b))
    # K + B is minus the functional, so a smaller functional is a larger divisor
    return {EQUAL: EQUAL, "le": A_GREATER, "ge": B_GREATER, INCOMPARABLE: INCOMPARABLE}[res]


# ------------------------------------------------------------------ JSON

def rational_str(x) -> str:
    return str(Fraction(x))


def ray_json(lat: OverLattice, r: IntVec) -> list[str]:
    return [rational_str(x) for x in lat.to_rational(r)]


def fan_to_json(fan: FanModel) -> dict:
    lat = fan.lattice
    return {
        "lattice_basis": [[rational_str(x) for x in row] for row in lat.basis],
        "lattice_index": lat.index,
        "boundary": [{"ray": ray_json(lat, r), "order": o} for r, o in fan.boundary_orders],
        "exceptional_rays": [ray_json(lat, r) for r in fan.exceptional_rays],
        "cones": [[ray_json(lat, r) for r in c] for c in fan.sorted_cones()],
    }


def fan_from_json(doc: Mapping) -> FanModel:
    from .lattice import lattice_from_generators

    basis = [[Fraction(x) for x in row] for row in doc["lattice_basis"]]
    lat = lattice_from_generators(len(basis), basis)
    cones = frozenset(make_cone(lat.scaled([Fraction(x) for x in r]) for r in c) for c in doc["cones"])
    bnd = tuple((lat.scaled([Fraction(x) for x in e["ray"]]), int(e["order"])) for e in doc["boundary"])
    return FanModel(lat, cones, bnd)
