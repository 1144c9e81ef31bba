"""Line-bundle calculus on root stacks of C^n and the case-1 local check.

A local model is C^n whose coordinate hyperplanes D_1..D_n carry stack
orders.  A line bundle O(-sum m_i D~_i) is recorded by its integer vector m
together with the orders, and Hom spaces between such bundles are replaced by
their monomial gradings: the space of sections of O(-sum c_i D_i) on C^n is
spanned by the monomials x^u with u_i >= c_i, graded by total degree.

Case 1 is the drop of a single boundary order r_1 > s_1 on D_1 with all
other orders kept.  Its certificate checks the ceiling identity behind the
full faithfulness of Phi, the vanishing of Hom from the image of Phi into
each Phi_k (k in Lambda), and the rank identity that stands in for
generation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, prod
from typing import Sequence

from .fan import face_model_rank, k0_rank, make_cone, FanModel
from .intmath import ceil_div
from .lattice import standard_lattice

GENERATION_LABEL = "rank-level generation"


class SODCheckError(AssertionError):
    pass


def phi_image(m: Sequence[int], r: Sequence[int], s: Sequence[int]) -> tuple[Fraction, ...]:
    """Exponents ceil(m_i r_i / s_i) / r_i of Phi(L(m))."""
    for ri, si in zip(r, s):
        if not ri >= si >= 1:
            raise ValueError("orders must satisfy r_i >= s_i >= 1")
    return tuple(Fraction(ceil_div(mi * ri, si), ri) for mi, ri, si in zip(m, r, s))


def phi_numerators(m: Sequence[int], r: Sequence[int], s: Sequence[int]) -> tuple[int, ...]:
    """Integer vector k with Phi(L(m)) = O(-sum k_i D~_{X,i})."""
    return tuple(ceil_div(mi * ri, si) for mi, ri, si in zip(m, r, s))


def _attained(r1: int, s1: int) -> set[int]:
    # ceil((m + s1) r1 / s1) = ceil(m r1 / s1) + r1, so one period of m suffices
    return {ceil_div(m * r1, s1) % r1 for m in range(s1)}


def lambda_set(r1: int, s1: int, check: bool = True) -> frozenset[int]:
    """{0 <= k < r1} minus the values ceil(m r1 / s1) over all integers m."""
    if not r1 >= s1 >= 1:
        raise ValueError("need r1 >= s1 >= 1")
    out = frozenset(set(range(r1)) - _attained(r1, s1))
    if check:
        brute = {ceil_div(m * r1, s1) for m in range(-r1, r1 + 1)}
        if out != frozenset(k for k in range(r1) if k not in brute) or len(out) != r1 - s1:
            raise SODCheckError(f"Lambda({r1},{s1}) disagrees with enumeration")
    return out


def ceiling_identity(m: int, m2: int, r: int, s: int) -> bool:
    """ceil((m - m')/s) == ceil((ceil(m r/s) - ceil(m' r/s)) / r)."""
    lhs = ceil_div(m - m2, s)
    rhs = ceil_div(ceil_div(m * r, s) - ceil_div(m2 * r, s), r)
    return lhs == rhs


# ---------------------------------------------------------------- line bundles

@dataclass(frozen=True)
class StackLineBundle:
    """L(m) = O(-sum m_i D~_i) on the root stack with orders s."""

    m: tuple[int, ...]
    orders: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.m) != len(self.orders):
            raise ValueError("m and orders differ in length")
        if any(o < 1 for o in self.orders):
            raise ValueError("stack orders must be positive")

    @property
    def exponents(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(mi, si) for mi, si in zip(self.m, self.orders))

    def twist(self, delta: Sequence[int]) -> "StackLineBundle":
        return StackLineBundle(tuple(a + b for a, b in zip(self.m, delta)), self.orders)


def count_graded(lower: Sequence[int], cutoff: int) -> list[int]:
    """Number of u in Z^n with u_i >= lower_i and sum u = d, for d = 0..cutoff."""
    n = len(lower)
    base = sum(lower)
    if n == 0:
        return [1 if d == 0 else 0 for d in range(cutoff + 1)]
    return [comb(d - base + n - 1, n - 1) if d >= base else 0 for d in range(cutoff + 1)]


def hom_graded_dim(a: StackLineBundle, b: StackLineBundle, cutoff: int = 8) -> list[int]:
    """Graded dimensions of Hom(a, b) = H^0(O(-sum ceil((b_i - a_i)/s_i) D_i))."""
    if a.orders != b.orders:
        raise ValueError("line bundles live on different models")
    lower = [ceil_div(bi - ai, s) for ai, bi, s in zip(a.m, b.m, a.orders)]
    return count_graded(lower, cutoff)


def divisor_hom_dims(a: Sequence[int], b: Sequence[int], r: Sequence[int], cutoff: int,
                     shift: int = 0) -> list[int]:
    """Hom^p(O_{D1}(-sum a_i D~_i), O_{D1}(-sum b_i D~_i)) on the root stack with orders r.

    Computed on the cover C^n -> [C^n / prod mu_{r_i}]: maps are monomials
    y^e in y_2..y_n with e_i >= b_i - a_i and e_i = 0 mod r_i, graded by
    sum e_i / r_i, and they exist only when the character on y_1 is trivial,
    r_1 | (b_1 - a_1 - p).  ``shift`` is the Ext degree p in {0, 1}; the
    source may also be a line bundle on the whole stack with shift 0.
    """
    if (b[0] - a[0] - shift) % r[0]:
        return [0] * (cutoff + 1)
    dims = [0] * (cutoff + 1)
    lows = [ceil_div(bi - ai, ri) for ai, bi, ri in zip(a[1:], b[1:], r[1:])]
    ranges = []
    for ai, bi, ri, lo in zip(a[1:], b[1:], r[1:], lows):
        top = cutoff - (sum(lows) - lo)     # largest u_i leaving room for the others
        ranges.append([e for e in range(bi - ai, ri * top + 1) if e % ri == 0])
    for es in product(*ranges):
        d = sum(e // ri for e, ri in zip(es, r[1:]))
        if 0 <= d <= cutoff:
            dims[d] += 1
    return dims


def face_hom_dims(m: Sequence[int], m2: Sequence[int], r: Sequence[int], cutoff: int) -> list[int]:
    """Hom(L_F(m), L_F(m')) on F~ = D_1 with orders r_i t_i = r_i (i >= 2)."""
    lower = [ceil_div(b - a, ri) for a, b, ri in zip(m, m2, r)]
    return count_graded(lower, cutoff)


# ---------------------------------------------------------------- case 1

@dataclass(frozen=True)
class LocalCaseOneModel:
    """C^n with source orders r and target orders s, differing only on D_1."""

    n: int
    r: tuple[int, ...]
    s: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.r) != self.n or len(self.s) != self.n:
            raise ValueError("orders must have n entries")
        if not self.r[0] >= self.s[0] >= 1:
            raise ValueError("need r_1 >= s_1 >= 1")
        if any(a != b or a < 1 for a, b in zip(self.r[1:], self.s[1:])):
            raise ValueError("orders must agree off D_1")

    @property
    def lam(self) -> frozenset[int]:
        return lambda_set(self.r[0], self.s[0])

    def _fan(self, orders: Sequence[int]) -> FanModel:
        lat = standard_lattice(self.n)
        rays = lat.boundary_rays()
        return FanModel(lat, frozenset([make_cone(rays)]), tuple(zip(rays, orders)))

    def source_rank(self) -> int:
        return k0_rank(self._fan(self.r))

    def target_rank(self) -> int:
        return k0_rank(self._fan(self.s))

    def face_rank(self) -> int:
        fan = self._fan(self.r)
        return face_model_rank(fan, (fan.boundary_rays[0],))

    def to_json(self) -> dict:
        return {"n": self.n, "r": list(self.r), "s": list(self.s)}


def random_case_one_model(rng: random.Random, max_order: int = 6) -> LocalCaseOneModel:
    n = rng.choice((2, 3))
    r1 = rng.randint(1, max_order)
    s1 = rng.randint(1, r1)
    rest = tuple(rng.randint(1, max_order) for _ in range(n - 1))
    return LocalCaseOneModel(n, (r1,) + rest, (s1,) + rest)


@dataclass
class SODCertificate:
    model: LocalCaseOneModel
    cutoff: int
    lam: list[int]
    checked: dict[str, int] = field(default_factory=dict)
    counterexamples: dict[str, list] = field(default_factory=dict)
    ranks: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not any(self.counterexamples.values())

    def to_json(self) -> dict:
        return {
            "model": self.model.to_json(),
            "cutoff": self.cutoff,
            "lambda": self.lam,
            "fully_faithful": not self.counterexamples.get("ceiling_identity"),
            "phi0_hom_preserved": not self.counterexamples.get("phi0_hom"),
            "semiorthogonal": not (self.counterexamples.get("phi_to_phik")
                                   or self.counterexamples.get("phik_order")),
            "generation": GENERATION_LABEL,
            "generation_holds": not self.counterexamples.get("rank_identity"),
            "ranks": self.ranks,
            "checked": self.checked,
            "counterexamples": {k: v for k, v in sorted(self.counterexamples.items()) if v},
            "passed": self.passed,
        }


def _grid(n: int, radius: int) -> list[tuple[int, ...]]:
    return list(product(range(-radius, radius + 1), repeat=n))


def verify_case1_sod(model: LocalCaseOneModel, cutoff: int = 8, radius: int = 2) -> SODCertificate:
    """Check the case-1 statements on all line-bundle twists in a box of given radius."""
    r, s, n = model.r, model.s, model.n
    lam = sorted(model.lam)
    cert = SODCertificate(model, cutoff, lam)
    bad = cert.counterexamples
    for key in ("ceiling_identity", "phi0_hom", "phi_to_phik", "phik_order", "rank_identity"):
        bad[key] = []

    # (i) full faithfulness of Phi: the ceiling identity on every coordinate
    grid = _grid(n, radius)
    count = 0
    for m in grid:
        for m2 in grid:
            for i in range(n):
                count += 1
                if not ceiling_identity(m[i], m2[i], r[i], s[i]):
                    bad["ceiling_identity"].append([list(m), list(m2), i])
            if hom_graded_dim(StackLineBundle(m, s), StackLineBundle(m2, s), cutoff) != \
                    hom_graded_dim(StackLineBundle(phi_numerators(m, r, s), r),
                                   StackLineBundle(phi_numerators(m2, r, s), r), cutoff):
                bad["ceiling_identity"].append([list(m), list(m2), "hom"])
    cert.checked["ceiling_identity"] = count

    # Phi_0 preserves graded Hom between line bundles on F~
    fgrid = _grid(n - 1, radius)
    count = 0
    for m in fgrid:
        for m2 in fgrid:
            count += 1
            lhs = face_hom_dims(m, m2, r[1:], cutoff)
            rhs = divisor_hom_dims((0,) + m, (0,) + m2, r, cutoff)
            if lhs != rhs:
                bad["phi0_hom"].append([list(m), list(m2)])
    cert.checked["phi0_hom"] = count

    # (ii) Hom(Phi(L(m)), Phi_k(L_F(m'))[p]) = 0; only p = 0 survives on the affine model
    count = 0
    for k in lam:
        for m in grid:
            src = phi_numerators(m, r, s)
            for m2 in fgrid:
                count += 1
                if any(divisor_hom_dims(src, (k,) + m2, r, cutoff)):
                    bad["phi_to_phik"].append([k, list(m), list(m2)])
    cert.checked["phi_to_phik"] = count

    # ordering among the Phi_k: Hom^p(Phi_k'(a), Phi_k(b)) = 0 for k < k', p in {0, 1}
    count = 0
    for k, k2 in ((a, b) for a in lam for b in lam if a < b):
        for m in fgrid:
            for m2 in fgrid:
                for p in (0, 1):
                    count += 1
                    if any(divisor_hom_dims((k2,) + m, (k,) + m2, r, cutoff, shift=p)):
                        bad["phik_order"].append([k2, k, list(m), list(m2), p])
    cert.checked["phik_order"] = count

    # (iii) rank identity
    src, tgt, face = model.source_rank(), model.target_rank(), model.face_rank()
    cert.ranks = {"source": src, "target": tgt, "face": face, "lambda": len(lam)}
    expected = prod(r)
    if src != expected or src != len(lam) * face + tgt:
        bad["rank_identity"].append([src, len(lam), face, tgt])
    cert.checked["rank_identity"] = 1
    return cert
