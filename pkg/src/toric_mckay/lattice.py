"""The overlattice N = Z^n + sum Z.q(g) and exact lattice geometry in it.

Points of N are rational vectors whose denominators divide the group
exponent ``D``.  Internally a point ``v`` is stored as the integer vector
``D * v``; :meth:`OverLattice.to_rational` converts back.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .groups import DiagonalGroup
from .intmath import (
    IntVec,
    det,
    hermite_rows,
    lcm,
    matvec_row,
    maximal_minors_gcd,
    solve_in_basis,
    unimodular_column_reduction,
    vgcd,
)


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class OverLattice:
    n: int
    scale: int                      # D: every point of N lies in (1/D) Z^n
    hnf: tuple[IntVec, ...]         # Hermite basis of D*N (rows)

    # ------------------------------------------------------------ basics
    @cached_property
    def basis(self) -> tuple[tuple[Fraction, ...], ...]:
        """Canonical rational basis (rows) of N."""
        return tuple(tuple(Fraction(x, self.scale) for x in row) for row in self.hnf)

    @cached_property
    def _hash(self) -> int:
        return hash(self.basis)

    @property
    def index(self) -> int:
        """|N : Z^n|."""
        return self.scale ** self.n // abs(det(self.hnf))

    @cached_property
    def covolume(self) -> int:
        return abs(det(self.hnf))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        return isinstance(other, OverLattice) and self.basis == other.basis

    def __hash__(self) -> int:
        return self._hash

    def scaled(self, v: Sequence) -> IntVec:
        """Integer representative D*v of a rational vector (no membership test)."""
        out = []
        for x in v:
            y = Fraction(x) * self.scale
            if y.denominator != 1:
                raise LatticeError(f"{tuple(map(str, v))} is not in N")
            out.append(int(y))
        return tuple(out)

    def to_rational(self, p: Sequence[int]) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.scale) for x in p)

    def coords(self, p: Sequence[int]) -> IntVec:
        """Integer coordinates of the scaled point p in the Hermite basis."""
        rest = list(p)
        out = []
        for i, row in enumerate(self.hnf):
            piv = row[i]
            if rest[i] % piv:
                raise LatticeError("point not in N")
            c = rest[i] // piv
            out.append(c)
            if c:
                rest = [a - c * b for a, b in zip(rest, row)]
        if any(rest):
            raise LatticeError("point not in N")
        return tuple(out)

    def contains_scaled(self, p: Sequence[int]) -> bool:
        try:
            self.coords(p)
        except LatticeError:
            return False
        return True

    def contains(self, v: Sequence) -> bool:
        try:
            return self.contains_scaled(self.scaled(v))
        except LatticeError:
            return False

    def unit(self, i: int) -> IntVec:
        return tuple(self.scale if j == i else 0 for j in range(self.n))

    # ------------------------------------------------------------ rays
    def primitive_scaled(self, p: Sequence[int]) -> IntVec:
        if not any(p):
            raise LatticeError("zero vector has no primitive generator")
        if not self.contains_scaled(p):
            raise LatticeError("vector not in N")
        g = vgcd(abs(x) for x in p)
        for k in sorted((d for d in range(1, g + 1) if g % d == 0), reverse=True):
            q = tuple(x // k for x in p)
            if self.contains_scaled(q):
                return q
        raise AssertionError("unreachable")

    def primitive(self, v: Sequence) -> tuple[Fraction, ...]:
        """v / k for the largest integer k with v / k in N."""
        if any(Fraction(x) < 0 for x in v):
            raise LatticeError("vector outside the positive orthant")
        return self.to_rational(self.primitive_scaled(self.scaled(v)))

    def is_primitive_scaled(self, p: Sequence[int]) -> bool:
        return self.primitive_scaled(p) == tuple(p)

    def boundary_ray(self, i: int) -> IntVec:
        """Primitive generator e_i' of the i-th edge of the positive orthant."""
        return self.primitive_scaled(self.unit(i))

    def boundary_rays(self) -> tuple[IntVec, ...]:
        return self._boundary

    @cached_property
    def _boundary(self) -> tuple[IntVec, ...]:
        return tuple(self.boundary_ray(i) for i in range(self.n))

    # ------------------------------------------------------------ indices
    def cone_multiplicity(self, rays: Sequence[Sequence[int]]) -> int:
        """|N : sum Z ray_i| for n independent scaled vectors."""
        d = det(rays)
        if d == 0:
            raise LatticeError("degenerate cone")
        m, r = divmod(abs(d), self.covolume)
        if r:
            raise LatticeError("vectors do not lie in N")
        return m

    def saturation_index(self, vectors: Sequence[Sequence[int]]) -> int:
        """Index of sum Z v_k inside its saturation N cap span(v)."""
        if not vectors:
            return 1
        return maximal_minors_gcd([self.coords(v) for v in vectors])

    def quotient_map(self, vectors: Sequence[Sequence[int]]):
        """Projection N -> N / (N cap span(vectors)) in integer coordinates."""
        k = len(vectors)
        u = unimodular_column_reduction([self.coords(v) for v in vectors], self.n)

        def project(p: Sequence[int]) -> IntVec:
            return matvec_row(self.coords(p), u)[k:]

        return project

    def quotient_index(self, sub: Sequence[Sequence[int]], vectors: Sequence[Sequence[int]]) -> int:
        """Index in N/(N cap span(sub)) of the image of sum Z v over the vectors."""
        project = self.quotient_map(sub) if sub else (lambda p: self.coords(p))
        imgs = [project(v) for v in vectors]
        if not imgs:
            return 1
        d = det(imgs)
        if d == 0:
            raise LatticeError("degenerate quotient")
        return abs(d)

    # ------------------------------------------------------------ enumeration
    def parallelepiped_points(self, rays: Sequence[Sequence[int]]) -> list[tuple[Fraction, ...]]:
        """N-points of the half-open parallelepiped spanned by the rays.

        Returned in barycentric form (lambda_1..lambda_n in [0,1)); there are
        exactly cone_multiplicity(rays) of them.
        """
        gens = [solve_in_basis(rays, row) for row in self.hnf]
        gens = [tuple(x % 1 for x in g) for g in gens]
        zero = tuple(Fraction(0) for _ in range(self.n))
        seen = {zero}
        frontier = [zero]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = tuple((x + y) % 1 for x, y in zip(a, g))
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return sorted(seen)

    def fundamental_points(self) -> list[IntVec]:
        """Scaled representatives in [0, D)^n of N / Z^n (one per coset)."""
        d = self.scale
        gens = [tuple(x % d for x in row) for row in self.hnf]
        zero = (0,) * self.n
        seen = {zero}
        frontier = [zero]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = tuple((x + y) % d for x, y in zip(a, g))
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return sorted(seen)

    def box_points(self, upper: Sequence[Fraction]) -> Iterable[IntVec]:
        """All scaled N-points with 0 <= v_i <= upper_i (bounding-box scan)."""
        ranges = [range(0, int(Fraction(u) * self.scale) + 1) for u in upper]
        for p in product(*ranges):
            if self.contains_scaled(p):
                yield p


def build_overlattice(group: DiagonalGroup) -> OverLattice:
    """N = Z^n + sum over g of Z * weights(g)."""
    n = group.n
    d = group.exponent
    gens = [tuple(d if i == j else 0 for j in range(n)) for i in range(n)]
    gens += [tuple(int(q * d) for q in g.weights) for g in group.elements if not g.is_identity]
    lat = OverLattice(n, d, hermite_rows(gens, n))
    if lat.index != group.order:
        raise AssertionError("overlattice index differs from the group order")
    return lat


def standard_lattice(n: int) -> OverLattice:
    return OverLattice(n, 1, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def lattice_from_generators(n: int, vectors: Sequence[Sequence]) -> OverLattice:
    """Lattice Z^n + sum Z v for rational vectors v."""
    d = 1
    for v in vectors:
        for x in v:
            q = Fraction(x)
            d = lcm(d, q.denominator)
    gens = [tuple(d if i == j else 0 for j in range(n)) for i in range(n)]
    gens += [tuple(int(Fraction(x) * d) for x in v) for v in vectors]
    return OverLattice(n, d, hermite_rows(gens, n))
