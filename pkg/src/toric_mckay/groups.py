"""Finite abelian diagonal subgroups of GL(n, C).

A diagonal element acts by ``diag(exp(2 pi i q_1), ..., exp(2 pi i q_n))`` and
is stored as its weight vector ``(q_1, ..., q_n)`` with every ``q_i`` in
``[0, 1)``.  All arithmetic is exact.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .intmath import lcm

DEFAULT_GROUP_CAP = 10_000

Weights = tuple[Fraction, ...]


class GroupSpecError(ValueError):
    """Raised for malformed group input."""


class GroupTooLarge(GroupSpecError):
    pass


def _reduce(w: Iterable) -> Weights:
    return tuple(Fraction(x) % 1 for x in w)


@dataclass(frozen=True, order=True)
class GroupElement:
    weights: Weights

    def __post_init__(self) -> None:
        for q in self.weights:
            if not isinstance(q, Fraction) or not 0 <= q < 1:
                raise GroupSpecError(f"weight {q!r} is not a reduced rational in [0,1)")

    @classmethod
    def of(cls, weights: Iterable) -> "GroupElement":
        return cls(_reduce(weights))

    def __add__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(tuple((a + b) % 1 for a, b in zip(self.weights, other.weights)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(tuple((-a) % 1 for a in self.weights))

    @property
    def is_identity(self) -> bool:
        return not any(self.weights)

    @property
    def age(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    @property
    def in_sl(self) -> bool:
        return self.age.denominator == 1

    @property
    def order(self) -> int:
        o = 1
        for q in self.weights:
            o = lcm(o, q.denominator)
        return o

    def __str__(self) -> str:
        return "(" + ",".join(str(q) for q in self.weights) + ")"


@dataclass(frozen=True)
class DiagonalGroup:
    n: int
    elements: frozenset[GroupElement]
    generators: tuple[GroupElement, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GroupSpecError("dimension must be positive")
        for g in self.elements:
            if len(g.weights) != self.n:
                raise GroupSpecError("element of wrong length")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements))

    @property
    def identity(self) -> GroupElement:
        return GroupElement(tuple(Fraction(0) for _ in range(self.n)))

    @property
    def exponent(self) -> int:
        e = 1
        for g in self.elements:
            e = lcm(e, g.order)
        return e

    def subgroup(self, pred) -> "DiagonalGroup":
        return DiagonalGroup(self.n, frozenset(g for g in self.elements if pred(g)))

    def is_closed(self) -> bool:
        return (self.identity in self.elements
                and all(a + b in self.elements for a in self.elements for b in self.elements)
                and all(-a in self.elements for a in self.elements))

    def permuted(self, perm: Sequence[int]) -> "DiagonalGroup":
        """Group with coordinates reordered: new coordinate i is old perm[i]."""
        return DiagonalGroup(
            self.n,
            frozenset(GroupElement(tuple(g.weights[p] for p in perm)) for g in self.elements),
        )

    def key(self) -> tuple:
        return tuple(sorted(g.weights for g in self.elements))

    def spec_string(self) -> str:
        gens = self.generators or minimal_generators(self)
        if not gens:
            return f"{self.n}; " + ",".join("0" for _ in range(self.n))
        return "\n".join(f"{self.n}; " + ",".join(str(q) for q in g.weights) for g in gens)

    def __str__(self) -> str:
        return " | ".join(self.spec_string().splitlines())


def generate_group(generators: Sequence[Sequence], n: int, cap: int = DEFAULT_GROUP_CAP) -> DiagonalGroup:
    """Closure of the generators under addition mod 1."""
    gens = []
    for g in generators:
        if len(g) != n:
            raise GroupSpecError(f"generator {g!r} does not have {n} entries")
        try:
            w = tuple(Fraction(x) for x in g)
        except (TypeError, ValueError) as exc:
            raise GroupSpecError(f"non-rational weight in {g!r}") from exc
        for x in g:
            if isinstance(x, float):
                raise GroupSpecError("floating point weights are not accepted")
        gens.append(GroupElement(tuple(q % 1 for q in w)))
    elements = _closure([g.weights for g in gens], n, cap)
    return DiagonalGroup(n, frozenset(GroupElement(w) for w in elements), tuple(gens))


def _closure(gens: Sequence[Weights], n: int, cap: int = DEFAULT_GROUP_CAP) -> set[Weights]:
    """Closure under addition mod 1, computed on integer vectors over a common denominator."""
    d = 1
    for w in gens:
        for q in w:
            d = lcm(d, q.denominator)
    igens = [tuple(int(q * d) for q in w) for w in gens]
    zero = (0,) * n
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for a in frontier:
            for g in igens:
                b = tuple((x + y) % d for x, y in zip(a, g))
                if b not in seen:
                    seen.add(b)
                    if len(seen) > cap:
                        raise GroupTooLarge(f"group order exceeds cap {cap}")
                    nxt.append(b)
        frontier = nxt
    return {tuple(Fraction(x, d) for x in v) for v in seen}


def cyclic(weights: Sequence[int], r: int) -> DiagonalGroup:
    """The cyclic group 1/r(a_1, ..., a_n)."""
    return generate_group([[Fraction(a, r) for a in weights]], len(weights))


def minimal_generators(group: DiagonalGroup) -> tuple[GroupElement, ...]:
    """A short deterministic generating set (greedy, largest order first)."""
    elems = sorted(group.elements, key=lambda g: (-g.order, g.weights))
    gens: list[GroupElement] = []
    span = {group.identity}
    for g in elems:
        if g in span:
            continue
        gens.append(g)
        span = {GroupElement(w) for w in _closure([x.weights for x in gens], group.n)}
        if len(span) == group.order:
            break
    return tuple(gens)


_LINE = re.compile(r"^\s*(\d+)\s*;\s*(.*)$")


def parse_group_spec(text: str, cap: int = DEFAULT_GROUP_CAP) -> DiagonalGroup:
    """Parse ``n; a1/r,a2/r,...`` lines (one generator per line).

    Generators may also be separated by ``|``.
    """
    lines = [ln for part in text.replace("|", "\n").splitlines() for ln in [part.strip()] if ln]
    if not lines:
        raise GroupSpecError("empty group spec")
    n = None
    gens = []
    for ln in lines:
        m = _LINE.match(ln)
        if not m:
            raise GroupSpecError(f"cannot parse generator line {ln!r}")
        dim = int(m.group(1))
        if n is None:
            n = dim
        elif dim != n:
            raise GroupSpecError("inconsistent dimensions across generator lines")
        body = m.group(2).strip()
        if not body:
            continue
        entries = [e.strip() for e in body.split(",")]
        if len(entries) != dim:
            raise GroupSpecError(f"expected {dim} weights in {ln!r}")
        try:
            w = [Fraction(e) for e in entries]
        except (ValueError, ZeroDivisionError) as exc:
            raise GroupSpecError(f"non-rational weight in {ln!r}") from exc
        if any("." in e or "e" in e.lower() for e in entries):
            raise GroupSpecError("weights must be written as integers or p/q")
        if any(not 0 <= q < 1 for q in w):
            raise GroupSpecError(f"weights must lie in [0,1): {ln!r}")
        gens.append(w)
    if n is None or n > 3:
        raise GroupSpecError("dimension must be 1, 2 or 3")
    return generate_group(gens, n, cap)


# ---------------------------------------------------------------- subgroups

def sl_intersection(group: DiagonalGroup) -> tuple[DiagonalGroup, int, GroupElement]:
    """H = G cap SL(n), the index r = [G:H], and an element generating G/H.

    The determinant character g -> age(g) mod 1 maps G onto the cyclic group
    (1/r)Z/Z; the returned element has age of denominator exactly r.
    """
    h = group.subgroup(lambda g: g.in_sl)
    r = group.order // h.order
    gen = min((g for g in group.elements if (g.age % 1).denominator == r),
              key=lambda g: g.weights)
    image = {(k * gen.age) % 1 for k in range(r)}
    if len(image) != r or r * h.order != group.order:
        raise AssertionError("determinant image is not cyclic of order [G:H]")
    return h, r, gen


def hyperplane_inertia(group: DiagonalGroup, i: int) -> DiagonalGroup:
    """Elements fixing the hyperplane {x_i = 0} pointwise (only q_i nonzero)."""
    return group.subgroup(lambda g: all(q == 0 for j, q in enumerate(g.weights) if j != i))


@dataclass(frozen=True)
class BoundaryDivisor:
    """b_i = 1 - 1/e_i with e_i the order of the inertia of hyperplane i."""

    orders: tuple[int, ...]

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(1 - Fraction(1, e) for e in self.orders)

    def __str__(self) -> str:
        return "(" + ",".join(str(b) for b in self.coefficients) + ")"


def boundary_divisor(group: DiagonalGroup) -> BoundaryDivisor:
    return BoundaryDivisor(tuple(hyperplane_inertia(group, i).order for i in range(group.n)))


@dataclass(frozen=True)
class FixedLocusRecord:
    subspace: tuple[int, ...]   # coordinate indices spanning V
    inertia: DiagonalGroup
    decomposition: DiagonalGroup
    quotient_order: int
    inertia_in_sl: bool

    @property
    def dimension(self) -> int:
        return len(self.subspace)

    def label(self) -> str:
        if not self.subspace:
            return "origin"
        return "span(" + ",".join(f"e{i + 1}" for i in self.subspace) + ")"


def pointwise_stabilizer(group: DiagonalGroup, subspace: Sequence[int]) -> DiagonalGroup:
    return group.subgroup(lambda g: all(g.weights[i] == 0 for i in subspace))


def fixed_space(group: DiagonalGroup) -> tuple[int, ...]:
    """Coordinates on which every element of the group acts trivially."""
    return tuple(i for i in range(group.n) if all(g.weights[i] == 0 for g in group.elements))


def fixed_locus_census(group: DiagonalGroup) -> list[FixedLocusRecord]:
    """Proper coordinate subspaces V with non-trivial inertia not inside SL.

    Only subspaces that are the full fixed space of their own inertia are
    listed; a smaller coordinate subspace with the same inertia would repeat
    the record of its saturation.
    """
    out = []
    for k in range(group.n - 1, -1, -1):
        for sub in itertools.combinations(range(group.n), k):
            inertia = pointwise_stabilizer(group, sub)
            if inertia.order == 1:
                continue
            if all(g.in_sl for g in inertia.elements):
                continue
            if fixed_space(inertia) != sub:
                continue
            out.append(FixedLocusRecord(
                subspace=sub,
                inertia=inertia,
                decomposition=group,
                quotient_order=group.order // inertia.order,
                inertia_in_sl=False,
            ))
    return out


def record_for_subspace(records: Sequence[FixedLocusRecord], group: DiagonalGroup,
                        subspace: Sequence[int]) -> int | None:
    """Index of the census record whose V_j carries the inertia of ``subspace``."""
    sat = fixed_space(pointwise_stabilizer(group, subspace))
    for j, rec in enumerate(records):
        if rec.subspace == sat:
            return j
    return None
