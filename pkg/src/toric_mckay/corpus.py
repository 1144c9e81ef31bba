"""Built-in regression corpus of diagonal abelian groups.

* every cyclic group 1/r(a,b,c) with r <= 30, one per class under
  coordinate permutation (changing the generator does not change the group);
* every non-cyclic abelian subgroup of the diagonal torus of order <= 50,
  again up to coordinate permutation;
* the surface groups 1/r(a,b) with r <= 30, used by the two-dimensional checks.

Non-cyclic groups are enumerated through their character lattices: a finite
subgroup G of (Q/Z)^3 of order m is dual to a sublattice M of Z^3 of index m,
and G is generated by the columns of M^-1 modulo 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations, product
from math import gcd

from .groups import DiagonalGroup, cyclic, generate_group, minimal_generators
from .intmath import hermite_rows, vgcd


@dataclass(frozen=True)
class CorpusEntry:
    family: str          # "cyclic", "two_generator" or "surface"
    label: str
    group: DiagonalGroup

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def in_sl(self) -> bool:
        return all(g.in_sl for g in self.group.elements)


def _units(r: int) -> list[int]:
    return [k for k in range(1, r + 1) if gcd(k, r) == 1]


def cyclic_weight_classes(r: int, n: int = 3) -> list[tuple[int, ...]]:
    """Sorted weight vectors, one per group 1/r(a_1..a_n) of order r up to permutation."""
    units = _units(r)
    seen = set()
    for t in combinations_with_replacement(range(r), n):
        if vgcd(list(t) + [r]) != 1:
            continue
        seen.add(min(tuple(sorted(k * x % r for x in t)) for k in units))
    return sorted(seen)


def _label(group: DiagonalGroup, gens) -> str:
    return " | ".join(f"{group.n}; " + ",".join(str(q) for q in g.weights) for g in gens)


@lru_cache(maxsize=None)
def cyclic_corpus(max_r: int = 30, n: int = 3, sl_only: bool = False) -> tuple[CorpusEntry, ...]:
    out = []
    family = "cyclic" if n == 3 else "surface"
    for r in range(1, max_r + 1):
        for w in cyclic_weight_classes(r, n):
            if sl_only and sum(w) % r:
                continue
            g = cyclic(w, r)
            out.append(CorpusEntry(family, _label(g, g.generators), g))
    return tuple(out)


def surface_corpus(max_r: int = 30) -> tuple[CorpusEntry, ...]:
    return cyclic_corpus(max_r, 2)


def _sublattices(m: int):
    """Row-Hermite bases of the sublattices of Z^3 with index m."""
    for d1 in range(1, m + 1):
        if m % d1:
            continue
        for d2 in range(1, m // d1 + 1):
            if (m // d1) % d2:
                continue
            d3 = m // d1 // d2
            for a12, a13, a23 in product(range(d2), range(d3), range(d3)):
                yield ((d1, a12, a13), (0, d2, a23), (0, 0, d3))


def _is_cyclic_quotient(rows) -> bool:
    # Z^3 / M is cyclic iff its second determinantal divisor is 1
    g = 0
    for ri in combinations(range(3), 2):
        for ci in combinations(range(3), 2):
            g = gcd(g, rows[ri[0]][ci[0]] * rows[ri[1]][ci[1]]
                    - rows[ri[0]][ci[1]] * rows[ri[1]][ci[0]])
    return g == 1


def _dual_generators(rows) -> list[tuple[Fraction, ...]]:
    """Columns of M^-1 modulo 1 for upper-triangular M."""
    (a, b, c), (_, d, e), (_, _, f) = rows
    inv = [
        [Fraction(1, a), Fraction(-b, a * d), Fraction(b * e - c * d, a * d * f)],
        [Fraction(0), Fraction(1, d), Fraction(-e, d * f)],
        [Fraction(0), Fraction(0), Fraction(1, f)],
    ]
    return [tuple(inv[i][j] % 1 for i in range(3)) for j in range(3)]


@lru_cache(maxsize=None)
def two_generator_corpus(max_order: int = 50, sl_only: bool = False) -> tuple[CorpusEntry, ...]:
    """Non-cyclic diagonal abelian subgroups of GL(3) of order <= max_order."""
    reps = {}
    for m in range(4, max_order + 1):
        for rows in _sublattices(m):
            if _is_cyclic_quotient(rows):
                continue
            key = min(hermite_rows([[r[p[j]] for j in range(3)] for r in rows], 3)
                      for p in permutations(range(3)))
            if key not in reps:
                reps[key] = key
    out = []
    for key in sorted(reps, key=lambda k: (k[0][0] * k[1][1] * k[2][2], k)):
        gens = [w for w in _dual_generators(key) if any(w)]
        if sl_only and any(sum(w).denominator != 1 for w in gens):
            continue
        g = generate_group(gens, 3)
        gens = minimal_generators(g)
        out.append(CorpusEntry("two_generator", _label(g, gens), g))
    return tuple(out)


def full_corpus(max_r: int = 30, max_order: int = 50) -> tuple[CorpusEntry, ...]:
    return cyclic_corpus(max_r) + two_generator_corpus(max_order)


def sl_corpus(max_order: int = 30) -> tuple[CorpusEntry, ...]:
    """Groups of the full corpus inside SL(3) with order <= max_order."""
    ents = cyclic_corpus(min(30, max_order), 3, True) + two_generator_corpus(min(50, max_order), True)
    return tuple(e for e in ents if e.order <= max_order)
