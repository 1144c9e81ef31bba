"""Small exact integer/rational linear algebra for dimensions <= 4.

Everything here works on tuples of Python ints or Fractions. Matrices are
sequences of rows.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

IntVec = tuple[int, ...]


def vgcd(values) -> int:
    return reduce(gcd, values, 0)


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b if a and b else 0


def ceil_div(a: int, b: int) -> int:
    """Exact ceiling of a/b for b > 0."""
    return -((-a) // b)


def frac_ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def det(rows: Sequence[Sequence]) :
    """Determinant by cofactor expansion (n <= 3) or Bareiss elimination."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        a, b, c = rows
        return (a[0] * (b[1] * c[2] - b[2] * c[1])
                - a[1] * (b[0] * c[2] - b[2] * c[0])
                + a[2] * (b[0] * c[1] - b[1] * c[0]))
    m = [[Fraction(x) for x in r] for r in rows]
    sign = 1
    result = Fraction(1)
    for i in range(n):
        piv = next((k for k in range(i, n) if m[k][i] != 0), None)
        if piv is None:
            return 0
        if piv != i:
            m[i], m[piv] = m[piv], m[i]
            sign = -sign
        result *= m[i][i]
        for k in range(i + 1, n):
            f = m[k][i] / m[i][i]
            if f:
                for j in range(i, n):
                    m[k][j] -= f * m[i][j]
    out = sign * result
    return int(out) if out.denominator == 1 else out


def solve_in_basis(basis: Sequence[Sequence[int]], x: Sequence[int]) -> tuple[Fraction, ...]:
    """Coefficients lam with x = sum lam_i basis_i (Cramer's rule).

    ``basis`` must be square and nonsingular.
    """
    d = det(basis)
    if d == 0:
        raise ZeroDivisionError("singular basis")
    out = []
    rows = [list(r) for r in basis]
    for i in range(len(rows)):
        saved = rows[i]
        rows[i] = list(x)
        out.append(Fraction(det(rows), d))
        rows[i] = saved
    return tuple(out)


def maximal_minors_gcd(rows: Sequence[Sequence[int]]) -> int:
    """gcd of the k x k minors of a k x n integer matrix (k <= n)."""
    k = len(rows)
    n = len(rows[0]) if rows else 0
    if k == 0:
        return 1
    from itertools import combinations

    g = 0
    for cols in combinations(range(n), k):
        g = gcd(g, det([[r[c] for c in cols] for r in rows]))
        if g == 1:
            return 1
    return abs(g)


def hermite_rows(gens: Sequence[Sequence[int]], n: int) -> tuple[IntVec, ...]:
    """Row-style Hermite normal form of the lattice generated by ``gens``.

    Returns n rows (the lattice must have full rank n), upper triangular with
    positive pivots and entries above each pivot reduced into [0, pivot).
    """
    rows = [list(g) for g in gens if any(g)]
    basis: list[list[int]] = []
    for col in range(n):
        cand = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0]
        # Euclid on the column entries
        while len(cand) > 1:
            cand.sort(key=lambda r: abs(r[col]))
            piv = cand[0]
            new = [piv]
            for r in cand[1:]:
                q = r[col] // piv[col]
                rr = [a - q * b for a, b in zip(r, piv)]
                if rr[col] != 0:
                    new.append(rr)
                elif any(rr):
                    rest.append(rr)
            cand = new
        if not cand:
            raise ValueError("generators do not span a full-rank lattice")
        piv = cand[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        basis.append(piv)
        rows = rest
    for i in range(n):
        for j in range(i):
            q = basis[j][i] // basis[i][i]
            if q:
                basis[j] = [a - q * b for a, b in zip(basis[j], basis[i])]
    return tuple(tuple(r) for r in basis)


def unimodular_column_reduction(rows: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Unimodular U (n x n) such that rows @ U = [B | 0] with B square k x k.

    ``rows`` must have full row rank k.
    """
    a = [list(r) for r in rows]
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(dst: int, src: int, q: int) -> None:
        # column dst -= q * column src
        for r in a:
            r[dst] -= q * r[src]
        for r in u:
            r[dst] -= q * r[src]

    def swap(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in u:
            r[i], r[j] = r[j], r[i]

    for i, row in enumerate(a):
        # clear columns > i in row i via Euclid, leaving the gcd in column i
        while True:
            nz = [j for j in range(i, n) if row[j] != 0]
            if not nz:
                raise ValueError("rows are not linearly independent")
            if len(nz) == 1:
                if nz[0] != i:
                    swap(i, nz[0])
                break
            p = min(nz, key=lambda j: abs(row[j]))
            for j in nz:
                if j != p:
                    colop(j, p, row[j] // row[p])
    return u


def matvec_row(x: Sequence[int], m: Sequence[Sequence[int]]) -> IntVec:
    """Row vector times matrix."""
    return tuple(sum(x[i] * m[i][j] for i in range(len(x))) for j in range(len(m[0])))
