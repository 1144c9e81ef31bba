from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

import oracles
from strategies import small_groups
from toric_mckay.fan import (
    A_GREATER,
    B_GREATER,
    EQUAL,
    INCOMPARABLE,
    coefficient,
    coefficient_functional,
    compare_log_canonical,
    fan_from_json,
    fan_to_json,
    face_model_rank,
    is_regular,
    is_subdivision_of_orthant,
    is_terminal,
    k0_rank,
    log_canonical_values,
    quotient_cone_model,
    stellar_subdivide,
    total_volume,
    unsubdivide,
    wall_degree,
    wall_exchange,
)
from toric_mckay.groups import cyclic, generate_group
from toric_mckay.intmath import det
from toric_mckay.lattice import build_overlattice, standard_lattice

SWAP = {A_GREATER: B_GREATER, B_GREATER: A_GREATER, EQUAL: EQUAL, INCOMPARABLE: INCOMPARABLE}


def model(g):
    lat = build_overlattice(g)
    return lat, quotient_cone_model(lat), coefficient_functional(lat)


def test_coefficient_examples():
    lat, _, psi = model(cyclic((1, 1, 1), 4))
    assert coefficient(psi, lat.scaled((F(1, 4),) * 3)) == F(1, 4)
    lat, _, psi = model(cyclic((1, 4), 15))
    assert coefficient(psi, lat.scaled((F(1, 15), F(4, 15)))) == F(2, 3)
    # without quasi-reflections the boundary rays have coefficient zero
    for r in lat.boundary_rays():
        assert psi.coefficient(r) == 0


def test_coefficient_with_boundary():
    lat, _, psi = model(cyclic((1, 0, 0), 2))
    assert psi.boundary == (F(1, 2), 0, 0)
    assert psi.orders == (2, 1, 1)
    # on a boundary ray the coefficient is the boundary coefficient itself
    assert psi.coefficient(lat.boundary_ray(0)) == F(1, 2)
    assert psi.coefficient(lat.boundary_ray(1)) == 0
    # e_1 is twice the boundary ray e_1/2, on which psi is 1 - 1/2
    assert psi(lat.unit(0)) == 1


@given(small_groups(), st.integers(1, 5), st.integers(1, 5))
def test_psi_is_linear_and_matches_sum(g, a, b):
    lat, _, psi = model(g)
    pts = sorted(oracles.weight_set(g))
    p, q = lat.scaled(pts[0]), lat.scaled(pts[-1])
    comb = tuple(a * x + b * y for x, y in zip(p, q))
    assert psi(comb) == a * psi(p) + b * psi(q)
    for w in pts:
        assert psi(lat.scaled(w)) == oracles.log_discrepancy(g, w)


# ---------------------------------------------------------------- terminality

def test_terminal_examples():
    lat, x, _ = model(cyclic((1, 1, 1), 2))
    assert is_terminal(lat.boundary_rays(), lat)
    lat, x, _ = model(cyclic((1, 1, 1), 4))
    res = is_terminal(lat.boundary_rays(), lat)
    assert not res and res.witness == (F(1, 4),) * 3 and res.level == F(3, 4)
    std = standard_lattice(3)
    assert is_terminal(std.boundary_rays(), std)


@given(small_groups(max_r=8), st.data())
def test_terminal_matches_scan(g, data):
    lat = build_overlattice(g)
    pts = [p for p in lat.box_points([1] * g.n) if any(p) and lat.is_primitive_scaled(p)]
    rays = data.draw(st.lists(st.sampled_from(pts), min_size=g.n, max_size=g.n, unique=True))
    if det(rays) == 0:
        return
    rat = [lat.to_rational(r) for r in rays]
    bad = oracles.cone_points_below_one(g, rat)
    res = is_terminal(rays, lat)
    assert bool(res) == (not bad)
    if not res:
        assert res.witness in bad


# ---------------------------------------------------------------- walls

def blowup_quarter():
    lat, x, psi = model(cyclic((1, 1, 1), 4))
    v = lat.scaled((F(1, 4),) * 3)
    return lat, x, stellar_subdivide(x, v), v, psi


def test_stellar_and_unsubdivide_roundtrip():
    lat, x, y, v, _ = blowup_quarter()
    assert len(y.cones) == 3 and y.exceptional_rays == (v,)
    assert is_subdivision_of_orthant(y)
    assert total_volume(y) == total_volume(x)
    back, tau = unsubdivide(y, v)
    assert back.cones == x.cones and set(tau) == set(lat.boundary_rays())
    with pytest.raises(ValueError):
        stellar_subdivide(y, v)


def test_wall_degree_quarter():
    lat, _, y, v, psi = blowup_quarter()
    lam = log_canonical_values(y)
    kb = {r: -lam[r] for r in y.rays}
    for w in y.interior_walls():
        # the exceptional plane is negative on its own lines
        assert wall_degree(y, w, {v: F(1)}) < 0
        # K_Y = f^*K_X - 1/4 E, so K_Y is positive on contracted curves
        assert wall_degree(y, w, kb) > 0
        # the pullback of a Cartier divisor is numerically trivial over X
        pull = {r: -psi(r) for r in y.rays}
        assert wall_degree(y, w, pull) == 0


@given(small_groups(n=3, max_r=8), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_characters_have_degree_zero(g, m):
    lat, x, psi = model(g)
    y = x
    for p in sorted(lat.fundamental_points())[1:4]:
        if p not in y.rays and lat.is_primitive_scaled(p):
            y = stellar_subdivide(y, p)
    chi = {r: sum(a * b for a, b in zip(m, r)) for r in y.rays}
    for w in y.interior_walls():
        assert wall_degree(y, w, chi) == 0
        for c in y.sorted_cones():
            if all(r in c for r in w):
                u = next(r for r in c if r not in w)
                assert wall_degree(y, w, {u: F(1)}) > 0


def test_crepant_wall_degree_zero():
    # the SL group 1/2(1,1,0) has a crepant ray
    lat, x, psi = model(cyclic((1, 1, 0), 2))
    v = lat.scaled((F(1, 2), F(1, 2), 0))
    assert psi.coefficient(v) == 0
    y = stellar_subdivide(x, v)
    lam = log_canonical_values(y)
    for w in y.interior_walls():
        assert wall_degree(y, w, {r: -lam[r] for r in y.rays}) == 0


def test_wall_exchange_flips_sign():
    lat = standard_lattice(3)
    y = quotient_cone_model(lat)
    for p in [(2, 1, 1), (1, 2, 1)]:
        y = stellar_subdivide(y, p)
    walls = [w for w in y.interior_walls() if wall_exchange(y, w) is not None]
    assert walls == [((0, 1, 0), (2, 1, 1))]
    w = walls[0]
    z = wall_exchange(y, w)
    assert is_subdivision_of_orthant(z) and wall_exchange(z, ((1, 0, 0), (1, 2, 1))) is not None
    # every divisor changes sign on the exchanged curve
    for r in y.rays:
        a = wall_degree(y, w, {r: F(1)})
        b = wall_degree(z, ((1, 0, 0), (1, 2, 1)), {r: F(1)})
        assert (a > 0) == (b < 0) and (a == 0) == (b == 0)


# ---------------------------------------------------------------- comparison

def test_compare_examples():
    _, x, y, _, _ = blowup_quarter()
    assert compare_log_canonical(x, y) == A_GREATER
    assert compare_log_canonical(y, x) == B_GREATER
    assert compare_log_canonical(y, y) == EQUAL
    lat, x2, _ = model(cyclic((1, 1, 0), 2))
    y2 = stellar_subdivide(x2, lat.scaled((F(1, 2), F(1, 2), 0)))
    assert compare_log_canonical(x2, y2) == EQUAL


@given(small_groups(n=3, max_r=7), st.data())
def test_compare_antisymmetric(g, data):
    lat, x, _ = model(g)
    pts = [p for p in lat.fundamental_points() if any(p) and lat.is_primitive_scaled(p)]
    if not pts:
        return
    y = x
    for p in data.draw(st.lists(st.sampled_from(pts), max_size=3, unique=True)):
        if p not in y.rays:
            y = stellar_subdivide(y, p)
    r = compare_log_canonical(x, y)
    assert compare_log_canonical(y, x) == SWAP[r]
    assert compare_log_canonical(y, y) == EQUAL


# ---------------------------------------------------------------- ranks / regularity / JSON

def test_k0_rank_examples():
    _, x, y, _, _ = blowup_quarter()
    assert k0_rank(x) == 4 and k0_rank(y) == 3
    lat, x, _ = model(cyclic((1, 0, 0), 2))
    # the quotient stack has rank |G|, its coarse space C^3 has rank 1
    assert k0_rank(x) == 2
    assert k0_rank(x.without_boundary()) == 1
    # the orbit closure of the first boundary ray is a smooth C^2 with no stack structure
    assert face_model_rank(x, (lat.boundary_ray(0),)) == 1


def test_regular_and_json_roundtrip():
    _, _, y, _, _ = blowup_quarter()
    assert is_regular(y)
    back = fan_from_json(fan_to_json(y))
    assert back == y
    g = generate_group([(F(1, 2), 0, 0), (0, F(1, 3), F(2, 3))], 3)
    _, x, _ = model(g)
    assert fan_from_json(fan_to_json(x)) == x
