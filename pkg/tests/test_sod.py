import random
from fractions import Fraction as F
from itertools import product
from math import ceil

import pytest
from hypothesis import given, strategies as st

from toric_mckay.sod import (
    GENERATION_LABEL,
    LocalCaseOneModel,
    StackLineBundle,
    ceiling_identity,
    divisor_hom_dims,
    face_hom_dims,
    hom_graded_dim,
    lambda_set,
    phi_image,
    random_case_one_model,
    verify_case1_sod,
)


def test_phi_examples():
    assert phi_image((1,), (5,), (2,)) == (F(3, 5),)
    assert phi_image((-1,), (3,), (2,)) == (F(-1, 3),)
    assert phi_image((4, -3), (6, 2), (6, 2)) == (F(4, 6), F(-3, 2))
    with pytest.raises(ValueError):
        phi_image((1,), (2,), (3,))


def test_lambda_examples():
    assert lambda_set(5, 2) == {1, 2, 4}
    assert lambda_set(2, 1) == {1}
    assert lambda_set(7, 7) == frozenset()
    with pytest.raises(ValueError):
        lambda_set(2, 3)


def _lambda_bruteforce(r1, s1):
    attained = {ceil(F(m * r1, s1)) for m in range(-3 * r1, 3 * r1 + 1)}
    return {k for k in range(r1) if k not in attained}


def test_lambda_cardinality_exhaustive():
    for r1 in range(1, 201):
        for s1 in range(1, r1 + 1):
            assert len(lambda_set(r1, s1, check=False)) == r1 - s1


@given(st.integers(1, 40), st.data())
def test_lambda_matches_bruteforce(r1, data):
    s1 = data.draw(st.integers(1, r1))
    assert lambda_set(r1, s1) == _lambda_bruteforce(r1, s1)


def test_ceiling_identity_exhaustive():
    for r in range(1, 13):
        for s in range(1, r + 1):
            for m in range(-50, 51):
                for m2 in range(-50, 51):
                    assert ceiling_identity(m, m2, r, s)


def test_hom_example():
    a = StackLineBundle((0,), (3,))
    b = StackLineBundle((1,), (3,))
    assert hom_graded_dim(a, b, cutoff=3) == [0, 1, 1, 1]
    assert hom_graded_dim(a, a, cutoff=3) == [1, 1, 1, 1]
    # two variables: degree d has d + 1 monomials
    c = StackLineBundle((0, 0), (2, 2))
    assert hom_graded_dim(c, c, cutoff=4) == [1, 2, 3, 4, 5]
    with pytest.raises(ValueError):
        hom_graded_dim(a, c)
    with pytest.raises(ValueError):
        StackLineBundle((1,), (0,))


def _hom_bruteforce(a, b, s, cutoff):
    lower = [ceil(F(y - x, o)) for x, y, o in zip(a, b, s)]
    span = cutoff - sum(lower)
    dims = [0] * (cutoff + 1)
    for u in product(*[range(lo, lo + span + 1) for lo in lower]):
        if 0 <= sum(u) <= cutoff:
            dims[sum(u)] += 1
    return dims


@given(st.lists(st.integers(-4, 4), min_size=2, max_size=2),
       st.lists(st.integers(-4, 4), min_size=2, max_size=2),
       st.lists(st.integers(1, 4), min_size=2, max_size=2))
def test_hom_matches_enumeration(a, b, s):
    got = hom_graded_dim(StackLineBundle(tuple(a), tuple(s)), StackLineBundle(tuple(b), tuple(s)), 6)
    assert got == _hom_bruteforce(a, b, s, 6)


@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3),
       st.lists(st.integers(-5, 5), min_size=3, max_size=3),
       st.lists(st.integers(-5, 5), min_size=3, max_size=3),
       st.lists(st.integers(1, 5), min_size=3, max_size=3))
def test_hom_translation_invariant(a, b, t, s):
    s = tuple(s)
    la, lb = StackLineBundle(tuple(a), s), StackLineBundle(tuple(b), s)
    assert hom_graded_dim(la, lb) == hom_graded_dim(la.twist(t), lb.twist(t))


def test_phi0_preserves_hom_on_random_models():
    rng = random.Random(7)
    for _ in range(100):
        model = random_case_one_model(rng)
        r = model.r
        m = tuple(rng.randint(-3, 3) for _ in range(model.n - 1))
        m2 = tuple(rng.randint(-3, 3) for _ in range(model.n - 1))
        assert face_hom_dims(m, m2, r[1:], 6) == divisor_hom_dims((0,) + m, (0,) + m2, r, 6)


def test_divisor_hom_needs_trivial_character():
    r = (3, 2)
    assert not any(divisor_hom_dims((0, 0), (1, 0), r, 5))
    assert any(divisor_hom_dims((0, 0), (3, 0), r, 5))
    assert any(divisor_hom_dims((0, 0), (1, 0), r, 5, shift=1))


# ---------------------------------------------------------------- case-1 certificates

def test_case_one_quasi_reflection():
    model = LocalCaseOneModel(2, (2, 1), (1, 1))
    cert = verify_case1_sod(model)
    assert cert.passed and cert.lam == [1]
    assert cert.ranks == {"source": 2, "target": 1, "face": 1, "lambda": 1}
    doc = cert.to_json()
    assert doc["generation"] == GENERATION_LABEL and doc["passed"]


def test_case_one_order_three():
    cert = verify_case1_sod(LocalCaseOneModel(2, (3, 1), (1, 1)))
    assert cert.passed and cert.lam == [1, 2]
    assert cert.ranks["source"] == 3 == 2 * cert.ranks["face"] + cert.ranks["target"]


def test_case_one_trivial_drop():
    cert = verify_case1_sod(LocalCaseOneModel(3, (2, 3, 1), (2, 3, 1)))
    assert cert.passed and cert.lam == []
    assert cert.ranks["source"] == cert.ranks["target"] == 6


def test_case_one_random_models():
    rng = random.Random(1)
    for _ in range(15):
        cert = verify_case1_sod(random_case_one_model(rng, 5), cutoff=5, radius=1)
        assert cert.passed, cert.to_json()["counterexamples"]


def test_model_validation():
    with pytest.raises(ValueError):
        LocalCaseOneModel(2, (1, 1), (2, 1))
    with pytest.raises(ValueError):
        LocalCaseOneModel(2, (2, 2), (1, 1))
    with pytest.raises(ValueError):
        LocalCaseOneModel(3, (2, 1), (1, 1))


def test_phik_order_is_one_directional():
    # Hom^p(Phi_k', Phi_k) vanishes for k < k'; the opposite direction does not,
    # which fixes the order of the Phi_k in the decomposition
    r = (3, 1)
    assert not any(divisor_hom_dims((2, 0), (1, 0), r, 4, shift=1))
    assert any(divisor_hom_dims((1, 0), (2, 0), r, 4, shift=1))
