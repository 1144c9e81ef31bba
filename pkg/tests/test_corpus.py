from itertools import permutations

from toric_mckay.corpus import (
    cyclic_corpus,
    cyclic_weight_classes,
    full_corpus,
    sl_corpus,
    surface_corpus,
    two_generator_corpus,
)
from toric_mckay.groups import cyclic


def _canonical(g):
    # the weight set up to coordinate permutation, as a hashable key
    ws = [e.weights for e in g.elements]
    return min(tuple(sorted(tuple(w[i] for i in p) for w in ws)) for p in permutations(range(g.n)))


def test_weight_classes_small():
    # 1/2: (0,0,1), (0,1,1), (1,1,1) up to permutation; the trivial weights are dropped
    assert cyclic_weight_classes(2) == [(0, 0, 1), (0, 1, 1), (1, 1, 1)]


def test_weight_classes_match_bruteforce():
    for r in range(2, 9):
        brute = set()
        for a in range(r):
            for b in range(a, r):
                for c in range(b, r):
                    g = cyclic((a, b, c), r)
                    if g.order == r:
                        brute.add(_canonical(g))
        got = {_canonical(cyclic(w, r)) for w in cyclic_weight_classes(r)}
        assert got == brute


def test_corpus_sizes():
    assert len(cyclic_corpus()) == 3326
    assert len(two_generator_corpus()) == 1995
    assert len(sl_corpus()) == 182
    assert len(full_corpus()) == 3326 + 1995


def test_corpus_entries_are_distinct_groups():
    entries = two_generator_corpus(24)
    keys = [_canonical(e.group) for e in entries]
    assert len(keys) == len(set(keys))
    for e in entries:
        assert e.order <= 24
        # non-cyclic: no element has order |G|
        assert all(max(x.denominator for x in el.weights) < e.order for el in e.group.elements)


def test_sl_corpus_is_the_sl_part():
    sl = {(e.order, _canonical(e.group)) for e in sl_corpus(12)}
    full = {(e.order, _canonical(e.group)) for e in full_corpus(12, 12) if e.in_sl and e.order <= 12}
    assert sl == full


def test_surface_corpus():
    s = surface_corpus(10)
    assert all(e.group.n == 2 for e in s)
    assert any(e.group.elements == cyclic((1, 4), 15).elements for e in surface_corpus(15))
    assert all(e.label for e in s)


def test_labels_parse_back():
    from toric_mckay.groups import parse_group_spec
    for e in two_generator_corpus(12)[:20] + cyclic_corpus(6)[:20]:
        assert parse_group_spec(e.label).elements == e.group.elements
