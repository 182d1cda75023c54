import numpy as np
import pytest

from leechpart import (FULL_SET_IP_COUNTS, Shape, distance_squared,
                       in_leech_lattice, inner_product,
                       inner_product_histogram, lattice_membership, octads)
from leechpart.leech import VectorNotInSet


def test_total_and_shape_counts(m24):
    assert len(m24) == 196560
    counts = m24.counts_by_shape
    assert counts[Shape.THREE_ONE] == 98304
    assert counts[Shape.TWO_EIGHT] == 97152
    assert counts[Shape.FOUR_FOUR] == 1104


def test_canonical_block_order(m24):
    tags = m24.shape_tags.astype(np.int16)
    assert (np.diff(tags) >= 0).all()
    # lexicographic within each block
    for s in Shape:
        block = m24.vectors[m24.shape_tags == s]
        view = [tuple(row) for row in block[:: max(1, len(block) // 500)]]
        assert view == sorted(view)


def test_shape_multisets(m24):
    rng = np.random.default_rng(3)
    for i in rng.choice(len(m24), 200, replace=False):
        v = m24.vectors[i]
        tag = Shape(m24.shape_tags[i])
        values = sorted(np.abs(v).tolist(), reverse=True)
        if tag is Shape.FOUR_FOUR:
            assert values[:2] == [4, 4] and values[2] == 0
        elif tag is Shape.TWO_EIGHT:
            assert values[:8] == [2] * 8 and values[8] == 0
        else:
            assert values[0] == 3 and values[1:] == [1] * 23


def test_direct_substitution_vector_present(m24):
    # the two +4 entries in the first two coordinates, zero signs
    v = np.zeros(24, dtype=np.int8)
    v[0] = v[1] = 4
    i = m24.position_of(v)
    assert Shape(m24.shape_tags[i]) is Shape.FOUR_FOUR


def test_two_eight_minus_parity(m24):
    block = m24.vectors[m24.shape_tags == Shape.TWO_EIGHT]
    assert ((block == -2).sum(axis=1) % 2 == 0).all()


def test_negation_closure(m24):
    keys = {v.tobytes() for v in m24.vectors}
    assert len(keys) == len(m24)  # duplicate-free
    neg = np.ascontiguousarray(-m24.vectors)
    assert {v.tobytes() for v in neg} == keys
    for i in range(0, len(m24), 499):
        j = m24.negation_of(i)
        assert (m24.vectors[j] == -m24.vectors[i]).all()


def test_membership_of_enumerated(m24, code):
    assert lattice_membership(m24.vectors, code).all()


def test_membership_rejects_mixed_parity(code):
    v = np.zeros(24, dtype=np.int64)
    v[0] = 1
    assert not in_leech_lattice(v, code)


def test_membership_accepts_worked_vector(code):
    v = np.zeros(24, dtype=np.int64)
    v[0] = v[1] = 4
    assert in_leech_lattice(v, code)


def test_membership_rejects_odd_sign_octads(code):
    # shape-like vectors with an odd number of -2 entries are not in the
    # lattice: sample 100000 of them
    rng = np.random.default_rng(11)
    ocs = octads(code)
    supports = np.array([[j for j in range(24) if (w >> (23 - j)) & 1]
                         for w in ocs])
    n = 100_000
    pick = rng.integers(0, len(ocs), n)
    signs = rng.integers(0, 2, (n, 8))
    # force odd minus count
    odd = signs.sum(axis=1) % 2 == 0
    signs[odd, 0] ^= 1
    X = np.zeros((n, 24), dtype=np.int64)
    rows = np.arange(n)[:, None]
    X[rows, supports[pick]] = 2 - 4 * signs
    assert not lattice_membership(X, code).any()


def test_membership_malformed_inputs(code):
    assert not in_leech_lattice([1, 2, 3], code)
    assert not in_leech_lattice(np.zeros((2, 24), dtype=int), code)
    assert not in_leech_lattice(np.full(24, 0.5), code)


def test_inner_product_basics(m24):
    x = m24.vectors[123]
    assert inner_product(x, x) == 32
    assert inner_product(x, -x) == -32


def test_inner_product_histogram_matches_law(m24):
    rng = np.random.default_rng(5)
    for i in rng.choice(len(m24), 5, replace=False):
        hist = inner_product_histogram(m24, m24.vectors[i])
        assert hist == FULL_SET_IP_COUNTS


def test_inner_product_histogram_rejects_outsiders(m24):
    with pytest.raises(VectorNotInSet):
        inner_product_histogram(m24, np.zeros(24, dtype=np.int8))


def test_distance_squared(m24):
    x = m24.vectors[0]
    assert distance_squared(x, x) == 0
    assert distance_squared(x, -x) == 128
    ips = (m24.float_vectors() @ x.astype(np.float32)).astype(np.int32)
    y = m24.vectors[int(np.flatnonzero(ips == -16)[0])]
    assert distance_squared(x, y) == 96
    # distance law: ||x - y||^2 = 2 * (32 - <x, y>)
    rng = np.random.default_rng(7)
    for i in rng.choice(len(m24), 50, replace=False):
        y = m24.vectors[i]
        assert distance_squared(x, y) == 2 * (32 - inner_product(x, y))
    assert set(FULL_SET_IP_COUNTS) == {-32, -16, -8, 0, 8, 16, 32}
