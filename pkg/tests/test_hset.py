import numpy as np
import pytest

from leechpart import (Shape, build_graph, decode_selection, encode_selection,
                       encode_vector, make_hset, validate_hset)
from leechpart.hset import (ALPHABETS, AlphabetViolation, AntipodalViolation,
                            BaseNotAntipodal, FULL_FILE_BYTES, HSelection,
                            NotInLattice, SizeMismatch, antipodal_pairs)


@pytest.fixture(scope="module")
def h24(m24):
    return make_hset(m24, "canonical")


def test_pairs_cover_base(sections):
    S = sections(8)
    pairs = antipodal_pairs(S)
    assert len(pairs) == 120
    flat = [i for p in pairs for i in p]
    assert sorted(flat) == list(range(240))


def test_pairs_reject_non_antipodal_base(m24):
    broken = m24.subset(np.arange(10), label="broken")
    with pytest.raises(BaseNotAntipodal):
        antipodal_pairs(broken)


def test_canonical_rule_selects_lex_larger(sections):
    S = sections(1)
    h = make_hset(S, "canonical")
    assert len(h) == 1
    v = h.realized[0]
    assert tuple(v) > tuple(-v)


def test_seeded_rule_deterministic(sections):
    S = sections(8)
    a = make_hset(S, "seeded", seed=5)
    b = make_hset(S, "seeded", seed=5)
    c = make_hset(S, "seeded", seed=6)
    assert (a.realized_ids == b.realized_ids).all()
    assert (a.realized_ids != c.realized_ids).any()
    assert validate_hset(a).ok


def test_explicit_rule_and_choice_bits(sections):
    S = sections(2)
    bits = np.array([True, False, True])
    h = make_hset(S, "explicit", bits=bits)
    assert len(h) == 3
    assert (h.choice_bits == bits).all()


def test_selection_sizes(sections, h24):
    assert len(h24) == 98280
    h22 = make_hset(sections(22), "canonical")
    assert len(h22) == 24948


def test_full_selection_diameter(h24):
    report = validate_hset(h24)
    assert report.ok
    assert report.pair_complete
    assert report.min_ip == -16
    assert report.diameter_squared == 96
    assert report.shape_counts == {Shape.FOUR_FOUR: 552,
                                   Shape.TWO_EIGHT: 48576,
                                   Shape.THREE_ONE: 49152}


def test_small_selection_full_pairwise_support(sections):
    # dimension 10 keeps the scan tiny; every allowed inner product shows
    # up and nothing below -16 appears
    h = make_hset(sections(10), "canonical")
    report = validate_hset(h, full_pairwise=True)
    assert report.ok
    assert report.min_ip == -16
    assert set(report.ip_support) <= {-16, -8, 0, 8, 16}
    quick = validate_hset(h)
    assert quick.min_ip == report.min_ip


def test_corrupt_selection_flagged(sections):
    S = sections(8)
    h = make_hset(S, "canonical")
    ids = h.realized_ids.copy()
    ids[0] = S.negation_of(int(ids[1]))  # now contains both of one pair
    corrupt = HSelection(base=S, realized_ids=ids, label="corrupt")
    report = validate_hset(corrupt)
    assert not report.ok
    assert not report.pair_complete
    assert any("antipodal" in f for f in report.failures)


def test_selection_graph_degree_bound(m24, h24):
    # each selected vector has 4600 partners at ip -16 in the full set,
    # one per antipodal pair of them at most, hence degree <= 2300
    H = h24.as_vector_set()
    G = build_graph(H)
    rng = np.random.default_rng(9)
    ids = rng.choice(len(H), 32, replace=False)
    degrees = G.degrees_of(ids)
    assert (degrees <= 2300).all()


def test_encode_vector_worked_example():
    v = np.zeros(24, dtype=np.int8)
    v[0] = v[1] = 4
    assert list(encode_vector(v, Shape.FOUR_FOUR)) == [90, 85, 85, 85, 85, 85]


def test_encode_vector_uniform_symbol():
    # all-zero word under the (+-2,0) alphabet: every symbol 1 -> bytes 85
    v = np.zeros(24, dtype=np.int8)
    assert list(encode_vector(v, Shape.TWO_EIGHT)) == [85] * 6


def test_encode_vector_three_one_low_bits(m24):
    ids = np.flatnonzero(m24.shape_tags == Shape.THREE_ONE)
    v = next(m24.vectors[i] for i in ids if m24.vectors[i][0] == -3)
    rec = encode_vector(v, Shape.THREE_ONE)
    assert rec[0] & 3 == ALPHABETS[Shape.THREE_ONE][-3] == 0


def test_encode_vector_alphabet_violation():
    v = np.zeros(24, dtype=np.int8)
    v[0] = 3
    with pytest.raises(AlphabetViolation):
        encode_vector(v, Shape.FOUR_FOUR)


def test_codec_round_trips(m24, code, h24):
    data = encode_selection(h24)
    assert len(data) == FULL_FILE_BYTES == 589_680
    decoded = decode_selection(data, m24, code)
    assert (decoded.realized_ids == h24.realized_ids).all()
    assert encode_selection(decoded) == data


def test_decode_rejects_wrong_size(m24, code):
    with pytest.raises(SizeMismatch):
        decode_selection(b"\x00" * 100, m24, code)


def test_decode_rejects_bad_symbol(m24, code, h24):
    data = bytearray(encode_selection(h24))
    data[0] |= 0x03  # symbol 3 in a (+-4,0) record
    with pytest.raises(AlphabetViolation):
        decode_selection(bytes(data), m24, code)


def test_decode_rejects_non_lattice_vector(m24, code, h24):
    data = bytearray(encode_selection(h24))
    # flip one +-2 entry of a TWO_EIGHT record to 0: breaks the shape
    offset = 552 * 6
    rec = data[offset:offset + 6]
    symbols = [(b >> (2 * t)) & 3 for b in rec for t in range(4)]
    pos = symbols.index(0)  # a -2 entry
    byte_i, shift = divmod(pos, 4)
    data[offset + byte_i] = (rec[byte_i] & ~(3 << (2 * shift))) | (1 << (2 * shift))
    with pytest.raises(NotInLattice):
        decode_selection(bytes(data), m24, code)


def test_decode_rejects_antipodal_violation(m24, code, h24):
    data = bytearray(encode_selection(h24))
    # overwrite record 1 with the negation of record 0's vector
    v0 = h24.realized[0]
    rec = encode_vector((-v0).astype(np.int8), Shape.FOUR_FOUR)
    data[6:12] = rec
    with pytest.raises(AntipodalViolation):
        decode_selection(bytes(data), m24, code)


def test_decoded_file_order_preserved(m24, code, h24):
    # swap two records of the same block: decode keeps file order, and
    # re-encoding reproduces the swapped file byte for byte
    data = bytearray(encode_selection(h24))
    data[0:6], data[6:12] = data[6:12], data[0:6]
    decoded = decode_selection(bytes(data), m24, code)
    assert decoded.realized_ids[0] == h24.realized_ids[1]
    assert decoded.realized_ids[1] == h24.realized_ids[0]
    assert encode_selection(decoded) == bytes(data)
