"""Minimal vectors of the Leech lattice: enumeration, membership, statistics.

The lattice is used in its unscaled convention (minimal nonzero norm
sqrt(32)).  Its 196560 minimal vectors come in three entry-multiset shapes:

  * FOUR_FOUR: two entries +-4, the rest 0            (1104 vectors)
  * TWO_EIGHT: eight entries +-2 on an octad, rest 0  (97152 vectors)
  * THREE_ONE: one entry +-3, all others +-1          (98304 vectors)

Vectors are stored as rows of an int8 array in a frozen canonical order:
the FOUR_FOUR block first, then TWO_EIGHT, then THREE_ONE, sorted
lexicographically by coordinates within each block.  Vertex ids of
exported graphs and coloring files index into this order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from itertools import combinations

import numpy as np

from .golay import GolayCode

SQUARED_NORM = 32

#: For any minimal vector x, the number of minimal vectors at each inner
#: product with x.  Counts sum to 196560 and the support is exactly
#: {0, +-8, +-16, +-32}.
FULL_SET_IP_COUNTS = {32: 1, 16: 4600, 8: 47104, 0: 93150,
                      -8: 47104, -16: 4600, -32: 1}


class Shape(IntEnum):
    """Entry-multiset shape of a minimal vector; values order the canonical
    blocks."""

    FOUR_FOUR = 0
    TWO_EIGHT = 1
    THREE_ONE = 2

    @property
    def label(self) -> str:
        return {"FOUR_FOUR": "(+-4,0)", "TWO_EIGHT": "(+-2,0)",
                "THREE_ONE": "(+-3,+-1)"}[self.name]


class VectorNotInSet(Exception):
    """A statistics operation was asked about a vector outside the set."""


@dataclass
class VectorSet:
    """An ordered set of norm-32 lattice vectors with provenance.

    ``dimension`` is the section label n (24 for the full set);
    ``label`` records how the set was obtained (e.g. "M24", "M13",
    "H24:canonical").
    """

    vectors: np.ndarray          # (N, 24) int8
    shape_tags: np.ndarray       # (N,) uint8, Shape values
    dimension: int
    label: str
    _index: dict[bytes, int] | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.vectors)

    @property
    def counts_by_shape(self) -> dict[Shape, int]:
        return {s: int((self.shape_tags == s).sum()) for s in Shape}

    @property
    def index(self) -> dict[bytes, int]:
        if self._index is None:
            self._index = {v.tobytes(): i for i, v in enumerate(self.vectors)}
        return self._index

    def position_of(self, vec) -> int:
        """Canonical position of a vector; raises VectorNotInSet."""
        key = np.asarray(vec, dtype=np.int8).tobytes()
        try:
            return self.index[key]
        except KeyError:
            raise VectorNotInSet(f"vector not in {self.label}") from None

    def negation_of(self, i: int) -> int:
        """Position of -vectors[i]; raises VectorNotInSet if absent."""
        return self.position_of(-self.vectors[i])

    def subset(self, ids: np.ndarray, label: str, dimension: int | None = None) -> "VectorSet":
        ids = np.asarray(ids)
        return VectorSet(
            vectors=self.vectors[ids],
            shape_tags=self.shape_tags[ids],
            dimension=self.dimension if dimension is None else dimension,
            label=label,
        )

    def float_vectors(self) -> np.ndarray:
        """float32 view used for exact bulk inner products (all values stay
        far below 2**24, so float32 matmul is exact)."""
        return self.vectors.astype(np.float32)


def _lexsorted(rows: np.ndarray) -> np.ndarray:
    order = np.lexsort(tuple(rows[:, k] for k in range(23, -1, -1)))
    return rows[order]


def _four_four_block() -> np.ndarray:
    out = []
    for i, j in combinations(range(24), 2):
        for si in (4, -4):
            for sj in (4, -4):
                v = np.zeros(24, dtype=np.int8)
                v[i] = si
                v[j] = sj
                out.append(v)
    return _lexsorted(np.array(out, dtype=np.int8))


def _two_eight_block(code: GolayCode) -> np.ndarray:
    # all sign patterns with an even number of -2 entries
    patterns = np.array(
        [[(-2 if (m >> t) & 1 else 2) for t in range(8)]
         for m in range(256) if bin(m).count("1") % 2 == 0],
        dtype=np.int8,
    )
    octad_words = [w for w in code.words if w.bit_count() == 8]
    out = np.zeros((len(octad_words) * 128, 24), dtype=np.int8)
    for oi, w in enumerate(octad_words):
        support = [j for j in range(24) if (w >> (23 - j)) & 1]
        out[oi * 128:(oi + 1) * 128][:, support] = patterns
    return _lexsorted(out)


def _three_one_block(code: GolayCode) -> np.ndarray:
    bits = code.bits.astype(np.int8)
    base = (1 - 2 * bits).astype(np.int8)
    out = np.empty((24 * len(bits), 24), dtype=np.int8)
    for p in range(24):
        blk = base.copy()
        blk[:, p] = 6 * bits[:, p] - 3
        out[p * len(bits):(p + 1) * len(bits)] = blk
    return _lexsorted(out)


def enumerate_minimal_vectors(code: GolayCode) -> VectorSet:
    """Enumerate all 196560 minimal vectors in canonical order.

    Deterministic; the three shape constructions are disjoint by entry
    multiset and duplicate-free within each shape, which is asserted.
    """
    blocks = [_four_four_block(), _two_eight_block(code), _three_one_block(code)]
    vectors = np.concatenate(blocks)
    tags = np.concatenate([np.full(len(b), s, dtype=np.uint8)
                           for b, s in zip(blocks, Shape)])
    assert len(vectors) == 196560
    # duplicate check on exact coordinate tuples
    assert len({v.tobytes() for v in vectors}) == len(vectors)
    norms = (vectors.astype(np.int32) ** 2).sum(axis=1)
    assert (norms == SQUARED_NORM).all()
    return VectorSet(vectors=vectors, shape_tags=tags, dimension=24, label="M24")


def in_leech_lattice(x, code: GolayCode) -> bool:
    """Whether an integer vector lies in the Leech lattice.

    Tests the congruence system: all coordinates share a parity a in
    {0,1}; the mod-2 word of (x - a)/2 lies in the code; and the mod-2
    carries c_i satisfy sum(c_i) = a (mod 2).  Malformed input returns
    False.
    """
    x = np.asarray(x)
    if x.shape != (24,) or not np.issubdtype(x.dtype, np.integer):
        return False
    return bool(lattice_membership(x.reshape(1, 24), code)[0])


def lattice_membership(X: np.ndarray, code: GolayCode) -> np.ndarray:
    """Vectorized lattice membership for rows of X (N x 24 ints)."""
    X = np.asarray(X, dtype=np.int64)
    a = X[:, 0] & 1
    ok = ((X & 1) == a[:, None]).all(axis=1)
    b = ((X - a[:, None]) >> 1) & 1
    powers = (1 << np.arange(23, -1, -1)).astype(np.int64)
    b_words = b @ powers
    sorted_words = code.sorted_words_array
    pos = np.clip(np.searchsorted(sorted_words, b_words), 0, len(sorted_words) - 1)
    ok &= sorted_words[pos] == b_words
    c = ((X - a[:, None] - 2 * b) >> 2) & 1
    ok &= (c.sum(axis=1) & 1) == a
    return ok


def inner_product(x, y) -> int:
    """Exact integer inner product of two 24-vectors."""
    return int(np.asarray(x, dtype=np.int64) @ np.asarray(y, dtype=np.int64))


def distance_squared(x, y) -> int:
    """Exact squared Euclidean distance; equals 2*(32 - <x,y>) on minimal
    vectors."""
    d = np.asarray(x, dtype=np.int64) - np.asarray(y, dtype=np.int64)
    return int(d @ d)


def inner_product_histogram(S: VectorSet, x) -> dict[int, int]:
    """Counts of <x, y> over all y in S, for a base vector x in S."""
    S.position_of(x)  # raises VectorNotInSet
    ips = (S.float_vectors() @ np.asarray(x, dtype=np.float32)).astype(np.int32)
    values, counts = np.unique(ips, return_counts=True)
    return dict(zip(values.tolist(), counts.tolist()))


def all_inner_product_histograms_agree(
    S: VectorSet, base_ids: np.ndarray, expected: dict[int, int], block: int = 256
) -> bool:
    """Whether every base vector in base_ids reproduces the expected
    histogram over S.  Blocked so large samples stay in memory bounds."""
    Xf = S.float_vectors()
    for s in range(0, len(base_ids), block):
        ids = base_ids[s:s + block]
        ips = (Xf @ Xf[ids].T).astype(np.int32)
        for col in range(ips.shape[1]):
            values, counts = np.unique(ips[:, col], return_counts=True)
            if dict(zip(values.tolist(), counts.tolist())) != expected:
                return False
    return True
