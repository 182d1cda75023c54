"""Extended binary Golay code: construction, validation, octad listing.

Codewords are 24-bit Python ints.  Coordinates are 1-based (1..24) and
coordinate j is stored in bit (24 - j), so coordinate 1 is the most
significant bit and plain integer ordering equals lexicographic ordering
of the bit strings read coordinate 1 first.

The generator is a fixed, known-good [24,12,8] matrix: the classical
bordered-circulant construction (first row the complement of a point,
remaining rows built from the quadratic-residue pattern mod 11), with the
columns arranged so that the laminated-section machinery works on plain
coordinate conditions:

  * coordinates {17..24} support an octad,
  * coordinates {13..16} form an affine plane of the complementary 16-set
    (equivalently: exactly 3 octads live inside coordinates {1..12}),
  * coordinates {9..12} are a tetrad of the sextet induced by those 3
    octads, which forces {1..8} to support an octad (the E8 section).

The arrangement is frozen in GENERATOR_ROWS; tests re-derive it from the
raw bordered-circulant matrix and the constraints above.  Correctness of
the code itself is established by the weight enumerator, which is
invariant under any column arrangement.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

#: Raw bordered-circulant generator, systematic [I | B] form, one row per
#: line, coordinate 1 first.  Rows 2..12 of B are the cyclic shifts of the
#: quadratic-residue pattern 10100011101 behind a constant 1 column.
RAW_GENERATOR_ROWS = (
    "100000000000011111111111",
    "010000000000110100011101",
    "001000000000101000111011",
    "000100000000110001110110",
    "000010000000100011101101",
    "000001000000100111011010",
    "000000100000101110110100",
    "000000010000111101101000",
    "000000001000111011010001",
    "000000000100110110100011",
    "000000000010101101000111",
    "000000000001111010001110",
)

#: Column arrangement applied to RAW_GENERATOR_ROWS: coordinate j of the
#: working code is raw column LAMINATED_FRAME[j-1].  Derived once (and
#: re-derived by the test suite) as: positions 20..24 keep raw columns
#: 20..24, positions 17..19 complete the unique octad through them,
#: positions 13..16 take the first affine plane of the complementary
#: 16-set, positions 9..12 one tetrad of the surviving sextet, and the
#: remaining columns fill 8..1; each group in descending raw order.
LAMINATED_FRAME = (1, 3, 5, 6, 7, 11, 13, 14, 2, 4, 10, 15,
                   8, 16, 17, 19, 9, 12, 18, 20, 21, 22, 23, 24)

EXPECTED_WEIGHT_HISTOGRAM = {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}


class GolayConstructionError(Exception):
    """The candidate generator did not produce a valid Golay code."""


def coordinate_bit(j: int) -> int:
    """Bit mask of 1-based coordinate j."""
    return 1 << (24 - j)


def weight(word: int) -> int:
    """Number of 1 coordinates of a codeword."""
    return word.bit_count()


def word_to_bits(word: int) -> np.ndarray:
    """Codeword as an array of 24 bits in coordinate order 1..24."""
    return np.array([(word >> (24 - j)) & 1 for j in range(1, 25)], dtype=np.uint8)


def word_to_str(word: int) -> str:
    """24-character '0'/'1' string, coordinate 1 first."""
    return format(word, "024b")


def parse_word(text: str) -> int:
    """Inverse of word_to_str."""
    if len(text) != 24 or set(text) - {"0", "1"}:
        raise ValueError(f"not a 24-bit word: {text!r}")
    return int(text, 2)


@dataclass(frozen=True)
class GolayCode:
    """The 4096-word extended binary Golay code, fully materialized."""

    generator: tuple[int, ...]
    words: tuple[int, ...]                    # sorted ascending = lexicographic
    weight_histogram: dict[int, int]
    word_set: frozenset[int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: int) -> bool:
        return word in self.word_set

    @property
    def bits(self) -> np.ndarray:
        """All codewords as a 4096 x 24 bit matrix in word order."""
        return _bits_matrix(self.words)

    @property
    def sorted_words_array(self) -> np.ndarray:
        """Words as a sorted int64 array, for vectorized membership tests."""
        return _words_array(self.words)


@lru_cache(maxsize=4)
def _bits_matrix(words: tuple[int, ...]) -> np.ndarray:
    arr = np.array(words, dtype=np.int64)
    shifts = np.arange(23, -1, -1, dtype=np.int64)
    return ((arr[:, None] >> shifts[None, :]) & 1).astype(np.uint8)


@lru_cache(maxsize=4)
def _words_array(words: tuple[int, ...]) -> np.ndarray:
    return np.array(words, dtype=np.int64)


def _parse_rows(rows: tuple[str, ...]) -> list[int]:
    return [parse_word(r) for r in rows]


def _rearranged_rows() -> list[int]:
    raw = _parse_rows(RAW_GENERATOR_ROWS)
    out = []
    for row in raw:
        word = 0
        for j, col in enumerate(LAMINATED_FRAME, start=1):
            if row & coordinate_bit(col):
                word |= coordinate_bit(j)
        out.append(word)
    return out


def _span(rows: list[int]) -> list[int]:
    words = [0] * (1 << len(rows))
    for m in range(1, len(words)):
        low = (m & -m).bit_length() - 1
        words[m] = words[m ^ (1 << low)] ^ rows[low]
    return words


def build_from_generator(rows: list[int]) -> GolayCode:
    """Span 12 generator rows and validate the result by weight enumerator.

    Raises GolayConstructionError when the span does not reproduce
    {0:1, 8:759, 12:2576, 16:759, 24:1} (a broken generator table).
    """
    words = _span(rows)
    hist: dict[int, int] = {}
    for w in words:
        hist[w.bit_count()] = hist.get(w.bit_count(), 0) + 1
    if hist != EXPECTED_WEIGHT_HISTOGRAM:
        raise GolayConstructionError(
            f"weight histogram {hist} != {EXPECTED_WEIGHT_HISTOGRAM}"
        )
    words.sort()
    return GolayCode(
        generator=tuple(rows),
        words=tuple(words),
        weight_histogram=hist,
        word_set=frozenset(words),
    )


@lru_cache(maxsize=1)
def build_golay() -> GolayCode:
    """Construct and validate the working Golay code.

    Deterministic: the same code on every call."""
    return build_from_generator(_rearranged_rows())


def octads(code: GolayCode) -> list[int]:
    """The 759 weight-8 codewords in lexicographic order (coordinate 1 most
    significant)."""
    return [w for w in code.words if w.bit_count() == 8]
