"""Antipodal selections and their packed binary record format.

An antipodal selection over a negation-closed vector set keeps exactly one
of each pair {x, -x}.  Every selection over the full minimal-vector set
has 98280 vectors and diameter exactly sqrt(96) (the antipodal pairs at
squared distance 128 are gone, and -16 inner products remain).

The packed file format stores one 6-byte record per vector: each
coordinate is mapped to a 2-bit symbol through its shape alphabet

    FOUR_FOUR:  -4 -> 0, 0 -> 1, 4 -> 2
    TWO_EIGHT:  -2 -> 0, 0 -> 1, 2 -> 2
    THREE_ONE:  -3 -> 0, -1 -> 1, 1 -> 2, 3 -> 3

and byte n of a record (n = 1..6) packs coordinates 4n-3..4n as
64*y(4n) + 16*y(4n-1) + 4*y(4n-2) + y(4n-3).  Records are grouped by
shape block: for a full selection 552 FOUR_FOUR records, then 48576
TWO_EIGHT, then 49152 THREE_ONE, 589680 bytes in total.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .golay import GolayCode
from .leech import Shape, VectorSet, lattice_membership

RECORD_BYTES = 6
FULL_SELECTION_SIZE = 98280
FULL_FILE_BYTES = FULL_SELECTION_SIZE * RECORD_BYTES       # 589680
FULL_BLOCK_COUNTS = {Shape.FOUR_FOUR: 552, Shape.TWO_EIGHT: 48576,
                     Shape.THREE_ONE: 49152}

#: per-shape symbol alphabet: coordinate value -> 2-bit symbol
ALPHABETS: dict[Shape, dict[int, int]] = {
    Shape.FOUR_FOUR: {-4: 0, 0: 1, 4: 2},
    Shape.TWO_EIGHT: {-2: 0, 0: 1, 2: 2},
    Shape.THREE_ONE: {-3: 0, -1: 1, 1: 2, 3: 3},
}


class BaseNotAntipodal(Exception):
    pass


class SizeMismatch(Exception):
    pass


class AlphabetViolation(Exception):
    pass


class NotInLattice(Exception):
    """A decoded vector is not a minimal vector of the working lattice.

    For a file produced against a differently-labeled Golay code this
    fires on the code-dependent shapes; re-encoding such a file requires
    the producer's exact coordinate arrangement.
    """


class AntipodalViolation(Exception):
    pass


@dataclass
class HSelection:
    """One-of-each-antipodal-pair selection over a base vector set.

    realized_ids are positions into the base set, in realized order:
    canonical (ascending) for freshly made selections, file order for
    decoded ones.
    """

    base: VectorSet
    realized_ids: np.ndarray
    label: str

    def __len__(self) -> int:
        return len(self.realized_ids)

    @property
    def realized(self) -> np.ndarray:
        return self.base.vectors[self.realized_ids]

    @property
    def shape_tags(self) -> np.ndarray:
        return self.base.shape_tags[self.realized_ids]

    @property
    def choice_bits(self) -> np.ndarray:
        """Per antipodal pair (ordered by the pair's first canonical
        member), True when the later canonical member was selected."""
        pairs = antipodal_pairs(self.base)
        selected = np.zeros(len(self.base), dtype=bool)
        selected[self.realized_ids] = True
        return np.array([selected[j] for _, j in pairs], dtype=bool)

    def as_vector_set(self) -> VectorSet:
        return self.base.subset(self.realized_ids, label=self.label)


def antipodal_pairs(base: VectorSet) -> list[tuple[int, int]]:
    """Pairs (i, j), i < j, with vectors[j] = -vectors[i], ordered by i.
    Raises BaseNotAntipodal when the set is not negation-closed."""
    index = base.index
    pairs = []
    seen = np.zeros(len(base), dtype=bool)
    for i in range(len(base)):
        if seen[i]:
            continue
        key = (-base.vectors[i]).tobytes()
        j = index.get(key)
        if j is None or j == i:
            raise BaseNotAntipodal(f"{base.label} lacks the negation of vector {i}")
        pairs.append((i, j))
        seen[i] = seen[j] = True
    return pairs


def make_hset(base: VectorSet, rule: str = "canonical",
              seed: int | None = None,
              bits: np.ndarray | None = None) -> HSelection:
    """Build a selection by rule:

    * "canonical": the lexicographically larger vector of each pair,
    * "seeded": each pair's bit drawn from a Mersenne Twister stream,
    * "explicit": caller-provided bits (per antipodal_pairs order).
    """
    pairs = antipodal_pairs(base)
    if rule == "canonical":
        chosen = [j if tuple(base.vectors[j]) > tuple(base.vectors[i]) else i
                  for i, j in pairs]
        label = f"H{base.dimension}:canonical"
    elif rule == "seeded":
        if seed is None:
            raise ValueError("seeded rule needs a seed")
        rng = random.Random(seed)
        chosen = [(j if rng.getrandbits(1) else i) for i, j in pairs]
        label = f"H{base.dimension}:seed={seed}"
    elif rule == "explicit":
        if bits is None or len(bits) != len(pairs):
            raise ValueError(f"explicit rule needs {len(pairs)} bits")
        chosen = [(j if b else i) for (i, j), b in zip(pairs, bits)]
        label = f"H{base.dimension}:explicit"
    else:
        raise ValueError(f"unknown rule {rule!r}")
    realized_ids = np.array(sorted(chosen), dtype=np.int64)
    return HSelection(base=base, realized_ids=realized_ids, label=label)


def _symbols_to_bytes(symbols: np.ndarray) -> np.ndarray:
    # symbols: (N, 24) uint8 -> (N, 6) uint8, low coordinate in low bits
    weights = np.array([1, 4, 16, 64], dtype=np.uint8)
    return (symbols.reshape(-1, 6, 4) * weights).sum(axis=2, dtype=np.uint16).astype(np.uint8)


def _bytes_to_symbols(data: np.ndarray) -> np.ndarray:
    recs = data.reshape(-1, 6).astype(np.uint16)
    out = np.empty((len(recs), 24), dtype=np.uint8)
    for t in range(4):
        out[:, t::4] = (recs >> (2 * t)) & 3
    return out


def encode_vector(v, shape: Shape) -> bytes:
    """One 6-byte record for a single vector of the given shape."""
    v = np.asarray(v, dtype=np.int16)
    alpha = ALPHABETS[shape]
    try:
        symbols = np.array([alpha[int(c)] for c in v], dtype=np.uint8)
    except KeyError as e:
        raise AlphabetViolation(
            f"entry {e.args[0]} not encodable for shape {shape.name}") from None
    return _symbols_to_bytes(symbols.reshape(1, 24)).tobytes()


def _encode_block(vectors: np.ndarray, shape: Shape) -> np.ndarray:
    alpha = ALPHABETS[shape]
    lut = np.full(9, 255, dtype=np.uint8)          # index by value + 4
    for value, symbol in alpha.items():
        lut[value + 4] = symbol
    shifted = vectors.astype(np.int16) + 4
    if shifted.min() < 0 or shifted.max() > 8:
        raise AlphabetViolation(f"entry out of range for shape {shape.name}")
    symbols = lut[shifted]
    if (symbols == 255).any():
        bad = vectors[(symbols == 255).any(axis=1)][0]
        raise AlphabetViolation(f"vector {bad.tolist()} not encodable as {shape.name}")
    return _symbols_to_bytes(symbols)


def encode_selection(h: HSelection) -> bytes:
    """Pack a selection into the record format, in realized order.

    The realized order must already group the shape blocks
    FOUR_FOUR / TWO_EIGHT / THREE_ONE (canonical selections do)."""
    tags = h.shape_tags
    if (np.diff(tags.astype(np.int16)) < 0).any():
        raise AlphabetViolation("realized order does not group shape blocks")
    chunks = []
    vectors = h.realized
    for shape in Shape:
        blk = vectors[tags == shape]
        if len(blk):
            chunks.append(_encode_block(blk, shape))
    return np.concatenate(chunks).tobytes()


def _decode_symbols(data: bytes) -> np.ndarray:
    arr = np.frombuffer(data, dtype=np.uint8)
    return _bytes_to_symbols(arr)


def decode_selection(data: bytes, M: VectorSet, code: GolayCode) -> HSelection:
    """Decode a full-selection file against the working lattice.

    Validates, in order: file size; per-block symbol alphabets; that every
    decoded vector is a minimal lattice vector of the matching shape
    (NotInLattice otherwise, which signals a coordinate-arrangement
    mismatch with the file's producer); and that the records jointly pick
    exactly one of each antipodal pair.  File order is preserved.
    """
    if len(data) != FULL_FILE_BYTES:
        raise SizeMismatch(f"file is {len(data)} bytes, expected {FULL_FILE_BYTES}")
    symbols = _decode_symbols(data)
    blocks = []
    start = 0
    for shape in Shape:
        count = FULL_BLOCK_COUNTS[shape]
        sym = symbols[start:start + count]
        start += count
        alpha = ALPHABETS[shape]
        values = np.full(4, 99, dtype=np.int16)
        for value, symbol in alpha.items():
            values[symbol] = value
        if shape is not Shape.THREE_ONE and (sym == 3).any():
            rec = start - count + int(np.argmax((sym == 3).any(axis=1)))
            raise AlphabetViolation(f"record {rec}: symbol 3 invalid for {shape.name}")
        blocks.append((shape, values[sym].astype(np.int8)))
    ids = []
    for shape, vectors in blocks:
        ok = lattice_membership(vectors, code)
        norms = (vectors.astype(np.int32) ** 2).sum(axis=1)
        ok &= norms == 32
        if not ok.all():
            rec = int(np.argmin(ok))
            raise NotInLattice(
                f"decoded {shape.name} record {rec} is not a minimal lattice "
                "vector; the file was produced with a different Golay "
                "coordinate arrangement")
        for v in vectors:
            i = M.index.get(v.tobytes())
            if i is None:
                raise NotInLattice(f"decoded vector {v.tolist()} not in {M.label}")
            if M.shape_tags[i] != shape:
                raise AlphabetViolation(
                    f"vector {v.tolist()} is not of block shape {shape.name}")
            ids.append(i)
    realized_ids = np.array(ids, dtype=np.int64)
    selected = np.zeros(len(M), dtype=bool)
    selected[realized_ids] = True
    if selected.sum() != FULL_SELECTION_SIZE:
        raise AntipodalViolation("duplicate records in file")
    for i in realized_ids:
        j = M.negation_of(int(i))
        if selected[j]:
            raise AntipodalViolation(
                f"both a vector and its negation present (ids {int(i)}, {j})")
    return HSelection(base=M, realized_ids=realized_ids, label="H24:file")


@dataclass
class HSetReport:
    label: str
    size: int
    pair_complete: bool
    shape_counts: dict[Shape, int]
    min_ip: int | None
    diameter_squared: int | None
    ip_support: list[int] | None = None
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def validate_hset(h: HSelection, full_pairwise: bool = False) -> HSetReport:
    """Geometry report for a selection.

    Pair completeness is checked exactly.  The minimum inner product is
    located by scanning realized vectors until a -16 pair is found (for a
    complete selection over minimal vectors no smaller value can occur);
    full_pairwise instead scans every pair and reports the whole inner-
    product support set.
    """
    failures = []
    base = h.base
    selected = np.zeros(len(base), dtype=bool)
    selected[h.realized_ids] = True
    if len(np.unique(h.realized_ids)) != len(h.realized_ids):
        failures.append("duplicate vectors in selection")
    pair_complete = True
    for i in h.realized_ids:
        j = base.negation_of(int(i))
        if selected[j]:
            pair_complete = False
            failures.append(f"antipodal violation: ids {int(i)} and {j} both selected")
            break
    if pair_complete and 2 * len(h.realized_ids) != len(base):
        pair_complete = False
        failures.append("selection does not cover every antipodal pair")
    vectors = h.realized
    shape_counts = {s: int((h.shape_tags == s).sum()) for s in Shape}
    min_ip: int | None = None
    support: list[int] | None = None
    if full_pairwise:
        Xf = vectors.astype(np.float32)
        values: set[int] = set()
        for s in range(0, len(Xf), 2048):
            ips = (Xf[s:s + 2048] @ Xf.T).astype(np.int32)
            n = ips.shape[0]
            ips[np.arange(n), np.arange(s, s + n)] = 32
            values.update(np.unique(ips).tolist())
        values.discard(32)
        support = sorted(values)
        min_ip = min(support) if support else None
    elif len(vectors) > 1:
        # scanning a handful of rows suffices: each minimal vector has
        # 4600 partners at |ip| = 16, so a -16 pair shows up immediately
        Xf = vectors.astype(np.float32)
        for row in range(min(len(vectors), 1024)):
            ips = (Xf @ Xf[row]).astype(np.int32)
            ips[row] = 32
            m = int(ips.min())
            if min_ip is None or m < min_ip:
                min_ip = m
            if min_ip <= -16:
                break
    if min_ip is not None and min_ip < -16:
        failures.append(f"inner product {min_ip} below -16 (antipodal pair present)")
    diameter_squared = None if min_ip is None else 2 * (32 - min_ip)
    return HSetReport(label=h.label, size=len(h.realized_ids),
                      pair_complete=pair_complete, shape_counts=shape_counts,
                      min_ip=min_ip, diameter_squared=diameter_squared,
                      ip_support=support, failures=failures)
