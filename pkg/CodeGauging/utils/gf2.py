"""
Bit-packed GF(2) linear algebra for the CodeGauging System.

Vectors and matrix rows are packed little-endian into uint64 words: coordinate j
lives in word j // 64 at bit j % 64. Padding bits beyond the logical length are
always zero. Objects are immutable after construction and safe to share between
threads.
"""
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from utils.errors import DimensionMismatchError

logger = logging.getLogger(__name__)

WORD_BITS = 64
DEFAULT_CAP = 1 << 28
DEFAULT_BLOCK_BITS = 12

if hasattr(np, "bitwise_count"):
    def _popcount(words: np.ndarray) -> np.ndarray:
        return np.bitwise_count(words)
else:  # numpy < 2.0
    _BYTE_WEIGHTS = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)

    def _popcount(words: np.ndarray) -> np.ndarray:
        words = np.ascontiguousarray(words, dtype=np.uint64)
        per_byte = _BYTE_WEIGHTS[words.view(np.uint8)]
        return per_byte.reshape(words.shape + (8,)).sum(axis=-1)


def n_words(length: int) -> int:
    """Number of uint64 words needed for `length` coordinates."""
    return (length + WORD_BITS - 1) // WORD_BITS


def pack_bits(bits: np.ndarray, length: int) -> np.ndarray:
    """Pack a (..., length) 0/1 array into (..., n_words(length)) uint64 words."""
    bits = np.asarray(bits, dtype=np.uint8) & 1
    width = n_words(length)
    if width == 0:
        return np.zeros(bits.shape[:-1] + (0,), dtype=np.uint64)
    pad = width * WORD_BITS - length
    if pad:
        pad_shape = bits.shape[:-1] + (pad,)
        bits = np.concatenate([bits, np.zeros(pad_shape, dtype=np.uint8)], axis=-1)
    packed = np.packbits(bits, axis=-1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64)


def unpack_bits(words: np.ndarray, length: int) -> np.ndarray:
    """Inverse of pack_bits; returns a uint8 array of shape (..., length)."""
    if length == 0:
        return np.zeros(np.shape(words)[:-1] + (0,), dtype=np.uint8)
    words = np.ascontiguousarray(words, dtype="<u8")
    as_bytes = words.view(np.uint8)
    return np.unpackbits(as_bytes, axis=-1, count=length, bitorder="little")


def row_weights_of(words: np.ndarray) -> np.ndarray:
    """Hamming weight of each packed row."""
    return _popcount(words).sum(axis=-1, dtype=np.int64)


def _tail_mask(length: int) -> np.uint64:
    rem = length % WORD_BITS
    if rem == 0:
        return np.uint64(0xFFFFFFFFFFFFFFFF)
    return np.uint64((1 << rem) - 1)


class GF2Vector:
    """Immutable binary vector of fixed length."""

    __slots__ = ("_length", "_words")

    def __init__(self, length: int, words: Optional[np.ndarray] = None):
        if length < 0:
            raise DimensionMismatchError(f"negative vector length {length}")
        width = n_words(length)
        if words is None:
            packed = np.zeros(width, dtype=np.uint64)
        else:
            packed = np.array(words, dtype=np.uint64).reshape(-1)
            if packed.size != width:
                raise DimensionMismatchError(
                    f"expected {width} words for length {length}, got {packed.size}")
            if width:
                packed[-1] &= _tail_mask(length)
        packed.setflags(write=False)
        self._length = length
        self._words = packed

    @classmethod
    def zeros(cls, length: int) -> "GF2Vector":
        return cls(length)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "GF2Vector":
        arr = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits, dtype=np.uint8)
        return cls(arr.size, pack_bits(arr.reshape(-1), arr.size))

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> "GF2Vector":
        """Vector with ones on `support`; repeated indices cancel mod 2."""
        bits = np.zeros(length, dtype=np.uint8)
        for i in support:
            if not 0 <= i < length:
                raise DimensionMismatchError(f"index {i} out of range for length {length}")
            bits[i] ^= 1
        return cls(length, pack_bits(bits, length))

    @classmethod
    def unit(cls, length: int, index: int) -> "GF2Vector":
        return cls.from_support(length, [index])

    @classmethod
    def from_int(cls, length: int, value: int) -> "GF2Vector":
        return cls.from_support(length, [i for i in range(length) if (value >> i) & 1])

    @property
    def length(self) -> int:
        return self._length

    @property
    def words(self) -> np.ndarray:
        return self._words

    def __len__(self) -> int:
        return self._length

    def __getitem__(self, index: int) -> int:
        if not 0 <= index < self._length:
            raise IndexError(index)
        return int((self._words[index // WORD_BITS] >> np.uint64(index % WORD_BITS)) & np.uint64(1))

    def bits(self) -> np.ndarray:
        return unpack_bits(self._words, self._length)

    def support(self) -> List[int]:
        return [int(i) for i in np.flatnonzero(self.bits())]

    def weight(self) -> int:
        return int(_popcount(self._words).sum())

    def is_zero(self) -> bool:
        return not self._words.any()

    def _check(self, other: "GF2Vector") -> None:
        if self._length != other._length:
            raise DimensionMismatchError(f"vector lengths {self._length} and {other._length} differ")

    def __add__(self, other: "GF2Vector") -> "GF2Vector":
        self._check(other)
        return GF2Vector(self._length, self._words ^ other._words)

    xor = __add__

    def __and__(self, other: "GF2Vector") -> "GF2Vector":
        self._check(other)
        return GF2Vector(self._length, self._words & other._words)

    def dot(self, other: "GF2Vector") -> int:
        self._check(other)
        return int(_popcount(self._words & other._words).sum()) & 1

    def overlap(self, other: "GF2Vector") -> int:
        """Integer size of the common support."""
        self._check(other)
        return int(_popcount(self._words & other._words).sum())

    def concat(self, other: "GF2Vector") -> "GF2Vector":
        return GF2Vector.from_bits(np.concatenate([self.bits(), other.bits()]))

    def slice(self, start: int, stop: int) -> "GF2Vector":
        return GF2Vector.from_bits(self.bits()[start:stop])

    def to_int(self) -> int:
        value = 0
        for i in self.support():
            value |= 1 << i
        return value

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GF2Vector):
            return NotImplemented
        return self._length == other._length and bool(np.array_equal(self._words, other._words))

    def __hash__(self) -> int:
        return hash((self._length, self._words.tobytes()))

    def __repr__(self) -> str:
        return f"GF2Vector({self._length}, support={self.support()})"


class GF2Matrix:
    """Immutable binary matrix with row-major packed storage.

    A column adjacency index (row indices per column) is built lazily on first
    use and cached; it is derived from the packed rows and never mutated.
    """

    def __init__(self, rows: int, cols: int, words: Optional[np.ndarray] = None):
        if rows < 0 or cols < 0:
            raise DimensionMismatchError(f"negative shape ({rows}, {cols})")
        width = n_words(cols)
        if words is None:
            packed = np.zeros((rows, width), dtype=np.uint64)
        else:
            packed = np.array(words, dtype=np.uint64).reshape(rows, width)
            if width and rows:
                packed[:, -1] &= _tail_mask(cols)
        packed.setflags(write=False)
        self._rows = rows
        self._cols = cols
        self._words = packed
        self._column_index: Optional[Tuple[np.ndarray, ...]] = None

    # Construction

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "GF2Matrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, size: int) -> "GF2Matrix":
        return cls.from_dense(np.eye(size, dtype=np.uint8))

    @classmethod
    def from_dense(cls, dense) -> "GF2Matrix":
        arr = np.asarray(dense, dtype=np.int64)
        if arr.ndim != 2:
            raise DimensionMismatchError(f"expected a 2-d array, got shape {arr.shape}")
        rows, cols = arr.shape
        return cls(rows, cols, pack_bits((arr & 1).astype(np.uint8), cols))

    @classmethod
    def from_rows(cls, vectors: Sequence[GF2Vector], cols: Optional[int] = None) -> "GF2Matrix":
        if not vectors:
            return cls(0, cols or 0)
        width = vectors[0].length
        if cols is not None and cols != width:
            raise DimensionMismatchError(f"row length {width} does not match cols={cols}")
        for v in vectors:
            if v.length != width:
                raise DimensionMismatchError("rows have different lengths")
        return cls(len(vectors), width, np.stack([v.words for v in vectors]))

    @classmethod
    def from_columns(cls, vectors: Sequence[GF2Vector], rows: Optional[int] = None) -> "GF2Matrix":
        if not vectors:
            return cls(rows or 0, 0)
        return cls.from_rows(vectors, rows).transpose()

    @classmethod
    def from_sparse(cls, rows: int, cols: int, entries: Iterable[Tuple[int, int]]) -> "GF2Matrix":
        """Build from (row, col) coordinates; repeated coordinates cancel mod 2."""
        dense = np.zeros((rows, cols), dtype=np.uint8)
        for i, j in entries:
            if not (0 <= i < rows and 0 <= j < cols):
                raise DimensionMismatchError(f"entry ({i}, {j}) outside shape ({rows}, {cols})")
            dense[i, j] ^= 1
        return cls.from_dense(dense)

    # Accessors

    @property
    def rows(self) -> int:
        return self._rows

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> Tuple[int, int]:
        return (self._rows, self._cols)

    @property
    def words(self) -> np.ndarray:
        return self._words

    def to_dense(self) -> np.ndarray:
        if self._rows == 0:
            return np.zeros((0, self._cols), dtype=np.uint8)
        return unpack_bits(self._words, self._cols)

    def to_sparse(self) -> List[Tuple[int, int]]:
        rr, cc = np.nonzero(self.to_dense())
        return [(int(i), int(j)) for i, j in zip(rr, cc)]

    def row(self, i: int) -> GF2Vector:
        return GF2Vector(self._cols, self._words[i])

    def column(self, j: int) -> GF2Vector:
        return GF2Vector.from_support(self._rows, self.column_index()[j].tolist())

    def row_vectors(self) -> List[GF2Vector]:
        return [self.row(i) for i in range(self._rows)]

    def column_vectors(self) -> List[GF2Vector]:
        return [self.column(j) for j in range(self._cols)]

    def column_index(self) -> Tuple[np.ndarray, ...]:
        """Row indices of the nonzero entries of every column."""
        if self._column_index is None:
            dense = self.to_dense()
            self._column_index = tuple(np.flatnonzero(dense[:, j]) for j in range(self._cols))
        return self._column_index

    def row_support(self, i: int) -> List[int]:
        return self.row(i).support()

    def column_support(self, j: int) -> List[int]:
        return [int(i) for i in self.column_index()[j]]

    def row_weights(self) -> np.ndarray:
        if self._rows == 0:
            return np.zeros(0, dtype=np.int64)
        return row_weights_of(self._words)

    def column_weights(self) -> np.ndarray:
        return self.to_dense().sum(axis=0, dtype=np.int64)

    def is_zero(self) -> bool:
        return not self._words.any()

    # Algebra

    def transpose(self) -> "GF2Matrix":
        return GF2Matrix.from_dense(self.to_dense().T)

    @property
    def T(self) -> "GF2Matrix":
        return self.transpose()

    def matvec(self, v: GF2Vector) -> GF2Vector:
        if v.length != self._cols:
            raise DimensionMismatchError(
                f"matrix has {self._cols} columns but vector has length {v.length}")
        if self._rows == 0:
            return GF2Vector.zeros(0)
        parities = (row_weights_of(self._words & v.words) & 1).astype(np.uint8)
        return GF2Vector.from_bits(parities)

    def matmul(self, other: "GF2Matrix") -> "GF2Matrix":
        if self._cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.shape} by {other.shape}")
        product = self.to_dense().astype(np.int64) @ other.to_dense().astype(np.int64)
        return GF2Matrix.from_dense(product & 1)

    def __matmul__(self, other):
        if isinstance(other, GF2Vector):
            return self.matvec(other)
        return self.matmul(other)

    def __add__(self, other: "GF2Matrix") -> "GF2Matrix":
        if self.shape != other.shape:
            raise DimensionMismatchError(f"cannot add {self.shape} and {other.shape}")
        return GF2Matrix(self._rows, self._cols, self._words ^ other.words)

    def hstack(self, other: "GF2Matrix") -> "GF2Matrix":
        if self._rows != other.rows:
            raise DimensionMismatchError(f"cannot hstack {self.shape} and {other.shape}")
        return GF2Matrix.from_dense(np.hstack([self.to_dense(), other.to_dense()]))

    def vstack(self, other: "GF2Matrix") -> "GF2Matrix":
        if self._cols != other.cols:
            raise DimensionMismatchError(f"cannot vstack {self.shape} and {other.shape}")
        return GF2Matrix(self._rows + other.rows, self._cols,
                         np.concatenate([self._words, other.words], axis=0))

    def select_rows(self, indices: Sequence[int]) -> "GF2Matrix":
        idx = np.asarray(list(indices), dtype=np.int64)
        return GF2Matrix(idx.size, self._cols, self._words[idx] if idx.size else None)

    def select_columns(self, indices: Sequence[int]) -> "GF2Matrix":
        idx = np.asarray(list(indices), dtype=np.int64)
        return GF2Matrix.from_dense(self.to_dense()[:, idx].reshape(self._rows, idx.size))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GF2Matrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._words, other.words))

    def __hash__(self) -> int:
        return hash((self._rows, self._cols, self._words.tobytes()))

    def __repr__(self) -> str:
        return f"GF2Matrix({self._rows}x{self._cols}, nnz={int(self.row_weights().sum())})"


# Elimination

def _rref_words(words: np.ndarray, cols: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form on packed rows.

    The pivot for column c is the first remaining row with bit c set; every other
    row is cleared in that column. Returns the reduced rows (zero rows last) and
    the pivot columns in increasing order.
    """
    a = np.array(words, dtype=np.uint64, copy=True)
    n_rows = a.shape[0]
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == n_rows:
            break
        w = c // WORD_BITS
        mask = np.uint64(1 << (c % WORD_BITS))
        hits = np.flatnonzero(a[r:, w] & mask)
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        others = np.flatnonzero(a[:, w] & mask)
        others = others[others != r]
        if others.size:
            a[others] ^= a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: GF2Matrix) -> Tuple[GF2Matrix, List[int]]:
    """Reduced row echelon form of `m` and its pivot columns."""
    reduced, pivots = _rref_words(m.words, m.cols)
    return GF2Matrix(m.rows, m.cols, reduced), pivots


def rank(m: GF2Matrix) -> int:
    """Rank over GF(2)."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_rref_words(m.words, m.cols)[1])


def kernel_basis(m: GF2Matrix) -> List[GF2Vector]:
    """Basis of {v : m v = 0}, one vector per free column in increasing order."""
    cols = m.cols
    if m.rows == 0:
        return [GF2Vector.unit(cols, j) for j in range(cols)]
    reduced, pivots = _rref_words(m.words, cols)
    dense = unpack_bits(reduced[:len(pivots)], cols) if pivots else np.zeros((0, cols), dtype=np.uint8)
    pivot_set = set(pivots)
    basis = []
    for f in range(cols):
        if f in pivot_set:
            continue
        bits = np.zeros(cols, dtype=np.uint8)
        bits[f] = 1
        if pivots:
            bits[pivots] = dense[:, f]
        basis.append(GF2Vector.from_bits(bits))
    return basis


def row_space_basis(m: GF2Matrix) -> List[GF2Vector]:
    """Reduced (RREF) basis of the row space."""
    if m.rows == 0:
        return []
    reduced, pivots = _rref_words(m.words, m.cols)
    return [GF2Vector(m.cols, reduced[i]) for i in range(len(pivots))]


def column_space_basis(m: GF2Matrix) -> List[GF2Vector]:
    """Reduced basis of Im(m), the span of the columns."""
    return row_space_basis(m.transpose())


def left_kernel_basis(m: GF2Matrix) -> List[GF2Vector]:
    """Basis of {v : v^T m = 0}."""
    return kernel_basis(m.transpose())


def solve(m: GF2Matrix, b: GF2Vector) -> Optional[GF2Vector]:
    """Some x with m x = b, or None when b is outside Im(m).

    Free variables are set to zero, so the answer is deterministic.
    """
    if b.length != m.rows:
        raise DimensionMismatchError(f"right-hand side has length {b.length}, matrix has {m.rows} rows")
    cols = m.cols
    augmented = np.hstack([m.to_dense(), b.bits().reshape(-1, 1)])
    reduced, pivots = _rref_words(pack_bits(augmented, cols + 1), cols + 1)
    if pivots and pivots[-1] == cols:
        return None
    x_bits = np.zeros(cols, dtype=np.uint8)
    if pivots:
        dense = unpack_bits(reduced[:len(pivots)], cols + 1)
        x_bits[pivots] = dense[:, cols]
    x = GF2Vector.from_bits(x_bits)
    if m.matvec(x) != b:
        raise ArithmeticError("elimination produced a non-solution")
    return x


def image_membership(m: GF2Matrix, v: GF2Vector) -> bool:
    """True iff v lies in the column span of m."""
    if v.length != m.rows:
        raise DimensionMismatchError(f"vector has length {v.length}, matrix has {m.rows} rows")
    return solve(m, v) is not None


def reduce_modulo(v: GF2Vector, basis: Sequence[GF2Vector]) -> GF2Vector:
    """Canonical representative of v + span(basis).

    The basis is brought to RREF and each pivot coordinate of v is cleared, so two
    vectors in the same coset map to the same representative.
    """
    if not basis:
        return v
    reduced, pivots = _rref_words(GF2Matrix.from_rows(list(basis)).words, v.length)
    words = np.array(v.words, copy=True)
    for r, p in enumerate(pivots):
        if (words[p // WORD_BITS] >> np.uint64(p % WORD_BITS)) & np.uint64(1):
            words ^= reduced[r]
    return GF2Vector(v.length, words)


def is_independent(vectors: Sequence[GF2Vector]) -> bool:
    if not vectors:
        return True
    return rank(GF2Matrix.from_rows(list(vectors))) == len(vectors)


class IncrementalBasis:
    """Echelon basis grown one vector at a time.

    Each stored row has its pivot (lowest set bit) cleared from every row added
    after it, so reducing in insertion order decides span membership.
    """

    def __init__(self, length: int):
        self._length = length
        self._rows: List[np.ndarray] = []
        self._pivots: List[int] = []

    def __len__(self) -> int:
        return len(self._rows)

    def _reduce(self, words: np.ndarray) -> np.ndarray:
        words = np.array(words, dtype=np.uint64, copy=True)
        for row, p in zip(self._rows, self._pivots):
            if (words[p // WORD_BITS] >> np.uint64(p % WORD_BITS)) & np.uint64(1):
                words ^= row
        return words

    def contains(self, v: GF2Vector) -> bool:
        return not self._reduce(v.words).any()

    def add(self, v: GF2Vector) -> bool:
        """Add v if it is independent of the basis; report whether it was."""
        if v.length != self._length:
            raise DimensionMismatchError(f"expected length {self._length}, got {v.length}")
        reduced = self._reduce(v.words)
        nonzero = np.flatnonzero(reduced)
        if nonzero.size == 0:
            return False
        w = int(nonzero[0])
        word = int(reduced[w])
        self._pivots.append(w * WORD_BITS + ((word & -word).bit_length() - 1))
        self._rows.append(reduced)
        return True


# Coset enumeration

class SearchResult(NamedTuple):
    """Outcome of an exact minimum-weight search.

    `value`/`vector` are None when no answer is available; `reason` then says why:
    "budget" (enumeration cap exceeded), "k=0" (nothing to minimise over) or
    "vacuous" (empty search space).
    """
    value: Optional[int]
    vector: Optional[GF2Vector]
    reason: Optional[str] = None

    @property
    def found(self) -> bool:
        return self.value is not None


_Key = Tuple[int, Tuple[int, ...]]


def _span_table(rows: np.ndarray, width: int) -> np.ndarray:
    """All 2^len(rows) combinations; bit j of the table index selects rows[j]."""
    table = np.zeros((1, width), dtype=np.uint64)
    for row in rows:
        table = np.concatenate([table, table ^ row], axis=0)
    return table


def _best_in_block(block: np.ndarray, length: int, exclude_zero: bool,
                   best: Optional[_Key]) -> Optional[Tuple[_Key, np.ndarray]]:
    weights = row_weights_of(block)
    if exclude_zero:
        weights = np.where(weights == 0, np.iinfo(np.int64).max, weights)
    w_min = int(weights.min())
    if w_min == np.iinfo(np.int64).max:
        return None
    if best is not None and w_min > best[0]:
        return None
    candidates = np.flatnonzero(weights == w_min)
    bits = unpack_bits(block[candidates], length)
    keyed = [((w_min, tuple(int(i) for i in np.flatnonzero(row))), c)
             for row, c in zip(bits, candidates)]
    key, c = min(keyed, key=lambda item: item[0])
    if best is not None and key >= best:
        return None
    return key, block[c].copy()


def _gray_worker(table: np.ndarray, high: np.ndarray, offset: np.ndarray, length: int,
                 start: int, stop: int, exclude_zero: bool,
                 progress: Optional[tqdm]) -> Optional[Tuple[_Key, np.ndarray]]:
    cur = offset.copy()
    gray = start ^ (start >> 1)
    j = 0
    while gray >> j:
        if (gray >> j) & 1:
            cur ^= high[j]
        j += 1
    best: Optional[Tuple[_Key, np.ndarray]] = None
    for step in range(start, stop):
        found = _best_in_block(table ^ cur, length, exclude_zero, best[0] if best else None)
        if found is not None:
            best = found
        if progress is not None:
            progress.update(1)
        nxt = step + 1
        if nxt < stop:
            flip = (nxt & -nxt).bit_length() - 1
            cur ^= high[flip]
    return best


def enumerate_span_min(basis: Sequence[GF2Vector], offset: GF2Vector, exclude_zero: bool = False,
                       threads: int = 1, block_bits: int = DEFAULT_BLOCK_BITS,
                       show_progress: bool = False) -> Optional[Tuple[int, GF2Vector]]:
    """Minimum-weight element of offset + span(basis) by Gray-code enumeration.

    The low `block_bits` basis vectors form a precomputed table that is XORed
    against one running combination of the high vectors per Gray step. The high
    range is split into contiguous chunks for worker threads; the global minimum,
    keyed on (weight, sorted support), does not depend on the split.
    """
    length = offset.length
    width = n_words(length)
    rows = np.stack([v.words for v in basis]) if basis else np.zeros((0, width), dtype=np.uint64)
    low_count = min(len(basis), block_bits)
    table = _span_table(rows[:low_count], width)
    high = rows[low_count:]
    steps = 1 << len(high)
    threads = max(1, min(threads, steps))
    offset_words = np.array(offset.words, dtype=np.uint64)
    logger.debug(f"Span enumeration: {len(basis)} generators, {steps} blocks of {len(table)}, "
                 f"{threads} thread(s)")

    bounds = [(steps * t // threads, steps * (t + 1) // threads) for t in range(threads)]
    with tqdm(total=steps, disable=not show_progress, file=sys.stderr,
              desc="enumerating", leave=False) as progress:
        bar = progress if show_progress else None
        if threads == 1:
            results = [_gray_worker(table, high, offset_words, length, 0, steps, exclude_zero, bar)]
        else:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                futures = [pool.submit(_gray_worker, table, high, offset_words, length,
                                       lo, hi, exclude_zero, bar) for lo, hi in bounds]
                results = [f.result() for f in futures]
    found = [r for r in results if r is not None]
    if not found:
        return None
    key, words = min(found, key=lambda item: item[0])
    return key[0], GF2Vector(length, words)


def span_elements_up_to(basis: Sequence[GF2Vector], length: int, max_weight: int,
                        block_bits: int = DEFAULT_BLOCK_BITS) -> List[GF2Vector]:
    """All nonzero elements of span(basis) with weight <= max_weight.

    Uses the same table-plus-Gray-step walk as enumerate_span_min; the caller is
    responsible for keeping 2^len(basis) within budget.
    """
    width = n_words(length)
    rows = np.stack([v.words for v in basis]) if basis else np.zeros((0, width), dtype=np.uint64)
    low_count = min(len(basis), block_bits)
    table = _span_table(rows[:low_count], width)
    high = rows[low_count:]
    cur = np.zeros(width, dtype=np.uint64)
    found: List[GF2Vector] = []
    steps = 1 << len(high)
    for step in range(steps):
        block = table ^ cur
        weights = row_weights_of(block)
        for idx in np.flatnonzero((weights > 0) & (weights <= max_weight)):
            found.append(GF2Vector(length, block[idx]))
        nxt = step + 1
        if nxt < steps:
            cur ^= high[(nxt & -nxt).bit_length() - 1]
    return found


def _ambient_min(offset: GF2Vector, basis: Sequence[GF2Vector], exclude_zero: bool,
                 block_bits: int) -> Optional[Tuple[int, GF2Vector]]:
    """Scan all 2^n vectors, keeping those whose syndrome matches the offset's."""
    n = offset.length
    if n > 62:
        raise DimensionMismatchError(f"ambient enumeration over {n} coordinates is not supported")
    checks = kernel_basis(GF2Matrix.from_rows(list(basis), n)) if basis else \
        [GF2Vector.unit(n, j) for j in range(n)]
    parity = GF2Matrix.from_rows(checks, n).to_dense().astype(np.int64) if checks else \
        np.zeros((0, n), dtype=np.int64)
    target = (parity @ offset.bits().astype(np.int64)) & 1
    shifts = np.arange(n, dtype=np.uint64)
    chunk = 1 << max(block_bits, 10)
    best: Optional[Tuple[_Key, np.ndarray]] = None
    for start in range(0, 1 << n, chunk):
        ints = np.arange(start, min(start + chunk, 1 << n), dtype=np.uint64)
        bits = ((ints[:, None] >> shifts) & np.uint64(1)).astype(np.uint8)
        if parity.shape[0]:
            ok = np.all(((bits.astype(np.int64) @ parity.T) & 1) == target, axis=1)
            bits = bits[ok]
        if bits.shape[0] == 0:
            continue
        found = _best_in_block(pack_bits(bits, n), n, exclude_zero, best[0] if best else None)
        if found is not None:
            best = found
    if best is None:
        return None
    return best[0][0], GF2Vector(n, best[1])


def search_coset(offset: GF2Vector, span: GF2Matrix, cap: int = DEFAULT_CAP, threads: int = 1,
                 exclude_zero: bool = False, strategy: str = "auto",
                 block_bits: int = DEFAULT_BLOCK_BITS, show_progress: bool = False) -> SearchResult:
    """Exact minimum weight over {offset + span y}, reporting why when absent.

    Strategies: "span" enumerates the 2^rank coset, "ambient" scans all 2^n
    vectors, "auto" takes whichever budget is smaller. After basis reduction the
    coset budget never exceeds the ambient one, so "auto" resolves to "span".
    """
    if span.rows != offset.length:
        raise DimensionMismatchError(
            f"span has {span.rows} rows but offset has length {offset.length}")
    basis = column_space_basis(span) if span.cols else []
    r, n = len(basis), offset.length
    if strategy == "auto":
        strategy = "span" if r <= n else "ambient"
    if strategy not in ("span", "ambient"):
        raise ValueError(f"unknown enumeration strategy: {strategy}")
    budget_bits = r if strategy == "span" else n
    if (1 << budget_bits) > cap:
        logger.warning(f"Enumeration budget 2^{budget_bits} exceeds cap {cap}; result absent")
        return SearchResult(None, None, "budget")
    if strategy == "span":
        found = enumerate_span_min(basis, offset, exclude_zero, threads, block_bits, show_progress)
    else:
        found = _ambient_min(offset, basis, exclude_zero, block_bits)
    if found is None:
        return SearchResult(None, None, "vacuous")
    return SearchResult(found[0], found[1])


def min_weight_in_coset(offset: GF2Vector, span: GF2Matrix, cap: int = DEFAULT_CAP,
                        threads: int = 1, exclude_zero: bool = False,
                        strategy: str = "auto") -> Optional[Tuple[int, GF2Vector]]:
    """Minimum Hamming weight over offset + Im(span), or None past the cap."""
    result = search_coset(offset, span, cap, threads, exclude_zero, strategy)
    if not result.found:
        return None
    return result.value, result.vector
