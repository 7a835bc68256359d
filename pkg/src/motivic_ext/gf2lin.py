"""Bit-exact linear algebra over the two-element field.

Every homology group computed by this package reduces to rank / kernel /
image / solve calls on matrices over F2.  Vectors are packed into Python
ints (bit ``j`` is coordinate ``j``); CPython ints are word-packed, so XOR
of two rows runs at C speed regardless of dimension.  Matrices keep their
entries as a sparse position set and are packed once, on entry to
elimination.

Column order is always supplied by the caller (the engines use a fixed
monomial order); nothing in this module reorders coordinates, and all
echelon forms are the canonical reduced ones, so results are reproducible
bit for bit.
"""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

_ONE = np.uint64(1)


def bits(v: int):
    """Yield the set bit positions of ``v`` in increasing order."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def from_bits(positions: Iterable[int]) -> int:
    vec = 0
    for p in positions:
        vec |= 1 << p
    return vec


class Echelon:
    """Accumulating echelon basis of a subspace of F2^n.

    ``add`` fully reduces the incoming vector against the current rows and
    installs a surviving residual as a new pivot row (pivot = lowest set
    bit).  Rows are not kept inter-reduced while accumulating - the
    ascending-bit reduction is self-correcting, since eliminating a pivot
    bit only ever introduces bits above it - and ``basis()`` inter-reduces
    once at the end, so the published basis is the canonical RREF.

    With ``tag_start`` set, callers may append bookkeeping bits above the
    ambient dimension (e.g. an identity block) to read off the combination
    that produced each residual; pivots are then only taken below
    ``tag_start``.
    """

    def __init__(self, tag_start: Optional[int] = None):
        self.rows: dict[int, int] = {}  # pivot bit -> row vector
        self.tag_start = tag_start

    def reduce(self, v: int) -> int:
        rows = self.rows
        tag_start = self.tag_start
        out = 0
        while v:
            low = v & -v
            p = low.bit_length() - 1
            if tag_start is not None and p >= tag_start:
                return out | v
            row = rows.get(p)
            if row is not None:
                v ^= row
            else:
                out |= low
                v ^= low
        return out

    def add(self, v: int) -> int:
        """Reduce ``v``; install the residual if nonzero.  Returns the residual."""
        v = self.reduce(v)
        if v:
            p = (v & -v).bit_length() - 1
            if self.tag_start is None or p < self.tag_start:
                self.rows[p] = v
        return v

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    @property
    def dim(self) -> int:
        return len(self.rows)

    def interreduce(self) -> None:
        """Bring the stored rows into canonical reduced echelon form."""
        for p in sorted(self.rows, reverse=True):
            row = self.rows.pop(p)
            self.rows[p] = self.reduce(row)

    def basis(self) -> list[int]:
        """Rows sorted by pivot, inter-reduced: the canonical RREF basis."""
        self.interreduce()
        return [self.rows[p] for p in sorted(self.rows)]


def rref(vectors: Iterable[int]) -> list[int]:
    """Canonical reduced echelon basis of the span of ``vectors``."""
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.basis()


# ------------------------------------------------------------------------
# Word-packed bulk elimination.  Vectors cross this boundary as Python ints
# (bit j = coordinate j) and are packed into little-endian uint64 words, so
# row operations run vectorized; all loops below are per pivot column, not
# per bit.

def pack_rows(vectors: list[int], n_bits: int) -> np.ndarray:
    nw = max(1, -(-n_bits // 64))
    out = np.zeros((len(vectors), nw), dtype=np.uint64)
    nbytes = nw * 8
    for i, v in enumerate(vectors):
        out[i] = np.frombuffer(v.to_bytes(nbytes, "little"), dtype=np.uint64)
    return out


def unpack_rows(arr: np.ndarray) -> list[int]:
    return [int.from_bytes(row.tobytes(), "little") for row in arr]


def gauss_inplace(arr: np.ndarray, n_pivot_cols: int) -> list[tuple[int, int]]:
    """Full Gauss-Jordan on packed rows, pivoting in the first n_pivot_cols.

    Returns the pivot list as (column, row) pairs; on return the first
    len(pivots) rows are the reduced echelon rows in pivot order and every
    later row is zero in all pivot-eligible columns.
    """
    n_rows = arr.shape[0]
    pivots: list[tuple[int, int]] = []
    rowptr = 0
    if n_rows == 0:
        return pivots
    for c in range(n_pivot_cols):
        if rowptr == n_rows:
            break
        wi, bi = c >> 6, np.uint64(c & 63)
        below = np.nonzero((arr[rowptr:, wi] >> bi) & _ONE)[0]
        if below.size == 0:
            continue
        pr = rowptr + below[0]
        if pr != rowptr:
            arr[[rowptr, pr]] = arr[[pr, rowptr]]
        col = (arr[:, wi] >> bi) & _ONE
        col[rowptr] = 0
        sel = np.nonzero(col)[0]
        if sel.size:
            arr[sel] ^= arr[rowptr]
        pivots.append((c, rowptr))
        rowptr += 1
    return pivots


def span_rref(vectors: list[int], n_bits: int) -> list[int]:
    """Canonical RREF basis via the packed eliminator (bulk path)."""
    arr = pack_rows(vectors, n_bits)
    pivots = gauss_inplace(arr, n_bits)
    return unpack_rows(arr[: len(pivots)])


def kernel_and_image(dvecs: list[int], m: int) -> tuple[list[int], list[int]]:
    """Kernel combinations and image RREF for the map sending basis vector j
    to ``dvecs[j]`` in F2^m.

    Columns are eliminated with identity tags appended; rows whose value
    part dies give the kernel (tag part), the others give the image.
    """
    n = len(dvecs)
    arr = pack_rows([v | (1 << (m + j)) for j, v in enumerate(dvecs)], m + n)
    pivots = gauss_inplace(arr, m)
    rank = len(pivots)
    low_words = max(1, -(-m // 64))
    image = []
    if rank:
        img = arr[:rank, :low_words].copy()
        if m & 63:
            img[:, -1] &= np.uint64((1 << (m & 63)) - 1)
        image = unpack_rows(img)
    kernel = [v >> m for v in unpack_rows(arr[rank:])]
    return kernel, image


def reduce_mod_rref(vectors: list[int], rref_rows: list[int], n_bits: int) -> list[int]:
    """Project each vector modulo the span of inter-reduced echelon rows."""
    if not vectors or not rref_rows:
        return list(vectors)
    arr = pack_rows(vectors, n_bits)
    rows = pack_rows(rref_rows, n_bits)
    for i, row in enumerate(rref_rows):
        c = (row & -row).bit_length() - 1
        wi, bi = c >> 6, np.uint64(c & 63)
        sel = np.nonzero((arr[:, wi] >> bi) & _ONE)[0]
        if sel.size:
            arr[sel] ^= rows[i]
    return unpack_rows(arr)


class SparseMatrixF2:
    """Immutable n_rows x n_cols matrix over F2.

    ``entries`` is the set of (row, col) positions holding 1; duplicates
    collapse (the constructor takes a set-like), out-of-range positions are
    rejected.  The matrix acts on column vectors: ``mul_vec`` takes a packed
    vector of length n_cols and returns one of length n_rows.
    """

    __slots__ = ("n_rows", "n_cols", "entries", "_rows", "_cols")

    def __init__(self, n_rows: int, n_cols: int, entries: Iterable[tuple[int, int]] = ()):
        if n_rows < 0 or n_cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        object.__setattr__(self, "n_rows", n_rows)
        object.__setattr__(self, "n_cols", n_cols)
        ents = frozenset(entries)
        for r, c in ents:
            if not (0 <= r < n_rows and 0 <= c < n_cols):
                raise ValueError(f"entry ({r}, {c}) out of bounds for {n_rows}x{n_cols}")
        object.__setattr__(self, "entries", ents)
        object.__setattr__(self, "_rows", None)
        object.__setattr__(self, "_cols", None)

    def __setattr__(self, name, value):
        if name in ("n_rows", "n_cols", "entries"):
            raise AttributeError("SparseMatrixF2 is immutable")
        object.__setattr__(self, name, value)

    @classmethod
    def zero(cls, n_rows: int, n_cols: int) -> "SparseMatrixF2":
        return cls(n_rows, n_cols)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrixF2":
        return cls(n, n, ((i, i) for i in range(n)))

    @classmethod
    def from_rows(cls, n_cols: int, rows: list[int]) -> "SparseMatrixF2":
        ents = [(r, c) for r, row in enumerate(rows) for c in bits(row)]
        return cls(len(rows), n_cols, ents)

    @classmethod
    def from_cols(cls, n_rows: int, cols: list[int]) -> "SparseMatrixF2":
        ents = [(r, c) for c, col in enumerate(cols) for r in bits(col)]
        return cls(n_rows, len(cols), ents)

    def rows(self) -> list[int]:
        """Packed rows (bit c of rows()[r] is the (r, c) entry)."""
        if self._rows is None:
            packed = [0] * self.n_rows
            for r, c in sorted(self.entries):
                packed[r] |= 1 << c
            self._rows = packed
        return self._rows

    def cols(self) -> list[int]:
        if self._cols is None:
            packed = [0] * self.n_cols
            for r, c in sorted(self.entries):
                packed[c] |= 1 << r
            self._cols = packed
        return self._cols

    def transpose(self) -> "SparseMatrixF2":
        return SparseMatrixF2(self.n_cols, self.n_rows, ((c, r) for r, c in self.entries))

    def mul_vec(self, v: int) -> int:
        out = 0
        for r, row in enumerate(self.rows()):
            if (row & v).bit_count() & 1:
                out |= 1 << r
        return out

    def __matmul__(self, other: "SparseMatrixF2") -> "SparseMatrixF2":
        if self.n_cols != other.n_rows:
            raise ValueError("dimension mismatch in matrix product")
        cols = [self.mul_vec(c) for c in other.cols()]
        return SparseMatrixF2.from_cols(self.n_rows, cols)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseMatrixF2)
            and self.n_rows == other.n_rows
            and self.n_cols == other.n_cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.n_rows, self.n_cols, self.entries))

    def __repr__(self):
        return f"SparseMatrixF2({self.n_rows}x{self.n_cols}, {len(self.entries)} entries)"


class SubspaceBasis:
    """Subspace of F2^ambient_dim held as a canonical reduced echelon basis."""

    __slots__ = ("ambient_dim", "vectors", "_rowmap")

    def __init__(self, ambient_dim: int, vectors: Iterable[int] = ()):
        vecs = rref(vectors)
        for v in vecs:
            if v.bit_length() > ambient_dim:
                raise ValueError("vector exceeds ambient dimension")
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "vectors", tuple(vecs))
        object.__setattr__(self, "_rowmap", None)

    def __setattr__(self, name, value):
        raise AttributeError("SubspaceBasis is immutable")

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def reduce(self, v: int) -> int:
        rowmap = self._rowmap
        if rowmap is None:
            rowmap = {(row & -row).bit_length() - 1: row for row in self.vectors}
            object.__setattr__(self, "_rowmap", rowmap)
        out = 0
        while v:
            low = v & -v
            row = rowmap.get(low.bit_length() - 1)
            if row is not None:
                v ^= row
            else:
                out |= low
                v ^= low
        return out

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def contains_subspace(self, other: "SubspaceBasis") -> bool:
        return all(self.contains(v) for v in other.vectors)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SubspaceBasis)
            and self.ambient_dim == other.ambient_dim
            and self.vectors == other.vectors
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.vectors))

    def __repr__(self):
        return f"SubspaceBasis(dim {self.dim} in F2^{self.ambient_dim})"


def rank(m: SparseMatrixF2) -> int:
    """Rank of ``m`` over F2."""
    ech = Echelon()
    for row in m.rows():
        ech.add(row)
    return ech.dim


def kernel_basis(m: SparseMatrixF2) -> SubspaceBasis:
    """Canonical basis of {v : m v = 0}; dimension n_cols - rank(m)."""
    ech = Echelon()
    for row in m.rows():
        ech.add(row)
    ech.interreduce()
    pivot_of = ech.rows  # pivot column -> RREF row
    # Free column c contributes the vector with x_c = 1 and the pivot
    # coordinates read off the reduced rows.
    kernel = {
        c: 1 << c for c in range(m.n_cols) if c not in pivot_of
    }
    for p, row in pivot_of.items():
        for c in bits(row):
            if c != p:
                kernel[c] |= 1 << p
    return SubspaceBasis(m.n_cols, kernel.values())


def image_basis(m: SparseMatrixF2) -> SubspaceBasis:
    """Canonical basis of the column span of ``m``."""
    return SubspaceBasis(m.n_rows, m.cols())


def solve(m: SparseMatrixF2, b: int) -> Optional[int]:
    """Some x with m x = b, or None if b is outside the column span.

    The returned solution is canonical: free coordinates are zero.  ``b`` is
    a packed vector of length n_rows; absence of a solution is a value, not
    an error.
    """
    if b.bit_length() > m.n_rows:
        raise ValueError("right-hand side exceeds row count")
    rhs_bit = 1 << m.n_cols
    ech = Echelon(tag_start=m.n_cols)
    for r, row in enumerate(m.rows()):
        res = ech.add(row | (rhs_bit if b >> r & 1 else 0))
        if res and res & (rhs_bit - 1) == 0:
            return None  # residual is the equation 0 = 1
    ech.interreduce()
    x = 0
    for p, row in ech.rows.items():
        if row & rhs_bit:
            x |= 1 << p
    return x


def quotient_representatives(sub: SubspaceBasis, space: SubspaceBasis) -> SubspaceBasis:
    """Canonical representatives of space/sub.

    Rejects ``sub`` not contained in ``space``.  Representatives are the
    space basis reduced modulo ``sub`` and re-echelonized, i.e. the unique
    reduced echelon basis of the complement with zeros in sub's pivot
    columns.
    """
    if sub.ambient_dim != space.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if not space.contains_subspace(sub):
        raise ValueError("sub is not contained in space")
    reduced = [sub.reduce(v) for v in space.vectors]
    return SubspaceBasis(space.ambient_dim, (v for v in reduced if v))
