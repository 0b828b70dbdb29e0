"""Exact linear algebra over GF(2).

Vectors and matrices carry sorted index supports as their interchange form.
Elimination packs rows into Python ints so a row update is a single XOR;
pivots are always taken at the lowest set column index, which makes every
routine here deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import DimensionMismatch, FormatError, IndexOutOfRange, NotSorted


def mask_from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def indices_from_mask(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def _check_support(support: Sequence[int], length: int, what: str) -> tuple[int, ...]:
    sup = tuple(int(i) for i in support)
    for a, b in zip(sup, sup[1:]):
        if a >= b:
            raise NotSorted(f"{what} indices must be strictly increasing", indices=list(sup))
    if sup and (sup[0] < 0 or sup[-1] >= length):
        raise IndexOutOfRange(f"{what} index out of range", indices=list(sup), length=length)
    return sup


@dataclass(frozen=True)
class BitVector:
    """A GF(2) vector: its length and the sorted support of its 1 entries."""

    length: int
    support: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "support", _check_support(self.support, self.length, "vector"))

    @classmethod
    def zero(cls, length: int) -> "BitVector":
        return cls(length, ())

    @classmethod
    def from_mask(cls, length: int, mask: int) -> "BitVector":
        return cls(length, indices_from_mask(mask))

    def to_mask(self) -> int:
        return mask_from_indices(self.support)

    @property
    def weight(self) -> int:
        return len(self.support)

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise DimensionMismatch("cannot add vectors of different lengths")
        return BitVector.from_mask(self.length, self.to_mask() ^ other.to_mask())

    def dot(self, other: "BitVector") -> int:
        if self.length != other.length:
            raise DimensionMismatch("cannot dot vectors of different lengths")
        return (self.to_mask() & other.to_mask()).bit_count() & 1


@dataclass(frozen=True)
class SparseBitMatrix:
    """A GF(2) matrix stored as one sorted column-index tuple per row."""

    rows: int
    cols: int
    row_supports: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        sups = tuple(self.row_supports)
        if len(sups) != self.rows:
            raise DimensionMismatch(
                f"expected {self.rows} row supports, got {len(sups)}"
            )
        sups = tuple(_check_support(s, self.cols, "row") for s in sups)
        object.__setattr__(self, "row_supports", sups)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int) -> "SparseBitMatrix":
        sups = tuple(tuple(sorted(set(int(i) for i in r))) for r in rows)
        return cls(len(sups), cols, sups)

    @classmethod
    def from_masks(cls, masks: Iterable[int], cols: int) -> "SparseBitMatrix":
        sups = tuple(indices_from_mask(m) for m in masks)
        return cls(len(sups), cols, sups)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "SparseBitMatrix":
        return cls(rows, cols, tuple(() for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "SparseBitMatrix":
        return cls(n, n, tuple((i,) for i in range(n)))

    def row_masks(self) -> list[int]:
        return [mask_from_indices(s) for s in self.row_supports]

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.row_supports[i])

    def iter_rows(self) -> Iterator[BitVector]:
        for s in self.row_supports:
            yield BitVector(self.cols, s)

    def transpose(self) -> "SparseBitMatrix":
        cols: list[list[int]] = [[] for _ in range(self.cols)]
        for i, sup in enumerate(self.row_supports):
            for j in sup:
                cols[j].append(i)
        return SparseBitMatrix(self.cols, self.rows, tuple(tuple(c) for c in cols))

    def column_masks(self) -> list[int]:
        masks = [0] * self.cols
        for i, sup in enumerate(self.row_supports):
            bit = 1 << i
            for j in sup:
                masks[j] |= bit
        return masks

    def row_weights(self) -> list[int]:
        return [len(s) for s in self.row_supports]

    def column_weights(self) -> list[int]:
        w = [0] * self.cols
        for sup in self.row_supports:
            for j in sup:
                w[j] += 1
        return w

    def max_row_weight(self) -> int:
        return max((len(s) for s in self.row_supports), default=0)

    def max_column_weight(self) -> int:
        return max(self.column_weights(), default=0)

    def apply(self, v: BitVector) -> BitVector:
        """Matrix times column vector."""
        if v.length != self.cols:
            raise DimensionMismatch(f"vector length {v.length} != cols {self.cols}")
        vm = v.to_mask()
        out = 0
        for i, sup in enumerate(self.row_supports):
            if (mask_from_indices(sup) & vm).bit_count() & 1:
                out |= 1 << i
        return BitVector.from_mask(self.rows, out)


class RowBasis:
    """Incremental GF(2) echelon basis keyed by lowest-set-bit pivots.

    Used for rank, membership, and residual queries without re-eliminating.
    """

    def __init__(self, masks: Iterable[int] = ()):
        self.pivots: dict[int, int] = {}
        for m in masks:
            self.add(m)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def residual(self, mask: int) -> int:
        while mask:
            c = (mask & -mask).bit_length() - 1
            p = self.pivots.get(c)
            if p is None:
                break
            mask ^= p
        return mask

    def contains(self, mask: int) -> bool:
        return self.residual(mask) == 0

    def add(self, mask: int) -> bool:
        """Insert a vector; returns True when it enlarged the span."""
        r = self.residual(mask)
        if r == 0:
            return False
        self.pivots[(r & -r).bit_length() - 1] = r
        return True


def rank(m: SparseBitMatrix) -> int:
    basis = RowBasis(m.row_masks())
    return basis.rank


def kernel_basis(m: SparseBitMatrix) -> list[BitVector]:
    """Basis of {x : m x = 0}, built column by column in index order."""
    col_masks = m.column_masks()
    pivots: dict[int, tuple[int, int]] = {}
    basis: list[BitVector] = []
    for j in range(m.cols):
        vec = col_masks[j]
        tag = 1 << j
        while vec:
            c = (vec & -vec).bit_length() - 1
            if c not in pivots:
                pivots[c] = (vec, tag)
                break
            pv, pt = pivots[c]
            vec ^= pv
            tag ^= pt
        else:
            basis.append(BitVector.from_mask(m.cols, tag))
    return basis


def solve(m: SparseBitMatrix, target: BitVector) -> Optional[BitVector]:
    """One x with m x = target, or None when the system is inconsistent.

    None is an answer, not an error: absence of a preimage is meaningful
    to callers deciding whether a chain is a boundary.
    """
    if target.length != m.rows:
        raise DimensionMismatch(f"target length {target.length} != rows {m.rows}")
    col_masks = m.column_masks()
    pivots: dict[int, tuple[int, int]] = {}
    for j in range(m.cols):
        vec = col_masks[j]
        tag = 1 << j
        while vec:
            c = (vec & -vec).bit_length() - 1
            if c not in pivots:
                pivots[c] = (vec, tag)
                break
            pv, pt = pivots[c]
            vec ^= pv
            tag ^= pt
    vec = target.to_mask()
    tag = 0
    while vec:
        c = (vec & -vec).bit_length() - 1
        if c not in pivots:
            return None
        pv, pt = pivots[c]
        vec ^= pv
        tag ^= pt
    return BitVector.from_mask(m.cols, tag)


def mat_mul(a: SparseBitMatrix, b: SparseBitMatrix) -> SparseBitMatrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"inner dimensions differ: {a.cols} vs {b.rows}")
    b_masks = b.row_masks()
    out = []
    for sup in a.row_supports:
        acc = 0
        for j in sup:
            acc ^= b_masks[j]
        out.append(acc)
    return SparseBitMatrix.from_masks(out, b.cols)


def is_zero(m: SparseBitMatrix) -> bool:
    return all(not s for s in m.row_supports)


def row_space_contains(m: SparseBitMatrix, v: BitVector) -> bool:
    if v.length != m.cols:
        raise DimensionMismatch(f"vector length {v.length} != cols {m.cols}")
    return RowBasis(m.row_masks()).contains(v.to_mask())


def row_space_equal(a: SparseBitMatrix, b: SparseBitMatrix) -> bool:
    if a.cols != b.cols:
        raise DimensionMismatch("row spaces live in different ambient dimensions")
    basis_a = RowBasis(a.row_masks())
    basis_b = RowBasis(b.row_masks())
    return all(basis_a.contains(m) for m in b.row_masks()) and all(
        basis_b.contains(m) for m in a.row_masks()
    )


# --- plain-text matrix format -------------------------------------------------
#
# First line: "<rows> <cols>".  Then one line per row with space-separated
# column indices; an empty line is a zero row.  Canonical files sort indices,
# and write(read(text)) == text for canonical input.


def write_matrix_text(m: SparseBitMatrix) -> str:
    lines = [f"{m.rows} {m.cols}"]
    for sup in m.row_supports:
        lines.append(" ".join(str(i) for i in sup))
    return "\n".join(lines) + "\n"


def read_matrix_text(text: str) -> SparseBitMatrix:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()  # the final newline, not a zero row
    if not lines or not lines[0].strip():
        raise FormatError("missing header line")
    head = lines[0].split()
    if len(head) != 2:
        raise FormatError(f"header must be 'rows cols', got {lines[0]!r}")
    try:
        rows, cols = int(head[0]), int(head[1])
    except ValueError as exc:
        raise FormatError(f"non-integer header: {lines[0]!r}") from exc
    if rows < 0 or cols < 0:
        raise FormatError("negative dimensions")
    body = lines[1:]
    if len(body) < rows:
        raise FormatError(f"expected {rows} row lines, found {len(body)}")
    for extra in body[rows:]:
        if extra.strip():
            raise FormatError("trailing non-empty lines after last row")
    sups = []
    for line in body[:rows]:
        parts = line.split()
        try:
            sups.append(tuple(int(p) for p in parts))
        except ValueError as exc:
            raise FormatError(f"non-integer index in row: {line!r}") from exc
    return SparseBitMatrix(rows, cols, tuple(sups))
