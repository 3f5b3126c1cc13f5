"""Exact linear algebra over GF(2) on int-packed rows.

A row of width ``cols`` is a Python int; bit ``j`` holds column ``j``
(LSB = column 0). Python ints act as arbitrarily long word arrays, so row
additions are single XORs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, List, Sequence, Tuple

from .errors import GuardExceeded

VECTOR_GUARD = 24
SUBSPACE_GUARD = 1 << 16


@dataclass(frozen=True)
class BinaryMatrix:
    rows: Tuple[int, ...]
    cols: int

    def __post_init__(self):
        if self.cols < 0:
            raise ValueError("negative column count")
        limit = 1 << self.cols
        for row in self.rows:
            if not 0 <= row < limit:
                raise ValueError("row %r has bits beyond column %d" % (row, self.cols))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @classmethod
    def from_bits(cls, bits: Sequence[Sequence[int]], cols: int | None = None) -> "BinaryMatrix":
        if cols is None:
            cols = len(bits[0]) if bits else 0
        rows = []
        for b in bits:
            if len(b) != cols:
                raise ValueError("ragged bit matrix")
            rows.append(pack(b))
        return cls(tuple(rows), cols)

    def to_bits(self) -> List[List[int]]:
        return [unpack(row, self.cols) for row in self.rows]

    def transpose(self) -> "BinaryMatrix":
        out = [0] * self.cols
        for i, row in enumerate(self.rows):
            while row:
                low = row & -row
                out[low.bit_length() - 1] |= 1 << i
                row ^= low
        return BinaryMatrix(tuple(out), len(self.rows))

    def to_text(self) -> str:
        return "\n".join("".join(map(str, b)) for b in self.to_bits())

    @classmethod
    def from_text(cls, text: str) -> "BinaryMatrix":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        bits = []
        for ln in lines:
            if set(ln) - {"0", "1"}:
                raise ValueError("bad matrix line %r" % ln)
            bits.append([int(c) for c in ln])
        return cls.from_bits(bits)


def pack(bits: Sequence[int]) -> int:
    v = 0
    for j, b in enumerate(bits):
        if b & 1:
            v |= 1 << j
    return v


def unpack(v: int, cols: int) -> List[int]:
    return [(v >> j) & 1 for j in range(cols)]


def _low_bit(v: int) -> int:
    return (v & -v).bit_length() - 1


def reduce_rows(rows: Iterable[int]) -> List[int]:
    """Canonical RREF basis of the span of ``rows``, zero rows dropped.

    Pivots are the lowest set bit of each basis row; basis rows are sorted by
    pivot and every pivot column is clear in all other rows, which makes the
    result unique for a given row space.
    """
    basis: dict = {}
    for v in rows:
        for p, b in basis.items():
            if (v >> p) & 1:
                v ^= b
        if not v:
            continue
        p = _low_bit(v)
        for q in basis:
            if (basis[q] >> p) & 1:
                basis[q] ^= v
        basis[p] = v
    return [basis[p] for p in sorted(basis)]


def rref(M: BinaryMatrix) -> Tuple[BinaryMatrix, int]:
    """Reduced row echelon form (zero rows kept at the bottom) and rank."""
    basis = reduce_rows(M.rows)
    rank = len(basis)
    return BinaryMatrix(tuple(basis) + (0,) * (M.nrows - rank), M.cols), rank


def rank(M: BinaryMatrix | Sequence[int]) -> int:
    rows = M.rows if isinstance(M, BinaryMatrix) else M
    return len(reduce_rows(rows))


def row_space_equal(M1: BinaryMatrix, M2: BinaryMatrix) -> bool:
    if M1.cols != M2.cols:
        raise ValueError("column counts differ: %d vs %d" % (M1.cols, M2.cols))
    return reduce_rows(M1.rows) == reduce_rows(M2.rows)


def in_span(v: int, basis: Sequence[int]) -> bool:
    """Membership test against a canonical (``reduce_rows``) basis."""
    for b in basis:
        if (v >> _low_bit(b)) & 1:
            v ^= b
    return v == 0


def solve_combination(v: int, rows: Sequence[int]) -> int | None:
    """Return a mask ``m`` with XOR of ``rows[i]`` over set bits ``i`` equal to ``v``.

    None when ``v`` is outside the span.
    """
    basis: List[Tuple[int, int, int]] = []  # (pivot, row, combination mask)
    for i, row in enumerate(rows):
        mask = 1 << i
        for p, b, m in basis:
            if (row >> p) & 1:
                row ^= b
                mask ^= m
        if row:
            basis.append((_low_bit(row), row, mask))
    mask = 0
    for p, b, m in basis:
        if (v >> p) & 1:
            v ^= b
            mask ^= m
    return mask if v == 0 else None


@dataclass(frozen=True)
class BinarySubspace:
    """Subspace of GF(2)^ambient_dim held as its canonical RREF basis."""

    basis: Tuple[int, ...]
    ambient_dim: int

    def __post_init__(self):
        if tuple(reduce_rows(self.basis)) != self.basis:
            raise ValueError("basis is not in canonical reduced form")
        if any(b >> self.ambient_dim for b in self.basis):
            raise ValueError("basis vector outside the ambient space")

    @classmethod
    def span(cls, vectors: Iterable[int], ambient_dim: int) -> "BinarySubspace":
        return cls(tuple(reduce_rows(vectors)), ambient_dim)

    @classmethod
    def zero(cls, ambient_dim: int) -> "BinarySubspace":
        return cls((), ambient_dim)

    @classmethod
    def full(cls, ambient_dim: int) -> "BinarySubspace":
        return cls(tuple(1 << j for j in range(ambient_dim)), ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, v: int) -> bool:
        return in_span(v, self.basis)

    def issubspace(self, other: "BinarySubspace") -> bool:
        return all(b in other for b in self.basis)

    def matrix(self) -> BinaryMatrix:
        return BinaryMatrix(self.basis, self.ambient_dim)

    def __add__(self, other: "BinarySubspace") -> "BinarySubspace":
        _same_ambient(self, other)
        return BinarySubspace.span(self.basis + other.basis, self.ambient_dim)


def _same_ambient(U: BinarySubspace, V: BinarySubspace) -> None:
    if U.ambient_dim != V.ambient_dim:
        raise ValueError("ambient dimensions differ: %d vs %d" % (U.ambient_dim, V.ambient_dim))


def nullspace(M: BinaryMatrix) -> BinarySubspace:
    """Right kernel {x : M x = 0}."""
    basis = reduce_rows(M.rows)
    pivots = [_low_bit(b) for b in basis]
    pivot_set = set(pivots)
    kernel = []
    for f in range(M.cols):
        if f in pivot_set:
            continue
        x = 1 << f
        for p, b in zip(pivots, basis):
            if (b >> f) & 1:
                x |= 1 << p
        kernel.append(x)
    return BinarySubspace.span(kernel, M.cols)


def orthogonal_complement(U: BinarySubspace) -> BinarySubspace:
    """Complement under the standard dot product."""
    return nullspace(U.matrix())


def intersect(U: BinarySubspace, V: BinarySubspace) -> BinarySubspace:
    """U ∩ V via the left kernel of the stacked bases."""
    _same_ambient(U, V)
    a = U.dim
    stacked = BinaryMatrix(U.basis + V.basis, U.ambient_dim)
    kernel = nullspace(stacked.transpose())
    out = []
    for x in kernel.basis:
        w = 0
        for i in range(a):
            if (x >> i) & 1:
                w ^= U.basis[i]
        out.append(w)
    return BinarySubspace.span(out, U.ambient_dim)


def gray_span(rows: Sequence[int]) -> Iterator[int]:
    """All XOR combinations of ``rows`` in Gray-code order, starting at 0."""
    v = 0
    yield v
    for step in range(1, 1 << len(rows)):
        v ^= rows[_low_bit(step)]
        yield v


def enumerate_vectors(S: BinarySubspace, guard: int = VECTOR_GUARD) -> Iterator[int]:
    if S.dim > guard:
        raise GuardExceeded("refusing to enumerate 2^%d vectors (guard %d)" % (S.dim, guard))
    return gray_span(S.basis)


def gaussian_binomial(m: int, d: int) -> int:
    """Number of d-dimensional subspaces of GF(2)^m."""
    if d < 0 or d > m:
        return 0
    num = den = 1
    for i in range(d):
        num *= (1 << (m - i)) - 1
        den *= (1 << (i + 1)) - 1
    return num // den


def _rref_shapes(m: int, d: int) -> Iterator[List[int]]:
    """Yield every d x m RREF matrix of full rank over GF(2), rows as ints."""
    for pivots in combinations(range(m), d):
        pset = set(pivots)
        free = [(i, c) for i, p in enumerate(pivots) for c in range(p + 1, m) if c not in pset]
        for fill in range(1 << len(free)):
            rows = [1 << p for p in pivots]
            for t, (i, c) in enumerate(free):
                if (fill >> t) & 1:
                    rows[i] |= 1 << c
            yield rows


def enumerate_subspaces(S: BinarySubspace, d: int, guard: int = SUBSPACE_GUARD) -> Iterator[BinarySubspace]:
    """Each d-dimensional subspace of S exactly once, in canonical form."""
    m = S.dim
    if not 0 <= d <= m:
        raise ValueError("subspace dimension %d not in 0..%d" % (d, m))
    count = gaussian_binomial(m, d)
    if count > guard:
        raise GuardExceeded("%d subspaces of dimension %d exceed guard %d" % (count, d, guard))
    for coeffs in _rref_shapes(m, d):
        vecs = []
        for c in coeffs:
            w = 0
            for i in range(m):
                if (c >> i) & 1:
                    w ^= S.basis[i]
            vecs.append(w)
        yield BinarySubspace.span(vecs, S.ambient_dim)
