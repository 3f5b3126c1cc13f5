"""Additive codes over GF(2^r): the GF(2)-row span of a generator matrix.

A codeword of length n is stored packed as an int: symbol ``i`` occupies
bits ``i*r .. i*r + r - 1`` (its coefficients over 1, alpha, ...), so the
packed int of a generator row is exactly its binary image row.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

from .errors import GuardExceeded
from .field import FieldContext, format_element, make_field, parse_element
from .linalg import (
    BinaryMatrix,
    BinarySubspace,
    gray_span,
    intersect,
    nullspace,
    reduce_rows,
)

ENUM_GUARD = 20
BRUTE_FORCE_MAX_LENGTH = 8
DEFAULT_BUDGET = 10**9

CLASSES = ("identity", "additive", "zero-fixing", "all")
_CLASS_ALIASES = {"symbol-perms-fixing-zero": "zero-fixing"}

Word = Tuple[int, ...]


def pack_word(r: int, symbols: Sequence[int]) -> int:
    x = 0
    for i, s in enumerate(symbols):
        x |= s << (i * r)
    return x


def unpack_word(r: int, n: int, x: int) -> Word:
    mask = (1 << r) - 1
    return tuple((x >> (i * r)) & mask for i in range(n))


def _low_mask(r: int, n: int) -> int:
    m = 0
    for i in range(n):
        m |= 1 << (i * r)
    return m


def packed_weight(x: int, r: int, low_mask: int) -> int:
    """Number of nonzero r-bit symbols in a packed word."""
    folded = x
    for j in range(1, r):
        folded |= x >> j
    return (folded & low_mask).bit_count()


@dataclass(frozen=True, eq=False)
class AdditiveCode:
    """Additive code with F2-independent generator rows (so |C| = 2^k)."""

    field: FieldContext
    n: int
    gen: Tuple[Word, ...]

    def __post_init__(self):
        for row in self.gen:
            if len(row) != self.n:
                raise ValueError("generator row of length %d, expected %d" % (len(row), self.n))
            for s in row:
                self.field.check(s)
        if len(reduce_rows(self.packed)) != len(self.gen):
            raise ValueError("generator rows are not independent over GF(2)")

    @classmethod
    def span(cls, F: FieldContext, n: int, rows) -> "AdditiveCode":
        """Code spanned by possibly dependent rows (symbol tuples or packed ints)."""
        packed = [row if isinstance(row, int) else pack_word(F.r, row) for row in rows]
        basis = reduce_rows(packed)
        return cls(F, n, tuple(unpack_word(F.r, n, b) for b in basis))

    @classmethod
    def from_packed(cls, F: FieldContext, n: int, rows: Sequence[int]) -> "AdditiveCode":
        return cls.span(F, n, list(rows))

    @property
    def r(self) -> int:
        return self.field.r

    @property
    def k(self) -> int:
        """GF(2)-dimension; the code has 2^k words."""
        return len(self.gen)

    @cached_property
    def packed(self) -> Tuple[int, ...]:
        return tuple(pack_word(self.field.r, row) for row in self.gen)

    @cached_property
    def canonical(self) -> Tuple[int, ...]:
        return tuple(reduce_rows(self.packed))

    @cached_property
    def low_mask(self) -> int:
        return _low_mask(self.field.r, self.n)

    def subspace(self) -> BinarySubspace:
        return BinarySubspace(self.canonical, self.field.r * self.n)

    def __eq__(self, other):
        if not isinstance(other, AdditiveCode):
            return NotImplemented
        return self.field.r == other.field.r and self.n == other.n and self.canonical == other.canonical

    def __hash__(self):
        return hash((self.field.r, self.n, self.canonical))

    def __contains__(self, word) -> bool:
        x = word if isinstance(word, int) else pack_word(self.field.r, word)
        return self.subspace().__contains__(x)

    def weight(self, x: int) -> int:
        return packed_weight(x, self.field.r, self.low_mask)

    def codewords(self, guard: int = ENUM_GUARD) -> Iterator[int]:
        """All 2^k packed codewords (Gray order)."""
        if self.k > guard:
            raise GuardExceeded("code of dimension %d exceeds enumeration guard %d" % (self.k, guard))
        return gray_span(self.packed)

    def words(self, guard: int = ENUM_GUARD) -> List[Word]:
        return [unpack_word(self.field.r, self.n, x) for x in self.codewords(guard)]

    def column(self, i: int) -> Tuple[int, ...]:
        return tuple(row[i] for row in self.gen)


def binary_image(C: AdditiveCode) -> BinaryMatrix:
    """k x rn matrix; entry (i, j) of gen expands to bits i*r+0 .. i*r+r-1."""
    return BinaryMatrix(C.packed, C.field.r * C.n)


def symbol_weight(word: Sequence[int]) -> int:
    return sum(1 for s in word if s)


def weight_distribution(C: AdditiveCode, guard: int = ENUM_GUARD) -> Tuple[int, ...]:
    """Counts A_0..A_n of codewords by symbol weight."""
    counts = [0] * (C.n + 1)
    r, low = C.field.r, C.low_mask
    for x in C.codewords(guard):
        counts[packed_weight(x, r, low)] += 1
    return tuple(counts)


@lru_cache(maxsize=None)
def _trace_dual_table(r: int) -> Tuple[int, ...]:
    # bit l of table[s] is Tr(s * alpha^l): the trace form as a map to bit vectors
    F = make_field(r)
    table = []
    for s in F.elements():
        v = 0
        for l in range(F.r):
            if F.trace(F.mul(s, F.exp(l))):
                v |= 1 << l
        table.append(v)
    return tuple(table)


def _trace_transform(C: AdditiveCode, x: int) -> int:
    table = _trace_dual_table(C.field.r)
    r = C.field.r
    mask = (1 << r) - 1
    out = 0
    for i in range(C.n):
        out |= table[(x >> (i * r)) & mask] << (i * r)
    return out


def trace_inner(F: FieldContext, x: Sequence[int], y: Sequence[int]) -> int:
    """Tr(sum_i x_i y_i)."""
    acc = 0
    for a, b in zip(x, y):
        acc ^= F.mul(a, b)
    return F.trace(acc)


def dual(C: AdditiveCode) -> AdditiveCode:
    """Trace-Euclidean dual {y : Tr(sum x_i y_i) = 0 for all x in C}."""
    rows = tuple(_trace_transform(C, x) for x in C.packed)
    kernel = nullspace(BinaryMatrix(rows, C.field.r * C.n))
    return AdditiveCode.from_packed(C.field, C.n, kernel.basis)


def hull(C: AdditiveCode) -> AdditiveCode:
    H = intersect(C.subspace(), dual(C).subspace())
    return AdditiveCode.from_packed(C.field, C.n, H.basis)


def truncate_zero(C: AdditiveCode, i: int) -> AdditiveCode:
    """Set coordinate ``i`` (0-based) to zero in every codeword; length unchanged."""
    if not 0 <= i < C.n:
        raise IndexError("coordinate %d outside 0..%d" % (i, C.n - 1))
    r = C.field.r
    keep = ~(((1 << r) - 1) << (i * r))
    return AdditiveCode.from_packed(C.field, C.n, [x & keep for x in C.packed])


def zero_code(F: FieldContext, n: int) -> AdditiveCode:
    return AdditiveCode(F, n, ())


# --- witnesses -------------------------------------------------------------

def identity_symbol_map(F: FieldContext) -> Tuple[int, ...]:
    return tuple(F.elements())


def is_additive_map(table: Sequence[int]) -> bool:
    q = len(table)
    return all(table[a ^ b] == table[a] ^ table[b] for a in range(q) for b in range(a, q))


def linear_symbol_map(images: Sequence[int]) -> Tuple[int, ...]:
    """GF(2)-linear map sending alpha^j to ``images[j]``, as a lookup table."""
    r = len(images)
    table = []
    for x in range(1 << r):
        y = 0
        for j in range(r):
            if (x >> j) & 1:
                y ^= images[j]
        table.append(y)
    return tuple(table)


@dataclass(frozen=True)
class EquivalenceWitness:
    """Maps C to C' by: change of basis, then column permutation, then symbol maps.

    ``col_perm[j]`` is the new position of old column ``j``. ``sigma[t]`` is a
    lookup table on symbols applied at NEW coordinate ``t``; None means the
    identity. ``row_transform[a]`` is a bit mask: new row ``a`` is the XOR of
    the old rows ``l`` with bit ``l`` set.
    """

    col_perm: Tuple[int, ...]
    sigma: Tuple[Optional[Tuple[int, ...]], ...]
    row_transform: Tuple[int, ...]

    def __post_init__(self):
        n = len(self.col_perm)
        if sorted(self.col_perm) != list(range(n)):
            raise ValueError("col_perm is not a permutation of 0..%d" % (n - 1))
        if len(self.sigma) != n:
            raise ValueError("need one symbol map per coordinate")
        for table in self.sigma:
            if table is not None and sorted(table) != list(range(len(table))):
                raise ValueError("symbol map is not a permutation")
        k = len(self.row_transform)
        if any(m >> k for m in self.row_transform) or len(reduce_rows(self.row_transform)) != k:
            raise ValueError("row transform is not an invertible %dx%d matrix" % (k, k))

    @classmethod
    def identity(cls, n: int, k: int) -> "EquivalenceWitness":
        return cls(tuple(range(n)), (None,) * n, tuple(1 << a for a in range(k)))

    @property
    def is_additive(self) -> bool:
        return all(t is None or is_additive_map(t) for t in self.sigma)

    @property
    def symbols_trivial(self) -> bool:
        return all(t is None or list(t) == list(range(len(t))) for t in self.sigma)

    @property
    def fixes_zero(self) -> bool:
        return all(t is None or t[0] == 0 for t in self.sigma)

    def symbol_class(self) -> str:
        if self.symbols_trivial:
            return "identity"
        if self.is_additive:
            return "additive"
        if self.fixes_zero:
            return "zero-fixing"
        return "all"

    def map_word(self, word: Sequence[int]) -> Word:
        """Column permutation then symbol maps (row transform not involved)."""
        out = [0] * len(word)
        for j, s in enumerate(word):
            out[self.col_perm[j]] = s
        for t, table in enumerate(self.sigma):
            if table is not None:
                out[t] = table[out[t]]
        return tuple(out)

    def format(self) -> str:
        lines = ["col_perm " + " ".join(str(t) for t in self.col_perm)]
        for t, table in enumerate(self.sigma):
            if table is not None and list(table) != list(range(len(table))):
                lines.append("sigma %d %s" % (t, " ".join(format_element(s) for s in table)))
        k = len(self.row_transform)
        for m in self.row_transform:
            lines.append("row " + "".join(str((m >> l) & 1) for l in range(k)))
        return "\n".join(lines)


def apply_witness(C: AdditiveCode, W: EquivalenceWitness, guard: int = ENUM_GUARD) -> AdditiveCode:
    if len(W.col_perm) != C.n or len(W.row_transform) != C.k:
        raise ValueError("witness sized for n=%d, k=%d; code has n=%d, k=%d"
                         % (len(W.col_perm), len(W.row_transform), C.n, C.k))
    for table in W.sigma:
        if table is not None and len(table) != C.field.order:
            raise ValueError("symbol map over the wrong alphabet")
    rows = []
    for m in W.row_transform:
        acc = [0] * C.n
        for l in range(C.k):
            if (m >> l) & 1:
                acc = [a ^ b for a, b in zip(acc, C.gen[l])]
        rows.append(acc)
    if W.is_additive:
        return AdditiveCode.span(C.field, C.n, [W.map_word(row) for row in rows])
    base = AdditiveCode(C.field, C.n, tuple(tuple(row) for row in rows))
    images = [pack_word(C.field.r, W.map_word(w)) for w in base.words(guard)]
    out = AdditiveCode.from_packed(C.field, C.n, images)
    if out.k != C.k:
        raise ValueError("symbol maps send the code to a set that is not closed under addition")
    return out


# --- brute force and certificates ------------------------------------------

def _normalize_class(cls: str) -> str:
    cls = _CLASS_ALIASES.get(cls, cls)
    if cls not in CLASSES:
        raise ValueError("unknown equivalence class %r (choose from %s)" % (cls, ", ".join(CLASSES)))
    return cls


def symbol_maps(F: FieldContext, cls: str) -> List[Tuple[int, ...]]:
    """All per-coordinate symbol maps in the class, identity first."""
    cls = _normalize_class(cls)
    ident = identity_symbol_map(F)
    if cls == "identity":
        return [ident]
    if cls == "additive":
        maps = []
        for images in itertools.product(range(1, F.order), repeat=F.r):
            if len(reduce_rows(images)) == F.r:
                maps.append(linear_symbol_map(images))
    elif cls == "zero-fixing":
        maps = [(0,) + p for p in itertools.permutations(range(1, F.order))]
    else:
        maps = list(itertools.permutations(range(F.order)))
    maps.sort(key=lambda t: t != ident)
    return maps


def class_size(F: FieldContext, cls: str) -> int:
    cls = _normalize_class(cls)
    q = F.order
    if cls == "identity":
        return 1
    if cls == "additive":
        size = 1
        for i in range(F.r):
            size *= q - (1 << i)
        return size
    if cls == "zero-fixing":
        return math.factorial(q - 1)
    return math.factorial(q)


def brute_force_equivalence(C: AdditiveCode, D: AdditiveCode, cls: str = "zero-fixing",
                            budget: int = DEFAULT_BUDGET) -> Optional[EquivalenceWitness]:
    """Exhaustive search for a witness mapping C onto D within a symbol-map class.

    Coordinates of C are placed one at a time; a partial assignment survives
    only if the projected codeword multisets already agree, which prunes the
    search without losing any solution.
    """
    cls = _normalize_class(cls)
    if C.n != D.n or C.field.r != D.field.r or C.k != D.k:
        return None
    n, F = C.n, C.field
    if n > BRUTE_FORCE_MAX_LENGTH:
        raise GuardExceeded("brute-force equivalence limited to length %d" % BRUTE_FORCE_MAX_LENGTH)
    if cls != "identity" and F.r > 2:
        raise GuardExceeded("non-identity symbol classes limited to r <= 2")
    nominal = class_size(F, cls) ** n * math.factorial(n)
    if nominal > budget:
        raise GuardExceeded("search space %d exceeds budget %d" % (nominal, budget))

    maps = symbol_maps(F, cls)
    cw = C.words()
    dw = D.words()
    col_perm = [0] * n
    sig: List[Optional[Tuple[int, ...]]] = [None] * n
    used = [False] * n

    def search(j: int, cproj: List[Word], dcols: List[int]) -> bool:
        if j == n:
            return True
        for t in range(n):
            if used[t]:
                continue
            dproj = Counter(tuple(w[c] for c in dcols) + (w[t],) for w in dw)
            for table in maps:
                ext = [p + (table[w[j]],) for p, w in zip(cproj, cw)]
                if Counter(ext) != dproj:
                    continue
                used[t] = True
                col_perm[j] = t
                sig[t] = table
                if search(j + 1, ext, dcols + [t]):
                    return True
                used[t] = False
        return False

    if not search(0, [() for _ in cw], []):
        return None
    ident = identity_symbol_map(F)
    W = EquivalenceWitness(
        tuple(col_perm),
        tuple(None if s == ident else s for s in sig),
        tuple(1 << a for a in range(C.k)),
    )
    if apply_witness(C, W) != D:
        raise AssertionError("brute-force witness failed validation")
    return W


def validate_witness(C: AdditiveCode, D: AdditiveCode, W: EquivalenceWitness) -> bool:
    try:
        return apply_witness(C, W) == D
    except ValueError:
        return False


@dataclass(frozen=True)
class Certificate:
    verdict: str  # "inequivalent" or "inconclusive"
    reason: str = ""

    @property
    def inequivalent(self) -> bool:
        return self.verdict == "inequivalent"

    def __str__(self) -> str:
        return self.verdict + (": " + self.reason if self.reason else "")


def hull_weight_distribution(C: AdditiveCode, guard: int = ENUM_GUARD) -> Tuple[int, ...]:
    return weight_distribution(hull(C), guard)


def invariant_certificate(C: AdditiveCode, D: AdditiveCode, cls: str = "zero-fixing",
                          guard: int = ENUM_GUARD) -> Certificate:
    """Sound one-sided inequivalence test for the given symbol-map class.

    Weight distributions are compared unless symbol maps may move zero. Hull
    data is compared only where the hull is a class invariant: permutation
    equivalence, or binary codes (where zero-fixing maps are trivial).
    """
    cls = _normalize_class(cls)
    if C.n != D.n:
        return Certificate("inequivalent", "length %d vs %d" % (C.n, D.n))
    if C.field.r != D.field.r:
        return Certificate("inequivalent", "alphabet GF(2^%d) vs GF(2^%d)" % (C.field.r, D.field.r))
    if C.k != D.k:
        return Certificate("inequivalent", "size 2^%d vs 2^%d" % (C.k, D.k))
    if cls == "all":
        return Certificate("inconclusive")
    wc, wd = weight_distribution(C, guard), weight_distribution(D, guard)
    if wc != wd:
        return Certificate("inequivalent", "weight distributions %s vs %s" % (_fmt(wc), _fmt(wd)))
    if cls == "identity" or C.field.r == 1:
        hc, hd = hull(C), hull(D)
        if hc.k != hd.k:
            return Certificate("inequivalent", "hull dimension %d vs %d" % (hc.k, hd.k))
        a, b = weight_distribution(hc, guard), weight_distribution(hd, guard)
        if a != b:
            return Certificate("inequivalent", "hull weight distributions %s vs %s" % (_fmt(a), _fmt(b)))
    return Certificate("inconclusive")


def _fmt(dist: Sequence[int]) -> str:
    return "(" + ",".join(map(str, dist)) + ")"


# --- file format -------------------------------------------------------------

def format_code(C: AdditiveCode) -> str:
    lines = ["%d %d %d" % (C.field.r, C.n, C.k)]
    lines.extend(" ".join(format_element(s) for s in row) for row in C.gen)
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> AdditiveCode:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty code file")
    try:
        r, n, k = (int(t) for t in lines[0].split())
    except ValueError:
        raise ValueError("malformed code header %r" % lines[0]) from None
    F = make_field(r)
    body = lines[1:]
    if len(body) != k:
        raise ValueError("header declares %d rows, found %d" % (k, len(body)))
    gen = []
    for ln in body:
        parts = ln.split()
        if len(parts) != n:
            raise ValueError("row %r does not have %d symbols" % (ln, n))
        gen.append(tuple(parse_element(F, p) for p in parts))
    return AdditiveCode(F, n, tuple(gen))
