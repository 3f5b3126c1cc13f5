"""Arithmetic in GF(2^r) with log/antilog tables.

Elements are plain ints in ``[0, 2^r)``; bit ``j`` is the coefficient of
``alpha^j`` where ``alpha`` is a root of the field's primitive polynomial.
The primitive element used throughout the package is ``e = alpha`` (the int 2,
or 1 when r = 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Tuple

MAX_DEGREE = 16

# One primitive polynomial per degree; bit i is the coefficient of x^i.
PRIMITIVE_POLYS = {
    1: 0b11,                    # x + 1
    2: 0b111,                   # x^2 + x + 1
    3: 0b1011,                  # x^3 + x + 1
    4: 0b10011,                 # x^4 + x + 1
    5: 0b100101,                # x^5 + x^2 + 1
    6: 0b1000011,               # x^6 + x + 1
    7: 0b10001001,              # x^7 + x^3 + 1
    8: 0x11D,                   # x^8 + x^4 + x^3 + x^2 + 1
    9: 0x211,                   # x^9 + x^4 + 1
    10: 0x409,                  # x^10 + x^3 + 1
    11: 0x805,                  # x^11 + x^2 + 1
    12: 0x1053,                 # x^12 + x^6 + x^4 + x + 1
    13: 0x201B,                 # x^13 + x^4 + x^3 + x + 1
    14: 0x4443,                 # x^14 + x^10 + x^6 + x + 1
    15: 0x8003,                 # x^15 + x + 1
    16: 0x1100B,                # x^16 + x^12 + x^3 + x + 1
}


@dataclass(frozen=True)
class FieldContext:
    """GF(2^r) with fixed primitive polynomial and lookup tables.

    ``antilog[m] = e^m`` for ``0 <= m < 2^r - 1`` and ``log[x]`` inverts it
    on nonzero ``x`` (``log[0]`` is unused and set to -1).
    """

    r: int
    prim_poly: int
    antilog: Tuple[int, ...] = field(repr=False)
    log: Tuple[int, ...] = field(repr=False)

    @property
    def order(self) -> int:
        """Number of field elements, 2^r."""
        return 1 << self.r

    @property
    def mult_order(self) -> int:
        return (1 << self.r) - 1

    @property
    def e(self) -> int:
        """The primitive element (alpha)."""
        return self.antilog[1 % self.mult_order]

    def elements(self) -> range:
        return range(1 << self.r)

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.antilog[(self.log[a] + self.log[b]) % self.mult_order]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^%d)" % self.r)
        return self.antilog[(-self.log[a]) % self.mult_order]

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if k == 0 else 0
        return self.antilog[(self.log[a] * k) % self.mult_order]

    def exp(self, m: int) -> int:
        """e^m for any integer m."""
        return self.antilog[m % self.mult_order]

    def trace(self, a: int) -> int:
        """Absolute trace a + a^2 + ... + a^(2^(r-1)), returned as 0 or 1."""
        t = 0
        x = a
        for _ in range(self.r):
            t ^= x
            x = self.mul(x, x)
        if t > 1:
            raise ArithmeticError("trace left GF(2); tables are corrupt")
        return t

    def check(self, a: int) -> int:
        if not 0 <= a < (1 << self.r):
            raise ValueError("%r is not an element of GF(2^%d)" % (a, self.r))
        return a


def _build_tables(r: int, poly: int) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    size = (1 << r) - 1
    antilog = [0] * size
    log = [-1] * (1 << r)
    x = 1
    for m in range(size):
        if log[x] != -1:
            raise ValueError("polynomial %#x is not primitive" % poly)
        antilog[m] = x
        log[x] = m
        x <<= 1
        if x >> r:
            x ^= poly
    if x != 1:
        raise ValueError("polynomial %#x is not primitive" % poly)
    return tuple(antilog), tuple(log)


_CACHE: dict = {}


def make_field(r: int) -> FieldContext:
    """Return the field GF(2^r), 1 <= r <= 16, built from the fixed table."""
    if not isinstance(r, int) or not 1 <= r <= MAX_DEGREE:
        raise ValueError("extension degree must be in 1..%d, got %r" % (MAX_DEGREE, r))
    ctx = _CACHE.get(r)
    if ctx is None:
        poly = PRIMITIVE_POLYS[r]
        antilog, log = _build_tables(r, poly)
        ctx = _CACHE[r] = FieldContext(r, poly, antilog, log)
    return ctx


def arith(F: FieldContext, a: int, b: int, kind: str) -> int:
    """Dispatch one of ``add``, ``mul``, ``inv`` (b ignored) or ``pow`` (b = k)."""
    F.check(a)
    if kind == "add":
        return F.add(a, F.check(b))
    if kind == "mul":
        return F.mul(a, F.check(b))
    if kind == "inv":
        return F.inv(a)
    if kind == "pow":
        return F.pow(a, b)
    raise ValueError("unknown operation %r" % kind)


def choose_degree(h: int) -> int:
    """Smallest r with 2^r > h, so e^0..e^(h-1) are distinct and nonzero."""
    if h < 1:
        raise ValueError("maximum weight must be >= 1, got %r" % h)
    return h.bit_length()


def format_element(a: int) -> str:
    return "%x" % a


def parse_element(F: FieldContext, text: str) -> int:
    return F.check(int(text, 16))
