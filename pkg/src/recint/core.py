"""Recursive fixed-width unsigned integers.

A level-``k`` value holds exactly ``2**k`` bits.  Above the limb level it is
the pair ``(high, low)`` of two level ``k - 1`` values with
``value == high * 2**(2**(k-1)) + low``; at ``k == limb_log2`` it is a single
machine limb.

Values are stored as their bit image (a non-negative ``int`` below
``2**(2**k)``).  ``high`` and ``low`` are views on that image, so the
decomposition identity holds by construction, and the arithmetic kernels in
:mod:`recint.arith` and :mod:`recint.division` recurse on those halves down to
limb-sized operations.

The limb width is chosen once per process through the ``RECINT_LIMB_LOG2``
environment variable (5 or 6, default 6).  Types for other limb widths can be
built explicitly with ``uint(k, limb_log2=...)``; the test-suite uses that to
run the same algorithms on tiny synthetic limbs.
"""

from __future__ import annotations

import enum
import os
import re
from functools import lru_cache
from typing import ClassVar

from .errors import DomainError, LimbIndexError, ParseError


def _limb_log2_from_env() -> int:
    raw = os.environ.get("RECINT_LIMB_LOG2", "6")
    if raw not in ("5", "6"):
        raise ValueError(f"RECINT_LIMB_LOG2 must be 5 or 6, got {raw!r}")
    return int(raw)


LIMB_LOG2 = _limb_log2_from_env()
LIMB_BITS = 1 << LIMB_LOG2
LIMB_MASK = (1 << LIMB_BITS) - 1

# Widths below 2 bits cannot be split into halves.
MIN_SYNTHETIC_LIMB_LOG2 = 1

_HEX_RE = re.compile(r"[0-9a-fA-F]+")


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class FixedUint:
    """Unsigned integer of exactly ``2**k`` bits.

    Do not subclass directly; use :func:`uint` to get the class for a level.
    Instances are immutable and hashable.
    """

    __slots__ = ("_v",)

    k: ClassVar[int]
    limb_log2: ClassVar[int]
    bits: ClassVar[int]
    limb_bits: ClassVar[int]
    nlimbs: ClassVar[int]
    mask: ClassVar[int]

    def __init__(self, value: int = 0) -> None:
        if not 0 <= value <= self.mask:
            raise OverflowError(
                f"{value} does not fit in {self.bits} unsigned bits")
        _set_v(self, value)

    @classmethod
    def _wrap(cls, value: int) -> FixedUint:
        # Trusted constructor for kernel results that are already in range.
        obj = object.__new__(cls)
        _set_v(obj, value)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} values are immutable")

    def __delattr__(self, name):
        raise AttributeError(f"{type(self).__name__} values are immutable")

    # -- recursive structure -------------------------------------------------

    @classmethod
    def half_type(cls) -> type[FixedUint]:
        if cls.k == cls.limb_log2:
            raise TypeError(f"{cls.__name__} is a single limb and has no halves")
        return uint(cls.k - 1, cls.limb_log2)

    @classmethod
    def double_type(cls) -> type[FixedUint]:
        return uint(cls.k + 1, cls.limb_log2)

    @property
    def high(self) -> FixedUint:
        """Most significant half."""
        half = self.half_type()
        return half._wrap(self._v >> half.bits)

    @property
    def low(self) -> FixedUint:
        """Least significant half."""
        half = self.half_type()
        return half._wrap(self._v & half.mask)

    @classmethod
    def from_halves(cls, high: FixedUint, low: FixedUint) -> FixedUint:
        half = cls.half_type()
        if type(high) is not half or type(low) is not half:
            raise TypeError(f"halves of {cls.__name__} must be {half.__name__}")
        return cls._wrap(high._v << half.bits | low._v)

    @property
    def limbs(self) -> tuple[int, ...]:
        """Limbs, least significant first."""
        lb, lm, v = self.limb_bits, (1 << self.limb_bits) - 1, self._v
        return tuple((v >> (i * lb)) & lm for i in range(self.nlimbs))

    # -- python protocol -----------------------------------------------------

    def __int__(self) -> int:
        return self._v

    __index__ = __int__

    def __bool__(self) -> bool:
        return self._v != 0

    def __repr__(self) -> str:
        return f"{type(self).__name__}(0x{to_hex(self)})"

    def __hash__(self) -> int:
        return hash((type(self), self._v))

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self._v == other._v

    def __lt__(self, other: FixedUint) -> bool:
        return compare(self, other) is Ordering.LESS

    def __le__(self, other: FixedUint) -> bool:
        return compare(self, other) is not Ordering.GREATER

    def __gt__(self, other: FixedUint) -> bool:
        return compare(self, other) is Ordering.GREATER

    def __ge__(self, other: FixedUint) -> bool:
        return compare(self, other) is not Ordering.LESS

    # Arithmetic operators wrap modulo 2**bits like machine words.
    def __add__(self, other: FixedUint) -> FixedUint:
        from .arith import add_wrapping
        return add_wrapping(self, other)

    def __sub__(self, other: FixedUint) -> FixedUint:
        from .arith import sub_wrapping
        return sub_wrapping(self, other)

    def __mul__(self, other: FixedUint) -> FixedUint:
        from .arith import mul_wrapping
        return mul_wrapping(self, other)

    def __floordiv__(self, other: FixedUint) -> FixedUint:
        from .division import div_quotient
        return div_quotient(self, other)

    def __mod__(self, other: FixedUint) -> FixedUint:
        from .division import div_remainder
        return div_remainder(self, other)

    def __lshift__(self, n: int) -> FixedUint:
        return shl(self, n)

    def __rshift__(self, n: int) -> FixedUint:
        return shr(self, n)


# Slot writer that bypasses the immutability guard.
_set_v = FixedUint._v.__set__


def uint(k: int, limb_log2: int = LIMB_LOG2) -> type[FixedUint]:
    """Return the fixed-width class for level ``k`` (``2**k`` bits)."""
    return _uint(k, limb_log2)


@lru_cache(maxsize=None)
def _uint(k: int, limb_log2: int) -> type[FixedUint]:
    if limb_log2 < MIN_SYNTHETIC_LIMB_LOG2 or limb_log2 > 6:
        raise ValueError(f"unsupported limb_log2 {limb_log2}")
    if k < limb_log2:
        raise ValueError(f"level {k} is below the limb level {limb_log2}")
    bits = 1 << k
    name = f"U{bits}" if limb_log2 == LIMB_LOG2 else f"U{bits}_L{1 << limb_log2}"
    return type(name, (FixedUint,), {
        "__slots__": (),
        "__module__": __name__,
        "k": k,
        "limb_log2": limb_log2,
        "bits": bits,
        "limb_bits": 1 << limb_log2,
        "nlimbs": 1 << (k - limb_log2),
        "mask": (1 << bits) - 1,
    })


def same_type(*values: FixedUint) -> type[FixedUint]:
    """Common class of ``values``; raises ``TypeError`` on mixed widths."""
    t = type(values[0])
    for v in values[1:]:
        if type(v) is not t:
            raise TypeError(
                f"operands must share one width: {t.__name__} vs {type(v).__name__}")
    return t


def _check_limb(a: FixedUint, b: int) -> None:
    if not 0 <= b < (1 << a.limb_bits):
        raise OverflowError(f"{b} is not a {a.limb_bits}-bit limb")


def _check_index(a: FixedUint, n: int) -> None:
    if not 0 <= n < a.nlimbs:
        raise LimbIndexError(
            f"limb index {n} out of range for {type(a).__name__} "
            f"({a.nlimbs} limbs)")


# -- comparison ----------------------------------------------------------------

def compare(a: FixedUint, b: FixedUint) -> Ordering:
    """Three-way comparison (high halves decide, low halves break ties)."""
    same_type(a, b)
    x, y = a._v, b._v
    return Ordering((x > y) - (x < y))


def is_zero(a: FixedUint) -> bool:
    return a._v == 0


def is_one(a: FixedUint) -> bool:
    return a._v == 1


def equals_limb(a: FixedUint, b: int) -> bool:
    _check_limb(a, b)
    return a._v == b


# -- set / get -----------------------------------------------------------------

def reset(a: FixedUint) -> FixedUint:
    return type(a)._wrap(0)


def set_limb(a: FixedUint, b: int, n: int) -> FixedUint:
    """Copy of ``a`` with limb ``n`` replaced by ``b`` (limb 0 is least significant)."""
    _check_index(a, n)
    _check_limb(a, b)
    shift = n * a.limb_bits
    cleared = a._v & ~(((1 << a.limb_bits) - 1) << shift)
    return type(a)._wrap(cleared | b << shift)


def set_const(a: FixedUint, b: int) -> FixedUint:
    """Replace limb 0 only; the other limbs keep their value."""
    return set_limb(a, b, 0)


def get_limb(a: FixedUint, n: int) -> int:
    _check_index(a, n)
    return (a._v >> (n * a.limb_bits)) & ((1 << a.limb_bits) - 1)


def get_limb0(a: FixedUint) -> int:
    return a._v & ((1 << a.limb_bits) - 1)


def get_limbn(a: FixedUint) -> int:
    return a._v >> (a.bits - a.limb_bits)


def copy(a: FixedUint) -> FixedUint:
    return type(a)._wrap(a._v)


def shl(a: FixedUint, n: int) -> FixedUint:
    """Left shift, dropping bits above the width."""
    if n < 0:
        raise ValueError("negative shift count")
    return type(a)._wrap((a._v << n) & a.mask)


def shr(a: FixedUint, n: int) -> FixedUint:
    if n < 0:
        raise ValueError("negative shift count")
    return type(a)._wrap(a._v >> n)


def bit_length(a: FixedUint) -> int:
    return a._v.bit_length()


def bit_at(a: FixedUint, i: int) -> bool:
    return (a._v >> i) & 1 == 1


# -- randomness ------------------------------------------------------------------

def random(t: type[FixedUint], rng) -> FixedUint:
    """Uniform value of class ``t`` drawn limb by limb from ``rng``.

    ``rng`` is any object with ``getrandbits`` (normally ``random.Random``).
    """
    v = 0
    for i in range(t.nlimbs):
        v |= rng.getrandbits(t.limb_bits) << (i * t.limb_bits)
    return t._wrap(v)


def random_below(rng, n: FixedUint) -> FixedUint:
    """Uniform value in ``[0, n)`` by rejection sampling on ``n``'s bit length."""
    if n._v == 0:
        raise DomainError("random_below needs a positive bound")
    nbits = n._v.bit_length()
    while True:
        v = rng.getrandbits(nbits)
        if v < n._v:
            return type(n)._wrap(v)


# -- text ----------------------------------------------------------------------

def hex_digits(t: type[FixedUint]) -> int:
    return (t.bits + 3) // 4


def to_hex(a: FixedUint) -> str:
    """Big-endian lowercase hex, zero padded to the full width."""
    return format(a._v, f"0{hex_digits(type(a))}x")


def from_hex(t: type[FixedUint], s: str) -> FixedUint:
    """Parse big-endian hex into class ``t``."""
    if not _HEX_RE.fullmatch(s):
        raise ParseError(f"not a hexadecimal string: {s!r}")
    v = int(s, 16)
    if v > t.mask:
        raise ParseError(f"0x{s} does not fit in {t.bits} bits")
    return t._wrap(v)
