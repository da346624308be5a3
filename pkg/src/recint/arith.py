"""Carry-aware, full-width and wrapping arithmetic on fixed-width integers.

Every operation is a recursion on the (high, low) halves that bottoms out in
limb arithmetic: a limb add produces one carry bit, a limb product produces a
two-limb result.  The per-level kernels work on raw bit images (plain ints) and
are built once per ``(k, limb_log2)``; the public functions at the bottom of
this module unwrap and rewrap :class:`~recint.core.FixedUint` values.

Wrapping multiplication uses the truncated recursion: of the four half
products only ``low*low`` is needed in full, the two cross products are only
needed modulo the half width, and ``high*high`` falls entirely outside the
result.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Callable, NamedTuple, Optional

from .core import LIMB_LOG2, FixedUint, same_type, _check_limb


class WideProduct(NamedTuple):
    """Double-width value ``high * 2**bits + low``."""

    high: FixedUint
    low: FixedUint

    @property
    def value(self) -> int:
        return int(self.high) << self.high.bits | int(self.low)


class Arith:
    """Arithmetic kernels for one level, operating on bit images.

    Attributes set by :func:`_build`:

    * ``addc(b, c, cin) -> (sum, carry)`` and ``add(b, c)``
    * ``subb(b, c, bin) -> (diff, borrow)`` and ``sub(b, c)``
    * ``add_limb`` / ``sub_limb`` with a single-limb right operand
    * ``add_wrapping`` / ``sub_wrapping``
    * ``mul(b, c)`` full product image, ``lmul(b, c) -> (high, low)``
    * ``mul_wrapping(b, c)``, ``sqr(b)``, ``square(b) -> (high, low)``
    * ``mul_limb(b, l)``, ``lmul_limb(b, l) -> (high limb, low)``
    """

    def __init__(self, k: int, limb_log2: int, half: Optional[Arith]):
        self.k = k
        self.limb_log2 = limb_log2
        self.bits = 1 << k
        self.mask = (1 << self.bits) - 1
        self.half = half

    def __repr__(self) -> str:
        return f"Arith(k={self.k}, limb_log2={self.limb_log2})"


def _count(counter: Counter, key, fn: Callable) -> Callable:
    def counted(*args):
        counter[key] += 1
        return fn(*args)
    counted.__name__ = fn.__name__
    return counted


def _build_base(k: int, limb_log2: int) -> Arith:
    a = Arith(k, limb_log2, None)
    W, M = a.bits, a.mask

    def addc(b, c, cin):
        s = b + c + cin
        return s & M, s >> W

    def subb(b, c, bin):
        d = b - c - bin
        return d & M, int(d < 0)

    def add_limb(b, l):
        s = b + l
        return s & M, s >> W

    def sub_limb(b, l):
        d = b - l
        return d & M, int(d < 0)

    def mul(b, c):
        # Widening limb product: two limbs out.
        return b * c

    def mul_wrapping(b, c):
        return (b * c) & M

    def sqr(b):
        return b * b

    def mul_limb(b, l):
        return b * l

    a.addc, a.subb, a.add_limb, a.sub_limb = addc, subb, add_limb, sub_limb
    a.mul, a.mul_wrapping, a.sqr, a.mul_limb = mul, mul_wrapping, sqr, mul_limb
    return a


def _build_rec(k: int, limb_log2: int, h: Arith, inline_leaves: bool) -> Arith:
    a = Arith(k, limb_log2, h)
    W, M = a.bits, a.mask
    H = W >> 1
    HM = (1 << H) - 1
    h_addc, h_subb = h.addc, h.subb
    h_add_limb, h_sub_limb = h.add_limb, h.sub_limb
    h_mul, h_mulw, h_sqr, h_mul_limb = h.mul, h.mul_wrapping, h.sqr, h.mul_limb

    def addc(b, c, cin):
        lo, cy = h_addc(b & HM, c & HM, cin)
        hi, cy = h_addc(b >> H, c >> H, cy)
        return hi << H | lo, cy

    def subb(b, c, bin):
        lo, bw = h_subb(b & HM, c & HM, bin)
        hi, bw = h_subb(b >> H, c >> H, bw)
        return hi << H | lo, bw

    def add_limb(b, l):
        lo, cy = h_add_limb(b & HM, l)
        hi = b >> H
        if cy:
            hi, cy = h_add_limb(hi, 1)
        return hi << H | lo, cy

    def sub_limb(b, l):
        lo, bw = h_sub_limb(b & HM, l)
        hi = b >> H
        if bw:
            hi, bw = h_sub_limb(hi, 1)
        return hi << H | lo, bw

    # Four complete half products; the cross sum is at most H + 1 bits wide
    # before its shift, so no partial result exceeds the double width.
    def mul(b, c):
        bh = b >> H
        bl = b & HM
        ch = c >> H
        cl = c & HM
        return ((h_mul(bh, ch) << W) + ((h_mul(bh, cl) + h_mul(bl, ch)) << H)
                + h_mul(bl, cl))

    # One complete product (low*low) and two truncated cross products.
    def mul_wrapping(b, c):
        bl = b & HM
        cl = c & HM
        return (h_mul(bl, cl) + ((h_mulw(b >> H, cl) + h_mulw(bl, c >> H)) << H)) & M

    def sqr(b):
        bh = b >> H
        bl = b & HM
        return (h_sqr(bh) << W) + (h_mul(bh, bl) << (H + 1)) + h_sqr(bl)

    def mul_limb(b, l):
        return (h_mul_limb(b >> H, l) << H) + h_mul_limb(b & HM, l)

    if inline_leaves:
        # The halves are limbs: do the limb operations in place rather than
        # through calls.  Same algorithm, same limb product count.
        def addc(b, c, cin):  # noqa: F811
            s = (b & HM) + (c & HM) + cin
            t = (b >> H) + (c >> H) + (s >> H)
            return (t & HM) << H | (s & HM), t >> H

        def subb(b, c, bin):  # noqa: F811
            d = (b & HM) - (c & HM) - bin
            bw = int(d < 0)
            e = (b >> H) - (c >> H) - bw
            return (e & HM) << H | (d & HM), int(e < 0)

        def mul(b, c):  # noqa: F811
            bh = b >> H
            bl = b & HM
            ch = c >> H
            cl = c & HM
            return (bh * ch << W) + ((bh * cl + bl * ch) << H) + bl * cl

        def mul_wrapping(b, c):  # noqa: F811
            bl = b & HM
            cl = c & HM
            return (bl * cl + ((((b >> H) * cl & HM) + (bl * (c >> H) & HM)) << H)) & M

        def sqr(b):  # noqa: F811
            bh = b >> H
            bl = b & HM
            return (bh * bh << W) + (bh * bl << (H + 1)) + bl * bl

    a.addc, a.subb, a.add_limb, a.sub_limb = addc, subb, add_limb, sub_limb
    a.mul, a.mul_wrapping, a.sqr, a.mul_limb = mul, mul_wrapping, sqr, mul_limb
    return a


def _finish(a: Arith) -> Arith:
    W, M = a.bits, a.mask
    addc, subb, mul, mulw, sqr, mul_limb = (
        a.addc, a.subb, a.mul, a.mul_wrapping, a.sqr, a.mul_limb)

    def add(b, c):
        return addc(b, c, 0)

    def sub(b, c):
        return subb(b, c, 0)

    def add_wrapping(b, c):
        return addc(b, c, 0)[0]

    def sub_wrapping(b, c):
        return subb(b, c, 0)[0]

    def lmul(b, c):
        p = mul(b, c)
        return p >> W, p & M

    def square(b):
        p = sqr(b)
        return p >> W, p & M

    def lmul_limb(b, l):
        p = mul_limb(b, l)
        return p >> W, p & M

    a.add, a.sub, a.add_wrapping, a.sub_wrapping = add, sub, add_wrapping, sub_wrapping
    a.lmul, a.square, a.lmul_limb = lmul, square, lmul_limb
    return a


def _instrument(a: Arith, counter: Counter) -> None:
    k = a.k
    a.mul = _count(counter, ("lmul", k), a.mul)
    a.mul_wrapping = _count(counter, ("mul_wrapping", k), a.mul_wrapping)
    a.sqr = _count(counter, ("square", k), a.sqr)
    a.mul_limb = _count(counter, ("lmul_limb", k), a.mul_limb)


def _build(k: int, limb_log2: int, counter: Optional[Counter]) -> Arith:
    if k == limb_log2:
        a = _build_base(k, limb_log2)
    else:
        half = (_cached(k - 1, limb_log2) if counter is None
                else _build(k - 1, limb_log2, counter))
        # Instrumented kernels keep every limb product behind a counted call.
        inline = counter is None and k == limb_log2 + 1
        a = _build_rec(k, limb_log2, half, inline)
    if counter is not None:
        _instrument(a, counter)
    return _finish(a)


@lru_cache(maxsize=None)
def _cached(k: int, limb_log2: int) -> Arith:
    return _build(k, limb_log2, None)


def arith_kernel(k: int, limb_log2: int = LIMB_LOG2,
                 counter: Optional[Counter] = None) -> Arith:
    """Kernel for level ``k``.

    With a ``counter`` a fresh instrumented kernel is built: each call to a
    multiplication entry point at level ``j`` increments
    ``counter[(name, j)]`` where name is one of ``lmul``, ``mul_wrapping``,
    ``square`` and ``lmul_limb``.  At ``j == limb_log2`` those counts are
    limb products.
    """
    if k < limb_log2:
        raise ValueError(f"level {k} is below the limb level {limb_log2}")
    if counter is None:
        return _cached(k, limb_log2)
    return _build(k, limb_log2, counter)


def kernel_of(t: type[FixedUint]) -> Arith:
    return _cached(t.k, t.limb_log2)


def limb_products(counter: Counter, limb_log2: int = LIMB_LOG2) -> int:
    """Total limb multiplications recorded by an instrumented kernel."""
    return sum(n for (name, level), n in counter.items() if level == limb_log2)


# -- public operations -----------------------------------------------------------

def add(b: FixedUint, c: FixedUint) -> tuple[FixedUint, int]:
    """``(a, carry)`` with ``b + c == carry * 2**bits + a``."""
    t = same_type(b, c)
    s, cy = kernel_of(t).addc(b._v, c._v, 0)
    return t._wrap(s), cy


def add_limb(b: FixedUint, c: int) -> tuple[FixedUint, int]:
    _check_limb(b, c)
    t = type(b)
    s, cy = kernel_of(t).add_limb(b._v, c)
    return t._wrap(s), cy


def increment(a: FixedUint) -> tuple[FixedUint, int]:
    t = type(a)
    s, cy = kernel_of(t).add_limb(a._v, 1)
    return t._wrap(s), cy


def sub(b: FixedUint, c: FixedUint) -> tuple[FixedUint, int]:
    """``(a, borrow)`` with ``a == b - c + borrow * 2**bits``."""
    t = same_type(b, c)
    d, bw = kernel_of(t).subb(b._v, c._v, 0)
    return t._wrap(d), bw


def sub_limb(b: FixedUint, c: int) -> tuple[FixedUint, int]:
    _check_limb(b, c)
    t = type(b)
    d, bw = kernel_of(t).sub_limb(b._v, c)
    return t._wrap(d), bw


def decrement(a: FixedUint) -> tuple[FixedUint, int]:
    t = type(a)
    d, bw = kernel_of(t).sub_limb(a._v, 1)
    return t._wrap(d), bw


def add_wrapping(b: FixedUint, c: FixedUint) -> FixedUint:
    t = same_type(b, c)
    return t._wrap(kernel_of(t).add_wrapping(b._v, c._v))


def sub_wrapping(b: FixedUint, c: FixedUint) -> FixedUint:
    t = same_type(b, c)
    return t._wrap(kernel_of(t).sub_wrapping(b._v, c._v))


def lmul(b: FixedUint, c: FixedUint) -> WideProduct:
    """Complete product ``b * c`` as a double-width pair."""
    t = same_type(b, c)
    hi, lo = kernel_of(t).lmul(b._v, c._v)
    return WideProduct(t._wrap(hi), t._wrap(lo))


def lmul_limb(b: FixedUint, c: int) -> tuple[int, FixedUint]:
    """``(high limb, low)`` with ``high * 2**bits + low == b * c``."""
    _check_limb(b, c)
    t = type(b)
    hi, lo = kernel_of(t).lmul_limb(b._v, c)
    return hi, t._wrap(lo)


def mul_wrapping(b: FixedUint, c: FixedUint) -> FixedUint:
    """``b * c`` modulo ``2**bits`` via the truncated recursion."""
    t = same_type(b, c)
    return t._wrap(kernel_of(t).mul_wrapping(b._v, c._v))


def square(b: FixedUint) -> WideProduct:
    t = type(b)
    hi, lo = kernel_of(t).square(b._v)
    return WideProduct(t._wrap(hi), t._wrap(lo))
