"""Recursive Euclidean division.

Two mutually recursive sub-algorithms (Burnikel and Ziegler, "Fast Recursive
Division", 1998):

* ``div2n1n`` divides a two-digit number by a one-digit normalized divisor,
  splitting the dividend into four half digits and calling ``div3n2n`` twice;
* ``div3n2n`` divides three half digits by a two-half-digit divisor, estimating
  the quotient with ``div2n1n`` on the top halves and correcting it at most
  twice.

Here a "digit" is one level-``k`` value, so the recursion follows the same
(high, low) split as the rest of the library and ends at the limb level with a
two-limb-by-one-limb machine division.

The kernels keep every intermediate at a fixed width.  Where the textbook
algorithm lets a remainder go negative, ``div3n2n`` carries the sign in a
separate borrow/carry bit instead.
"""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple, Optional

from .arith import Arith, arith_kernel
from .core import LIMB_LOG2, FixedUint, same_type
from .errors import ContractError

MAX_CORRECTIONS = 2


class QuotRem(NamedTuple):
    q: FixedUint
    r: FixedUint


class Div:
    """Division kernels for divisors of one level, on bit images.

    * ``div2n1n(ah, al, b) -> (q, r)``: ``ah*2**W + al == q*b + r``;
      requires ``b`` normalized and ``ah < b``.
    * ``div3n2n(a12, a3, b) -> (q, r)``: ``a12*2**(W/2) + a3 == q*b + r`` with
      a half-width quotient; requires ``b`` normalized and ``a12 < b``.
    * ``divmod(a, b)``: any ``a`` and nonzero ``b`` of this level.
    * ``rem_wide(hi, lo, n)``: ``(hi*2**W + lo) mod n`` for ``hi < n``.
    """

    def __init__(self, arith: Arith, half: Optional[Div]):
        self.arith = arith
        self.half = half
        self.k = arith.k
        self.bits = arith.bits
        self.mask = arith.mask


def _build(k: int, limb_log2: int) -> Div:
    ar = arith_kernel(k, limb_log2)
    W, M = ar.bits, ar.mask
    top = 1 << (W - 1)

    if k == limb_log2:
        d = Div(ar, None)

        def div2n1n(ah, al, b):
            # Two-limb by one-limb machine division.
            return divmod(ah << W | al, b)

        div3n2n = None
    else:
        hd = _cached(k - 1, limb_log2)
        d = Div(ar, hd)
        h = ar.half
        H = W >> 1
        HM = (1 << H) - 1
        h_div2n1n, h_add, h_mul = hd.div2n1n, h.add, h.mul
        sub, add = ar.sub, ar.add

        def div3n2n(a12, a3, b):
            a1 = a12 >> H
            b1 = b >> H
            if a1 < b1:
                q, r1 = h_div2n1n(a1, a12 & HM, b1)
                cy = 0
            else:
                # a1 == b1: the estimate saturates at the largest half digit.
                q = HM
                r1, cy = h_add(a12 & HM, b1)
            r, bw = sub(r1 << H | a3, h_mul(q, b & HM))
            # The true remainder is cy*2**W + r - bw*2**W; it cannot be >= 2**W.
            ext = cy - bw
            corrections = 0
            while ext < 0:
                corrections += 1
                if corrections > MAX_CORRECTIONS:
                    raise ContractError("div3n2n needed more than two corrections")
                q -= 1
                r, cy = add(r, b)
                ext += cy
            if ext:
                raise ContractError("div3n2n remainder overflowed")
            return q, r

        def div2n1n(ah, al, b):
            q1, r = div3n2n(ah, al >> H, b)
            q2, r = div3n2n(r, al & HM, b)
            return q1 << H | q2, r

    def divmod_(a, b):
        s = W - b.bit_length()
        if s == 0:
            return div2n1n(0, a, b)
        q, r = div2n1n(a >> (W - s), (a << s) & M, b << s)
        return q, r >> s

    def rem_wide(hi, lo, n):
        s = W - n.bit_length()
        if s == 0:
            return div2n1n(hi, lo, n)[1]
        hi = (hi << s | lo >> (W - s)) & M
        return div2n1n(hi, (lo << s) & M, n << s)[1] >> s

    d.div2n1n, d.div3n2n = div2n1n, div3n2n
    d.divmod, d.rem_wide = divmod_, rem_wide
    d.top_bit = top
    return d


@lru_cache(maxsize=None)
def _cached(k: int, limb_log2: int) -> Div:
    return _build(k, limb_log2)


def div_kernel(k: int, limb_log2: int = LIMB_LOG2) -> Div:
    if k < limb_log2:
        raise ValueError(f"level {k} is below the limb level {limb_log2}")
    return _cached(k, limb_log2)


def _kernel_of(t: type[FixedUint]) -> Div:
    return _cached(t.k, t.limb_log2)


# -- public operations -----------------------------------------------------------

def div2n1n(a_hi: FixedUint, a_lo: FixedUint, b: FixedUint) -> QuotRem:
    """Divide ``a_hi * 2**bits + a_lo`` by a normalized ``b`` with ``a_hi < b``."""
    t = same_type(a_hi, a_lo, b)
    if not b._v >> (t.bits - 1):
        raise ContractError("div2n1n divisor is not normalized")
    if a_hi._v >= b._v:
        raise ContractError("div2n1n quotient does not fit one digit")
    q, r = _kernel_of(t).div2n1n(a_hi._v, a_lo._v, b._v)
    return QuotRem(t._wrap(q), t._wrap(r))


def div3n2n(a12: FixedUint, a3: FixedUint, b: FixedUint) -> QuotRem:
    """Divide ``a12 * 2**(bits/2) + a3`` by a normalized ``b`` with ``a12 < b``.

    ``a12`` and ``b`` are one level above ``a3``; the quotient has ``a3``'s
    width and the remainder ``b``'s.
    """
    t = same_type(a12, b)
    if type(a3) is not t.half_type():
        raise TypeError(f"a3 must be {t.half_type().__name__}")
    if not b._v >> (t.bits - 1):
        raise ContractError("div3n2n divisor is not normalized")
    if a12._v >= b._v:
        raise ContractError("div3n2n quotient does not fit a half digit")
    q, r = _kernel_of(t).div3n2n(a12._v, a3._v, b._v)
    return QuotRem(type(a3)._wrap(q), t._wrap(r))


def div(a: FixedUint, b: FixedUint) -> QuotRem:
    """Euclidean division: ``a == b*q + r`` with ``r < b``."""
    t = same_type(a, b)
    if not b._v:
        raise ZeroDivisionError("division by zero")
    q, r = _kernel_of(t).divmod(a._v, b._v)
    return QuotRem(t._wrap(q), t._wrap(r))


def div_quotient(a: FixedUint, b: FixedUint) -> FixedUint:
    return div(a, b).q


def div_remainder(a: FixedUint, b: FixedUint) -> FixedUint:
    return div(a, b).r
