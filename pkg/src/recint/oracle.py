"""Reference natural-number arithmetic for differential testing.

``BigNat`` is a little-endian tuple of base ``2**32`` digits with no leading
zero digit (zero is the empty tuple).  Every algorithm is the schoolbook one
and only ever multiplies two 32-bit digits, so a fault in the library's
64-bit limb arithmetic cannot be mirrored here.  Nothing in this module is
tuned for speed.
"""

from __future__ import annotations

import re
from typing import NamedTuple

from .core import FixedUint, set_limb
from .errors import DomainError, ParseError

DIGIT_BITS = 32
BASE = 1 << DIGIT_BITS
DIGIT_MASK = BASE - 1

_HEX_RE = re.compile(r"[0-9a-fA-F]+")


def _trim(digits: list[int]) -> tuple[int, ...]:
    n = len(digits)
    while n and digits[n - 1] == 0:
        n -= 1
    return tuple(digits[:n])


class BigNat(NamedTuple):
    digits: tuple[int, ...]

    @classmethod
    def from_digits(cls, digits) -> BigNat:
        return cls(_trim(list(digits)))

    @classmethod
    def from_int(cls, x: int) -> BigNat:
        if x < 0:
            raise DomainError("BigNat cannot hold a negative value")
        digits = []
        while x:
            digits.append(x & DIGIT_MASK)
            x >>= DIGIT_BITS
        return cls(tuple(digits))

    def to_int(self) -> int:
        x = 0
        for d in reversed(self.digits):
            x = x << DIGIT_BITS | d
        return x

    def __repr__(self) -> str:
        return f"BigNat(0x{o_to_hex(self)})"


ZERO = BigNat(())
ONE = BigNat((1,))


def o_is_zero(a: BigNat) -> bool:
    return not a.digits


def o_cmp(a: BigNat, b: BigNat) -> int:
    x, y = a.digits, b.digits
    if len(x) != len(y):
        return -1 if len(x) < len(y) else 1
    for i in range(len(x) - 1, -1, -1):
        if x[i] != y[i]:
            return -1 if x[i] < y[i] else 1
    return 0


def o_add(a: BigNat, b: BigNat) -> BigNat:
    x, y = a.digits, b.digits
    if len(x) < len(y):
        x, y = y, x
    out = []
    carry = 0
    for i in range(len(x)):
        s = x[i] + (y[i] if i < len(y) else 0) + carry
        out.append(s & DIGIT_MASK)
        carry = s >> DIGIT_BITS
    if carry:
        out.append(carry)
    return BigNat(tuple(out))


def o_sub(a: BigNat, b: BigNat) -> BigNat:
    """``a - b``; requires ``a >= b``."""
    x, y = a.digits, b.digits
    if o_cmp(a, b) < 0:
        raise DomainError("o_sub would go negative")
    out = []
    borrow = 0
    for i in range(len(x)):
        d = x[i] - (y[i] if i < len(y) else 0) - borrow
        borrow = 1 if d < 0 else 0
        out.append(d & DIGIT_MASK)
    return BigNat(_trim(out))


def o_mul(a: BigNat, b: BigNat) -> BigNat:
    x, y = a.digits, b.digits
    if not x or not y:
        return ZERO
    out = [0] * (len(x) + len(y))
    for i, xi in enumerate(x):
        carry = 0
        for j, yj in enumerate(y):
            t = out[i + j] + xi * yj + carry
            out[i + j] = t & DIGIT_MASK
            carry = t >> DIGIT_BITS
        k = i + len(y)
        while carry:
            t = out[k] + carry
            out[k] = t & DIGIT_MASK
            carry = t >> DIGIT_BITS
            k += 1
    return BigNat(_trim(out))


def o_shift_left(a: BigNat, n: int) -> BigNat:
    if not a.digits:
        return a
    words, bits = divmod(n, DIGIT_BITS)
    out = [0] * words
    carry = 0
    for d in a.digits:
        out.append(((d << bits) | carry) & DIGIT_MASK)
        carry = d >> (DIGIT_BITS - bits) if bits else 0
    if carry:
        out.append(carry)
    return BigNat(tuple(out))


def o_shift_right(a: BigNat, n: int) -> BigNat:
    words, bits = divmod(n, DIGIT_BITS)
    x = a.digits[words:]
    if not bits:
        return BigNat(x)
    out = []
    for i, d in enumerate(x):
        nxt = x[i + 1] if i + 1 < len(x) else 0
        out.append(((d >> bits) | (nxt << (DIGIT_BITS - bits))) & DIGIT_MASK)
    return BigNat(_trim(out))


def _divmod_digit(x: tuple[int, ...], d: int) -> tuple[BigNat, BigNat]:
    q = [0] * len(x)
    r = 0
    for i in range(len(x) - 1, -1, -1):
        cur = r << DIGIT_BITS | x[i]
        q[i], r = divmod(cur, d)
    return BigNat(_trim(q)), BigNat.from_digits([r])


def o_divmod(a: BigNat, b: BigNat) -> tuple[BigNat, BigNat]:
    """Schoolbook long division (Knuth, TAOCP vol. 2, algorithm D)."""
    if not b.digits:
        raise DomainError("o_divmod by zero")
    if o_cmp(a, b) < 0:
        return ZERO, a
    if len(b.digits) == 1:
        return _divmod_digit(a.digits, b.digits[0])

    n = len(b.digits)
    m = len(a.digits) - n
    # D1: normalize so the top divisor digit has its high bit set.
    s = DIGIT_BITS - b.digits[-1].bit_length()
    v = list(o_shift_left(b, s).digits)
    u = list(o_shift_left(a, s).digits)
    u += [0] * (m + n + 1 - len(u))
    q = [0] * (m + 1)
    vtop, vnext = v[n - 1], v[n - 2]
    for j in range(m, -1, -1):
        # D3: estimate the quotient digit from the top two dividend digits.
        num = u[j + n] << DIGIT_BITS | u[j + n - 1]
        qhat, rhat = divmod(num, vtop)
        while qhat >= BASE or qhat * vnext > (rhat << DIGIT_BITS | u[j + n - 2]):
            qhat -= 1
            rhat += vtop
            if rhat >= BASE:
                break
        # D4: multiply and subtract.
        borrow = 0
        carry = 0
        for i in range(n):
            p = qhat * v[i] + carry
            carry = p >> DIGIT_BITS
            t = u[i + j] - (p & DIGIT_MASK) - borrow
            borrow = 1 if t < 0 else 0
            u[i + j] = t & DIGIT_MASK
        t = u[j + n] - carry - borrow
        u[j + n] = t & DIGIT_MASK
        if t < 0:
            # D6: the estimate was one too large; add the divisor back.
            qhat -= 1
            carry = 0
            for i in range(n):
                t = u[i + j] + v[i] + carry
                u[i + j] = t & DIGIT_MASK
                carry = t >> DIGIT_BITS
            u[j + n] = (u[j + n] + carry) & DIGIT_MASK
        q[j] = qhat
    r = o_shift_right(BigNat(_trim(u[:n])), s)
    return BigNat(_trim(q)), r


def o_mod(a: BigNat, b: BigNat) -> BigNat:
    return o_divmod(a, b)[1]


def o_bit_length(a: BigNat) -> int:
    if not a.digits:
        return 0
    return (len(a.digits) - 1) * DIGIT_BITS + a.digits[-1].bit_length()


def _bit(a: BigNat, i: int) -> int:
    w, b = divmod(i, DIGIT_BITS)
    return (a.digits[w] >> b) & 1 if w < len(a.digits) else 0


def o_powmod(b: BigNat, e: BigNat, n: BigNat) -> BigNat:
    """Right-to-left binary exponentiation with a division after each product."""
    if not n.digits:
        raise DomainError("o_powmod modulus is zero")
    result = o_mod(ONE, n)
    base = o_mod(b, n)
    for i in range(o_bit_length(e)):
        if _bit(e, i):
            result = o_mod(o_mul(result, base), n)
        base = o_mod(o_mul(base, base), n)
    return result


def o_gcd(a: BigNat, b: BigNat) -> BigNat:
    while b.digits:
        a, b = b, o_mod(a, b)
    return a


class OSigned(NamedTuple):
    """Sign and magnitude; ``negative`` is never set on zero."""

    negative: bool
    magnitude: BigNat


def o_signed_sub(x: OSigned, y: OSigned) -> OSigned:
    if x.negative != y.negative:
        return OSigned(x.negative, o_add(x.magnitude, y.magnitude))
    c = o_cmp(x.magnitude, y.magnitude)
    if c == 0:
        return OSigned(False, ZERO)
    if c > 0:
        return OSigned(x.negative, o_sub(x.magnitude, y.magnitude))
    return OSigned(not x.negative, o_sub(y.magnitude, x.magnitude))


def o_signed_mul(q: BigNat, x: OSigned) -> OSigned:
    m = o_mul(q, x.magnitude)
    return OSigned(x.negative and bool(m.digits), m)


def o_extgcd(a: BigNat, b: BigNat) -> tuple[BigNat, OSigned, OSigned]:
    """``(g, u, v)`` with ``u*a + v*b == g``, by the extended Euclidean algorithm."""
    r0, r1 = a, b
    u0, u1 = OSigned(False, ONE), OSigned(False, ZERO)
    v0, v1 = OSigned(False, ZERO), OSigned(False, ONE)
    while r1.digits:
        q, r2 = o_divmod(r0, r1)
        r0, r1 = r1, r2
        u0, u1 = u1, o_signed_sub(u0, o_signed_mul(q, u1))
        v0, v1 = v1, o_signed_sub(v0, o_signed_mul(q, v1))
    return r0, u0, v0


def o_signed_combination(u: OSigned, a: BigNat, v: OSigned, b: BigNat) -> OSigned:
    """``u*a + v*b`` in sign-magnitude form."""
    ua = o_signed_mul(a, u)
    vb = o_signed_mul(b, v)
    return o_signed_sub(ua, OSigned(not vb.negative and bool(vb.magnitude.digits),
                                    vb.magnitude))


def o_to_hex(a: BigNat) -> str:
    if not a.digits:
        return "0"
    head = format(a.digits[-1], "x")
    return head + "".join(format(d, "08x") for d in reversed(a.digits[:-1]))


def o_from_hex(s: str) -> BigNat:
    if not _HEX_RE.fullmatch(s):
        raise ParseError(f"not a hexadecimal string: {s!r}")
    digits = []
    for end in range(len(s), 0, -8):
        digits.append(int(s[max(0, end - 8):end], 16))
    return BigNat.from_digits(digits)


def o_from_fixed(a: FixedUint) -> BigNat:
    """Exact image of a library value, rebuilt from its limbs."""
    digits: list[int] = []
    acc, nbits = 0, 0
    for limb in a.limbs:
        acc |= limb << nbits
        nbits += a.limb_bits
        while nbits >= DIGIT_BITS:
            digits.append(acc & DIGIT_MASK)
            acc >>= DIGIT_BITS
            nbits -= DIGIT_BITS
    if nbits:
        digits.append(acc)
    return BigNat.from_digits(digits)


def o_to_fixed(x: BigNat, t: type[FixedUint]) -> FixedUint:
    """Library value of class ``t`` with the same bits; requires ``x < 2**t.bits``."""
    if o_bit_length(x) > t.bits:
        raise DomainError(f"{x!r} does not fit in {t.bits} bits")
    lb = t.limb_bits
    lmask = (1 << lb) - 1
    limbs: list[int] = []
    acc, nbits = 0, 0
    for d in x.digits:
        acc |= d << nbits
        nbits += DIGIT_BITS
        while nbits >= lb:
            limbs.append(acc & lmask)
            acc >>= lb
            nbits -= lb
    if nbits:
        limbs.append(acc)
    out = t()
    for i, limb in enumerate(limbs):
        if limb:
            out = set_limb(out, limb, i)
    return out


__all__ = [
    "BigNat", "OSigned", "ZERO", "ONE", "o_add", "o_sub", "o_mul", "o_divmod",
    "o_mod", "o_powmod", "o_gcd", "o_extgcd", "o_cmp", "o_shift_left",
    "o_shift_right", "o_from_hex", "o_to_hex", "o_from_fixed", "o_to_fixed",
    "o_signed_sub", "o_signed_mul", "o_signed_combination", "o_bit_length",
    "o_is_zero",
]
