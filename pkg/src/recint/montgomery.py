"""Montgomery multiplication with radix ``R = 2**bits``.

With the double-width product stored as (high, low) halves, reduction modulo
``R`` is taking ``low`` and exact division by ``R`` is taking ``high``.  REDC
therefore costs one wrapping multiplication (``m = low * n' mod R``) and one
complete multiplication (``m * n``), plus carry handling.

``n'`` is found by Hensel lifting: starting from ``n**-1 == 1 (mod 2)``, each
Newton step ``x <- x * (2 - n*x)`` doubles the number of correct low bits.
"""

from __future__ import annotations

from collections import Counter
from typing import Optional

from .arith import WideProduct, arith_kernel
from .core import FixedUint, same_type
from .errors import ContractError, DomainError


class MontgomeryContext:
    """Constants and kernels for one odd modulus ``n >= 3``.

    ``n_prime`` satisfies ``n * n_prime == -1 (mod R)`` and ``r2_mod_n`` is
    ``R**2 mod n``.  Immutable after construction.
    """

    __slots__ = ("type", "n", "n_prime", "r2_mod_n", "_ar", "_n", "_np",
                 "_r2", "_one")

    def __init__(self, n: FixedUint, counter: Optional[Counter] = None):
        t = type(n)
        nv = n._v
        if nv < 3 or not nv & 1:
            raise DomainError(f"Montgomery modulus must be odd and >= 3, got {nv}")
        ar = arith_kernel(t.k, t.limb_log2, counter)
        self._ar = ar
        self._n = nv
        self._np = _neg_inverse(ar, nv)
        self._r2 = _r_squared(ar, nv)
        # R mod n, the Montgomery image of 1.
        self._one = self._redc(0, self._r2)
        self.type = t
        self.n = n
        self.n_prime = t._wrap(self._np)
        self.r2_mod_n = t._wrap(self._r2)

    def __repr__(self) -> str:
        return f"MontgomeryContext(n={self.n!r})"

    # Image-level kernels.  Callers guarantee the documented ranges.

    def _redc(self, hi: int, lo: int) -> int:
        n = self._n
        if hi >= n:
            raise ContractError("redc input is not below R*n")
        ar = self._ar
        m = ar.mul_wrapping(lo, self._np)
        mh, ml = ar.lmul(m, n)
        # lo + ml is 0 mod R, so the low half carries exactly when lo != 0.
        t, cy = ar.addc(hi, mh, 1 if lo else 0)
        if cy or t >= n:
            t = ar.sub(t, n)[0]
        return t

    def _mul(self, x: int, y: int) -> int:
        hi, lo = self._ar.lmul(x, y)
        return self._redc(hi, lo)

    def _sqr(self, x: int) -> int:
        hi, lo = self._ar.square(x)
        return self._redc(hi, lo)

    def _to(self, a: int) -> int:
        # a * r2 < R * n for any a < R, so no prior reduction is needed.
        hi, lo = self._ar.lmul(a, self._r2)
        return self._redc(hi, lo)

    def _from(self, x: int) -> int:
        return self._redc(0, x)

    def _pow(self, xbar: int, e: int) -> int:
        """Left-to-right square and multiply on a Montgomery image."""
        acc = self._one
        for i in range(e.bit_length() - 1, -1, -1):
            acc = self._sqr(acc)
            if (e >> i) & 1:
                acc = self._mul(acc, xbar)
        return acc

    def _exp(self, a: int, e: int) -> int:
        return self._from(self._pow(self._to(a), e))


def _neg_inverse(ar, n: int) -> int:
    """``-n**-1 mod R`` by Newton-Hensel lifting."""
    inv, good_bits = 1, 1
    mulw, subw = ar.mul_wrapping, ar.sub_wrapping
    while good_bits < ar.bits:
        inv = mulw(inv, subw(2, mulw(n, inv)))
        good_bits *= 2
    return subw(0, inv)


def _r_squared(ar, n: int) -> int:
    """``R**2 mod n`` by doubling 1 modulo ``n``, ``2 * bits`` times."""
    add, sub = ar.add, ar.sub
    x = 1
    for _ in range(2 * ar.bits):
        x, cy = add(x, x)
        if cy or x >= n:
            x = sub(x, n)[0]
    return x


def mont_new(n: FixedUint, counter: Optional[Counter] = None) -> MontgomeryContext:
    """Montgomery context for odd ``n``.

    Passing a ``Counter`` builds the context on instrumented kernels (see
    :func:`recint.arith.arith_kernel`).
    """
    return MontgomeryContext(n, counter)


def _check(ctx: MontgomeryContext, *values: FixedUint) -> type[FixedUint]:
    t = same_type(*values)
    if t is not ctx.type:
        raise TypeError(f"context is for {ctx.type.__name__}, got {t.__name__}")
    return t


def redc(ctx: MontgomeryContext, T: WideProduct) -> FixedUint:
    """``T * R**-1 mod n`` for ``T < R * n``."""
    t = _check(ctx, T.high, T.low)
    return t._wrap(ctx._redc(T.high._v, T.low._v))


def to_mont(ctx: MontgomeryContext, a: FixedUint) -> FixedUint:
    """Montgomery image ``a * R mod n``."""
    t = _check(ctx, a)
    return t._wrap(ctx._to(a._v))


def from_mont(ctx: MontgomeryContext, abar: FixedUint) -> FixedUint:
    t = _check(ctx, abar)
    return t._wrap(ctx._from(abar._v))


def mont_mul(ctx: MontgomeryContext, abar: FixedUint, bbar: FixedUint) -> FixedUint:
    """Montgomery product of two images already reduced below ``n``."""
    t = _check(ctx, abar, bbar)
    if abar._v >= ctx._n or bbar._v >= ctx._n:
        raise ContractError("mont_mul operands must be below the modulus")
    return t._wrap(ctx._mul(abar._v, bbar._v))


def mont_square(ctx: MontgomeryContext, abar: FixedUint) -> FixedUint:
    t = _check(ctx, abar)
    if abar._v >= ctx._n:
        raise ContractError("mont_square operand must be below the modulus")
    return t._wrap(ctx._sqr(abar._v))


def mont_exp(ctx: MontgomeryContext, a: FixedUint, c: FixedUint) -> FixedUint:
    """``a**c mod n`` with one conversion in and one out."""
    t = _check(ctx, a, c)
    if a._v >= ctx._n:
        raise ContractError("mont_exp base must be below the modulus")
    return t._wrap(ctx._exp(a._v, c._v))
