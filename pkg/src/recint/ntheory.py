"""Greatest common divisors and Bezout coefficients.

Both routines run the classical Euclidean remainder sequence with the
recursive division kernel doing each step.  Coefficients are unsigned
magnitudes with a sign flag (``nonneg``); along the sequence their signs
alternate, so each update is an unsigned multiply-add and never needs more
than the operand width.
"""

from __future__ import annotations

from typing import NamedTuple

from .arith import kernel_of as arith_kernel_of
from .core import FixedUint, same_type
from .division import _kernel_of as div_kernel_of
from .errors import ContractError, DomainError


class SignedCoeff(NamedTuple):
    """``magnitude`` with a sign; ``nonneg`` is False for negative values.

    Zero is always ``(0, True)``.
    """

    magnitude: FixedUint
    nonneg: bool

    @property
    def value(self) -> int:
        m = int(self.magnitude)
        return m if self.nonneg else -m


class ExtGcd(NamedTuple):
    g: FixedUint
    u: SignedCoeff
    v: SignedCoeff


def gcd(a: FixedUint, b: FixedUint) -> FixedUint:
    """gcd(a, b), with gcd(a, 0) == a and gcd(0, 0) == 0."""
    t = same_type(a, b)
    divmod_ = div_kernel_of(t).divmod
    x, y = a._v, b._v
    while y:
        x, y = y, divmod_(x, y)[1]
    return t._wrap(x)


def ext_gcd(a: FixedUint, b: FixedUint) -> ExtGcd:
    """``(g, u, v)`` with ``u*a + v*b == g == gcd(a, b)``.

    The Euclidean coefficients already satisfy ``|u| <= b/(2g)`` and
    ``|v| <= a/(2g)`` once both inputs exceed ``g``.
    """
    t = same_type(a, b)
    if not a._v and not b._v:
        raise DomainError("ext_gcd(0, 0) is undefined")
    divmod_ = div_kernel_of(t).divmod
    ar = arith_kernel_of(t)
    lmul, add = ar.lmul, ar.add

    # Rows (r, |u|, |v|) with r == u*a + v*b.  Nonzero u is positive on even
    # rows and negative on odd ones; v the other way round.
    r0, u0, v0 = a._v, 1, 0
    r1, u1, v1 = b._v, 0, 1
    even = True  # parity of the row held in (r0, u0, v0)
    while r1:
        q, r2 = divmod_(r0, r1)
        u2 = _mul_add(lmul, add, q, u1, u0)
        v2 = _mul_add(lmul, add, q, v1, v0)
        r0, u0, v0, r1, u1, v1 = r1, u1, v1, r2, u2, v2
        even = not even
    u_nonneg = even or u0 == 0
    v_nonneg = (not even) or v0 == 0
    return ExtGcd(t._wrap(r0), SignedCoeff(t._wrap(u0), u_nonneg),
                  SignedCoeff(t._wrap(v0), v_nonneg))


def _mul_add(lmul, add, q, x, y):
    # |new| = q*|x| + |y|; magnitudes stay below the operand width.
    hi, lo = lmul(q, x)
    s, cy = add(lo, y)
    if hi or cy:
        raise ContractError("Bezout coefficient overflowed the operand width")
    return s
