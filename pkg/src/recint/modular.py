"""Modular arithmetic on fixed-width integers.

Two interfaces share one implementation:

* functions taking the modulus explicitly (``add_mod(b, c, n)`` ...), which
  reduce their inputs modulo ``n`` on entry;
* :class:`ModRing` / :class:`ModElement`, where the modulus lives in an
  immutable ring object and every element is kept below it.

Products are reduced either by dividing the double-width product by ``n`` or,
for odd moduli, through Montgomery multiplication.  Both routes give the same
canonical result.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Union

from . import core
from .arith import kernel_of as arith_kernel_of
from .core import FixedUint, same_type
from .division import _kernel_of as div_kernel_of
from .errors import (DomainError, NoSquareRootError, NotInvertibleError,
                     RingMismatchError)
from .montgomery import MontgomeryContext
from .ntheory import ext_gcd

# Give up looking for a quadratic non-residue after this many candidates; for
# a prime modulus the least one is tiny.
NONRESIDUE_SEARCH_LIMIT = 10_000


def _check_modulus(n: FixedUint) -> None:
    if n._v < 2:
        raise DomainError(f"modulus must be at least 2, got {n._v}")


def _reduce_image(v: int, n: int, t: type[FixedUint]) -> int:
    if v < n:
        return v
    return div_kernel_of(t).divmod(v, n)[1]


@lru_cache(maxsize=128)
def _mont_context(n: FixedUint) -> MontgomeryContext:
    return MontgomeryContext(n)


def _mulmod_image(t, x: int, y: int, n: int) -> int:
    hi, lo = arith_kernel_of(t).lmul(x, y)
    return div_kernel_of(t).rem_wide(hi, lo, n)


def _sqrmod_image(t, x: int, n: int) -> int:
    hi, lo = arith_kernel_of(t).square(x)
    return div_kernel_of(t).rem_wide(hi, lo, n)


def _expmod_image(t, x: int, e: int, n: int) -> int:
    if n & 1:
        return _mont_context(t._wrap(n))._exp(x, e)
    acc = 1
    for i in range(e.bit_length() - 1, -1, -1):
        acc = _sqrmod_image(t, acc, n)
        if (e >> i) & 1:
            acc = _mulmod_image(t, acc, x, n)
    return acc


# -- explicit modulus ------------------------------------------------------------

def reduce(b: FixedUint, n: FixedUint) -> FixedUint:
    """``b mod n``."""
    t = same_type(b, n)
    if not n._v:
        raise ZeroDivisionError("reduction modulo zero")
    return t._wrap(_reduce_image(b._v, n._v, t))


def neg_mod(b: FixedUint, n: FixedUint) -> FixedUint:
    t = same_type(b, n)
    _check_modulus(n)
    x = _reduce_image(b._v, n._v, t)
    return t._wrap(arith_kernel_of(t).sub(n._v, x)[0] if x else 0)


def add_mod(b: FixedUint, c: FixedUint, n: FixedUint) -> FixedUint:
    t = same_type(b, c, n)
    _check_modulus(n)
    nv = n._v
    ar = arith_kernel_of(t)
    s, cy = ar.add(_reduce_image(b._v, nv, t), _reduce_image(c._v, nv, t))
    if cy or s >= nv:
        s = ar.sub(s, nv)[0]
    return t._wrap(s)


def sub_mod(b: FixedUint, c: FixedUint, n: FixedUint) -> FixedUint:
    t = same_type(b, c, n)
    _check_modulus(n)
    nv = n._v
    ar = arith_kernel_of(t)
    d, bw = ar.sub(_reduce_image(b._v, nv, t), _reduce_image(c._v, nv, t))
    if bw:
        d = ar.add(d, nv)[0]
    return t._wrap(d)


def mul_mod(b: FixedUint, c: FixedUint, n: FixedUint) -> FixedUint:
    """``b * c mod n`` by complete product and double-width division."""
    t = same_type(b, c, n)
    _check_modulus(n)
    nv = n._v
    x = _reduce_image(b._v, nv, t)
    y = _reduce_image(c._v, nv, t)
    return t._wrap(_mulmod_image(t, x, y, nv))


def mul_mod_limb(b: FixedUint, c: int, n: FixedUint) -> FixedUint:
    core._check_limb(b, c)
    t = same_type(b, n)
    _check_modulus(n)
    nv = n._v
    x = _reduce_image(b._v, nv, t)
    hi, lo = arith_kernel_of(t).lmul_limb(x, c)
    # (hi*R + lo) mod n == ((hi mod n)*R + lo) mod n
    hi = _reduce_image(hi, nv, t)
    return t._wrap(div_kernel_of(t).rem_wide(hi, lo, nv))


def square_mod(b: FixedUint, n: FixedUint) -> FixedUint:
    t = same_type(b, n)
    _check_modulus(n)
    return t._wrap(_sqrmod_image(t, _reduce_image(b._v, n._v, t), n._v))


def exp_mod(b: FixedUint, c: FixedUint, n: FixedUint) -> FixedUint:
    """``b**c mod n`` (``0**0 == 1``); Montgomery form is used for odd ``n``."""
    t = same_type(b, c, n)
    _check_modulus(n)
    return t._wrap(_expmod_image(t, _reduce_image(b._v, n._v, t), c._v, n._v))


def exp_mod_limb(b: FixedUint, c: int, n: FixedUint) -> FixedUint:
    core._check_limb(b, c)
    t = same_type(b, n)
    _check_modulus(n)
    return t._wrap(_expmod_image(t, _reduce_image(b._v, n._v, t), c, n._v))


def inv_mod(b: FixedUint, n: FixedUint) -> FixedUint:
    """The representative of ``b**-1`` in ``[1, n)``."""
    t = same_type(b, n)
    _check_modulus(n)
    x = t._wrap(_reduce_image(b._v, n._v, t))
    g, u, _ = ext_gcd(x, n)
    if g._v != 1:
        raise NotInvertibleError(b, n, g)
    if u.nonneg:
        return u.magnitude
    return t._wrap(n._v - u.magnitude._v)


def div_mod(b: FixedUint, c: FixedUint, n: FixedUint) -> FixedUint:
    """``b * c**-1 mod n``; raises :class:`NotInvertibleError` if ``c`` is not a unit."""
    return mul_mod(b, inv_mod(c, n), n)


def _check_odd_modulus(n: FixedUint) -> None:
    if n._v < 3 or not n._v & 1:
        raise DomainError(f"an odd prime modulus is required, got {n._v}")


def is_quadratic_residue(a: FixedUint, n: FixedUint) -> bool:
    """Euler's criterion; ``n`` must be an odd prime (not checked)."""
    t = same_type(a, n)
    _check_odd_modulus(n)
    nv = n._v
    x = _reduce_image(a._v, nv, t)
    if not x:
        return True
    return _expmod_image(t, x, nv >> 1, nv) == 1


@lru_cache(maxsize=128)
def _tonelli_constants(n: FixedUint) -> tuple[int, int, int]:
    """``(q, s, c)`` with ``n - 1 == q * 2**s`` and ``c`` the Montgomery image
    of ``z**q`` for the least non-residue ``z``."""
    nv = n._v
    ctx = _mont_context(n)
    q, s = nv - 1, 0
    while not q & 1:
        q >>= 1
        s += 1
    minus_one = nv - 1
    for z in range(2, min(nv, NONRESIDUE_SEARCH_LIMIT)):
        euler = ctx._exp(z, nv >> 1)
        if euler == minus_one:
            return q, s, ctx._pow(ctx._to(z), q)
        if euler != 1:
            raise DomainError(f"{nv} is not prime")
    raise DomainError(f"no quadratic non-residue found modulo {nv}")


def square_root_mod(b: FixedUint, n: FixedUint) -> FixedUint:
    """Some ``a`` with ``a*a == b (mod n)`` for an odd prime ``n``.

    Uses ``b**((n+1)/4)`` when ``n == 3 (mod 4)`` and Tonelli-Shanks
    otherwise.  Raises :class:`NoSquareRootError` for non-residues.
    """
    t = same_type(b, n)
    _check_odd_modulus(n)
    nv = n._v
    x = _reduce_image(b._v, nv, t)
    if x == 0:
        return t._wrap(0)
    ctx = _mont_context(n)
    if nv & 3 == 3:
        root = ctx._exp(x, (nv >> 2) + 1)
        if _sqrmod_image(t, root, nv) != x:
            raise NoSquareRootError(f"{x} is not a square modulo {nv}")
        return t._wrap(root)

    q, s, c = _tonelli_constants(n)
    one = ctx._one
    xbar = ctx._to(x)
    w = ctx._pow(xbar, q >> 1)          # x**((q-1)/2)
    r = ctx._mul(w, xbar)               # x**((q+1)/2)
    u = ctx._mul(ctx._sqr(w), xbar)     # x**q
    m = s
    while u != one:
        # Least i with u**(2**i) == 1; reaching m means x is a non-residue.
        i, v = 0, u
        while v != one:
            v = ctx._sqr(v)
            i += 1
            if i == m:
                raise NoSquareRootError(f"{x} is not a square modulo {nv}")
        f = c
        for _ in range(m - i - 1):
            f = ctx._sqr(f)
        r = ctx._mul(r, f)
        c = ctx._sqr(f)
        u = ctx._mul(u, c)
        m = i
    return t._wrap(ctx._from(r))


# -- ring context ----------------------------------------------------------------

@dataclass(frozen=True)
class ModRing:
    """Integers modulo ``n`` at one fixed width.

    Rings compare equal when their moduli do.  ``mont`` is set for odd ``n``.
    """

    n: FixedUint
    mont: Optional[MontgomeryContext] = field(
        default=None, init=False, compare=False, repr=False)

    def __post_init__(self):
        _check_modulus(self.n)
        if self.n._v & 1:
            object.__setattr__(self, "mont", _mont_context(self.n))

    @property
    def type(self) -> type[FixedUint]:
        return type(self.n)

    @property
    def is_odd(self) -> bool:
        return self.mont is not None

    def __call__(self, a: Union[FixedUint, int]) -> ModElement:
        if isinstance(a, int):
            a = self.type(a % self.n._v)
        return to_element(self, a)

    def zero(self) -> ModElement:
        return ModElement(self, self.type._wrap(0))

    def one(self) -> ModElement:
        return ModElement(self, self.type._wrap(1))


@dataclass(frozen=True)
class ModElement:
    """A residue kept in ``[0, ring.n)``."""

    ring: ModRing
    value: FixedUint

    def __post_init__(self):
        if type(self.value) is not self.ring.type:
            raise TypeError(
                f"value must be {self.ring.type.__name__}, "
                f"got {type(self.value).__name__}")
        if self.value._v >= self.ring.n._v:
            raise DomainError("element value is not reduced modulo the ring")

    def __int__(self) -> int:
        return self.value._v

    def __add__(self, other: ModElement) -> ModElement:
        return e_add(self, other)

    def __sub__(self, other: ModElement) -> ModElement:
        return e_sub(self, other)

    def __mul__(self, other: ModElement) -> ModElement:
        return e_mul(self, other)

    def __truediv__(self, other: ModElement) -> ModElement:
        return e_div(self, other)

    def __neg__(self) -> ModElement:
        return e_neg(self)

    def __pow__(self, c: Union[FixedUint, int]) -> ModElement:
        if isinstance(c, int):
            c = self.ring.type(c)
        return e_exp(self, c)


def ring_new(n: FixedUint) -> ModRing:
    return ModRing(n)


def ring_modulus(r: ModRing) -> FixedUint:
    return r.n


def to_element(r: ModRing, a: FixedUint) -> ModElement:
    t = same_type(a, r.n)
    return ModElement(r, t._wrap(_reduce_image(a._v, r.n._v, t)))


def from_element(e: ModElement) -> FixedUint:
    return e.value


def _same_ring(x: ModElement, y: ModElement) -> ModRing:
    if x.ring != y.ring:
        raise RingMismatchError(
            f"elements of different rings: mod {x.ring.n!r} and mod {y.ring.n!r}")
    return x.ring


def _elem(r: ModRing, v: int) -> ModElement:
    return ModElement(r, r.type._wrap(v))


def e_add(x: ModElement, y: ModElement) -> ModElement:
    r = _same_ring(x, y)
    return ModElement(r, add_mod(x.value, y.value, r.n))


def e_sub(x: ModElement, y: ModElement) -> ModElement:
    r = _same_ring(x, y)
    return ModElement(r, sub_mod(x.value, y.value, r.n))


def e_neg(x: ModElement) -> ModElement:
    return ModElement(x.ring, neg_mod(x.value, x.ring.n))


def e_mul(x: ModElement, y: ModElement) -> ModElement:
    r = _same_ring(x, y)
    if r.mont is None:
        return ModElement(r, mul_mod(x.value, y.value, r.n))
    # REDC(x*y) = x*y/R; a second Montgomery product with R**2 restores x*y.
    m = r.mont
    return _elem(r, m._mul(m._mul(x.value._v, y.value._v), m._r2))


def e_square(x: ModElement) -> ModElement:
    r = x.ring
    if r.mont is None:
        return ModElement(r, square_mod(x.value, r.n))
    m = r.mont
    return _elem(r, m._mul(m._sqr(x.value._v), m._r2))


def e_exp(x: ModElement, c: FixedUint) -> ModElement:
    r = x.ring
    return ModElement(r, exp_mod(x.value, c, r.n))


def e_inv(x: ModElement) -> ModElement:
    return ModElement(x.ring, inv_mod(x.value, x.ring.n))


def e_div(x: ModElement, y: ModElement) -> ModElement:
    _same_ring(x, y)
    return e_mul(x, e_inv(y))


def e_random(rng, r: ModRing) -> ModElement:
    return ModElement(r, core.random_below(rng, r.n))
