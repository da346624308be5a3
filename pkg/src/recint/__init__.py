"""Fixed-precision unsigned integers of width ``2**k`` built by recursive doubling."""

from .arith import (WideProduct, add, add_limb, add_wrapping, arith_kernel,
                    decrement, increment, lmul, lmul_limb, mul_wrapping,
                    square, sub, sub_limb, sub_wrapping)
from .core import (LIMB_BITS, LIMB_LOG2, LIMB_MASK, FixedUint, Ordering,
                   compare, copy, equals_limb, from_hex, get_limb, get_limb0,
                   get_limbn, is_one, is_zero, random, random_below, reset,
                   set_const, set_limb, to_hex, uint)
from .division import (QuotRem, div, div2n1n, div3n2n, div_kernel,
                       div_quotient, div_remainder)
from .errors import (ContractError, DomainError, LimbIndexError,
                     NoSquareRootError, NotInvertibleError, ParseError,
                     RecIntError, RingMismatchError)
from .modular import (ModElement, ModRing, add_mod, div_mod, e_add, e_div,
                      e_exp, e_inv, e_mul, e_neg, e_random, e_square, e_sub,
                      exp_mod, exp_mod_limb, from_element, inv_mod,
                      is_quadratic_residue, mul_mod, mul_mod_limb, neg_mod,
                      reduce, ring_modulus, ring_new, square_mod,
                      square_root_mod, sub_mod, to_element)
from .montgomery import (MontgomeryContext, from_mont, mont_exp, mont_mul,
                         mont_new, mont_square, redc, to_mont)
from .ntheory import ExtGcd, SignedCoeff, ext_gcd, gcd

U64, U128, U256, U512, U1024, U2048, U4096, U8192 = (
    uint(k) for k in range(6, 14))

__version__ = "0.1.0"
