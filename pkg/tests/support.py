"""Helpers shared by the test modules: prime generation and oracle bridges.

Primality uses Miller-Rabin on native ints, which is independent of both the
library and the oracle.
"""

from __future__ import annotations

import random
from functools import lru_cache

from recint import uint
from recint.oracle import BigNat, o_from_fixed

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_probable_prime(n: int, rounds: int = 24, rng=None) -> bool:
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    rng = rng or random.Random(n)
    d, s = n - 1, 0
    while not d & 1:
        d >>= 1
        s += 1
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(bits: int, rng) -> int:
    """Uniform-ish prime with exactly ``bits`` bits."""
    while True:
        c = rng.getrandbits(bits) | 1 | (1 << (bits - 1))
        if is_probable_prime(c):
            return c


@lru_cache(maxsize=None)
def prime_pool(bits: int, count: int, seed: int = 1) -> tuple[int, ...]:
    rng = random.Random(f"primes/{bits}/{seed}")
    return tuple(random_prime(bits, rng) for _ in range(count))


def small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * limit
    sieve[:2] = b"\0\0"
    for i in range(2, int(limit ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i in range(limit) if sieve[i]]


def B(x) -> BigNat:
    """Oracle image of a library value (through its limbs) or of a plain int."""
    if isinstance(x, int):
        return BigNat.from_int(x)
    return o_from_fixed(x)


def fixed(t, x: int):
    return t(x)


U = uint
