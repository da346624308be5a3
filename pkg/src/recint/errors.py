"""Exception hierarchy shared by every recint module."""


class RecIntError(Exception):
    """Base class for all library errors."""


class LimbIndexError(RecIntError, IndexError):
    """A limb index is outside ``[0, nlimbs)``."""


class ParseError(RecIntError, ValueError):
    """Malformed or overflowing text input."""


class DomainError(RecIntError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class NotInvertibleError(DomainError):
    """The value shares a factor with the modulus.

    The offending gcd is kept on ``.gcd`` for diagnostics.
    """

    def __init__(self, value, modulus, gcd):
        self.value = value
        self.modulus = modulus
        self.gcd = gcd
        super().__init__(
            f"{value!r} is not invertible modulo {modulus!r} (gcd = {gcd!r})")


class NoSquareRootError(DomainError):
    """The value is a quadratic non-residue."""


class RingMismatchError(RecIntError, ValueError):
    """Element operands belong to different rings."""


class ContractError(RecIntError, AssertionError):
    """An internal algorithm precondition or bound was violated."""
