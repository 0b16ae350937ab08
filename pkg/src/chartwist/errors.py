"""Shared exception types."""


class ChartwistError(Exception):
    """Base class for all library errors."""


class OrderCapExceeded(ChartwistError):
    """A group enumeration or search exceeded the configured order cap."""


class SearchBudgetExceeded(ChartwistError):
    """A backtracking search exceeded its node budget."""


class ParseError(ChartwistError, ValueError):
    """A group spec or serialized object failed to parse."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnknownName(ChartwistError, ValueError):
    """A group spec names no catalog group."""


class DivisionByZero(ChartwistError, ZeroDivisionError):
    """Exact division by the zero element."""


class NotCoprime(ChartwistError, ValueError):
    """Galois automorphism exponent not coprime to the conductor."""


class NotAnInteger(ChartwistError, ValueError):
    """Conversion to integer requested for a non-integer value."""


class NonIntegralFusion(ChartwistError):
    """Fusion constants failed integrality; indicates a broken table."""


class NoDegreeMap(ChartwistError):
    """Bounded search found no degree map."""


class NotRigid(ChartwistError):
    """Operation requires a semiring with conjugation."""


class NotCommutative(ChartwistError):
    """Operation requires a commutative semiring or algebra."""


class NotSemisimple(ChartwistError):
    """Eigenstructure is degenerate or not split by supported cyclotomic fields."""


class NotAHomomorphism(ChartwistError):
    """Generator images do not extend to a group homomorphism."""


class NotAbelian(ChartwistError):
    """Operation requires an abelian (sub)group."""


class NoDualIdentification(ChartwistError):
    """No self-duality pairing available for the twist subgroup."""


class NotCocommutative(ChartwistError):
    """group_likes requires a cocommutative twisted coproduct."""


class NotClassPreserving(ChartwistError):
    """No invertible intertwiner exists; automorphism was not class-preserving."""
