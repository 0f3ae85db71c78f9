"""Exact scalar arithmetic over the rationals and prime fields.

A coefficient field is identified by its characteristic: 0 means the
rationals (represented by fractions.Fraction), a prime p means the integers
mod p (represented by int residues in [0, p)).  Elements carry their field
so that cross-field arithmetic fails loudly instead of silently coercing.
"""

from __future__ import annotations

from fractions import Fraction


class FieldMismatchError(ValueError):
    """Raised when combining elements of different coefficient fields."""


def _is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Coefficient field, either QQ (characteristic 0) or GF(p)."""

    __slots__ = ("char",)

    def __init__(self, char):
        char = int(char)
        if char != 0 and not _is_prime(char):
            raise ValueError("field characteristic must be 0 or a prime, got %d" % char)
        object.__setattr__(self, "char", char)

    def __setattr__(self, name, value):
        raise AttributeError("Field is immutable")

    def __eq__(self, other):
        return isinstance(other, Field) and self.char == other.char

    def __hash__(self):
        return hash(("Field", self.char))

    def __repr__(self):
        if self.char == 0:
            return "QQ"
        return "GF(%d)" % self.char

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    def __call__(self, value):
        """Coerce an int, Fraction, FieldElement, or literal string."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError(
                    "cannot coerce element of %r into %r" % (value.field, self)
                )
            return value
        if isinstance(value, str):
            value = Fraction(value)
        if self.char == 0:
            return FieldElement(self, Fraction(value))
        if isinstance(value, Fraction):
            num = value.numerator % self.char
            den = value.denominator % self.char
            if den == 0:
                raise ZeroDivisionError(
                    "denominator of %s vanishes in GF(%d)" % (value, self.char)
                )
            return FieldElement(self, num * pow(den, -1, self.char) % self.char)
        return FieldElement(self, int(value) % self.char)


class FieldElement:
    """A scalar in a fixed coefficient field.

    value is a Fraction when the field is QQ, an int residue in [0, p)
    when the field is GF(p).  Construct through Field.__call__ except in
    hot loops where the representation invariant is already known.
    """

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _check(self, other):
        if not isinstance(other, FieldElement):
            raise TypeError("expected FieldElement, got %r" % type(other).__name__)
        if other.field != self.field:
            raise FieldMismatchError(
                "mixed fields %r and %r" % (self.field, other.field)
            )

    def __add__(self, other):
        self._check(other)
        p = self.field.char
        v = self.value + other.value
        return FieldElement(self.field, v % p if p else v)

    def __sub__(self, other):
        self._check(other)
        p = self.field.char
        v = self.value - other.value
        return FieldElement(self.field, v % p if p else v)

    def __mul__(self, other):
        self._check(other)
        p = self.field.char
        v = self.value * other.value
        return FieldElement(self.field, v % p if p else v)

    def __truediv__(self, other):
        return self * other.inverse()

    def __neg__(self):
        p = self.field.char
        return FieldElement(self.field, (-self.value) % p if p else -self.value)

    def inverse(self):
        if not self.value:
            raise ZeroDivisionError("inverse of zero in %r" % self.field)
        p = self.field.char
        if p:
            return FieldElement(self.field, pow(self.value, -1, p))
        return FieldElement(self.field, Fraction(1) / self.value)

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.field == other.field
            and self.value == other.value
        )

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return bool(self.value)

    def __repr__(self):
        return "%r(%s)" % (self.field, self.value)

    def __str__(self):
        return str(self.value)


QQ = Field(0)


def GF(p):
    """The prime field with p elements; p must be prime."""
    return Field(p)


def field_add(field, a, b):
    return field(a) + field(b)


def field_mul(field, a, b):
    return field(a) * field(b)


def field_neg(field, a):
    return -field(a)


def field_inv(field, a):
    return field(a).inverse()


def characteristic(field):
    return field.char
