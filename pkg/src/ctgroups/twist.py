"""The twist group <tau> x Aut(F_q) acting on F_q^* = Z/(q-1)."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

from .errors import SpecError


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The finite field with ``q = p**m`` elements."""

    p: int
    m: int = 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise SpecError(f"characteristic {self.p} is not prime")
        if self.m < 1:
            raise SpecError(f"extension degree {self.m} must be positive")
        if self.q < 4:
            raise SpecError(f"the field needs at least 4 elements, got q={self.q}")

    @classmethod
    def from_q(cls, q):
        for p in range(2, q + 1):
            if q % p == 0:
                break
        else:
            raise SpecError(f"q={q} is not a prime power")
        m, r = 0, q
        while r % p == 0:
            r //= p
            m += 1
        if r != 1 or not is_prime(p):
            raise SpecError(f"q={q} is not a prime power")
        return cls(p, m)

    @property
    def q(self):
        return self.p**self.m

    @property
    def modulus(self):
        """Order of the multiplicative group, the modulus of every exponent vector."""
        return self.q - 1

    @property
    def odd(self):
        return self.p != 2

    def __str__(self):
        return f"F_{self.q}"


@dataclass(frozen=True)
class Twist:
    """``tau**(sign == -1) * Frob**frob``, acting on exponents by ``x -> sign * p**frob * x``."""

    field: FieldSpec
    sign: int = 1
    frob: int = 0

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        object.__setattr__(self, "frob", self.frob % self.field.m)

    @classmethod
    def identity(cls, field):
        return cls(field)

    @classmethod
    def tau(cls, field):
        return cls(field, -1, 0)

    @classmethod
    def frobenius(cls, field, e=1):
        return cls(field, 1, e)

    def _same_field(self, other):
        if self.field != other.field:
            raise SpecError(f"twists over different fields: {self.field} and {other.field}")

    def compose(self, other):
        self._same_field(other)
        return Twist(self.field, self.sign * other.sign, self.frob + other.frob)

    __mul__ = compose

    def invert(self):
        return Twist(self.field, self.sign, -self.frob)

    @property
    def is_identity(self):
        return self.sign == 1 and self.frob == 0

    @property
    def multiplier(self):
        """The signed integer ``sign * p**frob``: the canonical lift of the action."""
        return self.sign * self.field.p**self.frob

    def act(self, x):
        return (self.multiplier * x) % self.field.modulus

    @property
    def aut_part(self):
        return Twist(self.field, 1, self.frob)

    @property
    def order(self):
        m = self.field.m
        frob_order = m // gcd(self.frob, m)
        if self.sign == -1 and frob_order % 2:
            return 2 * frob_order
        return frob_order

    def __str__(self):
        if self.is_identity:
            return "id"
        parts = []
        if self.sign == -1:
            parts.append("tau")
        if self.frob:
            parts.append(f"frob^{self.frob}")
        return "*".join(parts)


_LITERAL = re.compile(r"^(?:(id)|(tau)|(?:(tau)\*)?frob(?:\^(-?\d+))?)$")


def parse_twist(text, field):
    """Parse ``id``, ``tau``, ``frob^e`` or ``tau*frob^e`` (``frob`` alone means ``frob^1``)."""
    s = text.replace(" ", "")
    m = _LITERAL.match(s)
    if not m:
        raise SpecError(f"cannot parse twist literal {text!r}")
    if m.group(1):
        return Twist.identity(field)
    if m.group(2):
        return Twist.tau(field)
    e = int(m.group(4)) if m.group(4) is not None else 1
    return Twist(field, -1 if m.group(3) else 1, e)


def all_twists(field):
    return [Twist(field, s, e) for s in (1, -1) for e in range(field.m)]
