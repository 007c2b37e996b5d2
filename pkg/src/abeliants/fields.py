"""Exact coefficient fields: prime fields F_p, the rationals, and a complex adapter.

Field elements are plain Python values (``int`` residues in ``[0, p)`` for F_p,
``Fraction`` for Q, ``complex`` for the inexact adapter).  A ``Field`` object
routes all arithmetic, which keeps hot loops free of per-element wrapper
objects while still carrying the field through every data structure.
"""

from __future__ import annotations

from fractions import Fraction

MAX_PRIME = 1 << 62


class FieldError(ArithmeticError):
    """Raised for invalid field construction or division by zero."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3e24."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
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


class Field:
    """Common interface; subclasses implement exact (or complex) arithmetic."""

    exact = True

    def zero(self):
        return self.of_int(0)

    def one(self):
        return self.of_int(1)

    def of_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        r, b = self.one(), a
        while e:
            if e & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            e >>= 1
        return r

    def is_zero(self, a) -> bool:
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return self.is_zero(self.sub(a, b))

    def random(self, rng):
        """A uniform-ish random element (for property tests)."""
        raise NotImplementedError

    def random_nonzero(self, rng):
        while True:
            a = self.random(rng)
            if not self.is_zero(a):
                return a

    def format(self, a) -> str:
        return str(a)

    def parse(self, s: str):
        raise NotImplementedError

    def descriptor(self) -> dict:
        raise NotImplementedError


class PrimeField(Field):
    """F_p for an odd prime p < 2^62; elements are ints in [0, p)."""

    def __init__(self, p: int):
        if not (2 < p < MAX_PRIME):
            raise FieldError(f"modulus must be an odd prime below 2^62, got {p}")
        if not is_prime(p):
            raise FieldError(f"modulus {p} is not prime")
        self.p = p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def of_int(self, n):
        return n % self.p

    def add(self, a, b):
        c = a + b
        return c - self.p if c >= self.p else c

    def sub(self, a, b):
        c = a - b
        return c + self.p if c < 0 else c

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return self.p - a if a else 0

    def inv(self, a):
        if a == 0:
            raise FieldError("division by zero in F_p")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def random(self, rng):
        return rng.randrange(self.p)

    def sqrt(self, a):
        """A square root of a, or None if a is a non-residue (Tonelli-Shanks)."""
        p = self.p
        if a == 0:
            return 0
        if pow(a, (p - 1) // 2, p) != 1:
            return None
        if p % 4 == 3:
            return pow(a, (p + 1) // 4, p)
        # Tonelli-Shanks
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, tt = 0, t
            while tt != 1:
                tt = tt * tt % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
        return r

    def parse(self, s):
        return int(s) % self.p

    def descriptor(self):
        return {"type": "Fp", "p": self.p}


class RationalField(Field):
    """Q with Fraction elements (always reduced, positive denominator)."""

    def __repr__(self):
        return "RationalField()"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def of_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise FieldError("division by zero in Q")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def random(self, rng):
        return Fraction(rng.randrange(-20, 21), rng.randrange(1, 8))

    def parse(self, s):
        return Fraction(s)

    def descriptor(self):
        return {"type": "Q"}


class ComplexField(Field):
    """Inexact complex numbers; used only by the numeric verification module."""

    exact = False

    def __repr__(self):
        return "ComplexField()"

    def __eq__(self, other):
        return isinstance(other, ComplexField)

    def __hash__(self):
        return hash("CC")

    def of_int(self, n):
        return complex(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise FieldError("division by zero")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def random(self, rng):
        return complex(rng.uniform(-1, 1), rng.uniform(-1, 1))

    def descriptor(self):
        return {"type": "C"}


QQ = RationalField()
CC = ComplexField()


def field_from_descriptor(d: dict) -> Field:
    t = d.get("type")
    if t == "Fp":
        return PrimeField(int(d["p"]))
    if t == "Q":
        return QQ
    raise FieldError(f"unknown field descriptor {d!r}")
