"""Scalar rings: exact rationals, prime fields, and dual numbers.

Ring objects operate on plain unboxed values so the inner loops of covariant
evaluation stay cheap:

* rationals are `fractions.Fraction`,
* prime-field elements are ints in [0, p),
* dual numbers are (value, slope) pairs of prime-field elements with
  eps**2 = 0, used for exact forward-mode derivatives.

Polynomial rings (with `MultiPoly` elements) live in `multipoly` and follow
the same protocol.
"""

from __future__ import annotations

import random
from fractions import Fraction

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


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
    for a in _MR_BASES:
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


class Ring:
    """Protocol base class; operations act on plain element values."""

    zero: object
    one: object

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def eq(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return self.eq(a, self.zero)

    def from_int(self, k: int):
        raise NotImplementedError

    def from_fraction(self, q: Fraction):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def mul_int(self, a, k: int):
        """a * k for an integer k; overridden where a faster path exists."""
        return self.mul(a, self.from_int(k))

    def poly_mul(self, xs: list, ys: list) -> list:
        """Convolution of two coefficient lists over this ring."""
        out = [self.zero] * (len(xs) + len(ys) - 1)
        for i, a in enumerate(xs):
            if self.is_zero(a):
                continue
            for j, b in enumerate(ys):
                out[i + j] = self.add(out[i + j], self.mul(a, b))
        return out

    def random(self, rng: random.Random):
        raise NotImplementedError


class RationalField(Ring):
    """The rationals, with `fractions.Fraction` values (always reduced)."""

    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def from_int(self, k):
        return Fraction(k)

    def from_fraction(self, q):
        return q

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def mul_int(self, a, k):
        return a * k

    def random(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class PrimeField(Ring):
    """F_p for an odd prime p; elements are ints fully reduced into [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if p == 2 or not is_prime(p):
            raise ValueError(f"modulus {p} is not an odd prime")
        self.p = p

    zero = 0
    one = 1

    def add(self, a, b):
        s = a + b
        return s - self.p if s >= self.p else s

    def sub(self, a, b):
        s = a - b
        return s + self.p if s < 0 else s

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return self.p - a if a else 0

    def from_int(self, k):
        return k % self.p

    def from_fraction(self, q):
        den = q.denominator % self.p
        if den == 0:
            raise ZeroDivisionError(
                f"denominator {q.denominator} is divisible by p={self.p}"
            )
        return q.numerator % self.p * pow(den, -1, self.p) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def mul_int(self, a, k):
        return a * k % self.p

    def poly_mul(self, xs, ys):
        # Delayed reduction: accumulate exact integer convolutions, then
        # reduce once per output coefficient.
        out = [0] * (len(xs) + len(ys) - 1)
        for i, a in enumerate(xs):
            if a:
                for j, b in enumerate(ys):
                    out[i + j] += a * b
        p = self.p
        return [v % p for v in out]

    def random(self, rng):
        return rng.randrange(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class DualNumbers(Ring):
    """Dual numbers a + b*eps (eps**2 = 0) over a prime field.

    Evaluating a polynomial map at (a + eps) yields (value, derivative),
    giving exact forward-mode differentiation over F_p.
    """

    __slots__ = ("field", "zero", "one")

    def __init__(self, field: PrimeField):
        self.field = field
        self.zero = (0, 0)
        self.one = (1, 0)

    def lift(self, a, slope=0):
        return (a % self.field.p, slope % self.field.p)

    def add(self, a, b):
        f = self.field
        return (f.add(a[0], b[0]), f.add(a[1], b[1]))

    def sub(self, a, b):
        f = self.field
        return (f.sub(a[0], b[0]), f.sub(a[1], b[1]))

    def mul(self, a, b):
        p = self.field.p
        return (a[0] * b[0] % p, (a[0] * b[1] + a[1] * b[0]) % p)

    def neg(self, a):
        f = self.field
        return (f.neg(a[0]), f.neg(a[1]))

    def from_int(self, k):
        return (k % self.field.p, 0)

    def from_fraction(self, q):
        return (self.field.from_fraction(q), 0)

    def inv(self, a):
        # (a + b eps)^-1 = a^-1 - b a^-2 eps, needs a invertible.
        ia = self.field.inv(a[0])
        p = self.field.p
        return (ia, (p - a[1]) * ia % p * ia % p)

    def mul_int(self, a, k):
        p = self.field.p
        return (a[0] * k % p, a[1] * k % p)

    def random(self, rng):
        return (self.field.random(rng), 0)

    def __eq__(self, other):
        return isinstance(other, DualNumbers) and other.field == self.field

    def __hash__(self):
        return hash(("DualNumbers", self.field.p))

    def __repr__(self):
        return f"Dual({self.field!r})"
