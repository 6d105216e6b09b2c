"""Binary forms, transvectants, and the SL2 change-of-variables action.

A form of order n is stored as the raw coefficient vector c with
f = sum_i c[i] * x^(n-i) * y^i.  The classical literature often writes
f = sum_i binom(n, i) * a_i * x^(n-i) * y^i instead; `from_a_convention`
builds a form from such a_i so fixtures can be transcribed literally.

The p-th transvectant of g (order m) and h (order n) is

    (g, h)_p = (m-p)! (n-p)! / (m! n!) *
               sum_{i=0}^{p} (-1)^i binom(p, i)
                   d^p g / dx^(p-i) dy^i  *  d^p h / dx^i dy^(p-i)

a form of order m + n - 2p.  The prefactor is computed exactly over the
rationals and mapped into the scalar ring, so a prime dividing one of the
factorials is rejected rather than silently wrapped.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb, factorial

from .rings import Ring


class BinaryForm:
    """Homogeneous two-variable form with coefficients in a scalar ring."""

    __slots__ = ("ring", "order", "coeffs")

    def __init__(self, ring: Ring, order: int, coeffs):
        coeffs = tuple(coeffs)
        if order < 0 or len(coeffs) != order + 1:
            raise ValueError(
                f"order {order} needs {order + 1} coefficients, got {len(coeffs)}"
            )
        self.ring = ring
        self.order = order
        self.coeffs = coeffs

    @classmethod
    def zero(cls, ring: Ring, order: int) -> "BinaryForm":
        return cls(ring, order, [ring.zero] * (order + 1))

    @classmethod
    def from_a_convention(cls, ring: Ring, order: int, a) -> "BinaryForm":
        """Build sum_i binom(n, i) * a_i * x^(n-i) * y^i from the a_i."""
        a = list(a)
        if len(a) != order + 1:
            raise ValueError("coefficient count does not match order")
        return cls(
            ring, order, [ring.mul_int(ai, comb(order, i)) for i, ai in enumerate(a)]
        )

    @classmethod
    def monomial(cls, ring: Ring, xexp: int, yexp: int, coeff=None) -> "BinaryForm":
        """The form c * x^xexp * y^yexp."""
        n = xexp + yexp
        cs = [ring.zero] * (n + 1)
        cs[yexp] = ring.one if coeff is None else coeff
        return cls(ring, n, cs)

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(c) for c in self.coeffs)

    def scalar(self):
        """The value of an order-0 form."""
        if self.order != 0:
            raise ValueError(f"form of order {self.order} is not a scalar")
        return self.coeffs[0]

    def _check(self, other: "BinaryForm"):
        if self.ring != other.ring:
            raise ValueError("scalar ring mismatch")

    def __add__(self, other):
        self._check(other)
        if self.order != other.order:
            raise ValueError("cannot add forms of different orders")
        add = self.ring.add
        return BinaryForm(
            self.ring, self.order, [add(a, b) for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other):
        self._check(other)
        if self.order != other.order:
            raise ValueError("cannot subtract forms of different orders")
        sub = self.ring.sub
        return BinaryForm(
            self.ring, self.order, [sub(a, b) for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __neg__(self):
        return BinaryForm(self.ring, self.order, [self.ring.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        """Product of forms; orders add."""
        self._check(other)
        return BinaryForm(
            self.ring,
            self.order + other.order,
            self.ring.poly_mul(list(self.coeffs), list(other.coeffs)),
        )

    def scale(self, c) -> "BinaryForm":
        mul = self.ring.mul
        return BinaryForm(self.ring, self.order, [mul(c, v) for v in self.coeffs])

    def scale_int(self, k: int) -> "BinaryForm":
        mul_int = self.ring.mul_int
        return BinaryForm(self.ring, self.order, [mul_int(v, k) for v in self.coeffs])

    def power(self, k: int) -> "BinaryForm":
        if k < 1:
            raise ValueError("power must be >= 1")
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def __eq__(self, other):
        return (
            isinstance(other, BinaryForm)
            and other.ring == self.ring
            and other.order == self.order
            and all(self.ring.eq(a, b) for a, b in zip(self.coeffs, other.coeffs))
        )

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"BinaryForm(order={self.order}, coeffs={list(self.coeffs)})"


def _falling(x: int, t: int) -> int:
    r = 1
    for k in range(t):
        r *= x - k
    return r


def mixed_partial(f: BinaryForm, xderivs: int, yderivs: int) -> BinaryForm:
    """d^(a+b) f / dx^a dy^b, computed from the closed coefficient formula."""
    m = f.order
    a, b = xderivs, yderivs
    if a + b > m:
        return BinaryForm.zero(f.ring, 0)
    mul_int = f.ring.mul_int
    out = []
    for k in range(m - a - b + 1):
        s = _falling(m - k - b, a) * _falling(k + b, b)
        out.append(mul_int(f.coeffs[k + b], s))
    return BinaryForm(f.ring, m - a - b, out)


def transvectant(g: BinaryForm, h: BinaryForm, p: int) -> BinaryForm:
    """The p-th transvectant (g, h)_p, a form of order m + n - 2p."""
    if g.ring != h.ring:
        raise ValueError("scalar ring mismatch")
    m, n = g.order, h.order
    if p < 0 or p > min(m, n):
        raise ValueError(f"transvectant index {p} exceeds min(order) = {min(m, n)}")
    ring = g.ring
    acc = BinaryForm.zero(ring, m + n - 2 * p)
    for i in range(p + 1):
        dg = mixed_partial(g, p - i, i)
        dh = mixed_partial(h, i, p - i)
        term = (dg * dh).scale_int((-1) ** i * comb(p, i))
        acc = acc + term
    pref = Fraction(
        factorial(m - p) * factorial(n - p), factorial(m) * factorial(n)
    )
    return acc.scale(ring.from_fraction(pref))


def sl2_act(mat, f: BinaryForm) -> BinaryForm:
    """Apply g in SL2 to f via (g . f)(v) = f(g^-1 v); order is preserved.

    `mat` is ((a, b), (c, d)) with entries in f's ring and determinant 1.
    """
    ring = f.ring
    (a, b), (c, d) = mat
    det = ring.sub(ring.mul(a, d), ring.mul(b, c))
    if not ring.eq(det, ring.one):
        raise ValueError("matrix determinant is not 1")
    # g^-1 = ((d, -b), (-c, a)); substitute x -> d x - b y, y -> -c x + a y.
    lx = BinaryForm(ring, 1, (d, ring.neg(b)))
    ly = BinaryForm(ring, 1, (ring.neg(c), a))
    n = f.order
    powx = [BinaryForm(ring, 0, (ring.one,))]
    powy = [BinaryForm(ring, 0, (ring.one,))]
    for _ in range(n):
        powx.append(powx[-1] * lx)
        powy.append(powy[-1] * ly)
    out = BinaryForm.zero(ring, n)
    for i, ci in enumerate(f.coeffs):
        if ring.is_zero(ci):
            continue
        out = out + (powx[n - i] * powy[i]).scale(ci)
    return out


def random_form(ring: Ring, order: int, rng: random.Random) -> BinaryForm:
    return BinaryForm(ring, order, [ring.random(rng) for _ in range(order + 1)])


def random_sl2(ring: Ring, rng: random.Random):
    """A random determinant-1 matrix (product of unit triangulars)."""
    b = ring.random(rng)
    c = ring.random(rng)
    # ((1, 0), (c, 1)) * ((1, b), (0, 1)) = ((1, b), (c, c*b + 1))
    return (
        (ring.one, b),
        (c, ring.add(ring.mul(c, b), ring.one)),
    )
