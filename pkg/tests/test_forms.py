import random
from fractions import Fraction
from math import comb

import pytest

from binforms.forms import (
    BinaryForm,
    mixed_partial,
    random_form,
    random_sl2,
    sl2_act,
    transvectant,
)
from binforms.multipoly import PolynomialRing
from binforms.rings import QQ, PrimeField

GF = PrimeField(32003)


def test_form_construction_and_zero():
    f = BinaryForm.zero(QQ, 4)
    assert f.is_zero() and f.order == 4 and len(f.coeffs) == 5
    with pytest.raises(ValueError):
        BinaryForm(QQ, 3, [1, 2, 3])  # wrong length


def test_a_convention_weights():
    f = BinaryForm.from_a_convention(QQ, 9, [Fraction(1)] * 10)
    assert [int(c) for c in f.coeffs] == [comb(9, i) for i in range(10)]


def test_zeroth_transvectant_is_product():
    rng = random.Random(1)
    for _ in range(5):
        g = random_form(QQ, 5, rng)
        h = random_form(QQ, 3, rng)
        assert transvectant(g, h, 0) == g * h


def test_odd_self_transvectant_vanishes():
    rng = random.Random(2)
    for order in (4, 7, 9):
        g = random_form(QQ, order, rng)
        for i in range(0, order, 2):
            assert transvectant(g, g, i + 1).is_zero()


def test_transvectant_index_and_ring_errors():
    g = random_form(QQ, 4, random.Random(0))
    h = random_form(QQ, 2, random.Random(1))
    with pytest.raises(ValueError):
        transvectant(g, h, 3)
    hp = random_form(GF, 2, random.Random(1))
    with pytest.raises(ValueError):
        transvectant(g, hp, 1)


def test_antisymmetry():
    rng = random.Random(3)
    g = random_form(QQ, 6, rng)
    h = random_form(QQ, 4, rng)
    for p in range(5):
        lhs = transvectant(g, h, p)
        rhs = transvectant(h, g, p)
        assert lhs == (rhs if p % 2 == 0 else -rhs)


def test_bilinearity():
    rng = random.Random(4)
    g1 = random_form(QQ, 5, rng)
    g2 = random_form(QQ, 5, rng)
    h = random_form(QQ, 4, rng)
    c = Fraction(3, 7)
    left = transvectant(g1 + g2.scale(c), h, 3)
    right = transvectant(g1, h, 3) + transvectant(g2, h, 3).scale(c)
    assert left == right


def test_nonic_l_expansion_symbolically():
    # with a_6 = ... = a_9 = 0 the eighth self-transvectant collapses to
    # 70 a5^2 y^2 + 28 a4 a5 x y + (70 a4^2 - 112 a3 a5) x^2
    R = PolynomialRing(tuple(f"a{i}" for i in range(10)))
    a = [R.var(f"a{i}") for i in range(10)]
    f = BinaryForm.from_a_convention(R, 9, a[:6] + [R.zero] * 4)
    l = transvectant(f, f, 8)
    assert l.coeffs[2] == 70 * a[5] ** 2
    assert l.coeffs[1] == 28 * a[4] * a[5]
    assert l.coeffs[0] == 70 * a[4] ** 2 - 112 * a[3] * a[5]


def test_pair_scalar_identity_symbolically():
    # ((h,h)_6, g)_2 = -4/245 b1^2 for g = x^2, h = y^4(b1 x^3 + ... + b4 y^3)
    R = PolynomialRing(("b1", "b2", "b3", "b4"))
    b1, b2, b3, b4 = R.vars()
    g = BinaryForm.monomial(R, 2, 0)
    h = BinaryForm(R, 7, [R.zero] * 4 + [b1, b2, b3, b4])
    v = transvectant(transvectant(h, h, 6), g, 2)
    assert v.scalar() == R.const(Fraction(-4, 245)) * b1 ** 2


def test_mixed_partial_closed_form():
    rng = random.Random(5)
    f = random_form(QQ, 7, rng)

    def diff_x(g):
        return BinaryForm(
            g.ring, g.order - 1,
            [g.coeffs[i] * (g.order - i) for i in range(g.order)],
        )

    def diff_y(g):
        return BinaryForm(
            g.ring, g.order - 1,
            [g.coeffs[i + 1] * (i + 1) for i in range(g.order)],
        )

    step = diff_y(diff_y(diff_x(f)))
    assert mixed_partial(f, 1, 2) == step


def test_act_identity_and_diagonal():
    f = random_form(QQ, 5, random.Random(6))
    ident = ((QQ.one, QQ.zero), (QQ.zero, QQ.one))
    assert sl2_act(ident, f) == f
    lam = Fraction(3)
    diag = ((lam, QQ.zero), (QQ.zero, 1 / lam))
    xn = BinaryForm.monomial(QQ, 5, 0)
    acted = sl2_act(diag, xn)
    assert acted.coeffs[0] == lam ** -5
    assert all(c == 0 for c in acted.coeffs[1:])


def test_act_requires_det_one():
    f = random_form(QQ, 3, random.Random(7))
    bad = ((Fraction(2), QQ.zero), (QQ.zero, Fraction(2)))
    with pytest.raises(ValueError):
        sl2_act(bad, f)


def test_act_is_a_group_action():
    rng = random.Random(8)
    f = random_form(QQ, 6, rng)
    g1 = random_sl2(QQ, rng)
    g2 = random_sl2(QQ, rng)
    prod = (
        (
            g1[0][0] * g2[0][0] + g1[0][1] * g2[1][0],
            g1[0][0] * g2[0][1] + g1[0][1] * g2[1][1],
        ),
        (
            g1[1][0] * g2[0][0] + g1[1][1] * g2[1][0],
            g1[1][0] * g2[0][1] + g1[1][1] * g2[1][1],
        ),
    )
    assert sl2_act(prod, f) == sl2_act(g1, sl2_act(g2, f))


def test_transvectant_equivariance():
    # (g.q, g.h)_p = g.(q, h)_p over the rationals
    rng = random.Random(9)
    q = random_form(QQ, 5, rng)
    h = random_form(QQ, 4, rng)
    g = random_sl2(QQ, rng)
    for p in range(5):
        assert transvectant(sl2_act(g, q), sl2_act(g, h), p) == sl2_act(
            g, transvectant(q, h, p)
        )


def test_clebsch_gordan_order_dimensions():
    # sum of target dims over the transvectant indices matches dim Vm x dim Vn
    for m in range(1, 8):
        for n in range(1, m + 1):
            total = sum(m + n - 2 * p + 1 for p in range(n + 1))
            assert total == (m + 1) * (n + 1)
