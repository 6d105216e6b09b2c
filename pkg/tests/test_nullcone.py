import random
from fractions import Fraction

import pytest

from binforms.catalog import catalog_for
from binforms.exprs import Evaluator
from binforms.forms import BinaryForm, random_form, random_sl2, sl2_act
from binforms.nullcone import (
    is_nullform,
    pair_nullcone_test,
    random_nullform,
    root_multiplicity_max,
    verify_lemma_expansions,
    weyman_check,
)
from binforms.rings import QQ, PrimeField


def lin(a, b):
    return BinaryForm(QQ, 1, (Fraction(a), Fraction(b)))


def test_constructed_multiplicities():
    f = lin(1, -2).power(7) * lin(1, 1).power(2)
    assert root_multiplicity_max(f).max_multiplicity == 7
    rep = root_multiplicity_max(BinaryForm.monomial(QQ, 0, 9))
    assert rep.max_multiplicity == 9 and rep.witness == "point at infinity"


def test_distinct_roots_give_multiplicity_one():
    rng = random.Random(1)
    for _ in range(5):
        roots = rng.sample(range(-40, 40), 9)
        f = lin(1, -roots[0])
        for r in roots[1:]:
            f = f * lin(1, -r)
        assert root_multiplicity_max(f).max_multiplicity == 1


def test_zero_form_sentinel():
    rep = root_multiplicity_max(BinaryForm.zero(QQ, 9))
    assert rep.is_zero_form and rep.max_multiplicity == 10
    assert is_nullform(BinaryForm.zero(QQ, 9))


def test_nullform_threshold():
    assert is_nullform(BinaryForm.monomial(QQ, 5, 4))  # mult 5 > 4.5
    f = BinaryForm.monomial(QQ, 4, 4) * lin(1, 1)
    assert not is_nullform(f)  # max mult 4 <= 4.5


def test_multiplicity_is_sl2_invariant():
    rng = random.Random(2)
    for seed in range(5):
        f = lin(1, -3).power(6) * random_form(QQ, 3, rng)
        if f.is_zero():
            continue
        g = random_sl2(QQ, rng)
        assert (
            root_multiplicity_max(sl2_act(g, f)).max_multiplicity
            == root_multiplicity_max(f).max_multiplicity
        )


def test_nullform_invariance_under_sl2():
    rng = random.Random(3)
    base = BinaryForm.monomial(QQ, 6, 3)  # x^6 y^3, mult 6 > 4.5
    for _ in range(5):
        g = random_sl2(QQ, rng)
        assert is_nullform(sl2_act(g, base))


def test_pair_nullcone_examples():
    x2 = BinaryForm.monomial(QQ, 2, 0)
    assert pair_nullcone_test(x2, BinaryForm.monomial(QQ, 4, 3))
    assert not pair_nullcone_test(x2, BinaryForm.monomial(QQ, 0, 7))
    assert not pair_nullcone_test(
        BinaryForm.monomial(QQ, 1, 1), BinaryForm.monomial(QQ, 4, 3)
    )


def test_pair_nullcone_infinity_root():
    # common root at infinity: y-powers on both sides
    g = BinaryForm.monomial(QQ, 0, 2)
    h = BinaryForm.monomial(QQ, 3, 4)  # y^4 x^3: mult 4 > 3.5
    assert pair_nullcone_test(g, h)


def test_pair_nullcone_symmetry():
    rng = random.Random(4)
    for _ in range(10):
        g = lin(2, -1).power(2) * random_form(QQ, 2, rng)
        h = lin(2, -1).power(4) * random_form(QQ, 3, rng)
        if g.is_zero() or h.is_zero():
            continue
        assert pair_nullcone_test(g, h) == pair_nullcone_test(h, g)


def test_pair_nullcone_rejects_zero():
    with pytest.raises(ValueError):
        pair_nullcone_test(BinaryForm.zero(QQ, 2), BinaryForm.monomial(QQ, 1, 1))


def test_random_nullform_is_deterministic_and_null():
    for seed in range(10):
        f1 = random_nullform(9, QQ, seed)
        f2 = random_nullform(9, QQ, seed)
        assert f1 == f2
        assert is_nullform(f1)


def test_all_low_degree_invariants_vanish_on_nullforms_mod_p():
    gf = PrimeField(32003)
    cat = catalog_for(9)
    names = [e.name for e in cat.invariants() if e.degree <= 12]
    assert len(names) >= 17
    for seed in range(50):
        nf = random_nullform(9, gf, seed)
        ev = Evaluator(nf, cat.defs)
        for name in names:
            assert ev.scalar(cat[name].expr) == 0, (seed, name)


def test_invariants_vanish_exactly_over_rationals():
    for n in (6, 9):
        cat = catalog_for(n)
        invariants = [e for e in cat.invariants()]
        for seed in range(25):
            nf = random_nullform(n, QQ, seed)
            ev = Evaluator(nf, cat.defs)
            for e in invariants:
                assert ev.scalar(e.expr) == 0, (n, seed, e.name)


def test_weyman_monomial_pair():
    v = weyman_check(BinaryForm.monomial(QQ, 8, 1), 2)
    assert v.hypothesis_holds and v.conclusion_holds and v.multiplicity == 8


def test_weyman_generic_vacuous():
    rng = random.Random(5)
    roots = rng.sample(range(-30, 30), 9)
    f = lin(1, -roots[0])
    for r in roots[1:]:
        f = f * lin(1, -r)
    v = weyman_check(f, 2)
    assert not v.hypothesis_holds and v.conclusion_holds is None


def test_weyman_pure_power():
    v = weyman_check(BinaryForm.monomial(QQ, 9, 0), 2)
    assert v.hypothesis_holds and v.conclusion_holds and v.multiplicity == 9


def test_weyman_equality_branch():
    # d = 4k - 4 with k = 3, d = 8: x^6 y^2 has multiplicity 6 = d - k + 1
    v = weyman_check(BinaryForm.monomial(QQ, 6, 2), 3)
    assert v.branch == "d=4k-4"
    assert v.hypothesis_holds and v.conclusion_holds


def test_weyman_branch_precondition():
    with pytest.raises(ValueError):
        weyman_check(BinaryForm.monomial(QQ, 5, 0), 3)  # d = 5 < 4k - 4 = 8


def test_lemma_expansions_all_pass():
    report = verify_lemma_expansions()
    assert report.ok, report.failures()
    assert len(report.checks) == 26
    lemmas = {c.lemma for c in report.checks}
    assert lemmas == {"nonic-multiplicity", "pair-V2+V7", "pair-V6+V3"}


def test_nonic_case1_q_vanishes_on_parametrized_family():
    # The residual branch of the first multiplicity-6 case: with
    # a_i = binom(9-i, 2) c s^(7-i) (i <= 7) and a_8 = a_9 = 0 the sixth
    # self-transvectant vanishes identically, so q = x^6 is impossible there.
    from binforms.forms import transvectant
    from binforms.multipoly import PolynomialRing

    R = PolynomialRing(("c", "s"))
    c, s = R.vars()
    from math import comb

    a = [c * s ** (7 - i) * comb(9 - i, 2) for i in range(8)] + [R.zero, R.zero]
    f = BinaryForm.from_a_convention(R, 9, a)
    assert transvectant(f, f, 6).is_zero()
