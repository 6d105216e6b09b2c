"""Root multiplicities, nullform tests, and symbolic lemma verification.

A form of order n lies in the nullcone exactly when it has a projective root
of multiplicity greater than n/2.  Multiplicities are computed over the
rationals with gcd chains (g, g'), (gcd, gcd'), ...; the chain length at which
the gcd becomes constant is the maximal multiplicity among finite roots, and
the point at infinity is handled by splitting off the power of y first.
Nothing here is numeric: the verdicts feed certification logic.

`verify_lemma_expansions` recomputes, over symbolic coefficients, every
displayed covariant expansion and scalar identity used in the three nullcone
reduction lemmas (the nonic case analysis and the two pair-nullcone
reductions for V_2 + V_7 and V_6 + V_3) and compares them against hard-coded
transcriptions, exact constants included.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .forms import BinaryForm, random_sl2, sl2_act, transvectant
from .multipoly import (
    PolynomialRing,
    dense_degree,
    dense_derivative,
    dense_gcd,
    dense_trim,
)
from .rings import QQ, Ring


@dataclass(frozen=True)
class MultiplicityReport:
    max_multiplicity: int
    witness: str
    is_zero_form: bool = False


def _dehomogenize(f: BinaryForm) -> Tuple[int, List[Fraction]]:
    """(power of y dividing f, coefficients of f(x, 1) / y^that, low first)."""
    coeffs = [Fraction(c) for c in f.coeffs]
    b = 0
    while b <= f.order and coeffs[b] == 0:
        b += 1
    # term i contributes coeffs[i] * x^(n - i); x-degree n - i - ... after the
    # y^b split the polynomial in x has degree n - b with leading coeff[b].
    n = f.order
    dense = [Fraction(0)] * (n - b + 1)
    for i in range(b, n + 1):
        dense[n - i] = coeffs[i]
    return b, dense_trim(dense)


def _gcd_chain(dense: List[Fraction]) -> List[List[Fraction]]:
    """g_0 = poly, g_(k+1) = gcd(g_k, g_k'); stops at the first constant."""
    chain = [dense]
    while dense_degree(chain[-1]) > 0:
        g = chain[-1]
        chain.append(dense_gcd(g, dense_derivative(g)))
    return chain


def root_multiplicity_max(f: BinaryForm) -> MultiplicityReport:
    """Largest multiplicity among the projective roots of a rational form."""
    if f.ring != QQ:
        raise ValueError("multiplicity is computed over the rationals")
    if f.is_zero():
        return MultiplicityReport(f.order + 1, "zero form", is_zero_form=True)
    y_mult, dense = _dehomogenize(f)
    if dense_degree(dense) < 1:
        # f = c * y^order (up to the split); only the point at infinity.
        return MultiplicityReport(y_mult, "point at infinity")
    chain = _gcd_chain(dense)
    finite_mult = len(chain) - 1
    if y_mult >= finite_mult:
        return MultiplicityReport(max(y_mult, finite_mult), "point at infinity" if y_mult > finite_mult else _witness(chain, finite_mult))
    return MultiplicityReport(finite_mult, _witness(chain, finite_mult))


def _witness(chain: List[List[Fraction]], mult: int) -> str:
    """The squarefree factor whose roots attain the maximal multiplicity."""
    sf = chain[mult - 1]
    terms = []
    for k in range(dense_degree(sf), -1, -1):
        c = sf[k]
        if c:
            terms.append(f"{c}*z^{k}" if k else f"{c}")
    return "roots of " + " + ".join(terms)


def is_nullform(f: BinaryForm) -> bool:
    """True iff some root has multiplicity > order/2 (zero form included)."""
    report = root_multiplicity_max(f)
    if report.is_zero_form:
        return True
    return 2 * report.max_multiplicity > f.order


def _multiplicity_ge(dense: List[Fraction], k: int) -> List[Fraction]:
    """Squarefree-ish polynomial whose roots have multiplicity >= k + 1."""
    g = dense
    for _ in range(k):
        if dense_degree(g) < 1:
            return []
        g = dense_gcd(g, dense_derivative(g))
    return g


def pair_nullcone_test(g: BinaryForm, h: BinaryForm) -> bool:
    """Common root of multiplicity > n/2 in g and > m/2 in h?

    This membership criterion for the pair nullcone of V_n + V_m is taken as
    the definition.
    """
    if g.is_zero() or h.is_zero():
        raise ValueError("pair test needs nonzero forms")
    yg, dg = _dehomogenize(g)
    yh, dh = _dehomogenize(h)
    n, m = g.order, h.order
    if 2 * yg > n and 2 * yh > m:
        return True
    # Finite roots: multiplicity > n/2 means >= floor(n/2) + 1, i.e. the root
    # survives floor(n/2) gcd-chain steps.
    gg = _multiplicity_ge(dg, n // 2)
    hh = _multiplicity_ge(dh, m // 2)
    if dense_degree(gg) < 1 or dense_degree(hh) < 1:
        return False
    return dense_degree(dense_gcd(gg, hh)) >= 1


def random_nullform(n: int, ring: Ring, seed: int) -> BinaryForm:
    """A seeded random nullform: an SL2 image of x^(floor(n/2)+1) * r(x, y)."""
    if n < 1:
        raise ValueError("order must be >= 1")
    rng = random.Random(f"nullform:{seed}:{n}")
    k = n // 2 + 1
    while True:
        rest = [ring.random(rng) for _ in range(n - k + 1)]
        if not all(ring.is_zero(c) for c in rest):
            break
    base = BinaryForm.monomial(ring, k, 0) * BinaryForm(ring, n - k, rest)
    return sl2_act(random_sl2(ring, rng), base)


@dataclass(frozen=True)
class WeymanVerdict:
    branch: str
    hypothesis_holds: bool
    conclusion_holds: Optional[bool]
    multiplicity: int
    required_multiplicity: int


def weyman_check(f: BinaryForm, k: int) -> WeymanVerdict:
    """Check one instance of the vanishing-transvectants multiplicity bound.

    For d = order(f): if d > 4k - 4 and (f,f)_2k, (f,f)_(2k+2), ... all
    vanish, f has a root of multiplicity d - k + 1; for d = 4k - 4 the
    hypothesis additionally includes ((f,f)_(2k-2), f)_d.
    """
    d = f.order
    if d > 4 * k - 4:
        branch = "d>4k-4"
        hyp = [transvectant(f, f, j) for j in range(2 * k, d + 1, 2)]
    elif d == 4 * k - 4:
        branch = "d=4k-4"
        hyp = [transvectant(transvectant(f, f, 2 * k - 2), f, d)]
        hyp += [transvectant(f, f, j) for j in range(2 * k, d + 1, 2)]
    else:
        raise ValueError(f"branch precondition unmet: d = {d}, k = {k}")
    hypothesis = all(t.is_zero() for t in hyp)
    required = d - k + 1
    if not hypothesis:
        return WeymanVerdict(branch, False, None, -1, required)
    mult = root_multiplicity_max(f).max_multiplicity
    return WeymanVerdict(branch, True, mult >= required, mult, required)


# ---------------------------------------------------------------------------
# Symbolic verification of the displayed lemma expansions.

@dataclass(frozen=True)
class LemmaCheck:
    lemma: str
    label: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class LemmaReport:
    checks: Tuple[LemmaCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> Tuple[LemmaCheck, ...]:
        return tuple(c for c in self.checks if not c.ok)


def _form_from_polys(ring: PolynomialRing, coeffs) -> BinaryForm:
    return BinaryForm(ring, len(coeffs) - 1, coeffs)


def _check_form(checks: list, lemma: str, label: str, got: BinaryForm, expected) -> None:
    want = list(expected)
    ok = list(got.coeffs) == want
    detail = "" if ok else f"got {[str(c) for c in got.coeffs]}"
    checks.append(LemmaCheck(lemma, label, ok, detail))


def _check_scalar(checks: list, lemma: str, label: str, got: BinaryForm, expected) -> None:
    value = got.scalar()
    ok = value == expected
    detail = "" if ok else f"got {value}"
    checks.append(LemmaCheck(lemma, label, ok, detail))


def verify_lemma_expansions() -> LemmaReport:
    """Recompute every displayed expansion of the nullcone lemmas symbolically."""
    checks: List[LemmaCheck] = []
    _nonic_case_checks(checks)
    _pair_v2_v7_checks(checks)
    _pair_v6_v3_checks(checks)
    return LemmaReport(tuple(checks))


def _nonic_ring():
    ring = PolynomialRing(tuple(f"a{i}" for i in range(10)))
    return ring, [ring.var(f"a{i}") for i in range(10)]


def _nonic_case_checks(checks: List[LemmaCheck]) -> None:
    lemma = "nonic-multiplicity"
    ring, a = _nonic_ring()
    zero = ring.zero

    # Generic nonic: p = (f, x^2)_2 = (1/72) sum_{i>=2} binom(9,i) i (i-1) a_i x^(9-i) y^(i-2)
    f = BinaryForm.from_a_convention(ring, 9, a)
    x2 = BinaryForm.monomial(ring, 2, 0)
    p = transvectant(f, x2, 2)
    from math import comb

    # coeffs[j] is the x^(7-j) y^j coefficient; term i lands at j = i - 2.
    expected_p = [
        ring.const(Fraction(comb(9, i) * i * (i - 1), 72)) * a[i] for i in range(2, 10)
    ]
    _check_form(checks, lemma, "case1: p = (f, x^2)_2", p, expected_p)

    # Case l = x^2: with a_6 = ... = a_9 = 0,
    # l = 70 a5^2 y^2 + 28 a4 a5 x y + (70 a4^2 - 112 a3 a5) x^2.
    f1 = BinaryForm.from_a_convention(ring, 9, a[:6] + [zero] * 4)
    l1 = transvectant(f1, f1, 8)
    _check_form(
        checks,
        lemma,
        "case1: l with a6..a9 = 0",
        l1,
        [70 * a[4] ** 2 - 112 * a[3] * a[5], 28 * a[4] * a[5], 70 * a[5] ** 2],
    )

    # Case l = 0, q = x^6: r = (f, x^6)_6 = a9 y^3 + 3 a8 x y^2 + 3 a7 x^2 y + a6 x^3.
    x6 = BinaryForm.monomial(ring, 6, 0)
    r1 = transvectant(f, x6, 6)
    _check_form(
        checks, lemma, "case q=x^6: r = (f, x^6)_6", r1, [a[6], 3 * a[7], 3 * a[8], a[9]]
    )

    # ... then a_8 = a_9 = 0 and the full expansions of q and l.
    f2 = BinaryForm.from_a_convention(ring, 9, a[:8] + [zero, zero])
    q2 = transvectant(f2, f2, 6)
    expected_q2 = [
        -20 * a[3] ** 2 + 30 * a[2] * a[4] - 12 * a[1] * a[5] + 2 * a[0] * a[6],
        -30 * a[3] * a[4] + 54 * a[2] * a[5] - 30 * a[1] * a[6] + 6 * a[0] * a[7],
        -90 * a[4] ** 2 + 114 * a[3] * a[5] - 12 * a[2] * a[6] - 18 * a[1] * a[7],
        -72 * a[4] * a[5] + 124 * a[3] * a[6] - 60 * a[2] * a[7],
        -90 * a[5] ** 2 + 114 * a[4] * a[6] - 12 * a[3] * a[7],
        -30 * a[5] * a[6] + 54 * a[4] * a[7],
        -20 * a[6] ** 2 + 30 * a[5] * a[7],
    ]
    _check_form(checks, lemma, "case q=x^6: q with a8 = a9 = 0", q2, expected_q2)
    l2 = transvectant(f2, f2, 8)
    expected_l2 = [
        70 * a[4] ** 2 - 112 * a[3] * a[5] + 56 * a[2] * a[6] - 16 * a[1] * a[7],
        28 * a[4] * a[5] - 56 * a[3] * a[6] + 40 * a[2] * a[7],
        70 * a[5] ** 2 - 112 * a[4] * a[6] + 56 * a[3] * a[7],
    ]
    _check_form(checks, lemma, "case q=x^6: l with a8 = a9 = 0", l2, expected_l2)

    # Case q = x^5 y: r = (f, x^5 y)_6 = -a8 y^3 - 3 a7 x y^2 - 3 a6 x^2 y - a5 x^3.
    x5y = BinaryForm.monomial(ring, 5, 1)
    r2 = transvectant(f, x5y, 6)
    _check_form(
        checks,
        lemma,
        "case q=x^5y: r = (f, x^5y)_6",
        r2,
        [-a[5], -3 * a[6], -3 * a[7], -a[8]],
    )

    # ... then a_7 = a_8 = 0; the displayed q coefficients and l's y^2 one.
    f3 = BinaryForm.from_a_convention(
        ring, 9, a[:7] + [zero, zero] + [a[9]]
    )
    q3 = transvectant(f3, f3, 6)
    l3 = transvectant(f3, f3, 8)
    displayed = {
        6: -20 * a[6] ** 2 + 2 * a[3] * a[9],
        5: -30 * a[5] * a[6] + 6 * a[2] * a[9],
        4: -90 * a[5] ** 2 + 114 * a[4] * a[6] + 6 * a[1] * a[9],
        2: -90 * a[4] ** 2 + 114 * a[3] * a[5] - 12 * a[2] * a[6],
        1: -30 * a[3] * a[4] + 54 * a[2] * a[5] - 30 * a[1] * a[6],
    }
    for yexp, want in sorted(displayed.items()):
        got = q3.coeffs[yexp]  # coeff of x^(6-yexp) y^yexp
        checks.append(
            LemmaCheck(
                lemma,
                f"case q=x^5y: q coefficient of x^{6-yexp}y^{yexp}",
                got == want,
                "" if got == want else f"got {got}",
            )
        )
    want_c = 70 * a[5] ** 2 - 112 * a[4] * a[6] + 2 * a[1] * a[9]
    got_c = l3.coeffs[2]
    checks.append(
        LemmaCheck(
            lemma,
            "case q=x^5y: l coefficient of y^2",
            got_c == want_c,
            "" if got_c == want_c else f"got {got_c}",
        )
    )
    # Displayed elimination identity: 5 d5 a9 = -75 a4 d0 + 45 a5 d1 - a6 (9c + 22 d2)
    # with c the y^2 coefficient of l and d_i the x^i y^(6-i) coefficients of q.
    c = l3.coeffs[2]
    d = {i: q3.coeffs[6 - i] for i in range(7)}
    lhs = 5 * d[5] * a[9]
    rhs = -75 * a[4] * d[0] + 45 * a[5] * d[1] - a[6] * (9 * c + 22 * d[2])
    checks.append(
        LemmaCheck(
            lemma,
            "case q=x^5y: elimination identity for a9",
            lhs == rhs,
            "" if lhs == rhs else f"lhs - rhs = {lhs - rhs}",
        )
    )

    # Case q = x^4 y (x + y): r = (a7-a8) y^3 + 3(a6-a7) x y^2 + 3(a5-a6) x^2 y + (a4-a5) x^3.
    q_fix = BinaryForm(ring, 6, [zero, ring.one, ring.one, zero, zero, zero, zero])
    r3 = transvectant(f, q_fix, 6)
    _check_form(
        checks,
        lemma,
        "case q=x^4y(x+y): r",
        r3,
        [a[4] - a[5], 3 * (a[5] - a[6]), 3 * (a[6] - a[7]), a[7] - a[8]],
    )

    # ... then a_8 = a_7 = a_6; full q and l expansions.
    f4 = BinaryForm.from_a_convention(
        ring, 9, a[:7] + [a[6], a[6]] + [a[9]]
    )
    q4 = transvectant(f4, f4, 6)
    a0, a1, a2, a3, a4, a5, a6, a9 = (a[i] for i in (0, 1, 2, 3, 4, 5, 6, 9))
    expected_q4 = [
        -2 * (10 * a3 ** 2 - 15 * a2 * a4 + 6 * a1 * a5 - a0 * a6),
        -6 * (5 * a3 * a4 - 9 * a2 * a5 - a0 * a6 + 5 * a1 * a6),
        -6 * (15 * a4 ** 2 - 19 * a3 * a5 - a0 * a6 + 3 * a1 * a6 + 2 * a2 * a6),
        -2 * (36 * a4 * a5 - 3 * a1 * a6 + 30 * a2 * a6 - 62 * a3 * a6 - a0 * a9),
        -6 * (15 * a5 ** 2 + 3 * a2 * a6 + 2 * a3 * a6 - 19 * a4 * a6 - a1 * a9),
        -6 * (5 * a3 * a6 - 9 * a4 * a6 + 5 * a5 * a6 - a2 * a9),
        -2 * (6 * a4 * a6 - 15 * a5 * a6 + 10 * a6 ** 2 - a3 * a9),
    ]
    _check_form(checks, lemma, "case q=x^4y(x+y): q with a8 = a7 = a6", q4, expected_q4)
    l4 = transvectant(f4, f4, 8)
    expected_l4 = [
        2 * (35 * a4 ** 2 - 56 * a3 * a5 + a0 * a6 - 8 * a1 * a6 + 28 * a2 * a6),
        2 * (14 * a4 * a5 - 7 * a1 * a6 + 20 * a2 * a6 - 28 * a3 * a6 + a0 * a9),
        2 * (35 * a5 ** 2 - 8 * a2 * a6 + 28 * a3 * a6 - 56 * a4 * a6 + a1 * a9),
    ]
    _check_form(checks, lemma, "case q=x^4y(x+y): l with a8 = a7 = a6", l4, expected_l4)


def _pair_v2_v7_checks(checks: List[LemmaCheck]) -> None:
    lemma = "pair-V2+V7"
    ring = PolynomialRing(("b1", "b2", "b3", "b4"))
    b1, b2, b3, b4 = ring.vars()
    zero = ring.zero
    # g = x^2, h = y^4 (b1 x^3 + b2 x^2 y + b3 x y^2 + b4 y^3)
    g = BinaryForm.monomial(ring, 2, 0)
    h = BinaryForm(ring, 7, [zero, zero, zero, zero, b1, b2, b3, b4])
    hh6 = transvectant(h, h, 6)
    _check_scalar(
        checks,
        lemma,
        "((h,h)_6, g)_2 = -4/245 b1^2",
        transvectant(hh6, g, 2),
        ring.const(Fraction(-4, 245)) * b1 ** 2,
    )
    _check_scalar(
        checks,
        lemma,
        "((h,h)_4, g^3)_6 = 2/735 (5 b2^2 - 12 b1 b3)",
        transvectant(transvectant(h, h, 4), g.power(3), 6),
        ring.const(Fraction(2, 735)) * (5 * b2 ** 2 - 12 * b1 * b3),
    )
    _check_scalar(
        checks,
        lemma,
        "((h,h)_2, g^5)_10 = -2/147 (3 b3^2 - 7 b2 b4)",
        transvectant(transvectant(h, h, 2), g.power(5), 10),
        ring.const(Fraction(-2, 147)) * (3 * b3 ** 2 - 7 * b2 * b4),
    )
    _check_scalar(
        checks,
        lemma,
        "(h^2, g^7)_14 = b4^2",
        transvectant(h * h, g.power(7), 14),
        b4 ** 2,
    )


def _pair_v6_v3_checks(checks: List[LemmaCheck]) -> None:
    lemma = "pair-V6+V3"
    ring = PolynomialRing(("b1", "b2", "b3"))
    b1, b2, b3 = ring.vars()
    zero = ring.zero
    # g = x^4 (b1 x^2 + b2 x y + b3 y^2)
    g = BinaryForm(ring, 6, [b1, b2, b3, zero, zero, zero, zero])

    # Case h = y^3.
    h = BinaryForm.monomial(ring, 0, 3)
    _check_scalar(
        checks,
        lemma,
        "case h=y^3: ((g^2, g)_6, h^2)_6 = 1/495 b3^3",
        transvectant(transvectant(g * g, g, 6), h * h, 6),
        ring.const(Fraction(1, 495)) * b3 ** 3,
    )
    _check_scalar(
        checks,
        lemma,
        "case h=y^3: (((g,g)_2, g)_1, h^4)_12 = -1/540 b2 (5 b2^2 - 18 b1 b3)",
        transvectant(
            transvectant(transvectant(g, g, 2), g, 1), h.power(4), 12
        ),
        ring.const(Fraction(-1, 540)) * b2 * (5 * b2 ** 2 - 18 * b1 * b3),
    )
    _check_scalar(
        checks,
        lemma,
        "case h=y^3: (g, h^2)_6 = b1",
        transvectant(g, h * h, 6),
        b1,
    )

    # Case h = x y^2.
    h = BinaryForm.monomial(ring, 1, 2)
    _check_scalar(
        checks,
        lemma,
        "case h=xy^2: (g, h^2)_6 = 1/15 b3",
        transvectant(g, h * h, 6),
        ring.const(Fraction(1, 15)) * b3,
    )
    _check_scalar(
        checks,
        lemma,
        "case h=xy^2: (g, (h,h)_2^3)_6 = -8/729 b1",
        transvectant(g, transvectant(h, h, 2).power(3), 6),
        ring.const(Fraction(-8, 729)) * b1,
    )
    _check_scalar(
        checks,
        lemma,
        "case h=xy^2: (g, (h^3, h)_3)_6 = 1/84 b2",
        transvectant(g, transvectant(h.power(3), h, 3), 6),
        ring.const(Fraction(1, 84)) * b2,
    )
