from __future__ import annotations

import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ternalg.scalar import (
    I,
    OMEGA,
    OMEGA_BAR,
    ONE,
    SQRT2,
    SQRT3,
    ZERO,
    ZETA,
    CycNum,
    ParseError,
    cyc_add,
    cyc_conj,
    cyc_embed,
    cyc_format,
    cyc_inv,
    cyc_mul,
    cyc_neg,
    cyc_parse,
    cyc_sqrt,
    rationalize,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=7)
cycnums = st.lists(small, min_size=8, max_size=8).map(CycNum)
nonzero = cycnums.filter(bool)


def test_roots_of_unity():
    assert OMEGA * OMEGA_BAR == ONE
    assert OMEGA == CycNum.zeta_power(8)
    assert OMEGA_BAR == CycNum.zeta_power(16)
    assert OMEGA**3 == ONE and OMEGA != ONE
    assert I * I == -ONE
    assert ZETA**24 == ONE and ZETA**12 == -ONE


def test_one_plus_omega_plus_omegabar():
    assert ONE + OMEGA + OMEGA_BAR == ZERO


def test_sqrt2():
    assert SQRT2 * SQRT2 == CycNum.of(2)
    assert SQRT2 == CycNum.zeta_power(3) + CycNum.zeta_power(21)
    assert SQRT3 * SQRT3 == CycNum.of(3)


def test_functional_aliases():
    a, b = cyc_parse("1/2 + i"), cyc_parse("w - r2")
    assert cyc_add(a, b) == a + b
    assert cyc_mul(a, b) == a * b
    assert cyc_neg(a) == -a
    assert cyc_mul(a, cyc_inv(a)) == ONE


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        cyc_inv(ZERO)
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_conj():
    assert cyc_conj(I) == -I
    assert cyc_conj(OMEGA) == OMEGA_BAR
    assert cyc_conj(SQRT2) == SQRT2
    assert cyc_conj(ZETA) == CycNum.zeta_power(23)


def test_embed():
    w = cyc_embed(OMEGA)
    assert w.real == pytest.approx(-0.5, abs=1e-15)
    assert w.imag == pytest.approx(0.8660254037844386, abs=1e-15)
    assert cyc_embed(ZERO) == 0
    assert cyc_embed(SQRT2) == pytest.approx(1.4142135623730951, abs=1e-15)


def test_parse_examples():
    x = cyc_parse("3/32*i")
    assert x.coeffs[6] == Fraction(3, 32)
    assert sum(1 for c in x.coeffs if c) == 1
    g = cyc_parse("-1/4*r2*i")
    assert cyc_embed(g) == pytest.approx(-1j * math.sqrt(2) / 4)
    assert cyc_parse("w") == OMEGA
    assert cyc_parse("wb") == OMEGA_BAR
    assert cyc_parse("z^3 + z^21") == SQRT2
    assert cyc_parse("- 2") == CycNum.of(-2)
    assert cyc_parse("1 - 1/2*z^4") == ONE - CycNum.zeta_power(4) / 2


def test_format_is_canonical():
    assert cyc_format(ZERO) == "0"
    assert cyc_format(CycNum.of(Fraction(-3, 4))) == "-3/4"
    assert cyc_format(I) == "z^6"
    assert cyc_format(OMEGA) == "-1 + z^4"
    assert cyc_format(SQRT2) == "z^1 + z^3 - z^5"


@pytest.mark.parametrize("text,pos", [("3/*i", 1), ("", 0), ("1 +", 3), ("2 i", 2), ("*i", 0), ("q", 0)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as exc:
        cyc_parse(text)
    assert exc.value.pos == pos


def test_sqrt():
    assert cyc_sqrt(CycNum.of(-3)) ** 2 == CycNum.of(-3)
    assert cyc_sqrt(OMEGA) ** 2 == OMEGA
    assert cyc_sqrt(CycNum.of(5)) is None
    assert cyc_sqrt(ZERO) == ZERO


def test_rationalize_recovers_paper_scalars():
    for lit in ["3/32*i", "-3/8*r2*w", "1/8*r2*i", "9/32", "w"]:
        x = cyc_parse(lit)
        assert rationalize(cyc_embed(x)) == x


@given(cycnums, cycnums, cycnums)
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ZERO == a and a * ONE == a
    assert a - a == ZERO


@given(nonzero)
def test_inverse(a):
    assert a * a.inverse() == ONE
    assert (ONE / a) * a == ONE


@given(cycnums, cycnums)
def test_conj_is_involutive_automorphism(a, b):
    assert cyc_conj(cyc_conj(a)) == a
    assert cyc_conj(a * b) == cyc_conj(a) * cyc_conj(b)
    assert cyc_conj(a + b) == cyc_conj(a) + cyc_conj(b)
    assert cyc_embed(cyc_conj(a)) == pytest.approx(cyc_embed(a).conjugate(), abs=1e-9)


@given(cycnums)
def test_parse_format_roundtrip(a):
    assert cyc_parse(cyc_format(a)) == a


@given(cycnums, cycnums)
def test_equality_is_coefficientwise(a, b):
    assert (a == b) == (a.coeffs == b.coeffs)
    if a == b:
        assert hash(a) == hash(b)


@given(cycnums, cycnums)
def test_embedding_is_a_homomorphism(a, b):
    ea, eb = cyc_embed(a), cyc_embed(b)
    scale = max(1.0, abs(ea) * abs(eb))
    assert abs(cyc_embed(a * b) - ea * eb) <= 1e-10 * scale
    assert abs(cyc_embed(a + b) - (ea + eb)) <= 1e-10 * max(1.0, abs(ea) + abs(eb))


def test_embedding_consistency_bulk():
    rng = random.Random(2024)

    def draw():
        return CycNum([Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(8)])

    worst = 0.0
    for _ in range(1000):
        a, b = draw(), draw()
        for exact, approx in ((a * b, cyc_embed(a) * cyc_embed(b)), (a + b, cyc_embed(a) + cyc_embed(b))):
            e = cyc_embed(exact)
            worst = max(worst, abs(e - approx) / max(1.0, abs(e)))
    assert worst <= 1e-10


def test_zeta_embeds_to_the_24th_root():
    assert cyc_embed(ZETA) == pytest.approx(cmath.exp(1j * math.pi / 12))
