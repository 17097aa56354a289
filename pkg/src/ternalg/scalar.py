"""Exact arithmetic in the cyclotomic field Q(zeta_24).

Every scalar that appears in the ternary omega-Lie theory (i, omega, sqrt 2,
sqrt 3 and the rationals) lives in Q(zeta), zeta = exp(i*pi/12).  Elements are
polynomials of degree < 8 in zeta reduced modulo the cyclotomic polynomial
Phi_24(x) = x^8 - x^4 + 1, so the coefficient tuple is a canonical form and
equality is coefficient-wise.

Rationals are :class:`fractions.Fraction`.  The approximate fast path uses the
builtin ``complex`` type.
"""

from __future__ import annotations

import cmath
import itertools
import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

DEGREE = 8
ORDER = 24
#: exponents j with gcd(j, 24) = 1; zeta -> zeta^j are the Galois automorphisms
GALOIS_EXPONENTS = (1, 5, 7, 11, 13, 17, 19, 23)

DEFAULT_TOL = 1e-9

Scalar = Union["CycNum", Fraction, int]


class ParseError(ValueError):
    """Malformed scalar literal; ``pos`` is the 0-based offset of the problem."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


def _reduce_table(count: int) -> list[tuple[int, ...]]:
    # zeta^e as integer coefficient vectors, using zeta^8 = zeta^4 - 1
    rows = []
    cur = [1] + [0] * (DEGREE - 1)
    for _ in range(count):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        cur[4] += top
        cur[0] -= top
    return rows


ZETA_POWERS = _reduce_table(2 * ORDER)
# folding rows for exponents 8..14 that appear in a product of two reduced polys
FOLD = ZETA_POWERS[DEGREE : 2 * DEGREE - 1]
_EMBED = tuple(cmath.exp(1j * math.pi * k / 12) for k in range(DEGREE))


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as a rational coefficient")


class CycNum:
    """An element of Q(zeta_24) in reduced power basis.

    >>> w = CycNum.omega()
    >>> w * w * w == 1
    True
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = (0,)):
        c = [_as_fraction(x) for x in coeffs]
        if len(c) > DEGREE:
            # caller handed an unreduced polynomial
            c = list(_fold_poly(c))
        c.extend([Fraction(0)] * (DEGREE - len(c)))
        self.coeffs: tuple[Fraction, ...] = tuple(c)
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def of(cls, x) -> "CycNum":
        if isinstance(x, CycNum):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact; use cyc_parse")
        if isinstance(x, float):
            raise TypeError("floats are not exact; pass a Fraction or string")
        return cls((_as_fraction(x),))

    @classmethod
    def zeta_power(cls, k: int) -> "CycNum":
        return cls(ZETA_POWERS[k % ORDER])

    @classmethod
    def zero(cls) -> "CycNum":
        return _ZERO

    @classmethod
    def one(cls) -> "CycNum":
        return _ONE

    @classmethod
    def i(cls) -> "CycNum":
        return cls.zeta_power(6)

    @classmethod
    def omega(cls) -> "CycNum":
        return cls.zeta_power(8)

    @classmethod
    def omega_bar(cls) -> "CycNum":
        return cls.zeta_power(16)

    @classmethod
    def sqrt2(cls) -> "CycNum":
        return cls.zeta_power(3) + cls.zeta_power(21)

    @classmethod
    def sqrt3(cls) -> "CycNum":
        return cls.zeta_power(2) + cls.zeta_power(22)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return CycNum(a + b for a, b in zip(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return CycNum(-a for a in self.coeffs)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return CycNum(a - b for a, b in zip(self.coeffs, o.coeffs))

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        nz_a = [(k, x) for k, x in enumerate(a) if x]
        nz_b = [(k, x) for k, x in enumerate(b) if x]
        raw = [Fraction(0)] * (2 * DEGREE - 1)
        for i, x in nz_a:
            for j, y in nz_b:
                raw[i + j] += x * y
        return CycNum(_fold_poly(raw))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = _ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def galois(self, j: int) -> "CycNum":
        """Apply the automorphism zeta -> zeta^j (j coprime to 24)."""
        if math.gcd(j, ORDER) != 1:
            raise ValueError(f"zeta -> zeta^{j} is not an automorphism")
        out = [Fraction(0)] * DEGREE
        for k, c in enumerate(self.coeffs):
            if c:
                for t, z in enumerate(ZETA_POWERS[(j * k) % ORDER]):
                    if z:
                        out[t] += c * z
        return CycNum(out)

    def conj(self) -> "CycNum":
        return self.galois(ORDER - 1)

    def norm(self) -> Fraction:
        """Field norm down to Q (product of all Galois conjugates)."""
        prod = _ONE
        for j in GALOIS_EXPONENTS:
            prod = prod * self.galois(j)
        assert all(c == 0 for c in prod.coeffs[1:]), "norm must be rational"
        return prod.coeffs[0]

    def inverse(self) -> "CycNum":
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(zeta_24)")
        if self.is_rational():
            return CycNum((1 / self.coeffs[0],))
        others = _ONE
        for j in GALOIS_EXPONENTS[1:]:
            others = others * self.galois(j)
        n = (self * others).coeffs[0]
        return others * CycNum((1 / n,))

    # -- predicates / conversion --------------------------------------------

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_real(self) -> bool:
        return self.conj() == self

    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return False
        return self.coeffs == o.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs) if not self.is_rational() else hash(self.coeffs[0])
        return self._hash

    def embed(self) -> complex:
        """Image under zeta -> exp(i*pi/12)."""
        return complex(sum(float(c) * e for c, e in zip(self.coeffs, _EMBED) if c))

    __complex__ = embed

    def real_part(self) -> "CycNum":
        return (self + self.conj()) * Fraction(1, 2)

    def imag_part(self) -> "CycNum":
        return (self - self.conj()) * CycNum.i() * Fraction(-1, 2)

    def sqrt(self) -> "CycNum | None":
        """An exact square root inside Q(zeta_24), or None if there is none."""
        return cyc_sqrt(self)

    def __repr__(self):
        return f"CycNum({cyc_format(self)!r})"

    def __str__(self):
        return cyc_format(self)


def _fold_poly(raw) -> list[Fraction]:
    out = list(raw[:DEGREE]) + [Fraction(0)] * max(0, DEGREE - len(raw))
    for e in range(DEGREE, len(raw)):
        c = raw[e]
        if not c:
            continue
        for t, z in enumerate(ZETA_POWERS[e % ORDER]):
            if z:
                out[t] += c * z
    return out


def _coerce(x):
    if isinstance(x, CycNum):
        return x
    if isinstance(x, (int, Fraction)):
        return CycNum((x,))
    return NotImplemented


_ZERO = CycNum()
_ONE = CycNum((1,))

# module-level aliases for the functional API
ZERO = _ZERO
ONE = _ONE
ZETA = CycNum.zeta_power(1)
I = CycNum.i()
OMEGA = CycNum.omega()
OMEGA_BAR = CycNum.omega_bar()
SQRT2 = CycNum.sqrt2()
SQRT3 = CycNum.sqrt3()


def cyc(x) -> CycNum:
    """Coerce an int, Fraction, CycNum or literal string to a CycNum."""
    if isinstance(x, str):
        return cyc_parse(x)
    return CycNum.of(x)


def cyc_add(a: CycNum, b: CycNum) -> CycNum:
    return a + b


def cyc_mul(a: CycNum, b: CycNum) -> CycNum:
    return a * b


def cyc_neg(a: CycNum) -> CycNum:
    return -a


def cyc_inv(a: CycNum) -> CycNum:
    return a.inverse()


def cyc_conj(a: CycNum) -> CycNum:
    return a.conj()


def cyc_embed(a: CycNum) -> complex:
    return a.embed()


@lru_cache(maxsize=None)
def _galois_embedding_matrix():
    import numpy as np

    z = cmath.exp(1j * math.pi / 12)
    return np.array([[z ** (j * k) for k in range(DEGREE)] for j in GALOIS_EXPONENTS])


def recover_from_embeddings(values) -> CycNum | None:
    """Recover an element from approximate images under all 8 embeddings.

    ``values[t]`` approximates the image of the element under
    zeta -> exp(i*pi*j/12), j = GALOIS_EXPONENTS[t].  Returns None when the
    solved coefficients are not close to small-height rationals.
    """
    import numpy as np

    v = _galois_embedding_matrix()
    coeffs = np.linalg.solve(v, np.asarray(values, dtype=complex))
    if np.max(np.abs(coeffs.imag)) > 1e-7:
        return None
    out = []
    for c in coeffs.real:
        f = Fraction(float(c)).limit_denominator(10**6)
        if abs(float(f) - c) > 1e-7:
            return None
        out.append(f)
    return CycNum(out)


def cyc_sqrt(a: CycNum) -> CycNum | None:
    if not a:
        return _ZERO
    if a.is_rational() and a.coeffs[0] > 0:
        q = a.coeffs[0]
        rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
        if rn * rn == q.numerator and rd * rd == q.denominator:
            return CycNum((Fraction(rn, rd),))
    images = [a.galois(j).embed() for j in GALOIS_EXPONENTS]
    roots = [cmath.sqrt(z) for z in images]
    # embeddings j and 24-j are complex conjugate; pick signs on j < 12 only
    half = [t for t, j in enumerate(GALOIS_EXPONENTS) if j < 12]
    partner = {t: GALOIS_EXPONENTS.index(ORDER - GALOIS_EXPONENTS[t]) for t in half}
    for signs in itertools.product((1, -1), repeat=len(half) - 1):
        vals = [0j] * DEGREE
        for t, s in zip(half, (1,) + signs):
            vals[t] = s * roots[t]
            vals[partner[t]] = (s * roots[t]).conjugate()
        cand = recover_from_embeddings(vals)
        if cand is not None and cand * cand == a:
            return cand
    return None


def rationalize(z: complex, tol: float = 1e-9, maxcoeff: int = 1000) -> CycNum | None:
    """Guess an element of Q(i, sqrt2, sqrt3) close to the complex number z.

    Real and imaginary parts are matched separately against the basis
    1, sqrt2, sqrt3, sqrt6 with an integer relation search.
    """
    import mpmath

    parts = []
    basis = [ONE, SQRT2, SQRT3, SQRT2 * SQRT3]
    for x in (z.real, z.imag):
        if abs(x) < tol:
            parts.append(ZERO)
            continue
        f = Fraction(x).limit_denominator(4096)
        if abs(float(f) - x) < tol:
            parts.append(CycNum.of(f))
            continue
        with mpmath.workdps(30):
            rel = mpmath.pslq(
                [mpmath.mpf(x), 1, mpmath.sqrt(2), mpmath.sqrt(3), mpmath.sqrt(6)],
                tol=tol,
                maxcoeff=maxcoeff,
                maxsteps=10**5,
            )
        if rel is None or rel[0] == 0:
            return None
        val = ZERO
        for r, b in zip(rel[1:], basis):
            val = val + b * Fraction(-r, rel[0])
        if abs(val.embed().real - x) > 10 * tol:
            return None
        parts.append(val)
    return parts[0] + parts[1] * I


# -- literal syntax -----------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<zpow>z\^-?\d+)|(?P<name>wb|w|r2|r3|i|z)|(?P<op>[-+*]))"
)
_NAMED = {"i": I, "w": OMEGA, "wb": OMEGA_BAR, "r2": SQRT2, "r3": SQRT3, "z": ZETA}


def cyc_parse(text: str) -> CycNum:
    """Parse a scalar literal such as ``"-1/4*r2*i"`` or ``"1 - 1/2*z^4"``."""
    pos = 0
    n = len(text)
    total = ZERO
    expect_term = True
    sign = 1
    term: CycNum | None = None
    saw_any = False

    def flush():
        nonlocal total, term
        if term is not None:
            total = total + (term if sign > 0 else -term)
        term = None

    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", text, pos + (len(text[pos:]) - len(text[pos:].lstrip())))
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        tok = m.group(kind)
        pos = m.end()
        if kind == "op" and tok in "+-":
            if expect_term:
                if term is not None:
                    raise ParseError("sign after '*'", text, start)
                sign = sign * (-1 if tok == "-" else 1)
                continue
            flush()
            sign = -1 if tok == "-" else 1
            expect_term = True
            continue
        if kind == "op":  # '*'
            if term is None or expect_term:
                raise ParseError("'*' without a left operand", text, start)
            expect_term = True
            continue
        if not expect_term:
            raise ParseError("missing operator", text, start)
        if kind == "num":
            factor = CycNum.of(Fraction(tok))
        elif kind == "zpow":
            factor = CycNum.zeta_power(int(tok[2:]))
        else:
            factor = _NAMED[tok]
        term = factor if term is None else term * factor
        expect_term = False
        saw_any = True
    if expect_term:
        raise ParseError("literal ends with an operator" if saw_any else "empty literal", text, n)
    flush()
    return total


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def cyc_format(a: CycNum) -> str:
    """Canonical literal: nonzero ``c*z^k`` terms, k ascending."""
    parts = []
    for k, c in enumerate(a.coeffs):
        if not c:
            continue
        mag = abs(c)
        if k == 0:
            body = _fmt_rat(mag)
        elif mag == 1:
            body = f"z^{k}"
        else:
            body = f"{_fmt_rat(mag)}*z^{k}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"
