"""Dense arrays over Q(zeta_24) with numpy-backed exact arithmetic.

A :class:`CycArray` stores integer numerators of shape ``shape + (8,)`` (the
last axis holds power-basis coefficients) and one shared positive
denominator.  Numerators are ``int64`` while a conservative magnitude bound
says that is safe and switch to Python-int ``object`` arrays otherwise, so
results are exact regardless of coefficient growth.

Contractions are ``np.einsum`` per pair of nonzero coefficient slots followed
by folding the exponents 8..14 back with zeta^8 = zeta^4 - 1.  Arrays built
from rational data only touch slot 0, which keeps the exhaustive law checks
cheap.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

import numpy as np

from .scalar import DEGREE, FOLD, ZETA_POWERS, CycNum, _EMBED

_INT64_SAFE = 2**62
_FOLD = np.array(FOLD, dtype=np.int64)
_CONJ = np.array([ZETA_POWERS[(-k) % 24] for k in range(DEGREE)], dtype=np.int64)
_EMBED_VEC = np.array(_EMBED, dtype=complex)


def _maxabs(num: np.ndarray) -> int:
    if num.size == 0:
        return 0
    if num.dtype == object:
        return max((abs(int(x)) for x in num.flat), default=0)
    return int(np.max(np.abs(num)))


def _to_object(num: np.ndarray) -> np.ndarray:
    if num.dtype == object:
        return num
    return num.astype(object)


def _fold(raw: np.ndarray) -> np.ndarray:
    out = raw[..., :DEGREE].copy()
    for e in range(DEGREE, raw.shape[-1]):
        col = raw[..., e]
        if not np.any(col):
            continue
        for t in range(DEGREE):
            f = int(_FOLD[e - DEGREE, t])
            if f:
                out[..., t] += f * col
    return out


def _slots(num: np.ndarray) -> list[int]:
    if num.size == 0:
        return []
    mask = np.any(num != 0, axis=tuple(range(num.ndim - 1))) if num.ndim > 1 else num != 0
    return [int(k) for k in np.nonzero(mask)[0]]


class CycArray:
    """Exact array over Q(zeta_24); immutable by convention."""

    __slots__ = ("num", "den")

    def __init__(self, num: np.ndarray, den: int = 1, normalize: bool = True):
        if num.shape[-1:] != (DEGREE,):
            raise ValueError("numerator array must end in an axis of length 8")
        if den <= 0:
            raise ValueError("denominator must be positive")
        if num.dtype != object and num.dtype != np.int64:
            num = num.astype(np.int64)
        self.num = num
        self.den = int(den)
        if normalize:
            self._normalize()

    # -- construction -------------------------------------------------------

    @classmethod
    def zeros(cls, shape) -> "CycArray":
        shape = (shape,) if isinstance(shape, int) else tuple(shape)
        return cls(np.zeros(shape + (DEGREE,), dtype=np.int64), 1, normalize=False)

    @classmethod
    def from_ints(cls, arr) -> "CycArray":
        arr = np.asarray(arr)
        num = np.zeros(arr.shape + (DEGREE,), dtype=np.int64 if arr.dtype != object else object)
        if num.dtype == object:
            num[...] = 0
        num[..., 0] = arr
        return cls(num, 1, normalize=False)

    @classmethod
    def from_cycnums(cls, values) -> "CycArray":
        """Build from a (nested) sequence or object ndarray of CycNum-coercible values."""
        arr = np.asarray(values, dtype=object)
        flat = [CycNum.of(x) for x in arr.flat]
        den = reduce(
            lambda a, b: a * b // math.gcd(a, b),
            (c.denominator for x in flat for c in x.coeffs),
            1,
        )
        num = np.empty((len(flat), DEGREE), dtype=object)
        for r, x in enumerate(flat):
            for k, c in enumerate(x.coeffs):
                num[r, k] = c.numerator * (den // c.denominator)
        num = num.reshape(arr.shape + (DEGREE,))
        out = cls(num, den, normalize=False)
        out._shrink()
        return out

    @classmethod
    def scalar(cls, x) -> "CycArray":
        return cls.from_cycnums(np.array(CycNum.of(x), dtype=object))

    # -- bookkeeping --------------------------------------------------------

    def _shrink(self):
        if self.num.dtype == object and _maxabs(self.num) < _INT64_SAFE:
            self.num = self.num.astype(np.int64)

    def _normalize(self):
        if self.num.size == 0:
            self.den = 1
            return
        if self.num.dtype == object:
            g = reduce(math.gcd, (int(x) for x in self.num.flat), self.den)
        else:
            g = math.gcd(int(np.gcd.reduce(self.num, axis=None)), self.den)
        if g > 1:
            self.num = self.num // g
            self.den //= g
        if not np.any(self.num != 0):
            self.den = 1
        self._shrink()

    @property
    def shape(self) -> tuple[int, ...]:
        return self.num.shape[:-1]

    @property
    def ndim(self) -> int:
        return self.num.ndim - 1

    def __len__(self):
        return self.shape[0]

    def copy(self) -> "CycArray":
        return CycArray(self.num.copy(), self.den, normalize=False)

    def __getitem__(self, idx) -> "CycArray":
        if not isinstance(idx, tuple):
            idx = (idx,)
        if any(i is Ellipsis for i in idx):
            raise IndexError("Ellipsis indexing is not supported on CycArray")
        sub = self.num[idx]
        if sub.ndim == 0 or sub.shape[-1:] != (DEGREE,):
            raise IndexError("index reaches into the coefficient axis")
        return CycArray(sub, self.den)

    def item(self, *idx) -> CycNum:
        v = self.num[idx]
        return CycNum(Fraction(int(c), self.den) for c in v)

    def to_cycnums(self) -> np.ndarray:
        out = np.empty(self.shape, dtype=object)
        for idx in np.ndindex(*self.shape):
            out[idx] = self.item(*idx)
        return out

    def tolist(self):
        return self.to_cycnums().tolist()

    def to_complex(self) -> np.ndarray:
        num = self.num.astype(float) if self.num.dtype != object else np.vectorize(float)(self.num)
        return (num @ _EMBED_VEC) / self.den

    # -- linear structure ---------------------------------------------------

    def _aligned(self, other: "CycArray"):
        den = self.den * other.den // math.gcd(self.den, other.den)
        a, b = self.num, other.num
        fa, fb = den // self.den, den // other.den
        bound = _maxabs(a) * fa + _maxabs(b) * fb
        if bound >= _INT64_SAFE or a.dtype == object or b.dtype == object:
            a, b = _to_object(a), _to_object(b)
        return a * fa, b * fb, den

    def __add__(self, other):
        if not isinstance(other, CycArray):
            return NotImplemented
        a, b, den = self._aligned(other)
        return CycArray(a + b, den)

    def __sub__(self, other):
        if not isinstance(other, CycArray):
            return NotImplemented
        a, b, den = self._aligned(other)
        return CycArray(a - b, den)

    def __neg__(self):
        return CycArray(-self.num, self.den, normalize=False)

    def scale(self, c) -> "CycArray":
        """Multiply every entry by the scalar c."""
        return CycArray.einsum("...,->...", self, CycArray.scalar(c))

    def __mul__(self, other):
        if isinstance(other, CycArray):
            return self.multiply(other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def multiply(self, other: "CycArray") -> "CycArray":
        """Elementwise product with broadcasting over the leading axes."""
        return CycArray.einsum("...,...->...", self, other)

    def conj(self) -> "CycArray":
        num = self.num
        if num.dtype == object:
            out = np.zeros_like(num)
            for k in range(DEGREE):
                for t in range(DEGREE):
                    if _CONJ[k, t]:
                        out[..., t] += int(_CONJ[k, t]) * num[..., k]
            return CycArray(out, self.den)
        return CycArray(num @ _CONJ, self.den)

    def real_part(self) -> "CycArray":
        return (self + self.conj()).scale(Fraction(1, 2))

    def imag_part(self) -> "CycArray":
        return (self - self.conj()).scale(CycNum.i() * Fraction(-1, 2))

    def sum(self, axis) -> "CycArray":
        if axis < 0:
            axis += self.ndim
        return CycArray(self.num.sum(axis=axis), self.den)

    def permute(self, spec: str) -> "CycArray":
        """Single-operand einsum on the leading axes, e.g. ``"abcm->bacm"``."""
        src, dst = spec.split("->")
        return CycArray(np.einsum(f"{src}z->{dst}z", self.num), self.den, normalize=False)

    @staticmethod
    def stack(arrays, axis: int = 0) -> "CycArray":
        arrays = list(arrays)
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (x.den for x in arrays), 1)
        nums = [x.num * (den // x.den) for x in arrays]
        if any(n.dtype == object for n in nums) or max(_maxabs(n) for n in nums) >= _INT64_SAFE:
            nums = [_to_object(n) for n in nums]
        return CycArray(np.stack(nums, axis=axis), den)

    # -- products -----------------------------------------------------------

    @staticmethod
    def einsum(spec: str, a: "CycArray", b: "CycArray") -> "CycArray":
        """Two-operand einsum over the leading axes with exact field products."""
        lhs, out_axes = spec.split("->")
        sa, sb = lhs.split(",")
        sizes = {}
        for s, arr in ((sa, a), (sb, b)):
            if "..." not in s:
                for ch, n in zip(s, arr.shape):
                    sizes[ch] = n
        summed = [ch for ch in set(sa + sb) if ch not in out_axes and ch != "."]
        length = math.prod(sizes.get(ch, 1) for ch in summed) or 1
        bound = _maxabs(a.num) * _maxabs(b.num) * length * DEGREE * 4
        na, nb = a.num, b.num
        if bound >= _INT64_SAFE or na.dtype == object or nb.dtype == object:
            na, nb = _to_object(na), _to_object(nb)
        slots_a, slots_b = _slots(na), _slots(nb)
        out_shape = None
        raw = None
        for i in slots_a:
            for j in slots_b:
                term = np.einsum(spec, na[..., i], nb[..., j])
                if raw is None:
                    out_shape = np.shape(term)
                    raw = np.zeros(tuple(out_shape) + (2 * DEGREE - 1,), dtype=na.dtype)
                raw[..., i + j] += term
        if raw is None:
            zero = np.einsum(spec, na[..., 0], nb[..., 0])
            raw = np.zeros(np.shape(zero) + (2 * DEGREE - 1,), dtype=na.dtype)
        return CycArray(_fold(raw), a.den * b.den)

    @staticmethod
    def chain(spec: str, *operands: "CycArray") -> "CycArray":
        """Multi-operand einsum evaluated left to right in pairs.

        ``spec`` is a normal einsum string; intermediate index sets keep every
        index still needed later or in the output.
        """
        lhs, out = spec.split("->")
        subs = lhs.split(",")
        if len(subs) != len(operands):
            raise ValueError("operand count does not match subscripts")
        acc, acc_sub = operands[0], subs[0]
        for k in range(1, len(subs)):
            later = set(out).union(*subs[k + 1 :]) if k + 1 < len(subs) else set(out)
            keep = "".join(dict.fromkeys(ch for ch in acc_sub + subs[k] if ch in later))
            acc = CycArray.einsum(f"{acc_sub},{subs[k]}->{keep}", acc, operands[k])
            acc_sub = keep
        if acc_sub != out:
            acc = acc.permute(f"{acc_sub}->{out}")
        return acc

    # -- comparisons --------------------------------------------------------

    def nonzero_mask(self) -> np.ndarray:
        return np.any(self.num != 0, axis=-1)

    def is_zero(self) -> bool:
        return not np.any(self.num != 0)

    def __eq__(self, other):
        if not isinstance(other, CycArray):
            return NotImplemented
        if self.shape != other.shape:
            return False
        return (self - other).is_zero()

    def __repr__(self):
        return f"CycArray(shape={self.shape}, den={self.den}, dtype={self.num.dtype})"
