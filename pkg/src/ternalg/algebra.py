"""Finite-dimensional ternary algebras given by structure tensors.

A :class:`TernaryAlgebra` stores the product tensor ``P[m, i, j, k]``, the
m-th coordinate of e_i . e_j . e_k.  In ``"trilinear"`` mode the product is
extended C-trilinearly; in ``"conjugate-mid"`` mode the coordinates of the
middle factor are conjugated first, so the product is conjugate-linear in
the second slot and the brackets built from it are only R-linear.

R-linear objects are handled on the realified basis
{e_1, ..., e_n, i e_1, ..., i e_n}: the *working* tensors of a
conjugate-mid algebra have dimension 2n and entries in the real subfield.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .cycarray import CycArray
from .scalar import I, OMEGA, OMEGA_BAR, ONE, ZERO, CycNum, cyc_format, cyc_parse

TRILINEAR = "trilinear"
CONJUGATE_MID = "conjugate-mid"
MODES = (TRILINEAR, CONJUGATE_MID)


class ShapeError(ValueError):
    """Element or tensor dimensions do not match the algebra."""


class BasisError(ValueError):
    """A supplied basis is not linearly independent."""


class ClosureError(ValueError):
    """A bracket of basis elements escapes the span; ``triple`` names it."""

    def __init__(self, message: str, triple=None):
        super().__init__(message)
        self.triple = triple


class Element:
    """Coordinate vector over Q(zeta_24)."""

    __slots__ = ("vec",)

    def __init__(self, coords):
        if isinstance(coords, CycArray):
            if coords.ndim != 1:
                raise ShapeError("element coordinates must be a vector")
            self.vec = coords
        else:
            self.vec = CycArray.from_cycnums([CycNum.of(c) if not isinstance(c, str) else cyc_parse(c) for c in coords])

    @classmethod
    def zero(cls, dim: int) -> "Element":
        return cls(CycArray.zeros(dim))

    @classmethod
    def unit(cls, dim: int, k: int, coeff=ONE) -> "Element":
        c = [ZERO] * dim
        c[k] = CycNum.of(coeff)
        return cls(c)

    @property
    def dim(self) -> int:
        return self.vec.shape[0]

    @property
    def coords(self) -> tuple[CycNum, ...]:
        return tuple(self.vec.item(k) for k in range(self.dim))

    def __getitem__(self, k: int) -> CycNum:
        return self.vec.item(k)

    def _check(self, other: "Element"):
        if self.dim != other.dim:
            raise ShapeError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        return Element(self.vec + other.vec)

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        return Element(self.vec - other.vec)

    def __neg__(self):
        return Element(-self.vec)

    def __mul__(self, c):
        if isinstance(c, Element):
            return NotImplemented
        return Element(self.vec.scale(c))

    __rmul__ = __mul__

    def conj(self) -> "Element":
        return Element(self.vec.conj())

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.dim == other.dim and self.vec == other.vec

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return self.vec.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def to_complex(self) -> np.ndarray:
        return self.vec.to_complex()

    def __repr__(self):
        return "Element([" + ", ".join(cyc_format(c) for c in self.coords) + "])"


class TernaryAlgebra:
    """Structure-tensor ternary algebra; ``product[m, i, j, k]`` = (e_i.e_j.e_k)_m."""

    def __init__(self, product: CycArray, mode: str = TRILINEAR, labels: Sequence[str] | None = None,
                 name: str = "algebra"):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
        shape = product.shape
        if len(shape) != 4 or len(set(shape)) != 1:
            raise ShapeError(f"product tensor must have shape (d, d, d, d), got {shape}")
        if shape[0] == 0:
            raise ShapeError("dimension-0 algebras are not allowed")
        self.dim = shape[0]
        self.product = product
        self.mode = mode
        self.labels = list(labels) if labels is not None else [f"e{k + 1}" for k in range(self.dim)]
        if len(self.labels) != self.dim:
            raise ShapeError("one label per basis element is required")
        self.name = name
        self._cache: dict = {}

    @classmethod
    def from_entries(cls, dim: int, entries, mode: str = TRILINEAR, labels=None,
                     name: str = "custom") -> "TernaryAlgebra":
        """Build from ``{(m, i, j, k): value}`` (0-based) or an iterable of such pairs."""
        if dim <= 0:
            raise ShapeError("dimension-0 algebras are not allowed")
        items = entries.items() if isinstance(entries, dict) else entries
        arr = np.empty((dim,) * 4, dtype=object)
        arr[...] = ZERO
        for (m, i, j, k), v in items:
            val = cyc_parse(v) if isinstance(v, str) else CycNum.of(v)
            arr[m, i, j, k] = arr[m, i, j, k] + val
        return cls(CycArray.from_cycnums(arr), mode=mode, labels=labels, name=name)

    @classmethod
    def zero_algebra(cls, dim: int) -> "TernaryAlgebra":
        return cls(CycArray.zeros((dim,) * 4), name=f"zero:dim={dim}")

    @property
    def is_trilinear(self) -> bool:
        return self.mode == TRILINEAR

    @property
    def working_dim(self) -> int:
        return self.dim if self.is_trilinear else 2 * self.dim

    def basis(self, k: int | None = None):
        if k is None:
            return [Element.unit(self.dim, j) for j in range(self.dim)]
        return Element.unit(self.dim, k)

    def element(self, coords) -> Element:
        e = Element(coords)
        self.check(e)
        return e

    def zero(self) -> Element:
        return Element.zero(self.dim)

    def check(self, *xs: Element):
        for x in xs:
            if not isinstance(x, Element):
                raise TypeError(f"expected an Element, got {type(x).__name__}")
            if x.dim != self.dim:
                raise ShapeError(f"element of dimension {x.dim} used in a {self.dim}-dimensional algebra")

    def working_basis(self) -> list[Element]:
        """Basis over which the products are multilinear (realified for conjugate-mid)."""
        if self.is_trilinear:
            return self.basis()
        return self.basis() + [Element.unit(self.dim, k, I) for k in range(self.dim)]

    def working_label(self, k: int) -> str:
        if self.is_trilinear or k < self.dim:
            return self.labels[k]
        return "i*" + self.labels[k - self.dim]

    def __repr__(self):
        return f"TernaryAlgebra({self.name!r}, dim={self.dim}, mode={self.mode!r})"


# -- products -----------------------------------------------------------------


def ternary_product(A: TernaryAlgebra, x: Element, y: Element, z: Element) -> Element:
    """x . y . z (middle coordinates conjugated in conjugate-mid mode)."""
    A.check(x, y, z)
    yv = y.vec if A.is_trilinear else y.vec.conj()
    t = CycArray.einsum("mijk,k->mij", A.product, z.vec)
    t = CycArray.einsum("mij,j->mi", t, yv)
    return Element(CycArray.einsum("mi,i->m", t, x.vec))


@dataclass(frozen=True)
class Bracket:
    """A ternary bracket sum_t c_t * (args[p_t[0]] . args[p_t[1]] . args[p_t[2]])."""

    name: str
    terms: tuple[tuple[CycNum, tuple[int, int, int]], ...]
    root: CycNum = OMEGA  # expected [s,u,v] = root * [u,v,s]

    def __call__(self, A: TernaryAlgebra, s: Element, u: Element, v: Element) -> Element:
        args = (s, u, v)
        out = A.zero()
        for c, p in self.terms:
            out = out + ternary_product(A, args[p[0]], args[p[1]], args[p[2]]) * c
        return out

    def perturbed(self, index: int, delta, name: str | None = None) -> "Bracket":
        """Copy with the coefficient of one term shifted (for negative controls)."""
        terms = list(self.terms)
        c, p = terms[index]
        terms[index] = (c + CycNum.of(delta), p)
        return Bracket(name or f"{self.name}+perturbed[{index}]", tuple(terms), self.root)

    def describe(self) -> str:
        names = "suv"
        return " + ".join(f"({cyc_format(c)})*{'.'.join(names[i] for i in p)}" for c, p in self.terms)


OMEGA_BRACKET = Bracket(
    "omega",
    (
        (ONE, (0, 1, 2)),
        (OMEGA, (1, 2, 0)),
        (OMEGA_BAR, (2, 0, 1)),
        (ONE, (2, 1, 0)),
        (OMEGA_BAR, (1, 0, 2)),
        (OMEGA, (0, 2, 1)),
    ),
)
CONJUGATE_BRACKET = Bracket(
    "conjugate",
    (
        (ONE, (0, 1, 2)),
        (OMEGA_BAR, (1, 2, 0)),
        (OMEGA, (2, 0, 1)),
        (ONE, (2, 1, 0)),
        (OMEGA, (1, 0, 2)),
        (OMEGA_BAR, (0, 2, 1)),
    ),
    OMEGA_BAR,
)
REDUCED_BRACKET = Bracket(
    "reduced",
    (
        (ONE, (2, 0, 1)),
        (OMEGA, (0, 1, 2)),
        (OMEGA_BAR, (1, 2, 0)),
    ),
)
# the product itself, for algebras that already are bracket tables (reloaded constants)
PRODUCT_BRACKET = Bracket("product", ((ONE, (0, 1, 2)),))
BRACKETS = {b.name: b for b in (OMEGA_BRACKET, CONJUGATE_BRACKET, REDUCED_BRACKET, PRODUCT_BRACKET)}


def get_bracket(bracket: "Bracket | str") -> Bracket:
    if isinstance(bracket, Bracket):
        return bracket
    try:
        return BRACKETS[bracket]
    except KeyError:
        raise ValueError(f"unknown bracket {bracket!r}; choose from {sorted(BRACKETS)}") from None


def omega_commutator(A, s, u, v) -> Element:
    return OMEGA_BRACKET(A, s, u, v)


def conj_commutator(A, s, u, v) -> Element:
    return CONJUGATE_BRACKET(A, s, u, v)


def reduced_commutator(A, s, u, v) -> Element:
    return REDUCED_BRACKET(A, s, u, v)


def _root(root) -> tuple[CycNum, CycNum]:
    if root in ("w", "omega") or (isinstance(root, CycNum) and root == OMEGA):
        return OMEGA, OMEGA_BAR
    if root in ("wb", "omega_bar", "omegabar") or (isinstance(root, CycNum) and root == OMEGA_BAR):
        return OMEGA_BAR, OMEGA
    raise ValueError(f"root must be omega or omega_bar, got {root!r}")


def assoc_q(A, kind: int, root, s, u, v, x, y) -> Element:
    """Ternary omega- (or omega-bar-) associator of the first or second kind."""
    w1, w2 = _root(root)
    p = lambda a, b, c: ternary_product(A, a, b, c)  # noqa: E731
    left = p(p(s, u, v), x, y)
    right = p(s, u, p(v, x, y))
    if kind == 1:
        mid = p(s, p(u, v, x), y)
    elif kind == 2:
        mid = p(s, p(x, v, u), y)
    else:
        raise ValueError("kind must be 1 or 2")
    return left + mid * w1 + right * w2


def assoc_t(A, which: int, s, u, v, x, y) -> Element:
    p = lambda a, b, c: ternary_product(A, a, b, c)  # noqa: E731
    mid = p(s, p(u, v, x), y)
    if which == 1:
        return p(p(s, u, v), x, y) - mid
    if which == 2:
        return mid - p(s, u, p(v, x, y))
    raise ValueError("which must be 1 or 2")


# -- working tensors ------------------------------------------------------------


def _permute_slots(T: CycArray, perm) -> CycArray:
    """Q[m, a0, a1, a2] = T[m, a_perm[0], a_perm[1], a_perm[2]]."""
    letters = "abc"
    src = "m" + "".join(letters[p] for p in perm)
    return T.permute(f"{src}->mabc")


def _split_real(T: CycArray) -> CycArray:
    """Complex output axis 0 of length n -> real coordinates of length 2n."""
    return _merge(CycArray.stack([T.real_part(), T.imag_part()], axis=0))


def _merge(T: CycArray) -> CycArray:
    shape = T.shape
    return CycArray(T.num.reshape((shape[0] * shape[1],) + shape[2:] + (8,)), T.den, normalize=False)


def _phases(n: int) -> list[CycNum]:
    return [ONE] * n + [I] * n


def _complex_on_real_basis(A: TernaryAlgebra) -> CycArray:
    """Products of realified basis vectors, still in complex output coordinates."""
    n = A.dim
    idx = list(range(n)) * 2
    P = A.product.num[:, idx][:, :, idx][:, :, :, idx]
    P = CycArray(P, A.product.den, normalize=False)
    c = _phases(n)
    cbar = [x.conj() for x in c]
    ph = np.empty((2 * n,) * 3, dtype=object)
    for a in range(2 * n):
        for b in range(2 * n):
            for d in range(2 * n):
                ph[a, b, d] = c[a] * cbar[b] * c[d]
    return CycArray.einsum("mabc,abc->mabc", P, CycArray.from_cycnums(ph))


def product_tensor(A: TernaryAlgebra) -> CycArray:
    """Product tensor over the working basis (realified for conjugate-mid)."""
    key = ("product",)
    if key not in A._cache:
        if A.is_trilinear:
            A._cache[key] = A.product
        else:
            A._cache[key] = _split_real(_complex_on_real_basis(A))
    return A._cache[key]


def bracket_tensor(A: TernaryAlgebra, bracket, complex_output: bool = False) -> CycArray:
    """B[m, i, j, k] = m-th working coordinate of [w_i, w_j, w_k].

    With ``complex_output`` the output axis keeps the n complex coordinates
    (only differs from the default for conjugate-mid algebras), which is what
    scalar multiples of bracket values must act on.
    """
    bracket = get_bracket(bracket)
    key = ("bracket", bracket, complex_output)
    if key not in A._cache:
        base = A.product if A.is_trilinear else _complex_on_real_basis(A)
        total = None
        for c, p in bracket.terms:
            term = _permute_slots(base, p).scale(c)
            total = term if total is None else total + term
        if not A.is_trilinear and not complex_output:
            total = _split_real(total)
        A._cache[key] = total
    return A._cache[key]


def working_coords(A: TernaryAlgebra, x: Element) -> CycArray:
    """Coordinates of x in the working basis (real parts then imaginary parts)."""
    A.check(x)
    if A.is_trilinear:
        return x.vec
    return _merge(CycArray.stack([x.vec.real_part(), x.vec.imag_part()], axis=0))


def from_working_coords(A: TernaryAlgebra, w: CycArray) -> Element:
    if A.is_trilinear:
        return Element(w)
    n = A.dim
    return Element(w[:n] + w[n:].scale(I))


def working_rows(A: TernaryAlgebra, elements: Sequence[Element]) -> list[Element]:
    """Spanning vectors over the working scalars (adds i*b for conjugate-mid)."""
    if A.is_trilinear:
        return list(elements)
    return list(elements) + [b * I for b in elements]


# -- structure constants ---------------------------------------------------------


@dataclass
class StructureTensor:
    """C[m, i, j, k] = C^m_{ijk}, coordinates of [b_i, b_j, b_k] in the basis b."""

    C: CycArray
    labels: list[str] = field(default_factory=list)
    realified: bool = False

    def __post_init__(self):
        shape = self.C.shape
        if len(shape) != 4 or len(set(shape)) != 1:
            raise ShapeError(f"structure tensor must have shape (d, d, d, d), got {shape}")
        if not self.labels:
            self.labels = [f"b{k + 1}" for k in range(shape[0])]

    @property
    def dim(self) -> int:
        return self.C.shape[0]

    def entry(self, m: int, i: int, j: int, k: int) -> CycNum:
        """C^m_{ijk} with 0-based indices."""
        return self.C.item(m, i, j, k)

    def bracket_of_basis(self, i: int, j: int, k: int) -> list[CycNum]:
        return [self.C.item(m, i, j, k) for m in range(self.dim)]

    def is_zero(self) -> bool:
        return self.C.is_zero()

    def is_omega_symmetric(self, root=OMEGA) -> bool:
        """C^m_{ijk} = root * C^m_{jki} for all indices."""
        rotated = self.C.permute("mjki->mijk")
        return self.C == rotated.scale(root)

    def in_real_subfield(self) -> bool:
        return self.C == self.C.conj()

    def nonzero_entries(self) -> list[tuple[tuple[int, int, int, int], CycNum]]:
        mask = self.C.nonzero_mask()
        return [(tuple(int(t) for t in idx), self.C.item(*idx)) for idx in np.argwhere(mask)]

    def as_algebra(self, name: str = "constants") -> TernaryAlgebra:
        """Trilinear algebra whose product is this tensor (for round trips)."""
        return TernaryAlgebra(self.C, TRILINEAR, labels=self.labels, name=name)

    def __eq__(self, other):
        if not isinstance(other, StructureTensor):
            return NotImplemented
        return self.C == other.C

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "labels": self.labels,
            "realified": self.realified,
            "entries": [
                {"m": m, "i": i, "j": j, "k": k, "value": cyc_format(v)}
                for (m, i, j, k), v in self.nonzero_entries()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "StructureTensor":
        d = data["dim"]
        alg = TernaryAlgebra.from_entries(
            d, [((e["m"], e["i"], e["j"], e["k"]), e["value"]) for e in data["entries"]]
        )
        return cls(alg.product, labels=list(data.get("labels") or []), realified=data.get("realified", False))

    @classmethod
    def from_entries(cls, dim: int, entries, labels=None) -> "StructureTensor":
        alg = TernaryAlgebra.from_entries(dim, entries)
        return cls(alg.product, labels=list(labels or []))


def express_in_basis(rows: Sequence[Element], vectors: CycArray) -> tuple[CycArray, np.ndarray]:
    """Coordinates of ``vectors[:, ...]`` (axis 0 = ambient coordinate) in ``rows``.

    Returns (coords, ok) where coords has axis 0 indexing the basis and
    ``ok[...]`` is False wherever a vector lies outside the span.
    Raises BasisError if the rows are dependent.
    """
    mat = [list(r.coords) for r in rows]
    red, pivots = linalg.rref(mat)
    if len(pivots) != len(rows):
        raise BasisError(f"{len(rows)} vectors span only a {len(pivots)}-dimensional space")
    sub = [[row[c] for c in pivots] for row in mat]  # r x r, invertible
    sub_inv = linalg.inverse(sub)
    V = CycArray(vectors.num[list(pivots)], vectors.den)
    coords = CycArray.einsum("p...,pn->n...", V, CycArray.from_cycnums(sub_inv))
    B = CycArray.from_cycnums(mat)
    back = CycArray.einsum("n...,nm->m...", coords, B)
    ok = ~(back - vectors).nonzero_mask().any(axis=0)
    return coords, ok


def structure_constants(A: TernaryAlgebra, bracket="omega", basis: Sequence[Element] | None = None,
                        labels: Sequence[str] | None = None) -> StructureTensor:
    """Structure constants of ``bracket`` in the canonical or a supplied basis.

    For conjugate-mid algebras the constants refer to the realified basis
    (b_1, ..., b_r, i b_1, ..., i b_r) and are real.  A supplied basis may
    span a proper subspace; ClosureError is raised if some bracket of basis
    vectors leaves that span.
    """
    bracket = get_bracket(bracket)
    W = bracket_tensor(A, bracket)
    if basis is None:
        lab = [A.working_label(k) for k in range(A.working_dim)]
        return StructureTensor(W, labels=list(labels or lab), realified=not A.is_trilinear)
    A.check(*basis)
    rows = working_rows(A, basis)
    wrows = [Element(working_coords(A, r)) for r in rows]
    Bm = CycArray.from_cycnums([list(r.coords) for r in wrows])
    V = CycArray.chain("mabc,ia,jb,kc->mijk", W, Bm, Bm, Bm)
    coords, ok = express_in_basis(wrows, V)
    if not ok.all():
        i, j, k = (int(t) for t in np.argwhere(~ok)[0])
        raise ClosureError(f"bracket of basis vectors {(i, j, k)} leaves the span", (i, j, k))
    if labels is None:
        labels = [f"b{k + 1}" for k in range(len(basis))]
        if not A.is_trilinear:
            labels = labels + [f"i*{x}" for x in labels]
    C = StructureTensor(coords, labels=list(labels), realified=not A.is_trilinear)
    if C.realified and not C.in_real_subfield():
        raise AssertionError("realified structure constants must be real")
    return C


def transform_constants(C: StructureTensor, basis_change) -> StructureTensor:
    """Tensor law: new C^m_{ijk} = A^p_i A^r_j A^s_k (A^-1)^m_q C^q_{prs}.

    ``basis_change[p][i]`` is A^p_i, i.e. column i holds the old coordinates
    of the new basis vector i.  Raises linalg.SingularError if A is singular.
    """
    mat = linalg.as_matrix(basis_change)
    n = C.dim
    if len(mat) != n or any(len(r) != n for r in mat):
        raise ShapeError(f"basis change must be {n}x{n}")
    inv = linalg.inverse(mat)
    Am = CycArray.from_cycnums(mat)
    Ainv = CycArray.from_cycnums(inv)
    new = CycArray.chain("qprs,pi,rj,sk,mq->mijk", C.C, Am, Am, Am, Ainv)
    return StructureTensor(new, labels=list(C.labels), realified=C.realified)


# -- commutativity ---------------------------------------------------------------


def commutativity_type(A: TernaryAlgebra) -> str:
    """One of "commutative", "left-commutative", "cyclic-commutative", "none"."""
    P = product_tensor(A)
    left = P == P.permute("mjik->mijk")
    cyclic = P == P.permute("mjki->mijk")
    if left and cyclic:
        return "commutative"
    if left:
        return "left-commutative"
    if cyclic:
        return "cyclic-commutative"
    return "none"


def random_element(A: TernaryAlgebra, rng, height: int = 5, gaussian: bool | None = None) -> Element:
    """Random element with small rational (Gaussian rational if complex) coordinates."""
    if gaussian is None:
        gaussian = True
    coords = []
    for _ in range(A.dim):
        re = Fraction(int(rng.integers(-height, height + 1)), int(rng.integers(1, 4)))
        c = CycNum.of(re)
        if gaussian:
            im = Fraction(int(rng.integers(-height, height + 1)), int(rng.integers(1, 4)))
            c = c + I * im
        coords.append(c)
    return Element(coords)
