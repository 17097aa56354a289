"""Concrete ternary algebras: vectors, rectangular and cubic matrices, relations.

Cubic matrices of order n are flattened row-major (i slowest, k fastest), so
basis vector number ``i*n*n + j*n + k`` is the matrix unit with a single 1 at
(i+1, j+1, k+1).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import CONJUGATE_MID, TRILINEAR, Element, ShapeError, TernaryAlgebra
from .cycarray import CycArray
from .scalar import I, SQRT2, ZERO, CycNum, cyc_format, cyc_parse


class ConstructionError(ValueError):
    """The data passed to a generic construction is inconsistent."""


# -- cubic matrices ----------------------------------------------------------------


class CubicMatrix:
    """Rank-3 array X[i, j, k] over Q(zeta_24); the public API is 1-based."""

    __slots__ = ("n", "entries")

    def __init__(self, entries: CycArray):
        shape = entries.shape
        if len(shape) != 3 or len(set(shape)) != 1:
            raise ShapeError(f"cubic matrix needs shape (n, n, n), got {shape}")
        self.n = shape[0]
        self.entries = entries

    @classmethod
    def from_entries(cls, n: int, entries: dict) -> "CubicMatrix":
        """``entries`` maps 1-based (i, j, k) to scalar values; the rest is zero."""
        arr = np.empty((n, n, n), dtype=object)
        arr[...] = ZERO
        for (i, j, k), v in entries.items():
            if not all(1 <= t <= n for t in (i, j, k)):
                raise ShapeError(f"index {(i, j, k)} out of range for order {n}")
            arr[i - 1, j - 1, k - 1] = cyc_parse(v) if isinstance(v, str) else CycNum.of(v)
        return cls(CycArray.from_cycnums(arr))

    @classmethod
    def zero(cls, n: int) -> "CubicMatrix":
        return cls(CycArray.zeros((n, n, n)))

    @classmethod
    def from_element(cls, x: Element, n: int) -> "CubicMatrix":
        if x.dim != n**3:
            raise ShapeError(f"element of dimension {x.dim} is not a cubic matrix of order {n}")
        return cls(CycArray(x.vec.num.reshape((n, n, n, 8)), x.vec.den))

    def to_element(self) -> Element:
        n = self.n
        return Element(CycArray(self.entries.num.reshape((n**3, 8)), self.entries.den))

    def __getitem__(self, idx) -> CycNum:
        i, j, k = idx
        return self.entries.item(i - 1, j - 1, k - 1)

    def __add__(self, other: "CubicMatrix") -> "CubicMatrix":
        return CubicMatrix(self.entries + other.entries)

    def __sub__(self, other: "CubicMatrix") -> "CubicMatrix":
        return CubicMatrix(self.entries - other.entries)

    def __neg__(self):
        return CubicMatrix(-self.entries)

    def __mul__(self, c) -> "CubicMatrix":
        return CubicMatrix(self.entries.scale(c))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CubicMatrix):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def nonzero(self) -> dict:
        out = {}
        for idx in itertools.product(range(1, self.n + 1), repeat=3):
            v = self[idx]
            if v:
                out[idx] = v
        return out

    def trace(self, pair) -> list[CycNum]:
        return cubic_trace(self, pair)

    def __repr__(self):
        body = ", ".join(f"X{i}{j}{k}={cyc_format(v)}" for (i, j, k), v in self.nonzero().items())
        return f"CubicMatrix(n={self.n}, {{{body}}})"


def cubic_trace(X: CubicMatrix, pair) -> list[CycNum]:
    """Partial trace over the index pair 12, 13 or 23."""
    pair = str(pair).replace(",", "")
    n = X.n
    if pair == "12":
        return [sum((X[i, i, k] for i in range(1, n + 1)), ZERO) for k in range(1, n + 1)]
    if pair == "13":
        return [sum((X[i, j, i] for i in range(1, n + 1)), ZERO) for j in range(1, n + 1)]
    if pair == "23":
        return [sum((X[i, j, j] for j in range(1, n + 1)), ZERO) for i in range(1, n + 1)]
    raise ValueError(f"trace pair must be 12, 13 or 23, got {pair!r}")


def _fig(entries: dict) -> CubicMatrix:
    return CubicMatrix.from_entries(2, {tuple(int(c) for c in k): v for k, v in entries.items()})


F1 = {"111": 1, "221": -1, "122": -1, "212": -1}
F2 = {"121": -1, "211": -1, "112": -1, "222": 1}


def canonical_G_basis() -> list[CubicMatrix]:
    """The eight order-2 cubic matrices G1..G8 used for the structure results."""
    g12 = -(I * SQRT2) / 4
    return [
        _fig(F1) * g12,
        _fig(F2) * g12,
        _fig({"121": -I, "211": -I / 2}),
        _fig({"121": -1, "211": Fraction(1, 2)}),
        _fig({"122": -I, "212": -I / 2}),
        _fig({"122": -1, "212": Fraction(1, 2)}),
        _fig({"111": 1}),
        _fig({"222": 1}),
    ]


def G_elements() -> list[Element]:
    return [g.to_element() for g in canonical_G_basis()]


# -- algebras ------------------------------------------------------------------------


def _from_triples(dim: int, triples, mode: str, labels=None, name="algebra") -> TernaryAlgebra:
    """Integer product tensor from (m, i, j, k, value) tuples."""
    P = np.zeros((dim,) * 4, dtype=np.int64)
    for m, i, j, k, v in triples:
        P[m, i, j, k] += v
    return TernaryAlgebra(CycArray.from_ints(P), mode=mode, labels=labels, name=name)


def vector_algebra(n: int, form: str = "alpha") -> TernaryAlgebra:
    """u.v.w = alpha(u, v) w (trilinear) or h(u, v) w (conjugate-mid)."""
    if n < 1:
        raise ShapeError("n must be positive")
    if form not in ("alpha", "hermitian"):
        raise ValueError("form must be 'alpha' or 'hermitian'")
    mode = TRILINEAR if form == "alpha" else CONJUGATE_MID
    triples = [(k, i, i, k, 1) for i in range(n) for k in range(n)]
    return _from_triples(n, triples, mode, name=f"vector:n={n},form={form}")


def rect_algebra(m: int, n: int, form: str = "transpose") -> TernaryAlgebra:
    """X.Y.Z = X Y^T Z or X Y^dagger Z on m x n matrices (basis E_ab, row-major)."""
    if m < 1 or n < 1:
        raise ShapeError("m and n must be positive")
    if form not in ("transpose", "dagger"):
        raise ValueError("form must be 'transpose' or 'dagger'")
    mode = TRILINEAR if form == "transpose" else CONJUGATE_MID
    idx = lambda a, b: a * n + b  # noqa: E731
    # E_ab E_cd^T E_ef = delta_bd delta_ce E_af
    triples = [
        (idx(a, f), idx(a, b), idx(c, b), idx(c, f), 1)
        for a in range(m) for b in range(n) for c in range(m) for f in range(n)
    ]
    labels = [f"E{a + 1}{b + 1}" for a in range(m) for b in range(n)]
    return _from_triples(m * n, triples, mode, labels, name=f"rect:m={m},n={n},form={form}")


def _cubic_labels(n: int) -> list[str]:
    return [f"X{i}{j}{k}" for i in range(1, n + 1) for j in range(1, n + 1) for k in range(1, n + 1)]


def cubic_algebra(n: int, pairing: str = "A", conj_mid: bool = False) -> TernaryAlgebra:
    """(X.Y.Z)_ijk = X_ijp mu(Y_rsp) Z_srk (pairing A) or ... Z_rsk (pairing B)."""
    if n < 1:
        raise ShapeError("n must be positive")
    pairing = pairing.upper()
    if pairing not in ("A", "B"):
        raise ValueError("pairing must be 'A' or 'B'")
    idx = lambda i, j, k: (i * n + j) * n + k  # noqa: E731
    triples = []
    for i, j, p, r, s, k in itertools.product(range(n), repeat=6):
        z = idx(s, r, k) if pairing == "A" else idx(r, s, k)
        triples.append((idx(i, j, k), idx(i, j, p), idx(r, s, p), z, 1))
    mode = CONJUGATE_MID if conj_mid else TRILINEAR
    name = f"cubic:n={n},pairing={pairing}" + (",conj_mid=true" if conj_mid else "")
    return _from_triples(n**3, triples, mode, _cubic_labels(n), name=name)


def cubic_scalar_trace_algebra(n: int, conj_mid: bool = False) -> TernaryAlgebra:
    """X.Y.Z = X * beta(Y, Z) with beta = sum Y_rsp Z_srp, or sum conj(Y_rsp) Z_rsp."""
    if n < 1:
        raise ShapeError("n must be positive")
    idx = lambda i, j, k: (i * n + j) * n + k  # noqa: E731
    N = n**3
    triples = []
    for x in range(N):
        for r, s, p in itertools.product(range(n), repeat=3):
            z = idx(r, s, p) if conj_mid else idx(s, r, p)
            triples.append((x, x, idx(r, s, p), z, 1))
    mode = CONJUGATE_MID if conj_mid else TRILINEAR
    name = f"cubic-trace:n={n}" + (",conj_mid=true" if conj_mid else "")
    return _from_triples(N, triples, mode, _cubic_labels(n), name=name)


def random_algebra(seed: int = 7, dim: int = 3, density: float = 0.5, height: int = 2) -> TernaryAlgebra:
    """Seeded toy algebra with small integer structure constants (generically non-associative)."""
    rng = np.random.default_rng(seed)
    P = rng.integers(-height, height + 1, size=(dim,) * 4)
    P = P * (rng.random((dim,) * 4) < density)
    return TernaryAlgebra(CycArray.from_ints(P.astype(np.int64)), name=f"custom:random-seed={seed}")


def zero_algebra(dim: int) -> TernaryAlgebra:
    return TernaryAlgebra.zero_algebra(dim)


# -- algebras from forms -----------------------------------------------------------------


@dataclass
class FormSpec:
    """Module with a ring-valued 2-form and a ring action.

    Tensors (0-based): ``form[i, j, a]`` = coordinate a of form(e_i, e_j) in the
    ring basis f_a; ``action[a, m, k]`` = coordinate m of f_a acting on e_k
    (left: f_a . e_k, right: e_k . f_a); ``ring_mult[a, b, c]`` = coordinate c
    of f_a f_b.
    """

    form: CycArray
    action: CycArray
    ring_mult: CycArray
    side: str = "left"
    name: str = "form"

    @property
    def module_dim(self) -> int:
        return self.action.shape[1]

    @property
    def algebra_dim(self) -> int:
        return self.ring_mult.shape[0]

    # ring-level helpers on coordinate arrays
    def pair(self, u: CycArray, v: CycArray) -> CycArray:
        return CycArray.chain("ija,i,j->a", self.form, u, v)

    def act(self, a: CycArray, w: CycArray) -> CycArray:
        return CycArray.chain("amk,a,k->m", self.action, a, w)

    def mult(self, a: CycArray, b: CycArray) -> CycArray:
        return CycArray.chain("abc,a,b->c", self.ring_mult, a, b)


def _tensor(x, ndim: int) -> CycArray:
    if isinstance(x, CycArray):
        t = x
    else:
        arr = np.asarray(x, dtype=object)
        t = CycArray.from_ints(arr.astype(np.int64)) if all(isinstance(v, (int, np.integer)) for v in arr.flat) \
            else CycArray.from_cycnums(arr)
    if t.ndim != ndim:
        raise ConstructionError(f"expected a rank-{ndim} tensor, got shape {t.shape}")
    return t


def make_algebra_from_form(module_dim: int, algebra_dim: int, form, action, ring_mult,
                           side: str = "left", name: str = "form") -> tuple[TernaryAlgebra, FormSpec]:
    """u.v.w = form(u, v) . w (left) or u . form(v, w) (right)."""
    if side not in ("left", "right"):
        raise ConstructionError("side must be 'left' or 'right'")
    F, Act, R = _tensor(form, 3), _tensor(action, 3), _tensor(ring_mult, 3)
    d, r = module_dim, algebra_dim
    if F.shape != (d, d, r) or Act.shape != (r, d, d) or R.shape != (r, r, r):
        raise ConstructionError(
            f"inconsistent shapes: form {F.shape}, action {Act.shape}, ring_mult {R.shape} for d={d}, r={r}"
        )
    # representation check on ring basis pairs
    lhs = CycArray.einsum("abc,cmk->abmk", R, Act)
    if side == "left":
        rhs = CycArray.einsum("amt,btk->abmk", Act, Act)
    else:
        rhs = CycArray.einsum("bmt,atk->abmk", Act, Act)
    if not lhs == rhs:
        kind = "representation" if side == "left" else "right module action"
        raise ConstructionError(f"action is not a {kind} of the ring")
    if side == "left":
        P = CycArray.einsum("ija,amk->mijk", F, Act)
    else:
        P = CycArray.einsum("jka,ami->mijk", F, Act)
    spec = FormSpec(F, Act, R, side, name)
    return TernaryAlgebra(P, TRILINEAR, name=name), spec


def _matrix_ring(m: int) -> CycArray:
    """Structure tensor of the m x m matrix algebra on units E_ab (index a*m+b)."""
    R = np.zeros((m * m,) * 3, dtype=np.int64)
    for a, b, c in itertools.product(range(m), repeat=3):
        R[a * m + b, b * m + c, a * m + c] = 1
    return CycArray.from_ints(R)


def rect_form(m: int, n: int) -> tuple[TernaryAlgebra, FormSpec]:
    """alpha(X, Y) = X Y^T with the left action of m x m matrices."""
    d, r = m * n, m * m
    F = np.zeros((d, d, r), dtype=np.int64)
    for a, b, c in itertools.product(range(m), range(n), range(m)):
        F[a * n + b, c * n + b, a * m + c] = 1  # E_ab E_cb^T = E_ac
    Act = np.zeros((r, d, d), dtype=np.int64)
    for a, c, f in itertools.product(range(m), range(m), range(n)):
        Act[a * m + c, a * n + f, c * n + f] = 1  # E_ac E_cf = E_af
    return make_algebra_from_form(d, r, F, Act, _matrix_ring(m), "left", name=f"rect-form:m={m},n={n}")


def cubic_form(n: int) -> tuple[TernaryAlgebra, FormSpec]:
    """beta(Y, Z) = Tr(Y Z) (n x n matrix valued) with the right action X |> A."""
    idx = lambda i, j, k: (i * n + j) * n + k  # noqa: E731
    d, r = n**3, n * n
    F = np.zeros((d, d, r), dtype=np.int64)
    for r_, s, p, k in itertools.product(range(n), repeat=4):
        F[idx(r_, s, p), idx(s, r_, k), p * n + k] += 1
    Act = np.zeros((r, d, d), dtype=np.int64)
    for i, j, k, rr in itertools.product(range(n), repeat=4):
        Act[k * n + rr, idx(i, j, rr), idx(i, j, k)] = 1  # (X |> E_k,rr)_ij,rr = X_ijk
    return make_algebra_from_form(d, r, F, Act, _matrix_ring(n), "right", name=f"cubic-form:n={n}")


def random_form(seed: int, module_dim: int = 2, side: str = "left") -> tuple[TernaryAlgebra, FormSpec]:
    """Random scalar-valued form on C^d (the ring is C acting by scaling); a negative control."""
    rng = np.random.default_rng(seed)
    d = module_dim
    F = rng.integers(-2, 3, size=(d, d, 1)).astype(np.int64)
    Act = np.eye(d, dtype=np.int64)[None, :, :]
    R = np.ones((1, 1, 1), dtype=np.int64)
    return make_algebra_from_form(d, 1, F, Act, R, side, name=f"random-form:seed={seed}")


# -- binary relations -----------------------------------------------------------------


@dataclass(frozen=True)
class FiniteRelation:
    """Relation between {0..a-1} and {0..b-1} as a boolean matrix."""

    matrix: tuple[tuple[bool, ...], ...]

    @classmethod
    def from_array(cls, arr) -> "FiniteRelation":
        arr = np.asarray(arr, dtype=bool)
        if arr.ndim != 2:
            raise ShapeError("relation matrix must be 2-dimensional")
        return cls(tuple(tuple(bool(x) for x in row) for row in arr))

    @classmethod
    def from_pairs(cls, a: int, b: int, pairs) -> "FiniteRelation":
        arr = np.zeros((a, b), dtype=bool)
        for x, y in pairs:
            arr[x, y] = True
        return cls.from_array(arr)

    @classmethod
    def identity(cls, a: int) -> "FiniteRelation":
        return cls.from_array(np.eye(a, dtype=bool))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=bool).reshape(len(self.matrix), -1)

    @property
    def shape(self) -> tuple[int, int]:
        return self.array.shape

    def pairs(self) -> set[tuple[int, int]]:
        return {(int(x), int(y)) for x, y in np.argwhere(self.array)}

    def inverse(self) -> "FiniteRelation":
        return FiniteRelation.from_array(self.array.T)

    def compose(self, other: "FiniteRelation") -> "FiniteRelation":
        """self first, then other."""
        if self.shape[1] != other.shape[0]:
            raise ShapeError(f"cannot compose relations of shapes {self.shape} and {other.shape}")
        return FiniteRelation.from_array((self.array.astype(int) @ other.array.astype(int)) > 0)

    def __le__(self, other: "FiniteRelation") -> bool:
        return bool(np.all(~self.array | other.array))


def relation_ternary(R: FiniteRelation, S: FiniteRelation, T: FiniteRelation) -> FiniteRelation:
    """R . S . T = R o S^-1 o T (apply R, then S backwards, then T)."""
    if not (R.shape == S.shape == T.shape):
        raise ShapeError(f"relations must share a shape, got {R.shape}, {S.shape}, {T.shape}")
    return R.compose(S.inverse()).compose(T)


def all_relations(a: int, b: int) -> list[FiniteRelation]:
    out = []
    for bits in range(2 ** (a * b)):
        arr = np.array([(bits >> t) & 1 for t in range(a * b)], dtype=bool).reshape(a, b)
        out.append(FiniteRelation.from_array(arr))
    return out


def semiheap_check(a: int = 2, b: int = 2) -> dict:
    """Exhaustive second-kind associativity for relations in P(A, B).

    Every triple product is tabulated once as a relation id, after which both
    identities are checked on all 5-tuples by integer indexing.
    """
    rels = all_relations(a, b)
    N = len(rels)
    M = np.stack([r.array for r in rels]).astype(np.int64)
    X, Y, Z = M[:, None, None], M[None, :, None], M[None, None, :]
    T3 = (np.matmul(np.matmul(X, np.swapaxes(Y, -1, -2)) > 0, Z) > 0).astype(np.int64)
    weights = (1 << np.arange(a * b)).reshape(a, b)
    ids = (T3 * weights).sum(axis=(-2, -1))  # ids[r, s, t] = id of R.S.T
    r, s, t, u, v = np.ix_(*[np.arange(N)] * 5)
    left = ids[ids[r, s, t], u, v]
    mid = ids[r, ids[u, t, s], v]
    right = ids[r, s, ids[t, u, v]]
    failures = {"left=middle": int(np.count_nonzero(left != mid)),
                "middle=right": int(np.count_nonzero(mid != right))}
    return {"relations": N, "tuples": N**5, "failures": failures, "holds": not any(failures.values())}


# -- descriptors ------------------------------------------------------------------------


def _parse_bool(v) -> bool:
    if isinstance(v, bool):
        return v
    s = str(v).lower()
    if s in ("1", "true", "yes", "y"):
        return True
    if s in ("0", "false", "no", "n"):
        return False
    raise ValueError(f"not a boolean: {v!r}")


def parse_descriptor(text: str) -> dict:
    """``"cubic:n=2,pairing=A"`` -> ``{"kind": "cubic", "n": 2, "pairing": "A"}``."""
    text = text.strip()
    if text.startswith("{"):
        return json.loads(text)
    kind, _, rest = text.partition(":")
    if not kind:
        raise ValueError(f"empty descriptor: {text!r}")
    out: dict = {"kind": kind.strip()}
    if rest.strip():
        for part in rest.split(","):
            key, eq, val = part.partition("=")
            if not eq or not key.strip():
                raise ValueError(f"bad descriptor field {part!r} in {text!r}")
            key, val = key.strip().replace("-", "_"), val.strip()
            out[key] = int(val) if re_int(val) else val
    return out


def re_int(s: str) -> bool:
    return s.lstrip("-").isdigit()


def algebra_from_descriptor(desc) -> TernaryAlgebra:
    """Build an algebra from a descriptor string or JSON-like dict."""
    d = parse_descriptor(desc) if isinstance(desc, str) else dict(desc)
    kind = d.get("kind")
    try:
        if kind == "cubic":
            return cubic_algebra(int(d.get("n", 2)), str(d.get("pairing", "A")),
                                 _parse_bool(d.get("conj_mid", False)))
        if kind in ("cubic-trace", "cubic_trace"):
            return cubic_scalar_trace_algebra(int(d.get("n", 2)), _parse_bool(d.get("conj_mid", False)))
        if kind == "vector":
            return vector_algebra(int(d.get("n", 2)), str(d.get("form", "alpha")))
        if kind == "rect":
            return rect_algebra(int(d.get("m", 2)), int(d.get("n", 2)), str(d.get("form", "transpose")))
        if kind == "zero":
            return zero_algebra(int(d.get("dim", 1)))
        if kind == "custom":
            if "random_seed" in d:
                return random_algebra(int(d["random_seed"]), int(d.get("dim", 3)))
            dim = int(d["dim"])
            entries = [((e["m"], e["i"], e["j"], e["k"]), str(e["value"])) for e in d.get("product", [])]
            return TernaryAlgebra.from_entries(dim, entries, mode=d.get("mode", TRILINEAR),
                                               labels=d.get("labels"), name=d.get("name", "custom"))
    except KeyError as exc:
        raise ValueError(f"descriptor {d!r} is missing field {exc}") from None
    except TypeError as exc:
        raise ValueError(f"malformed descriptor {d!r}: {exc}") from None
    raise ValueError(f"unknown algebra kind {kind!r}")


def algebra_to_descriptor(A: TernaryAlgebra) -> dict:
    """Custom JSON descriptor (0-based indices) reproducing ``A`` exactly."""
    mask = A.product.nonzero_mask()
    product = [
        {"m": int(m), "i": int(i), "j": int(j), "k": int(k), "value": cyc_format(A.product.item(m, i, j, k))}
        for m, i, j, k in np.argwhere(mask)
    ]
    return {"kind": "custom", "dim": A.dim, "mode": A.mode, "labels": A.labels, "name": A.name,
            "product": product}


def cubic_relabel(n: int, perm) -> "callable":
    """Linear map X -> X' with X'_{pi(i) pi(j) pi(k)} = X_{ijk} (0-based perm).

    Relabelling all three indices by the same permutation commutes with every
    cubic product above, so it is an automorphism of those algebras.
    """
    perm = list(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {perm}")
    inv = [perm.index(t) for t in range(n)]

    def apply(x: Element) -> Element:
        X = CubicMatrix.from_element(x, n).entries
        idx = np.array(inv)
        num = X.num[idx][:, idx][:, :, idx]
        return CubicMatrix(CycArray(num, X.den)).to_element()

    return apply
