"""Subspaces of ternary algebras: closure, ideals, induced constants, 2-dim types.

A :class:`Subspace` keeps its spanning elements; the independent ones (in
the given order) form the basis used for induced structure constants, so the
constants refer to the elements exactly as the caller listed them.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import linalg
from .algebra import (
    ClosureError,
    Element,
    StructureTensor,
    TernaryAlgebra,
    bracket_tensor,
    express_in_basis,
    get_bracket,
    structure_constants,
    transform_constants,
    working_coords,
    working_rows,
)
from .cycarray import CycArray
from .scalar import I, OMEGA, OMEGA_BAR, ONE, SQRT2, SQRT3, ZERO, CycNum, cyc_format, cyc_sqrt, rationalize

__all__ = [
    "ClosureError",
    "DimensionError",
    "Subspace",
    "Verdict",
    "is_subalgebra",
    "is_ideal",
    "is_abelian",
    "induced_constants",
    "canonical_2dim",
    "constants_from_abcd",
    "constants_from_gamma",
    "gamma_of",
    "cosquare_trace",
    "abcd",
    "Classification",
    "Isomorphism",
    "DirectSumReport",
    "map_matrix",
    "classify_2dim",
    "classify_constants_2dim",
    "find_isomorphism",
    "direct_sum_report",
]


class DimensionError(ValueError):
    """An operation needs a subspace of a specific dimension."""


@dataclass
class Verdict:
    holds: bool
    witness: tuple | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds


class Subspace:
    """Complex span of elements of an ambient algebra."""

    def __init__(self, algebra: TernaryAlgebra, spanning: Sequence[Element], labels: Sequence[str] | None = None):
        algebra.check(*spanning)
        self.algebra = algebra
        self.spanning = list(spanning)
        self.labels = list(labels) if labels is not None else [f"v{k + 1}" for k in range(len(spanning))]
        if len(self.labels) != len(self.spanning):
            raise ValueError("one label per spanning element is required")
        keep, rows = [], []
        for k, x in enumerate(self.spanning):
            trial = rows + [list(x.coords)]
            if linalg.rank(trial) == len(trial):
                rows, keep = trial, keep + [k]
        self.basis = [self.spanning[k] for k in keep]
        self.basis_labels = [self.labels[k] for k in keep]
        self.echelon, self.pivots = linalg.rref(rows) if rows else ([], [])

    @classmethod
    def full(cls, algebra: TernaryAlgebra) -> "Subspace":
        return cls(algebra, algebra.basis(), algebra.labels)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def contains(self, x: Element) -> bool:
        return self.coordinates(x) is not None

    __contains__ = contains

    def coordinates(self, x: Element) -> list[CycNum] | None:
        """Coordinates of x in ``basis``, or None if x is outside the span."""
        self.algebra.check(x)
        if not self.basis:
            return [] if x.is_zero() else None
        cols = linalg.transpose([list(b.coords) for b in self.basis])
        return linalg.solve(cols, x.coords)

    def working_rows(self) -> list[Element]:
        """Spanning set over the working scalars (adds i*b for conjugate-mid)."""
        return working_rows(self.algebra, self.basis)

    def __repr__(self):
        return f"Subspace(<{', '.join(self.basis_labels)}>, dim={self.dim})"


def _brackets_of(S: Subspace, bracket, slots: str):
    """Working-coordinate brackets with the listed slots restricted to S."""
    A = S.algebra
    W = bracket_tensor(A, bracket)
    rows = [Element(working_coords(A, r)) for r in S.working_rows()]
    Bm = CycArray.from_cycnums([list(r.coords) for r in rows])
    n = A.working_dim
    Id = CycArray.from_ints(np.eye(n, dtype=np.int64))
    mats = [Bm if s == "S" else Id for s in slots]
    V = CycArray.chain("mabc,ia,jb,kc->mijk", W, *mats)
    return rows, V


def _membership(S: Subspace, V: CycArray) -> np.ndarray:
    rows = [Element(working_coords(S.algebra, r)) for r in S.working_rows()]
    _, ok = express_in_basis(rows, V)
    return ok


def _label_triple(S: Subspace, idx, slots: str) -> tuple:
    A = S.algebra
    r = S.dim
    out = []
    for k, s in zip(idx, slots):
        if s == "S":
            lab = S.basis_labels[k % r] if r else "?"
            out.append(lab if k < r else f"i*{lab}")
        else:
            out.append(A.working_label(k))
    return tuple(out)


def is_subalgebra(S: Subspace, bracket="omega") -> Verdict:
    """bracket(b1, b2, b3) lies in S for all triples of the (realified) basis."""
    if S.dim == 0:
        return Verdict(True, details={"note": "zero subspace"})
    _, V = _brackets_of(S, bracket, "SSS")
    ok = _membership(S, V)
    bad = np.argwhere(~ok)
    if len(bad):
        idx = tuple(int(t) for t in bad[0])
        return Verdict(False, _label_triple(S, idx, "SSS"), {"escaping_triples": len(bad)})
    return Verdict(True)


def is_ideal(S: Subspace, bracket="omega", all_slots: bool = False) -> Verdict:
    """bracket(a, x, y) in S for a in S and x, y in the algebra (slot 1 fixed).

    The details always carry the all-slots variant; ``all_slots=True`` makes
    it decide the verdict.
    """
    if S.dim == 0:
        return Verdict(True, details={"first_slot": True, "all_slots": True})
    results = {}
    witness = {}
    for slots in ("SAA", "ASA", "AAS"):
        _, V = _brackets_of(S, bracket, slots)
        ok = _membership(S, V)
        bad = np.argwhere(~ok)
        results[slots] = not len(bad)
        if len(bad):
            witness[slots] = _label_triple(S, tuple(int(t) for t in bad[0]), slots)
    first = results["SAA"]
    every = all(results.values())
    holds = every if all_slots else first
    w = None
    if not holds:
        w = witness.get("SAA") or next(iter(witness.values()))
    return Verdict(holds, w, {"first_slot": first, "all_slots": every})


def is_abelian(S: Subspace, bracket="omega") -> Verdict:
    if S.dim == 0:
        return Verdict(True)
    _, V = _brackets_of(S, bracket, "SSS")
    nz = V.nonzero_mask().any(axis=0)
    bad = np.argwhere(nz)
    if len(bad):
        return Verdict(False, _label_triple(S, tuple(int(t) for t in bad[0]), "SSS"))
    return Verdict(True)


def induced_constants(S: Subspace, bracket="omega") -> StructureTensor:
    """Structure constants of the restricted bracket in S's basis (ClosureError if not closed)."""
    if S.dim == 0:
        raise DimensionError("the zero subspace has no structure constants")
    return structure_constants(S.algebra, bracket, S.basis, labels=S.basis_labels if S.algebra.is_trilinear else None)


# -- two-dimensional classification ------------------------------------------------------


CANONICAL_2DIM = {
    "I": (0, 0, 0, 0),
    "II": (0, 1, 1, 0),
    "III": (0, 1, 0, 0),
    "IV": (1, 0, 0, -1),
}


def constants_from_abcd(a, b, c, d) -> StructureTensor:
    """Full omega-symmetric 2-dim tensor with [e1,e2,e1] = a e1 + b e2, [e2,e1,e2] = c e1 + d e2."""
    x = [CycNum.of(a), CycNum.of(b)]
    y = [CycNum.of(c), CycNum.of(d)]
    entries = []
    # [s,u,v] = w [u,v,s]: [e1,e1,e2] = w [e1,e2,e1], [e2,e1,e1] = wb [e1,e2,e1]
    for (i, j, k), vec, f in (
        ((0, 1, 0), x, ONE), ((0, 0, 1), x, OMEGA), ((1, 0, 0), x, OMEGA_BAR),
        ((1, 0, 1), y, ONE), ((1, 1, 0), y, OMEGA), ((0, 1, 1), y, OMEGA_BAR),
    ):
        for m in range(2):
            if vec[m]:
                entries.append(((m, i, j, k), vec[m] * f))
    return StructureTensor.from_entries(2, entries)


def canonical_2dim(kind: str) -> StructureTensor:
    return constants_from_abcd(*CANONICAL_2DIM[kind])


def abcd(C: StructureTensor) -> tuple[CycNum, CycNum, CycNum, CycNum]:
    return C.entry(0, 0, 1, 0), C.entry(1, 0, 1, 0), C.entry(0, 1, 0, 1), C.entry(1, 1, 0, 1)


@dataclass
class Classification:
    type: str
    witness: list[list[CycNum]] | None
    stage: int
    constants: StructureTensor | None = None

    def witness_str(self) -> str | None:
        if self.witness is None:
            return None
        return "[" + "; ".join(", ".join(cyc_format(x) for x in row) for row in self.witness) + "]"

    def to_json(self) -> dict:
        return {"type": self.type, "stage": self.stage,
                "witness": None if self.witness is None else [[cyc_format(x) for x in r] for r in self.witness]}


def _verify(C: StructureTensor, M, target: StructureTensor) -> bool:
    try:
        return transform_constants(C, M) == target
    except linalg.SingularError:
        return False


def _diag(l, m):
    return [[CycNum.of(l), ZERO], [ZERO, CycNum.of(m)]]


_SWAP = [[ZERO, ONE], [ONE, ZERO]]


def _stage2_candidates(C: StructureTensor):
    """Diagonal scalings (optionally after the swap) that solve the canonical forms exactly."""
    a0, b0, c0, d0 = abcd(C)
    for pre in (linalg.identity(2), _SWAP):
        swapped = pre is _SWAP
        a, b, c, d = (d0, c0, b0, a0) if swapped else (a0, b0, c0, d0)
        cands = []
        if not a and not d and b and c:
            lb, lc = cyc_sqrt(b), cyc_sqrt(c)
            if lb is not None and lc is not None:
                cands.append(("II", _diag(lb.inverse(), lc.inverse())))
        if not a and not d and b and not c:
            lb = cyc_sqrt(b)
            if lb is not None:
                cands.append(("III", _diag(lb.inverse(), ONE)))
        if not b and not c and a and a == -d:
            cands.append(("IV", _diag(a.inverse(), ONE)))
        for kind, D in cands:
            yield kind, linalg.matmul(pre, D)


def _numeric_search(C: StructureTensor, target: StructureTensor, dim: int, seed: int = 0,
                    starts: int = 24, tol: float = 1e-10):
    """Least-squares search for A with transform(C, A) = target; float candidates only."""
    from scipy.optimize import least_squares

    Cn = C.C.to_complex()
    Tn = target.C.to_complex()
    rng = np.random.default_rng(seed)

    def resid(x):
        M = (x[: dim * dim] + 1j * x[dim * dim:]).reshape(dim, dim)
        try:
            Minv = np.linalg.inv(M)
        except np.linalg.LinAlgError:
            return np.full(2 * dim**4, 1e6)
        new = np.einsum("qprs,pi,rj,sk,mq->mijk", Cn, M, M, M, Minv)
        r = (new - Tn).ravel()
        return np.concatenate([r.real, r.imag])

    for _ in range(starts):
        x0 = rng.normal(size=2 * dim * dim)
        sol = least_squares(resid, x0, xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=4000)
        if np.max(np.abs(resid(sol.x))) < tol:
            yield (sol.x[: dim * dim] + 1j * sol.x[dim * dim:]).reshape(dim, dim)


def _rationalize_matrix(M: np.ndarray):
    out = []
    for row in M:
        r = []
        for z in row:
            q = rationalize(complex(z), tol=1e-8)
            if q is None:
                return None
            r.append(q)
        out.append(r)
    return out


def gamma_of(C: StructureTensor) -> list[list[CycNum]] | None:
    """Bilinear form g with [x,y,z] = g(z,x) y + w g(x,y) z + wb g(y,z) x, if one exists.

    Every 2-dim omega-symmetric tensor arises this way, and a change of basis
    M acts on g by congruence M^T g M.
    """
    a, b, c, d = abcd(C)
    # a = w g12 + wb g21, d = wb g12 + w g21
    det = OMEGA * OMEGA - OMEGA_BAR * OMEGA_BAR
    g12 = (a * OMEGA - d * OMEGA_BAR) / det
    g21 = (d * OMEGA - a * OMEGA_BAR) / det
    g = [[b, g12], [g21, c]]
    return g if constants_from_gamma(g) == C else None


def constants_from_gamma(g) -> StructureTensor:
    entries = []
    for m, i, j, k in itertools.product(range(2), repeat=4):
        v = ZERO
        if m == j:
            v = v + CycNum.of(g[k][i])
        if m == k:
            v = v + OMEGA * CycNum.of(g[i][j])
        if m == i:
            v = v + OMEGA_BAR * CycNum.of(g[j][k])
        if v:
            entries.append(((m, i, j, k), v))
    return StructureTensor.from_entries(2, entries)


def _bil(g, x, y) -> CycNum:
    return sum((x[i] * g[i][j] * y[j] for i in range(2) for j in range(2)), ZERO)


_SQRT_CLASSES = ((1, ONE), (2, SQRT2), (3, SQRT3), (6, SQRT2 * SQRT3))


def _rational_sqrt(q: Fraction) -> CycNum | None:
    """Square root in Q(zeta_24) of a rational, via q = +-c t^2 with c in {1, 2, 3, 6}."""
    if q == 0:
        return ZERO
    sign = ONE if q > 0 else I
    q = abs(q)
    for c, root in _SQRT_CLASSES:
        t = q / c
        n, d = math.isqrt(t.numerator), math.isqrt(t.denominator)
        if n * n == t.numerator and d * d == t.denominator:
            return sign * root * Fraction(n, d)
    return None


def _sqrt(q: CycNum) -> CycNum | None:
    if q.is_rational():
        return _rational_sqrt(Fraction(q.coeffs[0]))
    return cyc_sqrt(q)


def _orthonormal_basis(g):
    """Columns u1, u2 with g(u_i, u_j) = delta_ij for symmetric nondegenerate g, or None.

    With e, f g-orthogonal, q1 = g(e,e), q2 = g(f,f) and q1 q2 = d^2, the form
    q1 x^2 + q2 y^2 = q1 (x + icy)(x - icy) with c = d/q1 factors because i is
    in the field, so x + icy = 1, x - icy = 1/q1 is a point on the unit conic.
    """
    e = next(v for v in ([ONE, ZERO], [ZERO, ONE], [ONE, ONE]) if _bil(g, v, v))
    row = [_bil(g, e, [ONE, ZERO]), _bil(g, e, [ZERO, ONE])]
    f = [-row[1], row[0]]
    q1, q2 = _bil(g, e, e), _bil(g, f, f)
    d = _sqrt(q1 * q2)
    if d is None:
        return None
    c = d / q1
    x = (ONE + q1.inverse()) / 2
    y = (ONE - q1.inverse()) / (2 * I * c)
    u1 = [x * e[k] + y * f[k] for k in range(2)]
    u2 = [(-(q2 * y) * e[k] + q1 * x * f[k]) / d for k in range(2)]
    return [u1, u2]


def _stage3_candidates(C: StructureTensor):
    """Exact normal forms of the bilinear form g: identity (II), diag(1,0) (III), skew (IV)."""
    g = gamma_of(C)
    if g is None:
        return
    symmetric = g[0][1] == g[1][0]
    skew = not g[0][0] and not g[1][1] and g[0][1] == -g[1][0]
    if skew and g[0][1]:
        yield "IV", _diag((g[0][1] * (OMEGA - OMEGA_BAR)).inverse(), ONE)
        return
    if not symmetric:
        return
    if linalg.rank(g) == 2:
        basis = _orthonormal_basis(g)
        if basis is not None:
            yield "II", linalg.transpose(basis)
        return
    ker = [-g[0][1], g[0][0]] if (g[0][0] or g[0][1]) else [-g[1][1], g[1][0]]
    for v in ([ONE, ZERO], [ZERO, ONE], [ONE, ONE]):
        q = _bil(g, v, v)
        r = _sqrt(q) if q else None
        if r is not None:
            yield "III", linalg.transpose([[t / r for t in v], ker])
            return


def cosquare_trace(C: StructureTensor) -> CycNum | None:
    """tr(g^-T g) for nondegenerate g: a congruence invariant (2 for II, -2 for IV)."""
    g = gamma_of(C)
    if g is None:
        return None
    try:
        ginvT = linalg.transpose(linalg.inverse(g))
    except linalg.SingularError:
        return None
    prod = linalg.matmul(ginvT, g)
    return prod[0][0] + prod[1][1]


def classify_constants_2dim(C: StructureTensor, numeric: bool = False, seed: int = 0) -> Classification:
    """Type I-IV of a 2-dim omega-Lie tensor with an exactly re-verified witness.

    Stage 1 detects the zero tensor; stage 2 tries diagonal scalings (after an
    optional swap) solved by exact square roots; stage 3 normalizes the
    associated bilinear form exactly; stage 4 (opt-in) is a float search with
    rationalization.  Anything not re-verified exactly is "unclassified".
    """
    if C.dim != 2:
        raise DimensionError(f"expected a 2-dimensional tensor, got dimension {C.dim}")
    if C.is_zero():
        return Classification("I", linalg.identity(2), 1, C)
    for kind, M in _stage2_candidates(C):
        if _verify(C, M, canonical_2dim(kind)):
            return Classification(kind, M, 2, C)
    for kind, M in _stage3_candidates(C):
        if _verify(C, M, canonical_2dim(kind)):
            return Classification(kind, M, 3, C)
    if numeric:
        for kind in ("II", "III", "IV"):
            target = canonical_2dim(kind)
            for Mf in itertools.islice(_numeric_search(C, target, 2, seed), 6):
                M = _rationalize_matrix(Mf)
                if M is not None and _verify(C, M, target):
                    return Classification(kind, M, 4, C)
    return Classification("unclassified", None, 4 if numeric else 3, C)


def classify_2dim(S: Subspace, bracket="omega", numeric: bool = False, seed: int = 0) -> Classification:
    if S.dim != 2:
        raise DimensionError(f"classify_2dim needs a 2-dimensional subspace, got dimension {S.dim}")
    if not S.algebra.is_trilinear:
        raise DimensionError("2-dim classification applies to C-linear brackets (trilinear algebras)")
    return classify_constants_2dim(induced_constants(S, bracket), numeric, seed)


# -- isomorphisms ----------------------------------------------------------------------------


@dataclass
class Isomorphism:
    found: bool
    witness: list[list[CycNum]] | None
    method: str

    def __bool__(self):
        return self.found


def find_isomorphism(C1: StructureTensor, C2: StructureTensor, candidates=(), numeric: bool = True,
                     seed: int = 0) -> Isomorphism:
    """Exact A with transform_constants(C1, A) == C2, trying ``candidates`` first."""
    if C1.dim != C2.dim:
        return Isomorphism(False, None, "dimension mismatch")
    for M in candidates:
        if _verify(C1, M, C2):
            return Isomorphism(True, [list(r) for r in M], "candidate")
    if numeric:
        for Mf in itertools.islice(_numeric_search(C1, C2, C1.dim, seed, starts=40), 12):
            M = _rationalize_matrix(Mf)
            if M is not None and _verify(C1, M, C2):
                return Isomorphism(True, M, "numeric+rationalized")
    return Isomorphism(False, None, "unclassified")


def map_matrix(S1: Subspace, S2: Subspace, image: Callable[[Element], Element]) -> list[list[CycNum]] | None:
    """Matrix (column k = coordinates of image(b_k) in S2's basis) of a linear map S1 -> S2."""
    cols = []
    for b in S1.basis:
        c = S2.coordinates(image(b))
        if c is None:
            return None
        cols.append(c)
    return linalg.transpose(cols)


# -- direct sums --------------------------------------------------------------------------


@dataclass
class DirectSumReport:
    is_direct: bool
    dims: list[int]
    span_dim: int
    closed: list[bool]
    cross: list[dict]

    @property
    def holds(self) -> bool:
        return self.is_direct and all(self.closed)

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        return {"is_direct": self.is_direct, "dims": self.dims, "span_dim": self.span_dim,
                "closed": self.closed, "cross": self.cross, "holds": self.holds}


def direct_sum_report(parts: Sequence[Subspace], bracket="omega") -> DirectSumReport:
    """Vector-space directness, closure of each part, and where mixed brackets land."""
    if not parts:
        raise ValueError("need at least one part")
    A = parts[0].algebra
    if any(p.algebra is not A for p in parts):
        raise ValueError("parts must share one ambient algebra")
    dims = [p.dim for p in parts]
    all_rows = [list(b.coords) for p in parts for b in p.basis]
    span_dim = linalg.rank(all_rows) if all_rows else 0
    is_direct = span_dim == sum(dims)
    closed = [bool(is_subalgebra(p, bracket)) for p in parts]
    br = get_bracket(bracket)
    labelled = [(pi, lab, b) for pi, p in enumerate(parts) for lab, b in zip(p.basis_labels, p.basis)]
    cross = []
    for (p1, l1, x), (p2, l2, y), (p3, l3, z) in itertools.product(labelled, repeat=3):
        if p1 == p2 == p3:
            continue
        val = br(A, x, y, z)
        if val.is_zero():
            lands = "zero"
        else:
            hits = [k for k, p in enumerate(parts) if p.contains(val)]
            lands = f"part {hits[0] + 1}" if hits else "mixed"
        cross.append({"args": [l1, l2, l3], "parts": [p1 + 1, p2 + 1, p3 + 1], "lands": lands})
    return DirectSumReport(is_direct, dims, span_dim, closed, cross)
