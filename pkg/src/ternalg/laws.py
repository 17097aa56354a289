"""Exhaustive and sampled verification of the defining identities.

Multilinear identities are checked on all basis tuples by contracting the
structure tensors, one chunk at a time.  For trilinear algebras the basis is
the canonical one; conjugate-mid algebras are handled on the realified basis
(the identities stay R-multilinear there).  The lexicographically first
failing tuple is reported, with its residual recomputed from elements.
"""

from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from . import perms
from .algebra import (
    Element,
    StructureTensor,
    TernaryAlgebra,
    bracket_tensor,
    from_working_coords,
    get_bracket,
    product_tensor,
    ternary_product,
)
from .cycarray import CycArray
from .scalar import DEFAULT_TOL, OMEGA, OMEGA_BAR, CycNum, cyc_format

EXACT, FLOAT = "exact", "float"
EXHAUSTIVE = "exhaustive-basis"
REALIFIED_EXACT = "realified-exhaustive-exact"
REALIFIED_FLOAT = "realified-float+exact-sampled"
LIMITED = "limited-prefix"
DEFAULT_EXACT_SAMPLES = 64


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("TERNALG_JOBS", "1")))
    except ValueError:
        return 1


@dataclass
class LawReport:
    law: str
    verdict: str
    mode: str
    tuples_checked: int
    counterexample: dict | None = None
    regime: str = EXHAUSTIVE
    certifying: bool = True
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict == "fails" and not self.counterexample:
            raise ValueError("a failing report needs a counterexample")

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"

    def __bool__(self):
        return self.holds

    def to_json(self) -> dict:
        out = asdict(self)
        if out["counterexample"] is None:
            del out["counterexample"]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def __str__(self):
        tag = "" if self.certifying else " [non-certifying]"
        line = f"{self.law}: {self.verdict} ({self.mode}, {self.regime}, {self.tuples_checked} tuples){tag}"
        if self.counterexample:
            line += f"\n  counterexample {self.counterexample['args']}: residual {self.counterexample['residual']}"
        return line


# -- numeric backends -------------------------------------------------------------------


class _Exact:
    mode = EXACT

    def __init__(self, tol=None):
        pass

    @staticmethod
    def lift(T: CycArray):
        return T

    @staticmethod
    def ein(spec, a, b):
        return CycArray.einsum(spec, a, b)

    @staticmethod
    def perm(x, spec):
        return x.permute(spec)

    @staticmethod
    def scale(x, c):
        return x.scale(c)

    @staticmethod
    def mask(x):
        return x.nonzero_mask()


class _Float:
    mode = FLOAT

    def __init__(self, tol=DEFAULT_TOL):
        if not tol or tol <= 0:
            raise ValueError("tolerance must be positive")
        self.tol = tol

    @staticmethod
    def lift(T: CycArray):
        return T.to_complex()

    @staticmethod
    def ein(spec, a, b):
        return np.einsum(spec, a, b)

    @staticmethod
    def perm(x, spec):
        return np.einsum(spec, x)

    @staticmethod
    def scale(x, c):
        return x * complex(c)

    def mask(self, x):
        return np.abs(x) > self.tol


def _backend(mode: str, tol: float):
    if mode == EXACT:
        return _Exact()
    if mode == FLOAT:
        return _Float(tol)
    raise ValueError(f"mode must be 'exact' or 'float', got {mode!r}")


def _run_chunks(fn, n: int, jobs: int | None):
    """Evaluate fn(c) for c in range(n); results in chunk order regardless of jobs."""
    jobs = default_jobs() if jobs is None else max(1, int(jobs))
    if jobs == 1 or n == 1:
        return [fn(c) for c in range(n)]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, range(n)))


def _first_true(mask: np.ndarray):
    hits = np.argwhere(mask)
    return tuple(int(t) for t in hits[0]) if len(hits) else None


def _fmt_residual(x: Element) -> list[str]:
    return [cyc_format(c) for c in x.coords]


def _fmt_float(v: np.ndarray) -> list[str]:
    return [f"{z.real:.12g}{z.imag:+.12g}j" for z in np.asarray(v).ravel()]


def _labels(A: TernaryAlgebra, idx) -> list[str]:
    return [A.working_label(k) for k in idx]


def _working_elements(A: TernaryAlgebra) -> list[Element]:
    return A.working_basis()


# -- element-level evaluators (direct oracles) ---------------------------------------------


def _assoc_sides(A, kind, s, u, v, x, y):
    p = lambda a, b, c: ternary_product(A, a, b, c)  # noqa: E731
    left = p(p(s, u, v), x, y)
    mid = p(s, p(u, v, x), y) if kind == 1 else p(s, p(x, v, u), y)
    right = p(s, u, p(v, x, y))
    return left, mid, right


def ga15_residual(A: TernaryAlgebra, bracket, args) -> Element:
    """Cyclic sum of the four double brackets at the given five elements."""
    br = get_bracket(bracket)
    total = A.zero()
    for t in perms.ga15_identity_permutations():
        a = perms.act_on_positions(t, args)
        total = total + br(A, br(A, a[0], a[1], a[2]), a[3], a[4])
    return total


# -- associativity ----------------------------------------------------------------------------


def _assoc_chunk(P, kind, be):
    """Chunk s of the quinary tensors; returns (fail mask over (u,v,x,y), L-M, M-R)."""

    def run(s):
        Ps = CycArray(P.num[:, s], P.den) if isinstance(P, CycArray) else P[:, s]
        L = be.ein("Muv,pMxy->puvxy", Ps, P)
        if kind == 1:
            M = be.ein("Muvx,pMy->puvxy", P, Ps)
        else:
            M = be.ein("Mxvu,pMy->puvxy", P, Ps)
        R = be.ein("Mvxy,puM->puvxy", P, Ps)
        fail = (be.mask(L - M) | be.mask(M - R)).any(axis=0)
        return _first_true(fail), int(np.count_nonzero(fail))

    return run


def check_assoc(A: TernaryAlgebra, kind: int, mode: str = EXACT, tol: float = DEFAULT_TOL,
                jobs: int | None = None, limit: int | None = None,
                exact_samples: int = DEFAULT_EXACT_SAMPLES, realified_exact: bool = False,
                seed: int = 0) -> LawReport:
    """Associativity of the first or second kind on all basis 5-tuples."""
    if kind not in (1, 2):
        raise ValueError("kind must be 1 or 2")
    law = f"associativity-{'I' if kind == 1 else 'II'}"
    if limit is not None:
        return _limited(A, law, limit, lambda args: _assoc_residual(A, kind, args), mode)
    regime = EXHAUSTIVE
    run_mode = mode
    if not A.is_trilinear and not realified_exact:
        regime, run_mode = REALIFIED_FLOAT, FLOAT
    elif not A.is_trilinear:
        regime = REALIFIED_EXACT
    be = _backend(run_mode, tol)
    P = be.lift(product_tensor(A))
    n = A.working_dim
    results = _run_chunks(_assoc_chunk(P, kind, be), n, jobs)
    report = _assemble(A, law, run_mode, regime, n, results,
                       lambda args: _assoc_residual(A, kind, args))
    if regime == REALIFIED_FLOAT and report.holds and exact_samples:
        sample = _sample_assoc(A, kind, exact_samples, seed)
        report.details["exact_samples"] = exact_samples
        if sample is not None:
            return sample
        report.mode = f"{FLOAT}+{EXACT}"
    return report


def _assoc_residual(A, kind, args):
    left, mid, right = _assoc_sides(A, kind, *args)
    d1 = left - mid
    return d1 if d1 else mid - right


def _assemble(A, law, mode, regime, nchunks, results, residual_fn) -> LawReport:
    n = A.working_dim
    tuples = n**5
    for c, (first, count) in enumerate(results):
        if first is None:
            continue
        idx = (c,) + first
        basis = _working_elements(A)
        residual = residual_fn([basis[k] for k in idx])
        if not residual:
            raise AssertionError(f"{law}: tensor route flagged {idx} but direct evaluation gives 0")
        total_fail = sum(r[1] for r in results)
        return LawReport(law, "fails", mode, tuples,
                         {"args": _labels(A, idx), "indices": list(idx), "residual": _fmt_residual(residual)},
                         regime, True, {"failing_tuples": total_fail})
    return LawReport(law, "holds", mode, tuples, None, regime, True)


def _limited(A, law, limit, residual_fn, mode) -> LawReport:
    """Direct evaluation of the first ``limit`` basis 5-tuples; never certifying."""
    basis = _working_elements(A)
    n = len(basis)
    checked = 0
    for idx in itertools.product(range(n), repeat=5):
        if checked >= limit:
            break
        checked += 1
        res = residual_fn([basis[k] for k in idx])
        if res:
            return LawReport(law, "fails", EXACT, checked,
                             {"args": _labels(A, idx), "indices": list(idx), "residual": _fmt_residual(res)},
                             LIMITED, False)
    return LawReport(law, "holds", EXACT, checked, None, LIMITED, False)


def _random_working(A: TernaryAlgebra, rng, count: int, height: int = 6) -> list[Element]:
    """Random elements with rational real and imaginary parts (Gaussian rationals)."""
    out = []
    for _ in range(count):
        coords = []
        for _k in range(A.dim):
            re = Fraction(int(rng.integers(-height, height + 1)), int(rng.integers(1, 5)))
            im = Fraction(int(rng.integers(-height, height + 1)), int(rng.integers(1, 5)))
            coords.append(CycNum.of(re) + CycNum.i() * im)
        out.append(Element(coords))
    return out


def _batched(A, W: list[Element]) -> CycArray:
    """Stack element coordinates (complex) into a (S, dim) array."""
    return CycArray.stack([w.vec for w in W], axis=0)


def _batched_product(A: TernaryAlgebra, X: CycArray, Y: CycArray, Z: CycArray) -> CycArray:
    Yv = Y if A.is_trilinear else Y.conj()
    t = CycArray.einsum("mijk,tk->tmij", A.product, Z)
    t = CycArray.einsum("tmij,tj->tmi", t, Yv)
    return CycArray.einsum("tmi,ti->tm", t, X)


def _sample_assoc(A, kind, count, seed) -> LawReport | None:
    """Exact check on random Gaussian-rational 5-tuples; a report only on failure."""
    rng = np.random.default_rng(seed)
    S = [_batched(A, _random_working(A, rng, count)) for _ in range(5)]
    s, u, v, x, y = S
    p = lambda a, b, c: _batched_product(A, a, b, c)  # noqa: E731
    left = p(p(s, u, v), x, y)
    mid = p(s, p(u, v, x), y) if kind == 1 else p(s, p(x, v, u), y)
    right = p(s, u, p(v, x, y))
    bad = ((left - mid).nonzero_mask() | (mid - right).nonzero_mask()).any(axis=1)
    if not bad.any():
        return None
    t = int(np.argmax(bad))
    args = [Element(CycArray(z.num[t], z.den)) for z in S]
    res = _assoc_residual(A, kind, args)
    law = f"associativity-{'I' if kind == 1 else 'II'}"
    return LawReport(law, "fails", EXACT, count,
                     {"args": [repr(a) for a in args], "residual": _fmt_residual(res)},
                     REALIFIED_FLOAT, True, {"sample_index": t, "seed": seed})


# -- omega-symmetry -----------------------------------------------------------------------------


def check_omega_symmetry(A: TernaryAlgebra, bracket="omega", mode: str = EXACT,
                         tol: float = DEFAULT_TOL, root: CycNum | None = None) -> LawReport:
    """[u, v, w] = root * [v, w, u] on all working basis triples."""
    br = get_bracket(bracket)
    root = br.root if root is None else root
    be = _backend(mode, tol)
    B = be.lift(bracket_tensor(A, br, complex_output=True))
    rotated = be.perm(B, "mbca->mabc")
    fail = be.mask(B - be.scale(rotated, root)).any(axis=0)
    n = A.working_dim
    law = f"omega-symmetry[{br.name}]"
    regime = EXHAUSTIVE if A.is_trilinear else REALIFIED_EXACT
    first = _first_true(fail)
    if first is None:
        return LawReport(law, "holds", mode, n**3, None, regime, True, {"root": cyc_format(root)})
    basis = _working_elements(A)
    u, v, w = (basis[k] for k in first)
    res = br(A, u, v, w) - br(A, v, w, u) * root
    if not res:
        raise AssertionError(f"{law}: tensor route flagged {first} but direct evaluation gives 0")
    return LawReport(law, "fails", mode, n**3,
                     {"args": _labels(A, first), "indices": list(first), "residual": _fmt_residual(res)},
                     regime, True, {"root": cyc_format(root), "failing_tuples": int(np.count_nonzero(fail))})


# -- GA(1,5)-identity ---------------------------------------------------------------------------


_ARGS = "abcde"


def _ga15_specs() -> list[str]:
    specs = []
    for t in perms.ga15_identity_permutations():
        src = "".join(_ARGS[t(q) - 1] for q in range(1, 6))
        specs.append(f"{src}->{_ARGS}")
    return specs


def _ga15_chunk(B, be):
    specs = _ga15_specs()

    def run(p):
        Bp = CycArray(B.num[p], B.den) if isinstance(B, CycArray) else B[p]
        DB = be.ein("Mabc,Mde->abcde", B, Bp)
        total = None
        for spec in specs:
            term = be.perm(DB, spec)
            total = term if total is None else total + term
        return be.mask(total)

    return run


def check_ga15_identity(A: TernaryAlgebra, bracket="omega", mode: str = EXACT, tol: float = DEFAULT_TOL,
                        jobs: int | None = None, limit: int | None = None,
                        exact_samples: int = DEFAULT_EXACT_SAMPLES, realified_exact: bool = False,
                        seed: int = 0) -> LawReport:
    """GA(1,5)-identity of ``bracket`` on all working basis 5-tuples.

    Chunks run over the output coordinate; failing masks are OR-ed, so the
    reported counterexample is the first failing tuple in lexicographic order.
    """
    br = get_bracket(bracket)
    law = f"GA(1,5)-identity[{br.name}]"
    residual_fn = lambda args: ga15_residual(A, br, args)  # noqa: E731
    if limit is not None:
        return _limited(A, law, limit, residual_fn, mode)
    regime, run_mode = EXHAUSTIVE, mode
    if not A.is_trilinear:
        regime, run_mode = (REALIFIED_EXACT, mode) if realified_exact else (REALIFIED_FLOAT, FLOAT)
    be = _backend(run_mode, tol)
    B = be.lift(bracket_tensor(A, br))
    n = A.working_dim
    masks = _run_chunks(_ga15_chunk(B, be), n, jobs)
    fail = np.logical_or.reduce(masks)
    first = _first_true(fail)
    if first is not None:
        basis = _working_elements(A)
        res = residual_fn([basis[k] for k in first])
        if not res:
            raise AssertionError(f"{law}: tensor route flagged {first} but direct evaluation gives 0")
        return LawReport(law, "fails", run_mode, n**5,
                         {"args": _labels(A, first), "indices": list(first), "residual": _fmt_residual(res)},
                         regime, True, {"failing_tuples": int(np.count_nonzero(fail))})
    report = LawReport(law, "holds", run_mode, n**5, None, regime, True)
    if regime == REALIFIED_FLOAT and exact_samples:
        bad = _sample_ga15(A, br, exact_samples, seed)
        report.details["exact_samples"] = exact_samples
        if bad is not None:
            return bad
        report.mode = f"{FLOAT}+{EXACT}"
    return report


def _random_working_coords(A: TernaryAlgebra, rng, count: int, height: int = 6) -> CycArray:
    """(count, working_dim) array of random rationals: Gaussian-rational elements."""
    num = rng.integers(-height, height + 1, size=(count, A.working_dim)).astype(np.int64)
    den = rng.integers(1, 5, size=(count, A.working_dim)).astype(np.int64)
    lcm = int(np.lcm.reduce(den.ravel()))
    out = np.zeros((count, A.working_dim, 8), dtype=np.int64)
    out[..., 0] = num * (lcm // den)
    return CycArray(out, lcm)


def _sample_ga15(A, br, count, seed) -> LawReport | None:
    """Exact GA(1,5)-identity on random tuples, batched through the working tensor."""
    rng = np.random.default_rng(seed)
    B = bracket_tensor(A, br)
    W = [_random_working_coords(A, rng, count) for _ in range(5)]
    total = None
    for t in perms.ga15_identity_permutations():
        a = [W[t(q) - 1] for q in range(1, 6)]
        inner = CycArray.chain("Mabc,ta,tb,tc->tM", B, a[0], a[1], a[2])
        outer = CycArray.chain("pMde,tM,td,te->tp", B, inner, a[3], a[4])
        total = outer if total is None else total + outer
    bad = total.nonzero_mask().any(axis=1)
    if not bad.any():
        return None
    t = int(np.argmax(bad))
    args = [from_working_coords(A, CycArray(w.num[t], w.den)) for w in W]
    res = ga15_residual(A, br, args)
    return LawReport(f"GA(1,5)-identity[{br.name}]", "fails", EXACT, count,
                     {"args": [repr(x) for x in args], "residual": _fmt_residual(res)},
                     REALIFIED_FLOAT, True, {"sample_index": t, "seed": seed})


# -- GA(1,5)-system on structure constants -----------------------------------------------------


# C^m_{ikl}C^p_{mrs} + C^m_{irk}C^p_{msl} + C^m_{isr}C^p_{mlk} + C^m_{ils}C^p_{mkr}
_SYSTEM_TERMS = (("mikl", "mrs"), ("mirk", "msl"), ("misr", "mlk"), ("mils", "mkr"))
_CYCLE = str.maketrans("iklrs", "klrsi")


def _system_specs() -> list[str]:
    specs = []
    for first, second in _SYSTEM_TERMS:
        for _ in range(5):
            specs.append(f"{first},{second}->iklrs")
            first, second = first.translate(_CYCLE), second.translate(_CYCLE)
    return specs


def check_ga15_system(C: StructureTensor, mode: str = EXACT, tol: float = DEFAULT_TOL,
                      jobs: int | None = None) -> LawReport:
    """The GA(1,5)-system for every index 5-tuple (i, k, l, r, s) and every p."""
    be = _backend(mode, tol)
    T = be.lift(C.C)
    n = C.dim
    specs = _system_specs()

    def run(p):
        Tp = CycArray(T.num[p], T.den) if isinstance(T, CycArray) else T[p]
        total = None
        for spec in specs:
            term = be.ein(spec, T, Tp)
            total = term if total is None else total + term
        return be.mask(total), total

    out = _run_chunks(run, n, jobs)
    fail = np.logical_or.reduce([m for m, _ in out])
    first = _first_true(fail)
    law = "GA(1,5)-system"
    if first is None:
        return LawReport(law, "holds", mode, n**5, None, EXHAUSTIVE, True)
    if mode == EXACT:
        res = [cyc_format(out[p][1].item(*first)) for p in range(n)]
    else:
        res = _fmt_float([out[p][1][first] for p in range(n)])
    return LawReport(law, "fails", mode, n**5,
                     {"args": [C.labels[k] for k in first], "indices": list(first), "residual": res},
                     EXHAUSTIVE, True, {"failing_tuples": int(np.count_nonzero(fail))})


# -- generic construction conditions -----------------------------------------------------------


def check_construction_conditions(spec, kind: int) -> LawReport:
    """Sufficient conditions on the 2-form for associativity of the given kind.

    Left forms: alpha(alpha(u,v).w, s) = alpha(u,v) alpha(w,s) = alpha(u, alpha(v,w).s)
    (kind 1) or alpha(u, alpha(s,w).v) (kind 2).  Right forms:
    beta(v, w.beta(s,t)) = beta(v,w) beta(s,t) = beta(v.beta(w,s), t) (kind 1)
    or beta(s.beta(w,v), t) (kind 2).
    """
    if kind not in (1, 2):
        raise ValueError("kind must be 1 or 2")
    F, Act, R = spec.form, spec.action, spec.ring_mult
    ch = CycArray.chain
    if spec.side == "left":
        # variables (u, v, w, s)
        first = ch("uva,amw,msc->uvwsc", F, Act, F)
        prod = ch("uva,wsb,abc->uvwsc", F, F, R)
        if kind == 1:
            third = ch("vwa,ams,umc->uvwsc", F, Act, F)
        else:
            third = ch("swa,amv,umc->uvwsc", F, Act, F)
        names = ("u", "v", "w", "s")
    else:
        # variables (v, w, s, t)
        first = ch("sta,amw,vmc->vwstc", F, Act, F)
        prod = ch("vwa,stb,abc->vwstc", F, F, R)
        if kind == 1:
            third = ch("wsa,amv,mtc->vwstc", F, Act, F)
        else:
            third = ch("wva,ams,mtc->vwstc", F, Act, F)
        names = ("v", "w", "s", "t")
    fail = ((first - prod).nonzero_mask() | (prod - third).nonzero_mask()).any(axis=-1)
    law = f"construction-conditions-{'I' if kind == 1 else 'II'}[{spec.side}]"
    total = int(fail.size)
    idx = _first_true(fail)
    if idx is None:
        return LawReport(law, "holds", EXACT, total, None, EXHAUSTIVE, True)
    d1 = first - prod
    which, diff = ("first=product", d1) if d1[idx].nonzero_mask().any() else ("product=kind", prod - third)
    residual = [cyc_format(diff.item(*idx, c)) for c in range(diff.shape[-1])]
    return LawReport(law, "fails", EXACT, total,
                     {"args": [f"{nm}=e{k + 1}" for nm, k in zip(names, idx)], "indices": list(idx),
                      "residual": residual, "condition": which},
                     EXHAUSTIVE, True, {"failing_tuples": int(np.count_nonzero(fail))})


# -- convenience -------------------------------------------------------------------------------


def check_all_axioms(A: TernaryAlgebra, bracket="omega", **kw) -> list[LawReport]:
    return [check_omega_symmetry(A, bracket, mode=kw.get("mode", EXACT), tol=kw.get("tol", DEFAULT_TOL)),
            check_ga15_identity(A, bracket, **kw)]


def q_associators_vanish(A: TernaryAlgebra, kind: int, mode: str = EXACT, tol: float = DEFAULT_TOL) -> bool:
    """True iff Q_w and Q_wb of the given kind vanish on all working basis 5-tuples."""
    be = _backend(mode, tol)
    P = be.lift(product_tensor(A))
    n = A.working_dim
    for s in range(n):
        Ps = CycArray(P.num[:, s], P.den) if isinstance(P, CycArray) else P[:, s]
        L = be.ein("Muv,pMxy->puvxy", Ps, P)
        M = be.ein("Muvx,pMy->puvxy", P, Ps) if kind == 1 else be.ein("Mxvu,pMy->puvxy", P, Ps)
        R = be.ein("Mvxy,puM->puvxy", P, Ps)
        for w1, w2 in ((OMEGA, OMEGA_BAR), (OMEGA_BAR, OMEGA)):
            Q = L + be.scale(M, w1) + be.scale(R, w2)
            if be.mask(Q).any():
                return False
    return True
