"""Permutations of five points and the affine group GA(1,5).

Composition is left to right: ``compose(p, q)`` applies ``p`` first, then
``q`` (x -> q(p(x))).  With this convention the defining relations
sigma^5 = tau^4 = e and tau sigma tau^-1 = sigma^2 hold for
sigma = (1 2 3 4 5), tau = (2 4 5 3).

Permutations act on argument *positions*: ``act_on_positions(p, args)``
returns the tuple whose j-th entry is ``args[p(j)]``, i.e. the argument
v_j is replaced by v_{p(j)}.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

N = 5


@dataclass(frozen=True, order=True)
class Perm5:
    images: tuple[int, ...]  # images[j-1] = p(j), values in 1..5

    def __post_init__(self):
        if sorted(self.images) != list(range(1, N + 1)):
            raise ValueError(f"not a permutation of 1..{N}: {self.images}")

    def __call__(self, j: int) -> int:
        return self.images[j - 1]

    @classmethod
    def identity(cls) -> "Perm5":
        return cls(tuple(range(1, N + 1)))

    @classmethod
    def from_cycles(cls, text: str) -> "Perm5":
        """Parse cycle notation such as ``"(2 4 5 3)"``, ``"(1 2)(3 4)"`` or ``"id"``."""
        text = text.strip()
        img = list(range(1, N + 1))
        if text in ("id", "e", "()", ""):
            return cls(tuple(img))
        if not re.fullmatch(r"(\(\s*[1-5](\s+[1-5])*\s*\)\s*)+", text):
            raise ValueError(f"bad cycle notation: {text!r}")
        seen = set()
        for body in re.findall(r"\(([^)]*)\)", text):
            pts = [int(x) for x in body.split()]
            if seen & set(pts) or len(set(pts)) != len(pts):
                raise ValueError(f"cycles in {text!r} are not disjoint")
            seen |= set(pts)
            for a, b in zip(pts, pts[1:] + pts[:1]):
                img[a - 1] = b
        return cls(tuple(img))

    def cycles(self) -> list[tuple[int, ...]]:
        out, seen = [], set()
        for start in range(1, N + 1):
            if start in seen or self(start) == start:
                continue
            cyc, x = [], start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self(x)
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cs = self.cycles()
        if not cs:
            return "id"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)

    def __repr__(self) -> str:
        return f"Perm5({str(self)!r})"

    def __mul__(self, other: "Perm5") -> "Perm5":
        return compose(self, other)

    def __pow__(self, k: int) -> "Perm5":
        if k < 0:
            return inverse(self) ** (-k)
        out = Perm5.identity()
        for _ in range(k):
            out = compose(out, self)
        return out

    def order(self) -> int:
        k, p = 1, self
        while p != Perm5.identity():
            p = compose(p, self)
            k += 1
        return k


def compose(p: Perm5, q: Perm5) -> Perm5:
    """p first, then q."""
    return Perm5(tuple(q(p(j)) for j in range(1, N + 1)))


def inverse(p: Perm5) -> Perm5:
    img = [0] * N
    for j in range(1, N + 1):
        img[p(j) - 1] = j
    return Perm5(tuple(img))


SIGMA = Perm5.from_cycles("(1 2 3 4 5)")
TAU = Perm5.from_cycles("(2 4 5 3)")
IDENTITY = Perm5.identity()


def generate_subgroup(gens: Iterable[Perm5]) -> list[Perm5]:
    """Breadth-first closure; the result is sorted lexicographically by images."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    seen = {IDENTITY}
    queue = deque([IDENTITY])
    while queue:
        g = queue.popleft()
        for h in gens:
            for x in (compose(g, h), compose(g, inverse(h))):
                if x not in seen:
                    seen.add(x)
                    queue.append(x)
    return sorted(seen)


def check_presentation(sigma: Perm5 = SIGMA, tau: Perm5 = TAU) -> dict:
    """Verify the defining relations of GA(1,5) and the order of <sigma, tau>."""
    group = generate_subgroup([sigma, tau])
    lhs = compose(compose(tau, sigma), inverse(tau))
    claims = {
        "sigma^5 = e": sigma**5 == IDENTITY,
        "tau^4 = e": tau**4 == IDENTITY,
        "tau sigma tau^-1 = sigma^2": lhs == sigma**2,
        "|<sigma, tau>| = 20": len(group) == 20,
        "sigma has order 5": sigma.order() == 5,
        "tau has order 4": tau.order() == 4,
    }
    return {"claims": claims, "holds": all(claims.values()), "order": len(group)}


def affine_form(p: Perm5) -> tuple[int, int] | None:
    """(a, b) with p(x) = a*x + b over F_5, labels 1..5 read as 0..4; else None."""
    for a in range(1, 5):
        for b in range(5):
            if all(p(x + 1) - 1 == (a * x + b) % 5 for x in range(5)):
                return a, b
    return None


def act_on_positions(p: Perm5, args: Sequence):
    """(args[p(1)], ..., args[p(5)]) with 1-based p."""
    if len(args) != N:
        raise ValueError(f"expected {N} arguments, got {len(args)}")
    return tuple(args[p(j) - 1] for j in range(1, N + 1))


def cyclic_sum(f: Callable, args: Sequence, zero=None):
    """Sum of f over the five cyclic shifts v_j -> v_{sigma^k(j)}, k = 0..4."""
    total = zero
    for k in range(N):
        val = f(*act_on_positions(SIGMA**k, args))
        total = val if total is None else total + val
    return total


# Slot maps of the four double brackets in the GA(1,5)-identity, written as
# "slot j of [[., ., .], ., .] receives v_{t(j)}":
#   [[u,v,w],x,y], [[u,x,v],y,w], [[u,y,x],w,v], [[u,w,y],v,x]
GA15_TERMS = (
    Perm5((1, 2, 3, 4, 5)),
    Perm5((1, 4, 2, 5, 3)),
    Perm5((1, 5, 4, 3, 2)),
    Perm5((1, 3, 5, 2, 4)),
)


def ga15_identity_permutations() -> list[Perm5]:
    """All 20 slot maps occurring after the cyclic sum: t first, then sigma^k."""
    return [compose(t, SIGMA**k) for k in range(N) for t in GA15_TERMS]
