"""``ternalg`` command line: law checks, constants, classification, reproduction bundles.

Exit codes: 0 when every checked claim holds, 1 when one fails, 2 on usage or
parse errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from . import laws
from .algebra import BRACKETS, ClosureError, Element, StructureTensor, TernaryAlgebra, structure_constants
from .reproduce import TARGETS, run_target
from .scalar import DEFAULT_TOL, ParseError, cyc_parse
from .subalg import (
    DimensionError,
    Subspace,
    classify_2dim,
    classify_constants_2dim,
    is_abelian,
    is_subalgebra,
)
from .zoo import G_elements, algebra_from_descriptor, algebra_to_descriptor

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    mode: str = laws.EXACT
    tolerance: float = DEFAULT_TOL
    jobs: int = 1
    output: str = "human"

    def __post_init__(self):
        if not self.tolerance > 0:
            raise UsageError("--tol must be positive")
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")


def _config(args) -> RunConfig:
    jobs = args.jobs if args.jobs is not None else laws.default_jobs()
    return RunConfig(args.mode, args.tol, jobs, args.output)


# -- loading -----------------------------------------------------------------------------------


def load_algebra(args) -> TernaryAlgebra:
    """Algebra from ``--algebra`` (descriptor text) or ``--spec`` (JSON file)."""
    if bool(args.algebra) == bool(args.spec):
        raise UsageError("give exactly one of --algebra or --spec")
    try:
        if args.spec:
            with open(args.spec) as fh:
                data = json.load(fh)
            if "kind" not in data and "entries" in data:
                # a dumped StructureTensor: its table is the product
                return StructureTensor.from_json(data).as_algebra(name=args.spec)
            return algebra_from_descriptor(data)
        return algebra_from_descriptor(args.algebra)
    except (OSError, json.JSONDecodeError, ParseError, ValueError, TypeError) as exc:
        raise UsageError(f"cannot load algebra: {exc}") from None


def named_basis(A: TernaryAlgebra, which: str | None) -> tuple[list[Element], list[str]]:
    if which in (None, "canonical"):
        return A.basis(), list(A.labels)
    if which == "G":
        if A.dim != 8 or not A.is_trilinear:
            raise UsageError("the G-basis needs the 8-dim trilinear cubic algebra (cubic:n=2)")
        return G_elements(), [f"G{k}" for k in range(1, 9)]
    raise UsageError(f"unknown basis {which!r}; use 'canonical' or 'G'")


def parse_span(A: TernaryAlgebra, text: str, basis, labels) -> Subspace:
    """``"G3,G4"`` (basis labels) or a JSON list of coordinate vectors of scalar literals."""
    text = text.strip()
    try:
        if text.startswith("["):
            vecs = [Element([cyc_parse(str(c)) for c in row]) for row in json.loads(text)]
            return Subspace(A, vecs)
        names = [t.strip() for t in text.split(",") if t.strip()]
        lookup = dict(zip(labels, basis))
        missing = [n for n in names if n not in lookup]
        if missing:
            raise UsageError(f"unknown basis labels {missing}; known: {', '.join(labels)}")
        return Subspace(A, [lookup[n] for n in names], names)
    except (json.JSONDecodeError, ParseError, ValueError) as exc:
        raise UsageError(f"cannot parse span {text!r}: {exc}") from None


# -- output ------------------------------------------------------------------------------------


def _emit_reports(cfg: RunConfig, reports: Sequence[laws.LawReport], header: dict) -> int:
    ok = all(r.holds for r in reports)
    if cfg.output == "json":
        print(json.dumps({**header, "reports": [r.to_json() for r in reports], "holds": ok}, indent=2))
    else:
        for r in reports:
            print(r)
    return EXIT_OK if ok else EXIT_FAIL


def _stream(cfg: RunConfig, reports) -> list[laws.LawReport]:
    """Print human-mode reports as they arrive; collect for the exit code."""
    out = []
    for r in reports:
        out.append(r)
        if cfg.output == "human":
            print(r, flush=True)
    return out


# -- commands ----------------------------------------------------------------------------------


def cmd_axioms(args) -> int:
    cfg, A = _config(args), load_algebra(args)
    common = dict(mode=cfg.mode, tol=cfg.tolerance)

    def gen():
        yield laws.check_omega_symmetry(A, args.bracket, **common)
        yield laws.check_ga15_identity(A, args.bracket, jobs=cfg.jobs, limit=args.limit,
                                       exact_samples=args.exact_samples, realified_exact=args.realified_exact,
                                       **common)

    reports = _stream(cfg, gen())
    ok = all(r.holds for r in reports)
    if cfg.output == "json":
        return _emit_reports(cfg, reports, {"command": "axioms", "algebra": A.name, "bracket": args.bracket})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_assoc(args) -> int:
    cfg, A = _config(args), load_algebra(args)
    rep = laws.check_assoc(A, args.kind, mode=cfg.mode, tol=cfg.tolerance, jobs=cfg.jobs, limit=args.limit,
                           exact_samples=args.exact_samples, realified_exact=args.realified_exact)
    return _emit_reports(cfg, [rep], {"command": "assoc", "algebra": A.name, "kind": args.kind})


def cmd_constants(args) -> int:
    cfg, A = _config(args), load_algebra(args)
    basis, labels = named_basis(A, args.basis)
    try:
        if args.basis in (None, "canonical"):
            C = structure_constants(A, args.bracket)
        else:
            C = structure_constants(A, args.bracket, basis=basis, labels=labels)
    except ClosureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    root = BRACKETS[args.bracket].root
    sym = C.is_omega_symmetric(root)
    system = laws.check_ga15_system(C, mode=cfg.mode, tol=cfg.tolerance, jobs=cfg.jobs)
    if args.dump:
        with open(args.dump, "w") as fh:
            json.dump(C.to_json(), fh, indent=2)
    if cfg.output == "json":
        print(json.dumps({"command": "constants", "algebra": A.name, "bracket": args.bracket,
                          "constants": C.to_json(), "omega_symmetric": sym, "ga15_system": system.to_json(),
                          "holds": sym and system.holds}, indent=2))
    else:
        entries = C.to_json()["entries"]
        print(f"structure constants of the {args.bracket} bracket ({len(entries)} nonzero):")
        for e in entries:
            i, j, k, m = (C.labels[e[x]] for x in "ijkm")
            print(f"  [{i},{j},{k}] -> ({e['value']}) {m}")
        print(f"omega-symmetry of constants: {'holds' if sym else 'fails'}")
        print(system)
    return EXIT_OK if sym and system.holds else EXIT_FAIL


def cmd_classify(args) -> int:
    cfg = _config(args)
    if args.constants:
        try:
            with open(args.constants) as fh:
                C = StructureTensor.from_json(json.load(fh))
        except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
            raise UsageError(f"cannot load constants: {exc}") from None
        if C.dim != 2:
            raise UsageError(f"classification needs 2-dim constants, got dim {C.dim}")
        result = classify_constants_2dim(C, numeric=args.numeric)
        closed = True
    else:
        if not args.span:
            raise UsageError("give --span (with --algebra/--spec) or --constants")
        A = load_algebra(args)
        basis, labels = named_basis(A, args.basis)
        S = parse_span(A, args.span, basis, labels)
        closed = is_subalgebra(S, args.bracket).holds
        if not closed:
            result = None
        else:
            try:
                result = classify_2dim(S, args.bracket, numeric=args.numeric)
            except DimensionError as exc:
                raise UsageError(str(exc)) from None
    if cfg.output == "json":
        print(json.dumps({"command": "classify", "closed": closed,
                          "classification": result.to_json() if result else None}, indent=2))
    elif result is None:
        print("span is not closed under the bracket; no classification")
    else:
        wit = result.witness_str()
        print(f"type {result.type} (stage {result.stage})" + (f", witness {wit}" if wit else ""))
    if result is None:
        return EXIT_FAIL
    return EXIT_FAIL if result.type == "unclassified" else EXIT_OK


def cmd_subalgebras(args) -> int:
    cfg, A = _config(args), load_algebra(args)
    basis, labels = named_basis(A, args.basis)
    if not 1 <= args.size <= len(basis):
        raise UsageError(f"--size must be between 1 and {len(basis)}")
    rows = []
    for idx in itertools.combinations(range(len(basis)), args.size):
        S = Subspace(A, [basis[i] for i in idx], [labels[i] for i in idx])
        closed = is_subalgebra(S, args.bracket).holds
        row = {"span": [labels[i] for i in idx], "closed": closed}
        if closed:
            row["abelian"] = is_abelian(S, args.bracket).holds
            if S.dim == 2 and A.is_trilinear:
                row["type"] = classify_2dim(S, args.bracket).type
        rows.append(row)
        if cfg.output == "human" and (closed or args.all):
            extra = "" if not closed else (", abelian" if row["abelian"] else "") + (
                f", type {row['type']}" if "type" in row else "")
            print(f"<{','.join(row['span'])}>: {'closed' if closed else 'not closed'}{extra}", flush=True)
    if cfg.output == "json":
        print(json.dumps({"command": "subalgebras", "size": args.size, "spans": rows}, indent=2))
    else:
        print(f"{sum(r['closed'] for r in rows)} of {len(rows)} spans are closed")
    return EXIT_OK


def cmd_reproduce(args) -> int:
    cfg = _config(args)
    names = list(TARGETS) if args.target == "all" else [args.target]
    if args.target != "all" and args.target not in TARGETS:
        raise UsageError(f"unknown target {args.target!r}; choose from all, {', '.join(TARGETS)}")
    failed = False
    for name in names:
        kw = {}
        if name in ("second-kind", "theorem1"):
            kw["mode"] = cfg.mode
        if name == "theorem1":
            kw["tol"] = cfg.tolerance
        if name in ("second-kind", "theorem1", "oracles"):
            kw["jobs"] = cfg.jobs
        for claim in run_target(name, **kw):
            failed |= claim.holds is False
            if cfg.output == "json":
                print(json.dumps({"target": name, **claim.to_json()}), flush=True)
            else:
                print(f"{name}: {claim}", flush=True)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_describe(args) -> int:
    A = load_algebra(args)
    print(json.dumps(algebra_to_descriptor(A), indent=2))
    return EXIT_OK


# -- parser ------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ternalg", description="Exact checks for ternary omega-Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, algebra=True):
        if algebra:
            sp.add_argument("--algebra", help="descriptor such as cubic:n=2,pairing=A")
            sp.add_argument("--spec", help="JSON descriptor file (or a dumped constants file)")
        sp.add_argument("--bracket", choices=sorted(BRACKETS), default="omega")
        sp.add_argument("--mode", choices=[laws.EXACT, laws.FLOAT], default=laws.EXACT)
        sp.add_argument("--tol", type=float, default=DEFAULT_TOL)
        sp.add_argument("--jobs", type=int, default=None, help="worker threads (default: $TERNALG_JOBS or 1)")
        sp.add_argument("--output", choices=["human", "json"], default="human")

    def sampling(sp):
        sp.add_argument("--limit", type=int, default=None, help="check only the first N tuples (non-certifying)")
        sp.add_argument("--exact-samples", type=int, default=laws.DEFAULT_EXACT_SAMPLES,
                        help="exact random tuples for conjugate-mid algebras")
        sp.add_argument("--realified-exact", action="store_true",
                        help="exhaustive exact check on the realified basis for conjugate-mid algebras")

    sp = sub.add_parser("axioms", help="omega-symmetry and the GA(1,5)-identity")
    common(sp)
    sampling(sp)
    sp.set_defaults(func=cmd_axioms)

    sp = sub.add_parser("assoc", help="associativity of the first or second kind")
    common(sp)
    sampling(sp)
    sp.add_argument("--kind", type=int, choices=[1, 2], default=2)
    sp.set_defaults(func=cmd_assoc)

    sp = sub.add_parser("constants", help="structure constants and their GA(1,5)-system")
    common(sp)
    sp.add_argument("--basis", default=None, help="'canonical' (default) or 'G' for cubic n=2")
    sp.add_argument("--dump", default=None, help="write the constants as JSON to this file")
    sp.set_defaults(func=cmd_constants)

    sp = sub.add_parser("classify", help="type I-IV of a 2-dim subalgebra")
    common(sp)
    sp.add_argument("--span", help="basis labels (G3,G4) or JSON coordinate rows")
    sp.add_argument("--basis", default=None, help="'canonical' (default) or 'G'")
    sp.add_argument("--constants", help="classify a dumped 2-dim constants file instead")
    sp.add_argument("--numeric", action="store_true", help="allow the numeric search stage")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("subalgebras", help="closure of every coordinate span of a given size")
    common(sp)
    sp.add_argument("--basis", default=None, help="'canonical' (default) or 'G'")
    sp.add_argument("--size", type=int, default=2)
    sp.add_argument("--all", action="store_true", help="also list spans that are not closed")
    sp.set_defaults(func=cmd_subalgebras)

    sp = sub.add_parser("reproduce", help="run a named bundle of claims")
    sp.add_argument("target", help="one of: all, " + ", ".join(TARGETS))
    common(sp, algebra=False)
    sp.set_defaults(func=cmd_reproduce)

    sp = sub.add_parser("describe", help="print the custom JSON descriptor of an algebra")
    common(sp)
    sp.set_defaults(func=cmd_describe)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
