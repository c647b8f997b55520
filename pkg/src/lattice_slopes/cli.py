"""Command-line interface.

Exit codes: 0 on success (or an Equal verdict), 1 on input errors and 2 when
a checked property fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import exact_linalg as xl
from .corpus import CorpusEntry, corpus, corpus_names
from .fuzz import CAMPAIGNS, FuzzConfig, run_campaign, write_csv
from .group_rep import (
    InvalidActionError,
    NotMultiplicityFreeError,
    isotypic_decompose,
    min_slope_invariant,
)
from .lattice import dual, tensor
from .serialization import SchemaError, entry_to_json, load_entry, save_entry
from .slope_engine import (
    EnumerationBudgetExceeded,
    RankCapExceeded,
    canonical_filtration,
    is_semistable,
    min_slope_bruteforce,
)
from .tensor_conjecture import audit_all_splits, conjecture_check, product_action, theorem_audit

EXIT_OK, EXIT_INPUT, EXIT_VIOLATION = 0, 1, 2


class InputError(Exception):
    pass


def _entry(source: str) -> CorpusEntry:
    """A JSON file path, or a corpus name when no such file exists."""
    p = Path(source)
    if p.exists():
        return load_entry(p)
    try:
        return corpus(source)
    except KeyError:
        raise InputError(f"{source}: no such file or corpus entry") from None


def _action(entry: CorpusEntry):
    act = entry.action()
    if act is None:
        raise InputError(f"{entry.name}: no group_generators given")
    return act


def _emit_json(obj, path: str | None) -> None:
    text = json.dumps(obj, indent=2)
    if path in (None, "-"):
        print(text)
    else:
        Path(path).write_text(text + "\n")


def cmd_slope(args) -> int:
    print(_entry(args.lattice).lattice.slope)
    return EXIT_OK


def cmd_mumin(args) -> int:
    entry = _entry(args.lattice)
    L = entry.lattice
    method = args.method
    if method == "auto":
        method = "brute"
        if entry.generators is not None and isotypic_decompose(_action(entry)).multiplicity_free:
            method = "invariant"
    if method == "invariant":
        res = min_slope_invariant(L, _action(entry))
    else:
        res = min_slope_bruteforce(L, rank_cap=args.rank_cap)
    print(res.value)
    if args.json:
        _emit_json(res.to_json(), args.json)
    return EXIT_OK


def cmd_filtration(args) -> int:
    f = canonical_filtration(_entry(args.lattice).lattice)
    for i, (S, s) in enumerate(zip(f.steps[1:], f.quotient_slopes), start=1):
        print(f"S{i}: rank {S.rank}, det {S.det}, quotient slope {s}")
    if args.json:
        _emit_json(f.to_json(), args.json)
    return EXIT_OK


def cmd_semistable(args) -> int:
    cert = is_semistable(_entry(args.lattice).lattice)
    if cert.semistable:
        print(f"semistable: mu = mu_min = {cert.slope}")
    else:
        D = cert.destabilizing
        print(f"not semistable: mu = {cert.slope}, mu_min = {cert.min_slope}")
        print(f"destabilizing sublattice (rank {D.rank}): {[list(r) for r in D.coeffs]}")
    return EXIT_OK


def cmd_dual(args) -> int:
    entry = _entry(args.lattice)
    D = dual(entry.lattice)
    gens = None
    if entry.generators is not None:
        # the dual basis transforms by the inverse transpose
        gens = tuple(xl.int_matrix(xl.transpose(xl.inverse(g))) for g in entry.generators)
    out = CorpusEntry(f"{entry.name}^v", D.gram, gens, "dual lattice")
    _emit_json(entry_to_json(out), args.output)
    return EXIT_OK


def cmd_tensor(args) -> int:
    A, B = _entry(args.a), _entry(args.b)
    T = tensor(A.lattice, B.lattice)
    gens = None
    if A.generators is not None and B.generators is not None:
        gens = product_action(_action(A), _action(B)).generators
    out = CorpusEntry(f"{A.name}(x){B.name}", T.gram, gens, "tensor product")
    if args.output:
        save_entry(out, args.output)
    else:
        _emit_json(entry_to_json(out), None)
    return EXIT_OK


def cmd_decompose(args) -> int:
    entry = _entry(args.lattice)
    dec = isotypic_decompose(_action(entry), seed=args.seed)
    print(f"{dec.status}: r = {dec.r}, commutant dim = {dec.commutant_dim}")
    if dec.failed_stage:
        print(f"failed stage: {dec.failed_stage}")
    for i, E in enumerate(dec.components, start=1):
        print(f"E{i} (dim {E.dim}): {[[str(a) for a in row] for row in E.basis]}")
    if args.json:
        _emit_json(dec.to_json(), args.json)
    return EXIT_OK


def cmd_conjecture(args) -> int:
    A, B = _entry(args.a), _entry(args.b)
    actG, actH = _action(A), _action(B)
    rep = conjecture_check(A.lattice, actG, B.lattice, actH)
    print(f"r = {rep.r}, s = {rep.s}")
    print(f"mu_min(L) = {rep.mu_min_L}")
    print(f"mu_min(M) = {rep.mu_min_M}")
    print(f"mu_min(L (x) M) = {rep.mu_min_tensor}")
    print(f"product = {rep.product}")
    print(f"verdict: {rep.verdict}")
    if rep.candidate_counterexample:
        print("CANDIDATE COUNTEREXAMPLE; split masks " + str(list(rep.minimizing_split.masks)))
    report = rep.to_json()
    code = EXIT_OK if rep.verdict == "Equal" else EXIT_VIOLATION
    if args.audit:
        if args.all_splits:
            audits = audit_all_splits(A.lattice, actG, B.lattice, actH)
        else:
            audits = [theorem_audit(A.lattice, actG, B.lattice, actH)]
        for au in audits:
            if au.applicable:
                print(f"audit at masks {list(au.masks)}:")
            print(au.table())
            if not au.passed:
                code = EXIT_VIOLATION
        report["audit"] = [au.to_json() for au in audits]
    if args.json:
        _emit_json(report, args.json)
    return code


def cmd_fuzz(args) -> int:
    cfg = FuzzConfig(seed=args.seed, trials=args.trials, max_rank=args.max_rank)
    res = run_campaign(args.campaign, cfg, reproducer_dir=args.repro_dir)
    print(res.summary())
    if args.csv:
        write_csv([res], args.csv)
    if not res.ok and args.repro_dir is None:
        print(json.dumps(res.failures[0], indent=2, default=str), file=sys.stderr)
    return EXIT_OK if res.ok else EXIT_VIOLATION


def cmd_corpus(args) -> int:
    if args.action == "list":
        for name in corpus_names():
            e = corpus(name)
            print(f"{name:10s} rank {len(e.gram)}  {e.provenance}")
        return EXIT_OK
    if not args.name:
        raise InputError("corpus emit needs a NAME")
    try:
        e = corpus(args.name)
    except KeyError as exc:
        raise InputError(str(exc)) from None
    if args.output:
        save_entry(e, args.output)
    else:
        _emit_json(entry_to_json(e), None)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lattice-slopes", description="Exact slopes of Euclidean lattices.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("slope", help="slope of a lattice")
    s.add_argument("lattice")
    s.set_defaults(func=cmd_slope)

    s = sub.add_parser("mumin", help="minimal slope")
    s.add_argument("lattice")
    s.add_argument("--method", choices=["brute", "invariant", "auto"], default="auto")
    s.add_argument("--rank-cap", type=int, default=9)
    s.add_argument("--json", metavar="PATH")
    s.set_defaults(func=cmd_mumin)

    s = sub.add_parser("filtration", help="canonical filtration")
    s.add_argument("lattice")
    s.add_argument("--json", metavar="PATH")
    s.set_defaults(func=cmd_filtration)

    s = sub.add_parser("semistable", help="semistability with certificate")
    s.add_argument("lattice")
    s.set_defaults(func=cmd_semistable)

    s = sub.add_parser("dual", help="dual lattice as JSON")
    s.add_argument("lattice")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("tensor", help="tensor product as JSON")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_tensor)

    s = sub.add_parser("decompose", help="isotypic decomposition")
    s.add_argument("lattice")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--json", metavar="PATH")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("conjecture", help="compare mu_min(L (x) M) with the product")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--audit", action="store_true", help="audit the rank-two index diagram")
    s.add_argument("--all-splits", action="store_true", help="audit every complementary split")
    s.add_argument("--json", metavar="PATH")
    s.set_defaults(func=cmd_conjecture)

    s = sub.add_parser("fuzz", help="seeded property campaigns")
    s.add_argument("campaign", choices=sorted(CAMPAIGNS))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--max-rank", type=int, default=5)
    s.add_argument("--csv", metavar="PATH")
    s.add_argument("--repro-dir", metavar="DIR")
    s.set_defaults(func=cmd_fuzz)

    s = sub.add_parser("corpus", help="named lattices")
    s.add_argument("action", choices=["list", "emit"])
    s.add_argument("name", nargs="?")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_corpus)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, SchemaError, InvalidActionError, NotMultiplicityFreeError,
            RankCapExceeded, EnumerationBudgetExceeded, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as exc:
        print(f"property violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
