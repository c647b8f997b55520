"""Conjecture verdicts and audits over all multiplicity-free corpus pairs.

Pairs are skipped when the tensor rank exceeds ``--max-rank``. Output is one
line per pair; ``--json`` writes the full reports.
"""

import argparse
import json
import sys
from itertools import product

from lattice_slopes.corpus import corpus, corpus_names
from lattice_slopes.group_rep import isotypic_decompose
from lattice_slopes.tensor_conjecture import audit_all_splits, conjecture_check


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-rank", type=int, default=24)
    ap.add_argument("--json", default=None)
    args = ap.parse_args()
    mf = {}
    for name in corpus_names():
        e = corpus(name)
        dec = isotypic_decompose(e.action())
        if dec.multiplicity_free:
            mf[name] = (e, dec)
    reports, bad = [], 0
    for (a, (A, dA)), (b, (B, dB)) in product(mf.items(), repeat=2):
        if len(A.gram) * len(B.gram) > args.max_rank:
            continue
        rep = conjecture_check(A.lattice, dA, B.lattice, dB)
        audits = audit_all_splits(A.lattice, dA, B.lattice, dB) if dA.r == 2 else []
        ok = all(au.passed for au in audits)
        bad += rep.verdict != "Equal" or not ok
        tag = " CANDIDATE COUNTEREXAMPLE" if rep.candidate_counterexample else ""
        print(f"{a:9s} (x) {b:9s} r={rep.r} s={rep.s}  {rep.verdict:12s} {rep.mu_min_tensor}"
              f"  audits {sum(au.applicable for au in audits)} {'ok' if ok else 'FAIL'}{tag}")
        js = rep.to_json()
        js.update(L=a, M=b, audit=[au.to_json() for au in audits])
        reports.append(js)
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(reports, fh, indent=2)
    return 2 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
