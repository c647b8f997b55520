"""Seeded random instances and property campaigns.

Streams come from numpy's PCG64 seeded through ``SeedSequence([seed, trial])``,
so every trial can be replayed on its own from ``(seed, trial)``.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from . import exact_linalg as xl
from .lattice import Lattice, Sublattice, dual, quotient, sharp, tensor
from .slope_engine import (
    canonical_filtration,
    first_minimum,
    max_slope,
    min_slope_bruteforce,
    parallelogram_check,
    quotient_minslope_check,
)

__all__ = [
    "FuzzConfig",
    "CampaignResult",
    "trial_rng",
    "random_lattice",
    "random_sublattice",
    "random_unimodular",
    "random_mf_instance",
    "CAMPAIGNS",
    "run_campaign",
    "write_csv",
]

BOST_CHEN_SHAPES = ((2, 2), (2, 3), (3, 2), (2, 4), (4, 2), (3, 3))


@dataclass(frozen=True)
class FuzzConfig:
    seed: int = 0
    trials: int = 100
    min_rank: int = 1
    max_rank: int = 5
    entry_bound: int = 3


@dataclass
class CampaignResult:
    name: str
    config: FuzzConfig
    passed: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "OK" if self.ok else f"FAILED ({len(self.failures)})"
        return f"{self.passed}/{self.config.trials} {status}"


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, trial])))


def random_lattice(rng: np.random.Generator, rank: int, entry_bound: int = 3) -> Lattice:
    """Gram ``B B^T`` of a random nonsingular integer ``B`` with bounded entries."""
    while True:
        B = [[int(v) for v in row] for row in rng.integers(-entry_bound, entry_bound + 1, size=(rank, rank))]
        if xl.det(B) != 0:
            break
    G = xl.matmul(B, xl.transpose(B))
    return Lattice(xl.rat_matrix(G), f"rand{rank}")


def random_sublattice(rng: np.random.Generator, L: Lattice, k: int, entry_bound: int = 2) -> Sublattice:
    """Saturation of ``k`` random independent integer vectors."""
    n = L.rank
    if k == 0:
        return L.zero()
    while True:
        rows = [[int(v) for v in row] for row in rng.integers(-entry_bound, entry_bound + 1, size=(k, n))]
        if xl.rank(rows, n) == k:
            return Sublattice.from_rows(L, rows)


def random_unimodular(rng: np.random.Generator, n: int, steps: int = 6) -> tuple:
    """Product of random elementary row operations and sign flips."""
    U = [list(r) for r in xl.identity(n)]
    for _ in range(steps):
        if n > 1:
            i, j = (int(v) for v in rng.choice(n, size=2, replace=False))
            c = int(rng.integers(-2, 3))
            U[i] = [a + c * b for a, b in zip(U[i], U[j])]
        k = int(rng.integers(n))
        if rng.integers(2):
            U[k] = [-a for a in U[k]]
    return xl.int_matrix(U)




def random_mf_instance(rng: np.random.Generator, max_rank: int = 6):
    """A random lattice with a multiplicity-free group action.

    Blocks are scaled lines with a sign and scaled A2 with its Weyl group,
    each with its own group factor, so no two components are isomorphic.
    The lattice may be glued: vectors of ``2Z`` on the line coordinates
    plus a random ``{0,1}`` glue vector, which every sign change preserves.
    A random unimodular basis change hides the block structure.
    """
    from .corpus import CorpusEntry, cartan_gram, weyl_generators

    A2 = cartan_gram(2, [(1, 2)])

    n = int(rng.integers(1, max_rank + 1))
    sizes = []
    while sum(sizes) < n:
        sizes.append(2 if n - sum(sizes) >= 2 and rng.integers(3) == 0 else 1)
    grams, gens, lines = [], [], []
    pos = 0
    for k in sizes:
        c = int(rng.integers(1, 5))
        if k == 1:
            grams.append(((c,),))
            lines.append(pos)
        else:
            grams.append(xl.scale(A2, c))
        pos += k
    for b, k in enumerate(sizes):
        own = [((-1,),)] if k == 1 else list(weyl_generators(A2))
        for g in own:
            gens.append(xl.block_diag(*[g if c == b else xl.identity(sizes[c]) for c in range(len(sizes))]))
    G0 = xl.block_diag(*grams)
    B = [list(r) for r in xl.identity(n)]
    if len(lines) >= 2 and rng.integers(2):
        glue = [int(rng.integers(2)) if i in lines else 0 for i in range(n)]
        if any(glue):
            for i in lines:
                B[i][i] = 2
            B.append(glue)
    B = xl.hnf(B, n)[0][:n]
    B = xl.matmul(random_unimodular(rng, n), B)
    Binv = xl.inverse(B)
    gram = xl.rat_matrix(xl.matmul(xl.matmul(B, G0), xl.transpose(B)))
    new_gens = tuple(xl.int_matrix(xl.matmul(xl.matmul(B, g), Binv)) for g in gens)
    return CorpusEntry(f"mf{n}", gram, new_gens, "random multiplicity-free instance")


def _gram_json(L: Lattice) -> list:
    return [[xl.format_rat(a) for a in row] for row in L.gram]


# each trial returns (ok, reproducer data)
Trial = Callable[[np.random.Generator, FuzzConfig], tuple[bool, dict]]


def _trial_parallelogram(rng, cfg):
    n = int(rng.integers(max(cfg.min_rank, 2), cfg.max_rank + 1))
    L = random_lattice(rng, n, cfg.entry_bound)
    S1 = random_sublattice(rng, L, int(rng.integers(1, n + 1)))
    S2 = random_sublattice(rng, L, int(rng.integers(1, n + 1)))
    data = {"gram": _gram_json(L), "S1": [list(r) for r in S1.coeffs], "S2": [list(r) for r in S2.coeffs]}
    return parallelogram_check(L, S1, S2), data


def _trial_lemma_x(rng, cfg):
    n = int(rng.integers(max(cfg.min_rank, 2), cfg.max_rank + 1))
    L = random_lattice(rng, n, cfg.entry_bound)
    S = random_sublattice(rng, L, int(rng.integers(1, n)))
    data = {"gram": _gram_json(L), "S": [list(r) for r in S.coeffs]}
    return quotient_minslope_check(L, S), data


def _trial_first_minimum(rng, cfg):
    a = int(rng.integers(1, 4))
    b = int(rng.integers(1, 4))
    L = random_lattice(rng, a, cfg.entry_bound)
    M = random_lattice(rng, b, cfg.entry_bound)
    ok = first_minimum(tensor(L, M)) <= first_minimum(L) * first_minimum(M)
    return ok, {"L": _gram_json(L), "M": _gram_json(M)}


def _trial_bost_chen(rng, cfg):
    a, b = BOST_CHEN_SHAPES[int(rng.integers(len(BOST_CHEN_SHAPES)))]
    L = random_lattice(rng, a, cfg.entry_bound)
    M = random_lattice(rng, b, cfg.entry_bound)
    mL, mM = min_slope_bruteforce(L), min_slope_bruteforce(M)
    # the product witness only tightens the starting bound; the search stays exhaustive
    hint = xl.kron(mL.witness.coeffs, mM.witness.coeffs)
    mT = min_slope_bruteforce(tensor(L, M), rank_cap=9, hints=[hint])
    data = {"L": _gram_json(L), "M": _gram_json(M), "tensor_min": str(mT.value),
            "product": str(mL.value * mM.value)}
    return mT.value == mL.value * mM.value, data


def _trial_identities(rng, cfg):
    n = int(rng.integers(max(cfg.min_rank, 2), cfg.max_rank + 1))
    L = random_lattice(rng, n, cfg.entry_bound)
    M = random_lattice(rng, int(rng.integers(1, 4)), cfg.entry_bound)
    S = random_sublattice(rng, L, int(rng.integers(1, n)))
    checks = {
        "det(L) = det(S) det(L/S)": L.det == S.det * quotient(L, S).det,
        "mu(L (x) M) = mu(L) mu(M)": tensor(L, M).slope == L.slope * M.slope,
        "mu(L^v) = 1/mu(L)": dual(L).slope == L.slope.inverse(),
    }
    while True:
        N = [[int(v) for v in row] for row in rng.integers(-3, 4, size=(n, n))]
        d = xl.det(N)
        if d:
            break
    checks["index^2 = det ratio"] = d * d == xl.det(L.gram_of(N)) / L.det
    data = {"L": _gram_json(L), "M": _gram_json(M), "S": [list(r) for r in S.coeffs],
            "N": N, "checks": checks}
    return all(checks.values()), data


def _trial_filtration(rng, cfg):
    n = int(rng.integers(cfg.min_rank, cfg.max_rank + 1))
    L = random_lattice(rng, n, cfg.entry_bound)
    f = canonical_filtration(L)
    D = dual(L)
    fd = canonical_filtration(D)
    reversed_sharp = [sharp(L, S) for S in reversed(f.steps)]
    checks = {
        "strictly increasing": all(a < b for a, b in zip(f.quotient_slopes, f.quotient_slopes[1:])),
        "dual filtration is the sharp reversal": list(fd.steps) == reversed_sharp,
        "mu_max(L) = 1/mu_min(L^v)": max_slope(L) == f.quotient_slopes[-1],
        "semistable iff one step": (f.length == 1) == (f.quotient_slopes[0] == L.slope),
    }
    return all(checks.values()), {"gram": _gram_json(L), "checks": checks}


CAMPAIGNS: dict[str, Trial] = {
    "parallelogram": _trial_parallelogram,
    "lemma-x": _trial_lemma_x,
    "first-minimum": _trial_first_minimum,
    "bost-chen": _trial_bost_chen,
    "identities": _trial_identities,
    "filtration": _trial_filtration,
}


def run_campaign(name: str, cfg: FuzzConfig, reproducer_dir: str | Path | None = None) -> CampaignResult:
    trial_fn = CAMPAIGNS[name]
    res = CampaignResult(name, cfg)
    t0 = time.perf_counter()
    for trial in range(cfg.trials):
        rng = trial_rng(cfg.seed, trial)
        try:
            ok, data = trial_fn(rng, cfg)
            error = None
        except AssertionError as exc:
            ok, data, error = False, {}, str(exc)
        if ok:
            res.passed += 1
            continue
        repro = {"campaign": name, "seed": cfg.seed, "trial": trial, "error": error,
                 "config": cfg.__dict__, "instance": data}
        res.failures.append(repro)
        if reproducer_dir is not None:
            out = Path(reproducer_dir)
            out.mkdir(parents=True, exist_ok=True)
            with open(out / f"repro_{name}_{cfg.seed}_{trial}.json", "w") as fh:
                json.dump(repro, fh, indent=2, default=str)
    res.seconds = time.perf_counter() - t0
    return res


def write_csv(results: list[CampaignResult], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["campaign", "seed", "trials", "passed", "failed", "seconds"])
        for r in results:
            w.writerow([r.name, r.config.seed, r.config.trials, r.passed, len(r.failures), f"{r.seconds:.3f}"])
