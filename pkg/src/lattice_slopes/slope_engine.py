"""Minimal slopes, destabilizing sublattices and canonical filtrations.

The minimal slope is found by an exact, certified enumeration.  For every
rank ``k`` the densest rank-``k`` sublattices are searched through their
Hermite-Korkine-Zolotarev-style bases: a shortest vector ``v`` of a sublattice
``N`` of rank ``k`` satisfies ``|v|^(2k) <= gamma_k^k det(N)``, and ``N / Zv``
is a primitive sublattice of the quotient ``L / Zv`` with determinant
``det(N) / |v|^2``.  Recursing into the quotient with the reduced budget
enumerates every sublattice whose determinant stays under the running upper
bound ``mu_best^(2k)``.  Ranks above ``n/2`` are searched in the dual lattice
through ``N <-> N^#``, where ``det(N) = det(L) det(N^#)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import exact_linalg as xl
from .lattice import (
    Lattice,
    SlopeValue,
    Sublattice,
    dual,
    quotient_with_basis,
    sharp,
    sublattice_intersection,
    sublattice_sum,
    tensor,
)

__all__ = [
    "HERMITE_POWERS",
    "hermite_power_bound",
    "RankCapExceeded",
    "EnumerationBudgetExceeded",
    "MinSlopeResult",
    "Filtration",
    "SemistabilityCertificate",
    "first_minimum",
    "min_slope_bruteforce",
    "min_slope",
    "destabilizing",
    "destabilizing_from",
    "canonical_filtration",
    "max_slope",
    "codestabilizing",
    "is_semistable",
    "parallelogram_slopes",
    "parallelogram_check",
    "quotient_minslope_check",
]

# gamma_k^k for the dimensions where the Hermite constant is known exactly
HERMITE_POWERS = {
    1: Fraction(1),
    2: Fraction(4, 3),
    3: Fraction(2),
    4: Fraction(4),
    5: Fraction(8),
    6: Fraction(64, 3),
    7: Fraction(64),
    8: Fraction(256),
}


def hermite_power_bound(k: int) -> Fraction:
    """An upper bound for ``gamma_k ** k`` (exact for ``k <= 8``)."""
    if k in HERMITE_POWERS:
        return HERMITE_POWERS[k]
    # gamma_k <= (4/3)^((k-1)/2)
    return Fraction(4, 3) ** (k * (k - 1) // 2)


class RankCapExceeded(ValueError):
    pass


class EnumerationBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class MinSlopeResult:
    value: SlopeValue
    witness: Sublattice
    method: str
    enumeration_bound_used: dict = field(default_factory=dict)
    minimizers: tuple = ()
    nodes: int = 0

    def to_json(self) -> dict:
        return {
            "value": self.value.to_json(),
            "method": self.method,
            "witness": [list(r) for r in self.witness.coeffs],
            "minimizers": [[list(r) for r in m.coeffs] for m in self.minimizers],
            "enumeration_bound_used": {
                str(k): xl.format_rat(b) for k, b in sorted(self.enumeration_bound_used.items())
            },
        }


# ---------------------------------------------------------------------------
# first minimum


def first_minimum(L: Lattice) -> Fraction:
    """Squared length of a shortest nonzero vector."""
    # the shortest reduced basis vector bounds the minimum from above
    _, G = xl.lll_reduce(L.gram)
    bound = min(G[i][i] for i in range(L.rank))
    return xl.short_vectors(G, bound, reduce=False)[0][0]


# ---------------------------------------------------------------------------
# certified densest-sublattice search


def _root_upper(log_value: float, check: Callable[[Fraction], bool]) -> Fraction:
    """A rational ``R`` with ``check(R)`` true, starting near ``exp(log_value)``."""
    if log_value < -700:
        R = Fraction(1, 10 ** 300)
    else:
        R = Fraction(math.exp(min(log_value, 700.0)) * (1 + 1e-9))
    step = Fraction(1000001, 1000000)
    while not check(R):
        R *= step
        step *= step
    return R


def _log(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


class _DensestSearch:
    def __init__(self, L: Lattice, max_nodes: int):
        self.L = L
        self.n = L.rank
        self.best = L.slope
        self.cands: dict[tuple, tuple[Fraction, int]] = {}
        self.nodes = 0
        self.max_nodes = max_nodes
        self.bounds: dict[int, Fraction] = {}

    def offer(self, coeffs: tuple, d: Fraction, k: int) -> None:
        s = SlopeValue(d, k)
        c = s.compare(self.best)
        if c > 0:
            return
        coeffs = tuple(r for r in xl.hnf(coeffs)[0] if any(r))
        # guard the bookkeeping of determinants as products of norms
        if xl.det(self.L.gram_of(coeffs)) != d:
            raise AssertionError("determinant bookkeeping mismatch")
        self.cands[coeffs] = (d, k)
        if c < 0:
            self.best = s

    def fits(self, z: Fraction, kk: int, P: Fraction, K: int) -> bool:
        # z^kk <= g_kk * best^(2K) / P   with best^(2K) = v^(K/r)
        v, r = self.best.vol_sq, self.best.rank
        lhs = z ** kk * P / hermite_power_bound(kk)
        return lhs ** r <= v ** K

    def radius(self, kk: int, P: Fraction, K: int) -> Fraction:
        v, r = self.best.vol_sq, self.best.rank
        g = hermite_power_bound(kk)
        logR = (_log(g) + K * _log(v) / r - _log(P)) / kk
        return _root_upper(logR, lambda R: (R ** kk * P / g) ** r >= v ** K)

    def search_rank(self, K: int) -> None:
        n = self.n
        if K <= n - K:
            X, kk, P0, dual_side = self.L, K, Fraction(1), False
        else:
            X, kk, P0, dual_side = dual(self.L), n - K, self.L.det, True
        U, G = xl.lll_reduce(X.gram)
        self.bounds[K] = self.radius(kk, P0, K)
        self._descend(G, U, kk, P0, (), None, K, dual_side)

    def _descend(self, Q, lift, kk, P, chosen, last, K, dual_side) -> None:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise EnumerationBudgetExceeded(
                f"more than {self.max_nodes} search nodes; instance too large"
            )
        R = self.radius(kk, P, K)
        low = None if last is None else Fraction(3, 4) * last
        for z, c in xl.short_vectors(Q, R, reduce=False):
            if low is not None and z < low:
                continue
            if not self.fits(z, kk, P, K):
                # vectors are sorted by norm and the bound only shrinks
                break
            g = 0
            for a in c:
                g = math.gcd(g, a)
            if g != 1:
                continue
            lifted = xl.matvec_left(c, lift)
            rows = chosen + (lifted,)
            if kk == 1:
                H = tuple(r for r in xl.hnf(rows)[0] if any(r))
                if dual_side:
                    H = xl.integer_kernel(H, self.n)
                self.offer(H, P * z, K)
                continue
            d = len(Q)
            C = xl.complete_to_unimodular((c,), d)
            G2 = xl.matmul(xl.matmul(C, Q), xl.transpose(C))
            g00 = G2[0][0]
            Qc = tuple(
                tuple(G2[i][j] - G2[i][0] * G2[0][j] / g00 for j in range(1, d))
                for i in range(1, d)
            )
            U, Qr = xl.lll_reduce(Qc)
            new_lift = xl.matmul(U, xl.matmul(C[1:], lift))
            self._descend(Qr, new_lift, kk - 1, P * z, rows, z, K, dual_side)

    def seed(self, hints: Iterable[Sequence[Sequence[int]]]) -> None:
        L = self.L
        self.offer(xl.identity(self.n), L.det, self.n)
        U, G = xl.lll_reduce(L.gram)
        for k in range(1, self.n):
            rows = tuple(r for r in xl.hnf(U[:k])[0] if any(r))
            self.offer(xl.saturate(rows, self.n), xl.det(tuple(r[:k] for r in G[:k])), k)
        for h in hints:
            rows = xl.saturate(h, self.n)
            if rows:
                self.offer(rows, xl.det(L.gram_of(rows)), len(rows))


def min_slope_bruteforce(
    L: Lattice,
    rank_cap: int = 8,
    max_nodes: int = 2_000_000,
    hints: Iterable[Sequence[Sequence[int]]] = (),
) -> MinSlopeResult:
    """Exact ``mu_min(L)`` together with every minimizing sublattice.

    ``hints`` are optional coefficient matrices of sublattices believed to be
    dense; they only tighten the initial bound and never affect the result.
    """
    n = L.rank
    if n > rank_cap:
        raise RankCapExceeded(f"rank {n} exceeds the brute-force cap {rank_cap}")
    search = _DensestSearch(L, max_nodes)
    search.seed(hints)
    for K in range(1, n):
        search.search_rank(K)
    best = search.best
    mins = sorted(coeffs for coeffs, (d, k) in search.cands.items() if SlopeValue(d, k) == best)
    minimizers = tuple(Sublattice(L, c, True) for c in mins)
    # the largest minimizer is the destabilizing sublattice
    witness = max(minimizers, key=lambda S: S.rank)
    return MinSlopeResult(
        value=best,
        witness=witness,
        method="brute",
        enumeration_bound_used=dict(search.bounds),
        minimizers=minimizers,
        nodes=search.nodes,
    )


min_slope = min_slope_bruteforce

MinSlopeFn = Callable[[Lattice], MinSlopeResult]


def destabilizing_from(L: Lattice, res: MinSlopeResult) -> Sublattice:
    """Saturated sum of all minimizers; asserts it attains ``mu_min``."""
    rows = tuple(r for m in res.minimizers for r in m.coeffs)
    S = Sublattice(L, xl.saturate(rows, L.rank), True)
    if S.slope != res.value:
        raise AssertionError("sum of minimizers does not attain the minimal slope")
    return S


def destabilizing(L: Lattice, min_slope_fn: MinSlopeFn = min_slope_bruteforce) -> Sublattice:
    return destabilizing_from(L, min_slope_fn(L))


# ---------------------------------------------------------------------------
# canonical filtration


@dataclass(frozen=True)
class Filtration:
    parent: Lattice
    steps: tuple
    quotient_slopes: tuple
    polygon: tuple

    @property
    def length(self) -> int:
        return len(self.steps) - 1

    def to_json(self) -> dict:
        return {
            "lattice": self.parent.label,
            "steps": [[list(r) for r in S.coeffs] for S in self.steps],
            "quotient_slopes": [s.to_json() for s in self.quotient_slopes],
            "polygon": [
                {"rank": k, "vol_sq": xl.format_rat(v), "approx_log_vol": lv}
                for k, v, lv in self.polygon
            ],
        }


def canonical_filtration(L: Lattice, min_slope_fn: MinSlopeFn = min_slope_bruteforce) -> Filtration:
    n = L.rank
    steps = [L.zero()]
    slopes: list[SlopeValue] = []
    Q, R = L, xl.identity(n)
    while True:
        res = min_slope_fn(Q)
        D = destabilizing_from(Q, res)
        lifted = xl.matmul(D.coeffs, R)
        prev = steps[-1]
        S = Sublattice(L, xl.saturate(prev.coeffs + lifted, n), True)
        if S.rank != prev.rank + D.rank:
            raise AssertionError("pulled-back step has the wrong rank")
        # the step quotient must carry the slope found in the quotient lattice
        step_slope = SlopeValue(S.det / (prev.det if prev.rank else 1), D.rank)
        if step_slope != res.value:
            raise AssertionError("exact sequence identity failed for a filtration step")
        steps.append(S)
        slopes.append(res.value)
        if S.rank == n:
            break
        Q, R = quotient_with_basis(L, S)
    for a, b in zip(slopes, slopes[1:]):
        if not a < b:
            raise AssertionError("quotient slopes are not strictly increasing")
    polygon = tuple(
        (S.rank, S.det if S.rank else Fraction(1), 0.5 * _log(S.det) if S.rank else 0.0)
        for S in steps
    )
    return Filtration(L, tuple(steps), tuple(slopes), polygon)


# ---------------------------------------------------------------------------
# maximal slope and duality


def max_slope(L: Lattice, min_slope_fn: MinSlopeFn = min_slope_bruteforce) -> SlopeValue:
    return min_slope_fn(dual(L)).value.inverse()


def codestabilizing(
    L: Lattice,
    min_slope_fn: MinSlopeFn = min_slope_bruteforce,
    cross_check: bool = True,
) -> Sublattice:
    """Smallest ``N`` with ``mu(L/N) = mu_max(L)``, via ``N = D^#`` for
    ``D`` the destabilizing sublattice of the dual."""
    D = dual(L)
    Dd = destabilizing(D, min_slope_fn)
    N = Sublattice(L, sharp(D, Dd).coeffs, True)
    if cross_check:
        filt = canonical_filtration(L, min_slope_fn)
        if filt.steps[-2] != N:
            raise AssertionError("co-destabilizing sublattice disagrees with the filtration")
    return N


@dataclass(frozen=True)
class SemistabilityCertificate:
    semistable: bool
    slope: SlopeValue
    min_slope: SlopeValue
    destabilizing: Sublattice | None
    enumeration_bound_used: dict

    def __bool__(self) -> bool:
        return self.semistable


def is_semistable(L: Lattice, min_slope_fn: MinSlopeFn = min_slope_bruteforce) -> SemistabilityCertificate:
    res = min_slope_fn(L)
    ok = res.value == L.slope
    return SemistabilityCertificate(
        semistable=ok,
        slope=L.slope,
        min_slope=res.value,
        destabilizing=None if ok else destabilizing_from(L, res),
        enumeration_bound_used=dict(res.enumeration_bound_used),
    )


# ---------------------------------------------------------------------------
# property checkers


def parallelogram_slopes(S1: Sublattice, S2: Sublattice) -> tuple[SlopeValue, SlopeValue] | None:
    """``(mu(S1 / S1∩S2), mu((S1+S2) / S2))`` or None when both have rank 0."""
    inter = sublattice_intersection(S1, S2)
    total = sublattice_sum(S1, S2)
    d = S1.rank - inter.rank
    if d == 0:
        return None
    det_inter = inter.det if inter.rank else Fraction(1)
    det_S2 = S2.det if S2.rank else Fraction(1)
    left = SlopeValue(S1.det / det_inter, d)
    right = SlopeValue(total.det / det_S2, d)
    return left, right


def parallelogram_check(L: Lattice, S1: Sublattice, S2: Sublattice) -> bool:
    """``mu(S1 / S1∩S2) >= mu((S1+S2) / S2)``; vacuous when ``S1 ⊆ S2``."""
    if S1.parent != L or S2.parent != L:
        raise ValueError("sublattices must belong to L")
    pair = parallelogram_slopes(S1, S2)
    if pair is None:
        return True
    left, right = pair
    return left >= right


def quotient_minslope_check(L: Lattice, S: Sublattice, min_slope_fn: MinSlopeFn = min_slope_bruteforce) -> bool:
    """``mu_min(S) >= mu_min(L) >= min(mu_min(S), mu_min(L/S))``."""
    if not 0 < S.rank < L.rank:
        raise ValueError("S must be a proper nonzero sublattice")
    mL = min_slope_fn(L).value
    mS = min_slope_fn(S.as_lattice()).value
    mQ = min_slope_fn(quotient_with_basis(L, S)[0]).value
    return mS >= mL >= min(mS, mQ)


def tensor_first_minimum_check(L: Lattice, M: Lattice) -> bool:
    """``lambda(L (x) M)^2 <= lambda(L)^2 lambda(M)^2``."""
    return first_minimum(tensor(L, M)) <= first_minimum(L) * first_minimum(M)
