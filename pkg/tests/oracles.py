"""Independent reference implementations used only by the tests.

These deliberately avoid the package's search code: short vectors come from a
plain box enumeration, and densest sublattices from k-subsets of short vectors
under a Minkowski second-theorem bound.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, product

import sympy

from lattice_slopes import exact_linalg as xl


def qform(G, v) -> Fraction:
    return sum(G[i][j] * v[i] * v[j] for i in range(len(v)) for j in range(len(v)))


def box_radius(G, bound) -> int:
    """Coordinates of vectors with norm <= bound satisfy |x_i|^2 <= bound * (G^-1)_ii."""
    Ginv = sympy.Matrix(G).inv()
    return max(math.isqrt(int(math.floor(bound * Ginv[i, i]))) + 1 for i in range(len(G)))


def box_short_vectors(G, bound) -> list[tuple[int, ...]]:
    """Nonzero vectors with norm <= bound, one per sign pair."""
    n = len(G)
    R = box_radius(G, bound)
    out = []
    for v in product(range(-R, R + 1), repeat=n):
        first = next((a for a in v if a), 0)
        if first > 0 and qform(G, v) <= bound:
            out.append(v)
    return out


def sympy_det(G) -> Fraction:
    d = sympy.Matrix(G).det()
    return Fraction(int(d.p), int(d.q))


def reduced(G):
    """LLL change of basis ``U`` (checked unimodular) and the Gram ``U G U^T``.

    Only the basis changes; the box enumeration below stays independent of the
    package's enumerator, it just runs on a box of sensible size.
    """
    U, _ = xl.lll_reduce(G)
    assert abs(sympy.Matrix(U).det()) == 1
    return U, xl.matmul(xl.matmul(U, G), xl.transpose(U))


def lambda1(G) -> Fraction:
    _, Gr = reduced(G)
    bound = min(Gr[i][i] for i in range(len(Gr)))
    return min(qform(Gr, v) for v in box_short_vectors(Gr, bound))


def _densest_of_rank(G, k):
    """Smallest det of a rank-k sublattice and the HNF bases attaining it.

    The per-vector bound is ``gamma_k^k D_k / lambda_1^(2(k-1))`` times a
    safety factor ``max(1, (k/2)^2)``, with ``gamma_k^k <= (4/3)^(k(k-1)/2)``
    and ``D_k`` the smallest determinant of a k-subset of an LLL basis.
    """
    n = len(G)
    U, Gr = reduced(G)
    lam = lambda1(G)
    Dk = min(sympy_det([[Gr[i][j] for j in idx] for i in idx]) for idx in combinations(range(n), k))
    bound = Fraction(4, 3) ** (k * (k - 1) // 2) * Dk / lam ** (k - 1) * max(1, Fraction(k * k, 4))
    best, found = None, set()
    for sub in combinations(box_short_vectors(Gr, bound), k):
        if xl.rank(sub, n) < k:
            continue
        # back to the original coordinates: x -> x U
        S = xl.saturate(xl.matmul(sub, U), n)
        d = sympy_det(xl.matmul(xl.matmul(S, G), xl.transpose(S)))
        if best is None or d < best:
            best, found = d, {S}
        elif d == best:
            found.add(S)
    return best, found


def _annihilator(S, n):
    """Saturated integer basis of ``{x : S x^T = 0}`` via sympy's nullspace."""
    null = sympy.Matrix(S).nullspace()
    rows = []
    for v in null:
        den = sympy.ilcm(*[sympy.fraction(a)[1] for a in v])
        rows.append([int(a * den) for a in v])
    return xl.saturate(rows, n)


def naive_min_slope(G):
    """``(vol_sq, rank)`` of mu_min and the set of minimizing HNF bases.

    Ranks k <= n/2 are searched directly by k-subsets of short vectors; larger
    ranks through rank n-k sublattices of the dual and their annihilators,
    since those have determinant ``det(N) = det(L) det(N^#)``.
    """
    n = len(G)
    detL = sympy_det(G)
    per_rank = {n: (detL, {xl.identity(n)})}
    Gd = [[Fraction(int(a.p), int(a.q)) for a in row] for row in sympy.Matrix(G).inv().tolist()]
    for k in range(1, n):
        if 2 * k <= n:
            per_rank[k] = _densest_of_rank(G, k)
        else:
            d, found = _densest_of_rank(Gd, n - k)
            per_rank[k] = (detL * d, {_annihilator(S, n) for S in found})

    def less(a, b):
        return a[0] ** b[1] < b[0] ** a[1]

    best = (detL, n)
    for k, (d, _) in per_rank.items():
        if less((d, k), best):
            best = (d, k)
    minimizers = set()
    for k, (d, found) in per_rank.items():
        if d ** best[1] == best[0] ** k:
            minimizers |= found
    return best, minimizers


def bfs_order(gens, n: int, cap: int = 100_000) -> int:
    """Group order by explicit closure over matrix products."""
    e = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    seen = {e}
    todo = [e]
    while todo:
        x = todo.pop()
        for g in gens:
            y = tuple(tuple(sum(x[i][k] * g[k][j] for k in range(n)) for j in range(n)) for i in range(n))
            if y not in seen:
                seen.add(y)
                todo.append(y)
                assert len(seen) <= cap
    return len(seen)
