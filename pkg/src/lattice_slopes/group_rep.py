"""Finite group actions on lattices and the multiplicity-free machinery.

Group elements are integer matrices acting on coefficient rows, ``x -> x @ g``.
Such a matrix is an automorphism of the lattice iff ``g G g^T = G``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np
from sympy.combinatorics import Permutation, PermutationGroup

from . import exact_linalg as xl
from .lattice import Lattice, Subspace, Sublattice, intersect
from .slope_engine import MinSlopeResult

__all__ = [
    "InvalidActionError",
    "ClosureCapExceeded",
    "NotMultiplicityFreeError",
    "GroupAction",
    "validate_action",
    "trivial_action",
    "group_elements",
    "commutant",
    "IsotypicDecomposition",
    "isotypic_decompose",
    "invariant_subspaces",
    "min_slope_invariant",
    "min_slope_invariant_detail",
    "naive_automorphisms",
]

DEFAULT_CAP = 10**6


class InvalidActionError(ValueError):
    pass


class ClosureCapExceeded(RuntimeError):
    pass


class NotMultiplicityFreeError(ValueError):
    pass


@dataclass(frozen=True)
class GroupAction:
    parent: Lattice
    generators: tuple
    order: int | None = None

    @property
    def rank(self) -> int:
        return self.parent.rank


def _faithful_orbit(L: Lattice) -> list[tuple[int, ...]]:
    """All vectors of norm at most the largest LLL-basis norm.

    The set is finite, stable under every automorphism and contains a
    basis, so automorphisms act on it faithfully.
    """
    _, Gr = xl.lll_reduce(L.gram)
    bound = max(Gr[i][i] for i in range(L.rank))
    vecs = []
    for _, v in xl.short_vectors(L.gram, bound):
        vecs.append(v)
        vecs.append(tuple(-a for a in v))
    return vecs


def _group_order(L: Lattice, gens: Sequence) -> int:
    if not gens:
        return 1
    S = _faithful_orbit(L)
    pos = {v: i for i, v in enumerate(S)}
    perms = []
    for g in gens:
        perms.append(Permutation([pos[xl.matvec_left(v, g)] for v in S]))
    return int(PermutationGroup(perms).order())


def validate_action(
    L: Lattice,
    gens: Sequence[Sequence[Sequence]],
    cap: int = DEFAULT_CAP,
    strict: bool = False,
    compute_order: bool = True,
) -> GroupAction:
    """Check that ``gens`` generate a finite group of automorphisms of ``L``.

    The order is computed exactly with Schreier-Sims on a faithful finite
    orbit.  Orders above ``cap`` raise only when ``strict``; otherwise the
    order is still recorded.
    """
    n = L.rank
    out = []
    for g in gens:
        g = tuple(tuple(row) for row in g)
        if len(g) != n or any(len(r) != n for r in g):
            raise InvalidActionError(f"generator is not {n}x{n}")
        try:
            g = xl.int_matrix(g)
        except (TypeError, ValueError) as exc:
            raise InvalidActionError("generator entries must be integers") from exc
        if abs(xl.det(g)) != 1:
            raise InvalidActionError("generator is not unimodular (det != ±1)")
        if xl.matmul(xl.matmul(g, L.gram), xl.transpose(g)) != L.gram:
            raise InvalidActionError("generator does not preserve the Gram form")
        out.append(g)
    if not compute_order:
        return GroupAction(L, tuple(out), None)
    order = _group_order(L, out)
    if strict and order > cap:
        raise ClosureCapExceeded(f"group order {order} exceeds cap {cap}")
    return GroupAction(L, tuple(out), order)


def trivial_action(L: Lattice) -> GroupAction:
    return GroupAction(L, (), 1)


def group_elements(action: GroupAction, cap: int = DEFAULT_CAP) -> list[tuple]:
    """Explicit breadth-first closure of the generated group."""
    e = xl.identity(action.rank)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in action.generators:
                y = xl.matmul(x, g)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise ClosureCapExceeded(f"closure exceeds {cap} elements")
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


# ---------------------------------------------------------------------------
# commutant and isotypic decomposition


def _commutant_of(gens: Sequence, n: int) -> list[tuple]:
    if not gens:
        return [
            tuple(tuple(Fraction(int(i == a and j == b)) for j in range(n)) for i in range(n))
            for a in range(n)
            for b in range(n)
        ]
    # unknown X flattened row-major; equations (X g - g X)_{ij} = 0
    eqs = []
    for g in gens:
        for i in range(n):
            for j in range(n):
                row = [Fraction(0)] * (n * n)
                for k in range(n):
                    row[i * n + k] += g[k][j]
                    row[k * n + j] -= g[i][k]
                eqs.append(row)
    ker = xl.rational_kernel(eqs, n * n)
    return [tuple(tuple(v[i * n : (i + 1) * n]) for i in range(n)) for v in ker]


def commutant(action: GroupAction) -> list[tuple]:
    """Basis of ``{X : X g = g X for every generator g}``."""
    return _commutant_of(action.generators, action.rank)


@dataclass(frozen=True)
class IsotypicDecomposition:
    action: GroupAction
    components: tuple
    commutant_dim: int
    component_endo_dims: tuple
    multiplicity_free: bool
    status: str
    failed_stage: str | None = None

    @property
    def r(self) -> int:
        return len(self.components)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "multiplicity_free": self.multiplicity_free,
            "failed_stage": self.failed_stage,
            "commutant_dim": self.commutant_dim,
            "component_endo_dims": list(self.component_endo_dims),
            "components": [
                [[xl.format_rat(a) for a in row] for row in E.basis] for E in self.components
            ],
        }


def _component_key(E: Subspace) -> tuple:
    pivots = tuple(next(j for j, a in enumerate(row) if a) for row in E.basis)
    return pivots, E.basis


def _restrict(basis: Sequence, g: Sequence) -> tuple:
    """Matrix of ``x -> x g`` on the row space of ``basis``."""
    return xl.solve_left(basis, xl.matmul(basis, g))


def _fail(action, comps, d, endo, stage, status="not multiplicity-free"):
    return IsotypicDecomposition(action, tuple(comps), d, tuple(endo), False, status, stage)


def isotypic_decompose(action: GroupAction, seed: int = 0, retries: int = 10) -> IsotypicDecomposition:
    n = action.rank
    G = action.parent.gram
    basis = commutant(action)
    d = len(basis)
    for X, Y in combinations(basis, 2):
        if xl.matmul(X, Y) != xl.matmul(Y, X):
            return _fail(action, (), d, (), "commutant is not commutative")
    if d == 1:
        comps = [Subspace.full(n)]
    else:
        rng = np.random.default_rng(seed)
        comps = None
        for _ in range(retries):
            c = [int(a) for a in rng.integers(-9, 10, size=d)]
            if not any(c):
                continue
            t = tuple(
                tuple(sum(ci * X[i][j] for ci, X in zip(c, basis)) for j in range(n))
                for i in range(n)
            )
            mp = xl.minimal_polynomial(t)
            roots = xl.rational_roots(mp)
            if len(roots) < len(mp) - 1:
                # an element of a split commutative algebra has rational eigenvalues
                return _fail(action, (), d, (), "commutant does not split over Q")
            distinct = sorted(set(roots))
            if len(distinct) != d:
                continue
            comps = []
            for lam in distinct:
                shifted = tuple(
                    tuple(t[i][j] - (lam if i == j else 0) for j in range(n)) for i in range(n)
                )
                comps.append(Subspace.from_rows(xl.rational_kernel(xl.transpose(shifted), n), n))
            break
        if comps is None:
            return _fail(action, (), d, (), "no splitting element found", status="inconclusive")
        comps.sort(key=_component_key)
    if sum(E.dim for E in comps) != n:
        return _fail(action, comps, d, (), "component dimensions do not sum to the rank")
    for E in comps:
        if not all(E.is_invariant(g) for g in action.generators):
            return _fail(action, comps, d, (), "component is not stable")
    for E1, E2 in combinations(comps, 2):
        if any(v for row in xl.matmul(xl.matmul(E1.basis, G), xl.transpose(E2.basis)) for v in row):
            return _fail(action, comps, d, (), "components are not orthogonal")
    endo = []
    for E in comps:
        gens = [_restrict(E.basis, g) for g in action.generators]
        endo.append(len(_commutant_of(gens, E.dim)))
    if any(e != 1 for e in endo):
        return _fail(action, comps, d, endo, "component is not absolutely irreducible")
    return IsotypicDecomposition(action, tuple(comps), d, tuple(endo), True, "multiplicity-free")


def _mask_subspace(comps: Sequence[Subspace], mask: int, n: int) -> Subspace:
    rows = tuple(r for i, E in enumerate(comps) if mask >> i & 1 for r in E.basis)
    return Subspace.from_rows(rows, n)


def invariant_subspaces(dec: IsotypicDecomposition) -> list[Subspace]:
    """The ``2^r - 1`` nonzero invariant subspaces, ordered by bitmask."""
    if not dec.multiplicity_free:
        raise NotMultiplicityFreeError(dec.failed_stage or dec.status)
    n = dec.action.rank
    return [_mask_subspace(dec.components, m, n) for m in range(1, 1 << dec.r)]


def min_slope_invariant_detail(
    L: Lattice, dec: IsotypicDecomposition
) -> tuple[MinSlopeResult, int]:
    """Minimal slope over invariant sublattices, with the destabilizing mask."""
    subs = invariant_subspaces(dec)
    cands = [(m + 1, intersect(L, U)) for m, U in enumerate(subs)]
    best = min(S.slope for _, S in cands)
    winners = [(m, S) for m, S in cands if S.slope == best]
    mask = 0
    for m, _ in winners:
        mask |= m
    witness = intersect(L, _mask_subspace(dec.components, mask, L.rank))
    if witness.slope != best:
        raise AssertionError("sum of minimizing invariant sublattices is not minimizing")
    res = MinSlopeResult(
        value=best,
        witness=witness,
        method="invariant",
        enumeration_bound_used={},
        minimizers=tuple(S for _, S in winners),
    )
    return res, mask


def min_slope_invariant(L: Lattice, action: GroupAction | IsotypicDecomposition, seed: int = 0) -> MinSlopeResult:
    dec = action if isinstance(action, IsotypicDecomposition) else isotypic_decompose(action, seed)
    if dec.action.parent != L:
        raise ValueError("action belongs to a different lattice")
    return min_slope_invariant_detail(L, dec)[0]


# ---------------------------------------------------------------------------
# automorphisms by backtracking


def naive_automorphisms(L: Lattice, cap: int = 100_000) -> GroupAction:
    """Full automorphism group by mapping basis vectors to equal-norm vectors."""
    n = L.rank
    if n > 6:
        raise ValueError("naive automorphism search is limited to rank 6")
    G = L.gram
    cands = []
    for i in range(n):
        vs = []
        for z, v in xl.short_vectors(G, G[i][i]):
            if z == G[i][i]:
                vs.append(v)
                vs.append(tuple(-a for a in v))
        cands.append(sorted(vs))
    elements: list[tuple] = []

    def extend(rows: list) -> None:
        i = len(rows)
        if i == n:
            g = tuple(rows)
            if abs(xl.det(g)) == 1:
                elements.append(g)
                if len(elements) > cap:
                    raise ClosureCapExceeded(f"more than {cap} automorphisms")
            return
        for v in cands[i]:
            if all(L.inner(v, rows[j]) == G[i][j] for j in range(i)):
                rows.append(v)
                extend(rows)
                rows.pop()

    extend([])
    elements.sort()
    gens: list[tuple] = []
    span = {xl.identity(n)}
    for g in elements:
        if g in span:
            continue
        gens.append(g)
        span = set(group_elements(GroupAction(L, tuple(gens)), cap))
    if len(span) != len(elements):
        raise AssertionError("generated group does not match the enumerated automorphisms")
    return GroupAction(L, tuple(gens), len(elements))
