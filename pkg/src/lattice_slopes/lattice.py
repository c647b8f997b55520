"""Gram-centric Euclidean lattices and the slope calculus.

A lattice is stored only through its Gram matrix with respect to an implicit
basis; sublattices and subspaces are coefficient matrices relative to that
basis.  Slopes are kept in the multiplicative convention
``mu(L) = vol(L)^(1/rank)`` and represented exactly by ``(vol^2, rank)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, total_ordering
from typing import Iterable, Sequence

from . import exact_linalg as xl

__all__ = [
    "PowerRoot",
    "SlopeValue",
    "Lattice",
    "Sublattice",
    "Subspace",
    "compare",
    "slope",
    "slope_of",
    "dual",
    "tensor",
    "direct_sum",
    "scale_gram",
    "intersect",
    "orthogonal_complement",
    "quotient",
    "quotient_with_basis",
    "project",
    "index",
    "sharp",
    "sublattice_sum",
    "sublattice_intersection",
]


def _iroot(n: int, k: int) -> int | None:
    """Exact integer ``k``-th root of ``n >= 0`` or None."""
    if n < 2:
        return n
    r = int(round(n ** (1.0 / k))) if n.bit_length() < 1000 else 1 << (n.bit_length() // k)
    # Newton iteration from above
    r = max(r, 1)
    while r ** k > n:
        r = ((k - 1) * r + n // r ** (k - 1)) // k
    while (r + 1) ** k <= n:
        r += 1
    return r if r ** k == n else None


def _frac_root(x: Fraction, k: int) -> Fraction | None:
    if x < 0:
        return None
    a, b = _iroot(x.numerator, k), _iroot(x.denominator, k)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def _log(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


@total_ordering
@dataclass(frozen=True, eq=False)
class PowerRoot:
    """The positive real number ``base ** (1 / index)``, held exactly."""

    base: Fraction
    index: int = 1

    def __post_init__(self):
        object.__setattr__(self, "base", Fraction(self.base))
        if self.base <= 0 or self.index < 1:
            raise ValueError("PowerRoot needs a positive base and index >= 1")

    @classmethod
    def of(cls, x) -> "PowerRoot":
        return x if isinstance(x, PowerRoot) else cls(Fraction(x), 1)

    def canonical(self) -> "PowerRoot":
        """Smallest index representing the same number."""
        b, n = self.base, self.index
        for p in _prime_factors(n):
            while n % p == 0:
                r = _frac_root(b, p)
                if r is None:
                    break
                b, n = r, n // p
        return PowerRoot(b, n)

    def __mul__(self, other) -> "PowerRoot":
        other = PowerRoot.of(other)
        q = math.lcm(self.index, other.index)
        return PowerRoot(
            self.base ** (q // self.index) * other.base ** (q // other.index), q
        ).canonical()

    __rmul__ = __mul__

    def __truediv__(self, other) -> "PowerRoot":
        return self * PowerRoot.of(other).inverse()

    def __rtruediv__(self, other) -> "PowerRoot":
        return PowerRoot.of(other) * self.inverse()

    def inverse(self) -> "PowerRoot":
        return PowerRoot(1 / self.base, self.index)

    def __pow__(self, e) -> "PowerRoot":
        e = Fraction(e)
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return PowerRoot(Fraction(1))
        return PowerRoot(self.base ** e.numerator, self.index * e.denominator).canonical()

    def _cmp(self, other) -> int:
        other = PowerRoot.of(other)
        lhs = self.base ** other.index
        rhs = other.base ** self.index
        return (lhs > rhs) - (lhs < rhs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (PowerRoot, int, Fraction)):
            return NotImplemented
        return self._cmp(other) == 0

    def __lt__(self, other) -> bool:
        if not isinstance(other, (PowerRoot, int, Fraction)):
            return NotImplemented
        return self._cmp(other) < 0

    def __hash__(self) -> int:
        c = self.canonical()
        return hash((c.base, c.index))

    @property
    def is_rational(self) -> bool:
        return self.canonical().index == 1

    def as_fraction(self) -> Fraction:
        c = self.canonical()
        if c.index != 1:
            raise ValueError(f"{self} is irrational")
        return c.base

    def log(self) -> float:
        return _log(self.base) / self.index

    def __float__(self) -> float:
        return math.exp(self.log())

    def __str__(self) -> str:
        c = self.canonical()
        if c.index == 1:
            return xl.format_rat(c.base)
        return f"({xl.format_rat(c.base)})^(1/{c.index})"

    def to_json(self) -> dict:
        c = self.canonical()
        return {"base": xl.format_rat(c.base), "index": c.index, "approx": float(c)}


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@total_ordering
@dataclass(frozen=True, eq=False)
class SlopeValue:
    """Exact slope ``mu = vol_sq ** (1 / (2 * rank))``."""

    vol_sq: Fraction
    rank: int

    def __post_init__(self):
        object.__setattr__(self, "vol_sq", Fraction(self.vol_sq))
        if self.vol_sq <= 0 or self.rank < 1:
            raise ValueError("SlopeValue needs vol_sq > 0 and rank >= 1")

    def as_root(self) -> PowerRoot:
        return PowerRoot(self.vol_sq, 2 * self.rank)

    def compare(self, other: "SlopeValue") -> int:
        lhs = self.vol_sq ** other.rank
        rhs = other.vol_sq ** self.rank
        return (lhs > rhs) - (lhs < rhs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SlopeValue):
            return NotImplemented
        return self.compare(other) == 0

    def __lt__(self, other) -> bool:
        if not isinstance(other, SlopeValue):
            return NotImplemented
        return self.compare(other) < 0

    def __hash__(self) -> int:
        c = PowerRoot(self.vol_sq, self.rank).canonical()
        return hash((c.base, c.index))

    def __mul__(self, other: "SlopeValue") -> "SlopeValue":
        q = math.lcm(self.rank, other.rank)
        return SlopeValue(
            self.vol_sq ** (q // self.rank) * other.vol_sq ** (q // other.rank), q
        )

    def inverse(self) -> "SlopeValue":
        return SlopeValue(1 / self.vol_sq, self.rank)

    @property
    def approx(self) -> float:
        return math.exp(_log(self.vol_sq) / (2 * self.rank))

    def __str__(self) -> str:
        return f"({xl.format_rat(self.vol_sq)}, {self.rank}) ≈ {self.approx:.6g}"

    def to_json(self) -> dict:
        return {"vol_sq": xl.format_rat(self.vol_sq), "rank": self.rank, "approx": self.approx}


def compare(s1: SlopeValue, s2: SlopeValue) -> int:
    """-1, 0 or 1 as ``s1`` is less than, equal to or greater than ``s2``."""
    return s1.compare(s2)


@dataclass(frozen=True)
class Lattice:
    """A lattice given by a positive definite rational Gram matrix."""

    gram: tuple
    label: str = field(default="", compare=False)

    def __post_init__(self):
        g = xl.rat_matrix(self.gram)
        if not g or not xl.is_symmetric(g):
            raise ValueError("Gram matrix must be square, symmetric and nonempty")
        if not xl.is_positive_definite(g):
            raise xl.NotPositiveDefiniteError("Gram matrix is not positive definite")
        object.__setattr__(self, "gram", g)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> Fraction:
        return xl.det(self.gram)

    @property
    def slope(self) -> SlopeValue:
        return SlopeValue(self.det, self.rank)

    def norm(self, x: Sequence) -> Fraction:
        return xl._qf(self.gram, x)

    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        s = Fraction(0)
        for xi, row in zip(x, self.gram):
            if xi:
                s += xi * sum(g * yj for g, yj in zip(row, y) if yj)
        return s

    def gram_of(self, C: Sequence[Sequence]) -> tuple:
        """Gram matrix ``C G C^T`` of the vectors with coefficient rows ``C``."""
        return xl.matmul(xl.matmul(C, self.gram), xl.transpose(C)) if C else ()

    def full(self) -> "Sublattice":
        return Sublattice(self, xl.identity(self.rank))

    def zero(self) -> "Sublattice":
        return Sublattice(self, ())

    def __repr__(self) -> str:
        name = self.label or "Lattice"
        return f"<{name} rank={self.rank} det={xl.format_rat(self.det)}>"


@dataclass(frozen=True)
class Sublattice:
    """Integer coefficient rows (HNF) relative to ``parent``'s basis."""

    parent: Lattice
    coeffs: tuple
    saturated: bool = True

    def __post_init__(self):
        n = self.parent.rank
        rows = xl.int_matrix(self.coeffs)
        if any(len(r) != n for r in rows):
            raise ValueError("coefficient rows have the wrong length")
        if rows:
            H = tuple(r for r in xl.hnf(rows)[0] if any(r))
            if len(H) != len(rows):
                raise ValueError("coefficient matrix is rank deficient")
            rows = H
        if self.saturated and rows and xl.saturate(rows, n) != rows:
            raise ValueError("coefficients are not saturated")
        object.__setattr__(self, "coeffs", rows)

    @classmethod
    def from_rows(cls, parent: Lattice, rows: Iterable[Sequence], saturate: bool = True) -> "Sublattice":
        rows = tuple(tuple(r) for r in rows)
        if saturate:
            return cls(parent, xl.saturate(rows, parent.rank) if rows else (), True)
        rows = xl.clear_denominators(rows) if rows else ()
        H = tuple(r for r in xl.hnf(rows)[0] if any(r)) if rows else ()
        return cls(parent, H, xl.saturate(H, parent.rank) == H if H else True)

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    @cached_property
    def gram(self) -> tuple:
        return self.parent.gram_of(self.coeffs)

    @cached_property
    def det(self) -> Fraction:
        return xl.det(self.gram)

    @property
    def slope(self) -> SlopeValue:
        if self.rank == 0:
            raise ValueError("the zero sublattice has no slope")
        return SlopeValue(self.det, self.rank)

    def as_lattice(self, label: str = "") -> Lattice:
        return Lattice(self.gram, label or f"{self.parent.label}|sub")

    def span(self) -> "Subspace":
        return Subspace.from_rows(self.coeffs, self.parent.rank)

    def contains(self, other: "Sublattice") -> bool:
        return self.span().contains(other.span())

    def __repr__(self) -> str:
        return f"<Sublattice rank={self.rank} of {self.parent!r} coeffs={self.coeffs}>"


@dataclass(frozen=True)
class Subspace:
    """A rational subspace of ``Q^dim`` in reduced row echelon form."""

    basis: tuple
    dim_ambient: int

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], n: int) -> "Subspace":
        rows = tuple(tuple(r) for r in rows)
        R = xl.rref(rows, n)[0] if rows else ()
        return cls(R, n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(xl.identity(n, Fraction(1)), n)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls((), n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.from_rows(self.basis + other.basis, self.dim_ambient)

    def contains(self, other: "Subspace") -> bool:
        return (self + other).dim == self.dim

    def contains_vector(self, v: Sequence) -> bool:
        return Subspace.from_rows(self.basis + (tuple(v),), self.dim_ambient).dim == self.dim

    def intersection(self, other: "Subspace") -> "Subspace":
        n = self.dim_ambient
        if not self.basis or not other.basis:
            return Subspace.zero(n)
        # a @ A == b @ B  <=>  (a, -b) in the left kernel of [A; B]
        stacked = self.basis + other.basis
        ker = xl.rational_kernel(xl.transpose(stacked), len(stacked))
        rows = [xl.matvec_left(k[: self.dim], self.basis) for k in ker]
        return Subspace.from_rows(rows, n)

    def image(self, g: Sequence[Sequence]) -> "Subspace":
        """Image under the row action ``x -> x @ g``."""
        return Subspace.from_rows(xl.matmul(self.basis, g) if self.basis else (), self.dim_ambient)

    def is_invariant(self, g: Sequence[Sequence]) -> bool:
        return self.image(g) == self


# ---------------------------------------------------------------------------
# operations


def slope(L: Lattice) -> SlopeValue:
    return L.slope


def slope_of(S: Sublattice) -> SlopeValue:
    return S.slope


def dual(L: Lattice) -> Lattice:
    """Dual lattice in the dual basis; Gram is the inverse Gram."""
    label = L.label[:-2] if L.label.endswith("^v") else f"{L.label}^v"
    return Lattice(xl.inverse(L.gram), label)


def tensor(L: Lattice, M: Lattice) -> Lattice:
    return Lattice(xl.kron(L.gram, M.gram), f"{L.label}(x){M.label}")


def direct_sum(*lattices: Lattice) -> Lattice:
    return Lattice(xl.block_diag(*(L.gram for L in lattices)),
                   "+".join(L.label for L in lattices))


def scale_gram(L: Lattice, t, label: str = "") -> Lattice:
    """Multiply the Gram matrix by the positive rational ``t``."""
    t = xl.to_rat(t)
    return Lattice(xl.scale(L.gram, t), label or f"{xl.format_rat(t)}*{L.label}")


def intersect(L: Lattice, F: Subspace) -> Sublattice:
    """The saturated sublattice ``L ∩ F``."""
    if F.dim == 0:
        return L.zero()
    return Sublattice(L, xl.saturate(F.basis, L.rank), True)


def orthogonal_complement(L: Lattice, F: Subspace) -> Subspace:
    """``F^⊥`` with respect to the Gram form."""
    n = L.rank
    if F.dim == 0:
        return Subspace.full(n)
    return Subspace.from_rows(xl.rational_kernel(xl.matmul(F.basis, L.gram), n), n)


def quotient_with_basis(L: Lattice, S: Sublattice) -> tuple[Lattice, tuple]:
    """Quotient ``L / S`` and the integer rows ``R`` lifting its basis.

    The lattice basis is completed as ``[S; R]`` (unimodular); the quotient
    Gram is the Schur complement, i.e. the Gram of the projections of ``R``
    orthogonally to ``S``.
    """
    n, k = L.rank, S.rank
    if not S.saturated:
        raise ValueError("quotient requires a saturated sublattice")
    if k == n:
        raise ValueError("quotient by the whole lattice has rank 0")
    if k == 0:
        return L, xl.identity(n)
    C = xl.complete_to_unimodular(S.coeffs, n)
    R = C[k:]
    G = L.gram_of(C)
    G11 = tuple(row[:k] for row in G[:k])
    G12 = tuple(row[k:] for row in G[:k])
    G21 = tuple(row[:k] for row in G[k:])
    G22 = tuple(row[k:] for row in G[k:])
    corr = xl.matmul(xl.matmul(G21, xl.inverse(G11)), G12)
    Q = tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(G22, corr))
    return Lattice(Q, f"{L.label}/S"), R


def quotient(L: Lattice, S: Sublattice) -> Lattice:
    if S.rank == 0:
        raise ValueError("quotient by the zero sublattice is not proper")
    return quotient_with_basis(L, S)[0]


def project(L: Lattice, F: Subspace) -> Lattice:
    """Orthogonal projection ``pi_F(L)``, realised as ``L / (L ∩ F^⊥)``."""
    if F.dim in (0, L.rank):
        raise ValueError("projection needs a proper nonzero subspace")
    return quotient(L, intersect(L, orthogonal_complement(L, F)))


def index(L: Lattice, N: Sequence[Sequence[int]]) -> int:
    """Index ``[L : N]`` of the full-rank submodule with coefficient rows ``N``."""
    N = xl.int_matrix(N)
    if len(N) != L.rank:
        raise ValueError("index needs a full-rank square coefficient matrix")
    d = xl.det(N)
    if d == 0:
        raise xl.SingularMatrixError("singular coefficient matrix")
    idx = abs(int(d))
    ratio = xl.det(L.gram_of(N)) / L.det
    if ratio != idx * idx:
        raise AssertionError("index does not match the determinant ratio")
    return idx


def sharp(L: Lattice, S: Sublattice) -> Sublattice:
    """``S^#``: the sublattice of ``dual(L)`` annihilating ``S``."""
    if not S.saturated:
        raise ValueError("sharp requires a saturated sublattice")
    D = dual(L)
    n = L.rank
    if S.rank == 0:
        return D.full()
    if S.rank == n:
        return D.zero()
    return Sublattice(D, xl.integer_kernel(S.coeffs, n), True)


def sublattice_sum(S1: Sublattice, S2: Sublattice) -> Sublattice:
    """The module sum ``S1 + S2`` (not saturated in general)."""
    return Sublattice.from_rows(S1.parent, S1.coeffs + S2.coeffs, saturate=False)


def sublattice_intersection(S1: Sublattice, S2: Sublattice) -> Sublattice:
    """``S1 ∩ S2`` for saturated sublattices (again saturated)."""
    return intersect(S1.parent, S1.span().intersection(S2.span()))
