"""Named lattices with their symmetry groups."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exact_linalg as xl
from .group_rep import GroupAction, validate_action
from .lattice import Lattice

__all__ = [
    "CorpusEntry",
    "cartan_gram",
    "weyl_generators",
    "root_lattice",
    "corpus",
    "corpus_names",
    "ade_edges",
]


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    gram: tuple
    generators: tuple | None = None
    provenance: str = ""

    @property
    def lattice(self) -> Lattice:
        return Lattice(self.gram, self.name)

    def action(self, strict: bool = False) -> GroupAction | None:
        if self.generators is None:
            return None
        return validate_action(self.lattice, self.generators, strict=strict)


def ade_edges(kind: str, n: int) -> list[tuple[int, int]]:
    """Dynkin diagram edges (1-based nodes, Bourbaki numbering)."""
    if kind == "a":
        return [(i, i + 1) for i in range(1, n)]
    if kind == "d":
        if n < 3:
            raise ValueError("D_n needs n >= 3")
        return [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    if kind == "e":
        if n not in (6, 7, 8):
            raise ValueError("E_n exists for n = 6, 7, 8")
        return [(1, 3), (3, 4), (4, 5), (2, 4)] + [(i, i + 1) for i in range(5, n)]
    raise ValueError(f"unknown root system {kind!r}")


def cartan_gram(n: int, edges: Sequence[tuple[int, int]]) -> tuple:
    """Gram of the root basis: 2 on the diagonal and 1 on the edges.

    The sign convention (+1 rather than the Cartan matrix's -1) matches the
    standard A2 Gram ``[[2, 1], [1, 2]]``; the two choices are isometric
    for trees by flipping the signs of alternate roots.
    """
    G = [[Fraction(2 if i == j else 0) for j in range(n)] for i in range(n)]
    for a, b in edges:
        G[a - 1][b - 1] = G[b - 1][a - 1] = Fraction(1)
    return tuple(tuple(r) for r in G)


def weyl_generators(G: Sequence[Sequence]) -> tuple:
    """Simple reflections ``s_i(b_j) = b_j - G_ij b_i`` (roots of norm 2)."""
    n = len(G)
    gens = []
    for i in range(n):
        if G[i][i] != 2:
            raise ValueError("reflection formula assumes norm-2 roots")
        g = [[int(a == j) for j in range(n)] for a in range(n)]
        for j in range(n):
            g[j][i] -= int(G[j][i])
        gens.append(tuple(tuple(r) for r in g))
    return tuple(gens)


def root_lattice(kind: str, n: int) -> CorpusEntry:
    G = cartan_gram(n, ade_edges(kind, n))
    return CorpusEntry(f"{kind}{n}", G, weyl_generators(G), f"root lattice {kind.upper()}{n}, Weyl group")


def _signed_permutations(n: int) -> tuple:
    gens = []
    if n >= 1:
        gens.append(tuple(tuple(-1 if (i == j == 0) else int(i == j) for j in range(n)) for i in range(n)))
    if n >= 2:
        gens.append(tuple(tuple(int(j == (1 - i if i < 2 else i)) for j in range(n)) for i in range(n)))
    if n >= 3:
        gens.append(tuple(tuple(int(j == (i + 1) % n) for j in range(n)) for i in range(n)))
    return tuple(gens)


def _sign_group(n: int) -> tuple:
    return tuple(
        tuple(tuple(-1 if i == j == k else int(i == j) for j in range(n)) for i in range(n))
        for k in range(n)
    )


def _block_gens(blocks: Sequence[tuple], sizes: Sequence[int]) -> tuple:
    out = []
    for b, (gens, k) in enumerate(zip(blocks, sizes)):
        for g in gens:
            mats = [g if c == b else xl.identity(sizes[c]) for c in range(len(sizes))]
            out.append(xl.block_diag(*mats))
    return tuple(out)


_FIXED = {
    "glued2": CorpusEntry(
        "glued2",
        ((Fraction(1), Fraction(1, 2)), (Fraction(1, 2), Fraction(1, 2))),
        (((1, 0), (1, -1)), ((-1, 0), (0, -1))),
        "rank 2, contains the orthogonal sum of two invariant lines with index 2",
    ),
}

_EXAMPLES = [
    "z1", "z2", "z3", "a1", "a2", "a3", "a4", "d4", "d5", "e6", "e7", "e8",
    "a2p2a2", "a2p3a2", "glued2", "diag1_2", "diag1_3", "diag1_4", "diag1_2_3",
]


def corpus_names() -> list[str]:
    """Representative names; parametrised families accept other sizes too."""
    return list(_EXAMPLES)


def corpus(name: str) -> CorpusEntry:
    """Look up a named lattice.

    Families: ``z{n}``, ``a{n}``, ``d{n}``, ``e6``-``e8``, ``a2p{c}a2``
    (A2 ⊥ c·A2, the second Gram scaled by c^2), ``glued2`` and
    ``diag{d1}_{d2}_...`` with the coordinate sign group.
    """
    name = name.lower()
    if name in _FIXED:
        return _FIXED[name]
    if m := re.fullmatch(r"z(\d+)", name):
        n = int(m.group(1))
        return CorpusEntry(name, xl.identity(n, Fraction(1)), _signed_permutations(n), "Z^n, signed permutations")
    if m := re.fullmatch(r"([ade])(\d+)", name):
        return root_lattice(m.group(1), int(m.group(2)))
    if m := re.fullmatch(r"a2p(\d+)a2", name):
        c = int(m.group(1))
        A = cartan_gram(2, ade_edges("a", 2))
        W = weyl_generators(A)
        G = xl.block_diag(A, xl.scale(A, c * c))
        return CorpusEntry(name, G, _block_gens([W, W], [2, 2]), f"A2 ⊥ {c}·A2, product Weyl action")
    if m := re.fullmatch(r"diag(\d+(?:_\d+)+|\d+)", name):
        ds = [Fraction(s) for s in m.group(1).split("_")]
        n = len(ds)
        G = tuple(tuple(ds[i] if i == j else Fraction(0) for j in range(n)) for i in range(n))
        return CorpusEntry(name, G, _sign_group(n), "diagonal lattice, coordinate sign group")
    raise KeyError(f"unknown corpus entry {name!r}")
