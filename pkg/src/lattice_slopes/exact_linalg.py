"""Exact rational and integer linear algebra.

Matrices are plain tuples of row tuples.  Integer matrices hold ``int``
entries, rational matrices hold :class:`fractions.Fraction` entries.  Every
function is pure and returns fresh immutable tuples.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Rat = Fraction
Matrix = tuple  # tuple[tuple[...], ...]

__all__ = [
    "Rat",
    "SingularMatrixError",
    "NotPositiveDefiniteError",
    "to_rat",
    "format_rat",
    "rat_matrix",
    "int_matrix",
    "identity",
    "zeros",
    "transpose",
    "matmul",
    "matvec_left",
    "kron",
    "block_diag",
    "scale",
    "xgcd",
    "hnf",
    "integer_kernel",
    "saturate",
    "clear_denominators",
    "rref",
    "rank",
    "det",
    "inverse",
    "rational_kernel",
    "solve_left",
    "complete_to_unimodular",
    "minimal_polynomial",
    "rational_roots",
    "is_symmetric",
    "is_positive_definite",
    "gram_schmidt",
    "lll_reduce",
    "enumerate_short",
    "short_vectors",
]


class SingularMatrixError(ValueError):
    pass


class NotPositiveDefiniteError(ValueError):
    pass


# ---------------------------------------------------------------------------
# construction and formatting


def to_rat(x) -> Fraction:
    """Parse an int, Fraction or a ``"p/q"`` string into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted in exact paths")
    return Fraction(x)


def format_rat(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_matrix(rows: Iterable[Iterable]) -> Matrix:
    return tuple(tuple(to_rat(v) for v in row) for row in rows)


def int_matrix(rows: Iterable[Iterable]) -> Matrix:
    out = []
    for row in rows:
        r = []
        for v in row:
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise ValueError(f"non-integer entry {v}")
                v = v.numerator
            r.append(int(v))
        out.append(tuple(r))
    return tuple(out)


def identity(n: int, one=1) -> Matrix:
    zero = one - one
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def zeros(m: int, n: int) -> Matrix:
    return tuple((0,) * n for _ in range(m))


def transpose(A: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    if not A:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*A))


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    if not A:
        return ()
    Bt = tuple(zip(*B)) if B else ()
    if not Bt:
        return tuple(() for _ in A)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def matvec_left(x: Sequence, A: Sequence[Sequence]) -> tuple:
    """Row vector times matrix: ``x @ A``."""
    if not A:
        return ()
    n = len(A[0])
    out = [0] * n
    for xi, row in zip(x, A):
        if xi:
            for j, a in enumerate(row):
                out[j] += xi * a
    return tuple(out)


def kron(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    """Kronecker product; index ``(i, j)`` maps to ``i * len(B) + j``."""
    return tuple(
        tuple(a * b for a in rowA for b in rowB) for rowA in A for rowB in B
    )


def block_diag(*blocks: Sequence[Sequence]) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = []
    offset = 0
    for b in blocks:
        k = len(b)
        for row in b:
            out.append((0,) * offset + tuple(row) + (0,) * (n - offset - k))
        offset += k
    return tuple(out)


def scale(A: Sequence[Sequence], c) -> Matrix:
    return tuple(tuple(c * a for a in row) for row in A)


# ---------------------------------------------------------------------------
# integer algorithms


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(x, y, g)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def hnf(M: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[Matrix, Matrix]:
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``H == U @ M``, ``U`` unimodular, positive pivots,
    entries above each pivot reduced into ``[0, pivot)``, zero rows last.
    """
    A = [list(r) for r in M]
    m = len(A)
    n = len(A[0]) if A else (ncols or 0)
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            b = A[i][c]
            if b == 0:
                continue
            a = A[r][c]
            if a != 0 and b % a == 0:
                q = b // a
                Ai, Ar = A[i], A[r]
                for j in range(c, n):
                    Ai[j] -= q * Ar[j]
                Ui, Ur = U[i], U[r]
                for j in range(m):
                    Ui[j] -= q * Ur[j]
                continue
            x, y, g = xgcd(a, b)
            p, q = -b // g, a // g
            Ar, Ai = A[r], A[i]
            for j in range(c, n):
                u, v = Ar[j], Ai[j]
                Ar[j] = x * u + y * v
                Ai[j] = p * u + q * v
            Ur, Ui = U[r], U[i]
            for j in range(m):
                u, v = Ur[j], Ui[j]
                Ur[j] = x * u + y * v
                Ui[j] = p * u + q * v
        piv = A[r][c]
        if piv == 0:
            continue
        if piv < 0:
            A[r] = [-v for v in A[r]]
            U[r] = [-v for v in U[r]]
            piv = -piv
        for i in range(r):
            q = A[i][c] // piv
            if q:
                Ai, Ar = A[i], A[r]
                for j in range(c, n):
                    Ai[j] -= q * Ar[j]
                Ui, Ur = U[i], U[r]
                for j in range(m):
                    Ui[j] -= q * Ur[j]
        r += 1
    return tuple(map(tuple, A)), tuple(map(tuple, U))


def _nonzero_rows(A: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(r) for r in A if any(r))


def integer_kernel(K: Sequence[Sequence[int]], n: int) -> Matrix:
    """Basis (in HNF) of ``{x in Z^n : K @ x == 0}``."""
    if not K or not any(any(r) for r in K):
        return identity(n)
    Kt = tuple(zip(*K))
    H, U = hnf(Kt)
    ker = [U[i] for i in range(n) if not any(H[i])]
    if not ker:
        return ()
    return _nonzero_rows(hnf(ker)[0])


def clear_denominators(rows: Sequence[Sequence]) -> Matrix:
    """Scale each rational row by the lcm of its denominators."""
    out = []
    for row in rows:
        d = 1
        for v in row:
            d = math.lcm(d, Fraction(v).denominator)
        out.append(tuple(int(Fraction(v) * d) for v in row))
    return tuple(out)


def saturate(M: Sequence[Sequence], n: int | None = None) -> Matrix:
    """HNF basis of ``rowspace_Q(M) ∩ Z^n``; accepts rational rows."""
    if n is None:
        if not M:
            raise ValueError("ncols required for an empty matrix")
        n = len(M[0])
    rows = clear_denominators(M) if M else ()
    rows = _nonzero_rows(rows)
    if not rows:
        return ()
    ker = rational_kernel(rows, n)
    if not ker:
        return identity(n)
    return integer_kernel(clear_denominators(ker), n)


def complete_to_unimodular(S: Sequence[Sequence[int]], n: int) -> Matrix:
    """Unimodular ``n x n`` matrix whose first ``k`` rows are exactly ``S``.

    ``S`` must have full row rank and be saturated (``Z^n / rowspan`` torsion
    free); otherwise ValueError.
    """
    k = len(S)
    A = [list(r) for r in S]
    # column operations on A; C tracks their inverses as row operations so
    # that A_current @ C == S_original throughout.
    C = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for r in range(k):
        row = A[r]
        # bring gcd of row[r:] into column r
        while True:
            nz = [j for j in range(r, n) if row[j] != 0]
            if not nz:
                raise ValueError("rows are not of full rank")
            piv = min(nz, key=lambda j: abs(row[j]))
            if piv != r:
                for R in A:
                    R[r], R[piv] = R[piv], R[r]
                C[r], C[piv] = C[piv], C[r]
            done = True
            for j in range(r + 1, n):
                if row[j]:
                    q = row[j] // row[r]
                    if q:
                        # col j -= q col r ; inverse: row r of C += q row j
                        for R in A:
                            R[j] -= q * R[r]
                        Cr, Cj = C[r], C[j]
                        for t in range(n):
                            Cr[t] += q * Cj[t]
                    if row[j]:
                        done = False
            if done:
                break
        if abs(row[r]) != 1:
            raise ValueError("rows do not span a saturated sublattice")
        if row[r] < 0:
            for R in A:
                R[r] = -R[r]
            C[r] = [-v for v in C[r]]
        # clear the remaining entries of this row left of the pivot are
        # already handled by earlier rows; clear entries in columns < r
        for j in range(r):
            if row[j]:
                q = row[j]
                # col j -= q col r ; inverse: row r += q row j
                for R in A:
                    R[j] -= q * R[r]
                Cr, Cj = C[r], C[j]
                for t in range(n):
                    Cr[t] += q * Cj[t]
    # now A (k x n) is [I_k | 0] ... and A @ C == S, so first k rows of C == S
    C = [tuple(r) for r in C]
    for i in range(k):
        C[i] = tuple(S[i])
    return tuple(C)


# ---------------------------------------------------------------------------
# rational algorithms


def rref(M: Sequence[Sequence], n: int | None = None) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form over Q; returns ``(nonzero rows, pivots)``."""
    A = [[Fraction(v) for v in row] for row in M]
    m = len(A)
    n = len(A[0]) if A else (n or 0)
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        Ar = [v * inv for v in A[r]]
        A[r] = Ar
        for i in range(m):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                Ai = A[i]
                A[i] = [a - f * b for a, b in zip(Ai, Ar)]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in A[:r]), tuple(pivots)


def rank(M: Sequence[Sequence], n: int | None = None) -> int:
    return len(rref(M, n)[1])


def det(M: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return Fraction(1)
    scale_den = 1
    A = []
    for row in M:
        d = 1
        for v in row:
            d = math.lcm(d, Fraction(v).denominator)
        scale_den *= d
        A.append([int(Fraction(v) * d) for v in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            p = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if p is None:
                return Fraction(0)
            A[k], A[p] = A[p], A[k]
            sign = -sign
        akk = A[k][k]
        Ak = A[k]
        for i in range(k + 1, n):
            Ai = A[i]
            aik = Ai[k]
            for j in range(k + 1, n):
                Ai[j] = (Ai[j] * akk - aik * Ak[j]) // prev
            Ai[k] = 0
        prev = akk
    return Fraction(sign * A[n - 1][n - 1], scale_den)


def inverse(M: Sequence[Sequence]) -> Matrix:
    n = len(M)
    A = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            raise SingularMatrixError("matrix is singular")
        A[c], A[p] = A[p], A[c]
        inv = 1 / A[c][c]
        Ac = [v * inv for v in A[c]]
        A[c] = Ac
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], Ac)]
    return tuple(tuple(row[n:]) for row in A)


def rational_kernel(M: Sequence[Sequence], n: int | None = None) -> Matrix:
    """Basis rows of the right null space ``{x : M @ x == 0}``."""
    if n is None:
        if not M:
            raise ValueError("ncols required for an empty matrix")
        n = len(M[0])
    R, piv = rref(M, n) if M else ((), ())
    free = [c for c in range(n) if c not in piv]
    out = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i, c in enumerate(piv):
            x[c] = -R[i][f]
        out.append(tuple(x))
    return tuple(out)


def solve_left(V: Sequence[Sequence], W: Sequence[Sequence]) -> Matrix:
    """Solve ``A @ V == W`` for ``A``; rows of ``W`` must lie in rowspan(V).

    ``V`` must have full row rank.
    """
    k = len(V)
    n = len(V[0])
    # transpose problem: V^T A^T = W^T -> augment columns and eliminate
    Vt = transpose(V)
    out = []
    for w in W:
        aug = [list(Vt[i]) + [Fraction(w[i])] for i in range(n)]
        R, piv = rref(aug, k + 1)
        if k in piv:
            raise ValueError("row not in the span")
        if len(piv) != k:
            raise ValueError("V is rank deficient")
        out.append(tuple(R[i][k] for i in range(k)))
    return tuple(out)


def minimal_polynomial(M: Sequence[Sequence]) -> tuple[Fraction, ...]:
    """Monic minimal polynomial, coefficients from degree 0 upwards."""
    n = len(M)
    Mq = rat_matrix(M)
    # reduced rows: list of (pivot index, vector, combination of powers)
    basis: list[tuple[int, list[Fraction], list[Fraction]]] = []
    P = identity(n, Fraction(1))
    d = 0
    while True:
        vec = [v for row in P for v in row]
        combo = [Fraction(0)] * (d + 1)
        combo[d] = Fraction(1)
        for piv, bvec, bcombo in basis:
            f = vec[piv]
            if f:
                vec = [a - f * b for a, b in zip(vec, bvec)]
                for i, c in enumerate(bcombo):
                    combo[i] -= f * c
        piv = next((i for i, v in enumerate(vec) if v != 0), None)
        if piv is None:
            return tuple(combo)
        inv = 1 / vec[piv]
        vec = [v * inv for v in vec]
        combo = [c * inv for c in combo]
        # keep the echelon reduced so single-coordinate elimination works
        new_basis = []
        for bp, bvec, bcombo in basis:
            f = bvec[piv]
            if f:
                bvec = [a - f * b for a, b in zip(bvec, vec)]
                bcombo = [a - f * b for a, b in
                          zip(bcombo + [Fraction(0)] * (len(combo) - len(bcombo)), combo)]
            new_basis.append((bp, bvec, bcombo))
        new_basis.append((piv, vec, combo))
        basis = new_basis
        d += 1
        P = matmul(P, Mq)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def _horner(coeffs: Sequence, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs: list, root) -> list:
    """Divide by ``(x - root)``; coefficients from degree 0 upwards."""
    n = len(coeffs) - 1
    q = [0] * n
    acc = 0
    for i in range(n, 0, -1):
        acc = acc * root + coeffs[i]
        q[i - 1] = acc
    return q


def rational_roots(coeffs: Sequence) -> list[Fraction]:
    """All rational roots with multiplicity, sorted.

    ``coeffs`` are rational, from degree 0 upwards.
    """
    c = [Fraction(v) for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    if not c:
        raise ValueError("zero polynomial")
    d = 1
    for v in c:
        d = math.lcm(d, v.denominator)
    ints = [int(v * d) for v in c]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    ints = [v // g for v in ints]
    roots: list[Fraction] = []
    while len(ints) > 1 and ints[0] == 0:
        roots.append(Fraction(0))
        ints = ints[1:]
    cur: list = [Fraction(v) for v in ints]
    if len(cur) > 1:
        cands = set()
        for p in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                cands.add(Fraction(p, q))
                cands.add(Fraction(-p, q))
        for r in sorted(cands):
            while len(cur) > 1 and _horner(cur, r) == 0:
                roots.append(r)
                cur = _deflate(cur, r)
    return sorted(roots)


# ---------------------------------------------------------------------------
# quadratic forms


def is_symmetric(G: Sequence[Sequence]) -> bool:
    n = len(G)
    return all(len(G[i]) == n for i in range(n)) and all(
        G[i][j] == G[j][i] for i in range(n) for j in range(i + 1, n)
    )


def gram_schmidt(G: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Gram-Schmidt coefficients ``mu`` and squared norms ``B`` from a Gram matrix.

    Raises NotPositiveDefiniteError if some ``B[i] <= 0``.
    """
    n = len(G)
    mu = [[Fraction(0)] * n for _ in range(n)]
    B = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            s = Fraction(G[i][j])
            for t in range(j):
                s -= mu[j][t] * mu[i][t] * B[t]
            mu[i][j] = s / B[j]
        s = Fraction(G[i][i])
        for t in range(i):
            s -= mu[i][t] * mu[i][t] * B[t]
        if s <= 0:
            raise NotPositiveDefiniteError("Gram matrix is not positive definite")
        B[i] = s
        mu[i][i] = Fraction(1)
    return mu, B


def is_positive_definite(G: Sequence[Sequence]) -> bool:
    if not is_symmetric(G):
        return False
    try:
        gram_schmidt(G)
    except NotPositiveDefiniteError:
        return False
    return True


def _round_half(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


def lll_reduce(G: Sequence[Sequence], delta: Fraction = Fraction(3, 4)) -> tuple[Matrix, Matrix]:
    """LLL reduction of a positive definite Gram matrix in exact arithmetic.

    Returns ``(U, G')`` with ``G' == U @ G @ U^T`` and ``U`` unimodular.
    """
    if not is_symmetric(G):
        raise NotPositiveDefiniteError("Gram matrix is not symmetric")
    n = len(G)
    g = [[Fraction(v) for v in row] for row in G]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if n == 0:
        return (), ()
    if g[0][0] <= 0:
        raise NotPositiveDefiniteError("Gram matrix is not positive definite")
    mu = [[Fraction(0)] * n for _ in range(n)]
    B = [Fraction(0)] * n
    B[0] = g[0][0]
    k, kmax = 1, 0

    def red(k: int, l: int) -> None:
        m = mu[k][l]
        if abs(m) <= Fraction(1, 2):
            return
        q = _round_half(m)
        Uk, Ul = U[k], U[l]
        for t in range(n):
            Uk[t] -= q * Ul[t]
        # b_k <- b_k - q b_l on the Gram matrix (row then column)
        gk, gl = g[k], g[l]
        for t in range(n):
            gk[t] -= q * gl[t]
        for t in range(n):
            g[t][k] -= q * g[t][l]
        # keep exact symmetry of row k with column k
        for t in range(n):
            g[k][t] = g[t][k]
        mu[k][l] -= q
        for i in range(l):
            mu[k][i] -= q * mu[l][i]

    def swap(k: int) -> None:
        U[k], U[k - 1] = U[k - 1], U[k]
        g[k], g[k - 1] = g[k - 1], g[k]
        for row in g:
            row[k], row[k - 1] = row[k - 1], row[k]
        for j in range(k - 1):
            mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
        m = mu[k][k - 1]
        Bn = B[k] + m * m * B[k - 1]
        mu[k][k - 1] = m * B[k - 1] / Bn
        B[k] = B[k - 1] * B[k] / Bn
        B[k - 1] = Bn
        for i in range(k + 1, kmax + 1):
            t = mu[i][k]
            mu[i][k] = mu[i][k - 1] - m * t
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]

    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k):
                s = g[k][j]
                for i in range(j):
                    s -= mu[j][i] * mu[k][i] * B[i]
                mu[k][j] = s / B[j]
            s = g[k][k]
            for j in range(k):
                s -= mu[k][j] * mu[k][j] * B[j]
            if s <= 0:
                raise NotPositiveDefiniteError("Gram matrix is not positive definite")
            B[k] = s
        red(k, k - 1)
        if B[k] < (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            swap(k)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return tuple(map(tuple, U)), tuple(map(tuple, g))


def _int_range(c: Fraction, t: Fraction) -> tuple[int, int]:
    """Integers ``x`` with ``(x - c)**2 <= t`` as an inclusive range."""
    if t < 0:
        return 1, 0
    s = math.sqrt(float(t))
    cf = float(c)

    def ok_hi(h: int) -> bool:
        return h <= c or (h - c) ** 2 <= t

    def ok_lo(l: int) -> bool:
        return l >= c or (c - l) ** 2 <= t

    # float values only seed the search; the bounds are fixed exactly
    hi = math.floor(cf + s)
    while not ok_hi(hi):
        hi -= 1
    while ok_hi(hi + 1):
        hi += 1
    lo = math.ceil(cf - s)
    while not ok_lo(lo):
        lo += 1
    while ok_lo(lo - 1):
        lo -= 1
    return lo, hi


def _sign_canonical(v: tuple) -> tuple:
    for a in v:
        if a:
            return v if a > 0 else tuple(-b for b in v)
    return v


def short_vectors(G: Sequence[Sequence], bound, reduce: bool = True) -> list[tuple[Fraction, tuple[int, ...]]]:
    """Pairs ``(norm, x)`` for all nonzero ``x`` with ``x G x^T <= bound``.

    One representative per ``±`` pair (first nonzero coordinate positive),
    sorted by norm and then coordinates.
    """
    bound = Fraction(bound)
    n = len(G)
    if n == 0 or bound <= 0:
        return []
    if reduce:
        U, Gr = lll_reduce(G)
    else:
        U, Gr = identity(n), rat_matrix(G)
    mu, B = gram_schmidt(Gr)
    x = [0] * n
    found: list[tuple[int, ...]] = []

    def rec(i: int, rem: Fraction, top_zero: bool) -> None:
        c = Fraction(0)
        for j in range(i + 1, n):
            if x[j]:
                c -= mu[j][i] * x[j]
        lo, hi = _int_range(c, rem / B[i])
        if top_zero:
            lo = max(lo, 0)
        for v in range(lo, hi + 1):
            x[i] = v
            d = v - c
            r = rem - B[i] * d * d
            if i == 0:
                if not (top_zero and v == 0):
                    found.append(tuple(x))
            else:
                rec(i - 1, r, top_zero and v == 0)
        x[i] = 0

    rec(n - 1, bound, True)
    out = []
    for y in found:
        v = _sign_canonical(matvec_left(y, U))
        out.append((_qf(G, v), v))
    out.sort()
    return out


def _qf(G: Sequence[Sequence], v: Sequence[int]) -> Fraction:
    s = Fraction(0)
    n = len(v)
    for i in range(n):
        vi = v[i]
        if vi:
            row = G[i]
            t = 0
            for j in range(n):
                if v[j]:
                    t += row[j] * v[j]
            s += vi * t
    return Fraction(s)


def enumerate_short(G: Sequence[Sequence], bound) -> list[tuple[int, ...]]:
    """All nonzero integer ``x`` with ``x G x^T <= bound``, one per ``±`` pair."""
    return [v for _, v in short_vectors(G, bound)]
