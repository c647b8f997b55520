"""Minimal slope of tensor products through split invariant subspaces.

With ``E = E_1 + ... + E_r`` and ``F = F_1 + ... + F_s`` multiplicity-free, every
``G x H``-invariant subspace of ``E (x) F`` has the form ``sum_i E_i (x) F'_i``
where each ``F'_i`` is a sum of components of ``F``.  Such a subspace is encoded
by one bitmask over the ``F`` components per ``E`` component.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from . import exact_linalg as xl
from .group_rep import (
    GroupAction,
    IsotypicDecomposition,
    NotMultiplicityFreeError,
    isotypic_decompose,
    min_slope_invariant_detail,
    validate_action,
)
from .lattice import (
    Lattice,
    PowerRoot,
    SlopeValue,
    Subspace,
    index,
    intersect,
    orthogonal_complement,
    project,
    tensor,
)
from .slope_engine import MinSlopeResult, min_slope_bruteforce

__all__ = [
    "product_action",
    "SplitSubspace",
    "split_subspace",
    "split_invariant_subspaces",
    "min_slope_tensor",
    "ConjectureReport",
    "conjecture_check",
    "TheoremAudit",
    "theorem_audit",
    "audit_all_splits",
    "reduction_predicates",
]


def product_action(actG: GroupAction, actH: GroupAction, compute_order: bool = False) -> GroupAction:
    """``G x H`` on ``L (x) M`` generated by ``g (x) 1`` and ``1 (x) h``."""
    T = tensor(actG.parent, actH.parent)
    Il, Im = xl.identity(actG.rank), xl.identity(actH.rank)
    gens = [xl.kron(g, Im) for g in actG.generators] + [xl.kron(Il, h) for h in actH.generators]
    return validate_action(T, gens, compute_order=compute_order)


def _decomposition(x: GroupAction | IsotypicDecomposition, seed: int) -> IsotypicDecomposition:
    dec = x if isinstance(x, IsotypicDecomposition) else isotypic_decompose(x, seed)
    if not dec.multiplicity_free:
        raise NotMultiplicityFreeError(dec.failed_stage or dec.status)
    return dec


def _mask_rows(comps: Sequence[Subspace], mask: int) -> tuple:
    return tuple(r for i, C in enumerate(comps) if mask >> i & 1 for r in C.basis)


def _kron_rows(A: Sequence, B: Sequence) -> tuple:
    return tuple(tuple(a * b for a in ra for b in rb) for ra in A for rb in B)


@dataclass(frozen=True)
class SplitSubspace:
    """``U = sum_i E_i (x) F'_i`` with ``F'_i`` the components in ``masks[i]``."""

    masks: tuple
    subspace: Subspace
    f_subspaces: tuple = field(compare=False)

    def to_json(self) -> dict:
        return {
            "masks": list(self.masks),
            "basis": [[xl.format_rat(a) for a in row] for row in self.subspace.basis],
        }


def split_subspace(decE: IsotypicDecomposition, decF: IsotypicDecomposition, masks: Sequence[int]) -> SplitSubspace:
    ell, m = decE.action.rank, decF.action.rank
    rows = []
    fsubs = []
    for E, mask in zip(decE.components, masks):
        Fi = _mask_rows(decF.components, mask)
        fsubs.append(Subspace.from_rows(Fi, m))
        rows.extend(_kron_rows(E.basis, Fi))
    return SplitSubspace(tuple(masks), Subspace.from_rows(rows, ell * m), tuple(fsubs))


def split_invariant_subspaces(
    decE: IsotypicDecomposition, decF: IsotypicDecomposition
) -> list[SplitSubspace]:
    """All ``(2^s)^r - 1`` nonzero split subspaces, in lexicographic mask order."""
    for d in (decE, decF):
        if not d.multiplicity_free:
            raise NotMultiplicityFreeError(d.failed_stage or d.status)
    out = []
    seen = set()
    for masks in product(range(1 << decF.r), repeat=decE.r):
        if not any(masks):
            continue
        sp = split_subspace(decE, decF, masks)
        if sp.subspace not in seen:
            seen.add(sp.subspace)
            out.append(sp)
    return out


def min_slope_tensor(
    L: Lattice,
    actG: GroupAction | IsotypicDecomposition,
    M: Lattice,
    actH: GroupAction | IsotypicDecomposition,
    seed: int = 0,
) -> tuple[MinSlopeResult, SplitSubspace]:
    """Exact ``mu_min(L (x) M)`` by scanning split invariant subspaces.

    The returned split is the destabilizing one: the componentwise union of
    all minimizing masks.
    """
    decE, decF = _decomposition(actG, seed), _decomposition(actH, seed)
    T = tensor(L, M)
    scored = []
    for sp in split_invariant_subspaces(decE, decF):
        S = intersect(T, sp.subspace)
        scored.append((sp, S))
    best = min(S.slope for _, S in scored)
    winners = [(sp, S) for sp, S in scored if S.slope == best]
    masks = [0] * decE.r
    for sp, _ in winners:
        masks = [a | b for a, b in zip(masks, sp.masks)]
    dsplit = split_subspace(decE, decF, masks)
    witness = intersect(T, dsplit.subspace)
    if witness.slope != best:
        raise AssertionError("union of minimizing split subspaces is not minimizing")
    res = MinSlopeResult(
        value=best,
        witness=witness,
        method="invariant",
        enumeration_bound_used={},
        minimizers=tuple(S for _, S in winners),
    )
    return res, dsplit


# ---------------------------------------------------------------------------
# the conjecture check


@dataclass(frozen=True)
class ConjectureReport:
    mu_min_L: SlopeValue
    mu_min_M: SlopeValue
    mu_min_tensor: SlopeValue
    product: SlopeValue
    verdict: str
    minimizing_split: SplitSubspace
    r: int
    s: int
    brute_force_confirmed: bool | None = None

    @property
    def candidate_counterexample(self) -> bool:
        return self.verdict == "StrictlyLess"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "candidate_counterexample": self.candidate_counterexample,
            "r": self.r,
            "s": self.s,
            "mu_min_L": self.mu_min_L.to_json(),
            "mu_min_M": self.mu_min_M.to_json(),
            "mu_min_tensor": self.mu_min_tensor.to_json(),
            "product": self.product.to_json(),
            "minimizing_split": self.minimizing_split.to_json(),
            "brute_force_confirmed": self.brute_force_confirmed,
        }


def conjecture_check(
    L: Lattice,
    actG: GroupAction | IsotypicDecomposition,
    M: Lattice,
    actH: GroupAction | IsotypicDecomposition,
    seed: int = 0,
    verify_rank_cap: int = 9,
) -> ConjectureReport:
    decE, decF = _decomposition(actG, seed), _decomposition(actH, seed)
    mL = min_slope_invariant_detail(L, decE)[0].value
    mM = min_slope_invariant_detail(M, decF)[0].value
    res, split = min_slope_tensor(L, decE, M, decF)
    prod = mL * mM
    if res.value > prod:
        raise AssertionError("tensor minimal slope exceeds the product of minimal slopes")
    verdict = "Equal" if res.value == prod else "StrictlyLess"
    confirmed = None
    if verdict == "StrictlyLess" and L.rank * M.rank <= verify_rank_cap:
        brute = min_slope_bruteforce(tensor(L, M), rank_cap=verify_rank_cap)
        if brute.value != res.value:
            raise AssertionError("invariant scan and brute force disagree on the tensor")
        confirmed = True
    return ConjectureReport(mL, mM, res.value, prod, verdict, split, decE.r, decF.r, confirmed)


# ---------------------------------------------------------------------------
# the rank-two audit


def _det0(S) -> Fraction:
    return S.det if S.rank else Fraction(1)


def _sqrt_int(x: Fraction, what: str) -> int:
    if x.denominator != 1 or x < 0:
        raise AssertionError(f"{what} squared is not a nonnegative integer: {x}")
    r = math.isqrt(x.numerator)
    if r * r != x.numerator:
        raise AssertionError(f"{what} squared is not a perfect square: {x}")
    return r


def _coset_index(big_rows: Sequence, small_rows: Sequence) -> int:
    """``[B : S]`` for a full-rank submodule ``S`` of the module ``B``."""
    C = xl.solve_left(big_rows, small_rows)
    C = xl.int_matrix(C)
    return abs(int(xl.det(C)))


@dataclass(frozen=True)
class TheoremAudit:
    applicable: bool
    reason: str = ""
    masks: tuple = ()
    l1: int = 0
    l2: int = 0
    m1: int = 0
    m2: int = 0
    a: int = 0
    b: int = 0
    alpha: tuple = ()
    beta: tuple = ()
    x: int = 0
    x_prime: int = 0
    t: int = 0
    y: int = 0
    y_prime: int = 0
    identity_checks: dict = field(default_factory=dict)
    bound_checks: dict = field(default_factory=dict)
    sign_report: tuple = ()
    swap_invariant: bool | None = None

    @property
    def passed(self) -> bool:
        if not self.applicable:
            return True
        return (
            all(self.identity_checks.values())
            and all(self.bound_checks.values())
            and bool(self.swap_invariant)
        )

    def to_json(self) -> dict:
        if not self.applicable:
            return {"applicable": False, "reason": self.reason}
        return {
            "applicable": True,
            "masks": list(self.masks),
            "dims": {"l1": self.l1, "l2": self.l2, "m1": self.m1, "m2": self.m2},
            "a": self.a,
            "b": self.b,
            "alpha": [al.to_json() for al in self.alpha],
            "beta": [be.to_json() for be in self.beta],
            "indices": {"x": self.x, "x_prime": self.x_prime, "t": self.t,
                        "y": self.y, "y_prime": self.y_prime},
            "identity_checks": dict(self.identity_checks),
            "bound_checks": dict(self.bound_checks),
            "sign_report": list(self.sign_report),
            "swap_invariant": self.swap_invariant,
            "passed": self.passed,
        }

    def table(self) -> str:
        if not self.applicable:
            return f"audit: not applicable ({self.reason})"
        lines = [
            f"l1={self.l1} l2={self.l2} m1={self.m1} m2={self.m2}  a={self.a} b={self.b}",
            "alpha = " + ", ".join(str(v) for v in self.alpha),
            "beta  = " + ", ".join(str(v) for v in self.beta),
            f"x={self.x} t={self.t} x'={self.x_prime}  y={self.y} y'={self.y_prime}",
        ]
        for k, v in {**self.identity_checks, **self.bound_checks}.items():
            lines.append(f"  [{'ok' if v else 'FAIL'}] {k}")
        lines.append(f"  [{'ok' if self.swap_invariant else 'FAIL'}] invariant under swapping 1 and 2")
        s1, s2 = self.sign_report
        lines.append(f"(m1-m2)(l1-l2) = {s1}   (m1-m2)(l2-l1) = {s2}")
        return "\n".join(lines)


def _radical(det_i: Fraction, rank_i: int, det: Fraction, rank: int) -> PowerRoot:
    """``(mu(X_i) / mu(X)) ** rank_i`` as an exact radical."""
    if rank_i == 0:
        return PowerRoot(Fraction(1))
    return PowerRoot(det_i ** rank / det ** rank_i, 2 * rank).canonical()


def _audit_core(L, M, decE, decF, E, f_masks) -> dict:
    ell, m = L.rank, M.rank
    T = tensor(L, M)
    E1, E2 = E
    fm1, fm2 = f_masks
    L1, L2 = intersect(L, E1), intersect(L, E2)
    F1 = Subspace.from_rows(_mask_rows(decF.components, fm1), m)
    F2 = Subspace.from_rows(_mask_rows(decF.components, fm2), m)
    M1, M2 = intersect(M, F1), intersect(M, F2)
    l1, l2, m1, m2 = L1.rank, L2.rank, M1.rank, M2.rank
    if l1 + l2 != ell or m1 + m2 != m:
        raise AssertionError("component sublattices do not have complementary ranks")
    a = index(L, L1.coeffs + L2.coeffs)
    b = index(M, M1.coeffs + M2.coeffs)
    dL1, dL2, dM1, dM2 = _det0(L1), _det0(L2), _det0(M1), _det0(M2)
    alpha = (_radical(dL1, l1, L.det, ell), _radical(dL2, l2, L.det, ell))
    beta = (_radical(dM1, m1, M.det, m), _radical(dM2, m2, M.det, m))

    # determinants of the projections pi_i L = L / L_{3-i}, checked directly
    dpiL = (L.det / dL2, L.det / dL1)
    for Ei, d in zip((E1, E2), dpiL):
        if project(L, Ei).det != d:
            raise AssertionError("projection determinant mismatch")
    dpiM = (M.det / dM2, M.det / dM1)
    for Fi, d in zip((F1, F2), dpiM):
        if 0 < Fi.dim < m and project(M, Fi).det != d:
            raise AssertionError("projection determinant mismatch")

    U = Subspace.from_rows(
        _kron_rows(E1.basis, F1.basis) + _kron_rows(E2.basis, F2.basis), ell * m
    )
    Uperp = orthogonal_complement(T, U)
    expect = Subspace.from_rows(
        _kron_rows(E1.basis, F2.basis) + _kron_rows(E2.basis, F1.basis), ell * m
    )
    if Uperp != expect:
        raise AssertionError("orthogonal complement of the split subspace has the wrong shape")
    P, Q = intersect(T, U), intersect(T, Uperp)

    botP = xl.kron(L1.coeffs, M1.coeffs) if m1 else ()
    botP += xl.kron(L2.coeffs, M2.coeffs) if m2 else ()
    botQ = xl.kron(L1.coeffs, M2.coeffs) if m2 else ()
    botQ += xl.kron(L2.coeffs, M1.coeffs) if m1 else ()
    det_botP = dL1 ** m1 * dM1 ** l1 * dL2 ** m2 * dM2 ** l2
    det_botQ = dL1 ** m2 * dM2 ** l1 * dL2 ** m1 * dM1 ** l2
    x = _sqrt_int(det_botP / P.det, "x")
    y = _sqrt_int(det_botQ / _det0(Q), "y")
    t = _sqrt_int(P.det * _det0(Q) / T.det, "t")
    # second routes through explicit coefficient matrices
    if _coset_index(P.coeffs, botP) != x:
        raise AssertionError("x disagrees between determinant ratio and coset index")
    if Q.rank and _coset_index(Q.coeffs, botQ) != y:
        raise AssertionError("y disagrees between determinant ratio and coset index")
    if index(T, P.coeffs + Q.coeffs) != t:
        raise AssertionError("t disagrees between determinant ratio and coset index")

    det_piU = T.det / _det0(Q)
    det_piUp = T.det / P.det
    if project(T, U).det != det_piU:
        raise AssertionError("projection onto U has an unexpected determinant")
    det_topP = dpiL[0] ** m1 * dpiM[0] ** l1 * dpiL[1] ** m2 * dpiM[1] ** l2
    det_topQ = dpiL[0] ** m2 * dpiM[1] ** l1 * dpiL[1] ** m1 * dpiM[0] ** l2
    xp = _sqrt_int(det_piU / det_topP, "x'")
    yp = _sqrt_int(det_piUp / det_topQ, "y'")
    # t on the right-hand side: [pi_{U^perp}(L (x) M) : L (x) M ∩ U^perp]
    t_right = _sqrt_int(_det0(Q) / det_piUp, "t (right)")

    chain = a ** m * b ** ell
    bound_x = min(a ** m1 * b ** l1, a ** m2 * b ** l2)
    bound_y = min(a ** m1 * b ** l2, a ** m2 * b ** l1)
    identity = {
        "alpha1*alpha2 = a": alpha[0] * alpha[1] == PowerRoot.of(a),
        "beta1*beta2 = b": beta[0] * beta[1] == PowerRoot.of(b),
        "x*t*x' = a^m b^l": x * t * xp == chain,
        "y*t*y' = a^m b^l": y * t * yp == chain,
        "t agrees on both sides": t == t_right,
    }
    bounds = {
        "x <= min(a^m1 b^l1, a^m2 b^l2)": x <= bound_x,
        "y' <= min(a^m1 b^l2, a^m2 b^l1)": yp <= bound_y,
        "x' <= min(a^m1 b^l1, a^m2 b^l2)": xp <= bound_x,
        "y <= min(a^m1 b^l2, a^m2 b^l1)": y <= bound_y,
    }
    return dict(
        l1=l1, l2=l2, m1=m1, m2=m2, a=a, b=b, alpha=alpha, beta=beta,
        x=x, x_prime=xp, t=t, y=y, y_prime=yp,
        identity_checks=identity, bound_checks=bounds,
        sign_report=((m1 - m2) * (l1 - l2), (m1 - m2) * (l2 - l1)),
    )


def _audit_split(L, M, decE, decF, masks) -> TheoremAudit:
    full = (1 << decF.r) - 1
    f1, f2 = masks
    if f1 & f2 or (f1 | f2) != full:
        return TheoremAudit(False, "shape not applicable: F_1 and F_2 are not complementary",
                            masks=tuple(masks))
    core = _audit_core(L, M, decE, decF, decE.components, (f1, f2))
    swapped = _audit_core(L, M, decE, decF, decE.components[::-1], (f2, f1))
    same = all(core[k] == swapped[k] for k in ("a", "b", "x", "x_prime", "t", "y", "y_prime"))
    same = same and core["alpha"] == swapped["alpha"][::-1] and core["beta"] == swapped["beta"][::-1]
    same = same and (core["l1"], core["m1"]) == (swapped["l2"], swapped["m2"])
    same = same and all(swapped["identity_checks"].values()) == all(core["identity_checks"].values())
    same = same and all(swapped["bound_checks"].values()) == all(core["bound_checks"].values())
    return TheoremAudit(True, "", tuple(masks), swap_invariant=same, **core)


def theorem_audit(
    L: Lattice,
    actG: GroupAction | IsotypicDecomposition,
    M: Lattice,
    actH: GroupAction | IsotypicDecomposition,
    seed: int = 0,
    masks: Sequence[int] | None = None,
) -> TheoremAudit:
    """Audit the rank-two index diagram at the destabilizing split subspace.

    ``masks`` overrides the split (one F-mask per E-component).
    """
    decE, decF = _decomposition(actG, seed), _decomposition(actH, seed)
    if decE.r != 2:
        return TheoremAudit(False, f"L side has r = {decE.r}, the audit needs r = 2")
    if masks is None:
        masks = min_slope_tensor(L, decE, M, decF)[1].masks
    return _audit_split(L, M, decE, decF, tuple(masks))


def audit_all_splits(
    L: Lattice,
    actG: GroupAction | IsotypicDecomposition,
    M: Lattice,
    actH: GroupAction | IsotypicDecomposition,
    seed: int = 0,
) -> list[TheoremAudit]:
    """Audits at every split ``E_1 (x) F_1 + E_2 (x) F_2`` with ``F = F_1 ⊥ F_2``."""
    decE, decF = _decomposition(actG, seed), _decomposition(actH, seed)
    if decE.r != 2:
        return [TheoremAudit(False, f"L side has r = {decE.r}, the audit needs r = 2")]
    full = (1 << decF.r) - 1
    return [_audit_split(L, M, decE, decF, (f1, full ^ f1)) for f1 in range(full + 1)]


def reduction_predicates(
    L: Lattice,
    actG: GroupAction | IsotypicDecomposition,
    M: Lattice,
    actH: GroupAction | IsotypicDecomposition,
    seed: int = 0,
) -> dict:
    """Diagnostics that hold for minimal counterexamples; reported, never asserted."""
    decE, decF = _decomposition(actG, seed), _decomposition(actH, seed)
    mL = min_slope_invariant_detail(L, decE)[0].value
    mM = min_slope_invariant_detail(M, decF)[0].value
    _, split = min_slope_tensor(L, decE, M, decF)
    full = (1 << decF.r) - 1
    inter = full
    union = 0
    for mask in split.masks:
        inter &= mask
        union |= mask
    return {
        "L_semistable": mL == L.slope,
        "M_semistable": mM == M.slope,
        "split_masks": list(split.masks),
        "sum_E_i_is_E": all(split.masks),
        "sum_F_i_is_F": union == full,
        "intersection_F_i_is_zero": inter == 0,
    }
