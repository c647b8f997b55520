import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattice_slopes import exact_linalg as xl
from lattice_slopes.corpus import corpus
from lattice_slopes.fuzz import random_mf_instance, trial_rng
from lattice_slopes.group_rep import NotMultiplicityFreeError, isotypic_decompose, trivial_action, validate_action
from lattice_slopes.lattice import PowerRoot, SlopeValue, tensor
from lattice_slopes.slope_engine import min_slope_bruteforce
from lattice_slopes.tensor_conjecture import (
    audit_all_splits,
    conjecture_check,
    min_slope_tensor,
    product_action,
    reduction_predicates,
    split_invariant_subspaces,
    theorem_audit,
)
from oracles import bfs_order


def pair(a, b):
    A, B = corpus(a), corpus(b)
    return A.lattice, A.action(), B.lattice, B.action()


def test_product_action_examples():
    L, M = corpus("z2").lattice, corpus("a2").lattice
    act = product_action(trivial_action(L), trivial_action(M), compute_order=True)
    assert act.generators == () and act.order == 1

    _, g, _, h = pair("diag1_2", "diag1_3")
    act = product_action(g, h, compute_order=True)
    # G x H has 16 elements; (-1, -1) acts as the identity on the tensor
    assert g.order * h.order == 16
    assert act.rank == 4 and act.order == 8 == bfs_order(act.generators, 4)

    L, g, M, h = pair("a2p2a2", "a3")
    act = product_action(g, h)
    T = tensor(L, M).gram
    assert all(xl.matmul(xl.matmul(x, T), xl.transpose(x)) == T for x in act.generators)


def test_split_counts():
    def count(a, b):
        _, g, _, h = pair(a, b)
        return len(split_invariant_subspaces(isotypic_decompose(g), isotypic_decompose(h)))

    assert count("e8", "a2") == 1
    assert count("a2p2a2", "a3") == 3
    assert count("diag1_2", "diag1_3") == 15


def test_split_scan_rejects_non_multiplicity_free():
    Z2 = corpus("z2").lattice
    bad = isotypic_decompose(validate_action(Z2, [((-1, 0), (0, -1))]))
    good = isotypic_decompose(corpus("a2").action())
    with pytest.raises(NotMultiplicityFreeError):
        split_invariant_subspaces(bad, good)


def test_min_slope_tensor_examples():
    # Z^1 (x) M is M
    L, g, M, h = pair("z1", "a2p2a2")
    res, _ = min_slope_tensor(L, g, M, h)
    assert res.value == SlopeValue(3, 2)

    L, g, M, h = pair("diag1_2", "diag1_3")
    res, split = min_slope_tensor(L, g, M, h)
    assert res.value == SlopeValue(1, 1)
    assert res.witness.coeffs == ((1, 0, 0, 0),)
    assert split.masks == (1, 0)
    assert min_slope_bruteforce(tensor(L, M)).value == res.value

    L, g, M, h = pair("a2p2a2", "a3")
    res, split = min_slope_tensor(L, g, M, h)
    assert res.value == SlopeValue(3, 2) * SlopeValue(4, 3) == SlopeValue(432, 6)
    assert split.masks == (1, 0)


@pytest.mark.parametrize("a, b, value", [
    ("a2p2a2", "a3", SlopeValue(432, 6)),
    ("diag1_2", "diag1_3", SlopeValue(1, 1)),
    ("e8", "e8", SlopeValue(1, 64)),
])
def test_conjecture_examples(a, b, value):
    rep = conjecture_check(*pair(a, b))
    assert rep.verdict == "Equal" and not rep.candidate_counterexample
    assert rep.mu_min_tensor == rep.product == value


def test_conjecture_report_json():
    rep = conjecture_check(*pair("a2p2a2", "a3"))
    js = rep.to_json()
    assert js["verdict"] == "Equal" and js["r"] == 2 and js["s"] == 1
    assert js["mu_min_tensor"]["vol_sq"] == "432" and js["mu_min_tensor"]["rank"] == 6


def test_audit_a2p2a2_a3():
    au = theorem_audit(*pair("a2p2a2", "a3"))
    assert au.applicable and au.passed
    assert (au.a, au.b) == (1, 1)
    assert au.alpha == (PowerRoot.of(1) / 2, PowerRoot.of(2))
    assert au.beta[0] == PowerRoot.of(1)
    assert (au.x, au.t, au.x_prime) == (1, 1, 1)
    assert (au.l1, au.l2, au.m1, au.m2) == (2, 2, 3, 0)
    assert "x*t*x' = a^m b^l" in au.table()


def test_audit_glued_lattice():
    au = theorem_audit(*pair("glued2", "z1"), masks=(1, 0))
    assert au.applicable and au.passed
    assert (au.a, au.b) == (2, 1)
    assert au.x <= min(2 ** au.m1, 2 ** au.m2)
    assert au.alpha[0] * au.alpha[1] == PowerRoot.of(2)


def test_audit_orthogonal_split_inverts_alpha():
    # a = 1 forces alpha_2 = 1 / alpha_1
    au = theorem_audit(*pair("diag1_2", "diag1_3"), masks=(1, 2))
    assert au.applicable and au.passed and au.a == 1
    assert au.alpha[0] * au.alpha[1] == PowerRoot.of(1)


def test_audit_not_applicable():
    au = theorem_audit(*pair("e8", "a2"))
    assert not au.applicable and au.passed
    # the destabilizing split of glued2 (x) Z^1 is the whole space
    au = theorem_audit(*pair("glued2", "z1"))
    assert not au.applicable and au.masks == (1, 1)
    au = theorem_audit(*pair("diag1_2", "diag1_3"), masks=(1, 1))
    assert not au.applicable and "shape not applicable" in au.reason


def test_audit_all_splits():
    audits = audit_all_splits(*pair("diag1_2", "diag1_3"))
    assert len(audits) == 4
    assert all(au.applicable and au.passed for au in audits)


def test_reduction_predicates():
    rp = reduction_predicates(*pair("e8", "e8"))
    assert rp["L_semistable"] and rp["M_semistable"] and rp["sum_E_i_is_E"] and rp["sum_F_i_is_F"]
    rp = reduction_predicates(*pair("diag1_4", "z2"))
    assert not rp["L_semistable"]
    rp = reduction_predicates(*pair("a2p2a2", "a3"))
    assert not rp["L_semistable"] and rp["M_semistable"]


def test_trivial_inequality_and_bruteforce_on_mixed_pairs():
    for a, b in [("glued2", "z1"), ("a2", "diag1_2"), ("diag1_3", "glued2"), ("a2", "a2")]:
        L, g, M, h = pair(a, b)
        res, _ = min_slope_tensor(L, g, M, h)
        rep = conjecture_check(L, g, M, h)
        assert res.value <= rep.product
        assert res.value == min_slope_bruteforce(tensor(L, M)).value


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_min_slope_tensor_matches_bruteforce(seed):
    rng = trial_rng(seed, 3)
    A = random_mf_instance(rng, max_rank=3)
    B = random_mf_instance(rng, max_rank=6 // A.lattice.rank)
    L, M = A.lattice, B.lattice
    res, _ = min_slope_tensor(L, A.action(), M, B.action())
    assert res.value == min_slope_bruteforce(tensor(L, M)).value
