from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hopfcyc.exactcore import Echelon, vadd, zeros
from hopfcyc.hopf import h1s_cop
from hopfcyc.lie import sl2_efh, sl2_xyz
from hopfcyc.pbw import EnvelopingAlgebra
from hopfcyc.sayd import (SaydData, builtin_sayd, check_all, check_ayd, check_lie_comodule, check_lie_module,
                          check_locally_conilpotent, check_stable, check_U_lift, check_unimodular_stable,
                          check_yd_and_stability_over_H, compute_filtration, element_stability_residual,
                          flatten, four_dim_induced, four_dim_v, koszul_dual_one, koszul_symmetric,
                          lift_coaction_to_U, one_dim_mpi, sl2_dual_family, sl2_simple_two,
                          solve_ayd_coactions, tensor_sayd, vnproj)

BUILTINS = ["s-sl2-dual-1", "sl2-simple-2", "v4-schwarzian", "vnproj(1)", "vnproj(2)", "koszul-sym(1)",
            "koszul-sym(2)"]

E = [[0, 1], [0, 0]]
F = [[0, 0], [1, 0]]


def test_zero_coaction_is_comodule():
    assert check_lie_comodule(sl2_simple_two()).ok


def test_koszul_is_comodule():
    assert check_lie_comodule(sl2_dual_family(1, 0)).ok


def test_noncommuting_coaction_fails():
    g = sl2_efh()
    d = SaydData(g, [zeros(2)] * 3, [E, F, zeros(2)], None, "bad")
    rep = check_lie_comodule(d)
    assert not rep.ok
    assert "e" in str(rep.failures[0]) and "f" in str(rep.failures[0])


@pytest.mark.parametrize("c,d", [(1, 0), (0, 1), (2, -3), (Fraction(1, 2), 5)])
def test_family_ayd_and_stable(c, d):
    V = sl2_dual_family(c, d)
    assert check_ayd(V).ok and check_stable(V).ok


def test_ayd_perturbation_fails():
    V = sl2_dual_family(1, 0)
    bad = V.with_coaction([V.A[0], V.A[1], zeros(4)])
    assert not check_ayd(bad).ok


def test_zero_coaction_stable_and_ayd():
    V = sl2_simple_two()
    assert check_ayd(V).ok and check_stable(V).ok


def test_element_stability_counterexample():
    # residual of X1 X2 X3 is [[X1, X3], X2]; nonzero for (e, f, h), zero for (X, Y, Z)
    comm = lambda U, a, b: vadd(U.mul(a, b), U.mul(b, a), -1)  # noqa: E731
    g = sl2_efh()
    U = EnvelopingAlgebra(g, 6)
    e, f, h = (U.gen(i) for i in range(3))
    got = element_stability_residual(g, U.parse("e*f*h"), U)
    assert got == comm(U, comm(U, e, h), f) == {U.parse("h").popitem()[0]: Fraction(-2)}
    g2 = sl2_xyz()
    U2 = EnvelopingAlgebra(g2, 6)
    assert element_stability_residual(g2, U2.parse("X*Y*Z"), U2) == {}


def test_solve_simple_module_only_zero():
    V = sl2_simple_two()
    sol, cons = solve_ayd_coactions(V.g, V.B)
    assert sol.dimension == 0 and not any(sol.particular)
    # without stability a linear AYD line survives, but its comodule constraints are c0^2 = 0
    sol2, cons2 = solve_ayd_coactions(V.g, V.B, include_stability=False)
    assert sol2.dimension == 1
    assert cons2 and all(set(form) == {(0, 0)} for _, _, form in cons2)


def test_solve_dual_module_two_parameters():
    V = sl2_dual_family()
    sol, cons = solve_ayd_coactions(V.g, V.B)
    assert sol.dimension == 2
    span = Echelon()
    for b in sol.basis:
        span.add({i: c for i, c in enumerate(b) if c})
    for c, d in [(1, 0), (0, 1), (3, 7)]:
        v = flatten(sl2_dual_family(c, d).A)
        assert span.contains({i: x for i, x in enumerate(v) if x})
    # the c=1, d=0 point is the Koszul coaction
    assert sl2_dual_family(1, 0).A == koszul_dual_one(sl2_efh()).A
    # commutation leaves only c*d = 0
    assert cons and all(set(form) == {(0, 1)} for _, _, form in cons)


def test_solve_abelian_unconstrained():
    from hopfcyc.lie import abelian
    g = abelian(1)
    sol, cons = solve_ayd_coactions(g, [zeros(2)], include_stability=False)
    assert sol.dimension == 4 and not cons


def test_conilpotency_index():
    assert check_locally_conilpotent(sl2_simple_two()) == 1
    assert check_locally_conilpotent(sl2_dual_family(1, 0)) == 2


@pytest.mark.parametrize("k", [1, 2, 3])
def test_truncated_koszul_index_grows(k):
    # the index of S(g*)_[<=k] is k+1, so the untruncated algebra has none
    assert check_locally_conilpotent(koszul_symmetric(sl2_xyz(), k)) == k + 1


def test_lift_zero_coaction():
    V = sl2_simple_two()
    lift, U = lift_coaction_to_U(V)
    assert lift == [{(U.zero_mono, i): 1} for i in range(2)]


def test_lift_koszul():
    V = sl2_dual_family(1, 0)
    lift, U = lift_coaction_to_U(V)
    assert lift[0] == {((0, 0, 0), 0): 1, ((1, 0, 0), 1): 1, ((0, 1, 0), 2): 1, ((0, 0, 1), 3): 1}
    for i in (1, 2, 3):
        assert lift[i] == {((0, 0, 0), i): 1}
    assert check_U_lift(V, lift, U).ok


def test_lift_ayd_on_truncated_koszul():
    V = koszul_symmetric(sl2_xyz(), 2)
    lift, U = lift_coaction_to_U(V)
    assert check_U_lift(V, lift, U).ok


def test_filtration_dual_module():
    levels = compute_filtration(four_dim_v())
    assert levels[0] == [{1: 1}, {2: 1}, {3: 1}]
    assert len(levels) == 2 and len(levels[1]) == 4


def test_filtration_trivial():
    assert len(compute_filtration(sl2_simple_two())) == 1


def test_filtration_stable_under_action():
    V = koszul_symmetric(sl2_xyz(), 2)
    levels = compute_filtration(V)
    prev = Echelon()
    for rows in levels:
        ech = Echelon()
        for r in rows:
            ech.add(r)
        for r in rows:
            for j in range(V.g.dim):
                assert ech.contains(V.act(r, j))
                assert prev.contains(V.act_theta(r, j))
        prev = ech


@pytest.fixture(scope="module")
def M():
    return four_dim_induced(h1s_cop(6))


def test_induced_coaction_table(M):
    assert M.coact_str({0: 1}) == "1*1(x)1 + 1*X(x)RX + 1*Y(x)RY"
    assert M.coact_str({2: 1}) == "1*d1(x)RX + 1*1(x)RY"
    assert M.coact_str({3: 1}) == "1/2*d1^2(x)RX + 1*d1(x)RY + 1*1(x)RZ"


def test_induced_f_action(M):
    d1 = M.H.gen("d1")
    assert M.act({0: 1}, d1, twisted=False) == {3: 1}
    for i in (1, 2, 3):
        assert M.act({i: 1}, d1, twisted=False) == {}


def test_twisted_y_action(M):
    Y = M.H.gen("Y")
    assert M.act({0: 1}, Y) == {0: 1}
    assert M.act({1: 1}, Y) == {1: 2}
    assert M.act({3: 1}, Y) == {}


def test_yd_and_stability_pass(M):
    rep = check_yd_and_stability_over_H(M)
    assert rep.ok, rep.failures[:2]


def test_mpi_module_passes():
    assert check_yd_and_stability_over_H(one_dim_mpi(h1s_cop(6))).ok


def test_yd_fails_without_f_action():
    M = four_dim_induced(h1s_cop(6))
    M.f_mats = [zeros(4)]
    M._mm.clear()
    M._tm.clear()
    rep = check_yd_and_stability_over_H(M)
    assert not rep.ok


@pytest.mark.parametrize("name", BUILTINS)
def test_builtins_pass_declared_checks(name):
    reps, idx = check_all(builtin_sayd(name))
    assert all(r.ok for r in reps), [r.failures for r in reps if not r.ok]
    assert idx is not None


def test_vnproj1_unimodular_stable():
    V = vnproj(1)
    assert check_ayd(V).ok and check_unimodular_stable(V).ok


def test_nonstable_perturbation_is_flagged():
    V = builtin_sayd("nonstable-gl1aff")
    assert check_lie_module(V).ok and check_ayd(V).ok
    assert not check_unimodular_stable(V).ok


def test_tensor_of_ayd_is_ayd():
    V = sl2_dual_family(1, 0)
    W = sl2_simple_two()
    assert check_ayd(tensor_sayd(V, W)).ok


def _invertible(entries):
    # unit lower-triangular times a permutation-free diagonal keeps it invertible
    n = 4
    P = [[Fraction(0)] * n for _ in range(n)]
    it = iter(entries)
    for i in range(n):
        for j in range(n):
            if i == j:
                P[i][j] = Fraction(next(it) or 1)
            elif j < i:
                P[i][j] = Fraction(next(it))
    return P


@settings(max_examples=15, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=10, max_size=10))
def test_checks_basis_independent(entries):
    V = sl2_dual_family(1, 0)
    W = V.conjugate(_invertible(entries))
    for chk in (check_lie_module, check_lie_comodule, check_ayd, check_stable):
        assert chk(W).ok == chk(V).ok
    bad = V.with_coaction([V.A[0], V.A[1], zeros(4)])
    assert check_ayd(bad.conjugate(_invertible(entries))).ok is False
