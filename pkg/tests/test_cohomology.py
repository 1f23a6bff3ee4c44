import pytest
from hypothesis import given, settings, strategies as st

from eigenkummer import groups
from eigenkummer.cohomology import (
    CyclicGroupAction, h_i, herbrand_check, mu_size_direct, mu_size_direct_tower, mu_size_formula,
    twist_compat,
)
from eigenkummer.core import UnitCharacter
from eigenkummer.errors import CharacterNotTrivialOnK, OutOfRange
from eigenkummer.lattice import elementary_divisors

import oracles


@pytest.mark.parametrize("N,a,u,expected", [(3, 9, 1, (3, 3)), (3, 9, 7, (1, 1)), (2, 5, 4, (1, 1))])
def test_cyclic_cohomology_frozen(N, a, u, expected):
    act = CyclicGroupAction.build(N, (a,), u)
    got = (h_i(act, 1).order, h_i(act, 2).order)
    assert got == oracles.cyclic_h1_h2(N, a, u) == expected


@pytest.mark.parametrize("N,a,u", [(2, 4, 3), (2, 6, 5), (4, 5, 2), (3, 7, 2), (2, 8, 3), (4, 4, 1), (3, 4, 1)])
def test_cyclic_cohomology_against_cocycle_enumeration(N, a, u):
    act = CyclicGroupAction.build(N, (a,), u)
    assert (h_i(act, 1).order, h_i(act, 2).order) == oracles.cyclic_h1_h2(N, a, u)


def test_h2_trivial_action_tables():
    act = CyclicGroupAction.build(2, (2,), 1)
    assert h_i(act, 2).order == oracles.h2_trivial_tables(2, 2) == 2


def test_h0_is_fixed_points():
    act = CyclicGroupAction.build(3, (9,), 7)
    assert h_i(act, 0).order == 3


def test_norm_matrix_matches_linear_sum():
    act = CyclicGroupAction.build(6, (7, 7), [[0, 6], [1, 1]])
    N = act.norm_matrix()
    T = act.module.action
    S = [[0, 0], [0, 0]]
    P = [[1, 0], [0, 1]]
    for _ in range(6):
        S = [[(S[i][j] + P[i][j]) % 7 for j in range(2)] for i in range(2)]
        P = [[sum(T[i][k] * P[k][j] for k in range(2)) % 7 for j in range(2)] for i in range(2)]
    assert [list(r) for r in N] == S


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(2, 60), st.data())
def test_herbrand_quotient_of_finite_module_is_one(N, a, data):
    us = [u for u in oracles.units(a) if pow(u, N, a) == 1]
    u = data.draw(st.sampled_from(us))
    ok, h1, h2 = herbrand_check(CyclicGroupAction.build(N, (a,), u))
    assert ok and h1 == h2


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(2, 40), st.data())
def test_agrees_with_generic_cochains(N, a, data):
    u = data.draw(st.sampled_from([u for u in oracles.units(a) if pow(u, N, a) == 1]))
    act = CyclicGroupAction.build(N, (a,), u)
    G = groups.cyclic(N)
    M = groups.GroupModule.from_generator(G, (a,), 1 % N, [[u]])
    for i in (1, 2):
        ours = elementary_divisors(h_i(act, i).invariants)
        brute = elementary_divisors(groups.brute_cohomology(M, i).invariants)
        assert ours == brute


@pytest.mark.parametrize("p", [3, 5, 7])
def test_mu_size_formula_matches_direct(p):
    for n in range(1, 5):
        for c in range(1, n + 1):
            for k in range(1, n + 1):
                f = mu_size_formula(p, n, k, c)
                assert f == mu_size_direct(p, n, k, c, 1) == mu_size_direct(p, n, k, c, 2)


def test_mu_size_at_k_equals_n_is_trivial():
    for q in (2, 4, 7, 8, 19):
        for n in (1, 2, 3):
            assert mu_size_direct_tower(q, 3, n, n, 1) == mu_size_direct_tower(q, 3, n, n, 2) == 1


def test_mu_size_out_of_range():
    with pytest.raises(OutOfRange):
        mu_size_formula(3, 2, 3, 1)
    with pytest.raises(OutOfRange):
        mu_size_direct(3, 2, 0, 1)


def test_twist_compat_reports_agreement():
    act = CyclicGroupAction.build(6, (9,), 8)
    rep = twist_compat(act, UnitCharacter(9, 6, 4), 3)
    assert rep["isomorphic"]
    assert rep["K_order"] == 2


def test_twist_compat_needs_chi_trivial_on_subgroup():
    act = CyclicGroupAction.build(6, (9,), 8)
    with pytest.raises(CharacterNotTrivialOnK):
        twist_compat(act, UnitCharacter(9, 6, 2), 3)
