import numpy as np
import pytest

from eigenkummer import groups
from eigenkummer.errors import BadOrder, InvalidInstance, TooLarge
from eigenkummer.lattice import elementary_divisors

import oracles


def test_builtin_group_orders_and_names():
    gs = groups.builtin_groups(24)
    assert all(G.order <= 24 for G in gs)
    assert len({(G.name, G.order) for G in gs}) == len(gs)
    assert groups.heisenberg(3).order == 27


@pytest.mark.parametrize("G", [groups.dihedral(4), groups.dicyclic(2), groups.alternating4(),
                               groups.direct_product(groups.cyclic(2), groups.cyclic(4))])
def test_subgroups_match_brute_force(G):
    subs = G.subgroups
    for k in range(1, G.order + 1):
        if G.order % k == 0:
            ours = {H for H in subs if len(H) == k}
            assert ours == oracles.subgroups_of_order(G.table, k)


def test_invalid_table_rejected():
    with pytest.raises(InvalidInstance):
        groups.FiniteGroup([[0, 1], [1, 1]])


def test_unit_characters_of_cyclic_group():
    # Z/4 -> (Z/5)*: the generator may go to any fourth root of unity
    chis = groups.unit_characters(groups.cyclic(4), 5)
    assert sorted(c[1] for c in chis) == oracles.roots_of_unity_mod(4, 5)


@pytest.mark.parametrize("G", [groups.cyclic(6), groups.dihedral(3), groups.dihedral(4),
                               groups.dicyclic(2), groups.alternating4()])
def test_lemma_1_9_small_groups(G):
    for e in (2, 3, 4):
        rows = groups.sweep_lemma_1_9([G], [e])
        assert rows and all(r["agree"] for r in rows)


def test_prop_1_4_equivalence():
    rep = groups.verify_prop_1_4(groups.cyclic(6), 3, 2)
    assert rep["equivalent"] and rep["direct_product"]
    rep = groups.verify_prop_1_4(groups.dihedral(3), 3, 2)
    assert rep["equivalent"] and not rep["direct_product"]
    assert rep["trivial_action_on_P"] is False
    with pytest.raises(BadOrder):
        groups.verify_prop_1_4(groups.cyclic(10), 3, 2)


def test_prop_1_4_needs_cyclic_quotient():
    with pytest.raises(InvalidInstance):
        groups.verify_prop_1_4(groups.dihedral(10), 5, 4)


def test_prop_1_1_chain_in_heisenberg_group():
    chain = groups.verify_prop_1_1_analog(groups.heisenberg(3), [0])
    assert [len(H) for H in chain] == [1, 3, 9, 27]
    with pytest.raises(BadOrder):
        groups.verify_prop_1_1_analog(groups.cyclic(6), [0])


@pytest.mark.parametrize("n,a", [(2, 2), (3, 3), (2, 3)])
def test_brute_h2_trivial_action(n, a):
    M = groups.GroupModule.trivial(groups.cyclic(n), (a,))
    assert groups.brute_cohomology(M, 2).order == oracles.h2_trivial_tables(n, a)
    assert groups.brute_cohomology(M, 2, "enumerate").order == oracles.h2_trivial_tables(n, a)


def test_brute_cohomology_klein_four():
    # H^1(V4, Z/2) = Hom(V4, Z/2) has order 4; H^2 has order 8
    V = groups.direct_product(groups.cyclic(2), groups.cyclic(2))
    M = groups.GroupModule.trivial(V, (2,))
    assert groups.brute_cohomology(M, 1).order == 4
    assert groups.brute_cohomology(M, 2).order == 8
    assert groups.brute_cohomology(M, 2, "enumerate").order == 8


def test_brute_cohomology_nonabelian_group():
    # S3 acting on Z/3 by the sign: reflections invert both Hom(C3, Z/3) and the module,
    # so H^1 = Hom(C3, Z/3)^{C2} = Z/3
    S3 = groups.dihedral(3)
    rot = [x for x in range(6) if S3.orders[x] in (1, 3)]
    mats = [[[1 if x in rot else 2]] for x in range(6)]
    M = groups.GroupModule(S3, (3,), mats)
    assert groups.brute_cohomology(M, 1).invariants == groups.brute_cohomology(M, 1, "enumerate").invariants == [3]
    assert groups.brute_cohomology(M, 0).order == 1


def test_cyclic_brute_matches_oracle():
    for N, a, u in [(3, 9, 1), (3, 9, 7), (2, 5, 4), (4, 5, 2)]:
        M = groups.GroupModule.from_generator(groups.cyclic(N), (a,), 1, [[u]])
        h1, h2 = oracles.cyclic_h1_h2(N, a, u)
        assert groups.brute_cohomology(M, 1).order == h1
        assert groups.brute_cohomology(M, 2).order == h2


def test_brute_cohomology_bounds():
    with pytest.raises(TooLarge):
        groups.brute_cohomology(groups.GroupModule.trivial(groups.cyclic(2), (1024,)), 1)
    with pytest.raises(TooLarge):
        groups.brute_cohomology(groups.GroupModule.trivial(groups.cyclic(25), (2,)), 1)


def test_invalid_action_rejected():
    with pytest.raises(InvalidInstance):
        groups.GroupModule(groups.cyclic(2), (5,), [np.eye(1, dtype=np.int64), [[2]]])


@pytest.mark.parametrize("G,p", [(groups.dihedral(3), 3), (groups.semidirect_cyclic(5, 4, 2), 5),
                                 (groups.cyclic(12), 3)])
def test_lemma_2_2_fixed_part(G, p):
    M = groups.GroupModule.trivial(G, (p,))
    rep = groups.verify_lemma_2_2_finite(M, p)
    assert rep[1]["agree"] and rep[2]["agree"]


def test_elementary_divisors():
    assert elementary_divisors([6]) == [2, 3]
    assert elementary_divisors([12, 2]) == [2, 3, 4]


def test_lemma_2_2_with_sign_action():
    S3 = groups.dihedral(3)
    mats = [[[1 if S3.orders[x] != 2 else 2]] for x in range(6)]
    rep = groups.verify_lemma_2_2_finite(groups.GroupModule(S3, (3,), mats), 3)
    assert rep[1]["agree"] and rep[1]["H_G"] == [3]
    assert rep[2]["agree"]
