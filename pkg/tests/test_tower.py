import pytest
from hypothesis import given, settings, strategies as st

from eigenkummer.core import mult_order
from eigenkummer.errors import BadCharacteristic, HypothesisViolated, InvalidInstance
from eigenkummer.fields import CyclotomicField, FiniteField, factor_degree_cyclotomic, is_primitive_root_of_unity
from eigenkummer.tower import (
    albert_classify, build_tower, class_group_of, cor25_surjectivity, cyclotomic_characters,
    degree_check, descent_iso_check, eigen_split_report, kummer_correspondence, kummer_kernel,
    prime_powers_below, pth_power_degree, th27_check,
)

import oracles

PRIME_POWERS = [q for q in range(2, 200) if oracles.is_prime_power(q)]


def test_prime_powers_below():
    assert prime_powers_below(200) == PRIME_POWERS


@pytest.mark.parametrize("q,p,n", [(2, 3, 2), (7, 3, 2), (2, 5, 2), (4, 3, 3), (19, 3, 3)])
def test_tower_degrees_frozen(q, p, n):
    t = build_tower(q, p, n)
    assert t.s == oracles.order_mod(q, p)
    assert t.deg_MF == oracles.order_mod(q, p ** n)
    assert t.d == oracles.vp(q ** t.s - 1, p)
    assert t.deg_ML == p ** (n - t.c)


def test_tower_examples():
    # 2 mod 9 has order 6; 2^2 - 1 = 3 gives d = 1, [M:L] = 3
    t = build_tower(2, 3, 2)
    assert (t.s, t.d, t.c, t.deg_ML, t.deg_MF) == (2, 1, 1, 3, 6)
    # 7 = 1 mod 3, 7 - 1 = 6 has v_3 = 1
    t = build_tower(7, 3, 2)
    assert (t.s, t.d, t.deg_ML) == (1, 1, 3)
    # 2 mod 25: order 20, 2^4 - 1 = 15 so d = 1
    t = build_tower(2, 5, 2)
    assert (t.s, t.deg_MF, t.alpha.gamma) == (4, 20, 2)
    assert t.theta.gamma == pow(2, 5, 25) == 7


def test_tower_rejects_bad_characteristic():
    with pytest.raises(BadCharacteristic):
        build_tower(9, 3, 1)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(PRIME_POWERS), st.sampled_from([3, 5, 7, 11, 13]), st.integers(1, 4))
def test_degree_formula(q, p, n):
    if q % p == 0:
        return
    direct, formula = degree_check(q, p, n)
    assert direct == formula == oracles.order_mod(q, p ** n) // oracles.order_mod(q, p)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIME_POWERS), st.sampled_from([3, 5, 7, 11, 13]), st.integers(1, 3))
def test_tower_structure_checks(q, p, n):
    if q % p == 0:
        return
    t = build_tower(q, p, n)
    assert descent_iso_check(t)["pass"]
    assert cyclotomic_characters(t)["pass"]
    assert eigen_split_report(t, "L")["pass"]
    assert cor25_surjectivity(q, p, n)["surjective"]
    assert th27_check(t)["pass"]


def test_class_group_orders():
    # F_7*/F_7*^9 has order gcd(6, 9) = 3
    assert class_group_of(7, 3, 2).order == 3
    assert class_group_of(19, 3, 2).order == 9
    assert class_group_of(5, 3, 2).order == 1


def test_pth_power_degree_against_fields():
    # the primitive root 3 is not a cube in F_7 (cubes are {1, 6}); it becomes one in F_343
    assert oracles.pth_powers_prime_field(7, 3) == [1, 6]
    g = FiniteField.of_order(7).primitive_int()
    assert g not in (1, 6)
    assert pth_power_degree(7, 1, 3) == 3
    assert pth_power_degree(7, 3, 3) == 1
    # a cube root of g appears in F_343 by search
    K = FiniteField.of_order(343)
    assert any(y ** 3 == K(g) for y in K.units())


def test_albert_classification_agrees():
    t = build_tower(7, 3, 1)
    for j in range(3):
        assert albert_classify(t, j)["agree"]


def test_albert_needs_m_equal_l():
    with pytest.raises(HypothesisViolated):
        albert_classify(build_tower(2, 3, 2), 1)


@pytest.mark.parametrize("q,p,n", [(7, 3, 1), (19, 3, 2), (11, 5, 1), (4, 3, 2)])
def test_kummer_correspondence(q, p, n):
    t = build_tower(q, p, n)
    for base in ("F", "L"):
        for u in range(1, 4):
            assert kummer_correspondence(t, u, base)["degree_matches"]


def test_kummer_kernel():
    assert kummer_kernel(7, 3, 1)["pass"]
    assert kummer_kernel(31, 5, 2)["pass"]
    with pytest.raises(InvalidInstance):
        kummer_kernel(5, 3, 1)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_cyclotomic_factor_degree_matches_order(p):
    for Q in PRIME_POWERS:
        if Q % p:
            assert factor_degree_cyclotomic(Q, p) == mult_order(Q, p)


def test_mu_degree_frozen():
    assert oracles.field_degree_of_mu(2, 3) == factor_degree_cyclotomic(2, 3) == 2
    assert oracles.field_degree_of_mu(7, 3) == factor_degree_cyclotomic(7, 3) == 1
    assert oracles.field_degree_of_mu(2, 7) == factor_degree_cyclotomic(2, 7) == 3


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27])
def test_finite_field_axioms(q):
    F = FiniteField.of_order(q)
    units = F.units()
    assert len(units) == q - 1
    g = F.primitive_element
    assert F.element_order(g) == q - 1
    for x in units[:10]:
        assert x * x.inverse() == F.one()
        assert x ** q == x
        assert F.frobenius(x, F.k) == x


def test_cyclotomic_field_arithmetic():
    K = CyclotomicField(5)
    z = K.zeta
    assert z ** 5 == K.one()
    assert is_primitive_root_of_unity(z, 5)
    assert not is_primitive_root_of_unity(z ** 5, 5)
    x = z + 2
    assert x * x.inverse() == K.one()
    sigma = K.automorphism(2)
    assert sigma(z) == z ** 2
    assert sigma(x * z) == sigma(x) * sigma(z)
