import math

import pytest

from eigenkummer import sweeps

import oracles


def test_tower_instances_cover_the_grid():
    got = set(sweeps.tower_instances())
    want = {(q, p, n) for q in range(2, 200) if oracles.is_prime_power(q)
            for p in (3, 5, 7, 11, 13) if q % p for n in range(1, 5)}
    assert got == want


def test_idempotent_instances_cover_divisors():
    got = {(p, n, s) for p, n, s in sweeps.idempotent_instances()}
    want = {(p, n, s) for p in (3, 5, 7, 11, 13) for n in (1, 2, 3) for s in range(1, p) if (p - 1) % s == 0}
    assert got == want


def test_check_idempotents_single_case():
    rep = sweeps.check_idempotents(13, 2, 12)
    assert rep == {"idempotent": True, "orthogonal": True, "sum_is_one": True, "eigen": True}


def test_cohom_oracle_instances_cover_orbits():
    # every (N, a, u) is isomorphic to a listed one via u -> u^t
    listed = set(sweeps.cohom_oracle_instances(6, 20))
    for N in range(1, 7):
        units_N = [t for t in range(1, N + 1) if math.gcd(t, N) == 1]
        for a in range(2, 21):
            for u in oracles.units(a):
                if pow(u, N, a) != 1 % a:
                    continue
                assert any((N, a, pow(u, t, a)) in listed for t in units_N)


def test_small_cohom_oracle_suite():
    rows = sweeps.suite_cohom_oracle(4, 30)
    assert rows and all(r["agree"] for r in rows)


def test_small_prop46_suite():
    rows = sweeps.suite_prop46(max_s=6, max_size=27)
    assert rows and all(r["agree"] for r in rows)


def test_prop46_modules_include_rank_two():
    mods = sweeps.prop46_modules(25)
    assert ((5, 5), ((2, 0), (0, 3))) in mods
    assert sum(1 for o, _ in mods if o == (3, 3)) == 48


def test_prop14_suite_passes():
    r = sweeps.run_suite("prop14")
    assert r["instances"] > 0 and r["failures"] == 0


def test_run_suite_unknown_name():
    with pytest.raises(KeyError):
        sweeps.run_suite("nope")


def test_parallel_run_matches_serial(monkeypatch):
    serial = sweeps.run_suite("idempotents")["rows"]
    monkeypatch.setenv("EIGENKUMMER_JOBS", "2")
    assert sweeps.jobs() == 2
    parallel = sweeps.run_suite("idempotents")["rows"]
    assert parallel == serial
