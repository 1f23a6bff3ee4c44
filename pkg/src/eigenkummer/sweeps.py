"""Named verification suites.  Each suite returns rows {instance, lhs, rhs, agree}.

Suites are deterministic; set EIGENKUMMER_JOBS > 1 to fan instances out over
worker processes (results are reassembled in input order).
"""

from __future__ import annotations

import itertools
import math
import os
import time
from fractions import Fraction
from concurrent.futures import ProcessPoolExecutor

from sympy import factorint

from . import groups
from .cohomology import CyclicGroupAction, h_i, mu_size_direct_tower, mu_size_formula
from .core import (
    FiniteModule,
    GroupRingElem,
    Modulus,
    UnitCharacter,
    enumerate_characters,
    idempotents,
    induce_and_project,
)
from .errors import InvalidInstance
from .fields import CyclotomicField, FiniteField
from .lattice import elementary_divisors, mat_mul
from .symbols import build_symbol, relabel_iso
from .tower import build_tower, cor25_surjectivity, degree_check, descent_iso_check, prime_powers_below
from .valuation import (
    LaurentElement,
    LexValueGroup,
    ValuedFieldDescriptor,
    predict_Fp_extension,
    symbol_division_test,
)

TOWER_PRIMES = (3, 5, 7, 11, 13)
TOWER_Q_BOUND = 200
TOWER_MAX_N = 4


def jobs():
    try:
        return max(1, int(os.environ.get("EIGENKUMMER_JOBS", "1")))
    except ValueError:
        return 1


def _map(fn, tasks):
    tasks = list(tasks)
    n = jobs()
    if n == 1 or len(tasks) < 2:
        return [fn(t) for t in tasks]
    chunk = max(1, len(tasks) // (4 * n))
    with ProcessPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, tasks, chunksize=chunk))


def _row(instance, lhs, rhs, agree=None):
    return {"instance": instance, "lhs": lhs, "rhs": rhs, "agree": lhs == rhs if agree is None else agree}


def tower_instances(q_bound=TOWER_Q_BOUND, primes=TOWER_PRIMES, max_n=TOWER_MAX_N):
    for q in prime_powers_below(q_bound):
        for p in primes:
            if q % p == 0:
                continue
            for n in range(1, max_n + 1):
                yield q, p, n


# --- finite-field tower suites


def _lemma110(t):
    q, p, n = t
    direct, formula = degree_check(q, p, n)
    return _row({"q": q, "p": p, "n": n}, direct, formula)


def _remark113(t):
    q, p, n = t
    tower = build_tower(q, p, n)
    rows = []
    for k in range(1, n + 1):
        for i in (1, 2):
            direct = mu_size_direct_tower(q, p, n, k, i, tower)
            formula = mu_size_formula(p, n, k, tower.c)
            rows.append(_row({"q": q, "p": p, "n": n, "k": k, "degree": i}, direct, formula))
    return rows


def _lemma111(t):
    q, p, n = t
    tower = build_tower(q, p, n)
    h1 = mu_size_direct_tower(q, p, n, n, 1, tower)
    h2 = mu_size_direct_tower(q, p, n, n, 2, tower)
    return _row({"q": q, "p": p, "n": n, "k": n}, [h1, h2], [1, 1])


def _cor112(t):
    q, p, n = t
    rep = descent_iso_check(build_tower(q, p, n))
    return _row({"q": q, "p": p, "n": n}, rep["L"]["bijective"] and rep["M"]["bijective"], True)


def _cor25(t):
    q, p, n = t
    rep = cor25_surjectivity(q, p, n)
    return _row({"q": q, "p": p, "n": n}, [rep["image_order"], rep["surjective"]], [rep["target_order"], True])


def suite_lemma110():
    return _map(_lemma110, tower_instances())


def suite_remark113():
    return [r for rows in _map(_remark113, tower_instances()) for r in rows]


def suite_lemma111():
    return _map(_lemma111, tower_instances())


def suite_cor112():
    return _map(_cor112, tower_instances())


def suite_cor25():
    return _map(_cor25, tower_instances())


# --- group-ring idempotents


def check_idempotents(p, n, s):
    mod = Modulus(p, n)
    es = idempotents(mod, s)
    chars = enumerate_characters(mod, s)
    one = GroupRingElem.one(mod, s)
    zero = GroupRingElem(mod, (0,) * s)
    h = GroupRingElem.h(mod, s)
    idem = all(e * e == e for e in es)
    orth = all(a * b == zero for i, a in enumerate(es) for j, b in enumerate(es) if i != j)
    total = zero
    for e in es:
        total = total + e
    eigen = all(h * e == e * chi.gamma for e, chi in zip(es, chars))
    return {"idempotent": idem, "orthogonal": orth, "sum_is_one": total == one, "eigen": eigen}


def idempotent_instances(primes=TOWER_PRIMES, max_n=3):
    for p in primes:
        for n in range(1, max_n + 1):
            for s in range(1, p):
                if (p - 1) % s == 0:
                    yield p, n, s


def suite_idempotents():
    rows = []
    for p, n, s in idempotent_instances():
        rep = check_idempotents(p, n, s)
        rows.append(_row({"p": p, "n": n, "s": s}, all(rep.values()), True))
    return rows


# --- symbol algebras


def relabel_instances():
    """(field, m, a, b, zeta) over Q(zeta_m) and finite fields containing mu_m."""
    out = []
    for m in (2, 3, 5):
        K = CyclotomicField(m)
        out.append((K, m, K(2), K(3), K.zeta))
        out.append((K, m, K.zeta + 2, K(5), K.zeta))
    finite = {2: (3, 5, 9), 3: (4, 7), 5: (11, 16)}
    for m, qs in finite.items():
        for q in qs:
            F = FiniteField.of_order(q)
            g = F.primitive_element
            zeta = g ** ((q - 1) // m)
            out.append((F, m, g, g + 1 if not (g + 1).is_zero() else g * g, zeta))
    return out


def suite_relabel():
    rows = []
    for K, m, a, b, zeta in relabel_instances():
        A = build_symbol(K, m, a, b, zeta)
        for k in range(1, m + 1 if m > 1 else 2):
            if math.gcd(k, m) != 1:
                continue
            iso = relabel_iso(A, k)
            inst = {"field": repr(K), "m": m, "a": repr(a), "b": repr(b), "k": k}
            rows.append(_row(inst, [iso.homomorphism, iso.bijective], [True, True]))
    return rows


# --- valuations


def ex42():
    """(x, y) over J = F_4((x))((y)) completed upward: residue F_4(3), mu_3 everywhere."""
    F4 = FiniteField(2, 2)
    desc = ValuedFieldDescriptor("F_4(3)", 2, 3, [True, True])
    x = LaurentElement.var(F4, 2, 0)
    y = LaurentElement.var(F4, 2, 1)
    return symbol_division_test(x, y, desc)


def suite_ex42():
    res = ex42()
    expected = LexValueGroup(2, 3, 0, [(Fraction(1, 3), 0), (0, Fraction(1, 3))])
    lhs = [res.classification, res.value_group.to_json(), res.value_group.index_over_integers()]
    rhs = ["Type1", expected.to_json(), 9]
    agree = lhs[0] == rhs[0] and res.value_group == expected and lhs[2] == rhs[2]
    return [_row({"a": "x", "b": "y", "p": 3, "residue": "F_4(3)"}, lhs, rhs, agree)]


def mixedex_descriptors(p=3):
    """V_1 with residue Q (no mu_p anywhere) and V_2 with residue Q(mu_p), rank 2."""
    return {
        "V1": ValuedFieldDescriptor("Q", 2, p, [False, False]),
        "V2": ValuedFieldDescriptor("Q(mu_p)", 2, p, [True, False]),
    }


def suite_mixedex(p=3):
    expected = {
        "V1": ("Q(p)", LexValueGroup(2, p, 0)),
        "V2": ("Q(mu_p)(p)", LexValueGroup(2, p, 1)),
    }
    rows = []
    for name, desc in mixedex_descriptors(p).items():
        label, vg = predict_Fp_extension(desc)
        label = label.replace(f"({p})", "(p)")
        exp_label, exp_vg = expected[name]
        rows.append(_row({"descriptor": name, "p": p}, [label, vg.to_json()], [exp_label, exp_vg.to_json()],
                         label == exp_label and vg == exp_vg))
    return rows


# --- group oracle


def _lemma19_group(args):
    G, e = args
    return groups.sweep_lemma_1_9([G], [e])


def suite_lemma19(max_order=24, exponents=(2, 3, 4, 5)):
    tasks = [(G, e) for G in groups.builtin_groups(max_order) for e in exponents]
    out = []
    for rows in _map(_lemma19_group, tasks):
        for r in rows:
            inst = {k: r[k] for k in ("group", "e", "P", "Q", "R", "chi")}
            out.append(_row(inst, r["lhs"], r["rhs"], r["agree"]))
    return out


def prop14_groups(max_order=72):
    """Groups of order s*p^k (p in 3,5,7, s | p-1, s < |G|) from the built-ins and Z/p^k x| Z/s."""
    out = []
    for G in groups.builtin_groups(24):
        out.append(G)
    for p in (3, 5, 7):
        for s in range(1, p):
            if (p - 1) % s:
                continue
            for k in (1, 2):
                n = p ** k
                if n * s > max_order:
                    continue
                for u in range(1, n):
                    if math.gcd(u, n) == 1 and pow(u, s, n) == 1:
                        out.append(groups.semidirect_cyclic(n, s, u))
    return out


def _prop14_cases(G):
    for p in (3, 5, 7):
        k, s = groups._p_part(G.order, p)
        if k and (p - 1) % s == 0:
            yield p, s


def suite_prop14():
    rows = []
    for G in prop14_groups():
        for p, s in _prop14_cases(G):
            try:
                rep = groups.verify_prop_1_4(G, p, s)
            except InvalidInstance:
                continue
            vals = [v for key, v in rep.items() if key != "equivalent"]
            rows.append(_row({"group": G.name, "p": p, "s": s}, vals, [vals[0]] * len(vals), rep["equivalent"]))
    return rows


def _matrix_order(M, orders, limit):
    ident = [[int(i == j) % orders[i] for j in range(len(orders))] for i in range(len(orders))]
    P = M
    for d in range(1, limit + 1):
        if [list(r) for r in P] == ident:
            return d
        P = mat_mul(M, P, orders)
    return None


def prop46_modules(max_size=625):
    """Cyclic Z/p^k (p odd, p^k <= max_size) with every unit action, and (Z/p)^2 for
    p in 3, 5 with every invertible action."""
    mods = []
    for e in range(3, max_size + 1):
        f = factorint(e)
        if len(f) != 1 or e % 2 == 0:
            continue
        for u in range(1, e):
            if math.gcd(u, e) == 1:
                mods.append(((e,), ((u,),)))
    for p in (3, 5):
        if p * p > max_size:
            continue
        for a, b, c, d in itertools.product(range(p), repeat=4):
            if (a * d - b * c) % p:
                mods.append(((p, p), ((a, b), (c, d))))
    return mods


def _prop46_block(args):
    s, m, mods = args
    o = s // m
    rows = []
    for orders, M in mods:
        ao = _matrix_order(M, orders, o)
        if ao is None or o % ao:
            continue
        e = max(orders)
        A = FiniteModule(orders, [list(r) for r in M], ao)
        for g in range(1, e):
            if math.gcd(g, e) == 1 and pow(g, s, e) == 1:
                w = induce_and_project(A, s, m, UnitCharacter(e, s, g))
                inst = {"s": s, "m": m, "orders": list(orders), "action": [list(r) for r in M], "chi": g}
                rows.append(_row(inst, w.order_B_chi, w.order_A_chi, w.bijective))
    return rows


def suite_prop46(max_s=12, max_size=625):
    mods = prop46_modules(max_size)
    tasks = [(s, m, mods) for s in range(1, max_s + 1) for m in range(1, s + 1) if s % m == 0]
    return [r for rows in _map(_prop46_block, tasks) for r in rows]


def cohom_oracle_instances(max_group=12, max_module=125):
    """(N, a, u): Z/N acting on Z/a through u, one u per orbit of u -> u^t, t in (Z/N)*.

    Relabelling the generator of Z/N is an isomorphism of the pair (group, module),
    so the orbit representatives cover every instance up to isomorphism.
    """
    for N in range(1, max_group + 1):
        units_N = [t for t in range(1, N + 1) if math.gcd(t, N) == 1]
        for a in range(2, max_module + 1):
            seen = set()
            for u in range(1, a):
                if math.gcd(u, a) != 1 or pow(u, N, a) != 1 % a or u in seen:
                    continue
                seen.update(pow(u, t, a) for t in units_N)
                yield N, a, u


def _cohom_oracle(t):
    N, a, u = t
    G = groups.cyclic(N)
    act = CyclicGroupAction.build(N, (a,), u)
    A = groups.GroupModule.from_generator(G, (a,), 1 % N, [[u]])
    rows = []
    for i in (1, 2):
        lhs = elementary_divisors(h_i(act, i).invariants)
        rhs = elementary_divisors(groups.brute_cohomology(A, i).invariants)
        rows.append(_row({"N": N, "module": a, "action": u, "degree": i}, lhs, rhs))
    return rows


def suite_cohom_oracle(max_group=12, max_module=125):
    return [r for rows in _map(_cohom_oracle, cohom_oracle_instances(max_group, max_module)) for r in rows]


SUITES = {
    "lemma110": suite_lemma110,
    "remark113": suite_remark113,
    "lemma111": suite_lemma111,
    "cor112": suite_cor112,
    "cor25": suite_cor25,
    "idempotents": suite_idempotents,
    "relabel": suite_relabel,
    "ex42": suite_ex42,
    "mixedex": suite_mixedex,
    "lemma19": suite_lemma19,
    "prop46": suite_prop46,
    "cohom_oracle": suite_cohom_oracle,
    "prop14": suite_prop14,
}


def run_suite(name):
    """Run a named suite; returns {suite, instances, failures, agree_fraction, seconds, rows}."""
    if name not in SUITES:
        raise KeyError(name)
    t0 = time.perf_counter()
    rows = SUITES[name]()
    dt = time.perf_counter() - t0
    failures = sum(1 for r in rows if not r["agree"])
    return {
        "suite": name,
        "instances": len(rows),
        "failures": failures,
        "agree_fraction": 1.0 if not rows else (len(rows) - failures) / len(rows),
        "seconds": dt,
        "rows": rows,
    }
