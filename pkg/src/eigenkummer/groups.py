"""Finite groups from multiplication tables, exhaustive checks of the group-theoretic
lemmas, and cohomology computed from explicit cochains."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product

import numpy as np

from . import modp
from .errors import BadOrder, InvalidInstance, TooLarge


class FiniteGroup:
    """Group on 0..n-1 given by its Cayley table; element 0 is the identity."""

    def __init__(self, table, labels=None, name="G", check=True):
        self.table = [list(r) for r in table]
        self.order = len(self.table)
        self.labels = list(labels) if labels is not None else list(range(self.order))
        self.name = name
        n = self.order
        if check:
            if any(self.table[0][x] != x or self.table[x][0] != x for x in range(n)):
                raise InvalidInstance("element 0 is not the identity")
            for row in self.table:
                if sorted(row) != list(range(n)):
                    raise InvalidInstance("table is not a Latin square")
            t = self.table
            for a in range(n):
                ta = t[a]
                for b in range(n):
                    tab = t[ta[b]]
                    tb = t[b]
                    for c in range(n):
                        if tab[c] != ta[tb[c]]:
                            raise InvalidInstance("table is not associative")
        self.inv = [row.index(0) for row in self.table]

    def mul(self, a, b):
        return self.table[a][b]

    def conj(self, g, x):
        """g x g^{-1}."""
        return self.table[self.table[g][x]][self.inv[g]]

    def power(self, a, k):
        k %= self.element_order(a)
        r = 0
        for _ in range(k):
            r = self.table[r][a]
        return r

    @cached_property
    def orders(self):
        out = []
        for a in range(self.order):
            k, x = 1, a
            while x != 0:
                x = self.table[x][a]
                k += 1
            out.append(k)
        return out

    def element_order(self, a):
        return self.orders[a]

    def closure(self, gens):
        elems = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(elems)

    @cached_property
    def subgroups(self):
        """All subgroups, as frozensets, sorted by order then content."""
        cyclic = {self.closure([a]) for a in range(self.order)}
        subs = set(cyclic)
        layer = set(cyclic)
        while layer:
            new = set()
            for H in layer:
                for C in cyclic:
                    if not C <= H:
                        J = self.closure(list(H | C))
                        if J not in subs:
                            new.add(J)
            subs |= new
            layer = new
        return sorted(subs, key=lambda H: (len(H), sorted(H)))

    def is_subgroup(self, S):
        S = set(S)
        return 0 in S and all(self.table[a][self.inv[b]] in S for a in S for b in S)

    def is_normal(self, H):
        return all(self.conj(g, h) in H for g in range(self.order) for h in H)

    @cached_property
    def normal_subgroups(self):
        return [H for H in self.subgroups if self.is_normal(H)]

    def generators_of(self, H):
        """A small generating set of the subgroup H (greedy)."""
        gens = []
        cur = frozenset({0})
        for x in sorted(H, key=lambda a: -self.orders[a]):
            if x not in cur:
                gens.append(x)
                cur = self.closure(gens)
                if len(cur) == len(H):
                    break
        return gens

    @cached_property
    def generators(self):
        return self.generators_of(frozenset(range(self.order)))

    def is_abelian_set(self, S):
        return all(self.table[a][b] == self.table[b][a] for a in S for b in S)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


def _from_elements(elems, mul, name, identity):
    elems = list(elems)
    elems.remove(identity)
    elems.insert(0, identity)
    index = {e: i for i, e in enumerate(elems)}
    table = [[index[mul(a, b)] for b in elems] for a in elems]
    return FiniteGroup(table, labels=elems, name=name)


def cyclic(n):
    return _from_elements(range(n), lambda a, b: (a + b) % n, f"Z{n}", 0)


def dihedral(n):
    """Dihedral group of order 2n: (k, e) = r^k s^e."""
    elems = [(k, e) for e in range(2) for k in range(n)]

    def mul(x, y):
        return ((x[0] + (-1) ** x[1] * y[0]) % n, (x[1] + y[1]) % 2)

    return _from_elements(elems, mul, f"D{2 * n}", (0, 0))


def dicyclic(m):
    """Dicyclic group of order 4m: a^k b^e with a^(2m) = 1, b^2 = a^m, b a b^-1 = a^-1."""
    elems = [(k, e) for e in range(2) for k in range(2 * m)]

    def mul(x, y):
        k, e = x
        k2, e2 = y
        if e == 0:
            return ((k + k2) % (2 * m), e2)
        if e2 == 0:
            return ((k - k2) % (2 * m), 1)
        return ((k - k2 + m) % (2 * m), 0)

    return _from_elements(elems, mul, "Q8" if m == 2 else f"Dic{m}", (0, 0))


def from_permutations(gens, name):
    deg = len(gens[0])
    ident = tuple(range(deg))
    elems = {ident}
    frontier = [ident]

    def compose(s, t):
        return tuple(s[t[i]] for i in range(deg))

    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return _from_elements(sorted(elems), compose, name, ident)


def symmetric(k):
    if k > 4:
        raise TooLarge("built-in symmetric groups stop at S4")
    if k == 1:
        return cyclic(1)
    gens = [tuple([1, 0] + list(range(2, k))), tuple(list(range(1, k)) + [0])]
    return from_permutations(gens, f"S{k}")


def alternating4():
    return from_permutations([(1, 2, 0, 3), (0, 2, 3, 1)], "A4")


def heisenberg(p=3):
    """Upper unitriangular 3x3 matrices over F_p, as (a, b, c)."""
    elems = list(product(range(p), repeat=3))

    def mul(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

    return _from_elements(elems, mul, f"Heis{p ** 3}", (0, 0, 0))


def direct_product(G, H):
    elems = [(a, b) for a in range(G.order) for b in range(H.order)]

    def mul(x, y):
        return (G.table[x[0]][y[0]], H.table[x[1]][y[1]])

    return _from_elements(elems, mul, f"{G.name}x{H.name}", (0, 0))


def semidirect_cyclic(n, s, u):
    """Z/n x| Z/s where the generator of Z/s acts by x -> u x."""
    if pow(u, s, n) != 1 % n:
        raise InvalidInstance(f"{u}^{s} is not 1 mod {n}")
    elems = [(a, b) for b in range(s) for a in range(n)]

    def mul(x, y):
        return ((x[0] + pow(u, x[1], n) * y[0]) % n, (x[1] + y[1]) % s)

    return _from_elements(elems, mul, f"Z{n}:Z{s}[{u}]", (0, 0))


def builtin_groups(max_order=24):
    """Deterministic list of built-in groups with order <= max_order."""
    out = [cyclic(n) for n in range(1, max_order + 1)]
    out += [dihedral(n) for n in range(3, max_order // 2 + 1)]
    out += [dicyclic(m) for m in range(2, max_order // 4 + 1)]
    c = {n: cyclic(n) for n in range(2, 13)}
    extra = [
        (4, lambda: direct_product(c[2], c[2])),
        (8, lambda: direct_product(c[2], c[4])),
        (8, lambda: direct_product(direct_product(c[2], c[2]), c[2])),
        (9, lambda: direct_product(c[3], c[3])),
        (12, lambda: direct_product(c[2], c[6])),
        (12, alternating4),
        (16, lambda: direct_product(c[4], c[4])),
        (16, lambda: direct_product(c[2], c[8])),
        (16, lambda: direct_product(dihedral(4), c[2])),
        (18, lambda: direct_product(dihedral(3), c[3])),
        (18, lambda: direct_product(c[3], c[6])),
        (20, lambda: semidirect_cyclic(5, 4, 2)),
        (21, lambda: semidirect_cyclic(7, 3, 2)),
        (24, lambda: symmetric(4)),
        (24, lambda: direct_product(alternating4(), c[2])),
        (24, lambda: direct_product(dihedral(3), c[4])),
        (24, lambda: semidirect_cyclic(3, 8, 2)),
        (27, lambda: heisenberg(3)),
    ]
    out += [f() for order, f in extra if order <= max_order]
    return out


def homs_to_cyclic(G, H, e):
    """All homomorphisms from the subgroup H of G to Z/e, as dicts element -> value."""
    gens = G.generators_of(H)
    out = []
    for vals in product(range(e), repeat=len(gens)):
        f = {0: 0}
        frontier = [0]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, v in zip(gens, vals):
                    y = G.table[x][g]
                    w = (f[x] + v) % e
                    if y in f:
                        if f[y] != w:
                            ok = False
                            break
                    else:
                        f[y] = w
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if ok:
            # Right-multiplication consistency is not enough; check the hom law.
            if all(f[G.table[a][b]] == (f[a] + f[b]) % e for a in H for b in H):
                out.append(f)
    return out


def unit_characters(G, e):
    """Homomorphisms G -> (Z/e)*, as lists of values indexed by element."""
    units = [u for u in range(1, e) if math.gcd(u, e) == 1]
    gens = G.generators
    out = []
    for vals in product(units, repeat=len(gens)):
        f = {0: 1 % e}
        frontier = [0]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, v in zip(gens, vals):
                    y = G.table[x][g]
                    w = f[x] * v % e
                    if y in f:
                        if f[y] != w:
                            ok = False
                            break
                    else:
                        f[y] = w
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if ok and all(f[G.table[a][b]] == f[a] * f[b] % e for a in range(G.order) for b in range(G.order)):
            out.append([f[x] for x in range(G.order)])
    return out


@dataclass
class LemmaInstance:
    G: FiniteGroup
    P: frozenset
    Q: frozenset
    R: frozenset
    e: int
    chi: list

    def validate(self):
        G = self.G
        if not (self.P <= self.R <= self.Q):
            raise InvalidInstance("need P <= R <= Q")
        for S in (self.P, self.Q, self.R):
            if not G.is_subgroup(S):
                raise InvalidInstance("not a subgroup")
        if not (G.is_normal(self.P) and G.is_normal(self.Q)):
            raise InvalidInstance("P and Q must be normal in G")
        for a in self.Q:
            for b in self.Q:
                comm = G.table[G.table[a][b]][G.inv[G.table[b][a]]]
                if comm not in self.P:
                    raise InvalidInstance("Q/P is not abelian")
            if G.power(a, self.e) not in self.P:
                raise InvalidInstance("exponent of Q/P does not divide e")
        for a in range(G.order):
            for b in range(G.order):
                if self.chi[G.table[a][b]] != self.chi[a] * self.chi[b] % self.e:
                    raise InvalidInstance("chi is not a homomorphism")


def verify_lemma_1_9(inst: LemmaInstance, homs=None):
    """Compare the eigen-containment of X(Q/R) with normality plus the action on Q/R.

    Returns (lhs, rhs, agree).  `homs` may pass the precomputed Hom(Q, Z/e).
    """
    inst.validate()
    G, Q, R, e, chi = inst.G, inst.Q, inst.R, inst.e, inst.chi
    if homs is None:
        homs = homs_to_cyclic(G, Q, e)
    psis = [f for f in homs if all(f[r] == 0 for r in R)]
    lhs = True
    for f in psis:
        for g in range(G.order):
            ginv = G.inv[g]
            c = chi[g]
            for q in Q:
                if f[G.conj(ginv, q)] != c * f[q] % e:
                    lhs = False
                    break
            if not lhs:
                break
        if not lhs:
            break
    rhs = G.is_normal(R)
    if rhs:
        for g in range(G.order):
            k = pow(chi[g], -1, e)
            for q in Q:
                a = G.conj(g, q)
                b = G.power(q, k)
                if G.table[a][G.inv[b]] not in R:
                    rhs = False
                    break
            if not rhs:
                break
    return lhs, rhs, lhs == rhs


def lemma_1_9_instances(G, e):
    """All valid instances for one group and exponent bound."""
    normals = G.normal_subgroups
    chis = unit_characters(G, e)
    subs = G.subgroups
    for Q in normals:
        for P in normals:
            if not P <= Q:
                continue
            ok = all(G.power(a, e) in P for a in Q) and all(
                G.table[G.table[a][b]][G.inv[G.table[b][a]]] in P for a in Q for b in Q
            )
            if not ok:
                continue
            Rs = [R for R in subs if P <= R <= Q]
            for R in Rs:
                for chi in chis:
                    yield LemmaInstance(G, P, Q, R, e, chi)


def sweep_lemma_1_9(groups, exponents=(2, 3, 4, 5)):
    rows = []
    for G in groups:
        for e in exponents:
            cache = {}
            for inst in lemma_1_9_instances(G, e):
                if inst.Q not in cache:
                    cache[inst.Q] = homs_to_cyclic(G, inst.Q, e)
                lhs, rhs, agree = verify_lemma_1_9(inst, cache[inst.Q])
                rows.append({
                    "group": G.name, "e": e, "P": len(inst.P), "Q": len(inst.Q), "R": len(inst.R),
                    "chi": inst.chi[:1] + [inst.chi[g] for g in G.generators],
                    "lhs": lhs, "rhs": rhs, "agree": agree,
                })
    return rows


def _p_part(n, p):
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def verify_prop_1_4(G, p, s):
    """Normal subgroup of order s  <=>  G = P x H  (<=> trivial action on abelian P)."""
    k, rest = _p_part(G.order, p)
    if rest != s or (p - 1) % s:
        raise BadOrder(f"|G|={G.order} is not s*p^k with s | p-1")
    P = frozenset(x for x in range(G.order) if _p_part(G.orders[x], p)[1] == 1)
    if not G.is_subgroup(P) or len(P) != p ** k:
        raise InvalidInstance("Sylow p-subgroup is not normal")
    # G/P must be cyclic; g is any element whose image generates it
    g = next((x for x in range(G.order) if len(G.closure(list(P) + [x])) == G.order), None)
    if g is None:
        raise InvalidInstance("G/P is not cyclic")
    order_s = [H for H in G.subgroups if len(H) == s]
    normal_s = any(G.is_normal(H) for H in order_s)
    direct = False
    for H in order_s:
        if len(P & H) != 1:
            continue
        # (x, h) -> x h must be a bijective homomorphism P x H -> G
        img = {G.table[x][h] for x in P for h in H}
        if len(img) != G.order:
            continue
        if all(G.table[x][h] == G.table[h][x] for x in P for h in H):
            direct = True
            break
    report = {"normal_subgroup_of_order_s": normal_s, "direct_product": direct}
    if G.is_abelian_set(P):
        report["trivial_action_on_P"] = all(G.conj(g, x) == x for x in P)
    vals = list(report.values())
    report["equivalent"] = all(v == vals[0] for v in vals)
    return report


def verify_prop_1_1_analog(G, U):
    """Chain U = U_0 < U_1 < ... < G with each step normal of index p."""
    n = G.order
    primes = [q for q in range(2, n + 1) if n % q == 0 and all(q % r for r in range(2, q))]
    if len(primes) > 1:
        raise BadOrder("G is not a p-group")
    U = frozenset(U)
    if not G.is_subgroup(U):
        raise InvalidInstance("U is not a subgroup")
    if n == 1:
        return [U]
    p = primes[0]
    chain = [U]
    cur = U
    while len(cur) < n:
        norm = [g for g in range(n) if all(G.conj(g, u) in cur for u in cur)]
        cand = sorted(x for x in norm if x not in cur)
        if not cand:
            raise AssertionError("normalizer does not grow; not a p-group?")
        x = cand[0]
        # reduce x to an element of order p modulo cur
        while G.power(x, p) not in cur:
            x = G.power(x, p)
        nxt = G.closure(list(cur) + [x])
        chain.append(nxt)
        cur = nxt
    for a, b in zip(chain, chain[1:]):
        if len(b) != p * len(a) or not all(G.conj(g, u) in a for g in b for u in a):
            raise AssertionError("chain step is not normal of index p")
    return chain


class GroupModule:
    """Finite abelian group Z/n_1 + ... + Z/n_r with G acting by matrices."""

    def __init__(self, G, orders, mats, check=True):
        self.G = G
        self.orders = tuple(orders)
        self.mats = [np.array(M, dtype=np.int64) for M in mats]
        if check:
            mod = np.array(self.orders, dtype=np.int64)[:, None]
            r = len(self.orders)
            I = np.eye(r, dtype=np.int64) % mod if r else np.zeros((0, 0), dtype=np.int64)
            if r and not np.array_equal(self.mats[0] % mod, I):
                raise InvalidInstance("identity must act trivially")
            for a in range(G.order):
                for b in range(G.order):
                    lhs = self.mats[G.table[a][b]] % mod
                    rhs = (self.mats[a] @ self.mats[b]) % mod
                    if not np.array_equal(lhs, rhs):
                        raise InvalidInstance("matrices do not define an action")

    @property
    def size(self):
        return math.prod(self.orders)

    @classmethod
    def from_generator(cls, G, orders, gen, matrix):
        """Module for a cyclic group G generated by `gen` acting by `matrix`."""
        orders = tuple(orders)
        r = len(orders)
        mod = np.array(orders, dtype=np.int64)[:, None] if r else None
        M = np.array(matrix, dtype=np.int64).reshape(r, r)
        mats = [None] * G.order
        x, P = 0, np.eye(r, dtype=np.int64)
        for _ in range(G.orders[gen]):
            mats[x] = P % mod if r else P
            x = G.table[x][gen]
            P = (M @ P) % mod if r else P
        if any(m is None for m in mats):
            raise InvalidInstance("gen does not generate G")
        return cls(G, orders, mats)

    @classmethod
    def trivial(cls, G, orders):
        r = len(orders)
        return cls(G, orders, [np.eye(r, dtype=np.int64)] * G.order, check=False)

    def restrict(self, H):
        """Restriction to a subgroup H given as a list of elements of G; returns (subgroup, module)."""
        H = sorted(H)
        idx = {h: i for i, h in enumerate(H)}
        table = [[idx[self.G.table[a][b]] for b in H] for a in H]
        K = FiniteGroup(table, labels=H, name=f"sub{len(H)}", check=False)
        return K, GroupModule(K, self.orders, [self.mats[h] for h in H], check=False)


def _primary_parts(module, with_coords=False):
    """Split into primary components: yields (prime, K, exponents, mats over Z/prime^K).

    With `with_coords` the kept coordinate indices are yielded last.
    """
    from sympy import factorint

    primes = sorted({q for n in module.orders for q in factorint(n)})
    for q in primes:
        exps = [_p_part(n, q)[0] for n in module.orders]
        keep = [i for i, k in enumerate(exps) if k > 0]
        K = max(exps[i] for i in keep)
        ks = [exps[i] for i in keep]
        mats = []
        for M in module.mats:
            sub = M[np.ix_(keep, keep)] % (q ** K)
            mats.append(sub)
        if with_coords:
            yield q, K, ks, mats, keep
        else:
            yield q, K, ks, mats


def _tuples(G, i):
    nonid = list(range(1, G.order))
    return list(product(nonid, repeat=i))


_COBOUNDARY_SHAPES = {}


def _coboundary_shape(G, i):
    """Index pattern of d on normalized i-cochains, independent of the module.

    Returns (n_src, n_dst, act_rows, act_cols, act_g, id_rows, id_cols, id_signs).
    """
    key = (id(G), i)
    hit = _COBOUNDARY_SHAPES.get(key)
    if hit is not None and hit[0] is G:
        return hit[1]
    src = _tuples(G, i)
    dst = _tuples(G, i + 1)
    sidx = {t: j for j, t in enumerate(src)}
    act_r, act_c, act_g = [], [], []
    id_r, id_c, id_s = [], [], []
    for row, tau in enumerate(dst):
        # g1 . f(g2..)
        c = sidx.get(tau[1:])
        if c is not None:
            act_r.append(row)
            act_c.append(c)
            act_g.append(tau[0])
        for j in range(i):
            merged = tau[:j] + (G.table[tau[j]][tau[j + 1]],) + tau[j + 2:]
            c = sidx.get(merged)
            if c is not None:
                id_r.append(row)
                id_c.append(c)
                id_s.append((-1) ** (j + 1))
        c = sidx.get(tau[:i])
        if c is not None:
            id_r.append(row)
            id_c.append(c)
            id_s.append((-1) ** (i + 1))
    arr = lambda x: np.array(x, dtype=np.int64)
    shape = (len(src), len(dst), arr(act_r), arr(act_c), arr(act_g), arr(id_r), arr(id_c), arr(id_s))
    if len(_COBOUNDARY_SHAPES) > 64:
        _COBOUNDARY_SHAPES.clear()
    _COBOUNDARY_SHAPES[key] = (G, shape)
    return shape


def _coboundary(G, mats, ks, p, K, i):
    """Matrix of d: C^i -> C^{i+1} on normalized cochains over Z/p^K.

    The presentation relations p^{k_j} e_j are added by the caller.
    """
    r = len(ks)
    q = p ** K
    n_src, n_dst, act_r, act_c, act_g, id_r, id_c, id_s = _coboundary_shape(G, i)
    D = np.zeros((n_dst * r, n_src * r), dtype=np.int64)
    stacked = np.array([np.asarray(M, dtype=np.int64) for M in mats]).reshape(len(mats), r, r)
    for a in range(r):
        for b in range(r):
            np.add.at(D, (act_r * r + a, act_c * r + b), stacked[act_g, a, b])
        np.add.at(D, (id_r * r + a, id_c * r + a), id_s)
    return D % q


def _relations(ks, K, count, p):
    """Columns p^{k_j} e_j for every cochain slot, dropping the zero ones."""
    r = len(ks)
    cols = []
    for slot in range(count):
        for j, k in enumerate(ks):
            if k < K:
                v = np.zeros(count * r, dtype=np.int64)
                v[slot * r + j] = p ** k
                cols.append(v)
    if not cols:
        return np.zeros((count * r, 0), dtype=np.int64)
    return np.stack(cols, axis=1)


MAX_COCHAIN_ROWS = 12000


def _cocycles_and_boundaries(G, mats, ks, p, K, i):
    r = len(ks)
    n_i = (G.order - 1) ** i
    n_next = (G.order - 1) ** (i + 1)
    if n_next * r > MAX_COCHAIN_ROWS:
        raise TooLarge(f"cochain complex too large ({n_next * r} rows)")
    d = _coboundary(G, mats, ks, p, K, i)
    rel_next = _relations(ks, K, n_next, p)
    if rel_next.shape[1]:
        ker = modp.kernel(np.concatenate([d, rel_next], axis=1), p, K)[: n_i * r, :]
    else:
        ker = modp.kernel(d, p, K)
    if i == 0:
        bnd = np.zeros((r, 0), dtype=np.int64)
    else:
        bnd = _coboundary(G, mats, ks, p, K, i - 1)
    rel_i = _relations(ks, K, n_i, p)
    bnd = np.concatenate([bnd, rel_i], axis=1)
    return ker, bnd


def cochain_cohomology_primary(G, mats, ks, p, K, i):
    ker, bnd = _cocycles_and_boundaries(G, mats, ks, p, K, i)
    return modp.quotient_invariants(ker, bnd, p, K)


@dataclass
class CohomologyGroup:
    degree: int
    invariants: list

    @property
    def order(self):
        return math.prod(self.invariants)


def _enumerate_cohomology(G, module, i, limit=200000):
    """H^i by listing every normalized cochain.  Only for tiny cases."""
    orders = module.orders
    r = len(orders)
    src = _tuples(G, i)
    size = math.prod(orders) ** len(src)
    if size > limit:
        raise TooLarge(f"{size} cochains exceed the enumeration limit")
    mats = [[[int(x) for x in row] for row in M] for M in module.mats]

    def act(g, a):
        return tuple(sum(mats[g][s][t] * a[t] for t in range(r)) % orders[s] for s in range(r))

    def add(a, b, sign=1):
        return tuple((x + sign * y) % n for x, y, n in zip(a, b, orders))

    zero = (0,) * r
    values = list(product(*(range(n) for n in orders)))

    def d(f, deg):
        out = {}
        idx = {t: j for j, t in enumerate(_tuples(G, deg))}
        for tau in _tuples(G, deg + 1):
            acc = act(tau[0], f[idx[tau[1:]]]) if tau[1:] in idx else zero
            for j in range(deg):
                merged = tau[:j] + (G.table[tau[j]][tau[j + 1]],) + tau[j + 2:]
                if merged in idx:
                    acc = add(acc, f[idx[merged]], (-1) ** (j + 1))
            if tau[:deg] in idx:
                acc = add(acc, f[idx[tau[:deg]]], (-1) ** (deg + 1))
            out[tau] = acc
        return out

    cocycles = []
    for f in product(values, repeat=len(src)):
        if all(v == zero for v in d(f, i).values()):
            cocycles.append(f)
    prev = _tuples(G, i - 1) if i > 0 else None
    bset = set()
    if i == 0:
        bset.add(tuple(zero for _ in src))
    else:
        for f in product(values, repeat=len(prev)):
            img = d(f, i - 1)
            bset.add(tuple(img[t] for t in src))
    nB = len(bset)
    nZ = len(cocycles)
    # invariants from the counts of elements killed by q^j, prime by prime
    from sympy import factorint

    order = nZ // nB
    invs = []
    for q, m in factorint(order).items():
        j = 1
        counts = []
        while True:
            killed = 0
            for f in cocycles:
                g = tuple(tuple(x * q ** j % n for x, n in zip(v, orders)) for v in f)
                if g in bset:
                    killed += 1
            c = killed // nB
            counts.append(c)
            if c == q ** m:
                break
            j += 1
        # number of cyclic factors of order >= q^j is log_q(c_j / c_{j-1})
        ge = []
        prev_count = 1
        for c in counts:
            ge.append(round(math.log(c // prev_count, q)))
            prev_count = c
        for j in range(len(ge)):
            nxt = ge[j + 1] if j + 1 < len(ge) else 0
            invs += [q ** (j + 1)] * (ge[j] - nxt)
    return sorted(invs, reverse=True)


def brute_cohomology(module: GroupModule, i, method="linear"):
    """H^i(G, A) from normalized cochains.

    `linear` solves the cocycle equations over each Z/p^K; `enumerate` lists all
    cochains and is only feasible for tiny instances.
    """
    G = module.G
    if i not in (0, 1, 2):
        raise ValueError("degree must be 0, 1 or 2")
    if module.size > 512:
        raise TooLarge("module larger than 512 elements")
    if G.order > 24:
        raise TooLarge("group larger than 24 elements")
    if module.size == 1:
        return CohomologyGroup(i, [])
    if method == "enumerate":
        return CohomologyGroup(i, _enumerate_cohomology(G, module, i))
    invs = []
    for p, K, ks, mats in _primary_parts(module):
        invs += cochain_cohomology_primary(G, mats, ks, p, K, i)
    return CohomologyGroup(i, sorted(invs, reverse=True))


def conjugation_action_on_cochains(G, H, mats, r, g, i):
    """Matrix of f -> g.f(g^-1 h_1 g, ..., g^-1 h_i g) on normalized cochains of H.

    H is a sorted list of elements of G (its element j is H[j]); mats are the
    module matrices indexed by elements of G.
    """
    idx = {h: j for j, h in enumerate(H)}
    # tuples over H's local indices, identity local index 0
    nonid = list(range(1, len(H)))
    tuples = list(product(nonid, repeat=i))
    tidx = {t: j for j, t in enumerate(tuples)}
    gi = G.inv[g]
    A = np.zeros((len(tuples) * r, len(tuples) * r), dtype=np.int64)
    for row, t in enumerate(tuples):
        src = tuple(idx[G.conj(gi, H[x])] for x in t)
        c = tidx[src]
        A[row * r:(row + 1) * r, c * r:(c + 1) * r] = mats[g]
    return A


def eigen_class_invariants(A, ker, bnd, gamma, p, K):
    """Invariants of {[z] in Z/B : A z = gamma z mod B} for cocycle and coboundary columns."""
    q = p ** K
    diff = ((A - gamma * np.eye(A.shape[0], dtype=np.int64)) @ ker) % q
    kc = modp.kernel(np.concatenate([diff, bnd], axis=1), p, K)[: ker.shape[1], :]
    sub = (ker @ kc) % q
    return modp.quotient_invariants(sub, bnd, p, K)


def verify_lemma_2_2_finite(module: GroupModule, p):
    """H^i(G, A) = H^i(P0, A)^{G/P0} for i = 1, 2, with P0 the normal Sylow p-subgroup."""
    G = module.G
    k, rest = _p_part(G.order, p)
    if math.gcd(rest, p) != 1:
        raise InvalidInstance("index of the Sylow subgroup must be prime to p")
    for n in module.orders:
        if _p_part(n, p)[1] != 1:
            raise InvalidInstance("module must be p-primary")
    P0 = sorted(x for x in range(G.order) if _p_part(G.orders[x], p)[1] == 1)
    if len(P0) != p ** k or not G.is_subgroup(P0) or not G.is_normal(frozenset(P0)):
        raise InvalidInstance("Sylow p-subgroup is not normal")
    cosets = {frozenset(G.table[g][x] for x in P0) for g in range(G.order)}
    quot_order = len(cosets)
    g_lift = None
    for g in range(G.order):
        j, x = 1, g
        while x not in P0:
            x = G.table[x][g]
            j += 1
        if j == quot_order:
            g_lift = g
            break
    if g_lift is None:
        raise InvalidInstance("G/P0 is not cyclic")
    report = {}
    K_grp, resmod = module.restrict(P0)
    for i in (1, 2):
        full = brute_cohomology(module, i)
        fixed_invs = []
        sub_invs = []
        for q, K, ks, mats_sub in _primary_parts(resmod):
            ker, bnd = _cocycles_and_boundaries(K_grp, mats_sub, ks, q, K, i)
            sub_invs += modp.quotient_invariants(ker, bnd, q, K)
            keep = [j for j, n in enumerate(module.orders) if n > 1]
            gmats = [M[np.ix_(keep, keep)] % q ** K for M in module.mats]
            A = conjugation_action_on_cochains(G, P0, gmats, len(ks), g_lift, i)
            fixed_invs += eigen_class_invariants(A, ker, bnd, 1, q, K)
        fixed_invs = sorted(fixed_invs, reverse=True)
        report[i] = {
            "H_G": full.invariants,
            "H_P0": sorted(sub_invs, reverse=True),
            "H_P0_fixed": fixed_invs,
            "agree": full.invariants == fixed_invs,
        }
    return report
