"""Cohomology of a finite cyclic group acting on a finite abelian group, computed
from the norm / difference presentation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import groups, modp
from .core import FiniteModule, UnitCharacter
from .errors import CharacterNotTrivialOnK, OutOfRange
from .lattice import (
    image_gens,
    kernel_gens,
    mat_add,
    mat_identity,
    mat_mul,
    mat_sub_scalar,
    quotient_invariants,
)


@dataclass
class CyclicGroupAction:
    """Cyclic group of order N acting on a finite module through its generator."""

    N: int
    module: FiniteModule

    @classmethod
    def build(cls, N, orders, action):
        """`action` is a matrix, or a single integer for a cyclic module."""
        orders = tuple(orders)
        if isinstance(action, int):
            action = [[action if j == i else 0 for j in range(len(orders))] for i in range(len(orders))]
        return cls(N, FiniteModule(orders, action, N))

    @property
    def orders(self):
        return self.module.orders

    def norm_matrix(self):
        """1 + T + ... + T^(N-1), by binary doubling of the geometric sum."""
        orders = self.orders
        r = len(orders)
        T = self.module.action
        S = tuple(tuple(0 for _ in range(r)) for _ in range(r))
        Tm = tuple(tuple(x % orders[i] for x in row) for i, row in enumerate(mat_identity(r)))
        # invariant: S = sum_{j<m} T^j and Tm = T^m
        for bit in bin(self.N)[2:]:
            S = mat_add(S, mat_mul(Tm, S, orders), orders)
            Tm = mat_mul(Tm, Tm, orders)
            if bit == "1":
                S = mat_add(S, Tm, orders)
                Tm = mat_mul(T, Tm, orders)
        return S


@dataclass
class CohomologyResult:
    degree: int
    invariants: list

    @property
    def order(self):
        return math.prod(self.invariants)

    def to_json(self):
        return {"degree": self.degree, "invariants": list(self.invariants), "order": self.order}


def h_i(act: CyclicGroupAction, i):
    """H^0 = A^G, H^1 = ker(Norm)/im(g-1), H^2 = A^G/im(Norm)."""
    if i not in (0, 1, 2):
        raise ValueError("degree must be 0, 1 or 2")
    orders = act.orders
    if not orders:
        return CohomologyResult(i, [])
    diff = mat_sub_scalar(act.module.action, 1, orders)
    fixed = kernel_gens(diff, orders, orders)
    if i == 0:
        return CohomologyResult(i, quotient_invariants(fixed, [], orders))
    norm = act.norm_matrix()
    if i == 1:
        big = kernel_gens(norm, orders, orders)
        small = image_gens(diff, orders, orders)
    else:
        big = fixed
        small = image_gens(norm, orders, orders)
    return CohomologyResult(i, quotient_invariants(big, small, orders))


def herbrand_check(act: CyclicGroupAction):
    """Returns (|H^1| == |H^2|, |H^1|, |H^2|)."""
    a = h_i(act, 1).order
    b = h_i(act, 2).order
    return a == b, a, b


def mu_size_formula(p, n, k, c):
    """p^(a-b) with a = min(k, c), b = max(k + c - n, 0)."""
    if not (1 <= k <= n and 1 <= c <= n):
        raise OutOfRange(f"need 1 <= k, c <= n, got k={k}, c={c}, n={n}")
    a = min(k, c)
    b = max(k + c - n, 0)
    return p ** (a - b)


def _mu_action(N, p, k, u):
    return CyclicGroupAction(N, FiniteModule((p ** k,), [[u % p ** k]], N))


def mu_size_direct(p, n, k, c, degree=1):
    """|H^i| of the cyclic group of order p^(n-c) acting on Z/p^k by 1 + p^c.

    1 + p^c has order exactly p^(n-c) mod p^n for odd p, which models the
    Frobenius of M/L when L contains the p^c-th but not the p^(c+1)-th roots of unity.
    """
    if not (1 <= k <= n and 1 <= c <= n):
        raise OutOfRange(f"need 1 <= k, c <= n, got k={k}, c={c}, n={n}")
    N = p ** (n - c)
    return h_i(_mu_action(N, p, k, 1 + p ** c), degree).order


def mu_size_direct_tower(q, p, n, k, degree=1, tower=None):
    """Same count for the actual tower over F_q: G(M/L) acts on mu_{p^k} by q^s.

    A prebuilt `tower` for (q, p, n) may be passed to skip rebuilding it.
    """
    from .tower import build_tower

    t = tower if tower is not None else build_tower(q, p, n)
    if not 1 <= k <= n:
        raise OutOfRange(f"need 1 <= k <= n, got k={k}")
    return h_i(_mu_action(t.deg_ML, p, k, pow(q, t.s, p ** k)), degree).order


def _cochain_data(G, module, K_elems, i):
    """Cocycles, coboundaries and the generator's action on K-cochains, per prime."""
    K_grp, res = module.restrict(K_elems)
    out = []
    res_parts = list(groups._primary_parts(res, with_coords=True))
    for q, K, ks, mats_sub, keep in res_parts:
        ker, bnd = groups._cocycles_and_boundaries(K_grp, mats_sub, ks, q, K, i)
        gmats = [M[np.ix_(keep, keep)] % q ** K for M in module.mats]
        act = groups.conjugation_action_on_cochains(G, K_elems, gmats, len(ks), 1, i)
        out.append((q, K, ker, bnd, act))
    return out


def _same_span(a, b, bnd, q, K):
    """span(a) + B == span(b) + B."""
    return (not modp.quotient_invariants(a, np.concatenate([b, bnd], axis=1), q, K)
            and not modp.quotient_invariants(b, np.concatenate([a, bnd], axis=1), q, K))


def twist_compat(act: CyclicGroupAction, chi: UnitCharacter, d):
    """Compare H^i(K, A_chi) with H^i(K, A)_chi for K generated by g^d, i = 1, 2.

    Cochains come from the explicit complex in `groups`; the map on cocycles is
    f -> j o f with j the identity of the common carrier.  The report lists the
    eigen-orders on both sides for every character psi of G/K.
    """
    N = act.N
    if N % d:
        raise ValueError(f"d={d} does not divide N={N}")
    e = chi.modulus
    if e % act.module.exponent:
        raise ValueError("character values must act on the module")
    if pow(chi.gamma, d, e) != 1 % e:
        raise CharacterNotTrivialOnK(f"chi(g)^{d} = {pow(chi.gamma, d, e)} is not 1 mod {e}")
    G = groups.cyclic(N)
    orders = act.orders
    A = groups.GroupModule.from_generator(G, orders, 1, act.module.action)
    twisted = [[x * chi.gamma for x in row] for row in act.module.action]
    A_chi = groups.GroupModule.from_generator(G, orders, 1, twisted)
    K_elems = sorted(G.closure([d % N]))
    psis = [g for g in range(1, e) if math.gcd(g, e) == 1 and pow(g, d, e) == 1 % e]
    report = {"K_order": len(K_elems), "degrees": {}}
    ok = True
    for i in (1, 2):
        left = _cochain_data(G, A_chi, K_elems, i)
        right = _cochain_data(G, A, K_elems, i)
        same_cocycles = True
        equivariant = True
        eig = {psi: [1, 1] for psi in psis}
        orders_i = [1, 1]
        for (q, K, zl, bl, al), (_, _, zr, br, ar) in zip(left, right):
            qK = q ** K
            # j is the identity on carriers, so j* is a bijection iff the spans agree
            same_cocycles &= _same_span(zl, zr, bl, q, K) and _same_span(bl, br, bl, q, K)
            twisted_action = (chi.gamma * ar) % qK
            diff = ((al - twisted_action) @ zl) % qK
            equivariant &= not modp.quotient_invariants(diff, bl, q, K)
            orders_i[0] *= math.prod(modp.quotient_invariants(zl, bl, q, K))
            orders_i[1] *= math.prod(modp.quotient_invariants(zr, br, q, K))
            for psi in psis:
                lhs = groups.eigen_class_invariants(al, zl, bl, psi % qK, q, K)
                target = psi * pow(chi.gamma, -1, e) % e
                rhs = groups.eigen_class_invariants(ar, zr, br, target % qK, q, K)
                eig[psi][0] *= math.prod(lhs)
                eig[psi][1] *= math.prod(rhs)
        eig_ok = all(a == b for a, b in eig.values())
        report["degrees"][i] = {
            "order_twisted": orders_i[0],
            "order_untwisted": orders_i[1],
            "cocycles_match": bool(same_cocycles),
            "equivariant": bool(equivariant),
            "eigen_orders": {str(k): v for k, v in eig.items()},
            "eigen_match": eig_ok,
        }
        ok &= bool(same_cocycles and equivariant and eig_ok and orders_i[0] == orders_i[1])
    report["isomorphic"] = ok
    return report
