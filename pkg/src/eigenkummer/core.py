"""Arithmetic in Z/p^n, characters of cyclic groups, group-ring idempotents and
eigenmodules of finite modules under a cyclic action."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from sympy import isprime

from .errors import NonSemisimple, NotDivisor
from .lattice import (
    Ambient,
    image_gens,
    kernel_gens,
    mat_add,
    mat_identity,
    mat_mul,
    mat_pow,
    mat_scale,
    mat_sub_scalar,
    matrix_is_endomorphism,
)


def vp(x, p):
    """p-adic valuation of a nonzero integer."""
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def mult_order(a, n):
    """Multiplicative order of a mod n by direct iteration."""
    a %= n
    if math.gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    if n == 1:
        return 1
    k, x = 1, a
    while x != 1:
        x = x * a % n
        k += 1
    return k


@dataclass(frozen=True)
class Modulus:
    p: int
    n: int

    def __post_init__(self):
        if self.p < 3 or not isprime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")

    @property
    def value(self):
        return self.p ** self.n

    @property
    def unit_order(self):
        return (self.p - 1) * self.p ** (self.n - 1)

    def inverse(self, a):
        return pow(a, -1, self.value)

    def primitive_root(self):
        """Least generator of the cyclic group (Z/p^n)*."""
        N = self.value
        order = self.unit_order
        primes = [q for q in range(2, order + 1) if order % q == 0 and isprime(q)]
        for g in range(2, N):
            if g % self.p == 0:
                continue
            if all(pow(g, order // q, N) != 1 for q in primes):
                return g
        raise AssertionError("no primitive root found")


@dataclass(frozen=True)
class UnitCharacter:
    """Character of a cyclic group of order `order` into (Z/modulus)*, stored by the
    image `gamma` of the designated generator."""

    modulus: int
    order: int
    gamma: int

    def __post_init__(self):
        object.__setattr__(self, "gamma", self.gamma % self.modulus)
        if pow(self.gamma, self.order, self.modulus) != 1 % self.modulus:
            raise ValueError(f"gamma={self.gamma} does not satisfy gamma^{self.order} = 1 mod {self.modulus}")

    def __call__(self, j=1):
        return pow(self.gamma, j, self.modulus)

    def inverse(self):
        return UnitCharacter(self.modulus, self.order, pow(self.gamma, -1, self.modulus))

    def __mul__(self, other):
        if self.modulus != other.modulus or self.order != other.order:
            raise ValueError("characters of different groups")
        return UnitCharacter(self.modulus, self.order, self.gamma * other.gamma)

    def restrict(self, m):
        """Restriction to the subgroup generated by h^m."""
        return UnitCharacter(self.modulus, self.order // math.gcd(self.order, m), pow(self.gamma, m, self.modulus))

    @property
    def is_trivial(self):
        return self.gamma == 1 % self.modulus


def enumerate_characters(mod: Modulus, s: int):
    """All characters of a cyclic group of order s into (Z/p^n)*, sorted by gamma."""
    if s < 1 or (mod.p - 1) % s:
        raise NotDivisor(f"s={s} does not divide p-1={mod.p - 1}")
    g = mod.primitive_root()
    h = pow(g, mod.unit_order // s, mod.value)
    gammas = sorted({pow(h, j, mod.value) for j in range(s)})
    return [UnitCharacter(mod.value, s, x) for x in gammas]


@dataclass(frozen=True)
class GroupRingElem:
    """Element of Z/p^n[H] for H cyclic of order s, coefficients on h^0..h^(s-1)."""

    modulus: Modulus
    coefficients: tuple

    def __post_init__(self):
        N = self.modulus.value
        object.__setattr__(self, "coefficients", tuple(c % N for c in self.coefficients))

    @property
    def s(self):
        return len(self.coefficients)

    @classmethod
    def one(cls, mod, s):
        return cls(mod, (1,) + (0,) * (s - 1))

    @classmethod
    def h(cls, mod, s, j=1):
        c = [0] * s
        c[j % s] = 1
        return cls(mod, tuple(c))

    def _check(self, other):
        if self.modulus != other.modulus or self.s != other.s:
            raise ValueError("group-ring elements over different rings")

    def __add__(self, other):
        self._check(other)
        return GroupRingElem(self.modulus, tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other):
        self._check(other)
        return GroupRingElem(self.modulus, tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElem(self.modulus, tuple(other * a for a in self.coefficients))
        self._check(other)
        s = self.s
        out = [0] * s
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[(i + j) % s] += a * b
        return GroupRingElem(self.modulus, tuple(out))

    __rmul__ = __mul__

    def matrix_on(self, module):
        """The endomorphism sum_j c_j T^j of a module with action T."""
        orders = module.orders
        r = len(orders)
        acc = tuple(tuple(0 for _ in range(r)) for _ in range(r))
        power = tuple(tuple(x % orders[i] for x in row) for i, row in enumerate(mat_identity(r)))
        for c in self.coefficients:
            if c:
                acc = mat_add(acc, mat_scale(power, c, orders), orders)
            power = mat_mul(module.action, power, orders)
        return acc


def idempotents(mod: Modulus, s: int):
    """e_i = t * sum_j gamma_i^(-j) h^j with t*s = 1 mod p^n, one per character."""
    chars = enumerate_characters(mod, s)
    N = mod.value
    t = pow(s, -1, N)
    out = []
    for chi in chars:
        ginv = pow(chi.gamma, -1, N)
        out.append(GroupRingElem(mod, tuple(t * pow(ginv, j, N) for j in range(s))))
    return out


class FiniteModule:
    """Z/n_1 + ... + Z/n_r with a cyclic group of order `acting_order` acting
    through the matrix `action` of its designated generator."""

    def __init__(self, orders, action, acting_order):
        self.amb = Ambient(orders)
        self.orders = self.amb.orders
        r = len(self.orders)
        self.action = tuple(tuple(int(a) % self.orders[i] for a in row) for i, row in enumerate(action))
        if len(self.action) != r or any(len(row) != r for row in self.action):
            raise ValueError("action matrix has the wrong shape")
        if not matrix_is_endomorphism(self.action, self.orders):
            raise ValueError("action matrix is not compatible with the module structure")
        self.acting_order = int(acting_order)
        ident = tuple(tuple(x % self.orders[i] for x in row) for i, row in enumerate(mat_identity(r)))
        if mat_pow(self.action, self.acting_order, self.orders) != ident:
            raise ValueError("action^acting_order is not the identity")

    @property
    def order(self):
        return self.amb.order

    @property
    def exponent(self):
        return self.amb.exponent

    def act(self, v, j=1):
        M = mat_pow(self.action, j % self.acting_order, self.orders)
        return self.amb.apply(M, v)

    def elements(self):
        return self.amb.elements()

    def with_action(self, action):
        return type(self)._rebuild(self, action)

    @staticmethod
    def _rebuild(old, action):
        return FiniteModule(old.orders, action, old.acting_order)

    def __repr__(self):
        return f"FiniteModule(orders={self.orders}, action={self.action}, acting_order={self.acting_order})"


class CyclicActionModule(FiniteModule):
    """A p^n-torsion module  Z/p^{k_1} + ... + Z/p^{k_r}  with a cyclic action."""

    def __init__(self, modulus: Modulus, parts, action, acting_order):
        self.modulus = modulus
        self.parts = tuple(int(k) for k in parts)
        if any(k < 0 or k > modulus.n for k in self.parts):
            raise ValueError(f"cyclic part exponents must lie in [0, {modulus.n}]")
        super().__init__(tuple(modulus.p ** k for k in self.parts), action, acting_order)

    @staticmethod
    def _rebuild(old, action):
        return CyclicActionModule(old.modulus, old.parts, action, old.acting_order)

    def __repr__(self):
        return (
            f"CyclicActionModule(p={self.modulus.p}, n={self.modulus.n}, parts={self.parts}, "
            f"action={self.action}, acting_order={self.acting_order})"
        )


@dataclass
class Submodule:
    """Subgroup of a module given by generators."""

    ambient: Ambient
    gens: list = field(default_factory=list)

    @property
    def order(self):
        return self.ambient.span_order(self.gens)

    def contains(self, v):
        return self.ambient.contains(self.gens, v)

    def basis(self):
        return self.ambient.span_basis(self.gens)

    def elements(self, limit=10**6):
        from .lattice import subgroup_elements

        return subgroup_elements(self.gens, self.ambient.orders, limit)

    def is_stable(self, M):
        return all(self.contains(self.ambient.apply(M, g)) for g in self.gens)

    def __add__(self, other):
        return Submodule(self.ambient, list(self.gens) + list(other.gens))


def eigenmodule(A: FiniteModule, gamma: int):
    """A^(chi) = {a : h.a = gamma*a}, computed as a kernel.  No semisimplicity needed."""
    M = mat_sub_scalar(A.action, gamma, A.orders)
    return Submodule(A.amb, kernel_gens(M, A.orders, A.orders))


def fixed_submodule(A: FiniteModule):
    return eigenmodule(A, 1)


def eigen_decompose(A: CyclicActionModule, chars):
    """Map gamma -> e_i A, using the group-ring idempotents.

    The acting order must divide p-1; `chars` must be the full list returned by
    enumerate_characters for that order.
    """
    mod = A.modulus
    s = A.acting_order
    if s % mod.p == 0:
        raise NonSemisimple(f"acting order {s} is divisible by p={mod.p}")
    if (mod.p - 1) % s:
        raise NonSemisimple(f"acting order {s} does not divide p-1")
    if any(c.order != s for c in chars):
        raise ValueError("characters must be defined on the acting group")
    es = idempotents(mod, s)
    gammas = [c.gamma for c in enumerate_characters(mod, s)]
    out = {}
    for chi in chars:
        e = es[gammas.index(chi.gamma)]
        E = e.matrix_on(A)
        out[chi.gamma] = Submodule(A.amb, image_gens(E, A.orders, A.orders))
    return out


def decomposition_report(A: CyclicActionModule, comps):
    """Check the internal direct sum and stability; returns a dict of booleans."""
    total = 1
    for sub in comps.values():
        total *= sub.order
    spanned = Submodule(A.amb, [g for sub in comps.values() for g in sub.gens]).order
    stable = all(sub.is_stable(A.action) for sub in comps.values())
    matches_kernel = all(sub.order == eigenmodule(A, g).order and
                         all(eigenmodule(A, g).contains(x) for x in sub.gens)
                         for g, sub in comps.items())
    return {
        "orders_multiply_to_module": total == A.order,
        "sum_is_module": spanned == A.order,
        "direct": total == A.order and spanned == A.order,
        "stable": stable,
        "equals_eigen_kernel": matches_kernel,
    }


def twist(A: FiniteModule, chi: UnitCharacter):
    """A_chi: same carrier, generator acts by chi(h) * (h . a)."""
    if chi.modulus % A.exponent:
        raise ValueError("character values do not act on the module")
    B = mat_scale(A.action, chi.gamma, A.orders)
    return A.with_action(B)


class DualModule:
    """X(A) = Hom(A, p^{-n}Z/Z) in dual coordinates.

    For A = sum Z/p^{k_i} a character psi is stored as u with
    psi(e_i) = u_i p^{n-k_i} / p^n, so X(A) has the same invariants as A.
    The action is (h.psi)(a) = psi(h^{-1} a).
    """

    def __init__(self, base: CyclicActionModule):
        self.base = base
        mod = base.modulus
        self.modulus = mod
        n, p = mod.n, mod.p
        ks = base.parts
        r = len(ks)
        inv = mat_pow(base.action, base.acting_order - 1, base.orders)
        D = [[0] * r for _ in range(r)]
        N = mod.value
        for j in range(r):
            for i in range(r):
                num = inv[i][j] * p ** (n - ks[i])
                div = p ** (n - ks[j])
                if num % div:
                    raise AssertionError("dual action not integral")
                D[j][i] = (num // div) % p ** ks[j]
        self.module = CyclicActionModule(mod, ks, D, base.acting_order)
        self.N = N

    def pair(self, a, u):
        """B(a, psi) as a numerator mod p^n (the value is that over p^n)."""
        p, n = self.modulus.p, self.modulus.n
        return sum(x * y * p ** (n - k) for x, y, k in zip(a, u, self.base.parts)) % self.N

    def pairing_map(self, dual_gens):
        """Matrix of a -> (B(a, u_l))_l as a map A -> (Z/p^n)^t."""
        p, n = self.modulus.p, self.modulus.n
        return [[u[i] * p ** (n - k) % self.N for i, k in enumerate(self.base.parts)] for u in dual_gens]


def _pairing_injective(dual, sub_a, sub_x):
    """Is a -> B(a, .) injective on sub_a when restricted to sub_x?  Checked by orders.

    The coordinate formula for B is symmetric, so the roles of the two sides can be swapped.
    """
    xs = sub_x.basis()
    if not xs:
        return sub_a.order == 1
    M = dual.pairing_map(xs)
    gens = sub_a.basis()
    tgt = Ambient((dual.N,) * len(xs))
    imgs = [tgt.apply(M, g) for g in gens]
    return tgt.span_order(imgs) == sub_a.order


def dual_decompose(A: CyclicActionModule):
    """Dual module, orthogonality table and nondegeneracy of the paired components."""
    mod = A.modulus
    s = A.acting_order
    chars = enumerate_characters(mod, s)
    X = DualModule(A)
    compA = eigen_decompose(A, chars)
    compX = eigen_decompose(X.module, chars)
    N = mod.value
    orth = {}
    ok_orth = True
    for gi, sa in compA.items():
        for gj, sx in compX.items():
            zero = all(X.pair(a, u) == 0 for a in sa.gens for u in sx.gens)
            orth[(gi, gj)] = zero
            if gj != pow(gi, -1, N) and not zero:
                ok_orth = False
    nondeg = {}
    perps = {}
    for gi, sa in compA.items():
        gj = pow(gi, -1, N)
        sx = compX[gj]
        nondeg[gi] = (
            sa.order == sx.order
            and _pairing_injective(X, sa, sx)
            and _pairing_injective(X, sx, sa)
        )
    for gj, sx in compX.items():
        xs = sx.basis()
        if xs:
            M = X.pairing_map(xs)
            perps[gj] = Submodule(A.amb, kernel_gens(M, A.orders, (N,) * len(xs)))
        else:
            perps[gj] = Submodule(A.amb, A.amb.basis())
    return {
        "dual": X,
        "components_A": compA,
        "components_X": compX,
        "orthogonality": orth,
        "orthogonal": ok_orth,
        "nondegenerate": nondeg,
        "perp": perps,
    }


@dataclass
class InductionWitness:
    B: FiniteModule
    B_chi: Submodule
    A_chi: Submodule
    image: Submodule
    order_B_chi: int
    order_A_chi: int
    bijective: bool


def induced_module(A: FiniteModule, m: int):
    """B = sum_{i<m} sigma^i (x) A with sigma(a_0..a_{m-1}) = (T a_{m-1}, a_0, ..., a_{m-2}).

    A is a module for the subgroup generated by sigma^m, its action matrix being that of sigma^m.
    """
    r = len(A.orders)
    orders = A.orders * m
    R = r * m
    S = [[0] * R for _ in range(R)]
    for blk in range(m):
        for i in range(r):
            row = blk * r + i
            if blk == 0:
                src = (m - 1) * r
                for j in range(r):
                    S[row][src + j] = A.action[i][j]
            else:
                S[row][(blk - 1) * r + i] = 1
    return FiniteModule(orders, S, A.acting_order * m)


def induce_and_project(A: FiniteModule, s: int, m: int, chi: UnitCharacter):
    """Check that projection to the first block maps B^(chi) bijectively onto A^(chi|)."""
    if s % m:
        raise ValueError(f"m={m} does not divide s={s}")
    if (s // m) % A.acting_order:
        raise ValueError("action order of sigma^m must divide s/m")
    if chi.modulus % A.exponent:
        raise ValueError("character modulus must be a multiple of the module exponent")
    if pow(chi.gamma, s, chi.modulus) != 1 % chi.modulus:
        raise ValueError("chi is not a character of the cyclic group of order s")
    B = induced_module(A, m)
    B_chi = eigenmodule(B, chi.gamma)
    A_chi = eigenmodule(A, pow(chi.gamma, m, chi.modulus))
    r = len(A.orders)
    proj = [g[:r] for g in B_chi.gens]
    image = Submodule(A.amb, proj)
    ob, oa = B_chi.order, A_chi.order
    inside = all(A_chi.contains(x) for x in proj)
    bij = inside and image.order == oa and ob == oa
    return InductionWitness(B, B_chi, A_chi, image, ob, oa, bij)


INF = math.inf


class SupernaturalNumber:
    """Formal product of prime powers with exponents in N or infinity."""

    def __init__(self, exps=None):
        self.exps = {}
        for q, e in (exps or {}).items():
            if e:
                if not isprime(q):
                    raise ValueError(f"{q} is not prime")
                self.exps[q] = e

    @classmethod
    def from_int(cls, n):
        from sympy import factorint

        return cls(dict(factorint(n)))

    def __mul__(self, other):
        keys = set(self.exps) | set(other.exps)
        return SupernaturalNumber({q: self.exps.get(q, 0) + other.exps.get(q, 0) for q in keys})

    def divides(self, other):
        return all(e <= other.exps.get(q, 0) for q, e in self.exps.items())

    def lcm(self, other):
        keys = set(self.exps) | set(other.exps)
        return SupernaturalNumber({q: max(self.exps.get(q, 0), other.exps.get(q, 0)) for q in keys})

    def gcd(self, other):
        keys = set(self.exps) & set(other.exps)
        return SupernaturalNumber({q: min(self.exps[q], other.exps[q]) for q in keys})

    def is_finite(self):
        return all(e != INF for e in self.exps.values())

    def __int__(self):
        if not self.is_finite():
            raise ValueError("infinite supernatural number")
        return math.prod(q ** e for q, e in self.exps.items())

    def __eq__(self, other):
        if isinstance(other, int):
            other = SupernaturalNumber.from_int(other)
        return isinstance(other, SupernaturalNumber) and self.exps == other.exps

    def __hash__(self):
        return hash(tuple(sorted(self.exps.items())))

    def __repr__(self):
        if not self.exps:
            return "1"
        parts = []
        for q in sorted(self.exps):
            e = self.exps[q]
            parts.append(f"{q}^inf" if e == INF else (f"{q}" if e == 1 else f"{q}^{e}"))
        return "*".join(parts)


def tower_check(KE, EF, KF):
    """[K:F] = [K:E][E:F] for supernatural (or integer) degrees."""
    conv = lambda x: x if isinstance(x, SupernaturalNumber) else SupernaturalNumber.from_int(x)
    return conv(KE) * conv(EF) == conv(KF)
