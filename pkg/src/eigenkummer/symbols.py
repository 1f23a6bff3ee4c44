"""Symbol algebras from structure constants, the relabeling isomorphism, formal
symbol classes with Galois eigencharacters, and the cyclicity witness."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import FiniteModule, Modulus, UnitCharacter, eigen_decompose, enumerate_characters
from .errors import (
    DegenerateNotWitness,
    HypothesisViolated,
    InvalidInstance,
    NotCoprime,
    NotPrimitiveRoot,
    ZeroSlot,
)
from .fields import CyclotomicField, FiniteField, is_primitive_root_of_unity
from .lattice import Ambient


def element_to_json(x):
    return [str(c) for c in x.c] if isinstance(x.field, CyclotomicField) else list(x.c)


class SymbolAlgebra:
    """(a, b; K)_zeta with basis i^r j^s, 0 <= r, s < m, stored at index r*m + s."""

    def __init__(self, K, m, a, b, zeta):
        self.K = K
        self.m = m
        self.a = K(a)
        self.b = K(b)
        self.zeta = K(zeta)
        self.dim = m * m
        # table[x][y] = (coefficient, index) with e_x e_y = coefficient * e_index
        self.table = [[None] * self.dim for _ in range(self.dim)]
        apow = [self.a ** t for t in range(2)]
        bpow = [self.b ** t for t in range(2)]
        zinv = self.zeta.inverse()
        zpow = [K.one()]
        for _ in range(m - 1):
            zpow.append(zpow[-1] * zinv)
        for r in range(m):
            for s in range(m):
                for u in range(m):
                    for v in range(m):
                        # j^s i^u = zeta^{-su} i^u j^s
                        coef = zpow[(s * u) % m] * apow[(r + u) // m] * bpow[(s + v) // m]
                        idx = ((r + u) % m) * m + (s + v) % m
                        self.table[r * m + s][u * m + v] = (coef, idx)

    def zero(self):
        return [self.K.zero()] * self.dim

    def one(self):
        v = self.zero()
        v[0] = self.K.one()
        return v

    def basis(self, r, s):
        v = self.zero()
        v[(r % self.m) * self.m + s % self.m] = self.K.one()
        return v

    def scalar(self, c):
        v = self.zero()
        v[0] = self.K(c)
        return v

    @property
    def i(self):
        return self.basis(1, 0) if self.m > 1 else self.scalar(self.a)

    @property
    def j(self):
        return self.basis(0, 1) if self.m > 1 else self.scalar(self.b)

    def mul(self, x, y):
        out = self.zero()
        ys = [(q_, cy) for q_, cy in enumerate(y) if not cy.is_zero()]
        for p_, cx in enumerate(x):
            if cx.is_zero():
                continue
            row = self.table[p_]
            for q_, cy in ys:
                coef, idx = row[q_]
                out[idx] = out[idx] + cx * cy * coef
        return out

    def add(self, x, y):
        return [u + v for u, v in zip(x, y)]

    def scale(self, c, x):
        return [u if u.is_zero() else c * u for u in x]

    def power(self, x, e):
        out = self.one()
        for _ in range(e):
            out = self.mul(out, x)
        return out

    def check_relations(self):
        m = self.m
        if m == 1:
            return {"i^m=a": True, "j^m=b": True, "ij=zeta ji": True}
        i, j = self.i, self.j
        return {
            "i^m=a": self.power(i, m) == self.scalar(self.a),
            "j^m=b": self.power(j, m) == self.scalar(self.b),
            "ij=zeta ji": self.mul(i, j) == self.scale(self.zeta, self.mul(j, i)),
        }

    def check_associativity(self):
        """(e_x e_y) e_z = e_x (e_y e_z) for all basis triples, on structure constants."""
        n = self.dim
        T = self.table
        for x in range(n):
            for y in range(n):
                c1, i1 = T[x][y]
                for z in range(n):
                    c2, i2 = T[i1][z]
                    c3, i3 = T[y][z]
                    c4, i4 = T[x][i3]
                    if i2 != i4 or c1 * c2 != c3 * c4:
                        return False
        return True

    def _unit(self, x):
        v = self.zero()
        v[x] = self.K.one()
        return v

    def to_json(self):
        return {
            "field": repr(self.K), "m": self.m,
            "a": element_to_json(self.a), "b": element_to_json(self.b), "zeta": element_to_json(self.zeta),
            "structure_constants": [
                [[element_to_json(c), idx] for c, idx in row] for row in self.table
            ],
        }


def build_symbol(K, m, a, b, zeta, check=True):
    a, b, zeta = K(a), K(b), K(zeta)
    if a.is_zero() or b.is_zero():
        raise ZeroSlot("symbol slots must be nonzero")
    if K.characteristic and m % K.characteristic == 0:
        raise InvalidInstance("characteristic divides m")
    if not is_primitive_root_of_unity(zeta, m):
        raise NotPrimitiveRoot(f"{zeta} is not a primitive {m}-th root of unity")
    A = SymbolAlgebra(K, m, a, b, zeta)
    if check:
        rel = A.check_relations()
        if not all(rel.values()) or not A.check_associativity():
            raise AssertionError("structure constants fail the defining relations")
    return A


def _rank(rows, K):
    """Rank of a matrix of field elements by Gaussian elimination."""
    M = [list(r) for r in rows]
    rank = 0
    ncols = len(M[0]) if M else 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(M)) if not M[r][col].is_zero()), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = M[rank][col].inverse()
        M[rank] = [x * inv for x in M[rank]]
        for r in range(len(M)):
            if r != rank and not M[r][col].is_zero():
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[rank])]
        rank += 1
    return rank


@dataclass
class RelabelIso:
    source: SymbolAlgebra
    target: SymbolAlgebra
    k: int
    images: list
    homomorphism: bool
    bijective: bool


def relabel_iso(A: SymbolAlgebra, k):
    """Isomorphism (a^k, b)_{zeta^k} -> (a, b)_zeta with I -> i^k, J -> j."""
    m = A.m
    if math.gcd(k, m) != 1:
        raise NotCoprime(f"gcd({k}, {m}) != 1")
    B = build_symbol(A.K, m, A.a ** k, A.b, A.zeta ** k, check=False)
    ik = A.power(A.i, k) if m > 1 else A.one()
    images = []
    for r in range(m):
        for s in range(m):
            images.append(A.mul(A.power(ik, r), A.power(A.j, s)))

    hom = True
    for x in range(B.dim):
        for y in range(B.dim):
            coef, idx = B.table[x][y]
            lhs = A.scale(coef, images[idx])
            rhs = A.mul(images[x], images[y])
            if lhs != rhs:
                hom = False
                break
        if not hom:
            break
    bij = _rank(images, A.K) == A.dim
    return RelabelIso(B, A, k, images, hom, bij)


@dataclass(frozen=True)
class FormalSymbolClass:
    """[(a, b)_omega]^exponent where H acts on [a] by chi, on [b] by psi and on omega by alpha."""

    chi: int
    psi: int
    alpha: int
    modulus: int
    h_order: int
    exponent: int = 1


def galois_eigenclass(cls: FormalSymbolClass):
    """Eigencharacter of sigma on the class, by rewriting the symbol in three steps.

    sigma(a, b)_w = (a^chi, b^psi)_{w^alpha}      (slots and root move)
                  = (a^{chi/alpha}, b^psi)_w       (relabel the root)
                  = [(a, b)_w]^{chi psi / alpha}   (bimultiplicativity)
    """
    N = cls.modulus
    x, y, t = 1, 1, 1
    chain = []
    x, y, t = x * cls.chi % N, y * cls.psi % N, t * cls.alpha % N
    chain.append({"a": x, "b": y, "root": t})
    x, t = x * pow(t, -1, N) % N, 1
    chain.append({"a": x, "b": y, "root": t})
    e = x * y % N
    chain.append({"class_exponent": e})
    direct = cls.chi * cls.psi * pow(cls.alpha, -1, N) % N
    if e != direct:
        raise AssertionError("rewriting chain disagrees with chi psi alpha^-1")
    return UnitCharacter(N, cls.h_order, e), chain


def prop34_fixed_check(chi, alpha, modulus, h_order):
    """Slots carrying chi and alpha chi^{-1} give an H-fixed class."""
    psi = alpha * pow(chi, -1, modulus) % modulus
    ch, _ = galois_eigenclass(FormalSymbolClass(chi, psi, alpha, modulus, h_order))
    return ch.is_trivial


class CyclicAlgebra:
    """(C/F, sigma, b): sum of C x^i, x c = sigma(c) x, x^N = b, with C = F_{q^N}."""

    def __init__(self, q, N, b):
        self.C = FiniteField.of_order(q ** N)
        self.q = q
        self.N = N
        self.b = self.C(b) if not hasattr(b, "field") else b
        if self.b.is_zero():
            raise ZeroSlot("b must be nonzero")
        if self.b ** q != self.b:
            raise InvalidInstance("b does not lie in F")

    def sigma(self, c, times=1):
        return c ** (self.q ** (times % self.N))

    def zero(self):
        return [self.C.zero()] * self.N

    def one(self):
        v = self.zero()
        v[0] = self.C.one()
        return v

    def scalar(self, c):
        v = self.zero()
        v[0] = self.C(c) if not hasattr(c, "field") else c
        return v

    @property
    def x(self):
        v = self.zero()
        if self.N == 1:
            return self.scalar(self.b)
        v[1] = self.C.one()
        return v

    def mul(self, u, v):
        out = self.zero()
        for i, c in enumerate(u):
            if c.is_zero():
                continue
            for j, d in enumerate(v):
                if d.is_zero():
                    continue
                term = c * self.sigma(d, i)
                k = i + j
                if k >= self.N:
                    term = term * self.b
                    k -= self.N
                out[k] = out[k] + term
        return out

    def power(self, u, e):
        out = self.one()
        base = u
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def check(self):
        """x c x^{-1} = sigma(c) on a generator of C, and x^N = b."""
        g = self.C.primitive_element
        xc = self.mul(self.x, self.scalar(g))
        cx = self.mul(self.scalar(self.sigma(g)), self.x)
        return xc == cx and self.power(self.x, self.N) == self.scalar(self.b)


def pth_powers(F, p):
    return {x ** p for x in F.units()}


def cyclicity_witness(q, p, n, b):
    """gamma = x with gamma^{p^n} = b in F* - F*^p, or DegenerateNotWitness carrying delta."""
    F = FiniteField.of_order(q)
    if F.k != 1:
        raise InvalidInstance("the base field must be a prime field here")
    N = p ** n
    alg = CyclicAlgebra(q, N, b)
    if not alg.check():
        raise AssertionError("cyclic algebra presentation is inconsistent")
    gamma = alg.x
    if alg.power(gamma, N) != alg.scalar(alg.b):
        raise AssertionError("gamma^{p^n} != b")
    bF = F(b)
    powers = pth_powers(F, p)
    if bF not in powers:
        return {"witness": "x", "gamma_pn": [int(alg.b.c[0])], "b_is_pth_power": False, "algebra": alg}
    d = next(y for y in F.units() if y ** p == bF)
    dC = alg.C(int(d.c[0]))
    delta = alg.mul(alg.power(gamma, N // p), alg.scalar(dC.inverse()))
    if alg.power(delta, p) != alg.one():
        raise AssertionError("delta^p != 1")
    raise DegenerateNotWitness(
        f"b={b} is a {p}-th power in F_{q}", delta=[list(c.c) for c in delta], d=int(d.c[0])
    )


def eigen_split_class(A, a, alpha_gamma):
    """Split the class a along the eigencomponents of A and tag each symbol (a_i, c).

    The tag of (a_i, c) for c coming from the base is chi_i alpha^{-1}; the unique
    component with trivial tag is the one at chi_i = alpha.
    """
    mod = A.modulus
    chars = enumerate_characters(mod, A.acting_order)
    from .core import idempotents

    es = idempotents(mod, A.acting_order)
    N = mod.value
    out = []
    total = tuple(0 for _ in A.orders)
    for chi, e in zip(chars, es):
        E = e.matrix_on(A)
        comp = A.amb.apply(E, a)
        tag = chi.gamma * pow(alpha_gamma, -1, N) % N
        total = A.amb.reduce(tuple(x + y for x, y in zip(total, comp)))
        out.append({
            "gamma": chi.gamma, "component": list(comp), "nonzero": any(comp),
            "tag": tag, "trivial_tag": tag == 1,
        })
    return {
        "components": out,
        "sum_recovers_class": total == A.amb.reduce(a),
        "selected": [c["gamma"] for c in out if c["trivial_tag"]],
    }


def eigen_split_tower(tower, j):
    """Same decomposition on M*/M*^{p^n} of a tower with M = L."""
    from .core import CyclicActionModule
    from .tower import power_class_group

    if tower.deg_ML != 1:
        raise HypothesisViolated("needs M = L (p does not divide [M:F])")
    pc = power_class_group(tower, "M")
    A = CyclicActionModule(tower.mod, (pc.e,), [[tower.q]], tower.s)
    return eigen_split_class(A, (j,), tower.alpha.gamma)
