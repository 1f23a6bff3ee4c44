"""Exact fields: finite fields F_{p^k} as polynomial quotients, and the cyclotomic
fields Q(zeta_m) with rational coefficients."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property
from itertools import product

from sympy import factorint, isprime


# polynomials are coefficient lists, lowest degree first, without trailing zeros


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_add(a, b, mod=None):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    if mod is not None:
        out = [x % mod for x in out]
    return _trim(out)


def poly_sub(a, b, mod=None):
    return poly_add(a, [-x for x in b], mod)


def poly_mul(a, b, mod=None):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    if mod is not None:
        out = [x % mod for x in out]
    return _trim(out)


def poly_divmod(a, b, mod=None):
    """Division with remainder; over F_mod when mod is given, else over Q."""
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if mod is not None:
        lead_inv = pow(b[-1], -1, mod)
    else:
        lead_inv = Fraction(1) / b[-1]
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and r:
        c = r[-1] * lead_inv
        if mod is not None:
            c %= mod
        shift = len(r) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            r[shift + i] -= c * y
            if mod is not None:
                r[shift + i] %= mod
        r = _trim(r)
    return _trim(q), r


def poly_mod(a, b, mod=None):
    return poly_divmod(a, b, mod)[1]


def poly_gcd(a, b, mod):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, poly_mod(a, b, mod)
    if a:
        inv = pow(a[-1], -1, mod)
        a = [x * inv % mod for x in a]
    return a


def poly_powmod(a, e, f, mod):
    result = [1]
    base = poly_mod(a, f, mod)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, mod), f, mod)
        base = poly_mod(poly_mul(base, base, mod), f, mod)
        e >>= 1
    return result


def is_irreducible(f, p):
    """Rabin's test over F_p for a monic polynomial f."""
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if poly_sub(poly_powmod(x, p ** k, f, p), x, p):
        return False
    for r in factorint(k):
        h = poly_sub(poly_powmod(x, p ** (k // r), f, p), x, p)
        if len(poly_gcd(f, h, p)) != 1:
            return False
    return True


def least_irreducible(p, k):
    """Lexicographically least monic irreducible of degree k over F_p, comparing
    (a_{k-1}, ..., a_0)."""
    if k == 1:
        return [0, 1]
    for high_first in product(range(p), repeat=k):
        f = list(reversed(high_first)) + [1]
        if f[0] == 0:
            continue
        if is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")


def cyclotomic_poly(m):
    """Integer coefficients of the m-th cyclotomic polynomial."""
    f = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            q, r = poly_divmod(f, cyclotomic_poly(d))
            assert not r
            f = [int(x) for x in q]
    return f


def factor_degree_cyclotomic(Q, p):
    """Degree of the irreducible factors of Phi_p over F_Q, via the Frobenius on F_l[x]/Phi_p.

    Q is a power of the prime l; the answer is the least d with x^(Q^d) = x mod Phi_p.
    """
    ell = int(next(iter(factorint(Q))))
    if Q % p == 0:
        raise ValueError("p must be prime to Q")
    f = [c % ell for c in cyclotomic_poly(p)]
    x = [0, 1]
    cur = x
    for d in range(1, p):
        cur = poly_powmod(cur, Q, f, ell)
        if cur == x:
            return d
    raise AssertionError("Frobenius order exceeds p-1")


class FieldElement:
    """Element of an exact field: a polynomial residue with field-specific coefficients."""

    __slots__ = ("field", "c")

    def __init__(self, field, coeffs):
        self.field = field
        self.c = field._normalize(coeffs)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        return self.field(other)

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field._add(self.c, o.c))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.c))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field._mul(self.c, o.c))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return FieldElement(self.field, self.field._inv(self.c))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self):
        return not any(self.c)

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            try:
                other = self.field(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.field == other.field and self.c == other.c

    def __hash__(self):
        return hash((hash(self.field), self.c))

    def __repr__(self):
        return self.field.format(self.c)


class FiniteField:
    """F_{p^k} = F_p[x]/(f) with f the least irreducible of degree k."""

    def __init__(self, p, k=1):
        if not isprime(p):
            raise ValueError(f"characteristic must be prime, got {p}")
        self.p = p
        self.k = k
        self.order = p ** k
        self.modulus = least_irreducible(p, k)

    @classmethod
    def of_order(cls, q):
        f = factorint(q)
        if len(f) != 1:
            raise ValueError(f"{q} is not a prime power")
        (p, k), = f.items()
        return cls(int(p), int(k))

    @property
    def characteristic(self):
        return self.p

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash(("GF", self.p, self.k))

    def _normalize(self, coeffs):
        c = [int(x) % self.p for x in coeffs]
        if len(c) > self.k:
            c = poly_mod(c, self.modulus, self.p)
        return tuple(c) + (0,) * (self.k - len(c))

    def __call__(self, value):
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, int):
            return FieldElement(self, [value])
        return FieldElement(self, list(value))

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def gen(self):
        return self([0, 1]) if self.k > 1 else self(self.primitive_int())

    def _add(self, a, b):
        return [(x + y) for x, y in zip(a, b)]

    def _neg(self, a):
        return [-x for x in a]

    def _mul(self, a, b):
        return poly_mod(poly_mul(list(a), list(b), self.p), self.modulus, self.p)

    def _inv(self, a):
        return list((FieldElement(self, a) ** (self.order - 2)).c)

    def elements(self):
        for c in product(range(self.p), repeat=self.k):
            yield FieldElement(self, c)

    def units(self):
        return [x for x in self.elements() if not x.is_zero()]

    def primitive_int(self):
        for g in range(2, self.p):
            if all(pow(g, (self.p - 1) // r, self.p) != 1 for r in factorint(self.p - 1)):
                return g
        return 1

    @cached_property
    def primitive_element(self):
        """Least generator of the unit group in the enumeration order."""
        n = self.order - 1
        rs = list(factorint(n)) if n > 1 else []
        for x in self.elements():
            if x.is_zero():
                continue
            if all(x ** (n // r) != self.one() for r in rs):
                return x
        raise AssertionError("no primitive element")

    def element_order(self, x):
        n = self.order - 1
        for d in sorted(d for d in range(1, n + 1) if n % d == 0):
            if x ** d == self.one():
                return d
        raise AssertionError("unreachable")

    def frobenius(self, x, times=1):
        return x ** (self.p ** times)

    def format(self, c):
        if self.k == 1:
            return str(c[0])
        terms = [f"{a}*x^{i}" if i else str(a) for i, a in enumerate(c) if a]
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"GF({self.order})"


class CyclotomicField:
    """Q(zeta_m) = Q[x]/(Phi_m) with Fraction coefficients."""

    def __init__(self, m):
        if m < 1:
            raise ValueError("m must be positive")
        self.m = m
        self.modulus = cyclotomic_poly(m)
        self.degree = len(self.modulus) - 1
        self.characteristic = 0

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and self.m == other.m

    def __hash__(self):
        return hash(("Qzeta", self.m))

    def _normalize(self, coeffs):
        c = [x if type(x) is Fraction else Fraction(x) for x in coeffs]
        if len(c) > self.degree:
            c = [Fraction(x) for x in poly_mod(c, self.modulus)]
        return tuple(c) + (Fraction(0),) * (self.degree - len(c))

    def __call__(self, value):
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, (int, Fraction)):
            return FieldElement(self, [value])
        return FieldElement(self, list(value))

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    @property
    def zeta(self):
        """The class of x, a primitive m-th root of unity."""
        return FieldElement(self, [0, 1]) if self.degree > 1 else self(-1 if self.m == 2 else 1)

    def _add(self, a, b):
        return [x + y for x, y in zip(a, b)]

    def _neg(self, a):
        return [-x for x in a]

    def _mul(self, a, b):
        d = self.degree
        out = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        # Phi_m is monic: x^d = -(f_0 + ... + f_{d-1} x^{d-1})
        f = self.modulus
        for top in range(2 * d - 2, d - 1, -1):
            c = out[top]
            if c:
                base = top - d
                for i in range(d):
                    if f[i]:
                        out[base + i] -= c * f[i]
        return out[:d]

    def _inv(self, a):
        # extended Euclid over Q[x]
        r0, r1 = list(self.modulus), _trim(list(a))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, poly_sub(s0, poly_mul(q, s1))
        c = r1[0]
        return [x / c for x in s1]

    def automorphism(self, t):
        """The automorphism zeta -> zeta^t (t prime to m)."""
        if math.gcd(t, self.m) != 1:
            raise ValueError(f"{t} is not prime to {self.m}")
        z = self.zeta ** t

        def sigma(x):
            out = self.zero()
            zp = self.one()
            for a in x.c:
                out = out + zp * a
                zp = zp * z
            return out

        return sigma

    def conjugation(self):
        return self.automorphism(-1 % self.m if self.m > 1 else 1)

    def format(self, c):
        terms = [f"{a}*z^{i}" if i else str(a) for i, a in enumerate(c) if a]
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"Q(zeta_{self.m})"


def is_primitive_root_of_unity(z, m):
    one = z.field.one()
    if z ** m != one:
        return False
    return all(z ** (m // r) != one for r in factorint(m)) if m > 1 else True
