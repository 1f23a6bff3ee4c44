"""Exact subgroup arithmetic in finite abelian groups  Z/n_1 + ... + Z/n_r.

Subgroups are handled through lattices in Z^dim that contain E*Z^dim, so every
intermediate entry can be reduced mod E.  The triangular ("echelon") basis used
throughout is a modular Hermite form: row i has its pivot in column i and zeros
to the left.
"""

from __future__ import annotations

from itertools import product
from math import gcd, lcm, prod


def xgcd(a, b):
    """Return (g, s, t) with g = s*a + t*b = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def echelon(vectors, dim, E):
    """Triangular basis of span(vectors) + E*Z^dim.

    Returns a list of `dim` rows; row i has pivot row[i] dividing E.
    """
    rows = [[E if j == i else 0 for j in range(dim)] for i in range(dim)]
    for vec in vectors:
        v = [x % E for x in vec]
        for i in range(dim):
            if v[i] == 0:
                continue
            b = rows[i]
            g, s, t = xgcd(b[i], v[i])
            bi, vi = b[i] // g, v[i] // g
            new = [(s * b[j] + t * v[j]) % E for j in range(dim)]
            new[i] = g
            v = [(vi * b[j] - bi * v[j]) % E for j in range(dim)]
            rows[i] = new
    return rows


def _reduce(rows, v, E):
    v = [x % E for x in v]
    for i, row in enumerate(rows):
        if v[i] % row[i]:
            return None
        f = v[i] // row[i]
        if f:
            v = [(x - f * y) % E for x, y in zip(v, row)]
    return v


def lattice_contains(rows, v, E):
    red = _reduce(rows, v, E)
    return red is not None and not any(red)


def smith_diagonal(M):
    """Invariant factors (including zeros and ones) of an integer matrix."""
    A = [list(r) for r in M]
    nr = len(A)
    nc = len(A[0]) if nr else 0
    diag = []
    for k in range(min(nr, nc)):
        while True:
            piv = None
            for i in range(k, nr):
                for j in range(k, nc):
                    if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                return diag + [0] * (min(nr, nc) - k)
            i, j = piv
            A[k], A[i] = A[i], A[k]
            for r in A:
                r[k], r[j] = r[j], r[k]
            p = A[k][k]
            clean = True
            for i in range(k + 1, nr):
                q = A[i][k] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[k])]
                if A[i][k]:
                    clean = False
            for j in range(k + 1, nc):
                q = A[k][j] // p
                if q:
                    for r in A:
                        r[j] -= q * r[k]
                if A[k][j]:
                    clean = False
            if not clean:
                continue
            bad = None
            for i in range(k + 1, nr):
                for j in range(k + 1, nc):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                diag.append(abs(p))
                break
            A[k] = [x + y for x, y in zip(A[k], A[bad])]
    return diag


class Ambient:
    """The group Z/n_1 + ... + Z/n_r, elements as integer tuples."""

    def __init__(self, orders):
        self.orders = tuple(int(n) for n in orders)
        if any(n < 1 for n in self.orders):
            raise ValueError("cyclic orders must be positive")
        self.rank = len(self.orders)
        self.exponent = lcm(*self.orders) if self.orders else 1
        self.order = prod(self.orders)

    def reduce(self, v):
        return tuple(x % n for x, n in zip(v, self.orders))

    def zero(self):
        return (0,) * self.rank

    def basis(self):
        return [tuple(1 if j == i else 0 for j in range(self.rank)) for i in range(self.rank)]

    def relations(self):
        return [tuple(n if j == i else 0 for j in range(self.rank)) for i, n in enumerate(self.orders)]

    def elements(self):
        for v in product(*(range(n) for n in self.orders)):
            yield v

    def span_rows(self, gens):
        return echelon(list(gens) + self.relations(), self.rank, self.exponent)

    def span_order(self, gens):
        rows = self.span_rows(gens)
        return self.order // prod(r[i] for i, r in enumerate(rows))

    def span_basis(self, gens):
        """Reduced generating set of the span (nonzero echelon rows)."""
        rows = self.span_rows(gens)
        out = []
        for r in rows:
            red = self.reduce(r)
            if any(red):
                out.append(red)
        return out

    def contains(self, gens, v):
        return lattice_contains(self.span_rows(gens), v, self.exponent)

    def apply(self, M, v):
        """Image of v under the matrix M (rows indexed by target summands)."""
        return tuple(sum(a * x for a, x in zip(row, v)) % n for row, n in zip(M, self.orders))


def matrix_is_endomorphism(M, orders):
    """Entry M[i][j] must kill n_j modulo n_i for the map to be well defined."""
    for i, row in enumerate(M):
        for j, a in enumerate(row):
            if (a * orders[j]) % orders[i]:
                return False
    return True


def mat_mul(A, B, orders):
    n = len(A)
    if n == 1:
        return ((A[0][0] * B[0][0] % orders[0],),)
    return tuple(
        tuple(sum(A[i][l] * B[l][j] for l in range(n)) % orders[i] for j in range(n))
        for i in range(n)
    )


def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_pow(A, e, orders):
    R = mat_identity(len(A))
    R = tuple(tuple(x % orders[i] for x in row) for i, row in enumerate(R))
    base = A
    while e:
        if e & 1:
            R = mat_mul(R, base, orders)
        base = mat_mul(base, base, orders)
        e >>= 1
    return R


def mat_add(A, B, orders):
    return tuple(
        tuple((a + b) % orders[i] for a, b in zip(ra, rb)) for i, (ra, rb) in enumerate(zip(A, B))
    )


def mat_scale(A, c, orders):
    return tuple(tuple((c * a) % orders[i] for a in row) for i, row in enumerate(A))


def mat_sub_scalar(A, c, orders):
    """A - c*I."""
    return tuple(
        tuple((a - (c if i == j else 0)) % orders[i] for j, a in enumerate(row))
        for i, row in enumerate(A)
    )


def kernel_gens(M, src_orders, dst_orders):
    """Generators of the kernel of the homomorphism given by M."""
    src, dst = tuple(src_orders), tuple(dst_orders)
    r, rp = len(src), len(dst)
    E = lcm(*(src + dst)) if src + dst else 1
    vecs = []
    for j in range(r):
        vecs.append(tuple(M[i][j] for i in range(rp)) + tuple(1 if k == j else 0 for k in range(r)))
    for i, m in enumerate(dst):
        vecs.append(tuple(m if k == i else 0 for k in range(rp)) + (0,) * r)
    rows = echelon(vecs, rp + r, E)
    amb = Ambient(src)
    out = []
    for row in rows[rp:]:
        v = amb.reduce(row[rp:])
        if any(v):
            out.append(v)
    return out


def image_gens(M, src_orders, dst_orders):
    amb = Ambient(dst_orders)
    cols = []
    for j in range(len(src_orders)):
        v = amb.reduce(tuple(M[i][j] for i in range(len(dst_orders))))
        if any(v):
            cols.append(v)
    return cols


def coefficient_relations(big_gens, small_gens, orders):
    """Triangular basis of {c in Z^t : sum c_j big_j in span(small_gens)}."""
    amb = Ambient(orders)
    t = len(big_gens)
    r = amb.rank
    E = amb.exponent
    vecs = []
    for j, g in enumerate(big_gens):
        vecs.append(tuple(g) + tuple(1 if k == j else 0 for k in range(t)))
    for g in list(small_gens) + amb.relations():
        vecs.append(tuple(g) + (0,) * t)
    rows = echelon(vecs, r + t, E)
    return [row[r:] for row in rows[r:]]


def quotient_invariants(big_gens, small_gens, orders):
    """Invariant factors (descending, > 1) of span(big)/span(small).

    The caller guarantees span(small) is contained in span(big)+span(small);
    the quotient computed is (span(big)+span(small)) / span(small).
    """
    big_gens = list(big_gens)
    if not big_gens:
        return []
    rel = coefficient_relations(big_gens, small_gens, orders)
    diag = smith_diagonal(rel)
    return sorted((d for d in diag if d != 1), reverse=True)


def subgroup_elements(gens, orders, limit=10**6):
    """Enumerate the subgroup generated by gens (breadth-first closure)."""
    amb = Ambient(orders)
    seen = {amb.zero()}
    frontier = [amb.zero()]
    gens = [amb.reduce(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = amb.reduce(tuple(a + b for a, b in zip(x, g)))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > limit:
                        raise ValueError("subgroup too large to enumerate")
        frontier = nxt
    return seen


def invariants_of_orders(orders):
    """Invariant factors (descending) of Z/n_1 + ... + Z/n_r."""
    diag = smith_diagonal([[n if i == j else 0 for j in range(len(orders))] for i, n in enumerate(orders)])
    return sorted((d for d in diag if d != 1), reverse=True)


def elementary_divisors(invariants):
    """Canonical form of a finite abelian group: sorted prime-power cyclic orders."""
    from sympy import factorint

    out = []
    for n in invariants:
        out += [int(q) ** k for q, k in factorint(n).items()]
    return sorted(out)
