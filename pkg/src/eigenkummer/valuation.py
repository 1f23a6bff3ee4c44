"""Iterated Laurent-series fields k((x_1))...((x_r)) with the right-to-left
lexicographic valuation, value-group bookkeeping, Kummer-step classification and
valued tests for symbol algebras."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .core import CyclicActionModule, Modulus, enumerate_characters, eigen_decompose, mult_order
from .errors import InvalidInstance, PrecisionExhausted, ResidueCharP, ZeroSlot
from .fields import FiniteField, factor_degree_cyclotomic
from .lattice import echelon, lattice_contains

DEFAULT_PRECISION = 24


def lex_key(e):
    """Sort key for the right-to-left lexicographic order: the last coordinate dominates."""
    return tuple(reversed(tuple(e)))


def lex_less(a, b):
    return lex_key(a) < lex_key(b)


def lex_min(a, b):
    return a if lex_key(a) <= lex_key(b) else b


class LexValueGroup:
    """Z[1/p]^t x Z^(r-t) + <generators>, ordered right-to-left lexicographically.

    Generators are rational vectors; their first t coordinates are absorbed by the
    divisible part, so only the last r - t coordinates matter for membership.
    """

    def __init__(self, rank, p, p_divisible_prefix=0, generators=()):
        if not 0 <= p_divisible_prefix <= rank:
            raise ValueError("prefix must lie in [0, rank]")
        self.rank = rank
        self.p = p
        self.t = p_divisible_prefix
        self.generators = [tuple(Fraction(x) for x in g) for g in generators]
        for g in self.generators:
            if len(g) != rank:
                raise ValueError("generator of the wrong rank")

    @property
    def p_divisible_prefix(self):
        return self.t

    def _tail(self, v):
        return tuple(Fraction(x) for x in v)[self.t:]

    def _denominator(self, extra=()):
        dens = [x.denominator for g in self.generators for x in self._tail(g)]
        dens += [x.denominator for x in extra]
        return math.lcm(1, *dens)

    def _rows(self, D):
        dim = self.rank - self.t
        vecs = [[int(x * D) for x in self._tail(g)] for g in self.generators]
        return echelon(vecs, dim, D)

    def contains(self, v):
        v = tuple(Fraction(x) for x in v)
        for x in v[: self.t]:
            den = x.denominator
            while den % self.p == 0:
                den //= self.p
            if den != 1:
                return False
        tail = self._tail(v)
        D = self._denominator(tail)
        if self.rank == self.t:
            return True
        return lattice_contains(self._rows(D), [int(x * D) for x in tail], D)

    def index_over_integers(self):
        """[Gamma : Z[1/p]^t x Z^(r-t)] for the finite part."""
        dim = self.rank - self.t
        if dim == 0:
            return 1
        D = self._denominator()
        rows = self._rows(D)
        return D ** dim // math.prod(r[i] for i, r in enumerate(rows))

    def add_generators(self, gens):
        return LexValueGroup(self.rank, self.p, self.t, self.generators + [tuple(g) for g in gens])

    def divisible_by_p(self, v):
        """Is v in p*Gamma?"""
        return self.contains(tuple(Fraction(x) / self.p for x in v))

    def mod_p_vector(self, v):
        """Coordinates of v in Gamma/p Gamma, for Gamma = Z[1/p]^t x Z^(r-t) without extra generators."""
        if self.generators:
            raise NotImplementedError("reduction mod p needs a plain lattice")
        tail = self._tail(v)
        if any(x.denominator != 1 for x in tail):
            raise ValueError("vector not in the group")
        return tuple(int(x) % self.p for x in tail)

    def __eq__(self, other):
        if not isinstance(other, LexValueGroup):
            return NotImplemented
        if (self.rank, self.p, self.t) != (other.rank, other.p, other.t):
            return False
        basis = [tuple(1 if j == i else 0 for j in range(self.rank)) for i in range(self.rank)]
        return all(other.contains(g) for g in self.generators + basis) and all(
            self.contains(g) for g in other.generators + basis
        )

    def describe(self):
        parts = [f"Z[1/{self.p}]"] * self.t + ["Z"] * (self.rank - self.t)
        base = " x ".join(parts)
        if self.generators:
            gens = ", ".join("(" + ",".join(str(x) for x in g) + ")" for g in self.generators)
            return f"<{gens}> + {base}"
        return base

    def to_json(self):
        return {
            "rank": self.rank,
            "p_divisible_prefix": self.t,
            "generators": [[str(x) for x in g] for g in self.generators],
        }

    def __repr__(self):
        return f"LexValueGroup({self.describe()})"


class LaurentElement:
    """Finite sum of c * x^e (e in Z^r) known modulo terms of exponent >= precision."""

    def __init__(self, k, rank, terms=None, precision=None):
        self.k = k
        self.rank = rank
        self.precision = tuple(precision) if precision is not None else (DEFAULT_PRECISION,) * rank
        pk = lex_key(self.precision)
        self.terms = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            c = k(c)
            if len(e) != rank:
                raise ValueError("exponent of the wrong rank")
            if c.is_zero() or lex_key(e) >= pk:
                continue
            self.terms[e] = self.terms.get(e, k.zero()) + c
        self.terms = {e: c for e, c in self.terms.items() if not c.is_zero()}

    @classmethod
    def monomial(cls, k, rank, e, c=1, precision=None):
        return cls(k, rank, {tuple(e): c}, precision)

    @classmethod
    def var(cls, k, rank, i):
        e = [0] * rank
        e[i] = 1
        return cls.monomial(k, rank, e)

    @classmethod
    def constant(cls, k, rank, c):
        return cls.monomial(k, rank, (0,) * rank, c)

    def __add__(self, other):
        prec = lex_min(self.precision, other.precision)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, self.k.zero()) + c
        return LaurentElement(self.k, self.rank, terms, prec)

    def __neg__(self):
        return LaurentElement(self.k, self.rank, {e: -c for e, c in self.terms.items()}, self.precision)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentElement):
            return LaurentElement(self.k, self.rank, {e: c * other for e, c in self.terms.items()}, self.precision)
        v1, _ = valuate(self)
        v2, _ = valuate(other)
        p1 = tuple(a + b for a, b in zip(self.precision, v2))
        p2 = tuple(a + b for a, b in zip(other.precision, v1))
        prec = lex_min(p1, p2)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, self.k.zero()) + c1 * c2
        return LaurentElement(self.k, self.rank, terms, prec)

    __rmul__ = __mul__

    def is_zero_at_precision(self):
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return f"O({self.precision})"
        parts = []
        for e in sorted(self.terms, key=lex_key):
            mono = "*".join(f"x{i + 1}^{a}" for i, a in enumerate(e) if a)
            parts.append(f"{self.terms[e]}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def valuate(e: LaurentElement):
    """(lex-minimal exponent, its coefficient)."""
    if not e.terms:
        raise PrecisionExhausted("element is zero to its precision")
    v = min(e.terms, key=lex_key)
    return v, e.terms[v]


@dataclass
class ValuedFieldDescriptor:
    """Rank-r valued field with residue field `residue` (a finite field order, or a token).

    mu_chain[t] says whether mu_p lies in the residue field of the coarsening whose
    value group keeps the last r - t coordinates (t = 0 is the residue field itself).
    """

    residue: object
    rank: int
    p: int
    mu_chain: list = field(default_factory=list)
    L_degree: int | None = None
    residue_mu_degree: int | None = None
    value_group: LexValueGroup | None = None

    def __post_init__(self):
        if self.value_group is None:
            self.value_group = LexValueGroup(self.rank, self.p)
        if self.is_finite:
            Q = int(self.residue)
            if Q % self.p == 0:
                raise ResidueCharP(f"residue characteristic divides p={self.p}")
            has_mu = (Q - 1) % self.p == 0
            if not self.mu_chain:
                self.mu_chain = [has_mu] * self.rank
            if bool(self.mu_chain[0]) != has_mu:
                raise InvalidInstance("mu_chain[0] disagrees with the finite residue field")
        elif not self.mu_chain:
            raise InvalidInstance("symbolic residues need explicit mu_chain flags")
        self.mu_chain = [bool(x) for x in self.mu_chain]
        if len(self.mu_chain) != self.rank:
            raise InvalidInstance("need one mu_p flag per coarsening level")
        # mu_p in a finer residue field forces it in the coarser ones
        for a, b in zip(self.mu_chain, self.mu_chain[1:]):
            if b and not a:
                raise InvalidInstance("mu_chain flags are not monotone")

    @property
    def is_finite(self):
        return isinstance(self.residue, int)

    @property
    def residue_label(self):
        return f"F_{self.residue}" if self.is_finite else str(self.residue)

    def to_json(self):
        return {
            "residue": self.residue_label, "rank": self.rank, "p": self.p,
            "mu_chain": self.mu_chain, "value_group": self.value_group.to_json(),
        }


def laurent_field(Q, rank, p):
    """Descriptor of F_Q((x_1))...((x_r)); all coarsenings share the residue F_Q."""
    return ValuedFieldDescriptor(Q, rank, p)


def extend_to_L(desc: ValuedFieldDescriptor):
    """(ell, [res(mu_p) : res], value group) for L = F(mu_p)."""
    p = desc.p
    if desc.is_finite:
        Q = desc.residue
        if Q % p == 0:
            raise ResidueCharP(f"p={p} divides the residue characteristic")
        res_deg = mult_order(Q, p)
        # F is complete, so [L:F] is the degree of the irreducible factors of Phi_p over F_Q
        L_deg = factor_degree_cyclotomic(Q, p)
    else:
        if desc.L_degree is None or desc.residue_mu_degree is None:
            raise InvalidInstance("symbolic residues need L_degree and residue_mu_degree")
        L_deg, res_deg = desc.L_degree, desc.residue_mu_degree
    if L_deg % res_deg:
        raise AssertionError("residue degree does not divide [L:F]")
    return {"ell": L_deg // res_deg, "residue_degree": res_deg, "L_degree": L_deg,
            "value_group": desc.value_group}


def pth_power_set(Q, p):
    F = FiniteField.of_order(Q)
    return F, {x ** p for x in F.units()}


@dataclass
class KummerCase:
    case: str
    value_group: LexValueGroup
    residue_order: object
    extensions: int
    w: tuple

    def to_json(self):
        return {
            "case": self.case, "value_group": self.value_group.to_json(),
            "residue": self.residue_order, "extensions": self.extensions, "w": list(self.w),
        }


def classify_kummer_case(desc: ValuedFieldDescriptor, c: LaurentElement):
    """Case I / II / III for the extension by a p-th root of c."""
    p = desc.p
    if not desc.is_finite:
        raise InvalidInstance("the residue test needs a finite residue field")
    w, lead = valuate(c)
    G = desc.value_group
    if not G.divisible_by_p(w):
        return KummerCase("I", G.add_generators([tuple(Fraction(x, p) for x in w)]), desc.residue, 1, w)
    _, powers = pth_power_set(desc.residue, p)
    if lead not in powers:
        return KummerCase("II", G, desc.residue ** p, 1, w)
    return KummerCase("III", G, desc.residue, p, w)


def predict_Fp_extension(desc: ValuedFieldDescriptor):
    """(residue label, value group) of the extension of V to F(p)."""
    p = desc.p
    if desc.is_finite and desc.residue % p == 0:
        raise ResidueCharP(f"p={p} divides the residue characteristic")
    t_star = next((t for t, flag in enumerate(desc.mu_chain) if not flag), desc.rank)
    label = f"F_{desc.residue}({p})" if desc.is_finite else f"{desc.residue}({p})"
    return label, LexValueGroup(desc.rank, p, t_star)


def count_extensions_along(desc: ValuedFieldDescriptor, steps):
    """Follow Case I/II/III steps; ell = [L_i : F_i] / [res_i(mu_p) : res_i] at each stage."""
    if not desc.is_finite:
        raise InvalidInstance("stage bookkeeping needs a finite residue field")
    Q = desc.residue
    G = desc.value_group
    ext = 1
    stages = []
    cur = desc
    for i in range(len(steps) + 1):
        ell = extend_to_L(cur)["ell"]
        stages.append({"stage": i, "residue": Q, "extensions_of_V": ext, "ell": ell})
        if i == len(steps):
            break
        step = steps[i]
        case = step.case if isinstance(step, KummerCase) else str(step)
        if case == "I":
            G = step.value_group if isinstance(step, KummerCase) else G
        elif case == "II":
            Q = Q ** desc.p
        elif case == "III":
            ext *= desc.p
        else:
            raise ValueError(f"unknown case {case!r}")
        cur = ValuedFieldDescriptor(Q, desc.rank, desc.p, value_group=G)
    ells = {s["ell"] for s in stages}
    return {"stages": stages, "ell_invariant": len(ells) == 1}


@dataclass
class DivisionTestResult:
    classification: str
    value_group: LexValueGroup | None = None
    residue: str | None = None
    detail: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "classification": self.classification,
            "value_group": self.value_group.to_json() if self.value_group else None,
            "residue": self.residue, "detail": self.detail,
        }


def _is_pth_power(desc, value):
    if not desc.is_finite:
        return None
    _, powers = pth_power_set(desc.residue, desc.p)
    return value in powers


def symbol_division_test(a: LaurentElement, b: LaurentElement, desc: ValuedFieldDescriptor):
    """Type1 / Type2 certify a division algebra, Split certifies splitting, else Unknown."""
    if not a.terms or not b.terms:
        raise ZeroSlot("symbol slots must be nonzero")
    p = desc.p
    if not desc.mu_chain[0]:
        raise InvalidInstance("mu_p must lie in the residue field")
    G = desc.value_group
    wa, la = valuate(a)
    wb, lb = valuate(b)
    va, vb = G.mod_p_vector(wa), G.mod_p_vector(wb)
    dim = len(va)
    rows = echelon([va, vb], dim, p) if dim else []
    rank = sum(1 for i, r in enumerate(rows) if r[i] == 1)
    residue_label = desc.residue_label
    if rank == 2:
        vg = G.add_generators([tuple(Fraction(x, p) for x in wa), tuple(Fraction(x, p) for x in wb)])
        return DivisionTestResult("Type1", vg, residue_label, {"w_a": list(wa), "w_b": list(wb)})
    if rank == 1:
        # one slot carries the value; write the other as a^k times a unit mod p-th powers
        for (w1, l1, v1), (w2, l2, v2), order in (((wa, la, va), (wb, lb, vb), "ab"),
                                                 ((wb, lb, vb), (wa, la, va), "ba")):
            if not any(v1):
                continue
            k = next(kk for kk in range(p) if all((y - kk * x) % p == 0 for x, y in zip(v1, v2)))
            unit_residue = l2 * l1 ** (-k)
            is_power = _is_pth_power(desc, unit_residue)
            if is_power is None:
                return DivisionTestResult("Unknown", None, None, {"reason": "symbolic residue", "order": order})
            if is_power:
                return DivisionTestResult("Split", None, residue_label,
                                          {"reason": "second slot is a p-th power", "order": order})
            vg = G.add_generators([tuple(Fraction(x, p) for x in w1)])
            res = f"{residue_label}({unit_residue}^(1/{p}))"
            return DivisionTestResult("Type2", vg, res, {"order": order, "k": k, "unit_residue": str(unit_residue)})
    # both values in p Gamma: the class is that of the residue symbol
    if desc.is_finite:
        return DivisionTestResult("Split", None, residue_label,
                                  {"reason": "residue symbol over a finite field", "type3": True})
    return DivisionTestResult("Unknown", None, None, {"reason": "residue symbol over a symbolic field", "type3": True})


def laurent_power_classes(Q, rank, p, q_base=None):
    """L*/L*^p for L = F_Q((x_1))...((x_r)) as (Z/p)^(1+r) with the H-action.

    H = Gal(F_Q / F_{q_base}) acts on the residue class by q_base and fixes the
    uniformizer classes.
    """
    if (Q - 1) % p:
        raise InvalidInstance("mu_p must lie in the residue field")
    q_base = Q if q_base is None else q_base
    k = round(math.log(Q, q_base))
    if q_base ** k != Q:
        raise InvalidInstance("Q must be a power of q_base")
    s = mult_order(q_base, p)
    mod = Modulus(p, 1)
    action = [[(q_base % p if i == j == 0 else (1 if i == j else 0)) for j in range(rank + 1)]
              for i in range(rank + 1)]
    A = CyclicActionModule(mod, (1,) * (rank + 1), action, s)
    chars = enumerate_characters(mod, s)
    comps = eigen_decompose(A, chars)
    alpha = q_base % p
    unif = [tuple(1 if j == i + 1 else 0 for j in range(rank + 1)) for i in range(rank)]
    trivial = comps[1]
    alpha_comp = comps[alpha]
    res_class = tuple(1 if j == 0 else 0 for j in range(rank + 1))
    return {
        "module": A, "components": comps, "alpha": alpha,
        "uniformizers_trivial": all(trivial.contains(u) for u in unif),
        "uniformizers_in_alpha": all(alpha_comp.contains(u) for u in unif),
        "residue_generator_in_alpha": alpha_comp.contains(res_class),
        "orders": {g: c.order for g, c in comps.items()},
    }


def power_class_of(c: LaurentElement, Q, p):
    """Class of c in L*/L*^p: (log of the leading coefficient mod p, w(c) mod p)."""
    w, lead = valuate(c)
    F = FiniteField.of_order(Q)
    g = F.primitive_element
    x = F.one()
    for j in range(Q - 1):
        if x == lead:
            break
        x = x * g
    else:
        raise AssertionError("leading coefficient not found")
    return (j % p,) + tuple(a % p for a in w)
