"""The finite-field tower F = F_q, L = F(mu_p), M = F(mu_{p^n}) and its power-class groups.

For a finite field K the group K*/K*^{p^n} is cyclic of order p^e with
e = min(n, v_p(|K*|)); the class of a fixed primitive element is the generator
and the Frobenius x -> x^q acts as multiplication by q.  Everything here is
integer arithmetic on field orders, exponents and p-valuations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from sympy import factorint

from .core import FiniteModule, Modulus, UnitCharacter, eigenmodule, enumerate_characters, mult_order, vp
from .errors import BadCharacteristic, HypothesisViolated, InvalidInstance
from .lattice import Ambient, kernel_gens


def _check_prime_power(q):
    f = factorint(q)
    if q < 2 or len(f) != 1:
        raise InvalidInstance(f"q={q} is not a prime power")
    return int(next(iter(f)))


@dataclass(frozen=True)
class TowerData:
    q: int
    mod: Modulus
    s: int
    deg_ML: int
    d: int
    c: int
    alpha: UnitCharacter
    theta: UnitCharacter

    @property
    def p(self):
        return self.mod.p

    @property
    def n(self):
        return self.mod.n

    @property
    def deg_MF(self):
        return self.s * self.deg_ML

    def field_order(self, level):
        return self.q ** self.degree(level)

    def degree(self, level):
        if level == "F":
            return 1
        if level == "L":
            return self.s
        if level == "M":
            return self.deg_MF
        if isinstance(level, int) and level >= 1:
            return level
        raise ValueError(f"unknown level {level!r}")

    def to_json(self):
        return {
            "q": self.q, "p": self.p, "n": self.n, "s": self.s, "deg_ML": self.deg_ML,
            "deg_MF": self.deg_MF, "d": self.d, "c": self.c,
            "alpha": self.alpha.gamma, "alpha_order": mult_order(self.alpha.gamma, self.mod.value),
            "theta": self.theta.gamma, "theta_order": mult_order(self.theta.gamma, self.mod.value),
        }


def build_tower(q, p, n):
    """Degrees and cyclotomic characters of F_q within F_q(mu_{p^n})."""
    mod = Modulus(p, n)
    if q % p == 0:
        raise BadCharacteristic(f"p={p} divides q={q}")
    _check_prime_power(q)
    N = mod.value
    s = mult_order(q, p)
    d = vp(q ** s - 1, p)
    c = min(d, n)
    # direct: the Frobenius of L acts on mu_{p^n} through q^s
    deg_ML = mult_order(pow(q, s, N), N)
    if deg_ML != p ** (n - c):
        raise AssertionError(f"[M:L]={deg_ML} differs from p^(n-c)={p ** (n - c)}")
    order = s * deg_ML
    alpha = UnitCharacter(N, order, q % N)
    theta = UnitCharacter(N, order, pow(q, p ** (n - 1), N))
    return TowerData(q, mod, s, deg_ML, d, c, alpha, theta)


def degree_check(q, p, n):
    """Compare [M:L] from the order of q mod p^n with p^(n-c).  Returns (direct, formula)."""
    N = p ** n
    s = mult_order(q, p)
    direct = mult_order(q, N) // s
    c = min(vp(q ** s - 1, p), n)
    return direct, p ** (n - c)


@dataclass(frozen=True)
class PowerClassGroup:
    level: object
    field_order: int
    p: int
    n: int
    e: int
    frobenius_multiplier: int

    @property
    def order(self):
        return self.p ** self.e

    @property
    def modulus(self):
        return self.p ** self.e

    def class_of_power(self, j):
        """Class of g^j for the fixed primitive element g."""
        return j % self.modulus

    def to_json(self):
        return {
            "level": str(self.level), "field_order": self.field_order, "e": self.e,
            "order": self.order, "frobenius_multiplier": self.frobenius_multiplier,
        }


def class_group_of(Q, p, n, frob=None):
    """K*/K*^{p^n} for K = F_Q; `frob` is the size of the base field of the acting Frobenius."""
    e = min(n, vp(Q - 1, p)) if (Q - 1) % p == 0 else 0
    frob = Q if frob is None else frob
    return PowerClassGroup(Q, Q, p, n, e, frob % p ** e)


def power_class_group(tower: TowerData, level):
    Q = tower.field_order(level)
    e = min(tower.n, vp(Q - 1, tower.p))
    return PowerClassGroup(level, Q, tower.p, tower.n, e, tower.q % tower.p ** e)


def _fixed_order(pc: PowerClassGroup):
    m = pc.modulus
    return math.gcd(pc.frobenius_multiplier - 1, m) if m > 1 else 1


def inclusion_map(tower: TowerData, low, high):
    """Image of the generator class under F_{q^a}* -> F_{q^b}*: a primitive element of
    the small field is g^((Q_high - 1)/(Q_low - 1)) for g primitive in the large one."""
    Ql, Qh = tower.field_order(low), tower.field_order(high)
    if (Qh - 1) % (Ql - 1):
        raise InvalidInstance("not a subfield")
    return (Qh - 1) // (Ql - 1)


def descent_iso_check(tower: TowerData):
    """F*/F*^{p^n} -> (K*/K*^{p^n})^{G(K/F)} for K = L and K = M."""
    src = power_class_group(tower, "F")
    report = {"F_order": src.order}
    ok = True
    for level in ("L", "M"):
        tgt = power_class_group(tower, level)
        m = tgt.modulus
        img = inclusion_map(tower, "F", level) % m
        well_defined = (src.order * img) % m == 0
        img_order = m // math.gcd(img, m)
        injective = img_order == src.order
        fixed = (tower.q - 1) * img % m == 0
        fixed_order = _fixed_order(tgt)
        bijective = well_defined and injective and fixed and img_order == fixed_order
        report[level] = {
            "target_order": tgt.order, "fixed_order": fixed_order, "image_order": img_order,
            "image_of_generator": img, "bijective": bijective,
        }
        ok &= bijective
    report["pass"] = ok
    return report


def cyclotomic_characters(tower: TowerData):
    """alpha(Frob) = q, theta = alpha^{p^{n-1}}; checks the restrictions of theta."""
    N = tower.mod.value
    a, t = tower.alpha, tower.theta
    # G(M/L) is generated by Frob^s; the prime-to-p part H by Frob^{[M:L]}
    p_part_trivial = t(tower.s) == 1 % N
    on_H = t(tower.deg_ML) == a(tower.deg_ML)
    theta_order = mult_order(t.gamma, N)
    return {
        "alpha": a.gamma, "theta": t.gamma,
        "alpha_order": mult_order(a.gamma, N), "theta_order": theta_order,
        "theta_trivial_on_p_part": p_part_trivial,
        "theta_equals_alpha_on_H": on_H,
        "theta_order_divides_s": tower.s % theta_order == 0,
        "pass": p_part_trivial and on_H and tower.s % theta_order == 0,
    }


def class_module(pc: PowerClassGroup, acting_order):
    m = pc.modulus
    return FiniteModule((m,), [[pc.frobenius_multiplier % m]], acting_order)


def eigencomponent(tower: TowerData, level, gamma):
    """{x : Frob.x = gamma x} in the class group at `level`, as (order, generators)."""
    pc = power_class_group(tower, level)
    m = pc.modulus
    if m == 1:
        return 1, []
    gens = kernel_gens([[(pc.frobenius_multiplier - gamma) % m]], (m,), (m,))
    return Ambient((m,)).span_order(gens), gens


def eigen_split_report(tower: TowerData, level="L"):
    """Orders of every H-eigencomponent; only theta (= alpha on H) may be nonzero."""
    pc = power_class_group(tower, level)
    chars = enumerate_characters(tower.mod, tower.s)
    orders = {c.gamma: eigencomponent(tower, level, c.gamma)[0] for c in chars}
    theta = tower.theta.gamma
    ok = orders.get(theta) == pc.order and all(o == 1 for g, o in orders.items() if g != theta)
    return {"orders": orders, "theta": theta, "class_order": pc.order, "pass": ok}


def cor25_surjectivity(q, p, n):
    """(L*/L*^{p^n})^(theta) -> (L*/L*^p)^(theta') by reducing classes."""
    tn = build_tower(q, p, n)
    t1 = build_tower(q, p, 1)
    theta1 = t1.theta.gamma
    same_twist = tn.theta.gamma % p == theta1 % p
    src_order, src_gens = eigencomponent(tn, "L", tn.theta.gamma)
    tgt_order, tgt_gens = eigencomponent(t1, "L", theta1)
    m1 = power_class_group(t1, "L").modulus
    imgs = [(g[0] % m1,) for g in src_gens]
    img_order = Ambient((m1,)).span_order(imgs) if m1 > 1 else 1
    inside = all(eigenmodule(class_module(power_class_group(t1, "L"), t1.deg_MF), theta1).contains(x)
                 for x in imgs) if m1 > 1 else True
    ok = same_twist and inside and img_order == tgt_order
    return {
        "source_order": src_order, "target_order": tgt_order, "image_order": img_order,
        "theta": tn.theta.gamma, "theta_prime": theta1, "twists_agree_mod_p": same_twist,
        "surjective": ok,
    }


def pth_power_degree(Q, j, power):
    """Least t with g^j a `power`-th power in F_{Q^t}* (g primitive in F_Q), by field orders.

    In F_{Q^t}, g = h^((Q^t - 1)/(Q - 1)) for a primitive h, and h^x is a
    `power`-th power iff gcd(power, Q^t - 1) divides x.
    """
    t = 1
    while True:
        Qt = Q ** t
        x = j * ((Qt - 1) // (Q - 1))
        if x % math.gcd(power, Qt - 1) == 0:
            return t
        t += 1
        if t > power * 64:
            raise AssertionError("no splitting degree found")


def albert_classify(tower: TowerData, j):
    """Is the class of m = g_M^j in the alpha-eigencomponent of M*/M*^{p^n}?

    Cross-checked against field orders: T = M(m^{1/p^n}), S the p-part subextension
    of T/F, and T = S.M.
    """
    if tower.deg_ML != 1:
        raise HypothesisViolated("the construction needs M = L")
    pc = power_class_group(tower, "M")
    m = pc.modulus
    cls = j % m
    eigen = (tower.q - tower.alpha.gamma) * cls % m == 0
    QM = pc.field_order
    t = pth_power_degree(QM, j, tower.p ** tower.n)
    T = tower.deg_MF * t
    p_part = tower.p ** vp(T, tower.p) if T % tower.p == 0 else 1
    S = p_part
    SM = math.lcm(S, tower.deg_MF)
    descends = SM == T and t == m // math.gcd(cls, m)
    return {
        "class": cls, "class_order": m // math.gcd(cls, m), "eigen": eigen,
        "T_degree_over_F": T, "S_degree_over_F": S, "SM_degree_over_F": SM,
        "T_order": tower.q ** T, "descends": descends, "agree": eigen == descends,
    }


def kummer_correspondence(tower: TowerData, u, base="F"):
    """U = <u> inside F*/F*^{p^n} (or L*/L*^{p^n}); K = M(U^{1/p^n}) by field orders.

    The conjugation action of G(M/F) on the cyclic G(K/M) is trivial for finite
    fields; Kummer theory predicts it to be alpha times the inverse of the
    character of U, reduced mod |U|.
    """
    pc = power_class_group(tower, base)
    m = pc.modulus
    U_order = m // math.gcd(u % m, m) if m > 1 else 1
    Qb = pc.field_order
    # b = g_base^u seen inside M
    img = inclusion_map(tower, base, "M")
    QM = tower.field_order("M")
    KM = pth_power_degree(QM, u * img, tower.p ** tower.n)
    U_char = 1 if base == "F" else pc.frobenius_multiplier
    predicted = tower.alpha.gamma * pow(U_char, -1, U_order) % U_order if U_order > 1 else 0
    conjugation = 1 % U_order
    return {
        "base": base, "base_field_order": Qb, "U_order": U_order, "K_degree_over_M": KM,
        "K_order": QM ** KM, "degree_matches": KM == U_order,
        "alpha": tower.alpha.gamma, "U_character": U_char,
        "predicted_multiplier": predicted, "conjugation_multiplier": conjugation,
        "action_matches": predicted == conjugation,
        "pass": KM == U_order and predicted == conjugation,
    }


def kummer_kernel(Q, p, j):
    """Kernel of L*/L*^p -> K*/K*^p for K = L(c^{1/p}), c = g^j of order p (or trivial)."""
    pc = class_group_of(Q, p, 1)
    m = pc.modulus
    if m == 1:
        raise InvalidInstance("L*/L*^p is trivial; no class of order p")
    cls = j % m
    t = pth_power_degree(Q, j, p)
    mult = ((Q ** t - 1) // (Q - 1)) % p
    kernel = [x for x in range(m) if x * mult % p == 0]
    expected = sorted({cls * k % m for k in range(m)})
    return {
        "K_degree_over_L": t, "K_order": Q ** t, "map_multiplier": mult,
        "kernel": kernel, "generated_by_c": expected, "pass": kernel == expected,
    }


def th27_check(tower: TowerData):
    """|(L*/L*^{p^n})^(theta)| against |X^(theta alpha^{-1})|.

    X is the Galois group of the maximal exponent-p^n Kummer extension of M, i.e.
    Z/p^n, on which G(M/F) acts trivially by conjugation.
    """
    lhs, _ = eigencomponent(tower, "L", tower.theta.gamma)
    N = tower.mod.value
    X = FiniteModule((N,), [[1]], tower.deg_MF)
    gamma = tower.theta.gamma * pow(tower.alpha.gamma, -1, N) % N
    rhs = eigenmodule(X, gamma).order
    return {"L_theta_order": lhs, "X_order": rhs, "pass": lhs == rhs}


def prime_powers_below(bound):
    out = []
    for q in range(2, bound):
        if len(factorint(q)) == 1:
            out.append(q)
    return out
