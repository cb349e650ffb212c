"""Explicit families: split curves C_{d,m}, gluing along 2-torsion, the d(u)
twist parametrization and Freeman-Satoh splittings."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import sympy

from .algebra import QQ, Poly, discriminant, iroot, is_rational_square, primes_up_to
from .elliptic import EllipticCurve, EllipticError, is_nontorsion, search_points
from .jacobian import BadPrime, group_order, is_good_prime
from .models import WeierstrassModel


class FamilyError(ValueError):
    pass


# --------------------------------------------------------------------------
# Split family y^2 = d^3 x^6 + m^3
# --------------------------------------------------------------------------

def frey_rank(p: int) -> Optional[int]:
    """Rank of y^2 = x^3 + p^3 where the criterion decides it."""
    if p % 4 == 3:
        return 1
    if p % 12 == 5:
        return 0
    return None


@dataclass(frozen=True)
class SplitFamilyMember:
    d: int
    m: int
    predicted_rank: Optional[int]

    @property
    def degenerate(self) -> bool:
        return self.d == self.m

    @property
    def curve(self) -> WeierstrassModel:
        return WeierstrassModel((self.m ** 3, 0, 0, 0, 0, 0, self.d ** 3), provenance=f"C_{{{self.d},{self.m}}}")

    @property
    def E_d(self) -> EllipticCurve:
        return EllipticCurve((self.d ** 3, 0, 0, 1))

    @property
    def E_m(self) -> EllipticCurve:
        return EllipticCurve((self.m ** 3, 0, 0, 1))

    @property
    def height(self) -> int:
        return max(self.d, self.m) ** 3

    def to_json(self) -> dict:
        return {"d": self.d, "m": self.m, "predicted_rank": self.predicted_rank,
                "degenerate": self.degenerate, "curve": self.curve.to_json()}


def split_primes(X: int) -> list[int]:
    return [p for p in primes_up_to(max(2, iroot(X, 3))) if p > 3 and p % 4 == 3]


def split_family(X: int) -> list[SplitFamilyMember]:
    """Ordered pairs (d, m) of primes > 3, both 3 mod 4 and <= X^(1/3).
    Pairs with d = m are included and flagged ``degenerate``."""
    if X < 343:
        raise FamilyError("X must be at least 343")
    ps = split_primes(X)
    return [SplitFamilyMember(d, m, frey_rank(d) + frey_rank(m)) for d in ps for m in ps]


def split_count_model(X: float) -> float:
    return 9 / 4 * X ** (2 / 3) / math.log(X) ** 2


def rank2_count(X: int) -> int:
    return sum(1 for s in split_family(X) if not s.degenerate)


def verify_split(member: SplitFamilyMember, primes) -> bool:
    g = member.curve.g_coeffs
    for p in primes:
        if (6 * member.d * member.m) % p == 0 or not is_good_prime(g, p):
            raise BadPrime(f"bad prime {p}")
        if group_order(g, p) != member.E_d.count_points(p) * member.E_m.count_points(p):
            return False
    return True


def split_good_primes(member: SplitFamilyMember, count: int = 5, start: int = 5) -> list[int]:
    out = []
    for p in sympy.primerange(start, 10 ** 4):
        if (6 * member.d * member.m) % p and is_good_prime(member.curve.g_coeffs, p):
            out.append(int(p))
            if len(out) == count:
                break
    return out


# --------------------------------------------------------------------------
# Gluing
# --------------------------------------------------------------------------

def _disc_from_roots(r) -> Fraction:
    return ((r[0] - r[1]) * (r[1] - r[2]) * (r[2] - r[0])) ** 2


def cubic_from_roots(r) -> tuple:
    """Coefficients (c0, c1, c2, 1) of prod (x - r_i)."""
    p = Poly([1], QQ)
    for a in r:
        p = p * Poly([-Fraction(a), 1], QQ)
    return tuple(p.c)


def rational_roots_of_cubic(coeffs) -> tuple:
    """Roots of a monic rational cubic with three distinct rational roots."""
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(str(Fraction(c))) * x ** i for i, c in enumerate(coeffs))
    roots = sympy.Poly(expr, x).ground_roots()
    out = []
    for r, k in roots.items():
        out += [Fraction(int(r.p), int(r.q))] * k
    if len(out) != 3 or len(set(out)) != 3:
        raise FamilyError("cubic does not have three distinct rational roots")
    return tuple(sorted(out))


@dataclass(frozen=True)
class GlueSpec:
    roots_f: tuple
    roots_g: tuple
    a1: Fraction
    a2: Fraction
    b1: Fraction
    b2: Fraction
    A: Fraction
    B: Fraction
    sextic: tuple  # lowest degree first
    warnings: tuple = field(default=())

    def integral_model(self) -> WeierstrassModel:
        """y^2 = L^2 * sextic with L clearing denominators."""
        L = 1
        for c in self.sextic:
            L = L * c.denominator // math.gcd(L, c.denominator)
        return WeierstrassModel(tuple(int(c * L * L) for c in self.sextic))

    def to_json(self) -> dict:
        s = lambda a: str(Fraction(a))
        return {
            "roots_f": [s(a) for a in self.roots_f], "roots_g": [s(a) for a in self.roots_g],
            "a1": s(self.a1), "a2": s(self.a2), "b1": s(self.b1), "b2": s(self.b2),
            "A": s(self.A), "B": s(self.B), "sextic": [s(a) for a in self.sextic],
            "warnings": list(self.warnings),
        }


def glue(roots_f, roots_g) -> GlueSpec:
    al = tuple(Fraction(a) for a in roots_f)
    be = tuple(Fraction(b) for b in roots_g)
    if len(al) != 3 or len(be) != 3 or len(set(al)) != 3 or len(set(be)) != 3:
        raise FamilyError("coincident roots")
    a1 = sum((al[(i + 2) % 3] - al[(i + 1) % 3]) ** 2 / (be[(i + 2) % 3] - be[(i + 1) % 3]) for i in range(3))
    b1 = sum((be[(i + 2) % 3] - be[(i + 1) % 3]) ** 2 / (al[(i + 2) % 3] - al[(i + 1) % 3]) for i in range(3))
    a2 = sum(al[i] * (be[(i + 2) % 3] - be[(i + 1) % 3]) for i in range(3))
    b2 = sum(be[i] * (al[(i + 2) % 3] - al[(i + 1) % 3]) for i in range(3))
    if a2 == 0 or b2 == 0:
        raise FamilyError("glue degenerate")
    A = _disc_from_roots(be) * a1 / a2
    B = _disc_from_roots(al) * b1 / b2
    prod = Poly([-1], QQ)
    for i in range(3):
        quad = A * (al[(i + 1) % 3] - al[i]) * (al[i] - al[(i - 1) % 3])
        const = B * (be[(i + 1) % 3] - be[i]) * (be[i] - be[(i + 2) % 3])
        prod = prod * Poly([const, 0, quad], QQ)
    if prod.degree != 6 or discriminant(prod) == 0:
        raise FamilyError("glue(f, g) is not a separable sextic")
    warnings = ()
    jf = EllipticCurve(cubic_from_roots(al)).j_invariant()
    jg = EllipticCurve(cubic_from_roots(be)).j_invariant()
    if jf == jg:
        warnings = ("factors have equal j-invariant; the 2-torsion identification may come from an isomorphism",)
    return GlueSpec(al, be, a1, a2, b1, b2, A, B, tuple(prod.coeffs(7)), warnings)


def glue_twist_identity(roots_f, roots_g, d: int) -> bool:
    base = glue(roots_f, roots_g).sextic
    tw = glue([d * Fraction(a) for a in roots_f], [d * Fraction(b) for b in roots_g]).sextic
    return all(t == Fraction(d) ** 21 * b for t, b in zip(tw, base))


def glue_local_check(spec: GlueSpec, primes) -> dict:
    """{p: (#J(F_p), #E_f(F_p) * #E_g(F_p))} at primes good for all three."""
    model = spec.integral_model()
    Ef, Eg = _integral_cubic(spec.roots_f), _integral_cubic(spec.roots_g)
    out = {}
    for p in primes:
        if not is_good_prime(model.g_coeffs, p):
            raise BadPrime(f"bad prime {p}")
        out[p] = (group_order(model.g_coeffs, p), Ef.count_points(p) * Eg.count_points(p))
    return out


def _integral_cubic(roots) -> EllipticCurve:
    # y^2 = prod (x - r_i) with rational roots: scale x by the common denominator
    L = 1
    for r in roots:
        L = L * Fraction(r).denominator // math.gcd(L, Fraction(r).denominator)
    return EllipticCurve(cubic_from_roots([Fraction(r) * L for r in roots]))


# --------------------------------------------------------------------------
# Twists with both factors of positive rank
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TwistFamilyPoint:
    lam1: Fraction
    lam2: Fraction
    u: Fraction
    d: Fraction


def twist_family_d(lam1, lam2, u) -> Fraction:
    lam1, lam2, u = Fraction(lam1), Fraction(lam2), Fraction(u)
    if lam1 == lam2:
        raise FamilyError("lambda1 = lambda2 gives the zero family")
    u2 = u * u
    return (lam1 - lam2) * (u2 - 1) * (1 - lam2 + (lam1 - 1) * u2) * (lam1 * u2 - lam2)


def legendre_twist_model(lam, d) -> EllipticCurve:
    """Integral monic model of d y^2 = x (x - 1)(x - lam)."""
    d, lam = Fraction(d), Fraction(lam)
    return EllipticCurve((Fraction(0), d * d * lam, -d * (1 + lam), Fraction(1))).integral_monic_model()


def twist_witness(lam1, lam2, u, bound: int = 200) -> dict:
    """Best-effort search for non-torsion points on both twists F^(d), G^(d)."""
    d = twist_family_d(lam1, lam2, u)
    if d == 0:
        raise FamilyError("u is in the degeneracy set (d(u) = 0)")
    out = {"point": TwistFamilyPoint(Fraction(lam1), Fraction(lam2), Fraction(u), d), "factors": []}
    for lam in (lam1, lam2):
        E = legendre_twist_model(lam, d)
        status, witness = "unverified", None
        for P in search_points(E, bound):
            if P[1] != 0 and is_nontorsion(E, P):
                status, witness = "positive_rank", P
                break
        out["factors"].append({"lambda": str(Fraction(lam)), "model": E.to_json(), "status": status,
                               "witness": None if witness is None else [str(witness[0]), str(witness[1])]})
    return out


# --------------------------------------------------------------------------
# Freeman-Satoh
# --------------------------------------------------------------------------

FS_M = {"Deg5": 4, "Deg6": 3}


def freeman_satoh_cubic(form: str, c) -> tuple:
    c = Fraction(c)
    if form == "Deg5":
        return (-(c + 2), 3 * c - 10, -(3 * c - 10), c + 2)
    if form == "Deg6":
        return (-(c - 2), 3 * c + 30, -(3 * c - 30), c + 2)
    raise FamilyError(f"unknown form {form}")


@dataclass(frozen=True)
class FreemanSatohCurve:
    form: str
    a: Fraction
    b: Fraction
    c: Optional[Fraction]
    E: Optional[EllipticCurve]
    integral: Optional[EllipticCurve]
    m: int
    status: str


def freeman_satoh_E(form: str, a, b) -> FreemanSatohCurve:
    if form not in FS_M:
        raise FamilyError(f"unknown form {form}")
    a, b = Fraction(a), Fraction(b)
    if b == 0:
        raise FamilyError("b must be nonzero")
    r = is_rational_square(b)
    if r is None:
        return FreemanSatohCurve(form, a, b, None, None, None, FS_M[form], "c irrational; split only over extension")
    c = a / r
    try:
        E = EllipticCurve(freeman_satoh_cubic(form, c))
    except EllipticError as e:
        raise FamilyError(f"E(c) is singular at c = {c}") from e
    return FreemanSatohCurve(form, a, b, c, E, E.integral_monic_model(), FS_M[form], "exact")


def freeman_satoh_singular_set(form: str) -> set:
    """Rational c where E(c) fails to be a separable cubic."""
    cs = sympy.Symbol("c")
    x = sympy.Symbol("x")
    coeffs = freeman_satoh_cubic(form, 0)
    # rebuild symbolically: coefficients are affine in c
    lin = [sympy.Rational(str(a1 - a0)) * cs + sympy.Rational(str(a0))
           for a0, a1 in zip(coeffs, freeman_satoh_cubic(form, 1))]
    poly = sum(ci * x ** i for i, ci in enumerate(lin))
    bad = sympy.discriminant(poly, x) * lin[3]
    return {Fraction(int(r.p), int(r.q)) for r in sympy.Poly(bad, cs).ground_roots()}


# --------------------------------------------------------------------------
# Square twists
# --------------------------------------------------------------------------

def rank_doubling_check(E: EllipticCurve, sextic, d_list, primes) -> list[dict]:
    """Local check #J_{C^(d)}(F_p) = #E^(d)(F_p)^2 for C: y^2 = sextic with
    Jac(C) ~ E^2; bad primes are skipped with a note."""
    rows = []
    for d in d_list:
        model = WeierstrassModel(tuple(d * int(a) for a in sextic))
        Ed = E.twist(d)
        for p in primes:
            row = {"d": d, "p": p}
            if d % p == 0 or not is_good_prime(model.g_coeffs, p):
                row.update(status="skipped", note="bad prime")
            else:
                try:
                    lhs, rhs = group_order(model.g_coeffs, p), Ed.count_points(p) ** 2
                except EllipticError:
                    row.update(status="skipped", note="bad prime for E")
                    rows.append(row)
                    continue
                row.update(status="ok" if lhs == rhs else "mismatch", jac=lhs, ell_squared=rhs)
            rows.append(row)
    return rows


CONGRUENT_SEXTIC = (6, 0, -9, 0, -9, 0, 6)
CONGRUENT_E = EllipticCurve((0, -1, 0, 1))
