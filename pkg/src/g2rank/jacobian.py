"""Genus-2 Jacobian arithmetic on y^2 = g(x) in Mumford representation.

Degree-6 models with a rational square root s of the leading coefficient
use balanced divisors: (u, v, n) stands for the class of

    div(u, v) + n*inf_plus + (2 - deg u - n)*inf_minus - (inf_plus + inf_minus)

where inf_plus is the point at infinity with y/x^3 -> +s.  Without such an s
(conjugate points at infinity) only even deg u occurs and n = (2 - deg u)/2.
Degree-5 models use the classical Cantor representation with n = 0.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .algebra import (
    QQ,
    AlgebraError,
    GF,
    Poly,
    QuadraticExtension,
    discriminant,
    factorize,
    legendre,
    poly_xgcd,
)
from .models import WeierstrassModel


class JacobianError(ValueError):
    pass


class BadPrime(JacobianError):
    pass


class InfinityNotRational(JacobianError):
    def __init__(self, msg="infinity not rational"):
        super().__init__(msg)


def prime_guard() -> int:
    return int(os.environ.get("G2RANK_GUARD_PRIME_MAX", "1000"))


POINT_COUNT_GUARD = 10 ** 6


@dataclass(frozen=True)
class MumfordDivisor:
    u: Poly
    v: Poly
    n: int = 0

    def __eq__(self, other):
        return (
            isinstance(other, MumfordDivisor)
            and self.u.c == other.u.c
            and self.v.c == other.v.c
            and self.n == other.n
        )

    def __hash__(self):
        return hash((self.u.c, self.v.c, self.n))

    @property
    def degree(self) -> int:
        return self.u.degree

    def key(self) -> tuple:
        return (self.u.c, self.v.c, self.n)

    def coefficient_bits(self) -> int:
        bits = 0
        for a in self.u.c + self.v.c:
            if isinstance(a, Fraction):
                bits = max(bits, abs(a.numerator).bit_length(), a.denominator.bit_length())
        return bits

    def to_json(self) -> dict:
        return {"u": [_elt_str(a) for a in self.u.c], "v": [_elt_str(a) for a in self.v.c], "n": self.n}

    def __repr__(self):
        return f"({self.u}, {self.v}, n={self.n})"


def _elt_str(a) -> str:
    if isinstance(a, Fraction):
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
    return str(a)


def divisor_from_json(d: dict, K=QQ) -> MumfordDivisor:
    return MumfordDivisor(Poly([K(a) for a in d["u"]], K), Poly([K(a) for a in d["v"]], K), int(d["n"]))


class JacobianGroup:
    """Jac(C) for C: y^2 = g(x), deg g in {5, 6}, over a field K (char != 2)."""

    def __init__(self, g: Poly, s=None):
        K = g.K
        if K.characteristic == 2:
            raise JacobianError("characteristic 2 is not supported")
        if g.degree not in (5, 6):
            raise JacobianError(f"deg g = {g.degree}, need 5 or 6")
        if discriminant(g) == K.zero:
            raise JacobianError("g is not squarefree")
        self.K = K
        self.g = g
        self.s = None
        self.V = None
        if g.degree == 5:
            self.kind = "one_point"
        else:
            c = g.lc
            if s is None and K.is_square(c):
                s = K.sqrt(c)
            if s is not None:
                s = K(s)
                if K.mul(s, s) != c:
                    raise JacobianError("supplied square root does not square to lc(g)")
                self.kind = "split"
                self.s = s
                self.V = self._sqrt_part(g, s)
            else:
                self.kind = "inert"
        self._zero = Poly._make((), K)
        self._one = Poly._make((K.one,), K)

    # construction helpers ----------------------------------------------

    @classmethod
    def over_Q(cls, model: WeierstrassModel) -> "JacobianGroup":
        return cls(model.g(QQ))

    @classmethod
    def mod_p(cls, model: WeierstrassModel, p: int) -> "JacobianGroup":
        """Reduction of the simplified model mod p; the rational square root
        of c, when there is one, reduces to the s used mod p."""
        check_good_prime(model.g_coeffs, p)
        K = GF(p)
        r = _int_sqrt(model.c)
        return cls(Poly(model.g_coeffs, K), s=None if r is None else K(r))

    @staticmethod
    def _sqrt_part(g: Poly, s) -> Poly:
        """V with leading coefficient s and deg(g - V^2) <= 2."""
        K = g.K
        g5, g4, g3 = g[5], g[4], g[3]
        inv2s = K.inv(K.add(s, s))
        t2 = K.mul(g5, inv2s)
        t1 = K.mul(K.sub(g4, K.mul(t2, t2)), inv2s)
        t0 = K.mul(K.sub(g3, K.mul(K.add(t2, t2), t1)), inv2s)
        V = Poly([t0, t1, t2, s], K)
        assert (g - V * V).degree <= 2
        return V

    # basic elements ----------------------------------------------------

    def identity(self) -> MumfordDivisor:
        return MumfordDivisor(self._one, self._zero, 0 if self.kind == "one_point" else 1)

    def is_identity(self, D: MumfordDivisor) -> bool:
        return D.u.degree == 0 and D == self.identity()

    def is_valid(self, D: MumfordDivisor) -> bool:
        u, v = D.u, D.v
        if u.lc != self.K.one or v.degree >= u.degree or u.degree > 2:
            return False
        if ((self.g - v * v) % u).c:
            return False
        if self.kind == "split":
            return 0 <= D.n <= 2 - u.degree
        if self.kind == "inert":
            return u.degree % 2 == 0 and 2 * D.n == 2 - u.degree
        return D.n == 0

    def neg(self, D: MumfordDivisor) -> MumfordDivisor:
        v = -D.v
        if self.kind == "split":
            return MumfordDivisor(D.u, v, 2 - D.u.degree - D.n)
        return MumfordDivisor(D.u, v, D.n)

    def infinity_class_point(self) -> MumfordDivisor:
        """[inf_plus - inf_minus]."""
        if self.kind != "split":
            raise InfinityNotRational()
        return MumfordDivisor(self._one, self._zero, 2)

    def on_curve(self, x, y) -> bool:
        K = self.K
        return K.mul(y, y) == self.g(x)

    def embed_point(self, x, y) -> MumfordDivisor:
        """[P - inf_plus] (or [P - inf] on a degree-5 model)."""
        K = self.K
        x, y = K(x), K(y)
        if not self.on_curve(x, y):
            raise JacobianError(f"({x}, {y}) is not on the curve")
        if self.kind == "inert":
            raise InfinityNotRational()
        u = Poly._make((K.neg(x), K.one), K)
        v = Poly._make((y,) if y != K.zero else (), K)
        return MumfordDivisor(u, v, 0)

    # group law ---------------------------------------------------------

    def _compose(self, D1: MumfordDivisor, D2: MumfordDivisor):
        u1, v1, u2, v2 = D1.u, D1.v, D2.u, D2.v
        d1, e1, e2 = poly_xgcd(u1, u2)
        if d1.degree == 0:
            d = d1
            s1, s2, s3 = e1, e2, self._zero
        else:
            d, c1, c2 = poly_xgcd(d1, v1 + v2)
            s1, s2, s3 = c1 * e1, c1 * e2, c2
        u = (u1 * u2).exact_div(d * d)
        v = (s1 * u1 * v2 + s2 * u2 * v1 + s3 * (v1 * v2 + self.g)).exact_div(d) % u
        return u, v, d.degree

    def _weights(self, D: MumfordDivisor) -> tuple[int, int]:
        if self.kind == "one_point":
            return 0, 0
        return D.n, 2 - D.u.degree - D.n

    def add(self, D1: MumfordDivisor, D2: MumfordDivisor) -> MumfordDivisor:
        u, v, S = self._compose(D1, D2)
        if self.kind == "one_point":
            return self._reduce_odd(u, v)
        n1, m1 = self._weights(D1)
        n2, m2 = self._weights(D2)
        return self._reduce_even(u, v, n1 + n2 + S, m1 + m2 + S, 2)

    def _reduce_odd(self, u: Poly, v: Poly) -> MumfordDivisor:
        g = self.g
        while u.degree > 2:
            u = (g - v * v).exact_div(u).monic()
            v = (-v) % u
        return MumfordDivisor(u, v, 0)

    def _reduce_even(self, u: Poly, v: Poly, a: int, b: int, k: int) -> MumfordDivisor:
        # class = div(u, v) + a*inf_plus + b*inf_minus - k*(inf_plus + inf_minus)
        g, V = self.g, self.V
        for _ in range(8):
            du = u.degree
            n, m = a - k + 1, b - k + 1
            if du <= 2 and n >= 0 and m >= 0:
                return MumfordDivisor(u, v, n)
            if du >= 4 or self.kind == "inert":
                vs = v
            elif n < 0:
                vs = ((v + V) % u) - V
            else:
                vs = V + ((v - V) % u)
            N = g - vs * vs
            u2 = N.exact_div(u).monic()
            if self.kind == "inert":
                pole_p = pole_m = max(3, vs.degree)
            else:
                dp, dm = V - vs, V + vs
                if dp.is_zero():
                    pole_m = dm.degree
                    pole_p = N.degree - pole_m
                elif dm.is_zero():
                    pole_p = dp.degree
                    pole_m = N.degree - pole_p
                else:
                    pole_p, pole_m = dp.degree, dm.degree
                assert pole_p + pole_m == N.degree
            a += pole_p
            b += pole_m
            k += u2.degree
            u, v = u2, (-vs) % u2
        raise AssertionError("balanced reduction did not terminate")

    def sub(self, D1, D2):
        return self.add(D1, self.neg(D2))

    def double(self, D):
        return self.add(D, D)

    def mul(self, k: int, D: MumfordDivisor) -> MumfordDivisor:
        if k < 0:
            return self.neg(self.mul(-k, D))
        result = self.identity()
        if k == 0:
            return result
        for bit in bin(k)[2:]:
            result = self.add(result, result)
            if bit == "1":
                result = self.add(result, D)
        return result

    def reduce_mod(self, D: MumfordDivisor, target: "JacobianGroup") -> MumfordDivisor:
        """Image of a divisor over Q in the group ``target`` over F_p."""
        K = target.K
        try:
            u = Poly([K(a) for a in D.u.c], K)
            v = Poly([K(a) for a in D.v.c], K)
        except AlgebraError as e:
            raise BadPrime(str(e)) from e
        R = MumfordDivisor(u, v, D.n)
        return target.add(R, target.identity())


def simplify_point(model: WeierstrassModel, x, y):
    """(x, y) on y^2 + h y = f  ->  (x, 2y + h(x)) on Y^2 = 4f + h^2."""
    h = model.h
    hx = ((h[3] * x + h[2]) * x + h[1]) * x + h[0]
    return x, 2 * y + hx


def embed_model_point(J: JacobianGroup, model: WeierstrassModel, x, y) -> MumfordDivisor:
    return J.embed_point(*simplify_point(model, x, y))


def _int_sqrt(c: int) -> Optional[int]:
    if c <= 0:
        return None
    r = math.isqrt(c)
    return r if r * r == c else None


# --------------------------------------------------------------------------
# Reduction types and point counting
# --------------------------------------------------------------------------

def check_good_prime(g_int, p: int) -> None:
    """Raise BadPrime unless p is odd and g mod p keeps its degree and
    stays squarefree."""
    g = list(g_int)
    while g and g[-1] == 0:
        g.pop()
    if p == 2 or p < 2:
        raise BadPrime(f"bad prime {p}")
    if g[-1] % p == 0:
        raise BadPrime(f"bad prime {p}")
    gp = Poly(g, GF(p))
    if discriminant(gp) == 0:
        raise BadPrime(f"bad prime {p}")


def is_good_prime(g_int, p: int) -> bool:
    try:
        check_good_prime(g_int, p)
    except (BadPrime, AlgebraError):
        return False
    return True


def good_primes(g_int, count: int = 4, start: int = 3, exclude=()) -> list[int]:
    out = []
    p = start
    while len(out) < count:
        if all(p % q for q in range(2, int(p ** 0.5) + 1)) and p not in exclude and is_good_prime(g_int, p):
            out.append(p)
        p += 1 if p == 2 else 2
    return out


def _legendre_table(p: int) -> list[int]:
    t = [-1] * p
    t[0] = 0
    for y in range(1, (p + 1) // 2):
        t[y * y % p] = 1
    return t


def _points_at_infinity(g: list[int], p: int, k: int) -> int:
    if len(g) - 1 == 5:
        return 1
    if k % 2 == 0:
        return 2
    return 1 + legendre(g[-1], p)


def count_points_curve(g_int, p: int, k: int = 1, method: str = "python") -> int:
    """#C(F_{p^k}) for C: y^2 = g(x), points at infinity included."""
    g = list(g_int)
    while g and g[-1] == 0:
        g.pop()
    check_good_prime(g, p)
    if k not in (1, 2):
        raise JacobianError("only k in {1, 2} supported")
    if p ** k > POINT_COUNT_GUARD:
        raise JacobianError(f"p^k = {p ** k} exceeds the point-count guard")
    if method == "numpy":
        return _count_numpy(g, p, k)
    chi = _legendre_table(p)
    g = [a % p for a in g]
    total = _points_at_infinity(g, p, k)
    if k == 1:
        for x in range(p):
            acc = 0
            for a in reversed(g):
                acc = (acc * x + a) % p
            total += 1 + chi[acc]
        return total
    L = QuadraticExtension(p)
    r = L.r
    for x0 in range(p):
        for x1 in range(p):
            a0, a1 = 0, 0
            for c in reversed(g):
                a0, a1 = (a0 * x0 + r * a1 * x1 + c) % p, (a0 * x1 + a1 * x0) % p
            total += 1 + chi[(a0 * a0 - r * a1 * a1) % p]
    return total


def _count_numpy(g: list[int], p: int, k: int) -> int:
    chi = np.array(_legendre_table(p), dtype=np.int64)
    gm = [a % p for a in g]
    total = _points_at_infinity(gm, p, k)
    if k == 1:
        x = np.arange(p, dtype=np.int64)
        acc = np.zeros(p, dtype=np.int64)
        for a in reversed(gm):
            acc = (acc * x + a) % p
        return total + int(np.sum(1 + chi[acc]))
    r = QuadraticExtension(p).r
    x0, x1 = np.meshgrid(np.arange(p, dtype=np.int64), np.arange(p, dtype=np.int64), indexing="ij")
    x0, x1 = x0.ravel(), x1.ravel()
    a0 = np.zeros_like(x0)
    a1 = np.zeros_like(x0)
    for c in reversed(gm):
        a0, a1 = (a0 * x0 % p + r * (a1 * x1 % p) + c) % p, (a0 * x1 + a1 * x0) % p
    nrm = (a0 * a0 % p - r * (a1 * a1 % p)) % p
    return total + int(np.sum(1 + chi[nrm]))


def group_order(g_int, p: int) -> int:
    """#J(F_p) = (N1^2 + N2)/2 - p."""
    if p > prime_guard():
        raise JacobianError(f"p = {p} exceeds the prime guard {prime_guard()}")
    n1 = count_points_curve(g_int, p, 1)
    n2 = count_points_curve(g_int, p, 2)
    twice = n1 * n1 + n2 - 2 * p
    if twice % 2:
        raise AssertionError("point counts of inconsistent parity")
    order = twice // 2
    sq = math.sqrt(p)
    if not ((sq - 1) ** 4 - 1e-6 <= order <= (sq + 1) ** 4 + 1e-6):
        raise AssertionError(f"#J(F_{p}) = {order} violates the Weil bound")
    return order


def order_of(J: JacobianGroup, D: MumfordDivisor, group_size: int) -> int:
    """Exact order of D given the group order."""
    if not J.is_identity(J.mul(group_size, D)):
        raise AssertionError("group order does not annihilate the element")
    try:
        fac = factorize(group_size)
    except AlgebraError as e:
        raise JacobianError("order unresolved") from e
    n = group_size
    for q, e in fac.items():
        for _ in range(e):
            if n % q == 0 and J.is_identity(J.mul(n // q, D)):
                n //= q
            else:
                break
    return n


def divisor_from_model_mumford(J: JacobianGroup, model: WeierstrassModel, a, b, degree: int = 2) -> MumfordDivisor:
    """Class of a degree-``degree`` divisor given as (a(x), b(x)) on the
    original model y^2 + h y = f: the affine part is {a = 0, y = b} and the
    remaining deg - deg a points sit at the infinite point selected by the
    leading term of 2b + h (coefficient of x^3 equal to +s or -s)."""
    K = J.K
    a = Poly([K(c) for c in a], K)
    b = Poly([K(c) for c in b], K)
    if a.lc != K.one:
        raise JacobianError("a must be monic")
    Y = b * K(2) + Poly([K(c) for c in model.h], K)
    if ((J.g - Y * Y) % a).c:
        raise JacobianError("a does not divide (2b + h)^2 - g")
    k = degree - a.degree
    if k < 0:
        raise JacobianError("degree smaller than deg a")
    v = Y % a
    if k == 0:
        n = 0 if J.kind != "inert" else (2 - a.degree) // 2
    elif J.kind != "split":
        raise InfinityNotRational()
    elif Y.degree == 3 and Y.lc == J.s:
        n = k
    elif Y.degree == 3 and Y.lc == K.neg(J.s):
        n = 0
    else:
        raise JacobianError("cannot tell which point at infinity the divisor uses")
    if a.degree + k != 2:
        raise JacobianError("only degree-2 divisors are supported")
    return J.add(MumfordDivisor(a, v, n), J.identity())


LMFDB_440509 = WeierstrassModel((6, 9, 0, -5, -1, 1, 0), (1, 1, 0, 1), provenance="LMFDB 440509.a.440509.1")
LMFDB_440509_GENERATORS = (
    ((1,), (0, 0, 1)),
    ((1, 1), ()),
    ((2, 1), (-4, 0, 0, -1)),
    ((-2, 0, 1), (1,)),
)
