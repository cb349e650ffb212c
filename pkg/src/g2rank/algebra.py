"""Exact arithmetic: coefficient fields, dense univariate polynomials and
the integer predicates used everywhere else.

Fields are small objects exposing ``add/sub/mul/neg/inv`` on raw element
values (``int`` for F_p, ``Fraction`` for Q, ``(a, b)`` pairs for F_{p^2}),
so polynomial code can stay generic without per-element wrapper objects.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

from sympy import integer_nthroot


class AlgebraError(ValueError):
    pass


# --------------------------------------------------------------------------
# Integer predicates
# --------------------------------------------------------------------------

def is_square(n: int) -> Optional[int]:
    """Nonnegative square root of ``n`` if it is a perfect square, else None."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def is_rational_square(q) -> Optional[Fraction]:
    q = Fraction(q)
    a, b = is_square(q.numerator), is_square(q.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, exactly."""
    if n < 0:
        raise AlgebraError("negative radicand")
    return int(integer_nthroot(n, k)[0])


def primes_up_to(X: int) -> list[int]:
    """Sorted primes <= X (sieve of Eratosthenes)."""
    if X < 2:
        return []
    sieve = bytearray([1]) * (X + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(X) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, X + 1, i)))
    return [i for i in range(X + 1) if sieve[i]]


TRIAL_LIMIT = 10 ** 6


@lru_cache(maxsize=1)
def _trial_primes() -> tuple[int, ...]:
    return tuple(primes_up_to(TRIAL_LIMIT))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    # deterministic Miller-Rabin for n < 3.3e24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_squarefree(n: int) -> bool:
    """True iff no square of a prime divides |n|.

    Trial division by primes up to 10**6; a leftover cofactor that is not
    prime, not a perfect power and too large to rule out raises rather than
    guess.
    """
    if n == 0:
        raise AlgebraError("is_squarefree(0) is undefined")
    n = abs(n)
    if n < 4:
        return True
    for p in _trial_primes():
        if p * p > n:
            return True
        if n % p == 0:
            n //= p
            if n % p == 0:
                return False
    # every prime factor of n now exceeds TRIAL_LIMIT
    if is_prime(n):
        return True
    for k in range(2, n.bit_length() + 1):
        r = iroot(n, k)
        if r < TRIAL_LIMIT:
            break
        if r ** k == n:
            return False
    if n < TRIAL_LIMIT ** 3:
        # a composite with all factors > 10^6 and below 10^18 is a product
        # of exactly two primes; equal ones were caught by the power check
        return True
    raise AlgebraError(f"squarefreeness of {n} needs factoring beyond the trial bound")


def factorize(n: int, limit: int = TRIAL_LIMIT) -> dict[int, int]:
    """Prime factorization by trial division; raises if not complete."""
    n = abs(n)
    out: dict[int, int] = {}
    if n == 0:
        raise AlgebraError("cannot factor 0")
    for p in _trial_primes():
        if p > limit or p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n > 1:
        if n <= limit * limit or is_prime(n):
            out[n] = out.get(n, 0) + 1
        else:
            raise AlgebraError(f"could not factor cofactor {n}")
    return out


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod_prime(a: int, p: int) -> Optional[int]:
    """A square root of a modulo an odd prime p (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


# --------------------------------------------------------------------------
# Coefficient domains
# --------------------------------------------------------------------------

class IntegerRing:
    """Z, with exact division. Used for subresultant sequences."""

    is_field = False
    characteristic = 0
    zero = 0
    one = 1

    def __call__(self, x):
        x = Fraction(x)
        if x.denominator != 1:
            raise AlgebraError(f"{x} is not an integer")
        return x.numerator

    add = staticmethod(lambda a, b: a + b)
    sub = staticmethod(lambda a, b: a - b)
    mul = staticmethod(lambda a, b: a * b)
    neg = staticmethod(lambda a: -a)

    @staticmethod
    def exquo(a, b):
        q, r = divmod(a, b)
        if r:
            raise AlgebraError("inexact integer division")
        return q

    def __repr__(self):
        return "ZZ"


class RationalField:
    is_field = True
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x):
        if isinstance(x, str):
            return Fraction(x)
        return Fraction(x)

    add = staticmethod(lambda a, b: a + b)
    sub = staticmethod(lambda a, b: a - b)
    mul = staticmethod(lambda a, b: a * b)
    neg = staticmethod(lambda a: -a)

    @staticmethod
    def inv(a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / a

    @staticmethod
    def exquo(a, b):
        return a / b

    @staticmethod
    def is_square(a) -> bool:
        return is_rational_square(a) is not None

    @staticmethod
    def sqrt(a):
        r = is_rational_square(a)
        if r is None:
            raise AlgebraError(f"{a} is not a square in Q")
        return r

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    """F_p with elements stored as canonical residues in [0, p)."""

    is_field = True
    zero = 0
    one = 1

    def __init__(self, p: int):
        p = int(p)
        if not is_prime(p):
            raise AlgebraError(f"{p} is not prime")
        self.p = p
        self.characteristic = p

    def __call__(self, x):
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise AlgebraError(f"denominator of {x} divisible by {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, str):
            return self(Fraction(x))
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 in F_{self.p}")
        return pow(a, -1, self.p)

    def exquo(self, a, b):
        return a * self.inv(b) % self.p

    def is_square(self, a) -> bool:
        return legendre(a, self.p) >= 0

    def sqrt(self, a):
        r = sqrt_mod_prime(a, self.p)
        if r is None:
            raise AlgebraError(f"{a} is not a square mod {self.p}")
        return r

    def elements(self):
        return range(self.p)

    def random(self, rng: random.Random):
        return rng.randrange(self.p)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


class QuadraticExtension:
    """F_{p^2} = F_p[w]/(w^2 - r) for a fixed nonresidue r; elements (a, b)."""

    is_field = True

    def __init__(self, p: int):
        if p == 2:
            raise AlgebraError("characteristic 2 not supported")
        self.base = PrimeField(p)
        self.p = p
        self.characteristic = p
        self.r = next(r for r in range(2, p) if legendre(r, p) == -1)
        self.zero = (0, 0)
        self.one = (1, 0)
        self.w = (0, 1)

    def __call__(self, x):
        if isinstance(x, tuple):
            return (x[0] % self.p, x[1] % self.p)
        return (self.base(x), 0)

    def add(self, a, b):
        p = self.p
        return ((a[0] + b[0]) % p, (a[1] + b[1]) % p)

    def sub(self, a, b):
        p = self.p
        return ((a[0] - b[0]) % p, (a[1] - b[1]) % p)

    def neg(self, a):
        return (-a[0] % self.p, -a[1] % self.p)

    def mul(self, a, b):
        p = self.p
        return ((a[0] * b[0] + self.r * a[1] * b[1]) % p, (a[0] * b[1] + a[1] * b[0]) % p)

    def norm(self, a) -> int:
        return (a[0] * a[0] - self.r * a[1] * a[1]) % self.p

    def inv(self, a):
        n = self.norm(a)
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in F_p^2")
        ni = pow(n, -1, self.p)
        return (a[0] * ni % self.p, -a[1] * ni % self.p)

    def exquo(self, a, b):
        return self.mul(a, self.inv(b))

    def frobenius(self, a):
        return (a[0], -a[1] % self.p)

    def is_square(self, a) -> bool:
        # every element of F_p is a square in F_p^2; in general use the norm
        return legendre(self.norm(a), self.p) >= 0

    def sqrt(self, a):
        for x in self.elements():
            if self.mul(x, x) == a:
                return x
        raise AlgebraError(f"{a} is not a square in F_{self.p}^2")

    def elements(self):
        p = self.p
        return ((a, b) for a in range(p) for b in range(p))

    def __repr__(self):
        return f"GF({self.p}^2)"

    def __eq__(self, other):
        return isinstance(other, QuadraticExtension) and other.p == self.p

    def __hash__(self):
        return hash(("GF2", self.p))


ZZ = IntegerRing()
QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


# --------------------------------------------------------------------------
# Dense polynomials
# --------------------------------------------------------------------------

def _trim(c: list, zero) -> tuple:
    n = len(c)
    while n and c[n - 1] == zero:
        n -= 1
    return tuple(c[:n])


class Poly:
    """Dense univariate polynomial, coefficients lowest degree first.

    The zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("c", "K")

    def __init__(self, coeffs: Iterable, K=QQ, _raw: bool = False):
        if _raw:
            self.c = coeffs
        else:
            self.c = _trim([K(a) for a in coeffs], K.zero)
        self.K = K

    @classmethod
    def _make(cls, c: tuple, K) -> "Poly":
        p = object.__new__(cls)
        p.c = c
        p.K = K
        return p

    @classmethod
    def x(cls, K=QQ) -> "Poly":
        return cls._make((K.zero, K.one), K)

    @classmethod
    def const(cls, a, K=QQ) -> "Poly":
        a = K(a)
        return cls._make(() if a == K.zero else (a,), K)

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    @property
    def lc(self):
        return self.c[-1] if self.c else self.K.zero

    def __getitem__(self, i):
        return self.c[i] if 0 <= i < len(self.c) else self.K.zero

    def coeffs(self, n: Optional[int] = None) -> list:
        """Coefficient list padded with zeros to length n."""
        out = list(self.c)
        if n is not None:
            out += [self.K.zero] * (n - len(out))
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.c == other.c
        if other == 0:
            return not self.c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            a = self.c[i]
            if a == self.K.zero:
                continue
            mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mon and a == self.K.one:
                terms.append(mon)
            else:
                terms.append(f"{a}{'*' + mon if mon else ''}")
        return " + ".join(terms)

    # ring operations -----------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(other, self.K)

    def __add__(self, other):
        other = self._coerce(other)
        K, a, b = self.K, self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for i, bi in enumerate(b):
            c[i] = K.add(c[i], bi)
        return Poly._make(_trim(c, K.zero), K)

    __radd__ = __add__

    def __neg__(self):
        K = self.K
        return Poly._make(tuple(K.neg(a) for a in self.c), K)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        K = self.K
        if not isinstance(other, Poly):
            s = K(other)
            if s == K.zero:
                return Poly._make((), K)
            return Poly._make(_trim([K.mul(a, s) for a in self.c], K.zero), K)
        a, b = self.c, other.c
        if not a or not b:
            return Poly._make((), K)
        c = [K.zero] * (len(a) + len(b) - 1)
        mul, add = K.mul, K.add
        for i, ai in enumerate(a):
            if ai == K.zero:
                continue
            for j, bj in enumerate(b):
                c[i + j] = add(c[i + j], mul(ai, bj))
        return Poly._make(_trim(c, K.zero), K)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = Poly._make((self.K.one,), self.K)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "Poly"):
        K = self.K
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        db = len(other.c) - 1
        if len(r) - 1 < db:
            return Poly._make((), K), self
        inv_lc = K.inv(other.c[-1])
        q = [K.zero] * (len(r) - db)
        b = other.c
        mul, sub = K.mul, K.sub
        for k in range(len(r) - 1, db - 1, -1):
            coef = r[k]
            if coef == K.zero:
                continue
            t = mul(coef, inv_lc)
            q[k - db] = t
            for j in range(db + 1):
                r[k - db + j] = sub(r[k - db + j], mul(t, b[j]))
        return Poly._make(_trim(q, K.zero), K), Poly._make(_trim(r[:db], K.zero), K)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if r.c:
            raise AlgebraError("inexact polynomial division")
        return q

    def monic(self) -> "Poly":
        if not self.c:
            return self
        return self * self.K.inv(self.c[-1])

    def derivative(self) -> "Poly":
        K = self.K
        return Poly._make(_trim([K.mul(K(i), a) for i, a in enumerate(self.c)][1:], K.zero), K)

    def __call__(self, x):
        K = self.K
        acc = K.zero
        for a in reversed(self.c):
            acc = K.add(K.mul(acc, x), a)
        return acc

    def change_ring(self, K) -> "Poly":
        return Poly(self.c, K)

    def shift_scale(self, s) -> "Poly":
        """p(s*x)."""
        K = self.K
        s = K(s)
        out, pw = [], K.one
        for a in self.c:
            out.append(K.mul(a, pw))
            pw = K.mul(pw, s)
        return Poly._make(_trim(out, K.zero), K)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while b.c:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly):
    """(d, s, t) with d = s*a + t*b monic."""
    K = a.K
    one, zero = Poly._make((K.one,), K), Poly._make((), K)
    r0, r1, s0, s1, t0, t1 = a, b, one, zero, zero, one
    while r1.c:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0.c:
        return r0, s0, t0
    inv = K.inv(r0.lc)
    return r0 * inv, s0 * inv, t0 * inv


def _prem(a: list, b: list) -> list:
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b over Z."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for j in range(db + 1):
            r[shift + j] -= lr * b[j]
        e -= 1
        while r and r[-1] == 0:
            r.pop()
    if e > 0:
        f = lb ** e
        r = [x * f for x in r]
    return r


def resultant_subresultant(a: list, b: list) -> int:
    """Res(a, b) for integer coefficient lists via the subresultant PRS."""
    a, b = list(_trim(list(a), 0)), list(_trim(list(b), 0))
    if not a or not b:
        return 0
    s = 1
    if len(a) < len(b):
        a, b = b, a
        if (len(a) - 1) % 2 == 1 and (len(b) - 1) % 2 == 1:
            s = -1
    g = h = 1
    while len(b) - 1 > 0:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        r = _prem(a, b)
        a = b
        if not r:
            return 0
        div = g * h ** delta
        b = [ZZ.exquo(x, div) for x in r]
        g = a[-1]
        h = ZZ.exquo(g ** delta, h ** (delta - 1)) if delta >= 1 else h
    da = len(a) - 1
    if da == 0:
        return s
    return s * ZZ.exquo(b[-1] ** da, h ** (da - 1))


def resultant_field(a: Poly, b: Poly):
    """Res(a, b) over a field by the Euclidean algorithm."""
    K = a.K
    if not a.c or not b.c:
        return K.zero
    res = K.one
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            return K.mul(res, _kpow(K, b.c[0], da))
        r = a % b
        if not r.c:
            return K.zero
        if da % 2 == 1 and db % 2 == 1:
            res = K.neg(res)
        res = K.mul(res, _kpow(K, b.lc, da - r.degree))
        a, b = b, r


def _kpow(K, a, e):
    out = K.one
    for _ in range(e):
        out = K.mul(out, a)
    return out


def _as_integer_coeffs(p: Poly):
    """Integer coefficient list and the positive scale s with p = ints / s."""
    den = 1
    for a in p.c:
        den = den * Fraction(a).denominator // math.gcd(den, Fraction(a).denominator)
    return [int(Fraction(a) * den) for a in p.c], den


def resultant(a: Poly, b: Poly):
    if a.K.characteristic == 0:
        ia, da = _as_integer_coeffs(a)
        ib, db = _as_integer_coeffs(b)
        r = resultant_subresultant(ia, ib)
        return Fraction(r, da ** b.degree * db ** a.degree)
    return resultant_field(a, b)


def discriminant(p: Poly):
    """disc(p) = (-1)^(n(n-1)/2) Res(p, p') / lc(p)."""
    n = p.degree
    if n < 1:
        raise AlgebraError("degree too small")
    K = p.K
    if n == 1:
        return K.one
    r = resultant(p, p.derivative())
    if K.characteristic == 0:
        d = Fraction(r) / Fraction(p.lc)
        return -d if (n * (n - 1) // 2) % 2 else d
    d = K.mul(r, K.inv(p.lc))
    return K.neg(d) if (n * (n - 1) // 2) % 2 else d


def int_discriminant(coeffs: list[int]) -> int:
    """Discriminant of an integer polynomial given lowest-degree-first."""
    c = list(_trim(list(coeffs), 0))
    n = len(c) - 1
    if n < 1:
        raise AlgebraError("degree too small")
    if n == 1:
        return 1
    dc = [i * c[i] for i in range(1, n + 1)]
    r = ZZ.exquo(resultant_subresultant(c, dc), c[-1])
    return -r if (n * (n - 1) // 2) % 2 else r


_FAST_P = (1 << 61) - 1


def int_poly_squarefree(coeffs) -> bool:
    """disc != 0 for an integer polynomial of degree >= 1.

    A gcd(f, f') computation modulo a 61-bit prime settles almost every
    input; the exact discriminant is computed only when that test is
    inconclusive.
    """
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    n = len(c) - 1
    if n < 1:
        raise AlgebraError("degree too small")
    P = _FAST_P
    if c[-1] % P:
        a = [x % P for x in c]
        b = [(i * c[i]) % P for i in range(1, n + 1)]
        while b and b[-1] == 0:
            b.pop()
        while b:
            # a <- a mod b
            inv = pow(b[-1], -1, P)
            db = len(b) - 1
            while len(a) - 1 >= db and a:
                t = a[-1] * inv % P
                s = len(a) - 1 - db
                for j in range(db):
                    a[s + j] = (a[s + j] - t * b[j]) % P
                a.pop()
                while a and a[-1] == 0:
                    a.pop()
            a, b = b, a
        if len(a) == 1:
            return True
    return int_discriminant(c) != 0


def roots_in_field(p: Poly) -> list:
    """All roots (with multiplicity) of p over a finite field, brute force."""
    K = p.K
    if not hasattr(K, "elements"):
        raise AlgebraError("root enumeration needs a finite field")
    out = []
    for x in K.elements():
        q = p
        while q.degree >= 1 and q(x) == K.zero:
            out.append(x)
            q = q // Poly._make((K.neg(x), K.one), K)
    return out


def root_multiplicity(p: Poly, x) -> int:
    K = p.K
    lin = Poly._make((K.neg(x), K.one), K)
    m = 0
    while p.c and p(x) == K.zero:
        p = p // lin
        m += 1
    return m


def interpolate_cubic_roots(roots) -> Poly:
    """Monic polynomial with the given rational roots."""
    p = Poly.const(1, QQ)
    for r in roots:
        p = p * Poly([-Fraction(r), 1], QQ)
    return p
