"""Small elliptic-curve toolkit: y^2 = cubic(x) over Q and F_p.

Only what the split and glue checks need: local point counts, quadratic
twists, a Q-rational group law on monic models and a naive point search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import QQ, Poly, discriminant, is_square, legendre


class EllipticError(ValueError):
    pass


def _ints(coeffs) -> list[int]:
    out = []
    for a in coeffs:
        a = Fraction(a)
        if a.denominator != 1:
            raise EllipticError("integral cubic expected")
        out.append(a.numerator)
    return out


def cubic_disc(coeffs) -> Fraction:
    return discriminant(Poly([Fraction(a) for a in coeffs], QQ))


@dataclass(frozen=True)
class EllipticCurve:
    """y^2 = a0 + a1 x + a2 x^2 + a3 x^3 (a3 != 0, separable)."""

    cubic: tuple

    def __post_init__(self):
        c = tuple(Fraction(a) for a in self.cubic)
        c = c + (Fraction(0),) * (4 - len(c))
        if len(c) != 4 or c[3] == 0:
            raise EllipticError("cubic of degree 3 expected")
        if cubic_disc(c) == 0:
            raise EllipticError("singular cubic")
        object.__setattr__(self, "cubic", c)

    def __call__(self, x):
        a0, a1, a2, a3 = self.cubic
        return ((a3 * x + a2) * x + a1) * x + a0

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.cubic)

    def count_points(self, p: int) -> int:
        """#E(F_p), point at infinity included."""
        c = _ints(self.cubic)
        if p == 2 or c[3] % p == 0 or _ints([cubic_disc(c)])[0] % p == 0:
            raise EllipticError(f"bad prime {p}")
        total = p + 1
        for x in range(p):
            total += legendre(((c[3] * x + c[2]) * x + c[1]) * x + c[0], p)
        return total

    def twist(self, d: int) -> "EllipticCurve":
        """d y^2 = cubic(x), written as y^2 = d * cubic(x)."""
        if d == 0:
            raise EllipticError("twist by 0")
        return EllipticCurve(tuple(d * a for a in self.cubic))

    def monic_model(self) -> tuple["EllipticCurve", Fraction]:
        """Monic model X^3 + b X^2 + ac X + a^2 d via X = a x, Y = a y;
        returns it with the scale a."""
        d, c, b, a = self.cubic
        return EllipticCurve((a * a * d, a * c, b, Fraction(1))), a

    def integral_monic_model(self) -> "EllipticCurve":
        """Monic model with integer coefficients, scaled by the least u with
        u^2 b, u^4 ac, u^6 a^2 d integral."""
        m, _ = self.monic_model()
        a6, a4, a2, _ = m.cubic
        u = 1
        while not all((x * u ** k).denominator == 1 for x, k in ((a2, 2), (a4, 4), (a6, 6))):
            u += 1
        return EllipticCurve((a6 * u ** 6, a4 * u ** 4, a2 * u ** 2, Fraction(1)))

    def j_invariant(self) -> Fraction:
        m, _ = self.monic_model()
        a6, a4, a2, _ = m.cubic
        # shift to short form x^3 + A x + B
        A = a4 - a2 * a2 / 3
        B = a6 - a2 * a4 / 3 + 2 * a2 ** 3 / 27
        den = 4 * A ** 3 + 27 * B ** 2
        return 1728 * 4 * A ** 3 / den

    def to_json(self) -> dict:
        return {"cubic": [str(a) for a in self.cubic]}


# --------------------------------------------------------------------------
# Rational points on monic models
# --------------------------------------------------------------------------

O = None  # point at infinity


def ec_add(E: EllipticCurve, P, Q):
    """Chord-tangent addition on a monic model."""
    if E.cubic[3] != 1:
        raise EllipticError("group law implemented on monic models")
    if P is O:
        return Q
    if Q is O:
        return P
    a2 = E.cubic[2]
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if y1 + y2 == 0:
            return O
        lam = (3 * x1 * x1 + 2 * a2 * x1 + E.cubic[1]) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - a2 - x1 - x2
    return (x3, -(y1 + lam * (x3 - x1)))


def ec_mul(E: EllipticCurve, k: int, P):
    R = O
    for bit in bin(k)[2:]:
        R = ec_add(E, R, R)
        if bit == "1":
            R = ec_add(E, R, P)
    return R


def is_nontorsion(E: EllipticCurve, P) -> bool:
    """Mazur: rational torsion orders are at most 12."""
    R = P
    for _ in range(12):
        if R is O:
            return False
        R = ec_add(E, R, P)
    return R is not O


def search_points(E: EllipticCurve, bound: int, limit: Optional[int] = None) -> list:
    """Affine points (p/s^2, t/s^3) on an integral monic model with
    |p| <= bound, 1 <= s <= isqrt(bound)."""
    if E.cubic[3] != 1 or not E.is_integral():
        raise EllipticError("integral monic model expected")
    a6, a4, a2, _ = _ints(E.cubic)
    out = []
    for s in range(1, math.isqrt(bound) + 1):
        s2 = s * s
        for p in range(-bound, bound + 1):
            if math.gcd(p, s) != 1:
                continue
            val = p ** 3 + a2 * p * p * s2 + a4 * p * s2 * s2 + a6 * s2 ** 3
            t = is_square(val)
            if t is None:
                continue
            x = Fraction(p, s2)
            out.append((x, Fraction(t, s2 * s)))
            if limit is not None and len(out) >= limit:
                return out
    return out
