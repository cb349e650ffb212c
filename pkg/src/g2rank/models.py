"""Integral genus-2 Weierstrass models y^2 + h(x) y = f(x), their heights,
validity predicates and the coefficient boxes they are counted in."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from .algebra import (
    QQ,
    Poly,
    int_discriminant,
    int_poly_squarefree,
    is_square,
    is_squarefree,
)

H_VALUES = tuple(itertools.product((0, 1), repeat=4))  # (h0, h1, h2, h3)


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class WeierstrassModel:
    """y^2 + h(x) y = f(x) with integer f = a0 + ... + a6 x^6, h_i in {0, 1}."""

    f: tuple[int, ...]
    h: tuple[int, ...] = (0, 0, 0, 0)
    provenance: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        f = tuple(int(a) for a in self.f)
        if len(f) > 7:
            if any(f[7:]):
                raise ModelError("deg f must be <= 6")
            f = f[:7]
        f = f + (0,) * (7 - len(f))
        h = tuple(int(a) for a in self.h)
        h = h + (0,) * (4 - len(h))
        if len(h) != 4:
            raise ModelError("deg h must be <= 3")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "h", h)

    @classmethod
    def from_leading(cls, a: tuple[int, ...], h=(0, 0, 0, 0), provenance=None) -> "WeierstrassModel":
        """Build from coefficients written (a6, a5, ..., a0)."""
        return cls(tuple(reversed(a)), h, provenance)

    @property
    def leading(self) -> tuple[int, ...]:
        return tuple(reversed(self.f))

    @property
    def g_coeffs(self) -> tuple[int, ...]:
        """Coefficients of g = 4f + h^2, lowest degree first (length 7)."""
        g = [4 * a for a in self.f]
        h = self.h
        for i in range(4):
            if h[i]:
                for j in range(4):
                    if h[j] and i + j <= 6:
                        g[i + j] += 1
        return tuple(g)

    def g(self, K=QQ) -> Poly:
        return Poly(self.g_coeffs, K)

    def simplified(self) -> "SimplifiedModel":
        return SimplifiedModel(self.g_coeffs)

    @property
    def c(self) -> int:
        return 4 * self.f[6] + self.h[3] ** 2

    @property
    def deg_g(self) -> int:
        g = self.g_coeffs
        d = 6
        while d >= 0 and g[d] == 0:
            d -= 1
        return d

    def discriminant(self) -> Fraction:
        """Delta(f, h) = 2^-12 disc(4f + h^2)."""
        if self.deg_g < 1:
            return Fraction(0)
        return Fraction(int_discriminant(list(self.g_coeffs)), 2 ** 12)

    def is_valid(self) -> bool:
        return self.deg_g >= 5 and int_poly_squarefree(self.g_coeffs)

    def to_json(self) -> dict:
        return {"f": [str(a) for a in self.f], "h": [str(a) for a in self.h]}

    @classmethod
    def from_json(cls, d: dict) -> "WeierstrassModel":
        return cls(tuple(int(a) for a in d["f"]), tuple(int(a) for a in d.get("h", (0, 0, 0, 0))))

    def key(self) -> tuple:
        """Lexicographic enumeration key (h, a6, ..., a0)."""
        return (self.h, self.leading)


@dataclass(frozen=True)
class SimplifiedModel:
    """y^2 = g(x) with g = 4f + h^2."""

    g_int: tuple[int, ...]

    @property
    def c(self) -> int:
        return self.g_int[6] if len(self.g_int) > 6 else 0

    def g(self, K=QQ) -> Poly:
        return Poly(self.g_int, K)


@dataclass(frozen=True)
class Validity:
    valid: bool
    reason: str


def validate(m: WeierstrassModel) -> Validity:
    d = m.deg_g
    if d < 5:
        return Validity(False, f"degree of 4f+h^2 is {d} < 5")
    if not int_poly_squarefree(m.g_coeffs):
        return Validity(False, "discriminant zero")
    return Validity(True, "ok")


@dataclass(frozen=True)
class InfinityClass:
    kind: str  # "two_rational", "two_conjugate", "one_point"
    c_root: Optional[int] = None


def infinity_class(m: WeierstrassModel) -> InfinityClass:
    if m.deg_g == 5:
        return InfinityClass("one_point")
    r = is_square(m.c)
    if r is not None and r > 0:
        return InfinityClass("two_rational", r)
    return InfinityClass("two_conjugate")


# --------------------------------------------------------------------------
# Heights
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class HeightValue:
    """H1 = max |a_i|; H2 is kept as the (k, |c_k|) pair attaining
    max |c_k|^(20/k), with (0, 1) standing for the all-zero case (H2 = 1)."""

    h1: int
    h2_index: Optional[int] = None
    h2_abs: Optional[int] = None

    @property
    def h2(self) -> Optional[float]:
        if self.h2_index is None:
            return None
        if self.h2_index == 0:
            return 1.0
        return float(self.h2_abs) ** (20.0 / self.h2_index)


def c2_coefficients(m: WeierstrassModel) -> dict[int, int]:
    """c_k of y^2 = x^5 + sum_{k=2}^{5} c_k x^(5-k); raises outside that form."""
    f = m.f
    if any(m.h) or f[6] != 0 or f[5] != 1 or f[4] != 0:
        raise ModelError("model is not of the form y^2 = x^5 + c2 x^3 + c3 x^2 + c4 x + c5")
    return {k: f[5 - k] for k in range(2, 6)}


def _h2_geq(j: int, cj: int, k: int, ck: int) -> bool:
    # |c_j|^(20/j) >= |c_k|^(20/k)  <=>  |c_j|^(20k) >= |c_k|^(20j)
    return cj ** (20 * k) >= ck ** (20 * j)


def height(m: WeierstrassModel, kind: str = "H1") -> HeightValue:
    h1 = max(abs(a) for a in m.f)
    if kind == "H1":
        return HeightValue(h1)
    if kind != "H2":
        raise ModelError(f"unknown height {kind}")
    cs = c2_coefficients(m)
    best_k, best = 0, 1
    for k in range(2, 6):
        a = abs(cs[k])
        if a == 0:
            continue
        if best_k == 0 or not _h2_geq(best_k, best, k, a):
            best_k, best = k, a
    return HeightValue(h1, best_k, best)


def in_c2_box(cs: dict[int, int], X: int) -> bool:
    """H2 <= X exactly: |c_k|^20 <= X^k for every k."""
    return all(abs(c) ** 20 <= X ** k for k, c in cs.items())


# --------------------------------------------------------------------------
# Boxes
# --------------------------------------------------------------------------

BOX_KINDS = ("C1", "C2", "S1", "S2", "S1Square", "U11")


@dataclass(frozen=True)
class BoxSpec:
    kind: str
    X: int
    Y: Optional[int] = None
    h_filter: Optional[tuple[int, ...]] = None  # restrict S-boxes to one h

    def __post_init__(self):
        if self.kind not in BOX_KINDS:
            raise ModelError(f"unknown box kind {self.kind}")
        if self.X < 1:
            raise ModelError("X must be >= 1")
        if (self.Y is not None) != (self.kind == "S2"):
            raise ModelError("Y is required for S2 and only for S2")
        if self.Y is not None and self.Y < 1:
            raise ModelError("Y must be >= 1")
        if self.h_filter is not None:
            object.__setattr__(self, "h_filter", tuple(int(b) for b in self.h_filter))

    def h_values(self) -> tuple[tuple[int, ...], ...]:
        if self.kind in ("C1", "C2", "U11"):
            return ((0, 0, 0, 0),)
        if self.h_filter is not None:
            return (self.h_filter,)
        return H_VALUES

    def coefficient_ranges(self, h) -> list[list[int]]:
        """Candidate values for (a6, ..., a0) in enumeration order."""
        X = self.X
        full = list(range(-X, X + 1))
        if self.kind in ("C1", "S1"):
            return [full] * 7
        if self.kind == "S1Square":
            lead = [a for a in full if a != 0 and is_square(4 * a + h[3] ** 2) is not None]
            return [lead] + [full] * 6
        if self.kind == "S2":
            return [list(range(-X * self.Y ** i, X * self.Y ** i + 1)) for i in range(6, -1, -1)]
        if self.kind == "U11":
            return [[1]] + [full] * 5 + [[1]]
        if self.kind == "C2":
            # a6 = 0, a5 = 1, a4 = 0, a_{5-k} = c_k with |c_k|^20 <= X^k
            rng = []
            for k in range(2, 6):
                b = 0
                while (b + 1) ** 20 <= X ** k:
                    b += 1
                rng.append(list(range(-b, b + 1)))
            return [[0], [1], [0]] + rng
        raise ModelError(self.kind)

    def size(self) -> int:
        """Number of coefficient vectors (before validity filtering)."""
        total = 0
        for h in self.h_values():
            n = 1
            for r in self.coefficient_ranges(h):
                n *= len(r)
            total += n
        return total

    def contains(self, m: WeierstrassModel) -> bool:
        if m.h not in self.h_values():
            return False
        ranges = self.coefficient_ranges(m.h)
        if not all(lo_hi_contains(r, a) for r, a in zip(ranges, m.leading)):
            return False
        return m.is_valid()

    def to_json(self) -> dict:
        d = {"kind": self.kind, "X": self.X}
        if self.Y is not None:
            d["Y"] = self.Y
        if self.h_filter is not None:
            d["h"] = list(self.h_filter)
        return d

    @classmethod
    def from_json(cls, d: dict) -> "BoxSpec":
        h = d.get("h")
        return cls(d["kind"], int(d["X"]), d.get("Y"), tuple(h) if h is not None else None)


def lo_hi_contains(r: list[int], a: int) -> bool:
    if len(r) > 2 and r[-1] - r[0] == len(r) - 1:
        return r[0] <= a <= r[-1]
    return a in r


def enumerate_box(box: BoxSpec, start_after: Optional[tuple] = None) -> Iterator[WeierstrassModel]:
    """Valid models of the box, each once, lexicographically by (h, a6..a0).

    ``start_after`` is a key previously produced by ``WeierstrassModel.key``;
    enumeration resumes strictly after it.
    """
    for h in box.h_values():
        if start_after is not None and h < start_after[0]:
            continue
        ranges = box.coefficient_ranges(h)
        it = itertools.product(*ranges)
        if start_after is not None and h == start_after[0]:
            it = _skip_through(ranges, start_after[1])
        for a in it:
            m = WeierstrassModel(tuple(reversed(a)), h)
            if m.deg_g >= 5 and int_poly_squarefree(m.g_coeffs):
                yield m


def _skip_through(ranges: list[list[int]], key: tuple[int, ...]):
    """Product iterator over ranges starting strictly after ``key``."""
    n = len(ranges)
    # walk from the deepest position upward: all vectors sharing the prefix
    # key[:i] with a larger i-th entry come next, shallow prefixes later
    for i in range(n - 1, -1, -1):
        later = [v for v in ranges[i] if v > key[i]]
        if not later:
            continue
        prefix = tuple(key[:i])
        for a in itertools.product(later, *ranges[i + 1:]):
            yield prefix + a


def count_box(box: BoxSpec) -> int:
    return sum(1 for _ in enumerate_box(box))


# --------------------------------------------------------------------------
# Twists
# --------------------------------------------------------------------------

def quadratic_twist(m: WeierstrassModel, d: int) -> WeierstrassModel:
    """Integral model of d y^2 = f(x), namely y^2 = d f(x) via y -> y/d."""
    if d == 0:
        raise ModelError("twist by 0")
    if not is_squarefree(d):
        raise ModelError(f"twist parameter {d} is not squarefree")
    if any(m.h):
        raise ModelError("twisting is defined on models with h = 0")
    return WeierstrassModel(tuple(d * a for a in m.f), m.h, provenance=f"twist d={d}: y -> y/{d}")
