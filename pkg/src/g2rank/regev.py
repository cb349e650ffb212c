"""Classical side of Regev-style multi-exponentiation in J(F_q).

Three ways of computing sum z_i g_i are instrumented with an operation
ledger: per-term double-and-add, Pippenger buckets, and a 2^d subset-sum
table driven by a shared doubling chain.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from .jacobian import (
    BadPrime,
    JacobianError,
    JacobianGroup,
    check_good_prime,
)
from .models import WeierstrassModel

WINDOW_GUARD = 20
TABLE_GUARD = 20


class RegevError(ValueError):
    pass


@dataclass
class CostLedger:
    additions: int = 0
    doublings: int = 0
    table_entries: int = 0
    precomp_additions: int = 0

    @property
    def total(self) -> int:
        return self.additions + self.doublings


@dataclass
class GeneratorSet:
    group: JacobianGroup
    gens: list
    roles: list = field(default_factory=list)

    def __post_init__(self):
        for i, g in enumerate(self.gens):
            if self.group.is_identity(g):
                raise RegevError(f"generator {i} is the identity")
        if not self.roles:
            d = len(self.gens)
            self.roles = [f"g{i + 1}" for i in range(d)]
            if d >= 2:
                self.roles[-2:] = ["h", "g"]

    def __len__(self):
        return len(self.gens)


@dataclass(frozen=True)
class RelationVector:
    z: tuple

    def in_lattice(self, gs: GeneratorSet) -> bool:
        J = gs.group
        acc = J.identity()
        for zi, g in zip(self.z, gs.gens):
            acc = J.add(acc, J.mul(zi, g))
        return J.is_identity(acc)


class _Counted:
    """Group wrapper that charges the ledger; operations with the identity
    are free."""

    def __init__(self, J: JacobianGroup, ledger: CostLedger):
        self.J = J
        self.ledger = ledger
        self.zero = J.identity()

    def add(self, a, b, precomp=False):
        if a is None:
            return b
        if b is None:
            return a
        if precomp:
            self.ledger.precomp_additions += 1
        elif a == b:
            self.ledger.doublings += 1
        else:
            self.ledger.additions += 1
        return self.J.add(a, b)

    def dbl(self, a):
        if a is None:
            return None
        self.ledger.doublings += 1
        return self.J.add(a, a)

    def out(self, a):
        return self.zero if a is None else a


def _check(gs: GeneratorSet, z):
    if len(z) != len(gs.gens):
        raise RegevError(f"length mismatch: {len(z)} scalars for {len(gs.gens)} generators")
    if any(zi < 0 for zi in z):
        raise RegevError("scalars must be non-negative")


def msm_naive(gs: GeneratorSet, z):
    _check(gs, z)
    led = CostLedger()
    G = _Counted(gs.group, led)
    acc = None
    for zi, g in zip(z, gs.gens):
        if zi == 0:
            continue
        R = None
        for bit in bin(zi)[2:]:
            R = G.dbl(R)
            if bit == "1":
                R = G.add(R, g)
        acc = G.add(acc, R)
    return G.out(acc), led


def default_window(d: int) -> int:
    return max(1, round(math.log2(d))) if d > 0 else 1


def msm_pippenger(gs: GeneratorSet, z, window=None):
    _check(gs, z)
    c = window or default_window(len(z))
    if c < 1:
        raise RegevError("window must be >= 1")
    if c > WINDOW_GUARD:
        raise RegevError(f"window {c} exceeds memory guard {WINDOW_GUARD}")
    led = CostLedger()
    G = _Counted(gs.group, led)
    nbits = max((zi.bit_length() for zi in z), default=0)
    nwin = -(-nbits // c)
    mask = (1 << c) - 1
    acc = None
    for w in range(nwin - 1, -1, -1):
        for _ in range(c):
            acc = G.dbl(acc)
        buckets = {}
        for zi, g in zip(z, gs.gens):
            k = (zi >> (w * c)) & mask
            if k:
                buckets[k] = G.add(buckets.get(k), g)
        running = total = None
        for k in range(mask, 0, -1):
            if k in buckets:
                running = G.add(running, buckets[k])
            total = G.add(total, running)
        acc = G.add(acc, total)
    return G.out(acc), led


def build_table(gs: GeneratorSet, led: CostLedger) -> list:
    """All 2^d subset sums, indexed by bitmask."""
    d = len(gs.gens)
    if d > TABLE_GUARD:
        raise RegevError(f"table of 2^{d} entries exceeds guard")
    G = _Counted(gs.group, led)
    table = [None] * (1 << d)
    for mask in range(1, 1 << d):
        low = mask & -mask
        i = low.bit_length() - 1
        table[mask] = G.add(table[mask ^ low], gs.gens[i], precomp=True)
    led.table_entries = len(table)
    return table


def msm_table(gs: GeneratorSet, z, table=None):
    """Shared doubling chain over the bit positions; one table lookup and
    at most one addition per position."""
    _check(gs, z)
    led = CostLedger()
    if table is None:
        table = build_table(gs, led)
    else:
        led.table_entries = len(table)
    G = _Counted(gs.group, led)
    nbits = max((zi.bit_length() for zi in z), default=0)
    acc = None
    for b in range(nbits - 1, -1, -1):
        acc = G.dbl(acc)
        mask = 0
        for i, zi in enumerate(z):
            if (zi >> b) & 1:
                mask |= 1 << i
        if mask:
            acc = G.add(acc, table[mask])
    return G.out(acc), led


# --------------------------------------------------------------------------
# Lifting
# --------------------------------------------------------------------------

def lift_and_reduce(model: WeierstrassModel, points, q: int) -> GeneratorSet:
    """Reduce exact divisors over Q (on the completed-square model) mod q."""
    try:
        check_good_prime(model.g_coeffs, q)
    except BadPrime as e:
        raise BadPrime(f"bad prime {q}") from e
    Jq = JacobianGroup.mod_p(model, q)
    JQ = JacobianGroup.over_Q(model)
    gens = []
    for i, D in enumerate(points):
        if any(getattr(c, "denominator", 1) % q == 0 for c in D.u.c + D.v.c):
            raise RegevError(f"point {i} ({D}) has a denominator divisible by {q}")
        gens.append(JQ.reduce_mod(D, Jq))
    return GeneratorSet(Jq, gens)


def random_generators(J: JacobianGroup, d: int, rng: random.Random) -> GeneratorSet:
    """d nonidentity elements of J over a prime field built from points."""
    K = J.K
    pts = []
    for x in K.elements():
        y2 = J.g(x)
        if K.is_square(y2):
            pts.append(J.embed_point(x, K.sqrt(y2)))
    if not pts:
        raise JacobianError("no affine rational points to build generators from")
    gens = []
    while len(gens) < d:
        D = J.add(rng.choice(pts), rng.choice(pts))
        D = J.add(D, rng.choice(pts))
        if not J.is_identity(D):
            gens.append(D)
    return GeneratorSet(J, gens)


# --------------------------------------------------------------------------
# Cost model
# --------------------------------------------------------------------------

COST_COLUMNS = ("n", "d", "additions", "doublings", "model_cost", "total", "precomputation")


def model_cost(n: int, d: int) -> int:
    return d + -(-n // d)


def cost_report(n_bits: int, d_grid, J: JacobianGroup, seed: int = 0, method: str = "table") -> list[dict]:
    """Per-query op counts for scalars of ceil(n/d) bits against d + n/d."""
    rng = random.Random(seed)
    rows = []
    for d in d_grid:
        if d < 1:
            raise RegevError("d must be >= 1")
        gs = random_generators(J, d, rng)
        k = -(-n_bits // d)
        z = [rng.getrandbits(k) | (1 << (k - 1)) for _ in range(d)]
        if method == "table":
            _, led = msm_table(gs, z)
        elif method == "pippenger":
            _, led = msm_pippenger(gs, z)
        elif method == "naive":
            _, led = msm_naive(gs, z)
        else:
            raise RegevError(f"unknown method {method}")
        rows.append({"n": n_bits, "d": d, "additions": led.additions, "doublings": led.doublings,
                     "model_cost": model_cost(n_bits, d), "total": led.total,
                     "precomputation": led.precomp_additions})
    return rows


def ledger_minimum(rows) -> dict:
    return min(rows, key=lambda r: (r["total"], r["d"]))


# --------------------------------------------------------------------------
# Toy relation finder
# --------------------------------------------------------------------------

def find_relation(gs: GeneratorSet, R: int):
    """Meet in the middle: a nonzero z with |z_i| <= R and sum z_i g_i = 0."""
    J = gs.group
    d = len(gs.gens)
    half = d // 2
    left, right = gs.gens[:half], gs.gens[half:]
    rng_ = range(-R, R + 1)

    def combos(gens):
        for zs in itertools.product(rng_, repeat=len(gens)):
            acc = J.identity()
            for zi, g in zip(zs, gens):
                acc = J.add(acc, J.mul(zi, g))
            yield zs, acc

    table = {}
    for zs, acc in combos(left):
        table.setdefault(acc.key(), []).append(zs)
    for zs, acc in combos(right):
        for zl in table.get(J.neg(acc).key(), ()):
            z = tuple(zl) + tuple(zs)
            if any(z):
                rel = RelationVector(z)
                assert rel.in_lattice(gs)
                return rel
    return None
