"""Brute-force Pic^0 of a genus-2 curve over a tiny prime field.

Independent of the Mumford code: every rational degree-0 class is written
as [E - D_inf] with E a Frobenius-stable effective degree-2 divisor, and
relations come from scanning all functions a(x) + b*y with deg a <= 3 and
reading off their divisors point by point over F_{p^2}.  Used only as a
test oracle for p <= 7.
"""

from __future__ import annotations

import itertools

from .algebra import GF, Poly, QuadraticExtension, root_multiplicity
from .jacobian import JacobianGroup, MumfordDivisor, check_good_prime

ORACLE_PRIME_MAX = 7


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


class PicardOracle:
    def __init__(self, g_int, p: int, s=None):
        if p > ORACLE_PRIME_MAX:
            raise ValueError(f"oracle limited to p <= {ORACLE_PRIME_MAX}")
        g = [a % p for a in g_int]
        while g and g[-1] == 0:
            g.pop()
        check_good_prime(g, p)
        self.p = p
        self.g = g
        self.deg = len(g) - 1
        L = QuadraticExtension(p)
        self.L = L
        self.gL = Poly([L(a) for a in g], L)
        self._sqrt = {}
        for y in L.elements():
            self._sqrt.setdefault(L.mul(y, y), []).append(y)
        if self.deg == 6:
            sL = L(s) if s is not None else self._sqrt[L(g[6])][0]
            self.sL = sL
            self.inf = [(1, 1), (1, -1)]
        else:
            self.sL = None
            self.inf = [(1, 0)]
        self.points = [(0, x, y) for x in L.elements() for y in self._sqrt.get(self.gL(x), [])]
        self.points += self.inf
        self.d_inf = tuple(sorted(self.inf)) if self.deg == 6 else ((1, 0), (1, 0))
        self._build()

    # geometry ----------------------------------------------------------

    def frob(self, P):
        L = self.L
        if P[0] == 0:
            return (0, L.frobenius(P[1]), L.frobenius(P[2]))
        if P[1] == 0 or L.frobenius(self.sL) == self.sL:
            return P
        return (1, -P[1])

    def iota(self, P):
        if P[0] == 0:
            return (0, P[1], self.L.neg(P[2]))
        return (1, -P[1])

    def _rational_pairs(self):
        out = set()
        pts = self.points
        for i, P in enumerate(pts):
            for Q in pts[i:]:
                E = tuple(sorted((P, Q)))
                if tuple(sorted((self.frob(P), self.frob(Q)))) == E:
                    out.add(E)
        return sorted(out)

    def _zero_divisor(self, a, b):
        """Z(phi) = div(phi) + 3 D_inf as a sorted 6-tuple, or None when some
        zero lies outside F_{p^2}."""
        L, p = self.L, self.p
        K = GF(p)
        A = Poly(list(a), K)
        AL = Poly([L(c) for c in a], L)
        if b:
            N = A * A - Poly(self.g, K) * (b * b % p)
            NL = Poly([L(c) for c in N.c], L)
        Z = []
        bL = L(b)
        for P in self.points[: len(self.points) - len(self.inf)]:
            _, x0, y0 = P
            val = L.add(AL(x0), L.mul(bL, y0))
            if val != L.zero:
                continue
            if b:
                k = root_multiplicity(NL, x0)
            else:
                k = root_multiplicity(AL, x0) * (1 if y0 != L.zero else 2)
            Z.extend([P] * k)
        dA = A.degree
        if self.deg == 6:
            if b == 0:
                wp = wm = 3 - dA
            else:
                bs = L.mul(bL, self.sL)
                a3 = L(a[3])
                if a3 == L.neg(bs):
                    wp, wm = 6 - N.degree, 0
                elif a3 == bs:
                    wp, wm = 0, 6 - N.degree
                else:
                    wp = wm = 0
            Z += [(1, 1)] * wp + [(1, -1)] * wm
        else:
            w = 6 - 2 * dA if b == 0 else 6 - N.degree
            Z += [(1, 0)] * w
        if len(Z) != 6:
            return None
        return tuple(sorted(Z))

    def _functions(self):
        p = self.p
        for vec in itertools.product(range(p), repeat=5):
            nz = next((c for c in vec if c), 0)
            if nz == 1:
                yield vec[:4], vec[4]

    # group structure ---------------------------------------------------

    def _build(self):
        S = self._rational_pairs()
        Sset = set(S)
        self.divisors = S
        relations = []
        for a, b in self._functions():
            Z = self._zero_divisor(a, b)
            if Z is None:
                continue
            for E1, E2, Er in _splits(Z, Sset):
                relations.append((E1, E2, tuple(sorted(self.iota(P) for P in Er))))
        uf = _UnionFind(S)
        for E1, E2, E3 in relations:
            if E2 == self.d_inf:
                uf.union(E1, E3)
        table = {}
        for E1, E2, E3 in relations:
            key = (uf.find(E1), uf.find(E2))
            val = uf.find(E3)
            if table.setdefault(key, val) != val:
                raise AssertionError("oracle relations are inconsistent")
        self._uf = uf
        self.classes = sorted({uf.find(E) for E in S})
        self.zero = uf.find(self.d_inf)
        self.table = table
        for c1 in self.classes:
            for c2 in self.classes:
                if (c1, c2) not in table:
                    raise AssertionError("oracle addition table incomplete")

    def order(self) -> int:
        return len(self.classes)

    def class_of(self, E) -> tuple:
        return self._uf.find(tuple(sorted(E)))

    def add(self, c1, c2):
        return self.table[(c1, c2)]

    def divisor_of(self, J: JacobianGroup, D: MumfordDivisor) -> tuple:
        """The effective degree-2 divisor E with [E - D_inf] = D."""
        L = self.L
        uL = Poly([L(c) for c in D.u.c], L)
        vL = Poly([L(c) for c in D.v.c], L)
        E = []
        for x0 in L.elements():
            k = root_multiplicity(uL, x0)
            E.extend([(0, x0, vL(x0))] * k)
        if self.deg == 5:
            E += [(1, 0)] * (2 - D.u.degree)
        elif J.kind == "split":
            E += [(1, 1)] * D.n + [(1, -1)] * (2 - D.u.degree - D.n)
        else:
            E += list(self.inf) * D.n
        return tuple(sorted(E))

    def class_of_mumford(self, J, D) -> tuple:
        return self.class_of(self.divisor_of(J, D))


def _splits(Z, Sset):
    """All ordered (E1, E2, E3) with E1 + E2 + E3 = Z and each in Sset."""
    idx = range(6)
    seen = set()
    for i, j in itertools.combinations(idx, 2):
        E1 = tuple(sorted((Z[i], Z[j])))
        if E1 not in Sset:
            continue
        rest = [Z[t] for t in idx if t not in (i, j)]
        for k, l in itertools.combinations(range(4), 2):
            E2 = tuple(sorted((rest[k], rest[l])))
            if E2 not in Sset:
                continue
            E3 = tuple(sorted(rest[t] for t in range(4) if t not in (k, l)))
            if E3 not in Sset:
                continue
            key = (E1, E2, E3)
            if key not in seen:
                seen.add(key)
                yield key
