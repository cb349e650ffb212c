import itertools
import random

import pytest

from g2rank.algebra import GF, Poly
from g2rank.jacobian import BadPrime, JacobianGroup, MumfordDivisor, check_good_prime


def random_good_g(rng: random.Random, p: int, deg=None) -> list:
    """Coefficients (low first) of a squarefree g of degree 5 or 6 mod p."""
    while True:
        d = deg or rng.choice([5, 6])
        g = [rng.randrange(p) for _ in range(d)] + [rng.randrange(1, p)]
        try:
            check_good_prime(g, p)
            return g
        except BadPrime:
            pass


def all_elements(J: JacobianGroup, p: int) -> list:
    """Every reduced balanced divisor of J over F_p, by exhaustion."""
    K = J.K
    out = []
    for du in range(3):
        for uc in itertools.product(range(p), repeat=du):
            u = Poly(list(uc) + [1], K)
            for vc in itertools.product(range(p), repeat=du):
                v = Poly(list(vc), K)
                if ((J.g - v * v) % u).c:
                    continue
                if J.kind == "split":
                    ns = range(0, 3 - du)
                elif J.kind == "inert":
                    ns = [(2 - du) // 2] if du % 2 == 0 else []
                else:
                    ns = [0]
                for n in ns:
                    D = MumfordDivisor(u, v, n)
                    if J.is_valid(D):
                        out.append(D)
    return out


def jac_mod_p(g, p):
    return JacobianGroup(Poly(g, GF(p)))


@pytest.fixture
def rng():
    return random.Random(20240601)


# acceptance criteria report one line each; collected here and repeated in
# the terminal summary so they survive output capture
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
