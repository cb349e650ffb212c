"""Genus-2 curves over Q with Jacobians of positive Mordell-Weil rank."""

from .algebra import GF, QQ, Poly, discriminant, is_square, is_squarefree, primes_up_to
from .jacobian import JacobianGroup, MumfordDivisor
from .models import BoxSpec, WeierstrassModel, enumerate_box, height, infinity_class, validate

TENGELY = WeierstrassModel.from_leading((1, 18, 75, 120, 120, 72, 28), provenance="rank-1 witness sextic")
U11_WITNESS = WeierstrassModel.from_leading((1, 8, 10, 10, 5, 2, 1), provenance="LMFDB 15625.a.15625.1")

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "Poly", "discriminant", "is_square", "is_squarefree", "primes_up_to",
    "JacobianGroup", "MumfordDivisor",
    "BoxSpec", "WeierstrassModel", "enumerate_box", "height", "infinity_class", "validate",
    "TENGELY", "U11_WITNESS",
]
