from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field
from typing import Optional

from .models import BoxSpec


@dataclass
class RunConfig:
    subcommand: str
    box: Optional[BoxSpec] = None
    primes: Optional[list] = None
    seed: int = 0
    guard_prime_max: int = 1000
    guard_coeff_bits: int = 20000
    out: Optional[str] = None
    resume: bool = False
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        env = os.environ.get("G2RANK_GUARD_PRIME_MAX")
        if env:
            self.guard_prime_max = int(env)
        if self.guard_prime_max < 1 or self.guard_coeff_bits < 1:
            raise ValueError("guards must be positive")

    def to_json(self) -> str:
        d = asdict(self)
        d["box"] = self.box.to_json() if self.box else None
        return json.dumps(d, sort_keys=True)

    @classmethod
    def from_json(cls, s: str) -> "RunConfig":
        d = json.loads(s)
        d["box"] = BoxSpec.from_json(d["box"]) if d.get("box") else None
        return cls(**d)
