"""Split Jacobians y^2 = d^3 x^6 + m^3: local checks and growth of the count."""

from dataclasses import asdict, dataclass, field

from _common import parse_config, write_json

from g2rank.families import split_count_model, split_family, split_good_primes, verify_split


@dataclass
class Config:
    x: int = 125000
    primes: int = 5
    growth: list = field(default_factory=lambda: [10 ** 4, 10 ** 5, 10 ** 6, 10 ** 7])
    out: str = "results/split_family.json"


def main(cfg: Config):
    fam = split_family(cfg.x)
    checked = [{**s.to_json(), "verified": verify_split(s, split_good_primes(s, cfg.primes))} for s in fam]
    print(f"X={cfg.x}: {len(fam)} members, all verified: {all(c['verified'] for c in checked)}")
    growth = []
    for X in cfg.growth:
        n = len(split_family(X))
        growth.append({"X": X, "count": n, "model": split_count_model(X), "ratio": n / split_count_model(X)})
        print(f"X={X:>9}  count {n:>5}  model {split_count_model(X):8.1f}  ratio {growth[-1]['ratio']:.2f}")
    write_json(cfg.out, {"config": asdict(cfg), "members": checked, "growth": growth})


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
