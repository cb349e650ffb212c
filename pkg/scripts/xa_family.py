"""y^2 = x^5 + a: squarefree a and curves with at least three small points."""

from dataclasses import asdict, dataclass

from _common import Timer, parse_config, write_json

from g2rank.experiments import xa_family_experiment


@dataclass
class Config:
    amax: int = 100000
    height: int = 500
    out: str = "results/xa_family.json"


def main(cfg: Config):
    with Timer() as t:
        rep = xa_family_experiment(cfg.amax, cfg.height)
    for k in ("squarefree_count", "three_point_count", "three_point_count_all_a", "relative_deviation"):
        if k in rep:
            print(f"{k}: {rep[k]}")
    print(f"({t.elapsed:.1f}s)")
    write_json(cfg.out, {"config": asdict(cfg), **rep})


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
