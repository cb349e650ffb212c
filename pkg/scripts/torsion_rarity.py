"""Fraction of S1Square models whose alpha class is torsion, on uniform samples."""

from dataclasses import asdict, dataclass, field

from _common import Timer, parse_config, write_json

from g2rank.experiments import SamplingPlan, torsion_density_experiment


@dataclass
class Config:
    grid: list = field(default_factory=lambda: [1, 2, 3, 5, 25, 50, 100])
    sample_size: int = 2000
    seed: int = 0
    out: str = "results/torsion_rarity.json"


def main(cfg: Config):
    with Timer() as t:
        rep = torsion_density_experiment(cfg.grid, SamplingPlan("uniform", cfg.sample_size, cfg.seed))
    for r in rep.rows:
        print(f"X={r['X']:>4}  torsion {r['torsion']:>4}/{r['total']}  undecided {r['undecided']}")
    print(f"{rep.notes[-1]} ({t.elapsed:.0f}s)")
    write_json(cfg.out, {"config": asdict(cfg), "rows": rep.rows, "notes": rep.notes,
                         "torsion_models": rep.samples})


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
