"""Log-log slopes of box counts for S1Square (all h) and one h-slice of S1."""

from dataclasses import asdict, dataclass, field

from _common import Timer, parse_config, write_json

from g2rank.experiments import box_count_experiment


@dataclass
class Config:
    grid: list = field(default_factory=lambda: [20, 40, 80, 160])
    sample_size: int = 4000
    seed: int = 0
    out: str = "results/box_exponents.json"


def main(cfg: Config):
    out = {"config": asdict(cfg)}
    for name, kind, h in (("S1Square", "S1Square", None), ("S1_h0", "S1", (0, 0, 0, 0))):
        with Timer() as t:
            rep = box_count_experiment(kind, cfg.grid, h=h, exhaustive_limit=0,
                                       sample_size=cfg.sample_size, seed=cfg.seed)
        print(f"{name}: slope {rep.slope:.3f} +- {rep.stderr:.3f} ({t.elapsed:.1f}s)")
        out[name] = {"slope": rep.slope, "stderr": rep.stderr, "rows": rep.rows, "residuals": rep.residuals}
    write_json(cfg.out, out)


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
