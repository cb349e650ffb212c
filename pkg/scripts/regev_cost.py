"""Per-query group-operation counts for multi-scalar multiplication in J(F_q)."""

from dataclasses import asdict, dataclass, field

from _common import parse_config, write_json

from g2rank import TENGELY
from g2rank.jacobian import JacobianGroup
from g2rank.regev import cost_report, ledger_minimum


@dataclass
class Config:
    n: int = 256
    d_grid: list = field(default_factory=lambda: [1, 2, 4, 8, 16])
    q: int = 101
    seed: int = 0
    out: str = "results/regev_cost.json"


def main(cfg: Config):
    J = JacobianGroup.mod_p(TENGELY, cfg.q)
    tables = {}
    for method in ("naive", "pippenger", "table"):
        rows = cost_report(cfg.n, cfg.d_grid, J, cfg.seed, method)
        tables[method] = rows
        print(method)
        for r in rows:
            print(f"  d={r['d']:>2}  adds {r['additions']:>4}  dbls {r['doublings']:>4}  "
                  f"total {r['total']:>4}  model {r['model_cost']:>4}  precomp {r['precomputation']}")
        print(f"  minimum at d={ledger_minimum(rows)['d']}")
    write_json(cfg.out, {"config": asdict(cfg), **tables})


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
