"""Certificates for the two witness curves, plus a RelationFound search on a small U11 box."""

from dataclasses import asdict, dataclass

from _common import parse_config, write_json

from g2rank import TENGELY, U11_WITNESS
from g2rank.certify import certify_alpha, certify_pair, verify
from g2rank.models import BoxSpec, enumerate_box


@dataclass
class Config:
    pair_bound: int = 20
    u11_x: int = 1
    u11_bound: int = 5
    out: str = "results/witnesses.json"


def main(cfg: Config):
    a = certify_alpha(TENGELY)
    p = certify_pair(U11_WITNESS, cfg.pair_bound)
    print(f"rank-1 witness: {a.kind}, verify {verify(a)}")
    print(f"rank-2 witness: {p.kind}({p.B}), verify {verify(p)}")
    relations = []
    for m in enumerate_box(BoxSpec("U11", cfg.u11_x)):
        c = certify_pair(m, cfg.u11_bound)
        if c.kind == "RelationFound":
            relations.append({"curve": m.to_json(), "relation": list(c.relation)})
    print(f"U11 X={cfg.u11_x}: {len(relations)} curves with a relation up to {cfg.u11_bound}")
    write_json(cfg.out, {"config": asdict(cfg), "alpha": a.to_json(), "pair": p.to_json(),
                         "relations": relations})


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
