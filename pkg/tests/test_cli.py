import json
import os

import pytest

from g2rank import TENGELY
from g2rank.cli import main
from g2rank.config import RunConfig
from g2rank.models import BoxSpec, WeierstrassModel, count_box
from g2rank.store import Checkpoint, CheckpointError, NDJSONStore


@pytest.fixture
def tengely_json(tmp_path):
    p = tmp_path / "tengely.json"
    p.write_text(json.dumps(TENGELY.to_json()))
    return str(p)


def lines(path):
    with open(path) as fh:
        return [json.loads(x) for x in fh if x.strip()]


def test_unknown_flag_exits_64(capsys):
    assert main(["certify", "--bogus"]) == 64
    assert "usage" in capsys.readouterr().err
    assert main(["no-such-command"]) == 64


def test_certify_then_verify(tmp_path, tengely_json):
    out = str(tmp_path / "cert.ndjson")
    assert main(["certify", "--curve", tengely_json, "--out", out]) == 0
    [cert] = lines(out)
    assert cert["kind"] == "NonTorsion"
    assert main(["verify", "--in", out]) == 0
    cfg = RunConfig.from_json(open(out + ".config.json").read())
    assert cfg.subcommand == "certify" and cfg.out == out


def test_verify_rejects_tampered(tmp_path, tengely_json):
    out = str(tmp_path / "cert.ndjson")
    main(["certify", "--curve", tengely_json, "--out", out])
    [cert] = lines(out)
    cert["evidence"][0]["order"] += 1
    bad = tmp_path / "bad.ndjson"
    bad.write_text(json.dumps(cert) + "\n")
    assert main(["verify", "--in", str(bad)]) == 3


def test_precondition_failures_exit_2(tmp_path):
    inert = tmp_path / "inert.json"
    inert.write_text(json.dumps(WeierstrassModel.from_leading((2, 0, 0, 0, 0, 1, 1)).to_json()))
    assert main(["certify", "--curve", str(inert)]) == 2
    assert main(["certify", "--curve", str(tmp_path / "missing.json")]) == 2
    assert main(["glue", "--roots-f", "0,1,-1", "--roots-g", "0,2,-2"]) == 2
    assert main(["enumerate", "--box", "u11"]) == 2
    assert main(["xa-experiment", "--amax", "0"]) == 2


def test_certify_pair_box(tmp_path):
    out = str(tmp_path / "pairs.ndjson")
    assert main(["certify", "--box", "u11", "--x", "1", "--pair-bound", "3", "--out", out]) == 0
    recs = lines(out)
    assert len(recs) == count_box(BoxSpec("U11", 1))
    assert {r["kind"] for r in recs} <= {"IndependentUpTo", "RelationFound"}


def test_enumerate_resume_is_idempotent(tmp_path):
    full = str(tmp_path / "full.ndjson")
    part = str(tmp_path / "part.ndjson")
    assert main(["enumerate", "--box", "u11", "--x", "1", "--out", full]) == 0
    assert main(["enumerate", "--box", "u11", "--x", "1", "--out", part, "--limit", "50",
                 "--checkpoint-every", "7"]) == 0
    # simulate a kill mid-write
    with open(part, "a") as fh:
        fh.write('{"f": [1, 0')
    assert main(["enumerate", "--box", "u11", "--x", "1", "--out", part, "--resume"]) == 0
    assert main(["enumerate", "--box", "u11", "--x", "1", "--out", part, "--resume"]) == 0
    assert open(part).read() == open(full).read()
    assert main(["enumerate", "--box", "u11", "--x", "1", "--out", full]) == 2


def test_resume_refuses_corrupt_or_foreign_checkpoint(tmp_path):
    out = str(tmp_path / "o.ndjson")
    assert main(["enumerate", "--box", "u11", "--x", "1", "--out", out, "--limit", "5"]) == 0
    with open(out + ".ckpt", "w") as fh:
        fh.write("{not json")
    assert main(["enumerate", "--box", "u11", "--x", "1", "--out", out, "--resume"]) == 2
    Checkpoint(out + ".ckpt").save(((0, 0, 0, 0), (1,) * 7), 5, {"box": {"kind": "C1", "X": 1}})
    assert main(["enumerate", "--box", "u11", "--x", "1", "--out", out, "--resume"]) == 2


def test_fresh_store_starts_at_box_minimum(tmp_path):
    out = str(tmp_path / "o.ndjson")
    assert main(["enumerate", "--box", "u11", "--x", "1", "--out", out, "--resume", "--limit", "1"]) == 0
    from g2rank.models import enumerate_box

    first = next(enumerate_box(BoxSpec("U11", 1)))
    assert lines(out) == [first.to_json()]


def test_other_subcommands(tmp_path, capsys, tengely_json):
    assert main(["xa-experiment", "--amax", "10", "--height", "10"]) == 0
    assert json.loads(capsys.readouterr().out)["squarefree_count"] == 7
    assert main(["split-family", "--x", "12167", "--primes", "2"]) == 0
    recs = [json.loads(x) for x in capsys.readouterr().out.splitlines()]
    assert recs[-1]["count"] == 16 and all(r["verified"] for r in recs[:-1])
    assert main(["glue", "--roots-f", "0,1,3", "--roots-g", "0,2,5", "--primes", "7,11"]) == 0
    rec = json.loads(capsys.readouterr().out)
    assert all(a == b for a, b in rec["local_check"].values())
    assert main(["twist", "--lambda1", "2", "--lambda2", "3", "--u", "2"]) == 0
    assert json.loads(capsys.readouterr().out)["d"] == "-30"
    assert main(["twist", "--curve", tengely_json, "--d", "-1"]) == 0
    assert json.loads(capsys.readouterr().out)["f"][6] == "-1"
    assert main(["regev-cost", "--n", "32", "--d-grid", "1,2,4"]) == 0
    assert capsys.readouterr().out.splitlines()[0].startswith("n,d,")
    out = str(tmp_path / "dens.ndjson")
    assert main(["density", "--box", "u11", "--grid", "1,2,3", "--out", out]) == 0
    assert os.path.exists(str(tmp_path / "dens.csv"))
    assert main(["density", "--box", "s1sq", "--grid", "3,5,7", "--torsion", "--plan", "uniform:10"]) == 0


def test_ndjson_store_repair(tmp_path):
    path = str(tmp_path / "s.ndjson")
    st = NDJSONStore(path)
    assert st.repair_tail() is None
    st.append([{"a": 1}, {"a": 2}])
    with open(path, "a") as fh:
        fh.write('{"a": 3')
    assert st.repair_tail() == {"a": 2}
    assert st.read() == [{"a": 1}, {"a": 2}]


def test_checkpoint_round_trip_and_corruption(tmp_path):
    ck = Checkpoint(str(tmp_path / "c.ckpt"))
    assert ck.load() is None
    key = ((1, 0, 0, 1), (3, -1, 4, 1, -5, 9, 2))
    ck.save(key, 12)
    d = ck.load()
    assert d["key"] == key and d["count"] == 12
    with open(ck.path, "w") as fh:
        json.dump({"key": {"h": [1], "a": []}, "count": 1}, fh)
    with pytest.raises(CheckpointError):
        ck.load()


def test_run_config_round_trip(monkeypatch):
    cfg = RunConfig("density", BoxSpec("S1", 5, h_filter=(0, 1, 0, 1)), [5, 7], 3, extra={"plan": "uniform:9"})
    assert RunConfig.from_json(cfg.to_json()) == cfg
    monkeypatch.setenv("G2RANK_GUARD_PRIME_MAX", "77")
    assert RunConfig("x").guard_prime_max == 77
    with pytest.raises(ValueError):
        RunConfig("x", guard_coeff_bits=0)
