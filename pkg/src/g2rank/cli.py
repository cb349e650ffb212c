"""g2rank command line.

Exit codes: 0 success, 2 precondition error, 3 internal invariant
violation, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction

from .algebra import AlgebraError
from .certify import CertificationError, RankCertificate, certify_alpha, certify_pair, verify
from .config import RunConfig
from .elliptic import EllipticError
from .experiments import (
    ExperimentError,
    SamplingPlan,
    box_count_experiment,
    torsion_density_experiment,
    xa_family_experiment,
)
from .families import (
    FamilyError,
    glue,
    glue_local_check,
    split_count_model,
    split_family,
    split_good_primes,
    twist_witness,
    verify_split,
)
from .jacobian import JacobianError, JacobianGroup
from .models import BoxSpec, ModelError, WeierstrassModel, enumerate_box, quadratic_twist
from .regev import COST_COLUMNS, RegevError, cost_report
from .store import Checkpoint, CheckpointError, NDJSONStore

EXIT_OK, EXIT_PRECONDITION, EXIT_INVARIANT, EXIT_USAGE = 0, 2, 3, 64

BOX_FLAGS = {"c1": "C1", "c2": "C2", "s1": "S1", "s2": "S2", "s1sq": "S1Square", "u11": "U11"}

PRECONDITION_ERRORS = (ModelError, CertificationError, FamilyError, ExperimentError, RegevError,
                       JacobianError, EllipticError, AlgebraError, CheckpointError, OSError, ValueError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise UsageError(message)


def _int_list(s: str) -> list[int]:
    return [int(x) for x in s.split(",") if x.strip()]


def _frac_list(s: str) -> list[Fraction]:
    return [Fraction(x) for x in s.split(",") if x.strip()]


def _h_mask(s: str) -> tuple:
    if len(s) != 4 or set(s) - {"0", "1"}:
        raise argparse.ArgumentTypeError("h-mask is four bits h0h1h2h3, e.g. 0101")
    return tuple(int(c) for c in s)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="g2rank", description="Genus-2 curves of positive rank: boxes, certificates, families.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def box_args(sp, required=True):
        sp.add_argument("--box", choices=sorted(BOX_FLAGS), required=required)
        sp.add_argument("--x", type=int)
        sp.add_argument("--y", type=int)
        sp.add_argument("--h-mask", type=_h_mask)

    def out_arg(sp):
        sp.add_argument("--out", help="output path (stdout when omitted)")

    sp = sub.add_parser("enumerate", help="stream valid models of a box as NDJSON")
    box_args(sp)
    out_arg(sp)
    sp.add_argument("--resume", action="store_true")
    sp.add_argument("--limit", type=int, help="stop after this many new records")
    sp.add_argument("--checkpoint-every", type=int, default=1000)

    sp = sub.add_parser("certify", help="rank certificates for alpha (or alpha, beta)")
    sp.add_argument("--curve", help="JSON file with a model {f, h}")
    box_args(sp, required=False)
    sp.add_argument("--primes", type=_int_list)
    sp.add_argument("--pair-bound", type=int, help="certify (alpha, beta) up to this bound")
    sp.add_argument("--bit-guard", type=int, default=20000)
    out_arg(sp)

    sp = sub.add_parser("verify", help="re-check a certificate NDJSON file")
    sp.add_argument("--in", dest="inp", required=True)

    sp = sub.add_parser("split-family", help="split curves y^2 = d^3 x^6 + m^3")
    sp.add_argument("--x", type=int, required=True)
    sp.add_argument("--primes", type=int, default=5, help="number of check primes per member")
    out_arg(sp)

    sp = sub.add_parser("glue", help="glue two elliptic curves along 2-torsion")
    sp.add_argument("--roots-f", type=_frac_list, required=True)
    sp.add_argument("--roots-g", type=_frac_list, required=True)
    sp.add_argument("--primes", type=_int_list)
    out_arg(sp)

    sp = sub.add_parser("twist", help="d(u) family witness search, or a quadratic twist of a model")
    sp.add_argument("--lambda1", type=Fraction)
    sp.add_argument("--lambda2", type=Fraction)
    sp.add_argument("--u", type=Fraction)
    sp.add_argument("--bound", type=int, default=200)
    sp.add_argument("--curve")
    sp.add_argument("--d", type=int)
    out_arg(sp)

    sp = sub.add_parser("density", help="box counts and torsion fractions with fitted slopes")
    box_args(sp)
    sp.add_argument("--grid", type=_int_list, required=True)
    sp.add_argument("--plan", default="exhaustive", help="exhaustive | uniform:N")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--torsion", action="store_true", help="tally torsion of alpha instead of counting")
    sp.add_argument("--primes", type=_int_list)
    sp.add_argument("--exhaustive-limit", type=int, default=200_000)
    out_arg(sp)

    sp = sub.add_parser("xa-experiment", help="y^2 = x^5 + a for a <= amax")
    sp.add_argument("--amax", type=int, required=True)
    sp.add_argument("--height", type=int, default=500)
    out_arg(sp)

    sp = sub.add_parser("regev-cost", help="multi-scalar multiplication cost table")
    sp.add_argument("--n", type=int, default=256)
    sp.add_argument("--d-grid", type=_int_list, default=[1, 2, 4, 8, 16])
    sp.add_argument("--q", type=int, default=101)
    sp.add_argument("--curve", help="JSON model file (default: the rank-1 witness sextic)")
    sp.add_argument("--method", choices=["table", "pippenger", "naive"], default="table")
    sp.add_argument("--seed", type=int, default=0)
    out_arg(sp)
    return p


# --------------------------------------------------------------------------

class _Out:
    def __init__(self, path):
        self.path = path
        self.fh = None

    def __enter__(self):
        self.fh = open(self.path, "a", encoding="utf-8") if self.path else sys.stdout
        return self

    def write(self, rec):
        self.fh.write(json.dumps(rec, sort_keys=True) + "\n")

    def text(self, s):
        self.fh.write(s)

    def __exit__(self, *exc):
        if self.path:
            self.fh.close()
        else:
            self.fh.flush()


def _box(args) -> BoxSpec:
    if args.x is None:
        raise ModelError("--x is required with --box")
    return BoxSpec(BOX_FLAGS[args.box], args.x, args.y, args.h_mask)


def _load_model(path) -> WeierstrassModel:
    with open(path, encoding="utf-8") as fh:
        return WeierstrassModel.from_json(json.load(fh))


def cmd_enumerate(args) -> int:
    box = _box(args)
    start = None
    count = 0
    if args.resume:
        if not args.out:
            raise ModelError("--resume needs --out")
        # the checkpoint is validated, but the output file itself decides
        # where to continue: a record torn by a kill is dropped and redone
        ck = Checkpoint(args.out + ".ckpt").load()
        if ck is not None and ck.get("box") != box.to_json():
            raise CheckpointError("checkpoint belongs to a different box")
        store = NDJSONStore(args.out)
        last = store.repair_tail()
        if last is not None:
            start, count = WeierstrassModel.from_json(last).key(), len(store.read())
        elif ck is not None and ck["count"] > 0:
            raise CheckpointError("checkpoint points past an empty output file")
    elif args.out and os.path.exists(args.out) and os.path.getsize(args.out) > 0:
        raise ModelError(f"{args.out} exists; pass --resume or remove it")
    ckpt = Checkpoint(args.out + ".ckpt") if args.out else None
    written = 0
    last_key = None
    with _Out(args.out) as out:
        for m in enumerate_box(box, start_after=start):
            out.write(m.to_json())
            written += 1
            last_key = m.key()
            if ckpt and written % args.checkpoint_every == 0:
                out.fh.flush()
                ckpt.save(last_key, count + written, {"box": box.to_json()})
            if args.limit is not None and written >= args.limit:
                break
    if ckpt and last_key is not None:
        ckpt.save(last_key, count + written, {"box": box.to_json()})
    print(json.dumps({"written": written, "total": count + written}), file=sys.stderr)
    return EXIT_OK


def cmd_certify(args) -> int:
    if args.curve:
        models = [_load_model(args.curve)]
    elif args.box:
        models = enumerate_box(_box(args))
    else:
        raise CertificationError("give --curve or --box")
    with _Out(args.out) as out:
        for m in models:
            if args.pair_bound is not None:
                cert = certify_pair(m, args.pair_bound, args.primes, args.bit_guard)
            else:
                cert = certify_alpha(m, args.primes, args.bit_guard)
            out.write(cert.to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    records = NDJSONStore(args.inp).read()
    if not records:
        raise CertificationError(f"{args.inp} holds no certificates")
    bad = 0
    for i, rec in enumerate(records, 1):
        ok = verify(RankCertificate.from_json(rec))
        print(json.dumps({"record": i, "kind": rec.get("kind"), "sound": ok}))
        bad += not ok
    return EXIT_OK if bad == 0 else EXIT_INVARIANT


def cmd_split_family(args) -> int:
    members = split_family(args.x)
    with _Out(args.out) as out:
        for s in members:
            primes = split_good_primes(s, args.primes)
            out.write({**s.to_json(), "primes": primes, "verified": verify_split(s, primes)})
        out.write({"record": "summary", "X": args.x, "count": len(members),
                   "rank2_count": sum(not s.degenerate for s in members),
                   "model": split_count_model(args.x)})
    return EXIT_OK


def cmd_glue(args) -> int:
    spec = glue(args.roots_f, args.roots_g)
    rec = spec.to_json()
    if args.primes:
        rec["local_check"] = {str(p): list(v) for p, v in glue_local_check(spec, args.primes).items()}
    with _Out(args.out) as out:
        out.write(rec)
    return EXIT_OK


def cmd_twist(args) -> int:
    with _Out(args.out) as out:
        if args.curve:
            if args.d is None:
                raise ModelError("--d is required with --curve")
            m = quadratic_twist(_load_model(args.curve), args.d)
            out.write({**m.to_json(), "provenance": m.provenance})
            return EXIT_OK
        if None in (args.lambda1, args.lambda2, args.u):
            raise FamilyError("give --lambda1, --lambda2 and --u (or --curve and --d)")
        res = twist_witness(args.lambda1, args.lambda2, args.u, args.bound)
        pt = res["point"]
        out.write({"lambda1": str(pt.lam1), "lambda2": str(pt.lam2), "u": str(pt.u), "d": str(pt.d),
                   "factors": res["factors"]})
    return EXIT_OK


def _plan(s: str, seed: int) -> SamplingPlan:
    if s == "exhaustive":
        return SamplingPlan("exhaustive", seed=seed)
    if s.startswith("uniform:"):
        return SamplingPlan("uniform", int(s.split(":", 1)[1]), seed)
    raise ExperimentError(f"unknown plan {s}")


def cmd_density(args) -> int:
    kind = BOX_FLAGS[args.box]
    if args.torsion:
        rep = torsion_density_experiment(args.grid, _plan(args.plan, args.seed), args.primes, kind, args.h_mask)
    else:
        plan = _plan(args.plan, args.seed)
        size = plan.sample_size if plan.mode == "uniform" else 4000
        limit = args.exhaustive_limit if plan.mode == "uniform" else 10 ** 18
        rep = box_count_experiment(kind, args.grid, args.h_mask, limit, size, args.seed)
    with _Out(args.out) as out:
        out.text(rep.to_ndjson())
    if args.out:
        with open(os.path.splitext(args.out)[0] + ".csv", "w", encoding="utf-8") as fh:
            fh.write(rep.to_csv())
    return EXIT_OK


def cmd_xa(args) -> int:
    rep = xa_family_experiment(args.amax, args.height)
    with _Out(args.out) as out:
        out.write(rep)
    return EXIT_OK


DEFAULT_REGEV_CURVE = WeierstrassModel.from_leading((1, 18, 75, 120, 120, 72, 28))


def cmd_regev(args) -> int:
    m = _load_model(args.curve) if args.curve else DEFAULT_REGEV_CURVE
    J = JacobianGroup.mod_p(m, args.q)
    rows = cost_report(args.n, args.d_grid, J, args.seed, args.method)
    fh = open(args.out, "w", encoding="utf-8", newline="") if args.out else sys.stdout
    try:
        w = csv.DictWriter(fh, fieldnames=COST_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    finally:
        if args.out:
            fh.close()
    return EXIT_OK


def _record_config(args):
    out = getattr(args, "out", None)
    if not out:
        return
    box = None
    if getattr(args, "box", None) and getattr(args, "x", None):
        box = _box(args)
    primes = getattr(args, "primes", None)
    cfg = RunConfig(args.cmd, box, primes if isinstance(primes, list) else None,
                    getattr(args, "seed", 0), out=out, resume=getattr(args, "resume", False),
                    extra={k: str(v) for k, v in vars(args).items()
                           if k not in ("cmd", "box", "x", "y", "h_mask", "primes", "seed", "out", "resume")})
    with open(out + ".config.json", "w", encoding="utf-8") as fh:
        fh.write(cfg.to_json())


COMMANDS = {
    "enumerate": cmd_enumerate, "certify": cmd_certify, "verify": cmd_verify,
    "split-family": cmd_split_family, "glue": cmd_glue, "twist": cmd_twist,
    "density": cmd_density, "xa-experiment": cmd_xa, "regev-cost": cmd_regev,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError:
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return int(e.code or 0)
    try:
        _record_config(args)
        return COMMANDS[args.cmd](args)
    except AssertionError as e:
        print(f"internal invariant violated: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except PRECONDITION_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PRECONDITION


def run():
    sys.exit(main())
