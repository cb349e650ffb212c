"""Shared bits for the experiment scripts: dataclass configs exposed as flags."""

import argparse
import dataclasses
import json
import os
import time


def parse_config(cls, description):
    ap = argparse.ArgumentParser(description=description)
    for f in dataclasses.fields(cls):
        default = f.default if f.default is not dataclasses.MISSING else f.default_factory()
        flag = "--" + f.name.replace("_", "-")
        if isinstance(default, list):
            ap.add_argument(flag, type=lambda s: [int(x) for x in s.split(",")], default=default)
        elif isinstance(default, bool):
            ap.add_argument(flag, action="store_true", default=default)
        else:
            ap.add_argument(flag, type=type(default) if default is not None else str, default=default)
    return cls(**vars(ap.parse_args()))


def write_json(path, obj):
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True, default=str)
    print(f"wrote {path}")


class Timer:
    def __enter__(self):
        self.t = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t
