"""Append-only NDJSON output with a checkpoint of the last emitted model key."""

from __future__ import annotations

import json
import os
from typing import Optional


class CheckpointError(ValueError):
    pass


def key_to_json(key) -> dict:
    h, a = key
    return {"h": list(h), "a": [str(x) for x in a]}


def key_from_json(d) -> tuple:
    try:
        h = tuple(int(x) for x in d["h"])
        a = tuple(int(x) for x in d["a"])
    except (KeyError, TypeError, ValueError) as e:
        raise CheckpointError(f"malformed key {d!r}") from e
    if len(h) != 4 or len(a) != 7:
        raise CheckpointError(f"malformed key {d!r}")
    return h, a


class NDJSONStore:
    def __init__(self, path: str):
        self.path = path

    def append(self, records) -> int:
        n = 0
        with open(self.path, "a", encoding="utf-8") as fh:
            for r in records:
                fh.write(json.dumps(r, sort_keys=True) + "\n")
                n += 1
            fh.flush()
        return n

    def read(self) -> list[dict]:
        if not os.path.exists(self.path):
            return []
        out = []
        with open(self.path, encoding="utf-8") as fh:
            for i, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    out.append(json.loads(line))
                except json.JSONDecodeError as e:
                    raise CheckpointError(f"{self.path}:{i}: not valid JSON") from e
        return out

    def repair_tail(self) -> Optional[dict]:
        """Drop a trailing partial line (interrupted write); return the last
        complete record."""
        if not os.path.exists(self.path):
            return None
        with open(self.path, "rb") as fh:
            data = fh.read()
        cut = data.rfind(b"\n") + 1
        if cut != len(data):
            with open(self.path, "r+b") as fh:
                fh.truncate(cut)
            data = data[:cut]
        lines = data.decode("utf-8").splitlines()
        for line in reversed(lines):
            if line.strip():
                try:
                    return json.loads(line)
                except json.JSONDecodeError as e:
                    raise CheckpointError(f"{self.path}: last record is corrupt") from e
        return None


class Checkpoint:
    def __init__(self, path: str):
        self.path = path

    def load(self) -> Optional[dict]:
        if not os.path.exists(self.path):
            return None
        try:
            with open(self.path, encoding="utf-8") as fh:
                d = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise CheckpointError(f"corrupt checkpoint {self.path}: {e}") from e
        if not isinstance(d, dict) or "key" not in d or "count" not in d:
            raise CheckpointError(f"corrupt checkpoint {self.path}: missing fields")
        d["key"] = key_from_json(d["key"])
        if not isinstance(d["count"], int) or d["count"] < 0:
            raise CheckpointError(f"corrupt checkpoint {self.path}: bad count")
        return d

    def save(self, key, count: int, extra: Optional[dict] = None):
        tmp = self.path + ".tmp"
        body = {"key": key_to_json(key), "count": count, **(extra or {})}
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(body, fh, sort_keys=True)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, self.path)
