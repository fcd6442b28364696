"""Reading and writing poset / pair files.

Line format (``#`` starts a comment, ``[P]``/``[Q]`` headers are optional)::

    d = 3
    3 < 1
    3 < 2

Each ``d = n`` line opens a new record. JSON is accepted as well: a record is
``{"d": 3, "covers": [[3, 1], [3, 2]]}`` (``relation`` may replace
``covers``), and a pair is ``{"P": record, "Q": record}`` or a two-element list.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .errors import CycleError, TwinchainError
from .poset import Poset, poset_from_covers


class InputError(TwinchainError, ValueError):
    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


_D_LINE = re.compile(r"^d\s*=\s*(-?\d+)$")
_COVER = re.compile(r"^(\d+)\s*<\s*(\d+)$")


def _build(d, covers, field: str) -> Poset:
    if not isinstance(d, int) or d < 0:
        raise InputError(f"{field}.d", f"expected a non-negative integer, got {d!r}")
    try:
        pairs = [tuple(c) for c in covers]
        for c in pairs:
            if len(c) != 2 or not all(isinstance(x, int) for x in c):
                raise InputError(f"{field}.covers", f"bad pair {list(c)!r}")
        return poset_from_covers(d, pairs)
    except IndexError as e:
        raise InputError(f"{field}.covers", str(e)) from None
    except CycleError as e:
        raise InputError(f"{field}.covers", f"not a partial order ({e})") from None
    except TypeError:
        raise InputError(f"{field}.covers", "expected a list of [i, j] pairs") from None


def _record_from_json(obj, field: str) -> Poset:
    if not isinstance(obj, dict):
        raise InputError(field, "expected an object with fields d and covers")
    if "d" not in obj:
        raise InputError(f"{field}.d", "missing")
    covers = obj.get("covers", obj.get("relation", []))
    return _build(obj["d"], covers, field)


def parse_posets(text: str) -> list[Poset]:
    stripped = text.strip()
    first = stripped.splitlines()[0].strip() if stripped else ""
    if stripped.startswith("{") or (stripped.startswith("[") and not re.fullmatch(r"\[\w+\]", first)):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as e:
            raise InputError("json", str(e)) from None
        if isinstance(obj, dict) and "P" in obj:
            return [_record_from_json(obj["P"], "P"), _record_from_json(obj.get("Q"), "Q")]
        if isinstance(obj, list):
            return [_record_from_json(o, f"record[{k}]") for k, o in enumerate(obj)]
        return [_record_from_json(obj, "record[0]")]

    records: list[tuple[int, list]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line or re.fullmatch(r"\[\w+\]", line):
            continue
        m = _D_LINE.match(line)
        if m:
            records.append((int(m.group(1)), []))
            continue
        m = _COVER.match(line)
        if m:
            if not records:
                raise InputError(f"line {lineno}", "cover before any 'd = n' line")
            records[-1][1].append((int(m.group(1)), int(m.group(2))))
            continue
        raise InputError(f"line {lineno}", f"cannot parse {raw.strip()!r}")
    names = ["P", "Q"] if len(records) == 2 else [f"record[{k}]" for k in range(len(records))]
    return [_build(d, covers, name) for name, (d, covers) in zip(names, records)]


def parse_pair(text: str) -> tuple[Poset, Poset]:
    posets = parse_posets(text)
    if len(posets) != 2:
        raise InputError("pair", f"expected 2 poset records, found {len(posets)}")
    P, Q = posets
    if P.d != Q.d:
        raise InputError("Q.d", f"{Q.d} does not match P.d = {P.d}")
    return P, Q


def read_pair(path) -> tuple[Poset, Poset]:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError("file", str(e)) from None
    return parse_pair(text)


def format_poset(P: Poset) -> str:
    return f"d = {P.d}\n" + "".join(f"{i} < {j}\n" for i, j in P.covers())


def format_pair(P: Poset, Q: Poset) -> str:
    return "[P]\n" + format_poset(P) + "[Q]\n" + format_poset(Q)


FIXTURE_DIR = Path(__file__).with_name("fixtures")


def fixture_names() -> list[str]:
    return sorted(p.stem for p in FIXTURE_DIR.glob("*.txt"))


def load_fixture(name: str) -> tuple[Poset, Poset]:
    return read_pair(FIXTURE_DIR / f"{name}.txt")
