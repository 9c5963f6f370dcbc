"""Family files: ``{"n": 3, "sets": ["100", 6, ...]}``.

Each set is an integer mask or a bitstring of length ``n`` whose leftmost
character is ground element 1. Canonical output always uses bitstrings.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .lattice import Family


class FamilyFormatError(ValueError):
    pass


def to_bitstring(mask: int, n: int) -> str:
    return "".join("1" if mask >> i & 1 else "0" for i in range(n))


def from_bitstring(s: str, n: int) -> int:
    if len(s) != n or set(s) - {"0", "1"}:
        raise FamilyFormatError(f"bad bitstring {s!r} for n={n}")
    return sum(1 << i for i, ch in enumerate(s) if ch == "1")


def parse_set(item: Union[int, str], n: int) -> int:
    if isinstance(item, bool):
        raise FamilyFormatError(f"bad set entry {item!r}")
    if isinstance(item, int):
        if not 0 <= item < 1 << n:
            raise FamilyFormatError(f"mask {item} out of range for n={n}")
        return item
    if isinstance(item, str):
        return from_bitstring(item, n)
    raise FamilyFormatError(f"bad set entry {item!r}")


def family_from_json(doc: dict) -> Family:
    if not isinstance(doc, dict) or "n" not in doc or "sets" not in doc:
        raise FamilyFormatError("family document needs fields 'n' and 'sets'")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise FamilyFormatError(f"bad ground size {n!r}")
    if not isinstance(doc["sets"], list):
        raise FamilyFormatError("'sets' must be a list")
    masks = [parse_set(x, n) for x in doc["sets"]]
    if len(set(masks)) != len(masks):
        raise FamilyFormatError("duplicate sets in family")
    return Family.of(n, masks)


def family_to_json(family: Family) -> dict:
    return {"n": family.n, "sets": [to_bitstring(m, family.n) for m in family.members]}


def load_family(path: Union[str, Path]) -> Family:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FamilyFormatError(f"cannot read family file {path}: {exc}") from exc
    return family_from_json(doc)


def save_family(family: Family, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(family_to_json(family), indent=2) + "\n")
