"""Target posets: named constructors, custom loading, validation, duals."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path


class PosetError(ValueError):
    """Raised for unknown descriptors or relations that are not strict orders."""


@dataclass(frozen=True)
class PosetSpec:
    """A finite poset given by its strict order ``less[i][j] <=> i < j``.

    Named posets are labelled so that index order is a linear extension
    (bottoms first); the embedding search relies on this only for speed.
    """

    size: int
    less: tuple[tuple[bool, ...], ...]
    label: str = "custom"

    def __post_init__(self) -> None:
        less = tuple(tuple(bool(v) for v in row) for row in self.less)
        object.__setattr__(self, "less", less)
        if len(less) != self.size or any(len(r) != self.size for r in less):
            raise PosetError(f"relation matrix must be {self.size}x{self.size}")
        validate(self)

    @property
    def relations(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.size) for j in range(self.size) if self.less[i][j]]

    def comparable(self, i: int, j: int) -> bool:
        return self.less[i][j] or self.less[j][i]

    def to_json(self) -> dict:
        return {"label": self.label, "size": self.size, "less": [list(p) for p in self.relations]}


def validate(spec: PosetSpec) -> None:
    """Check irreflexivity, asymmetry, transitivity; raise naming the witness."""
    lt = spec.less
    p = spec.size
    for i in range(p):
        if lt[i][i]:
            raise PosetError(f"not irreflexive: {i} < {i}")
    for i in range(p):
        for j in range(i + 1, p):
            if lt[i][j] and lt[j][i]:
                raise PosetError(f"not asymmetric: {i} < {j} and {j} < {i}")
    for i in range(p):
        for j in range(p):
            if not lt[i][j]:
                continue
            for k in range(p):
                if lt[j][k] and not lt[i][k]:
                    raise PosetError(f"not transitive: {i} < {j} < {k} but not {i} < {k}")


def from_relations(size: int, pairs, label: str = "custom", close: bool = True) -> PosetSpec:
    """Build a spec from strict pairs ``(i, j)`` meaning ``i < j``.

    With ``close`` the transitive closure is taken first, so cover relations
    suffice. A cycle then shows up as a reflexivity violation.
    """
    if size < 0:
        raise PosetError("size must be non-negative")
    m = [[False] * size for _ in range(size)]
    for pair in pairs:
        i, j = (int(v) for v in pair)
        if not (0 <= i < size and 0 <= j < size):
            raise PosetError(f"pair ({i}, {j}) out of range for size {size}")
        m[i][j] = True
    if close:
        for k in range(size):
            for i in range(size):
                if m[i][k]:
                    row_k = m[k]
                    row_i = m[i]
                    for j in range(size):
                        if row_k[j]:
                            row_i[j] = True
    return PosetSpec(size, tuple(map(tuple, m)), label)


def chain(k: int) -> PosetSpec:
    return from_relations(k, [(i, i + 1) for i in range(k - 1)], f"chain:{k}")


def antichain(k: int) -> PosetSpec:
    return from_relations(k, [], f"antichain:{k}")


def v2() -> PosetSpec:
    # 0 bottom, 1 and 2 tops
    return from_relations(3, [(0, 1), (0, 2)], "v2")


def diamond() -> PosetSpec:
    # 0 bottom, 1 and 2 middles, 3 top
    return from_relations(4, [(0, 1), (0, 2), (1, 3), (2, 3)], "diamond")


def butterfly() -> PosetSpec:
    # 0 and 1 bottoms, 2 and 3 tops
    return from_relations(4, [(0, 2), (0, 3), (1, 2), (1, 3)], "butterfly")


def load_custom(path: str | Path) -> PosetSpec:
    """Load ``{"size": p, "less": [[i, j], ...]}`` (0-based, closure applied)."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise PosetError(f"cannot read poset file {path}: {exc}") from exc
    if not isinstance(doc, dict) or "size" not in doc or "less" not in doc:
        raise PosetError("poset file needs fields 'size' and 'less'")
    return from_relations(int(doc["size"]), doc["less"], doc.get("label", f"custom:{path}"))


def _parse_k(name: str, arg: str) -> int:
    try:
        k = int(arg)
    except ValueError:
        raise PosetError(f"{name} needs an integer size, got {arg!r}") from None
    if k < 1:
        raise PosetError(f"{name} size must be >= 1, got {k}")
    return k


def parse_poset(descriptor: str) -> PosetSpec:
    """Parse ``chain:k``, ``antichain:k``, ``v2``, ``diamond``, ``butterfly``,
    or ``custom:<path>``."""
    name, _, arg = descriptor.strip().partition(":")
    name = name.lower()
    if name == "chain":
        return chain(_parse_k(name, arg))
    if name == "antichain":
        return antichain(_parse_k(name, arg))
    if name == "custom":
        if not arg:
            raise PosetError("custom poset needs a path: custom:<path>")
        return load_custom(arg)
    if arg:
        raise PosetError(f"{name!r} takes no argument")
    named = {"v2": v2, "diamond": diamond, "butterfly": butterfly}
    if name not in named:
        raise PosetError(f"unknown poset {descriptor!r}")
    return named[name]()


_DUAL_LABELS = {"v2": "lambda2", "lambda2": "v2", "diamond": "diamond", "butterfly": "butterfly"}


def _dual_label(label: str) -> str:
    if label in _DUAL_LABELS:
        return _DUAL_LABELS[label]
    if label.startswith(("chain:", "antichain:")):
        return label
    if label.startswith("dual(") and label.endswith(")"):
        return label[5:-1]
    return f"dual({label})"


def dual(spec: PosetSpec) -> PosetSpec:
    """Reverse every relation (transpose of the strict-order matrix)."""
    p = spec.size
    flipped = tuple(tuple(spec.less[j][i] for j in range(p)) for i in range(p))
    return PosetSpec(p, flipped, _dual_label(spec.label))


def is_isomorphic(a: PosetSpec, b: PosetSpec) -> bool:
    """Brute-force isomorphism test; only meant for small posets."""
    from itertools import permutations

    if a.size != b.size or len(a.relations) != len(b.relations):
        return False
    for perm in permutations(range(a.size)):
        if all(a.less[i][j] == b.less[perm[i]][perm[j]] for i in range(a.size) for j in range(a.size)):
            return True
    return False
