"""Boolean lattice primitives.

A subset of ``{1..n}`` is stored as an ``int`` bitmask: bit ``i - 1`` is set
exactly when ground element ``i`` belongs to the subset.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_ENUM_N = 24
_EAGER_LIMIT = 1 << 16


class Relation(str, Enum):
    EQUAL = "equal"
    SUBSET = "subset"
    SUPERSET = "superset"
    INCOMPARABLE = "incomparable"


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def is_subset(a: int, b: int) -> bool:
    """True when ``a`` is contained in ``b`` (not necessarily strictly)."""
    return a & ~b == 0


def compare(a: int, b: int) -> Relation:
    if a == b:
        return Relation.EQUAL
    if a & ~b == 0:
        return Relation.SUBSET
    if b & ~a == 0:
        return Relation.SUPERSET
    return Relation.INCOMPARABLE


def comparable(a: int, b: int) -> bool:
    return a & ~b == 0 or b & ~a == 0


def elements(mask: int) -> list[int]:
    """Ground elements (1-based) of ``mask``."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def from_elements(items: Iterable[int]) -> int:
    mask = 0
    for i in items:
        if i < 1:
            raise ValueError(f"ground elements are 1-based, got {i}")
        mask |= 1 << (i - 1)
    return mask


def _check_strict(x: int, y: int) -> None:
    if x == y or x & ~y:
        raise ValueError(f"need X strictly inside Y, got X={x:#b}, Y={y:#b}")


def iter_open_interval(x: int, y: int) -> Iterator[int]:
    """Yield every Z with X < Z < Y in ascending mask order."""
    _check_strict(x, y)
    free = y & ~x
    # ascending enumeration of the submasks of `free`
    sub = 0
    while True:
        sub = (sub - free) & free
        if sub == free or sub == 0:
            return
        yield x | sub


def open_interval(x: int, y: int) -> list[int] | Iterator[int]:
    """All sets strictly between ``x`` and ``y``, ascending.

    Returns a list when the interval has fewer than 2**16 members and a lazy
    iterator otherwise.
    """
    _check_strict(x, y)
    d = popcount(y & ~x)
    it = iter_open_interval(x, y)
    if (1 << d) < _EAGER_LIMIT:
        return list(it)
    return it


def interval_is_boolean_cube(x: int, y: int) -> int:
    """Dimension ``d = |Y - X|`` of the cube ``[X, Y]``."""
    if x & ~y:
        raise ValueError(f"X={x:#b} is not contained in Y={y:#b}")
    return popcount(y & ~x)


@dataclass(frozen=True)
class Family:
    """A set of subsets of ``{1..n}``, kept as strictly increasing masks."""

    n: int
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("ground size must be non-negative")
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        top = 1 << self.n
        prev = -1
        for m in members:
            if not isinstance(m, int) or m < 0 or m >= top:
                raise ValueError(f"mask {m!r} out of range for n={self.n}")
            if m <= prev:
                raise ValueError("members must be strictly increasing")
            prev = m

    @classmethod
    def of(cls, n: int, masks: Iterable[int]) -> "Family":
        return cls(n, tuple(sorted(set(masks))))

    @classmethod
    def whole(cls, n: int) -> "Family":
        return cls(n, tuple(range(1 << n)))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, mask: object) -> bool:
        return mask in self._lookup

    @property
    def _lookup(self) -> frozenset[int]:
        cached = self.__dict__.get("_set")
        if cached is None:
            cached = frozenset(self.members)
            object.__setattr__(self, "_set", cached)
        return cached

    @property
    def top(self) -> int:
        return full_mask(self.n)

    def index(self, mask: int) -> int:
        try:
            return self.members.index(mask)
        except ValueError:
            raise KeyError(f"{mask:#b} is not a member") from None

    def add(self, mask: int) -> "Family":
        return Family.of(self.n, self.members + (mask,))

    def remove(self, *masks: int) -> "Family":
        drop = set(masks)
        return Family(self.n, tuple(m for m in self.members if m not in drop))

    def outsiders(self) -> Iterator[int]:
        """Lattice elements not in the family, ascending."""
        have = self._lookup
        return (s for s in range(1 << self.n) if s not in have)


def maximal_chain(n: int, order: Sequence[int] | None = None) -> Family:
    """The maximal chain adding ground elements in ``order`` (default 1..n)."""
    order = list(order) if order is not None else list(range(1, n + 1))
    masks = [0]
    for i in order:
        masks.append(masks[-1] | (1 << (i - 1)))
    return Family.of(n, masks)


def level(n: int, r: int) -> list[int]:
    """All r-subsets of {1..n} as masks, ascending."""
    return sorted(from_elements(c) for c in combinations(range(1, n + 1), r))
