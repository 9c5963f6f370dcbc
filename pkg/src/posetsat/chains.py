"""Width, minimum chain partitions and chain gaps.

Width is computed through Dilworth's theorem: the minimum number of chains
covering a family equals ``|F| - M`` where ``M`` is a maximum matching in the
bipartite graph ``{(A, B) : A strictly inside B}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .lattice import Family, popcount


def strict_up(members: Sequence[int]) -> list[int]:
    """Bitset per member index: which later/earlier members strictly contain it."""
    m = len(members)
    up = [0] * m
    for i, a in enumerate(members):
        bits = 0
        for j in range(m):
            b = members[j]
            if a != b and a & ~b == 0:
                bits |= 1 << j
        up[i] = bits
    return up


def _max_matching(up: Sequence[int]) -> list[int]:
    """Kuhn augmenting paths; returns ``match_left[i]`` (or -1).

    Left vertices and right candidates are scanned in ascending index order,
    which makes the result deterministic.
    """
    m = len(up)
    match_right = [-1] * m
    match_left = [-1] * m

    def augment(i: int, seen: list[int]) -> bool:
        bits = up[i] & ~seen[0]
        while bits:
            low = bits & -bits
            j = low.bit_length() - 1
            bits ^= low
            seen[0] |= low
            if match_right[j] == -1 or augment(match_right[j], seen):
                match_right[j] = i
                match_left[i] = j
                return True
        return False

    for i in range(m):
        augment(i, [0])
    return match_left


def width_of_masks(members: Sequence[int]) -> int:
    if not members:
        return 0
    match = _max_matching(strict_up(members))
    return len(members) - sum(1 for j in match if j != -1)


def width(family: Family) -> int:
    """Size of the largest antichain in ``family``."""
    if not len(family):
        raise ValueError("width of an empty family is undefined")
    return width_of_masks(family.members)


def maximum_antichain(family: Family) -> list[int]:
    """An explicit antichain of size ``width(family)`` (Konig's theorem)."""
    if not len(family):
        raise ValueError("empty family")
    members = family.members
    m = len(members)
    up = strict_up(members)
    match_left = _max_matching(up)
    match_right = [-1] * m
    for i, j in enumerate(match_left):
        if j != -1:
            match_right[j] = i
    # alternating search from unmatched left vertices
    left_seen = [match_left[i] == -1 for i in range(m)]
    right_seen = [False] * m
    stack = [i for i in range(m) if left_seen[i]]
    while stack:
        i = stack.pop()
        bits = up[i]
        while bits:
            low = bits & -bits
            j = low.bit_length() - 1
            bits ^= low
            if not right_seen[j] and match_left[i] != j:
                right_seen[j] = True
                k = match_right[j]
                if k != -1 and not left_seen[k]:
                    left_seen[k] = True
                    stack.append(k)
    # vertex cover = (left unseen) + (right seen); antichain = rest
    return [members[i] for i in range(m) if left_seen[i] and not right_seen[i]]


@dataclass(frozen=True)
class Gap:
    chain_index: int
    x: int
    y: int

    @property
    def size(self) -> int:
        return popcount(self.y & ~self.x)


@dataclass(frozen=True)
class ChainPartition:
    """Chains (ascending mask tuples) covering ``family``.

    When ``augmented`` every chain also carries the empty set and the full
    set, which are not members of ``family``.
    """

    family: Family
    chains: tuple[tuple[int, ...], ...]
    augmented: bool = False

    @property
    def k(self) -> int:
        return len(self.chains)

    def gaps(self) -> list[Gap]:
        return [Gap(ci, c[t], c[t + 1]) for ci, c in enumerate(self.chains) for t in range(len(c) - 1)]


def is_chain(masks: Sequence[int]) -> bool:
    """True if the (ascending) sequence is strictly increasing under inclusion."""
    return all(a != b and a & ~b == 0 for a, b in zip(masks, masks[1:]))


def check_partition(p: ChainPartition) -> None:
    """Raise ValueError if ``p`` violates the ChainPartition invariants."""
    n = p.family.n
    top = (1 << n) - 1
    seen: set[int] = set()
    for ci, chain in enumerate(p.chains):
        if not is_chain(chain):
            raise ValueError(f"chain {ci} is not totally ordered: {chain}")
        body = chain
        if p.augmented:
            if len(chain) < 2 or chain[0] != 0 or chain[-1] != top:
                raise ValueError(f"augmented chain {ci} must start at the empty set and end at [n]")
            body = chain[1:-1]
        for x in body:
            if x in seen:
                raise ValueError(f"member {x:#b} appears in two chains")
            if x not in p.family:
                raise ValueError(f"{x:#b} is not a member of the family")
            seen.add(x)
    if len(seen) != len(p.family):
        raise ValueError("chains do not cover the family")


def chain_partition(family: Family) -> ChainPartition:
    """A minimum chain partition; ``k`` equals ``width(family)``."""
    if not len(family):
        raise ValueError("empty family")
    members = family.members
    match_left = _max_matching(strict_up(members))
    has_pred = set(j for j in match_left if j != -1)
    chains = []
    for i in range(len(members)):
        if i in has_pred:
            continue
        chain = [members[i]]
        j = match_left[i]
        while j != -1:
            chain.append(members[j])
            j = match_left[j]
        chains.append(tuple(chain))
    chains.sort()
    return ChainPartition(family, tuple(chains))


def augment_and_gaps(p: ChainPartition) -> tuple[ChainPartition, list[Gap]]:
    """Add the empty set and ``[n]`` to every chain and list all gaps."""
    if p.augmented:
        raise ValueError("partition is already augmented")
    n = p.family.n
    top = (1 << n) - 1
    if 0 in p.family or top in p.family:
        raise ValueError("strip the empty set and [n] from the family first")
    check_partition(p)
    chains = tuple((0,) + tuple(c) + (top,) for c in p.chains)
    out = ChainPartition(p.family, chains, augmented=True)
    gaps = out.gaps()
    for ci, c in enumerate(chains):
        d = max(g.size for g in gaps if g.chain_index == ci)
        # a chain from the empty set to [n] climbs n levels in steps of at most d
        assert len(c) >= math.ceil(n / d) + 1, (ci, c, d)
    return out, gaps


def max_gap(p: ChainPartition, chain_index: int | None = None) -> int:
    sizes = [g.size for g in p.gaps() if chain_index is None or g.chain_index == chain_index]
    return max(sizes, default=0)
