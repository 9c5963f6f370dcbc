"""Search for weak or induced copies of a target poset inside a family."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .chains import width_of_masks
from .lattice import Family
from .poset import PosetSpec, diamond

INDUCED = "induced"
WEAK = "weak"
MODES = (INDUCED, WEAK)


@dataclass(frozen=True)
class Embedding:
    """``image[t]`` is the family-member index that target element ``t`` maps to."""

    target: PosetSpec
    image: tuple[int, ...]
    mode: str = INDUCED

    def masks(self, family: Family) -> list[int]:
        return [family.members[i] for i in self.image]


class RelationTable:
    """Per-member bitsets over member indices: strictly above, below, incomparable."""

    __slots__ = ("members", "up", "down", "inc", "all")

    def __init__(self, members: Sequence[int]):
        self.members = tuple(members)
        m = len(self.members)
        up = [0] * m
        down = [0] * m
        for i, a in enumerate(self.members):
            for j in range(i + 1, m):
                b = self.members[j]
                if a & ~b == 0:
                    up[i] |= 1 << j
                    down[j] |= 1 << i
                elif b & ~a == 0:
                    up[j] |= 1 << i
                    down[i] |= 1 << j
        self.all = (1 << m) - 1
        self.up = up
        self.down = down
        self.inc = [self.all & ~(up[i] | down[i] | (1 << i)) for i in range(m)]


def _constraint(table: RelationTable, target: PosetSpec, u: int, img: int, t: int, induced: bool) -> int:
    """Indices allowed for target ``t`` given target ``u`` already sits at ``img``."""
    if target.less[u][t]:
        return table.up[img]
    if target.less[t][u]:
        return table.down[img]
    if induced:
        return table.inc[img]
    return table.all & ~(1 << img)


def _search(table: RelationTable, target: PosetSpec, induced: bool, fixed: dict[int, int]) -> Optional[tuple[int, ...]]:
    """Lexicographically least image vector extending ``fixed``."""
    p = target.size
    used_fixed = 0
    for v in fixed.values():
        used_fixed |= 1 << v
    base = []
    for t in range(p):
        if t in fixed:
            base.append(1 << fixed[t])
            continue
        c = table.all & ~used_fixed
        for u, img in fixed.items():
            c &= _constraint(table, target, u, img, t, induced)
        base.append(c)
    # fixed-vs-fixed consistency
    for u, iu in fixed.items():
        for t, it in fixed.items():
            if u < t and not (_constraint(table, target, u, iu, t, induced) >> it) & 1:
                return None
    if any(c == 0 for c in base):
        return None

    image = [0] * p

    def rec(t: int, used: int) -> bool:
        if t == p:
            return True
        cand = base[t]
        if t not in fixed:
            cand &= ~used
        for u in range(t):
            if u in fixed:
                continue
            cand &= _constraint(table, target, u, image[u], t, induced)
            if not cand:
                return False
        while cand:
            low = cand & -cand
            cand ^= low
            image[t] = low.bit_length() - 1
            if rec(t + 1, used | low):
                return True
        return False

    if rec(0, used_fixed):
        return tuple(image)
    return None


def _find(family: Family, target: PosetSpec, mode: str, required: Optional[int], table: Optional[RelationTable] = None) -> Optional[Embedding]:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    induced = mode == INDUCED
    if target.size > len(family):
        if required is not None and required not in family:
            raise ValueError(f"required set {required:#b} is not in the family")
        return None
    table = table or RelationTable(family.members)
    if required is None:
        image = _search(table, target, induced, {})
        return Embedding(target, image, mode) if image is not None else None
    if required not in family:
        raise ValueError(f"required set {required:#b} is not in the family")
    r = family.index(required)
    best = None
    for t in range(target.size):
        image = _search(table, target, induced, {t: r})
        if image is not None and (best is None or image < best):
            best = image
    return Embedding(target, best, mode) if best is not None else None


def find_induced(family: Family, target: PosetSpec, required: Optional[int] = None) -> Optional[Embedding]:
    """Lexicographically least induced copy of ``target`` in ``family``.

    With ``required`` only copies whose image contains that set count.
    """
    return _find(family, target, INDUCED, required)


def find_weak(family: Family, target: PosetSpec, required: Optional[int] = None) -> Optional[Embedding]:
    """Lexicographically least weak (order-preserving injective) copy."""
    return _find(family, target, WEAK, required)


def find_copy(family: Family, target: PosetSpec, mode: str = INDUCED, required: Optional[int] = None) -> Optional[Embedding]:
    return _find(family, target, mode, required)


def is_valid_embedding(family: Family, emb: Embedding) -> bool:
    """Check the Embedding invariant directly on masks."""
    p = emb.target
    if len(emb.image) != p.size or len(set(emb.image)) != p.size:
        return False
    if any(not 0 <= i < len(family) for i in emb.image):
        return False
    ms = emb.masks(family)
    for u in range(p.size):
        for v in range(p.size):
            if u == v:
                continue
            sub = ms[u] != ms[v] and ms[u] & ~ms[v] == 0
            if p.less[u][v] and not sub:
                return False
            if emb.mode == INDUCED and sub and not p.less[u][v]:
                return False
    return True


# -- fast paths -------------------------------------------------------------

_DIAMOND = diamond()

def _is_antichain(target: PosetSpec) -> bool:
    return not target.relations


def _is_diamond(target: PosetSpec) -> bool:
    return target.size == 4 and target.less == _DIAMOND.less


def has_diamond(table: RelationTable, through: Optional[int] = None) -> bool:
    """Induced diamond S < T1, T2 < U with T1 || T2, optionally through index ``through``."""
    up, down, inc = table.up, table.down, table.inc
    m = len(table.members)
    if through is None:
        for a in range(m):
            bits = inc[a] >> (a + 1)
            b = a + 1
            while bits:
                if bits & 1 and (up[a] & up[b]) and (down[a] & down[b]):
                    return True
                bits >>= 1
                b += 1
        return False
    r = through
    # r as bottom: two incomparable sets above r sharing an upper bound
    if _incomparable_pair_with(table, up[r], up):
        return True
    if _incomparable_pair_with(table, down[r], down):
        return True
    # r as a side: S < r < U with another T between S and U incomparable to r
    lows = down[r]
    while lows:
        low = lows & -lows
        lows ^= low
        s = low.bit_length() - 1
        if up[s] & up[r] & _up_union(table, up[s] & inc[r]):
            return True
    return False


def _up_union(table: RelationTable, bits: int) -> int:
    out = 0
    while bits:
        low = bits & -bits
        bits ^= low
        out |= table.up[low.bit_length() - 1]
    return out


def _incomparable_pair_with(table: RelationTable, pool: int, beyond: Sequence[int]) -> bool:
    bits = pool
    while bits:
        low = bits & -bits
        bits ^= low
        a = low.bit_length() - 1
        others = table.inc[a] & pool
        while others:
            lo = others & -others
            others ^= lo
            b = lo.bit_length() - 1
            if beyond[a] & beyond[b]:
                return True
    return False


def contains(family: Family, target: PosetSpec, mode: str = INDUCED, required: Optional[int] = None, table: Optional[RelationTable] = None) -> bool:
    """Existence test, using fast paths where the target allows."""
    if required is not None and required not in family:
        raise ValueError(f"required set {required:#b} is not in the family")
    if target.size > len(family):
        return False
    if target.size == 0:
        return True
    if _is_antichain(target):
        if mode == WEAK:
            return True
        if required is None:
            return width_of_masks(family.members) >= target.size
        rest = [x for x in family.members if x != required and not (x & ~required == 0 or required & ~x == 0)]
        return 1 + width_of_masks(rest) >= target.size
    table = table or RelationTable(family.members)
    if mode == INDUCED and _is_diamond(target):
        return has_diamond(table, None if required is None else family.index(required))
    return _find(family, target, mode, required, table) is not None
