"""Constructive steps behind the diamond and antichain lower bounds.

Every audit here reports rather than assumes: it states what must hold when
the input family has been independently verified saturated.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .bounds import central_binomial, d_star
from .chains import ChainPartition, Gap, check_partition, is_chain
from .lattice import Family, iter_open_interval, popcount


# -- diamond: pair witnesses, digraph, extremal elements -----------------------

@dataclass
class WitnessTable:
    fstar: int
    n: int
    inside: dict[int, Optional[tuple[int, int]]] = field(default_factory=dict)
    outside: dict[int, Optional[tuple[int, int]]] = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return all(v is not None for v in self.inside.values()) and all(
            v is not None for v in self.outside.values()
        )

    def missing(self) -> list[int]:
        return sorted(i for d in (self.inside, self.outside) for i, v in d.items() if v is None)


def lemma2_witnesses(family: Family, fstar: int) -> WitnessTable:
    """For each ground element find a pair of members differing by just it.

    For ``i`` in ``fstar``: ``(F, G)`` with ``F`` inside ``fstar`` and
    ``F - G = {i}``. For ``j`` outside: ``(F, G)`` with ``G`` containing
    ``fstar`` and ``F - G = {j}``. The lexicographically least pair is kept.
    """
    if fstar not in family:
        raise ValueError(f"{fstar:#b} is not a member")
    members = family.members
    table = WitnessTable(fstar, family.n)
    for i in range(1, family.n + 1):
        bit = 1 << (i - 1)
        found = None
        if fstar & bit:
            for f in members:
                if f & ~fstar or not f & bit:
                    continue
                for g in members:
                    if f & ~g == bit:
                        found = (f, g)
                        break
                if found:
                    break
            table.inside[i] = found
        else:
            for f in members:
                if not f & bit:
                    continue
                for g in members:
                    if fstar & ~g == 0 and f & ~g == bit:
                        found = (f, g)
                        break
                if found:
                    break
            table.outside[i] = found
    return table


@dataclass(frozen=True)
class DigraphAudit:
    n: int
    size: int
    arcs: tuple[tuple[int, int], ...]
    unordered_pairs: int
    both_orientations: int

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    @property
    def passed(self) -> bool:
        return self.arc_count >= self.n and self.size * (self.size - 1) >= self.n


def diamond_digraph_audit(family: Family) -> DigraphAudit:
    """Arcs ``(A, B)`` between members with ``|B - A| == 1``.

    Passing means at least ``n`` arcs and ``m(m-1) >= n``. Pairs with an arc
    in both directions are counted separately for reference.
    """
    ms = family.members
    arcs = tuple((a, b) for a in ms for b in ms if a != b and popcount(b & ~a) == 1)
    arcset = set(arcs)
    both = sum(1 for a, b in arcs if a < b and (b, a) in arcset)
    unordered = len({frozenset(p) for p in arcs})
    return DigraphAudit(family.n, len(ms), arcs, unordered, both)


@dataclass
class ExtremalAudit:
    checks: list[tuple[str, int, bool]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, _, ok in self.checks)

    def violations(self) -> list[tuple[str, int, bool]]:
        return [c for c in self.checks if not c[2]]


def minimal_members(family: Family) -> list[int]:
    ms = family.members
    return [a for a in ms if not any(b != a and b & ~a == 0 for b in ms)]


def maximal_members(family: Family) -> list[int]:
    ms = family.members
    return [a for a in ms if not any(b != a and a & ~b == 0 for b in ms)]


def extremal_element_audit(family: Family) -> ExtremalAudit:
    """Size checks implied by diamond saturation at minimal/maximal members."""
    n, m = family.n, len(family)
    rep = ExtremalAudit()
    for s in minimal_members(family):
        rep.checks.append(("minimal", s, popcount(s) + 1 <= m))
    for u in maximal_members(family):
        rep.checks.append(("maximal", u, n - popcount(u) + 1 <= m))
    if 0 in family:
        rep.checks.append(("contains_empty", 0, m >= n + 1))
    if family.top in family:
        rep.checks.append(("contains_full", family.top, m >= n + 1))
    return rep


# -- antichain: gaps, wide-gap elimination, greedy coloring --------------------

def _strip(family: Family) -> Family:
    return family.remove(0, family.top)


def _require_partition_of(family: Family, p: ChainPartition, augmented: bool) -> None:
    if p.augmented != augmented:
        raise ValueError("partition must be %saugmented" % ("" if augmented else "un"))
    if p.family != _strip(family):
        raise ValueError("partition does not cover F minus the empty set and [n]")
    check_partition(p)


@dataclass(frozen=True)
class GapAudit:
    passed: bool
    gap: Optional[Gap] = None
    missing: Optional[int] = None


def gap_fullness_audit(family: Family, p: ChainPartition) -> GapAudit:
    """Every set strictly inside a gap of ``p`` must belong to ``family``."""
    _require_partition_of(family, p, augmented=True)
    for gap in p.gaps():
        if gap.size < 2:
            continue
        for z in iter_open_interval(gap.x, gap.y):
            if z not in family:
                return GapAudit(False, gap, z)
    return GapAudit(True)


def _interior_count(chain: tuple[int, ...], x: int, y: int) -> list[int]:
    return [z for z in chain if z != x and z != y and x & ~z == 0 and z & ~y == 0]


def wide_gaps(p: ChainPartition) -> list[tuple[Gap, int]]:
    """Wide gaps with the smallest donor chain index for each."""
    out = []
    for gap in p.gaps():
        if gap.size < 4:
            # three interior chain elements need at least four levels
            continue
        for j, other in enumerate(p.chains):
            if j != gap.chain_index and len(_interior_count(other, gap.x, gap.y)) >= 3:
                out.append((gap, j))
                break
    return out


def _measure(p: ChainPartition) -> tuple[int, int]:
    sizes = [g.size for g, _ in wide_gaps(p)]
    if not sizes:
        return (0, 0)
    top = max(sizes)
    return (top, sizes.count(top))


@dataclass(frozen=True)
class Move:
    t: int
    from_chain: int
    to_chain: int
    gap: tuple[int, int]
    measure_before: tuple[int, int]
    measure_after: tuple[int, int]

    def line(self) -> str:
        return f"T={self.t} from={self.from_chain} to={self.to_chain} gap=({self.gap[0]},{self.gap[1]})"


@dataclass
class MoveTrace:
    moves: list[Move] = field(default_factory=list)
    initial_histogram: dict[int, int] = field(default_factory=dict)
    final_histogram: dict[int, int] = field(default_factory=dict)

    def measure_decreasing(self) -> bool:
        return all(m.measure_after < m.measure_before for m in self.moves)

    def export(self) -> str:
        return "".join(m.line() + "\n" for m in self.moves)


def _histogram(p: ChainPartition) -> dict[int, int]:
    return dict(sorted(Counter(g.size for g, _ in wide_gaps(p)).items()))


def replay(p: ChainPartition, trace: MoveTrace) -> ChainPartition:
    """Apply the recorded moves to ``p``."""
    chains = [list(c) for c in p.chains]
    for mv in trace.moves:
        chains[mv.from_chain].remove(mv.t)
        chains[mv.to_chain] = sorted(chains[mv.to_chain] + [mv.t], key=popcount)
    return ChainPartition(p.family, tuple(tuple(c) for c in chains), p.augmented)


def eliminate_wide_gaps(p: ChainPartition, max_moves: int = 100_000) -> tuple[ChainPartition, MoveTrace]:
    """Move middle elements of donor chains into wide gaps until none remain.

    Each step takes the largest wide gap (ties: lowest chain index, then
    lowest X mask), the lowest-indexed donor chain with three members inside
    it, and the lowest three consecutive such members S < T < U; T moves.
    """
    if not p.augmented:
        raise ValueError("partition must be augmented")
    check_partition(p)
    chains = [list(c) for c in p.chains]
    trace = MoveTrace(initial_histogram=_histogram(p))
    current = p
    for _ in range(max_moves):
        wide = wide_gaps(current)
        if not wide:
            trace.final_histogram = {}
            return current, trace
        top = max(g.size for g, _ in wide)
        gap, donor = min(((g, j) for g, j in wide if g.size == top), key=lambda gj: (gj[0].chain_index, gj[0].x))
        inside = _interior_count(tuple(chains[donor]), gap.x, gap.y)
        t = inside[1]
        before = _measure(current)
        chains[donor].remove(t)
        target = chains[gap.chain_index]
        pos = target.index(gap.y)
        target.insert(pos, t)
        current = ChainPartition(p.family, tuple(tuple(c) for c in chains), True)
        after = _measure(current)
        trace.moves.append(Move(t, donor, gap.chain_index, (gap.x, gap.y), before, after))
    raise RuntimeError("wide-gap elimination did not terminate")


@dataclass(frozen=True)
class GapBoundCheck:
    k: int
    d: int
    passed: bool


def gap_capacity_ok(k: int, d: int) -> bool:
    """``2(k-1) >= 2**d - 2``: room in the other chains for a full gap interior."""
    return 2 * (k - 1) >= (1 << d) - 2


def max_gap_bound_check(family: Family, p: ChainPartition) -> GapBoundCheck:
    if wide_gaps(p):
        raise ValueError("partition still has wide gaps")
    if not gap_fullness_audit(family, p).passed:
        raise ValueError("a gap interior is not contained in the family")
    d = max(g.size for g in p.gaps())
    return GapBoundCheck(p.k, d, gap_capacity_ok(p.k, d))


@dataclass
class ColoredFamily:
    n: int
    color: dict[int, int]
    classes: list[tuple[int, ...]]

    def augmented_class(self, j: int) -> tuple[int, ...]:
        """Color class ``j`` (1-based) with the empty set and ``[n]`` added."""
        return (0,) + self.classes[j - 1] + ((1 << self.n) - 1,)

    def gaps(self, j: int) -> list[Gap]:
        c = self.augmented_class(j)
        return [Gap(j, c[t], c[t + 1]) for t in range(len(c) - 1)]


def greedy_color(family: Family, p: ChainPartition) -> ColoredFamily:
    """Class ``j`` = chain ``j`` minus colored members, grown to a maximal chain."""
    _require_partition_of(family, p, augmented=False)
    pool = _strip(family).members
    color: dict[int, int] = {}
    classes = []
    for j, base in enumerate(p.chains, start=1):
        cls = [x for x in base if x not in color]
        for x in pool:
            if x in color or x in cls:
                continue
            if all(x & ~y == 0 or y & ~x == 0 for y in cls):
                cls.append(x)
        cls.sort(key=popcount)
        assert is_chain(cls)
        for x in cls:
            color[x] = j
        classes.append(tuple(cls))
    return ColoredFamily(family.n, color, classes)


@dataclass(frozen=True)
class ColoringCheck:
    passed: bool
    failures: tuple[str, ...] = ()


def coloring_gap_check(family: Family, c: ColoredFamily) -> ColoringCheck:
    """Sperner capacity of every gap and the size of every color class."""
    fails = []
    n = c.n
    for j in range(1, len(c.classes) + 1):
        gaps = c.gaps(j)
        for g in gaps:
            if g.size >= 2 and central_binomial(g.size) > j - 1:
                fails.append(f"class {j}: gap of size {g.size} exceeds capacity {j - 1}")
        need = math.ceil(n / d_star(j)) + 1
        if len(c.augmented_class(j)) < need:
            fails.append(f"class {j}: {len(c.augmented_class(j))} elements < {need}")
    return ColoringCheck(not fails, tuple(fails))
