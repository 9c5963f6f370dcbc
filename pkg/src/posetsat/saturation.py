"""Saturation checking, greedy completion and the exact minimum search."""
from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional

from . import bounds
from .containment import INDUCED, MODES, Embedding, contains, find_copy
from .lattice import MAX_ENUM_N, Family
from .poset import PosetSpec

log = logging.getLogger(__name__)

SYMMETRY_MAX_N = 4


@dataclass(frozen=True)
class SaturationVerdict:
    saturated: bool
    copy: Optional[Embedding] = None
    missing_blocker: Optional[int] = None

    @property
    def failure(self) -> Optional[str]:
        if self.copy is not None:
            return "contains_copy"
        if self.missing_blocker is not None:
            return "missing_blocker"
        return None


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")


def is_saturated(family: Family, target: PosetSpec, mode: str = INDUCED) -> SaturationVerdict:
    """Decide whether ``family`` is ``target``-saturated in ``B_n``.

    Failures are reported for the first violation: a copy inside the family,
    else the smallest-mask outsider whose addition creates no copy.
    """
    _check_mode(mode)
    if family.n > MAX_ENUM_N:
        raise ValueError(f"ground size {family.n} exceeds {MAX_ENUM_N}")
    emb = find_copy(family, target, mode)
    if emb is not None:
        return SaturationVerdict(False, copy=emb)
    for s in family.outsiders():
        if not contains(family.add(s), target, mode, required=s):
            return SaturationVerdict(False, missing_blocker=s)
    return SaturationVerdict(True)


def complete(family: Family, target: PosetSpec, mode: str = INDUCED, order: str = "ascending") -> Family:
    """Greedily add sets (in mask order) that keep the family copy-free.

    One pass suffices: copies survive later additions, so every rejected
    set stays blocked.
    """
    _check_mode(mode)
    if order not in ("ascending", "descending"):
        raise ValueError("order must be 'ascending' or 'descending'")
    if contains(family, target, mode):
        raise ValueError("family already contains a copy of the target")
    candidates = range(1 << family.n)
    if order == "descending":
        candidates = reversed(candidates)
    members = set(family.members)
    current = family
    for s in candidates:
        if s in members:
            continue
        trial = current.add(s)
        if not contains(trial, target, mode, required=s):
            current = trial
            members.add(s)
    return current


@dataclass
class SolveResult:
    n: int
    target: str
    mode: str
    min_size: Optional[int]
    witness: Optional[Family]
    nodes_explored: int
    elapsed: float
    lower: int
    upper: Optional[int]
    per_size_nodes: dict[int, int] = field(default_factory=dict)

    @property
    def inconclusive(self) -> bool:
        return self.min_size is None


def _all_blocked(family: Family, target: PosetSpec, mode: str) -> bool:
    return all(contains(family.add(s), target, mode, required=s) for s in family.outsiders())


class BudgetExhausted(Exception):
    pass


def _perm_tables(n: int) -> list[list[int]]:
    """For every non-identity permutation of the ground set, its action on masks."""
    tables = []
    for perm in permutations(range(n)):
        if list(perm) == list(range(n)):
            continue
        table = [0] * (1 << n)
        for mask in range(1 << n):
            img = 0
            for i in range(n):
                if mask >> i & 1:
                    img |= 1 << perm[i]
            table[mask] = img
        tables.append(table)
    return tables


class _Search:
    """Depth-first enumeration of copy-free families of one fixed size.

    Families are built in ascending mask order, so the first saturated leaf
    is the lexicographically least one.
    """

    def __init__(self, n: int, target: PosetSpec, mode: str, budget: Optional[int], symmetry: bool):
        self.n = n
        self.size = 1 << n
        self.target = target
        self.mode = mode
        self.budget = budget
        self.nodes = 0
        self.perms = _perm_tables(n) if symmetry and n <= SYMMETRY_MAX_N else []

    def _canonical(self, members: list[int]) -> bool:
        # a prefix that is not orbit-minimal cannot extend to an orbit-minimal family
        for table in self.perms:
            if sorted(table[x] for x in members) < members:
                return False
        return True

    def _tick(self) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExhausted

    def run(self, m: int, first: Optional[int] = None) -> Optional[Family]:
        starts = range(self.size) if first is None else [first]
        if m == 0:
            self._tick()
            fam = Family(self.n, ())
            return fam if is_saturated(fam, self.target, self.mode).saturated else None
        for x in starts:
            if self.size - x < m:
                break
            found = self._extend([x], m)
            if found is not None:
                return found
        return None

    def _extend(self, members: list[int], m: int) -> Optional[Family]:
        self._tick()
        fam = Family(self.n, tuple(members))
        if self.perms and not self._canonical(members):
            return None
        if contains(fam, self.target, self.mode, required=members[-1]):
            return None
        if len(members) == m:
            return fam if _all_blocked(fam, self.target, self.mode) else None
        need = m - len(members)
        for x in range(members[-1] + 1, self.size - need + 1):
            members.append(x)
            found = self._extend(members, m)
            members.pop()
            if found is not None:
                return found
        return None


def _branch(args):
    n, target, mode, budget, symmetry, m, first = args
    search = _Search(n, target, mode, budget, symmetry)
    try:
        found = search.run(m, first)
    except BudgetExhausted:
        return first, None, search.nodes, True
    return first, found, search.nodes, False


def min_saturated(
    n: int,
    target: PosetSpec,
    mode: str = INDUCED,
    budget: Optional[int] = None,
    *,
    symmetry: bool = True,
    seed: bool = True,
    jobs: int = 1,
) -> SolveResult:
    """Exact minimum size of a ``target``-saturated family in ``B_n``.

    Sizes are tried upward from a proven lower bound (``seed``) or from 0.
    ``budget`` caps search nodes; when it runs out the result is
    inconclusive with ``min_size=None`` and the interval ``[lower, upper]``,
    ``upper`` coming from a greedy completion.
    """
    _check_mode(mode)
    if n > MAX_ENUM_N:
        raise ValueError(f"ground size {n} exceeds {MAX_ENUM_N}")
    t0 = time.perf_counter()
    greedy = complete(Family(n, ()), target, mode)
    upper = len(greedy)
    start = bounds.solver_lower_bound(target, n) if seed and mode == INDUCED else 0
    start = min(start, upper)
    nodes = 0
    per_size: dict[int, int] = {}
    for m in range(start, upper + 1):
        remaining = None if budget is None else budget - nodes
        if jobs > 1 and m > 0:
            found, used, exhausted = _run_parallel(n, target, mode, remaining, symmetry, m, jobs)
        else:
            search = _Search(n, target, mode, remaining, symmetry)
            exhausted = False
            try:
                found = search.run(m)
            except BudgetExhausted:
                found, exhausted = None, True
            used = search.nodes
        nodes += used
        per_size[m] = used
        if exhausted:
            log.info("budget exhausted at size %d after %d nodes", m, nodes)
            return SolveResult(n, target.label, mode, None, greedy, nodes, time.perf_counter() - t0, m, upper, per_size)
        if found is not None:
            return SolveResult(n, target.label, mode, m, found, nodes, time.perf_counter() - t0, m, m, per_size)
    raise AssertionError("greedy completion is saturated, so the search must succeed by its size")


def _run_parallel(n, target, mode, remaining, symmetry, m, jobs):
    tasks = [(n, target, mode, remaining, symmetry, m, first) for first in range((1 << n) - m + 1)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_branch, tasks))
    used = sum(r[2] for r in results)
    exhausted = any(r[3] for r in results) or (remaining is not None and used > remaining)
    # earliest first element holds the lexicographically least witness
    for first, found, _, hit in sorted(results, key=lambda r: r[0]):
        if hit:
            return None, used, True
        if found is not None:
            return found, used, False
    return None, used, exhausted
