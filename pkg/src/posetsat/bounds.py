"""Exact evaluation of the saturation-number bounds.

Integer formulas use Python big integers throughout. Quantities involving
the real number ``log2 k`` are decided with certified interval arithmetic
(``mpmath.iv``) at increasing precision, falling back to exact rationals
when ``k`` is a power of two.
"""
from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Union

from mpmath import iv

from .poset import PosetSpec, butterfly, diamond, is_isomorphic, parse_poset, v2

Number = Union[int, Fraction, float]

#: epsilon in the iterated chain-saturation construction, 1 - log2(15)/4
MNS_EPSILON = 1 - math.log2(15) / 4


@lru_cache(maxsize=None)
def central_binomial(d: int) -> int:
    return math.comb(d, d // 2)


def d_star(j: int) -> int:
    """Largest ``d`` with ``C(d, floor(d/2)) <= j - 1``; ``d_star(1) = 1`` by convention."""
    if j < 1:
        raise ValueError("j must be >= 1")
    if j == 1:
        return 1
    d = 0
    while central_binomial(d + 1) <= j - 1:
        d += 1
    return d


def d_star_groups(k: int, start: int = 3) -> Iterator[tuple[int, int, int]]:
    """Yield ``(d, lo, hi)``: ``d_star(j) == d`` for every ``lo <= j <= hi``,
    covering ``start..k`` in order."""
    if k < start:
        return
    d = d_star(start)
    lo = start
    while lo <= k:
        # d_star(j) == d exactly for cb(d) + 1 <= j <= cb(d + 1)
        hi = min(central_binomial(d + 1), k)
        if hi >= lo:
            yield d, lo, hi
        lo = max(lo, hi + 1)
        d += 1


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def bound_a(k: int, n: int) -> int:
    """``k * ceil(n / (floor(log2 k) + 1)) - k + 2``."""
    return k * _ceil_div(n, k.bit_length()) - k + 2


def bound_b(k: int, n: int) -> int:
    """``2n + sum_{j=3..k} ceil(n / d_star(j)) - k + 2`` via grouped summation."""
    total = 2 * n
    for d, lo, hi in d_star_groups(k):
        total += (hi - lo + 1) * _ceil_div(n, d)
    return total - k + 2


def slope_a(k: int) -> Fraction:
    return Fraction(k, k.bit_length())


def slope_b(k: int) -> Fraction:
    """``2 + sum_{j=3..k} 1/d_star(j)``, summed per constant-``d`` group."""
    s = Fraction(2)
    for d, lo, hi in d_star_groups(k):
        s += Fraction(hi - lo + 1, d)
    return s


def slope_b_direct(k: int) -> Fraction:
    s = Fraction(2)
    for j in range(3, k + 1):
        s += Fraction(1, d_star(j))
    return s


@dataclass(frozen=True)
class SlopeComparison:
    k: int
    slope_a: Fraction
    slope_b: Fraction

    @property
    def winner(self) -> str:
        if self.slope_a > self.slope_b:
            return "a"
        if self.slope_b > self.slope_a:
            return "b"
        return "tie"


def slope_compare(k: int) -> SlopeComparison:
    """Leading coefficients in ``n`` of the two antichain lower bounds.

    The bound with the larger slope wins for all sufficiently large ``n``.
    """
    if k < 3:
        raise ValueError("k must be >= 3")
    return SlopeComparison(k, slope_a(k), slope_b(k))


def _segments(k_max: int) -> Iterator[tuple[int, int, int, int]]:
    """Maximal runs ``[s, e]`` of k in ``3..k_max`` with constant bit length
    ``B`` and constant ``d_star(k) = d``; yields ``(s, e, B, d)``."""
    for d, lo, hi in d_star_groups(k_max):
        s = lo
        while s <= hi:
            b = s.bit_length()
            e = min(hi, (1 << b) - 1)
            yield s, e, b, d
            s = e + 1


def crossover(k_max: int) -> Optional[int]:
    """Least ``k <= k_max`` where bound (a) has the strictly larger slope.

    On each segment both slopes are affine in ``k``, so the first positive
    point of their difference is solved for exactly.
    """
    if k_max < 3:
        raise ValueError("k_max must be >= 3")
    sb = Fraction(2)  # slope_b(s - 1) on entry to each segment
    for s, e, b, d in _segments(k_max):
        sb_s = sb + Fraction(1, d)
        diff = Fraction(s, b) - sb_s
        if diff > 0:
            return s
        rate = Fraction(1, b) - Fraction(1, d)
        if rate > 0:
            steps = math.floor(-diff / rate) + 1
            if s + steps <= e:
                return s + steps
        sb = sb_s + Fraction(e - s, d)
    return None


def crossover_scan(k_max: int) -> Optional[int]:
    """Reference implementation: check every ``k`` in turn."""
    sb = Fraction(2)
    for k in range(3, k_max + 1):
        sb += Fraction(1, d_star(k))
        if Fraction(k, k.bit_length()) > sb:
            return k
    return None


# -- certified real arithmetic ------------------------------------------------

_PRECISIONS = (64, 128, 256, 512, 1024, 4096)


def _is_pow2(k: int) -> bool:
    return k > 0 and k & (k - 1) == 0


@contextmanager
def _iv_prec(prec: int):
    saved = iv.prec
    iv.prec = prec
    try:
        yield
    finally:
        iv.prec = saved


def _refine(make_interval, decide):
    """Evaluate ``make_interval()`` at rising precision until ``decide`` returns non-None."""
    for prec in _PRECISIONS:
        with _iv_prec(prec):
            x = make_interval()
            verdict = decide(x)
        if verdict is not None:
            return verdict
    raise ArithmeticError("interval refinement did not converge")


def _log2_iv(k: int):
    return iv.log(iv.mpf(k)) / iv.log(iv.mpf(2))


def _floor_of(make_interval) -> int:
    # enclosures here are positive, so int() truncation is the floor
    def decide(x):
        lo, hi = int(x.a), int(x.b)
        return lo if lo == hi else None

    return _refine(make_interval, decide)


def log2_cubed_ceil(k: int) -> int:
    """``ceil((log2 k)^3)``, certified."""
    if k < 1:
        raise ValueError("k must be positive")
    if _is_pow2(k):
        return (k.bit_length() - 1) ** 3
    # log2 k is irrational here, so its cube is never an integer
    return _floor_of(lambda: _log2_iv(k) ** 3) + 1


def main_bound_interval(k: int, n: int, prec: int = 64) -> tuple[float, float]:
    """Enclosure of ``(1 - 1/log2 k) * k n / log2 k``."""
    with _iv_prec(prec):
        x = _main_iv(k, n)
        return float(x.a), float(x.b)


def _main_iv(k: int, n: int):
    lg = _log2_iv(k)
    return (1 - 1 / lg) * iv.mpf(k) * iv.mpf(n) / lg


def main_bound_exact(k: int) -> Optional[Fraction]:
    """Per-unit-``n`` coefficient as a rational when ``k`` is a power of two."""
    if not _is_pow2(k):
        return None
    lg = k.bit_length() - 1
    return (1 - Fraction(1, lg)) * Fraction(k, lg)


def main_bound_floor(k: int, n: int) -> int:
    """``floor((1 - 1/log2 k) * k n / log2 k)``, certified."""
    exact = main_bound_exact(k)
    if exact is not None:
        return math.floor(exact * n)
    # (1 - 1/L)/L^2 is transcendental for irrational L = log2 k: never an integer
    return _floor_of(lambda: _main_iv(k, n))


@dataclass(frozen=True)
class InequalityCheck:
    k: int
    n: int
    threshold: int
    bound_a: int
    main_floor: int
    passed: bool


def verify_inequality_a(k: int, n: int) -> InequalityCheck:
    """Decide ``bound_a(k, n) >= (1 - 1/log2 k) k n / log2 k`` exactly.

    Requires ``n >= ceil((log2 k)^3)``; raises ValueError naming the threshold.
    """
    if k < 3:
        raise ValueError("k must be >= 3")
    threshold = log2_cubed_ceil(k)
    if n < threshold:
        raise ValueError(f"n={n} below required threshold ceil(log2(k)^3) = {threshold}")
    a = bound_a(k, n)
    exact = main_bound_exact(k)
    if exact is not None:
        passed = a >= exact * n
    else:
        def decide(x):
            if x.b <= a:
                return True
            if x.a > a:
                return False
            return None

        passed = _refine(lambda: _main_iv(k, n), decide)
    return InequalityCheck(k, n, threshold, a, main_bound_floor(k, n), passed)


# -- reports --------------------------------------------------------------------

@dataclass(frozen=True)
class BoundEntry:
    name: str
    value: Number
    kind: str  # lower | upper | exact | approx
    condition: str
    applicable: Optional[bool] = True

    def to_json(self) -> dict:
        v = self.value
        if isinstance(v, Fraction):
            v = {"numerator": v.numerator, "denominator": v.denominator}
        return {"name": self.name, "value": v, "kind": self.kind, "condition": self.condition, "applicable": self.applicable}


@dataclass
class BoundReport:
    target: str
    n: int
    k: Optional[int] = None
    entries: list[BoundEntry] = field(default_factory=list)

    def add(self, name: str, value: Number, kind: str, condition: str, applicable: Optional[bool] = True) -> None:
        self.entries.append(BoundEntry(name, value, kind, condition, applicable))

    def get(self, name: str) -> BoundEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def value(self, name: str) -> Number:
        return self.get(name).value

    def best_lower(self) -> Optional[int]:
        vals = [e.value for e in self.entries if e.applicable is True and e.kind in ("lower", "exact")]
        return max(vals) if vals else None

    def best_upper(self) -> Optional[int]:
        vals = [e.value for e in self.entries if e.applicable is True and e.kind in ("upper", "exact")]
        return min(vals) if vals else None

    def consistent(self) -> bool:
        lo, hi = self.best_lower(), self.best_upper()
        return lo is None or hi is None or lo <= hi

    def to_json(self) -> dict:
        return {"target": self.target, "n": self.n, "k": self.k, "entries": [e.to_json() for e in self.entries]}


def ferrara_antichain_upper_approx(k: int, n: int) -> float:
    lg = math.log2(k)
    return (n - 1) * k - (0.5 * lg + 0.5 * math.log2(lg))


def antichain_bounds(k: int, n: int) -> BoundReport:
    """All lower/upper bounds for the target antichain of size ``k + 1``."""
    if k < 3:
        raise ValueError("k must be >= 3")
    if n < k:
        raise ValueError(f"bounds need n >= k (got n={n}, k={k})")
    rep = BoundReport(f"antichain:{k + 1}", n, k)
    _antichain_entries(rep, k, n)
    return rep


def _antichain_entries(rep: BoundReport, k: int, n: int) -> None:
    rep.add("bound_a", bound_a(k, n), "lower", "k >= 3, n >= k")
    rep.add("bound_b", bound_b(k, n), "lower", "k >= 3, n >= k")
    rep.add("ferrara_lower", 3 * n - 1, "lower", "n > k >= 3", n > k)
    threshold = log2_cubed_ceil(k)
    rep.add("main_bound", main_bound_floor(k, n), "lower", f"n >= ceil(log2(k)^3) = {threshold}", n >= threshold)
    rep.add("ferrara_upper", ferrara_antichain_upper_approx(k, n), "approx", "n > k >= 3; O(1) term dropped", n > k)


def _ceil_log2(n: int) -> int:
    return (n - 1).bit_length()


def _ceil_sqrt(n: int) -> int:
    return math.isqrt(n - 1) + 1 if n > 0 else 0


def _ceil_pow2_half(e: int) -> int:
    """``ceil(2 ** (e / 2))`` for integer ``e`` (possibly negative)."""
    if e < 0:
        return 1
    if e % 2 == 0:
        return 1 << (e // 2)
    return math.isqrt((1 << e) - 1) + 1


def _ceil_root4(x: int) -> int:
    r = math.isqrt(math.isqrt(x))
    return r if r ** 4 == x else r + 1


def chain_upper(k: int) -> int:
    """``min(2**(k-1), ceil(2**((1 - eps) k)))`` where ``2**((1-eps)k) = 15**(k/4)``."""
    return min(1 << (k - 1), _ceil_root4(15 ** k))


def identify(target: Union[str, PosetSpec]) -> tuple[str, Optional[int]]:
    """Classify a target as (family name, parameter)."""
    spec = parse_poset(target) if isinstance(target, str) else target
    rels = len(spec.relations)
    p = spec.size
    if rels == 0:
        return "antichain", p
    if rels == p * (p - 1) // 2:
        return "chain", p
    for name, ref in (("v2", v2()), ("diamond", diamond()), ("butterfly", butterfly())):
        if is_isomorphic(spec, ref):
            return name, None
    return "custom", None


def reference_bounds(target: Union[str, PosetSpec], n: int) -> BoundReport:
    """Known bounds on the (induced) saturation number of ``target`` in ``B_n``.

    For chains the entries refer to weak saturation ``sat(n, P_{k+1})``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    kind, p = identify(target)
    if kind == "v2":
        rep = BoundReport("v2", n)
        rep.add("ferrara_v2", n + 1, "exact", "n >= 2", n >= 2)
    elif kind == "butterfly":
        rep = BoundReport("butterfly", n)
        rep.add("ferrara_butterfly_lower", _ceil_log2(n), "lower", "n >= 3", n >= 3)
        rep.add("ferrara_butterfly_upper", math.comb(n, 2) + 2 * n - 1, "upper", "n >= 3", n >= 3)
    elif kind == "diamond":
        rep = BoundReport("diamond", n)
        rep.add("ferrara_diamond_lower", _ceil_log2(n), "lower", "n >= 2", n >= 2)
        rep.add("sqrt_lower", _ceil_sqrt(n), "lower", "n > 0")
        rep.add("diamond_lower", max(_ceil_log2(n), _ceil_sqrt(n)), "lower", "n > 0")
        rep.add("ferrara_diamond_upper", n + 1, "upper", "n >= 2", n >= 2)
    elif kind == "chain":
        k = p - 1
        if k < 1:
            raise ValueError("chain targets need at least 2 elements")
        rep = BoundReport(f"chain:{p}", n, k)
        cond = "weak saturation sat(n, P_{k+1}); n sufficiently large"
        rep.add("gerbner_lower", _ceil_pow2_half(k - 2), "lower", cond, None)
        rep.add("gerbner_upper", 1 << (k - 1), "upper", cond, None)
        rep.add("mns_upper", _ceil_root4(15 ** k), "upper", cond + "; eps = 1 - log2(15)/4", None)
        rep.add("chain_upper", chain_upper(k), "upper", cond, None)
    elif kind == "antichain":
        k = p - 1
        rep = BoundReport(f"antichain:{p}", n, k)
        if k == 0:
            rep.add("trivial", 0, "exact", "empty family")
        elif k == 1:
            rep.add("ferrara_a2", n + 1, "exact", "n >= 1")
        elif k == 2:
            rep.add("ferrara_a3", 2 * n, "exact", "n >= 1")
        elif n >= k:
            _antichain_entries(rep, k, n)
        else:
            rep.add("bound_a", bound_a(k, n), "lower", "k >= 3, n >= k", False)
    else:
        raise ValueError("no reference bounds for this target")
    return rep


def solver_lower_bound(target: PosetSpec, n: int) -> int:
    """Largest proven lower bound usable to seed the exact search (induced mode)."""
    try:
        rep = reference_bounds(target, n)
    except ValueError:
        return 0
    if rep.target.startswith("chain:"):
        return 0
    return rep.best_lower() or 0
