import random
from itertools import combinations

import numpy as np
import pytest

from posetsat.chains import (
    ChainPartition,
    augment_and_gaps,
    chain_partition,
    check_partition,
    is_chain,
    max_gap,
    maximum_antichain,
    width,
)
from posetsat.lattice import Family, maximal_chain


def _max_antichain_table_b4() -> np.ndarray:
    """best[S] = size of the largest antichain among the members of S (S a set of B_4 masks)."""
    subsets = np.arange(1 << 16, dtype=np.int64)
    bad = np.zeros(1 << 16, dtype=bool)
    for a in range(16):
        for b in range(16):
            if a != b and a & ~b == 0:
                bad |= ((subsets >> a) & 1).astype(bool) & ((subsets >> b) & 1).astype(bool)
    pop = np.array([bin(s).count("1") for s in range(1 << 16)], dtype=np.int64)
    best = np.where(bad, 0, pop)
    for i in range(16):
        with_i = subsets[(subsets >> i) & 1 == 1]
        best[with_i] = np.maximum(best[with_i], best[with_i ^ (1 << i)])
    return best


def test_examples():
    assert width(Family.whole(4)) == 6
    assert width(Family.of(5, maximal_chain(5, range(1, 6)))) == 1
    assert width(Family.of(3, [1, 2, 4])) == 3
    with pytest.raises(ValueError):
        width(Family.of(3, []))


def test_width_matches_brute_force_on_b4():
    best = _max_antichain_table_b4()
    for m in range(1, 13):
        for combo in combinations(range(16), m):
            fam = Family(4, combo)
            key = sum(1 << x for x in combo)
            w = width(fam)
            assert w == best[key], combo
            anti = maximum_antichain(fam)
            assert len(anti) == w
            assert all(a & ~b and b & ~a for a, b in combinations(anti, 2))


def test_partition_examples():
    p = chain_partition(Family.whole(2))
    assert p.k == 2 and not p.augmented
    check_partition(p)
    chain = Family.of(3, [0, 1, 3, 7])
    assert chain_partition(chain).chains == ((0, 1, 3, 7),)
    assert chain_partition(Family.of(3, [1, 2, 4])).chains == ((1,), (2,), (4,))


def test_partition_size_equals_width_random():
    rng = random.Random(2)
    for _ in range(300):
        n = rng.randint(2, 6)
        fam = Family.of(n, rng.sample(range(1 << n), rng.randint(1, min(20, 1 << n))))
        p = chain_partition(fam)
        check_partition(p)
        assert p.k == width(fam)
        assert all(is_chain(c) for c in p.chains)
        covered = sorted(x for c in p.chains for x in c)
        assert covered == list(fam.members)


def test_augment_examples():
    fam = Family.of(4, [0b0001, 0b0011])
    a, gaps = augment_and_gaps(ChainPartition(fam, ((1, 3),)))
    assert a.chains == ((0, 1, 3, 15),)
    assert [g.size for g in gaps] == [1, 1, 2]

    a, gaps = augment_and_gaps(ChainPartition(Family.of(3, []), ((),)))
    assert a.chains == ((0, 7),) and [g.size for g in gaps] == [3]

    a, gaps = augment_and_gaps(ChainPartition(Family.of(4, [3]), ((3,),)))
    assert [g.size for g in gaps] == [2, 2] and len(a.chains[0]) == 3
    assert max_gap(a) == 2


def test_augment_rejects_bad_inputs():
    with pytest.raises(ValueError):
        augment_and_gaps(chain_partition(Family.of(2, [0, 1])))
    a, _ = augment_and_gaps(chain_partition(Family.of(2, [1])))
    with pytest.raises(ValueError):
        augment_and_gaps(a)


def test_length_lower_bound_holds_for_random_augmented_chains():
    rng = random.Random(9)
    for _ in range(200):
        n = rng.randint(2, 7)
        full = (1 << n) - 1
        fam = Family.of(n, [x for x in rng.sample(range(1, full), rng.randint(1, min(15, full - 1)))])
        a, gaps = augment_and_gaps(chain_partition(fam))
        for ci, c in enumerate(a.chains):
            d = max_gap(a, ci)
            assert len(c) >= -(-n // d) + 1
