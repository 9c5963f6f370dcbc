import json

import pytest
from hypothesis import given, strategies as st

from posetsat.familyio import (
    FamilyFormatError,
    family_from_json,
    family_to_json,
    from_bitstring,
    load_family,
    save_family,
    to_bitstring,
)
from posetsat.lattice import Family


def test_bitstrings_put_element_one_first():
    assert to_bitstring(0b001, 3) == "100"
    assert from_bitstring("011", 3) == 0b110


def test_mixed_entries():
    f = family_from_json({"n": 3, "sets": ["000", 3, "111"]})
    assert f.members == (0, 3, 7)
    assert family_to_json(f) == {"n": 3, "sets": ["000", "110", "111"]}


@pytest.mark.parametrize(
    "doc",
    [{"n": 2}, {"n": 2, "sets": ["1"]}, {"n": 2, "sets": [4]}, {"n": 2, "sets": [1, "10"]},
     {"n": -1, "sets": []}, {"n": 2, "sets": [True]}, {"n": 2, "sets": "01"}],
)
def test_rejects_malformed(doc):
    with pytest.raises(FamilyFormatError):
        family_from_json(doc)


def test_unreadable_file(tmp_path):
    p = tmp_path / "f.json"
    p.write_text("[")
    with pytest.raises(FamilyFormatError):
        load_family(p)


@given(st.integers(0, 6).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(0, (1 << n) - 1)))))
def test_roundtrip(arg):
    n, masks = arg
    f = Family.of(n, masks)
    assert family_from_json(json.loads(json.dumps(family_to_json(f)))) == f


def test_save_and_load(tmp_path):
    f = Family.whole(3)
    save_family(f, tmp_path / "b3.json")
    assert load_family(tmp_path / "b3.json") == f
