from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isosing.arrangement import (
    Arrangement,
    braid_arrangement,
    echelon,
    intersection_poset,
    rank2_cover_profile,
    slice_chamber_count,
    slice_chambers,
    verify_g5_profile,
)

from oracles import flats_by_subsets


def oracle_summary(normals):
    flats = flats_by_subsets(normals)
    by_rank = {}
    for r in flats.values():
        by_rank[r] = by_rank.get(r, 0) + 1
    covers = sorted(
        sum(1 for T, s in flats.items() if s == r - 1 and T < S) for S, r in flats.items() if r >= 1
    )
    return by_rank, covers


def poset_summary(arr):
    P = intersection_poset(arr)
    by_rank = {}
    for r in P.rank:
        by_rank[r] = by_rank.get(r, 0) + 1
    covers = sorted(len(P.lower_covers(i)) for i in range(len(P.rank)) if P.rank[i] >= 1)
    return by_rank, covers


vectors = st.tuples(*[st.integers(-2, 2)] * 3).filter(any)


def distinct_lines(vs):
    seen, out = set(), []
    for v in vs:
        key = echelon([v])
        if key not in seen:
            seen.add(key)
            out.append(v)
    return out


@given(st.lists(vectors, min_size=1, max_size=6).map(distinct_lines))
@settings(max_examples=60, deadline=None)
def test_poset_matches_subset_oracle(normals):
    arr = Arrangement(3, normals)
    assert poset_summary(arr) == oracle_summary(arr.normals)


@given(st.lists(vectors, min_size=2, max_size=6).map(distinct_lines))
@settings(max_examples=60, deadline=None)
def test_poset_invariants(normals):
    arr = Arrangement(3, normals)
    P = intersection_poset(arr)
    assert len(P.of_rank(1)) == len(arr.normals)
    assert all(len(P.lower_covers(i)) >= 2 for i in P.of_rank(2))
    assert all(len(P.lower_covers(i)) == 1 for i in P.of_rank(1))


def test_braid_arrangements():
    assert rank2_cover_profile(braid_arrangement(3)) == {2, 3}
    P = intersection_poset(braid_arrangement(3))
    # set partitions of {1,..,4} by number of blocks: 1, 6, 7, 1
    assert [len(P.of_rank(r)) for r in range(4)] == [1, 6, 7, 1]
    assert rank2_cover_profile(braid_arrangement(2)) == {3}


def test_two_generic_planes():
    arr = Arrangement(3, [(1, 0, 0), (0, 1, 1)])
    P = intersection_poset(arr)
    assert [len(P.of_rank(r)) for r in range(3)] == [1, 2, 1]
    assert rank2_cover_profile(arr) == {2}


def test_empty_arrangement():
    arr = Arrangement.from_text("# nothing here\n")
    P = intersection_poset(arr)
    assert P.rank == [0]
    assert rank2_cover_profile(arr) == set()


def test_rejections():
    with pytest.raises(ValueError):
        Arrangement(3, [(1, 0, 0), (2, 0, 0)])
    with pytest.raises(ValueError):
        Arrangement(3, [(0, 0, 0)])
    with pytest.raises(ValueError):
        Arrangement(3, [(1, 0)])


def test_file_format(tmp_path):
    f = tmp_path / "arr.txt"
    f.write_text("1 -1 0  # x = y\n0, 1, -1\n1 0 -1\n1/2 0 0\n")
    arr = Arrangement.load(f)
    assert arr.dim == 3 and len(arr.normals) == 4
    assert arr.normals[3] == (Fraction(1, 2), 0, 0)


def test_g5_profile_skips_without_file(tmp_path):
    assert verify_g5_profile(None).status == "SKIPPED"
    assert verify_g5_profile(tmp_path / "missing.txt").status == "SKIPPED"


@pytest.mark.parametrize("k", [1, 2, 3, 6, 17, 100])
def test_slice_counts(k):
    assert slice_chamber_count(k) == 2 * k


directions = st.tuples(st.integers(-9, 9), st.integers(-9, 9)).filter(any)


@given(st.lists(directions, min_size=1, max_size=12))
def test_slice_chambers_of_arbitrary_lines(normals):
    lines = {echelon([n]) for n in normals}
    chambers = slice_chambers(normals)
    assert len(set(chambers)) == len(chambers) == 2 * len(lines)


def test_slice_count_needs_a_line():
    with pytest.raises(ValueError):
        slice_chamber_count(0)
