from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from higherext.cube import is_n_fold_extension
from higherext.enumeration import (
    enumerate_double_extensions,
    enumerate_extensions_from,
    enumerate_normal_subgroups,
    library_double_extensions,
    library_extensions,
    mutate_cube,
    normal_subgroups_inside,
    random_cube,
)
from higherext.errors import CapExceeded
from higherext.groups import is_surjective, trivial_group
from higherext.library import library_group

from util import d4, d4_center, d4_klein, d4_rotations, d4_square, klein_square, sub


def test_normal_subgroup_counts():
    assert len(enumerate_normal_subgroups(library_group("Z4"))) == 3
    assert len(enumerate_normal_subgroups(trivial_group())) == 1
    assert len(enumerate_normal_subgroups(library_group("Klein"))) == 5
    assert len(enumerate_normal_subgroups(library_group("Q8"))) == 6


def test_normal_subgroups_of_s3():
    S3 = library_group("S3")
    assert enumerate_normal_subgroups(S3) == [S3.trivial_subgroup(), sub(S3, "(0 1 2)"), S3.whole()]


def test_normal_subgroups_of_d4():
    G = d4()
    found = enumerate_normal_subgroups(G)
    # the trivial group, the centre, three subgroups of index 2, and the whole group
    assert len(found) == 6
    for N in (d4_center(), d4_rotations(), d4_klein(), G.whole(), G.trivial_subgroup()):
        assert N in found
    assert all(N.is_normal() for N in found)


def test_extensions_from_a_group():
    maps = enumerate_extensions_from(library_group("Z4"))
    assert sorted(f.codomain.order for f in maps) == [1, 2, 4]
    assert all(is_surjective(f) for f in maps)
    assert len(library_extensions(16)) == 242


def test_double_extensions_examples():
    assert len(enumerate_double_extensions(trivial_group())) == 1
    assert klein_square() in enumerate_double_extensions(library_group("Klein"))
    assert d4_square() in enumerate_double_extensions(d4())
    assert all(is_n_fold_extension(A) for A in library_double_extensions(8))


def test_normal_subgroups_inside():
    assert normal_subgroups_inside(d4(), d4_klein()) == [d4().trivial_subgroup(), d4_center(), d4_klein()]


def test_caps():
    with pytest.raises(CapExceeded):
        enumerate_double_extensions(library_group("S4"))
    with pytest.raises(CapExceeded):
        random_cube(4, 0)


def test_random_cube_is_deterministic():
    assert random_cube(3, 7, budget=12) == random_cube(3, 7, budget=12)
    assert random_cube(2, 7, budget=12, mutate=True) == random_cube(2, 7, budget=12, mutate=True)


def test_mutating_the_top_is_refused():
    with pytest.raises(ValueError):
        mutate_cube(klein_square(), 3)


@given(st.integers(1, 3), st.integers(0, 10 ** 6))
def test_random_cubes(dim, seed):
    A = random_cube(dim, seed, budget=12)
    assert A.dim == dim and A.top.order <= 12 and is_n_fold_extension(A)
    assert not is_n_fold_extension(random_cube(dim, seed, budget=12, mutate=True))
