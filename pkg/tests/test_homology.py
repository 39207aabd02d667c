from __future__ import annotations

from math import gcd

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from higherext import config
from higherext.errors import BudgetExceeded, CapExceeded, OverflowDetected, ValidationError
from higherext.groups import cyclic_group, direct_product, trivial_group
from higherext.homology import AbelianInvariants, bar_complex, integral_homology, smith_normal_form
from higherext.library import library_group, library_names
from higherext.structure import abelianization_invariants


def test_bar_complex_ranks():
    assert bar_complex(trivial_group(), 3).ranks == (1, 0, 0, 0)
    assert bar_complex(cyclic_group(2), 3).ranks == (1, 1, 1, 1)
    cx = bar_complex(library_group("S3"), 3)
    assert cx.ranks == (1, 5, 25, 125) and cx.check_square_zero()


def test_bar_complex_budget():
    with pytest.raises(BudgetExceeded):
        bar_complex(library_group("S4"), 3)


def test_smith_examples():
    s = smith_normal_form(np.eye(3, dtype=int))
    assert s.divisors == (1, 1, 1) and s.rank == 3
    assert smith_normal_form([[2, 0], [0, 4]]).divisors == (2, 4)
    assert smith_normal_form([[2, 1], [0, 2]]).divisors == (1, 4)
    assert smith_normal_form([[2, 0], [0, 3]]).divisors == (1, 6)
    assert smith_normal_form(np.zeros((2, 3), dtype=int)).rank == 0


def test_smith_switches_to_big_integers():
    big = 3 ** 25
    M = [[big, 0], [0, big * 2]]
    assert smith_normal_form(M).divisors == (big, 2 * big)
    with pytest.raises(OverflowDetected):
        smith_normal_form(np.array(M, dtype=np.int64), fixed_width=True)


def test_abelian_invariants_validation():
    with pytest.raises(ValidationError):
        AbelianInvariants((4, 2), 0)
    with pytest.raises(ValidationError):
        AbelianInvariants((1,), 0)
    assert AbelianInvariants((2, 4), 1).to_dict() == {"divisors": [2, 4], "free_rank": 1}


def test_low_degrees():
    h0 = integral_homology(library_group("S3"), 0)
    assert h0.divisors == () and h0.free_rank == 1
    assert integral_homology(library_group("S3"), 1).divisors == (2,)
    assert integral_homology(library_group("Z2xZ4"), 1).divisors == (2, 4)


@pytest.mark.parametrize("name, expected", [
    ("Z2", ()), ("Z5", ()), ("Z8", ()), ("Klein", (2,)), ("Z2^3", (2, 2, 2)), ("Z3xZ3", (3,)),
    ("S3", ()), ("D4", (2,)), ("Q8", ()), ("A4", (2,)), ("Z4xZ4", (4,)), ("Z2xQ8", (2, 2)),
])
def test_second_homology(name, expected):
    h = integral_homology(library_group(name), 2)
    assert h.divisors == expected and h.free_rank == 0


def test_third_homology_of_cyclic_groups():
    for m in (2, 3, 5):
        h = integral_homology(cyclic_group(m), 3)
        assert h.divisors == (m,) and h.free_rank == 0


def test_degree_cap():
    with pytest.raises(CapExceeded):
        integral_homology(cyclic_group(2), config.HOMOLOGY_DEGREE_CAP + 1)


@pytest.mark.parametrize("name", library_names(24))
def test_first_homology_is_the_abelianization(name):
    G = library_group(name)
    expected = tuple(d for d in abelianization_invariants(G) if d > 1)
    assert integral_homology(G, 1).divisors == expected


@given(st.integers(2, 8), st.integers(2, 8))
def test_second_homology_of_two_cyclic_factors(a, b):
    if a * b > 16:
        return
    g = gcd(a, b)
    G = direct_product(cyclic_group(a), cyclic_group(b))[0]
    assert integral_homology(G, 2).divisors == ((g,) if g > 1 else ())


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=1, max_size=4), st.randoms())
def test_smith_invariant_under_shuffles(rows, rnd):
    M = np.array(rows, dtype=np.int64)
    base = smith_normal_form(M)
    r = list(range(M.shape[0]))
    c = list(range(M.shape[1]))
    rnd.shuffle(r)
    rnd.shuffle(c)
    assert smith_normal_form(M[np.ix_(r, c)]) == base


@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=3, max_size=3))
def test_smith_determinant(rows):
    M = np.array(rows, dtype=np.int64)
    s = smith_normal_form(M)
    det = round(abs(np.linalg.det(M)))
    if s.rank == 3:
        assert int(np.prod(s.divisors)) == det
    else:
        assert det == 0
    for a, b in zip(s.divisors, s.divisors[1:]):
        assert b % a == 0
