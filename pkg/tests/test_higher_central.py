from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from higherext.birkhoff import AB, ab_mod, bracket1_categorical, centralize_explicit
from higherext.cube import Cube, is_n_fold_extension, iota, quotient_lattice_cube, square_cube
from higherext.enumeration import library_double_extensions, normal_subgroups_inside, random_cube
from higherext.errors import DimCapExceeded, NotAnExtension, ResourceCapError, UnsupportedDatum
from higherext.groups import GroupHom, commutator_subgroup, identity_hom, intersection, quotient, setwise_product
from higherext.higher_central import (
    bracket_n_categorical,
    bracket_n_explicit,
    bracket_report,
    bracket_rho,
    centralize_n,
    is_double_central_categorical,
    is_n_fold_central,
    top_kernels,
)
from higherext.library import library_group
from higherext.limits import Square, induced_hom
from higherext.structure import is_isomorphic

from util import d4_center, d4_square, klein_square, sign

SQUARES = library_double_extensions(8)


def one_cube(f) -> Cube:
    return Cube(1, [f.codomain, f.domain], {(1, 0): f})


def test_explicit_bracket_examples():
    f = sign()
    assert bracket_n_explicit(one_cube(f)) == commutator_subgroup(f.domain, f.domain.whole(), f.domain.whole())
    assert bracket_n_explicit(klein_square()).is_trivial()
    assert bracket_n_explicit(d4_square()) == d4_center()


def test_categorical_bracket_examples():
    f = sign()
    assert bracket_n_categorical(one_cube(f)) == bracket1_categorical(f)
    assert bracket_n_categorical(klein_square()).is_trivial()
    for i in range(2):
        assert bracket_n_categorical(d4_square(), AB, i) == d4_center()


def test_fully_categorical_recursion_on_a_square():
    assert bracket_n_categorical(d4_square(), AB, 0, inner="categorical") == d4_center()


def test_bracket_requires_an_extension():
    Z2 = library_group("Z2")
    one = library_group("1")
    ident = identity_hom(Z2)
    to_one = GroupHom(Z2, one, [0, 0])
    diagonal = square_cube(Square(ident, ident, to_one, to_one))
    with pytest.raises(NotAnExtension):
        bracket_n_explicit(diagonal)
    with pytest.raises(NotAnExtension):
        is_n_fold_central(diagonal)


def test_exponent_datum_has_no_explicit_higher_bracket():
    with pytest.raises(UnsupportedDatum):
        bracket_n_explicit(d4_square(), ab_mod(2))
    with pytest.raises(UnsupportedDatum):
        bracket_report(d4_square(), ab_mod(2), "explicit")
    N = bracket_n_categorical(d4_square(), ab_mod(2))
    assert d4_center() <= N and N.is_normal()


def test_categorical_dimension_cap():
    with pytest.raises(DimCapExceeded):
        bracket_n_categorical(iota(4, library_group("Z2")))


def test_centrality_examples():
    assert is_n_fold_central(klein_square())
    assert not is_n_fold_central(d4_square())
    G = library_group("S3")
    # no kernel in direction 0: every listed commutator vanishes
    A = quotient_lattice_cube(G, [G.trivial_subgroup(), G.whole()])
    assert is_n_fold_central(A)


def test_centralize_examples():
    A = klein_square()
    assert centralize_n(A) == A
    C = centralize_n(d4_square())
    assert is_isomorphic(C.top, library_group("Klein"))
    assert all(C.vertex(S) == d4_square().vertex(S) for S in range(3))
    f = sign()
    C1 = centralize_n(one_cube(f))
    assert C1.edge(1, 0).domain.order == 2 == centralize_explicit(f).hom.domain.order


def test_bracket_rho_examples():
    for i in range(2):
        upper, lower = bracket_rho(i, d4_square())
        assert upper == d4_center() and lower.is_trivial()


def test_three_cube_brackets_agree():
    for seed in range(6):
        A = random_cube(3, seed, budget=16)
        report = bracket_report(A, AB, "both")
        assert report.agree


def test_fully_categorical_three_cube_hits_caps_or_agrees():
    A = random_cube(3, 1, budget=8)
    try:
        N = bracket_n_categorical(A, AB, 2, inner="categorical")
    except ResourceCapError:
        return
    assert N == bracket_n_explicit(A)


# -- properties -------------------------------------------------------------------------

squares = st.sampled_from(SQUARES)


@given(squares)
def test_commutator_criterion_matches_categorical_route(A):
    K0, K1 = top_kernels(A)
    top = A.top
    direct = setwise_product(commutator_subgroup(top, K0, K1),
                             commutator_subgroup(top, intersection(K0, K1), top.whole()))
    assert bracket_n_explicit(A) == direct
    assert is_double_central_categorical(A) == direct.is_trivial()
    assert all(bracket_n_categorical(A, AB, i) == direct for i in range(2))


@given(squares)
def test_rho_bracket_is_the_square_bracket(A):
    for i in range(2):
        upper, lower = bracket_rho(i, A)
        assert upper == bracket_n_explicit(A) and lower.is_trivial()


@given(st.one_of(squares, st.integers(0, 10 ** 6).map(lambda s: random_cube(3, s, budget=12))))
def test_centralization_is_idempotent_and_universal(A):
    C = centralize_n(A)
    assert is_n_fold_extension(C) and is_n_fold_central(C) and centralize_n(C) == C
    bracket = bracket_n_explicit(A)
    common = top_kernels(A)[0]
    for K in top_kernels(A)[1:]:
        common = intersection(common, K)
    full = (1 << A.dim) - 1
    for N in normal_subgroups_inside(A.top, common):
        q = quotient(A.top, N)[1]
        vertices = list(A.vertices)
        vertices[full] = q.codomain
        edges = dict(A.edges)
        for i in range(A.dim):
            e = A.edge(full, i)
            edges[(full, i)] = induced_hom(e, q, identity_hom(e.codomain))
        B = Cube(A.dim, vertices, edges)
        assert bracket_n_explicit(B).is_trivial() == (bracket <= N)


@given(st.integers(0, 10 ** 6))
def test_centrality_is_direction_independent(seed):
    A = random_cube(3, seed, budget=12)
    per_direction = [bracket_n_categorical(A, AB, i) for i in range(3)]
    assert all(N == per_direction[0] for N in per_direction)
