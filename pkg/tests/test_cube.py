from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from higherext.categories import ARROWS, GROUPS, is_double_extension, square_is_double_extension
from higherext.cube import (
    Cube,
    CubeMorphism,
    cube_kernel,
    cube_kernel_pair,
    cube_square,
    delta,
    double_extension_status,
    extension_status_by_direction,
    index_shift,
    iota,
    is_n_fold_extension,
    morphism_to_cube,
    permute_cube,
    quotient_lattice_cube,
    rho,
    rho_morphism,
    shift_index,
    square_cube,
)
from higherext.enumeration import enumerate_normal_subgroups, random_cube
from higherext.errors import DimCapExceeded, IndexOutOfRange, NonCommutingSquare, ShapeMismatch
from higherext.groups import GroupHom, cyclic_group, identity_hom, image, is_bijective, quotient, trivial_group
from higherext.library import library_group
from higherext.limits import Square, comparison_to_pullback, pullback

from util import d4_square, klein_square, sub


def diagonal_square() -> Square:
    """``Z2`` mapping identically onto both legs of ``Z2 -> 1 <- Z2``: every side is onto, ``r`` is not."""
    Z2, one = cyclic_group(2), trivial_group()
    ident = identity_hom(Z2)
    to_one = GroupHom(Z2, one, [0, 0])
    return Square(ident, ident, to_one, to_one)


# -- index arithmetic -----------------------------------------------------------------------

def test_index_shift_examples():
    assert index_shift(0, 0b011) == 0b110
    assert all(index_shift(i, 0) == 0 for i in range(6))
    assert index_shift(2, 0b011) == 0b011
    assert [shift_index(1, k) for k in range(3)] == [0, 2, 3]
    with pytest.raises(IndexOutOfRange):
        index_shift(-1, 1)


@given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 127))
def test_shift_composition_identity(i, j, S):
    if i < j:
        assert index_shift(j, index_shift(i, S)) == index_shift(i, index_shift(j - 1, S))


# -- cube construction ----------------------------------------------------------------------

def test_cube_validation_names_the_failing_square():
    Z2 = cyclic_group(2)
    ident = identity_hom(Z2)
    zero = GroupHom(Z2, Z2, [0, 0])
    vertices = [Z2, Z2, Z2, Z2]
    edges = {(3, 0): ident, (3, 1): zero, (1, 0): ident, (2, 1): ident}
    with pytest.raises(NonCommutingSquare, match=r"\{0, 1\}"):
        Cube(2, vertices, edges)
    with pytest.raises(ShapeMismatch):
        Cube(2, [Z2, Z2, Z2], {})


def test_arrows_compose_along_chains():
    A = d4_square()
    full = A.arrow(3, 0)
    assert full == GROUPS.compose(A.edge(1, 0), A.edge(3, 1)) == GROUPS.compose(A.edge(2, 1), A.edge(3, 0))


def test_delta_dimension_one():
    A = Cube(1, [cyclic_group(2), cyclic_group(4)], {(1, 0): GroupHom(cyclic_group(4), cyclic_group(2), [0, 1, 0, 1])})
    f = delta(0, A)
    assert f.dim == 0 and f.components == (A.edge(1, 0),)


def test_delta_of_a_square():
    A = d4_square()
    f1 = delta(1, A)
    # delta_1: the top arrow maps to the bottom arrow through the two vertical arrows
    assert f1.domain.edge(1, 0) == A.edge(3, 0) and f1.codomain.edge(1, 0) == A.edge(1, 0)
    assert f1.components == (A.edge(2, 1), A.edge(3, 1))
    f0 = delta(0, A)
    assert f0.domain.edge(1, 0) == A.edge(3, 1) and f0.codomain.edge(1, 0) == A.edge(2, 1)
    assert f0.components == (A.edge(1, 0), A.edge(3, 0))
    with pytest.raises(IndexOutOfRange):
        delta(2, A)


def test_rho_examples():
    A1 = Cube(1, [cyclic_group(1), cyclic_group(3)], {(1, 0): GroupHom(cyclic_group(3), cyclic_group(1), [0, 0, 0])})
    r = rho(0, A1)
    assert r.dim == 0 and r.cat is ARROWS and r.vertex(0) == A1.edge(1, 0)
    A = d4_square()
    assert delta(0, rho(0, A)) == rho_morphism(0, delta(1, A))


def test_rho_vertices_of_a_three_cube():
    A = random_cube(3, 5, budget=16)
    r = rho(1, A)
    # vertex S carries the edge of A along 1 leaving s_1(S) + {1}; spelled out by hand
    expected = {0b00: (0b010, 1), 0b01: (0b011, 1), 0b10: (0b110, 1), 0b11: (0b111, 1)}
    for S, (T, i) in expected.items():
        assert r.vertex(S) == A.edge(T, i)


def test_iota_examples():
    S3 = library_group("S3")
    assert iota(0, S3).vertex(0) == S3
    one = iota(1, cyclic_group(2))
    assert one.vertex(0).order == 1 and one.edge(1, 0).map.tolist() == [0, 0]
    sq = iota(2, S3)
    assert sq.top == S3 and all(sq.vertex(S).order == 1 for S in range(3))
    assert is_n_fold_extension(sq)


def test_morphism_to_cube_inverts_delta_last():
    A = d4_square()
    assert morphism_to_cube(delta(1, A)) == A


def test_permute_cube_relabels_directions():
    A = d4_square()
    B = permute_cube(A, [1, 0])
    assert B.edge(3, 0) == A.edge(3, 1) and B.vertex(1) == A.vertex(2)
    with pytest.raises(ShapeMismatch):
        permute_cube(A, [0, 0])


# -- extension tests ----------------------------------------------------------------------

def test_double_extension_examples():
    assert square_is_double_extension(cube_square(klein_square()))
    assert square_is_double_extension(cube_square(d4_square()))
    assert not square_is_double_extension(diagonal_square())
    sq = diagonal_square()
    assert is_double_extension(sq.top, sq.left, sq.right, sq.bottom, GROUPS) is False


def test_d4_square_comparison_is_onto():
    r = comparison_to_pullback(cube_square(d4_square()))
    # the pullback over the trivial corner is D4/R x D4/V, of order 4
    assert r.codomain.order == 4 and image(r).order == 4


def test_pullback_corner_square_is_double_extension():
    S3 = library_group("S3")
    f = quotient(S3, sub(S3, "(0 1 2)"))[1]
    pb = pullback(f, f)
    assert square_is_double_extension(Square(pb.p2, pb.p1, f, f))


def test_n_fold_extension_examples():
    Z4, Z2 = cyclic_group(4), cyclic_group(2)
    onto = Cube(1, [Z2, Z4], {(1, 0): GroupHom(Z4, Z2, [0, 1, 0, 1])})
    into = Cube(1, [Z4, Z2], {(1, 0): GroupHom(Z2, Z4, [0, 2])})
    assert is_n_fold_extension(onto) and not is_n_fold_extension(into)
    assert is_n_fold_extension(klein_square())
    assert not is_n_fold_extension(square_cube(diagonal_square()))
    assert is_n_fold_extension(Cube(0, [Z2], {}))


def test_coordinate_three_cube_is_an_extension():
    G = library_group("Z2^3")
    A = quotient_lattice_cube(G, [sub(G, [[1, 0], 0]), sub(G, [[0, 1], 0]), sub(G, [[0, 0], 1])])
    assert A.vertex(0).order == 1 and A.top.order == 8
    assert is_n_fold_extension(A)
    assert all(double_extension_status(A, i, j) for i in range(3) for j in range(2))


def test_klein_three_cube_lattices():
    # three distinct order-2 subgroups of the Klein group do not form a 3-fold extension
    V = library_group("Klein")
    normals = enumerate_normal_subgroups(V)
    statuses = []
    for picks in itertools.product(normals, repeat=3):
        A = quotient_lattice_cube(V, list(picks))
        by_dir = extension_status_by_direction(A)
        assert len(set(by_dir)) == 1 and by_dir[0] == is_n_fold_extension(A)
        statuses.append(by_dir[0])
    assert len(statuses) == 125 and statuses.count(False) == 6


def test_dimension_cap():
    with pytest.raises(DimCapExceeded):
        is_n_fold_extension(iota(5, cyclic_group(2)))


# -- limits of cubes ---------------------------------------------------------------------

def test_cube_kernel_of_the_projection_square():
    K, incl = cube_kernel(delta(0, klein_square()))
    # the kernels of the top projection and of Z2 -> 1 are both Z2, and the induced arrow is onto
    assert K.dim == 1 and K.vertex(0).order == 2 and K.vertex(1).order == 2
    assert is_bijective(K.edge(1, 0))
    assert incl.codomain == delta(0, klein_square()).domain


def test_cube_kernel_of_an_isomorphism_is_trivial():
    A = d4_square()
    f = CubeMorphism(A, A, [identity_hom(v) for v in A.vertices])
    K, _ = cube_kernel(f)
    assert all(v.order == 1 for v in K.vertices)


def test_cube_kernel_pair_is_vertexwise():
    f = delta(1, d4_square())
    pb = cube_kernel_pair(f)
    for S in range(2):
        c = f.component(S)
        assert pb.apex.vertex(S).order == c.domain.order ** 2 // c.codomain.order


# -- properties over random cubes ----------------------------------------------------------

cube_args = st.tuples(st.integers(1, 3), st.integers(0, 10 ** 6), st.booleans())


@given(cube_args)
def test_random_cubes_are_functorial(args):
    dim, seed, mutate = args
    A = random_cube(dim, seed, budget=16, mutate=mutate, extension_only=False)
    A.validate()
    assert morphism_to_cube(delta(dim - 1, A)) == A


@given(cube_args)
def test_extension_status_is_independent_of_direction(args):
    dim, seed, mutate = args
    A = random_cube(dim, seed, budget=16, mutate=mutate, extension_only=False)
    statuses = extension_status_by_direction(A)
    assert len(set(statuses)) == 1
    if mutate:
        assert statuses == [False] * dim


@given(cube_args)
def test_rho_characterizes_extensions(args):
    dim, seed, mutate = args
    A = random_cube(dim, seed, budget=16, mutate=mutate, extension_only=False)
    status = is_n_fold_extension(A)
    assert all(is_n_fold_extension(rho(i, A)) == status for i in range(dim))


@given(st.integers(0, 10 ** 6))
def test_shift_commutes_with_delta_and_rho(seed):
    A = random_cube(3, seed, budget=12, extension_only=False)
    for i, j in itertools.permutations(range(3), 2):
        if i < j:
            assert delta(j - 1, rho(i, A)) == rho_morphism(i, delta(j, A))
        else:
            assert delta(j, rho(i, A)) == rho_morphism(i - 1, delta(j, A))


@given(st.integers(0, 10 ** 6), st.permutations([0, 1, 2]))
def test_permuting_directions_preserves_status(seed, perm):
    A = random_cube(3, seed, budget=12, extension_only=False)
    assert is_n_fold_extension(permute_cube(A, perm)) == is_n_fold_extension(A)
