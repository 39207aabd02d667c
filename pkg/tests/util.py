"""Shared builders for the test modules."""
from __future__ import annotations

from higherext.cube import Cube, quotient_lattice_cube
from higherext.dsl import resolve_element
from higherext.groups import FinGroup, GroupHom, Subgroup, quotient, subgroup_generated
from higherext.library import library_group

# filled by the acceptance tests, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def el(G: FinGroup, spec) -> int:
    return resolve_element(G, spec)


def sub(G: FinGroup, *gens) -> Subgroup:
    return subgroup_generated(G, [el(G, g) for g in gens])


def d4() -> FinGroup:
    return library_group("D4")


def d4_rotations() -> Subgroup:
    return sub(d4(), "(0 1 2 3)")


def d4_klein() -> Subgroup:
    return sub(d4(), "(0 2)(1 3)", "(1 3)")


def d4_center() -> Subgroup:
    return sub(d4(), "(0 2)(1 3)")


def d4_square() -> Cube:
    """Kernels: rotations in direction 0, the Klein subgroup through ``s`` in direction 1."""
    return quotient_lattice_cube(d4(), [d4_rotations(), d4_klein()])


def klein_square() -> Cube:
    """The two coordinate projections of ``Z2 x Z2`` over the trivial group."""
    V = library_group("Klein")
    return quotient_lattice_cube(V, [sub(V, [1, 0]), sub(V, [0, 1])])


def sign() -> GroupHom:
    S3 = library_group("S3")
    return quotient(S3, sub(S3, "(0 1 2)"))[1]
