"""Normal subgroups, quotient extensions, and seeded random cubes."""
from __future__ import annotations

import random

import numpy as np

from .cube import Cube, bits, is_n_fold_extension, quotient_lattice_cube, subsets
from .errors import CapExceeded
from .groups import (
    FinGroup,
    GroupHom,
    Subgroup,
    compose,
    cyclic_group,
    direct_product,
    normal_closure,
    quotient,
    setwise_product,
    subgroup_generated,
)
from .library import library_group, library_names

__all__ = ["enumerate_normal_subgroups", "enumerate_extensions_from", "enumerate_double_extensions",
           "random_cube", "mutate_cube", "RANDOM_CUBE_POOL", "library_extensions",
           "library_double_extensions", "normal_subgroups_inside"]

NORMAL_SUBGROUP_CAP = 64
EXTENSION_CAP = 32
DOUBLE_EXTENSION_CAP = 16

# top groups random cubes draw from; small enough that 3-cubes stay cheap
RANDOM_CUBE_POOL = ("1", "Z2", "Z3", "Z4", "Klein", "Z6", "S3", "Z2xZ4", "Z2^3", "D4", "Q8", "Z3xZ3",
                    "Z12", "A4", "D6", "Z2xZ6")


def enumerate_normal_subgroups(G: FinGroup) -> list[Subgroup]:
    """All normal subgroups, ordered by size then members.

    Every normal subgroup is the join of the normal closures of its elements,
    so closing the set of cyclic normal closures under products finds them all.
    """
    if G.order > NORMAL_SUBGROUP_CAP:
        raise CapExceeded(f"normal subgroup enumeration is capped at order {NORMAL_SUBGROUP_CAP}")
    hit = G._cache.get("normal_subgroups")
    if hit is not None:
        return list(hit)
    atoms = {normal_closure(G, subgroup_generated(G, [g])) for g in range(G.order)}
    found = set(atoms)
    frontier = set(atoms)
    while frontier:
        new = set()
        for N in frontier:
            for M in atoms:
                J = setwise_product(N, M)
                if J not in found:
                    new.add(J)
        found |= new
        frontier = new
    out = sorted(found, key=lambda N: (N.order, N.members))
    G._cache["normal_subgroups"] = tuple(out)
    return out


def enumerate_extensions_from(G: FinGroup) -> list[GroupHom]:
    """One quotient projection per normal subgroup."""
    if G.order > EXTENSION_CAP:
        raise CapExceeded(f"extension enumeration is capped at order {EXTENSION_CAP}")
    return [quotient(G, N)[1] for N in enumerate_normal_subgroups(G)]


def enumerate_double_extensions(G: FinGroup) -> list[Cube]:
    """Squares ``G -> G/N, G -> G/M`` over ``G/NM`` for ordered pairs of normal subgroups."""
    if G.order > DOUBLE_EXTENSION_CAP:
        raise CapExceeded(f"double extension enumeration is capped at order {DOUBLE_EXTENSION_CAP}")
    normals = enumerate_normal_subgroups(G)
    cubes = [quotient_lattice_cube(G, [N, M], check=False) for N in normals for M in normals]
    return [A for A in cubes if is_n_fold_extension(A)]


def mutate_cube(A: Cube, S: int) -> Cube:
    """Replace the non-top vertex ``A_S`` by ``A_S x Z2``.

    Arrows into ``S`` land in the first factor and arrows out of ``S`` forget
    the second, so the result is still a cube but its arrows into ``S`` are
    no longer surjective.
    """
    n = A.dim
    if S == (1 << n) - 1:
        raise ValueError("the top vertex has no incoming arrows")
    old = A.vertex(S)
    P, proj, _ = direct_product(old, cyclic_group(2), label=f"{old.label} x Z2" if old.label else "")
    incl = GroupHom(old, P, np.arange(old.order) * 2, check=True)
    vertices = list(A.vertices)
    vertices[S] = P
    edges = dict(A.edges)
    for T in subsets(n):
        for i in bits(T):
            if T & ~(1 << i) == S:
                edges[(T, i)] = compose(incl, A.edge(T, i))
            elif T == S:
                edges[(T, i)] = compose(A.edge(T, i), proj)
    return Cube(n, vertices, edges, A.cat, check=True)


def random_cube(dim: int, seed: int, budget: int | None = None, mutate: bool = False,
                pool: tuple[str, ...] | None = None, extension_only: bool = True,
                max_tries: int = 64) -> Cube:
    """A seeded quotient-lattice cube ``A_S = G / prod(N_i, i not in S)``.

    Such lattices are not always ``n``-fold extensions once ``n >= 3`` (three
    distinct order-2 subgroups of the Klein group are the smallest failure),
    so with ``extension_only`` draws are repeated until one is.  ``budget``
    bounds the order of the top group.  With ``mutate`` one non-top vertex is
    enlarged, which always breaks the extension property.
    """
    if not 0 <= dim <= 3:
        raise CapExceeded("random cubes are generated up to dimension 3")
    rng = random.Random(f"cube:{dim}:{seed}:{budget}")
    names = [n for n in (pool or RANDOM_CUBE_POOL)
             if budget is None or library_group(n).order <= budget]
    if not names:
        names = ["1"]
    A = None
    for _ in range(max_tries):
        G = library_group(rng.choice(names))
        normals = enumerate_normal_subgroups(G)
        picks = [rng.choice(normals) for _ in range(dim)]
        A = quotient_lattice_cube(G, picks, check=False)
        if not extension_only or is_n_fold_extension(A):
            break
    else:
        # the trivial lattice is always an extension
        A = quotient_lattice_cube(G, [G.trivial_subgroup()] * dim, check=False)
    if mutate and dim > 0:
        A = mutate_cube(A, rng.randrange((1 << dim) - 1))
    return A


def library_extensions(max_order: int) -> list[GroupHom]:
    """Every quotient projection out of every library group up to ``max_order``."""
    out = []
    for name in library_names(max_order):
        out.extend(enumerate_extensions_from(library_group(name)))
    return out


def library_double_extensions(max_order: int) -> list[Cube]:
    out = []
    for name in library_names(max_order):
        out.extend(enumerate_double_extensions(library_group(name)))
    return out


def normal_subgroups_inside(G: FinGroup, K: Subgroup) -> list[Subgroup]:
    return [N for N in enumerate_normal_subgroups(G) if N <= K]
