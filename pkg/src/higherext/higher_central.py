"""Brackets ``[A]_n`` of n-fold extensions, n-fold centrality, and centralization.

The bracket of a cube is a normal subgroup of its top vertex.  It is computed
two ways: by the commutator product over kernel intersections, and by
recursion through ``delta_i`` where the bracket of the kernel pair one level
down plays the role of a radical.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import config
from .birkhoff import AB, BirkhoffDatum, bracket1_categorical, bracket1_explicit, is_central_extension
from .categories import ARROWS
from .cube import Cube, bits, cube_kernel_pair, delta, is_n_fold_extension, rho, subsets
from .errors import AgreementFailure, DimCapExceeded, NotAnExtension, ShapeMismatch, UnsupportedDatum
from .groups import (
    GroupHom,
    Subgroup,
    commutator_subgroup,
    identity_hom,
    intersection,
    is_bijective,
    kernel,
    quotient,
    setwise_product,
)
from .limits import Square, comparison_to_pullback, induced_hom

__all__ = [
    "BracketReport", "top_kernels", "bracket_n_explicit", "bracket_n_categorical", "bracket_report",
    "is_n_fold_central", "centralize_n", "bracket_rho", "is_double_central_categorical",
    "centralize_arrow", "require_extension",
]


def require_extension(A: Cube) -> None:
    if not is_n_fold_extension(A):
        raise NotAnExtension(f"the {A.dim}-cube is not a {A.dim}-fold extension")


def top_kernels(A: Cube) -> list[Subgroup]:
    """``K[a_i]`` for the arrows out of the top vertex."""
    full = (1 << A.dim) - 1
    return [kernel(A.edge(full, i)) for i in range(A.dim)]


def bracket_n_explicit(A: Cube, D: BirkhoffDatum = AB, check: bool = True) -> Subgroup:
    """Product over ``S`` of ``[meet(K_i, i in S), meet(K_i, i not in S)]``, an empty meet being the top group."""
    if A.dim < 1:
        raise ShapeMismatch("brackets need a cube of dimension at least 1")
    if check:
        require_extension(A)
    if A.dim == 1:
        return bracket1_explicit(A.edge(1, 0), D)
    if D is not AB:
        raise UnsupportedDatum(f"no explicit bracket formula for {D.name} in dimension {A.dim}")
    top = A.top
    Ks = top_kernels(A)

    def meet(S: int) -> Subgroup:
        out = top.whole()
        for i in bits(S):
            out = intersection(out, Ks[i])
        return out

    n = A.dim
    full = (1 << n) - 1
    N = top.trivial_subgroup()
    for S in subsets(n):
        N = setwise_product(N, commutator_subgroup(top, meet(S), meet(full & ~S)))
    return N


def _level_radical(R: Cube, D: BirkhoffDatum, inner: str) -> Subgroup:
    """Top subgroup of the radical of the cube ``R`` one level down; the other vertices are trivial."""
    if inner == "explicit" and (D is AB or R.dim == 1):
        return bracket_n_explicit(R, D, check=False)
    return bracket_n_categorical(R, D, R.dim - 1, inner=inner, check=False)


def bracket_n_categorical(A: Cube, D: BirkhoffDatum = AB, i: int | None = None, inner: str = "explicit",
                          check: bool = True) -> Subgroup:
    """The bracket as the kernel of ``[pi_1]`` on the radical of the kernel pair of ``delta_i A``,
    carried into the top vertex by ``pi_2``.

    ``inner`` selects how the radical of the kernel-pair cube is computed
    (``explicit`` or ``categorical``); exponent data always recurse.
    """
    if A.dim < 1:
        raise ShapeMismatch("brackets need a cube of dimension at least 1")
    if A.dim > config.CATEGORICAL_BRACKET_DIM_CAP:
        raise DimCapExceeded(f"categorical brackets are capped at dimension {config.CATEGORICAL_BRACKET_DIM_CAP}")
    if check:
        require_extension(A)
    if A.dim == 1:
        return bracket1_categorical(A.edge(1, 0), D, cross_check=False)
    i = A.dim - 1 if i is None else i
    f = delta(i, A)
    R, p1, p2 = cube_kernel_pair(f)
    top = (1 << R.dim) - 1
    rad = _level_radical(R, D, inner)
    X = f.domain
    # the radical is concentrated at the top vertex; it must map into the radical of X there
    pi1, pi2 = p1.component(top), p2.component(top)
    rad_X = _level_radical(X, D, inner)
    if not rad_X.mask[pi1.map[rad.array]].all():
        raise AgreementFailure("the level radical is not functorial along the kernel pair projection")
    pushed = []
    for S in subsets(R.dim):
        if S == top:
            inside = rad.array[pi1.map[rad.array] == X.top.identity]
            pushed.append(Subgroup(X.top, tuple(np.unique(pi2.map[inside]).tolist())))
        else:
            pushed.append(X.vertex(S).trivial_subgroup())
    if any(not P.is_trivial() for P in pushed[:-1]):
        raise AgreementFailure("categorical bracket is not concentrated at the top vertex")
    N = pushed[-1]
    if not N.is_normal():
        raise AgreementFailure("categorical bracket is not normal")
    return N


@dataclass(frozen=True, eq=False)
class BracketReport:
    explicit: Subgroup | None
    categorical: Subgroup | None
    agree: bool

    @property
    def value(self) -> Subgroup:
        return self.explicit if self.explicit is not None else self.categorical


def bracket_report(A: Cube, D: BirkhoffDatum = AB, route: str = "both") -> BracketReport:
    """Compute the bracket by the requested route(s); ``both`` also compares every direction."""
    require_extension(A)
    explicit = categorical = None
    if route in ("explicit", "both"):
        if D is AB or A.dim == 1:
            explicit = bracket_n_explicit(A, D, check=False)
        elif route == "explicit":
            raise UnsupportedDatum(f"no explicit bracket formula for {D.name} in dimension {A.dim}")
    if route in ("categorical", "both"):
        per_direction = [bracket_n_categorical(A, D, i, check=False) for i in range(A.dim)]
        categorical = per_direction[0]
        if any(N != categorical for N in per_direction):
            raise AgreementFailure("categorical bracket depends on the direction")
    if route not in ("explicit", "categorical", "both"):
        raise UnsupportedDatum(f"unknown bracket route {route!r}")
    agree = explicit is None or categorical is None or explicit == categorical
    return BracketReport(explicit, categorical, agree)


# centralization of arrows and squares, used by the categorical double-centrality route


def centralize_arrow(x: GroupHom) -> tuple[GroupHom, GroupHom]:
    """``(I_1 x, q)`` with ``q: dom x -> dom x / [K[x], dom x]``."""
    q = quotient(x.domain, bracket1_explicit(x))[1]
    return induced_hom(x, q, identity_hom(x.codomain)), q


def is_double_central_categorical(A: Cube) -> bool:
    """``delta_1 A`` is central for the centralization of arrows: the first kernel-pair projection
    in the arrow category has a pullback unit square, checked on the upper level (the lower level
    is an identity square)."""
    if A.dim != 2:
        raise ShapeMismatch("this route is specific to squares")
    f = Square(A.edge(3, 1), A.edge(3, 0), A.edge(1, 0), A.edge(2, 1))
    pb = ARROWS.pullback(f, f)
    pi1 = pb.p1
    _, q_r = centralize_arrow(pi1.left)
    _, q_x = centralize_arrow(pi1.right)
    upper = Square(pi1.top, q_r, q_x, induced_hom(pi1.top, q_r, q_x))
    return is_bijective(comparison_to_pullback(upper))


def is_n_fold_central(A: Cube, D: BirkhoffDatum = AB) -> bool:
    """Whether the bracket vanishes; cross-checked against the categorical routes where they exist."""
    require_extension(A)
    if A.dim == 0:
        return True
    if A.dim == 1:
        return is_central_extension(D, A.edge(1, 0))
    report = bracket_report(A, D, "both" if A.dim <= config.CATEGORICAL_BRACKET_DIM_CAP else "explicit")
    if not report.agree:
        raise AgreementFailure("explicit and categorical brackets disagree")
    status = report.value.is_trivial()
    if A.dim == 2 and D is AB and is_double_central_categorical(A) != status:
        raise AgreementFailure("double-centrality routes disagree")
    return status


def centralize_n(A: Cube, D: BirkhoffDatum = AB) -> Cube:
    """Divide the top vertex by the bracket and keep every other vertex."""
    require_extension(A)
    if A.dim == 0:
        return A
    if D is AB or A.dim == 1:
        N = bracket_n_explicit(A, D, check=False)
    else:
        N = bracket_n_categorical(A, D, check=False)
    full = (1 << A.dim) - 1
    if N.is_trivial():
        return A
    q = quotient(A.top, N)[1]
    vertices = list(A.vertices)
    vertices[full] = q.codomain
    edges = dict(A.edges)
    for i in range(A.dim):
        e = A.edge(full, i)
        edges[(full, i)] = induced_hom(e, q, identity_hom(e.codomain))
    return Cube(A.dim, vertices, edges, A.cat, check=True)


def bracket_rho(i: int, A: Cube) -> tuple[Subgroup, Subgroup]:
    """For a square: the level-1 bracket of ``rho_i A`` computed in the arrow category, as
    ``(upper, lower)`` subgroups of the domain arrow's two ends."""
    if A.dim != 2:
        raise ShapeMismatch("the arrow-category bracket is implemented for squares")
    require_extension(A)
    s = rho(i, A).edge(1, 0)  # a morphism of arrows x -> y
    pb = ARROWS.pullback(s, s)
    r = pb.apex
    rad_top = bracket1_explicit(r)  # radical of an arrow is concentrated at its domain
    x = s.left
    pi1, pi2 = pb.p1.top, pb.p2.top
    if not bracket1_explicit(x).mask[pi1.map[rad_top.array]].all():
        raise AgreementFailure("arrow radical is not functorial along the kernel pair projection")
    inside = rad_top.array[pi1.map[rad_top.array] == x.domain.identity]
    upper = Subgroup(x.domain, tuple(np.unique(pi2.map[inside]).tolist()))
    return upper, x.codomain.trivial_subgroup()
