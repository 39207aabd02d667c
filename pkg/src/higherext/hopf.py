"""Hopf-formula quotients ``(radical ∩ kernels) / bracket`` for extensions and cubes."""
from __future__ import annotations

from dataclasses import dataclass

from .birkhoff import AB, BirkhoffDatum, bracket1_categorical, bracket1_explicit, trivialize
from .cube import Cube, subsets
from .errors import AgreementFailure, ShapeMismatch
from .groups import FinGroup, GroupHom, Subgroup, intersection, is_surjective, kernel, quotient
from .higher_central import bracket_n_categorical, bracket_n_explicit, bracket_rho, require_extension, top_kernels
from .structure import abelian_invariants, find_isomorphism

__all__ = ["HopfReport", "hopf_delta", "hopf_delta_n", "hopf_via_trivialization", "RhoReduction",
           "rho_reduction_check", "subquotient"]


def subquotient(N: Subgroup, M: Subgroup) -> tuple[FinGroup, GroupHom]:
    """``N/M`` for ``M`` normal in ``N`` (both inside the same group), with the projection from ``N``."""
    if not M <= N:
        raise AgreementFailure("denominator is not contained in the numerator")
    Ng, _ = N.as_group()
    inside = Subgroup.of(Ng, sorted(N.index_of(int(m)) for m in M.array))
    return quotient(Ng, inside, "")


@dataclass(frozen=True, eq=False)
class HopfReport:
    numerator: Subgroup
    denominator: Subgroup
    quotient: FinGroup
    projection: GroupHom  # numerator (as a group) -> quotient
    abelian_invariants: list[int] | None
    presentation_conditions_met: bool
    dim: int


def _report(numerator: Subgroup, denominator: Subgroup, presentation: bool, dim: int) -> HopfReport:
    if not (numerator.is_normal() and denominator.is_normal()):
        raise AgreementFailure("Hopf numerator and denominator must be normal in the top group")
    Q, proj = subquotient(numerator, denominator)
    invariants = abelian_invariants(Q) if Q.is_abelian() else None
    return HopfReport(numerator, denominator, Q, proj, invariants, presentation, dim)


def hopf_delta(p: GroupHom, D: BirkhoffDatum = AB) -> HopfReport:
    """``([P] ∩ K[p]) / [p]_1``."""
    if not is_surjective(p):
        raise AgreementFailure("Hopf quotients are taken over extensions")
    P = p.domain
    numerator = intersection(D.radical(P), kernel(p))
    denominator = bracket1_explicit(p, D) if D is AB else bracket1_categorical(p, D)
    return _report(numerator, denominator, P.is_trivial(), 1)


def hopf_delta_n(A: Cube, D: BirkhoffDatum = AB) -> HopfReport:
    """``([A_n] ∩ K[a_0] ∩ ... ∩ K[a_(n-1)]) / [A]_n``.

    The presentation flag records whether every vertex other than the bottom
    one is trivial, the only way a finite cube has projective vertices there.
    """
    if A.dim < 1:
        raise ShapeMismatch("Hopf quotients need a cube of dimension at least 1")
    require_extension(A)
    top = A.top
    numerator = D.radical(top)
    for K in top_kernels(A):
        numerator = intersection(numerator, K)
    if D is AB or A.dim == 1:
        denominator = bracket_n_explicit(A, D, check=False)
    else:
        denominator = bracket_n_categorical(A, D, check=False)
    presentation = all(A.vertex(S).is_trivial() for S in subsets(A.dim) if S)
    return _report(numerator, denominator, presentation, A.dim)


def hopf_via_trivialization(p: GroupHom, D: BirkhoffDatum = AB) -> FinGroup:
    """The kernel of the comparison from the centralization of ``p`` to its trivialization."""
    triv = trivialize(D, p)
    K = kernel(triv.comparison)
    return K.as_group()[0]


@dataclass(frozen=True, eq=False)
class RhoReduction:
    direction: int
    cube_quotient: FinGroup
    arrow_quotient: FinGroup
    identity_holds: bool
    side_condition_holds: bool


def rho_reduction_check(A: Cube, i: int = 0) -> RhoReduction:
    """Compare the Hopf quotient of ``A`` with the one of ``rho_i A`` taken in the arrow category.

    In the arrow category the radical of the top arrow ``a_i`` is
    ``[K[a_i], A_n]`` and the other kernels are the ``K[a_j]``.  For squares
    the denominator is the arrow-category bracket; above that it is the
    bracket of ``A`` itself.  The side condition is ``[A_n] ∩ K[a_i] = [K[a_i], A_n]``.
    Finite cubes are not presentations, so the outcome is reported rather than
    asserted.
    """
    if A.dim < 2:
        raise ShapeMismatch("the reduction needs a cube of dimension at least 2")
    require_extension(A)
    full = (1 << A.dim) - 1
    top = A.top
    Ks = top_kernels(A)
    ai = A.edge(full, i)
    numerator = bracket1_explicit(ai)
    for j, K in enumerate(Ks):
        if j != i:
            numerator = intersection(numerator, K)
    if A.dim == 2:
        denominator = bracket_rho(i, A)[0]
    else:
        denominator = bracket_n_explicit(A, check=False)
    arrow_q = subquotient(numerator, denominator)[0]
    cube_q = hopf_delta_n(A).quotient
    holds = find_isomorphism(cube_q, arrow_q) is not None
    side = intersection(AB.radical(top), Ks[i]) == bracket1_explicit(ai)
    return RhoReduction(i, cube_q, arrow_q, holds, side)

