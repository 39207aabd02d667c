"""The two categories cubes can live in: finite groups, and arrows of finite groups.

Both expose the same small surface (composition, pullbacks, the factorization
into a pullback, and the base class of extensions), which is all the
recursive higher-extension machinery in :mod:`higherext.cube` needs.  In
``ARROWS`` an object is a homomorphism, a morphism is a commutative
:class:`~higherext.limits.Square` read left-to-right, and the extensions are
the double extensions.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .errors import CompositionMismatch
from .groups import FinGroup, GroupHom, compose, identity_hom, is_surjective, trivial_group
from .limits import Pullback, Square, pair_into, pullback

__all__ = ["GROUPS", "ARROWS", "GroupCategory", "ArrowCategory", "ArrowPullback",
           "is_double_extension", "square_is_double_extension"]


class GroupCategory:
    name = "Grp"

    def source(self, f: GroupHom) -> FinGroup:
        return f.domain

    def target(self, f: GroupHom) -> FinGroup:
        return f.codomain

    def compose(self, g: GroupHom, f: GroupHom) -> GroupHom:
        return compose(g, f)

    def identity(self, X: FinGroup) -> GroupHom:
        return identity_hom(X)

    def is_extension(self, f: GroupHom) -> bool:
        return is_surjective(f)

    def is_object(self, X: FinGroup) -> bool:
        # every group is the domain of some surjection
        return True

    def pullback(self, f: GroupHom, g: GroupHom) -> Pullback:
        return pullback(f, g)

    def pair(self, pb: Pullback, u: GroupHom, v: GroupHom) -> GroupHom:
        return pair_into(pb, u, v)

    def zero(self) -> FinGroup:
        return trivial_group()

    def __repr__(self) -> str:
        return "GROUPS"


@dataclass(frozen=True, eq=False)
class ArrowPullback:
    apex: GroupHom
    p1: Square
    p2: Square
    upper: Pullback
    lower: Pullback


class ArrowCategory:
    name = "Arr(Grp)"

    def source(self, f: Square) -> GroupHom:
        return f.left

    def target(self, f: Square) -> GroupHom:
        return f.right

    def compose(self, g: Square, f: Square) -> Square:
        if f.right != g.left:
            raise CompositionMismatch("squares are not horizontally composable")
        return Square(compose(g.top, f.top), f.left, g.right, compose(g.bottom, f.bottom))

    def identity(self, x: GroupHom) -> Square:
        return Square(identity_hom(x.domain), x, x, identity_hom(x.codomain))

    def is_extension(self, f: Square) -> bool:
        return square_is_double_extension(f)

    def is_object(self, x: GroupHom) -> bool:
        return is_surjective(x)

    def pullback(self, f: Square, g: Square) -> ArrowPullback:
        upper = pullback(f.top, g.top)
        lower = pullback(f.bottom, g.bottom)
        apex = pair_into(lower, compose(f.left, upper.p1), compose(g.left, upper.p2))
        p1 = Square(upper.p1, apex, f.left, lower.p1)
        p2 = Square(upper.p2, apex, g.left, lower.p2)
        return ArrowPullback(apex, p1, p2, upper, lower)

    def pair(self, pb: ArrowPullback, u: Square, v: Square) -> Square:
        return Square(pair_into(pb.upper, u.top, v.top), u.left, pb.apex,
                      pair_into(pb.lower, u.bottom, v.bottom))

    def zero(self) -> GroupHom:
        z = trivial_group()
        return identity_hom(z)

    def __repr__(self) -> str:
        return "ARROWS"


GROUPS = GroupCategory()
ARROWS = ArrowCategory()


def is_double_extension(top: Any, left: Any, right: Any, bottom: Any, cat: Any = GROUPS,
                        is_ext_base: Callable[[Any], bool] | None = None) -> bool:
    """All four sides and the factorization into ``source(bottom) x target(bottom) source(right)``
    belong to the base class of extensions."""
    base = is_ext_base or cat.is_extension
    if not (base(top) and base(left) and base(right) and base(bottom)):
        return False
    pb = cat.pullback(bottom, right)
    return base(cat.pair(pb, left, top))


def square_is_double_extension(sq: Square, is_ext_base: Callable[[GroupHom], bool] | None = None) -> bool:
    sq.check()
    return is_double_extension(sq.top, sq.left, sq.right, sq.bottom, GROUPS, is_ext_base)
