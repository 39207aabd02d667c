"""Pullbacks, kernel pairs, commutative squares and short exact sequences."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import config
from .errors import ClosureCapExceeded, CompositionMismatch, NonCommutingSquare, ValidationError
from .groups import (
    FinGroup,
    GroupHom,
    compose,
    image,
    is_bijective,
    is_injective,
    is_surjective,
    kernel,
)

__all__ = [
    "Pullback", "pullback", "kernel_pair", "pair_into", "Square",
    "comparison_to_pullback", "induced_hom", "ExactnessWitness", "exactness_witness",
]


@dataclass(frozen=True, eq=False)
class Pullback:
    """``apex = {(a, c) : f(a) = g(c)}`` with projections ``p1`` (to dom f) and ``p2``."""

    apex: FinGroup
    p1: GroupHom
    p2: GroupHom
    f: GroupHom
    g: GroupHom
    lookup: np.ndarray  # a * |C| + c -> apex id, -1 off the pullback


def pullback(f: GroupHom, g: GroupHom, label: str = "") -> Pullback:
    if f.codomain != g.codomain:
        raise CompositionMismatch("pullback legs have different codomains")
    A, C = f.domain, g.domain
    B = f.codomain
    fiber_f = np.bincount(f.map, minlength=B.order)
    fiber_g = np.bincount(g.map, minlength=B.order)
    size = int((fiber_f * fiber_g).sum())
    if size > config.order_cap():
        raise ClosureCapExceeded(f"pullback of order {size} exceeds the order cap {config.order_cap()}")
    match = f.map[:, None] == g.map[None, :]
    a, c = np.nonzero(match)  # lexicographic in (a, c)
    m = C.order
    lookup = np.full(A.order * m, -1, dtype=np.int64)
    lookup[a * m + c] = np.arange(size)
    table = lookup[A.table[a[:, None], a[None, :]] * m + C.table[c[:, None], c[None, :]]]
    apex = FinGroup(table, label, pairs=np.stack([a, c], axis=1), factors=(A, C), check=False)
    lookup.setflags(write=False)
    return Pullback(apex, GroupHom(apex, A, a, check=False), GroupHom(apex, C, c, check=False), f, g, lookup)


def kernel_pair(f: GroupHom) -> Pullback:
    hit = f._cache.get("kernel_pair")
    if hit is None:
        hit = pullback(f, f, f"R[{f.domain.label}]" if f.domain.label else "")
        f._cache["kernel_pair"] = hit
    return hit


def pair_into(pb: Pullback, u: GroupHom, v: GroupHom) -> GroupHom:
    """The unique ``r`` with ``p1 r = u`` and ``p2 r = v``."""
    if u.domain != v.domain:
        raise CompositionMismatch("paired maps have different domains")
    if u.codomain != pb.p1.codomain or v.codomain != pb.p2.codomain:
        raise CompositionMismatch("paired maps do not land in the pullback legs")
    ids = pb.lookup[u.map * pb.g.domain.order + v.map]
    if (ids < 0).any():
        raise NonCommutingSquare("maps do not factor through the pullback")
    return GroupHom(u.domain, pb.apex, ids, check=False)


@dataclass(frozen=True, eq=False)
class Square:
    """A commutative square of homomorphisms::

        A1 --top--> B1
        |           |
       left       right
        v           v
        A0 -bottom-> B0

    Read horizontally it is a morphism ``left -> right`` of arrows.
    """

    top: GroupHom
    left: GroupHom
    right: GroupHom
    bottom: GroupHom

    def __post_init__(self):
        if not (self.top.domain == self.left.domain and self.top.codomain == self.right.domain
                and self.left.codomain == self.bottom.domain
                and self.bottom.codomain == self.right.codomain):
            raise CompositionMismatch("square corners do not match")

    def commutes(self) -> bool:
        return np.array_equal(self.right.map[self.top.map], self.bottom.map[self.left.map])

    def check(self) -> "Square":
        if not self.commutes():
            raise NonCommutingSquare("square does not commute")
        return self

    def transpose(self) -> "Square":
        return Square(self.left, self.top, self.bottom, self.right)

    @property
    def source(self) -> GroupHom:
        return self.left

    @property
    def target(self) -> GroupHom:
        return self.right

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Square):
            return NotImplemented
        return (self.top == other.top and self.left == other.left
                and self.right == other.right and self.bottom == other.bottom)

    def __hash__(self) -> int:
        return hash((self.top, self.bottom))

    def corner_pullback(self) -> Pullback:
        return pullback(self.bottom, self.right)


def comparison_to_pullback(sq: Square) -> GroupHom:
    """The factorization ``A1 -> A0 x_B0 B1`` of a commutative square."""
    sq.check()
    return pair_into(sq.corner_pullback(), sq.left, sq.top)


def induced_hom(f: GroupHom, p: GroupHom, q: GroupHom) -> GroupHom:
    """Given surjections ``p: A -> A'`` and ``q: B -> B'``, the map ``A' -> B'`` induced by ``f``.

    Raises ``ValidationError`` when ``f`` does not carry ``ker p`` into ``ker q``.
    """
    if p.domain != f.domain or q.domain != f.codomain:
        raise CompositionMismatch("induced map: quotients do not match f")
    if not is_surjective(p):
        raise ValidationError("induced map needs a surjective source projection")
    if not kernel(q).mask[f.map[kernel(p).array]].all():
        raise ValidationError("f does not respect the kernels")
    reps = p.preimage_reps()
    return GroupHom(p.codomain, q.codomain, q.map[f.map[reps]], check=False)


@dataclass(frozen=True)
class ExactnessWitness:
    """``0 -> K -> A -> B -> 0``."""

    kernel_inclusion: GroupHom
    projection: GroupHom

    def __post_init__(self):
        if self.kernel_inclusion.codomain != self.projection.domain:
            raise CompositionMismatch("sequence maps are not composable")
        if not is_injective(self.kernel_inclusion):
            raise ValidationError("kernel inclusion is not injective")
        if not is_surjective(self.projection):
            raise ValidationError("projection is not surjective")
        if image(self.kernel_inclusion) != kernel(self.projection):
            raise ValidationError("sequence is not exact in the middle")


def exactness_witness(f: GroupHom) -> ExactnessWitness:
    _, incl = kernel(f).as_group()
    return ExactnessWitness(incl, f)


def comparison_is_iso(sq: Square) -> bool:
    return is_bijective(comparison_to_pullback(sq))


def compose_all(*maps: GroupHom) -> GroupHom:
    """``compose_all(h, g, f) == h . g . f``."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = compose(m, out)
    return out
