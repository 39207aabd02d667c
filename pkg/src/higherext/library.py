"""A catalog of small named groups."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import config
from .errors import ClosureCapExceeded, ValidationError
from .groups import FinGroup, cyclic_group, direct_product, from_permutation_generators, from_table, trivial_group

__all__ = ["library_names", "library_group", "library", "dihedral", "quaternion", "symmetric", "alternating"]


def dihedral(n: int) -> FinGroup:
    """Symmetries of the ``n``-gon, order ``2n``; generated by ``r = (0 1 .. n-1)`` and ``s: x -> -x``."""
    r = [(x + 1) % n for x in range(n)]
    s = [(-x) % n for x in range(n)]
    return from_permutation_generators(n, [r, s], f"D{n}")


def symmetric(n: int) -> FinGroup:
    if n == 1:
        return trivial_group("S1")
    cycle = [(x + 1) % n for x in range(n)]
    swap = [1, 0] + list(range(2, n))
    return from_permutation_generators(n, [swap, cycle], f"S{n}")


def alternating(n: int) -> FinGroup:
    if n < 3:
        return trivial_group(f"A{n}")
    gens = []
    for k in range(2, n):
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0  # the 3-cycle (0 1 k)
        gens.append(p)
    return from_permutation_generators(n, gens, f"A{n}")


def quaternion() -> FinGroup:
    """``Q8`` from the multiplication of the unit quaternions ``+-1, +-i, +-j, +-k``."""
    # basis index 0..3 for 1, i, j, k; unit products with signs
    basis = [[(0, 1), (1, 1), (2, 1), (3, 1)],
             [(1, 1), (0, -1), (3, 1), (2, -1)],
             [(2, 1), (3, -1), (0, -1), (1, 1)],
             [(3, 1), (2, 1), (1, -1), (0, -1)]]
    units = [(b, s) for s in (1, -1) for b in range(4)]
    index = {u: n for n, u in enumerate(units)}
    table = np.zeros((8, 8), dtype=np.int64)
    for x, (b1, s1) in enumerate(units):
        for y, (b2, s2) in enumerate(units):
            b, s = basis[b1][b2]
            table[x, y] = index[(b, s * s1 * s2)]
    return from_table(table, "Q8")


def _product(*names: str) -> FinGroup:
    G = library_group(names[0])
    for name in names[1:]:
        G = direct_product(G, library_group(name), label=f"{G.label} x {name}")[0]
    return G


_BUILDERS = {
    "1": lambda: trivial_group("1"),
    **{f"Z{m}": (lambda m=m: cyclic_group(m)) for m in range(2, 13)},
    "Klein": lambda: _product("Z2", "Z2"),
    "Z2^3": lambda: _product("Z2", "Z2", "Z2"),
    "Z3xZ3": lambda: _product("Z3", "Z3"),
    "Z2xZ4": lambda: _product("Z2", "Z4"),
    "Z2xZ6": lambda: _product("Z2", "Z6"),
    "Z4xZ4": lambda: _product("Z4", "Z4"),
    "Z2^4": lambda: _product("Z2", "Z2", "Z2", "Z2"),
    "S3": lambda: symmetric(3),
    "D4": lambda: dihedral(4),
    "Q8": quaternion,
    "D5": lambda: dihedral(5),
    "A4": lambda: alternating(4),
    "D6": lambda: dihedral(6),
    "S3xZ2": lambda: _product("S3", "Z2"),
    "S3xZ3": lambda: _product("S3", "Z3"),
    "D8": lambda: dihedral(8),
    "Z2xD4": lambda: _product("Z2", "D4"),
    "Z2xQ8": lambda: _product("Z2", "Q8"),
    "S4": lambda: symmetric(4),
    "Z2xA4": lambda: _product("Z2", "A4"),
}

_ALIASES = {"trivial": "1", "z1": "1", "v4": "Klein", "z2xz2": "Klein", "z2xz2xz2": "Z2^3",
            "z2xs3": "S3xZ2", "z3xs3": "S3xZ3", "a4xz2": "Z2xA4"}
_LOOKUP = {name.lower(): name for name in _BUILDERS} | {k: v for k, v in _ALIASES.items()}


def library_names(max_order: int | None = None) -> list[str]:
    """Names in catalog order, optionally restricted by group order."""
    names = list(_BUILDERS)
    if max_order is not None:
        names = [n for n in names if library_group(n).order <= max_order]
    return names


@lru_cache(maxsize=None)
def _build(name: str) -> FinGroup:
    G = _BUILDERS[name]()
    if not G.label:
        G.label = name
    return G


def library_group(name: str) -> FinGroup:
    """Case-insensitive lookup."""
    key = _LOOKUP.get(name.strip().lower().replace(" ", ""))
    if key is None:
        raise ValidationError(f"unknown library group {name!r}")
    G = _build(key)
    # cached groups were built under whatever cap was current then
    if G.order > config.order_cap():
        raise ClosureCapExceeded(f"group of order {G.order} exceeds the order cap {config.order_cap()}")
    return G


def library(max_order: int | None = None) -> dict[str, FinGroup]:
    return {n: library_group(n) for n in library_names(max_order)}
