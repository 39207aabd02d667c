"""Isomorphism search and abelian invariants of finite groups."""
from __future__ import annotations

import numpy as np

from . import config
from .errors import CapExceeded, ValidationError
from .groups import FinGroup, GroupHom, commutator_subgroup, quotient

__all__ = ["abelian_invariants", "abelianization_invariants", "find_isomorphism", "is_isomorphic",
           "prime_factors"]


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def abelian_invariants(G: FinGroup) -> list[int]:
    """Invariant factors ``d1 | d2 | ...`` (each > 1) of a finite abelian group.

    Read off from element-order counts: for each prime ``p`` the number of
    solutions of ``x^(p^k) = 1`` is ``p^(s_k)``, and ``s_k - s_(k-1)`` counts
    the cyclic p-factors of order at least ``p^k``.
    """
    if not G.is_abelian():
        raise ValidationError("abelian invariants of a non-abelian group")
    orders = G.element_orders
    primary: dict[int, list[int]] = {}
    for p in prime_factors(G.order):
        sizes = []  # s_k for k = 0, 1, ...
        k = 0
        while True:
            count = int(np.count_nonzero((p ** k) % orders == 0))
            s = round(np.log(count) / np.log(p))
            sizes.append(s)
            if count == G.order or (k > 0 and sizes[-1] == sizes[-2]):
                break
            k += 1
        at_least = [sizes[i] - sizes[i - 1] for i in range(1, len(sizes))]
        exps = []
        for i, c in enumerate(at_least):
            nxt = at_least[i + 1] if i + 1 < len(at_least) else 0
            exps.extend([i + 1] * (c - nxt))
        primary[p] = sorted((p ** e for e in exps), reverse=True)
    width = max((len(v) for v in primary.values()), default=0)
    factors = [1] * width
    for powers in primary.values():
        for i, q in enumerate(powers):
            factors[i] *= q
    return sorted(f for f in factors if f > 1)


def abelianization_invariants(G: FinGroup) -> list[int]:
    """Invariants of ``G/[G,G]``, computed inside the group."""
    D = commutator_subgroup(G, G.whole(), G.whole())
    Q, _ = quotient(G, D)
    return abelian_invariants(Q)


def _extend(G: FinGroup, H: FinGroup, gens: list[int], imgs: list[int]) -> np.ndarray | None:
    """Images of the subgroup generated by ``gens``, or None on a conflict or collision."""
    images = np.full(G.order, -1, dtype=np.int64)
    images[G.identity] = H.identity
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s, t in zip(gens, imgs):
                y = int(G.table[x, s])
                v = int(H.table[images[x], t])
                if images[y] < 0:
                    images[y] = v
                    nxt.append(y)
                elif images[y] != v:
                    return None
        frontier = nxt
    assigned = images[images >= 0]
    if len(np.unique(assigned)) != len(assigned):
        return None
    return images


def find_isomorphism(G: FinGroup, H: FinGroup) -> GroupHom | None:
    """An isomorphism ``G -> H`` found by backtracking over generator images."""
    if G.order != H.order:
        return None
    if G.order > config.ISOMORPHISM_CAP:
        raise CapExceeded(f"isomorphism search capped at order {config.ISOMORPHISM_CAP}")
    og, oh = G.element_orders, H.element_orders
    if not np.array_equal(np.sort(og), np.sort(oh)) or G.is_abelian() != H.is_abelian():
        return None
    gens = G.whole().generators()
    candidates = [np.nonzero(oh == og[g])[0].tolist() for g in gens]

    def search(k: int, imgs: list[int]) -> np.ndarray | None:
        if k == len(gens):
            return _extend(G, H, gens, imgs)
        for c in candidates[k]:
            trial = imgs + [c]
            partial = _extend(G, H, gens[: k + 1], trial)
            if partial is None:
                continue
            found = search(k + 1, trial)
            if found is not None:
                return found
        return None

    images = search(0, [])
    if images is None or (images < 0).any():
        return None
    return GroupHom(G, H, images)


def is_isomorphic(G: FinGroup, H: FinGroup) -> bool:
    return find_isomorphism(G, H) is not None
