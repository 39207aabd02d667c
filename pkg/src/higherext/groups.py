"""Finite groups as Cayley tables, their subgroups and homomorphisms.

Elements are integer ids ``0..order-1``.  Every constructor validates the
group axioms; derived groups (products, quotients, subgroups, pullbacks)
remember enough provenance to print their elements readably.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import config
from .errors import (
    ClosureCapExceeded,
    CompositionMismatch,
    NotNormal,
    NotPermutable,
    ParentMismatch,
    ValidationError,
)

__all__ = [
    "FinGroup", "Subgroup", "GroupHom", "Restriction",
    "trivial_group", "from_table", "from_permutation_generators", "cyclic_group",
    "direct_product", "subgroup_generated", "commutator_subgroup", "center",
    "normal_closure", "setwise_product", "intersection", "quotient", "kernel",
    "image", "is_surjective", "is_injective", "is_bijective", "compose",
    "restrict", "identity_hom", "zero_hom", "hom_from_generator_images",
    "generators_of", "format_permutation", "product_of_homs", "restrict_to",
]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


def format_permutation(perm: Sequence[int]) -> str:
    seen = [False] * len(perm)
    cycles = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cycle = [start]
        seen[start] = True
        x = perm[start]
        while x != start:
            cycle.append(x)
            seen[x] = True
            x = perm[x]
        cycles.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(cycles) or "()"


class FinGroup:
    """A finite group given by its multiplication table.

    ``table[g, h]`` is the id of ``g*h``.  Optional provenance fields:
    ``perms`` (row ``g`` is the permutation ``g``), ``pairs``/``factors`` for
    products and pullbacks, ``coset_reps``/``quotient_of`` for quotients and
    ``members``/``subgroup_of`` for subgroups realized as groups.
    """

    def __init__(
        self,
        table: np.ndarray | Sequence[Sequence[int]],
        label: str = "",
        *,
        perms: np.ndarray | None = None,
        pairs: np.ndarray | None = None,
        factors: tuple["FinGroup", "FinGroup"] | None = None,
        coset_reps: np.ndarray | None = None,
        quotient_of: "FinGroup | None" = None,
        members: np.ndarray | None = None,
        subgroup_of: "FinGroup | None" = None,
        check: bool = True,
        seed: int = 0,
    ):
        t = np.asarray(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise ValidationError("Cayley table must be a non-empty square array")
        n = t.shape[0]
        if n > config.order_cap():
            raise ClosureCapExceeded(f"group of order {n} exceeds the order cap {config.order_cap()}")
        self.order = n
        self.table = _frozen(t)
        self.label = label
        self.perms = None if perms is None else _frozen(perms)
        self.pairs = None if pairs is None else _frozen(pairs)
        self.factors = factors
        self.coset_reps = None if coset_reps is None else _frozen(coset_reps)
        self.quotient_of = quotient_of
        self.members = None if members is None else _frozen(members)
        self.subgroup_of = subgroup_of
        self._cache: dict = {}

        if (t < 0).any() or (t >= n).any():
            raise ValidationError("table entries out of range")
        ar = np.arange(n)
        if not ((np.sort(t, axis=1) == ar).all() and (np.sort(t, axis=0) == ar[:, None]).all()):
            raise ValidationError("table is not a Latin square")
        ids = np.nonzero((t == ar).all(axis=1))[0]
        if len(ids) != 1 or not (t[:, ids[0]] == ar).all():
            raise ValidationError("table has no two-sided identity")
        self.identity = int(ids[0])
        self.inverse = _frozen(np.argmax(t == self.identity, axis=1))
        if check:
            self._check_associative(seed)
        self._hash = hash((n, t.tobytes()))

    def _check_associative(self, seed: int) -> None:
        t = self.table
        n = self.order
        if n <= config.ASSOCIATIVITY_FULL_CHECK:
            ok = (t[t, :] == t[:, t]).all()
        else:
            rng = np.random.default_rng(seed)
            a, b, c = rng.integers(0, n, size=(3, config.ASSOCIATIVITY_SAMPLES))
            ok = (t[t[a, b], c] == t[a, t[b, c]]).all()
        if not ok:
            raise ValidationError("table is not associative")

    # -- basic structure --------------------------------------------------

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FinGroup):
            return NotImplemented
        return self._hash == other._hash and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"FinGroup({self.label or '?'}, order={self.order})"

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def inv(self, g: int) -> int:
        return int(self.inverse[g])

    def power(self, g: int, k: int) -> int:
        x = self.identity
        base = g if k >= 0 else self.inv(g)
        for _ in range(abs(k)):
            x = int(self.table[x, base])
        return x

    def element_order(self, g: int) -> int:
        orders = self._cache.get("orders")
        if orders is None:
            orders = self._element_orders()
        return int(orders[g])

    def _element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        x = np.arange(n)
        cur = x.copy()
        for k in range(1, n + 1):
            done = (cur == self.identity) & (orders == 0)
            orders[done] = k
            if (orders > 0).all():
                break
            cur = self.table[cur, x]
        orders.setflags(write=False)
        self._cache["orders"] = orders
        return orders

    @property
    def element_orders(self) -> np.ndarray:
        orders = self._cache.get("orders")
        return orders if orders is not None else self._element_orders()

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def is_trivial(self) -> bool:
        return self.order == 1

    def exponent(self) -> int:
        return int(np.lcm.reduce(self.element_orders))

    def elements(self) -> range:
        return range(self.order)

    # -- display ----------------------------------------------------------

    def element_label(self, g: int) -> str:
        if self.perms is not None:
            return format_permutation(self.perms[g])
        if self.pairs is not None and self.factors is not None:
            a, b = self.pairs[g]
            return f"({self.factors[0].element_label(int(a))}, {self.factors[1].element_label(int(b))})"
        if self.coset_reps is not None and self.quotient_of is not None:
            return "[" + self.quotient_of.element_label(int(self.coset_reps[g])) + "]"
        if self.members is not None and self.subgroup_of is not None:
            return self.subgroup_of.element_label(int(self.members[g]))
        return str(g)

    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, (self.identity,))


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of ``parent`` given by its sorted member ids."""

    parent: FinGroup
    members: tuple[int, ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def of(cls, parent: FinGroup, elements: Iterable[int], check: bool = True) -> "Subgroup":
        members = tuple(sorted({int(x) for x in elements}))
        sub = cls(parent, members)
        if check:
            sub._validate()
        return sub

    def _validate(self) -> None:
        p = self.parent
        m = np.asarray(self.members, dtype=np.int64)
        if len(m) == 0 or m[0] < 0 or m[-1] >= p.order:
            raise ValidationError("subgroup members out of range")
        mask = self.mask
        if not mask[p.identity]:
            raise ValidationError("subgroup does not contain the identity")
        if not mask[p.table[np.ix_(m, m)]].all() or not mask[p.inverse[m]].all():
            raise ValidationError("subset is not closed under the group operations")

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return bool(self.mask[g])

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.members == other.members and self.parent == other.parent

    def __hash__(self) -> int:
        return hash(self.members)

    def __le__(self, other: "Subgroup") -> bool:
        _same_parent(self, other)
        return bool(other.mask[self.array].all())

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order} of {self.parent!r})"

    @property
    def array(self) -> np.ndarray:
        a = self._cache.get("array")
        if a is None:
            a = _frozen(np.asarray(self.members, dtype=np.int64))
            self._cache["array"] = a
        return a

    @property
    def mask(self) -> np.ndarray:
        m = self._cache.get("mask")
        if m is None:
            m = np.zeros(self.parent.order, dtype=bool)
            m[list(self.members)] = True
            m.setflags(write=False)
            self._cache["mask"] = m
        return m

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def is_normal(self) -> bool:
        p = self.parent
        g = np.arange(p.order)[:, None]
        conj = p.table[p.table[p.inverse[g], self.array[None, :]], g]
        return bool(self.mask[conj].all())

    def normalizes(self, other: "Subgroup") -> bool:
        """True when every element of ``self`` conjugates ``other`` into itself."""
        p = self.parent
        g = self.array[:, None]
        conj = p.table[p.table[p.inverse[g], other.array[None, :]], g]
        return bool(other.mask[conj].all())

    def as_group(self) -> tuple[FinGroup, "GroupHom"]:
        """The subgroup as a group in its own right, with its inclusion."""
        hit = self._cache.get("as_group")
        if hit is None:
            p = self.parent
            m = self.array
            table = np.searchsorted(m, p.table[np.ix_(m, m)])
            label = f"sub{self.order}({p.label})" if p.label else ""
            g = FinGroup(table, label, members=m, subgroup_of=p, check=False)
            hit = (g, GroupHom(g, p, m, check=False))
            self._cache["as_group"] = hit
        return hit

    def index_of(self, g: int) -> int:
        """Id of parent element ``g`` inside ``as_group()``."""
        return int(np.searchsorted(self.array, g))

    def generators(self) -> list[int]:
        return generators_of(self)


def _same_parent(*subs: Subgroup) -> None:
    first = subs[0].parent
    for s in subs[1:]:
        if s.parent is not first and s.parent != first:
            raise ParentMismatch("subgroups live in different groups")


class GroupHom:
    """A homomorphism ``domain -> codomain`` given by its table of images."""

    __slots__ = ("domain", "codomain", "map", "_cache")

    def __init__(self, domain: FinGroup, codomain: FinGroup, images: Sequence[int] | np.ndarray,
                 check: bool = True):
        m = np.asarray(images, dtype=np.int64)
        if m.shape != (domain.order,):
            raise ValidationError(f"map has {m.shape} entries, domain has order {domain.order}")
        self.domain = domain
        self.codomain = codomain
        self.map = _frozen(m)
        self._cache: dict = {}
        if check:
            if (m < 0).any() or (m >= codomain.order).any():
                raise ValidationError("image ids out of range")
            lhs = m[domain.table]
            rhs = codomain.table[m[:, None], m[None, :]]
            if not (lhs == rhs).all():
                raise ValidationError("map does not respect multiplication")

    def __call__(self, g: int) -> int:
        return int(self.map[g])

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, GroupHom):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and np.array_equal(self.map, other.map))

    def __hash__(self) -> int:
        return hash((self.domain, self.codomain, self.map.tobytes()))

    def __repr__(self) -> str:
        return f"GroupHom({self.domain!r} -> {self.codomain!r})"

    def preimage_reps(self) -> np.ndarray:
        """For each codomain element, the least domain element mapping to it (-1 if none)."""
        reps = self._cache.get("reps")
        if reps is None:
            reps = np.full(self.codomain.order, -1, dtype=np.int64)
            # reversed so that the smallest id wins
            order = np.arange(self.domain.order)[::-1]
            reps[self.map[order]] = order
            self._cache["reps"] = reps
        return reps

    def push(self, sub: Subgroup) -> Subgroup:
        """The image of a subgroup of the domain."""
        if sub.parent != self.domain:
            raise ParentMismatch("subgroup is not in the domain")
        return Subgroup(self.codomain, tuple(np.unique(self.map[sub.array]).tolist()))

    def pull(self, sub: Subgroup) -> Subgroup:
        """The preimage of a subgroup of the codomain."""
        if sub.parent != self.codomain:
            raise ParentMismatch("subgroup is not in the codomain")
        return Subgroup(self.domain, tuple(np.nonzero(sub.mask[self.map])[0].tolist()))


# -- constructors -----------------------------------------------------------

def trivial_group(label: str = "1") -> FinGroup:
    return FinGroup([[0]], label)


def from_table(table: Sequence[Sequence[int]] | np.ndarray, label: str = "") -> FinGroup:
    return FinGroup(table, label)


def from_permutation_generators(degree: int, generators: Sequence[Sequence[int]], label: str = "",
                                cap: int | None = None) -> FinGroup:
    """Close a set of permutations of ``range(degree)`` into a group.

    Ids follow breadth-first order from the identity, extending each element
    by the generators in the order given.  Products compose right to left:
    ``(g*h)(x) = g(h(x))``.
    """
    cap = config.order_cap() if cap is None else cap
    if degree < 1:
        raise ValidationError("degree must be positive")
    gens = []
    for g in generators:
        g = tuple(int(x) for x in g)
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise ValidationError(f"{g} is not a permutation of {degree} points")
        gens.append(np.asarray(g, dtype=np.int64))
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    head = 0
    while head < len(elements):
        x = np.asarray(elements[head], dtype=np.int64)
        head += 1
        for g in gens:
            y = tuple(x[g].tolist())
            if y not in index:
                if len(elements) >= cap:
                    raise ClosureCapExceeded(f"generated group exceeds the order cap {cap}")
                index[y] = len(elements)
                elements.append(y)
    perms = np.asarray(elements, dtype=np.int64)
    n = len(elements)
    # encode permutations as integers so the whole table is one lookup
    weights = degree ** np.arange(degree, dtype=np.int64) if degree > 1 else np.ones(1, dtype=np.int64)
    codes = perms @ weights
    order = np.argsort(codes)
    sorted_codes = codes[order]
    composite = perms[np.arange(n)[:, None, None], perms[None, :, :]]
    comp_codes = composite @ weights
    table = order[np.searchsorted(sorted_codes, comp_codes)]
    return FinGroup(table, label, perms=perms)


def cyclic_group(m: int) -> FinGroup:
    if m < 1:
        raise ValidationError("cyclic group order must be positive")
    if m == 1:
        return trivial_group("Z1")
    gen = [(k + 1) % m for k in range(m)]
    return from_permutation_generators(m, [gen], f"Z{m}")


def direct_product(G: FinGroup, H: FinGroup, label: str | None = None) -> tuple[FinGroup, GroupHom, GroupHom]:
    n, m = G.order, H.order
    if n * m > config.order_cap():
        raise ClosureCapExceeded(f"product of order {n * m} exceeds the order cap {config.order_cap()}")
    a = np.repeat(np.arange(n), m)
    b = np.tile(np.arange(m), n)
    table = G.table[a[:, None], a[None, :]] * m + H.table[b[:, None], b[None, :]]
    pairs = np.stack([a, b], axis=1)
    lab = label if label is not None else (f"{G.label} x {H.label}" if G.label and H.label else "")
    P = FinGroup(table, lab, pairs=pairs, factors=(G, H))
    return P, GroupHom(P, G, a, check=False), GroupHom(P, H, b, check=False)


def product_of_homs(f: GroupHom, g: GroupHom, domain: FinGroup, codomain: FinGroup) -> GroupHom:
    """``f x g`` between direct products built by :func:`direct_product` (ids ``a * |second| + b``)."""
    a, b = domain.pairs[:, 0], domain.pairs[:, 1]
    images = f.map[a] * g.codomain.order + g.map[b]
    return GroupHom(domain, codomain, images, check=False)


def identity_hom(G: FinGroup) -> GroupHom:
    return GroupHom(G, G, np.arange(G.order), check=False)


def zero_hom(G: FinGroup, H: FinGroup) -> GroupHom:
    return GroupHom(G, H, np.full(G.order, H.identity), check=False)


def hom_from_generator_images(domain: FinGroup, codomain: FinGroup, sources: Sequence[int],
                              targets: Sequence[int]) -> GroupHom:
    """Extend an assignment on generators to a homomorphism, if one exists."""
    if len(sources) != len(targets):
        raise ValidationError("generator and image lists differ in length")
    images = np.full(domain.order, -1, dtype=np.int64)
    images[domain.identity] = codomain.identity
    frontier = [domain.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s, t in zip(sources, targets):
                y = int(domain.table[x, s])
                v = int(codomain.table[images[x], t])
                if images[y] < 0:
                    images[y] = v
                    nxt.append(y)
                elif images[y] != v:
                    raise ValidationError("generator images do not extend to a homomorphism")
        frontier = nxt
    if (images < 0).any():
        raise ValidationError("the listed generators do not generate the domain")
    try:
        return GroupHom(domain, codomain, images)
    except ValidationError as exc:
        raise ValidationError("generator images do not extend to a homomorphism") from exc


# -- subgroups --------------------------------------------------------------

def _closure(G: FinGroup, seed: np.ndarray) -> np.ndarray:
    mask = np.zeros(G.order, dtype=bool)
    mask[G.identity] = True
    gens = np.unique(seed)
    if len(gens) == 0:
        return mask
    frontier = np.array([G.identity])
    while len(frontier):
        new = np.unique(G.table[np.ix_(frontier, gens)])
        new = new[~mask[new]]
        mask[new] = True
        frontier = new
    return mask


def subgroup_generated(G: FinGroup, seed: Iterable[int]) -> Subgroup:
    arr = np.fromiter((int(x) for x in seed), dtype=np.int64)
    if len(arr) and (arr.min() < 0 or arr.max() >= G.order):
        raise ValidationError("seed elements out of range")
    mask = _closure(G, arr)
    return Subgroup(G, tuple(np.nonzero(mask)[0].tolist()))


def generators_of(H: Subgroup) -> list[int]:
    """A small generating set, chosen greedily in id order."""
    hit = H._cache.get("gens")
    if hit is not None:
        return list(hit)
    G = H.parent
    gens: list[int] = []
    mask = np.zeros(G.order, dtype=bool)
    mask[G.identity] = True
    # try elements of large order first; they cover more ground
    orders = G.element_orders[H.array]
    candidates = H.array[np.argsort(-orders, kind="stable")]
    for g in candidates:
        if not mask[g]:
            gens.append(int(g))
            mask = _closure(G, np.asarray(gens))
    gens.sort()
    H._cache["gens"] = tuple(gens)
    return gens


def commutator_subgroup(G: FinGroup, H: Subgroup, K: Subgroup) -> Subgroup:
    """``[H, K]``, generated by all ``h^-1 k^-1 h k``."""
    _same_parent(H, K)
    if H.parent != G:
        raise ParentMismatch("subgroups are not subgroups of G")
    t, inv = G.table, G.inverse
    h = H.array[:, None]
    k = K.array[None, :]
    comms = t[t[inv[h], inv[k]], t[h, k]]
    return subgroup_generated(G, np.unique(comms))


def center(G: FinGroup) -> Subgroup:
    central = (G.table == G.table.T).all(axis=1)
    return Subgroup(G, tuple(np.nonzero(central)[0].tolist()))


def normal_closure(G: FinGroup, S: Subgroup) -> Subgroup:
    if S.parent != G:
        raise ParentMismatch("subgroup is not a subgroup of G")
    t, inv = G.table, G.inverse
    g = np.arange(G.order)[:, None]
    conj = t[t[inv[g], S.array[None, :]], g]
    return subgroup_generated(G, np.unique(conj))


def setwise_product(N: Subgroup, M: Subgroup) -> Subgroup:
    """``{nm}``; requires one factor to normalize the other."""
    _same_parent(N, M)
    if not (N.normalizes(M) or M.normalizes(N)):
        raise NotPermutable("neither subgroup normalizes the other")
    G = N.parent
    prods = np.unique(G.table[N.array[:, None], M.array[None, :]])
    return Subgroup(G, tuple(prods.tolist()))


def intersection(H: Subgroup, K: Subgroup) -> Subgroup:
    _same_parent(H, K)
    return Subgroup(H.parent, tuple(np.nonzero(H.mask & K.mask)[0].tolist()))


def quotient(G: FinGroup, N: Subgroup, label: str | None = None) -> tuple[FinGroup, GroupHom]:
    """``G/N`` with cosets indexed by their least member, reps sorted."""
    if N.parent != G:
        raise ParentMismatch("subgroup is not a subgroup of G")
    if not N.is_normal():
        raise NotNormal("quotient by a non-normal subgroup")
    mins = G.table[:, N.array].min(axis=1)
    reps = np.unique(mins)
    coset = np.searchsorted(reps, mins)
    table = coset[G.table[reps[:, None], reps[None, :]]]
    if label is None:
        label = f"{G.label}/{N.order}" if G.label else ""
    Q = FinGroup(table, label, coset_reps=reps, quotient_of=G, check=False)
    return Q, GroupHom(G, Q, coset, check=False)


# -- homomorphisms ----------------------------------------------------------

def kernel(f: GroupHom) -> Subgroup:
    hit = f._cache.get("kernel")
    if hit is None:
        hit = Subgroup(f.domain, tuple(np.nonzero(f.map == f.codomain.identity)[0].tolist()))
        f._cache["kernel"] = hit
    return hit


def image(f: GroupHom) -> Subgroup:
    return Subgroup(f.codomain, tuple(np.unique(f.map).tolist()))


def is_surjective(f: GroupHom) -> bool:
    hit = f._cache.get("surjective")
    if hit is None:
        hit = len(np.unique(f.map)) == f.codomain.order
        f._cache["surjective"] = hit
    return hit


def is_injective(f: GroupHom) -> bool:
    return len(np.unique(f.map)) == f.domain.order


def is_bijective(f: GroupHom) -> bool:
    return f.domain.order == f.codomain.order and is_surjective(f)


def compose(g: GroupHom, f: GroupHom) -> GroupHom:
    """``g . f`` (apply ``f`` first)."""
    if f.codomain != g.domain:
        raise CompositionMismatch(f"cannot compose {g!r} after {f!r}")
    return GroupHom(f.domain, g.codomain, g.map[f.map], check=False)


@dataclass(frozen=True)
class Restriction:
    """``f`` restricted to ``H``, corestricted to its image."""

    hom: GroupHom
    domain_inclusion: GroupHom
    codomain_inclusion: GroupHom


def restrict(f: GroupHom, H: Subgroup) -> Restriction:
    if H.parent != f.domain:
        raise ParentMismatch("restriction to a subgroup of another group")
    Hg, incl = H.as_group()
    img = f.push(H)
    Ig, img_incl = img.as_group()
    images = np.searchsorted(img.array, f.map[H.array])
    return Restriction(GroupHom(Hg, Ig, images, check=False), incl, img_incl)


def restrict_to(f: GroupHom, H: Subgroup, K: Subgroup) -> GroupHom:
    """``f`` as a map ``H -> K`` between subgroups realized as groups."""
    if H.parent != f.domain or K.parent != f.codomain:
        raise ParentMismatch("restriction subgroups do not sit in the map's ends")
    images = f.map[H.array]
    if not K.mask[images].all():
        raise ValidationError("the map does not carry the first subgroup into the second")
    return GroupHom(H.as_group()[0], K.as_group()[0], np.searchsorted(K.array, images), check=False)

