"""n-cubes of groups (or of arrows) and the recursive n-fold extension test.

A cube of dimension ``n`` assigns an object ``A_S`` to every subset ``S`` of
``{0..n-1}`` (encoded as a bitmask) and a morphism ``A_T -> A_{T-{i}}`` to
every covering pair.  The edge keyed ``(T, i)`` is that morphism.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, Mapping, Sequence

from . import config
from .categories import ARROWS, GROUPS, ArrowCategory, GroupCategory, is_double_extension
from .errors import (
    CompositionMismatch,
    DimCapExceeded,
    IndexOutOfRange,
    NonCommutingSquare,
    ShapeMismatch,
    UnsupportedDatum,
)
from .groups import (
    FinGroup,
    GroupHom,
    Subgroup,
    identity_hom,
    kernel,
    quotient,
    setwise_product,
    trivial_group,
    zero_hom,
)
from .limits import Square, induced_hom

__all__ = [
    "Cube", "CubeMorphism", "CubePullback", "index_shift", "shift_index", "face", "delta", "rho",
    "rho_morphism", "iota", "morphism_to_cube", "cube_pullback", "cube_pair", "cube_kernel",
    "cube_kernel_pair", "in_extension_class", "double_extension_status", "is_n_fold_extension",
    "extension_status_by_direction", "quotient_lattice_cube", "square_cube", "cube_square",
    "bits", "subsets", "permute_cube", "cube_from_function",
]


def bits(S: int) -> list[int]:
    return [i for i in range(S.bit_length()) if S >> i & 1]


def subsets(n: int) -> range:
    return range(1 << n)


def shift_index(i: int, k: int) -> int:
    """``s_i`` on a single index: skip over ``i``."""
    return k if k < i else k + 1


def index_shift(i: int, S: int) -> int:
    """``s_i`` applied elementwise to the subset mask ``S``."""
    if i < 0:
        raise IndexOutOfRange(f"shift index {i} is negative")
    low = S & ((1 << i) - 1)
    return low | ((S >> i) << (i + 1))


class Cube:
    """A functor from the opposite of the powerset of ``{0..dim-1}`` into ``cat``."""

    def __init__(self, dim: int, vertices: Sequence[Any], edges: Mapping[tuple[int, int], Any],
                 cat: Any = GROUPS, check: bool = True):
        if dim < 0:
            raise ShapeMismatch("negative cube dimension")
        if len(vertices) != 1 << dim:
            raise ShapeMismatch(f"a {dim}-cube needs {1 << dim} vertices, got {len(vertices)}")
        self.dim = dim
        self.cat = cat
        self.vertices = tuple(vertices)
        self.edges = dict(edges)
        self._arrows: dict[tuple[int, int], Any] = {}
        if check:
            self.validate()

    def validate(self) -> None:
        cat, n = self.cat, self.dim
        for T in subsets(n):
            for i in bits(T):
                if (T, i) not in self.edges:
                    raise ShapeMismatch(f"missing edge from {set(bits(T))} dropping {i}")
                e = self.edges[(T, i)]
                if cat.source(e) != self.vertices[T] or cat.target(e) != self.vertices[T & ~(1 << i)]:
                    raise CompositionMismatch(f"edge ({set(bits(T))}, {i}) has the wrong ends")
        extra = set(self.edges) - {(T, i) for T in subsets(n) for i in bits(T)}
        if extra:
            raise ShapeMismatch(f"unexpected edges {sorted(extra)}")
        for T in subsets(n):
            bt = bits(T)
            for a in range(len(bt)):
                for b in range(a + 1, len(bt)):
                    i, j = bt[a], bt[b]
                    via_i = cat.compose(self.edge(T & ~(1 << i), j), self.edge(T, i))
                    via_j = cat.compose(self.edge(T & ~(1 << j), i), self.edge(T, j))
                    if via_i != via_j:
                        raise NonCommutingSquare(f"coface square at {set(bt)} over {i},{j} does not commute")

    def vertex(self, S: int) -> Any:
        return self.vertices[S]

    def edge(self, T: int, i: int) -> Any:
        return self.edges[(T, i)]

    @property
    def top(self) -> Any:
        return self.vertices[-1]

    def arrow(self, T: int, S: int) -> Any:
        """The composite ``A_T -> A_S`` for ``S`` a subset of ``T``."""
        if S & ~T:
            raise ShapeMismatch("arrow target is not a subset of its source")
        if S == T:
            return self.cat.identity(self.vertices[T])
        hit = self._arrows.get((T, S))
        if hit is None:
            i = (T & ~S).bit_length() - 1
            step = self.edge(T, i)
            rest = T & ~(1 << i)
            hit = step if rest == S else self.cat.compose(self.arrow(rest, S), step)
            self._arrows[(T, S)] = hit
        return hit

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cube):
            return NotImplemented
        return (self.dim == other.dim and type(self.cat) is type(other.cat)
                and self.vertices == other.vertices and self.edges == other.edges)

    def __hash__(self) -> int:
        return hash((self.dim, self.vertices[-1]))

    def __repr__(self) -> str:
        return f"Cube(dim={self.dim}, cat={self.cat!r})"


@dataclass(eq=False)
class CubeMorphism:
    """A natural transformation between cubes of the same dimension."""

    domain: Cube
    codomain: Cube
    components: tuple
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        self.components = tuple(self.components)
        if self.domain.dim != self.codomain.dim:
            raise ShapeMismatch("cube morphism between cubes of different dimension")
        if type(self.domain.cat) is not type(self.codomain.cat):
            raise ShapeMismatch("cube morphism between cubes in different categories")
        if len(self.components) != 1 << self.dim:
            raise ShapeMismatch("wrong number of components")
        if self.check:
            self.validate()

    @property
    def dim(self) -> int:
        return self.domain.dim

    @property
    def cat(self) -> Any:
        return self.domain.cat

    def validate(self) -> None:
        cat = self.cat
        for S, f in enumerate(self.components):
            if cat.source(f) != self.domain.vertex(S) or cat.target(f) != self.codomain.vertex(S):
                raise CompositionMismatch(f"component at {set(bits(S))} has the wrong ends")
        for (T, i), a in self.domain.edges.items():
            S = T & ~(1 << i)
            b = self.codomain.edge(T, i)
            if cat.compose(b, self.components[T]) != cat.compose(self.components[S], a):
                raise NonCommutingSquare(f"naturality fails at ({set(bits(T))}, {i})")

    def component(self, S: int) -> Any:
        return self.components[S]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CubeMorphism):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and self.components == other.components)

    def __hash__(self) -> int:
        return hash((self.dim, self.components[-1]))


def _check_index(i: int, n: int) -> None:
    if not 0 <= i < n:
        raise IndexOutOfRange(f"index {i} out of range for a {n}-cube")


def face(A: Cube, k: int, side: int) -> Cube:
    """The ``(n-1)``-cube obtained by fixing coordinate ``k`` to ``side`` (1 = present)."""
    _check_index(k, A.dim)
    fix = side << k
    n = A.dim - 1
    vertices = [A.vertex(index_shift(k, S) | fix) for S in subsets(n)]
    edges = {(T, i): A.edge(index_shift(k, T) | fix, shift_index(k, i))
             for T in subsets(n) for i in bits(T)}
    return Cube(n, vertices, edges, A.cat, check=False)


def delta(i: int, A: Cube) -> CubeMorphism:
    """``A`` read as a morphism of ``(n-1)``-cubes along direction ``i``."""
    _check_index(i, A.dim)
    comps = [A.edge(index_shift(i, S) | 1 << i, i) for S in subsets(A.dim - 1)]
    return CubeMorphism(face(A, i, 1), face(A, i, 0), comps, check=False)


def morphism_to_cube(f: CubeMorphism) -> Cube:
    """Inverse of ``delta(n-1, .)``: the domain becomes the face where the new last coordinate is present."""
    m = f.dim
    last = 1 << m
    dom, cod = f.domain, f.codomain
    vertices = [dom.vertex(S & ~last) if S & last else cod.vertex(S) for S in subsets(m + 1)]
    edges = {}
    for T in subsets(m + 1):
        for i in bits(T):
            if i == m:
                edges[(T, i)] = f.component(T & ~last)
            elif T & last:
                edges[(T, i)] = dom.edge(T & ~last, i)
            else:
                edges[(T, i)] = cod.edge(T, i)
    return Cube(m + 1, vertices, edges, f.cat, check=False)


def rho(i: int, A: Cube) -> Cube:
    """The ``(n-1)``-cube in ``ARROWS`` whose vertex ``S`` is the edge of ``A`` along ``i`` over ``s_i(S)``."""
    if not isinstance(A.cat, GroupCategory):
        raise UnsupportedDatum("rho is defined for cubes of groups")
    _check_index(i, A.dim)
    n = A.dim - 1
    top = 1 << i
    vertices = [A.edge(index_shift(i, S) | top, i) for S in subsets(n)]
    edges = {}
    for T in subsets(n):
        sT = index_shift(i, T)
        for j in bits(T):
            k = shift_index(i, j)
            edges[(T, j)] = Square(A.edge(sT | top, k), vertices[T], vertices[T & ~(1 << j)], A.edge(sT, k))
    return Cube(n, vertices, edges, ARROWS, check=False)


def rho_morphism(i: int, f: CubeMorphism) -> CubeMorphism:
    """``rho_i`` applied to a morphism of group cubes, componentwise."""
    dom, cod = rho(i, f.domain), rho(i, f.codomain)
    top = 1 << i
    comps = [Square(f.component(index_shift(i, S) | top), dom.vertex(S), cod.vertex(S),
                    f.component(index_shift(i, S)))
             for S in subsets(f.dim - 1)]
    return CubeMorphism(dom, cod, comps, check=False)


def iota(n: int, A: FinGroup) -> Cube:
    """``A`` at the top vertex, the trivial group elsewhere, zero maps between."""
    if n < 0:
        raise ShapeMismatch("negative cube dimension")
    one = trivial_group()
    full = (1 << n) - 1
    vertices = [A if S == full else one for S in subsets(n)]
    edges = {(T, i): zero_hom(vertices[T], one) if T == full else identity_hom(one)
             for T in subsets(n) for i in bits(T)}
    return Cube(n, vertices, edges, GROUPS, check=False)


@dataclass(frozen=True, eq=False)
class CubePullback:
    apex: Cube
    p1: CubeMorphism
    p2: CubeMorphism
    vertex_pullbacks: tuple

    def __iter__(self) -> Iterator[Any]:
        return iter((self.apex, self.p1, self.p2))


def cube_pullback(f: CubeMorphism, g: CubeMorphism) -> CubePullback:
    """Vertexwise pullback of ``f: X -> Z`` and ``g: Y -> Z``."""
    if f.dim != g.dim or type(f.cat) is not type(g.cat):
        raise ShapeMismatch("pullback legs have different shapes")
    if any(a != b for a, b in zip(f.codomain.vertices, g.codomain.vertices)):
        raise ShapeMismatch("pullback legs have different codomains")
    cat, n = f.cat, f.dim
    pbs = [cat.pullback(f.component(S), g.component(S)) for S in subsets(n)]
    vertices = [pb.apex for pb in pbs]
    edges = {}
    for T in subsets(n):
        for i in bits(T):
            S = T & ~(1 << i)
            u = cat.compose(f.domain.edge(T, i), pbs[T].p1)
            v = cat.compose(g.domain.edge(T, i), pbs[T].p2)
            edges[(T, i)] = cat.pair(pbs[S], u, v)
    apex = Cube(n, vertices, edges, cat, check=False)
    p1 = CubeMorphism(apex, f.domain, [pb.p1 for pb in pbs], check=False)
    p2 = CubeMorphism(apex, g.domain, [pb.p2 for pb in pbs], check=False)
    return CubePullback(apex, p1, p2, tuple(pbs))


def cube_pair(pb: CubePullback, u: CubeMorphism, v: CubeMorphism) -> CubeMorphism:
    """The unique factorization of ``(u, v)`` through a vertexwise pullback."""
    if u.dim != pb.apex.dim or v.dim != pb.apex.dim:
        raise ShapeMismatch("paired morphisms do not match the pullback dimension")
    cat = pb.apex.cat
    comps = [cat.pair(p, u.component(S), v.component(S)) for S, p in enumerate(pb.vertex_pullbacks)]
    return CubeMorphism(u.domain, pb.apex, comps, check=False)


def cube_kernel_pair(f: CubeMorphism) -> CubePullback:
    return cube_pullback(f, f)


def cube_kernel(f: CubeMorphism) -> tuple[Cube, CubeMorphism]:
    """Vertexwise kernels of a morphism of group cubes, with the inclusion into the domain."""
    if not isinstance(f.cat, GroupCategory):
        raise UnsupportedDatum("cube kernels are computed for cubes of groups")
    n = f.dim
    subs = [kernel(c) for c in f.components]
    groups = [K.as_group() for K in subs]
    edges = {}
    for T in subsets(n):
        for i in bits(T):
            S = T & ~(1 << i)
            a = f.domain.edge(T, i)
            KT, incl = groups[T]
            target = subs[S]
            images = [target.index_of(int(a.map[x])) for x in incl.map]
            edges[(T, i)] = GroupHom(KT, groups[S][0], images, check=False)
    K = Cube(n, [g for g, _ in groups], edges, GROUPS, check=False)
    inclusion = CubeMorphism(K, f.domain, [incl for _, incl in groups], check=False)
    return K, inclusion


# recursive extension test


def _dim_guard(A: Cube) -> None:
    if A.dim > config.CUBE_DIM_CAP:
        raise DimCapExceeded(f"extension checks are capped at dimension {config.CUBE_DIM_CAP}")


def in_extension_class(A: Cube, i: int) -> bool:
    """Whether ``delta(i, A)`` belongs to the class of ``(n-1)``-fold extensions of ``A.cat``."""
    _dim_guard(A)
    _check_index(i, A.dim)
    if A.dim == 1:
        return A.cat.is_extension(A.edge(1, 0))
    return double_extension_status(A, i, A.dim - 2)


def double_extension_status(A: Cube, i: int, j: int) -> bool:
    """Whether the square of ``(n-2)``-cubes cut out by directions ``i`` and ``s_i(j)`` is a
    double extension relative to ``(n-2)``-fold extensions."""
    n = A.dim
    _check_index(i, n)
    _check_index(j, n - 1)
    k = shift_index(i, j)
    ik = i if i < k else i - 1
    X, Y = face(A, i, 1), face(A, i, 0)
    upper, lower = face(A, k, 1), face(A, k, 0)
    if not (in_extension_class(X, j) and in_extension_class(Y, j)
            and in_extension_class(upper, ik) and in_extension_class(lower, ik)):
        return False
    f_top = delta(ik, upper)
    f_bottom = delta(ik, lower)
    dX, dY = delta(j, X), delta(j, Y)
    pb = cube_pullback(f_bottom, dY)
    r = cube_pair(pb, dX, f_top)
    return in_extension_class(morphism_to_cube(r), n - 2)


def is_n_fold_extension(A: Cube) -> bool:
    _dim_guard(A)
    if A.dim == 0:
        return A.cat.is_object(A.vertex(0))
    return in_extension_class(A, A.dim - 1)


def extension_status_by_direction(A: Cube) -> list[bool]:
    """Extension status computed through each ``delta_i``; these agree for every cube."""
    if A.dim == 0:
        return [is_n_fold_extension(A)]
    return [in_extension_class(A, i) for i in range(A.dim)]


# constructors


def quotient_lattice_cube(G: FinGroup, normals: Sequence[Subgroup], check: bool = True) -> Cube:
    """``A_S = G / prod(N_i for i not in S)`` with the canonical projections.

    Edge ``(T, i)`` therefore has kernel the image of ``N_i``.
    """
    n = len(normals)
    full = (1 << n) - 1
    projections: list[GroupHom] = []
    for S in subsets(n):
        N = G.trivial_subgroup()
        for i in range(n):
            if not S >> i & 1:
                N = setwise_product(N, normals[i])
        if S == full and N.is_trivial():
            projections.append(identity_hom(G))
        else:
            projections.append(quotient(G, N)[1])
    ident = identity_hom(G)
    vertices = [p.codomain for p in projections]
    edges = {(T, i): induced_hom(ident, projections[T], projections[T & ~(1 << i)])
             for T in subsets(n) for i in bits(T)}
    return Cube(n, vertices, edges, GROUPS, check=check)


def square_cube(sq: Square) -> Cube:
    """A commutative square as a 2-cube: ``left`` is the edge along 1 and ``top`` along 0 at the top vertex."""
    sq.check()
    vertices = [sq.bottom.codomain, sq.bottom.domain, sq.right.domain, sq.top.domain]
    edges = {(0b11, 0): sq.top, (0b11, 1): sq.left, (0b01, 0): sq.bottom, (0b10, 1): sq.right}
    return Cube(2, vertices, edges, GROUPS, check=False)


def cube_square(A: Cube) -> Square:
    """Inverse of :func:`square_cube`."""
    if A.dim != 2:
        raise ShapeMismatch("only 2-cubes are squares")
    return Square(A.edge(0b11, 0), A.edge(0b11, 1), A.edge(0b10, 1), A.edge(0b01, 0))


def permute_cube(A: Cube, perm: Sequence[int]) -> Cube:
    """Relabel directions: direction ``k`` of the result is direction ``perm[k]`` of ``A``."""
    n = A.dim
    if sorted(perm) != list(range(n)):
        raise ShapeMismatch(f"{list(perm)} is not a permutation of the {n} directions")

    def image(S: int) -> int:
        return sum(1 << perm[k] for k in bits(S))

    vertices = [A.vertex(image(S)) for S in subsets(n)]
    edges = {(T, i): A.edge(image(T), perm[i]) for T in subsets(n) for i in bits(T)}
    return Cube(n, vertices, edges, A.cat, check=False)


def cube_from_function(n: int, vertex: Callable[[int], Any], edge: Callable[[int, int], Any],
                       cat: Any = GROUPS, check: bool = True) -> Cube:
    vertices = [vertex(S) for S in subsets(n)]
    edges = {(T, i): edge(T, i) for T in subsets(n) for i in bits(T)}
    return Cube(n, vertices, edges, cat, check)


def is_arrow_category(cat: Any) -> bool:
    return isinstance(cat, ArrowCategory)


def double_extension_square(sq: Square) -> bool:
    return is_double_extension(sq.top, sq.left, sq.right, sq.bottom, GROUPS)
