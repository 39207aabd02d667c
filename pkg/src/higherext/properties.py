"""Seeded property suites over generated groups, extensions and cubes.

Every suite draws its cases from a generator seeded with the suite id and the
run seed, so a ``(ids, seed, budget)`` triple always replays the same cases.
A failing case is recorded as data (the first counterexample is kept) rather
than raised.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations
from math import gcd
from typing import Callable, Iterator

from .birkhoff import (
    AB,
    ab_mod,
    bracket1_explicit,
    is_central_extension,
    is_normal_extension,
    is_strongly_birkhoff_on,
    is_trivial_extension,
)
from .categories import ARROWS, square_is_double_extension
from .cube import (
    Cube,
    delta,
    double_extension_status,
    extension_status_by_direction,
    index_shift,
    is_n_fold_extension,
    permute_cube,
    rho,
    rho_morphism,
    square_cube,
)
from .dsl import serialize_cube
from .enumeration import (
    enumerate_normal_subgroups,
    library_double_extensions,
    library_extensions,
    mutate_cube,
    normal_subgroups_inside,
    random_cube,
)
from .errors import HigherExtError, UnsupportedDatum
from .groups import (
    FinGroup,
    GroupHom,
    Subgroup,
    center,
    commutator_subgroup,
    cyclic_group,
    direct_product,
    identity_hom,
    intersection,
    is_surjective,
    kernel,
    product_of_homs,
    quotient,
    restrict_to,
    setwise_product,
)
from .higher_central import (
    bracket_n_categorical,
    bracket_n_explicit,
    bracket_report,
    centralize_n,
    is_double_central_categorical,
    top_kernels,
)
from .homology import integral_homology
from .hopf import hopf_delta, hopf_delta_n, hopf_via_trivialization
from .library import library_group, library_names
from .limits import Square, induced_hom
from .structure import abelianization_invariants, find_isomorphism

__all__ = ["PropertyRunReport", "run_property_suite", "SUITES", "SCHUR_MULTIPLIERS", "DEFAULT_BUDGET"]

DEFAULT_BUDGET = 100

# torsion divisors of H_2(G; Z) for small groups
SCHUR_MULTIPLIERS: dict[str, tuple[int, ...]] = {
    "Z2": (), "Z3": (), "Z4": (), "Z5": (), "Z6": (), "Z7": (), "Z8": (),
    "Klein": (2,), "Z2^3": (2, 2, 2), "Z3xZ3": (3,),
    "S3": (), "D4": (2,), "Q8": (), "A4": (2,),
}


@dataclass
class PropertyRunReport:
    property_id: str
    attempted: int
    passed: int
    counterexample: dict | None
    seed: int

    @property
    def ok(self) -> bool:
        return self.attempted > 0 and self.passed == self.attempted

    def to_dict(self) -> dict:
        return {"property_id": self.property_id, "attempted": self.attempted, "passed": self.passed,
                "counterexample": self.counterexample, "seed": self.seed}


# a case is a check plus a lazily built description of its input
Case = tuple[Callable[[], bool], Callable[[], dict]]


@dataclass
class _Context:
    rng: random.Random
    budget: int
    seed: int
    cache: dict = field(default_factory=dict)


# -- witnesses ------------------------------------------------------------------

def _hom_witness(f: GroupHom) -> dict:
    return {"extension": serialize_cube(Cube(1, [f.codomain, f.domain], {(1, 0): f}, check=False))}


def _square_witness(sq: Square) -> dict:
    return {"square": serialize_cube(square_cube(sq))}


def _cube_witness(A: Cube) -> dict:
    return {"cube": serialize_cube(A)}


def _group_witness(name: str) -> dict:
    return {"group": name}


# -- quotient systems: arrows G/M -> G/M' for normal M inside M' ---------------------------

class _QuotientSystem:
    def __init__(self, G: FinGroup):
        self.G = G
        self.normals = enumerate_normal_subgroups(G)
        self._proj: dict[Subgroup, GroupHom] = {}
        self._maps: dict[tuple[Subgroup, Subgroup], GroupHom] = {}

    def proj(self, N: Subgroup) -> GroupHom:
        hit = self._proj.get(N)
        if hit is None:
            hit = self._proj[N] = quotient(self.G, N)[1]
        return hit

    def map(self, N: Subgroup, M: Subgroup) -> GroupHom:
        """``G/N -> G/M``."""
        hit = self._maps.get((N, M))
        if hit is None:
            hit = self._maps[(N, M)] = induced_hom(identity_hom(self.G), self.proj(N), self.proj(M))
        return hit

    def above(self, rng: random.Random, N: Subgroup) -> Subgroup:
        return rng.choice([M for M in self.normals if N <= M])

    def arrow(self, rng: random.Random) -> tuple[Subgroup, Subgroup]:
        M = rng.choice(self.normals)
        return M, self.above(rng, M)

    def step(self, rng: random.Random, x: tuple[Subgroup, Subgroup]) -> tuple[Subgroup, Subgroup]:
        """A random arrow ``y`` receiving a morphism from ``x``."""
        M, Mp = x
        L = self.above(rng, M)
        return L, self.above(rng, setwise_product(Mp, L))

    def square(self, x: tuple[Subgroup, Subgroup], y: tuple[Subgroup, Subgroup]) -> Square:
        (M, Mp), (L, Lp) = x, y
        return Square(self.map(M, L), self.map(M, Mp), self.map(L, Lp), self.map(Mp, Lp))


_SYSTEM_POOL = ("Z2", "Z3", "Z4", "Klein", "Z6", "S3", "Z2^3", "D4", "Q8", "Z2xZ4", "Z3xZ3", "Z12", "A4",
                "D6", "Z2xZ6", "Z2xD4", "Z4xZ4", "Z2^4")


def _system(ctx: _Context, name: str) -> _QuotientSystem:
    key = ("system", name)
    if key not in ctx.cache:
        ctx.cache[key] = _QuotientSystem(library_group(name))
    return ctx.cache[key]


def _random_system(ctx: _Context, pool: tuple[str, ...] = _SYSTEM_POOL) -> _QuotientSystem:
    return _system(ctx, ctx.rng.choice(pool))


def kernel_arrow(sq: Square) -> GroupHom:
    """``K[top] -> K[bottom]``, the restriction of the left side."""
    return restrict_to(sq.left, kernel(sq.top), kernel(sq.bottom))


def _is_arrow_extension(sq: Square) -> bool:
    return ARROWS.is_extension(sq)


# -- suites ---------------------------------------------------------------------------------

def _suite_homology_h1(ctx: _Context) -> Iterator[Case]:
    for name in _names_up_to(24):
        G = library_group(name)

        def check(G=G) -> bool:
            h0, h1 = integral_homology(G, 0), integral_homology(G, 1)
            expected = tuple(d for d in abelianization_invariants(G) if d > 1)
            return h0.divisors == () and h0.free_rank == 1 and h1.divisors == expected and h1.free_rank == 0
        yield check, lambda name=name: _group_witness(name)


def _suite_schur(ctx: _Context) -> Iterator[Case]:
    for name, expected in SCHUR_MULTIPLIERS.items():
        def check(name=name, expected=expected) -> bool:
            h = integral_homology(library_group(name), 2)
            return h.divisors == expected and h.free_rank == 0
        yield check, lambda name=name: _group_witness(name)


def _suite_homology_product(ctx: _Context) -> Iterator[Case]:
    # the bar complex fits the rank budget up to order 16
    for a in range(2, 9):
        for b in range(2, 9):
            if a * b > 16:
                continue

            def check(a=a, b=b) -> bool:
                G = direct_product(cyclic_group(a), cyclic_group(b))[0]
                g = gcd(a, b)
                h = integral_homology(G, 2)
                return h.free_rank == 0 and h.divisors == ((g,) if g > 1 else ())
            yield check, lambda a=a, b=b: {"group": f"Z{a} x Z{b}"}


def _suite_central_equivalence(ctx: _Context) -> Iterator[Case]:
    for f in library_extensions(16):
        def check(f=f) -> bool:
            return is_normal_extension(AB, f) == (kernel(f) <= center(f.domain))
        yield check, lambda f=f: _hom_witness(f)


def _suite_double_central(ctx: _Context) -> Iterator[Case]:
    for A in library_double_extensions(16):
        def check(A=A) -> bool:
            explicit = bracket_n_explicit(A, check=False)
            K0, K1 = top_kernels(A)
            top = A.top
            direct = setwise_product(commutator_subgroup(top, K0, K1),
                                     commutator_subgroup(top, intersection(K0, K1), top.whole()))
            if explicit != direct:
                return False
            if any(bracket_n_categorical(A, AB, i, check=False) != explicit for i in range(2)):
                return False
            return is_double_central_categorical(A) == explicit.is_trivial()
        yield check, lambda A=A: _cube_witness(A)


def _mixed_cubes(ctx: _Context, dims: tuple[int, ...], mutate_every: int = 3) -> Iterator[tuple[int, Cube]]:
    for k in range(ctx.budget):
        dim = dims[k % len(dims)]
        mutate = mutate_every > 0 and k % mutate_every == mutate_every - 1
        yield k, random_cube(dim, ctx.rng.randrange(1 << 30), budget=16, mutate=mutate,
                             extension_only=ctx.rng.random() < 0.7)


def _suite_symmetry_n2(ctx: _Context) -> Iterator[Case]:
    cubes = library_double_extensions(8)
    mutated = [mutate_cube(A, S) for A in cubes[::3] for S in range(3)]
    for A in cubes + mutated:
        def check(A=A) -> bool:
            statuses = extension_status_by_direction(A)
            return len(set(statuses)) == 1 and statuses[0] == is_n_fold_extension(A)
        yield check, lambda A=A: _cube_witness(A)


def _suite_symmetry(ctx: _Context) -> Iterator[Case]:
    for _, A in _mixed_cubes(ctx, (2, 3)):
        def check(A=A) -> bool:
            statuses = extension_status_by_direction(A)
            if len(set(statuses)) != 1:
                return False
            status = statuses[0]
            if A.dim == 3:
                for i in range(3):
                    for j in range(2):
                        if double_extension_status(A, i, j) != status:
                            return False
            if status:
                report = bracket_report(A, AB, "both")
                if not report.agree:
                    return False
            return True
        yield check, lambda A=A: _cube_witness(A)


def _suite_rho_characterization(ctx: _Context) -> Iterator[Case]:
    for _, A in _mixed_cubes(ctx, (2, 3, 1)):
        def check(A=A) -> bool:
            status = is_n_fold_extension(A)
            return all(is_n_fold_extension(rho(i, A)) == status for i in range(A.dim))
        yield check, lambda A=A: _cube_witness(A)


def _suite_shift_lemma(ctx: _Context) -> Iterator[Case]:
    for j in range(1, 7):
        for i in range(j):
            def check(i=i, j=j) -> bool:
                return all(index_shift(j, index_shift(i, S)) == index_shift(i, index_shift(j - 1, S))
                           for S in range(1 << 7))
            yield check, lambda i=i, j=j: {"i": i, "j": j}
    for k in range(ctx.budget):
        A = random_cube(3, ctx.rng.randrange(1 << 30), budget=16, extension_only=False)

        def check(A=A) -> bool:
            for i in range(3):
                for j in range(3):
                    if i == j:
                        continue
                    if i < j:
                        ok = delta(j - 1, rho(i, A)) == rho_morphism(i, delta(j, A))
                    else:
                        ok = delta(j, rho(i, A)) == rho_morphism(i - 1, delta(j, A))
                    if not ok:
                        return False
            return True
        yield check, lambda A=A: _cube_witness(A)


def _suite_e1_axioms(ctx: _Context) -> Iterator[Case]:
    rng = ctx.rng
    per_family = max(1, ctx.budget)
    small = ("Z2", "Z3", "Z4", "Klein", "Z6", "S3", "Z2^3", "D4", "Q8")

    # split epimorphisms of arrows are double extensions
    for _ in range(per_family):
        S1, S2 = _random_system(ctx, small), _random_system(ctx, small)
        x, z = S1.arrow(rng), S2.arrow(rng)
        yield _split_case(S1, x, S2, z)

    # composition and right cancellation
    for _ in range(per_family):
        S = _random_system(ctx)
        x = S.arrow(rng)
        y = S.step(rng, x)
        w = S.step(rng, y)
        s, t = S.square(x, y), S.square(y, w)

        def composition(s=s, t=t) -> bool:
            ts = ARROWS.compose(t, s)
            st_s, st_t, st_ts = map(_is_arrow_extension, (s, t, ts))
            if st_s and st_t and not st_ts:
                return False
            return not st_ts or st_t
        yield composition, lambda s=s, t=t: {"first": _square_witness(s), "second": _square_witness(t)}

    # stability under pullback along arbitrary morphisms of extensions
    for _ in range(per_family):
        S = _random_system(ctx)
        s = None
        for _ in range(8):
            x = S.arrow(rng)
            y = S.step(rng, x)
            s = S.square(x, y)
            if _is_arrow_extension(s):
                break
        (P, Pp) = y
        Q = rng.choice([N for N in S.normals if N <= P])
        Qp = rng.choice([N for N in S.normals if Q <= N <= Pp])
        g = S.square((Q, Qp), y)

        def pulled(s=s, g=g) -> bool:
            if not _is_arrow_extension(s):
                return True
            pb = ARROWS.pullback(s, g)
            return is_surjective(pb.apex) and _is_arrow_extension(pb.p2)
        yield pulled, lambda s=s, g=g: {"extension": _square_witness(s), "along": _square_witness(g)}

    # a levelwise regular epimorphism is in the class iff its kernel arrow is an extension
    for _ in range(per_family):
        S = _random_system(ctx)
        x = S.arrow(rng)
        s = S.square(x, S.step(rng, x))

        def cokernel(s=s) -> bool:
            return _is_arrow_extension(s) == is_surjective(kernel_arrow(s))
        yield cokernel, lambda s=s: _square_witness(s)

    # short five: the comparison of kernels and the composite control the first map
    for _ in range(per_family):
        S = _random_system(ctx)
        x = S.arrow(rng)
        w = S.step(rng, x)
        y = S.step(rng, w)
        yield _short_five_case(S, x, w, y)


def _split_case(S1: _QuotientSystem, x, S2: _QuotientSystem, z) -> Case:
    ax, az = S1.map(*x), S2.map(*z)
    P1, p1, _ = direct_product(ax.domain, az.domain)
    P0, q1, _ = direct_product(ax.codomain, az.codomain)
    prod = product_of_homs(ax, az, P1, P0)
    n1, n0 = az.domain.order, az.codomain.order
    e1, e0 = az.domain.identity, az.codomain.identity
    sec_top = GroupHom(ax.domain, P1, [a * n1 + e1 for a in range(ax.domain.order)])
    sec_bottom = GroupHom(ax.codomain, P0, [a * n0 + e0 for a in range(ax.codomain.order)])
    projection = Square(p1, prod, ax, q1).check()
    section = Square(sec_top, ax, prod, sec_bottom).check()

    def check() -> bool:
        if ARROWS.compose(projection, section) != ARROWS.identity(ax):
            return False
        return _is_arrow_extension(projection)
    return check, lambda: _square_witness(projection)


def _short_five_case(S: _QuotientSystem, x, w, y) -> Case:
    a, t = S.square(x, w), S.square(w, y)
    s = ARROWS.compose(t, a)

    def check() -> bool:
        ks, kt = kernel_arrow(s), kernel_arrow(t)
        Ks_top, Kt_top = kernel(s.top), kernel(t.top)
        Ks_bot, Kt_bot = kernel(s.bottom), kernel(t.bottom)
        kk = Square(restrict_to(a.top, Ks_top, Kt_top), ks, kt, restrict_to(a.bottom, Ks_bot, Kt_bot)).check()
        if not (_is_arrow_extension(s) and square_is_double_extension(kk)):
            return True
        return _is_arrow_extension(a)
    return check, lambda: {"first": _square_witness(a), "second": _square_witness(t)}


def _suite_rotation(ctx: _Context) -> Iterator[Case]:
    rng = ctx.rng
    for _ in range(ctx.budget):
        S = _random_system(ctx)
        x = S.arrow(rng)
        sq = S.square(x, S.step(rng, x))

        def check(sq=sq) -> bool:
            # a double extension, read horizontally or vertically, has surjective kernel comparisons
            status = square_is_double_extension(sq)
            return (status == is_surjective(kernel_arrow(sq))
                    and status == is_surjective(kernel_arrow(sq.transpose()))
                    and status == square_is_double_extension(sq.transpose()))
        yield check, lambda sq=sq: _square_witness(sq)


def _suite_hopf_dual(ctx: _Context) -> Iterator[Case]:
    for D in (AB, ab_mod(2)):
        for f in library_extensions(16):
            def check(f=f, D=D) -> bool:
                K = hopf_via_trivialization(f, D)
                return find_isomorphism(K, hopf_delta(f, D).quotient) is not None
            yield check, lambda f=f, D=D: {"datum": D.name, **_hom_witness(f)}


def _suite_centralization_universal(ctx: _Context) -> Iterator[Case]:
    for f in library_extensions(16):
        def check(f=f) -> bool:
            bracket = bracket1_explicit(f)
            A, B = f.domain, f.codomain
            for N in normal_subgroups_inside(A, kernel(f)):
                q = quotient(A, N)[1]
                g = induced_hom(f, q, identity_hom(B))
                if is_central_extension(AB, g) != (bracket <= N):
                    return False
            return True
        yield check, lambda f=f: _hom_witness(f)


def _suite_status_chain(ctx: _Context) -> Iterator[Case]:
    for D in (AB, ab_mod(2), ab_mod(3)):
        for f in library_extensions(16):
            def check(f=f, D=D) -> bool:
                trivial = is_trivial_extension(D, f)
                normal = is_normal_extension(D, f)
                central = is_central_extension(D, f)
                # centrality read off the vanishing of the explicit bracket
                if trivial and not normal or normal != central:
                    return False
                if central != bracket1_explicit(f, D).is_trivial():
                    return False
                return (is_strongly_birkhoff_on(D, f) and D.is_functorial_on(f)
                        and D.is_idempotent_on(f.domain))
            yield check, lambda f=f, D=D: {"datum": D.name, **_hom_witness(f)}


def _suite_centralize_n(ctx: _Context) -> Iterator[Case]:
    cubes = library_double_extensions(8)
    cubes += [random_cube(3, ctx.rng.randrange(1 << 30), budget=12) for _ in range(max(1, ctx.budget // 5))]
    for A in cubes:
        def check(A=A) -> bool:
            C = centralize_n(A)
            if not is_n_fold_extension(C) or not bracket_n_explicit(C).is_trivial():
                return False
            if centralize_n(C) != C:
                return False
            # every central quotient of the top vertex over the same lower vertices kills the bracket
            bracket = bracket_n_explicit(A)
            common = top_kernels(A)[0]
            for K in top_kernels(A)[1:]:
                common = intersection(common, K)
            full = (1 << A.dim) - 1
            for N in normal_subgroups_inside(A.top, common):
                q = quotient(A.top, N)[1]
                vertices = list(A.vertices)
                vertices[full] = q.codomain
                edges = dict(A.edges)
                for i in range(A.dim):
                    e = A.edge(full, i)
                    edges[(full, i)] = induced_hom(e, q, identity_hom(e.codomain))
                B = Cube(A.dim, vertices, edges, check=False)
                if bracket_n_explicit(B, check=False).is_trivial() != (bracket <= N):
                    return False
            return True
        yield check, lambda A=A: _cube_witness(A)


def _suite_hopf_containment(ctx: _Context) -> Iterator[Case]:
    cubes = library_double_extensions(16)
    cubes += [random_cube(3, ctx.rng.randrange(1 << 30), budget=16) for _ in range(max(1, ctx.budget // 4))]
    for A in cubes:
        def check(A=A) -> bool:
            report = hopf_delta_n(A)
            if not report.denominator <= report.numerator:
                return False
            base = report.quotient
            for perm in permutations(range(A.dim)):
                if list(perm) == sorted(perm):
                    continue
                other = hopf_delta_n(permute_cube(A, perm))
                if other.numerator != report.numerator or other.denominator != report.denominator:
                    return False
                if find_isomorphism(other.quotient, base) is None:
                    return False
            return True
        yield check, lambda A=A: _cube_witness(A)


def _suite_birkhoff_datum(ctx: _Context) -> Iterator[Case]:
    for D in (AB, ab_mod(2), ab_mod(3), ab_mod(4)):
        for name in _names_up_to(24):
            def check(name=name, D=D) -> bool:
                G = library_group(name)
                return D.radical(G).is_normal() and D.is_idempotent_on(G)
            yield check, lambda name=name, D=D: {"datum": D.name, **_group_witness(name)}
        for f in library_extensions(12):
            def functorial(f=f, D=D) -> bool:
                return D.is_functorial_on(f)
            yield functorial, lambda f=f, D=D: {"datum": D.name, **_hom_witness(f)}


def _names_up_to(order: int) -> list[str]:
    return library_names(order)


SUITES: dict[str, Callable[[_Context], Iterator[Case]]] = {
    "homology-h1": _suite_homology_h1,
    "schur": _suite_schur,
    "homology-product": _suite_homology_product,
    "central-equivalence": _suite_central_equivalence,
    "double-central": _suite_double_central,
    "symmetry-n2": _suite_symmetry_n2,
    "symmetry": _suite_symmetry,
    "rho-characterization": _suite_rho_characterization,
    "shift-lemma": _suite_shift_lemma,
    "e1-axioms": _suite_e1_axioms,
    "rotation": _suite_rotation,
    "hopf-dual": _suite_hopf_dual,
    "centralization-universal": _suite_centralization_universal,
    "status-chain": _suite_status_chain,
    "centralize-n": _suite_centralize_n,
    "hopf-containment": _suite_hopf_containment,
    "birkhoff-datum": _suite_birkhoff_datum,
}
ALIASES = {"central-implies-normal": "status-chain"}


def _run(pid: str, seed: int, budget: int) -> PropertyRunReport:
    ctx = _Context(random.Random(f"{pid}:{seed}"), budget, seed)
    attempted = passed = 0
    counterexample = None
    for check, witness in SUITES[pid](ctx):
        attempted += 1
        try:
            ok = bool(check())
            error = None
        except HigherExtError as exc:
            ok, error = False, f"{type(exc).__name__}: {exc}"
        if ok:
            passed += 1
        elif counterexample is None:
            counterexample = witness()
            if error:
                counterexample["error"] = error
    return PropertyRunReport(pid, attempted, passed, counterexample, seed)


def run_property_suite(ids: list[str] | None = None, seed: int = 0,
                       budget: int = DEFAULT_BUDGET) -> list[PropertyRunReport]:
    """Run the named suites in the given order; ``None`` runs every suite."""
    if budget < 1:
        raise UnsupportedDatum("the property budget must be positive")
    chosen = list(SUITES) if ids is None else list(ids)
    resolved = []
    for pid in chosen:
        pid = ALIASES.get(pid, pid)
        if pid not in SUITES:
            raise UnsupportedDatum(f"unknown property suite {pid!r}; known: {', '.join(sorted(SUITES))}")
        resolved.append(pid)
    return [_run(pid, seed, budget) for pid in resolved]
