"""Birkhoff subcategories of finite groups and the extensions they single out.

A :class:`BirkhoffDatum` is given by its radical ``A -> [A]``, the kernel of
the reflection unit ``A -> A/[A]``.  Two data ship: abelian groups (``AB``)
and abelian groups of exponent dividing ``m`` (``ab_mod(m)``).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .categories import square_is_double_extension
from .errors import AgreementFailure, ValidationError
from .groups import (
    FinGroup,
    GroupHom,
    Subgroup,
    center,
    commutator_subgroup,
    identity_hom,
    intersection,
    is_bijective,
    is_surjective,
    kernel,
    quotient,
    setwise_product,
    subgroup_generated,
)
from .limits import Pullback, Square, comparison_to_pullback, induced_hom, kernel_pair, pair_into, pullback

__all__ = [
    "BirkhoffDatum", "AB", "ab_mod", "parse_datum", "is_strongly_birkhoff_on", "is_trivial_extension",
    "is_normal_extension", "is_central_extension", "centralize_explicit", "bracket1_explicit",
    "bracket1_categorical", "trivialize", "Trivialization", "Centralization",
]


def _derived(G: FinGroup) -> Subgroup:
    hit = G._cache.get("derived")
    if hit is None:
        hit = commutator_subgroup(G, G.whole(), G.whole())
        G._cache["derived"] = hit
    return hit


def _powers(G: FinGroup, m: int) -> np.ndarray:
    out = np.arange(G.order)
    x = np.full(G.order, G.identity)
    for _ in range(m):
        x = G.table[x, out]
    return x


@dataclass(frozen=True, eq=False)
class BirkhoffDatum:
    name: str
    radical_fn: Callable[[FinGroup], Subgroup]
    modulus: int = 0  # 0 for plain abelianization

    def radical(self, G: FinGroup) -> Subgroup:
        key = ("radical", self.name)
        hit = G._cache.get(key)
        if hit is None:
            hit = self.radical_fn(G)
            if not hit.is_normal():
                raise ValidationError(f"{self.name} radical is not normal")
            G._cache[key] = hit
        return hit

    def unit(self, G: FinGroup) -> GroupHom:
        """``eta_G: G -> G/[G]``."""
        key = ("unit", self.name)
        hit = G._cache.get(key)
        if hit is None:
            hit = quotient(G, self.radical(G), f"{self.name}({G.label})" if G.label else "")[1]
            G._cache[key] = hit
        return hit

    def reflect(self, f: GroupHom) -> GroupHom:
        """``If: IA -> IB``; fails when ``f`` does not carry radical into radical."""
        if not self.radical(f.codomain).mask[f.map[self.radical(f.domain).array]].all():
            raise ValidationError(f"{self.name} radical is not functorial along this map")
        return induced_hom(f, self.unit(f.domain), self.unit(f.codomain))

    def is_idempotent_on(self, G: FinGroup) -> bool:
        return self.radical(self.unit(G).codomain).is_trivial()

    def is_functorial_on(self, f: GroupHom) -> bool:
        return bool(self.radical(f.codomain).mask[f.map[self.radical(f.domain).array]].all())

    def contains(self, G: FinGroup) -> bool:
        return self.radical(G).is_trivial()

    def __repr__(self) -> str:
        return self.name


AB = BirkhoffDatum("AB", _derived)


def ab_mod(m: int) -> BirkhoffDatum:
    """Abelian groups of exponent dividing ``m``."""
    if m < 1:
        raise ValidationError("exponent must be positive")

    def radical(G: FinGroup) -> Subgroup:
        gens = np.concatenate([np.asarray(_derived(G).array), np.unique(_powers(G, m))])
        return subgroup_generated(G, gens)

    return BirkhoffDatum(f"AB_MOD({m})", radical, m)


def parse_datum(text: str) -> BirkhoffDatum:
    """``ab`` or ``ab-mod:m``."""
    t = text.strip().lower()
    if t == "ab":
        return AB
    if t.startswith("ab-mod:") or t.startswith("ab_mod:"):
        try:
            return ab_mod(int(t.split(":", 1)[1]))
        except ValueError as exc:
            raise ValidationError(f"bad exponent in datum {text!r}") from exc
    raise ValidationError(f"unknown Birkhoff datum {text!r}")


def _require_surjective(f: GroupHom) -> None:
    if not is_surjective(f):
        raise ValidationError("expected a surjective homomorphism")


def unit_square(D: BirkhoffDatum, f: GroupHom) -> Square:
    """The naturality square of the unit at ``f``: ``f`` on top, ``If`` at the bottom."""
    return Square(f, D.unit(f.domain), D.unit(f.codomain), D.reflect(f))


def is_strongly_birkhoff_on(D: BirkhoffDatum, f: GroupHom) -> bool:
    _require_surjective(f)
    return square_is_double_extension(unit_square(D, f))


def is_trivial_extension(D: BirkhoffDatum, f: GroupHom) -> bool:
    """The unit square at ``f`` is a pullback."""
    _require_surjective(f)
    status = is_bijective(comparison_to_pullback(unit_square(D, f)))
    if D is AB:
        # classical form: f is injective on the derived subgroup (it is onto the target's)
        dA = _derived(f.domain)
        classical = intersection(dA, kernel(f)).is_trivial()
        if classical != status:
            raise AgreementFailure("trivial-extension tests disagree for AB")
    return status


def is_normal_extension(D: BirkhoffDatum, f: GroupHom) -> bool:
    """The projection ``R[f] -> A`` of the kernel pair onto the domain is a trivial extension."""
    _require_surjective(f)
    return is_trivial_extension(D, kernel_pair(f).p1)


def is_central_extension(D: BirkhoffDatum, f: GroupHom) -> bool:
    status = is_normal_extension(D, f)
    if D is AB:
        classical = kernel(f) <= center(f.domain)
        if classical != status:
            raise AgreementFailure("central-extension tests disagree for AB")
    return status


def bracket1_explicit(f: GroupHom, D: BirkhoffDatum = AB) -> Subgroup:
    """``[K, A]``, times ``K^m`` for the exponent-``m`` datum."""
    A = f.domain
    K = kernel(f)
    N = commutator_subgroup(A, K, A.whole())
    if D.modulus:
        N = setwise_product(N, subgroup_generated(A, _powers(A, D.modulus)[K.array]))
    return N


@dataclass(frozen=True, eq=False)
class Centralization:
    hom: GroupHom  # I_1 f: A/N -> B
    unit: GroupHom  # A -> A/N
    bracket: Subgroup


def centralize_explicit(f: GroupHom, D: BirkhoffDatum = AB) -> Centralization:
    _require_surjective(f)
    N = bracket1_explicit(f, D)
    q = quotient(f.domain, N)[1]
    hom = induced_hom(f, q, identity_hom(f.codomain))
    return Centralization(hom, q, N)


def bracket1_categorical(f: GroupHom, D: BirkhoffDatum = AB, cross_check: bool = True) -> Subgroup:
    """``{a : (1, a) in [R[f]]}``: the kernel of ``[pi_1]`` carried into ``A`` by ``pi_2``."""
    _require_surjective(f)
    A = f.domain
    R = kernel_pair(f)
    radR = D.radical(R.apex)
    p1, p2 = R.p1, R.p2
    for p in (p1, p2):
        if not D.is_functorial_on(p):
            raise ValidationError(f"{D.name} radical is not functorial on the kernel pair")
    on_first = p1.map[radR.array]
    inside = radR.array[on_first == A.identity]
    N = Subgroup(A, tuple(np.unique(p2.map[inside]).tolist()))
    if not N.is_normal():
        raise AgreementFailure("categorical bracket is not normal")
    if cross_check and D is AB and N != bracket1_explicit(f, D):
        raise AgreementFailure("categorical and explicit brackets disagree")
    return N


@dataclass(frozen=True, eq=False)
class Trivialization:
    """``Tf = B x_IB IA -> B`` with the comparison from the centralization ``A/[f]_1``."""

    hom: GroupHom
    pullback: Pullback
    comparison: GroupHom
    centralization: Centralization


def trivialize(D: BirkhoffDatum, f: GroupHom) -> Trivialization:
    _require_surjective(f)
    etaA, etaB = D.unit(f.domain), D.unit(f.codomain)
    pb = pullback(etaB, D.reflect(f))
    cen = centralize_explicit(f, D)
    from_A = pair_into(pb, f, etaA)
    comparison = induced_hom(from_A, cen.unit, identity_hom(pb.apex))
    return Trivialization(pb.p1, pb, comparison, cen)

