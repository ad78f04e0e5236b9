"""Modeloids as explicit sets of partial bijections, and their derivative.

A modeloid is a set of partial bijections over one carrier that is closed
under composition, inverse and restriction, and contains the full identity.
The derivative keeps exactly the members that can be extended, as pair
sets, by any prescribed source (and, symmetrically, any prescribed target)
without leaving the modeloid.  Iterating the derivative is the engine
behind the equivalence checks elsewhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from . import verdict as v
from .errors import InputError
from .partial_bijections import (
    Carrier,
    PartialBijection,
    enumerate_all,
    identity_map,
)


@dataclass(frozen=True)
class Modeloid:
    carrier: Carrier
    members: frozenset[PartialBijection]

    def __post_init__(self):
        for f in self.members:
            if f.carrier != self.carrier:
                raise InputError("member is over a different carrier")

    @classmethod
    def from_members(cls, carrier: Carrier, members: Iterable[PartialBijection]) -> "Modeloid":
        return cls(carrier, frozenset(members))


def full_modeloid(carrier: Carrier, max_size: int = 6) -> Modeloid:
    """The modeloid of all partial bijections on the carrier."""
    return Modeloid(carrier, enumerate_all(carrier, max_size))


def _sorted_members(M: Modeloid) -> list[PartialBijection]:
    # Deterministic scan order so verdicts and witnesses are stable.
    return sorted(M.members, key=lambda f: f.pairs)


def _domain_subsets(f: PartialBijection) -> Iterable[frozenset[int]]:
    dom = sorted(f.domain())
    for k in range(len(dom) + 1):
        for chosen in combinations(dom, k):
            yield frozenset(chosen)


def verify_modeloid(M: Modeloid) -> v.Verdict:
    """Check the four closure axioms, in order: composition, inverse,
    restriction (to every subset of the domain), identity element."""
    members = _sorted_members(M)
    member_set = M.members
    for f in members:
        for g in members:
            if f.compose(g) not in member_set:
                return v.violated("composition", (f.pairs, g.pairs))
    for f in members:
        if f.inverse() not in member_set:
            return v.violated("inverse", (f.pairs,))
    for f in members:
        for subset in _domain_subsets(f):
            if f.restrict(subset) not in member_set:
                return v.violated("restriction", (f.pairs, tuple(sorted(subset))))
    if identity_map(M.carrier) not in member_set:
        return v.violated("identity", ())
    return v.passed()


def modeloid_closure(seed: Iterable[PartialBijection], carrier: Carrier) -> Modeloid:
    """The smallest modeloid containing the seed maps.

    Fixpoint iteration: add the identity, then close under composition,
    inverse, and dropping single pairs (single drops generate every
    restriction).
    """
    current: set[PartialBijection] = {identity_map(carrier)}
    for f in seed:
        if f.carrier != carrier:
            raise InputError("seed map is over a different carrier")
        current.add(f)
    frontier = set(current)
    while frontier:
        fresh: set[PartialBijection] = set()

        def note(candidate: PartialBijection):
            if candidate not in current:
                fresh.add(candidate)

        for f in frontier:
            note(f.inverse())
            for a, _ in f.pairs:
                note(f.restrict(f.domain() - {a}))
            for g in current:
                note(f.compose(g))
                note(g.compose(f))
        current |= fresh
        frontier = fresh
    return Modeloid(carrier, frozenset(current))


def _derivative_members(M: Modeloid) -> frozenset[PartialBijection]:
    universe = M.carrier.elements()
    member_set = M.members

    def extendable(f: PartialBijection) -> bool:
        for a in universe:
            if not any(
                (g := f.extend(a, b)) is not None and g in member_set for b in universe
            ):
                return False
        for a in universe:
            if not any(
                (g := f.extend(b, a)) is not None and g in member_set for b in universe
            ):
                return False
        return True

    return frozenset(f for f in member_set if extendable(f))


def derivative(M: Modeloid, check: bool = True) -> Modeloid:
    """Members extendable by every source and every target within M.

    A member f survives iff for every carrier element a there are b with
    f union {(a, b)} in M and b' with f union {(b', a)} in M.  For a
    already in the domain the only functional union is f itself, so the
    condition there collapses to membership of f.
    """
    if check:
        result = verify_modeloid(M)
        if not result:
            raise InputError(f"not a modeloid ({result.describe()})")
    return Modeloid(M.carrier, _derivative_members(M))


def iterate_derivative(M: Modeloid, rounds: int) -> tuple[list[Modeloid], int | None]:
    """The chain M, D(M), ..., D^rounds(M) plus the first index k with
    D^(k+1) = D^k, or None when no repeat shows up within the chain.

    Once the chain repeats it is constant, so the tail is filled without
    recomputation.  The derivative of a modeloid is again a modeloid, so
    only the input is verified.
    """
    if rounds < 0:
        raise InputError("rounds must be non-negative")
    result = verify_modeloid(M)
    if not result:
        raise InputError(f"not a modeloid ({result.describe()})")
    chain = [M]
    stabilized: int | None = None
    for _ in range(rounds):
        nxt = Modeloid(M.carrier, _derivative_members(chain[-1]))
        if nxt.members == chain[-1].members:
            stabilized = len(chain) - 1
            chain.extend([nxt] * (rounds + 1 - len(chain)))
            break
        chain.append(nxt)
    return chain, stabilized
