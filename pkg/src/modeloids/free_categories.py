"""Finite categories with one non-existing morphism and total tables.

Instead of keeping composition partial, every category here carries a
distinguished morphism ``star`` that represents "undefined": dom, cod and
composition are total functions, and any composition that would be
undefined yields star.  Equality of possibly-undefined expressions is
Kleene equality: two expressions agree when both are star or both are the
same existing morphism.  With a single star that collapses to plain index
equality, which is what makes the exhaustive axiom checks cheap.

Objects are the morphisms that equal their own domain.  An inverse
category additionally gives every existing morphism s a unique partner
with s = s.partner.s and partner = partner.s.partner; the same class of
tables is carved out by a quantifier-free equational axiom set, and both
checks are provided so their agreement stays observable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import verdict as v
from .errors import InputError
from .inverse_semigroups import InverseSemigroupTable, find_neutral, find_zero


@dataclass(frozen=True)
class FreeCategory:
    morphism_count: int
    star: int
    dom: tuple[int, ...]
    cod: tuple[int, ...]
    comp: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...] | None = None

    def __post_init__(self):
        n = self.morphism_count
        if n < 1:
            raise InputError("a category needs at least the non-existing morphism")
        if not (0 <= self.star < n):
            raise InputError("star index out of range")
        for name, table in (("dom", self.dom), ("cod", self.cod)):
            if len(table) != n or any(not (0 <= x < n) for x in table):
                raise InputError(f"{name} table must list one in-range morphism each")
        if len(self.comp) != n or any(len(row) != n for row in self.comp):
            raise InputError("composition table must be square")
        if any(not (0 <= x < n) for row in self.comp for x in row):
            raise InputError("composition entry out of range")
        if self.dom[self.star] != self.star or self.cod[self.star] != self.star:
            raise InputError("the non-existing morphism must be its own dom and cod")
        if self.inv is not None:
            if len(self.inv) != n or any(not (0 <= x < n) for x in self.inv):
                raise InputError("inverse table must list one in-range morphism each")

    def __hash__(self):
        cached = self.__dict__.get("_hash")
        if cached is None:
            cached = hash(
                (self.morphism_count, self.star, self.dom, self.cod, self.comp, self.inv)
            )
            object.__setattr__(self, "_hash", cached)
        return cached

    def exists(self, m: int) -> bool:
        return m != self.star

    @classmethod
    def from_rows(
        cls,
        star: int,
        dom: Sequence[int],
        cod: Sequence[int],
        comp: Sequence[Sequence[int]],
        inv: Sequence[int] | None = None,
    ) -> "FreeCategory":
        return cls(
            len(dom),
            star,
            tuple(dom),
            tuple(cod),
            tuple(tuple(row) for row in comp),
            None if inv is None else tuple(inv),
        )


def kleene_eq(c: FreeCategory, a: int, b: int) -> bool:
    """Both non-existing, or both existing and identical.  With a single
    non-existing morphism this is index equality."""
    if a == c.star or b == c.star:
        return a == c.star and b == c.star
    return a == b


def verify_category(c: FreeCategory) -> v.Verdict:
    """Axioms in order: composability (a composite exists exactly when
    both parts exist and dom meets cod), associativity, identity laws.
    Strictness of dom and cod on star is part of the representation and
    enforced at construction."""
    n, star, dom, cod, comp = c.morphism_count, c.star, c.dom, c.cod, c.comp
    for f in range(n):
        for g in range(n):
            should_exist = f != star and g != star and dom[f] == cod[g]
            if (comp[f][g] != star) != should_exist:
                return v.violated("composability", (f, g))
    for f in range(n):
        comp_f = comp[f]
        for g in range(n):
            fg = comp[f][g]
            comp_g = comp[g]
            row_fg = comp[fg]
            for h in range(n):
                if row_fg[h] != comp_f[comp_g[h]]:
                    return v.violated("associativity", (f, g, h))
    for x in range(n):
        if comp[x][dom[x]] != x or comp[cod[x]][x] != x:
            return v.violated("identity-law", (x,))
    return v.passed()


def _inverse_candidates(c: FreeCategory, s: int) -> list[int]:
    comp = c.comp
    return [
        t
        for t in range(c.morphism_count)
        if comp[comp[s][t]][s] == s and comp[comp[t][s]][t] == t
    ]


def verify_inverse_category_unique(c: FreeCategory) -> v.Verdict:
    """The definitional check: a verified category where each morphism has
    exactly one generalized-inverse partner.  When an inverse table is
    declared, it must list those partners (star's partner is star)."""
    base = verify_category(c)
    if not base:
        return base
    for s in range(c.morphism_count):
        candidates = _inverse_candidates(c, s)
        if len(candidates) != 1:
            axiom = "inverse-existence" if not candidates else "inverse-uniqueness"
            return v.violated(axiom, (s, tuple(candidates)))
        if c.inv is not None and c.inv[s] != candidates[0]:
            return v.violated("inverse-mismatch", (s, c.inv[s], candidates[0]))
    return v.passed()


def skolem_inverses(c: FreeCategory) -> FreeCategory:
    """Fill the inverse table with each morphism's unique partner."""
    base = verify_category(c)
    if not base:
        raise InputError(f"not a category ({base.describe()})")
    filled = []
    for s in range(c.morphism_count):
        candidates = _inverse_candidates(c, s)
        if len(candidates) != 1:
            raise InputError(
                f"morphism {s} has {len(candidates)} inverse partners, expected one"
            )
        filled.append(candidates[0])
    return FreeCategory(
        c.morphism_count, c.star, c.dom, c.cod, c.comp, tuple(filled)
    )


def verify_inverse_category_equational(c: FreeCategory) -> v.Verdict:
    """The quantifier-free check, transported from the inverse-semigroup
    axioms under Kleene equality (star is absorbing everywhere)."""
    base = verify_category(c)
    if not base:
        return base
    if c.inv is None:
        raise InputError("the equational check needs a declared inverse table")
    n, star, comp, inv = c.morphism_count, c.star, c.comp, c.inv
    for x in range(n):
        if (inv[x] == star) != (x == star):
            return v.violated("inverse-strictness", (x,))
    for x in range(n):
        if comp[comp[x][inv[x]]][x] != x:
            return v.violated("regularity", (x,))
    for x in range(n):
        if inv[inv[x]] != x:
            return v.violated("involution", (x,))
    for x in range(n):
        e = comp[x][inv[x]]
        for y in range(n):
            f = comp[y][inv[y]]
            if comp[e][f] != comp[f][e]:
                return v.violated("idempotent-commutation", (x, y))
    return v.passed()


def is_object(c: FreeCategory, m: int) -> bool:
    """True when m equals its own domain; star qualifies formally."""
    return c.dom[m] == m


def objects(c: FreeCategory) -> tuple[int, ...]:
    """The existing objects, in index order."""
    return tuple(m for m in range(c.morphism_count) if m != c.star and c.dom[m] == m)


def homset(c: FreeCategory, X: int, Y: int) -> tuple[int, ...]:
    """Every morphism with domain X and codomain Y; star shows up only in
    homset(star, star)."""
    for end in (X, Y):
        if not is_object(c, end):
            raise InputError(f"morphism {end} is not an object")
    return tuple(
        m for m in range(c.morphism_count) if c.dom[m] == X and c.cod[m] == Y
    )


def endoset(c: FreeCategory, X: int) -> tuple[int, ...]:
    return homset(c, X, X)


def is_idempotent_morphism(c: FreeCategory, e: int) -> bool:
    return c.comp[e][e] == e


@lru_cache(maxsize=None)
def _endoset_idempotents(c: FreeCategory, X: int) -> tuple[int, ...]:
    return tuple(e for e in endoset(c, X) if c.comp[e][e] == e)


def natural_leq(c: FreeCategory, s: int, t: int) -> bool:
    """s <= t: s = t composed with some idempotent endomorphism of the
    common domain object."""
    if c.dom[s] != c.dom[t] or c.cod[s] != c.cod[t]:
        raise InputError("the natural order only compares morphisms of one homset")
    return any(c.comp[t][e] == s for e in _endoset_idempotents(c, c.dom[s]))


def below(c: FreeCategory, t: int) -> frozenset[int]:
    """Everything <= t; computed as the composites of t with the
    idempotents of End(dom t)."""
    return frozenset(c.comp[t][e] for e in _endoset_idempotents(c, c.dom[t]))


def zero_of_endoset(c: FreeCategory, X: int) -> int | None:
    endos = endoset(c, X)
    for z in endos:
        if all(c.comp[z][p] == z and c.comp[p][z] == z for p in endos):
            return z
    return None


def has_all_zeros(c: FreeCategory) -> bool:
    """Every existing object's endoset has a zero (End(star) always has
    one, star itself)."""
    return all(zero_of_endoset(c, X) is not None for X in objects(c))


def is_atom(c: FreeCategory, a: int, X: int) -> bool:
    """An existing, non-zero element of End(X) with nothing strictly
    between it and the zero."""
    if not is_object(c, X):
        raise InputError(f"morphism {X} is not an object")
    endos = endoset(c, X)
    if a not in endos:
        raise InputError(f"morphism {a} is not an endomorphism of {X}")
    zero = zero_of_endoset(c, X)
    if zero is None:
        raise InputError(f"End({X}) has no zero, atoms are undefined")
    if a == c.star or a == zero:
        return False
    return all(e in (a, zero) for e in below(c, a))


def one_object_to_semigroup(c: FreeCategory) -> InverseSemigroupTable:
    """Collapse a one-object category onto its existing morphisms.

    Existing morphisms keep their relative order; entry (i, j) of the
    result is the composite of the i-th and j-th existing morphisms.
    """
    if c.inv is None:
        raise InputError("collapse needs a declared inverse table")
    obj = objects(c)
    if len(obj) != 1:
        raise InputError(f"expected exactly one object, found {len(obj)}")
    existing = [m for m in range(c.morphism_count) if m != c.star]
    index = {m: i for i, m in enumerate(existing)}
    rows = []
    for f in existing:
        row = []
        for g in existing:
            fg = c.comp[f][g]
            if fg == c.star:
                raise InputError(f"composite of {f} and {g} does not exist")
            row.append(index[fg])
        rows.append(tuple(row))
    inv_row = []
    for f in existing:
        if c.inv[f] == c.star:
            raise InputError(f"inverse of {f} does not exist")
        inv_row.append(index[c.inv[f]])
    table = InverseSemigroupTable(len(existing), tuple(rows), tuple(inv_row))
    return InverseSemigroupTable(
        table.order, table.mul, table.inv, find_neutral(table), find_zero(table)
    )


def semigroup_to_one_object_category(t: InverseSemigroupTable) -> FreeCategory:
    """View an inverse monoid as a category with a single object (the
    neutral element) plus an appended non-existing morphism."""
    neutral = find_neutral(t)
    if neutral is None:
        raise InputError("only a monoid yields an identity morphism for the object")
    n = t.order
    star = n
    dom = tuple([neutral] * n) + (star,)
    comp = tuple(tuple(t.mul[f]) + (star,) for f in range(n)) + (
        tuple([star] * (n + 1)),
    )
    inv = tuple(t.inv) + (star,)
    return FreeCategory(n + 1, star, dom, dom, comp, inv)
