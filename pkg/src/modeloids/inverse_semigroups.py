"""Finite inverse semigroups as Cayley tables, and semimodeloids inside them.

An inverse semigroup is an associative table with an inverse operation
satisfying x*x'*x = x, (x')' = x, and commutation of the idempotents
x*x' and y*y'.  Three classically equivalent presentations (the axioms,
uniqueness of inverses, regularity plus commuting idempotents) are each
checked from scratch by ``characterize`` so the equivalence itself stays
testable.  ``from_partial_bijections`` turns a closed set of partial
bijections into an abstract table, and ``wagner_preston`` goes the other
way, realizing any verified table as partial bijections on itself.

A semimodeloid is a subset of an inverse monoid with zero, closed under
the product, inverses and the natural partial order, containing the
neutral element.  Its derivative quantifies over the idempotent atoms of
the ambient monoid.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from . import verdict as v
from .errors import BoundExceededError, InputError
from .partial_bijections import Carrier, PartialBijection

AXIOMATIC_SEARCH_CAP = 1_000_000

MulTable = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class InverseSemigroupTable:
    """A finite magma with a declared inverse map.

    ``neutral`` and ``zero`` are optional claims; ``verify_inverse_semigroup``
    checks them when present.  Construction only validates shapes and
    ranges so that broken tables remain representable for testing.
    """

    order: int
    mul: MulTable
    inv: tuple[int, ...]
    neutral: int | None = None
    zero: int | None = None

    def __post_init__(self):
        n = self.order
        if n < 1:
            raise InputError("table order must be at least 1")
        if len(self.mul) != n or any(len(row) != n for row in self.mul):
            raise InputError("multiplication table must be order x order")
        if any(not (0 <= entry < n) for row in self.mul for entry in row):
            raise InputError("multiplication entry out of range")
        if len(self.inv) != n or any(not (0 <= x < n) for x in self.inv):
            raise InputError("inverse table must list one in-range element per element")
        for claimed in (self.neutral, self.zero):
            if claimed is not None and not (0 <= claimed < n):
                raise InputError("declared neutral/zero out of range")

    @classmethod
    def from_rows(
        cls,
        rows: Sequence[Sequence[int]],
        inv: Sequence[int],
        neutral: int | None = None,
        zero: int | None = None,
    ) -> "InverseSemigroupTable":
        return cls(len(rows), tuple(tuple(r) for r in rows), tuple(inv), neutral, zero)


def associativity_witness(mul: MulTable) -> tuple[int, int, int] | None:
    n = len(mul)
    for x in range(n):
        row_x = mul[x]
        for y in range(n):
            xy = row_x[y]
            row_xy = mul[xy]
            row_y = mul[y]
            for z in range(n):
                if row_xy[z] != row_x[row_y[z]]:
                    return (x, y, z)
    return None


def verify_inverse_semigroup(table: InverseSemigroupTable) -> v.Verdict:
    """Axioms in checking order: associativity, x*x'*x = x, (x')' = x,
    idempotent commutation, then any declared neutral and zero."""
    mul, inv, n = table.mul, table.inv, table.order
    bad = associativity_witness(mul)
    if bad is not None:
        return v.violated("associativity", bad)
    for x in range(n):
        if mul[mul[x][inv[x]]][x] != x:
            return v.violated("regularity", (x,))
    for x in range(n):
        if inv[inv[x]] != x:
            return v.violated("involution", (x,))
    for x in range(n):
        e = mul[x][inv[x]]
        for y in range(n):
            f = mul[y][inv[y]]
            if mul[e][f] != mul[f][e]:
                return v.violated("idempotent-commutation", (x, y))
    if table.neutral is not None:
        e = table.neutral
        for x in range(n):
            if mul[e][x] != x or mul[x][e] != x:
                return v.violated("neutral", (e, x))
    if table.zero is not None:
        z = table.zero
        for x in range(n):
            if mul[z][x] != z or mul[x][z] != z:
                return v.violated("zero", (z, x))
    return v.passed()


def idempotents(table: InverseSemigroupTable) -> tuple[int, ...]:
    return tuple(x for x in range(table.order) if table.mul[x][x] == x)


def inverses_of(table: InverseSemigroupTable, x: int) -> frozenset[int]:
    """All y with x*y*x = x and y*x*y = y."""
    mul = table.mul
    return frozenset(
        y
        for y in range(table.order)
        if mul[mul[x][y]][x] == x and mul[mul[y][x]][y] == y
    )


def resolve_inverses(
    mul_rows: Sequence[Sequence[int]],
    neutral: int | None = None,
    zero: int | None = None,
) -> tuple[InverseSemigroupTable | None, v.Verdict]:
    """Recover the inverse map from bare multiplication.

    Succeeds exactly when every element has one generalized inverse; the
    verdict names the first obstruction otherwise.  Absent claims for
    neutral and zero are filled in by scanning.
    """
    rows = tuple(tuple(r) for r in mul_rows)
    n = len(rows)
    probe = InverseSemigroupTable(n, rows, tuple(range(n)))
    w = associativity_witness(rows)
    if w is not None:
        return None, v.violated("associativity", w)
    chosen = []
    for x in range(n):
        candidates = inverses_of(probe, x)
        if not candidates:
            return None, v.violated("regularity", x)
        if len(candidates) > 1:
            # several inverses force a non-commuting idempotent pair
            idem = idempotents(probe)
            for e in idem:
                for f in idem:
                    if rows[e][f] != rows[f][e]:
                        return None, v.violated("idempotent-commutation", (e, f))
            return None, v.violated("inverse-uniqueness", (x, tuple(sorted(candidates))))
        chosen.append(next(iter(candidates)))
    if neutral is None:
        neutral = find_neutral(probe)
    if zero is None:
        zero = find_zero(probe)
    table = InverseSemigroupTable(n, rows, tuple(chosen), neutral, zero)
    return table, verify_inverse_semigroup(table)


@dataclass(frozen=True)
class CharacterizationReport:
    """Three independently evaluated presentations of 'inverse semigroup'."""

    axiomatic: bool
    unique_inverses: bool
    regular_and_idempotents_commute: bool

    def as_tuple(self) -> tuple[bool, bool, bool]:
        return (self.axiomatic, self.unique_inverses, self.regular_and_idempotents_commute)

    def all_agree(self) -> bool:
        return len(set(self.as_tuple())) == 1


def characterize(mul_rows: Sequence[Sequence[int]]) -> CharacterizationReport:
    """Evaluate the three presentations on an associative table.

    The axiomatic presentation is existential ('some inverse map satisfies
    the axioms'), so it is decided by searching choice functions over each
    element's inverse-candidate set, capped at a million combinations.
    """
    mul: MulTable = tuple(tuple(r) for r in mul_rows)
    n = len(mul)
    if associativity_witness(mul) is not None:
        raise InputError("table is not associative")
    probe = InverseSemigroupTable(n, mul, tuple(range(n)))
    candidate_sets = [sorted(inverses_of(probe, x)) for x in range(n)]

    unique = all(len(c) == 1 for c in candidate_sets)

    regular = all(len(c) > 0 for c in candidate_sets)
    idems = [x for x in range(n) if mul[x][x] == x]
    commuting = all(mul[e][f] == mul[f][e] for e in idems for f in idems)

    axiomatic = False
    if regular:
        space = 1
        for c in candidate_sets:
            space *= len(c)
            if space > AXIOMATIC_SEARCH_CAP:
                raise BoundExceededError(
                    f"inverse-map search space {space}+ exceeds {AXIOMATIC_SEARCH_CAP}"
                )
        for choice in product(*candidate_sets):
            candidate = InverseSemigroupTable(n, mul, tuple(choice))
            if verify_inverse_semigroup(candidate).ok:
                axiomatic = True
                break
    return CharacterizationReport(axiomatic, unique, regular and commuting)


def natural_leq(table: InverseSemigroupTable, s: int, x: int) -> bool:
    """s <= x in the natural partial order: s = x*e for some idempotent e."""
    mul = table.mul
    return any(mul[x][e] == s for e in idempotents(table))


def find_neutral(table: InverseSemigroupTable) -> int | None:
    for e in range(table.order):
        if all(table.mul[e][x] == x and table.mul[x][e] == x for x in range(table.order)):
            return e
    return None


def find_zero(table: InverseSemigroupTable) -> int | None:
    for z in range(table.order):
        if all(table.mul[z][x] == z and table.mul[x][z] == z for x in range(table.order)):
            return z
    return None


def atoms(table: InverseSemigroupTable) -> frozenset[int]:
    """Non-zero elements with nothing strictly between them and zero."""
    zero = find_zero(table)
    if zero is None:
        raise InputError("atoms are only defined in the presence of a zero")
    return frozenset(
        x
        for x in range(table.order)
        if x != zero
        and all(f in (x, zero) for f in range(table.order) if natural_leq(table, f, x))
    )


def idempotent_atoms(table: InverseSemigroupTable) -> tuple[int, ...]:
    idem = set(idempotents(table))
    return tuple(sorted(a for a in atoms(table) if a in idem))


def from_partial_bijections(
    members: Iterable[PartialBijection],
) -> tuple[InverseSemigroupTable, tuple[PartialBijection, ...]]:
    """Abstract a compose/inverse-closed set of maps into a table.

    Elements are numbered in sorted pair order; the returned tuple is the
    dictionary from indices back to maps.  Neutral and zero are detected
    and recorded when present.
    """
    elements = sorted(set(members), key=lambda f: f.pairs)
    if not elements:
        raise InputError("cannot build a table from no maps")
    index = {f: i for i, f in enumerate(elements)}
    mul_rows = []
    for f in elements:
        row = []
        for g in elements:
            composite = f.compose(g)
            if composite not in index:
                raise InputError(
                    f"not closed under composition: {f.pairs} after {g.pairs}"
                )
            row.append(index[composite])
        mul_rows.append(tuple(row))
    inv_row = []
    for f in elements:
        if f.inverse() not in index:
            raise InputError(f"not closed under inverse: {f.pairs}")
        inv_row.append(index[f.inverse()])
    table = InverseSemigroupTable(len(elements), tuple(mul_rows), tuple(inv_row))
    table = InverseSemigroupTable(
        table.order, table.mul, table.inv, find_neutral(table), find_zero(table)
    )
    return table, tuple(elements)


def wagner_preston(table: InverseSemigroupTable) -> tuple[PartialBijection, ...]:
    """Realize a verified table as partial bijections on its own elements.

    Element a becomes the map x -> a*x on the fixed points of a'*a.  The
    embedding properties (injectivity, multiplicativity, order
    faithfulness) are deliberately left to the caller's checks.
    """
    result = verify_inverse_semigroup(table)
    if not result:
        raise InputError(f"not an inverse semigroup ({result.describe()})")
    carrier = Carrier(table.order)
    mul, inv = table.mul, table.inv
    images = []
    for a in range(table.order):
        e = mul[inv[a]][a]
        domain = [x for x in range(table.order) if mul[e][x] == x]
        images.append(PartialBijection.from_pairs(carrier, ((x, mul[a][x]) for x in domain)))
    return tuple(images)


# ---------------------------------------------------------------------------
# Semimodeloids


@dataclass(frozen=True)
class Semimodeloid:
    ambient: InverseSemigroupTable
    members: frozenset[int]

    def __post_init__(self):
        if any(not (0 <= x < self.ambient.order) for x in self.members):
            raise InputError("member index out of range")

    @classmethod
    def from_members(
        cls, ambient: InverseSemigroupTable, members: Iterable[int]
    ) -> "Semimodeloid":
        return cls(ambient, frozenset(members))


def _require_inverse_monoid_with_zero(table: InverseSemigroupTable) -> tuple[int, int]:
    result = verify_inverse_semigroup(table)
    if not result:
        raise InputError(f"ambient is not an inverse semigroup ({result.describe()})")
    neutral = find_neutral(table)
    if neutral is None:
        raise InputError("ambient has no neutral element")
    zero = find_zero(table)
    if zero is None:
        raise InputError("ambient has no zero element")
    return neutral, zero


def verify_semimodeloid(sm: Semimodeloid) -> v.Verdict:
    """Axioms in order: product closure, inverse closure, downward closure
    under the natural order, neutral membership."""
    neutral, _zero = _require_inverse_monoid_with_zero(sm.ambient)
    mul, inv = sm.ambient.mul, sm.ambient.inv
    members = sorted(sm.members)
    member_set = sm.members
    for x in members:
        for y in members:
            if mul[x][y] not in member_set:
                return v.violated("composition", (x, y))
    for x in members:
        if inv[x] not in member_set:
            return v.violated("inverse", (x,))
    for x in members:
        for y in range(sm.ambient.order):
            if natural_leq(sm.ambient, y, x) and y not in member_set:
                return v.violated("downward", (y, x))
    if neutral not in member_set:
        return v.violated("neutral", (neutral,))
    return v.passed()


def semimodeloid_derivative(sm: Semimodeloid) -> Semimodeloid:
    """Members covering every idempotent atom of the ambient monoid on
    both the domain side (via x'*x) and the codomain side (via x*x').

    With no idempotent atoms the conditions are vacuous and D(M) = M.
    """
    result = verify_semimodeloid(sm)
    if not result:
        raise InputError(f"not a semimodeloid ({result.describe()})")
    table = sm.ambient
    mul, inv = table.mul, table.inv
    idem = idempotents(table)
    targets = idempotent_atoms(table)
    if not targets:
        return sm

    below = {x: frozenset(mul[x][e] for e in idem) for x in sm.members}
    members = sorted(sm.members)
    dom_reach: dict[int, set[int]] = {a: set() for a in targets}
    cod_reach: dict[int, set[int]] = {a: set() for a in targets}
    for x in members:
        dom_side = frozenset(mul[mul[inv[x]][x]][e] for e in idem)
        cod_side = frozenset(mul[mul[x][inv[x]]][e] for e in idem)
        for a in targets:
            if a in dom_side:
                dom_reach[a] |= below[x]
            if a in cod_side:
                cod_reach[a] |= below[x]
    survivors = frozenset(
        f
        for f in members
        if all(f in dom_reach[a] for a in targets)
        and all(f in cod_reach[a] for a in targets)
    )
    return Semimodeloid(table, survivors)
