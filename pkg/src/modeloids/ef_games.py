"""Ehrenfeucht-Fraissé equivalence by two independent routes.

Given structures A and B over one vocabulary, ``build_category_D``
assembles the free-logic inverse category whose existing morphisms are
the partial isomorphisms between the four side pairs (A,A), (A,B),
(B,A), (B,B).  Its objects are the full identities id_A and id_B, the
zero of each endoset is the constants-only map, and the full morphism
set is a categorical modeloid.

``ef_equiv_derivative`` decides m-round equivalence by applying the
categorical derivative m times and asking whether any map from id_A to
id_B survives.  ``ef_equiv_oracle`` decides the same question by a
memoized game-tree recursion that shares no code with the derivative.
The two must always agree; the command-line front-end runs both.

A positive derivative answer can be externalized: ``extract_certificate``
returns the chain I_j = D^j ∩ Part(A,B), which ``verify_certificate``
checks against the literal back-and-forth conditions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import verdict as v
from .categorical import CategoricalModeloid, categorical_derivative
from .errors import BoundExceededError, InputError
from .free_categories import FreeCategory
from .structures import (
    PartialIso,
    Structure,
    constant_pairs,
    enumerate_partial_isos,
    identity_iso,
    pairs_are_partial_iso,
)

DEFAULT_EF_UNIVERSE_BOUND = 5


@dataclass(frozen=True, eq=False)
class CategoryD:
    """The partial-isomorphism category of a structure pair.

    ``morphisms[i]`` is the partial isomorphism at ambient index i; the
    ambient's star sits at index ``len(morphisms)``.  When ``left`` and
    ``right`` are the same structure the category has a single object.
    """

    left: Structure
    right: Structure
    ambient: FreeCategory
    morphisms: tuple[PartialIso, ...]
    object_a: int
    object_b: int

    @property
    def star(self) -> int:
        return self.ambient.star

    def _side(self, S: Structure) -> int:
        if S == self.left:
            return 0
        if S == self.right:
            return 1
        raise InputError("structure is not a side of this category")

    @property
    def _index(self) -> dict[tuple[int, int, tuple], int]:
        cached = self.__dict__.get("_index_map")
        if cached is None:
            cached = {
                (self._side(p.left), self._side(p.right), p.pairs): i
                for i, p in enumerate(self.morphisms)
            }
            object.__setattr__(self, "_index_map", cached)
        return cached

    def index_of(self, p: PartialIso) -> int:
        key = (self._side(p.left), self._side(p.right), p.pairs)
        try:
            return self._index[key]
        except KeyError:
            raise InputError("map is not a morphism of this category") from None

    def object_of(self, S: Structure) -> int:
        return (self.object_a, self.object_b)[self._side(S)]

    def part(self, X: Structure, Y: Structure) -> tuple[int, ...]:
        """Indices of Part(X,Y), i.e. Hom(id_X, id_Y) without star."""
        xo, yo = self.object_of(X), self.object_of(Y)
        return tuple(
            i
            for i in range(len(self.morphisms))
            if self.ambient.dom[i] == xo and self.ambient.cod[i] == yo
        )


def _check_pair(A: Structure, B: Structure, max_universe: int):
    if A.vocabulary != B.vocabulary:
        raise InputError("both structures must share one vocabulary")
    for S in (A, B):
        if S.universe_size > max_universe:
            raise BoundExceededError(
                f"universe of {S.name} exceeds the bound {max_universe}"
            )


def build_category_D(
    A: Structure, B: Structure, max_universe: int = DEFAULT_EF_UNIVERSE_BOUND
) -> CategoryD:
    """Assemble the category; composition is map composition where the
    side in the middle matches and star everywhere else."""
    _check_pair(A, B, max_universe)
    one_object = A == B
    sides = {0: A, 1: B}

    def tag(S: Structure) -> int:
        return 0 if (one_object or S == A) else 1

    morphisms: list[PartialIso] = []
    tags: list[tuple[int, int]] = []
    index: dict[tuple[int, int, tuple], int] = {}
    for lt, rt in ((0, 0), (0, 1), (1, 0), (1, 1)):
        if one_object and (lt, rt) != (0, 0):
            continue
        block = enumerate_partial_isos(sides[lt], sides[rt], max_universe)
        for iso in sorted(block, key=lambda p: p.pairs):
            index[(lt, rt, iso.pairs)] = len(morphisms)
            morphisms.append(iso)
            tags.append((lt, rt))

    n = len(morphisms)
    star = n
    id_pairs = {s: identity_iso(sides[s]).pairs for s in (0, 1)}
    obj = {s: index[(tag(sides[s]), tag(sides[s]), id_pairs[s])] for s in (0, 1)}

    dom = tuple(obj[lt] for lt, _ in tags) + (star,)
    cod = tuple(obj[rt] for _, rt in tags) + (star,)

    lookups = [dict(p.pairs) for p in morphisms]
    comp_rows = []
    for f in range(n):
        flt, frt = tags[f]
        fwd = lookups[f]
        row = [star] * (n + 1)
        for g in range(n):
            glt, grt = tags[g]
            if grt != flt:
                continue
            composed = tuple(
                (a, fwd[b]) for a, b in morphisms[g].pairs if b in fwd
            )
            row[g] = index[(glt, frt, composed)]
        comp_rows.append(tuple(row))
    comp_rows.append((star,) * (n + 1))

    inv = tuple(
        index[(rt, lt, tuple(sorted((b, a) for a, b in morphisms[i].pairs)))]
        for i, (lt, rt) in enumerate(tags)
    ) + (star,)

    ambient = FreeCategory(
        morphism_count=n + 1,
        star=star,
        dom=dom,
        cod=cod,
        comp=tuple(comp_rows),
        inv=inv,
    )
    return CategoryD(A, B, ambient, tuple(morphisms), obj[0], obj[1])


def derivative_levels(category: CategoryD, m: int) -> list[frozenset[int]]:
    """Member sets of D^0 .. D^m starting from all morphisms.  The chain
    is decreasing, so once a step changes nothing the tail is constant."""
    if m < 0:
        raise InputError("rounds must be non-negative")
    current = CategoricalModeloid.everything(category.ambient)
    levels = [current.members]
    for _ in range(m):
        nxt = categorical_derivative(current, check=False)
        if nxt.members == current.members:
            levels.extend([current.members] * (m + 1 - len(levels)))
            break
        levels.append(nxt.members)
        current = nxt
    return levels


def surviving_maps(
    category: CategoryD, m: int, X: Structure, Y: Structure
) -> tuple[PartialIso, ...]:
    """Part(X,Y) ∩ D^m for any side pair, star excluded; the general
    form of the equivalence query, sorted for determinism."""
    final = derivative_levels(category, m)[-1]
    return tuple(
        category.morphisms[i]
        for i in sorted(category.part(X, Y))
        if i in final
    )


def ef_equiv_derivative(
    A: Structure,
    B: Structure,
    m: int,
    max_universe: int = DEFAULT_EF_UNIVERSE_BOUND,
    category: CategoryD | None = None,
) -> tuple[bool, PartialIso | None]:
    """m-round equivalence via the derivative; the witness is a largest
    surviving map from id_A to id_B, or None if none survive."""
    if m < 0:
        raise InputError("rounds must be non-negative")
    if category is None:
        category = build_category_D(A, B, max_universe)
    survivors = surviving_maps(category, m, A, B)
    if not survivors:
        return False, None
    return True, max(survivors, key=lambda p: (len(p.pairs), p.pairs))


def ef_equiv_oracle(
    A: Structure,
    B: Structure,
    m: int,
    max_universe: int = DEFAULT_EF_UNIVERSE_BOUND,
) -> bool:
    """Independent game-tree answer.

    win(p, 0) asks whether the accumulated pairs form a partial
    isomorphism; win(p, k) demands an answering move on either side.
    Checking only at the leaves is enough: a restriction of a partial
    isomorphism to a superset of the constant pairs is again one.
    """
    _check_pair(A, B, max_universe)
    if m < 0:
        raise InputError("rounds must be non-negative")
    memo: dict[tuple[tuple[tuple[int, int], ...], int], bool] = {}

    def win(position: frozenset[tuple[int, int]], k: int) -> bool:
        key = (tuple(sorted(position)), k)
        if key not in memo:
            if k == 0:
                out = pairs_are_partial_iso(A, B, position)
            else:
                out = all(
                    any(
                        win(position | {(a, b)}, k - 1)
                        for b in range(B.universe_size)
                    )
                    for a in range(A.universe_size)
                ) and all(
                    any(
                        win(position | {(a, b)}, k - 1)
                        for a in range(A.universe_size)
                    )
                    for b in range(B.universe_size)
                )
            memo[key] = out
        return memo[key]

    return win(frozenset(constant_pairs(A, B)), m)


@dataclass(frozen=True)
class BackAndForthCertificate:
    """Level sets I_0 ⊇ I_1 ⊇ ... ⊇ I_m witnessing m-round equivalence.

    I_j holds the maps that still answer j more rounds; extending
    happens toward smaller indices.
    """

    left: Structure
    right: Structure
    rounds: int
    levels: tuple[frozenset[PartialIso], ...]

    def __post_init__(self):
        if self.rounds < 0:
            raise InputError("rounds must be non-negative")
        if len(self.levels) != self.rounds + 1:
            raise InputError("need exactly rounds+1 levels")


def extract_certificate(
    A: Structure,
    B: Structure,
    m: int,
    max_universe: int = DEFAULT_EF_UNIVERSE_BOUND,
    category: CategoryD | None = None,
) -> BackAndForthCertificate | None:
    """I_j = D^j ∩ Part(A,B); absent when nothing survives m rounds."""
    if m < 0:
        raise InputError("rounds must be non-negative")
    if category is None:
        category = build_category_D(A, B, max_universe)
    part_ab = category.part(A, B)
    levels = []
    for members in derivative_levels(category, m):
        levels.append(
            frozenset(category.morphisms[i] for i in part_ab if i in members)
        )
    if not levels[-1]:
        return None
    return BackAndForthCertificate(A, B, m, tuple(levels))


def verify_certificate(cert: BackAndForthCertificate) -> v.Verdict:
    """Check the literal back-and-forth conditions between levels.

    Every level must be a non-empty set of actual partial isomorphisms,
    and each map in I_{j+1} must extend within I_j to cover any chosen
    element on either side.
    """
    A, B = cert.left, cert.right
    for j, level in enumerate(cert.levels):
        if not level:
            return v.violated("non-empty", j)
        for f in sorted(level, key=lambda p: p.pairs):
            if f.left != A or f.right != B or not pairs_are_partial_iso(
                A, B, f.pairs
            ):
                return v.violated("membership", (j, f.pairs))
    for j in range(cert.rounds):
        deeper, shallower = cert.levels[j + 1], cert.levels[j]
        for f in sorted(deeper, key=lambda p: p.pairs):
            fset = set(f.pairs)
            for a in range(A.universe_size):
                if not any(
                    fset <= set(g.pairs) and a in g.domain() for g in shallower
                ):
                    return v.violated("forth", (j, a, f.pairs))
            for b in range(B.universe_size):
                if not any(
                    fset <= set(g.pairs) and b in g.codomain() for g in shallower
                ):
                    return v.violated("back", (j, b, f.pairs))
    return v.passed()


def format_certificate(cert: BackAndForthCertificate) -> str:
    """Deterministic text rendering: rounds, then each level's maps as
    sorted pair lists.  Identical certificates print identically."""
    lines = [
        "certificate",
        f"left {cert.left.name}",
        f"right {cert.right.name}",
        f"rounds {cert.rounds}",
    ]
    for j, level in enumerate(cert.levels):
        lines.append(f"level {j}")
        for p in sorted(level, key=lambda q: q.pairs):
            if p.pairs:
                rendered = " ".join(f"({a},{b})" for a, b in p.pairs)
                lines.append(f"  map {rendered}")
            else:
                lines.append("  map")
    return "\n".join(lines) + "\n"
