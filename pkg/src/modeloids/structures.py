"""Finite relational structures, their text format, and partial isomorphisms.

The text format is line oriented; ``#`` starts a comment and blank lines
separate nothing.  A file holds one optional vocabulary block followed by
named structures::

    vocabulary
      relation E 2
      constant c
    structure A
      universe 3
      constant c 0
      relation E (0,1) (1,2)
    structure B
      universe 2
      constant c 1
      relation E (1,0)

Universes are {0, ..., size-1}.  A partial isomorphism between two
structures over one vocabulary is an injective partial map that contains
every constant pair and preserves each relation in both directions over
its domain.  ``is_partial_iso`` checks candidates; ``enumerate_partial_isos``
lists every actual partial isomorphism.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import BoundExceededError, InputError, ParseError

DEFAULT_UNIVERSE_BOUND = 7


@dataclass(frozen=True)
class Vocabulary:
    """Relation symbols with arities, plus constant symbols."""

    relations: tuple[tuple[str, int], ...] = ()
    constants: tuple[str, ...] = ()

    def __post_init__(self):
        names = [name for name, _ in self.relations] + list(self.constants)
        if len(set(names)) != len(names):
            raise InputError("vocabulary names must be unique")
        for name, arity in self.relations:
            if arity < 1:
                raise InputError(f"relation {name} needs arity at least 1")

    def relation_index(self, name: str) -> int:
        for i, (known, _) in enumerate(self.relations):
            if known == name:
                return i
        raise InputError(f"unknown relation {name}")

    def constant_index(self, name: str) -> int:
        try:
            return self.constants.index(name)
        except ValueError:
            raise InputError(f"unknown constant {name}") from None


@dataclass(frozen=True)
class Structure:
    """One named interpretation of a vocabulary.

    ``relations`` aligns with the vocabulary's relation list and
    ``constants`` with its constant list.
    """

    name: str
    universe_size: int
    vocabulary: Vocabulary
    relations: tuple[frozenset[tuple[int, ...]], ...]
    constants: tuple[int, ...]

    def __post_init__(self):
        if self.universe_size < 1:
            raise InputError(f"structure {self.name} needs a non-empty universe")
        if len(self.relations) != len(self.vocabulary.relations):
            raise InputError("one tuple set per vocabulary relation required")
        for (rel_name, arity), tuples in zip(self.vocabulary.relations, self.relations):
            for t in tuples:
                if len(t) != arity:
                    raise InputError(
                        f"relation {rel_name} in {self.name}: tuple {t} has wrong arity"
                    )
                if any(not (0 <= x < self.universe_size) for x in t):
                    raise InputError(
                        f"relation {rel_name} in {self.name}: tuple {t} leaves the universe"
                    )
        if len(self.constants) != len(self.vocabulary.constants):
            raise InputError("every constant needs an interpretation")
        for name, value in zip(self.vocabulary.constants, self.constants):
            if not (0 <= value < self.universe_size):
                raise InputError(f"constant {name} in {self.name} leaves the universe")

    @classmethod
    def build(
        cls,
        name: str,
        universe_size: int,
        vocabulary: Vocabulary,
        relations: Mapping[str, Iterable[Sequence[int]]] | None = None,
        constants: Mapping[str, int] | None = None,
    ) -> "Structure":
        relations = dict(relations or {})
        constants = dict(constants or {})
        for key in relations:
            vocabulary.relation_index(key)
        for key in constants:
            vocabulary.constant_index(key)
        rel_tuple = tuple(
            frozenset(tuple(t) for t in relations.get(rel_name, ()))
            for rel_name, _ in vocabulary.relations
        )
        try:
            const_tuple = tuple(constants[c] for c in vocabulary.constants)
        except KeyError as missing:
            raise InputError(f"constant {missing.args[0]} is not interpreted") from None
        return cls(name, universe_size, vocabulary, rel_tuple, const_tuple)

    def relation(self, name: str) -> frozenset[tuple[int, ...]]:
        return self.relations[self.vocabulary.relation_index(name)]

    def constant(self, name: str) -> int:
        return self.constants[self.vocabulary.constant_index(name)]


@dataclass(frozen=True)
class PartialIso:
    """A candidate partial map between two structures, in canonical pair
    form.  Construction checks only well-formedness; whether the map
    really is a partial isomorphism is ``is_partial_iso``'s question."""

    left: Structure
    right: Structure
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.left.vocabulary != self.right.vocabulary:
            raise InputError("both structures must share one vocabulary")
        previous = None
        for a, b in self.pairs:
            if not (0 <= a < self.left.universe_size):
                raise InputError(f"source {a} leaves the left universe")
            if not (0 <= b < self.right.universe_size):
                raise InputError(f"target {b} leaves the right universe")
            if previous is not None and (a, b) <= previous:
                raise InputError("pairs must be strictly sorted")
            previous = (a, b)

    @classmethod
    def from_pairs(
        cls, left: Structure, right: Structure, pairs: Iterable[tuple[int, int]]
    ) -> "PartialIso":
        return cls(left, right, tuple(sorted(set((a, b) for a, b in pairs))))

    def domain(self) -> frozenset[int]:
        return frozenset(a for a, _ in self.pairs)

    def codomain(self) -> frozenset[int]:
        return frozenset(b for _, b in self.pairs)

    def mapping(self) -> dict[int, int]:
        return dict(self.pairs)

    def compose(self, other: "PartialIso") -> "PartialIso":
        """self after other; defined where other lands in self's domain.
        Both maps are assumed functional (enumerated isos always are)."""
        if other.right != self.left:
            raise InputError("composition needs other's right to be self's left")
        lookup = dict(self.pairs)
        return PartialIso(
            other.left,
            self.right,
            tuple((a, lookup[b]) for a, b in other.pairs if b in lookup),
        )

    def inverse(self) -> "PartialIso":
        return PartialIso.from_pairs(
            self.right, self.left, ((b, a) for a, b in self.pairs)
        )

    def is_restriction_of(self, other: "PartialIso") -> bool:
        if self.left != other.left or self.right != other.right:
            raise InputError("cannot compare maps between different structures")
        return set(self.pairs) <= set(other.pairs)


def identity_iso(A: Structure) -> PartialIso:
    return PartialIso(A, A, tuple((x, x) for x in range(A.universe_size)))


def constant_pairs(A: Structure, B: Structure) -> tuple[tuple[int, int], ...]:
    if A.vocabulary != B.vocabulary:
        raise InputError("both structures must share one vocabulary")
    return tuple(sorted(set(zip(A.constants, B.constants))))


def constants_only_iso(A: Structure, B: Structure) -> PartialIso:
    """The minimal candidate: exactly the constant pairs.  With clashing
    constants this is a well-formed candidate that fails the check."""
    return PartialIso(A, B, constant_pairs(A, B))


def pairs_are_partial_iso(
    A: Structure, B: Structure, pairs: Iterable[tuple[int, int]]
) -> bool:
    """Ground truth for raw pair sets: functional, injective, containing
    all constant pairs, preserving every relation in both directions."""
    pairs = set(pairs)
    sources = [a for a, _ in pairs]
    targets = [b for _, b in pairs]
    if len(set(sources)) != len(sources) or len(set(targets)) != len(targets):
        return False
    if not set(constant_pairs(A, B)) <= pairs:
        return False
    forward = dict(pairs)
    for (_, arity), tuples_a, tuples_b in zip(
        A.vocabulary.relations, A.relations, B.relations
    ):
        if not _preserves(forward, arity, tuples_a, tuples_b):
            return False
    return True


def _preserves(forward, arity, tuples_a, tuples_b) -> bool:
    dom = sorted(forward)
    for combo in _tuples_over(dom, arity):
        image = tuple(forward[x] for x in combo)
        if (combo in tuples_a) != (image in tuples_b):
            return False
    return True


def _tuples_over(dom: Sequence[int], arity: int) -> Iterator[tuple[int, ...]]:
    if arity == 0:
        yield ()
        return
    for rest in _tuples_over(dom, arity - 1):
        for x in dom:
            yield rest + (x,)


def is_partial_iso(p: PartialIso) -> bool:
    return pairs_are_partial_iso(p.left, p.right, p.pairs)


def enumerate_partial_isos(
    A: Structure, B: Structure, max_universe: int = DEFAULT_UNIVERSE_BOUND
) -> frozenset[PartialIso]:
    """Every partial isomorphism from A to B.

    Grows maps pair by pair from the constant base; a restriction of a
    partial isomorphism to any superset of the constant pairs is again
    one, so depth-first growth with incremental checks finds them all.
    """
    for S in (A, B):
        if S.universe_size > max_universe:
            raise BoundExceededError(
                f"universe of {S.name} exceeds the bound {max_universe}"
            )
    base = constant_pairs(A, B)
    if not pairs_are_partial_iso(A, B, base):
        return frozenset()
    found: list[PartialIso] = []
    relation_triples = [
        (arity, tuples_a, tuples_b)
        for (_, arity), tuples_a, tuples_b in zip(
            A.vocabulary.relations, A.relations, B.relations
        )
    ]

    def consistent_with(forward: dict[int, int], a: int) -> bool:
        # Only tuples mentioning the new source need checking; older ones
        # were checked when their sources arrived.
        dom = sorted(forward)
        for arity, tuples_a, tuples_b in relation_triples:
            for combo in _tuples_over(dom, arity):
                if a not in combo:
                    continue
                image = tuple(forward[x] for x in combo)
                if (combo in tuples_a) != (image in tuples_b):
                    return False
        return True

    free_sources = [a for a in range(A.universe_size) if a not in dict(base)]
    used_targets = set(b for _, b in base)

    def grow(start: int, forward: dict[int, int]):
        found.append(PartialIso.from_pairs(A, B, forward.items()))
        for i in range(start, len(free_sources)):
            a = free_sources[i]
            for b in range(B.universe_size):
                if b in used_targets:
                    continue
                forward[a] = b
                used_targets.add(b)
                if consistent_with(forward, a):
                    grow(i + 1, forward)
                del forward[a]
                used_targets.discard(b)

    grow(0, dict(base))
    return frozenset(found)


# ---------------------------------------------------------------------------
# Parsing and printing

_TOKEN = re.compile(r"\([^()]*\)|\S+")


def _tokenize(line: str) -> list[tuple[str, int]]:
    return [(m.group(0), m.start() + 1) for m in _TOKEN.finditer(line)]


def _parse_tuple(token: str, line_no: int, column: int, arity: int) -> tuple[int, ...]:
    if not (token.startswith("(") and token.endswith(")")):
        raise ParseError(f"expected a tuple like (0,1), got {token!r}", line_no, column)
    inner = token[1:-1].strip()
    if not inner:
        raise ParseError("empty tuple", line_no, column)
    try:
        values = tuple(int(part.strip()) for part in inner.split(","))
    except ValueError:
        raise ParseError(f"tuple {token!r} must hold integers", line_no, column) from None
    if len(values) != arity:
        raise ParseError(
            f"tuple {token!r} has {len(values)} entries, expected arity {arity}",
            line_no,
            column,
        )
    return values


def _int_token(token: str, line_no: int, column: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {token!r}", line_no, column) from None


def parse_structures(text: str) -> tuple[Vocabulary, tuple[Structure, ...]]:
    """Parse a structure file; errors carry line and column positions."""
    vocab_relations: list[tuple[str, int]] = []
    vocab_constants: list[str] = []
    vocabulary: Vocabulary | None = None
    structures: list[Structure] = []
    seen_names: set[str] = set()

    section = "start"  # start | vocabulary | structure
    current: dict | None = None

    def finish_structure(line_no: int):
        nonlocal current
        if current is None:
            return
        if current["universe"] is None:
            raise ParseError(
                f"structure {current['name']} has no universe line", current["line"]
            )
        missing = [
            c for c in vocabulary.constants if c not in current["constants"]
        ]
        if missing:
            raise ParseError(
                f"structure {current['name']} leaves constant {missing[0]} uninterpreted",
                current["line"],
            )
        structures.append(
            Structure.build(
                current["name"],
                current["universe"],
                vocabulary,
                current["relations"],
                current["constants"],
            )
        )
        current = None

    def seal_vocabulary():
        nonlocal vocabulary
        if vocabulary is None:
            vocabulary = Vocabulary(tuple(vocab_relations), tuple(vocab_constants))

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        tokens = _tokenize(line)
        if not tokens:
            continue
        (head, head_col), rest = tokens[0], tokens[1:]

        try:
            if head == "vocabulary":
                if section != "start":
                    raise ParseError("vocabulary must come first, once", line_no, head_col)
                if rest:
                    raise ParseError("vocabulary takes no arguments", line_no, rest[0][1])
                section = "vocabulary"
            elif head == "structure":
                if len(rest) != 1:
                    raise ParseError("structure needs exactly a name", line_no, head_col)
                seal_vocabulary()
                finish_structure(line_no)
                name = rest[0][0]
                if name in seen_names:
                    raise ParseError(f"duplicate structure name {name}", line_no, rest[0][1])
                seen_names.add(name)
                section = "structure"
                current = {
                    "name": name,
                    "line": line_no,
                    "universe": None,
                    "relations": {},
                    "constants": {},
                }
            elif head == "relation" and section == "vocabulary":
                if len(rest) != 2:
                    raise ParseError("relation needs a name and an arity", line_no, head_col)
                (name, _), (arity_tok, arity_col) = rest
                arity = _int_token(arity_tok, line_no, arity_col, "arity")
                if arity < 1:
                    raise ParseError("arity must be at least 1", line_no, arity_col)
                if any(name == n for n, _ in vocab_relations) or name in vocab_constants:
                    raise ParseError(f"duplicate name {name}", line_no, rest[0][1])
                vocab_relations.append((name, arity))
            elif head == "constant" and section == "vocabulary":
                if len(rest) != 1:
                    raise ParseError("constant needs exactly a name", line_no, head_col)
                name = rest[0][0]
                if name in vocab_constants or any(name == n for n, _ in vocab_relations):
                    raise ParseError(f"duplicate name {name}", line_no, rest[0][1])
                vocab_constants.append(name)
            elif head == "universe" and section == "structure":
                if current["universe"] is not None:
                    raise ParseError("universe declared twice", line_no, head_col)
                if len(rest) != 1:
                    raise ParseError("universe needs exactly a size", line_no, head_col)
                size = _int_token(rest[0][0], line_no, rest[0][1], "universe size")
                if size < 1:
                    raise ParseError("universe size must be at least 1", line_no, rest[0][1])
                current["universe"] = size
            elif head == "constant" and section == "structure":
                if len(rest) != 2:
                    raise ParseError("constant needs a name and an element", line_no, head_col)
                (name, name_col), (value_tok, value_col) = rest
                if name not in vocabulary.constants:
                    raise ParseError(f"unknown constant {name}", line_no, name_col)
                if name in current["constants"]:
                    raise ParseError(f"constant {name} interpreted twice", line_no, name_col)
                if current["universe"] is None:
                    raise ParseError("universe must come before interpretations", line_no, head_col)
                value = _int_token(value_tok, line_no, value_col, "element")
                if not (0 <= value < current["universe"]):
                    raise ParseError(f"element {value} leaves the universe", line_no, value_col)
                current["constants"][name] = value
            elif head == "relation" and section == "structure":
                if not rest:
                    raise ParseError("relation needs a name", line_no, head_col)
                (name, name_col) = rest[0]
                try:
                    arity = dict(vocabulary.relations)[name]
                except KeyError:
                    raise ParseError(f"unknown relation {name}", line_no, name_col) from None
                if current["universe"] is None:
                    raise ParseError("universe must come before interpretations", line_no, head_col)
                tuples = current["relations"].setdefault(name, [])
                for token, col in rest[1:]:
                    values = _parse_tuple(token, line_no, col, arity)
                    if any(not (0 <= x < current["universe"]) for x in values):
                        raise ParseError(
                            f"tuple {token} leaves the universe", line_no, col
                        )
                    tuples.append(values)
            else:
                raise ParseError(f"unexpected directive {head!r}", line_no, head_col)
        except InputError as err:
            if isinstance(err, ParseError):
                raise
            raise ParseError(str(err), line_no) from None

    seal_vocabulary()
    finish_structure(0)
    return vocabulary, tuple(structures)


def format_structures(vocabulary: Vocabulary, structures: Iterable[Structure]) -> str:
    """Canonical printer; ``parse_structures`` round-trips its output."""
    lines: list[str] = []
    if vocabulary.relations or vocabulary.constants:
        lines.append("vocabulary")
        for name, arity in vocabulary.relations:
            lines.append(f"  relation {name} {arity}")
        for name in vocabulary.constants:
            lines.append(f"  constant {name}")
    for S in structures:
        lines.append(f"structure {S.name}")
        lines.append(f"  universe {S.universe_size}")
        for name, value in zip(vocabulary.constants, S.constants):
            lines.append(f"  constant {name} {value}")
        for (name, _), tuples in zip(vocabulary.relations, S.relations):
            if tuples:
                rendered = " ".join(
                    "(" + ",".join(str(x) for x in t) + ")" for t in sorted(tuples)
                )
                lines.append(f"  relation {name} {rendered}")
    return "\n".join(lines) + "\n"
