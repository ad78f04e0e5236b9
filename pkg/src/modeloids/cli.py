"""Command-line front-end.

Subcommands: ``validate`` (structure files), ``ef`` (m-round
equivalence by derivative, cross-checked against the game oracle),
``verify`` (axiom checks for table files), ``derive`` (derivative
chains), ``embed`` (partial-bijection representation of a table).

Exit codes: 0 success or equivalent; 1 axiom violation or not
equivalent; 2 malformed input or exceeded bound; 3 unreadable file;
4 the two equivalence methods disagree (never reconciled silently).

``--format machine`` prints the same key:value lines sorted by key,
with booleans as lowercase true/false; repeated runs on identical
input are byte-identical.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from dataclasses import dataclass
from pathlib import Path

from . import fileformats as ff
from .categorical import (
    CategoricalModeloid,
    categorical_derivative,
    verify_categorical_modeloid,
)
from .ef_games import (
    DEFAULT_EF_UNIVERSE_BOUND,
    build_category_D,
    ef_equiv_derivative,
    ef_equiv_oracle,
    extract_certificate,
    format_certificate,
)
from .errors import BoundExceededError, InputError, ParseError
from .free_categories import (
    skolem_inverses,
    verify_category,
    verify_inverse_category_unique,
)
from .inverse_semigroups import (
    InverseSemigroupTable,
    Semimodeloid,
    natural_leq,
    resolve_inverses,
    semimodeloid_derivative,
    verify_inverse_semigroup,
    verify_semimodeloid,
    wagner_preston,
)
from .modeloid import iterate_derivative, verify_modeloid
from .structures import parse_structures
from .verdict import Verdict

VERIFY_KINDS = (
    "semigroup",
    "category",
    "inverse-category",
    "modeloid",
    "semimodeloid",
    "categorical-modeloid",
)
DERIVE_KINDS = ("modeloid", "semimodeloid", "categorical-modeloid")


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs, normalized from argparse."""

    command: str
    path: Path
    fmt: str = "text"
    kind: str | None = None
    left: str | None = None
    right: str | None = None
    rounds: int = 0
    certificate: Path | None = None
    seed: int | None = None
    max_universe: int = DEFAULT_EF_UNIVERSE_BOUND

    def __post_init__(self):
        if self.rounds < 0:
            raise InputError("--rounds must be non-negative")
        if self.max_universe < 1:
            raise InputError("--max-universe must be positive")


def _bool(x: bool) -> str:
    return "true" if x else "false"


def _emit(cfg: RunConfig, records: list[tuple[str, str]]):
    if cfg.fmt == "machine":
        records = sorted(records)
    for key, value in records:
        print(f"{key}: {value}")


def _emit_verdict(cfg: RunConfig, verdict: Verdict) -> int:
    records = [("ok", _bool(verdict.ok))]
    if not verdict.ok:
        records.append(("axiom", verdict.axiom))
        records.append(("witness", str(verdict.witness)))
    _emit(cfg, records)
    return 0 if verdict.ok else 1


def _read(cfg: RunConfig) -> str:
    return cfg.path.read_text(encoding="utf-8")


def cmd_validate(cfg: RunConfig) -> int:
    vocabulary, structures = parse_structures(_read(cfg))
    relations = " ".join(f"{n}/{a}" for n, a in vocabulary.relations) or "none"
    constants = " ".join(vocabulary.constants) or "none"
    names = " ".join(s.name for s in structures) or "none"
    _emit(
        cfg,
        [
            ("ok", "true"),
            ("structures", names),
            ("relations", relations),
            ("constants", constants),
        ],
    )
    return 0


def _pick_structure(structures, name: str):
    for s in structures:
        if s.name == name:
            return s
    raise InputError(f"no structure named {name} in the file")


def cmd_ef(cfg: RunConfig) -> int:
    _, structures = parse_structures(_read(cfg))
    A = _pick_structure(structures, cfg.left)
    B = _pick_structure(structures, cfg.right)
    category = build_category_D(A, B, cfg.max_universe)
    by_derivative, _witness = ef_equiv_derivative(
        A, B, cfg.rounds, category=category
    )
    by_oracle = ef_equiv_oracle(A, B, cfg.rounds, cfg.max_universe)
    agrees = by_derivative == by_oracle

    records = [
        ("equivalent", _bool(by_derivative)),
        ("rounds", str(cfg.rounds)),
        ("method", "derivative"),
        ("oracle-agrees", _bool(agrees)),
    ]
    if cfg.seed is not None:
        records.append(("seed", str(cfg.seed)))
    _emit(cfg, records)

    if not agrees:
        print(
            "invariant breach: derivative says "
            f"{_bool(by_derivative)}, game oracle says {_bool(by_oracle)} "
            f"for left={cfg.left} right={cfg.right} rounds={cfg.rounds}",
            file=sys.stderr,
        )
        return 4

    if cfg.certificate is not None:
        cert = extract_certificate(A, B, cfg.rounds, category=category)
        if cert is None:
            print(
                f"no certificate: not equivalent at {cfg.rounds} rounds",
                file=sys.stderr,
            )
        else:
            cfg.certificate.write_text(format_certificate(cert), encoding="utf-8")
    return 0 if by_derivative else 1


def _table_with_inverses(
    sf: ff.SemigroupFile,
) -> tuple[InverseSemigroupTable | None, Verdict]:
    if sf.inv is not None:
        table = sf.to_table()
        return table, verify_inverse_semigroup(table)
    return resolve_inverses(sf.mul, sf.neutral, sf.zero)


def _categorical_instance(text: str) -> tuple[CategoricalModeloid | None, Verdict]:
    cf = ff.parse_categorical_modeloid_file(text)
    c = cf.to_category()
    if c.inv is None:
        verdict = verify_inverse_category_unique(c)
        if not verdict.ok:
            return None, verdict
        c = skolem_inverses(c)
    M = CategoricalModeloid.from_members(c, cf.members)
    return M, verify_categorical_modeloid(M)


def cmd_verify(cfg: RunConfig) -> int:
    text = _read(cfg)
    if cfg.kind == "semigroup":
        _, verdict = _table_with_inverses(ff.parse_semigroup_file(text))
    elif cfg.kind == "category":
        verdict = verify_category(ff.parse_category_file(text).to_category())
    elif cfg.kind == "inverse-category":
        verdict = verify_inverse_category_unique(
            ff.parse_category_file(text).to_category()
        )
    elif cfg.kind == "modeloid":
        verdict = verify_modeloid(ff.parse_modeloid_file(text))
    elif cfg.kind == "semimodeloid":
        sf = ff.parse_semimodeloid_file(text)
        table, verdict = _table_with_inverses(sf)
        if verdict.ok:
            verdict = verify_semimodeloid(Semimodeloid(table, frozenset(sf.members)))
    else:
        _, verdict = _categorical_instance(text)
    return _emit_verdict(cfg, verdict)


def _chain_sizes(levels, stabilized) -> list[tuple[str, str]]:
    records = [
        ("sizes", " ".join(str(len(level)) for level in levels)),
        ("stabilized", "none" if stabilized is None else str(stabilized)),
    ]
    return records


def _stabilization(levels) -> int | None:
    for i in range(len(levels) - 1):
        if levels[i] == levels[i + 1]:
            return i
    return None


def cmd_derive(cfg: RunConfig) -> int:
    text = _read(cfg)
    if cfg.kind == "modeloid":
        M = ff.parse_modeloid_file(text)
        verdict = verify_modeloid(M)
        if not verdict.ok:
            return _emit_verdict(cfg, verdict)
        chain, stabilized = iterate_derivative(M, cfg.rounds)
        levels = [sorted(x.pairs for x in step.members) for step in chain]
        dump = [
            " ".join("-" if not m else ",".join(f"{a}>{b}" for a, b in m) for m in lv)
            for lv in levels
        ]
    elif cfg.kind == "semimodeloid":
        sf = ff.parse_semimodeloid_file(text)
        table, verdict = _table_with_inverses(sf)
        if verdict.ok:
            sm = Semimodeloid(table, frozenset(sf.members))
            verdict = verify_semimodeloid(sm)
        if not verdict.ok:
            return _emit_verdict(cfg, verdict)
        steps = [sm]
        for _ in range(cfg.rounds):
            nxt = semimodeloid_derivative(steps[-1])
            if nxt.members == steps[-1].members:
                break
            steps.append(nxt)
        while len(steps) < cfg.rounds + 1:
            steps.append(steps[-1])
        levels = [sorted(step.members) for step in steps]
        dump = [" ".join(str(x) for x in lv) for lv in levels]
    else:
        M, verdict = _categorical_instance(text)
        if not verdict.ok:
            return _emit_verdict(cfg, verdict)
        steps = [M]
        for _ in range(cfg.rounds):
            nxt = categorical_derivative(steps[-1], check=False)
            if nxt.members == steps[-1].members:
                break
            steps.append(nxt)
        while len(steps) < cfg.rounds + 1:
            steps.append(steps[-1])
        levels = [sorted(step.members) for step in steps]
        dump = [" ".join(str(x) for x in lv) for lv in levels]

    records = _chain_sizes(levels, _stabilization(levels))
    if cfg.fmt == "machine":
        width = len(str(len(levels) - 1))
        for j, rendered in enumerate(dump):
            records.append((f"level-{j:0{width}d}", rendered))
    _emit(cfg, records)
    return 0


def cmd_embed(cfg: RunConfig) -> int:
    sf = ff.parse_semigroup_file(_read(cfg))
    table, verdict = _table_with_inverses(sf)
    if not verdict.ok:
        return _emit_verdict(cfg, verdict)
    omegas = wagner_preston(table)
    mul = table.mul
    n = table.order
    injective = len(set(omegas)) == n
    multiplicative = all(
        omegas[mul[a][b]] == omegas[a].compose(omegas[b])
        for a in range(n)
        for b in range(n)
    )
    faithful = all(
        natural_leq(table, a, b) == omegas[a].is_restriction_of(omegas[b])
        for a in range(n)
        for b in range(n)
    )
    width = len(str(n - 1))
    records = []
    for a, omega in enumerate(omegas):
        rendered = " ".join(f"({x},{y})" for x, y in omega.pairs) or "-"
        records.append((f"omega-{a:0{width}d}", rendered))
    records.extend(
        [
            ("injective", _bool(injective)),
            ("multiplicative", _bool(multiplicative)),
            ("order-faithful", _bool(faithful)),
        ]
    )
    _emit(cfg, records)
    return 0 if (injective and multiplicative and faithful) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modeloids",
        description="Verify algebraic axioms, run derivatives, and decide "
        "m-round equivalence of finite relational structures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser):
        p.add_argument("file", type=Path, help="input file")
        p.add_argument(
            "--format",
            choices=("text", "machine"),
            default="text",
            dest="fmt",
            help="machine prints sorted key:value lines",
        )
        p.add_argument("--seed", type=int, default=None, help="echoed for provenance")

    p = sub.add_parser("validate", help="parse and validate a structure file")
    common(p)

    p = sub.add_parser("ef", help="decide m-round equivalence of two structures")
    common(p)
    p.add_argument("--left", required=True, help="name of the first structure")
    p.add_argument("--right", required=True, help="name of the second structure")
    p.add_argument("--rounds", required=True, type=int, help="number of rounds m")
    p.add_argument(
        "--certificate", type=Path, default=None, help="write the level sets here"
    )
    p.add_argument(
        "--max-universe",
        type=int,
        default=DEFAULT_EF_UNIVERSE_BOUND,
        help="largest universe size accepted",
    )

    p = sub.add_parser("verify", help="check the axioms of a table file")
    p.add_argument("kind", choices=VERIFY_KINDS)
    common(p)

    p = sub.add_parser("derive", help="iterate the derivative and print sizes")
    p.add_argument("kind", choices=DERIVE_KINDS)
    common(p)
    p.add_argument("--rounds", required=True, type=int, help="iterations to run")

    p = sub.add_parser("embed", help="realize a table as partial bijections")
    common(p)
    return parser


def _config_from(ns: argparse.Namespace) -> RunConfig:
    fields = {f.name for f in dataclasses.fields(RunConfig)}
    chosen = {
        "command": ns.command,
        "path": ns.file,
        "fmt": ns.fmt,
    }
    for name in ("kind", "left", "right", "rounds", "certificate", "seed"):
        if hasattr(ns, name) and getattr(ns, name) is not None:
            chosen[name] = getattr(ns, name)
    if hasattr(ns, "max_universe"):
        chosen["max_universe"] = ns.max_universe
    assert set(chosen) <= fields
    return RunConfig(**chosen)


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    handlers = {
        "validate": cmd_validate,
        "ef": cmd_ef,
        "verify": cmd_verify,
        "derive": cmd_derive,
        "embed": cmd_embed,
    }
    try:
        cfg = _config_from(ns)
        return handlers[cfg.command](cfg)
    except ParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except BoundExceededError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
