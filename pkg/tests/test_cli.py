"""Command-line interface: output contracts and exit codes."""

import subprocess
import sys

import pytest

from modeloids import cli
from modeloids.categorical import CategoricalModeloid
from modeloids.ef_games import extract_certificate, format_certificate
from modeloids.fileformats import (
    format_categorical_modeloid_file,
    format_category_file,
    format_modeloid_file,
    format_semigroup_file,
    format_semimodeloid_file,
)
from modeloids.free_categories import semigroup_to_one_object_category
from modeloids.inverse_semigroups import Semimodeloid, from_partial_bijections
from modeloids.modeloid import full_modeloid
from modeloids.partial_bijections import Carrier, enumerate_all
from modeloids.structures import parse_structures

PURE_SETS = """structure P2
  universe 2

structure P3
  universe 3
"""

GRAPHS = """vocabulary
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
"""

# closure of {0 -> 1}; loses both non-idempotent maps after one derivative
SHRINKING_MODELOID = """modeloid
carrier 2
map
map (0,0)
map (1,1)
map (0,0) (1,1)
map (0,1)
map (1,0)
"""

LEFT_ZERO = "semigroup\norder 2\nmul 0 0\nmul 1 1\n"
BARE_SEMILATTICE = "semigroup\norder 2\nmul 0 1\nmul 1 1\n"
SEMILATTICE = "semigroup\norder 2\nmul 0 1\nmul 1 1\ninv 0 1\nneutral 0\nzero 1\n"

# one-object category on the monoid {1, a, a^2} with a^3 = a^2: a is not
# regular, so this is a category but not an inverse category
MONOID_CATEGORY = (
    "category\nmorphisms 4\nstar 3\ndom 0 0 0 3\ncod 0 0 0 3\n"
    "comp 0 1 2 3\ncomp 1 2 2 3\ncomp 2 2 2 3\ncomp 3 3 3 3\n"
)


@pytest.fixture(scope="module")
def files(tmp_path_factory):
    d = tmp_path_factory.mktemp("cli")
    table2, _ = from_partial_bijections(enumerate_all(Carrier(2)))
    cat = semigroup_to_one_object_category(table2)
    catmod = format_categorical_modeloid_file(CategoricalModeloid.everything(cat))

    texts = {
        "sets.txt": PURE_SETS,
        "graphs.txt": GRAPHS,
        "shrink.txt": SHRINKING_MODELOID,
        "leftzero.txt": LEFT_ZERO,
        "bare.txt": BARE_SEMILATTICE,
        "semilattice.txt": SEMILATTICE,
        "monoidcat.txt": MONOID_CATEGORY,
        "broken.txt": "structure\n",
        "badmod.txt": "modeloid\ncarrier 2\nmap (0,1)\n",
        "f2.txt": format_semigroup_file(table2),
        "f2cat.txt": format_category_file(cat),
        "semi.txt": format_semimodeloid_file(Semimodeloid(table2, frozenset(range(7)))),
        "semibad.txt": "semimodeloid\norder 2\nmul 0 1\nmul 1 1\ninv 0 1\nmembers 1\n",
        "semileft.txt": "semimodeloid\norder 2\nmul 0 0\nmul 1 1\nmembers 0 1\n",
        "catmod.txt": catmod,
        "catmod-noinv.txt": "\n".join(
            line for line in catmod.splitlines() if not line.startswith("inv ")
        )
        + "\n",
        "catmod-bad.txt": "\n".join(
            "members 0 1" if line.startswith("members") else line
            for line in catmod.splitlines()
        )
        + "\n",
        "mod3.txt": format_modeloid_file(full_modeloid(Carrier(3))),
    }
    paths = {}
    for name, text in texts.items():
        p = d / name
        p.write_text(text, encoding="utf-8")
        paths[name] = str(p)
    return paths


def run(capsys, *args):
    code = cli.main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestValidate:
    def test_machine_output(self, files, capsys):
        code, out, _ = run(capsys, "validate", files["sets.txt"], "--format", "machine")
        assert code == 0
        assert out == "constants: none\nok: true\nrelations: none\nstructures: P2 P3\n"

    def test_text_keeps_presentation_order(self, files, capsys):
        code, out, _ = run(capsys, "validate", files["graphs.txt"])
        assert code == 0
        assert out.splitlines() == [
            "ok: true",
            "structures: A B",
            "relations: E/2",
            "constants: c",
        ]

    def test_parse_error_exits_2(self, files, capsys):
        code, out, err = run(capsys, "validate", files["broken.txt"])
        assert code == 2
        assert out == ""
        assert err.startswith("error:")

    def test_unreadable_file_exits_3(self, files, capsys, tmp_path):
        code, _, err = run(capsys, "validate", str(tmp_path / "missing.txt"))
        assert code == 3
        assert err.startswith("error:")


class TestEf:
    def test_equivalent_pair_exits_0(self, files, capsys):
        code, out, _ = run(
            capsys, "ef", files["sets.txt"],
            "--left", "P2", "--right", "P3", "--rounds", "2",
        )
        assert code == 0
        assert "equivalent: true" in out
        assert "oracle-agrees: true" in out

    def test_distinguished_pair_exits_1(self, files, capsys):
        code, out, _ = run(
            capsys, "ef", files["sets.txt"],
            "--left", "P2", "--right", "P3", "--rounds", "3",
        )
        assert code == 1
        assert "equivalent: false" in out

    def test_machine_output_with_seed(self, files, capsys):
        code, out, _ = run(
            capsys, "ef", files["sets.txt"],
            "--left", "P2", "--right", "P3", "--rounds", "3",
            "--format", "machine", "--seed", "11",
        )
        assert code == 1
        assert out == (
            "equivalent: false\nmethod: derivative\n"
            "oracle-agrees: true\nrounds: 3\nseed: 11\n"
        )

    def test_unknown_structure_name_exits_2(self, files, capsys):
        code, _, err = run(
            capsys, "ef", files["sets.txt"],
            "--left", "P2", "--right", "nope", "--rounds", "1",
        )
        assert code == 2
        assert "no structure named nope" in err

    def test_universe_bound_enforced(self, files, capsys):
        code, _, err = run(
            capsys, "ef", files["sets.txt"],
            "--left", "P2", "--right", "P3", "--rounds", "1",
            "--max-universe", "2",
        )
        assert code == 2
        assert err.startswith("error:")

    def test_negative_rounds_exit_2(self, files, capsys):
        code, _, err = run(
            capsys, "ef", files["sets.txt"],
            "--left", "P2", "--right", "P3", "--rounds", "-1",
        )
        assert code == 2
        assert "--rounds" in err

    def test_certificate_matches_library_rendering(self, files, capsys, tmp_path):
        cert_path = tmp_path / "cert.txt"
        code, _, err = run(
            capsys, "ef", files["sets.txt"],
            "--left", "P2", "--right", "P3", "--rounds", "2",
            "--certificate", str(cert_path),
        )
        assert code == 0 and err == ""
        _, structures = parse_structures(PURE_SETS)
        cert = extract_certificate(structures[0], structures[1], 2)
        assert cert_path.read_text(encoding="utf-8") == format_certificate(cert)

    def test_certificate_refused_when_not_equivalent(self, files, capsys, tmp_path):
        cert_path = tmp_path / "cert.txt"
        code, _, err = run(
            capsys, "ef", files["sets.txt"],
            "--left", "P2", "--right", "P3", "--rounds", "3",
            "--certificate", str(cert_path),
        )
        assert code == 1
        assert "no certificate" in err
        assert not cert_path.exists()

    def test_method_disagreement_is_loud(self, files, capsys, monkeypatch):
        monkeypatch.setattr(cli, "ef_equiv_oracle", lambda *a, **k: True)
        code, out, err = run(
            capsys, "ef", files["sets.txt"],
            "--left", "P2", "--right", "P3", "--rounds", "3",
        )
        assert code == 4
        assert "oracle-agrees: false" in out
        assert "invariant breach" in err


class TestVerify:
    def test_semigroup_ok(self, files, capsys):
        code, out, _ = run(capsys, "verify", "semigroup", files["f2.txt"])
        assert code == 0
        assert out == "ok: true\n"

    def test_semigroup_without_inverse_rows(self, files, capsys):
        code, out, _ = run(capsys, "verify", "semigroup", files["bare.txt"])
        assert code == 0
        assert out == "ok: true\n"

    def test_left_zero_band_rejected(self, files, capsys):
        code, out, _ = run(capsys, "verify", "semigroup", files["leftzero.txt"])
        assert code == 1
        assert out.splitlines() == [
            "ok: false",
            "axiom: idempotent-commutation",
            "witness: (0, 1)",
        ]

    def test_category_ok(self, files, capsys):
        code, out, _ = run(capsys, "verify", "category", files["monoidcat.txt"])
        assert code == 0
        assert out == "ok: true\n"

    def test_non_inverse_category_rejected(self, files, capsys):
        code, out, _ = run(capsys, "verify", "inverse-category", files["monoidcat.txt"])
        assert code == 1
        assert out.startswith("ok: false\n")

    def test_inverse_category_ok(self, files, capsys):
        code, out, _ = run(capsys, "verify", "inverse-category", files["f2cat.txt"])
        assert code == 0

    def test_modeloid_ok_and_bad(self, files, capsys):
        assert run(capsys, "verify", "modeloid", files["shrink.txt"])[0] == 0
        code, out, _ = run(capsys, "verify", "modeloid", files["badmod.txt"])
        assert code == 1
        assert "axiom:" in out

    def test_semimodeloid_ok_and_bad(self, files, capsys):
        assert run(capsys, "verify", "semimodeloid", files["semi.txt"])[0] == 0
        code, out, _ = run(capsys, "verify", "semimodeloid", files["semibad.txt"])
        assert code == 1
        assert "ok: false" in out

    def test_categorical_modeloid_ok(self, files, capsys):
        code, out, _ = run(
            capsys, "verify", "categorical-modeloid", files["catmod.txt"]
        )
        assert code == 0
        assert out == "ok: true\n"

    def test_categorical_modeloid_without_inverse_rows(self, files, capsys):
        code, out, _ = run(
            capsys, "verify", "categorical-modeloid", files["catmod-noinv.txt"]
        )
        assert code == 0
        assert out == "ok: true\n"

    def test_categorical_modeloid_missing_object(self, files, capsys):
        code, out, _ = run(
            capsys, "verify", "categorical-modeloid", files["catmod-bad.txt"]
        )
        assert code == 1
        assert "ok: false" in out


class TestDerive:
    def test_modeloid_machine_dump(self, files, capsys):
        code, out, _ = run(
            capsys, "derive", "modeloid", files["shrink.txt"],
            "--rounds", "3", "--format", "machine",
        )
        assert code == 0
        assert out == (
            "level-0: - 0>0 0>0,1>1 0>1 1>0 1>1\n"
            "level-1: - 0>0 0>0,1>1 1>1\n"
            "level-2: - 0>0 0>0,1>1 1>1\n"
            "level-3: - 0>0 0>0,1>1 1>1\n"
            "sizes: 6 4 4 4\n"
            "stabilized: 1\n"
        )

    def test_modeloid_text_is_sizes_only(self, files, capsys):
        code, out, _ = run(
            capsys, "derive", "modeloid", files["shrink.txt"], "--rounds", "3"
        )
        assert code == 0
        assert out == "sizes: 6 4 4 4\nstabilized: 1\n"

    def test_stable_modeloid(self, files, capsys):
        code, out, _ = run(
            capsys, "derive", "modeloid", files["mod3.txt"], "--rounds", "2"
        )
        assert code == 0
        assert out == "sizes: 34 34 34\nstabilized: 0\n"

    def test_semimodeloid_machine_dump(self, files, capsys):
        code, out, _ = run(
            capsys, "derive", "semimodeloid", files["semi.txt"],
            "--rounds", "1", "--format", "machine",
        )
        assert code == 0
        assert out == (
            "level-0: 0 1 2 3 4 5 6\n"
            "level-1: 0 1 2 3 4 5 6\n"
            "sizes: 7 7\n"
            "stabilized: 0\n"
        )

    def test_categorical_modeloid_chain(self, files, capsys):
        code, out, _ = run(
            capsys, "derive", "categorical-modeloid", files["catmod.txt"],
            "--rounds", "3",
        )
        assert code == 0
        assert out == "sizes: 8 8 8 8\nstabilized: 0\n"

    def test_broken_input_reports_verdict_instead(self, files, capsys):
        code, out, _ = run(
            capsys, "derive", "semimodeloid", files["semileft.txt"], "--rounds", "2"
        )
        assert code == 1
        assert "ok: false" in out
        assert "sizes" not in out

    def test_negative_rounds_exit_2(self, files, capsys):
        code, _, err = run(
            capsys, "derive", "modeloid", files["shrink.txt"], "--rounds", "-2"
        )
        assert code == 2
        assert "--rounds" in err


class TestEmbed:
    def test_semilattice_representation(self, files, capsys):
        code, out, _ = run(capsys, "embed", files["semilattice.txt"])
        assert code == 0
        assert out.splitlines() == [
            "omega-0: (0,0) (1,1)",
            "omega-1: (1,1)",
            "injective: true",
            "multiplicative: true",
            "order-faithful: true",
        ]

    def test_machine_sorts_keys(self, files, capsys):
        code, out, _ = run(
            capsys, "embed", files["semilattice.txt"], "--format", "machine"
        )
        assert code == 0
        assert out.splitlines() == [
            "injective: true",
            "multiplicative: true",
            "omega-0: (0,0) (1,1)",
            "omega-1: (1,1)",
            "order-faithful: true",
        ]

    def test_symmetric_inverse_monoid(self, files, capsys):
        code, out, _ = run(capsys, "embed", files["f2.txt"])
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 10
        assert lines[0] == "omega-0: (0,0)"  # the zero acts on itself alone
        assert lines[-3:] == [
            "injective: true",
            "multiplicative: true",
            "order-faithful: true",
        ]

    def test_non_inverse_table_exits_1(self, files, capsys):
        code, out, _ = run(capsys, "embed", files["leftzero.txt"])
        assert code == 1
        assert "ok: false" in out


class TestSubprocess:
    def test_machine_output_is_byte_reproducible(self, files):
        cmd = [
            sys.executable, "-m", "modeloids.cli",
            "ef", files["sets.txt"],
            "--left", "P2", "--right", "P3", "--rounds", "2",
            "--format", "machine",
        ]
        first = subprocess.run(cmd, capture_output=True)
        second = subprocess.run(cmd, capture_output=True)
        assert first.returncode == second.returncode == 0
        assert first.stdout == second.stdout
        assert first.stdout.decode() == (
            "equivalent: true\nmethod: derivative\noracle-agrees: true\nrounds: 2\n"
        )

    def test_exit_code_propagates(self, files):
        cmd = [
            sys.executable, "-m", "modeloids.cli",
            "ef", files["sets.txt"],
            "--left", "P2", "--right", "P3", "--rounds", "3",
        ]
        assert subprocess.run(cmd, capture_output=True).returncode == 1
