import json
import subprocess
import sys

import pytest

from ccrep.cli import COMMANDS, execute

THREE_STATES = {"states": ["X", "Y", "Z"], "initial": "X", "edges": [["X", "a", "Y"], ["Y", "c", "X"], ["Z", "b", "Y"]]}


@pytest.fixture
def files(tmp_path):
    (tmp_path / "S.sig").write_text("r: a\nl: b\n")
    (tmp_path / "B.sig").write_text("r: a\nl: b\nbi: c\n")
    (tmp_path / "fig.json").write_text(json.dumps(THREE_STATES))
    (tmp_path / "f.txt").write_text("<a>tt | [b]ff\n")
    return tmp_path


def run(files, *argv):
    argv = [str(files / a[1:]) if a.startswith("%") else a for a in argv]
    argv = ["@" + str(files / a[2:]) if a.startswith("@%") else a for a in argv]
    return execute(argv)


def test_spec_examples(files):
    assert run(files, "sim", "--sig", "%S.sig", "w", "a.b.0")[0] == 0
    code, out, _ = run(files, "prime", "--sig", "%S.sig", "<a>tt | [b]ff")
    assert code == 1
    assert out.splitlines()[0] == "not prime: antichain {a.w + b.w, 0}"
    code, out, _ = run(files, "charform", "--sig", "%S.sig", "0")
    assert (code, out) == (0, "[b]ff\n")


def test_formula_from_file(files):
    code, out, _ = run(files, "represent", "--sig", "%S.sig", "@%f.txt")
    assert (code, out) == (0, "{a.w + b.w, 0}\n")


def test_bottom_is_prime_but_not_single_process(files):
    code, out, _ = run(files, "prime", "--sig", "%S.sig", "ff")
    assert code == 0
    assert out.splitlines()[1] == "representable by a single process: no"


@pytest.mark.parametrize(
    "argv, code, first_line",
    [
        (("sim", "--sig", "%S.sig", "0", "b.0"), 1, "0 <=cc b.0: no"),
        (("check", "--sig", "%S.sig", "w", "[b]ff"), 1, "w |= [b]ff: no"),
        (("consistent", "--sig", "%S.sig", "<a>tt & [b]ff"), 0, "consistent: witness a.w"),
        (("consistent", "--sig", "%S.sig", "<a>ff"), 1, "inconsistent"),
        (("entails", "--sig", "%S.sig", "<a>[b]ff", "<a>tt"), 0, "entails"),
        (("entails", "--sig", "%S.sig", "<a>tt", "[b]ff"), 1, "does not entail: counterexample a.w + b.w"),
        (("equiv", "--sig", "%S.sig", "[b]tt", "tt"), 0, "equivalent"),
        (("bisim", "--bi", "--sig", "%B.sig", "c.0", "0"), 1, "c.0 <=cc 0: no"),
        (("encode", "--sig", "%B.sig", "c.0"), 0, "c^l.0 + c^r.0"),
        (("translate", "--sig", "%B.sig", "<c>tt & [c]ff"), 0, "<c^r>tt & [c^l]ff"),
        (("decode", "--sig", "%B.sig", "c^r.0 + c^l.0"), 0, "c.0"),
        (("decode", "--sig", "%B.sig", "c^r.0"), 1, "not representable: c^r.0 is not equivalent to c^l.0 + c^r.0"),
        (("isrep", "--sig", "%B.sig", "c^r.0"), 1, "representation: no"),
        (("parse", "--sig", "%S.sig", "a.0 + 0"), 0, "0 + a.0"),
        (("parse", "--formula", "--sig", "%S.sig", "tt & <a>tt"), 0, "<a>tt & tt"),
        (("snf", "--sig", "%S.sig", "<a>tt"), 0, "<a>tt & [b]tt"),
        (("enumerate", "terms", "--sig", "%S.sig", "--depth", "0"), 0, "0"),
    ],
)
def test_verdicts(files, argv, code, first_line):
    got, out, err = run(files, *argv)
    assert (got, out.splitlines()[0]) == (code, first_line)
    assert err == ""


def test_json_mode_encodes_the_same_verdict(files):
    for formula, verdict in (("<a>tt | [b]ff", False), ("<a>tt", True)):
        code, out, _ = run(files, "prime", "--json", "--sig", "%S.sig", formula)
        doc = json.loads(out)
        assert doc["verdict"] is verdict and code == (0 if verdict else 1)
    doc = json.loads(run(files, "sim", "--json", "--witness", "--sig", "%S.sig", "w", "0")[1])
    assert doc == {"command": "sim", "verdict": True, "witness": {"pairs": [["w", "0"]]}}


def test_lts_outputs(files):
    code, out, _ = run(files, "encode0", "--sig", "%B.sig", "@%fig.json")
    doc = json.loads(out)
    assert code == 0 and doc["states"] == ["X", "Y", "Z", "u"] and len(doc["edges"]) == 11
    code, out, _ = run(files, "encode", "--sig", "%B.sig", "@%fig.json")
    assert ["Y", "c^r", "X"] in json.loads(out)["edges"]
    code, out, _ = run(files, "lts", "--sig", "%S.sig", "a.b.0")
    assert json.loads(out) == {"states": ["0", "a.b.0", "b.0"], "initial": "a.b.0", "edges": [["a.b.0", "a", "b.0"], ["b.0", "b", "0"]]}


def test_figures_are_written_next_to_the_output(files):
    fig = files / "fig1.png"
    code, out, _ = run(files, "encode0", "--json", "--sig", "%B.sig", "@%fig.json", "--figure", str(fig))
    assert code == 0 and json.loads(out)["figure"] == str(fig)
    assert fig.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_explain_and_stats(files):
    out = run(files, "check", "--explain", "--sig", "%S.sig", "b.0", "[b]<a>tt")[1]
    assert out.splitlines()[1:] == ["b.0 |= [b]<a>tt : false", "  0 |= <a>tt : false"]
    out = run(files, "snf", "--stats", "--sig", "%S.sig", "<a>(<a>tt | [b]ff)")[1]
    assert out.splitlines()[1:] == ["completed_boxes: 3", "depth: 2", "disjuncts: 2"]


@pytest.mark.parametrize(
    "argv, needle",
    [
        (("sim", "--sig", "%S.sig", "a.(", "0"), "ParseError"),
        (("sim", "w", "0"), "--sig FILE is required"),
        (("sim", "--sig", "%missing.sig", "w", "0"), "cannot read signature file"),
        (("check", "--sig", "%S.sig", "0", "<b>tt"), "ModalityMismatch"),
        (("charform", "--sig", "%B.sig", "c.0"), "SignatureMismatch"),
        (("encode", "--sig", "%B.sig", "c.w"), "OmegaInBivariantTerm"),
        (("bogus",), "invalid choice"),
    ],
)
def test_errors_exit_2_with_a_diagnostic(files, argv, needle):
    code, out, err = run(files, *argv)
    assert code == 2 and out == ""
    assert needle in err


def test_normal_form_explosion_exits_3(files, monkeypatch):
    monkeypatch.setenv("CCREP_MAX_SNF_DISJUNCTS", "1")
    code, _, err = run(files, "snf", "--sig", "%S.sig", "<a>tt | [b]ff")
    assert code == 3 and "SnfExplosion" in err


def test_output_is_deterministic(files):
    argv = ("represent", "--json", "--sig", "%S.sig", "<a>(<a>tt | [b]ff) | [b]<a>tt")
    assert run(files, *argv) == run(files, *argv)


def test_every_command_has_help():
    for cmd in COMMANDS:
        assert execute([cmd, "--help"])[0] == 0


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "ccrep", "sim", "--sig", str(files / "S.sig"), "w", "a.b.0"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "w <=cc a.b.0: yes\n"
