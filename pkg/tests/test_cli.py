from __future__ import annotations

import pytest

from structurable import albert as al
from structurable import brown as br
from structurable import flags as fl
from structurable import ideals as idl
from structurable.cli import CliConfig, UsageError, main
from structurable.linalg import Subspace, format_subspace, parse_subspace
from structurable.scalars import format_scalar


@pytest.fixture
def write(tmp_path):
    def put(name, content):
        p = tmp_path / name
        p.write_text(content if isinstance(content, str) else format_subspace(content))
        return str(p)
    return put


def vector_text(v):
    return " ".join(format_scalar(x) for x in v.tolist()) + "\n"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_albert(capsys, write):
    x = write("x", vector_text(al.E1 + al.E2))
    code, out, _ = run(capsys, "eval", "sharp", x)
    assert code == 0
    assert out.split() == [format_scalar(v) for v in al.E0.tolist()]
    assert run(capsys, "eval", "norm", write("one", vector_text(al.ONE)))[1].strip() == "1"
    assert run(capsys, "eval", "trace", x)[1].strip() == "2"


def test_eval_brown(capsys, write):
    one = write("one", vector_text(br.diag(1, 1)))
    assert run(capsys, "eval", "q", one, one, one, one)[1].strip() == "12"
    assert run(capsys, "eval", "nu", one)[1].strip() == "1"
    e = write("e", vector_text(br.diag(1, 0)))
    assert run(capsys, "eval", "b", e, write("f", vector_text(br.diag(0, 1))))[1].strip() == "1"


def test_global_flags_on_either_side(capsys, write):
    one = write("one", vector_text(br.diag(1, 1)))
    before = run(capsys, "--zeta", "2", "eval", "nu", one)
    after = run(capsys, "eval", "nu", one, "--zeta", "2")
    assert before == after
    assert before[0] == 0


def test_ideal_commands(capsys, write):
    split = br.split_context(1)
    I = write("I", idl.hyperline_ideal(split, al.E0))
    code, out, _ = run(capsys, "ideal", "check", I)
    assert (code, out.strip()) == (0, "inner=true singular=false dim=12")
    code, out, _ = run(capsys, "ideal", "classify", I)
    assert (code, out.strip()) == (0, "e7 7")
    seed = write("seed", Subspace.span([br.diag(1, 0)], br.DIM))
    code, out, _ = run(capsys, "ideal", "closure", seed)
    assert code == 0 and parse_subspace(out).dim == 1


def test_ideal_check_reports_witness(capsys, write):
    code, out, _ = run(capsys, "ideal", "check", write("S", Subspace.span([br.diag(1, 1)], br.DIM)))
    assert code == 1
    assert out.splitlines()[1].startswith("witness ")


def test_classify_and_incidence(capsys, write):
    V = dict(fl.canonical_spaces("e6"))
    a, b = write("a", V["V4"]), write("b", V["V5"])
    assert run(capsys, "classify-space", "--geometry", "e6", a)[:2] == (0, "e6 4\n")
    assert run(capsys, "incidence", "--geometry", "e6", a, b)[:2] == (0, "e6 4 5 incident=true\n")
    code, out, _ = run(capsys, "--strict-paper-incidence", "incidence", "--geometry", "e6", a, b)
    assert (code, out) == (1, "e6 4 5 incident=false\n")
    bad = write("bad", Subspace.span([al.ONE], 27))
    code, out, _ = run(capsys, "incidence", "--geometry", "e6", a, bad)
    assert code == 1 and out.startswith("unclassified")


def test_quadratic_classification(capsys, write):
    I = write("I6", idl.i6_ideal(br.quadratic_context(2)))
    assert run(capsys, "--quad-d", "2", "ideal", "classify", I)[:2] == (0, "e7 5\n")


def test_dual_round_trip(capsys, write):
    V = dict(fl.canonical_spaces("e6"))
    code, out, _ = run(capsys, "dual", write("V2", V["V2"]))
    assert code == 0
    assert parse_subspace(out) == al.albert_context().duality_map(V["V2"])


@pytest.mark.parametrize("argv", [
    [],
    ["eval", "sharp"],
    ["frobnicate"],
    ["--zeta", "0", "eval", "nu", "missing"],
    ["--quad-d", "4", "verify"],
    ["--gamma", "1,2", "verify"],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == 2


def test_bad_inputs(capsys, write):
    assert run(capsys, "eval", "nu", write("short", "1 2 3\n"))[0] == 2
    assert run(capsys, "eval", "nu", write("junk", "x " * 56))[0] == 2
    assert run(capsys, "eval", "nu", "/nonexistent/file")[0] == 2
    assert run(capsys, "ideal", "check", write("S", Subspace.span([al.E0], 27)))[0] == 2


def test_config_validation():
    with pytest.raises(UsageError):
        CliConfig(gamma=(1, 0, 1))
    assert CliConfig(quad_d=2).brown().variant == "quadratic"


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "duality")
    assert code == 0
    assert all(line.startswith("ok ") for line in out.splitlines())
