import subprocess
import sys

import pytest

from weyljacobi.cli import main
from weyljacobi.errors import ALL_ERRORS
from weyljacobi.serialize import dump, load, loads

from test_structure import synthetic_e8


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_phi_a1_file(tmp_path, capsys):
    out = tmp_path / "phi.jac"
    code, _, _ = run(capsys, "phi", "-R", "A1", "--q-order", "5", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "lattice=A1 weight=-1 index=2 trunc24=120 character=det"
    assert lines[1:3] == ["0 -1 -1 1", "0 1 1 1"]
    assert lines[3:7] == ["24 -3 1 1", "24 -1 -3 1", "24 1 3 1", "24 3 -1 1"]


def test_outputs_are_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    run(capsys, "phi", "-R", "B2", "--q-order", "2", "--out", str(a))
    run(capsys, "phi", "-R", "B2", "--q-order", "2", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_verify_free_b2(capsys):
    code, out, _ = run(capsys, "verify-free", "-R", "B2")
    assert code == 0
    assert "scalar 864" in out and out.rstrip().endswith("status certified")


def test_generators_jacobian_and_verify_from_files(tmp_path, capsys):
    d = tmp_path / "gens"
    assert run(capsys, "generators", "-R", "A1", "--q-order", "3", "--out", str(d))[0] == 0
    files = sorted(str(p) for p in d.iterdir())
    assert len(files) == 2
    jac = tmp_path / "J.jac"
    assert run(capsys, "jacobian", *files, "--out", str(jac))[0] == 0
    J = load(jac)
    assert (J.weight, J.index, J.character) == (-1, 2, "det")
    code, out, _ = run(capsys, "verify-free", "-R", "A1", *files)
    assert code == 0 and "scalar 12" in out


def test_decompose_command(tmp_path, capsys):
    phi = tmp_path / "phi.jac"
    run(capsys, "phi", "-R", "A1", "--q-order", "3", "--out", str(phi))
    sq = load(phi) ** 2
    dump(sq, tmp_path / "sq.jac")
    code, out, _ = run(capsys, "decompose", str(tmp_path / "sq.jac"), "-R", "A1", "--q-order", "3")
    assert code == 0
    assert "term X1^3 X2^1 : (1/432)" in out and "round_trip ok" in out


def test_check_reports_corruption(tmp_path, capsys):
    gens = tmp_path / "g"
    run(capsys, "generators", "-R", "A1", "--q-order", "3", "--out", str(gens))
    src = gens / "A1_X1.jac"
    code, out, _ = run(capsys, "check", str(src))
    assert code == 0 and "elliptic: PASS" in out
    lines = src.read_text().splitlines()
    i = lines.index("24 1 -64 1")
    lines[i] = "24 1 -63 1"
    bad = tmp_path / "bad.jac"
    bad.write_text("\n".join(lines) + "\n")
    code, out, err = run(capsys, "check", str(bad))
    assert code == 20
    assert "elliptic: FAIL" in out and "violation" in out
    assert err.startswith("error: ValidationFailed:")


def test_catalog_single(capsys):
    code, out, _ = run(capsys, "catalog", "-R", "F", "--rank", "4")
    assert code == 0 and "type=F4" in out and "FAIL" not in out


def test_e8_command(tmp_path, capsys):
    files = []
    for j, f in enumerate(synthetic_e8()):
        p = tmp_path / f"e8_{j}.jac"
        dump(f, p)
        files.append(str(p))
    code, out, _ = run(capsys, "e8", *files)
    assert code == 0
    assert "index_sum 30 phi_index 30" in out and "g=172" in out
    files[0], files[1] = files[1], files[1]
    code, _, err = run(capsys, "e8", *files)
    assert code == 16 and "SignatureMismatch" in err


@pytest.mark.parametrize(
    "argv,code,category",
    [
        (["phi", "-R", "E9"], 4, "UnknownRootSystem"),
        (["phi", "-R", "A1", "--q-order", "0"], 2, "ParseError"),
        (["phi", "-R", "A1", "--max-terms", "0"], 2, "ParseError"),
        (["phi", "-R", "F4", "--max-terms", "50"], 17, "ResourceCapExceeded"),
        (["verify-free", "-R", "E8"], 18, "NotApplicable"),
        (["phi"], 2, "ParseError"),
    ],
)
def test_error_categories(argv, code, category, capsys):
    c, _, err = run(capsys, *argv)
    assert c == code
    assert err.startswith(f"error: {category}:")


def test_parse_error_from_file(tmp_path, capsys):
    p = tmp_path / "x.jac"
    p.write_text("garbage\n")
    c, _, err = run(capsys, "check", str(p))
    assert c == 2 and "ParseError" in err


def test_error_taxonomy_is_stable():
    cats = {e.category: e.exit_code for e in ALL_ERRORS}
    assert cats["NotDivisible"] == 10 and cats["ZeroJacobian"] == 11
    assert cats["ParseError"] == 2 and cats["ResourceCapExceeded"] == 17
    assert len(cats) == len(ALL_ERRORS)


def test_cache_directory(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("WEYLJACOBI_CACHE", str(tmp_path / "cache"))
    c1, out1, _ = run(capsys, "phi", "-R", "A2", "--q-order", "2")
    assert (tmp_path / "cache" / "phi_A2_48.jac").exists()
    c2, out2, _ = run(capsys, "phi", "-R", "A2", "--q-order", "2")
    assert c1 == c2 == 0 and out1 == out2
    assert loads(out1).index == 3


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "weyljacobi", "phi", "-R", "A1", "--q-order", "1"], capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout.splitlines()[0] == "lattice=A1 weight=-1 index=2 trunc24=24 character=det"
