import io
import json
import subprocess
import sys

import pytest

from qso5.cli import EX_DOMAIN, EX_FAIL, EX_OK, EX_SOFTWARE, EX_SPEC, EX_USAGE, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def spec_file(tmp_path):
    def write(obj):
        path = tmp_path / "spec.json"
        path.write_text(json.dumps(obj))
        return str(path)
    return write


def test_nf_so5():
    code, out, _ = call("nf", "--algebra", "so5", "E4*E1")
    assert code == EX_OK
    assert out == "q^2*E1*E4 - q^2*E2\n"


def test_nf_json():
    code, out, _ = call("nf", "--json", "E2*E1")
    assert code == EX_OK
    obj = json.loads(out)
    assert obj == {"terms": [{"exp": [1, 1, 0, 0], "coeff": {"num": "1", "den": "q^2"}}]}


def test_nf_quotients():
    code, out, _ = call("nf", "--algebra", "b", "--alpha", "1", "--beta", "1",
                        "e2*e4 + ((-(q^3+q))/(q^2-1))*e3")
    assert (code, out) == (EX_OK, "1\n")
    code, out, _ = call("nf", "--algebra", "r", "f2*e4")
    assert (code, out) == (EX_OK, "1\n")
    code, out, _ = call("nf", "--algebra", "so5[E4^-1]", "E4^-1*E3")
    assert (code, out) == (EX_OK, "q^2*E3*E4^-1\n")


@pytest.mark.parametrize("argv", [
    ("nf", "--algebra", "b", "--alpha", "1", "--beta", "0", "--beta", "0", "e1"),
    ("nf", "--algebra", "nope", "E1"),
    ("nf",),
    ("frobnicate",),
    ("nf", "E1 E2"),
    ("nf", "E9"),
    ("nf", "--algebra", "b", "--alpha", "1/(", "e1"),
    ("hh1", "--degree", "1"),
    ("verify", "--alpha", "1"),
])
def test_usage_errors(argv):
    code, _, err = call(*argv)
    assert code == EX_USAGE
    assert err


def test_domain_errors():
    assert call("nf", "--algebra", "r", "--beta", "0", "e1")[0] == EX_DOMAIN
    assert call("nf", "--algebra", "b", "--alpha", "0", "--beta", "0", "e1")[0] == EX_DOMAIN
    assert call("nf", "--algebra", "b", "e4^-1")[0] == EX_DOMAIN


def test_commute():
    code, out, _ = call("commute", "E2", "E4")
    assert (code, out) == (EX_OK, "(q^2 + 1)/q*E3\n")


def test_central():
    code, out, _ = call("central", "--algebra", "so5[E4^-1]")
    assert code == EX_OK
    assert out.count("central: yes") == 2


def test_dda():
    code, out, _ = call("dda", "--json")
    assert code == EX_OK
    obj = json.loads(out)
    assert obj["lambda"][2][3] == "1/q^2"
    assert all(i["status"] == "pass" for i in obj["identities"])
    assert "E_{3,4}" in obj["note"]


def test_gwa_commands(spec_file):
    code, out, _ = call("gwa", "nf", "y*x")
    assert (code, out) == (EX_OK, "q/(q^4 + 2*q^2 + 1)*h^2 + 1\n")
    path = spec_file({"Dh": "0", "Dx": "h*x - x*h", "Dy": "h*y - y*h"})
    code, out, _ = call("gwa", "decompose", "--spec", path, "--json")
    assert code == EX_OK
    obj = json.loads(out)
    assert obj["lambda"] == "0"
    assert obj["w"] == {"terms": [{"exp": [1, 0], "coeff": {"num": "1", "den": "1"}}]}
    path = spec_file({"Dh": "h", "Dx": "0", "Dy": "0"})
    assert call("gwa", "decompose", "--spec", path)[0] == EX_SPEC


def test_derivation_commands(spec_file):
    path = spec_file({"De1": "0", "De2": "e1*e2 - e2*e1", "De4": "e1*e4 - e4*e1"})
    code, out, _ = call("derivation", "check", "--spec", path)
    assert (code, out) == (EX_OK, "derivation: yes\n")
    code, out, _ = call("derivation", "innerize", "--spec", path)
    assert (code, out) == (EX_OK, "e1\n")
    bad = spec_file({"De1": "e1", "De2": "0", "De4": "0"})
    code, out, _ = call("derivation", "check", "--spec", bad)
    assert code == EX_SPEC and out.startswith("derivation: NO")
    assert call("derivation", "innerize", "--spec", bad)[0] == EX_SPEC
    assert call("derivation", "innerize", "--alpha", "0", "--spec", path)[0] == EX_DOMAIN


def test_derivation_spec_schema(spec_file, tmp_path):
    path = spec_file({"De1": "0", "De2": "0"})
    assert call("derivation", "check", "--spec", path)[0] == EX_USAGE
    assert call("derivation", "check", "--spec", str(tmp_path / "missing.json"))[0] == EX_USAGE


def test_not_inner_exit_code(spec_file, monkeypatch):
    import qso5.deriv as deriv_mod
    from qso5.errors import NotInner

    def boom(*a, **k):
        raise NotInner(lam=1)

    monkeypatch.setattr(deriv_mod, "innerize_full", boom)
    path = spec_file({"De1": "0", "De2": "0", "De4": "0"})
    assert call("derivation", "innerize", "--spec", path)[0] == EX_DOMAIN


def test_internal_error_exit_code(monkeypatch):
    import qso5.cli as cli_mod

    def broken(args, out):
        raise AssertionError("postcondition")

    monkeypatch.setitem(cli_mod.COMMANDS, "nf", broken)
    assert call("nf", "E1")[0] == EX_SOFTWARE


def test_hh1():
    code, out, _ = call("hh1", "--alpha", "0", "--beta", "1", "--degree", "2", "--json")
    assert code == EX_OK
    obj = json.loads(out)
    assert obj["hh1"] == 1 and "not an exact" in obj["note"]


def test_verify_single_pair():
    code, out, _ = call("verify", "--alpha", "1", "--beta", "1", "--quick", "--json")
    assert code == EX_OK
    report = json.loads(out)
    names = [e["identity"] for e in report]
    assert names == sorted(names)
    assert all(e["status"] == "pass" for e in report)
    assert all(set(e) <= {"identity", "anchor", "status", "residual", "detail"} for e in report)
    assert any("E_{3,4}" in e["identity"] for e in report)


def test_verify_failure_exit(monkeypatch):
    import qso5.verify as verify_mod
    real = verify_mod.check_serre

    def failing(rep):
        real(rep)
        rep.add("planted failure", "test", residual=verify_mod.RatQ.from_int(1))

    monkeypatch.setattr(verify_mod, "check_serre", failing)
    code, out, _ = call("verify", "--alpha", "1", "--beta", "1", "--quick", "--json")
    assert code == EX_FAIL
    bad = [e for e in json.loads(out) if e["status"] == "fail"]
    assert bad == [{"identity": "planted failure", "anchor": "test", "status": "fail",
                    "residual": {"terms": [{"exp": [], "coeff": {"num": "1", "den": "1"}}]}}]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qso5.cli", "nf", "E4*E1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "q^2*E1*E4 - q^2*E2\n"
    proc = subprocess.run([sys.executable, "-m", "qso5.cli", "nf", "--beta", "0", "--beta", "0", "e1"],
                          capture_output=True, text=True)
    assert proc.returncode == 64
