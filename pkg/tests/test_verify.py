import json

import pytest

from qso5.bquot import Params
from qso5.coeffq import RatQ
from qso5.verify import Check, VerifyReport, check_dda, check_hh1, run_verify

q = RatQ.q()


@pytest.fixture(scope="module")
def quick_report():
    return run_verify([(1, 1), (0, 1)], full=False)


def test_quick_report_passes(quick_report):
    assert quick_report.ok, [c.identity for c in quick_report.failures()]


def test_report_is_sorted(quick_report):
    names = [c.identity for c in quick_report.checks]
    assert names == sorted(names)


def test_report_covers_every_family(quick_report):
    prefixes = {c.identity.split(":")[0].split(" ")[0] for c in quick_report.checks}
    for fam in ("serre", "central", "constants", "dda", "lemma", "gwa", "quotient",
                "center", "basis", "R", "inner", "hh1"):
        assert fam in prefixes, fam


def test_inner_only_when_both_params_nonzero(quick_report):
    inner = [c.identity for c in quick_report.checks if c.identity.startswith("inner")]
    assert inner and all("alpha=1, beta=1" in n for n in inner)


def test_report_is_deterministic(quick_report):
    again = run_verify([(1, 1), (0, 1)], full=False)
    assert json.dumps(again.to_obj()) == json.dumps(quick_report.to_obj())


def test_typo_entry_recorded():
    rep = VerifyReport()
    check_dda(rep)
    (entry,) = [c for c in rep.checks if "E_{3,4}" in c.identity]
    assert entry.passed and "typo" in entry.detail


def test_failed_check_serializes_residual():
    c = Check("x", "anchor", False, q + 1)
    obj = c.to_obj()
    assert obj["status"] == "fail"
    assert obj["residual"] == {"terms": [{"exp": [], "coeff": {"num": "q + 1", "den": "1"}}]}
    assert Check("x", "anchor", True).to_obj() == {"identity": "x", "anchor": "anchor", "status": "pass"}


def test_report_add_infers_status():
    rep = VerifyReport()
    rep.add("zero", "a", RatQ())
    rep.add("nonzero", "a", RatQ.from_int(3))
    rep.add("flag", "a", passed=True)
    assert [c.passed for c in rep.checks] == [True, False, True]
    assert not rep.ok and [c.identity for c in rep.failures()] == ["nonzero"]


def test_hh1_check_flags_wrong_answer(monkeypatch):
    import qso5.verify as verify_mod
    from qso5.deriv import hh1_details as real

    def shifted(B, N):
        est = real(B, N)
        est.dim_outer += 1
        return est

    monkeypatch.setattr(verify_mod, "hh1_details", shifted)
    rep = VerifyReport()
    check_hh1(rep, Params(1, 1), 2)
    assert not rep.ok
