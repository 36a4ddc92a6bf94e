import json

import pytest

from kneadlab.verify import CASES, INCONCLUSIVE, PASS, run_case


@pytest.fixture(scope="module")
def reports():
    cache = {}

    def get(case, **params):
        key = (case, tuple(sorted(params.items())))
        if key not in cache:
            cache[key] = run_case(case, **params)
        return cache[key]

    return get


@pytest.mark.parametrize("case", CASES)
def test_every_claim_passes(reports, case):
    report = reports(case)
    failed = [(c.description, c.verdict, c.witness) for c in report.claims if c.verdict != PASS]
    assert failed == []
    assert report.passed


@pytest.mark.parametrize("k", [2, 4])
def test_10k_parameter(reports, k):
    report = reports("10k", k=k)
    assert report.passed and report.params == {"k": k}
    assert report.claims[0].witness == {"order": 2 ** k}


def test_110_table_row(reports):
    table = next(c for c in reports("110").claims if c.description.startswith("production / weight table"))
    assert table.witness["bab"] == ("(1, ata)", 4, 3)


def test_0110_symmetric_variant_checked(reports):
    report = reports("0110")
    forced = {c.description: c.witness for c in report.claims if c.description.startswith("every word equal to")}
    perms = forced["every word equal to cbacb (length <= 15) uses each letter at least as often"]
    assert {"cbacb", "cbcab"} <= set(perms["equal_permutations"])
    assert {"abab", "baba"} <= set(forced["every word equal to baba (length <= 12) uses each letter at least as often"]
                                   ["equal_permutations"])
    cert = next(c for c in report.claims if "weight(a) <= 0" in c.description)
    assert all(gap == {"a": -1} for gap in cert.witness["lhs_minus_rhs"].values())


def test_unknown_case():
    with pytest.raises(ValueError):
        run_case("0101")


def test_budget_exhaustion_is_inconclusive(monkeypatch):
    monkeypatch.setenv("KNEADLAB_CAP_STEPS", "3")
    report = run_case("0110")
    assert not report.passed
    assert {c.verdict for c in report.claims} == {INCONCLUSIVE}


def test_report_rendering(reports):
    report = reports("10k", k=2)
    d = json.loads(report.to_json())
    assert d["schema"] == 1 and d["case"] == "10k" and d["passed"]
    text = report.to_text()
    assert text.startswith("case 10k") and text.rstrip().endswith("result: PASS")
    assert report.to_json() == run_case("10k", k=2).to_json()
