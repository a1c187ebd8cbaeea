import pytest

from partindex import checks, qseries, stats


def test_thm1_small():
    r = checks.check_thm1(3)
    assert r.ok
    assert [int(row["signed_eind"]) for row in r.details] == [1, 1, 1, 0]
    assert [int(row["coeff"]) for row in r.details] == [1, 1, 1, 0]
    assert checks.check_thm1(0).ok
    assert checks.check_thm1(40).ok


def test_conj1():
    for n in (0, 1, 50):
        r = checks.check_conj1(n)
        assert r.ok, r.render()
        assert any("NON-FALSIFICATION" in note for note in r.notes)
        assert any("n = 0 reported separately" in note for note in r.notes)


@pytest.mark.parametrize("name,d", [("P", 1), ("D", 1), ("Od", 1), ("Od", 2), ("Od", 3)])
def test_corollaries(name, d):
    r = checks.check_corollary(name, 30, d=d)
    assert r.ok, r.render()


def test_od1_matches_thm1_product():
    r = checks.check_corollary("Od", 30, d=1)
    assert any("equals the thm1 product coefficientwise: True" in note for note in r.notes)
    assert checks.check_corollary("D", 0).ok


def test_thm_cnk():
    assert checks.check_thm_cnk(0).ok
    r = checks.check_thm_cnk(2)
    assert r.ok
    assert r.body()["details"][2]["product_c"] == "(1, 1)"
    assert checks.check_thm_cnk(25).ok


def test_thm3():
    r = checks.check_thm3(6)
    assert r.ok
    assert [int(row["c"]) for row in r.details] == [1, 2, 5, 10, 20, 36, 65]
    assert checks.check_thm3(0).ok


def test_scans():
    assert checks.scan_nonneg(4, 200).ok
    assert checks.scan_nonneg(7, 0).ok
    assert checks.scan_nonneg(5, 500).ok
    r = checks.scan_monotone(4, 400)
    assert r.ok
    assert any("candidate N(4) = 82" in note for note in r.notes)
    assert [int(row["n"]) for row in r.details] == [4, 9, 22, 35, 39, 77, 81]
    assert checks.scan_monotone(6, 600).ok


def test_monotone_single_comparison():
    # m = max_n: one comparison [q^m] vs [q^0] = 1
    r = checks.scan_monotone(5, 5)
    s = qseries.expand_product("1/(q,-q4;q5)", 5)
    assert len(r.details) == (1 if s[5] < s[0] else 0)


def test_scan_rejects_small_modulus():
    with pytest.raises(ValueError):
        checks.scan_nonneg(3, 10)
    with pytest.raises(ValueError):
        checks.scan_monotone(4, 3)


@pytest.mark.parametrize("m", range(4, 13))
def test_brute_expansion_matches_series(m):
    assert checks.brute_nonneg_coefficients(m, 40) == list(qseries.expand_product(f"1/(q,-q{m - 1};q{m})", 40))


# -- failure reporting ----------------------------------------------------------------


def test_fail_carries_first_witness(monkeypatch):
    real = stats.signed_e_ind
    monkeypatch.setattr(stats, "signed_e_ind", lambda n: real(n) + (1 if n >= 5 else 0))
    r = checks.check_thm1(10)
    assert r.status == checks.FAIL
    assert r.witness["n"] == "5"
    assert r.witness["signed_eind"] == str(real(5) + 1)


def test_scan_failure_is_cross_checked(monkeypatch):
    real = qseries.expand_product

    def tampered(spec, order):
        s = real(spec, order)
        c = list(s.coeffs)
        c[7] = -1
        return qseries.TruncatedSeries(c, order)

    monkeypatch.setattr(qseries, "expand_product", tampered)
    r = checks.scan_nonneg(4, 30)
    assert r.status == checks.FAIL
    assert r.witness == {"n": "7", "coeff": "-1"}
    assert any("HIGH SEVERITY" in n for n in r.notes)
    assert any("agrees with series: False" in n for n in r.notes)


def test_error_status(monkeypatch):
    def boom(n):
        raise RuntimeError("resource limit")

    monkeypatch.setattr(stats, "signed_e_ind", boom)
    r = checks.check_thm1(3)
    assert r.status == checks.ERROR
    assert "resource limit" in r.notes[0]


def test_reports_are_deterministic():
    a, b = checks.check_corollary("P", 20), checks.check_corollary("P", 20)
    assert a.to_json() == b.to_json()
    assert "elapsed" not in a.to_json()
    assert "elapsed_s" in a.to_json(timing=True)


def test_report_numbers_are_strings():
    body = checks.check_thm1(3).body()
    for row in body["details"]:
        assert all(isinstance(v, str) for v in row.values())
