import pytest
from hypothesis import given, strategies as st

from hermring.eisenlift import NeedsMoreTermsError
from hermring.lattice import HermitianIndex as H, SiegelIndex as T, enumerate_hermitian
from hermring.series import HermitianSeries, NotPIntegralError, SiegelSeries
from hermring.sturm import (
    ADVISORY,
    HERMITIAN_4K,
    HERMITIAN_P5,
    SIEGEL,
    CongruenceVerdict,
    InternalConsistencyError,
    check_congruence_hermitian,
    check_congruence_siegel,
    check_vanishing_hermitian,
    falsifier_harness,
    hermitian_regime,
    hermitian_sturm_bound,
    siegel_sturm_bound,
    weight_monomials,
)


def test_bounds():
    assert hermitian_sturm_bound(16) == 2
    assert hermitian_sturm_bound(84) == 10
    assert hermitian_sturm_bound(4) == 0
    assert siegel_sturm_bound(10) == 1
    with pytest.raises(ValueError):
        hermitian_sturm_bound(-1)
    with pytest.raises(ValueError):
        siegel_sturm_bound(-2)


@given(st.integers(0, 10_000))
def test_hermitian_bound_dominates_siegel(k):
    assert hermitian_sturm_bound(k) >= siegel_sturm_bound(k)


def test_regimes():
    assert hermitian_regime(16, 2) == HERMITIAN_4K
    assert hermitian_regime(14, 5) == HERMITIAN_P5
    assert hermitian_regime(14, 3) == ADVISORY
    assert hermitian_regime(13, 7) == ADVISORY


def test_multiple_of_p_passes(ledger3):
    for name, k in (("H12", 12), ("I16", 16), ("K18", 18)):
        v = check_congruence_hermitian(7 * ledger3[name], k, 7)
        assert v.passed and v.empirical_extension == "PASS" and not v.alarm and v.certified


def _naive_square_coefficient(F, target):
    # independent oracle: direct convolution over the stored support
    total = 0
    for a, x in F.items():
        b = H(target.m - a.m, target.r - a.r, target.s - a.s, target.n - a.n)
        if b.m >= 0 and b.n >= 0 and b.four_det() >= 0:
            total += x * F[b]
    return total


def test_h8_squared_mod_2(ledger3):
    F = ledger3["H8"] ** 2
    v = check_congruence_hermitian(F, 16, 2)
    assert v.verdict == "FAIL" and v.theorem == HERMITIAN_4K
    assert v.witness == (2, -2, -2, 2)
    assert _naive_square_coefficient(ledger3["H8"], H(2, 2, 2, 2)) == F[H(2, 2, 2, 2)] == 1
    # nothing odd appears earlier in the scan order
    low = [h for h in enumerate_hermitian(2) if F[h] % 2]
    assert low[0] == H(*v.witness)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_lift_identity_congruence(ledger3, p):
    F = ledger3["I16"] - ledger3["Lift(h15)"] + 56 * ledger3["H8"] ** 2
    v = check_congruence_hermitian(F, 16, p)
    assert v.passed and v.empirical_extension == "PASS"


def test_vanishing_examples(ledger3):
    cusp = ledger3["E10"] - ledger3["E4"] * ledger3["E6"]
    assert check_vanishing_hermitian(cusp - cusp, 10).passed
    v = check_vanishing_hermitian(ledger3["H8"], 8)
    assert not v.passed and v.bound == 1
    assert v.witness[0] == v.witness[3] == 1 and v.value == ledger3["H8"][H(*v.witness)]
    assert check_vanishing_hermitian(ledger3["K14"] - ledger3["Lift(h13)"], 14).passed
    assert "vanishes identically" in str(check_vanishing_hermitian(HermitianSeries.zero(1), 8))


def test_siegel_examples(igusa3):
    assert check_congruence_siegel(5 * igusa3["X12"], 12, 5).passed
    v = check_congruence_siegel(igusa3["X10"], 10, 2)
    assert v.verdict == "FAIL" and v.witness == (1, -1, 1) and v.theorem == SIEGEL
    assert v.witness_value == igusa3["X10"][T(1, 1, 1)] == 1
    assert check_congruence_siegel(SiegelSeries.zero(2), 20, 3).passed


def test_needs_more_terms(ledger3):
    with pytest.raises(NeedsMoreTermsError):
        check_congruence_hermitian(ledger3["H12"].truncate(1), 84, 2)
    with pytest.raises(NeedsMoreTermsError):
        check_vanishing_hermitian(HermitianSeries.zero(1), 40)


def test_not_p_integral(ledger3):
    with pytest.raises(NotPIntegralError):
        check_congruence_hermitian(ledger3["H8"] / 3, 8, 3)


def test_verdict_invariants():
    with pytest.raises(ValueError):
        CongruenceVerdict(HERMITIAN_4K, 8, 2, 1, "FAIL")
    v = CongruenceVerdict(HERMITIAN_4K, 8, 2, 1, "PASS", empirical_extension="FAIL",
                          extension_witness=(2, 0, 0, 2), trunc=2)
    assert v.alarm
    assert CongruenceVerdict(ADVISORY, 14, 3, 1, "PASS").certified is False


def test_certificate_text(ledger3):
    cert = check_congruence_hermitian(ledger3["H8"] ** 2, 16, 2).certificate()
    assert cert.splitlines() == [
        "# congruence certificate",
        f"theorem={HERMITIAN_4K}",
        "weight=16",
        "prime=2",
        "bound=2",
        "trunc=3",
        "verdict=FAIL",
        "witness=(2,-2,-2,2)",
        "witness_value_mod_p=1",
        "empirical_extension=FAIL",
        "extension_witness=(2,-2,-2,2)",
    ]


def test_weight_monomials():
    w = {"A": 4, "B": 6}
    assert weight_monomials(w, 12) == [("B", "B"), ("A", "A", "A")]
    assert weight_monomials(w, 2) == []


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("k", [12, 16, 20])
def test_falsifier_harness(ledger3, p, k):
    report = falsifier_harness(ledger3, p, k, trials=50)
    assert report.violations == 0 and report.trials == 50
    assert report.monomials == {12: 6, 16: 10, 20: 17}[k]
    assert report.kernel_dimension >= 1
    assert report.line().startswith(f"falsifier p={p} k={k} PASS")


def test_falsifier_is_deterministic(ledger3):
    assert falsifier_harness(ledger3, 3, 12, trials=10) == falsifier_harness(ledger3, 3, 12, trials=10)


def test_falsifier_flags_violations(ledger3, monkeypatch):
    # a scan that ignores the bound must be caught as an internal inconsistency
    import hermring.sturm as sturm

    def broken(F, k, p):
        return CongruenceVerdict(HERMITIAN_4K, k, p, 0, "PASS", empirical_extension="FAIL",
                                 extension_witness=(1, 0, 0, 1), trunc=F.trunc)

    monkeypatch.setattr(sturm, "check_congruence_hermitian", broken)
    with pytest.raises(InternalConsistencyError):
        falsifier_harness(ledger3, 2, 12, trials=2)
