import pytest

from ffiwa.bounds import SupersingularLocalDatum
from ffiwa.exceptions import MissingLocalData, TooLarge
from ffiwa.growth import (
    AuditScenario,
    LambdaQuotientSpec,
    PlaceTag,
    delta_aggregate,
    jordan_identities,
    lambda_quotient_dim,
    prank_growth_check,
    theorem_c_audit,
)


def test_lambda_quotient_examples():
    assert lambda_quotient_dim(LambdaQuotientSpec(2, 1, 3, {})) == 8
    assert lambda_quotient_dim(LambdaQuotientSpec(2, 1, 3, {(1,): 1})) == 1
    # unit f kills the quotient
    assert lambda_quotient_dim(LambdaQuotientSpec(2, 1, 2, {(0,): 1, (1,): 1})) == 0
    # d = 2: f = X1 + X2 grows like p^n
    dims = [
        lambda_quotient_dim(LambdaQuotientSpec(2, 2, n, {(1, 0): 1, (0, 1): 1}))
        for n in (1, 2, 3)
    ]
    assert dims == [2, 4, 8]
    with pytest.raises(TooLarge):
        LambdaQuotientSpec(2, 3, 1, {})
    with pytest.raises(TooLarge):
        LambdaQuotientSpec(2, 1, 6, {})


def test_prank_growth():
    r = prank_growth_check(2, {(1,): 1}, 1, 2, range(1, 5))
    assert [lv["deviation"] for lv in r["levels"]] == [1, 1, 1, 1]
    assert r["C"] <= 1
    r = prank_growth_check(0, {(2,): 1}, 1, 3, range(1, 4))
    assert all(lv["log_size"] == 2 for lv in r["levels"])
    r2 = prank_growth_check(1, {(1, 1): 1}, 2, 2, range(1, 4))
    assert all(lv["log_size"] >= 4**lv["n"] for lv in r2["levels"])
    assert r2["C"] <= 8


def test_jordan_identities():
    for p in (2, 3, 5, 7):
        assert jordan_identities(p, trials=120, seed=3)["pass"]
    with pytest.raises(ValueError):
        jordan_identities(11, trials=1)


def test_delta_aggregate_rules():
    datum = SupersingularLocalDatum(2, 1, 1, 3)
    tags = [
        PlaceTag("v0", "supersingular", True, True, datum),
        PlaceTag("v1", "multiplicative", False, True),
        PlaceTag("w", "good_ordinary", True, True),
        PlaceTag("u", "additive", False, True),
        PlaceTag("x", "supersingular", False, False),
    ]
    r = delta_aggregate(tags)
    assert r["delta_interval"] == [1, 2]
    rules = {d["place"]: d["rule"] for d in r["places"]}
    assert rules["v1"] == "ordinary" and rules["w"] == "ordinary"
    assert rules["u"] == "unramified" and rules["x"] == "good-unramified"
    with pytest.raises(MissingLocalData):
        delta_aggregate([PlaceTag("bad", "supersingular", True, True, None)])
    with pytest.raises(MissingLocalData):
        delta_aggregate([PlaceTag("bad", "additive", True, True)])


def test_audits_reproduce_recorded_deductions():
    # vanishing case
    r = theorem_c_audit(AuditScenario(2, 0, 0, (0, 0)))
    assert r["mu_Lprime"] == 0 and r["m_Lprime_set"] == [0]
    # the lambda = 3 layer: dag = delta, m' = dag, two invariant shapes
    r = theorem_c_audit(AuditScenario(2, 0, 0, (1, 2), mu_Lprime=2))
    assert r["dag_set"] == [1, 2] and r["m_Lprime_set"] == [1, 2]
    assert set(r["elementary_invariants"]) == {"p^2", "p,p"}
    # the Frobenius-twist tower over the lambda = 3 layer
    r = theorem_c_audit(AuditScenario(2, 1, 1, (1, 2), mu_Lprime=4, m_Lprime=2))
    assert r["dag_set"] == [1, 2]
    # infeasible data is flagged, not raised
    r = theorem_c_audit(AuditScenario(2, 0, 0, (0, 0), mu_Lprime=5, m_Lprime=3))
    assert r["feasible"] is False
    # infinite mu disables the finiteness clause
    r = theorem_c_audit(AuditScenario(2, 0, 0, (2, 2), mu_Lprime="infinity"))
    assert r["feasible"] and r["mu_Lprime"] == "infinity"
    # assume_mu_finite forces dag >= delta without a value
    r = theorem_c_audit(AuditScenario(3, 0, 0, (1, 2), assume_mu_finite=True))
    assert r["dag_set"] == [1, 2]
