"""Acceptance gate: one test per criterion, each printing a pass/fail line
with its runtime against the stated budget.

Two criteria contain recorded reference values that independent computation
refutes; those sub-items are marked as strict expected failures with the
analysis pinned, and the honest status is printed next to the passing
computed-truth assertions.  Run with ``pytest -v -s``.
"""

import time
from fractions import Fraction

import pytest

from ffiwa import suites
from ffiwa.artinschreier import disc_transitivity_check
from ffiwa.bounds import SupersingularLocalDatum, bounds, datum_grid
from ffiwa.curves import WeierstrassModel, deuring_model, infer_nv, supersingular_places
from ffiwa.fields import GF, RationalFunc, parse_rational
from ffiwa.growth import AuditScenario, jordan_identities, prank_growth_check, theorem_c_audit
from ffiwa.localunits import norm_group_comparison
from ffiwa.lseries import l_batch_char2, l_polynomial, mu_report


def _line(num, status, elapsed, budget, desc):
    print(f"criterion {num}: {status} ({elapsed:.3f}s / budget {budget}s) - {desc}")


# -- criterion 1 -------------------------------------------------------------

def test_criterion_1_theorem_a_goldens():
    golden = [
        ((2, 1, 1, 1), (0, 0)),
        ((2, 1, 1, 3), (1, 2)),
        ((3, 2, 1, 2), (1, 2)),
        ((5, 2, 2, 2), (1, 2)),
    ]
    bounds(SupersingularLocalDatum(2, 1, 1, 1))  # warm the import path
    worst = 0.0
    for args, expected in golden:
        t0 = time.perf_counter()
        b = bounds(SupersingularLocalDatum(*args))
        dt = time.perf_counter() - t0
        worst = max(worst, dt)
        assert (b.b_lower, b.b_upper) == expected, args
    _line(1, "PASS", worst, 0.001, "four golden bound pairs, slowest single call")
    assert worst < 0.001


# -- criterion 2 -------------------------------------------------------------

def test_criterion_2_structural_grid():
    t0 = time.perf_counter()
    n = 0
    for d in datum_grid():
        b = bounds(d)  # internal structural assertions run here
        assert b.upper >= b.lower
        n += 1
    dt = time.perf_counter() - t0
    _line(2, "PASS", dt, 1, f"{n} grid data, zero structural violations")
    assert dt < 1


# -- criterion 3 -------------------------------------------------------------

def test_criterion_3_unit_filtration_oracle():
    t0 = time.perf_counter()
    report = suites.units_suite()
    eig = [c for c in report["checks"] if c["lemma"] == "eigenspace-dimension"]
    dt = time.perf_counter() - t0
    ok = all(c["pass"] for c in eig) and len(eig) >= 40
    _line(3, "PASS" if ok else "FAIL", dt, 60,
          f"{len(eig)} brute-vs-formula eigenspace instances, exact equality")
    assert ok and dt < 60


# -- criterion 4 -------------------------------------------------------------

GAP_ROWS = {(2, 2, 1, 2), (2, 2, 3, 2)}


def test_criterion_4_norm_group_grid():
    t0 = time.perf_counter()
    rows = suites.NORM_GRID
    literal_fail = []
    for (p, q, lam, n_w) in rows:
        r = norm_group_comparison(p, q, lam, n_w)
        assert r["pass"], r  # membership mod base p-th powers is exact everywhere
        if not r["literal_pass"]:
            literal_fail.append((p, q, lam, n_w))
            # mismatching cosets are exactly base p-th powers: x supported on
            # p-divisible grades, declared non-members by the raw valuation bound
            for mm in r["literal_mismatches"]:
                assert mm["brute"] and not mm["criterion"]
                support = [i for i, c in enumerate(mm["x"]) if c and i > 0]
                assert support[0] % p == 0
    dt = time.perf_counter() - t0
    _line(4, "PASS", dt, 120,
          f"{len(rows)} grid rows; brute force equals the criterion modulo base p-th powers")
    if literal_fail:
        _line(4, "FAIL (literal form, as stated)", dt, 120,
              f"raw valuation criterion misses exact p-th powers on rows {literal_fail}; "
              "see decisions ledger")
    assert set(literal_fail) == GAP_ROWS
    assert dt < 120


@pytest.mark.xfail(
    strict=True,
    reason="the literal valuation criterion is provably incomplete at p-divisible "
    "grades: 1 + u^2 = (1 + u)^2 is a norm-side member with ord 2 < 3.5; the "
    "statement holds modulo base p-th powers, which is the form the bounds use",
)
def test_criterion_4_literal_statement_on_gap_rows():
    for (p, q, lam, n_w) in sorted(GAP_ROWS):
        r = norm_group_comparison(p, q, lam, n_w)
        assert r["literal_pass"]


# -- criterion 5 -------------------------------------------------------------

def test_criterion_5_as_reduction_randomized():
    t0 = time.perf_counter()
    report = suites.as_suite(seed=0, samples=500)
    dt = time.perf_counter() - t0
    _line(5, "PASS" if report["pass"] else "FAIL", dt, 10,
          "500 random classes per characteristic: reduced order prime to p, "
          "idempotent, shift-invariant")
    assert report["pass"] and dt < 10


# -- criterion 6 -------------------------------------------------------------

def test_criterion_6_conductor_change_cross_check():
    t0 = time.perf_counter()
    n = 0
    for p in (2, 3, 5):
        for f_chi in range(2, 13):
            for f_w in range(2, 13):
                disc_transitivity_check(f_w, f_chi, p)  # raises on mismatch
                n += 1
    dt = time.perf_counter() - t0
    _line(6, "PASS", dt, 1, f"{n} (f_chi, f_w, p) combinations, both routes equal")
    assert dt < 1


# -- criterion 7 -------------------------------------------------------------

def test_criterion_7_l_function_goldens():
    t0 = time.perf_counter()
    F2 = GF(2)
    t = RationalFunc.t(F2)
    one, zero = RationalFunc.one(F2), RationalFunc.zero(F2)
    repA = l_polynomial(deuring_model(t), window=7)
    assert repA.lpoly.coeffs == (1,)
    a2 = parse_rational(F2, "t^2/(t+1)^3")
    a6 = parse_rational(F2, "t^5*(t^2+t+1)/(t+1)^12")
    B = WeierstrassModel(one, a2, zero, zero, a6)
    b = parse_rational(F2, "t^5 + 1/t")
    c = parse_rational(F2, "1")
    reps = l_batch_char2(
        B,
        {"B": None, "Bb": b, "Bc": c, "Bbc": b + c},
        window=18,
        overrides={"t + 1": "good_solve"},
    )
    assert reps["B"].lpoly.coeffs == (1,)
    assert reps["Bc"].lpoly.coeffs == (1,)
    assert reps["Bb"].lpoly.l_value(1) == Fraction(1, 4)
    assert reps["Bbc"].lpoly.l_value(1) == Fraction(4)
    dt = time.perf_counter() - t0
    _line(7, "PASS", dt, 300,
          "L = 1 twice, exact twist values 1/4 and 4 at window 18 <= 24 "
          "(tail and root-modulus checks internal)")
    assert dt < 300


# -- criterion 8 -------------------------------------------------------------

def test_criterion_8_mu_reproduction():
    t0 = time.perf_counter()
    F2 = GF(2)
    t = RationalFunc.t(F2)
    D1 = parse_rational(F2, "1/t")
    D2 = parse_rational(F2, "1/t^3 + 1/t")
    reps = l_batch_char2(deuring_model(t), {"base": None, "D1": D1, "D2": D2}, window=14)
    mus = (
        mu_report(12, 0, reps["base"].lpoly, 2).mu,
        mu_report(24, 0, reps["base"].lpoly.mul(reps["D1"].lpoly), 2).mu,
        mu_report(24, 1, reps["base"].lpoly.mul(reps["D2"].lpoly), 2).mu,
    )
    assert mus == (0, 0, 2)
    reps2 = l_batch_char2(deuring_model(t * t), {"base": None, "D1": D1, "D2": D2}, window=14)
    mus2 = (
        mu_report(24, 0, reps2["base"].lpoly, 2).mu,
        mu_report(48, 0, reps2["base"].lpoly.mul(reps2["D1"].lpoly), 2).mu,
        mu_report(48, 1, reps2["base"].lpoly.mul(reps2["D2"].lpoly), 2).mu,
    )
    assert mus2 == (1, 2, 4)
    dt = time.perf_counter() - t0
    _line(8, "PASS", dt, 600,
          f"mu = {mus} over the three layers; Frobenius twist mu = {mus2}")
    assert dt < 600


# -- criterion 9 -------------------------------------------------------------

def test_criterion_9_supersingular_detection():
    t0 = time.perf_counter()
    F2 = GF(2)
    A = deuring_model(RationalFunc.t(F2))
    ss = supersingular_places(A)
    assert [v.label() for v in ss["places"]] == ["t"]
    assert infer_nv(A, ss["places"], ss["deg_delta"])["solutions"] == [{"t": 1}]

    F3 = GF(3)
    t3 = RationalFunc.t(F3)
    z3 = RationalFunc.zero(F3)
    M3 = WeierstrassModel(z3, t3 * t3 - 1, z3, z3 - t3 * t3, z3)
    ss3 = supersingular_places(M3)
    assert [v.label() for v in ss3["places"]] == ["t + 1", "t + 2"]
    assert infer_nv(M3, ss3["places"], ss3["deg_delta"])["solutions"] == [
        {"t + 1": 1, "t + 2": 1}
    ]

    F5 = GF(5)
    t5 = RationalFunc.t(F5)
    z5 = RationalFunc.zero(F5)
    M5 = WeierstrassModel(z5, t5 * t5 - 1, z5, z5 - t5 * t5, z5)
    ss5 = supersingular_places(M5)
    computed5 = [v.label() for v in ss5["places"]]
    # twice-verified truth (direct counts and Hasse-polynomial factorization)
    assert computed5 == ["t^2 + t + 1", "t^2 + 4*t + 1"]
    nv5 = infer_nv(M5, ss5["places"], ss5["deg_delta"])
    assert nv5["solutions"] == [{"t^2 + t + 1": 1, "t^2 + 4*t + 1": 1}]
    dt = time.perf_counter() - t0
    _line(9, "PASS", dt, 30, "first two example families exact")
    _line(9, "FAIL (recorded p=5 locus, as stated)", dt, 30,
          f"recorded place t^2+3 is ordinary (trace -6 over GF(25)); computed locus "
          f"{computed5} with n_v = 1 each is verified by two independent methods")
    assert dt < 30


@pytest.mark.xfail(
    strict=True,
    reason="recorded p=5 supersingular locus {(t^2+3), n=2} is refuted by direct "
    "point counts (trace -6 at its roots) and by the Hasse-polynomial "
    "factorization t^4+t^2+1 = (t^2+t+1)(t^2+4t+1); see decisions ledger",
)
def test_criterion_9_recorded_p5_locus():
    F5 = GF(5)
    t5 = RationalFunc.t(F5)
    z5 = RationalFunc.zero(F5)
    M5 = WeierstrassModel(z5, t5 * t5 - 1, z5, z5 - t5 * t5, z5)
    ss5 = supersingular_places(M5)
    assert [v.label() for v in ss5["places"]] == ["t^2 + 3"]
    assert infer_nv(M5, ss5["places"], ss5["deg_delta"])["solutions"] == [{"t^2 + 3": 2}]


# -- criterion 10 ------------------------------------------------------------

def test_criterion_10_growth_oracles():
    t0 = time.perf_counter()
    for d in (1, 2):
        for p in (2, 3):
            f = {tuple([1] + [0] * (d - 1)): 1}
            r = prank_growth_check(1, f, d, p, range(1, 4))
            assert r["C"] <= 8, r
    total_modules = 0
    for p in (2, 3, 5, 7):
        rep = jordan_identities(p, trials=250, seed=0)
        assert rep["pass"]
        total_modules += rep["trials"]
    assert total_modules == 1000
    dt = time.perf_counter() - t0
    _line(10, "PASS", dt, 30,
          "growth deviations bounded by C <= 8; trace identity exact; "
          f"{total_modules} random modules satisfy the block inequalities")
    assert dt < 30


# -- criterion 11 ------------------------------------------------------------

def test_criterion_11_audits():
    t0 = time.perf_counter()
    r = theorem_c_audit(AuditScenario(2, 0, 0, (0, 0)))
    assert r["feasible"] and r["mu_Lprime"] == 0
    r = theorem_c_audit(AuditScenario(2, 0, 0, (1, 2), mu_Lprime=2))
    assert r["feasible"] and set(r["elementary_invariants"]) == {"p^2", "p,p"}
    r = theorem_c_audit(AuditScenario(2, 1, 1, (1, 2), mu_Lprime=4, m_Lprime=2))
    assert r["feasible"] and r["dag_set"] == [1, 2]
    r = theorem_c_audit(AuditScenario(2, 1, 1, (0, 0), m_Lprime=2))
    assert r["feasible"] and r["dag_set"] == [1]
    r = theorem_c_audit(AuditScenario(3, 0, 0, (1, 2), assume_mu_finite=True))
    assert r["feasible"] and r["dag_set"] == [1, 2] and max(r["m_Lprime_set"]) == 4
    r = theorem_c_audit(AuditScenario(3, 0, 0, (2, 4), assume_mu_finite=True))
    assert r["feasible"] and min(r["dag_set"]) == 2 and max(r["m_Lprime_set"]) == 8
    dt = time.perf_counter() - t0
    _line(11, "PASS", dt, 1, "every recorded scenario feasible, deduced sets reproduced")
    assert dt < 1
