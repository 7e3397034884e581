import pytest

from ffiwa.bounds import (
    SupersingularLocalDatum,
    bounds,
    datum_grid,
    delta_v_bounds,
    flat_sharp_epsilon,
    phi_psi_diamond,
    report,
)
from ffiwa.exceptions import PreconditionGammaV


GOLDEN = [
    # (p, e_w, n_v, lambda_v) -> (b_lower, b_upper)
    ((2, 1, 1, 1), (0, 0)),
    ((2, 1, 1, 3), (1, 2)),
    ((3, 2, 1, 2), (1, 2)),
    ((5, 2, 2, 2), (1, 2)),
]


@pytest.mark.parametrize("args,expected", GOLDEN)
def test_golden_bounds(args, expected):
    b = bounds(SupersingularLocalDatum(*args))
    assert (b.b_lower, b.b_upper) == expected


def test_flat_sharp_epsilon_examples():
    assert flat_sharp_epsilon(SupersingularLocalDatum(2, 1, 1, 3)) == (1, 4, 0)
    assert flat_sharp_epsilon(SupersingularLocalDatum(2, 1, 1, 1)) == (2, 3, 0)
    assert flat_sharp_epsilon(SupersingularLocalDatum(3, 2, 1, 2)) == (1, 6, 0)
    # epsilon turns on only past p*natural with a trivial character
    big = SupersingularLocalDatum(2, 1, 1, 5, c_w_trivial=True)
    assert flat_sharp_epsilon(big) == (1, 4, 1)
    assert flat_sharp_epsilon(SupersingularLocalDatum(2, 1, 1, 5)) == (1, 4, 0)


def test_phi_psi_diamond_examples():
    assert phi_psi_diamond(4, SupersingularLocalDatum(2, 1, 1, 3)) == (2, 4, 0)
    assert phi_psi_diamond(2, SupersingularLocalDatum(5, 2, 2, 2)) == (0, 1, 1)
    for d in (SupersingularLocalDatum(2, 1, 1, 3), SupersingularLocalDatum(3, 2, 1, 1)):
        assert phi_psi_diamond(1, d) == (0, 1, 0)


def test_structural_claims_on_grid():
    count = 0
    for d in datum_grid(res_degs=(1, 2)):
        b = bounds(d)  # raises InternalInvariantViolation on any failure
        assert b.upper >= b.lower >= 0
        assert d.n_v >= b.b_lower >= 0
        if b.flat == 1:
            assert b.b_lower == d.n_v
        assert (d.lambda_v == 1) == (b.b_upper == 0)
        if d.lambda_w >= d.p * d.natural_w:
            assert b.b_upper == d.p * d.n_v
        count += 1
    assert count > 300


def test_monotone_filtration_dimension():
    for d in [SupersingularLocalDatum(2, 1, 1, 3), SupersingularLocalDatum(3, 2, 1, 2),
              SupersingularLocalDatum(5, 4, 4, 3), SupersingularLocalDatum(7, 3, 2, 2)]:
        vals = []
        for m in range(1, 50):
            phi, _, dia = phi_psi_diamond(m, d)
            vals.append(phi + dia)
        assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_delta_v_bounds_and_gamma_guard():
    assert delta_v_bounds(SupersingularLocalDatum(2, 1, 1, 3)) == (1, 2)
    assert delta_v_bounds(SupersingularLocalDatum(2, 1, 1, 1)) == (0, 0)
    assert delta_v_bounds(SupersingularLocalDatum(5, 2, 2, 2, res_deg=2)) == (2, 4)
    with pytest.raises(PreconditionGammaV):
        delta_v_bounds(SupersingularLocalDatum(2, 1, 1, 3, gamma_v_nonzero=False))


def test_datum_validation():
    with pytest.raises(ValueError):
        SupersingularLocalDatum(3, 2, 1, 3)  # lambda_w = 6 divisible by 3
    with pytest.raises(ValueError):
        SupersingularLocalDatum(3, 1, 1, 1)  # n_w = 1 not divisible by p-1 = 2
    with pytest.raises(ValueError):
        SupersingularLocalDatum(5, 3, 4, 1)  # e_w does not divide p-1


def test_report_shape():
    r = report(SupersingularLocalDatum(2, 1, 1, 3))
    assert r["h1_log_bounds"] == [1, 2]
    assert r["delta_v_bounds"] == [1, 2]
    r0 = report(SupersingularLocalDatum(2, 1, 1, 3, gamma_v_nonzero=False))
    assert r0["delta_v_bounds"] is None
