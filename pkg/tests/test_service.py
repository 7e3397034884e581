import asyncio

import httpx

from ffiwa.service.app import create_app


def call(path: str, payload: dict):
    async def go():
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://test", timeout=None
        ) as client:
            resp = await client.post(path, json=payload)
            return resp.status_code, resp.json()

    return asyncio.run(go())


def get(path: str):
    async def go():
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(transport=transport, base_url="http://test") as client:
            resp = await client.get(path)
            return resp.status_code, resp.json()

    return asyncio.run(go())


def test_health():
    status, body = get("/health")
    assert status == 200 and body["status"] == "ok"


def test_theorem_a_endpoint():
    status, body = call(
        "/theorem-a", {"p": 2, "ew": 1, "nv": 1, "lambda_v": 3, "resdeg": 1}
    )
    assert status == 200
    assert body["b_upper"] == 2 and body["b_lower"] == 1
    assert body["h1_log_bounds"] == [1, 2]
    assert body["delta_v_bounds"] == [1, 2]
    # invalid datum -> 400
    status, body = call("/theorem-a", {"p": 3, "nv": 1, "lambda_v": 3})
    assert status == 400


def test_as_conductor_endpoint():
    status, body = call(
        "/as-conductor", {"p": 2, "q": 2, "kappa": "1/t^3 + 1/t", "place": None}
    )
    assert status == 200
    assert (body["classification"], body["lambda"], body["f"], body["deg_disc"]) == (
        "ramified", 3, 4, 4,
    )
    status, body = call("/as-conductor", {"p": 2, "q": 2, "kappa": "t^5 + 1/t", "place": "inf"})
    assert body["lambda"] == 5
    status, body = call("/as-conductor", {"p": 2, "q": 2, "kappa": "1 +", "place": None})
    assert status == 400


CURVE_A = {
    "p": 2, "k": 1, "a1": "t", "a2": "0", "a3": "1", "a4": "0", "a6": "0",
    "minimal_attested": True,
}


def test_curve_info_endpoint():
    status, body = call("/curve-info", {"curve": CURVE_A, "degree_bound": None})
    assert status == 200
    assert body["deg_delta"] == 12
    assert body["supersingular"]["places"] == ["t"]
    assert body["n_v"]["solutions"] == [{"t": 1}]
    # unattested minimality is refused
    unattested = dict(CURVE_A, minimal_attested=False)
    status, _ = call("/curve-info", {"curve": unattested, "degree_bound": None})
    assert status == 422


def test_lfunction_and_mu_endpoints():
    status, body = call("/lfunction", {"curve": CURVE_A, "twist": None, "window": 8})
    assert status == 200 and body["coeffs"] == [1] and body["theta"] == 0
    status, body = call(
        "/lfunction", {"curve": CURVE_A, "twist": "1/t^3 + 1/t", "window": 14}
    )
    assert body["coeffs"] == [1, 0, 0, 0, 0, 0, 0, 0, -256]
    assert body["l_at_1"] == "0"
    status, body = call("/mu", {"curve": CURVE_A, "genus": 0, "window": 8})
    assert body["mu"] == 0 and body["deg_delta"] == 12


def test_audit_endpoint():
    status, body = call(
        "/audit", {"p": 2, "mu_L": 0, "m_L": 0, "delta": [1, 2], "mu_Lprime": 2}
    )
    assert status == 200
    assert body["dag_set"] == [1, 2]
    assert set(body["elementary_invariants"]) == {"p^2", "p,p"}


def test_verify_endpoint():
    status, body = call("/verify", {"suite": "jordan", "seed": 0})
    assert status == 200 and body["pass"] is True
    status, body = call("/verify", {"suite": "nope"})
    assert status == 422  # pydantic validation


def test_examples_endpoint():
    status, body = call("/examples", {"section": "5.3"})
    assert status == 200 and body["pass"] is True
    assert body["section"] == "5.3"
    keys = {c["key"] for c in body["checks"]}
    assert "Bb.L_at_1" in keys
