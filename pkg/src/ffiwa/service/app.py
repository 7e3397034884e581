"""HTTP service wrapping the core library.

Every endpoint is a pure computation: JSON request in, JSON report out.
Domain errors surface as 422 with the exception class name; malformed
expressions as 400.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse

from .. import __version__, bounds, goldens, suites
from ..artinschreier import ASGlobalExtension, place_behavior
from ..curves import (
    WeierstrassModel,
    discriminant_degree,
    discriminant_divisor,
    infer_nv,
    reduction_data,
    supersingular_places,
)
from ..exceptions import FFIwaError, ParseError
from ..fields import GF, Place, Poly, RationalFunc, parse_place, parse_rational
from ..growth import AuditScenario, theorem_c_audit
from ..lseries import l_polynomial, mu_report, theta
from ..reporting import to_jsonable
from . import schemas


def _build_model(spec: schemas.CurveSpec) -> WeierstrassModel:
    F = GF(spec.p, spec.k)
    coeffs = [parse_rational(F, s) for s in (spec.a1, spec.a2, spec.a3, spec.a4, spec.a6)]
    return WeierstrassModel(*coeffs)


def _build_infinity(spec: schemas.CurveSpec, model: WeierstrassModel):
    if spec.infinity_model is None:
        return None
    F = model.field
    m = spec.infinity_model
    coeffs = [parse_rational(F, s) for s in (m.a1, m.a2, m.a3, m.a4, m.a6)]
    return WeierstrassModel(*coeffs)


def create_app() -> FastAPI:
    app = FastAPI(
        title="ffiwa",
        version=__version__,
        description=(
            "Exact invariants of elliptic curves over rational function fields: "
            "local cohomology bounds at supersingular places, Artin-Schreier "
            "conductors, L-functions, mu-invariant bookkeeping."
        ),
    )

    @app.exception_handler(ParseError)
    async def _parse_error(_, exc):
        return JSONResponse(status_code=400, content={"detail": f"ParseError: {exc}"})

    @app.exception_handler(ValueError)
    async def _value_error(_, exc):
        return JSONResponse(status_code=400, content={"detail": f"ValueError: {exc}"})

    @app.exception_handler(FFIwaError)
    async def _domain_error(_, exc):
        return JSONResponse(
            status_code=422, content={"detail": f"{type(exc).__name__}: {exc}"}
        )

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/theorem-a")
    def theorem_a(req: schemas.TheoremARequest):
        datum = bounds.SupersingularLocalDatum(
            req.p,
            req.ew,
            req.nv,
            req.lambda_v,
            res_deg=req.resdeg,
            c_w_trivial=req.cw_trivial,
            gamma_v_nonzero=req.gamma_nonzero,
        )
        return {"schema": 1, **bounds.report(datum)}

    @app.post("/as-conductor")
    def as_conductor(req: schemas.ASConductorRequest):
        F = GF(*_pk(req.p, req.q))
        D = parse_rational(F, req.kappa)
        if req.place is None:
            v = Place.finite(Poly.x(F))
        else:
            v = parse_place(F, req.place)
        cls = place_behavior(ASGlobalExtension(D), v) if not D.is_zero() else None
        if cls is None:
            raise HTTPException(status_code=422, detail="kappa must be nonzero")
        return {"schema": 1, "place": v.label(), **cls.as_dict()}

    @app.post("/curve-info")
    def curve_info(req: schemas.CurveInfoRequest):
        from ..exceptions import MinimalityNotAttested

        if not req.curve.minimal_attested:
            raise MinimalityNotAttested(
                "set minimal_attested: reduction types read off the supplied charts"
            )
        model = _build_model(req.curve)
        inf_model = _build_infinity(req.curve, model)
        div = discriminant_divisor(model, inf_model)
        out = {
            "schema": 1,
            "delta": _rf(model.discriminant()),
            "j": _rf(model.j_invariant()),
            "disc_divisor": {v.label(): m for v, m in div.items()},
            "deg_delta": discriminant_degree(model, inf_model),
        }
        reductions = {}
        for v, mult in div.items():
            try:
                if v.is_infinite:
                    chart = inf_model if inf_model is not None else model.infinity_chart()
                    rd = reduction_data(chart, Place.finite(Poly.x(model.field)),
                                        req.curve.minimal_attested)
                else:
                    rd = reduction_data(model, v, req.curve.minimal_attested)
            except FFIwaError as exc:
                # e.g. the supplied charts are not integral here; keep the rest
                reductions[v.label()] = {
                    "kind": "unavailable",
                    "ord_delta": mult,
                    "reason": f"{type(exc).__name__}: {exc}",
                }
                continue
            reductions[v.label()] = {"kind": rd.kind, "ord_delta": mult, "a_v": rd.a_v}
        out["reductions"] = reductions
        ss = supersingular_places(model, req.degree_bound, inf_model,
                                  req.curve.minimal_attested)
        out["supersingular"] = {
            "places": [v.label() for v in ss["places"]],
            "scan_bound": ss["scan_bound"],
        }
        if ss["places"]:
            out["n_v"] = infer_nv(model, ss["places"], ss["deg_delta"])
        return to_jsonable(out)

    @app.post("/lfunction")
    def lfunction(req: schemas.LFunctionRequest):
        model = _build_model(req.curve)
        inf_model = _build_infinity(req.curve, model)
        twist = None
        if req.twist is not None:
            twist = parse_rational(model.field, req.twist)
        rep = l_polynomial(
            model,
            window=req.window,
            twist=twist,
            infinity_model=inf_model,
            overrides=req.curve.overrides,
            minimal_attested=req.curve.minimal_attested,
        )
        out = rep.as_dict()
        out["theta"] = theta(rep.lpoly, model.field.q, model.field.p)
        return {"schema": 1, **to_jsonable(out)}

    @app.post("/mu")
    def mu(req: schemas.MuRequest):
        model = _build_model(req.curve)
        inf_model = _build_infinity(req.curve, model)
        rep = l_polynomial(
            model,
            window=req.window,
            infinity_model=inf_model,
            overrides=req.curve.overrides,
            minimal_attested=req.curve.minimal_attested,
        )
        deg_delta = discriminant_degree(model, inf_model)
        mr = mu_report(deg_delta, req.genus, rep.lpoly, model.field.p)
        return {"schema": 1, **to_jsonable(mr.as_dict()), "l_coeffs": list(rep.lpoly.coeffs)}

    @app.post("/audit")
    def audit(req: schemas.AuditRequest):
        sc = AuditScenario(
            req.p,
            req.mu_L,
            req.m_L,
            (req.delta[0], req.delta[1]),
            mu_Lprime=req.mu_Lprime,
            m_Lprime=req.m_Lprime,
            assume_mu_finite=req.assume_mu_finite,
        )
        return {"schema": 1, **to_jsonable(theorem_c_audit(sc))}

    @app.post("/verify")
    def verify(req: schemas.VerifyRequest):
        return {"schema": 1, **to_jsonable(suites.run_suite(req.suite, seed=req.seed))}

    @app.post("/examples")
    def examples(req: schemas.ExamplesRequest):
        return to_jsonable(goldens.run_examples(req.section))

    return app


def _rf(f: RationalFunc) -> str:
    from ..fields import format_poly

    return f"({format_poly(f.num)})/({format_poly(f.den)})"


def _pk(p: int, q: int) -> tuple[int, int]:
    k, qq = 0, 1
    while qq < q:
        qq *= p
        k += 1
    if qq != q:
        raise HTTPException(status_code=400, detail=f"q={q} is not a power of p={p}")
    return p, k


app = create_app()
