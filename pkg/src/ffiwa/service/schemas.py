"""Pydantic request/response models of the HTTP service."""

from __future__ import annotations

from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, Field


class TheoremARequest(BaseModel):
    p: int
    ew: int = 1
    nv: int
    lambda_v: int
    resdeg: int = 1
    cw_trivial: bool = False
    gamma_nonzero: bool = True


class ASConductorRequest(BaseModel):
    p: int
    q: int
    kappa: str = Field(description="rational function of t (coefficients mod p)")
    place: Optional[str] = Field(
        default=None, description='monic irreducible polynomial or "inf"; default "(t)"'
    )


class ModelCoefficients(BaseModel):
    a1: str = "0"
    a2: str = "0"
    a3: str = "0"
    a4: str = "0"
    a6: str = "0"


class CurveSpec(BaseModel):
    p: int
    k: int = 1
    a1: str = "0"
    a2: str = "0"
    a3: str = "0"
    a4: str = "0"
    a6: str = "0"
    infinity_model: Optional[ModelCoefficients] = None
    minimal_attested: bool = False
    overrides: dict[str, Any] = Field(default_factory=dict)


class CurveInfoRequest(BaseModel):
    curve: CurveSpec
    degree_bound: Optional[int] = None


class LFunctionRequest(BaseModel):
    curve: CurveSpec
    twist: Optional[str] = None
    window: Optional[int] = None


class MuRequest(BaseModel):
    curve: CurveSpec
    genus: int = 0
    window: Optional[int] = None


class AuditRequest(BaseModel):
    p: int
    mu_L: int
    m_L: int
    delta: list[int]
    mu_Lprime: Optional[Union[int, Literal["infinity"]]] = None
    m_Lprime: Optional[int] = None
    assume_mu_finite: bool = False


class VerifyRequest(BaseModel):
    suite: Literal["units", "asymp", "jordan", "as"]
    seed: int = 0


class ExamplesRequest(BaseModel):
    section: Literal["5.1", "5.2", "5.3"]
