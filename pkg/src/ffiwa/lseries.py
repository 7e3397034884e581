"""Exact Hasse-Weil L-functions of elliptic curves over GF(q)(t).

The L-polynomial is recovered from its logarithmic derivative: with S_n the
sum of local Frobenius traces at level n (one per degree-n point of the
projective line, bad places contributing their exact local data), the series
exp(sum S_n T^n / n) has integer coefficients and terminates at the true
degree.  Generic fibers are counted by the vectorized engines in
:mod:`ffiwa.counting`; the finitely many special places (bad reduction,
non-integral model coefficients, twist ramification, infinity) carry exact
local factors.

A place where the supplied model is not integral but the curve is attested to
have good reduction can be marked ``good_solve``: its trace is then the
unique candidate in the Weil range making the full series a polynomial that
passes the tail and root-modulus checks.

Characteristic-2 quadratic twists of one base model share a single sweep per
level: twisting shifts the fiber normal form by the twist class, so only a
trace bit changes.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import counting
from .artinschreier import ASGlobalExtension, place_behavior
from .curves import (
    ReductionData,
    WeierstrassModel,
    bform_fiber_data,
    reduction_data,
)
from .exceptions import (
    CountingBug,
    InconsistentData,
    InvalidDiscriminantDegree,
    IsotrivialCurve,
    MissingLocalData,
    NonIntegralModel,
    ThetaUndefined,
    WindowTooSmall,
)
from .fields import Place, Poly, RationalFunc, factor

_MIN_TAIL = 2
_ROOT_TOL = 1e-6


@dataclass(frozen=True)
class LPolynomial:
    """Integer polynomial in T = q^{-s}, constant term 1, verified to ``window``."""

    coeffs: tuple[int, ...]
    q: int
    window: int

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, T: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * T + c
        return acc

    def l_value(self, s: int = 1) -> Fraction:
        """Exact value at integer s (T = q^{-s})."""
        return self(Fraction(1, self.q**s))

    def mul(self, other: "LPolynomial") -> "LPolynomial":
        if other.q != self.q:
            raise InconsistentData("L-polynomials over different constant fields")
        out = [0] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return LPolynomial(tuple(out), self.q, min(self.window, other.window))

    def as_dict(self) -> dict:
        return {"coeffs": list(self.coeffs), "q": self.q, "degree": self.degree}


def base_change_quadratic(l_base: LPolynomial, l_twist: LPolynomial) -> LPolynomial:
    """L over the quadratic cover as the product of the two character pieces."""
    return l_base.mul(l_twist)


def euler_factor(rd: ReductionData) -> list[int]:
    """Local factor as integer coefficients in T (degree-aware)."""
    d = rd.degree
    out = [0] * (2 * d + 1)
    out[0] = 1
    if rd.kind == "good":
        out[d] = -rd.a_v
        out[2 * d] = rd.q_v
    elif rd.kind == "mult_split":
        out[d] = -1
        out = out[: d + 1]
    elif rd.kind == "mult_nonsplit":
        out[d] = 1
        out = out[: d + 1]
    else:  # additive
        out = [1]
    return out


def _trace_level_good(a: int, q_v: int, m: int) -> int:
    s_prev, s_cur = 2, a
    if m == 0:
        return 2
    for _ in range(m - 1):
        s_prev, s_cur = s_cur, a * s_cur - q_v * s_prev
    return s_cur


@dataclass
class LocalDatum:
    """Exact local information of one curve at one special place."""

    label: str
    degree: int
    q_v: int
    kind: str  # good | mult_split | mult_nonsplit | additive | good_solve
    a: Optional[int] = None

    def trace_level(self, m: int) -> int:
        if self.kind == "good":
            return _trace_level_good(self.a, self.q_v, m)
        if self.kind == "mult_split":
            return 1
        if self.kind == "mult_nonsplit":
            return (-1) ** m
        if self.kind == "additive":
            return 0
        raise MissingLocalData(f"unresolved local datum at {self.label}")

    def twisted(self, behavior: str) -> "LocalDatum":
        """Local datum of the quadratic twist given the character behaviour."""
        if behavior == "ramified":
            return LocalDatum(self.label, self.degree, self.q_v, "additive")
        sign = 1 if behavior == "split" else -1
        if self.kind in ("good", "good_solve"):
            a = None if self.a is None else sign * self.a
            return LocalDatum(self.label, self.degree, self.q_v, self.kind, a)
        if self.kind.startswith("mult"):
            if sign == 1:
                return self
            flipped = "mult_split" if self.kind == "mult_nonsplit" else "mult_nonsplit"
            return LocalDatum(self.label, self.degree, self.q_v, flipped)
        return self  # additive stays additive


def _candidate_traces(q_v: int) -> list[int]:
    bound = math.isqrt(4 * q_v)
    return [a for a in range(-bound, bound + 1)]


def _exp_series(s_values: list[int], window: int) -> list[int]:
    """L = exp(sum S_n T^n/n) as exact integers; noninteger => counting bug."""
    L = [Fraction(1)]
    for k in range(1, window + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            acc += s_values[j - 1] * L[k - j]
        val = acc / k
        L.append(val)
    out = []
    for v in L:
        if v.denominator != 1:
            raise CountingBug(f"L-series coefficient {v} is not an integer")
        out.append(int(v))
    return out


def _detect_polynomial(coeffs: list[int], q: int, window: int, min_tail: int) -> LPolynomial:
    deg = 0
    for i, c in enumerate(coeffs):
        if c:
            deg = i
    if window - deg < min_tail:
        raise WindowTooSmall(
            f"degree {deg} leaves a tail of {window - deg} < {min_tail} zero coefficients"
        )
    poly = LPolynomial(tuple(coeffs[: deg + 1]), q, window)
    _check_root_moduli(poly)
    return poly


def _check_root_moduli(poly: LPolynomial):
    if poly.degree == 0:
        return
    arr = np.array(list(reversed(poly.coeffs)), dtype=np.float64)
    roots = np.roots(arr)
    inv = 1.0 / np.abs(roots)
    if np.max(np.abs(inv - poly.q)) > _ROOT_TOL * poly.q:
        raise CountingBug(
            f"inverse roots {sorted(inv.tolist())} are not all on |alpha| = q = {poly.q}"
        )


# ---------------------------------------------------------------------------
# special-place resolution


def _special_polys_char2(model: WeierstrassModel, twists: dict) -> list[Poly]:
    polys: dict = {}

    def add_factors(poly: Poly):
        if poly.degree() >= 1:
            for g, _ in factor(poly):
                polys[g] = True

    for a in model.coefficients():
        add_factors(a.den)
    a1 = model.a1
    if not a1.is_zero():
        add_factors(a1.num)
    disc = model.discriminant()
    add_factors(disc.num)
    add_factors(disc.den)
    for tw in twists.values():
        if tw is not None:
            add_factors(tw.den)
    return sorted(polys, key=lambda g: (g.degree(), g.coeffs))


def _base_local_datum(
    model: WeierstrassModel,
    v: Place,
    chart_model: WeierstrassModel,
    overrides: dict,
    minimal_attested: bool,
) -> LocalDatum:
    label = v.label()
    ov = overrides.get(label)
    if ov is not None:
        if ov == "good_solve":
            qv = model.field.q**v.degree
            return LocalDatum(label, v.degree, qv, "good_solve")
        if isinstance(ov, dict):
            qv = model.field.q**v.degree
            return LocalDatum(label, v.degree, qv, ov["kind"], ov.get("a"))
        raise MissingLocalData(f"unrecognized override {ov!r} at {label}")
    if v.is_infinite:
        u_place = Place.finite(Poly.x(model.field))
        rd = reduction_data(chart_model, u_place, minimal_attested)
        return LocalDatum(label, 1, rd.q_v, rd.kind, rd.a_v)
    try:
        rd = reduction_data(model, v, minimal_attested)
    except NonIntegralModel as e:
        raise MissingLocalData(
            f"model is not integral at {label}; supply an override "
            '(e.g. "good_solve" or an explicit local factor)'
        ) from e
    return LocalDatum(label, v.degree, rd.q_v, rd.kind, rd.a_v)


@dataclass
class LReport:
    label: str
    lpoly: LPolynomial
    solved: dict[str, int] = field(default_factory=dict)
    expected_degree: Optional[int] = None

    def as_dict(self) -> dict:
        d = self.lpoly.as_dict()
        d["window"] = self.lpoly.window
        d["l_at_1"] = str(self.lpoly.l_value(1))
        if self.solved:
            d["solved_traces"] = dict(self.solved)
        if self.expected_degree is not None:
            d["expected_degree"] = self.expected_degree
        return d


def l_batch_char2(
    model: WeierstrassModel,
    twists: dict[str, Optional[RationalFunc]],
    window: int,
    infinity_model: Optional[WeierstrassModel] = None,
    overrides: Optional[dict] = None,
    minimal_attested: bool = True,
) -> dict[str, LReport]:
    """L-polynomials of a char-2 model and a family of quadratic twists.

    One Kloosterman sweep per level serves every twist.  ``overrides`` maps a
    place label to ``"good_solve"`` or ``{"kind": ..., "a": ...}`` for places
    the supplied charts cannot classify.
    """
    F = model.field
    if F.p != 2 or F.q != 2:
        raise CountingBug("char-2 batch engine needs the base field GF(2)")
    if model.j_invariant().is_constant():
        raise IsotrivialCurve("constant j-invariant")
    overrides = overrides or {}
    chart = infinity_model if infinity_model is not None else model.infinity_chart()
    A2, A6 = bform_fiber_data(model)
    specials = _special_polys_char2(model, twists)
    places = [Place.finite(g) for g in specials] + [Place.infinite(F)]

    base_data = {
        v.label(): _base_local_datum(model, v, chart, overrides, minimal_attested)
        for v in places
    }
    # character behaviour (and conductor data) of each twist at each place
    tw_behavior: dict[str, dict[str, str]] = {}
    tw_lambda: dict[str, dict[str, int]] = {}
    for tlabel, tw in twists.items():
        if tw is None or tw.is_zero():
            tw_behavior[tlabel] = {v.label(): "split" for v in places}
            tw_lambda[tlabel] = {}
            continue
        ext = ASGlobalExtension(tw)
        tw_behavior[tlabel] = {}
        tw_lambda[tlabel] = {}
        for v in places:
            cls = place_behavior(ext, v)
            behav = cls.behavior if cls.behavior == "ramified" else (
                "split" if cls.behavior == "split" else "inert"
            )
            tw_behavior[tlabel][v.label()] = behav
            if behav == "ramified":
                tw_lambda[tlabel][v.label()] = cls.lam

    local_data = {
        tlabel: {
            vl: base_data[vl].twisted(tw_behavior[tlabel][vl]) for vl in base_data
        }
        for tlabel in twists
    }

    solve_labels = [vl for vl, ld in base_data.items() if ld.kind == "good_solve"]
    if len(solve_labels) > 1:
        raise MissingLocalData("at most one good_solve place is supported per batch")

    # exact expected degrees from the conductor (semistable base, genus 0):
    # tail detection alone cannot see sparse polynomials like 1 + c*T^D, so
    # a window below the known degree is rejected up front
    expected: dict[str, Optional[int]] = {}
    for tlabel in twists:
        deg_cond: Optional[int] = 0
        for vl, ld in base_data.items():
            behav = tw_behavior[tlabel][vl]
            if behav == "ramified":
                deg_cond += 2 * (tw_lambda[tlabel][vl] + 1) * ld.degree
            elif ld.kind in ("good", "good_solve"):
                pass
            elif ld.kind.startswith("mult"):
                deg_cond += ld.degree
            else:  # additive base: conductor not determined by these inputs
                deg_cond = None
                break
        expected[tlabel] = None if deg_cond is None else max(deg_cond - 4, 0)
        if expected[tlabel] is not None and window < expected[tlabel] + _MIN_TAIL:
            raise WindowTooSmall(
                f"window {window} cannot hold the degree-{expected[tlabel]} "
                f"polynomial of twist {tlabel!r} plus a {_MIN_TAIL}-term tail"
            )

    # generic sweep, shared across twists
    generic_sums: dict[str, list[int]] = {tl: [] for tl in twists}
    workers = max(1, int(os.environ.get("FFIWA_THREADS", "1")))
    levels = list(range(1, window + 1))
    if workers == 1:
        for n in levels:
            sweep = counting.char2_sweep(n, A2, A6, specials, counting.gf2_tables(n))
            for tlabel, tw in twists.items():
                generic_sums[tlabel].append(counting.twisted_generic_sum(sweep, tw))
    else:
        # levels are independent; consume in fixed order, block by block, so
        # results are deterministic and at most `workers` sweeps stay alive
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            for base in range(0, len(levels), workers):
                block = levels[base : base + workers]
                sweeps = list(
                    pool.map(lambda n: counting.char2_sweep(n, A2, A6, specials), block)
                )
                for sweep in sweeps:
                    for tlabel, tw in twists.items():
                        generic_sums[tlabel].append(
                            counting.twisted_generic_sum(sweep, tw)
                        )

    def special_sum(tlabel: str, n: int, solved: dict[str, int]) -> int:
        total = 0
        for vl, ld in local_data[tlabel].items():
            if n % ld.degree:
                continue
            m = n // ld.degree
            if ld.kind == "good_solve":
                behav = tw_behavior[tlabel][vl]
                if behav == "ramified":
                    continue
                sign = 1 if behav == "split" else -1
                total += ld.degree * _trace_level_good(sign * solved[vl], ld.q_v, m)
            else:
                total += ld.degree * ld.trace_level(m)
        return total

    def build(tlabel: str, solved: dict[str, int]) -> LPolynomial:
        s_vals = [
            generic_sums[tlabel][n - 1] + special_sum(tlabel, n, solved)
            for n in range(1, window + 1)
        ]
        coeffs = _exp_series(s_vals, window)
        lp = _detect_polynomial(coeffs, F.q, window, _MIN_TAIL)
        if expected[tlabel] is not None and lp.degree != expected[tlabel]:
            raise CountingBug(
                f"twist {tlabel!r}: detected degree {lp.degree} disagrees with "
                f"the conductor degree {expected[tlabel]}"
            )
        return lp

    reports: dict[str, LReport] = {}
    solved: dict[str, int] = {}
    if solve_labels:
        vl = solve_labels[0]
        q_v = base_data[vl].q_v
        survivors = []
        for cand in _candidate_traces(q_v):
            try:
                for tlabel in twists:
                    build(tlabel, {vl: cand})
            except (CountingBug, WindowTooSmall):
                continue
            survivors.append(cand)
        if len(survivors) != 1:
            raise InconsistentData(
                f"good_solve at {vl}: {len(survivors)} trace candidates survive "
                f"the polynomiality checks: {survivors}"
            )
        solved[vl] = survivors[0]

    for tlabel in twists:
        lp = build(tlabel, solved)
        reports[tlabel] = LReport(tlabel, lp, dict(solved), expected[tlabel])
    return reports


def l_polynomial(
    model: WeierstrassModel,
    window: Optional[int] = None,
    twist: Optional[RationalFunc] = None,
    infinity_model: Optional[WeierstrassModel] = None,
    overrides: Optional[dict] = None,
    minimal_attested: bool = True,
) -> LReport:
    """L-polynomial of one curve (optionally a quadratic twist of it).

    The default window is deg(num Delta) + deg(den Delta) + 4 of the supplied
    model; pass a smaller window explicitly when a conductor bound justifies
    it (the tail and root checks still run).
    """
    F = model.field
    disc = model.discriminant()
    auto_retry = window is None
    if window is None:
        window = disc.num.degree() + disc.den.degree() + 4
    while True:
        try:
            if F.p == 2:
                reports = l_batch_char2(
                    model, {"main": twist}, window, infinity_model, overrides,
                    minimal_attested,
                )
                return reports["main"]
            if twist is not None:
                raise CountingBug("quadratic twisting by AS classes is char-2 only")
            return _l_oddchar(model, window, infinity_model, overrides, minimal_attested)
        except WindowTooSmall:
            if not auto_retry or window > 64:
                raise
            window *= 2


def _l_oddchar(
    model: WeierstrassModel,
    window: int,
    infinity_model: Optional[WeierstrassModel],
    overrides: Optional[dict],
    minimal_attested: bool,
) -> LReport:
    F = model.field
    if model.j_invariant().is_constant():
        raise IsotrivialCurve("constant j-invariant")
    overrides = overrides or {}
    chart = infinity_model if infinity_model is not None else model.infinity_chart()
    polys: dict = {}
    disc = model.discriminant()
    for src in [disc.num, disc.den] + [a.den for a in model.coefficients()]:
        if src.degree() >= 1:
            for g, _ in factor(src):
                polys[g] = True
    specials = sorted(polys, key=lambda g: (g.degree(), g.coeffs))
    places = [Place.finite(g) for g in specials] + [Place.infinite(F)]
    data = {
        v.label(): _base_local_datum(model, v, chart, overrides, minimal_attested)
        for v in places
    }
    if any(ld.kind == "good_solve" for ld in data.values()):
        raise MissingLocalData("good_solve is only supported by the char-2 engine")
    # conductor degree bound (exact when the curve is semistable)
    deg_cond: Optional[int] = 0
    for ld in data.values():
        if ld.kind == "good":
            continue
        if ld.kind.startswith("mult"):
            deg_cond += ld.degree
        else:
            deg_cond = None
            break
    expected = None if deg_cond is None else max(deg_cond - 4, 0)
    if expected is not None and window < expected + _MIN_TAIL:
        raise WindowTooSmall(
            f"window {window} cannot hold the degree-{expected} polynomial "
            f"plus a {_MIN_TAIL}-term tail"
        )
    s_vals = []
    for n in range(1, window + 1):
        total = counting.oddchar_generic_sum(model, n, specials)
        for ld in data.values():
            if n % ld.degree == 0:
                total += ld.degree * ld.trace_level(n // ld.degree)
        s_vals.append(total)
    coeffs = _exp_series(s_vals, window)
    lp = _detect_polynomial(coeffs, F.q, window, _MIN_TAIL)
    if expected is not None and lp.degree != expected:
        raise CountingBug(
            f"detected degree {lp.degree} disagrees with the conductor degree {expected}"
        )
    return LReport("main", lp, expected_degree=expected)


# ---------------------------------------------------------------------------
# theta and the mu-invariant formula


def theta(lpoly: LPolynomial, q: int, p: int) -> int:
    """The exponent making q^theta * L(T/q) integral and primitive.

    The coefficient of T^i becomes c_i * q^(theta - i), so integrality plus
    content 1 pin k*theta = max_i (k*i - v_p(c_i)); the constant term 1 keeps
    every other prime out of the content.  When k > 1 the maximum need not be
    a multiple of k, in which case no integer exponent works.
    """
    k = 0
    qq = 1
    while qq < q:
        qq *= p
        k += 1
    if qq != q:
        raise ValueError("q is not a power of p")

    def vp(n: int) -> int:
        if n == 0:
            return 10**9
        v = 0
        while n % p == 0:
            n //= p
            v += 1
        return v

    target = max(k * i - vp(c) for i, c in enumerate(lpoly.coeffs))
    if target <= 0:
        return 0  # c_0 = 1 forces target >= 0 and content p^0
    if target % k:
        raise ThetaUndefined(
            f"content normalization needs p^{target}, not a power of q = p^{k}"
        )
    return target // k


def mu_invariant(deg_delta: int, genus: int, th: int) -> int:
    """mu = deg(Delta)/12 + g - 1 - theta for the unramified tower."""
    if deg_delta % 12 != 0:
        raise InvalidDiscriminantDegree(f"12 does not divide deg Delta = {deg_delta}")
    return deg_delta // 12 + genus - 1 - th


@dataclass(frozen=True)
class MuReport:
    deg_delta: int
    genus: int
    theta: int
    mu: int
    scope: str = "unramified-Zp-tower, non-constant curve"

    def as_dict(self) -> dict:
        return {
            "deg_delta": self.deg_delta,
            "genus": self.genus,
            "theta": self.theta,
            "mu": self.mu,
            "scope": self.scope,
        }


def mu_report(deg_delta: int, genus: int, lpoly: LPolynomial, p: int) -> MuReport:
    th = theta(lpoly, lpoly.q, p)
    return MuReport(deg_delta, genus, th, mu_invariant(deg_delta, genus, th))
