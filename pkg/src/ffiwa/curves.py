"""Elliptic curves over GF(q)(t): Weierstrass invariants, per-place reduction
via exact point counts, supersingular place detection, contact-invariant
inference from the discriminant degree, and the characteristic-2 twist and
normal-form transformations.

Minimality at a place is always caller-attested; nothing in this module runs
a minimalization algorithm.  The infinite place is handled through a second
chart (user-supplied, or the 1/t substitution scaled until integral, which
the caller must attest as minimal when it matters).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .exceptions import (
    CountingBug,
    DegenerateSubstitution,
    InconsistentData,
    MinimalityNotAttested,
    NonIntegralModel,
    SingularCurve,
)
from .fields import (
    Field,
    Place,
    Poly,
    RationalFunc,
    evaluate_at_place,
    factor,
    irreducibles_up_to,
    ord_at,
)

_POINTCOUNT_CAP = 1 << 16


@dataclass(frozen=True)
class WeierstrassModel:
    a1: RationalFunc
    a2: RationalFunc
    a3: RationalFunc
    a4: RationalFunc
    a6: RationalFunc

    @property
    def field(self) -> Field:
        return self.a1.field

    @staticmethod
    def from_list(field: Field, coeffs: Iterable[RationalFunc]) -> "WeierstrassModel":
        a1, a2, a3, a4, a6 = coeffs
        return WeierstrassModel(a1, a2, a3, a4, a6)

    def coefficients(self) -> tuple[RationalFunc, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    # -- standard invariants (characteristic-safe) --------------------------
    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.coefficients()
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    def discriminant(self) -> RationalFunc:
        b2, b4, b6, b8 = self.b_invariants()
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def c4(self) -> RationalFunc:
        b2, b4, _, _ = self.b_invariants()
        return b2 * b2 - 24 * b4

    def j_invariant(self) -> RationalFunc:
        disc = self.discriminant()
        if disc.is_zero():
            raise SingularCurve("discriminant vanishes")
        return self.c4() ** 3 / disc

    def transform(self, u: RationalFunc, r: RationalFunc, s: RationalFunc,
                  w: RationalFunc) -> "WeierstrassModel":
        """(x, y) = (u^2 x' + r, u^3 y' + u^2 s x' + w); same curve, new model."""
        if u.is_zero():
            raise DegenerateSubstitution("u must be nonzero")
        a1, a2, a3, a4, a6 = self.coefficients()
        na1 = (a1 + 2 * s) / u
        na2 = (a2 - s * a1 + 3 * r - s * s) / u**2
        na3 = (a3 + r * a1 + 2 * w) / u**3
        na4 = (a4 - s * a3 + 2 * r * a2 - (w + r * s) * a1 + 3 * r * r - 2 * s * w) / u**4
        na6 = (a6 + r * a4 + r * r * a2 + r**3 - w * a3 - w * w - r * w * a1) / u**6
        return WeierstrassModel(na1, na2, na3, na4, na6)

    def infinity_chart(self) -> "WeierstrassModel":
        """The model over GF(q)(u), u = 1/t, scaled integral at (u).

        The scaling is by a power of u only, so the result reduces at (u) but
        is not guaranteed minimal there; callers attest minimality.
        """
        F = self.field
        subbed = WeierstrassModel(*(c.subst_inverse() for c in self.coefficients()))
        return scale_to_integral_at(subbed, Place.finite(Poly.x(F)))

    def is_b_form(self) -> bool:
        one = RationalFunc.one(self.field)
        zero = RationalFunc.zero(self.field)
        return (self.a1, self.a3, self.a4) == (one, zero, zero)


def scale_to_integral_at(model: WeierstrassModel, v: Place) -> WeierstrassModel:
    """Scale (x,y) by the smallest power of pi_v making all a_i integral at v."""
    m = 0
    for i, a in zip((1, 2, 3, 4, 6), model.coefficients()):
        if a.is_zero():
            continue
        o = ord_at(a, v)
        if o < 0:
            m = max(m, -(o // i))  # ceil(-o / i)
    if m == 0:
        return model
    if v.is_infinite:
        raise DegenerateSubstitution("scaling chart must be finite")
    F = model.field
    pi = RationalFunc(v.poly)
    zero = RationalFunc.zero(F)
    return model.transform(RationalFunc.one(F) / pi**m, zero, zero, zero)


# ---------------------------------------------------------------------------
# point counting over residue fields


def count_affine_points(F: Field, a: tuple[int, int, int, int, int]) -> int:
    """Number of affine points of y^2 + a1xy + a3y = x^3 + a2x^2 + a4x + a6."""
    a1, a2, a3, a4, a6 = a
    if F.q > _POINTCOUNT_CAP:
        raise CountingBug(f"residue field order {F.q} exceeds counting cap")
    total = 0
    if F.p == 2:
        for x in range(F.q):
            x2 = F.mul(x, x)
            fx = F.add(F.add(F.mul(x2, F.add(x, a2)), F.mul(a4, x)), a6)
            h = F.add(F.mul(a1, x), a3)
            if h == 0:
                total += 1  # squaring is bijective: unique y
            else:
                hi = F.inv(h)
                total += 2 if F.trace_abs(F.mul(fx, F.mul(hi, hi))) == 0 else 0
        return total
    # odd characteristic: complete the square, z^2 = 4f(x) + (a1x + a3)^2
    squares = getattr(F, "_squares_cache", None)
    if squares is None:
        squares = {F.mul(z, z) for z in range(F.q)}
        F._squares_cache = squares
    four = F.from_int(4)
    for x in range(F.q):
        x2 = F.mul(x, x)
        fx = F.add(F.add(F.mul(x2, F.add(x, a2)), F.mul(a4, x)), a6)
        g = F.add(F.mul(four, fx), F.pow(F.add(F.mul(a1, x), a3), 2))
        if g == 0:
            total += 1
        elif g in squares:
            total += 2
    return total


def _reduce_model_at(model: WeierstrassModel, v: Place):
    """Residue field and reduced a-invariant codes; NonIntegralModel on poles."""
    from .exceptions import PoleAtPlace

    codes = []
    R = None
    for a in model.coefficients():
        try:
            R_a, c = evaluate_at_place(a, v)
        except PoleAtPlace as e:
            raise NonIntegralModel(f"coefficient has a pole at {v.label()}") from e
        codes.append(c)
        R = R_a
    return R, tuple(codes)


@dataclass(frozen=True)
class ReductionData:
    place_label: str
    degree: int
    q_v: int
    ord_delta: int
    kind: str  # good | mult_split | mult_nonsplit | additive
    a_v: int  # Frobenius trace (good); +-1 / 0 for multiplicative/additive
    supersingular: bool

    def euler_trace(self, level: int) -> int:
        """Trace of the level-th Frobenius power: alpha^m + beta^m for good
        places, the split/nonsplit sign pattern otherwise (additive: 0)."""
        if self.kind == "good":
            s_prev, s_cur = 2, self.a_v
            if level == 0:
                return 2
            for _ in range(level - 1):
                s_prev, s_cur = s_cur, self.a_v * s_cur - self.q_v * s_prev
            return s_cur
        if self.kind == "mult_split":
            return 1
        if self.kind == "mult_nonsplit":
            return (-1) ** level
        return 0


def reduction_data(model: WeierstrassModel, v: Place, minimal_attested: bool) -> ReductionData:
    """Reduction type and trace at v from the supplied (attested minimal) model.

    Good places keep the full Frobenius trace; bad places are classified by
    counting smooth points on the reduced cubic: q_v - #E_ns is +1 for split
    multiplicative, -1 for non-split, 0 for additive reduction.
    """
    if not minimal_attested:
        raise MinimalityNotAttested(
            f"caller must attest the model is minimal at {v.label()}"
        )
    F = model.field
    disc = model.discriminant()
    if disc.is_zero():
        raise SingularCurve("discriminant vanishes identically")
    o = ord_at(disc, v)
    if o < 0:
        raise NonIntegralModel(f"discriminant has a pole at {v.label()}")
    R, codes = _reduce_model_at(model, v)
    q_v = R.q
    n_affine = count_affine_points(R, codes)
    if o == 0:
        a_v = q_v - n_affine  # q_v + 1 - (n_affine + 1)
        if a_v * a_v > 4 * q_v:
            raise CountingBug(f"Hasse bound violated at {v.label()}: a={a_v}, q={q_v}")
        ss = a_v % F.p == 0
        return ReductionData(v.label(), v.degree, q_v, 0, "good", a_v, ss)
    # singular reduction: the unique singular point is rational and sits in
    # the affine count, infinity is smooth: #E_ns = n_affine - 1 + 1
    a = q_v - n_affine
    kind = {1: "mult_split", -1: "mult_nonsplit", 0: "additive"}.get(a)
    if kind is None:
        raise CountingBug(f"impossible smooth count at {v.label()}: q - #Ens = {a}")
    return ReductionData(v.label(), v.degree, q_v, o, kind, a, False)


# ---------------------------------------------------------------------------
# global curve data


def discriminant_divisor(
    model: WeierstrassModel, infinity_model: Optional[WeierstrassModel] = None
) -> dict:
    """ord_v(Delta) over the places where it is nonzero, chart-aware at infinity."""
    disc = model.discriminant()
    if disc.is_zero():
        raise SingularCurve("discriminant vanishes identically")
    entries = {}
    for g, mult in factor(disc.num):
        entries[Place.finite(g)] = mult
    for g, mult in factor(disc.den):
        entries[Place.finite(g)] = entries.get(Place.finite(g), 0) - mult
    inf_model = infinity_model if infinity_model is not None else model.infinity_chart()
    disc_inf = inf_model.discriminant()
    u_place = Place.finite(Poly.x(model.field))
    o_inf = ord_at(disc_inf, u_place)
    if o_inf:
        entries[Place.infinite(model.field)] = o_inf
    return entries


def discriminant_degree(
    model: WeierstrassModel, infinity_model: Optional[WeierstrassModel] = None
) -> int:
    return sum(m * v.degree for v, m in discriminant_divisor(model, infinity_model).items())


def supersingular_places(
    model: WeierstrassModel,
    degree_bound: Optional[int] = None,
    infinity_model: Optional[WeierstrassModel] = None,
    minimal_attested: bool = True,
) -> dict:
    """All supersingular places, scanning degrees up to the bound implied by
    the contact-sum identity (or an explicit bound).

    Supersingular places satisfy n_v >= 1, so their degrees are at most
    (p-1) * deg(Delta) / 12; the scan covers exactly that range by default.
    """
    F = model.field
    p = F.p
    deg_delta = discriminant_degree(model, infinity_model)
    implied = (p - 1) * deg_delta // 12
    bound = degree_bound if degree_bound is not None else implied
    bound = max(bound, 1)
    out = []
    disc = model.discriminant()
    for poly in irreducibles_up_to(F, bound):
        v = Place.finite(poly)
        try:
            integral = ord_at(disc, v) == 0 and all(
                a.is_zero() or ord_at(a, v) >= 0 for a in model.coefficients()
            )
        except Exception:
            integral = False
        if not integral:
            continue
        rd = reduction_data(model, v, minimal_attested)
        if rd.supersingular:
            out.append(v)
    # the infinite place via the second chart
    inf_model = infinity_model if infinity_model is not None else model.infinity_chart()
    u_place = Place.finite(Poly.x(F))
    if ord_at(inf_model.discriminant(), u_place) == 0:
        rd = reduction_data(inf_model, u_place, minimal_attested)
        if rd.supersingular:
            out.append(Place.infinite(F))
    return {
        "deg_delta": deg_delta,
        "scan_bound": bound,
        "implied_bound": implied,
        "places": out,
    }


def infer_nv(model: WeierstrassModel, ss_places: list[Place],
             deg_delta: int) -> dict:
    """Solve sum n_v deg v = (p-1) deg(Delta) / 12 with every n_v >= 1.

    Returns the unique solution when there is one, otherwise every solution
    (the identity does not always pin them down for equal-degree places).
    """
    p = model.field.p
    if ((p - 1) * deg_delta) % 12 != 0:
        raise InconsistentData(f"(p-1)*deg(Delta) = {(p - 1) * deg_delta} not divisible by 12")
    total = (p - 1) * deg_delta // 12
    degs = [v.degree for v in ss_places]
    sols: list[tuple[int, ...]] = []

    def rec(i: int, remaining: int, acc: list[int]):
        if i == len(degs):
            if remaining == 0:
                sols.append(tuple(acc))
            return
        d = degs[i]
        tail_min = sum(degs[i + 1 :])
        n = 1
        while n * d + tail_min <= remaining:
            rec(i + 1, remaining - n * d, acc + [n])
            n += 1

    rec(0, total, [])
    if not sols:
        raise InconsistentData(
            f"no n_v >= 1 solves sum n_v deg v = {total} over degrees {degs}"
        )
    return {
        "total": total,
        "solutions": [
            {v.label(): n for v, n in zip(ss_places, sol)} for sol in sols
        ],
        "unique": len(sols) == 1,
    }


# ---------------------------------------------------------------------------
# characteristic-2 twists and normal forms


def _require_char2(F: Field):
    if F.p != 2:
        raise ValueError("characteristic 2 only")


def char2_twist(model: WeierstrassModel, D: RationalFunc) -> WeierstrassModel:
    """Quadratic twist of y^2 + xy = x^3 + a2 x^2 + a6 by the class of D."""
    _require_char2(model.field)
    if not model.is_b_form():
        raise ValueError("char2_twist needs the (1, a2, 0, 0, a6) form")
    return WeierstrassModel(model.a1, model.a2 + D, model.a3, model.a4, model.a6)


def deuring_model(alpha: RationalFunc) -> WeierstrassModel:
    """y^2 + alpha*xy + y = x^3."""
    _require_char2(alpha.field)
    if alpha.is_zero():
        raise DegenerateSubstitution("alpha = 0 is singular")
    F = alpha.field
    zero, one = RationalFunc.zero(F), RationalFunc.one(F)
    return WeierstrassModel(alpha, zero, one, zero, zero)


def deuring_twist(alpha: RationalFunc, D: RationalFunc) -> WeierstrassModel:
    """Twist of the alpha-normal-form curve: y^2+axy+y = x^3 + D a^2 x^2 + D."""
    _require_char2(alpha.field)
    if alpha.is_zero():
        raise DegenerateSubstitution("alpha = 0 is singular")
    F = alpha.field
    zero, one = RationalFunc.zero(F), RationalFunc.one(F)
    return WeierstrassModel(alpha, D * alpha * alpha, one, zero, D)


def deuring_to_bform(alpha: RationalFunc) -> WeierstrassModel:
    """The substitution x -> a^2 x + 1/a, y -> a^3 y + 1/a^3 normalizes the
    alpha-form to y^2 + xy = x^3 + a2 x^2 + a6 with a2 = 1/alpha^3 and
    a6 = 1/alpha^9 + 1/alpha^12."""
    _require_char2(alpha.field)
    if alpha.is_zero():
        raise DegenerateSubstitution("alpha = 0 is singular")
    F = alpha.field
    zero = RationalFunc.zero(F)
    model = deuring_model(alpha)
    one = RationalFunc.one(F)
    out = model.transform(alpha, one / alpha, zero, one / alpha**3)
    expected_a2 = one / alpha**3
    expected_a6 = one / alpha**9 + one / alpha**12
    if (out.a2, out.a6) != (expected_a2, expected_a6) or not out.is_b_form():
        raise CountingBug("normal-form substitution produced an unexpected model")
    return out


def bform_fiber_data(model: WeierstrassModel) -> tuple[RationalFunc, RationalFunc]:
    """The (A2, A6) of the fiberwise normal form of a char-2 model with a1 != 0.

    Scaling by a1 and the two translations that kill a3 and a4 give
    A2 = a2/a1^2 + a3/a1^3 (mod additive p-th power shifts) and A6 as below;
    the fiber trace is then read off the normal form.  A6 must agree with
    Delta / a1^12, which is asserted.
    """
    _require_char2(model.field)
    a1, a2, a3, a4, a6 = model.coefficients()
    if a1.is_zero():
        raise DegenerateSubstitution("fiber normal form needs a1 != 0")
    A = a2 / a1**2
    B = a3 / a1**3
    C = a4 / a1**4
    D = a6 / a1**6
    A2 = A + B
    A6 = D + B * C + A * B * B + B**3 + (C + B * B) ** 2
    if A6 != model.discriminant() / a1**12:
        raise CountingBug("fiber normal form A6 disagrees with Delta/a1^12")
    return A2, A6
