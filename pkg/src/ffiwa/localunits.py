"""Truncated local fields GF(q_w)[[pi]]/pi^M: unit filtrations, tame Galois
actions and their eigenspaces, p-th power subgroups, and explicit degree-p
Artin-Schreier extensions with a brute-force norm-group membership test.

Everything in here is an oracle: small exhaustive computations meant to be
compared against the closed-form combinatorics in :mod:`ffiwa.bounds`.

Unit classes in W_{n,m} = (1 + pi^n O)/(1 + pi^m O) are stored as coefficient
tuples of length m (constant coefficient 1, entries below n zero); a class is
exactly its representative truncated below pi^m.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from .exceptions import (
    ActionMismatch,
    EnumerationTooLarge,
    InvalidTameIndex,
    NotReduced,
    PrecisionError,
)
from .fields import GF, Field
from .localfield import Laurent

_ENUM_CAP = 10**6


class TruncatedLocalRing:
    """GF(q_w)[[pi]] / pi^M; ring elements are coefficient tuples of length M."""

    def __init__(self, field: Field, M: int):
        if M < 2:
            raise ValueError("precision M must be >= 2")
        self.field = field
        self.M = M

    def one(self) -> tuple:
        return (1,) + (0,) * (self.M - 1)

    def mul(self, x: tuple, y: tuple) -> tuple:
        F, M = self.field, self.M
        out = [0] * M
        for i, a in enumerate(x):
            if a == 0:
                continue
            for j in range(min(M - i, len(y))):
                b = y[j]
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return tuple(out)

    def unit_inverse(self, x: tuple) -> tuple:
        F, M = self.field, self.M
        a0 = x[0]
        if a0 == 0:
            raise ZeroDivisionError("not a unit")
        inv0 = F.inv(a0)
        out = [0] * M
        out[0] = inv0
        for n in range(1, M):
            acc = 0
            for j in range(1, n + 1):
                if j < len(x) and x[j]:
                    acc = F.add(acc, F.mul(x[j], out[n - j]))
            out[n] = F.neg(F.mul(inv0, acc))
        return tuple(out)

    def unit_pow(self, x: tuple, e: int) -> tuple:
        if e < 0:
            return self.unit_pow(self.unit_inverse(x), -e)
        out = self.one()
        base = x
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def pth_power(self, x: tuple) -> tuple:
        """(1 + sum a_i pi^i)^p = 1 + sum a_i^p pi^{pi}: Frobenius dilation."""
        F, p, M = self.field, self.field.p, self.M
        out = [0] * M
        for i, a in enumerate(x):
            if a and i * p < M:
                out[i * p] = F.pow(a, p)
        return tuple(out)

    def unit_classes(self, n: int, m: int) -> Iterator[tuple]:
        """All classes of W_{n,m}, as tuples of length M with support in [n, m)."""
        if not (0 < n < m <= self.M):
            raise PrecisionError(f"need 0 < n < m <= M, got ({n}, {m}, {self.M})")
        F, M = self.field, self.M
        for combo in itertools.product(range(F.q), repeat=m - n):
            out = [0] * M
            out[0] = 1
            out[n:m] = combo
            yield tuple(out)

    def truncate_class(self, x: tuple, m: int) -> tuple:
        """The class of a unit in W_{*, m}: zero all coefficients >= m."""
        return x[:m] + (0,) * (self.M - m)


@dataclass(frozen=True)
class TameAction:
    """Cyclic tame action on GF(q_w)[[pi]]: pi -> zeta*pi and q_v-Frobenius.

    The group is <iota> x <sigma0> with iota of order e_w (inertia) and
    sigma0 of order f (residue Frobenius).  It must embed into F_p^*, so
    e_w * f | p - 1 and gcd(e_w, f) = 1; both roots of unity live in the
    prime field.
    """

    ring: TruncatedLocalRing
    e_w: int
    f: int
    res_deg_base: int  # [F_v : F_p]

    def __post_init__(self):
        F = self.ring.field
        p = F.p
        if (p - 1) % self.e_w or (p - 1) % self.f or (p - 1) % (self.e_w * self.f):
            raise InvalidTameIndex(f"e_w*f = {self.e_w * self.f} must divide p-1 = {p - 1}")
        import math

        if math.gcd(self.e_w, self.f) != 1:
            raise InvalidTameIndex("e_w and f must be coprime for a cyclic action")
        if F.deg_over_prime != self.res_deg_base * self.f:
            raise ActionMismatch(
                f"coefficient field GF({p}^{F.deg_over_prime}) is not "
                f"GF({p}^{self.res_deg_base})-of-degree-{self.f}"
            )

    @property
    def p(self) -> int:
        return self.ring.field.p

    @property
    def q_v(self) -> int:
        return self.p**self.res_deg_base

    @lru_cache(maxsize=None)
    def zeta(self) -> int:
        """The fixed primitive e_w-th root of unity (a prime-field code)."""
        p = self.p
        if self.e_w == 1:
            return 1
        for z in range(2, p):
            if _mult_order(z, p) == self.e_w:
                return z
        raise InvalidTameIndex(f"no element of order {self.e_w} mod {p}")  # pragma: no cover

    def apply(self, i: int, j: int, x: tuple) -> tuple:
        """Action of iota^i sigma0^j on a ring element."""
        F = self.ring.field
        z = pow(self.zeta(), i, self.p)
        qv_pow = self.q_v**j
        out = []
        zn = 1
        for n, c in enumerate(x):
            out.append(F.mul(F.pow(c, qv_pow), F.from_int(zn)) if c else 0)
            zn = (zn * z) % self.p
        return tuple(out)

    def group_elements(self) -> Iterator[tuple[int, int]]:
        for i in range(self.e_w):
            for j in range(self.f):
                yield (i, j)


def _mult_order(a: int, p: int) -> int:
    o, x = 1, a % p
    while x != 1:
        x = (x * a) % p
        o += 1
    return o


@dataclass(frozen=True)
class Character:
    """F_p^*-valued character of the tame group, by values on the generators."""

    value_iota: int
    value_sigma0: int

    def check_against(self, action: TameAction):
        p = action.p
        if pow(self.value_iota, action.e_w, p) != 1 or pow(self.value_sigma0, action.f, p) != 1:
            raise ActionMismatch("character values incompatible with the group orders")

    @staticmethod
    def c_w(action: TameAction, n_w: int) -> "Character":
        """The torsion character: inertia acts on the grade n_w/(p-1) piece,
        unramified part trivial."""
        p = action.p
        if n_w % (p - 1):
            raise InvalidTameIndex("n_w must be divisible by p-1")
        r = n_w // (p - 1)
        return Character(pow(action.zeta(), r, p), 1)

    @staticmethod
    def trivial() -> "Character":
        return Character(1, 1)


def all_characters(action: TameAction) -> list[Character]:
    p = action.p
    zs = [z for z in range(1, p) if pow(z, action.e_w, p) == 1]
    ns = [n for n in range(1, p) if pow(n, action.f, p) == 1]
    return [Character(z, n) for z in zs for n in ns]


# ---------------------------------------------------------------------------
# graded pieces: W_{l,l+1} = F_w * pi^l


def graded_multiplicity(action: TameAction, l: int, chi: Character) -> int:
    """Brute-force F_p-multiplicity of chi in the grade-l piece.

    iota scales grade l by zeta^l; sigma0 acts by the q_v-Frobenius on the
    coefficient.  Counting simultaneous eigenvectors is exact and fast since
    the piece has only q_w elements.
    """
    F = action.ring.field
    p = action.p
    zl = pow(action.zeta(), l, p)
    count = 0
    for x in range(F.q):
        if F.mul(F.from_int(zl), x) == F.mul(F.from_int(chi.value_iota), x) and F.pow(
            x, action.q_v
        ) == F.mul(F.from_int(chi.value_sigma0), x):
            count += 1
    # count = p^mult
    mult = 0
    while count > 1:
        count //= p
        mult += 1
    return mult


def graded_multiplicity_formula(action: TameAction, l: int, chi: Character) -> int:
    """Same multiplicity from the induced-representation description:
    the grade-l piece is the induction of the l-th inertia power, so chi
    occurs res_deg_base times when chi(iota) = zeta^l and never otherwise."""
    p = action.p
    return action.res_deg_base if chi.value_iota == pow(action.zeta(), l, p) else 0


def jh_multiset(action: TameAction, n: int, m: int) -> dict[tuple[int, int], int]:
    """Composition-factor multiset of W_{n,m} as {character: multiplicity}."""
    out: dict[tuple[int, int], int] = {}
    for chi in all_characters(action):
        mult = sum(graded_multiplicity_formula(action, l, chi) for l in range(n, m))
        if mult:
            out[(chi.value_iota, chi.value_sigma0)] = mult
    return out


def regular_multiset(action: TameAction) -> dict[tuple[int, int], int]:
    """JH of F_v[Phi_w]: every character with multiplicity [F_v : F_p]."""
    return {
        (chi.value_iota, chi.value_sigma0): action.res_deg_base
        for chi in all_characters(action)
    }


# ---------------------------------------------------------------------------
# oracles


def rho_bijection_check(n: int, m: int, ring: TruncatedLocalRing,
                        action: Optional[TameAction] = None) -> dict:
    """Check xi -> 1 + xi: pi^n O / pi^m O -> W_{n,m} is an equivariant
    bijection, and a group homomorphism exactly when 2n >= m."""
    if m > ring.M:
        raise PrecisionError(f"m={m} exceeds ring precision {ring.M}")
    F = ring.field
    size = F.q ** (m - n)
    if size > _ENUM_CAP:
        raise EnumerationTooLarge(f"{size} classes")
    classes = set()
    additive = []
    for combo in itertools.product(range(F.q), repeat=m - n):
        out = [0] * ring.M
        out[0] = 1
        out[n:m] = combo
        cls = ring.truncate_class(tuple(out), m)
        classes.add(cls)
        additive.append(combo)
    bijective = len(classes) == size

    hom_witness = None
    for ca, cb in itertools.product(additive, repeat=2):
        xa = [0] * ring.M
        xa[0] = 1
        xa[n:m] = ca
        xb = [0] * ring.M
        xb[0] = 1
        xb[n:m] = cb
        prod = ring.truncate_class(ring.mul(tuple(xa), tuple(xb)), m)
        sum_combo = tuple(F.add(a, b) for a, b in zip(ca, cb))
        xs = [0] * ring.M
        xs[0] = 1
        xs[n:m] = sum_combo
        if prod != tuple(xs):
            hom_witness = {"a": ca, "b": cb}
            break
    is_hom = hom_witness is None

    equivariant = True
    if action is not None:
        for (i, j) in action.group_elements():
            for combo in additive[: min(len(additive), 64)]:
                xi = [0] * ring.M
                xi[n:m] = combo
                unit = [0] * ring.M
                unit[0] = 1
                unit[n:m] = combo
                lhs = action.apply(i, j, tuple(unit))
                xi_img = action.apply(i, j, tuple(xi))
                rhs = tuple(
                    F.add(a, b) for a, b in zip(ring.one(), xi_img)
                )
                if ring.truncate_class(lhs, m) != ring.truncate_class(rhs, m):
                    equivariant = False
    return {
        "n": n,
        "m": m,
        "bijective": bijective,
        "homomorphism": is_hom,
        "two_n_ge_m": 2 * n >= m,
        "hom_matches_2n_ge_m": is_hom == (2 * n >= m),
        "equivariant": equivariant,
        "witness": hom_witness,
    }


def pth_power_subgroup(n: int, m: int, ring: TruncatedLocalRing) -> dict:
    """Enumerate W_{1,m}^p, intersect with W_{n,m}, and return
    log_p |W-bar_{n,m}| together with the subgroup itself."""
    F = ring.field
    size = F.q ** (m - 1)
    if size > _ENUM_CAP:
        raise EnumerationTooLarge(f"|W_{{1,{m}}}| = {size} exceeds cap {_ENUM_CAP}")
    powers = set()
    for x in ring.unit_classes(1, m):
        powers.add(ring.truncate_class(ring.pth_power(x), m))
    intersection = frozenset(
        c for c in powers if all(c[i] == 0 for i in range(1, min(n, len(c))))
    )
    total = F.q ** (m - n)
    quot = total // len(intersection)
    dim = 0
    while quot > 1:
        quot //= F.p
        dim += 1
    assert F.p**dim * len(intersection) == total, "quotient size not a p-power"
    return {"dim_wbar": dim, "subgroup": intersection, "group_size": total}


def eigenspace_dim(
    n: int,
    m: int,
    ring: TruncatedLocalRing,
    chi: Character,
    action: TameAction,
    mode: str = "reduced-brute",
) -> int:
    """dim_{F_p} of the chi-eigenspace of W-bar_{n,m} (or its graded model).

    ``reduced-brute`` enumerates the actual quotient W_{n,m}/(W_{n,m} cap
    W_{1,m}^p) and counts eigenvectors.  ``graded`` counts chi-multiplicities
    of the graded pieces in [ceil(k/p), k) for k = m and k = n and takes the
    difference, which the filtration comparison identifies with the same
    dimension.
    """
    chi.check_against(action)
    if action.ring is not ring:
        raise ActionMismatch("action bound to a different ring")
    if mode == "graded":
        return _eigenspace_dim_graded(n, m, action, chi)
    F = ring.field
    sub = pth_power_subgroup(n, m, ring)
    H = sub["subgroup"]
    a = chi.value_iota % F.p
    b = chi.value_sigma0 % F.p
    count = 0
    for g in ring.unit_classes(n, m):
        ginv = ring.unit_inverse(g)
        ok = True
        for (i, j, c) in ((1, 0, a), (0, 1, b)):
            if (i and action.e_w == 1) or (j and action.f == 1):
                continue
            img = action.apply(i, j, g)
            test = ring.truncate_class(ring.mul(img, ring.unit_pow(ginv, c)), m)
            if test not in H:
                ok = False
                break
        if ok:
            count += 1
    assert count % len(H) == 0
    fixed = count // len(H)
    dim = 0
    while fixed > 1:
        fixed //= F.p
        dim += 1
    return dim


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _eigenspace_dim_graded(n: int, m: int, action: TameAction, chi: Character) -> int:
    """Graded count: dim W-bar_{1,k}^chi = chi-multiplicity of grades in
    [ceil(k/p), k); the (n,m) case is the difference of the k=m and k=n levels."""

    def level(k: int) -> int:
        if k <= 1:
            return 0
        return sum(
            graded_multiplicity_formula(action, l, chi)
            for l in range(_ceil_div(k, action.p), k)
        )

    return level(m) - level(n)


def verify_reg(action: TameAction, n: int, m: int) -> dict:
    """The four structural facts about the tame filtration:
    (a) inertia is faithful on W_{1,2};
    (b) JH W_{n,n+e_w} is the regular representation of Phi_w over F_v;
    (c) JH is periodic under shifting the window by e_w;
    (d) W_{e_w, e_w+1} is the regular representation of the unramified
        quotient over F_v.
    Graded multiplicities are recomputed by brute force as a cross-check."""
    p, e, f = action.p, action.e_w, action.f
    if (p - 1) % e:
        raise InvalidTameIndex(f"e_w={e} must divide p-1")
    # brute-force graded pieces agree with the induced-representation formula
    for l in range(n, m + e + 1):
        for chi in all_characters(action):
            if graded_multiplicity(action, l, chi) != graded_multiplicity_formula(
                action, l, chi
            ):
                return {"pass": False, "witness": {"grade": l, "chi": chi}}
    faithful = _mult_order(action.zeta(), p) == e if e > 1 else True
    reg_ok = jh_multiset(action, n, n + e) == regular_multiset(action)
    periodic = jh_multiset(action, n, m) == jh_multiset(action, n + e, m + e)
    unram_reg = jh_multiset(action, e, e + 1) == {
        (1, chi.value_sigma0): action.res_deg_base
        for chi in all_characters(action)
        if chi.value_iota == 1
    }
    return {
        "pass": faithful and reg_ok and periodic and unram_reg,
        "inertia_faithful_on_W12": faithful,
        "regular_rep_window": reg_ok,
        "shift_periodicity": periodic,
        "unramified_regular_rep": unram_reg,
    }


# ---------------------------------------------------------------------------
# explicit Artin-Schreier extension of GF(q)((u)), e_w = 1 base


@dataclass
class ASEmbedding:
    """GF(q)((u)) inside its degree-p extension GF(q)((pi')), y^p - y = kappa.

    ``u_series``/``y_series`` are pi'-adic expansions; the uniformizer is
    pi' = y^a u^b with -a*lambda + p*b = 1.
    """

    base: Field
    kappa: Laurent
    lam: int
    a: int
    b: int
    u_series: Laurent
    y_series: Laurent
    prec: int

    def embed(self, x: Laurent) -> Laurent:
        """Push a Laurent series in u through u -> u_series(pi')."""
        F = self.base
        out = Laurent.zero(F, self.prec)
        u_inv = self.u_series.inverse(self.prec)
        for nexp, c in x.items():
            power = self.u_series**nexp if nexp >= 0 else u_inv ** (-nexp)
            out = out + power.scale(c).truncate(self.prec)
        return out.truncate(self.prec)


def embed_as_extension(kappa: Laurent, prec: Optional[int] = None) -> ASEmbedding:
    """Construct the totally ramified degree-p extension attached to a reduced
    kappa (ord = -lambda, p coprime to lambda) with explicit series.

    Solves the pair of equations y^p - y = kappa(u), y^a u^b = pi' degree by
    degree: the first determines each new u-coefficient (the lambda-th power
    derivative is a unit because p does not divide lambda), the second each
    new y-coefficient (a is prime to p by construction).
    """
    F = kappa.field
    p = F.p
    lam = -kappa.ord()
    if lam <= 0 or lam % p == 0:
        raise NotReduced(f"kappa must have pole order prime to p, got {lam}")
    if prec is None:
        prec = 2 * p * lam + 4 * p + 8
    # -a*lam + p*b = 1 with 1 <= a < p
    a = (-pow(lam % p, -1, p)) % p
    if a == 0:
        a = p  # unreachable: lam prime to p
    b = (1 + a * lam) // p
    assert -a * lam + p * b == 1

    # leading coefficients: alpha^p * beta^lam = kappa_lead, alpha^a beta^b = 1
    kl = kappa.coeff(-lam)
    sol = None
    for alpha in range(1, F.q):
        for beta in range(1, F.q):
            if F.mul(F.pow(alpha, p), F.pow(beta, lam)) == kl and F.mul(
                F.pow(alpha, a), F.pow(beta, b)
            ) == 1:
                sol = (alpha, beta)
                break
        if sol:
            break
    if sol is None:  # pragma: no cover - unimodular system always solvable
        raise PrecisionError("no leading coefficients found")
    alpha, beta = sol

    u_ser = Laurent(F, p, (beta,), prec)
    y_ser = Laurent(F, -lam, (alpha,), prec)
    lam_bar = F.from_int(lam)
    # d(kappa(u))/dc at the leading order and d(y^a u^b)/dd likewise
    dA = F.mul(lam_bar, F.mul(kl, F.pow(beta, -lam - 1)))  # = lam * kl * beta^(-lam-1)
    dB = F.mul(F.from_int(a), F.inv(alpha))  # = a / alpha since alpha^a beta^b = 1

    def kappa_of_u(u: Laurent) -> Laurent:
        out = Laurent.zero(F, prec)
        u_inv = u.inverse(prec)
        for nexp, c in kappa.items():
            power = u**nexp if nexp >= 0 else u_inv ** (-nexp)
            out = out + power.scale(c).truncate(prec)
        return out.truncate(prec)

    kmax = prec - p - 1
    k_done = 0
    for k in range(1, kmax + 1):
        try:
            # equation A at order -p*lam + k fixes the u-coefficient at p + k
            residual = y_ser.pth_power() - y_ser - kappa_of_u(u_ser)
            ra = residual.coeff(-p * lam + k)
            if ra:
                delta = F.neg(F.mul(ra, F.inv(dA)))
                u_ser = u_ser + Laurent.term(F, delta, p + k, prec)
            # equation B at order 1 + k fixes the y-coefficient at -lam + k
            residualB = (y_ser**a) * (u_ser**b) - Laurent.term(F, 1, 1)
            rb = residualB.coeff(1 + k)
            if rb:
                delta = F.neg(F.mul(rb, F.inv(dB)))
                y_ser = y_ser + Laurent.term(F, delta, -lam + k, prec)
        except PrecisionError:
            break
        k_done = k

    # composing with inverse powers of u costs 2p orders of accuracy
    usable = min(prec - 2 * p, p + k_done + 1)
    emb = ASEmbedding(F, kappa, lam, a, b, u_ser.truncate(usable), y_ser, usable)
    _selfcheck_embedding(emb)
    return emb


def _selfcheck_embedding(emb: ASEmbedding):
    F = emb.base
    p, lam = F.p, emb.lam
    lhs = emb.y_series.pth_power() - emb.y_series
    rhs = emb.embed(emb.kappa)
    diff = lhs - rhs
    if not diff.is_zero():
        raise PrecisionError(f"embedding self-check failed: {diff!r}")
    if diff.prec is not None and diff.prec < -p * lam + 3:
        raise PrecisionError("self-check window too narrow to be meaningful")
    if emb.u_series.ord() != p:
        raise PrecisionError("u must have valuation p in the extension")


def embed_with_retry(kappa: Laurent, prec: Optional[int] = None,
                     attempts: int = 3) -> ASEmbedding:
    """embed_as_extension with the default precision, doubling on failure."""
    F = kappa.field
    lam = -kappa.ord()
    if prec is None:
        prec = 2 * F.p * lam + 4 * F.p + 8
    last = None
    for _ in range(attempts):
        try:
            return embed_as_extension(kappa, prec=prec)
        except PrecisionError as exc:
            last = exc
            prec *= 2
    raise last


def norm_group_membership(x: Laurent, emb: ASEmbedding, natural_w: int) -> bool:
    """Brute-force: is the base unit x = 1 + X in W'_1^p * W'_{p*natural}?

    Enumerates p-th powers z^p with z running over W'_1 / W'_natural (char-p
    binomials make z^p depend on exactly that quotient) and tests whether
    x / z^p lands in W'_{p*natural}.
    """
    F = emb.base
    p = F.p
    nat_prime = p * natural_w
    if emb.prec < nat_prime + 1:
        raise PrecisionError(
            f"extension precision {emb.prec} cannot decide membership mod pi'^{nat_prime}"
        )
    xi = emb.embed(x).truncate(nat_prime)
    size = F.q ** (natural_w - 1)
    if size > _ENUM_CAP:
        raise EnumerationTooLarge(f"{size} cosets")
    for combo in itertools.product(range(F.q), repeat=natural_w - 1):
        zp = Laurent.one(F, nat_prime)  # z^p for z = 1 + sum a_i pi'^i
        for i, c in enumerate(combo, start=1):
            if c and i * p < nat_prime:
                zp = zp + Laurent.term(F, F.pow(c, p), i * p, nat_prime)
        quot = (xi * zp.inverse(nat_prime)).truncate(nat_prime)
        rem = quot - Laurent.one(F, nat_prime)
        if rem.is_zero() or rem.ord() >= nat_prime:
            return True
    return False


def norm_criterion_holds(x: Laurent, lam: int, natural_w: int, p: int) -> bool:
    """The closed-form criterion: ord(X) >= natural - (p-1)*lambda/p."""
    rem = x - Laurent.one(x.field)
    if rem.is_zero():
        return True
    return p * rem.ord() >= p * natural_w - (p - 1) * lam


def norm_criterion_saturated(x: Laurent, lam: int, natural_w: int, p: int) -> bool:
    """The criterion up to base p-th powers: some x * z^{-p} with z a base
    unit satisfies the valuation bound.

    Base units supported on p-divisible grades are exact p-th powers in
    characteristic p (binomial coefficients vanish), so the raw valuation
    criterion misses them; quotienting by base p-th powers is exactly how the
    membership statement enters the H^1 computation, and in that form it is
    an equality.  z only matters modulo grade ceil(natural/p) + 1.
    """
    F = x.field
    depth = natural_w // p + 1
    for combo in itertools.product(range(F.q), repeat=depth):
        zp = Laurent.one(F)
        for i, c in enumerate(combo, start=1):
            if c and i * p <= natural_w:
                zp = zp + Laurent.term(F, F.pow(c, p), i * p)
        cand = (x * zp.inverse(natural_w + 1)).truncate(natural_w + 1)
        rem = cand - Laurent.one(F)
        if rem.is_zero() or p * rem.ord() >= p * natural_w - (p - 1) * lam:
            return True
    return False


def norm_group_comparison(p: int, q: int, lam: int, n_w: int,
                          kappa_extra_terms: bool = False) -> dict:
    """Brute-force membership versus the valuation criterion on every coset
    of W_{w,1}/W_{w,natural}.  Returns a report with any disagreement."""
    if n_w % (p - 1):
        raise InvalidTameIndex("n_w must be divisible by p-1")
    F = GF(*_pk(p, q))
    natural = p * n_w // (p - 1)
    coeffs = [0] * (lam + 1)
    coeffs[0] = 1
    if kappa_extra_terms:
        coeffs[lam] = 1  # adds the constant 1: same lambda, different extension
    kappa = Laurent(F, -lam, coeffs)
    from .artinschreier import reduce_kappa

    red = reduce_kappa(kappa)
    if red.behavior != "ramified" or red.lam != lam:
        raise NotReduced("test kappa must stay ramified with the given lambda")
    emb = embed_with_retry(kappa, prec=max(2 * p * (natural + lam) + 6, 4 * p * natural))
    literal_mismatches = []
    saturated_mismatches = []
    tested = 0
    for combo in itertools.product(range(q), repeat=natural - 1):
        coeffs = (1,) + combo
        x = Laurent(F, 0, coeffs)
        brute = norm_group_membership(x, emb, natural)
        crit = norm_criterion_holds(x, lam, natural, p)
        crit_sat = norm_criterion_saturated(x, lam, natural, p)
        tested += 1
        if brute != crit:
            literal_mismatches.append({"x": coeffs, "brute": brute, "criterion": crit})
        if brute != crit_sat:
            saturated_mismatches.append({"x": coeffs, "brute": brute, "criterion": crit_sat})
    return {
        "p": p,
        "q": q,
        "lambda": lam,
        "n_w": n_w,
        "natural_w": natural,
        "cosets_tested": tested,
        "literal_mismatches": literal_mismatches,
        "saturated_mismatches": saturated_mismatches,
        "literal_pass": not literal_mismatches,
        "pass": not saturated_mismatches,
    }


def _pk(p: int, q: int) -> tuple[int, int]:
    k = 0
    qq = 1
    while qq < q:
        qq *= p
        k += 1
    if qq != q:
        raise ValueError(f"q={q} is not a power of p={p}")
    return p, k
