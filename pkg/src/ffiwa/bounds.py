"""Combinatorics of supersingular local data and the resulting H^1 bounds.

Everything here is exact integer arithmetic.  The formulas are sensitive to
off-by-one behaviour exactly at the boundaries lambda_w = p*(natural-1)/(p-1)
and lambda_w = p*natural, so no floats are used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .exceptions import InternalInvariantViolation, PreconditionGammaV


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class SupersingularLocalDatum:
    """Local data at a supersingular place of a ramified degree-p extension.

    p: residue characteristic; e_w: tame ramification index of k_w/K_v
    (divides p-1); n_v: the positive contact invariant of the p-torsion
    point; lambda_v: conductor exponent minus one of the degree-p extension;
    res_deg: [F_v : F_p]; c_w_trivial: whether the torsion character is
    trivial (k_w = K_v); gamma_v_nonzero: whether the decomposition group of
    v in the Z_p^d-tower is nontrivial.
    """

    p: int
    e_w: int
    n_v: int
    lambda_v: int
    res_deg: int = 1
    c_w_trivial: bool = False
    gamma_v_nonzero: bool = True

    def __post_init__(self):
        if self.p < 2:
            raise ValueError("p must be a prime >= 2")
        if self.e_w < 1 or (self.p - 1) % self.e_w != 0:
            raise ValueError(f"e_w={self.e_w} must divide p-1={self.p - 1}")
        if self.n_v < 1:
            raise ValueError("n_v must be positive")
        if self.lambda_v < 1:
            raise ValueError("lambda_v must be positive")
        if self.res_deg < 1:
            raise ValueError("res_deg must be positive")
        if self.n_w % (self.p - 1) != 0:
            raise ValueError(
                f"n_w = e_w*n_v = {self.n_w} must be divisible by p-1 = {self.p - 1}"
            )
        if self.lambda_w % self.p == 0:
            raise ValueError(f"lambda_w = e_w*lambda_v = {self.lambda_w} must be prime to p")

    @property
    def n_w(self) -> int:
        return self.e_w * self.n_v

    @property
    def lambda_w(self) -> int:
        return self.e_w * self.lambda_v

    @property
    def natural_w(self) -> int:
        return self.p * self.n_w // (self.p - 1)

    @property
    def graded_residue(self) -> int:
        """The grade n_w/(p-1) at which the torsion character appears."""
        return self.n_w // (self.p - 1)


def phi_psi_diamond(m: int, datum: SupersingularLocalDatum) -> tuple[int, int, int]:
    """(phi_m, psi_m, diamond_m) for the filtration combinatorics at level m.

    phi_m counts full tame periods between ceil(m/p) and m; psi_m is the
    start of the incomplete last period; diamond_m is 1 exactly when the
    interval [psi_m, m) meets the residue class n_w/(p-1) mod e_w.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    p, e = datum.p, datum.e_w
    cm = _ceil_div(m, p)
    phi = (m - cm) // e
    psi = cm + phi * e
    assert psi <= m
    r = datum.graded_residue % e
    diamond = sum(1 for j in range(psi, m) if j % e == r)
    assert diamond in (0, 1)
    return phi, psi, diamond


def _phi_plus_diamond(m: int, datum: SupersingularLocalDatum) -> int:
    phi, _, diamond = phi_psi_diamond(m, datum)
    return phi + diamond


def flat_sharp_epsilon(datum: SupersingularLocalDatum) -> tuple[int, int, int]:
    """The cutoff indices (flat, sharp) and the correction bit epsilon."""
    p, lam, nat = datum.p, datum.lambda_w, datum.natural_w
    if lam * (p - 1) < p * (nat - 1):
        flat = nat - ((p - 1) * lam) // p  # ceil(nat - (p-1)lam/p)
    else:
        flat = 1
    if lam < p * nat:
        sharp = nat + _ceil_div((p - 1) * lam, p)
    else:
        sharp = p * nat
    epsilon = 1 if (lam >= p * nat and datum.c_w_trivial) else 0
    return flat, sharp, epsilon


@dataclass(frozen=True)
class TheoremABounds:
    """Two-sided bounds for log_p |H^1| at a supersingular ramified place."""

    datum: SupersingularLocalDatum
    flat: int
    sharp: int
    epsilon: int
    b_lower: int
    b_upper: int

    @property
    def lower(self) -> int:
        return self.datum.res_deg * self.b_lower

    @property
    def upper(self) -> int:
        return self.datum.res_deg * self.b_upper + self.epsilon


def bounds(datum: SupersingularLocalDatum) -> TheoremABounds:
    """Compute (b_lower, b_upper) and verify the structural identities.

    (i) flat = 1 forces b_lower = n_v; (ii) lambda_v = 1 iff b_upper = 0;
    (iii) lambda_w >= p*natural forces b_upper = p*n_v.  A violation means
    an implementation bug, never bad input.
    """
    flat, sharp, eps = flat_sharp_epsilon(datum)
    base = _phi_plus_diamond(flat, datum)
    b_lower = _phi_plus_diamond(datum.natural_w, datum) - base
    b_upper = _phi_plus_diamond(sharp, datum) - base

    p, n_v = datum.p, datum.n_v
    checks = [
        (datum.n_v >= b_lower >= 0, f"n_v >= b_lower >= 0 failed: {n_v}, {b_lower}"),
        (b_upper >= b_lower, f"b_upper {b_upper} < b_lower {b_lower}"),
        (flat != 1 or b_lower == n_v, f"flat=1 but b_lower={b_lower} != n_v={n_v}"),
        ((datum.lambda_v == 1) == (b_upper == 0), f"lambda_v=1 <-> b_upper=0 failed"),
        (
            datum.lambda_w < p * datum.natural_w or b_upper == p * n_v,
            f"lambda_w >= p*natural but b_upper={b_upper} != p*n_v={p * n_v}",
        ),
    ]
    for ok, msg in checks:
        if not ok:
            raise InternalInvariantViolation(f"{msg} (datum={datum})")
    return TheoremABounds(datum, flat, sharp, eps, b_lower, b_upper)


def h1_log_bounds(datum: SupersingularLocalDatum) -> tuple[int, int]:
    """Closed interval containing log_p |H^1(G_v, A(K'_v'))|."""
    b = bounds(datum)
    return b.lower, b.upper


def delta_v_bounds(datum: SupersingularLocalDatum) -> tuple[int, int]:
    """Closed interval containing the local (p)-rank delta_v.

    Valid only when the decomposition group of v in the tower is nonzero.
    """
    if not datum.gamma_v_nonzero:
        raise PreconditionGammaV("delta_v bounds require Gamma_v != 0")
    b = bounds(datum)
    return datum.res_deg * b.b_lower, datum.res_deg * b.b_upper


def datum_grid(
    primes=(2, 3, 5),
    n_v_max: int = 6,
    lambda_v_max: int = 9,
    res_degs=(1,),
) -> Iterator[SupersingularLocalDatum]:
    """All valid data in the verification grid (invalid combinations skipped)."""
    for p in primes:
        for e_w in range(1, p):
            if (p - 1) % e_w:
                continue
            for n_v in range(1, n_v_max + 1):
                if (e_w * n_v) % (p - 1):
                    continue
                for lambda_v in range(1, lambda_v_max + 1):
                    if (e_w * lambda_v) % p == 0:
                        continue
                    for rd in res_degs:
                        for cw in (False, True):
                            yield SupersingularLocalDatum(
                                p, e_w, n_v, lambda_v, res_deg=rd, c_w_trivial=cw
                            )


def report(datum: SupersingularLocalDatum) -> dict:
    """JSON-friendly summary used by the CLI and the service."""
    b = bounds(datum)
    out = {
        "p": datum.p,
        "e_w": datum.e_w,
        "n_v": datum.n_v,
        "lambda_v": datum.lambda_v,
        "n_w": datum.n_w,
        "lambda_w": datum.lambda_w,
        "natural_w": datum.natural_w,
        "res_deg": datum.res_deg,
        "flat": b.flat,
        "sharp": b.sharp,
        "epsilon": b.epsilon,
        "b_lower": b.b_lower,
        "b_upper": b.b_upper,
        "h1_log_bounds": [b.lower, b.upper],
    }
    if datum.gamma_v_nonzero:
        out["delta_v_bounds"] = list(delta_v_bounds(datum))
    else:
        out["delta_v_bounds"] = None
    return out
