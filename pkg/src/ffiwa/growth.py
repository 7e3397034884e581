"""Oracles for Iwasawa-algebra quotient growth, Jordan-form identities,
local (p)-rank aggregation, and consistency audits of the global inequalities
relating mu-invariants, (p)-ranks and the invariant dag.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional, Union

import numpy as np

from . import bounds as bounds_mod
from .exceptions import MissingLocalData, OracleFailure, TooLarge

INFINITY = "infinity"

_D_CAP = 2
_PN_CAP = 27
_DEGF_CAP = 6


# ---------------------------------------------------------------------------
# Lambda = F_p[[X_1..X_d]] quotients at level n


@dataclass(frozen=True)
class LambdaQuotientSpec:
    """The quotient F_p[X_1..X_d] / (X_i^{p^n}, f)."""

    p: int
    d: int
    n: int
    f: dict[tuple[int, ...], int]  # exponent tuple -> coefficient mod p

    def __post_init__(self):
        if self.d > _D_CAP or self.p**self.n > _PN_CAP:
            raise TooLarge(f"caps: d <= {_D_CAP}, p^n <= {_PN_CAP}")
        for exps, c in self.f.items():
            if len(exps) != self.d:
                raise ValueError("f exponent tuples must have length d")
            if sum(exps) > _DEGF_CAP:
                raise TooLarge(f"deg f <= {_DEGF_CAP}")


def _rank_mod_p(M: np.ndarray, p: int) -> int:
    M = (M % p).astype(np.int64)
    rows, cols = M.shape
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if M[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r] = (M[r] * pow(int(M[r, c]), p - 2, p)) % p
        col = M[r + 1 :, c]
        nz = np.nonzero(col)[0]
        if nz.size:
            M[r + 1 + nz] = (M[r + 1 + nz] - np.outer(col[nz], M[r])) % p
        r += 1
        if r == rows:
            break
    return r


def lambda_quotient_dim(spec: LambdaQuotientSpec) -> int:
    """dim_{F_p} of F_p[X]/(X_i^{p^n}, f), via the rank of multiplication by f."""
    p, d, pn = spec.p, spec.d, spec.p**spec.n
    size = pn**d
    if not spec.f or all(c % p == 0 for c in spec.f.values()):
        return size
    # multiplication-by-f matrix on the monomial basis of R = F_p[X]/(X_i^{p^n})
    M = np.zeros((size, size), dtype=np.int64)

    def idx(exps):
        out = 0
        for e in exps:
            out = out * pn + e
        return out

    import itertools

    for basis_exps in itertools.product(range(pn), repeat=d):
        col = idx(basis_exps)
        for fexps, c in spec.f.items():
            tgt = tuple(a + b for a, b in zip(basis_exps, fexps))
            if all(e < pn for e in tgt):
                M[idx(tgt), col] = (M[idx(tgt), col] + c) % p
    return size - _rank_mod_p(M, p)


def prank_growth_check(
    m: int,
    f: dict[tuple[int, ...], int],
    d: int,
    p: int,
    n_range: Iterable[int],
) -> dict:
    """Check log_p |Z/(p, I_n)| = m*p^{nd} + O(p^{n(d-1)}) for the test module
    Z = (Lambda/(p))^m + Lambda/(p, f).

    Returns the per-level dimensions, deviations from the main term, and the
    smallest constant C with deviation <= C*p^{n(d-1)} on the tested range.
    """
    levels = []
    worst = 0.0
    for n in n_range:
        dim = m * p ** (n * d) + lambda_quotient_dim(LambdaQuotientSpec(p, d, n, f))
        dev = dim - m * p ** (n * d)
        ratio = dev / p ** (n * (d - 1))
        worst = max(worst, ratio)
        levels.append({"n": n, "log_size": dim, "deviation": dev, "ratio": ratio})
        if dev < 0:
            raise OracleFailure(f"negative deviation at n={n}")
    return {"m": m, "d": d, "p": p, "levels": levels, "C": worst}


# ---------------------------------------------------------------------------
# Jordan blocks for a cyclic group of order p acting on an F_p-vector space


def _norm_equals_tau_minus_one_power(p: int) -> bool:
    # coefficients of (x-1)^(p-1) mod p versus 1 + x + ... + x^(p-1)
    from math import comb

    coeffs = [comb(p - 1, k) * (-1) ** (p - 1 - k) % p for k in range(p)]
    return coeffs == [1] * p


def jordan_identities(p: int, trials: int = 200, seed: int = 0, dim_max: int = 12) -> dict:
    """Verify the group-algebra trace identity and the Jordan-block counting
    inequalities on random F_p[Z/p]-modules.

    For each random module: tau is unipotent, g = log_p |V^G| is the number of
    Jordan blocks, kappa = log_p |Nm(V)| the number of blocks of full size p,
    and kappa*p + (g - kappa)*(p - 1) >= dim V >= g must hold.
    """
    if p not in (2, 3, 5, 7):
        raise ValueError("p must be in {2,3,5,7}")
    if not _norm_equals_tau_minus_one_power(p):
        raise OracleFailure(f"Nm_G != (tau-1)^(p-1) in F_{p}[G]")
    rng = random.Random(seed)
    checked = 0
    for _ in range(trials):
        dim = rng.randint(1, dim_max)
        # random block sizes <= p summing to dim
        sizes = []
        left = dim
        while left > 0:
            s = rng.randint(1, min(p, left))
            sizes.append(s)
            left -= s
        J = np.zeros((dim, dim), dtype=np.int64)
        pos = 0
        for s in sizes:
            for i in range(s):
                J[pos + i, pos + i] = 1
                if i + 1 < s:
                    J[pos + i, pos + i + 1] = 1
            pos += s
        # conjugate by a random invertible matrix mod p
        while True:
            S = np.array(
                [[rng.randrange(p) for _ in range(dim)] for _ in range(dim)], dtype=np.int64
            )
            if _rank_mod_p(S.copy(), p) == dim:
                break
        Sinv = _inv_mod_p(S, p)
        tau = (S @ J @ Sinv) % p
        tmi = (tau - np.eye(dim, dtype=np.int64)) % p
        g = dim - _rank_mod_p(tmi.copy(), p)
        power = np.eye(dim, dtype=np.int64)
        for _ in range(p - 1):
            power = (power @ tmi) % p
        kappa = _rank_mod_p(power.copy(), p)
        if kappa != sum(1 for s in sizes if s == p):
            raise OracleFailure(f"kappa={kappa} != #size-p blocks (sizes {sizes})")
        if not (kappa * p + (g - kappa) * (p - 1) >= dim >= g):
            raise OracleFailure(f"inequality failed: kappa={kappa} g={g} dim={dim}")
        checked += 1
    return {"p": p, "trials": checked, "norm_identity": True, "pass": True}


def _inv_mod_p(S: np.ndarray, p: int) -> np.ndarray:
    n = S.shape[0]
    M = np.concatenate([S % p, np.eye(n, dtype=np.int64)], axis=1)
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, n):
            if M[i, c] % p:
                piv = i
                break
        if piv is None:
            raise ValueError("matrix not invertible")
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r] = (M[r] * pow(int(M[r, c]), p - 2, p)) % p
        for i in range(n):
            if i != r and M[i, c]:
                M[i] = (M[i] - M[i, c] * M[r]) % p
        r += 1
    return M[:, n:]


# ---------------------------------------------------------------------------
# delta aggregation over places


@dataclass(frozen=True)
class PlaceTag:
    """Local inputs deciding the contribution of one place to delta."""

    label: str
    reduction: str  # good_ordinary | multiplicative | supersingular | additive
    ramified: bool
    gamma_v_nonzero: bool
    datum: Optional[bounds_mod.SupersingularLocalDatum] = None


_ORDINARY = ("good_ordinary", "multiplicative")


def delta_aggregate(places: Iterable[PlaceTag]) -> dict:
    """Sum the per-place delta_v intervals using the vanishing rules.

    Rules, in order: ordinary reduction with Gamma_v != 0 vanishes; any
    unramified place with Gamma_v != 0 vanishes (good unramified places
    vanish identically); supersingular ramified places with Gamma_v != 0
    contribute their two-sided bound interval.  Anything else is not
    decidable from these inputs.
    """
    lo = hi = 0
    detail = []
    for tag in places:
        good = tag.reduction in ("good_ordinary", "supersingular")
        if tag.reduction in _ORDINARY and tag.gamma_v_nonzero:
            ival, rule = (0, 0), "ordinary"
        elif good and not tag.ramified:
            ival, rule = (0, 0), "good-unramified"
        elif not tag.ramified and tag.gamma_v_nonzero:
            ival, rule = (0, 0), "unramified"
        elif tag.reduction == "supersingular" and tag.ramified and tag.gamma_v_nonzero:
            if tag.datum is None:
                raise MissingLocalData(f"place {tag.label}: supersingular ramified "
                                       "contribution needs a local datum")
            ival, rule = bounds_mod.delta_v_bounds(tag.datum), "supersingular-bounds"
        else:
            raise MissingLocalData(
                f"place {tag.label}: no vanishing rule for reduction={tag.reduction}, "
                f"ramified={tag.ramified}, gamma_v_nonzero={tag.gamma_v_nonzero}"
            )
        lo += ival[0]
        hi += ival[1]
        detail.append({"place": tag.label, "rule": rule, "interval": list(ival)})
    return {"delta_interval": [lo, hi], "places": detail}


# ---------------------------------------------------------------------------
# audit of the mu / (p)-rank inequalities


@dataclass
class AuditScenario:
    p: int
    mu_L: int
    m_L: int
    delta: tuple[int, int]
    mu_Lprime: Union[int, str, None] = None  # int, "infinity", or unknown
    m_Lprime: Optional[int] = None
    assume_mu_finite: bool = False  # apply dag >= delta without a known value

    def __post_init__(self):
        if self.delta[0] > self.delta[1] or self.delta[0] < 0:
            raise ValueError("malformed delta interval")


def theorem_c_audit(sc: AuditScenario) -> dict:
    """Intersect all the inequalities linking (mu_L, m_L, delta) to
    (dag, m_L', mu_L') and report the tightened sets, or an infeasibility
    witness flagged as a contradiction with the recorded inputs.

    Constraints used: m_L <= dag <= m_L + delta; dag <= m_L' <= (p-1)dag + m_L;
    mu_L' >= mu_L + dag and mu_L' >= mu_L; if mu_L' is finite then dag >= delta;
    and m_L' = 0 forces mu_L' = 0.
    """
    p = sc.p
    dlo, dhi = sc.delta
    mu_prime_known = sc.mu_Lprime is not None and sc.mu_Lprime != INFINITY
    finite = mu_prime_known or sc.assume_mu_finite
    feasible = []
    for delta in range(dlo, dhi + 1):
        for dag in range(sc.m_L, sc.m_L + delta + 1):
            if finite and dag < delta:
                continue
            m_lo, m_hi = dag, (p - 1) * dag + sc.m_L
            if sc.m_Lprime is not None:
                if not (m_lo <= sc.m_Lprime <= m_hi):
                    continue
                m_vals = [sc.m_Lprime]
            else:
                m_vals = list(range(m_lo, m_hi + 1))
            for m_prime in m_vals:
                mu_lower = max(sc.mu_L + dag, sc.mu_L)
                if mu_prime_known:
                    if sc.mu_Lprime < mu_lower:
                        continue
                    if m_prime == 0 and sc.mu_Lprime != 0:
                        continue
                    if sc.mu_Lprime > 0 and m_prime == 0:
                        continue
                feasible.append((delta, dag, m_prime))
    if not feasible:
        return {"feasible": False, "witness": "no (delta, dag, m_L') satisfies all constraints"}

    dags = sorted({f[1] for f in feasible})
    m_primes = sorted({f[2] for f in feasible})
    deltas = sorted({f[0] for f in feasible})
    out = {
        "feasible": True,
        "dag_set": dags,
        "delta_set": deltas,
        "m_Lprime_set": m_primes,
        "mu_Lprime_lower": sc.mu_L + min(dags),
    }
    if sc.mu_Lprime == INFINITY:
        out["mu_Lprime"] = INFINITY
    elif mu_prime_known:
        out["mu_Lprime"] = sc.mu_Lprime
        out["elementary_invariants"] = _elementary_possibilities(p, sc.mu_Lprime, m_primes)
    elif sc.mu_L == 0 and sc.m_L == 0 and (dlo, dhi) == (0, 0):
        # mu and m vanish and no local contribution: the extension tower
        # stays torsion with vanishing invariants
        out["mu_Lprime"] = 0
        out["m_Lprime_set"] = [0]
        out["dag_set"] = [0]
    return out


def _elementary_possibilities(p: int, mu: int, m_candidates: list[int]) -> list[str]:
    """Elementary invariant multisets p^{a_1},...,p^{a_m} with sum a_i = mu."""

    def partitions(total: int, parts: int, minimum: int = 1):
        if parts == 0:
            if total == 0:
                yield ()
            return
        for first in range(minimum, total - parts + 2):
            for rest in partitions(total - first, parts - 1, first):
                yield (first,) + rest

    out = []
    for m in m_candidates:
        if m == 0:
            if mu == 0:
                out.append("trivial")
            continue
        for part in partitions(mu, m):
            label = ",".join(f"p^{a}" if a > 1 else "p" for a in sorted(part, reverse=True))
            if label not in out:
                out.append(label)
    return out
