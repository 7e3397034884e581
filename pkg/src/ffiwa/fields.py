"""Exact arithmetic over small finite fields and rational function fields.

Elements of a finite field are integer codes in ``[0, q)``: a code is read in
base ``|base field|`` as the coefficient vector of a polynomial-basis
representative.  Field objects expose arithmetic on codes; they never wrap
codes in element objects, which keeps enumeration loops cheap.

Moduli are deterministic: ``GF(p, k)`` always uses the lexicographically
smallest monic irreducible of degree ``k`` over GF(p) (smallest integer code),
so outputs are reproducible bit for bit.

Polynomials over a field are immutable little-endian coefficient tuples
(class :class:`Poly`), rational functions are reduced fractions with a monic
denominator (:class:`RationalFunc`), and places of GF(q)(t) are either monic
irreducibles or the distinguished place at infinity (:class:`Place`).
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .exceptions import (
    DivisionByZero,
    ParseError,
    PoleAtPlace,
    UndefinedValuation,
)

# full multiplication tables are built automatically only for tiny fields
# (the unit-filtration enumerations); larger fields opt in via ensure_tables
_MUL_TABLE_CAP = 64


class Field:
    """Common interface for prime fields and extensions (codes are ints)."""

    p: int
    q: int
    deg_over_prime: int

    def add(self, a: int, b: int) -> int:
        raise NotImplementedError

    def neg(self, a: int) -> int:
        raise NotImplementedError

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        raise NotImplementedError

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def frobenius(self, a: int) -> int:
        """x -> x^p, the absolute Frobenius."""
        return self.pow(a, self.p)

    def from_int(self, n: int) -> int:
        """Image of the rational integer n under Z -> GF(p) -> self."""
        return n % self.p

    def elements(self) -> Iterator[int]:
        return iter(range(self.q))

    def trace_abs(self, a: int) -> int:
        """Absolute trace to GF(p), returned as an integer in [0, p)."""
        t, x = 0, a
        for _ in range(self.deg_over_prime):
            t = self.add(t, x)
            x = self.frobenius(x)
        assert t < self.p
        return t

    def sqrt(self, a: int) -> Optional[int]:
        """A square root of a, or None if a is not a square."""
        if a == 0:
            return 0
        if self.p == 2:
            return self.pow(a, self.q // 2)
        if self.pow(a, (self.q - 1) // 2) != 1:
            return None
        # q is small here; scan (fields in this package stay tiny outside numpy paths)
        for x in range(1, self.q):
            if self.mul(x, x) == a:
                return x
        return None

    def multiplicative_generator(self) -> int:
        factors = _prime_factors(self.q - 1)
        for g in range(2, self.q):
            if all(self.pow(g, (self.q - 1) // r) != 1 for r in factors):
                return g
        raise ArithmeticError("no generator found")  # pragma: no cover


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.q = p
        self.deg_over_prime = 1

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inversion of zero")
        return pow(a, self.p - 2, self.p)

    def frobenius(self, a):
        return a

    def trace_abs(self, a):
        return a

    def __repr__(self):
        return f"GF({self.p})"


class ExtField(Field):
    """Extension of ``base`` by a monic irreducible ``modulus`` (base codes)."""

    def __init__(self, base: Field, modulus: Sequence[int], name: str = "x"):
        if len(modulus) < 2 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree >= 1")
        self.base = base
        self.modulus = tuple(modulus)
        self.k = len(modulus) - 1
        self.p = base.p
        self.q = base.q**self.k
        self.deg_over_prime = base.deg_over_prime * self.k
        self.name = name
        self._mul_table = None
        self._inv_table = None
        if self.q <= _MUL_TABLE_CAP:
            self._build_tables()

    # -- code <-> digit helpers -------------------------------------------
    def digits(self, a: int) -> list[int]:
        qb, out = self.base.q, []
        for _ in range(self.k):
            a, r = divmod(a, qb)
            out.append(r)
        return out

    def from_digits(self, ds: Sequence[int]) -> int:
        qb, a = self.base.q, 0
        for c in reversed(list(ds[: self.k])):
            a = a * qb + c
        return a

    def gen(self) -> int:
        """The class of the adjoined root (code of the degree-1 monomial)."""
        return self.base.q

    # -- arithmetic --------------------------------------------------------
    def add(self, a, b):
        ba = self.base
        return self.from_digits([ba.add(x, y) for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a):
        ba = self.base
        return self.from_digits([ba.neg(x) for x in self.digits(a)])

    def _mul_raw(self, a, b):
        ba, k = self.base, self.k
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x == 0:
                continue
            for j, y in enumerate(db):
                if y:
                    prod[i + j] = ba.add(prod[i + j], ba.mul(x, y))
        # reduce mod modulus (monic)
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i]
            if c == 0:
                continue
            prod[i] = 0
            for j in range(self.k):
                m = self.modulus[j]
                if m:
                    prod[i - k + j] = ba.sub(prod[i - k + j], ba.mul(c, m))
        return self.from_digits(prod[:k])

    def mul(self, a, b):
        if self._mul_table is not None:
            return self._mul_table[a * self.q + b]
        return self._mul_raw(a, b)

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inversion of zero")
        if self._inv_table is not None:
            return self._inv_table[a]
        return self.pow(a, self.q - 2)

    def _build_tables(self):
        q = self.q
        table = [0] * (q * q)
        for a in range(q):
            row = a * q
            for b in range(a, q):
                v = self._mul_raw(a, b)
                table[row + b] = v
                table[b * q + a] = v
        self._mul_table = table
        inv = [0] * q
        for a in range(1, q):
            inv[a] = self.pow(a, q - 2)
        self._inv_table = inv

    def ensure_tables(self, cap: int = 4096):
        """Opt in to full lookup tables for hot enumeration loops."""
        if self._mul_table is None and self.q <= cap:
            self._build_tables()

    def from_int(self, n):
        return self.base.from_int(n)

    def __repr__(self):
        return f"GF({self.p}^{self.deg_over_prime})"


def _poly_is_irreducible_over_prime(p: int, coeffs: tuple[int, ...]) -> bool:
    """Irreducibility over GF(p) via gcd(x^{p^i} - x, f) for i <= deg/2."""
    f = PrimeField(p)
    fpoly = Poly(f, coeffs)
    n = fpoly.degree()
    x = Poly(f, (0, 1))
    xq = x
    for i in range(1, n // 2 + 1):
        xq = pow(xq, p, fpoly)
        if (xq - x).gcd(fpoly).degree() > 0:
            return False
    return True


@lru_cache(maxsize=None)
def GF(p: int, k: int = 1) -> Field:
    """The field GF(p^k) with the fixed lexicographically-minimal modulus."""
    if k == 1:
        return PrimeField(p)
    base = PrimeField(p)
    # smallest integer code x^k + tail that is irreducible over GF(p)
    for tail in range(p**k):
        coeffs = []
        t = tail
        for _ in range(k):
            t, r = divmod(t, p)
            coeffs.append(r)
        coeffs.append(1)
        if _poly_is_irreducible_over_prime(p, tuple(coeffs)):
            return ExtField(base, coeffs)
    raise ArithmeticError("no irreducible modulus found")  # pragma: no cover


class Poly:
    """Univariate polynomial over ``field``; coefficients little-endian codes."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: Field, coeffs: Sequence[int] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)
        self._hash = None

    # -- constructors ------------------------------------------------------
    @staticmethod
    def zero(field: Field) -> "Poly":
        return Poly(field, ())

    @staticmethod
    def one(field: Field) -> "Poly":
        return Poly(field, (1,))

    @staticmethod
    def x(field: Field) -> "Poly":
        return Poly(field, (0, 1))

    @staticmethod
    def const(field: Field, c: int) -> "Poly":
        return Poly(field, (c,))

    # -- basic structure ---------------------------------------------------
    def degree(self) -> int:
        """Degree, with deg 0 = -1 by convention."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.field), self.coeffs))
        return self._hash

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs and self.field is other.field

    def __bool__(self):
        return bool(self.coeffs)

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    def __neg__(self) -> "Poly":
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(F, ())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Poly(F, out)

    def scale(self, c: int) -> "Poly":
        F = self.field
        return Poly(F, [F.mul(c, x) for x in self.coeffs])

    def shift(self, n: int) -> "Poly":
        """Multiply by x^n."""
        if self.is_zero():
            return self
        return Poly(self.field, (0,) * n + self.coeffs)

    def __divmod__(self, other: "Poly"):
        F = self.field
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        r = list(self.coeffs)
        d = other.degree()
        lead_inv = F.inv(other.leading())
        q = [0] * max(0, len(r) - d)
        for i in range(len(r) - 1, d - 1, -1):
            c = r[i]
            if c == 0:
                continue
            f = F.mul(c, lead_inv)
            q[i - d] = f
            for j, oc in enumerate(other.coeffs):
                if oc:
                    r[i - d + j] = F.sub(r[i - d + j], F.mul(f, oc))
        return Poly(F, q), Poly(F, r[:d])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int, mod: Optional["Poly"] = None) -> "Poly":
        result = Poly.one(self.field)
        base = self if mod is None else self % mod
        while e:
            if e & 1:
                result = result * base
                if mod is not None:
                    result %= mod
            base = base * base
            if mod is not None:
                base %= mod
            e >>= 1
        return result

    def monic(self) -> "Poly":
        if self.is_zero() or self.leading() == 1:
            return self
        return self.scale(self.field.inv(self.leading()))

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def derivative(self) -> "Poly":
        F = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            c = self.coeffs[i]
            out.append(F.mul(F.from_int(i), c))
        return Poly(F, out)

    def eval(self, x: int, field: Optional[Field] = None) -> int:
        """Evaluate at a code x, optionally in an extension (coefficients coerced)."""
        F = field or self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def eval_ext(self, x: int, ext: Field, embed) -> int:
        """Evaluate at x in ext, mapping each coefficient through `embed`."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = ext.add(ext.mul(acc, x), embed(c))
        return acc

    def reverse(self) -> "Poly":
        return Poly(self.field, tuple(reversed(self.coeffs)))

    def frobenius_coeffs(self) -> "Poly":
        F = self.field
        return Poly(F, [F.frobenius(c) for c in self.coeffs])

    def pth_root(self) -> "Poly":
        """Inverse of x -> x^p on polynomials of the form g(x^p)."""
        F, p = self.field, self.field.p
        root_exp = F.q // p  # a -> a^(q/p) inverts Frobenius on GF(q)
        out = []
        for i in range(0, len(self.coeffs), p):
            out.append(F.pow(self.coeffs[i], root_exp))
        return Poly(F, out)

    def __repr__(self):
        return f"Poly({format_poly(self)})"


def format_poly(f: Poly, var: str = "t") -> str:
    if f.is_zero():
        return "0"
    parts = []
    for i in range(f.degree(), -1, -1):
        c = f[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            head = "" if c == 1 else f"{c}*"
            parts.append(f"{head}{var}" + (f"^{i}" if i > 1 else ""))
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# factorization


def squarefree_part(f: Poly) -> Poly:
    """The radical (product of distinct monic irreducible factors) of f."""
    out = Poly.one(f.field)
    for g, _ in factor(f):
        out = out * g
    return out


def factor(f: Poly, seed: int = 12345) -> list[tuple[Poly, int]]:
    """Factor monic f into (irreducible, multiplicity) pairs, deterministically.

    Distinct-degree factorization finds the irreducibles of the radical;
    multiplicities come from trial division.  The equal-degree splitting is
    Cantor-Zassenhaus with a fixed-seed generator so runs are reproducible.
    """
    F = f.field
    if f.degree() <= 0:
        return []
    f = f.monic()
    rng = random.Random(seed)
    distinct: list[Poly] = []

    def radical_factors(g: Poly):
        if g.degree() <= 0:
            return
        d = g.derivative()
        if d.is_zero():
            radical_factors(g.pth_root())
            return
        s = g.gcd(d)
        sqfree = (g // s).monic()
        x = Poly.x(F)
        xq = x
        rem = sqfree
        dd = 1
        while rem.degree() >= 2 * dd:
            xq = pow(xq, F.q, rem)
            h = rem.gcd(xq - x)
            if h.degree() > 0:
                split_list(h, dd)
                rem = rem // h
                xq = xq % rem
            dd += 1
        if rem.degree() > 0:
            split_list(rem, rem.degree())
        if s.degree() > 0:
            radical_factors(s)

    def split_list(g: Poly, d: int):
        if g.degree() == d:
            if g not in distinct:
                distinct.append(g)
            return
        qd = F.q**d
        while True:
            r = Poly(F, [rng.randrange(F.q) for _ in range(g.degree())])
            if r.degree() < 1:
                continue
            if F.p == 2:
                tr = Poly.zero(F)
                s = r % g
                for _ in range(d * F.deg_over_prime):
                    tr = (tr + s) % g
                    s = pow(s, 2, g)
                h = g.gcd(tr)
            else:
                h = g.gcd(pow(r, (qd - 1) // 2, g) - Poly.one(F))
            if 0 < h.degree() < g.degree():
                split_list(h, d)
                split_list(g // h, d)
                return

    radical_factors(f)
    out = []
    rem = f
    for irr in sorted(distinct, key=lambda g: (g.degree(), g.coeffs)):
        m = 0
        while True:
            q, r = divmod(rem, irr)
            if r.is_zero():
                rem, m = q, m + 1
            else:
                break
        if m:
            out.append((irr, m))
    assert rem.degree() == 0, "factorization lost a factor"
    return out


def is_irreducible(f: Poly) -> bool:
    F = f.field
    n = f.degree()
    if n <= 0:
        return False
    if n == 1:
        return True
    f = f.monic()
    x = Poly.x(F)
    xq = x
    for _ in range(n):
        xq = pow(xq, F.q, f)
    if xq != x % f:
        return False
    for r in _prime_factors(n):
        xqe = x
        for _ in range(n // r):
            xqe = pow(xqe, F.q, f)
        if (xqe - x).gcd(f).degree() > 0:
            return False
    return True


def irreducibles_up_to(field: Field, bound: int) -> list[Poly]:
    """All monic irreducibles of degree <= bound, sorted by (degree, code)."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    out: list[Poly] = []
    for d in range(1, bound + 1):
        for tail in itertools.product(range(field.q), repeat=d):
            f = Poly(field, tuple(tail) + (1,))
            if d == 1 or is_irreducible(f):
                out.append(f)
    return out


# ---------------------------------------------------------------------------
# rational functions


class RationalFunc:
    """Reduced fraction of polynomials with monic denominator; canonical 0 is 0/1."""

    __slots__ = ("field", "num", "den")

    def __init__(self, num: Poly, den: Optional[Poly] = None):
        F = num.field
        if den is None:
            den = Poly.one(F)
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        g = num.gcd(den)
        if g.degree() > 0:
            num, den = num // g, den // g
        lead = den.leading()
        if lead != 1:
            c = F.inv(lead)
            num, den = num.scale(c), den.scale(c)
        self.field = F
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------------
    @staticmethod
    def zero(field: Field) -> "RationalFunc":
        return RationalFunc(Poly.zero(field))

    @staticmethod
    def one(field: Field) -> "RationalFunc":
        return RationalFunc(Poly.one(field))

    @staticmethod
    def t(field: Field) -> "RationalFunc":
        return RationalFunc(Poly.x(field))

    @staticmethod
    def const(field: Field, c: int) -> "RationalFunc":
        return RationalFunc(Poly.const(field, c))

    @staticmethod
    def from_int(field: Field, n: int) -> "RationalFunc":
        return RationalFunc(Poly.const(field, field.from_int(n)))

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_one()

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        return RationalFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise DivisionByZero("division by zero rational function")
        return RationalFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return RationalFunc.one(self.field) / self ** (-e)
        return RationalFunc(self.num**e, self.den**e)

    def _coerce(self, other) -> "RationalFunc":
        if isinstance(other, RationalFunc):
            return other
        if isinstance(other, Poly):
            return RationalFunc(other)
        if isinstance(other, int):
            return RationalFunc.from_int(self.field, other)
        raise TypeError(f"cannot coerce {other!r}")

    def subst_inverse(self) -> "RationalFunc":
        """f(1/t) as a rational function of t."""
        dn, dd = self.num.degree(), self.den.degree()
        if self.is_zero():
            return self
        num = self.num.reverse()
        den = self.den.reverse()
        # f(1/t) = t^(dd-dn) * rev(num)/rev(den)
        shift = dd - dn
        if shift >= 0:
            return RationalFunc(num.shift(shift), den)
        return RationalFunc(num, den.shift(-shift))

    def __repr__(self):
        if self.den.is_one():
            return f"RationalFunc({format_poly(self.num)})"
        return f"RationalFunc(({format_poly(self.num)})/({format_poly(self.den)}))"


# ---------------------------------------------------------------------------
# places and valuations

_RESIDUE_FIELD_CACHE: dict = {}


class Place:
    """A place of GF(q)(t): a monic irreducible, or the place at infinity."""

    __slots__ = ("field", "poly", "degree")

    def __init__(self, field: Field, poly: Optional[Poly]):
        self.field = field
        if poly is None:
            self.poly = None
            self.degree = 1
        else:
            if poly.leading() != 1 or not is_irreducible(poly):
                raise ValueError("finite places need a monic irreducible polynomial")
            self.poly = poly
            self.degree = poly.degree()

    @staticmethod
    def infinite(field: Field) -> "Place":
        return Place(field, None)

    @staticmethod
    def finite(poly: Poly) -> "Place":
        return Place(poly.field, poly)

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    def __eq__(self, other):
        return isinstance(other, Place) and self.poly == other.poly

    def __hash__(self):
        return hash(("place", self.poly))

    def __repr__(self):
        return "Place(inf)" if self.is_infinite else f"Place({format_poly(self.poly)})"

    def label(self) -> str:
        return "inf" if self.is_infinite else format_poly(self.poly)

    def residue_field(self) -> Field:
        """GF(q)[t]/(pi_v); for the infinite place, the constant field itself."""
        if self.is_infinite or self.degree == 1:
            return self.field
        key = (id(self.field), self.poly.coeffs)
        cached = _RESIDUE_FIELD_CACHE.get(key)
        if cached is None:
            cached = ExtField(self.field, self.poly.coeffs, name="t")
            _RESIDUE_FIELD_CACHE[key] = cached
        return cached

    def residue_root(self) -> int:
        """Code of the image of t in the residue field (finite places only)."""
        if self.is_infinite:
            raise ValueError("infinite place has no residue image of t")
        if self.degree == 1:
            return self.field.neg(self.poly[0])
        return self.field.q  # class of t, the generator of GF(q)[t]/(pi_v)


def ord_at(f: RationalFunc, v: Place) -> int:
    """Normalized valuation of f != 0 at v; order of vanishing of pi_v in f."""
    if f.is_zero():
        raise UndefinedValuation("valuation of zero is undefined")
    if v.is_infinite:
        return f.den.degree() - f.num.degree()

    def poly_ord(g: Poly) -> int:
        n = 0
        while True:
            q, r = divmod(g, v.poly)
            if not r.is_zero():
                return n
            g, n = q, n + 1

    return poly_ord(f.num) - poly_ord(f.den)


def evaluate_at_place(f: RationalFunc, v: Place):
    """Reduce f at v.  Returns (residue_field, code); raises PoleAtPlace on poles."""
    F = f.field
    if v.is_infinite:
        dn, dd = f.num.degree(), f.den.degree()
        if f.is_zero():
            return F, 0
        if dn > dd:
            raise PoleAtPlace("pole at the infinite place")
        if dn < dd:
            return F, 0
        return F, F.div(f.num.leading(), f.den.leading())
    if v.degree == 1:
        x = F.neg(v.poly[0])
        den = f.den.eval(x)
        if den == 0:
            if f.num.eval(x) == 0:
                raise ArithmeticError("unreduced rational function")  # pragma: no cover
            raise PoleAtPlace(f"pole at {v!r}")
        return F, F.div(f.num.eval(x), den)
    R = v.residue_field()
    num = _eval_mod(f.num, v.poly, R)
    den = _eval_mod(f.den, v.poly, R)
    if den == 0:
        raise PoleAtPlace(f"pole at {v!r}")
    return R, R.div(num, den)


def _eval_mod(g: Poly, modulus: Poly, R: Field) -> int:
    r = g % modulus
    return R.from_digits([r[i] for i in range(modulus.degree())])


def places_of_degree_up_to(field: Field, bound: int) -> list[Place]:
    """The infinite place followed by all finite places of degree <= bound."""
    out = [Place.infinite(field)]
    out.extend(Place.finite(f) for f in irreducibles_up_to(field, bound))
    return out


def divisor_degree(div: dict[Place, int]) -> int:
    return sum(m * v.degree for v, m in div.items())


def factor_into_places(f: RationalFunc) -> dict[Place, int]:
    """The divisor of f: finite places from num/den factorizations plus infinity."""
    if f.is_zero():
        raise UndefinedValuation("divisor of zero")
    div: dict[Place, int] = {}
    for g, m in factor(f.num):
        div[Place.finite(g)] = div.get(Place.finite(g), 0) + m
    for g, m in factor(f.den):
        div[Place.finite(g)] = div.get(Place.finite(g), 0) - m
    inf = f.den.degree() - f.num.degree()
    if inf:
        div[Place.infinite(f.field)] = inf
    return {v: m for v, m in div.items() if m}


# ---------------------------------------------------------------------------
# parser
#
# Grammar (whitespace ignored):
#   expr   := term (('+'|'-') term)*
#   term   := factor (('*'|'/') factor)*
#   factor := ('-')* atom ('^' integer)?
#   atom   := integer | 't' | '(' expr ')'
# Integers are coefficients mod p.  Examples: "t^2/(t+1)^3", "1/t^3 + 1/t + 1".


class _Tokens:
    def __init__(self, s: str):
        self.toks: list[str] = []
        i = 0
        while i < len(s):
            c = s[i]
            if c.isspace():
                i += 1
            elif c.isdigit():
                j = i
                while j < len(s) and s[j].isdigit():
                    j += 1
                self.toks.append(s[i:j])
                i = j
            elif c in "t^*/+-()u":
                self.toks.append(c)
                i += 1
            else:
                raise ParseError(f"unexpected character {c!r} at position {i}")
        self.pos = 0

    def peek(self) -> Optional[str]:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.pos += 1
        return tok


def parse_rational(field: Field, text: str, var: str = "t") -> RationalFunc:
    """Parse the documented grammar into a RationalFunc over GF(q)(t)."""
    toks = _Tokens(text)

    def expr() -> RationalFunc:
        val = term()
        while toks.peek() in ("+", "-"):
            op = toks.next()
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term() -> RationalFunc:
        val = factor()
        while toks.peek() in ("*", "/"):
            op = toks.next()
            rhs = factor()
            val = val * rhs if op == "*" else val / rhs
        return val

    def factor() -> RationalFunc:
        neg = False
        while toks.peek() == "-":
            toks.next()
            neg = not neg
        val = atom()
        if toks.peek() == "^":
            toks.next()
            e_tok = toks.next()
            if not e_tok.isdigit():
                raise ParseError(f"expected integer exponent, got {e_tok!r}")
            val = val ** int(e_tok)
        return -val if neg else val

    def atom() -> RationalFunc:
        tok = toks.next()
        if tok == var:
            return RationalFunc.t(field)
        if tok == "(":
            val = expr()
            if toks.next() != ")":
                raise ParseError("unbalanced parenthesis")
            return val
        if tok.isdigit():
            return RationalFunc.from_int(field, int(tok))
        raise ParseError(f"unexpected token {tok!r}")

    val = expr()
    if toks.peek() is not None:
        raise ParseError(f"trailing input from token {toks.peek()!r}")
    return val


def parse_place(field: Field, text: str, var: str = "t") -> Place:
    if text.strip() in ("inf", "infty", "infinity", "1/t"):
        return Place.infinite(field)
    f = parse_rational(field, text, var)
    if not f.den.is_one():
        raise ParseError("a finite place must be a polynomial")
    return Place.finite(f.num.monic())
