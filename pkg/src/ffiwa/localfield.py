"""Laurent series over a finite field, exact or truncated.

A series is a coefficient window starting at ``offset``; ``prec`` is the first
exponent about which nothing is known (``None`` for exact Laurent
polynomials).  Multiplication and inversion propagate precision the usual
way, and operations that would need unknown coefficients raise
:class:`PrecisionError` instead of guessing.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .exceptions import DivisionByZero, PrecisionError
from .fields import Field


class Laurent:
    __slots__ = ("field", "offset", "coeffs", "prec")

    def __init__(
        self,
        field: Field,
        offset: int,
        coeffs: Sequence[int],
        prec: Optional[int] = None,
    ):
        cs = list(coeffs)
        if prec is not None:
            cs = cs[: max(0, prec - offset)]
        # normalize: strip leading zeros (raising offset), trailing zeros if exact
        start = 0
        while start < len(cs) and cs[start] == 0:
            start += 1
        cs = cs[start:]
        offset += start
        if prec is None:
            while cs and cs[-1] == 0:
                cs.pop()
        self.field = field
        self.offset = offset
        self.coeffs = tuple(cs)
        self.prec = prec
        if not cs:
            self.offset = 0

    # -- constructors ------------------------------------------------------
    @staticmethod
    def zero(field: Field, prec: Optional[int] = None) -> "Laurent":
        return Laurent(field, 0, (), prec)

    @staticmethod
    def one(field: Field, prec: Optional[int] = None) -> "Laurent":
        return Laurent(field, 0, (1,), prec)

    @staticmethod
    def term(field: Field, c: int, n: int, prec: Optional[int] = None) -> "Laurent":
        return Laurent(field, n, (c,), prec)

    @staticmethod
    def uniformizer(field: Field, prec: Optional[int] = None) -> "Laurent":
        return Laurent.term(field, 1, 1, prec)

    # -- structure ---------------------------------------------------------
    def is_zero(self) -> bool:
        """True when every known coefficient vanishes."""
        return not self.coeffs

    def coeff(self, n: int) -> int:
        if self.prec is not None and n >= self.prec:
            raise PrecisionError(f"coefficient at {n} beyond precision {self.prec}")
        if self.offset <= n < self.offset + len(self.coeffs):
            return self.coeffs[n - self.offset]
        return 0

    def ord(self) -> int:
        """Valuation: exponent of the lowest nonzero known coefficient."""
        if not self.coeffs:
            if self.prec is not None:
                raise PrecisionError("valuation of a series that is zero to precision")
            raise DivisionByZero("valuation of the zero series")
        return self.offset

    def truncate(self, prec: int) -> "Laurent":
        new_prec = prec if self.prec is None else min(prec, self.prec)
        return Laurent(self.field, self.offset, self.coeffs, new_prec)

    def known_upto(self) -> Optional[int]:
        return self.prec

    # -- arithmetic --------------------------------------------------------
    def _join_prec(self, other: "Laurent") -> Optional[int]:
        if self.prec is None:
            return other.prec
        if other.prec is None:
            return self.prec
        return min(self.prec, other.prec)

    def __add__(self, other: "Laurent") -> "Laurent":
        F = self.field
        prec = self._join_prec(other)
        if not self.coeffs:
            return Laurent(F, other.offset, other.coeffs, prec)
        if not other.coeffs:
            return Laurent(F, self.offset, self.coeffs, prec)
        lo = min(self.offset, other.offset)
        hi = max(self.offset + len(self.coeffs), other.offset + len(other.coeffs))
        out = [0] * (hi - lo)
        for i, c in enumerate(self.coeffs):
            out[self.offset - lo + i] = c
        for i, c in enumerate(other.coeffs):
            j = other.offset - lo + i
            out[j] = F.add(out[j], c)
        return Laurent(F, lo, out, prec)

    def __neg__(self) -> "Laurent":
        F = self.field
        return Laurent(F, self.offset, [F.neg(c) for c in self.coeffs], self.prec)

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other: "Laurent") -> "Laurent":
        F = self.field
        # precision of a product: each factor's noise enters shifted by the
        # other factor's valuation
        prec = None
        if self.prec is not None or other.prec is not None:
            cands = []
            if self.prec is not None:
                cands.append(self.prec + (other.offset if other.coeffs else 0))
            if other.prec is not None:
                cands.append(other.prec + (self.offset if self.coeffs else 0))
            prec = min(cands)
        if not self.coeffs or not other.coeffs:
            return Laurent.zero(F, prec)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(other.coeffs):
                if y:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Laurent(F, self.offset + other.offset, out, prec)

    def scale(self, c: int) -> "Laurent":
        F = self.field
        return Laurent(F, self.offset, [F.mul(c, x) for x in self.coeffs], self.prec)

    def shift(self, n: int) -> "Laurent":
        prec = None if self.prec is None else self.prec + n
        return Laurent(self.field, self.offset + n, self.coeffs, prec)

    def inverse(self, prec: Optional[int] = None) -> "Laurent":
        """Multiplicative inverse to precision ``prec`` worth of terms.

        For an exact series a precision is required unless the series is a
        single term (whose inverse is again exact).
        """
        F = self.field
        if self.is_zero():
            raise DivisionByZero("inverse of zero series")
        v = self.ord()
        if len(self.coeffs) == 1 and self.prec is None:
            return Laurent(F, -v, (F.inv(self.coeffs[0]),), prec)
        if self.prec is not None:
            # noise at order >= prec in self surfaces at order >= prec - 2v
            valid = self.prec - 2 * v
            prec = valid if prec is None else min(prec, valid)
        if prec is None:
            raise PrecisionError("inverse of a general exact series needs a precision")
        nterms = prec + v  # want exponents in [-v, prec)
        if nterms <= 0:
            return Laurent.zero(F, prec)
        a0_inv = F.inv(self.coeffs[0])
        out = [0] * nterms
        out[0] = a0_inv
        for n in range(1, nterms):
            acc = 0
            for j in range(1, min(n, len(self.coeffs) - 1) + 1):
                c = self.coeffs[j]
                if c:
                    acc = F.add(acc, F.mul(c, out[n - j]))
            out[n] = F.neg(F.mul(a0_inv, acc))
        return Laurent(F, -v, out, prec)

    def __pow__(self, e: int) -> "Laurent":
        if e < 0:
            return self.inverse() ** (-e)
        result = Laurent.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def pth_power(self) -> "Laurent":
        """Frobenius: (sum a_i u^i)^p = sum a_i^p u^{ip}, exact in char p."""
        F, p = self.field, self.field.p
        prec = None if self.prec is None else p * (self.prec - 1) + 1
        if not self.coeffs:
            return Laurent.zero(F, prec)
        out = [0] * ((len(self.coeffs) - 1) * p + 1)
        for i, c in enumerate(self.coeffs):
            out[i * p] = F.pow(c, p)
        return Laurent(F, self.offset * p, out, prec)

    def __eq__(self, other):
        return (
            isinstance(other, Laurent)
            and self.field is other.field
            and self.offset == other.offset
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.offset, self.coeffs))

    def items(self):
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.offset + i, c

    def __repr__(self):
        if not self.coeffs:
            body = "0"
        else:
            body = " + ".join(
                (f"{c}*u^{n}" if n not in (0, 1) else (f"{c}*u" if n == 1 else str(c)))
                for n, c in self.items()
            )
        tail = f" + O(u^{self.prec})" if self.prec is not None else ""
        return f"Laurent({body}{tail})"
