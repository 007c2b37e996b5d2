"""Dense univariate polynomials and truncated Laurent series over a field.

Internal helpers for the curve module: exact F_p polynomial arithmetic
(lists of coefficients, low-to-high) and local Laurent expansions used for
orders of vanishing and residues.
"""

from __future__ import annotations

from .fields import Field, FieldError


class UPoly:
    """Univariate polynomial; coeffs low-to-high with exact field values."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs=()):
        cs = [field.of_int(c) if isinstance(c, int) else c for c in coeffs]
        while cs and field.is_zero(cs[-1]):
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, field, c):
        return cls(field, [c])

    @classmethod
    def x(cls, field):
        return cls(field, [0, 1])

    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.field.eq(self.coeffs[0], self.field.one())

    def leading(self):
        if not self.coeffs:
            raise FieldError("zero polynomial")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, UPoly) and self.coeffs == other.coeffs \
            and self.field == other.field

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __add__(self, other):
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return UPoly(F, out)

    def __neg__(self):
        F = self.field
        return UPoly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if self.is_zero() or other.is_zero():
            return UPoly(F, [])
        out = [F.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if F.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return UPoly(F, out)

    def scalar_mul(self, c):
        F = self.field
        if isinstance(c, int):
            c = F.of_int(c)
        return UPoly(F, [F.mul(a, c) for a in self.coeffs])

    def __pow__(self, e):
        r = UPoly(self.field, [1])
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def divmod(self, other):
        F = self.field
        if other.is_zero():
            raise FieldError("division by the zero polynomial")
        rem = list(self.coeffs)
        d = other.coeffs
        dn = len(d) - 1
        linv = F.inv(d[-1])
        if len(rem) <= dn:
            return UPoly(F, []), UPoly(F, rem)
        q = [F.zero()] * (len(rem) - dn)
        for i in range(len(rem) - dn - 1, -1, -1):
            c = F.mul(rem[i + dn], linv)
            if F.is_zero(c):
                continue
            q[i] = c
            for j, dc in enumerate(d):
                rem[i + j] = F.sub(rem[i + j], F.mul(c, dc))
        return UPoly(F, q), UPoly(F, rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def monic(self):
        if self.is_zero():
            return self
        return self.scalar_mul(self.field.inv(self.leading()))

    def gcd(self, other) -> "UPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def eval(self, x0):
        F = self.field
        acc = F.zero()
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x0), c)
        return acc

    def deriv(self) -> "UPoly":
        F = self.field
        return UPoly(F, [F.mul(F.of_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def shift(self, x0) -> "UPoly":
        """The polynomial p(x + x0)."""
        F = self.field
        out = UPoly(F, [])
        xp = UPoly(F, [1])
        t = UPoly(F, [x0, 1])
        for c in self.coeffs:
            out = out + xp.scalar_mul(c)
            xp = xp * t
        return out

    def resultant_disc_nonzero(self) -> bool:
        """True iff gcd(p, p') = 1, i.e. p is squarefree."""
        return self.gcd(self.deriv()).degree() == 0

    def __repr__(self):
        if not self.coeffs:
            return "0"
        F = self.field
        bits = []
        for i, c in enumerate(self.coeffs):
            if F.is_zero(c):
                continue
            cs = F.format(c)
            if i == 0:
                bits.append(cs)
            elif i == 1:
                bits.append(f"{cs}*x" if cs != "1" else "x")
            else:
                bits.append(f"{cs}*x^{i}" if cs != "1" else f"x^{i}")
        return " + ".join(reversed(bits))


class Laurent:
    """Truncated Laurent series: sum of coeffs[i] * t^(offset + i).

    Coefficients are exact field values; prec is the exponent at which the
    expansion stops being known (exclusive).
    """

    __slots__ = ("field", "offset", "coeffs")

    def __init__(self, field, offset: int, coeffs):
        self.field = field
        self.offset = offset
        self.coeffs = list(coeffs)

    @property
    def prec(self) -> int:
        return self.offset + len(self.coeffs)

    @classmethod
    def const(cls, field, c, prec: int):
        if prec <= 0:
            return cls(field, prec, [])
        out = [field.zero()] * prec
        out[0] = c
        return cls(field, 0, out)

    @classmethod
    def t_power(cls, field, e: int, prec: int):
        if prec <= e:
            return cls(field, prec, [])
        out = [field.zero()] * (prec - e)
        out[0] = field.one()
        return cls(field, e, out)

    def coeff(self, e: int):
        if e >= self.prec:
            raise FieldError(f"coefficient t^{e} beyond precision {self.prec}")
        if e < self.offset:
            return self.field.zero()
        return self.coeffs[e - self.offset]

    def valuation(self):
        """Exponent of the first nonzero known coefficient, or None."""
        F = self.field
        for i, c in enumerate(self.coeffs):
            if not F.is_zero(c):
                return self.offset + i
        return None

    def truncate(self, prec: int) -> "Laurent":
        if prec >= self.prec:
            return self
        return Laurent(self.field, self.offset, self.coeffs[:max(0, prec - self.offset)])

    def __add__(self, other):
        F = self.field
        off = min(self.offset, other.offset)
        prec = min(self.prec, other.prec)
        out = [F.zero()] * (prec - off)
        for src in (self, other):
            for i, c in enumerate(src.coeffs):
                e = src.offset + i
                if e < prec:
                    out[e - off] = F.add(out[e - off], c)
        return Laurent(F, off, out)

    def __neg__(self):
        F = self.field
        return Laurent(F, self.offset, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        # precision bookkeeping: known terms of the product
        sv = self.valuation()
        ov = other.valuation()
        so = self.offset if sv is None else sv
        oo = other.offset if ov is None else ov
        prec = min(self.prec + oo, other.prec + so)
        off = self.offset + other.offset
        out = [F.zero()] * max(0, prec - off)
        for i, a in enumerate(self.coeffs):
            if F.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                e = self.offset + i + other.offset + j
                if e < prec:
                    out[e - off] = F.add(out[e - off], F.mul(a, b))
        return Laurent(F, off, out)

    def scalar_mul(self, c):
        F = self.field
        return Laurent(F, self.offset, [F.mul(a, c) for a in self.coeffs])

    def shift(self, e: int) -> "Laurent":
        return Laurent(self.field, self.offset + e, self.coeffs)

    def inverse(self) -> "Laurent":
        F = self.field
        v = self.valuation()
        if v is None:
            raise FieldError("cannot invert a series with no known nonzero term")
        lead = self.coeff(v)
        nterms = self.prec - v
        a = [self.coeff(v + i) for i in range(nterms)]
        li = F.inv(lead)
        out = [F.zero()] * nterms
        out[0] = li
        for m in range(1, nterms):
            acc = F.zero()
            for i in range(1, m + 1):
                acc = F.add(acc, F.mul(a[i], out[m - i]))
            out[m] = F.neg(F.mul(li, acc))
        return Laurent(F, -v, out)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = None
        b = self
        while e:
            if e & 1:
                result = b if result is None else result * b
            e >>= 1
            if e:
                b = b * b
        if result is None:
            return Laurent.const(self.field, self.field.one(), max(1, self.prec))
        return result

    def deriv(self) -> "Laurent":
        F = self.field
        out = []
        for i, c in enumerate(self.coeffs):
            e = self.offset + i
            out.append(F.mul(F.of_int(e), c))
        return Laurent(F, self.offset - 1, out)

    def eval_upoly(self, p: UPoly) -> "Laurent":
        """p(self) for a polynomial p, by Horner."""
        F = self.field
        prec = self.prec
        acc = Laurent.const(F, F.zero(), prec)
        for c in reversed(p.coeffs):
            acc = acc * self
            acc = acc + Laurent.const(F, c, prec)
        return acc.truncate(prec)

    def __repr__(self):
        F = self.field
        bits = [f"{F.format(c)}*t^{self.offset + i}"
                for i, c in enumerate(self.coeffs) if not F.is_zero(c)]
        return (" + ".join(bits) or "0") + f" + O(t^{self.prec})"
