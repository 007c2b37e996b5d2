"""Hyperelliptic function fields y^2 = f(x) over F_p, with one point at infinity.

Provides exact local expansions at any rational place, orders of vanishing,
Riemann-Roch spaces L(D), residue ("duality") functionals, and compression
functionals.  The model is restricted to monic odd-degree f (deg f = 2g+1,
squarefree), so the curve has a single point at infinity and the coordinate
ring of the affine part is k[x, y]/(y^2 - f(x)).
"""

from __future__ import annotations

from .fields import Field, FieldError, PrimeField
from .matrix import exact_rank
from .poly import Algebra, Poly, PolyError
from .series import Laurent, UPoly

MAX_ORD_PREC = 4096


class CurveError(ValueError):
    pass


class Curve:
    def __init__(self, field: Field, fcoeffs):
        f = UPoly(field, fcoeffs)
        if f.degree() < 3 or f.degree() % 2 == 0:
            raise CurveError("f must have odd degree >= 3")
        if not field.eq(f.leading(), field.one()):
            raise CurveError("f must be monic")
        if isinstance(field, PrimeField) and field.p == 2:
            raise CurveError("characteristic 2 is not supported")
        if not f.resultant_disc_nonzero():
            raise CurveError("f must be squarefree (nonsingular model)")
        self.field = field
        self.f = f
        self.g = (f.degree() - 1) // 2
        self.algebra = Algebra(field, gens=("x", "y"),
                               relations=[(1, 0, f.coeffs)])
        self._exp_cache = {}

    def __repr__(self):
        return f"Curve(y^2 = {self.f!r})"

    # -- points ------------------------------------------------------------
    def infinity(self) -> "CurvePoint":
        return CurvePoint(self, None, None)

    def point(self, x0, y0) -> "CurvePoint":
        F = self.field
        if isinstance(x0, int):
            x0 = F.of_int(x0)
        if isinstance(y0, int):
            y0 = F.of_int(y0)
        if not F.eq(F.mul(y0, y0), self.f.eval(x0)):
            raise CurveError("point is not on the curve")
        return CurvePoint(self, x0, y0)

    def lift_x(self, x0):
        """The two (or one) points above x0, or [] if f(x0) is a non-residue."""
        F = self.field
        if isinstance(x0, int):
            x0 = F.of_int(x0)
        v = self.f.eval(x0)
        y0 = F.sqrt(v)
        if y0 is None:
            return []
        if F.is_zero(y0):
            return [CurvePoint(self, x0, y0)]
        return [CurvePoint(self, x0, y0), CurvePoint(self, x0, F.neg(y0))]

    def random_affine_point(self, rng, avoid=()) -> "CurvePoint":
        avoid = set(avoid)
        for _ in range(200):
            pts = self.lift_x(self.field.random(rng))
            pts = [p for p in pts if p not in avoid]
            if pts:
                return pts[rng.randrange(len(pts))]
        raise CurveError("could not find a random affine point (retry cap)")

    # -- local expansions --------------------------------------------------
    def expansions(self, P: "CurvePoint", prec: int):
        """(x(t), y(t)) as Laurent series in the local parameter at P.

        Parameter: x - x0 at ordinary affine points, y at affine Weierstrass
        points, x^g / y at infinity.
        """
        key = (P, prec)
        hit = self._exp_cache.get(key)
        if hit is not None:
            return hit
        F = self.field
        if P.is_infinity():
            val = self._expand_infinity(prec)
        elif F.is_zero(P.y):
            val = self._expand_weierstrass(P, prec)
        else:
            val = self._expand_ordinary(P, prec)
        self._exp_cache[key] = val
        return val

    def _expand_ordinary(self, P, prec):
        F = self.field
        xs = Laurent(F, 0, [P.x, F.one()] + [F.zero()] * max(0, prec - 2))
        fs = xs.eval_upoly(self.f)
        # solve y(t)^2 = f(x0 + t) with y(0) = y0 by coefficient recurrence
        a = [P.y]
        inv2y = F.inv(F.add(P.y, P.y))
        for m in range(1, prec):
            acc = fs.coeff(m)
            for i in range(1, m):
                acc = F.sub(acc, F.mul(a[i], a[m - i]))
            a.append(F.mul(acc, inv2y))
        return xs, Laurent(F, 0, a)

    def _expand_weierstrass(self, P, prec):
        F = self.field
        fsh = self.f.shift(P.x)  # f(x0 + u); constant term 0, u-coeff f'(x0) != 0
        f1inv = F.inv(fsh.coeffs[1])
        tail = UPoly(F, [F.zero(), F.zero()] + list(fsh.coeffs[2:]))
        t2 = Laurent.t_power(F, 2, prec + 2)
        u = t2.scalar_mul(f1inv)
        for _ in range(prec // 2 + 2):
            u = (t2 - u.eval_upoly(tail)).scalar_mul(f1inv).truncate(prec + 1)
        xs = u + Laurent.const(F, P.x, prec + 1)
        ys = Laurent.t_power(F, 1, prec + 1)
        return xs, ys

    def _expand_infinity(self, prec):
        F = self.field
        g = self.g
        # w = 1/x satisfies w = t^2 * Phi(w), Phi(w) = 1 + sum c_i w^(2g+1-i)
        phi = UPoly(F, [F.one()] + [self.f.coeffs[2 * g - i] for i in range(2 * g + 1)])
        wp = prec + 2 * g + 6
        t2 = Laurent.t_power(F, 2, wp)
        w = t2
        for _ in range(wp // 2 + 2):
            w = (t2 * w.eval_upoly(phi)).truncate(wp)
        xs = w.inverse()
        ys = (xs ** g) * Laurent.t_power(F, -1, wp)
        return xs.truncate(prec), ys.truncate(prec)

    # -- conversions -------------------------------------------------------
    def funcrep(self, a, b=(), d=(1,)) -> "FuncRep":
        return FuncRep(self, UPoly(self.field, a), UPoly(self.field, b),
                       UPoly(self.field, d))

    def funcrep_from_poly(self, p: Poly) -> "FuncRep":
        """FuncRep of a slot-0 polynomial a(x) + b(x) y."""
        F = self.field
        amap, bmap = {}, {}
        R = p.ring
        for key, c in p.terms.items():
            xe = ye = 0
            for i, e in R.unpack(key):
                gen, slot = R.var_info(i)
                if slot != 0:
                    raise CurveError("polynomial not in slot 0")
                if gen == 0:
                    xe = e
                elif gen == 1:
                    ye = e
            if ye == 0:
                amap[xe] = F.add(amap.get(xe, F.zero()), c)
            elif ye == 1:
                bmap[xe] = F.add(bmap.get(xe, F.zero()), c)
            else:
                raise CurveError("polynomial not reduced mod y^2 - f")
        mk = lambda m: UPoly(F, [m.get(i, F.zero()) for i in range(max(m, default=-1) + 1)])
        return FuncRep(self, mk(amap), mk(bmap), UPoly(F, [1]))

    def eval_hom(self, P: "CurvePoint"):
        """The evaluation homomorphism A -> k at an affine point."""
        if P.is_infinity():
            raise CurveError("no evaluation homomorphism at infinity")
        return self.algebra.spec_point((P.x, P.y), label=P)

    def to_json(self):
        return {"p": getattr(self.field, "p", None),
                "f": [self.field.format(c) for c in self.f.coeffs]}

    @classmethod
    def from_json(cls, data):
        field = PrimeField(int(data["p"]))
        return cls(field, [field.parse(str(c)) for c in data["f"]])


def phi_eval(w: Laurent, phi: UPoly) -> Laurent:
    return w.eval_upoly(phi)


class CurvePoint:
    __slots__ = ("curve", "x", "y")

    def __init__(self, curve, x, y):
        self.curve = curve
        self.x = x
        self.y = y

    def is_infinity(self) -> bool:
        return self.x is None

    def is_weierstrass(self) -> bool:
        return not self.is_infinity() and self.curve.field.is_zero(self.y)

    def conjugate(self) -> "CurvePoint":
        if self.is_infinity():
            return self
        return CurvePoint(self.curve, self.x, self.curve.field.neg(self.y))

    def __eq__(self, other):
        return isinstance(other, CurvePoint) and self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        if self.is_infinity():
            return "Inf"
        return f"({self.x}, {self.y})"


class Divisor:
    """Finite formal integer combination of curve points."""

    __slots__ = ("curve", "coeffs")

    def __init__(self, curve, coeffs=()):
        self.curve = curve
        cs = dict(coeffs)
        self.coeffs = {p: m for p, m in cs.items() if m != 0}

    @classmethod
    def of_point(cls, P, m=1):
        return cls(P.curve, {P: m})

    @classmethod
    def infinity(cls, curve, m=1):
        return cls(curve, {curve.infinity(): m})

    def mult(self, P) -> int:
        return self.coeffs.get(P, 0)

    def degree(self) -> int:
        return sum(self.coeffs.values())

    def support(self):
        return sorted(self.coeffs, key=lambda p: (p.is_infinity(), str(p.x), str(p.y)))

    def is_effective(self) -> bool:
        return all(m >= 0 for m in self.coeffs.values())

    def __add__(self, other):
        out = dict(self.coeffs)
        for p, m in other.coeffs.items():
            out[p] = out.get(p, 0) + m
        return Divisor(self.curve, out)

    def __neg__(self):
        return Divisor(self.curve, {p: -m for p, m in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> "Divisor":
        return Divisor(self.curve, {p: c * m for p, m in self.coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.coeffs == other.coeffs

    def __repr__(self):
        bits = [f"{m}*{p}" for p, m in sorted(
            self.coeffs.items(), key=lambda kv: (not kv[0].is_infinity(), repr(kv[0])))]
        return " + ".join(bits) or "0"

    def to_json(self):
        F = self.curve.field
        out = []
        for p, m in self.coeffs.items():
            if p.is_infinity():
                out.append(["inf", m])
            else:
                out.append([[F.format(p.x), F.format(p.y)], m])
        return sorted(out, key=str)

    @classmethod
    def from_json(cls, curve, data):
        F = curve.field
        total = cls(curve)
        for entry, m in data:
            if entry == "inf":
                P = curve.infinity()
            else:
                P = curve.point(F.parse(str(entry[0])), F.parse(str(entry[1])))
            total = total + cls.of_point(P, int(m))
        return total


class FuncRep:
    """Function-field element (a(x) + b(x) y) / d(x), d monic, gcd-reduced."""

    __slots__ = ("curve", "a", "b", "d")

    def __init__(self, curve, a: UPoly, b: UPoly, d: UPoly):
        F = curve.field
        if d.is_zero():
            raise CurveError("zero denominator")
        g = a.gcd(b).gcd(d) if not (a.is_zero() and b.is_zero()) else d.monic()
        if g.degree() > 0:
            a = a // g
            b = b // g
            d = d // g
        lead = d.leading()
        if not F.eq(lead, F.one()):
            li = F.inv(lead)
            a = a.scalar_mul(li)
            b = b.scalar_mul(li)
            d = d.scalar_mul(li)
        self.curve = curve
        self.a = a
        self.b = b
        self.d = d

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def is_poly(self) -> bool:
        return self.d.degree() == 0

    def __eq__(self, other):
        if not isinstance(other, FuncRep):
            return NotImplemented
        # canonical form makes structural equality exact
        return self.a == other.a and self.b == other.b and self.d == other.d

    def __add__(self, other):
        if isinstance(other, int):
            other = self.curve.funcrep([other])
        c = self.curve
        a = self.a * other.d + other.a * self.d
        b = self.b * other.d + other.b * self.d
        return FuncRep(c, a, b, self.d * other.d)

    __radd__ = __add__

    def __neg__(self):
        return FuncRep(self.curve, -self.a, -self.b, self.d)

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.curve.funcrep([other])
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = self.curve.funcrep([other])
        c = self.curve
        a = self.a * other.a + self.b * other.b * c.f
        b = self.a * other.b + self.b * other.a
        return FuncRep(c, a, b, self.d * other.d)

    __rmul__ = __mul__

    def scalar_mul(self, s) -> "FuncRep":
        return FuncRep(self.curve, self.a.scalar_mul(s), self.b.scalar_mul(s), self.d)

    def inverse(self) -> "FuncRep":
        if self.is_zero():
            raise CurveError("division by zero function")
        c = self.curve
        # 1 / ((a + b y)/d) = d (a - b y) / (a^2 - b^2 f)
        denom = self.a * self.a - self.b * self.b * c.f
        return FuncRep(c, self.d * self.a, -(self.d * self.b), denom)

    def __truediv__(self, other):
        return self * other.inverse()

    def evaluate(self, P: CurvePoint):
        F = self.curve.field
        if P.is_infinity():
            raise CurveError("use expansions at infinity")
        dv = self.d.eval(P.x)
        if F.is_zero(dv):
            raise CurveError("denominator vanishes at the point")
        num = F.add(self.a.eval(P.x), F.mul(self.b.eval(P.x), P.y))
        return F.mul(num, F.inv(dv))

    def expansion(self, P: CurvePoint, prec: int) -> Laurent:
        xs, ys = self.curve.expansions(P, prec)
        num = xs.eval_upoly(self.a) + ys * xs.eval_upoly(self.b)
        den = xs.eval_upoly(self.d)
        return num * den.inverse()

    def ord_at(self, P: CurvePoint) -> int:
        if self.is_zero():
            raise CurveError("the zero function has no order of vanishing")
        prec = 16
        while prec <= MAX_ORD_PREC:
            xs, ys = self.curve.expansions(P, prec)
            num = xs.eval_upoly(self.a) + ys * xs.eval_upoly(self.b)
            den = xs.eval_upoly(self.d)
            nv, dv = num.valuation(), den.valuation()
            if nv is not None and dv is not None:
                return nv - dv
            prec *= 2
        raise CurveError("order of vanishing needs more precision than allowed")

    def as_poly(self, ring, slot=0) -> Poly:
        """The element as a Poly in the given slot; requires denominator 1."""
        if self.d.degree() != 0:
            raise CurveError("element is not polynomial")
        p = ring.zero()
        for i, c in enumerate(self.a.coeffs):
            p = p + ring.var(0, slot, i).scalar_mul(c) if i else p + ring.const(c)
        for i, c in enumerate(self.b.coeffs):
            m = ring.var(1, slot)
            if i:
                m = m * ring.var(0, slot, i)
            p = p + m.scalar_mul(c)
        return p

    def numerator_poly(self, ring, slot=0) -> Poly:
        """a + b y as a Poly in the given slot (denominator ignored)."""
        return FuncRep(self.curve, self.a, self.b, UPoly(self.curve.field, [1])) \
            .as_poly(ring, slot)

    def __repr__(self):
        num = f"({self.a!r})"
        if not self.b.is_zero():
            num += f" + ({self.b!r})*y"
        if self.d.is_one():
            return num
        return f"({num})/({self.d!r})"


# -- Riemann-Roch spaces ---------------------------------------------------

def rr_basis(D: Divisor):
    """A deterministic k-basis of L(D) = {h : (h) + D >= 0} as FuncReps."""
    curve = D.curve
    F = curve.field
    g = curve.g
    if D.degree() < 0:
        return []
    # denominator clearing affine poles
    mult_by_x = {}
    for P, m in D.coeffs.items():
        if P.is_infinity() or m <= 0:
            continue
        need = (m + 1) // 2 if P.is_weierstrass() else m
        key = P.x
        mult_by_x[key] = max(mult_by_x.get(key, 0), need)
    d = UPoly(F, [1])
    for x0, m in sorted(mult_by_x.items(), key=lambda kv: str(kv[0])):
        d = d * (UPoly(F, [F.neg(x0), F.one()]) ** m)
    delta = d.degree()
    n_inf = D.mult(curve.infinity())
    bound = n_inf + 2 * delta
    candidates = []  # (i, j): numerator x^i y^j
    for j in (0, 1):
        imax = (bound - (2 * g + 1) * j) // 2
        for i in range(imax + 1):
            candidates.append((i, j))
    if not candidates:
        return []
    # constraint points: all points over cleared x-coordinates, plus required zeros
    cpoints = {}
    for P, m in D.coeffs.items():
        if not P.is_infinity():
            cpoints[P] = m
    for x0 in mult_by_x:
        for P in curve.lift_x(x0):
            cpoints.setdefault(P, D.mult(P))
    rows = []
    for P in sorted(cpoints, key=lambda p: (str(p.x), str(p.y))):
        n_P = cpoints[P]
        e_P = 2 if P.is_weierstrass() else 1
        ord_d = e_P * mult_by_x.get(P.x, 0)
        need = ord_d - n_P  # required ord of the numerator at P
        if need <= 0:
            continue
        xs, ys = curve.expansions(P, need + 1)
        cols = []
        for (i, j) in candidates:
            ser = xs ** i if i else Laurent.const(F, F.one(), need + 1)
            if j:
                ser = ser * ys
            cols.append([ser.coeff(k) for k in range(need)])
        for k in range(need):
            rows.append([cols[ci][k] for ci in range(len(candidates))])
    from .matrix import nullspace
    if rows:
        basis_vecs = nullspace(F, rows)
    else:
        basis_vecs = [[F.one() if i == j else F.zero() for i in range(len(candidates))]
                      for j in range(len(candidates))]
    out = []
    for vec in basis_vecs:
        amap, bmap = {}, {}
        for (i, j), c in zip(candidates, vec):
            if F.is_zero(c):
                continue
            (amap if j == 0 else bmap)[i] = c
        a = UPoly(F, [amap.get(i, F.zero()) for i in range(max(amap, default=-1) + 1)])
        b = UPoly(F, [bmap.get(i, F.zero()) for i in range(max(bmap, default=-1) + 1)])
        out.append(FuncRep(curve, a, b, d))
    return out


# -- functionals -----------------------------------------------------------

class LinearFunctional:
    """sigma(h) = coefficient extraction of h * mult at a point (a residue)."""

    __slots__ = ("curve", "point", "xexp", "yexp", "extra_xinv", "index")

    def __init__(self, curve, point, xexp, yexp, extra_xinv, index=-1):
        self.curve = curve
        self.point = point
        self.xexp = xexp          # omega = x^xexp y^yexp dx
        self.yexp = yexp
        self.extra_xinv = extra_xinv  # multiply additionally by x^(-extra_xinv)
        self.index = index

    def _mult_series(self, prec: int) -> Laurent:
        xs, ys = self.curve.expansions(self.point, prec)
        ser = xs.deriv()  # dx/dt
        if self.xexp:
            ser = ser * xs ** self.xexp
        if self.yexp == 1:
            ser = ser * ys
        elif self.yexp == -1:
            ser = ser * ys.inverse()
        if self.extra_xinv:
            ser = ser * (xs ** self.extra_xinv).inverse()
        return ser

    def apply(self, h: FuncRep):
        prec = 16
        while prec <= MAX_ORD_PREC:
            ser = h.expansion(self.point, prec) * self._mult_series(prec)
            if ser.prec > self.index:
                return ser.coeff(self.index)
            prec *= 2
        raise CurveError("functional evaluation needs too much precision")

    def apply_poly(self, p: Poly):
        return self.apply(self.curve.funcrep_from_poly(p))


def residue_functional(E: Divisor) -> LinearFunctional:
    """A functional sigma = sum of residues of (.)omega inducing a perfect
    pairing on R_E / I_E; E must be effective with support {infinity}."""
    curve = E.curve
    g = curve.g
    if not E.is_effective() or E.degree() <= 0:
        raise CurveError("E must be a nonzero effective divisor")
    if any(not P.is_infinity() for P in E.coeffs):
        raise CurveError("only infinity-supported E is implemented")
    N = E.mult(curve.infinity())
    # scan monomial differentials x^a y^b dx for ord_infinity = -N
    for b in (0, 1, -1):
        for a in range(0, 4 * g + 5):
            if -2 * a - (2 * g + 1) * b - 3 == -N:
                return LinearFunctional(curve, curve.infinity(), a, b, 0)
    raise CurveError("no suitable monomial differential found")


def compression_functional(G: Divisor, E: Divisor) -> LinearFunctional:
    """An E-compression functional rho on L(G), rho = sigma(f_G . )."""
    curve = G.curve
    g = curve.g
    if G.degree() % 2 != 0:
        raise CurveError("deg G must be even")
    if not E.is_effective() or E.degree() <= 0:
        raise CurveError("E must be a nonzero effective divisor")
    if G.degree() // 2 - E.degree() <= 2 * g - 2:
        raise CurveError("need deg(G)/2 - deg(E) > 2g - 2")
    if any(not P.is_infinity() for P in list(G.coeffs) + list(E.coeffs)):
        raise CurveError("only infinity-supported G and E are implemented")
    mG = G.mult(curve.infinity())
    if mG % 2 != 0:
        raise CurveError("multiplicity of G at infinity must be even")
    sigma = residue_functional(E)
    # f_G = x^(-mG/2) has ord mG at infinity, matching G there
    return LinearFunctional(curve, curve.infinity(), sigma.xexp, sigma.yexp,
                            mG // 2)


def re_mod_ie_basis(E: Divisor):
    """FuncReps regular at infinity with orders 0..deg(E)-1: a basis of R_E/I_E.

    Only for E supported at infinity.  Orders are realized by x^-i (order 2i)
    and y x^-j (order 2j - (2g+1)).
    """
    curve = E.curve
    F = curve.field
    g = curve.g
    if any(not P.is_infinity() for P in E.coeffs):
        raise CurveError("only infinity-supported E is implemented")
    N = E.mult(curve.infinity())
    out = []
    for v in range(N):
        if v % 2 == 0:
            k = v // 2
            out.append(FuncRep(curve, UPoly(F, [1]), UPoly(F, []),
                               UPoly.x(F) ** k))
        else:
            j = (v + 2 * g + 1) // 2
            out.append(FuncRep(curve, UPoly(F, []), UPoly(F, [1]),
                               UPoly.x(F) ** j))
    return out


def pairing_rank(rho: LinearFunctional, left, right) -> int:
    """Rank of the matrix rho(a*b) over bases `left` and `right`."""
    F = rho.curve.field
    rows = [[rho.apply(a * b) for b in right] for a in left]
    return exact_rank(F, rows)
