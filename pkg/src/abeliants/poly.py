"""Sparse multivariate polynomials with tensor-slot-tagged variables.

A variable is a pair (generator, slot): generators come from a finitely
generated base algebra A (e.g. x, y with y^2 = f(x) on a curve), and the slot
is an integer tag selecting a tensor factor of A^(tensor Z).  A ring also
carries optional auxiliary variables (the s/t variables of the abeliant
definition), kept in a tag space of their own.

Monomials are packed integers: each variable of a ring's layout owns an 8-bit
exponent field, so monomial multiplication is a single integer addition.
Operations between polynomials over different slot sets merge layouts on
demand.  The canonical monomial order is graded lexicographic on
(slot, generator), auxiliaries last.
"""

from __future__ import annotations

from .fields import Field, FieldError, PrimeField

_BITS = 8
_MASK = (1 << _BITS) - 1


class PolyError(ValueError):
    pass


class SpecPoint:
    """Evaluation homomorphism A -> k: one field value per generator.

    Defining relations of A are checked at construction.
    """

    __slots__ = ("algebra", "values", "label")

    def __init__(self, algebra: "Algebra", values, label=None):
        values = tuple(values)
        if len(values) != len(algebra.gens):
            raise PolyError("one value per generator required")
        F = algebra.field
        for gy, gx, fco in algebra.relations:
            lhs = F.mul(values[gy], values[gy])
            rhs = F.zero()
            xp = F.one()
            for c in fco:
                rhs = F.add(rhs, F.mul(c, xp))
                xp = F.mul(xp, values[gx])
            if not F.eq(lhs, rhs):
                raise PolyError("assignment violates a defining relation")
        self.algebra = algebra
        self.values = values
        self.label = label

    def __repr__(self):
        return f"SpecPoint{self.values}"


class Algebra:
    """A finitely generated k-algebra k[g_0, g_1, ...]/(relations).

    Relations have the shape g_y^2 = f(g_x), given as (y_index, x_index,
    coefficients of f low-to-high); this covers hyperelliptic coordinate
    rings.  An algebra with no relations is a free polynomial ring.
    """

    def __init__(self, field: Field, gens=("x",), relations=()):
        self.field = field
        self.gens = tuple(gens)
        rels = []
        for gy, gx, fco in relations:
            rels.append((gy, gx, tuple(field.of_int(c) if isinstance(c, int) else c
                                       for c in fco)))
        self.relations = tuple(rels)
        self._rings = {}

    def __repr__(self):
        return f"Algebra({self.field!r}, gens={self.gens})"

    def ring(self, slots=(0,), naux=0) -> "PolyRing":
        key = (tuple(sorted(set(slots))), naux)
        r = self._rings.get(key)
        if r is None:
            r = PolyRing(self, key[0], naux)
            self._rings[key] = r
        return r

    def spec_point(self, values, label=None) -> SpecPoint:
        return SpecPoint(self, values, label)


class PolyRing:
    """Layout of (generator, slot) variables plus auxiliaries; Poly factory.

    Also implements the generic ring protocol (zero/one/add/sub/mul/neg/
    is_zero/eq) used by the matrix module.
    """

    def __init__(self, algebra: Algebra, slots, naux: int):
        self.algebra = algebra
        self.field = algebra.field
        self.slots = tuple(slots)
        self.naux = naux
        ng = len(algebra.gens)
        self.ngens = ng
        self._slotpos = {s: i for i, s in enumerate(self.slots)}
        self.nvars = len(self.slots) * ng + naux
        # variables violating their 8-bit exponent field would corrupt keys
        if self.nvars * _BITS > 4096:
            raise PolyError("ring layout too large")
        # relation variables per slot: (shift_y, shift_x, nonzero (deg, coeff))
        self.rel_vars = tuple(
            (_BITS * (self._slotpos[s] * ng + gy), _BITS * (self._slotpos[s] * ng + gx),
             tuple((d, fc) for d, fc in enumerate(fco) if not self.field.is_zero(fc)))
            for s in self.slots
            for gy, gx, fco in algebra.relations
        )
        # a key needs relation rewriting iff some y-exponent is >= 2, i.e.
        # a bit above the lowest of its 8-bit field is set
        self.rel_mask = sum((_MASK - 1) << sy for sy, _, _ in self.rel_vars)

    def __repr__(self):
        return f"PolyRing(slots={self.slots}, naux={self.naux})"

    # -- variable indexing -------------------------------------------------
    def vindex(self, gen: int, slot: int) -> int:
        try:
            return self._slotpos[slot] * self.ngens + gen
        except KeyError:
            raise PolyError(f"slot {slot} not in ring {self.slots}") from None

    def aux_index(self, j: int) -> int:
        if not 0 <= j < self.naux:
            raise PolyError(f"aux variable {j} out of range")
        return len(self.slots) * self.ngens + j

    def unpack(self, key: int):
        """Yield (var_index, exponent) for nonzero exponents of a monomial."""
        i = 0
        while key:
            e = key & _MASK
            if e:
                yield i, e
            key >>= _BITS
            i += 1

    def var_info(self, i: int):
        """(gen, slot) for a layout index, or ('aux', j) for auxiliaries."""
        base = len(self.slots) * self.ngens
        if i >= base:
            return ("aux", i - base)
        return (i % self.ngens, self.slots[i // self.ngens])

    def sort_key(self, key: int):
        exps = [0] * self.nvars
        for i, e in self.unpack(key):
            exps[i] = e
        return (sum(exps), tuple(exps))

    # -- element construction ----------------------------------------------
    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(self.field.one())

    def const(self, c) -> "Poly":
        if isinstance(c, int):
            c = self.field.of_int(c)
        if self.field.is_zero(c):
            return Poly(self, {})
        return Poly(self, {0: c})

    def var(self, gen: int, slot: int = 0, exp: int = 1) -> "Poly":
        key = exp << (_BITS * self.vindex(gen, slot))
        return Poly(self, {key: self.field.one()})

    def aux(self, j: int, exp: int = 1) -> "Poly":
        key = exp << (_BITS * self.aux_index(j))
        return Poly(self, {key: self.field.one()})

    def monomial(self, pairs, coeff=None) -> "Poly":
        """Poly from [(gen, slot, exp), ...] with optional coefficient."""
        key = 0
        for gen, slot, exp in pairs:
            key += exp << (_BITS * self.vindex(gen, slot))
        c = self.field.one() if coeff is None else coeff
        if self.field.is_zero(c):
            return Poly(self, {})
        return Poly(self, {key: c})

    # -- ring protocol (matrix module) -------------------------------------
    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return a.is_zero()

    def eq(self, a, b):
        return a == b

    # -- coercion ----------------------------------------------------------
    def coerce(self, p: "Poly") -> "Poly":
        if p.ring is self:
            return p
        if p.ring.algebra is not self.algebra:
            raise PolyError("cannot mix polynomials over different algebras")
        src = p.ring
        terms = {}
        F = self.field
        for key, c in p.terms.items():
            nk = 0
            for i, e in src.unpack(key):
                info = src.var_info(i)
                if info[0] == "aux":
                    nk += e << (_BITS * self.aux_index(info[1]))
                else:
                    nk += e << (_BITS * self.vindex(info[0], info[1]))
            terms[nk] = F.add(terms[nk], c) if nk in terms else c
        return Poly(self, {k: c for k, c in terms.items() if not F.is_zero(c)})

    def common(self, other: "PolyRing") -> "PolyRing":
        if other is self:
            return self
        if other.algebra is not self.algebra:
            raise PolyError("cannot mix polynomials over different algebras")
        return self.algebra.ring(set(self.slots) | set(other.slots),
                                 max(self.naux, other.naux))


def _reduce_terms(ring: PolyRing, items):
    """Canonicalize a list of (key, coeff): apply y^2 = f(x) per slot, merge."""
    F = ring.field
    out = {}
    for k, c in items:
        if k in out:
            out[k] = F.add(out[k], c)
        else:
            out[k] = c
    return _reduce_dict(ring, out)


def _reduce_dict(ring: PolyRing, out):
    """Canonicalize a merged key->coeff dict in place (see _reduce_terms)."""
    F = ring.field
    rels = ring.rel_vars
    mask = ring.rel_mask
    fast = isinstance(F, PrimeField)
    if rels and mask:
        p = F.p if fast else None
        get = out.get
        pending = [k for k in out if k & mask]
        while pending:
            k = pending.pop()
            c = out.pop(k, None)
            if c is None:
                continue
            for sy, sx, pairs in rels:
                if (k >> sy) & _MASK >= 2:
                    base = k - (2 << sy)
                    if fast:
                        for d, fc in pairs:
                            nk = base + (d << sx)
                            out[nk] = (get(nk, 0) + c * fc) % p
                            if nk & mask:
                                pending.append(nk)
                    else:
                        for d, fc in pairs:
                            nk = base + (d << sx)
                            if nk in out:
                                out[nk] = F.add(out[nk], F.mul(c, fc))
                            else:
                                out[nk] = F.mul(c, fc)
                            if nk & mask:
                                pending.append(nk)
                    break
    if fast:
        return {k: c for k, c in out.items() if c}
    return {k: c for k, c in out.items() if not F.is_zero(c)}


class Poly:
    """Immutable sparse polynomial; structural equality is ring equality."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- basics ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def constant(self):
        """The field value of a constant polynomial."""
        if not self.terms:
            return self.ring.field.zero()
        if len(self.terms) == 1 and 0 in self.terms:
            return self.terms[0]
        raise PolyError("polynomial is not constant")

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        if self.ring is other.ring:
            return self.terms == other.terms
        R = self.ring.common(other.ring)
        return R.coerce(self).terms == R.coerce(other).terms

    def __hash__(self):
        raise TypeError("Poly is not hashable")

    def __bool__(self):
        return bool(self.terms)

    # -- arithmetic --------------------------------------------------------
    def _pair(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        elif not isinstance(other, Poly):
            return None, None
        if self.ring is other.ring:
            return self, other
        R = self.ring.common(other.ring)
        return R.coerce(self), R.coerce(other)

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        F = a.ring.field
        terms = dict(a.terms)
        if isinstance(F, PrimeField):
            p = F.p
            get = terms.get
            for k, c in b.terms.items():
                s = (get(k, 0) + c) % p
                if s:
                    terms[k] = s
                elif k in terms:
                    del terms[k]
            return Poly(a.ring, terms)
        for k, c in b.terms.items():
            if k in terms:
                s = F.add(terms[k], c)
                if F.is_zero(s):
                    del terms[k]
                else:
                    terms[k] = s
            else:
                terms[k] = c
        return Poly(a.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Poly(self.ring, {k: F.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        R = a.ring
        F = R.field
        if len(a.terms) > len(b.terms):
            a, b = b, a
        bt = list(b.terms.items())
        if isinstance(F, PrimeField):
            # accumulate as plain ints, take one modulus at the end
            p = F.p
            out = {}
            get = out.get
            for ka, ca in a.terms.items():
                for kb, cb in bt:
                    k = ka + kb
                    out[k] = get(k, 0) + ca * cb
            out = {k: r for k, v in out.items() if (r := v % p)}
            return Poly(R, _reduce_dict(R, out))
        items = []
        for ka, ca in a.terms.items():
            for kb, cb in bt:
                items.append((ka + kb, F.mul(ca, cb)))
        return Poly(R, _reduce_terms(R, items))

    __rmul__ = __mul__

    def scalar_mul(self, c) -> "Poly":
        F = self.ring.field
        if isinstance(c, int):
            c = F.of_int(c)
        if F.is_zero(c):
            return self.ring.zero()
        return Poly(self.ring, {k: F.mul(v, c) for k, v in self.terms.items()})

    def __pow__(self, e: int):
        if e < 0:
            raise PolyError("negative power")
        r = self.ring.one()
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b if e > 1 else b
            e >>= 1
        return r

    # -- structure ---------------------------------------------------------
    def coeff_of(self, pairs):
        """Coefficient of the exact monomial [(gen, slot, exp), ...]."""
        key = 0
        for gen, slot, exp in pairs:
            try:
                key += exp << (_BITS * self.ring.vindex(gen, slot))
            except PolyError:
                return self.ring.field.zero()
        return self.terms.get(key, self.ring.field.zero())

    def leading(self):
        """(key, coeff) of the graded-lex leading term; error on zero."""
        if not self.terms:
            raise PolyError("zero polynomial has no leading term")
        k = max(self.terms, key=self.ring.sort_key)
        return k, self.terms[k]

    def slots_used(self):
        out = set()
        for key in self.terms:
            for i, _e in self.ring.unpack(key):
                info = self.ring.var_info(i)
                if info[0] != "aux":
                    out.add(info[1])
        return out

    def degree_in(self, gen: int, slot: int) -> int:
        sh = _BITS * self.ring.vindex(gen, slot)
        return max(((k >> sh) & _MASK for k in self.terms), default=0)

    def extract_aux(self, exps) -> "Poly":
        """Coefficient (a Poly without auxiliaries) of the exact aux monomial.

        exps: sequence of exponents, one per auxiliary variable.
        """
        R = self.ring
        target = 0
        for j, e in enumerate(exps):
            target += e << (_BITS * R.aux_index(j))
        base = R.aux_index(0)
        mask = ((1 << (_BITS * R.naux)) - 1) << (_BITS * base)
        out = {}
        for k, c in self.terms.items():
            if k & mask == target:
                out[k & ~mask] = c
        return R.algebra.ring(R.slots, 0).coerce(Poly(R, out))

    def drop_aux(self) -> "Poly":
        """Reinterpret an aux-free polynomial in the aux-free ring."""
        return self.ring.algebra.ring(self.ring.slots, 0).coerce(self)

    # -- slot operations ---------------------------------------------------
    def slot_map(self, sigma: dict) -> "Poly":
        """Image under the homomorphism a^(l) -> a^(sigma l).

        sigma is a finite-support map on slots; slots outside its keys are
        fixed.  Auxiliary variables are untouched.
        """
        R = self.ring
        new_slots = {sigma.get(s, s) for s in R.slots}
        T = R.algebra.ring(new_slots, R.naux)
        F = R.field
        terms = {}
        for key, c in self.terms.items():
            nk = 0
            for i, e in R.unpack(key):
                info = R.var_info(i)
                if info[0] == "aux":
                    nk += e << (_BITS * T.aux_index(info[1]))
                else:
                    g, s = info
                    nk += e << (_BITS * T.vindex(g, sigma.get(s, s)))
            terms[nk] = F.add(terms[nk], c) if nk in terms else c
        return Poly(T, _reduce_terms(T, list(terms.items())))

    def bar(self) -> "Poly":
        return self.slot_map({s: -s for s in self.ring.slots})

    def partial_specialize(self, assign: dict) -> "Poly":
        """Evaluate the slots in assign (slot -> SpecPoint); keep the rest."""
        R = self.ring
        if not assign:
            return self
        remaining = [s for s in R.slots if s not in assign]
        T = R.algebra.ring(remaining, R.naux)
        F = R.field
        terms = {}
        for key, c in self.terms.items():
            nk = 0
            for i, e in R.unpack(key):
                info = R.var_info(i)
                if info[0] == "aux":
                    nk += e << (_BITS * T.aux_index(info[1]))
                else:
                    g, s = info
                    if s in assign:
                        c = F.mul(c, F.pow(assign[s].values[g], e))
                    else:
                        nk += e << (_BITS * T.vindex(g, s))
            if not F.is_zero(c):
                terms[nk] = F.add(terms[nk], c) if nk in terms else c
        return Poly(T, {k: c for k, c in terms.items() if not F.is_zero(c)})

    def specialize_scalar(self, assign: dict):
        """Fully evaluate: every ring slot must be assigned; returns a field value."""
        p = self.partial_specialize(assign)
        return p.constant()

    # -- division ----------------------------------------------------------
    def divexact_uni(self, gen: int, slot: int, dcoeffs) -> "Poly":
        """Exact division by a monic univariate d in variable (gen, slot).

        dcoeffs: field coefficients of d low-to-high, leading coefficient 1.
        Raises PolyError if the division leaves a remainder.
        """
        R = self.ring
        F = R.field
        m = len(dcoeffs) - 1
        if m < 0 or not F.eq(dcoeffs[-1], F.one()):
            raise PolyError("divisor must be monic")
        if m == 0:
            return self
        sh = _BITS * R.vindex(gen, slot)
        # bucket terms by exponent of the division variable
        buckets: dict = {}
        maxe = 0
        for k, c in self.terms.items():
            e = (k >> sh) & _MASK
            maxe = max(maxe, e)
            buckets.setdefault(e, {})[k - (e << sh)] = c
        if not self.terms:
            return self
        if maxe < m:
            raise PolyError("inexact division")
        qterms = {}
        for e in range(maxe, m - 1, -1):
            top = buckets.get(e)
            if not top:
                continue
            q = e - m
            for k0, c in top.items():
                qterms[k0 + (q << sh)] = c
            for i in range(m):  # subtract q-coefficient * d (skip the monic top)
                dc = dcoeffs[i]
                if F.is_zero(dc):
                    continue
                dest = buckets.setdefault(q + i, {})
                for k0, c in top.items():
                    v = F.mul(c, dc)
                    if k0 in dest:
                        s = F.sub(dest[k0], v)
                        if F.is_zero(s):
                            del dest[k0]
                        else:
                            dest[k0] = s
                    else:
                        dest[k0] = F.neg(v)
            del buckets[e]
        for e, rem in buckets.items():
            if rem:
                raise PolyError("inexact division")
        return Poly(R, qterms)

    # -- display / serialization -------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: self.ring.sort_key(kv[0]),
                      reverse=True)

    def __repr__(self):
        if not self.terms:
            return "0"
        R = self.ring
        F = R.field
        bits = []
        for key, c in self.sorted_terms():
            parts = []
            for i, e in R.unpack(key):
                info = R.var_info(i)
                if info[0] == "aux":
                    name = f"w{info[1]}"
                else:
                    g, s = info
                    name = R.algebra.gens[g] + (f"({s})" if s != 0 else "")
                parts.append(name if e == 1 else f"{name}^{e}")
            cs = F.format(c)
            if parts and cs == "1":
                bits.append("*".join(parts))
            else:
                bits.append("*".join([cs] + parts))
        return " + ".join(bits)

    def to_json(self):
        R = self.ring
        out = []
        for key, c in self.sorted_terms():
            mono = []
            for i, e in R.unpack(key):
                info = R.var_info(i)
                if info[0] == "aux":
                    raise PolyError("cannot serialize auxiliary variables")
                mono.append([info[0], info[1], e])
            out.append([R.field.format(c), mono])
        return out


def poly_from_json(ring: PolyRing, data) -> Poly:
    F = ring.field
    p = ring.zero()
    for coeff_s, mono in data:
        pairs = [(int(g), int(s), int(e)) for g, s, e in mono]
        p = p + ring.monomial(pairs, F.parse(coeff_s))
    return p
