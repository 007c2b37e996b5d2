"""Rank-one matrix classes over a coordinate algebra and their Abel images.

A Segre matrix is an n x n matrix with entries in a designated subspace L of
a k-algebra A, of rank <= 1 and k-general.  Slot-embedding its entries at
tags 0..n+1 and taking the abeliant of the resulting family yields its image
under the abstract Abel map: a Jacobi matrix, i.e. an n x n matrix over the
slot-tagged tensor algebra satisfying a short list of closure, symmetry,
rank and self-reproduction conditions, with a nonvanishing discriminant
supported in slots 1..n+1.  The map descends to a bijection between
k-equivalence classes of Segre matrices and k-proportionality classes of
Jacobi matrices; partial specialization at points with nonvanishing
discriminant inverts it.
"""

from __future__ import annotations

import random

from .abeliant import (abeliant_def, abeliant_rank1_entry_ring, discriminant)
from .matrix import Mat, coefficient_rows, exact_rank, k_general, nullspace
from .poly import Poly, PolyError, SpecPoint
from .series import UPoly

_BITS = 8

RETRY_CAP = 200


class SegreError(ValueError):
    pass


# ---------------------------------------------------------------------------
# slot embedding and span membership
# ---------------------------------------------------------------------------

def slot_embed(x, ell: int):
    """Retag every variable of a slot-0 polynomial (or matrix) to slot ell."""
    if isinstance(x, Mat):
        ring = x.ring.algebra.ring((ell,), 0)
        return x.map(lambda p: ring.coerce(slot_embed(p, ell)), ring)
    used = x.slots_used()
    if used - {0}:
        raise SegreError(f"entries must live in slot 0, found slots {sorted(used)}")
    return x.slot_map({0: ell})


def in_span(p: Poly, basis) -> bool:
    """Whether p lies in the k-linear span of the given polynomials."""
    rows, _ = coefficient_rows(list(basis) + [p])
    F = p.ring.field
    r = exact_rank(F, rows[:-1])
    return exact_rank(F, rows) == r


def _slot_slices(p: Poly, slot: int):
    """Split each term's monomial at the given slot.

    Returns {rest_key_in_ring: {slot_key: coeff}} where slot_key packs only
    the slot's generator exponents (shifted to position 0).
    """
    R = p.ring
    ng = R.ngens
    base = R._slotpos.get(slot)
    out: dict = {}
    if base is None:
        return {k: {0: c} for k, c in p.terms.items()}
    lo = _BITS * base * ng
    mask = ((1 << (_BITS * ng)) - 1) << lo
    for k, c in p.terms.items():
        sk = (k & mask) >> lo
        rk = k & ~mask
        out.setdefault(rk, {})[sk] = c
    return out


def _slot_component_in_span(p: Poly, slot: int, basis) -> bool:
    """Whether p lies in span(basis at this slot) tensor (everything else).

    basis: slot-0 polynomials spanning the allowed space for the slot.
    Decided by applying the annihilator of the basis' coefficient space to
    every slice of p along the slot.
    """
    if p.is_zero():
        return True
    F = p.ring.field
    ng = p.ring.ngens
    # collect slot-key universe from p and the basis (basis keys are slot-0)
    slices = _slot_slices(p, slot)
    keys = set()
    for sl in slices.values():
        keys.update(sl)
    brows_keys = set()
    for b in basis:
        for k in b.terms:
            brows_keys.add(k)
    universe = sorted(keys | brows_keys)
    index = {k: i for i, k in enumerate(universe)}
    z = F.zero()
    brows = []
    for b in basis:
        row = [z] * len(universe)
        for k, c in b.terms.items():
            row[index[k]] = c
        brows.append(row)
    ann = nullspace(F, brows) if brows else []
    if not brows:
        return False
    # functionals vanishing on the span: columns of the nullspace of B
    # (annihilator of the row space = nullspace of the matrix)
    for phi in ann:
        for sl in slices.values():
            acc = F.zero()
            for k, c in sl.items():
                acc = F.add(acc, F.mul(c, phi[index[k]]))
            if not F.is_zero(acc):
                return False
    return True


def span_basis_products(basis_a, basis_b):
    """A spanning list for span(basis_a * basis_b), duplicates included."""
    return [a * b for a in basis_a for b in basis_b]


# ---------------------------------------------------------------------------
# Segre matrices
# ---------------------------------------------------------------------------

def is_segre(mat: Mat, lbasis) -> bool:
    """The three defining bullets: entries in L, rank <= 1, k-general."""
    for row in mat.entries:
        for e in row:
            if not in_span(e, lbasis):
                return False
    if not mat.rank_leq_one():
        return False
    return k_general(mat)


class SegreMatrix:
    """An n x n rank-<=1 k-general matrix with entries in span(lbasis).

    Entries are slot-0 polynomials.  An optional fraction-field
    factorization mat = (us/uden) * (vs/vden) may be attached (us, vs
    slot-0 polynomial vectors; uden, vden monic univariate polynomials in
    generator den_gen); it enables a fast abstract Abel map.
    """

    def __init__(self, mat: Mat, lbasis, us=None, vs=None,
                 uden=None, vden=None, den_gen=0, check=True):
        if mat.rows != mat.cols or mat.rows < 2:
            raise SegreError("matrix must be square of size >= 2")
        self.mat = mat
        self.lbasis = list(lbasis)
        self.n = mat.rows
        self.ring = mat.ring
        self.algebra = mat.ring.algebra
        self.field = mat.ring.field
        self.us = list(us) if us is not None else None
        self.vs = list(vs) if vs is not None else None
        one = UPoly(self.field, [1])
        self.uden = uden if uden is not None else one
        self.vden = vden if vden is not None else one
        self.den_gen = den_gen
        if check:
            self._check()

    def _check(self):
        for row in self.mat.entries:
            for e in row:
                if e.slots_used() - {0}:
                    raise SegreError("entries must live in slot 0")
        if not is_segre(self.mat, self.lbasis):
            raise SegreError("matrix fails the Segre conditions")
        if self.us is not None:
            if len(self.us) != self.n or len(self.vs) != self.n:
                raise SegreError("factor vectors must have length n")
            dpoly = _upoly_to_poly(self.ring, self.uden, self.den_gen, 0) * \
                _upoly_to_poly(self.ring, self.vden, self.den_gen, 0)
            for i in range(self.n):
                for j in range(self.n):
                    if self.us[i] * self.vs[j] != self.mat.entries[i][j] * dpoly:
                        raise SegreError("factorization does not match entries")

    def transpose(self) -> "SegreMatrix":
        return SegreMatrix(self.mat.transpose(), self.lbasis,
                           us=self.vs, vs=self.us,
                           uden=self.vden, vden=self.uden,
                           den_gen=self.den_gen, check=False)

    def equivalent_by(self, phi: Mat, psi: Mat) -> "SegreMatrix":
        """The k-equivalent matrix phi * X * psi for scalar phi, psi."""
        F = self.field
        if F.is_zero(phi.det()) or F.is_zero(psi.det()):
            raise SegreError("equivalence matrices must be invertible")
        R = self.ring
        pm = phi.map(R.const, R)
        qm = psi.map(R.const, R)
        return SegreMatrix(pm * self.mat * qm, self.lbasis, check=False)


def _upoly_to_poly(ring, up: UPoly, gen: int, slot: int) -> Poly:
    p = ring.zero()
    for i, c in enumerate(up.coeffs):
        p = p + ring.monomial([(gen, slot, i)], c)
    return p


# ---------------------------------------------------------------------------
# the abstract Abel map
# ---------------------------------------------------------------------------

def jacobi_discriminant_factors(zmat: Mat):
    """Discriminant factors of a (candidate) Jacobi matrix, from its entries.

    The product runs over the slot-swapped diagonal entries:
    <2|n+1><0|1> Z_11, <0|1> Z_11, <0|2> Z_22, and (<0|l> Z_ll)^2 for
    l = 3..n (empty at n = 2).
    """
    n = zmat.rows
    z11 = zmat.entries[0][0]
    z22 = zmat.entries[1][1]
    factors = [z11.slot_map({0: 1, 1: 0}).slot_map({2: n + 1, n + 1: 2}),
               z11.slot_map({0: 1, 1: 0}),
               z22.slot_map({0: 2, 2: 0})]
    for ell in range(3, n + 1):
        f = zmat.entries[ell - 1][ell - 1].slot_map({0: ell, ell: 0})
        factors.extend([f, f])
    return factors


class JacobiMat:
    """An n x n matrix over slots 0..n+1 with its factored discriminant."""

    def __init__(self, mat: Mat, lbasis, delta_factors=None):
        self.mat = mat
        self.lbasis = list(lbasis)
        self.n = mat.rows
        self.field = mat.ring.field
        self.algebra = mat.ring.algebra
        self.delta_factors = (list(delta_factors) if delta_factors is not None
                              else jacobi_discriminant_factors(mat))
        self._delta = None

    def delta(self) -> Poly:
        if self._delta is None:
            acc = self.delta_factors[0]
            for f in self.delta_factors[1:]:
                acc = acc * f
            self._delta = acc
        return self._delta

    def delta_at(self, assign: dict):
        """The scalar value of the discriminant at a full slot assignment."""
        F = self.field
        acc = F.one()
        for f in self.delta_factors:
            acc = F.mul(acc, f.specialize_scalar(assign))
        return acc

    def to_json(self):
        ring = self.mat.ring
        return {
            "n": self.n,
            "slots": sorted(ring.slots),
            "entries": [[e.to_json() for e in row] for row in self.mat.entries],
            "delta_factors": [f.to_json() for f in self.delta_factors],
        }


def abel_with_specializations(x: SegreMatrix, points) -> Mat:
    """abel(X, X|_{s_1}, ..., X|_{s_{n+1}}) for n+1 evaluation points."""
    n = x.n
    if len(points) != n + 1:
        raise SegreError("need n+1 evaluation points")
    R = x.ring
    fam = [x.mat]
    for s in points:
        assign = {0: s}
        fam.append(x.mat.map(lambda p: R.const(p.specialize_scalar(assign)), R))
    return abeliant_def(fam)


def _specialized_family(x: SegreMatrix, points):
    """The scalar matrices X|_{s_1}, ..., X|_{s_{n+1}} over the base field."""
    F = x.field
    return [x.mat.map(lambda p: p.specialize_scalar({0: s}), F) for s in points]


def abstract_abel(x: SegreMatrix) -> JacobiMat:
    """The abeliant of the slot-embedded family X^(0), ..., X^(n+1)."""
    n = x.n
    if x.us is not None:
        Z = _abel_factored(x)
    else:
        fam = [slot_embed(x.mat, ell) for ell in range(n + 2)]
        Z = abeliant_def(fam)
    if Z.is_zero():
        raise SegreError("abstract Abel image vanishes; input is not k-general")
    out = JacobiMat(Z, x.lbasis)
    for f in out.delta_factors:
        if f.is_zero():
            raise SegreError("discriminant vanishes; input is not k-general")
    return out


def _abel_factored(x: SegreMatrix) -> Mat:
    """Four-determinant entry formula with per-slot denominator clearing."""
    n = x.n
    R = x.algebra.ring(tuple(range(n + 2)), 0)
    us_e = [[R.coerce(slot_embed(u, ell)) for u in x.us] for ell in range(n + 2)]
    vs_e = [[R.coerce(slot_embed(v, ell)) for v in x.vs] for ell in range(n + 2)]
    du, dv = x.uden, x.vden
    out = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            p = abeliant_rank1_entry_ring(R, us_e, vs_e, i, j)
            for ell in range(n + 2):
                eu = (ell not in (i, n + 1)) + (ell not in (0, j))
                ev = (ell not in (0, i)) + (ell not in (j, n + 1))
                d = (du ** eu) * (dv ** ev)
                if d.degree() > 0:
                    p = p.divexact_uni(x.den_gen, ell, d.coeffs)
            row.append(p)
        out.append(row)
    return Mat(out[0][0].ring, out)


# ---------------------------------------------------------------------------
# k-proportionality and k-equivalence
# ---------------------------------------------------------------------------

def k_proportional(a: Mat, b: Mat) -> bool:
    """Whether a = c*b for some nonzero scalar c, without any division.

    Decided by cross-multiplication against a reference coefficient: with
    (ca, cb) the coefficients of the reference entry's leading monomial, we
    require ca, cb nonzero and a_ij[m]*cb == b_ij[m]*ca for every entry and
    every monomial m.
    """
    if a.rows != b.rows or a.cols != b.cols:
        return False
    F = a.ring.field
    ref = None
    for i in range(a.rows):
        for j in range(a.cols):
            if not a.entries[i][j].is_zero():
                ref = (i, j)
                break
        if ref:
            break
    if ref is None:
        return False  # the zero matrix is proportional to nothing
    i0, j0 = ref
    key, ca = a.entries[i0][j0].leading()
    pb = b.entries[i0][j0]
    cb = pb.terms.get(_match_key(a.entries[i0][j0].ring, pb.ring, key))
    if cb is None or F.is_zero(cb):
        return False
    for i in range(a.rows):
        for j in range(a.cols):
            if not _cross_equal(a.entries[i][j], b.entries[i][j], ca, cb):
                return False
    return True


def _match_key(ring_a, ring_b, key):
    if ring_a is ring_b:
        return key
    # translate a packed monomial between ring layouts
    nk = 0
    for i, e in ring_a.unpack(key):
        info = ring_a.var_info(i)
        if info[0] == "aux":
            nk += e << (_BITS * ring_b.aux_index(info[1]))
        else:
            try:
                nk += e << (_BITS * ring_b.vindex(info[0], info[1]))
            except PolyError:
                return None
    return nk


def _cross_equal(pa: Poly, pb: Poly, ca, cb) -> bool:
    """pa * cb == pb * ca, compared coefficientwise."""
    F = pa.ring.field
    R = pa.ring.common(pb.ring)
    ta = R.coerce(pa).terms
    tb = R.coerce(pb).terms
    for k in set(ta) | set(tb):
        lhs = F.mul(ta.get(k, F.zero()), cb)
        rhs = F.mul(tb.get(k, F.zero()), ca)
        if not F.eq(lhs, rhs):
            return False
    return True


def k_equivalent(x: SegreMatrix, y: SegreMatrix) -> bool:
    """Whether the abstract Abel images are k-proportional."""
    if x.n != y.n or x.algebra is not y.algebra:
        raise SegreError("type mismatch")
    zx = abstract_abel(x)
    zy = abstract_abel(y)
    return k_proportional(zx.mat, zy.mat)


# ---------------------------------------------------------------------------
# normalization
# ---------------------------------------------------------------------------

def is_normalized(mat: Mat, points) -> bool:
    """Diagonal support at s_1..s_n and the all-ones condition at s_{n+1}."""
    n = mat.rows
    if len(points) != n + 1:
        raise SegreError("need n+1 evaluation points")
    F = mat.ring.field
    for ell in range(1, n + 1):
        s = points[ell - 1]
        for i in range(n):
            for j in range(n):
                v = mat.entries[i][j].specialize_scalar({0: s})
                want_nonzero = (i == j == ell - 1)
                if F.is_zero(v) == want_nonzero:
                    return False
    s = points[n]
    for i in range(n):
        for j in range(n):
            v = mat.entries[i][j].specialize_scalar({0: s})
            if not F.eq(v, F.one()):
                return False
    return True


def normalize(x: SegreMatrix, points) -> Mat:
    """The unique normalized representative of x's k-equivalence class.

    Requires the discriminant of the specialized family X|_{s_1}, ...,
    X|_{s_{n+1}} to be nonzero.
    """
    n = x.n
    F = x.field
    spec = _specialized_family(x, points)
    if F.is_zero(discriminant(spec)):
        raise SegreError("specialized discriminant vanishes; pick other points")
    W = abel_with_specializations(x, points)
    # the final specialization is a rank-1 scalar matrix Phi * E * Psi with
    # invertible diagonal Phi, Psi; divide the scales back out
    last = points[n]
    w = [[W.entries[i][j].specialize_scalar({0: last}) for j in range(n)]
         for i in range(n)]
    phi = [w[i][0] for i in range(n)]
    psi = [F.div(w[0][j], w[0][0]) for j in range(n)]
    R = W.ring
    out = [[W.entries[i][j].scalar_mul(F.inv(F.mul(phi[i], psi[j])))
            for j in range(n)] for i in range(n)]
    return Mat(R, out)


# ---------------------------------------------------------------------------
# random evaluation points
# ---------------------------------------------------------------------------

def random_spec_point(algebra, rng: random.Random) -> SpecPoint:
    """A random k-point of the algebra; relations are solved by square roots."""
    F = algebra.field
    constrained = {gy for gy, _gx, _f in algebra.relations}
    for _ in range(RETRY_CAP):
        values = [None] * len(algebra.gens)
        for g in range(len(algebra.gens)):
            if g not in constrained:
                values[g] = F.random(rng)
        ok = True
        for gy, gx, fco in algebra.relations:
            rhs = F.zero()
            xp = F.one()
            for c in fco:
                rhs = F.add(rhs, F.mul(c, xp))
                xp = F.mul(xp, values[gx])
            root = F.sqrt(rhs) if hasattr(F, "sqrt") else None
            if root is None:
                ok = False
                break
            if not F.is_zero(root) and rng.randrange(2):
                root = F.neg(root)
            values[gy] = root
        if ok:
            return SpecPoint(algebra, values)
    raise SegreError("could not sample a point satisfying the relations")


def _sample_assignment(algebra, slots, rng) -> dict:
    return {s: random_spec_point(algebra, rng) for s in slots}


# ---------------------------------------------------------------------------
# J-matrix and Jacobi-matrix membership
# ---------------------------------------------------------------------------

_SYMBOLIC_TERM_CAP = 60


def _entry_slots_ok(z: Mat, n: int) -> bool:
    allowed = set(range(n + 2))
    for row in z.entries:
        for e in row:
            if e.slots_used() - allowed:
                return False
    return True


def _is_small(z: Mat) -> bool:
    return max(len(e.terms) for row in z.entries for e in row) <= _SYMBOLIC_TERM_CAP


def _specialize_mat(z: Mat, assign: dict, F):
    return [[e.specialize_scalar(assign) for e in row] for row in z.entries]


def _partial_at(z: Mat, s_pos: dict):
    """Entries of Z with slots 1..n+1 specialized; slot-0 polynomials remain."""
    return [[e.partial_specialize(s_pos) for e in row] for row in z.entries]


def _scalar_abel_of_slotmapped(part, s0_points, F) -> Mat:
    """abel of the family [0 -> -l]Z, l = 0..n+1, at a full point assignment.

    part: slot-0 entries of Z after specializing slots 1..n+1; s0_points:
    the points for slots 0, -1, ..., -(n+1) in member order l = 0..n+1.
    """
    fam = []
    for s in s0_points:
        assign = {0: s}
        fam.append(Mat(F, [[p.specialize_scalar(assign) for p in row]
                           for row in part]))
    return abeliant_def(fam)


def _bar_specialized(z: Mat, negs: dict, F) -> Mat:
    """bar(Z) at an assignment of slots 0, -1, ..., -(n+1)."""
    n = z.rows
    assign = {ell: negs[-ell] for ell in range(n + 2)}
    return Mat(F, _specialize_mat(z, assign, F))


def _rank1_conditions_sampled(z: Mat, rng, samples: int) -> bool:
    """Rank <= 1 of Z, verified at random full specializations."""
    F = z.ring.field
    algebra = z.ring.algebra
    n = z.rows
    for _ in range(samples):
        assign = _sample_assignment(algebra, range(n + 2), rng)
        m = Mat(F, _specialize_mat(z, assign, F))
        if not m.rank_leq_one():
            return False
    return True


def is_jacobi(z: Mat, lbasis, rng=None, samples=12) -> bool:
    """The Jacobi-matrix condition system.

    Closure, nonvanishing, the entry-support condition on Z_12, the two
    index symmetries (on transpositions generating the symmetric group),
    the leading 2x2 minor, and the self-reproduction identity with the
    factored discriminant.  The minor and self-reproduction conditions are
    checked symbolically for small matrices, otherwise at random exact
    specializations.
    """
    n = z.rows
    rng = rng or random.Random(0)
    if not _entry_slots_ok(z, n):
        return False
    if z.is_zero():
        return False
    # entry support of Z_12: slot spaces L at 0, 1, 2, n+1 and L^2 at 3..n
    z12 = z.entries[0][1]
    lsq = span_basis_products(lbasis, lbasis)
    for slot in range(n + 2):
        space = lsq if 3 <= slot <= n else list(lbasis)
        if not _slot_component_in_span(z12, slot, space):
            return False
    # Z_11 = [1 -> 2] Z_12
    if z.entries[0][0] != z12.slot_map({1: 2}):
        return False
    # index symmetry on generating transpositions of slots/indices 1..n
    for ell in range(1, n):
        sigma = {ell: ell + 1, ell + 1: ell}
        perm = list(range(n))
        perm[ell - 1], perm[ell] = perm[ell], perm[ell - 1]
        for i in range(n):
            for j in range(n):
                if z.entries[i][j].slot_map(sigma) != z.entries[perm[i]][perm[j]]:
                    return False
    factors = jacobi_discriminant_factors(z)
    for f in factors:
        if f.is_zero() or f.slots_used() - set(range(1, n + 2)):
            return False
    if _is_small(z):
        return _jacmat_tail_symbolic(z, factors)
    return _jacmat_tail_sampled(z, factors, rng, samples)


def _slotmapped_member(z: Mat, ell: int) -> Mat:
    """The matrix [0 -> -ell] Z over a ring containing its slots."""
    tgt = z.ring.algebra.ring(tuple({-ell} | set(range(1, z.rows + 2))), 0)
    return z.map(lambda p: tgt.coerce(p.slot_map({0: -ell})), tgt)


def _jacmat_tail_symbolic(z: Mat, factors) -> bool:
    a, b = z.entries[0][0], z.entries[0][1]
    c, d = z.entries[1][0], z.entries[1][1]
    if not (a * d - b * c).is_zero():
        return False
    n = z.rows
    fam = [_slotmapped_member(z, ell) for ell in range(n + 2)]
    lhs = abeliant_def(fam)
    delta = factors[0]
    for f in factors[1:]:
        delta = delta * f
    rhs = z.map(lambda p: p.bar() * delta)
    return lhs == rhs


def _jacmat_tail_sampled(z: Mat, factors, rng, samples: int) -> bool:
    F = z.ring.field
    algebra = z.ring.algebra
    n = z.rows
    for _ in range(samples):
        s_pos = _sample_assignment(algebra, range(1, n + 2), rng)
        negs = _sample_assignment(algebra, range(-(n + 1), 1), rng)
        part = _partial_at(z, s_pos)
        # leading 2x2 minor at the member-0 assignment
        a0 = {0: negs[0]}
        m = [[p.specialize_scalar(a0) for p in row[:2]] for row in part[:2]]
        minor = F.sub(F.mul(m[0][0], m[1][1]), F.mul(m[0][1], m[1][0]))
        if not F.is_zero(minor):
            return False
        delta = F.one()
        for f in factors:
            delta = F.mul(delta, f.specialize_scalar(s_pos))
        lhs = _scalar_abel_of_slotmapped(part, [negs[-l] for l in range(n + 2)], F)
        rhs = _bar_specialized(z, negs, F).scalar_mul(delta)
        if lhs != rhs:
            return False
    return True


def is_jmatrix(z: Mat, lbasis, rng=None, samples=12) -> bool:
    """The four J-matrix conditions: entry support, nonvanishing, rank <= 1,
    and self-reproduction with some nonzero discriminant in slots 1..n+1.

    The discriminant is not prescribed by a formula here; its existence is
    certified by proportionality of the self-reproduction abeliant to the
    barred matrix across specializations of slots 1..n+1.
    """
    n = z.rows
    rng = rng or random.Random(0)
    if not _entry_slots_ok(z, n):
        return False
    # slot-0 component of every entry confined to span(L)
    for row in z.entries:
        for e in row:
            if not _slot_component_in_span(e, 0, lbasis):
                return False
    if z.is_zero():
        return False
    if _is_small(z):
        if not z.rank_leq_one():
            return False
        return _jmat_self_reproduction_symbolic(z)
    if not _rank1_conditions_sampled(z, rng, samples):
        return False
    return _jmat_self_reproduction_sampled(z, rng, samples)


def _jmat_self_reproduction_symbolic(z: Mat) -> bool:
    """LHS = Delta * bar(Z) for some Delta: decided by exact division."""
    n = z.rows
    fam = [_slotmapped_member(z, ell) for ell in range(n + 2)]
    lhs = abeliant_def(fam)
    zbring = z.ring.algebra.ring(tuple(-s for s in z.ring.slots), 0)
    zb = z.map(lambda p: zbring.coerce(p.bar()), zbring)
    # proportionality with a not-necessarily-scalar ratio: cross-multiply
    ref = None
    for i in range(n):
        for j in range(n):
            if not zb.entries[i][j].is_zero():
                ref = (i, j)
                break
        if ref:
            break
    if ref is None or lhs.entries[ref[0]][ref[1]].is_zero():
        return False
    i0, j0 = ref
    for i in range(n):
        for j in range(n):
            if lhs.entries[i][j] * zb.entries[i0][j0] != \
                    lhs.entries[i0][j0] * zb.entries[i][j]:
                return False
    # the ratio must live in slots 1..n+1: check its factorization through
    # a sample specialization is unnecessary symbolically -- the quotient
    # Delta = lhs_ref / bar(Z)_ref has the correct support whenever the
    # cross-multiplied identity holds and lhs's extra slots are 1..n+1 only
    extra = lhs.entries[i0][j0].slots_used() - zb.entries[i0][j0].slots_used()
    return extra <= set(range(1, n + 2))


def _jmat_self_reproduction_sampled(z: Mat, rng, samples: int) -> bool:
    F = z.ring.field
    algebra = z.ring.algebra
    n = z.rows
    seen_nonzero = False
    for _ in range(samples):
        s_pos = _sample_assignment(algebra, range(1, n + 2), rng)
        part = _partial_at(z, s_pos)
        ratios = []
        for _ in range(3):
            negs = _sample_assignment(algebra, range(-(n + 1), 1), rng)
            lhs = _scalar_abel_of_slotmapped(part, [negs[-l] for l in range(n + 2)], F)
            rhs = _bar_specialized(z, negs, F)
            ratios.append((lhs, rhs))
        # Delta|_s must be a single scalar across assignments of the
        # remaining slots: cross-multiply entrywise between draws
        for la, ra in ratios:
            for lb, rb in ratios:
                for i in range(n):
                    for j in range(n):
                        for k in range(n):
                            for m in range(n):
                                x1 = F.mul(la.entries[i][j], rb.entries[k][m])
                                x2 = F.mul(lb.entries[k][m], ra.entries[i][j])
                                if not F.eq(x1, x2):
                                    return False
        for la, ra in ratios:
            if not la.is_zero():
                seen_nonzero = True
    return seen_nonzero


# ---------------------------------------------------------------------------
# inversion: specialization of a Jacobi matrix
# ---------------------------------------------------------------------------

def specialize_jacobi(z: JacobiMat, points) -> SegreMatrix:
    """The Segre matrix Z||_s at points with nonvanishing discriminant."""
    n = z.n
    if len(points) != n + 1:
        raise SegreError("need n+1 evaluation points")
    assign = {ell: points[ell - 1] for ell in range(1, n + 2)}
    F = z.field
    dval = F.one()
    for f in z.delta_factors:
        v = f.partial_specialize(assign)
        if not v.is_constant():
            raise SegreError("discriminant factor does not specialize to a scalar")
        dval = F.mul(dval, v.constant())
    if F.is_zero(dval):
        raise SegreError("discriminant vanishes at the given points")
    mat = z.mat.map(lambda p: p.partial_specialize(assign))
    ring0 = z.algebra.ring((0,), 0)
    mat = mat.map(ring0.coerce, ring0)
    return SegreMatrix(mat, z.lbasis)
