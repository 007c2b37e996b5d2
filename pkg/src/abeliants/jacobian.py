"""An elementary Jacobian for odd-degree hyperelliptic curves.

Degree-zero divisor classes are represented by 2E-forms (rank-one matrices
of Riemann-Roch basis products, E = (2g+1) times the point at infinity);
their images under the abstract Abel map are the points of the Jacobian.
Addition is computed by a Kronecker product followed by compression through
a functional rho on L(4E): a greedy selection of independent rows and
columns plus a full-pivot ordering making the leading deg(E)-block of the
rho-Gram matrix invertible realizes the permutation matrices whose
existence the classification argument asserts.  Inversion is transposition.
The classical chord-tangent formulas serve as an independent oracle at
genus one.
"""

from __future__ import annotations

import random

from .curve import (Curve, CurveError, CurvePoint, Divisor,
                    compression_functional, rr_basis)
from .matrix import Mat, coefficient_rows, exact_rank
from .segre import (JacobiMat, SegreError, SegreMatrix, abstract_abel,
                    k_equivalent, k_proportional, specialize_jacobi)
from .series import UPoly

RETRY_CAP = 200


class JacobianError(ValueError):
    pass


class JacobianConfig:
    """Fixed data for one curve: E = (2g+1)*inf, G = 2E, L = L(2E), rho."""

    def __init__(self, curve: Curve, seed=0):
        self.curve = curve
        g = curve.g
        self.E = Divisor.infinity(curve, 2 * g + 1)
        self.G = Divisor.infinity(curve, 2 * (2 * g + 1))
        self.n = self.E.degree() - g + 1  # = g + 2
        self.ring = curve.algebra.ring((0,), 0)
        self.lbasis_funcs = rr_basis(self.G)
        self.lbasis = [f.as_poly(self.ring, 0) for f in self.lbasis_funcs]
        self.rho = compression_functional(
            Divisor.infinity(curve, 4 * (2 * g + 1)), self.E)
        self.rng = random.Random(seed)


def _clear_denominators(reps):
    """Common-denominator numerator polynomials of Riemann-Roch elements.

    Returns (slot-0 Polys, monic UPoly lcm of the denominators, ring).
    """
    C = reps[0].curve
    F = C.field
    den = UPoly(F, [1])
    for h in reps:
        den = (den * h.d) // den.gcd(h.d)
    ring = C.algebra.ring((0,), 0)
    out = []
    for h in reps:
        cleared = h * C.funcrep(den.coeffs)
        out.append(cleared.as_poly(ring, 0))
    return out, den, ring


def gform_from_divisor(D: Divisor, G: Divisor, lbasis=None) -> SegreMatrix:
    """The G-form u_D v_D: an outer product of Riemann-Roch bases.

    D must have degree half of deg G; the form represents D and is a Segre
    matrix with entries in L(G).
    """
    C = D.curve
    if G.degree() % 2 != 0 or 2 * D.degree() != G.degree():
        raise JacobianError("need deg D = half of deg G")
    if D.degree() < 2 * C.g:
        raise JacobianError("degree too small for basis-product spanning")
    ubasis = rr_basis(D)
    vbasis = rr_basis(G - D)
    if not ubasis or not vbasis:
        raise JacobianError("empty Riemann-Roch basis")
    us, uden, ring = _clear_denominators(ubasis)
    vs, vden, _ = _clear_denominators(vbasis)
    n = len(ubasis)
    entries = [[(ubasis[i] * vbasis[j]).as_poly(ring, 0) for j in range(n)]
               for i in range(n)]
    mat = Mat(ring, entries)
    if lbasis is None:
        lbasis = [f.as_poly(ring, 0) for f in rr_basis(G)]
    return SegreMatrix(mat, lbasis, us=us, vs=vs, uden=uden, vden=vden)


def negate_form(x: SegreMatrix) -> SegreMatrix:
    """The class of the negated divisor: the transpose."""
    return x.transpose()


# ---------------------------------------------------------------------------
# compressed Kronecker addition
# ---------------------------------------------------------------------------

def _poly_row_vectors(rows):
    """Concatenated coefficient vectors, one per row of polynomials."""
    flat = [e for row in rows for e in row]
    vecs, _ = coefficient_rows(flat)
    if not vecs:
        return [[] for _ in rows]
    per = len(rows[0])
    out = []
    for r in range(len(rows)):
        v = []
        for c in range(per):
            v.extend(vecs[r * per + c])
        out.append(v)
    return out


def _greedy_independent(field, vectors, count):
    """Indices of the first `count` vectors found to be k-independent."""
    chosen = []
    basis_rows = []
    for idx, v in enumerate(vectors):
        cand = basis_rows + [v]
        if exact_rank(field, cand) == len(cand):
            chosen.append(idx)
            basis_rows = cand
            if len(chosen) == count:
                return chosen
    raise JacobianError("could not select enough independent entries "
                        "(non-generic input)")


def _full_pivot_order(field, gram, m):
    """Row/column orders making every leading minor up to size m invertible.

    Gaussian elimination with full pivoting on a copy of the scalar Gram
    matrix; returns (row_order, col_order) covering all indices, pivots
    first.
    """
    size = len(gram)
    work = [row[:] for row in gram]
    rows = list(range(size))
    cols = list(range(size))
    for t in range(m):
        piv = None
        for i in range(t, size):
            for j in range(t, size):
                if not field.is_zero(work[rows[i]][cols[j]]):
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            raise JacobianError("rho-Gram matrix has rank below deg E")
        rows[t], rows[piv[0]] = rows[piv[0]], rows[t]
        cols[t], cols[piv[1]] = cols[piv[1]], cols[t]
        pr, pc = rows[t], cols[t]
        inv = field.inv(work[pr][pc])
        for i in range(t + 1, size):
            r = rows[i]
            fac = field.mul(work[r][pc], inv)
            if field.is_zero(fac):
                continue
            for j in range(t, size):
                c = cols[j]
                work[r][c] = field.sub(work[r][c], field.mul(fac, work[pr][c]))
    return rows, cols


def _compressed_block(x: Mat, xp: Mat, cfg: JacobianConfig) -> Mat:
    """The compressed n x n block z of the Kronecker product.

    Selects n + deg E independent rows and columns of x o x', orders them so
    the leading deg E block a of the rho-Gram matrix is invertible, and
    applies the Schur-style compression
    det(rho a) * [[det(rho a), 0], [-(rho c)(rho a)*, det(rho a)]] [[a,b],[c,d]]
    [[det(rho a), -(rho a)*(rho b)], [0, det(rho a)]], returning the z block.
    """
    C = cfg.curve
    F = C.field
    n = cfg.n
    dE = cfg.E.degree()
    m = n + dE
    kron = x.kronecker(xp)
    rowvecs = _poly_row_vectors(kron.entries)
    colvecs = _poly_row_vectors(kron.transpose().entries)
    rsel = _greedy_independent(F, rowvecs, m)
    csel = _greedy_independent(F, colvecs, m)
    block = kron.block(rsel, csel)
    gram = [[cfg.rho.apply_poly(block.entries[i][j]) for j in range(m)]
            for i in range(m)]
    ro, co = _full_pivot_order(F, gram, dE)
    block = block.apply_perm(ro, co)
    R = block.ring
    a = block.block(range(dE), range(dE))
    b = block.block(range(dE), range(dE, m))
    c = block.block(range(dE, m), range(dE))
    d = block.block(range(dE, m), range(dE, m))
    rho_a = Mat(F, [[cfg.rho.apply_poly(e) for e in row] for row in a.entries])
    rho_b = Mat(F, [[cfg.rho.apply_poly(e) for e in row] for row in b.entries])
    rho_c = Mat(F, [[cfg.rho.apply_poly(e) for e in row] for row in c.entries])
    det_a = rho_a.det()
    if F.is_zero(det_a):
        raise JacobianError("leading rho-block is singular after pivoting")
    astar = rho_a.adjugate()
    left = (rho_c * astar).map(lambda v: R.const(F.neg(v)), R)
    right = (astar * rho_b).map(lambda v: R.const(F.neg(v)), R)
    det_a_p = R.const(det_a)
    # z = det(rho a) * (left*a*right + det(rho a)*(c*right + left*b) + det^2*d)
    z = left * a * right
    z = z + (c * right + left * b).scalar_mul(det_a_p)
    z = z + d.scalar_mul(det_a_p * det_a_p)
    return z.scalar_mul(det_a_p)


def add_forms(x: SegreMatrix, xp: SegreMatrix, cfg: JacobianConfig) -> SegreMatrix:
    """The Segre matrix of the summed divisor classes."""
    z = _compressed_block(x.mat, xp.mat, cfg)
    return SegreMatrix(z, cfg.lbasis)


# ---------------------------------------------------------------------------
# the Abel map and point addition
# ---------------------------------------------------------------------------

def abel_point(D: Divisor, cfg: JacobianConfig) -> JacobiMat:
    """The Jacobi matrix of a degree-zero divisor class."""
    if D.degree() != 0:
        raise JacobianError("divisor must have degree zero")
    X = gform_from_divisor(D + cfg.E, cfg.G, lbasis=cfg.lbasis)
    return abstract_abel(X)


def _specialization_points(z: JacobiMat, cfg: JacobianConfig):
    """n+1 evaluation points with nonvanishing specialized discriminant."""
    C = cfg.curve
    for _ in range(RETRY_CAP):
        pts = []
        for _ in range(cfg.n + 1):
            P = C.random_affine_point(cfg.rng)
            pts.append(C.eval_hom(P))
        try:
            return pts, specialize_jacobi(z, pts)
        except SegreError:
            continue
    raise JacobianError("could not find points with nonzero discriminant")


def add_points(z: JacobiMat, zp: JacobiMat, cfg: JacobianConfig) -> JacobiMat:
    """The Jacobi matrix of the summed classes, via specialize-and-compress."""
    s, X = _specialization_points(z, cfg)
    sp, Xp = _specialization_points(zp, cfg)
    block = _compressed_block(X.mat, Xp.mat, cfg)
    F = cfg.curve.field
    pre = F.mul(z.delta_at({l: s[l - 1] for l in range(1, cfg.n + 2)}),
                zp.delta_at({l: sp[l - 1] for l in range(1, cfg.n + 2)}))
    block = block.scalar_mul(block.ring.const(pre))
    return abstract_abel(SegreMatrix(block, cfg.lbasis))


def negate_point(z: JacobiMat) -> JacobiMat:
    """The Jacobi matrix of the negated class: the transpose."""
    return JacobiMat(z.mat.transpose(), z.lbasis)


# ---------------------------------------------------------------------------
# chord-tangent oracle (genus one)
# ---------------------------------------------------------------------------

def chord_tangent(P: CurvePoint, Q: CurvePoint, curve: Curve) -> CurvePoint:
    """Classical elliptic addition on y^2 = x^3 + a2 x^2 + a1 x + a0."""
    if curve.g != 1:
        raise JacobianError("the chord-tangent oracle requires genus one")
    F = curve.field
    if P.is_infinity():
        return Q
    if Q.is_infinity():
        return P
    a0, a1, a2, _ = curve.f.coeffs
    if F.eq(P.x, Q.x):
        if F.eq(P.y, F.neg(Q.y)):
            return curve.infinity()
        # tangent line
        num = F.add(F.mul(F.of_int(3), F.mul(P.x, P.x)),
                    F.add(F.mul(F.of_int(2), F.mul(a2, P.x)), a1))
        lam = F.div(num, F.mul(F.of_int(2), P.y))
    else:
        lam = F.div(F.sub(Q.y, P.y), F.sub(Q.x, P.x))
    x3 = F.sub(F.sub(F.sub(F.mul(lam, lam), a2), P.x), Q.x)
    y3 = F.sub(F.mul(lam, F.sub(P.x, x3)), P.y)
    return curve.point(x3, y3)


def point_class_divisor(P: CurvePoint, curve: Curve) -> Divisor:
    """The degree-zero divisor P - inf (zero when P is at infinity)."""
    if P.is_infinity():
        return Divisor(curve)
    return Divisor.of_point(P) - Divisor.infinity(curve, 1)


__all__ = [
    "JacobianConfig", "JacobianError", "gform_from_divisor", "add_forms",
    "negate_form", "abel_point", "add_points", "negate_point",
    "chord_tangent", "point_class_divisor", "k_equivalent", "k_proportional",
]
