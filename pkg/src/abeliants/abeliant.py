"""The abeliant of an n x n x (n+2) matrix family, by three algorithms.

abel(X^(0), ..., X^(n+1)) is the n x n matrix whose (i, j) entry is the
coefficient of s_1...s_i-hat...s_n * t_1...t_j-hat...t_n in

    trace( X^(0) (sum_b t_b X^(b))* X^(n+1) (sum_a s_a X^(a))* )

where * is the adjugate.  The module also provides the signed
four-permutation expansion, the factored evaluation through the key
relation, the four-determinant entry formula for fully factored rank-<=1
families, and the discriminant of an (n+1)-family.
"""

from __future__ import annotations

from itertools import permutations

from .matrix import Mat, MatError
from .poly import Algebra, Poly, PolyRing


class AbeliantError(ValueError):
    pass


def _check_family(mats, expected):
    if len(mats) != expected:
        raise AbeliantError(f"family must have {expected} matrices, got {len(mats)}")
    n = mats[0].rows
    if n < 2:
        raise AbeliantError("family size n must be >= 2")
    for m in mats:
        if m.rows != n or m.cols != n:
            raise AbeliantError("all family members must be square of equal size")
    return n


def _to_poly_mats(mats):
    """Coerce a family to a common PolyRing; returns (ring, mats, unwrap)."""
    if isinstance(mats[0].entries[0][0], Poly):
        ring = mats[0].ring
        for m in mats:
            ring = ring.common(m.ring)
        return ring, [m.map(ring.coerce, ring) for m in mats], False
    field = mats[0].ring
    ring = Algebra(field, gens=()).ring((0,), 0)
    return ring, [m.map(ring.const, ring) for m in mats], True


def _unwrap(mat: Mat, field) -> Mat:
    return mat.map(lambda p: p.constant(), field)


def abeliant_def(mats) -> Mat:
    """The defining computation, with explicit auxiliary s/t variables."""
    n = _check_family(mats, len(mats))
    if len(mats) != n + 2:
        raise AbeliantError(f"need n+2 = {n + 2} matrices, got {len(mats)}")
    ring, pmats, unwrap = _to_poly_mats(mats)
    A = ring.algebra
    # auxiliaries: s_a = aux(a-1), t_b = aux(n + b - 1), a, b = 1..n
    R = A.ring(ring.slots, 2 * n)
    fam = [m.map(R.coerce, R) for m in pmats]
    S = Mat.zeros(R, n, n)
    T = Mat.zeros(R, n, n)
    for a in range(1, n + 1):
        S = S + fam[a].scalar_mul(R.aux(a - 1))
        T = T + fam[a].scalar_mul(R.aux(n + a - 1))
    P = fam[0] * T.adjugate() * fam[n + 1] * S.adjugate()
    tr = R.zero()
    for i in range(n):
        tr = tr + P.entries[i][i]
    out = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            exps = [0] * (2 * n)
            for a in range(1, n + 1):
                if a != i:
                    exps[a - 1] = 1
            for b in range(1, n + 1):
                if b != j:
                    exps[n + b - 1] = 1
            row.append(tr.extract_aux(exps))
        out.append(row)
    ring0 = A.ring(ring.slots, 0)
    result = Mat(ring0, out)
    return _unwrap(result, mats[0].ring) if unwrap else result


_CORRUPT_EXPAND = False  # test hook: deliberately break abeliant_expand


def abeliant_expand(mats) -> Mat:
    """The signed sum over four permutations of {1..n}; n <= 4 enforced."""
    n = _check_family(mats, len(mats))
    if len(mats) != n + 2:
        raise AbeliantError(f"need n+2 = {n + 2} matrices, got {len(mats)}")
    if n > 4:
        raise AbeliantError("abeliant_expand is limited to n <= 4")
    R = mats[0].ring
    X = [m.entries for m in mats]
    perms = []
    for p in permutations(range(n)):
        inv = 0
        for a in range(n):
            for b in range(a + 1, n):
                if p[a] > p[b]:
                    inv += 1
        perms.append((p, -1 if inv % 2 else 1))
    out = [[R.zero() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = R.zero()
            for sig, s1 in perms:
                for phi, s2 in perms:
                    # product over b != j of X^(b+1)[sig b, phi b]
                    pb = R.one()
                    for b in range(n):
                        if b != j:
                            pb = R.mul(pb, X[b + 1][sig[b]][phi[b]])
                    for tau, s3 in perms:
                        head = R.mul(X[0][tau[i]][phi[j]], pb)
                        for psi, s4 in perms:
                            term = R.mul(head, X[n + 1][sig[j]][psi[i]])
                            for a in range(n):
                                if a != i:
                                    term = R.mul(term, X[a + 1][tau[a]][psi[a]])
                            if s1 * s2 * s3 * s4 > 0:
                                acc = R.add(acc, term)
                            else:
                                acc = R.sub(acc, term)
            out[i][j] = acc
    if _CORRUPT_EXPAND:
        out[0][0] = R.add(out[0][0], R.one())
    return Mat(R, out)


def discriminant(mats):
    """Discriminant of an (n+1)-family: the product of determinant powers."""
    n = _check_family(mats, len(mats))
    if len(mats) != n + 1:
        raise AbeliantError(f"need n+1 = {n + 1} matrices, got {len(mats)}")
    R = mats[0].ring
    total = mats[0]
    for m in mats[1:n]:
        total = total + m
    d = total.det()
    acc = R.one()
    for _ in range(2 * n - 2):
        acc = R.mul(acc, d)
    for i in range(1, n + 1):
        s = Mat.zeros(R, n, n)
        for ell in range(1, n + 2):
            if ell != i:
                s = s + mats[ell - 1]
        di = s.det()
        acc = R.mul(acc, R.mul(di, di))
    return acc


def _diag(R, values):
    n = len(values)
    z = R.zero()
    return Mat(R, [[values[i] if i == j else z for j in range(n)] for i in range(n)])


def abeliant_factored(x0: Mat, us, vs):
    """Evaluate via the key relation, given X^(l) = u^(l) v^(l) for l = 1..n+1.

    us: n+1 column vectors (lists of ring values), vs: n+1 row vectors.
    Returns (abel of the assembled family, discriminant of matrices 1..n+1).
    """
    n = x0.rows
    if x0.cols != n:
        raise AbeliantError("x0 must be square")
    if len(us) != n + 1 or len(vs) != n + 1:
        raise AbeliantError("need n+1 factor vectors on each side")
    for u in us:
        if len(u) != n:
            raise AbeliantError("factor vector length mismatch")
    for v in vs:
        if len(v) != n:
            raise AbeliantError("factor vector length mismatch")
    R = x0.ring
    U = Mat(R, [[us[l][i] for l in range(n)] for i in range(n)])
    V = Mat(R, [list(vs[l]) for l in range(n)])
    Ustar = U.adjugate()
    Vstar = V.adjugate()
    un1 = Mat.column(R, us[n])
    vn1 = Mat.row(R, vs[n])
    M = _diag(R, [(vn1 * Vstar).entries[0][i] for i in range(n)])
    L = _diag(R, [(Ustar * un1).entries[i][0] for i in range(n)])
    MU = M * Ustar
    VL = Vstar * L
    abel = MU * x0 * VL
    d1 = MU.det()
    d2 = VL.det()
    delta = R.mul(R.mul(d1, d1), R.mul(d2, d2))
    return abel, delta


def abeliant_rank1_entry(us, vs, i: int, j: int):
    """Entry (i, j) for a fully factored family X^(l) = u^(l) v^(l), l = 0..n+1.

    Four-determinant product with rows/columns in increasing slot order; the
    Cramer signs cancel to +1 in this ordering.  i, j are 1-based.
    """
    n = len(us) - 2
    if len(vs) != n + 2:
        raise AbeliantError("need n+2 factor vectors on each side")
    if not (1 <= i <= n and 1 <= j <= n):
        raise AbeliantError("entry index out of range")
    for vecs in (us, vs):
        for w in vecs:
            if len(w) != n:
                raise AbeliantError("factor vector length mismatch")
    sample = us[0][0]
    if isinstance(sample, Poly):
        R = sample.ring
        for vecs in (us, vs):
            for w in vecs:
                for e in w:
                    R = R.common(e.ring)
    else:
        raise AbeliantError("pass Poly entries, or call abeliant_rank1_entry_ring "
                            "with an explicit ring")
    return abeliant_rank1_entry_ring(R, us, vs, i, j)


def abeliant_rank1_entry_ring(R, us, vs, i: int, j: int):
    n = len(us) - 2

    def det_u(skip):
        cols = [l for l in range(n + 2) if l not in skip]
        return Mat(R, [[us[l][r] for l in cols] for r in range(n)]).det()

    def det_v(skip):
        rows = [l for l in range(n + 2) if l not in skip]
        return Mat(R, [list(vs[l]) for l in rows]).det()

    return R.mul(R.mul(det_v({0, i}), det_u({i, n + 1})),
                 R.mul(det_v({j, n + 1}), det_u({0, j})))
