"""Dense matrices over any exact ring value (field elements or polynomials).

The ring is an object implementing zero/one/add/sub/mul/neg/is_zero/eq on its
values (a Field on raw values, or a PolyRing on Poly); the matrix never
touches values directly, so one implementation serves scalars and
polynomials alike.
"""

from __future__ import annotations

from .poly import Poly


class MatError(ValueError):
    pass


class Mat:
    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring, entries):
        entries = [list(r) for r in entries]
        if not entries or any(len(r) != len(entries[0]) for r in entries):
            raise MatError("entries must be a nonempty rectangular grid")
        self.ring = ring
        self.rows = len(entries)
        self.cols = len(entries[0])
        self.entries = entries

    # -- construction ------------------------------------------------------
    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero(), ring.one()
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring, r, c):
        z = ring.zero()
        return cls(ring, [[z] * c for _ in range(r)])

    @classmethod
    def column(cls, ring, values):
        return cls(ring, [[v] for v in values])

    @classmethod
    def row(cls, ring, values):
        return cls(ring, [list(values)])

    def __getitem__(self, ij):
        return self.entries[ij[0]][ij[1]]

    def __repr__(self):
        return "Mat[" + "; ".join(", ".join(repr(e) for e in r) for r in self.entries) + "]"

    # -- arithmetic --------------------------------------------------------
    def _check_same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise MatError("shape mismatch")

    def __add__(self, other):
        self._check_same_shape(other)
        R = self.ring
        return Mat(R, [[R.add(a, b) for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._check_same_shape(other)
        R = self.ring
        return Mat(R, [[R.sub(a, b) for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.entries, other.entries)])

    def __neg__(self):
        R = self.ring
        return Mat(R, [[R.neg(a) for a in r] for r in self.entries])

    def __mul__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        if self.cols != other.rows:
            raise MatError("inner dimension mismatch")
        R = self.ring
        out = []
        bt = [[other.entries[k][j] for k in range(other.rows)] for j in range(other.cols)]
        for ra in self.entries:
            row = []
            for col in bt:
                acc = R.zero()
                for a, b in zip(ra, col):
                    acc = R.add(acc, R.mul(a, b))
                row.append(acc)
            out.append(row)
        return Mat(R, out)

    def scalar_mul(self, c):
        R = self.ring
        return Mat(R, [[R.mul(c, a) for a in r] for r in self.entries])

    def transpose(self):
        return Mat(self.ring, [[self.entries[i][j] for i in range(self.rows)]
                               for j in range(self.cols)])

    def map(self, f, ring=None):
        return Mat(ring or self.ring, [[f(a) for a in r] for r in self.entries])

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        if self.rows != other.rows or self.cols != other.cols:
            return False
        R = self.ring
        return all(R.eq(a, b) for ra, rb in zip(self.entries, other.entries)
                   for a, b in zip(ra, rb))

    def is_zero(self):
        R = self.ring
        return all(R.is_zero(a) for r in self.entries for a in r)

    # -- determinants ------------------------------------------------------
    def det(self):
        if self.rows != self.cols:
            raise MatError("determinant of a non-square matrix")
        n = self.rows
        if n <= 4 or isinstance(self.entries[0][0], Poly):
            return _det_cofactor(self.ring, self.entries)
        return det_bareiss(self)

    def adjugate(self):
        if self.rows != self.cols:
            raise MatError("adjugate of a non-square matrix")
        R = self.ring
        n = self.rows
        if n == 1:
            return Mat(R, [[R.one()]])
        E = self.entries
        out = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [[E[r][c] for c in range(n) if c != j]
                         for r in range(n) if r != i]
                d = _det_cofactor(R, minor) if n - 1 <= 4 or isinstance(E[0][0], Poly) \
                    else det_bareiss(Mat(R, minor))
                out[j][i] = d if (i + j) % 2 == 0 else R.neg(d)
        return Mat(R, out)

    # -- predicates --------------------------------------------------------
    def rank_leq_one(self):
        R = self.ring
        E = self.entries
        for i in range(self.rows):
            for k in range(i + 1, self.rows):
                for j in range(self.cols):
                    for l in range(j + 1, self.cols):
                        m = R.sub(R.mul(E[i][j], E[k][l]), R.mul(E[i][l], E[k][j]))
                        if not R.is_zero(m):
                            return False
        return True

    # -- plumbing ----------------------------------------------------------
    def apply_perm(self, row_perm=None, col_perm=None):
        """Entry (i, j) of the result is entry (row_perm[i], col_perm[j])."""
        rp = row_perm if row_perm is not None else list(range(self.rows))
        cp = col_perm if col_perm is not None else list(range(self.cols))
        if sorted(rp) != list(range(self.rows)) or sorted(cp) != list(range(self.cols)):
            raise MatError("not a permutation")
        return Mat(self.ring, [[self.entries[rp[i]][cp[j]] for j in range(self.cols)]
                               for i in range(self.rows)])

    def block(self, row_idx, col_idx):
        """Submatrix with the given row and column index lists."""
        for i in row_idx:
            if not 0 <= i < self.rows:
                raise MatError("row index out of bounds")
        for j in col_idx:
            if not 0 <= j < self.cols:
                raise MatError("column index out of bounds")
        return Mat(self.ring, [[self.entries[i][j] for j in col_idx] for i in row_idx])

    def kronecker(self, other):
        R = self.ring
        out = []
        for ra in self.entries:
            for rb in other.entries:
                out.append([R.mul(a, b) for a in ra for b in rb])
        return Mat(R, out)


def _det_cofactor(R, rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        (a, b), (c, d) = rows
        return R.sub(R.mul(a, d), R.mul(b, c))
    acc = R.zero()
    first = rows[0]
    rest = rows[1:]
    for j in range(n):
        if R.is_zero(first[j]):
            continue
        minor = [[r[c] for c in range(n) if c != j] for r in rest]
        term = R.mul(first[j], _det_cofactor(R, minor))
        acc = R.add(acc, term) if j % 2 == 0 else R.sub(acc, term)
    return acc


def det_bareiss(m: Mat):
    """Fraction-free Gaussian elimination; exact over any field ring."""
    if m.rows != m.cols:
        raise MatError("determinant of a non-square matrix")
    R = m.ring
    n = m.rows
    M = [list(r) for r in m.entries]
    sign = 1
    prev = R.one()
    for k in range(n - 1):
        if R.is_zero(M[k][k]):
            for i in range(k + 1, n):
                if not R.is_zero(M[i][k]):
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return R.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = R.sub(R.mul(M[k][k], M[i][j]), R.mul(M[i][k], M[k][j]))
                M[i][j] = R.div(num, prev)
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return d if sign == 1 else R.neg(d)


def exact_rank(field, rows):
    """Rank of a list of coefficient vectors over an exact field."""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows))
                    if not field.is_zero(rows[i][col])), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        pinv = field.inv(pr[col])
        for i in range(rank + 1, len(rows)):
            r = rows[i]
            if not field.is_zero(r[col]):
                fac = field.mul(r[col], pinv)
                for j in range(col, ncols):
                    r[j] = field.sub(r[j], field.mul(fac, pr[j]))
        rank += 1
        if rank == len(rows):
            break
    return rank


def nullspace(field, rows):
    """Deterministic basis of the right nullspace of a constraint matrix.

    Returns vectors of length ncols; basis vectors have a 1 in their free
    column, echelon order.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return []
    ncols = len(rows[0])
    pivots = []
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows))
                    if not field.is_zero(rows[i][col])), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        pinv = field.inv(pr[col])
        rows[rank] = pr = [field.mul(pinv, v) for v in pr]
        for i in range(len(rows)):
            if i != rank and not field.is_zero(rows[i][col]):
                fac = rows[i][col]
                rows[i] = [field.sub(a, field.mul(fac, b))
                           for a, b in zip(rows[i], pr)]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        vec = [field.zero()] * ncols
        vec[fc] = field.one()
        for r, pc in enumerate(pivots):
            vec[pc] = field.neg(rows[r][fc])
        out.append(vec)
    return out


def coefficient_rows(polys):
    """Expand polynomials in their (shared) monomial basis as field vectors."""
    polys = list(polys)
    if not polys:
        return [], None
    ring = polys[0].ring
    for p in polys:
        ring = ring.common(p.ring)
    polys = [ring.coerce(p) for p in polys]
    monomials = sorted({k for p in polys for k in p.terms}, key=ring.sort_key)
    F = ring.field
    z = F.zero()
    return [[p.terms.get(k, z) for k in monomials] for p in polys], monomials


def lin_independent(polys) -> bool:
    polys = list(polys)
    rows, _ = coefficient_rows(polys)
    if not rows:
        return not polys
    F = polys[0].ring.field
    return exact_rank(F, rows) == len(polys)


def k_general(m: Mat) -> bool:
    """Some row and some column each have k-linearly independent entries."""
    row_ok = any(lin_independent(m.entries[i]) for i in range(m.rows))
    if not row_ok:
        return False
    return any(lin_independent([m.entries[i][j] for i in range(m.rows)])
               for j in range(m.cols))
