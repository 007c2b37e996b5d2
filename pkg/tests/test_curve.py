import random

import pytest

from abeliants.curve import (Curve, CurveError, CurvePoint, Divisor, FuncRep,
                             compression_functional, pairing_rank,
                             re_mod_ie_basis, residue_functional, rr_basis)
from abeliants.fields import PrimeField
from abeliants.matrix import exact_rank, lin_independent
from abeliants.series import Laurent, UPoly

F = PrimeField(1009)


def curve_g1():
    return Curve(F, [3, 0, 2, 1])  # y^2 = x^3 + 2x^2 + 3


def curve_g2():
    return Curve(F, [1, 1, 0, 0, 0, 1])  # y^2 = x^5 + x + 1


def rand_divisor(C, rng, min_deg, extra_inf=0):
    D = Divisor(C)
    deg = 0
    for _ in range(rng.randrange(1, 4)):
        Q = C.random_affine_point(rng)
        m = rng.randrange(-2, 4)
        D = D + Divisor.of_point(Q, m)
        deg += m
    m_inf = max(min_deg - deg, 0) + rng.randrange(0, 4) + extra_inf
    return D + Divisor.infinity(C, m_inf)


def test_curve_validation():
    with pytest.raises(CurveError):
        Curve(F, [0, 0, 1])  # even degree
    with pytest.raises(CurveError):
        Curve(F, [1, 1, 1, 2])  # not monic
    with pytest.raises(CurveError):
        Curve(F, [0, 0, 0, 1])  # x^3 not squarefree
    with pytest.raises(CurveError):
        curve_g1().point(0, 1)  # off curve


def test_coordinate_orders():
    for C in (curve_g1(), curve_g2()):
        g = C.g
        inf = C.infinity()
        x = C.funcrep([0, 1])
        y = C.funcrep([], [1])
        assert x.ord_at(inf) == -2
        assert y.ord_at(inf) == -(2 * g + 1)
        assert C.funcrep([1]).ord_at(inf) == 0
        rng = random.Random(1)
        P = C.random_affine_point(rng)
        assert C.funcrep([F.neg(P.x), 1]).ord_at(P) == \
            (2 if P.is_weierstrass() else 1)


def test_expansion_consistency():
    for C in (curve_g1(), curve_g2()):
        # y(t)^2 = f(x(t)) at all three kinds of places
        pts = [C.infinity()]
        rng = random.Random(2)
        pts.append(C.random_affine_point(rng))
        # a Weierstrass point: root of f, if any rational one exists
        for x0 in range(1009):
            if F.is_zero(C.f.eval(F.of_int(x0))):
                pts.append(C.point(x0, 0))
                break
        for P in pts:
            xs, ys = C.expansions(P, 40)
            lhs = ys * ys
            rhs = xs.eval_upoly(C.f)
            known = min(lhs.prec, rhs.prec)
            lo = min(lhs.offset, rhs.offset)
            assert known - lo >= 8  # enough overlap to be meaningful
            for e in range(lo, known):
                assert C.field.eq(lhs.coeff(e), rhs.coeff(e))


def test_ord_examples():
    C = curve_g1()
    rng = random.Random(3)
    P = C.random_affine_point(rng)
    one = C.funcrep([1])
    assert one.ord_at(P) == 0
    with pytest.raises(CurveError):
        C.funcrep([]).ord_at(P)


def test_degree_of_principal_divisors():
    # deg of pole divisor = deg of zero divisor over computed support
    C = curve_g1()
    rng = random.Random(4)
    for _ in range(5):
        P = C.random_affine_point(rng)
        Q = C.random_affine_point(rng)
        h = C.funcrep([F.neg(P.x), 1]) * C.funcrep([F.neg(Q.x), 1]).inverse()
        total = 0
        support = {P, P.conjugate(), Q, Q.conjugate(), C.infinity()}
        for R in support:
            total += h.ord_at(R)
        assert total == 0


def test_funcrep_field_axioms():
    C = curve_g1()
    rng = random.Random(5)
    for _ in range(10):
        hs = []
        for _ in range(3):
            a = UPoly(F, [F.random(rng) for _ in range(3)])
            b = UPoly(F, [F.random(rng) for _ in range(2)])
            d = UPoly(F, [F.random(rng), F.one()])
            hs.append(FuncRep(C, a, b, d))
        h1, h2, h3 = hs
        assert (h1 + h2) * h3 == h1 * h3 + h2 * h3
        if not h1.is_zero():
            assert h1 * h1.inverse() == C.funcrep([1])
        # y^2 = f holds
        y = C.funcrep([], [1])
        assert y * y == C.funcrep(C.f.coeffs)


def test_rr_basis_examples():
    C = curve_g1()
    B = rr_basis(Divisor.infinity(C, 3))
    assert len(B) == 3
    reprs = {(tuple(h.a.coeffs), tuple(h.b.coeffs), tuple(h.d.coeffs)) for h in B}
    # contains 1, x, y
    assert ((F.one(),), (), (F.one(),)) in reprs
    assert ((F.zero(), F.one()), (), (F.one(),)) in reprs
    assert ((), (F.one(),), (F.one(),)) in reprs
    assert len(rr_basis(Divisor(C))) == 1
    rng = random.Random(6)
    P = C.random_affine_point(rng)
    assert len(rr_basis(Divisor.of_point(P) + Divisor.infinity(C, 2))) == 3


def test_rr_dimensions():
    total = 0
    for C in (curve_g1(), curve_g2()):
        g = C.g
        rng = random.Random(100 + g)
        count = 0
        while count < 25:
            D = rand_divisor(C, rng, 2 * g - 1)
            if D.degree() < 2 * g - 1:
                continue
            B = rr_basis(D)
            assert len(B) == D.degree() - g + 1, (repr(D), len(B))
            # basis elements actually lie in L(D) and are independent
            for h in B[:2]:
                for P in list(D.coeffs) or []:
                    if not P.is_infinity():
                        assert h.ord_at(P) >= -D.mult(P)
            count += 1
            total += 1
    assert total >= 50


def test_rr_membership_at_infinity():
    C = curve_g2()
    rng = random.Random(7)
    for _ in range(5):
        D = rand_divisor(C, rng, 2 * C.g - 1)
        for h in rr_basis(D):
            assert h.ord_at(C.infinity()) >= -D.mult(C.infinity())


def test_products_in_sum_space():
    C = curve_g1()
    rng = random.Random(8)
    for _ in range(5):
        D1 = rand_divisor(C, rng, 2)
        D2 = rand_divisor(C, rng, 2)
        f1 = rr_basis(D1)[0]
        f2 = rr_basis(D2)[-1]
        prod = f1 * f2
        for P in set(list(D1.coeffs) + list(D2.coeffs)) | {C.infinity()}:
            assert prod.is_zero() or \
                prod.ord_at(P) >= -(D1.mult(P) + D2.mult(P))


def _funcrep_vectors(reps):
    """Coefficient vectors of FuncReps over a common denominator."""
    C = reps[0].curve
    den = UPoly(C.field, [1])  # lcm of denominators, built pairwise
    for h in reps:
        den = (den * h.d) // den.gcd(h.d)
    nums = []
    for h in reps:
        m = den // h.d
        nums.append((h.a * m, h.b * m))
    da = max(max((a.degree() for a, _ in nums), default=0), 0)
    db = max(max((b.degree() for _, b in nums), default=0), 0)
    F_ = C.field
    vecs = []
    for a, b in nums:
        va = [a.coeffs[i] if i <= a.degree() else F_.zero() for i in range(da + 1)]
        vb = [b.coeffs[i] if i <= b.degree() else F_.zero() for i in range(db + 1)]
        vecs.append(va + vb)
    return vecs


def test_mumford_surjectivity():
    # span of L(D) * L(E') has dimension l(D + E') when deg D >= 2g+1, deg E' >= 2g
    pairs = 0
    for C in (curve_g1(), curve_g2()):
        g = C.g
        rng = random.Random(200 + g)
        while pairs < (10 if g == 1 else 20):
            D = rand_divisor(C, rng, 2 * g + 1)
            E2 = rand_divisor(C, rng, 2 * g)
            if D.degree() < 2 * g + 1 or E2.degree() < 2 * g:
                continue
            BD, BE = rr_basis(D), rr_basis(E2)
            prods = [a * b for a in BD for b in BE]
            vecs = _funcrep_vectors(prods)
            rank = exact_rank(C.field, vecs)
            assert rank == D.degree() + E2.degree() - g + 1
            pairs += 1
    assert pairs >= 20


def test_residue_functional():
    for C in (curve_g1(), curve_g2()):
        E = Divisor.infinity(C, 2 * C.g + 1)
        sig = residue_functional(E)
        B = re_mod_ie_basis(E)
        assert [h.ord_at(C.infinity()) for h in B] == list(range(E.degree()))
        assert pairing_rank(sig, B, B) == E.degree()
        # vanishes on functions vanishing to order >= E
        high = B[-1] * B[-1]  # ord 2(degE - 1) >= degE
        assert C.field.is_zero(sig.apply(high))
        # linearity
        rng = random.Random(9)
        c = C.field.random(rng)
        a, b = B[0] + B[2], B[1]
        assert sig.apply(a + b.scalar_mul(c)) == \
            C.field.add(sig.apply(a), C.field.mul(c, sig.apply(b)))


def test_residue_theorem_sanity():
    # sum of residues of h*omega over all poles is zero
    C = curve_g1()
    rng = random.Random(10)
    sig = residue_functional(Divisor.infinity(C, 3))
    for _ in range(5):
        P = C.random_affine_point(rng)
        h = C.funcrep([F.neg(P.x), 1]).inverse()  # 1/(x - xP)
        # omega = dx; poles of h*dx: P, conj(P), infinity
        total = F.zero()
        for Q in {P, P.conjugate(), C.infinity()}:
            ser = h.expansion(Q, 12) * _omega_series(C, sig, Q, 12)
            total = F.add(total, ser.coeff(-1))
        assert F.is_zero(total)


def _omega_series(C, sig, Q, prec):
    xs, ys = C.expansions(Q, prec)
    ser = xs.deriv()
    if sig.xexp:
        ser = ser * xs ** sig.xexp
    if sig.yexp == 1:
        ser = ser * ys
    elif sig.yexp == -1:
        ser = ser * ys.inverse()
    return ser


def test_compression_functional_perfection():
    count = 0
    for C in (curve_g1(), curve_g2()):
        g = C.g
        E = Divisor.infinity(C, 2 * g + 1)
        G = Divisor.infinity(C, 4 * (2 * g + 1))
        rho = compression_functional(G, E)
        # rho vanishes on L(G - E)
        for h in rr_basis(G - E)[:4]:
            assert C.field.is_zero(rho.apply(h))
        rng = random.Random(300 + g)
        half = G.degree() // 2
        while count < (10 if g == 1 else 20):
            D = rand_divisor(C, rng, 0)
            adjust = half - D.degree()
            if adjust < 0:
                continue
            D = D + Divisor.infinity(C, adjust)
            r = pairing_rank(rho, rr_basis(D), rr_basis(G - D))
            assert r == E.degree(), repr(D)
            count += 1
    assert count >= 20


def test_compression_preconditions():
    C = curve_g1()
    E = Divisor.infinity(C, 3)
    with pytest.raises(CurveError):
        compression_functional(Divisor.infinity(C, 7), E)  # odd degree
    with pytest.raises(CurveError):
        compression_functional(Divisor.infinity(C, 6), E)  # slack too small


def test_eval_hom():
    C = curve_g1()
    rng = random.Random(11)
    P = C.random_affine_point(rng)
    s = C.eval_hom(P)
    assert s.values == (P.x, P.y)
    with pytest.raises(CurveError):
        C.eval_hom(C.infinity())
    # agreement with expansion constant term for regular functions
    for _ in range(5):
        h = FuncRep(C, UPoly(F, [F.random(rng) for _ in range(3)]),
                    UPoly(F, [F.random(rng)]), UPoly(F, [1]))
        assert h.evaluate(P) == h.expansion(P, 6).coeff(0)


def test_divisor_json_roundtrip():
    C = curve_g1()
    rng = random.Random(12)
    P = C.random_affine_point(rng)
    D = Divisor.of_point(P, 2) + Divisor.infinity(C, -1)
    assert Divisor.from_json(C, D.to_json()) == D
    C2 = Curve.from_json(C.to_json())
    assert C2.f == C.f


def test_point_basics():
    C = curve_g1()
    inf = C.infinity()
    assert inf.is_infinity() and inf.conjugate() == inf
    rng = random.Random(13)
    P = C.random_affine_point(rng)
    assert P.conjugate().conjugate() == P
    assert P != inf
