import math
from fractions import Fraction

import pytest

from arithlab_toolkit.errors import BudgetExceeded, DomainError
from arithlab_toolkit.elliptic import (ADDITIVE, GOOD, NONSPLIT, SPLIT, CURVES, WeierstrassCurve,
                                       add, an_coefficients, canonical_height,
                                       canonical_height_at, conductor_away_23, count_points,
                                       curve, double_x, group_structure_mod_p,
                                       height_pairing, mul, naive_height, neg,
                                       parallelogram_defect, points_mod_p, reduce_and_count,
                                       reduction_table, regulator, root_number,
                                       singular_point_mod_p, torsion)
from arithlab_toolkit.elliptic.heights import doublings_for
from arithlab_toolkit.exactnum import primes_up_to

H_37A = 0.0511114082399688
REG_389A = 0.152460177943144


def test_invariants():
    assert curve("37a").discriminant == 37
    assert curve("11a").discriminant == -11 ** 5
    A, B = 2, 3
    assert WeierstrassCurve.short(A, B).discriminant == -16 * (4 * A ** 3 + 27 * B ** 2)
    E = curve("11a")
    assert E.j_invariant == Fraction(-122023936, 161051)
    with pytest.raises(DomainError):
        WeierstrassCurve(0, 0, 0, 0, 0)


def test_multiples_on_37a():
    E = curve("37a")
    P = E.point(0, 0)
    expected = [(1, 0), (-1, -1), (2, -3), (Fraction(1, 4), Fraction(-5, 8))]
    for n, (x, y) in enumerate(expected, start=2):
        Q = mul(n, P)
        assert (Q.x, Q.y) == (x, y)
    assert add(P, E.infinity) == P
    assert add(P, neg(P)).is_infinity
    assert double_x(E, Fraction(0)) == 1


def test_duplication_formula_matches_group_law():
    E = curve("389a")
    P, Q = E.point(0, 0), E.point(-1, 1)
    for R in (P, Q, P + Q, 3 * P - Q):
        assert double_x(E, R.x) == add(R, R).x


def test_associativity():
    E = curve("389a")
    P, Q = E.point(0, 0), E.point(-1, 1)
    pts = [mul(a, P) + mul(b, Q) for a in range(-2, 3) for b in range(-1, 2)]
    for X in pts[::3]:
        for Y in pts[1::4]:
            for Z in pts[2::5]:
                assert (X + Y) + Z == X + (Y + Z)


def test_short_and_integral_models():
    E = curve("37a")
    short, forward, backward = E.short_model()
    P = E.point(1, 0)
    assert backward(forward(P)) == P
    assert short.j_invariant == E.j_invariant
    F = WeierstrassCurve(0, 0, 0, Fraction(1, 16), Fraction(1, 64))
    model, u = F.integral_model()
    assert model.is_integral() and model.j_invariant == F.j_invariant


def test_reduction_37a():
    E = curve("37a")
    r2, r3, r37 = (reduce_and_count(E, p) for p in (2, 3, 37))
    assert (r2.kind, r2.count, r2.ap) == (GOOD, 5, -2)
    assert (r3.kind, r3.count, r3.ap) == (GOOD, 7, -3)
    assert (r37.kind, r37.ap) == (NONSPLIT, -1)
    assert group_structure_mod_p(E, 2).invariants == [5]
    assert group_structure_mod_p(E, 3).invariants == [7]
    assert len(points_mod_p(E, 7)) == count_points(E, 7)


def test_reduction_types():
    assert reduce_and_count(curve("11a"), 11).kind == SPLIT
    assert reduce_and_count(curve("fermat3"), 3).kind == ADDITIVE
    E = curve("37a")
    x, y = singular_point_mod_p(E, 37)
    assert (y * y + y - x ** 3 + x) % 37 == 0
    with pytest.raises(DomainError):
        reduce_and_count(E, 4)
    with pytest.raises(BudgetExceeded):
        reduce_and_count(E, 1_000_003, point_count_max=1000)


@pytest.mark.parametrize("name", sorted(CURVES))
def test_hasse_bound(name):
    table = reduction_table(curve(name), primes_up_to(500), num_threads=4)
    for p, red in table.items():
        if red.is_good:
            assert red.ap ** 2 <= 4 * p


def test_an_coefficients():
    assert an_coefficients(curve("11a"), 9) == [1, -2, -1, 2, 1, 2, -2, 0, -2]
    a = an_coefficients(curve("37a"), 12)
    assert a[0] == 1 and a[3] == 2
    assert a[5] == a[1] * a[2]


def test_torsion():
    t11 = torsion(curve("11a"))
    assert t11.order == 5 and t11.invariants == [5]
    assert torsion(curve("ex12")).invariants == []
    tf = torsion(curve("fermat3"))
    assert tf.invariants == [3]
    assert {(P.x, P.y) for P in tf.points if not P.is_infinity} == {(3, 0), (3, 9)}
    assert torsion(curve("37a")).order == 1


def test_naive_height():
    P = curve("37a").point(Fraction(1, 4), Fraction(-5, 8))
    assert naive_height(P).value == pytest.approx(math.log(4))


def test_canonical_height_37a():
    E = curve("37a")
    P = E.point(0, 0)
    eps = 1e-6
    h = canonical_height(P, eps)
    assert h.err < eps
    assert h.contains(H_37A)
    assert abs(canonical_height(P, eps / 10).value - h.value) <= 1.1 * eps
    h2 = canonical_height(mul(2, P), eps)
    assert abs(h2.value - 4 * h.value) <= 5 * eps
    a, b = canonical_height_at(P, 6), canonical_height_at(P, 8)
    assert abs(a.value - b.value) <= a.err + b.err


def test_height_defaults_cover_small_tolerances():
    # 13 doublings of 37a's generator, about 5e6 bits, under the default budget
    E = curve("37a")
    assert doublings_for(E, 1e-6) == 11 and doublings_for(E, 1e-7) == 13
    h = canonical_height(E.point(0, 0), 1e-7)
    assert h.err < 1e-7


def test_torsion_height_is_zero():
    h = canonical_height(curve("11a").point(5, 5), 1e-4)
    assert h.value == 0.0


def test_height_budget():
    with pytest.raises(BudgetExceeded, match="ARITHLAB_HEIGHT_BITS"):
        canonical_height(curve("37a").point(0, 0), 1e-8, height_bits=64)


def test_parallelogram_and_pairing():
    E = curve("389a")
    P, Q = E.point(0, 0), E.point(-1, 1)
    eps = 1e-3
    assert abs(parallelogram_defect(P, Q, eps).value) <= 8 * eps
    pq, qp = height_pairing(P, Q, eps), height_pairing(Q, P, eps)
    assert abs(pq.value - qp.value) <= 4 * eps


def test_regulator():
    assert regulator([]).value == 1.0
    E = curve("37a")
    r = regulator([E.point(0, 0)], 1e-5)
    assert r.contains(H_37A)
    E = curve("389a")
    r = regulator([E.point(0, 0), E.point(-1, 1)], 1e-3)
    assert r.contains(REG_389A, slack=1e-9)
    assert r.err < 0.05


def test_root_numbers():
    w37 = root_number(curve("37a"))
    assert w37.value == -1
    assert w37.local[37].value == 1
    w11 = root_number(curve("11a"))
    assert w11.value == 1 and w11.local[11].value == -1
    fermat = root_number(curve("fermat3"))
    assert fermat.value is None and fermat.undetermined == [3]
    assert root_number(curve("fermat3"), overrides={3: -1}).value == 1


def test_conductor():
    assert conductor_away_23(curve("37a")).exact == 37
    assert conductor_away_23(curve("11a")).exact == 11
    additive = conductor_away_23(WeierstrassCurve.short(0, 7))
    assert additive.odd_part == 49
    assert additive.exact is None
    fermat = conductor_away_23(curve("fermat3"))
    assert fermat.exponents[3] == (2, 5)
