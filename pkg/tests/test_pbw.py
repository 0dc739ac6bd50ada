from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hopfcyc.lie import builtin_lie, sl2_xyz
from hopfcyc.pbw import EnvelopingAlgebra
from hopfcyc.exactcore import vadd


@pytest.fixture(scope="module")
def aff():
    return EnvelopingAlgebra(builtin_lie("gl1-aff"), 8)


@pytest.fixture(scope="module")
def usl2():
    return EnvelopingAlgebra(sl2_xyz(), 8)


def test_unit(aff):
    u = aff.parse("X*Y + 2*Y^2")
    assert aff.mul(aff.one(), u) == u == aff.mul(u, aff.one())


def test_reorder_gl1_aff(aff):
    assert aff.mul(aff.gen(1), aff.gen(0)) == aff.parse("X*Y + X")


def test_reorder_sl2(usl2):
    assert usl2.mul(usl2.gen(2), usl2.gen(0)) == usl2.parse("X*Z + Y")


def test_primitive_coproduct(aff):
    assert aff.coproduct(aff.gen(0)) == {((1, 0), (0, 0)): 1, ((0, 0), (1, 0)): 1}


def test_coproduct_of_product(aff):
    got = aff.coproduct(aff.parse("X*Y"))
    want = {((1, 1), (0, 0)): 1, ((1, 0), (0, 1)): 1, ((0, 1), (1, 0)): 1, ((0, 0), (1, 1)): 1}
    assert got == want


def test_antipode_xy(aff):
    # S(XY) = S(Y)S(X) = YX = XY + X
    assert aff.antipode(aff.parse("X*Y")) == aff.parse("X*Y + X")


def test_theta_symmetrization(aff):
    assert aff.theta((1, 0)) == aff.gen(0)
    assert aff.theta((1, 1)) == aff.parse("2*X*Y + X")
    assert aff.theta_inverse(2, aff.theta((1, 1))) == {(1, 1): 1}


def test_theta_sum_of_orderings(usl2):
    # theta of X*Y*Z is the sum over all 6 orderings
    from itertools import permutations
    want = {}
    for p in permutations([0, 1, 2]):
        vadd(want, usl2.prod(*[usl2.gen(i) for i in p]))
    assert usl2.theta((1, 1, 1)) == want


def test_ad_convention(aff, usl2):
    assert aff.ad(0, aff.one()) == {}
    assert usl2.ad(2, usl2.gen(0)) == usl2.gen(1)
    # ad(Y)(X) = [Y, X] = X, extended as a derivation
    assert aff.ad(1, aff.parse("X^2")) == aff.parse("2*X^2")


def _monos(dim, maxdeg):
    return st.lists(st.integers(0, 2), min_size=dim, max_size=dim).filter(lambda e: sum(e) <= maxdeg).map(tuple)


def _elems(dim, maxdeg=2):
    return st.dictionaries(_monos(dim, maxdeg), st.integers(-3, 3).map(Fraction), max_size=3).map(
        lambda d: {k: v for k, v in d.items() if v})


@settings(max_examples=40, deadline=None)
@given(_elems(3), _elems(3), _elems(3))
def test_associative(a, b, c):
    U = EnvelopingAlgebra(sl2_xyz(), 8)
    assert U.mul(U.mul(a, b), c) == U.mul(a, U.mul(b, c))


@settings(max_examples=30, deadline=None)
@given(_elems(3, 3))
def test_hopf_laws(u):
    U = EnvelopingAlgebra(sl2_xyz(), 8)
    d = U.coproduct(u)
    left, right, counit_l, anti = {}, {}, {}, {}
    for (a, b), c in d.items():
        for (a1, a2), e in U.mono_coproduct(a).items():
            vadd(left, {(a1, a2, b): c * e})
        for (b1, b2), e in U.mono_coproduct(b).items():
            vadd(right, {(a, b1, b2): c * e})
        vadd(counit_l, {b: c * U.counit({a: 1})})
        vadd(anti, U.mul(U.antipode({a: 1}), {b: c}))
    assert left == right
    assert counit_l == u
    eps = U.counit(u)
    assert anti == ({(0, 0, 0): eps} if eps else {})


@settings(max_examples=30, deadline=None)
@given(_elems(3, 2), _elems(3, 2))
def test_filtration(a, b):
    U = EnvelopingAlgebra(sl2_xyz(), 8)
    if not a or not b:
        return
    ab = U.mul(a, b)
    comm = vadd(dict(ab), U.mul(b, a), -1)
    assert U.degree(ab) <= U.degree(a) + U.degree(b)
    assert not comm or U.degree(comm) <= U.degree(a) + U.degree(b) - 1


@settings(max_examples=20, deadline=None)
@given(_monos(3, 3).filter(lambda m: sum(m) > 0))
def test_theta_roundtrip(m):
    U = EnvelopingAlgebra(sl2_xyz(), 8)
    assert U.theta_inverse(sum(m), U.theta(m)) == {m: 1}
