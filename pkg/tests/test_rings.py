import pytest
from hypothesis import given, settings, strategies as st
from sympy import expand, sqrt

from exactsynth.rings import (
    QQ,
    QSQRT2,
    QSQRT5,
    FieldElem,
    RingElem,
    RingTagError,
    canonical_associate,
    euclidean_div,
    factor_element,
    factor_rational_prime,
    get_ring,
    parse_field_literal,
    parse_ring_literal,
    format_ring_literal,
    prime_ideal,
    projective_line,
    projective_line_size,
    ring_gcd,
    ring_xgcd,
    valuation,
)

small = st.integers(-60, 60)
RINGS2 = [QSQRT2, QSQRT5]
GEN = {"Q(sqrt2)": sqrt(2), "Q(sqrt5)": (1 + sqrt(5)) / 2}


def elem(ring):
    if ring.degree == 1:
        return st.builds(lambda a: RingElem(a, 0, ring), small)
    return st.builds(lambda a, b: RingElem(a, b, ring), small, small)


def nonzero(ring):
    return elem(ring).filter(lambda x: not x.is_zero())


def sym(x):
    return x.a + x.b * GEN[x.ring.tag]


@pytest.mark.parametrize("ring", RINGS2, ids=lambda r: r.tag)
@settings(max_examples=300, deadline=None)
@given(data=st.data())
def test_norm_matches_sympy(ring, data):
    x = data.draw(elem(ring))
    conj = x.a + x.b * (ring.t - GEN[ring.tag])
    assert expand(sym(x) * conj) == x.norm()


@pytest.mark.parametrize("ring", [QQ] + RINGS2, ids=lambda r: r.tag)
@settings(max_examples=400, deadline=None)
@given(data=st.data())
def test_norm_multiplicative(ring, data):
    x, y = data.draw(elem(ring)), data.draw(elem(ring))
    assert (x * y).norm() == x.norm() * y.norm()


@pytest.mark.parametrize("ring", [QQ] + RINGS2, ids=lambda r: r.tag)
@settings(max_examples=400, deadline=None)
@given(data=st.data())
def test_euclidean_division(ring, data):
    x, y = data.draw(elem(ring)), data.draw(nonzero(ring))
    q, r = euclidean_div(x, y)
    assert q * y + r == x
    assert abs(r.norm()) < abs(y.norm())


@pytest.mark.parametrize("ring", RINGS2, ids=lambda r: r.tag)
@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_xgcd_bezout(ring, data):
    x, y = data.draw(nonzero(ring)), data.draw(nonzero(ring))
    g, s, t = ring_xgcd(x, y)
    assert s * x + t * y == g
    assert g.divides(x) and g.divides(y)
    assert canonical_associate(g) == ring_gcd(x, y)


@pytest.mark.parametrize("ring", RINGS2, ids=lambda r: r.tag)
@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_canonical_associate_is_unit_invariant(ring, data):
    x = data.draw(nonzero(ring))
    eps = ring.fundamental_unit()
    c = canonical_associate(x)
    assert canonical_associate(-x * eps * eps * eps) == c
    assert c.a > 0 and x.divides(c) and c.divides(x)


@pytest.mark.parametrize("ring", [QQ] + RINGS2, ids=lambda r: r.tag)
@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_factorisation_reassembles(ring, data):
    x = data.draw(nonzero(ring))
    prod = ring.one()
    for P, e in factor_element(x):
        assert valuation(x, P) == e
        prod = prod * P.generator ** e
    assert canonical_associate(prod) == canonical_associate(x)


@pytest.mark.parametrize("ring", [QQ] + RINGS2, ids=lambda r: r.tag)
@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_valuation_additive(ring, data):
    x, y = data.draw(nonzero(ring)), data.draw(nonzero(ring))
    for p in (2, 3, 5, 7):
        for P, _ in factor_rational_prime(p, ring):
            assert valuation(x * y, P) == valuation(x, P) + valuation(y, P)


def test_golden_unit_norm():
    # Nm(phi) = -1, from sympy
    assert QSQRT5.omega().norm() == -1
    assert QSQRT5.omega().is_unit()


def test_divide_by_root2():
    # (4 + 2 sqrt2) / sqrt2 = 2 + 2 sqrt2, from sympy
    x = RingElem(4, 2, QSQRT2)
    q, r = euclidean_div(x, QSQRT2.omega())
    assert r.is_zero() and q == RingElem(2, 2, QSQRT2)
    assert valuation(x, prime_ideal(2, QSQRT2)) == 3


def test_prime_splitting_types():
    (P2, e), = factor_rational_prime(2, QSQRT2)
    assert e == 2 and P2.norm == 2
    assert [P.norm for P, _ in factor_rational_prime(7, QSQRT2)] == [7, 7]
    assert [P.norm for P, _ in factor_rational_prime(3, QSQRT2)] == [9]
    (P5, e5), = factor_rational_prime(5, QSQRT5)
    assert e5 == 2 and P5.norm == 5
    assert [P.norm for P, _ in factor_rational_prime(11, QSQRT5)] == [11, 11]


def _primes_up_to(ring, bound):
    out = []
    for p in range(2, bound + 1):
        if all(p % d for d in range(2, p)):
            out += [P for P, _ in factor_rational_prime(p, ring) if P.norm <= bound]
    return out


@pytest.mark.parametrize("ring", [QQ] + RINGS2, ids=lambda r: r.tag)
def test_projective_line_sizes(ring):
    for P in _primes_up_to(ring, 100):
        pts = projective_line(P)
        assert len(pts) == P.norm + 1 == projective_line_size(P)
        assert len({(x.key(), y.key()) for x, y in pts}) == len(pts)
    for P in _primes_up_to(ring, 7):
        for e in (2, 3):
            assert len(projective_line(P, e)) == projective_line_size(P, e) == P.norm ** (e - 1) * (P.norm + 1)


def test_literals_round_trip():
    for ring in (QQ, QSQRT2, QSQRT5):
        for a, b in ((3, 0), (-2, 5), (0, -1)):
            if ring.degree == 1 and b:
                continue
            x = RingElem(a, b, ring)
            assert parse_ring_literal(format_ring_literal(x), ring) == x
    assert parse_field_literal("(1+w)/2", QSQRT2) == FieldElem(RingElem(1, 1, QSQRT2), 2)
    assert parse_field_literal("1+w/2", QSQRT2) != parse_field_literal("(1+w)/2", QSQRT2)
    assert parse_ring_literal("5+0*w", QQ) == RingElem(5, 0, QQ)


def test_bad_inputs():
    with pytest.raises(RingTagError):
        get_ring("Q(sqrt3)")
    with pytest.raises(ValueError):
        RingElem(1, 1, QQ)
    with pytest.raises(ZeroDivisionError):
        euclidean_div(QSQRT2.one(), QSQRT2.zero())
    with pytest.raises(ValueError):
        parse_ring_literal("2**3", QQ)
