import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from exactsynth.lattice import fincke_pohst, lll_gram, short_vectors
from exactsynth.quaternion import (
    IndefiniteAlgebraError,
    QAlgebra,
    QOrder,
    clifford_t_order,
    enumerate_by_norm,
    format_quaternion,
    hurwitz_order,
    lipschitz_order,
    order_discriminant,
    parse_quaternion,
)
from exactsynth.rings import QSQRT2, QSQRT5, FieldElem, RingElem

HAM = QAlgebra("Q", -1, -1)
HAM2 = QAlgebra("Q(sqrt2)", -1, -1)
GOLD = QAlgebra.from_params("Q(sqrt5)", RingElem(2, 1, QSQRT5), RingElem(0, 1, QSQRT5))

coord = st.fractions(min_value=-20, max_value=20, max_denominator=6)


def quats(alg):
    if alg.ring.degree == 1:
        c = coord
    else:
        c = st.builds(lambda x, y: FieldElem(RingElem(x.numerator, 0, alg.ring), x.denominator)
                      + FieldElem(RingElem(0, y, alg.ring)), coord, st.integers(-5, 5))
    return st.builds(alg.element, c, c, c, c)


ALGS = [HAM, HAM2, GOLD]


@pytest.mark.parametrize("alg", ALGS, ids=repr)
@settings(max_examples=150, deadline=None)
@given(data=st.data())
def test_nrd_multiplicative_and_conj(alg, data):
    x, y, z = (data.draw(quats(alg)) for _ in range(3))
    assert (x * y).nrd() == x.nrd() * y.nrd()
    assert (x * y).conj() == y.conj() * x.conj()
    assert (x * y) * z == x * (y * z)
    assert x * x.conj() == alg.scalar(x.nrd())
    assert (x + x.conj()) == alg.scalar(x.trd())
    if not x.is_zero():
        assert x * x.inverse() == alg.one()


@pytest.mark.parametrize("alg", ALGS, ids=repr)
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_literal_round_trip(alg, data):
    x = data.draw(quats(alg))
    assert parse_quaternion(format_quaternion(x), alg) == x


def test_basic_products():
    one, i, j, k = HAM.gens()
    assert i * j == k and j * i == -k and i * i == -one
    q = HAM.parse("1+2*i")
    assert q.nrd() == 5
    # (1+2i)^2 = -3 + 4i, by hand and by the brute-force oracle
    assert q * q == HAM.parse("-3+4*i")


def test_order_membership_and_discriminants():
    H = hurwitz_order()
    # (1+i)/2 has coordinates (1/2, 1/2, 0, 0) in the Hurwitz basis (sympy)
    assert not H.contains(HAM.parse("(1+i)/2"))
    assert H.contains(HAM.parse("(1+i+j+k)/2"))
    # reduced discriminants 2 and 4 from the sympy trace-form determinants -4 and -16
    assert order_discriminant(H) == 2
    assert order_discriminant(lipschitz_order()) == 4
    assert H.is_maximal() and not lipschitz_order().is_maximal()
    assert HAM.discriminant() == 2
    O = clifford_t_order()
    assert O.is_maximal() and order_discriminant(O) == QSQRT2.one()


def test_unit_counts():
    # 24 Hurwitz units by brute force over half-integer coordinates; 48 from the binary octahedral group
    assert len(enumerate_by_norm(hurwitz_order(), 1)) == 24
    assert len(enumerate_by_norm(lipschitz_order(), 1)) == 8
    assert len(clifford_t_order().units) == 48


def test_norm_five_count():
    # 144 Hurwitz elements of norm 5 (brute force)
    assert len(enumerate_by_norm(hurwitz_order(), 5)) == 144


def test_enumeration_needs_definite():
    alg = QAlgebra("Q", 1, -1)
    assert not alg.is_totally_definite()
    O = QOrder(alg, alg.gens())
    with pytest.raises(IndefiniteAlgebraError):
        enumerate_by_norm(O, 1)


def test_definiteness_over_real_quadratic():
    assert QAlgebra("Q(sqrt5)", -1, -1).is_totally_definite()
    # phi has a negative conjugate, so the su2k parameters are indefinite
    assert not GOLD.is_totally_definite()
    fib = QAlgebra.from_params("Q(sqrt5)", RingElem(3, -1, QSQRT5), RingElem(-1, 1, QSQRT5))
    assert not fib.is_totally_definite()


def test_non_closed_basis_rejected():
    one, i, j, k = HAM.gens()
    with pytest.raises(ValueError):
        QOrder(HAM, [one, i / 2, j, k])


def test_content_and_normalizer():
    H = hurwitz_order()
    assert H.content(HAM.parse("2+2*i")) == 2
    assert H.normalizes(HAM.parse("1+i"))
    assert not H.normalizes(HAM.parse("1+2*i"))


def _brute_short(G, bound, r=4):
    n = len(G)
    out = set()
    for v in itertools.product(range(-r, r + 1), repeat=n):
        if any(v) and sum(v[a] * G[a][b] * v[b] for a in range(n) for b in range(n)) <= bound:
            out.add(v)
    return out


@pytest.mark.parametrize("G", [
    [[2, 1, 0], [1, 2, 1], [0, 1, 2]],
    [[5, 2], [2, 3]],
    [[1, 0, 0, 0], [0, 2, 1, 0], [0, 1, 3, 1], [0, 0, 1, 4]],
])
def test_short_vectors_match_brute_force(G):
    for bound in (2, 4, 6):
        got = {tuple(v) for v in short_vectors(G, bound) if any(v)}
        assert got == _brute_short(G, bound)
        raw = {tuple(v) for v in fincke_pohst(G, bound) if any(v)}
        assert raw == got


def test_lll_preserves_lattice():
    G = [[10, 7, 3], [7, 6, 2], [3, 2, 5]]
    U, Gr = lll_gram(G)
    n = 3
    for a in range(n):
        for b in range(n):
            assert Gr[a][b] == sum(U[a][s] * G[s][t] * U[b][t] for s in range(n) for t in range(n))
    det = (U[0][0] * (U[1][1] * U[2][2] - U[1][2] * U[2][1]) - U[0][1] * (U[1][0] * U[2][2] - U[1][2] * U[2][0])
           + U[0][2] * (U[1][0] * U[2][1] - U[1][1] * U[2][0]))
    assert abs(det) == 1
    assert Fraction(Gr[0][0]) <= G[0][0]
