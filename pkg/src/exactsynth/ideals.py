"""Lattices and right ideals inside a quaternion order.

A lattice is stored by the coordinates of an R_F-basis with respect to the
basis of a fixed reference order, as a canonical Hermite normal form over
R_F divided by one positive integer.  Equal lattices have equal data.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

from .quaternion import (
    QOrder,
    elements_of_norm,
    field_matrix_inverse,
    z_basis_of,
)
from .rings import (
    FieldElem,
    RingElem,
    ResidueField,
    ResidueRing,
    as_field,
    canonical_associate,
    euclidean_div,
    factor_element,
    projective_line,
    ring_gcd,
    totally_positive_associate,
    valuation,
)


class ImproperProduct(ValueError):
    """The right order of the left factor differs from the left order of the right one."""


class RamifiedPrimeError(ValueError):
    """A construction that needs an unramified prime got a ramified one."""


class _NotPrincipal:
    __slots__ = ()

    def __repr__(self):
        return "NOT_PRINCIPAL"

    def __bool__(self):
        return False


NOT_PRINCIPAL = _NotPrincipal()


# Hermite normal form over R_F ---------------------------------------------

def _reduce_mod(x, m):
    """Canonical residue of ``x`` modulo ``m`` and the quotient."""
    r = ResidueRing(m).reduce(x)
    return r, (x - r).exact_div(m)


def hnf(rows, ring, rank=4):
    """Canonical upper triangular basis of the R_F-span of integer ``rows``.

    Pivots are canonical associates and entries above a pivot are canonical
    residues modulo it, so two generating sets of the same module give the
    same matrix.
    """
    A = [list(r) for r in rows if any(not x.is_zero() for x in r)]
    out = []
    for c in range(rank):
        while True:
            nz = [r for r in A if not r[c].is_zero()]
            if len(nz) <= 1:
                break
            piv = min(nz, key=lambda r: abs(r[c].norm()))
            for r in nz:
                if r is piv:
                    continue
                q, _ = euclidean_div(r[c], piv[c])
                if not q.is_zero():
                    for t in range(c, rank):
                        r[t] = r[t] - q * piv[t]
            A = [r for r in A if any(not x.is_zero() for x in r)]
        nz = [r for r in A if not r[c].is_zero()]
        if not nz:
            raise ValueError("lattice is not of full rank")
        piv = nz[0]
        A = [r for r in A if r is not piv]
        u = canonical_associate(piv[c]).exact_div(piv[c])
        if u != 1:
            piv = [x * u for x in piv]
        out.append(piv)
    for c in range(rank):
        p = out[c][c]
        for r in range(c):
            x = out[r][c]
            res, q = _reduce_mod(x, p)
            if not q.is_zero():
                out[r] = [out[r][t] - q * out[c][t] if t >= c else out[r][t] for t in range(rank)]
    return out


def _field_rows_to_int(rows):
    den = 1
    for row in rows:
        for x in row:
            den = den * x.den // gcd(den, x.den)
    return [[(x * den).to_ring() if isinstance(x, FieldElem) else x * den for x in row] for row in rows], den


class RightIdealLat:
    """An R_F-lattice of rank 4 in coordinates of a reference order ``order``.

    ``rows`` is the canonical Hermite form, ``den`` a positive integer; the
    lattice is spanned by ``sum_t rows[r][t] * order.basis[t] / den``.
    Right ideals, left ideals, orders and conjugated lattices all use this
    one representation.
    """

    __slots__ = ("order", "rows", "den", "_basis", "_hash", "_nrd")

    def __init__(self, order, rows, den=1, canonical=False):
        self.order = order
        if not canonical:
            rows = hnf(rows, order.ring)
        g = den
        for row in rows:
            for x in row:
                g = gcd(g, gcd(x.a, x.b))
        if g > 1:
            rows = [[RingElem(x.a // g, x.b // g, x.ring) for x in row] for row in rows]
            den //= g
        self.rows = tuple(tuple(r) for r in rows)
        self.den = den
        self._basis = None
        self._hash = None
        self._nrd = None

    # construction ---------------------------------------------------------
    @classmethod
    def from_elements(cls, order, elems):
        """R_F-span of the given quaternions."""
        coords = [order.coords(q) for q in elems]
        rows, den = _field_rows_to_int(coords)
        return cls(order, rows, den)

    @classmethod
    def from_coords(cls, order, coords):
        rows, den = _field_rows_to_int(coords)
        return cls(order, rows, den)

    # views ------------------------------------------------------------------
    @property
    def ring(self):
        return self.order.ring

    @property
    def alg(self):
        return self.order.alg

    @property
    def basis(self):
        if self._basis is None:
            self._basis = tuple(self.order.from_coords(r) / self.den for r in self.rows)
        return self._basis

    def __eq__(self, other):
        return isinstance(other, RightIdealLat) and self.den == other.den and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.den))
        return self._hash

    def __repr__(self):
        return f"RightIdealLat(nrd={self.nrd()}, basis={[str(b) for b in self.basis]})"

    def key(self):
        return (self.den, tuple(tuple((x.a, x.b) for x in r) for r in self.rows))

    # membership ---------------------------------------------------------------
    def _solve(self, coords):
        """Coordinates of an order-coordinate vector in this lattice's basis."""
        d = self.den
        c = []
        for t in range(4):
            s = as_field(coords[t], self.ring) * d
            for r in range(t):
                s = s - c[r] * self.rows[r][t]
            c.append(s / self.rows[t][t])
        return c

    def contains(self, q):
        return all(x.is_integral() for x in self._solve(self.order.coords(q)))

    def contains_coords(self, coords):
        return all(x.is_integral() for x in self._solve(coords))

    def issubset(self, other):
        """Containment by membership of the four basis vectors."""
        if self.order is not other.order:
            return all(other.contains(b) for b in self.basis)
        for r in self.rows:
            if not other.contains_coords([FieldElem(x, self.den) for x in r]):
                return False
        return True

    __le__ = issubset

    def is_integral_in(self, O):
        return all(O.contains(b) for b in self.basis)

    # arithmetic -----------------------------------------------------------------
    def scale(self, x):
        x = as_field(x, self.ring)
        rows = [[y * x.num for y in r] for r in self.rows]
        return RightIdealLat(self.order, rows, self.den * x.den)

    def left_mul(self, q):
        return RightIdealLat.from_elements(self.order, [q * b for b in self.basis])

    def right_mul(self, q):
        return RightIdealLat.from_elements(self.order, [b * q for b in self.basis])

    def conjugate_by(self, q):
        """The lattice q L q^-1."""
        qi = q.inverse()
        return RightIdealLat.from_elements(self.order, [q * b * qi for b in self.basis])

    def conj(self):
        return RightIdealLat.from_elements(self.order, [b.conj() for b in self.basis])

    def __add__(self, other):
        d = self.den * other.den // gcd(self.den, other.den)
        rows = [[x * (d // self.den) for x in r] for r in self.rows]
        rows += [[x * (d // other.den) for x in r] for r in other.rows]
        return RightIdealLat(self.order, rows, d)

    def __mul__(self, other):
        return RightIdealLat.from_elements(self.order, [x * y for x in self.basis for y in other.basis])

    def dual(self):
        """Dual lattice for the coordinate dot product."""
        M = [[FieldElem(x, self.den) for x in r] for r in self.rows]
        inv = field_matrix_inverse(M, self.ring)
        T = [[inv[c][r] for c in range(4)] for r in range(4)]
        return RightIdealLat.from_coords(self.order, T)

    def intersection(self, *others):
        acc = self.dual()
        for o in others:
            acc = acc + o.dual()
        return acc.dual()

    # invariants ------------------------------------------------------------------
    def nrd(self):
        """Generator of the R_F-ideal spanned by the reduced norms, canonical."""
        if self._nrd is None:
            vals = [b.nrd() for b in self.basis]
            B = self.basis
            for r in range(4):
                for c in range(r + 1, 4):
                    vals.append((B[r] + B[c]).nrd())
            self._nrd = field_ideal_gcd(vals, self.ring)
        return self._nrd

    def nrd_ring(self):
        n = self.nrd()
        if n.den != 1:
            raise ValueError("lattice is not integral")
        return n.num

    def det(self):
        d = self.ring.one()
        for r in range(4):
            d = d * self.rows[r][r]
        return FieldElem(d, self.den ** 4)

    def index(self):
        """Generalized Z-index [O : L], a positive rational."""
        return abs(self.det().norm())

    def intersect_center(self):
        """Generator of L meet F (an R_F-ideal, canonical), assuming it is nonzero."""
        c = self._solve(self.order.coords(self.alg.one()))
        g = self.ring.one()
        for x in c:
            if x.is_zero():
                continue
            d = RingElem(x.den, 0, self.ring)
            need = d.exact_div(ring_gcd(x.num, d))
            g = ring_lcm(g, need)
        return canonical_associate(g)

    def as_order(self, name=None):
        return QOrder(self.alg, list(self.basis), check=False, name=name)


def ring_lcm(x, y):
    if x.is_zero() or y.is_zero():
        return x.ring.zero()
    return (x * y).exact_div(ring_gcd(x, y))


def field_ideal_gcd(vals, ring):
    """Canonical generator of the fractional ideal generated by ``vals``."""
    vals = [as_field(v, ring) for v in vals if not as_field(v, ring).is_zero()]
    if not vals:
        return as_field(0, ring)
    den = 1
    for v in vals:
        den = den * v.den // gcd(den, v.den)
    g = ring.zero()
    for v in vals:
        g = ring_gcd(g, v.num * (den // v.den))
    return FieldElem(canonical_associate(g), den)


# ideals ---------------------------------------------------------------------

def unit_lattice(O):
    """The order itself as a lattice in its own coordinates."""
    one = O.ring.one()
    zero = O.ring.zero()
    return RightIdealLat(O, [[one if r == c else zero for c in range(4)] for r in range(4)], 1, canonical=True)


def ideal_from_generators(O, gens):
    """Smallest right O-ideal containing ``gens``."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("zero lattice")
    return RightIdealLat.from_elements(O, [g * b for g in gens for b in O.basis])


def left_ideal_from_generators(O, gens):
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("zero lattice")
    return RightIdealLat.from_elements(O, [b * g for g in gens for b in O.basis])


def ideal_nrd(I):
    return I.nrd()


def left_order(I):
    """{a : a I in I} as a lattice."""
    parts = [I.right_mul(x.inverse()) for x in I.basis]
    return parts[0].intersection(*parts[1:])


def right_order(I):
    """{a : I a in I} as a lattice."""
    parts = [I.left_mul(x.inverse()) for x in I.basis]
    return parts[0].intersection(*parts[1:])


def ideal_product(I, J, check=True):
    if check and right_order(I) != left_order(J):
        raise ImproperProduct("right order of the first factor differs from the left order of the second")
    return I * J


def ideal_inverse(I):
    """conj(I) / nrd(I); for a normal ideal I * I^-1 and I^-1 * I are its orders."""
    return I.conj().scale(I.nrd().inverse())


def connecting_ideal(O1, O2, ref):
    """An integral O1-O2 ideal: the lattice O1*O2 scaled by the least integer making it integral."""
    L = RightIdealLat.from_elements(ref, [x * y for x in O1.basis for y in O2.basis])
    d = 1
    for b in L.basis:
        for O in (O1, O2):
            for c in O.coords(b):
                d = d * c.den // gcd(d, c.den)
    return L.scale(d)


def lattice_is_order(L):
    return L.contains(L.alg.one()) and all(L.contains(x * y) for x in L.basis for y in L.basis)


# primes ------------------------------------------------------------------------

def _small_coefficient_vectors(ring, limit=2):
    vals = list(range(-limit, limit + 1))
    cands = [RingElem(a, 0, ring) for a in vals]
    if ring.degree == 2:
        cands = [RingElem(a, b, ring) for a in vals for b in vals]
    cands.sort(key=lambda x: (x.t2(), x.key()))
    return cands


def two_sided_prime(O, P):
    """The two-sided ideal of O with reduced norm P at a ramified prime P.

    It is x O + pi O for any x in O whose norm is divisible by pi but which
    is not itself divisible by pi; such x is found among short combinations
    of the basis.
    """
    cache = O.__dict__.setdefault("_two_sided", {})
    if P.key() in cache:
        return cache[P.key()]
    pi = P.generator
    small = _small_coefficient_vectors(O.ring, 1)
    base = O.basis
    alg = O.alg
    found = None
    from itertools import product

    for cs in product(small, repeat=4):
        x = alg.zero()
        for c, b in zip(cs, base):
            if not c.is_zero():
                x = x + b * c
        if x.is_zero():
            continue
        if all(pi.divides(c) for c in O.integral_coords(x)):
            continue
        n = x.nrd()
        if n.is_integral() and pi.divides(n.num):
            L = ideal_from_generators(O, [x, alg.scalar(pi)])
            if L.nrd() == canonical_associate(pi):
                found = (L, x)
                break
    if found is None:
        raise ValueError(f"no two-sided ideal of norm {P} found; is P ramified?")
    cache[P.key()] = found
    return found


def prime_is_ramified(O, P):
    return valuation(O.alg.discriminant(), P) > 0


def is_primitive(I, O_right=None, primes=None):
    """True when the integral lattice I lies in no proper two-sided ideal of its right order."""
    if O_right is None:
        O_right = right_order(I).as_order()
    n = I.nrd()
    if n.den != 1:
        return False
    if not I.is_integral_in(O_right):
        return False
    disc = O_right.alg.discriminant()
    for P, _ in factor_element(n.num):
        if valuation(disc, P):
            return False
        pi_inv = FieldElem(RingElem(1, 0, O_right.ring), 1) / P.generator
        if all(O_right.contains(b * pi_inv) for b in I.basis):
            return False
    return True


def primitive_ideal(I, O_right=None):
    """The primitive right ideal containing I with the same left order.

    Central primes are divided out while I / pi stays integral; at ramified
    primes I is multiplied by the inverse of the two-sided prime.  ``O_right``
    is the right order of I when known (it equals the reference order for
    right ideals of it).
    """
    if O_right is None:
        O_right = I.order
    n = I.nrd()
    if n.den != 1:
        raise ValueError("primitive_ideal needs an integral ideal")
    if not I.is_integral_in(O_right):
        raise ValueError("primitive_ideal needs an integral ideal")
    if n.num.is_unit():
        return I
    disc = O_right.alg.discriminant()
    for P, _ in factor_element(n.num):
        pi = P.generator
        pi_inv = FieldElem(RingElem(1, 0, O_right.ring), 1) / pi
        if valuation(disc, P):
            Pr, _ = two_sided_prime(O_right, P)
            if Pr.order is not I.order:
                Pr = RightIdealLat.from_elements(I.order, Pr.basis)
            while valuation(I.nrd(), P):
                I = (I * Pr).scale(pi_inv)
        else:
            while all(O_right.contains(b * pi_inv) for b in I.basis):
                I = I.scale(pi_inv)
    return I


# splitting -----------------------------------------------------------------------

class SplittingMap:
    """A ring isomorphism O / P O -> M_2(R_F / P), stored by the images of the basis."""

    def __init__(self, O, P, images, field, units):
        self.order = O
        self.prime = P
        self.images = images
        self.field = field
        self._units = units  # algebra coordinates of e11, e12, e21, e22 mod P

    def _mat_mul(self, A, B):
        k = self.field
        return tuple(
            tuple(k.add(k.mul(A[r][0], B[0][c]), k.mul(A[r][1], B[1][c])) for c in range(2))
            for r in range(2)
        )

    def image_coords(self, cs):
        k = self.field
        M = [[k.reduce(0), k.reduce(0)], [k.reduce(0), k.reduce(0)]]
        for c, img in zip(cs, self.images):
            c = k.reduce(c)
            if c.is_zero():
                continue
            for r in range(2):
                for s in range(2):
                    M[r][s] = k.add(M[r][s], k.mul(c, img[r][s]))
        return tuple(tuple(r) for r in M)

    def __call__(self, q):
        return self.image_coords(self.order.integral_coords(q))

    def lift(self, M):
        """An element of O whose image is the residue matrix M."""
        k = self.field
        e11, e12, e21, e22 = self._units
        cs = [k.reduce(0)] * 4
        for (r, s), e in zip(((0, 0), (0, 1), (1, 0), (1, 1)), (e11, e12, e21, e22)):
            m = k.reduce(M[r][s])
            if m.is_zero():
                continue
            cs = [k.add(x, k.mul(m, y)) for x, y in zip(cs, e)]
        return self.order.from_coords(cs)

    def is_homomorphism(self):
        sc = self.order.structure_constants
        for a in range(4):
            for b in range(4):
                lhs = self._mat_mul(self.images[a], self.images[b])
                rhs = self.image_coords(sc[a][b])
                if lhs != rhs:
                    return False
        one = self(self.order.alg.one())
        return one == ((self.field.reduce(1), self.field.reduce(0)), (self.field.reduce(0), self.field.reduce(1)))

    def is_bijective(self):
        k = self.field
        rows = [[img[0][0], img[0][1], img[1][0], img[1][1]] for img in self.images]
        # Gaussian elimination over the residue field
        A = [list(r) for r in rows]
        for c in range(4):
            piv = next((r for r in range(c, 4) if not A[r][c].is_zero()), None)
            if piv is None:
                return False
            A[c], A[piv] = A[piv], A[c]
            inv = k.inv(A[c][c])
            for r in range(c + 1, 4):
                if not A[r][c].is_zero():
                    f = k.mul(A[r][c], inv)
                    A[r] = [k.sub(x, k.mul(f, y)) for x, y in zip(A[r], A[c])]
        return True


def _residue_algebra(O, k):
    sc = [[[k.reduce(x) for x in cs] for cs in row] for row in O.structure_constants]
    zero = k.reduce(0)

    def mul(x, y):
        out = [zero] * 4
        for a in range(4):
            if x[a].is_zero():
                continue
            for b in range(4):
                if y[b].is_zero():
                    continue
                f = k.mul(x[a], y[b])
                out = [k.add(o, k.mul(f, s)) for o, s in zip(out, sc[a][b])]
        return out

    return mul


def build_splitting(O, P, seed=0):
    """Split O / P O as a 2x2 matrix algebra over the residue field.

    A random element of norm divisible by P and trace prime to P gives a
    rank-one idempotent; matrix units follow from it.  Retries until the
    resulting map passes the homomorphism and bijectivity checks.
    """
    cache = O.__dict__.setdefault("_splittings", {})
    if P.key() in cache:
        return cache[P.key()]
    if prime_is_ramified(O, P):
        raise RamifiedPrimeError(f"{P} ramifies in the algebra")
    k = ResidueField(P)
    mul = _residue_algebra(O, k)
    one = [k.reduce(x) for x in O.integral_coords(O.alg.one())]
    elems = k.elements()
    rng = random.Random(seed)

    def sub(x, y):
        return [k.sub(a, b) for a, b in zip(x, y)]

    def smul(c, x):
        return [k.mul(c, a) for a in x]

    def nonzero(x):
        return any(not a.is_zero() for a in x)

    for _ in range(10000):
        z = [rng.choice(elems) for _ in range(4)]
        zq = O.from_coords(z)
        n = zq.nrd().to_ring()
        t = zq.trd().to_ring()
        if not k.is_zero(n) or k.is_zero(t):
            continue
        e = smul(k.inv(t), z)
        f = sub(one, e)
        e12 = None
        for _ in range(100):
            x = [rng.choice(elems) for _ in range(4)]
            cand = mul(mul(e, x), f)
            if nonzero(cand):
                e12 = cand
                break
        if e12 is None:
            continue
        g = None
        for _ in range(100):
            y = [rng.choice(elems) for _ in range(4)]
            cand = mul(mul(f, y), e)
            if nonzero(cand):
                g = cand
                break
        if g is None:
            continue
        prod = mul(e12, g)
        idx = next(i for i in range(4) if not e[i].is_zero())
        lam = k.div(prod[idx], e[idx])
        if lam.is_zero():
            continue
        e21 = smul(k.inv(lam), g)
        e22 = mul(e21, e12)

        def coeff(x):
            idx2 = next((i for i in range(4) if not e[i].is_zero()), None)
            return k.div(x[idx2], e[idx2])

        row_units = (e, e12)
        col_units = (e, e21)
        images = []
        for a in range(4):
            b = [k.reduce(int(i == a)) for i in range(4)]
            M = tuple(
                tuple(coeff(mul(mul(row_units[r], b), col_units[s])) for s in range(2)) for r in range(2)
            )
            images.append(M)
        smap = SplittingMap(O, P, images, k, (e, e12, e21, e22))
        if smap.is_homomorphism() and smap.is_bijective():
            cache[P.key()] = smap
            return smap
    raise RuntimeError(f"could not split the order at {P}")


def _normalize_point(k, x, y):
    x, y = k.reduce(x), k.reduce(y)
    if not x.is_zero():
        return (k.reduce(1), k.div(y, x))
    if y.is_zero():
        raise ValueError("zero vector has no projective point")
    return (k.reduce(0), k.reduce(1))


def point_of(smap, q):
    """Projective point (column space of the image) of an element of norm-P type."""
    M = smap(q)
    k = smap.field
    for c in range(2):
        if not (M[0][c].is_zero() and M[1][c].is_zero()):
            return _normalize_point(k, M[0][c], M[1][c])
    raise ValueError("element maps to zero; it lies in P O")


def point_of_ideal(smap, I):
    """Projective point of a maximal right ideal: the column space of its image."""
    for b in I.basis:
        M = smap(b)
        for c in range(2):
            if not (M[0][c].is_zero() and M[1][c].is_zero()):
                return _normalize_point(smap.field, M[0][c], M[1][c])
    raise ValueError("ideal maps to zero")


@dataclass(frozen=True)
class MaximalIdeal:
    point: tuple
    ideal: RightIdealLat
    index: int


def maximal_right_ideals(O, P):
    """The Nm(P)+1 right ideals of reduced norm P, in projective-line order."""
    cache = O.__dict__.setdefault("_maximal", {})
    if P.key() in cache:
        return cache[P.key()]
    smap = build_splitting(O, P)
    k = smap.field
    pi = O.alg.scalar(P.generator)
    out = []
    for idx, (x, y) in enumerate(projective_line(P)):
        z = k.reduce(0)
        g = smap.lift(((x, z), (y, z)))
        I = ideal_from_generators(O, [g, pi])
        out.append(MaximalIdeal((x, y), I, idx))
    cache[P.key()] = out
    return out


def maximal_ideal_of(O, P, q):
    """Index of the maximal right ideal of norm P that equals or contains ``qO``."""
    smap = build_splitting(O, P)
    pt = point_of(smap, q)
    for m in maximal_right_ideals(O, P):
        if m.point == pt:
            return m.index
    raise ValueError("no maximal ideal for point")


# principal generators -----------------------------------------------------------

def principal_generator(I):
    """A generator q with qO = I, or NOT_PRINCIPAL.

    Searches the elements of I whose reduced norm is the totally positive
    associate of nrd(I) with the smallest trace; any such element generates I
    because its right ideal sits inside I with the same norm.
    """
    n = I.nrd()
    if n.is_zero():
        raise ValueError("zero ideal")
    scale = n.den
    J = I.scale(scale) if scale != 1 else I
    nn = J.nrd().num
    try:
        t = totally_positive_associate(nn)
    except ValueError:
        return NOT_PRINCIPAL
    cands = elements_of_norm(z_basis_of(J.basis, J.ring), t, J.alg)
    if not cands:
        return NOT_PRINCIPAL
    best = max(cands, key=lambda q: q.key())
    return best / scale if scale != 1 else best
