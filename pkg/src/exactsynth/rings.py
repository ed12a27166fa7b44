"""Exact arithmetic in the rings Z, Z[sqrt(2)] and Z[phi].

Every value is stored as a pair of Python integers ``(a, b)`` standing for
``a + b*w`` where ``w`` is 0, sqrt(2) or phi = (1 + sqrt(5))/2.  The three
rings are norm-Euclidean with class number one, so ideals are handled through
a single canonical generator.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class RingTagError(ValueError):
    """Operands live in different rings."""


class InexactDivision(ArithmeticError):
    """Exact ring division was requested but the divisor does not divide."""


class Ring:
    """One of the three supported rings of integers.

    ``w`` satisfies ``w*w = t*w + n``.  For ``Q`` the generator is 0 and the
    ring is just ``Z``.
    """

    __slots__ = ("tag", "degree", "t", "n", "disc", "unit")

    def __init__(self, tag, degree, t, n, disc, unit):
        self.tag = tag
        self.degree = degree
        self.t = t
        self.n = n
        self.disc = disc
        self.unit = unit  # fundamental unit (a, b), None for Z

    def __repr__(self):
        return f"Ring({self.tag})"

    def __reduce__(self):
        return (get_ring, (self.tag,))

    def __call__(self, a=0, b=0):
        return RingElem(a, b, self)

    def zero(self):
        return RingElem(0, 0, self)

    def one(self):
        return RingElem(1, 0, self)

    def omega(self):
        if self.degree == 1:
            raise ValueError("Z has no second basis element")
        return RingElem(0, 1, self)

    def fundamental_unit(self):
        if self.unit is None:
            return None
        return RingElem(self.unit[0], self.unit[1], self)

    def z_basis(self):
        """Z-basis of the ring: ``[1]`` or ``[1, w]``."""
        if self.degree == 1:
            return [self.one()]
        return [self.one(), self.omega()]


QQ = Ring("Q", 1, 0, 0, 1, None)
QSQRT2 = Ring("Q(sqrt2)", 2, 0, 2, 8, (1, 1))
QSQRT5 = Ring("Q(sqrt5)", 2, 1, 1, 5, (0, 1))

RINGS = {r.tag: r for r in (QQ, QSQRT2, QSQRT5)}


def get_ring(tag):
    try:
        return RINGS[tag]
    except KeyError:
        raise RingTagError(f"unknown ring tag {tag!r}") from None


def _sign(x):
    return (x > 0) - (x < 0)


def _surd_sign(x, y, d):
    """Sign of ``x + y*sqrt(d)`` for a non-square ``d``, using integers only."""
    if y == 0:
        return _sign(x)
    if x == 0:
        return _sign(y)
    if (x > 0) == (y > 0):
        return _sign(x)
    c = x * x - d * y * y
    return _sign(x) if c > 0 else _sign(y)


def _round_div(num, den):
    """Nearest integer to num/den (halves round up)."""
    if den < 0:
        num, den = -num, -den
    return (2 * num + den) // (2 * den)


class RingElem:
    """An element ``a + b*w`` of Z, Z[sqrt(2)] or Z[phi]."""

    __slots__ = ("a", "b", "ring")

    def __init__(self, a, b=0, ring=QQ):
        if isinstance(ring, str):
            ring = get_ring(ring)
        if ring.degree == 1 and b:
            raise ValueError("elements of Z have b = 0")
        self.a = int(a)
        self.b = int(b)
        self.ring = ring

    @property
    def tag(self):
        return self.ring.tag

    # coercion -------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RingElem):
            if other.ring is not self.ring:
                raise RingTagError(f"{self.ring.tag} vs {other.ring.tag}")
            return other
        if isinstance(other, int):
            return RingElem(other, 0, self.ring)
        return NotImplemented

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RingElem(self.a + o.a, self.b + o.b, self.ring)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RingElem(self.a - o.a, self.b - o.b, self.ring)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __neg__(self):
        return RingElem(-self.a, -self.b, self.ring)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElem(self.a * other, self.b * other, self.ring)
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        r = self.ring
        a, b, c, d = self.a, self.b, o.a, o.b
        bd = b * d
        return RingElem(a * c + r.n * bd, a * d + b * c + r.t * bd, r)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power of a ring element")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other):
        return FieldElem(self) / other

    def __rtruediv__(self, other):
        return FieldElem(other, 1, self.ring) / self

    def __floordiv__(self, other):
        return euclidean_div(self, other)[0]

    def __mod__(self, other):
        return euclidean_div(self, other)[1]

    def __divmod__(self, other):
        return euclidean_div(self, other)

    # structure ------------------------------------------------------------
    def conj(self):
        """Galois conjugate (identity on Z)."""
        if self.ring.degree == 1:
            return self
        return RingElem(self.a + self.b * self.ring.t, -self.b, self.ring)

    def adjugate(self):
        """Element ``y`` with ``self * y == norm(self)``."""
        if self.ring.degree == 1:
            return self.ring.one()
        return self.conj()

    def norm(self):
        """Absolute norm Nm_{F/Q} as an integer."""
        r = self.ring
        if r.degree == 1:
            return self.a
        a, b = self.a, self.b
        return a * a + r.t * a * b - r.n * b * b

    def trace(self):
        """Absolute trace Tr_{F/Q} as an integer."""
        r = self.ring
        if r.degree == 1:
            return self.a
        return 2 * self.a + r.t * self.b

    def t2(self):
        """Sum of squares of the real embeddings, a positive integer for x != 0."""
        return (self * self).trace()

    def embedding_signs(self):
        """Signs under the real embeddings, decided with integer comparisons."""
        r = self.ring
        if r.degree == 1:
            return (_sign(self.a),)
        x = 2 * self.a + r.t * self.b
        return (_surd_sign(x, self.b, r.disc), _surd_sign(x, -self.b, r.disc))

    def is_totally_positive(self):
        return all(s > 0 for s in self.embedding_signs())

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def is_unit(self):
        return abs(self.norm()) == 1

    def divides(self, other):
        o = self._coerce(other)
        if self.is_zero():
            return o.is_zero()
        num = o * self.adjugate()
        nm = self.norm()
        return num.a % nm == 0 and num.b % nm == 0

    def exact_div(self, other):
        """Ring division; raises :class:`InexactDivision` if not exact."""
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot divide by {other!r}")
        if o.is_zero():
            raise ZeroDivisionError("division by zero ring element")
        num = self * o.adjugate()
        nm = o.norm()
        if num.a % nm or num.b % nm:
            raise InexactDivision(f"{o} does not divide {self}")
        return RingElem(num.a // nm, num.b // nm, self.ring)

    # comparison / hashing -------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            return self.a == other and self.b == 0
        if isinstance(other, RingElem):
            return self.ring is other.ring and self.a == other.a and self.b == other.b
        if isinstance(other, FieldElem):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.ring.tag))

    def __bool__(self):
        return not self.is_zero()

    def key(self):
        return (self.a, self.b)

    def __repr__(self):
        return f"RingElem({self.a}, {self.b}, {self.ring.tag!r})"

    def __str__(self):
        return format_ring_literal(self)


class FieldElem:
    """An element ``(a + b*w) / den`` of the fraction field, in lowest terms."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, ring=None):
        if isinstance(num, int):
            num = RingElem(num, 0, ring if ring is not None else QQ)
        elif isinstance(num, FieldElem):
            num, den = num.num, num.den * den
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = gcd(gcd(num.a, num.b), den)
        if g > 1:
            num = RingElem(num.a // g, num.b // g, num.ring)
            den //= g
        self.num = num
        self.den = den

    @property
    def ring(self):
        return self.num.ring

    @property
    def tag(self):
        return self.num.ring.tag

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.ring is not self.ring:
                raise RingTagError(f"{self.tag} vs {other.tag}")
            return other
        if isinstance(other, RingElem):
            if other.ring is not self.ring:
                raise RingTagError(f"{self.tag} vs {other.tag}")
            return FieldElem(other)
        if isinstance(other, int):
            return FieldElem(other, 1, self.ring)
        if isinstance(other, Fraction):
            return FieldElem(RingElem(other.numerator, 0, self.ring), other.denominator)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElem(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElem(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __neg__(self):
        return FieldElem(-self.num, self.den)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElem(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        nm = self.num.norm()
        return FieldElem(self.num.adjugate() * self.den, nm)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElem(self.num ** e, self.den ** e)

    def conj(self):
        return FieldElem(self.num.conj(), self.den)

    def norm(self):
        return Fraction(self.num.norm(), self.den ** self.ring.degree)

    def trace(self):
        return Fraction(self.num.trace(), self.den)

    def embedding_signs(self):
        return self.num.embedding_signs()

    def is_totally_positive(self):
        return self.num.is_totally_positive()

    def is_zero(self):
        return self.num.is_zero()

    def is_integral(self):
        return self.den == 1

    def to_ring(self):
        if self.den != 1:
            raise InexactDivision(f"{self} is not integral")
        return self.num

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ring is other.ring and self.den == other.den and self.num == other.num
        if isinstance(other, RingElem):
            return self.den == 1 and self.num == other
        if isinstance(other, int):
            return self.den == 1 and self.num == other
        return NotImplemented

    def __hash__(self):
        if self.den == 1:
            return hash(self.num)
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def key(self):
        return (Fraction(self.num.a, self.den), Fraction(self.num.b, self.den))

    def __repr__(self):
        return f"FieldElem({self.num!r}, {self.den})"

    def __str__(self):
        return format_field_literal(self)


def as_field(x, ring=None):
    """Coerce an int, RingElem or FieldElem into a FieldElem."""
    if isinstance(x, FieldElem):
        return x
    if isinstance(x, RingElem):
        return FieldElem(x)
    if isinstance(x, int):
        return FieldElem(x, 1, ring if ring is not None else QQ)
    if isinstance(x, Fraction):
        r = ring if ring is not None else QQ
        return FieldElem(RingElem(x.numerator, 0, r), x.denominator)
    raise TypeError(f"cannot coerce {x!r} to a field element")


# Euclidean structure ------------------------------------------------------

def euclidean_div(x, y):
    """Return ``(q, r)`` with ``x = q*y + r`` and ``|Nm(r)| < |Nm(y)|``."""
    if isinstance(y, int):
        y = RingElem(y, 0, x.ring)
    if x.ring is not y.ring:
        raise RingTagError(f"{x.ring.tag} vs {y.ring.tag}")
    if y.is_zero():
        raise ZeroDivisionError("Euclidean division by zero")
    num = x * y.adjugate()
    nm = y.norm()
    q = RingElem(_round_div(num.a, nm), _round_div(num.b, nm), x.ring)
    r = x - q * y
    assert abs(r.norm()) < abs(nm)
    return q, r


def ring_gcd(x, y):
    """A greatest common divisor, normalised with :func:`canonical_associate`."""
    while not y.is_zero():
        x, y = y, euclidean_div(x, y)[1]
    return canonical_associate(x)


def ring_xgcd(x, y):
    """Return ``(g, s, t)`` with ``g = s*x + t*y`` a gcd (not normalised)."""
    one, zero = x.ring.one(), x.ring.zero()
    s0, s1, t0, t1 = one, zero, zero, one
    while not y.is_zero():
        q, r = euclidean_div(x, y)
        x, y = y, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return x, s0, t0


def _unit_window(x, width):
    """Associates ``x * eps^k`` around the one of smallest t2."""
    r = x.ring
    eps = r.fundamental_unit()
    inv = -eps.conj()  # the fundamental units have norm -1
    y = x
    while True:
        z = y * eps
        if z.t2() < y.t2():
            y = z
            continue
        z = y * inv
        if z.t2() < y.t2():
            y = z
            continue
        break
    z = y
    for _ in range(width):
        z = z * inv
    out = []
    for _ in range(2 * width + 1):
        out.append(z)
        z = z * eps
    return out


def canonical_associate(x):
    """The associate with a > 0 and smallest t2; ties go to b >= 0.

    Zero maps to zero.  This gives every principal ideal of R_F a unique
    generator, so ideal equality becomes value equality.
    """
    if x.is_zero():
        return x
    if x.ring.degree == 1:
        return -x if x.a < 0 else x
    cands = []
    for z in _unit_window(x, 2):
        for s in (z, -z):
            if s.a > 0:
                cands.append(s)
    return min(cands, key=lambda c: (c.t2(), c.b < 0, abs(c.b)))


def totally_positive_associate(x):
    """Totally positive associate with the smallest trace."""
    if x.is_zero():
        raise ValueError("zero has no totally positive associate")
    if x.ring.degree == 1:
        return -x if x.a < 0 else x
    cands = [s for z in _unit_window(x, 4) for s in (z, -z) if s.is_totally_positive()]
    if not cands:
        raise ValueError(f"{x} has no totally positive associate")
    return min(cands, key=lambda c: (c.trace(), c.b < 0, abs(c.b)))


def unit_square_root(u):
    """Return a unit ``e`` with ``e*e == u`` for a totally positive unit ``u``."""
    r = u.ring
    if not u.is_unit():
        raise ValueError(f"{u} is not a unit")
    if r.degree == 1:
        if u.a != 1:
            raise ValueError("-1 is not a square")
        return r.one()
    eps = r.fundamental_unit()
    inv = -eps.conj()
    # u = +-eps^k; walk toward 1 by t2 and count the steps
    y, k = u, 0
    while True:
        if (y * inv).t2() < y.t2():
            y, k = y * inv, k + 1
        elif (y * eps).t2() < y.t2():
            y, k = y * eps, k - 1
        else:
            break
    if y != 1 or k % 2:
        raise ValueError(f"{u} is not the square of a unit")
    return eps ** (k // 2) if k >= 0 else inv ** (-k // 2)


# primes -------------------------------------------------------------------

def is_prime_int(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeIdealF:
    """A prime ideal of R_F, kept as its canonical generator."""

    p: int
    generator: RingElem
    f: int
    e: int

    @property
    def ring(self):
        return self.generator.ring

    @property
    def norm(self):
        return self.p ** self.f

    def __str__(self):
        return f"({format_ring_literal(self.generator)})"

    def key(self):
        return (self.p, self.generator.a, self.generator.b)


def factor_rational_prime(p, ring):
    """Primes of R_F above the rational prime ``p`` with their exponents."""
    if isinstance(ring, str):
        ring = get_ring(ring)
    if not is_prime_int(p):
        raise ValueError(f"{p} is not prime")
    if ring.degree == 1:
        return [(PrimeIdealF(p, RingElem(p, 0, ring), 1, 1), 1)]
    roots = [x for x in range(p) if (x * x - ring.t * x - ring.n) % p == 0]
    pp = RingElem(p, 0, ring)
    if not roots:
        return [(PrimeIdealF(p, canonical_associate(pp), 2, 1), 1)]
    w = ring.omega()
    if len(roots) == 1:
        g = ring_gcd(pp, w - roots[0])
        return [(PrimeIdealF(p, g, 1, 2), 2)]
    out = [PrimeIdealF(p, ring_gcd(pp, w - r), 1, 1) for r in roots]
    out.sort(key=PrimeIdealF.key)
    return [(P, 1) for P in out]


def prime_ideal(p, ring, index=0):
    """The ``index``-th prime of R_F above ``p`` (sorted by generator)."""
    return factor_rational_prime(p, ring)[index][0]


def prime_of_generator(g):
    """The PrimeIdealF generated by ``g``; raises if ``g`` is not prime."""
    nm = abs(g.norm())
    for p in _small_prime_factors(nm):
        for P, _ in factor_rational_prime(p, g.ring):
            if P.generator == canonical_associate(g):
                return P
    raise ValueError(f"{g} does not generate a prime ideal")


def _small_prime_factors(n, limit=10 ** 6):
    out = []
    d = 2
    while d * d <= n and d <= limit:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def factor_element(x):
    """Prime factorisation of the ideal ``x R_F`` as ``[(P, exponent), ...]``.

    Uses trial division on the absolute norm, so it is meant for norms with
    small prime factors.
    """
    if x.is_zero():
        raise ValueError("cannot factor zero")
    out = []
    for p in _small_prime_factors(abs(x.norm())):
        for P, _ in factor_rational_prime(p, x.ring):
            v = valuation(x, P)
            if v:
                out.append((P, v))
    return out


def valuation(x, P):
    """Largest ``n`` with ``P^n`` dividing ``x``."""
    if isinstance(x, FieldElem):
        return valuation(x.num, P) - valuation(RingElem(x.den, 0, x.ring), P)
    if isinstance(x, int):
        x = RingElem(x, 0, P.ring)
    if x.is_zero():
        raise ValueError("valuation of zero")
    g = P.generator
    n = 0
    while g.divides(x):
        x = x.exact_div(g)
        n += 1
    return n


def valuation_S(x, primes):
    """Sum of the valuations over a set of primes."""
    return sum(valuation(x, P) for P in primes)


def strip_primes(x, primes):
    """Divide out every prime of ``primes`` from ``x``; returns the cofactor."""
    for P in primes:
        g = P.generator
        while g.divides(x):
            x = x.exact_div(g)
    return x


# residues -----------------------------------------------------------------

class ResidueRing:
    """R_F modulo the principal ideal generated by ``modulus``.

    Representatives are the pairs ``(a, b)`` inside the box cut out by the
    Hermite form of the Z-lattice ``modulus * R_F``.
    """

    def __init__(self, modulus):
        if modulus.is_zero():
            raise ValueError("zero modulus")
        self.modulus = modulus
        self.ring = r = modulus.ring
        if r.degree == 1:
            self.h11, self.h12, self.h22 = abs(modulus.a), 0, 1
        else:
            u = modulus
            v = modulus * r.omega()
            (a1, b1), (a2, b2) = (u.a, u.b), (v.a, v.b)
            # integer row reduction on the first column
            while a2:
                k = a1 // a2
                a1, b1, a2, b2 = a2, b2, a1 - k * a2, b1 - k * b2
            if a1 < 0:
                a1, b1 = -a1, -b1
            h22 = abs(b2)
            self.h11, self.h12, self.h22 = a1, b1 % h22, h22
        self.size = self.h11 * self.h22

    def reduce(self, x):
        if isinstance(x, int):
            x = RingElem(x, 0, self.ring)
        k = x.a // self.h11
        a = x.a - k * self.h11
        b = (x.b - k * self.h12) % self.h22
        return RingElem(a, b, self.ring)

    def elements(self):
        return [RingElem(a, b, self.ring) for b in range(self.h22) for a in range(self.h11)]

    def is_zero(self, x):
        return self.reduce(x).is_zero()

    def mul(self, x, y):
        return self.reduce(x * y)

    def add(self, x, y):
        return self.reduce(x + y)

    def sub(self, x, y):
        return self.reduce(x - y)

    def neg(self, x):
        return self.reduce(-x)


class ResidueField(ResidueRing):
    """The finite field R_F / P of size p^f."""

    def __init__(self, P):
        super().__init__(P.generator)
        self.prime = P
        self.p = P.p
        self.f = P.f
        assert self.size == P.norm

    @property
    def omega_image(self):
        """Reduction of the ring generator w."""
        if self.ring.degree == 1:
            return self.reduce(0)
        return self.reduce(self.ring.omega())

    def inv(self, x):
        x = self.reduce(x)
        if x.is_zero():
            raise ZeroDivisionError("inverse of zero in residue field")
        e = self.size - 2
        result = self.reduce(1)
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def div(self, x, y):
        return self.mul(x, self.inv(y))


def projective_line(P, e=1):
    """Points of P^1(R_F / P^e) as pairs ``(x, y)`` of residue representatives.

    Points are ``(1 : y)`` for every residue ``y`` followed by ``(x : 1)`` with
    ``x`` in P / P^e.  Their number is Nm(P)^(e-1) * (Nm(P) + 1).
    """
    if e < 1:
        raise ValueError("exponent must be positive")
    R = ResidueRing(P.generator ** e)
    one = R.reduce(1)
    pts = [(one, y) for y in R.elements()]
    if e == 1:
        pts.append((R.reduce(0), one))
    else:
        low = ResidueRing(P.generator ** (e - 1))
        seen = set()
        for z in low.elements():
            x = R.reduce(P.generator * z)
            if x.key() not in seen:
                seen.add(x.key())
                pts.append((x, one))
    return pts


def projective_line_size(P, e=1):
    return P.norm ** (e - 1) * (P.norm + 1)


# literals -----------------------------------------------------------------

def format_ring_literal(x):
    """``a+b*w`` with integer ``a`` and ``b``."""
    sign = "+" if x.b >= 0 else "-"
    return f"{x.a}{sign}{abs(x.b)}*w"


def format_field_literal(x):
    """``a+b*w`` or ``(a+b*w)/den``."""
    x = as_field(x)
    if x.den == 1:
        return format_ring_literal(x.num)
    return f"({format_ring_literal(x.num)})/{x.den}"


_BINOPS = {ast.Add: "__add__", ast.Sub: "__sub__", ast.Mult: "__mul__", ast.Div: "__truediv__"}


def evaluate_literal(text, names):
    """Evaluate an arithmetic literal with ``+ - * /``, integers and names.

    ``names`` maps identifiers to values that support the four operations.
    Anything else (calls, attributes, powers, floats) is rejected.
    """
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse literal {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and type(node.value) is int:
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise ValueError(f"unknown symbol {node.id!r} in {text!r}")
            return names[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Div):
                if isinstance(left, int) and isinstance(right, int):
                    return Fraction(left, right)
            return _apply(left, right, _BINOPS[type(node.op)])
        raise ValueError(f"unsupported syntax in literal {text!r}")

    return ev(tree)


def _apply(left, right, op):
    res = getattr(left, op)(right)
    if res is NotImplemented:
        rop = "__r" + op[2:]
        res = getattr(right, rop)(left)
    if res is NotImplemented:
        raise ValueError("incompatible operands in literal")
    return res


def parse_field_literal(text, ring):
    """Parse ``a+b*w/den`` style text into a FieldElem of ``ring``.

    ``w`` is the ring generator (0 in Q).  Usual operator precedence applies,
    so ``(1+w)/2`` and ``1+w/2`` differ.
    """
    if isinstance(ring, str):
        ring = get_ring(ring)
    w = FieldElem(ring.omega()) if ring.degree == 2 else FieldElem(0, 1, ring)
    value = evaluate_literal(text, {"w": w})
    return as_field(value, ring)


def parse_ring_literal(text, ring):
    return parse_field_literal(text, ring).to_ring()
