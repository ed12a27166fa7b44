"""Quaternion algebras over Q, Q(sqrt2), Q(sqrt5) and orders inside them.

Elements are kept as four ring-integer numerators over one positive integer
denominator, which keeps products and membership tests cheap.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import gcd

from .lattice import integer_gram, short_vectors
from .rings import (
    FieldElem,
    RingElem,
    ResidueField,
    as_field,
    canonical_associate,
    evaluate_literal,
    factor_element,
    factor_rational_prime,
    format_field_literal,
    get_ring,
    parse_field_literal,
    valuation,
)


class IndefiniteAlgebraError(ValueError):
    """Raised when an operation needs a totally definite algebra."""


def _content(nums, den):
    g = den
    for x in nums:
        g = gcd(g, gcd(x.a, x.b))
        if g == 1:
            return 1
    return g


def _divint(x, g):
    return RingElem(x.a // g, x.b // g, x.ring)


class QAlgebra:
    """The algebra (a, b | F) with i^2 = a, j^2 = b, k = ij.

    ``a`` and ``b`` are integral.  Gate-set tables list the positive numbers
    D and b' with a = -D and b = -b'; use :meth:`from_params` for those.
    """

    def __init__(self, ring, a, b):
        if isinstance(ring, str):
            ring = get_ring(ring)
        self.ring = ring
        self.a = self._integral(a)
        self.b = self._integral(b)
        if self.a.is_zero() or self.b.is_zero():
            raise ValueError("algebra parameters must be nonzero")
        self.ab = self.a * self.b

    def _integral(self, x):
        x = as_field(x, self.ring)
        if x.ring is not self.ring:
            raise ValueError("parameter lives in another field")
        if x.den != 1:
            raise ValueError("algebra parameters must be integral")
        return x.num

    @classmethod
    def from_params(cls, ring, D, b):
        if isinstance(ring, str):
            ring = get_ring(ring)
        return cls(ring, -as_field(D, ring), -as_field(b, ring))

    def __eq__(self, other):
        return isinstance(other, QAlgebra) and (self.ring, self.a, self.b) == (other.ring, other.a, other.b)

    def __hash__(self):
        return hash((self.ring.tag, self.a, self.b))

    def __repr__(self):
        return f"QAlgebra({self.ring.tag}, {self.a}, {self.b})"

    # elements ------------------------------------------------------------
    def element(self, *coords):
        """Quaternion from four coordinates (ints, fractions or field elements)."""
        if len(coords) == 1:
            coords = tuple(coords[0])
        if len(coords) != 4:
            raise ValueError("a quaternion has four coordinates")
        fs = [as_field(c, self.ring) for c in coords]
        den = 1
        for f in fs:
            den = den * f.den // gcd(den, f.den)
        nums = tuple(f.num * (den // f.den) for f in fs)
        return Quaternion(self, nums, den)

    def scalar(self, x):
        return self.element(x, 0, 0, 0)

    def one(self):
        return self.scalar(1)

    def zero(self):
        return self.scalar(0)

    def gens(self):
        """The standard basis 1, i, j, k."""
        return [self.element(*[int(r == c) for c in range(4)]) for r in range(4)]

    # invariants ------------------------------------------------------------
    def is_totally_definite(self):
        """True when nrd is positive definite at every real place."""
        sa, sb = self.a.embedding_signs(), self.b.embedding_signs()
        return all(x < 0 and y < 0 for x, y in zip(sa, sb))

    def ramified_real_places(self):
        sa, sb = self.a.embedding_signs(), self.b.embedding_signs()
        return sum(1 for x, y in zip(sa, sb) if x < 0 and y < 0)

    def _hilbert_odd(self, P):
        """Local Hilbert symbol (a, b)_P for a prime P of odd residue characteristic."""
        k = ResidueField(P)
        q = k.size
        pi = P.generator

        def split(x):
            v = 0
            while pi.divides(x):
                x = x.exact_div(pi)
                v += 1
            return v, x

        def legendre(u):
            r = k.reduce(1)
            base, e = k.reduce(u), (q - 1) // 2
            while e:
                if e & 1:
                    r = k.mul(r, base)
                base = k.mul(base, base)
                e >>= 1
            return 1 if r == k.reduce(1) else -1

        al, ua = split(self.a)
        be, ub = split(self.b)
        s = (-1) ** (al * be * ((q - 1) // 2))
        if be % 2:
            s *= legendre(ua)
        if al % 2:
            s *= legendre(ub)
        return s

    def ramified_primes(self):
        """Finite primes where the algebra ramifies, sorted by key.

        Odd primes use the local Hilbert symbol; the single prime above 2
        (all supported rings have one) is fixed by the parity of the number
        of ramified places.
        """
        nm = abs(self.ab.norm())
        odd = set()
        x = nm
        p = 3
        while x % 2 == 0:
            x //= 2
        while p * p <= x:
            if x % p == 0:
                odd.add(p)
                while x % p == 0:
                    x //= p
            p += 2
        if x > 1:
            odd.add(x)
        out = []
        for p in sorted(odd):
            for P, _ in factor_rational_prime(p, self.ring):
                if self._hilbert_odd(P) == -1:
                    out.append(P)
        twos = factor_rational_prime(2, self.ring)
        assert len(twos) == 1, "expected a single prime above 2"
        if (len(out) + self.ramified_real_places()) % 2:
            out.append(twos[0][0])
        out.sort(key=lambda P: P.key())
        return out

    def discriminant(self):
        """Canonical generator of the product of ramified finite primes."""
        d = self.ring.one()
        for P in self.ramified_primes():
            d = d * P.generator
        return canonical_associate(d)

    def parse(self, text):
        return parse_quaternion(text, self)


class Quaternion:
    """``(n0 + n1 i + n2 j + n3 k) / den`` with ring-integer numerators."""

    __slots__ = ("alg", "nums", "den")

    def __init__(self, alg, nums, den=1):
        if den <= 0:
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            nums, den = tuple(-x for x in nums), -den
        g = _content(nums, den)
        if g > 1:
            nums = tuple(_divint(x, g) for x in nums)
            den //= g
        self.alg = alg
        self.nums = tuple(nums)
        self.den = den

    # coordinates -----------------------------------------------------------
    @property
    def coords(self):
        return tuple(FieldElem(x, self.den) for x in self.nums)

    def __getitem__(self, idx):
        return FieldElem(self.nums[idx], self.den)

    @property
    def ring(self):
        return self.alg.ring

    def is_integral_coords(self):
        return self.den == 1

    # arithmetic ------------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Quaternion):
            if other.alg is not self.alg and other.alg != self.alg:
                raise ValueError("quaternions from different algebras")
            return other
        if isinstance(other, (int, Fraction, RingElem, FieldElem)):
            return self.alg.scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        d = self.den * o.den // gcd(self.den, o.den)
        s, t = d // self.den, d // o.den
        return Quaternion(self.alg, tuple(x * s + y * t for x, y in zip(self.nums, o.nums)), d)

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(self.alg, tuple(-x for x in self.nums), self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return Quaternion(self.alg, tuple(x * other for x in self.nums), self.den)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b, ab = self.alg.a, self.alg.b, self.alg.ab
        x0, x1, x2, x3 = self.nums
        y0, y1, y2, y3 = o.nums
        z0 = x0 * y0 + a * (x1 * y1) + b * (x2 * y2) - ab * (x3 * y3)
        z1 = x0 * y1 + x1 * y0 + b * (x3 * y2 - x2 * y3)
        z2 = x0 * y2 + x2 * y0 + a * (x1 * y3 - x3 * y1)
        z3 = x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1
        return Quaternion(self.alg, (z0, z1, z2, z3), self.den * o.den)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self

    def __truediv__(self, other):
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Quaternion(self.alg, self.nums, self.den * other)
        if isinstance(other, (Fraction, RingElem, FieldElem)):
            inv = as_field(other, self.ring).inverse()
            return self * inv
        if isinstance(other, Quaternion):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        r = self.alg.one()
        base = self
        while e:
            if e & 1:
                r = r * base
            base = base * base
            e >>= 1
        return r

    def conj(self):
        x0, x1, x2, x3 = self.nums
        return Quaternion(self.alg, (x0, -x1, -x2, -x3), self.den)

    def nrd(self):
        a, b, ab = self.alg.a, self.alg.b, self.alg.ab
        x0, x1, x2, x3 = self.nums
        n = x0 * x0 - a * (x1 * x1) - b * (x2 * x2) + ab * (x3 * x3)
        return FieldElem(n, self.den * self.den)

    def trd(self):
        return FieldElem(self.nums[0] * 2, self.den)

    def inverse(self):
        n = self.nrd()
        if n.is_zero():
            raise ZeroDivisionError("quaternion of zero reduced norm")
        return self.conj() * n.inverse()

    def scalar_part(self):
        return FieldElem(self.nums[0], self.den)

    def is_scalar(self):
        return all(x.is_zero() for x in self.nums[1:])

    def is_zero(self):
        return all(x.is_zero() for x in self.nums)

    # comparison ------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Quaternion):
            return self.den == other.den and self.nums == other.nums
        if isinstance(other, (int, Fraction, RingElem, FieldElem)):
            return self == self.alg.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nums, self.den))

    def key(self):
        return tuple(c.key() for c in self.coords)

    def projective_key(self):
        """Key that agrees exactly on F^x-proportional quaternions."""
        for c in self.coords:
            if not c.is_zero():
                inv = c.inverse()
                return tuple((x * inv).key() for x in self.coords)
        return None

    def __repr__(self):
        return f"Quaternion({format_quaternion(self)})"

    def __str__(self):
        return format_quaternion(self)


# literals --------------------------------------------------------------

def _compact_ring(x):
    if x.b == 0:
        return str(x.a)
    wpart = "w" if x.b == 1 else "-w" if x.b == -1 else f"{x.b}*w"
    if x.a == 0:
        return wpart
    return f"{x.a}{'' if wpart.startswith('-') else '+'}{wpart}"


def _coeff_text(c):
    """Short form of a coefficient and whether it needs brackets before ``*i``."""
    num = _compact_ring(c.num)
    simple = c.num.b == 0 or c.num.a == 0
    if c.den == 1:
        return num, not simple
    if simple:
        return f"{num}/{c.den}", False
    return f"({num})/{c.den}", True


def format_quaternion(q):
    """Compact literal like ``-3 + 4*i`` that :func:`parse_quaternion` reads back."""
    parts = []
    for c, sym in zip(q.coords, ("", "i", "j", "k")):
        if c.is_zero():
            continue
        txt, wrap = _coeff_text(c)
        neg = False
        if not wrap and txt.startswith("-"):
            neg, txt = True, txt[1:]
        if sym:
            if txt == "1":
                txt = sym
            else:
                txt = f"({txt})*{sym}" if wrap else f"{txt}*{sym}"
        parts.append((neg, txt))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, txt in parts[1:]:
        out += (" - " if neg else " + ") + txt
    return out


def parse_quaternion(text, alg):
    """Read ``c0 + c1*i + c2*j + c3*k``; each ``c`` may use ``w`` and ``/``."""
    ring = alg.ring
    w = FieldElem(ring.omega()) if ring.degree == 2 else FieldElem(0, 1, ring)
    i, j, k = alg.gens()[1:]
    value = evaluate_literal(text, {"w": w, "i": i, "j": j, "k": k})
    if not isinstance(value, Quaternion):
        value = alg.scalar(value)
    return value


def quaternion_from_literals(alg, lits):
    """Quaternion from four field literals (config file form)."""
    return alg.element(*[parse_field_literal(s, alg.ring) for s in lits])


def quaternion_to_literals(q):
    return [format_field_literal(c) for c in q.coords]


# linear algebra over F --------------------------------------------------

def field_matrix_inverse(M, ring):
    """Inverse of a square matrix of FieldElems by Gauss-Jordan elimination."""
    n = len(M)
    A = [[as_field(x, ring) for x in row] + [as_field(int(i == j), ring) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if not A[r][c].is_zero()), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[c], A[piv] = A[piv], A[c]
        inv = A[c][c].inverse()
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and not A[r][c].is_zero():
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def field_det(M, ring):
    n = len(M)
    A = [[as_field(x, ring) for x in row] for row in M]
    det = as_field(1, ring)
    for c in range(n):
        piv = next((r for r in range(c, n) if not A[r][c].is_zero()), None)
        if piv is None:
            return as_field(0, ring)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det = det * A[c][c]
        inv = A[c][c].inverse()
        for r in range(c + 1, n):
            if not A[r][c].is_zero():
                f = A[r][c] * inv
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return det


def _common_denominator(M):
    den = 1
    for row in M:
        for x in row:
            den = den * x.den // gcd(den, x.den)
    return den


class QOrder:
    """A full R_F-lattice in the algebra that is a ring, given by four basis elements."""

    def __init__(self, alg, basis, check=True, name=None):
        self.alg = alg
        self.ring = alg.ring
        self.basis = tuple(basis)
        self.name = name
        if len(self.basis) != 4:
            raise ValueError("an order needs four basis elements")
        B = [list(q.coords) for q in self.basis]
        Binv = field_matrix_inverse(B, self.ring)
        e = _common_denominator(Binv)
        self._inv_nums = [[(x * e).to_ring() for x in row] for row in Binv]
        self._inv_den = e
        if check:
            self.validate()

    def validate(self):
        if not self.contains(self.alg.one()):
            raise ValueError("order does not contain 1")
        for x in self.basis:
            for y in self.basis:
                if not self.contains(x * y):
                    raise ValueError("basis is not closed under multiplication")

    def __repr__(self):
        return f"QOrder({self.name or [str(b) for b in self.basis]})"

    # coordinates -----------------------------------------------------------
    def coords_scaled(self, q):
        """Numerators and denominator of the coordinates of ``q`` in the basis."""
        N = self._inv_nums
        x = q.nums
        out = []
        for c in range(4):
            s = x[0] * N[0][c] + x[1] * N[1][c] + x[2] * N[2][c] + x[3] * N[3][c]
            out.append(s)
        return out, q.den * self._inv_den

    def coords(self, q):
        nums, den = self.coords_scaled(q)
        return [FieldElem(x, den) for x in nums]

    def contains(self, q):
        nums, den = self.coords_scaled(q)
        if den == 1:
            return True
        return all(x.a % den == 0 and x.b % den == 0 for x in nums)

    def integral_coords(self, q):
        """Coordinates of ``q`` as ring elements; raises if ``q`` is outside."""
        nums, den = self.coords_scaled(q)
        out = []
        for x in nums:
            if x.a % den or x.b % den:
                raise ValueError(f"{q} is not in the order")
            out.append(RingElem(x.a // den, x.b // den, x.ring))
        return out

    def from_coords(self, cs):
        out = self.alg.zero()
        for c, b in zip(cs, self.basis):
            if not (isinstance(c, RingElem) and c.is_zero()):
                out = out + b * c
        return out

    def content(self, q):
        """Canonical gcd of the coordinates of ``q`` (``q`` in the order)."""
        from .rings import ring_gcd

        g = self.ring.zero()
        for c in self.integral_coords(q):
            g = ring_gcd(g, c)
        return canonical_associate(g)

    def normalizes(self, q):
        """True when q O q^-1 = O."""
        qi = q.inverse()
        return all(self.contains(q * b * qi) for b in self.basis)

    def same_lattice(self, other):
        return all(other.contains(b) for b in self.basis) and all(self.contains(b) for b in other.basis)

    def conjugate(self, q):
        """The order q O q^-1."""
        qi = q.inverse()
        return QOrder(self.alg, [q * b * qi for b in self.basis], check=False)

    # structure -------------------------------------------------------------
    @cached_property
    def structure_constants(self):
        """``c[i][j]`` are the coordinates of ``basis[i] * basis[j]``."""
        return [[self.integral_coords(x * y) for y in self.basis] for x in self.basis]

    @cached_property
    def discriminant(self):
        return order_discriminant(self)

    def is_maximal(self):
        return self.discriminant == self.alg.discriminant()

    @cached_property
    def z_basis(self):
        """Z-basis of the order: ``w^s * b`` for each basis element ``b``."""
        return z_basis_of(self.basis, self.ring)

    @cached_property
    def units(self):
        """Elements of reduced norm 1, canonically sorted."""
        return enumerate_by_norm(self, self.ring.one())


def z_basis_of(basis, ring):
    if ring.degree == 1:
        return list(basis)
    w = FieldElem(ring.omega())
    return [b for b in basis] + [b * w for b in basis]


def order_discriminant(O):
    """Reduced discriminant: square root of the ideal det(trd(b_i b_j))."""
    T = [[(x * y).trd() for y in O.basis] for x in O.basis]
    d = field_det(T, O.ring)
    if d.is_zero():
        raise ValueError("degenerate basis")
    if not d.is_integral():
        raise ValueError("basis is not an order")
    d = d.to_ring()
    root = O.ring.one()
    for P, e in factor_element(d):
        if e % 2:
            raise ValueError("trace-form determinant is not a square ideal")
        root = root * P.generator ** (e // 2)
    return canonical_associate(root)


def trace_form_gram(zbasis):
    """Rational Gram matrix of Tr_{F/Q}(nrd) on a list of quaternions."""
    n = len(zbasis)
    G = [[Fraction(0)] * n for _ in range(n)]
    conjs = [b.conj() for b in zbasis]
    for r in range(n):
        for c in range(r, n):
            t = (zbasis[r] * conjs[c]).trd().trace()
            G[r][c] = G[c][r] = Fraction(t) / 2
    return G


def elements_of_norm(zbasis, target, alg):
    """All Z-combinations ``x`` of ``zbasis`` with ``nrd(x) == target``, sorted."""
    if not alg.is_totally_definite():
        raise IndefiniteAlgebraError("norm enumeration needs a totally definite algebra")
    target = as_field(target, alg.ring)
    if target.is_zero():
        return [alg.zero()]
    if not target.is_totally_positive():
        return []
    G, scale = integer_gram(trace_form_gram(zbasis))
    bound = target.trace() * scale
    out = []
    for v in short_vectors(G, bound):
        if not any(v):
            continue
        x = alg.zero()
        for c, b in zip(v, zbasis):
            if c:
                x = x + b * c
        if x.nrd() == target:
            out.append(x)
    out.sort(key=lambda q: q.key())
    return out


def enumerate_by_norm(O, target):
    """All elements of the order with reduced norm ``target``."""
    return elements_of_norm(O.z_basis, target, O.alg)


def hurwitz_order(alg=None):
    if alg is None:
        alg = QAlgebra("Q", -1, -1)
    one, i, j, k = alg.gens()
    return QOrder(alg, [one, i, j, (one + i + j + k) / 2], name="hurwitz")


def lipschitz_order(alg=None):
    if alg is None:
        alg = QAlgebra("Q", -1, -1)
    return QOrder(alg, alg.gens(), name="lipschitz")


def clifford_t_order(alg=None):
    """The maximal order over Z[sqrt2] generated by (1+i)/sqrt2, (1+j)/sqrt2 and the half-sum."""
    if alg is None:
        alg = QAlgebra("Q(sqrt2)", -1, -1)
    one, i, j, k = alg.gens()
    half_root2 = FieldElem(RingElem(0, 1, alg.ring), 2)
    return QOrder(alg, [one, (one + i) * half_root2, (one + j) * half_root2, (one + i + j + k) / 2],
                  name="clifford-t")


def order_from_literals(alg, rows, name=None):
    return QOrder(alg, [quaternion_from_literals(alg, r) for r in rows], name=name)


def valuation_of_nrd(q, P):
    return valuation(q.nrd(), P)
