"""Unitaries in unnormalized form, the kappa map, and gate-set configurations.

A unitary up to scalars is stored by four field coordinates x1, x2, y1, y2;
its matrix is

    [[x1 + x2 s, -(y1 + y2 s) r], [(y1 - y2 s) r, x1 - x2 s]]

with s = sqrt(-D) and r = sqrt(b).  The X coefficient sqrt(-Db) is taken to
be -s r; with that sign kappa(i) kappa(j) = kappa(k) and kappa respects
products in the given order.  Products of such matrices are computed
symbolically over F(s, r), so nothing ever leaves exact arithmetic.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .quaternion import QAlgebra, QOrder, Quaternion, quaternion_from_literals
from .rings import (
    FieldElem,
    RingElem,
    as_field,
    canonical_associate,
    factor_element,
    factor_rational_prime,
    get_ring,
    parse_field_literal,
    parse_ring_literal,
    ring_gcd,
    valuation,
)


class ConfigError(ValueError):
    """A gate-set configuration is malformed or inconsistent."""


# symbolic scalars ---------------------------------------------------------

class SymScalar:
    """``c0 + c1 s + c2 r + c3 s r`` with s^2 = -D and r^2 = b (commutative)."""

    __slots__ = ("c", "D", "b")

    def __init__(self, c, D, b):
        self.c = tuple(c)
        self.D = D
        self.b = b

    def __add__(self, o):
        return SymScalar([x + y for x, y in zip(self.c, o.c)], self.D, self.b)

    def __sub__(self, o):
        return SymScalar([x - y for x, y in zip(self.c, o.c)], self.D, self.b)

    def __neg__(self):
        return SymScalar([-x for x in self.c], self.D, self.b)

    def __mul__(self, o):
        if not isinstance(o, SymScalar):
            return SymScalar([x * o for x in self.c], self.D, self.b)
        a0, a1, a2, a3 = self.c
        b0, b1, b2, b3 = o.c
        D, b = self.D, self.b
        # s*s = -D, r*r = b, (sr)^2 = -D b, s*(sr) = -D r, r*(sr) = b s
        c0 = a0 * b0 - D * (a1 * b1) + b * (a2 * b2) - D * b * (a3 * b3)
        c1 = a0 * b1 + a1 * b0 + b * (a2 * b3 + a3 * b2)
        c2 = a0 * b2 + a2 * b0 - D * (a1 * b3 + a3 * b1)
        c3 = a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1
        return SymScalar([c0, c1, c2, c3], D, b)

    def complex_conj(self):
        """s is imaginary and r real, so conjugation flips the sign of s."""
        a0, a1, a2, a3 = self.c
        return SymScalar([a0, -a1, a2, -a3], self.D, self.b)

    def __eq__(self, o):
        return isinstance(o, SymScalar) and self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def to_complex(self):
        return _sym_to_complex(self)

    def __repr__(self):
        return f"SymScalar({[str(x) for x in self.c]})"


def _real(x):
    """First real embedding of a field element as a float (w -> sqrt2 or phi)."""
    x = as_field(x)
    r = x.ring
    if r.degree == 1:
        return x.num.a / x.den
    w = (r.t + math.sqrt(r.t * r.t + 4 * r.n)) / 2
    return (x.num.a + x.num.b * w) / x.den


def _sym_to_complex(z):
    s = cmath.sqrt(-_real(z.D))
    r = cmath.sqrt(_real(z.b))
    c0, c1, c2, c3 = (_real(x) for x in z.c)
    return c0 + c1 * s + c2 * r + c3 * s * r


@dataclass(frozen=True)
class SymMatrix:
    """A 2x2 matrix over F(s, r)."""

    m: tuple  # ((m11, m12), (m21, m22))

    def __mul__(self, o):
        a, b = self.m
        c, d = o.m
        return SymMatrix(((a[0] * c[0] + a[1] * d[0], a[0] * c[1] + a[1] * d[1]),
                          (b[0] * c[0] + b[1] * d[0], b[0] * c[1] + b[1] * d[1])))

    def det(self):
        (a, b), (c, d) = self.m
        return a * d - b * c

    def trace(self):
        return self.m[0][0] + self.m[1][1]

    def dagger(self):
        (a, b), (c, d) = self.m
        return SymMatrix(((a.complex_conj(), c.complex_conj()), (b.complex_conj(), d.complex_conj())))

    def scale(self, x):
        return SymMatrix(tuple(tuple(e * x for e in row) for row in self.m))

    def to_complex(self):
        return [[_sym_to_complex(e) for e in row] for row in self.m]


# unitary representation ----------------------------------------------------

@dataclass(frozen=True)
class UnitaryRep:
    """x1 I + x2 sqrt(-D) Z - y1 sqrt(-b) Y + y2 sqrt(-Db) X over F."""

    x1: FieldElem
    x2: FieldElem
    y1: FieldElem
    y2: FieldElem
    D: FieldElem
    b: FieldElem

    def _sym(self, c0=0, c1=0, c2=0, c3=0):
        ring = self.D.ring
        return SymScalar([as_field(c, ring) for c in (c0, c1, c2, c3)], self.D, self.b)

    def matrix(self):
        x1, x2, y1, y2 = self.x1, self.x2, self.y1, self.y2
        return SymMatrix(((self._sym(x1, x2), self._sym(0, 0, -y1, -y2)),
                          (self._sym(0, 0, y1, -y2), self._sym(x1, -x2))))

    @classmethod
    def from_matrix(cls, M, D, b):
        """Read the coordinates back; raises unless M has the required shape."""
        (a, bb), (c, d) = M.m
        half = FieldElem(1, 2, D.ring)
        x1 = (a.c[0] + d.c[0]) * half
        x2 = (a.c[1] - d.c[1]) * half
        y1 = (c.c[2] - bb.c[2]) * half
        y2 = -(c.c[3] + bb.c[3]) * half
        rep = cls(x1, x2, y1, y2, D, b)
        if rep.matrix() != M:
            raise ValueError("matrix is not of the form x1 I + x2 sZ - y1 sqrt(-b) Y + y2 sqrt(-Db) X")
        return rep

    def det(self):
        return self.x1 * self.x1 + self.D * self.x2 * self.x2 + self.b * (self.y1 * self.y1 + self.D * self.y2 * self.y2)

    def trace(self):
        return self.x1 * 2

    def dagger(self):
        return UnitaryRep(self.x1, -self.x2, -self.y1, -self.y2, self.D, self.b)

    def algebra(self):
        return QAlgebra.from_params(self.D.ring, self.D, self.b)


def kappa(M, alg=None):
    """The F-linear bijection to the quaternion x1 + x2 i + y1 j + y2 k."""
    if alg is None:
        alg = M.algebra()
    return alg.element(M.x1, M.x2, M.y1, M.y2)


def kappa_inverse(q, D=None, b=None):
    if D is None:
        D = -as_field(q.alg.a)
    if b is None:
        b = -as_field(q.alg.b)
    x1, x2, y1, y2 = q.coords
    return UnitaryRep(x1, x2, y1, y2, as_field(D), as_field(b))


def diag_gate_rep(re, im, D, b):
    """Unnormalized form diag(1 + conj(alpha), 1 + alpha) of diag(1, alpha).

    ``alpha = re + sqrt(-D) * im``.  alpha = -1 has no such form; the Pauli
    Z representative diag(sqrt(-D), -sqrt(-D)) (the quaternion i) is used
    for it instead.
    """
    ring = as_field(D).ring
    re, im = as_field(re, ring), as_field(im, ring)
    if re == -1 and im.is_zero():
        raise ValueError("alpha = -1: use the Pauli Z representative diag(sqrt(-D), -sqrt(-D))")
    zero = as_field(0, ring)
    return UnitaryRep(re + 1, -im, zero, zero, as_field(D), as_field(b))


def pauli_z_rep(D, b):
    ring = as_field(D).ring
    zero, one = as_field(0, ring), as_field(1, ring)
    return UnitaryRep(zero, one, zero, zero, as_field(D), as_field(b))


def rescale_integral(q, O):
    """(beta q, beta) with beta the canonical generator of {beta : beta q in O}."""
    if q.is_zero():
        raise ValueError("cannot rescale zero")
    ring = O.ring
    beta = ring.one()
    for c in O.coords(q):
        if c.is_zero():
            continue
        d = RingElem(c.den, 0, ring)
        need = d.exact_div(ring_gcd(c.num, d))
        g = ring_gcd(beta, need)
        beta = (beta * need).exact_div(g)
    beta = canonical_associate(beta)
    return q * beta, beta


def select_S(gates, O):
    """Primes dividing the norm of the primitive or ramified part of each gate.

    Central factors are dropped.  Returns ``[(P, ramified), ...]`` sorted by
    residue characteristic and generator.
    """
    disc = O.alg.discriminant()
    found = {}
    for q in gates:
        q, _ = rescale_integral(q, O) if not O.contains(q) else (q, None)
        c = O.content(q)
        r = q / c
        n = r.nrd().to_ring()
        for P, _ in factor_element(n):
            found[P.key()] = (P, valuation(disc, P) > 0)
    return [found[k] for k in sorted(found)]


# configurations -------------------------------------------------------------

BUILTIN = ("clifford-t", "v-basis", "clifford-t-v", "fibonacci", "su2k")


@dataclass
class GateSetConfig:
    name: str
    field: str
    D: str
    b: str
    order_basis: list
    primes: list
    generators: dict = field(default_factory=dict)
    unit_generators: dict = field(default_factory=dict)
    description: str = ""

    # parsing ----------------------------------------------------------------
    @property
    def ring(self):
        return get_ring(self.field)

    @property
    def D_value(self):
        return parse_field_literal(self.D, self.ring)

    @property
    def b_value(self):
        return parse_field_literal(self.b, self.ring)

    def algebra(self):
        if not hasattr(self, "_alg"):
            self._alg = QAlgebra.from_params(self.ring, self.D_value, self.b_value)
        return self._alg

    def is_definite(self):
        return self.algebra().is_totally_definite()

    def order(self):
        if not hasattr(self, "_order"):
            alg = self.algebra()
            self._order = QOrder(alg, [quaternion_from_literals(alg, r) for r in self.order_basis], name=self.name)
        return self._order

    def prime_ideals(self):
        """``[(P, ramified, label), ...]`` in configuration order."""
        out = []
        disc = self.algebra().discriminant()
        for entry in self.primes:
            p = int(entry["p"])
            cands = [P for P, _ in factor_rational_prime(p, self.ring)]
            if "generator" in entry:
                g = canonical_associate(parse_ring_literal(entry["generator"], self.ring))
                cands = [P for P in cands if P.generator == g]
                if not cands:
                    raise ConfigError(f"{entry['generator']} is not a prime above {p}")
            for P in cands:
                ram = valuation(disc, P) > 0
                if bool(entry.get("ramified", False)) != ram:
                    raise ConfigError(f"prime {P} ramification flag disagrees with the algebra")
                out.append((P, ram, entry.get("label")))
        return out

    def generator_values(self):
        alg = self.algebra()
        return {k: quaternion_from_literals(alg, v) for k, v in self.generators.items()}

    def unit_values(self):
        alg = self.algebra()
        return {k: quaternion_from_literals(alg, v) for k, v in self.unit_generators.items()}

    # serialization ------------------------------------------------------------
    def to_dict(self):
        d = {
            "name": self.name,
            "field": self.field,
            "D": self.D,
            "b": self.b,
            "order_basis": [list(r) for r in self.order_basis],
            "primes": [dict(p) for p in self.primes],
            "generators": {k: list(v) for k, v in self.generators.items()},
            "unit_generators": {k: list(v) for k, v in self.unit_generators.items()},
        }
        if self.description:
            d["description"] = self.description
        return d

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, d):
        missing = [k for k in ("name", "field", "D", "b", "order_basis", "primes") if k not in d]
        if missing:
            raise ConfigError(f"config is missing {', '.join(missing)}")
        if len(d["order_basis"]) != 4 or any(len(r) != 4 for r in d["order_basis"]):
            raise ConfigError("order_basis must be a 4x4 array of literals")
        cfg = cls(
            name=d["name"],
            field=d["field"],
            D=d["D"],
            b=d["b"],
            order_basis=[list(r) for r in d["order_basis"]],
            primes=[dict(p) for p in d["primes"]],
            generators={k: list(v) for k, v in d.get("generators", {}).items()},
            unit_generators={k: list(v) for k, v in d.get("unit_generators", {}).items()},
            description=d.get("description", ""),
        )
        try:
            cfg.ring
        except Exception as exc:
            raise ConfigError(str(exc)) from exc
        return cfg

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


def load_config(name_or_path):
    """A built-in configuration by name, or a JSON file by path."""
    if name_or_path in BUILTIN:
        text = resources.files("exactsynth").joinpath("configs", f"{name_or_path}.json").read_text()
        return GateSetConfig.from_json(text)
    p = Path(name_or_path)
    if not p.exists():
        raise ConfigError(f"unknown gate set or missing file: {name_or_path}")
    return GateSetConfig.from_json(p.read_text())


def quaternion_of_unitary(M, O):
    """kappa followed by integral rescaling into O."""
    q = kappa(M, O.alg)
    return rescale_integral(q, O)


__all__ = [
    "BUILTIN",
    "ConfigError",
    "GateSetConfig",
    "SymMatrix",
    "SymScalar",
    "UnitaryRep",
    "diag_gate_rep",
    "kappa",
    "kappa_inverse",
    "load_config",
    "pauli_z_rep",
    "rescale_integral",
    "select_S",
    "Quaternion",
]
