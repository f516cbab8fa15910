"""Scalar foundations.

Three scalar backends coexist and are never mixed silently:

* ``exact``  -- arbitrary-precision rationals (:class:`fractions.Fraction`),
* ``float``  -- IEEE double precision,
* ``theta``  -- linear combinations ``a + b*theta`` over a formal irrational
  symbol theta (:class:`ThetaCombo`).

The only implicit coercion is embedding integers (and, into the float
backend, exact rationals) as constants.  Coercing float data into the exact
backend is always an error.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import BackendMismatch, DivisionByZero

EXACT = "exact"
FLOAT = "float"
THETA = "theta"

BACKENDS = (EXACT, FLOAT, THETA)

# Tolerances for float-backend equality: doubles accumulate rounding across
# Taylor sums, so strict == would be meaningless there.
FLOAT_REL_TOL = 1e-12
FLOAT_ABS_TOL = 1e-15

Rational = Fraction


def rational_arith(op: str, a: Fraction, b: Fraction) -> Fraction:
    """Apply one of ``+ - * /`` to two exact rationals."""
    a, b = Fraction(a), Fraction(b)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        if b == 0:
            raise DivisionByZero("division of rationals by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


class ThetaCombo:
    """``a + b*theta`` with rational components and a formal irrational theta.

    theta satisfies no rational relation, so equality is componentwise and
    membership in integer lattices reduces to integer linear algebra on the
    components.  Products are only defined when at least one factor is purely
    rational (theta**2 has no linear representation).
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("ThetaCombo is immutable")

    @staticmethod
    def _coerce(value) -> "ThetaCombo | None":
        if isinstance(value, ThetaCombo):
            return value
        if isinstance(value, (int, Fraction)):
            return ThetaCombo(value, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ThetaCombo(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ThetaCombo(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return ThetaCombo(o.a - self.a, o.b - self.b)

    def __neg__(self):
        return ThetaCombo(-self.a, -self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.b != 0 and o.b != 0:
            raise ArithmeticError("theta*theta is outside the linear model")
        if o.b == 0:
            return ThetaCombo(self.a * o.a, self.b * o.a)
        return ThetaCombo(self.a * o.a, self.a * o.b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.b != 0:
            raise ArithmeticError("division by a theta term is outside the linear model")
        if o.a == 0:
            raise DivisionByZero("division of theta combination by zero")
        return ThetaCombo(self.a / o.a, self.b / o.a)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __repr__(self):
        return f"ThetaCombo({self.a!r}, {self.b!r})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.b == 1:
            theta = "theta"
        elif self.b == -1:
            theta = "-theta"
        else:
            theta = f"{self.b}*theta"
        if self.a == 0:
            return theta
        if self.b < 0:
            mag = theta.lstrip("-")
            return f"{self.a} - {mag}"
        return f"{self.a} + {theta}"


_THETA_RE = re.compile(
    r"^\s*(?P<a>-?\d+(?:/\d+)?)?\s*"
    r"(?:(?P<sign>[+-])?\s*(?:(?P<b>\d+(?:/\d+)?)\s*\*\s*)?theta)?\s*$"
)


def parse_theta_combo(text: str) -> ThetaCombo:
    """Parse the ``a/b + c/d*theta`` serialization back into a ThetaCombo."""
    m = _THETA_RE.match(text)
    if not m or (m.group("a") is None and "theta" not in text):
        raise ValueError(f"cannot parse theta combination {text!r}")
    a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
    if "theta" in text:
        b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
        if m.group("sign") == "-" or (m.group("a") is None and text.lstrip().startswith("-")):
            b = -b
    else:
        b = Fraction(0)
    return ThetaCombo(a, b)


def _integer_lattice_member(target: tuple[int, int], gens: list[tuple[int, int]]) -> bool:
    """Decide membership of an integer vector in the Z-span of 2-vectors.

    Hermite-style reduction: fold the generators into one vector w whose
    first component is the gcd of all first components, collecting the
    residual vectors, which all have first component 0; their second
    components contribute a gcd d2.  The span is then Z*w + Z*(0, d2).
    """
    w = None
    rest: list[int] = []
    for v in gens:
        if v == (0, 0):
            continue
        if v[0] == 0:
            rest.append(v[1])
        elif w is None:
            w = v
        else:
            g, s, t = _ext_gcd(w[0], v[0])
            combo = (g, s * w[1] + t * v[1])
            rest.append(w[1] - (w[0] // g) * combo[1])
            rest.append(v[1] - (v[0] // g) * combo[1])
            w = combo
    d2 = 0
    for y in rest:
        d2 = math.gcd(d2, y)
    x, y = target
    if w is None:
        if x != 0:
            return False
        rem = y
    else:
        if x % w[0] != 0:
            return False
        rem = y - (x // w[0]) * w[1]
    if d2 == 0:
        return rem == 0
    return rem % d2 == 0


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b), g > 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def theta_lattice_member(x: ThetaCombo, lattice) -> bool:
    """True iff x is an integer combination of the lattice generators.

    For the standard generators {1, theta} this is just ``a in Z and b in Z``.
    """
    gens = [ThetaCombo._coerce(g) for g in lattice]
    if any(g is None for g in gens):
        raise TypeError("lattice generators must be rationals or ThetaCombos")
    if not gens or any(not g for g in gens):
        raise ValueError("lattice generators must be nonzero")
    x = ThetaCombo._coerce(x)
    denom = 1
    for v in gens + [x]:
        denom = denom * v.a.denominator // math.gcd(denom, v.a.denominator)
        denom = denom * v.b.denominator // math.gcd(denom, v.b.denominator)
    int_gens = [(int(g.a * denom), int(g.b * denom)) for g in gens]
    target = (int(x.a * denom), int(x.b * denom))
    return _integer_lattice_member(target, int_gens)


def theta_unit() -> ThetaCombo:
    return ThetaCombo(0, 1)


STANDARD_LATTICE = (ThetaCombo(1, 0), ThetaCombo(0, 1))  # Z + theta*Z
INTEGER_LATTICE = (ThetaCombo(1, 0),)  # Z


# ---------------------------------------------------------------------------
# backend helpers


def backend_of(value) -> str:
    if isinstance(value, Fraction) or isinstance(value, int):
        return EXACT
    if isinstance(value, float):
        return FLOAT
    if isinstance(value, ThetaCombo):
        return THETA
    raise BackendMismatch(f"unsupported scalar type {type(value).__name__}")


def coerce_scalar(value, backend: str):
    """Coerce a scalar constant into a backend, refusing lossy directions."""
    if backend == EXACT:
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise BackendMismatch(
            f"cannot use {type(value).__name__} in the exact backend; convert explicitly"
        )
    if backend == FLOAT:
        if isinstance(value, (int, float, Fraction)):
            return float(value)
        raise BackendMismatch(f"cannot use {type(value).__name__} in the float backend")
    if backend == THETA:
        if isinstance(value, ThetaCombo):
            return value
        if isinstance(value, (int, Fraction)):
            return ThetaCombo(value, 0)
        raise BackendMismatch(f"cannot use {type(value).__name__} in the theta backend")
    raise ValueError(f"unknown backend {backend!r}")


def scalar_zero(backend: str):
    return coerce_scalar(0, backend)


def scalar_one(backend: str):
    return coerce_scalar(1, backend)


def scalar_is_zero(value) -> bool:
    """Strict zero test (normal forms never keep tolerance-level junk)."""
    if isinstance(value, ThetaCombo):
        return not value
    return value == 0


def scalar_eq(a, b) -> bool:
    """Backend-aware equality; floats compare within rel 1e-12 / abs 1e-15."""
    if isinstance(a, float) or isinstance(b, float):
        return math.isclose(a, b, rel_tol=FLOAT_REL_TOL, abs_tol=FLOAT_ABS_TOL)
    return a == b


def format_scalar(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def scalar_to_json(value):
    """JSON form: exact and theta scalars as strings, floats as numbers."""
    if isinstance(value, float):
        return value
    return str(value)


def scalar_from_json(value):
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value) if isinstance(value, float) else Fraction(value)
    if isinstance(value, str):
        if "theta" in value:
            return parse_theta_combo(value)
        return Fraction(value)
    raise ValueError(f"cannot read scalar from {value!r}")
