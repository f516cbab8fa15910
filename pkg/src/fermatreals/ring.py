"""The ring of Fermat reals and its ideals.

A Fermat real is stored in canonical decomposition

    x  =  std  +  sum_i coeff_i * t**exp_i,      0 < exp_1 < ... < exp_l <= 1,

with all coefficients nonzero.  Any term with exponent above 1 vanishes to
first order as t -> 0 and is dropped on construction; that truncation is
what makes every value with zero standard part nilpotent.  The normal form
is unique, so structural equality is value equality.

Ordering is dictionary order on the quasi-decomposition: pad both operands
to a common exponent list (zero coefficients allowed), then compare the
tuple (std, coeff_1, ..., coeff_n) lexicographically.  This matches the
sign of x(t) - y(t) for small positive t.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

from .errors import (
    BackendMismatch,
    NonPositiveExponent,
    NotInvertible,
)
from .scalars import (
    EXACT,
    FLOAT,
    THETA,
    ThetaCombo,
    backend_of,
    coerce_scalar,
    format_scalar,
    scalar_eq,
    scalar_from_json,
    scalar_is_zero,
    scalar_to_json,
    scalar_zero,
)

LT, EQ, GT = -1, 0, 1


def _normalize_terms(raw_terms: Iterable, backend: str) -> tuple:
    acc: dict[Fraction, object] = {}
    for exp, coeff in raw_terms:
        e = Fraction(exp)
        if e <= 0:
            raise NonPositiveExponent(f"term exponent {e} must be positive")
        if e > 1:
            continue  # o(t): identically zero in the quotient
        c = coerce_scalar(coeff, backend)
        if e in acc:
            acc[e] = acc[e] + c
        else:
            acc[e] = c
    items = [(e, c) for e, c in acc.items() if not scalar_is_zero(c)]
    items.sort(key=lambda item: item[0])
    return tuple(items)


class FermatReal:
    """An element of the ring of Fermat reals, in canonical form."""

    __slots__ = ("std", "terms", "backend")

    def __init__(self, std=0, terms: Iterable = (), backend: str | None = None):
        if backend is None:
            if isinstance(std, FermatReal):
                raise TypeError("std must be a scalar, not a FermatReal")
            try:
                backend = backend_of(std)
            except BackendMismatch:
                raise
        object.__setattr__(self, "backend", backend)
        object.__setattr__(self, "std", coerce_scalar(std, backend))
        object.__setattr__(self, "terms", _normalize_terms(terms, backend))

    def __setattr__(self, name, value):
        raise AttributeError("FermatReal is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_scalar(cls, value, backend: str | None = None) -> "FermatReal":
        return cls(value, (), backend)

    @classmethod
    def zero(cls, backend: str = EXACT) -> "FermatReal":
        return cls(0, (), backend)

    @classmethod
    def one(cls, backend: str = EXACT) -> "FermatReal":
        return cls(1, (), backend)

    # -- decomposition ------------------------------------------------------

    def standard_part(self):
        """The scalar x(0)."""
        return self.std

    def infinitesimal_part(self) -> "FermatReal":
        """x minus its standard part; always nilpotent."""
        return FermatReal(scalar_zero(self.backend), self.terms, self.backend)

    def is_zero(self) -> bool:
        return scalar_is_zero(self.std) and not self.terms

    def is_standard(self) -> bool:
        return not self.terms

    def is_infinitesimal(self) -> bool:
        return scalar_is_zero(self.std)

    def order(self) -> Fraction:
        """1 / least exponent of the infinitesimal part; 0 for standard values."""
        if not self.terms:
            return Fraction(0)
        return 1 / self.terms[0][0]

    def nilpotency_index(self) -> int:
        """Least m >= 1 with (infinitesimal part)**m == 0."""
        if not self.terms:
            return 1
        return math.floor(self.order()) + 1

    # -- arithmetic ---------------------------------------------------------

    def _coerce_operand(self, other) -> "FermatReal | None":
        if isinstance(other, FermatReal):
            if other.backend != self.backend:
                raise BackendMismatch(
                    f"mixed backends {self.backend!r} and {other.backend!r}"
                )
            return other
        try:
            return FermatReal(coerce_scalar(other, self.backend), (), self.backend)
        except BackendMismatch:
            return None

    def __add__(self, other):
        o = self._coerce_operand(other)
        if o is None:
            return NotImplemented
        return FermatReal(self.std + o.std, self.terms + o.terms, self.backend)

    __radd__ = __add__

    def __neg__(self):
        return FermatReal(-self.std, [(e, -c) for e, c in self.terms], self.backend)

    def __sub__(self, other):
        o = self._coerce_operand(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce_operand(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce_operand(other)
        if o is None:
            return NotImplemented
        raw = []
        for e, c in self.terms:
            if not scalar_is_zero(o.std):
                raw.append((e, c * o.std))
        for e, c in o.terms:
            if not scalar_is_zero(self.std):
                raw.append((e, self.std * c))
        for e1, c1 in self.terms:
            for e2, c2 in o.terms:
                e = e1 + e2
                if e <= 1:
                    raw.append((e, c1 * c2))
        return FermatReal(self.std * o.std, raw, self.backend)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("powers of Fermat reals take integer exponents >= 0")
        result = FermatReal.one(self.backend)
        for _ in range(k):  # sizes are tiny; no need for binary exponentiation
            result = result * self
        return result

    def inv(self) -> "FermatReal":
        """Multiplicative inverse; defined exactly when the standard part is nonzero."""
        if scalar_is_zero(self.std):
            raise NotInvertible("values with zero standard part are not invertible")
        if isinstance(self.std, ThetaCombo):
            if self.std.b != 0:
                raise NotInvertible("theta standard parts cannot be inverted linearly")
            inv_std = ThetaCombo(1 / self.std.a, 0)
        elif isinstance(self.std, float):
            inv_std = 1.0 / self.std
        else:
            inv_std = 1 / self.std
        # geometric series: 1/x = (1/std) * sum_k (-delta/std)**k, finite by nilpotency
        u = self.infinitesimal_part() * (-inv_std)
        acc = FermatReal.one(self.backend)
        power = FermatReal.one(self.backend)
        while True:
            power = power * u
            if power.is_zero():
                break
            acc = acc + power
        return acc * inv_std

    def __truediv__(self, other):
        o = self._coerce_operand(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce_operand(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def to_float(self) -> "FermatReal":
        """Explicit coercion to the float backend."""
        if self.backend == FLOAT:
            return self
        if self.backend == THETA:
            raise BackendMismatch("theta values have no numeric value")
        return FermatReal(
            float(self.std), [(e, float(c)) for e, c in self.terms], FLOAT
        )

    # -- ordering -----------------------------------------------------------

    def compare(self, other) -> int:
        """Dictionary order: -1, 0 or 1.  Not defined on the theta backend."""
        o = self._coerce_operand(other)
        if o is None:
            raise BackendMismatch(f"cannot compare with {type(other).__name__}")
        if self.backend == THETA:
            raise BackendMismatch("ordering is not defined for theta-backed values")
        if not scalar_eq(self.std, o.std):
            return LT if self.std < o.std else GT
        mine = dict(self.terms)
        theirs = dict(o.terms)
        zero = scalar_zero(self.backend)
        for e in sorted(set(mine) | set(theirs)):
            a = mine.get(e, zero)
            b = theirs.get(e, zero)
            if not scalar_eq(a, b):
                return LT if a < b else GT
        return EQ

    def __lt__(self, other):
        return self.compare(other) == LT

    def __le__(self, other):
        return self.compare(other) != GT

    def __gt__(self, other):
        return self.compare(other) == GT

    def __ge__(self, other):
        return self.compare(other) != LT

    # structural equality; on the exact backend this is value equality
    # because the normal form is unique
    def __eq__(self, other):
        if isinstance(other, (int, Fraction, float, ThetaCombo)):
            try:
                other = FermatReal(coerce_scalar(other, self.backend), (), self.backend)
            except BackendMismatch:
                return NotImplemented
        if not isinstance(other, FermatReal):
            return NotImplemented
        return (
            self.backend == other.backend
            and self.std == other.std
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.backend, self.std, self.terms))

    # -- presentation -------------------------------------------------------

    def __repr__(self):
        return f"FermatReal({self.std!r}, {list(self.terms)!r}, {self.backend!r})"

    def __str__(self):
        return format_fermat(self)

    def to_json(self) -> dict:
        return {
            "std": scalar_to_json(self.std),
            "terms": [
                {"exp": str(e), "coeff": scalar_to_json(c)} for e, c in self.terms
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FermatReal":
        std = scalar_from_json(data["std"])
        terms = [
            (Fraction(t["exp"]), scalar_from_json(t["coeff"]))
            for t in data.get("terms", ())
        ]
        values = [std] + [c for _, c in terms]
        if any(isinstance(v, float) for v in values):
            backend = FLOAT
        elif any(isinstance(v, ThetaCombo) for v in values):
            backend = THETA
        else:
            backend = EXACT
        return cls(
            coerce_scalar(std, backend),
            [(e, coerce_scalar(c, backend)) for e, c in terms],
            backend,
        )


def t_power(exp, coeff=1, backend: str = EXACT) -> FermatReal:
    """The infinitesimal coeff * t**exp."""
    return FermatReal(scalar_zero(backend), [(Fraction(exp), coeff)], backend)


def t(backend: str = EXACT) -> FermatReal:
    """The first-order infinitesimal t (its square is 0)."""
    return t_power(1, 1, backend)


def normalize(std, raw_terms: Iterable, backend: str | None = None) -> FermatReal:
    """Canonicalize an arbitrary term list (merge, drop o(t), sort)."""
    if backend is None:
        backend = backend_of(std)
    return FermatReal(std, raw_terms, backend)


def approx_equal(x: FermatReal, y: FermatReal, tol: float = 1e-9) -> bool:
    """Coefficient-wise comparison after padding to common exponents.

    Intended for float-backend results where rounding keeps structural
    equality from holding; residual coefficients below tol count as zero.
    """
    xs = dict(x.to_float().terms) if x.backend != FLOAT else dict(x.terms)
    ys = dict(y.to_float().terms) if y.backend != FLOAT else dict(y.terms)
    xstd = float(x.std) if not isinstance(x.std, float) else x.std
    ystd = float(y.std) if not isinstance(y.std, float) else y.std
    scale = max(1.0, abs(xstd), abs(ystd))
    if abs(xstd - ystd) > tol * scale:
        return False
    for e in set(xs) | set(ys):
        a = xs.get(e, 0.0)
        b = ys.get(e, 0.0)
        if abs(a - b) > tol * max(1.0, abs(a), abs(b)):
            return False
    return True


# ---------------------------------------------------------------------------
# ideals and quotient rings


class Ideal:
    """An ideal of the ring: {0}, D(a), I(b), or all infinitesimals.

    Membership is decided by the order function:

    * ``D(a)``    -- infinitesimals of order < a + 1 (a rational > 0, or inf),
    * ``I(b)``    -- infinitesimals of order <= b (b rational >= 1),
    * ``dinf()``  -- every infinitesimal (the unique maximal ideal),
    * ``zero()``  -- only 0.
    """

    ZERO = "0"
    D = "D"
    I = "I"  # noqa: E741 - established name for this ideal family
    DINF = "Dinf"

    __slots__ = ("kind", "param")

    def __init__(self, kind: str, param=None):
        if kind not in (self.ZERO, self.D, self.I, self.DINF):
            raise ValueError(f"unknown ideal kind {kind!r}")
        if kind == self.D:
            if param != math.inf:
                param = Fraction(param)
                if param <= 0:
                    raise ValueError("D(a) requires a > 0")
        elif kind == self.I:
            param = Fraction(param)
            if param < 1:
                raise ValueError("I(b) requires b >= 1")
        else:
            param = None
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "param", param)

    def __setattr__(self, name, value):
        raise AttributeError("Ideal is immutable")

    @classmethod
    def zero(cls) -> "Ideal":
        return cls(cls.ZERO)

    @classmethod
    def first_order(cls) -> "Ideal":
        """D(1), the square-zero infinitesimals."""
        return cls(cls.D, 1)

    @classmethod
    def of_order_below(cls, a) -> "Ideal":
        return cls(cls.D, a)

    @classmethod
    def of_order_at_most(cls, b) -> "Ideal":
        return cls(cls.I, b)

    @classmethod
    def dinf(cls) -> "Ideal":
        return cls(cls.DINF)

    def __contains__(self, x: FermatReal) -> bool:
        if self.kind == self.ZERO:
            return x.is_zero()
        if not scalar_is_zero(x.std):
            return False
        if self.kind == self.DINF:
            return True
        w = x.order()  # 0 for x == 0, so 0 belongs to every ideal
        if self.kind == self.D:
            return w < self.param + 1
        return w <= self.param

    def reduce(self, x: FermatReal) -> FermatReal:
        """Canonical coset representative: truncate the term list.

        The kept exponent range is chosen so that x - reduce(x) always lies
        in the ideal and equal cosets share a representative.
        """
        if self.kind == self.ZERO:
            return x
        if self.kind == self.DINF:
            keep = lambda e: False  # noqa: E731
        elif self.kind == self.D:
            if self.param == math.inf:
                keep = lambda e: False  # noqa: E731
            else:
                cutoff = 1 / (self.param + 1)
                keep = lambda e: e <= cutoff  # noqa: E731
        else:
            cutoff = 1 / self.param
            keep = lambda e: e < cutoff  # noqa: E731
        return FermatReal(x.std, [(e, c) for e, c in x.terms if keep(e)], x.backend)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.kind == other.kind and self.param == other.param

    def __hash__(self):
        return hash((self.kind, self.param))

    def __repr__(self):
        return f"Ideal({self.kind!r}, {self.param!r})"

    def __str__(self):
        if self.kind in (self.ZERO, self.DINF):
            return self.kind
        param = "inf" if self.param == math.inf else str(self.param)
        return f"{self.kind}:{param}"


def ideal_member(x: FermatReal, ideal: Ideal) -> bool:
    return x in ideal


def quotient_normal_form(x: FermatReal, ideal: Ideal) -> FermatReal:
    return ideal.reduce(x)


# ---------------------------------------------------------------------------
# points of the n-fold product ring


FermatPoint = tuple  # tuple[FermatReal, ...]


def point_backend(point: FermatPoint) -> str:
    backends = {x.backend for x in point}
    if len(backends) > 1:
        raise BackendMismatch(f"point mixes backends {sorted(backends)}")
    return backends.pop() if backends else EXACT


def standard_point(point: FermatPoint) -> tuple:
    return tuple(x.std for x in point)


def lift_reals(values, backend: str = EXACT) -> FermatPoint:
    return tuple(FermatReal.from_scalar(v, backend) for v in values)


# ---------------------------------------------------------------------------
# text form


def format_fermat(x: FermatReal) -> str:
    """Render canonical text such as ``3 + 2*t^(1/2) + 5*t^(1)``."""
    pieces: list[str] = []
    if not scalar_is_zero(x.std) or not x.terms:
        pieces.append(format_scalar(x.std))
    for e, c in x.terms:
        sign = ""
        body_coeff = c
        if isinstance(c, ThetaCombo):
            if c.b == 0 and c.a < 0:
                sign, body_coeff = "-", ThetaCombo(-c.a, 0)
        elif c < 0:
            sign, body_coeff = "-", -c
        if isinstance(body_coeff, ThetaCombo) and body_coeff.b != 0:
            coeff_txt = f"({body_coeff})*"
        elif scalar_is_zero(body_coeff - coerce_scalar(1, x.backend)):
            coeff_txt = ""
        else:
            coeff_txt = f"{format_scalar(body_coeff)}*"
        term = f"{coeff_txt}t^({e})"
        if not pieces:
            pieces.append(f"-{term}" if sign else term)
        else:
            pieces.append(f"- {term}" if sign else f"+ {term}")
    return " ".join(pieces)
