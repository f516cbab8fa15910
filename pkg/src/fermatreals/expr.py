"""Expression trees for smooth functions, with exact symbolic derivatives.

Nodes: constants, named variables, + - * / and negation, integer powers,
and the primitives exp, log, sin, cos.  Trees are immutable; building them
via the overloaded operators coerces plain numbers to constants.

Evaluation over real scalars lives here (`eval_real`); evaluation over
Fermat reals lives in :mod:`fermatreals.extension`.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError, InexactPrimitive, UndeclaredVariable
from .scalars import EXACT, FLOAT, coerce_scalar

PRIM_NAMES = ("exp", "log", "sin", "cos")


class Expr:
    __slots__ = ()

    precedence = 4

    @staticmethod
    def _wrap(value) -> "Expr":
        if isinstance(value, Expr):
            return value
        return Const(value)

    def __add__(self, other):
        return Add(self, self._wrap(other))

    def __radd__(self, other):
        return Add(self._wrap(other), self)

    def __sub__(self, other):
        return Sub(self, self._wrap(other))

    def __rsub__(self, other):
        return Sub(self._wrap(other), self)

    def __mul__(self, other):
        return Mul(self, self._wrap(other))

    def __rmul__(self, other):
        return Mul(self._wrap(other), self)

    def __truediv__(self, other):
        return Div(self, self._wrap(other))

    def __rtruediv__(self, other):
        return Div(self._wrap(other), self)

    def __neg__(self):
        return Neg(self)

    def __pow__(self, k):
        return IntPow(self, k)

    def children(self) -> tuple["Expr", ...]:
        return ()

    def variables(self) -> frozenset:
        out = frozenset()
        for child in self.children():
            out |= child.variables()
        return out

    def diff(self, var: str) -> "Expr":
        raise NotImplementedError

    def subst(self, mapping: dict) -> "Expr":
        raise NotImplementedError

    def _fields(self) -> tuple:
        return ()

    def __eq__(self, other):
        return type(self) is type(other) and self._fields() == other._fields()

    def __hash__(self):
        return hash((type(self).__name__, self._fields()))

    def __repr__(self):
        return f"{type(self).__name__}{self._fields()!r}"


class Const(Expr):
    __slots__ = ("value",)

    def __init__(self, value):
        object.__setattr__(self, "value", Fraction(value) if isinstance(value, int) else value)

    def __setattr__(self, name, value):
        raise AttributeError("expressions are immutable")

    def _fields(self):
        return (self.value,)

    def diff(self, var):
        return _ZERO

    def subst(self, mapping):
        return self

    def __str__(self):
        if isinstance(self.value, Fraction) and self.value.denominator != 1:
            return f"({self.value})"
        if self.value < 0:
            return f"({self.value})"
        return str(self.value)


class Var(Expr):
    __slots__ = ("name",)

    def __init__(self, name: str):
        object.__setattr__(self, "name", name)

    def __setattr__(self, name, value):
        raise AttributeError("expressions are immutable")

    def _fields(self):
        return (self.name,)

    def variables(self):
        return frozenset((self.name,))

    def diff(self, var):
        return _ONE if self.name == var else _ZERO

    def subst(self, mapping):
        return mapping.get(self.name, self)

    def __str__(self):
        return self.name


class FermatConst(Expr):
    """A fixed Fermat-real literal; only meaningful inside point expressions."""

    __slots__ = ("value",)

    def __init__(self, value):
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("expressions are immutable")

    def _fields(self):
        return (self.value,)

    def diff(self, var):
        return _ZERO

    def subst(self, mapping):
        return self

    def __str__(self):
        text = str(self.value)
        return f"({text})" if (" " in text or text.startswith("-")) else text


class _Binary(Expr):
    __slots__ = ("left", "right")
    symbol = "?"

    def __init__(self, left, right):
        object.__setattr__(self, "left", self._wrap(left))
        object.__setattr__(self, "right", self._wrap(right))

    def __setattr__(self, name, value):
        raise AttributeError("expressions are immutable")

    def children(self):
        return (self.left, self.right)

    def _fields(self):
        return (self.left, self.right)

    def subst(self, mapping):
        return type(self)(self.left.subst(mapping), self.right.subst(mapping))

    def __str__(self):
        lhs = _paren(self.left, self.precedence, tight=False)
        rhs = _paren(self.right, self.precedence, tight=True)
        return f"{lhs} {self.symbol} {rhs}"


class Add(_Binary):
    __slots__ = ()
    precedence = 1
    symbol = "+"

    def diff(self, var):
        return _add(self.left.diff(var), self.right.diff(var))


class Sub(_Binary):
    __slots__ = ()
    precedence = 1
    symbol = "-"

    def diff(self, var):
        return _sub(self.left.diff(var), self.right.diff(var))


class Mul(_Binary):
    __slots__ = ()
    precedence = 2
    symbol = "*"

    def diff(self, var):
        return _add(
            _mul(self.left.diff(var), self.right),
            _mul(self.left, self.right.diff(var)),
        )


class Div(_Binary):
    __slots__ = ()
    precedence = 2
    symbol = "/"

    def diff(self, var):
        num = _sub(
            _mul(self.left.diff(var), self.right),
            _mul(self.left, self.right.diff(var)),
        )
        return Div(num, IntPow(self.right, 2))


class Neg(Expr):
    __slots__ = ("arg",)
    precedence = 2

    def __init__(self, arg):
        object.__setattr__(self, "arg", self._wrap(arg))

    def __setattr__(self, name, value):
        raise AttributeError("expressions are immutable")

    def children(self):
        return (self.arg,)

    def _fields(self):
        return (self.arg,)

    def diff(self, var):
        return _neg(self.arg.diff(var))

    def subst(self, mapping):
        return Neg(self.arg.subst(mapping))

    def __str__(self):
        return f"-{_paren(self.arg, self.precedence, tight=True)}"


class IntPow(Expr):
    __slots__ = ("base", "power")
    precedence = 3

    def __init__(self, base, power: int):
        if not isinstance(power, int) or isinstance(power, bool) or power < 0:
            raise ValueError("integer powers require an int exponent >= 0")
        object.__setattr__(self, "base", self._wrap(base))
        object.__setattr__(self, "power", power)

    def __setattr__(self, name, value):
        raise AttributeError("expressions are immutable")

    def children(self):
        return (self.base,)

    def _fields(self):
        return (self.base, self.power)

    def diff(self, var):
        if self.power == 0:
            return _ZERO
        return _mul(
            _mul(Const(self.power), _intpow(self.base, self.power - 1)),
            self.base.diff(var),
        )

    def subst(self, mapping):
        return IntPow(self.base.subst(mapping), self.power)

    def __str__(self):
        return f"{_paren(self.base, self.precedence, tight=True)}^{self.power}"


class Prim(Expr):
    __slots__ = ("name", "arg")

    def __init__(self, name: str, arg):
        if name not in PRIM_NAMES:
            raise ValueError(f"unknown primitive {name!r}")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "arg", self._wrap(arg))

    def __setattr__(self, name, value):
        raise AttributeError("expressions are immutable")

    def children(self):
        return (self.arg,)

    def _fields(self):
        return (self.name, self.arg)

    def diff(self, var):
        inner = self.arg.diff(var)
        if self.name == "exp":
            outer = Prim("exp", self.arg)
        elif self.name == "log":
            return _div(inner, self.arg)
        elif self.name == "sin":
            outer = Prim("cos", self.arg)
        else:  # cos
            outer = _neg(Prim("sin", self.arg))
        return _mul(outer, inner)

    def subst(self, mapping):
        return Prim(self.name, self.arg.subst(mapping))

    def __str__(self):
        return f"{self.name}({self.arg})"


def _paren(expr: Expr, parent_prec: int, tight: bool) -> str:
    text = str(expr)
    prec = expr.precedence
    if prec < parent_prec or (tight and prec == parent_prec):
        return f"({text})"
    return text


_ZERO = Const(0)
_ONE = Const(1)


def _is_const(expr, value) -> bool:
    return isinstance(expr, Const) and expr.value == value


# folding constructors keep derivative trees readable; they never change value
def _add(a, b):
    if _is_const(a, 0):
        return b
    if _is_const(b, 0):
        return a
    return Add(a, b)


def _sub(a, b):
    if _is_const(b, 0):
        return a
    if _is_const(a, 0):
        return _neg(b)
    return Sub(a, b)


def _neg(a):
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def _mul(a, b):
    if _is_const(a, 0) or _is_const(b, 0):
        return _ZERO
    if _is_const(a, 1):
        return b
    if _is_const(b, 1):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    return Mul(a, b)


def _div(a, b):
    if _is_const(a, 0):
        return _ZERO
    if _is_const(b, 1):
        return a
    return Div(a, b)


def _intpow(base, k):
    if k == 0:
        return _ONE
    if k == 1:
        return base
    return IntPow(base, k)


def differentiate(expr: Expr, var: str, declared=None) -> Expr:
    """Exact symbolic partial derivative of expr with respect to var."""
    if declared is not None and var not in declared:
        raise UndeclaredVariable(f"variable {var!r} is not declared")
    return expr.diff(var)


# ---------------------------------------------------------------------------
# real evaluation


def _prim_real(name: str, value, backend: str):
    if backend == FLOAT:
        v = float(value)
        if name == "exp":
            return math.exp(v)
        if name == "log":
            if v <= 0:
                raise DomainError(f"log of non-positive value {v!r}")
            return math.log(v)
        if name == "sin":
            return math.sin(v)
        return math.cos(v)
    # exact backend: only points whose value is rational are representable
    if name == "log" and value <= 0:
        raise DomainError(f"log of non-positive value {value!s}")
    special = {
        ("exp", Fraction(0)): Fraction(1),
        ("log", Fraction(1)): Fraction(0),
        ("sin", Fraction(0)): Fraction(0),
        ("cos", Fraction(0)): Fraction(1),
    }
    key = (name, value)
    if key in special:
        return special[key]
    raise InexactPrimitive(
        f"{name}({value}) is not exactly representable; use the float backend"
    )


def eval_real(expr: Expr, env: dict, backend: str | None = None):
    """Evaluate over plain scalars.  All env values share one backend."""
    if backend is None:
        backend = EXACT
        for v in env.values():
            if isinstance(v, float):
                backend = FLOAT
                break
    env = {name: coerce_scalar(v, backend) for name, v in env.items()}
    return _eval_real(expr, env, backend)


def _eval_real(expr: Expr, env: dict, backend: str):
    if isinstance(expr, Const):
        return coerce_scalar(expr.value, backend)
    if isinstance(expr, Var):
        if expr.name not in env:
            raise UndeclaredVariable(f"variable {expr.name!r} has no assigned value")
        return env[expr.name]
    if isinstance(expr, FermatConst):
        raise DomainError("a Fermat literal cannot be evaluated over the reals")
    if isinstance(expr, Add):
        return _eval_real(expr.left, env, backend) + _eval_real(expr.right, env, backend)
    if isinstance(expr, Sub):
        return _eval_real(expr.left, env, backend) - _eval_real(expr.right, env, backend)
    if isinstance(expr, Mul):
        return _eval_real(expr.left, env, backend) * _eval_real(expr.right, env, backend)
    if isinstance(expr, Div):
        denom = _eval_real(expr.right, env, backend)
        if denom == 0:
            raise DomainError("division by zero")
        return _eval_real(expr.left, env, backend) / denom
    if isinstance(expr, Neg):
        return -_eval_real(expr.arg, env, backend)
    if isinstance(expr, IntPow):
        return _eval_real(expr.base, env, backend) ** expr.power
    if isinstance(expr, Prim):
        return _prim_real(expr.name, _eval_real(expr.arg, env, backend), backend)
    raise TypeError(f"cannot evaluate {type(expr).__name__}")
