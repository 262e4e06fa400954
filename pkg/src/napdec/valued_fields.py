"""Exact arithmetic in discretely valued fields.

Three concrete fields are supported:

* ``Q`` with the p-adic valuation (elements are :class:`fractions.Fraction`),
* ``K0(t)`` with the t-adic valuation (order of vanishing at ``t = 0``),
* ``K0(t)`` with the degree valuation ``|f/g| = (1/rho)**(deg f - deg g)``,

where the constant field ``K0`` is ``Q`` or a prime field ``F_p``.  Rational
functions are :class:`RatFunc` instances kept in canonical form (coprime
numerator and monic denominator), so ``==`` is structural.

Valuations are returned as integer exponents ``v`` with ``|x| = rho**v``;
zero has exponent ``math.inf``.  :func:`magnitude` turns an exponent into an
exact :class:`~fractions.Fraction`.
"""

from __future__ import annotations

import enum
import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from flint import fmpq, fmpq_poly, nmod_poly

from .errors import DivisionByZero, ParseError

Val = Union[int, float]  # int exponent, or math.inf for zero
ZERO_VAL = math.inf


def _poly(coeffs, p: int):
    if p == 0:
        return fmpq_poly([fmpq(c.numerator, c.denominator) if isinstance(c, Fraction) else c
                          for c in coeffs])
    return nmod_poly([_mod_coeff(c, p) for c in coeffs], p)


def _mod_coeff(c, p: int) -> int:
    if isinstance(c, Fraction):
        if c.denominator % p == 0:
            raise DivisionByZero(f"{c} has no image in F_{p}")
        return c.numerator * pow(c.denominator, -1, p) % p
    return int(c) % p


def _coeff_value(c, p: int):
    if p == 0:
        return Fraction(int(c.p), int(c.q))
    return int(c)


class RatFunc:
    """Element of ``K0(t)``: ``num/den`` with coprime polys, ``den`` monic.

    ``p`` is the characteristic of the constant field (0 for ``Q``).
    """

    __slots__ = ("num", "den", "p")

    def __init__(self, num, den=None, p: int = 0):
        if not isinstance(num, (fmpq_poly, nmod_poly)):
            num = _poly(num if isinstance(num, (list, tuple)) else [num], p)
        if den is None:
            den = _poly([1], p)
        elif not isinstance(den, (fmpq_poly, nmod_poly)):
            den = _poly(den if isinstance(den, (list, tuple)) else [den], p)
        self.p = p
        self.num, self.den = _reduce(num, den)

    @classmethod
    def _raw(cls, num, den, p):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj.p = p
        return obj

    @classmethod
    def _from_monic(cls, num, den, p):
        # den is a product of monic polys, so only the gcd needs removing
        if den == 1:
            return cls._raw(num, den, p)
        if num == 0:
            return cls._raw(num, _poly([1], p), p)
        g = num.gcd(den)
        if g != 1:
            num = num // g
            den = den // g
        return cls._raw(num, den, p)

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.p != self.p:
                raise TypeError("elements of different function fields")
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc._raw(_poly([other], self.p), _poly([1], self.p), self.p)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return RatFunc._from_monic(self.num + o.num, self.den, self.p)
        return RatFunc._from_monic(self.num * o.den + o.num * self.den,
                                   self.den * o.den, self.p)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den, self.p)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == 1 and o.den == 1:
            return RatFunc._raw(self.num * o.num, self.den, self.p)
        return RatFunc._from_monic(self.num * o.num, self.den * o.den, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num == 0:
            raise DivisionByZero("inverse of zero")
        lc = self.num.leading_coefficient()
        return RatFunc._raw(self.den / lc, self.num / lc, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc._raw(self.num ** k, self.den ** k, self.p)

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.p == other.p and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.den == 1 and self.num.degree() <= 0 and self.p == 0:
            return hash(self.constant_value())
        return hash((self.p, self.num_coeffs(), self.den_coeffs()))

    def __bool__(self):
        return self.num != 0

    # -- inspection -------------------------------------------------------

    def num_coeffs(self) -> tuple:
        return tuple(_coeff_value(c, self.p) for c in self.num.coeffs())

    def den_coeffs(self) -> tuple:
        return tuple(_coeff_value(c, self.p) for c in self.den.coeffs())

    def constant_value(self):
        cs = self.num_coeffs()
        return cs[0] if cs else (Fraction(0) if self.p == 0 else 0)

    def is_polynomial(self) -> bool:
        return self.den == 1

    def __repr__(self):
        return f"RatFunc({format_ratfunc(self)!r}, p={self.p})"

    def __str__(self):
        return format_ratfunc(self)


def _reduce(num, den):
    if den == 0:
        raise DivisionByZero("zero denominator")
    if num == 0:
        return num, den.__class__([1], *_mod_args(den))
    g = num.gcd(den)
    if g != 1:
        num = num // g
        den = den // g
    lc = den.leading_coefficient()
    if lc != 1:
        num = num / lc
        den = den / lc
    return num, den


def _mod_args(poly):
    return (poly.modulus(),) if isinstance(poly, nmod_poly) else ()


# ---------------------------------------------------------------------------
# Field contexts
# ---------------------------------------------------------------------------


class Kind(enum.Enum):
    PADIC = "padic"
    TADIC = "tadic"
    DEGREE = "degree"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


@dataclass(frozen=True)
class FieldCtx:
    """A concrete discretely valued field.

    For ``Kind.PADIC`` the field is ``Q`` and ``p`` is the prime of the
    valuation.  For the function-field kinds ``p`` is the characteristic of
    the constant field (``0`` means ``Q``).
    """

    kind: Kind
    p: int
    rho: Fraction

    def __post_init__(self):
        if not (0 < self.rho < 1):
            raise ValueError(f"rho must lie in (0, 1), got {self.rho}")
        if self.kind is Kind.PADIC and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.kind is not Kind.PADIC and self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"F_{self.p} is not a prime field")

    @classmethod
    def padic(cls, p: int, rho=None) -> "FieldCtx":
        return cls(Kind.PADIC, p, Fraction(rho) if rho is not None else Fraction(1, p))

    @classmethod
    def tadic(cls, base: int = 0, rho=Fraction(1, 2)) -> "FieldCtx":
        return cls(Kind.TADIC, base, Fraction(rho))

    @classmethod
    def degree(cls, base: int = 0, rho=Fraction(1, 2)) -> "FieldCtx":
        return cls(Kind.DEGREE, base, Fraction(rho))

    @property
    def is_function_field(self) -> bool:
        return self.kind is not Kind.PADIC

    @property
    def characteristic(self) -> int:
        """Characteristic of the field itself."""
        return 0 if self.kind is Kind.PADIC else self.p

    def elem(self, value):
        """Coerce an int, Fraction, string or element into this field."""
        if isinstance(value, str):
            return parse_elem(self, value)
        if self.kind is Kind.PADIC:
            if isinstance(value, RatFunc):
                raise TypeError("rational function in a p-adic context")
            return Fraction(value)
        if isinstance(value, RatFunc):
            if value.p != self.p:
                raise TypeError("element of a different function field")
            return value
        return RatFunc._raw(_poly([value], self.p), _poly([1], self.p), self.p)

    @property
    def zero(self):
        return self.elem(0)

    @property
    def one(self):
        return self.elem(1)

    @property
    def t(self) -> RatFunc:
        if not self.is_function_field:
            raise TypeError("Q has no variable t")
        return RatFunc._raw(_poly([0, 1], self.p), _poly([1], self.p), self.p)

    def poly(self, coeffs) -> RatFunc:
        """Polynomial with ascending ``coeffs``."""
        return RatFunc._raw(_poly(list(coeffs), self.p), _poly([1], self.p), self.p)

    def describe(self) -> str:
        base = "Q" if self.p == 0 else f"F_{self.p}"
        if self.kind is Kind.PADIC:
            return f"Q with |.|_{self.p}"
        return f"{base}(t) with the {self.kind.value} valuation"

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "p": self.p, "rho": str(self.rho)}

    @classmethod
    def from_json(cls, data: dict) -> "FieldCtx":
        kind = Kind(data["kind"])
        if kind is Kind.PADIC:
            return cls.padic(int(data["p"]), data.get("rho") and Fraction(data["rho"]))
        base = _parse_base(data.get("base", data.get("p", 0)))
        return cls(kind, base, Fraction(data.get("rho", "1/2")))


def _parse_base(base) -> int:
    if isinstance(base, int):
        return base
    base = str(base).strip()
    if base in ("Q", "QQ", "0"):
        return 0
    m = re.fullmatch(r"F_?(\d+)", base)
    if not m:
        raise ParseError(f"unknown constant field {base!r}")
    return int(m.group(1))


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def arith(op: str, x, y=None):
    """Apply ``op`` in {add, sub, mul, div, neg, inv}; exact, never rounds."""
    try:
        if op == "add":
            return x + y
        if op == "sub":
            return x - y
        if op == "mul":
            return x * y
        if op == "div":
            return x / y
        if op == "neg":
            return -x
        if op == "inv":
            return 1 / x
    except ZeroDivisionError as exc:
        raise DivisionByZero(str(exc)) from exc
    raise ValueError(f"unknown operation {op!r}")


def _ord_int(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _ord_t(poly) -> int:
    for i, c in enumerate(poly.coeffs()):
        if c != 0:
            return i
    raise AssertionError("zero polynomial has no order")


def valuation(ctx: FieldCtx, x) -> Val:
    """Exponent ``v`` with ``|x| = rho**v``; ``math.inf`` for zero."""
    if not x:
        return ZERO_VAL
    if ctx.kind is Kind.PADIC:
        x = Fraction(x)
        return _ord_int(x.numerator, ctx.p) - _ord_int(x.denominator, ctx.p)
    x = ctx.elem(x)
    if ctx.kind is Kind.TADIC:
        return _ord_t(x.num) - _ord_t(x.den)
    return x.den.degree() - x.num.degree()


def magnitude(v: Val, ctx: FieldCtx) -> Fraction:
    if v == ZERO_VAL:
        return Fraction(0)
    return ctx.rho ** v


def abs_value(ctx: FieldCtx, x) -> Fraction:
    return magnitude(valuation(ctx, x), ctx)


class RingPosition(enum.Enum):
    INTEGER_UNIT = "Integer_Unit"
    INTEGER_MAXIMAL_IDEAL = "Integer_MaximalIdeal"
    NOT_INTEGER = "NotInteger"


def ring_position(ctx: FieldCtx, x) -> RingPosition:
    v = valuation(ctx, x)
    if v == 0:
        return RingPosition.INTEGER_UNIT
    if v > 0:
        return RingPosition.INTEGER_MAXIMAL_IDEAL
    return RingPosition.NOT_INTEGER


def uniformizer(ctx: FieldCtx):
    """An element of valuation 1: ``p``, ``t`` or ``1/t``."""
    if ctx.kind is Kind.PADIC:
        return Fraction(ctx.p)
    return ctx.t if ctx.kind is Kind.TADIC else 1 / ctx.t


def residue_characteristic(ctx: FieldCtx) -> int:
    return ctx.p


# ---------------------------------------------------------------------------
# Text form
# ---------------------------------------------------------------------------


def _format_poly(coeffs) -> str:
    terms = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        if k == 0:
            terms.append(str(c))
            continue
        mono = "t" if k == 1 else f"t^{k}"
        if c == 1:
            terms.append(mono)
        elif c == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{c}*{mono}")
    if not terms:
        return "0"
    out = terms[0]
    for term in terms[1:]:
        out += term if term.startswith("-") else "+" + term
    return out


def _nterms(coeffs) -> int:
    return sum(1 for c in coeffs if c != 0)


def format_ratfunc(x: RatFunc) -> str:
    nc, dc = x.num_coeffs(), x.den_coeffs()
    num = _format_poly(nc)
    if x.den == 1:
        return num
    if _nterms(nc) > 1:
        num = f"({num})"
    den = _format_poly(dc)
    if _nterms(dc) > 1:
        den = f"({den})"
    return f"{num}/{den}"


def format_elem(ctx: FieldCtx, x) -> str:
    if ctx.kind is Kind.PADIC:
        return str(Fraction(x))
    return format_ratfunc(ctx.elem(x))


_TOKEN = re.compile(r"\s*(?:(\d+)|(t)|([-+*/^()]))")


def _tokenize(text: str) -> list:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        num, var, sym = m.groups()
        out.append(("num", int(num)) if num else ("t", None) if var else (sym, None))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, ctx: FieldCtx, text: str):
        self.ctx = ctx
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind=None):
        if self.i >= len(self.toks):
            raise ParseError(f"unexpected end of {self.text!r}")
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty element")
        val = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek() in ("*", "/", "num", "t", "("):
            if self.peek() in ("*", "/"):
                op = self.take()[0]
            else:
                op = "*"  # juxtaposition, e.g. "2t"
            rhs = self.unary()
            if op == "*":
                val = val * rhs
            else:
                if not rhs:
                    raise DivisionByZero(f"division by zero in {self.text!r}")
                val = val / rhs
        return val

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            exp = sign * self.take("num")[1]
            if exp < 0 and not base:
                raise DivisionByZero("negative power of zero")
            base = base ** exp
        return base

    def atom(self):
        kind, value = self.take()
        if kind == "num":
            return self.ctx.elem(value)
        if kind == "t":
            return self.ctx.t
        if kind == "(":
            val = self.expr()
            self.take(")")
            return val
        raise ParseError(f"unexpected {kind!r} in {self.text!r}")


def parse_elem(ctx: FieldCtx, text: str):
    """Parse the text form (``"3/4"``, ``"(1+t)/(1-t^2)"``) into ``ctx``."""
    return _Parser(ctx, text).parse()


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def random_element(ctx: FieldCtx, rng: random.Random, degree: int = 2,
                   coeff: int = 9, zero_ok: bool = True):
    """Seeded random element; rational functions have monic denominators."""
    while True:
        if ctx.kind is Kind.PADIC:
            num = rng.randint(-coeff, coeff) * ctx.p ** rng.randint(0, 3)
            den = rng.randint(1, coeff) * ctx.p ** rng.randint(0, 3)
            x = Fraction(num, den)
        else:
            num = [rng.randint(-coeff, coeff) for _ in range(rng.randint(0, degree) + 1)]
            d = rng.randint(0, degree)
            den = [rng.randint(-coeff, coeff) for _ in range(d)] + [1]
            x = RatFunc(num, den, ctx.p)
        if zero_ok or x:
            return x


def random_integral(ctx: FieldCtx, rng: random.Random, degree: int = 2, coeff: int = 9):
    """Seeded random element of ``D_K`` (shifted by a power of the uniformizer)."""
    x = random_element(ctx, rng, degree=degree, coeff=coeff)
    v = valuation(ctx, x)
    return x if v >= 0 else x * uniformizer(ctx) ** (-v)
