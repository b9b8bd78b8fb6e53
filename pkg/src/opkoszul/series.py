"""Exact truncated power series in t over the rationals or over rational
polynomials in u: ring operations, composition, compositional reversion,
elementary functions, the generating-series Koszulness tests, and order-1
differential-algebraic verification.

All arithmetic is exact; operations on series of different orders truncate
to the smaller order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import ParseError
from .upoly import UPoly

DEFAULT_ORDER = 30


def _is_zero(c) -> bool:
    if isinstance(c, UPoly):
        return c.is_zero()
    return c == 0


def _is_negative(c) -> bool:
    if isinstance(c, UPoly):
        return c.has_negative_coeff()
    return c < 0


def _invertible_scalar(c):
    """The inverse of a coefficient when it is an invertible scalar."""
    if isinstance(c, UPoly):
        if not c.is_constant() or c.is_zero():
            raise ValueError(f"coefficient {c} is not an invertible scalar")
        return Fraction(1) / c.constant_value()
    if c == 0:
        raise ValueError("coefficient 0 is not invertible")
    return Fraction(1) / c


class ExactSeries:
    """A truncated series c0 + c1*t + ... + cN*t^N with exact coefficients."""

    __slots__ = ("coeffs", "provenance")

    def __init__(self, coeffs, provenance: str = "expression"):
        coeffs = tuple(
            c if isinstance(c, UPoly) else Fraction(c) for c in coeffs
        )
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "provenance", provenance)

    def __setattr__(self, name, value):
        raise AttributeError("ExactSeries is immutable")

    # -- constructors --

    @staticmethod
    def zero(order: int) -> "ExactSeries":
        return ExactSeries([Fraction(0)] * (order + 1))

    @staticmethod
    def const(value, order: int) -> "ExactSeries":
        coeffs = [Fraction(0)] * (order + 1)
        coeffs[0] = value
        return ExactSeries(coeffs)

    @staticmethod
    def t(order: int) -> "ExactSeries":
        coeffs = [Fraction(0)] * (order + 1)
        if order >= 1:
            coeffs[1] = Fraction(1)
        return ExactSeries(coeffs)

    @staticmethod
    def u_const(order: int) -> "ExactSeries":
        coeffs = [Fraction(0)] * (order + 1)
        coeffs[0] = UPoly.u(1)
        return ExactSeries(coeffs)

    # -- basics --

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, n: int):
        return self.coeffs[n]

    def truncate(self, order: int) -> "ExactSeries":
        if order >= self.order:
            return self
        return ExactSeries(self.coeffs[: order + 1], self.provenance)

    def extend(self, order: int) -> "ExactSeries":
        """Zero-pad up to the given order (the tail is only a placeholder)."""
        if order <= self.order:
            return self
        pad = (Fraction(0),) * (order - self.order)
        return ExactSeries(self.coeffs + pad, self.provenance)

    def is_zero(self) -> bool:
        return all(_is_zero(c) for c in self.coeffs)

    def first_nonzero(self):
        for n, c in enumerate(self.coeffs):
            if not _is_zero(c):
                return n, c
        return None

    def __eq__(self, other):
        if not isinstance(other, ExactSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return all(
            _coeff_eq(self.coeffs[i], other.coeffs[i]) for i in range(n + 1)
        )

    def __hash__(self):
        return hash(self.coeffs)

    # -- ring operations --

    def _binop(self, other, op):
        n = min(self.order, other.order)
        return ExactSeries(
            [op(self.coeffs[i], other.coeffs[i]) for i in range(n + 1)]
        )

    def __add__(self, other):
        other = _coerce(other, self.order)
        return self._binop(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other, self.order)
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return _coerce(other, self.order) - self

    def __neg__(self):
        return ExactSeries([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, UPoly)):
            return ExactSeries([c * other for c in self.coeffs])
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if _is_zero(a):
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if not _is_zero(b):
                    out[i + j] = out[i + j] + a * b
        return ExactSeries(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * Fraction(1, 1) / _coerce(other, self.order)
        if isinstance(other, UPoly):
            other = _coerce(other, self.order)
        n = min(self.order, other.order)
        inv0 = _invertible_scalar(other.coeffs[0])
        out = []
        for k in range(n + 1):
            acc = self.coeffs[k]
            for i in range(k):
                acc = acc - out[i] * other.coeffs[k - i]
            out.append(acc * inv0)
        return ExactSeries(out)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            raise ValueError("series exponents must be integers")
        if exponent < 0:
            return (ExactSeries.const(1, self.order) / self) ** (-exponent)
        result = ExactSeries.const(Fraction(1), self.order)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # -- composition and reversion --

    def compose(self, g: "ExactSeries") -> "ExactSeries":
        """self(g(t)); requires g(0) = 0."""
        if not _is_zero(g.coeffs[0]):
            raise ValueError("composition requires the inner constant term 0")
        n = min(self.order, g.order)
        g = g.truncate(n)
        result = ExactSeries.const(self.coeffs[n], n)
        for k in range(n - 1, -1, -1):
            result = result * g + _coerce(self.coeffs[k], n)
        return result

    def derive(self) -> "ExactSeries":
        if self.order == 0:
            return ExactSeries([Fraction(0)])
        return ExactSeries(
            [self.coeffs[i] * i for i in range(1, self.order + 1)]
        )

    def reverse(self) -> "ExactSeries":
        """Compositional inverse g with self(g(t)) = t, computed by
        order-doubling Newton iteration on the truncated composition
        equation; requires constant term 0 and invertible linear term."""
        if not _is_zero(self.coeffs[0]):
            raise ValueError("reversion requires constant term 0")
        inv1 = _invertible_scalar(self.coeffs[1])
        n = self.order
        tser = ExactSeries.t(n)
        g = ExactSeries([Fraction(0), inv1])
        fprime = self.derive()
        k = 1
        while k < n:
            k = min(2 * k, n)
            fk = self.truncate(k)
            gk = ExactSeries(tuple(g.coeffs) + (Fraction(0),) * (k - g.order))
            err = fk.compose(gk) - tser.truncate(k)
            g = gk - err / fprime.truncate(k - 1 if k > 1 else 1).compose(
                gk.truncate(k)
            ).truncate(k)
            g = g.truncate(k)
        return g

    # -- elementary functions --

    def exp(self) -> "ExactSeries":
        if not _is_zero(self.coeffs[0]):
            raise ValueError("exp requires constant term 0")
        n = self.order
        result = ExactSeries.const(Fraction(1), n)
        power = ExactSeries.const(Fraction(1), n)
        for k in range(1, n + 1):
            power = power * self
            result = result + power * Fraction(1, factorial(k))
        return result

    def log(self) -> "ExactSeries":
        if not _coeff_eq(self.coeffs[0], Fraction(1)):
            raise ValueError("ln requires constant term 1")
        n = self.order
        x = self - ExactSeries.const(Fraction(1), n)
        result = ExactSeries.zero(n)
        power = ExactSeries.const(Fraction(1), n)
        for k in range(1, n + 1):
            power = power * x
            result = result + power * Fraction((-1) ** (k + 1), k)
        return result

    def sqrt(self) -> "ExactSeries":
        if not _coeff_eq(self.coeffs[0], Fraction(1)):
            raise ValueError("sqrt requires constant term 1")
        n = self.order
        x = self - ExactSeries.const(Fraction(1), n)
        result = ExactSeries.zero(n)
        power = ExactSeries.const(Fraction(1), n)
        coeff = Fraction(1)
        for k in range(n + 1):
            if k > 0:
                power = power * x
                coeff = coeff * (Fraction(1, 2) - (k - 1)) / k
            result = result + power * coeff
        return result

    def subs_negative_t(self) -> "ExactSeries":
        """The series f(-t)."""
        return ExactSeries(
            [c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)]
        )

    # -- display --

    def __str__(self):
        parts = []
        for n, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            if isinstance(c, UPoly) and not c.is_constant():
                cs = f"({c})"
            else:
                value = c.constant_value() if isinstance(c, UPoly) else c
                cs = str(value)
            term = cs if n == 0 else (f"{cs}*t" if n == 1 else f"{cs}*t^{n}")
            parts.append(term)
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"<series {self} + O(t^{self.order + 1})>"

    def factorial_form(self) -> str:
        """Display with coefficients scaled by n!."""
        parts = []
        for n, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            scaled = c * factorial(n)
            cs = f"({scaled})" if isinstance(scaled, UPoly) and not scaled.is_constant() else str(scaled)
            if n == 0:
                parts.append(cs)
            else:
                parts.append(f"{cs}/{n}!*t^{n}" if n > 1 else f"{cs}*t")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        coeffs = []
        for c in self.coeffs:
            if isinstance(c, UPoly):
                coeffs.append(c.to_json())
            else:
                coeffs.append(f"{c.numerator}/{c.denominator}")
        return {"order": self.order, "coeffs": coeffs, "provenance": self.provenance}


def _coerce(value, order: int) -> ExactSeries:
    if isinstance(value, ExactSeries):
        return value
    return ExactSeries.const(value, order)


def _coeff_eq(a, b) -> bool:
    if isinstance(a, UPoly) or isinstance(b, UPoly):
        a = a if isinstance(a, UPoly) else UPoly.const(a)
        b = b if isinstance(b, UPoly) else UPoly.const(b)
        return a == b
    return a == b


def from_dims(table, order: int | None = None) -> ExactSeries:
    """Exponential generating series of a dimension table: the coefficient
    of t^n is dim(n)/n! (a u-polynomial for graded tables)."""
    upto = table.max_arity if order is None else min(order, table.max_arity)
    coeffs = [Fraction(0)]
    for n in range(1, upto + 1):
        if table.graded_entries:
            coeffs.append(table.graded(n) / factorial(n))
        else:
            coeffs.append(Fraction(table.dim(n), factorial(n)))
    return ExactSeries(coeffs, provenance="computed-from-dims")


def from_dim_list(dims, provenance: str = "computed-from-dims") -> ExactSeries:
    coeffs = [Fraction(0)]
    for n, d in enumerate(dims, start=1):
        coeffs.append(d / Fraction(factorial(n)) if isinstance(d, UPoly) else Fraction(d, factorial(n)))
    return ExactSeries(coeffs, provenance=provenance)


# --- expression grammar -----------------------------------------------------


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens = []
        self._scan()
        self.index = 0

    def _scan(self):
        text = self.text
        pos = 0
        while pos < len(text):
            ch = text[pos]
            if ch.isspace():
                pos += 1
                continue
            if ch.isdigit():
                start = pos
                while pos < len(text) and text[pos].isdigit():
                    pos += 1
                self.tokens.append(("num", int(text[start:pos]), start))
                continue
            if ch.isalpha():
                start = pos
                while pos < len(text) and text[pos].isalnum():
                    pos += 1
                name = text[start:pos]
                if pos < len(text) and text[pos] == "'":
                    pos += 1
                    name += "'"
                self.tokens.append(("name", name, start))
                continue
            if ch in "+-*/^()":
                self.tokens.append((ch, ch, pos))
                pos += 1
                continue
            raise ParseError("unexpected character", text, pos)
        self.tokens.append(("end", None, len(text)))

    def peek(self):
        return self.tokens[self.index]

    def next(self):
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}", self.text, tok[2])
        return tok


_FUNCTIONS = ("exp", "ln", "sqrt", "rev", "d")


class _ExprParser:
    """Recursive-descent parser shared by series expressions and
    differential-equation expressions; env maps variable names to series."""

    def __init__(self, text: str, env: dict):
        self.lex = _Lexer(text)
        self.env = env
        self.used: set = set()

    def parse(self) -> ExactSeries:
        result = self.expr()
        tok = self.lex.peek()
        if tok[0] != "end":
            raise ParseError("unexpected input", self.lex.text, tok[2])
        return result

    def expr(self) -> ExactSeries:
        node = self.term()
        while self.lex.peek()[0] in ("+", "-"):
            op = self.lex.next()[0]
            rhs = self.term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term(self) -> ExactSeries:
        node = self.factor()
        while self.lex.peek()[0] in ("*", "/"):
            op = self.lex.next()[0]
            rhs = self.factor()
            node = node * rhs if op == "*" else node / rhs
        return node

    def factor(self) -> ExactSeries:
        if self.lex.peek()[0] == "-":
            self.lex.next()
            return -self.factor()
        if self.lex.peek()[0] == "+":
            self.lex.next()
            return self.factor()
        node = self.atom()
        while self.lex.peek()[0] == "^":
            self.lex.next()
            sign = 1
            if self.lex.peek()[0] == "-":
                self.lex.next()
                sign = -1
            tok = self.lex.expect("num")
            node = node ** (sign * tok[1])
        return node

    def atom(self) -> ExactSeries:
        tok = self.lex.next()
        if tok[0] == "num":
            return ExactSeries.const(Fraction(tok[1]), self.env["__order__"])
        if tok[0] == "(":
            node = self.expr()
            self.lex.expect(")")
            return node
        if tok[0] == "name":
            name = tok[1]
            if name in _FUNCTIONS:
                self.lex.expect("(")
                arg = self.expr()
                self.lex.expect(")")
                return self.apply(name, arg, tok[2])
            if name in self.env:
                self.used.add(name)
                return self.env[name]
            raise ParseError(f"unknown name {name!r}", self.lex.text, tok[2])
        raise ParseError("expected a value", self.lex.text, tok[2])

    def apply(self, name: str, arg: ExactSeries, pos: int) -> ExactSeries:
        try:
            if name == "exp":
                return arg.exp()
            if name == "ln":
                return arg.log()
            if name == "sqrt":
                return arg.sqrt()
            if name == "rev":
                return arg.reverse()
            if name == "d":
                return arg.derive()
        except ValueError as exc:
            raise ParseError(str(exc), self.lex.text, pos) from exc
        raise AssertionError(name)


def elementary(text: str, order: int = DEFAULT_ORDER,
               with_u: bool = True) -> ExactSeries:
    """Exact expansion of a closed-form expression in t (and optionally u)."""
    env = {"__order__": order, "t": ExactSeries.t(order)}
    if with_u:
        env["u"] = ExactSeries.u_const(order)
    return _ExprParser(text, env).parse()


# --- differential-algebraic verification -----------------------------------


@dataclass(frozen=True)
class OdeExpression:
    """A polynomial expression in t, f and f'; at least one of f, f' must
    occur."""

    text: str

    def substitute(self, f: ExactSeries) -> ExactSeries:
        order = f.order
        env = {
            "__order__": order,
            "t": ExactSeries.t(order),
            "f": f,
            "f'": f.derive(),
        }
        parser = _ExprParser(self.text, env)
        result = parser.parse()
        if not parser.used & {"f", "f'"}:
            raise ValueError("equation must mention f or f'")
        return result

    def __str__(self):
        return self.text


@dataclass(frozen=True)
class OdeResult:
    ok: bool
    checked_order: int
    first_nonzero: tuple | None  # (degree, coefficient)


def verify_ode(f: ExactSeries, equation, order: int | None = None) -> OdeResult:
    """Substitute f and its derivative into the equation; passes when every
    coefficient vanishes up to one below the working order."""
    if not isinstance(equation, OdeExpression):
        equation = OdeExpression(equation)
    if order is not None:
        f = f.truncate(order)
    value = equation.substitute(f).truncate(f.order - 1)
    nz = value.first_nonzero()
    return OdeResult(ok=nz is None, checked_order=value.order, first_nonzero=nz)


# --- Koszulness series tests ------------------------------------------------


@dataclass(frozen=True)
class GkNegative:
    degree: int
    coefficient: object  # the full t^degree coefficient
    negative_part: object  # the strictly negative content being reported

    def __str__(self):
        return f"{self.negative_part} * t^{self.degree}"


def _check_gk_input(f: ExactSeries):
    if not _is_zero(f.coeffs[0]) or not _coeff_eq(f.coeffs[1], Fraction(1)):
        raise ValueError(
            "the test needs a series with zero constant term and linear term 1"
        )


def gk_first_negative(f: ExactSeries, order: int | None = None):
    """First strictly negative coefficient of the compositional reverse of
    -f(-t); None when no negative coefficient appears up to the order.
    For u-polynomial coefficients any negative u-coefficient counts, and the
    negative part is reported."""
    if order is not None:
        f = f.truncate(order)
    _check_gk_input(f)
    g = (-f.subs_negative_t()).reverse()
    for n, c in enumerate(g.coeffs):
        if _is_negative(c):
            negative = c.negative_part() if isinstance(c, UPoly) else c
            return GkNegative(degree=n, coefficient=c, negative_part=negative)
    return None


def gk_pair_check(f: ExactSeries, g: ExactSeries,
                  order: int | None = None) -> ExactSeries:
    """Defect g(-f(-t)) - t; the zero series certifies the pairing identity
    to this order."""
    if order is not None:
        f = f.truncate(order)
        g = g.truncate(order)
    _check_gk_input(f)
    _check_gk_input(g)
    n = min(f.order, g.order)
    inner = -f.subs_negative_t().truncate(n)
    return g.truncate(n).compose(inner) - ExactSeries.t(n)
