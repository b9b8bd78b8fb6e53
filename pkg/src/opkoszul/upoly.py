"""Exact polynomials in one parameter u with rational coefficients.

Used as series coefficients when dimensions are refined by the bracket-weight
grading.  Arithmetic interoperates with int and Fraction scalars.
"""

from __future__ import annotations

from fractions import Fraction


def _as_upoly(x):
    if isinstance(x, UPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return UPoly({0: Fraction(x)})
    return NotImplemented


class UPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for k, v in coeffs.items():
                v = Fraction(v)
                if v != 0:
                    clean[int(k)] = v
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("UPoly is immutable")

    @staticmethod
    def u(power: int = 1) -> "UPoly":
        return UPoly({power: Fraction(1)})

    @staticmethod
    def const(x) -> "UPoly":
        return UPoly({0: Fraction(x)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return all(k == 0 for k in self.coeffs)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.coeffs.get(0, Fraction(0))

    def degree(self) -> int:
        return max(self.coeffs, default=0)

    def has_negative_coeff(self) -> bool:
        return any(v < 0 for v in self.coeffs.values())

    def negative_part(self) -> "UPoly":
        return UPoly({k: v for k, v in self.coeffs.items() if v < 0})

    def subs_one(self) -> Fraction:
        """Evaluation at u = 1."""
        return sum(self.coeffs.values(), Fraction(0))

    def __add__(self, other):
        other = _as_upoly(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return UPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return UPoly({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        other = _as_upoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_upoly(other) - self

    def __mul__(self, other):
        other = _as_upoly(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                k = k1 + k2
                out[k] = out.get(k, Fraction(0)) + v1 * v2
        return UPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return UPoly({k: v / other for k, v in self.coeffs.items()})
        other = _as_upoly(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.is_constant():
            raise ZeroDivisionError("can only divide by a constant polynomial")
        return self / other.constant_value()

    def __eq__(self, other):
        other = _as_upoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            v = self.coeffs[k]
            if k == 0:
                parts.append(str(v))
            else:
                u = "u" if k == 1 else f"u^{k}"
                if v == 1:
                    parts.append(u)
                elif v == -1:
                    parts.append(f"-{u}")
                else:
                    parts.append(f"{v}*{u}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __repr__(self):
        return f"UPoly({self})"

    def to_json(self):
        return {f"u^{k}": f"{v.numerator}/{v.denominator}" for k, v in sorted(self.coeffs.items())}
