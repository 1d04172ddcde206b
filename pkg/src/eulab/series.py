"""Truncated formal power series in z with exact polynomial coefficients.

Every value carries its own truncation order; binary operations truncate at
the minimum of the operands' orders, so precision can only be lost visibly.
Division is supported whenever the constant term is invertible or, more
generally, whenever every coefficient division happens to be exact in the
polynomial ring (this is how quotients like (y-x)/(y*e^{xz}-x*e^{yz}) stay
polynomial even though y-x is not a unit).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, isqrt
from typing import Callable, Mapping, Sequence, Union

from .errors import (
    InexactDivisionError,
    InvalidParamError,
    NonInvertibleConstantTermError,
    NonzeroConstantTermError,
)
from .exactalg import Poly, Rational

PolyLike = Union[Poly, int, Fraction]


def _as_poly(v: PolyLike) -> Poly:
    return v if isinstance(v, Poly) else Poly.const(v)


class Series:
    """Power series  sum_{n<=order} coeffs[n] * z^n,  coefficients exact Polys."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence[PolyLike], order: int | None = None):
        cs = [_as_poly(c) for c in coeffs]
        if order is None:
            if not cs:
                raise ValueError("a series needs at least its constant coefficient")
            order = len(cs) - 1
        if order < 0:
            raise ValueError("order must be >= 0")
        if len(cs) < order + 1:
            cs.extend([Poly.zero()] * (order + 1 - len(cs)))
        else:
            cs = cs[: order + 1]
        self.order = order
        self.coeffs = tuple(cs)

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, value: PolyLike, order: int) -> Series:
        return cls([_as_poly(value)], order)

    @classmethod
    def zero(cls, order: int) -> Series:
        return cls([Poly.zero()], order)

    @classmethod
    def z(cls, order: int) -> Series:
        return cls([Poly.zero(), Poly.one()], order)

    @classmethod
    def exp_zp(cls, p: PolyLike, order: int) -> Series:
        """e^{z*p} = sum p^n z^n / n!  for a z-free multiplier p."""
        p = _as_poly(p)
        coeffs = [Poly.one()]
        for n in range(1, order + 1):
            coeffs.append((coeffs[-1] * p).scale(Fraction(1, n)))
        return cls(coeffs, order)

    # -- helpers -----------------------------------------------------------

    def coefficient(self, n: int) -> Poly:
        if not 0 <= n <= self.order:
            raise ValueError(f"coefficient index {n} outside truncation order {self.order}")
        return self.coeffs[n]

    def egf_coefficient(self, n: int) -> Poly:
        """n! times the z^n coefficient: the n-th EGF numerator polynomial."""
        return self.coefficient(n).scale(factorial(n))

    def truncate(self, order: int) -> Series:
        if order >= self.order:
            return self
        return Series(self.coeffs[: order + 1], order)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        inner = " + ".join(f"({c})z^{n}" for n, c in enumerate(self.coeffs) if c)
        return f"Series[O(z^{self.order + 1})]({inner or '0'})"

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: Series | PolyLike) -> Series:
        if not isinstance(other, Series):
            other = Series.const(other, self.order)
        n = min(self.order, other.order)
        return Series([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)

    __radd__ = __add__

    def __sub__(self, other: Series | PolyLike) -> Series:
        if not isinstance(other, Series):
            other = Series.const(other, self.order)
        n = min(self.order, other.order)
        return Series([self.coeffs[i] - other.coeffs[i] for i in range(n + 1)], n)

    def __neg__(self) -> Series:
        return Series([-c for c in self.coeffs], self.order)

    def __mul__(self, other: Series | PolyLike) -> Series:
        if isinstance(other, (Poly, int, Fraction)):
            p = _as_poly(other)
            return Series([c * p for c in self.coeffs], self.order)
        if not isinstance(other, Series):
            return NotImplemented
        n = min(self.order, other.order)
        out = [Poly.zero()] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return Series(out, n)

    def __rmul__(self, other: PolyLike) -> Series:
        return self.__mul__(other)

    def div(self, other: Series) -> Series:
        """Quotient self / other, exact at every coefficient.

        Raises NonInvertibleConstantTermError when the divisor constant term
        is zero or some required coefficient division is inexact.
        """
        n = min(self.order, other.order)
        b0 = other.coeffs[0]
        if not b0:
            raise NonInvertibleConstantTermError("divisor has zero constant term")
        out: list[Poly] = []
        try:
            for i in range(n + 1):
                acc = self.coeffs[i]
                for j in range(1, i + 1):
                    bj = other.coeffs[j]
                    if bj:
                        acc = acc - out[i - j] * bj
                out.append(acc.divexact(b0))
        except InexactDivisionError as exc:
            raise NonInvertibleConstantTermError(
                "divisor constant term is not invertible and division is not exact"
            ) from exc
        return Series(out, n)

    def __truediv__(self, other: Series) -> Series:
        return self.div(other)

    def exp(self) -> Series:
        """Exponential of a series with zero constant term."""
        if self.coeffs[0]:
            raise NonzeroConstantTermError("exp requires zero constant term")
        n = self.order
        out = [Poly.one()] + [Poly.zero()] * n
        # E' = a' E  gives  m*E_m = sum_{k=1..m} k*a_k*E_{m-k}
        for m in range(1, n + 1):
            acc = Poly.zero()
            for k in range(1, m + 1):
                ak = self.coeffs[k]
                if ak:
                    acc = acc + (ak * out[m - k]).scale(k)
            out[m] = acc.scale(Fraction(1, m))
        return Series(out, n)

    def compose(self, inner: Series) -> Series:
        """self(inner(z)) for an inner series with zero constant term."""
        if inner.coeffs[0]:
            raise NonzeroConstantTermError("composition requires inner constant term zero")
        n = min(self.order, inner.order)
        inner = inner.truncate(n)
        result = Series.const(self.coeffs[n], n)
        for i in range(n - 1, -1, -1):
            result = result * inner + Series.const(self.coeffs[i], n)
        return result

    def diff_z(self) -> Series:
        """d/dz, truncated one order lower."""
        if self.order == 0:
            return Series([Poly.zero()], 0)
        return Series(
            [self.coeffs[i + 1].scale(i + 1) for i in range(self.order)],
            self.order - 1,
        )

    def diff_var(self, var: str) -> Series:
        """Coefficientwise partial derivative in a non-z variable."""
        return Series([c.diff(var) for c in self.coeffs], self.order)

    def map_coeffs(self, fn: Callable[[Poly], Poly]) -> Series:
        return Series([fn(c) for c in self.coeffs], self.order)

    def specialize(self, assignment: Mapping[str, PolyLike]) -> Series:
        sub = {v: _as_poly(p) for v, p in assignment.items()}
        return self.map_coeffs(lambda c: c.subst(sub))


def cos_series(c: Rational, order: int) -> Series:
    """cos(c*z) truncated at the given order."""
    coeffs = [Poly.zero()] * (order + 1)
    for m in range(0, order // 2 + 1):
        coeffs[2 * m] = Poly.const(Fraction((-1) ** m * Fraction(c) ** (2 * m), factorial(2 * m)))
    return Series(coeffs, order)


def sin_series(c: Rational, order: int) -> Series:
    """sin(c*z) truncated at the given order."""
    coeffs = [Poly.zero()] * (order + 1)
    for m in range(0, (order - 1) // 2 + 1):
        coeffs[2 * m + 1] = Poly.const(
            Fraction((-1) ** m * Fraction(c) ** (2 * m + 1), factorial(2 * m + 1))
        )
    return Series(coeffs, order)


def rational_sqrt(value: Rational) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None when irrational."""
    f = Fraction(value)
    if f < 0:
        return None
    num, den = f.numerator, f.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


EGF_NAMES = (
    "trivariate",
    "derangement",
    "fixpoint",
    "bivariate",
    "no-succession",
    "gamma-xy",
)


def _core_quotient(order: int) -> Series:
    # (y - x) / (y e^{xz} - x e^{yz})
    x, y = Poly.var("x"), Poly.var("y")
    den = Series.exp_zp(x, order) * y - Series.exp_zp(y, order) * x
    return Series.const(y - x, order).div(den)


def egf_build(name: str, order: int, params: Mapping[str, Rational] | None = None) -> Series:
    """Build one of the named exponential generating functions, truncated.

    trivariate     e^{z(y+s)} ((y-x)/(y e^{xz}-x e^{yz}))^2
    fixpoint       (y-x) e^{sz} / (y e^{xz}-x e^{yz})
    bivariate      (y-x) e^{yz} / (y e^{xz}-x e^{yz})
    derangement    the fixpoint form specialized at y=1, s=0
    no-succession  (1-x) / (e^{xz} - x e^{z})
    gamma-xy       e^{z(x-1)} (q sec(qz/2) / (q - tan(qz/2)))^2,  q = sqrt(2y-1),
                   evaluated at exact rational parameters (y required, x optional)
    """
    x, y, s = Poly.var("x"), Poly.var("y"), Poly.var("s")
    if name == "trivariate":
        q = _core_quotient(order)
        return Series.exp_zp(y + s, order) * q * q
    if name == "fixpoint":
        return Series.exp_zp(s, order) * _core_quotient(order)
    if name == "bivariate":
        return Series.exp_zp(y, order) * _core_quotient(order)
    if name == "derangement":
        return egf_build("fixpoint", order).specialize({"y": 1, "s": 0})
    if name == "no-succession":
        den = Series.exp_zp(x, order) - Series.exp_zp(Poly.one(), order) * x
        return Series.const(1 - x, order).div(den)
    if name == "gamma-xy":
        params = dict(params or {})
        if "y" not in params:
            raise InvalidParamError("gamma-xy needs an exact rational value for y")
        y0 = Fraction(params["y"])
        q = rational_sqrt(2 * y0 - 1)
        if q is None:
            raise InvalidParamError(f"2*y-1 = {2 * y0 - 1} is not the square of a rational")
        half = Fraction(q, 2)
        cos = cos_series(half, order)
        sin = sin_series(half, order)
        sec = Series.const(1, order).div(cos)
        tan = sin.div(cos)
        base = (sec * q).div(Series.const(Poly.const(q), order) - tan)
        x_val: PolyLike = Fraction(params["x"]) if "x" in params else x
        expo = Series.exp_zp(_as_poly(x_val) - 1, order)
        return expo * base * base
    raise ValueError(f"unknown EGF name {name!r}; expected one of {EGF_NAMES}")
