"""Basis-expansion solvers and recurrence-driven gamma tables.

All four expansions are computed by deterministic peeling / leading-term
reduction rather than linear algebra: peeling yields the unique coefficients
one at a time, leaves a zero-residual certificate, and localizes errors on
malformed input (asymmetric slice, nonzero residual).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .errors import (
    NotExpandableError,
    NotPalindromicError,
    NotSymmetricError,
    OutOfRangeError,
)
from .exactalg import Poly, Rational, elementary_symmetric, poly_sum
from .grammar import e_exponent_table, g10

MAX_TABLE_N = 12

BASES = ("gamma", "frobenius", "partial-gamma", "esym")

TABLE_KINDS = ("gamma-nij", "gamma-n-histogram", "gamma-n-xy-poly")


@dataclass
class Expansion:
    """Coefficients of a polynomial in one of the four combinatorial bases.

    ``coeffs`` maps index tuples to exact rationals:
      gamma          (k,)            f = sum gamma_k v^k (1+v)^(n-2k)
      frobenius      (k,)            f = sum c_k v^k (1-v)^(n-k)
      partial-gamma  (i, j)          f = sum g_ij (s+y)^i (2xy)^j (x+y)^(n-i-2j)
      esym           (b_1..b_m)      f = sum c_b e_1^b_1 ... e_m^b_m
    """

    basis: str
    coeffs: dict[tuple[int, ...], Rational]
    n: int | None = None
    var: str | None = None
    variables: tuple[str, ...] = field(default_factory=tuple)

    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.coeffs.values())

    def reconstruct(self) -> Poly:
        """Substitute the basis polynomials back in; must reproduce the input."""
        if self.basis == "gamma":
            v = Poly.var(self.var)
            return poly_sum(
                c * v ** k[0] * (1 + v) ** (self.n - 2 * k[0]) for k, c in self.coeffs.items()
            )
        if self.basis == "frobenius":
            v = Poly.var(self.var)
            return poly_sum(
                c * v ** k[0] * (1 - v) ** (self.n - k[0]) for k, c in self.coeffs.items()
            )
        if self.basis == "partial-gamma":
            x, y, s = Poly.var("x"), Poly.var("y"), Poly.var("s")
            return poly_sum(
                c * (s + y) ** i * (2 * x * y) ** j * (x + y) ** (self.n - i - 2 * j)
                for (i, j), c in self.coeffs.items()
            )
        if self.basis == "esym":
            parts = []
            for exps, c in self.coeffs.items():
                term = Poly.const(c)
                for i, b in enumerate(exps, start=1):
                    if b:
                        term = term * elementary_symmetric(self.variables, i) ** b
                parts.append(term)
            return poly_sum(parts)
        raise ValueError(f"unknown basis {self.basis!r}")

    def sorted_items(self) -> list[tuple[tuple[int, ...], Rational]]:
        return sorted(self.coeffs.items())


def gamma_expand(f: Poly, var: str, n: int) -> Expansion:
    """Expand a palindromic polynomial in the basis v^k (1+v)^(n-2k)."""
    coeffs = f.coeffs_in(var)  # also enforces univariateness
    if len(coeffs) - 1 > n:
        raise ValueError(f"degree {len(coeffs) - 1} exceeds n={n}")
    if not f.is_palindromic(var, n):
        raise NotPalindromicError(f"coefficients of {var}^i and {var}^(n-i) differ")
    v = Poly.var(var)
    residual = f
    out: dict[tuple[int, ...], Rational] = {}
    for k in range(n // 2 + 1):
        c = residual.coefficient({var: k})
        if c:
            out[(k,)] = c
            residual = residual - c * v**k * (1 + v) ** (n - 2 * k)
    if residual:
        raise NotExpandableError("nonzero residual after gamma peeling")
    return Expansion(basis="gamma", coeffs=out, n=n, var=var)


def frobenius_expand(f: Poly, var: str, n: int) -> Expansion:
    """Expand a polynomial vanishing at 0 in the basis v^k (1-v)^(n-k), k >= 1."""
    coeffs = f.coeffs_in(var)
    if len(coeffs) - 1 > n:
        raise ValueError(f"degree {len(coeffs) - 1} exceeds n={n}")
    if f.coefficient({}) != 0:
        raise NotExpandableError("constant term must vanish (expected the x*A_n(x) shape)")
    v = Poly.var(var)
    residual = f
    out: dict[tuple[int, ...], Rational] = {}
    for k in range(1, n + 1):
        c = residual.coefficient({var: k})
        if c:
            out[(k,)] = c
            residual = residual - c * v**k * (1 - v) ** (n - k)
    if residual:
        raise NotExpandableError("nonzero residual after Frobenius peeling")
    return Expansion(basis="frobenius", coeffs=out, n=n, var=var)


def partial_gamma_expand(f: Poly, n: int) -> Expansion:
    """Expand in the basis (s+y)^i (2xy)^j (x+y)^(n-i-2j).

    Routes through s -> t-y so the symmetric (x,y) pair separates from the
    t = s+y direction; every t-slice must then be symmetric in (x,y), which
    is asserted rather than assumed.
    """
    extra = set(f.variables()) - {"x", "y", "s"}
    if extra:
        raise ValueError(f"expected a polynomial in x, y, s; also found {sorted(extra)}")
    g = f.subst({"s": Poly.var("t") - Poly.var("y")})
    # split into t-slices
    slices: dict[int, dict] = {}
    for mono, c in g.items():
        exps = dict(mono)
        i = exps.pop("t", 0)
        slices.setdefault(i, {})[tuple(sorted(exps.items()))] = c
    out: dict[tuple[int, ...], Rational] = {}
    x, y = Poly.var("x"), Poly.var("y")
    for i, terms in sorted(slices.items()):
        slice_poly = Poly(terms)
        if i > n:
            raise NotExpandableError(f"t-degree {i} exceeds n={n}")
        if not slice_poly.is_symmetric(["x", "y"]):
            raise NotExpandableError(f"coefficient of (s+y)^{i} is not symmetric in x, y")
        d = n - i
        residual = slice_poly
        for j in range(d // 2 + 1):
            c = residual.coefficient({"x": j, "y": d - j})
            if c:
                gamma = Fraction(c) / 2**j
                if gamma.denominator == 1:
                    gamma = int(gamma)
                out[(i, j)] = gamma
                residual = residual - gamma * (2 * x * y) ** j * (x + y) ** (d - 2 * j)
        if residual:
            raise NotExpandableError(
                f"nonzero residual in the (s+y)^{i} slice after partial-gamma peeling"
            )
    return Expansion(basis="partial-gamma", coeffs=out, n=n)


def esym_expand(f: Poly, variables: Sequence[str]) -> Expansion:
    """Express a symmetric polynomial in monomials of e_1..e_m (leading-term reduction).

    The exponent of e_i in each reduction step is a_i - a_{i+1} where a is
    the leading exponent vector; the loop strictly decreases the leading
    monomial, so termination certifies the expansion.
    """
    variables = tuple(variables)
    stray = set(f.variables()) - set(variables)
    if stray:
        raise NotSymmetricError(f"polynomial uses variables outside the given set: {sorted(stray)}")
    if not f.is_symmetric(variables):
        raise NotSymmetricError("polynomial is not symmetric in the given variables")
    m = len(variables)
    if m == 0:
        # constant polynomial: the only basis monomial is the empty product
        coeffs = {(): f.constant_value()} if f else {}
        return Expansion(basis="esym", coeffs=coeffs, variables=variables)
    e_cache = [elementary_symmetric(variables, i) for i in range(m + 1)]
    out: dict[tuple[int, ...], Rational] = {}
    residual = f
    while residual:
        mono, c = residual.leading_term(variables)
        exps = dict(mono)
        a = [exps.get(v, 0) for v in variables]
        if any(a[i] < a[i + 1] for i in range(m - 1)):
            raise NotSymmetricError("leading exponent vector is not weakly decreasing")
        b = tuple(a[i] - a[i + 1] for i in range(m - 1)) + (a[m - 1],)
        term = Poly.const(c)
        for i, bi in enumerate(b, start=1):
            if bi:
                term = term * e_cache[i] ** bi
        out[b] = out.get(b, 0) + c
        residual = residual - term
    return Expansion(basis="esym", coeffs=out, variables=variables)


# ---------------------------------------------------------------------------
# Gamma tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GammaTable:
    """One of the three recurrence-driven coefficient tables.

    gamma-nij        values[(n, i, j)] -> int
    gamma-n-histogram values[(n, (i_1..i_n))] -> int
    gamma-n-xy-poly  values[n] -> Poly in x, y
    """

    kind: str
    n_max: int
    values: Mapping


@lru_cache(maxsize=None)
def gamma_tables(kind: str, n_max: int) -> GammaTable:
    if kind not in TABLE_KINDS:
        raise ValueError(f"unknown table kind {kind!r}; expected one of {TABLE_KINDS}")
    if not 0 <= n_max <= MAX_TABLE_N:
        raise OutOfRangeError(f"table guard: need 0 <= n_max <= {MAX_TABLE_N}")
    if kind == "gamma-nij":
        return GammaTable(kind, n_max, _fill_gamma_nij(n_max))
    if kind == "gamma-n-histogram":
        return GammaTable(kind, n_max, _fill_histogram(n_max))
    return GammaTable(kind, n_max, _fill_gamma_xy(n_max))


def _fill_gamma_nij(n_max: int) -> dict[tuple[int, int, int], int]:
    values = {(0, 0, 0): 1}

    def get(n: int, i: int, j: int) -> int:
        if i < 0 or j < 0 or i + 2 * j > n:
            return 0
        return values.get((n, i, j), 0)

    for n in range(n_max):
        for i in range(n + 2):
            for j in range((n + 1 - i) // 2 + 1):
                val = (
                    get(n, i - 1, j)
                    + (1 + i) * get(n, i + 1, j - 1)
                    + j * get(n, i, j)
                    + (n - i - 2 * j + 2) * get(n, i, j - 1)
                )
                if val:
                    values[(n + 1, i, j)] = val
    return values


def _fill_histogram(n_max: int) -> dict[tuple[int, ...], int]:
    """Rows gamma(n; i_1..i_n) for 1 <= n <= n_max, read off G10 iteration.

    Iterating with k = n_max - 1 keeps every e-index in range (the smallest
    index reached in row n is k - n + 2 >= 1), and the histogram does not
    depend on k as long as k >= n - 2.
    """
    values: dict[tuple[int, ...], int] = {}
    if n_max < 1:
        return values
    k = max(n_max - 1, 1)
    grammar = g10(k)
    p = Poly.var("x_1")
    for n in range(1, n_max + 1):
        p = grammar.derive(p)
        for exps, coeff in e_exponent_table(p, k).items():
            # exponent of e_{k-j+2} is i_j;  exps is indexed by e_1..e_{k+1}
            hist = tuple(exps[k - j + 1] for j in range(1, n + 1))
            row_key = (n,) + hist
            values[row_key] = int(coeff)
            _assert_histogram_row(n, hist, coeff)
    return values


def _assert_histogram_row(n: int, hist: tuple[int, ...], coeff: Rational) -> None:
    if coeff != int(coeff) or coeff <= 0:
        raise AssertionError(f"histogram entry gamma({n};{hist}) = {coeff} is not a positive int")
    if sum(hist) != n:
        raise AssertionError(f"histogram row gamma({n};{hist}) does not sum to {n}")
    if n >= 2:
        if not 1 <= hist[0] <= n - 1:
            raise AssertionError(f"gamma({n};{hist}): i_1 out of range")
        if hist[-1] not in (0, 1):
            raise AssertionError(f"gamma({n};{hist}): i_n must be 0 or 1")
        if hist[-1] == 1 and hist[0] != n - 1:
            raise AssertionError(f"gamma({n};{hist}): i_n = 1 forces i_1 = n - 1")


def _fill_gamma_xy(n_max: int) -> dict[int, Poly]:
    x, y = Poly.var("x"), Poly.var("y")
    values = {0: Poly.one()}
    for n in range(n_max):
        g = values[n]
        values[n + 1] = (
            (x + n * y) * g + y * (1 - x) * g.diff("x") + y * (1 - 2 * y) * g.diff("y")
        )
    return values


def histogram_row(table: GammaTable, n: int) -> dict[tuple[int, ...], int]:
    """All gamma(n; i_1..i_n) entries of a histogram table as {hist: value}."""
    if table.kind != "gamma-n-histogram":
        raise ValueError("not a histogram table")
    return {key[1:]: v for key, v in table.values.items() if key[0] == n}
