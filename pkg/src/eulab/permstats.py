"""Exhaustive permutation enumeration, statistics, and classical triangles.

This is the ground-truth side of the engine: everything here is computed by
direct counting over S_n (lexicographic order, guarded at n <= 10) or by the
defining recurrence of a number triangle, never by the grammar or series
routes it is used to check.

Descents/ascents use the boundary-free convention (indices in [n-1]); only
double descents use the padded convention pi(0) = pi(n+1) = 0, and interior
peaks use indices 2..n-1.  Anti-excedances run over all of [n] so that
exc + aexc + fix = n holds.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import OutOfRangeError, SizeLimitError
from .exactalg import Mono, Poly, mono_from_exps

MAX_ENUM_N = 10
MAX_TRIANGLE_N = 60
MAX_PROFILE_N = 9

FAMILIES = (
    "eulerian",
    "trivariate",
    "fixpoint",
    "bivariate",
    "derangement",
    "no-succession-first-not-1",
    "gamma-eulerian-no-ddes",
    "peak",
)

TRIANGLES = ("stirling2", "eulerian", "second-order-eulerian", "surjection")


@dataclass(frozen=True)
class PermStats:
    des: int
    asc: int
    exc: int
    aexc: int
    fix: int
    suc: int
    basc: int
    ddes: int
    ipk: int
    suc_set: frozenset[int]
    fix_set_restricted: frozenset[int]


def stats(perm: Sequence[int]) -> PermStats:
    """All statistics of a permutation given in one-line notation."""
    n = len(perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"not a permutation of [{n}]: {perm!r}")
    des = asc = suc = basc = exc = aexc = fix = ddes = ipk = 0
    suc_set: set[int] = set()
    fix_restricted: set[int] = set()
    for i in range(n - 1):
        a, b = perm[i], perm[i + 1]
        if a < b:
            asc += 1
            if b == a + 1:
                suc += 1
                suc_set.add(i + 1)
            else:
                basc += 1
        else:
            des += 1
    for i, value in enumerate(perm, start=1):
        if value > i:
            exc += 1
        elif value < i:
            aexc += 1
        else:
            fix += 1
            if i <= n - 1:
                fix_restricted.add(i)
    padded = (0, *perm, 0)
    for i in range(1, n + 1):
        if padded[i - 1] > padded[i] > padded[i + 1]:
            ddes += 1
    for i in range(2, n):
        if perm[i - 2] < perm[i - 1] > perm[i]:
            ipk += 1
    return PermStats(
        des=des,
        asc=asc,
        exc=exc,
        aexc=aexc,
        fix=fix,
        suc=suc,
        basc=basc,
        ddes=ddes,
        ipk=ipk,
        suc_set=frozenset(suc_set),
        fix_set_restricted=frozenset(fix_restricted),
    )


def _guard_enum(n: int) -> None:
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > MAX_ENUM_N:
        raise SizeLimitError(f"full enumeration guard: n={n} exceeds {MAX_ENUM_N} (n! blowup)")


def perms(n: int) -> Iterator[tuple[int, ...]]:
    """All permutations of [n] in lexicographic order (guarded)."""
    _guard_enum(n)
    return itertools.permutations(range(1, n + 1))


@lru_cache(maxsize=None)
def perm_poly(n: int, family: str) -> Poly:
    """Exact weight-sum over S_n for one of the named statistics families.

    eulerian                   sum x^des
    trivariate                 sum x^basc y^des s^suc
    fixpoint                   sum x^exc y^aexc s^fix
    bivariate                  sum x^asc y^(des+1) for n >= 1, and 1 for n = 0
    derangement                sum over fixed-point-free pi of x^exc
    no-succession-first-not-1  sum over {suc = 0, pi(1) > 1} of x^des
    gamma-eulerian-no-ddes     sum over double-descent-free pi of x^des
    peak                       sum x^(interior peaks)
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    _guard_enum(n)
    if n == 0:
        return Poly.one()
    acc: dict[Mono, int] = {}

    def bump(exps: dict[str, int]) -> None:
        mono = mono_from_exps(exps)
        acc[mono] = acc.get(mono, 0) + 1

    for p in itertools.permutations(range(1, n + 1)):
        st = stats(p)
        if family == "eulerian":
            bump({"x": st.des})
        elif family == "trivariate":
            bump({"x": st.basc, "y": st.des, "s": st.suc})
        elif family == "fixpoint":
            bump({"x": st.exc, "y": st.aexc, "s": st.fix})
        elif family == "bivariate":
            bump({"x": st.asc, "y": st.des + 1})
        elif family == "derangement":
            if st.fix == 0:
                bump({"x": st.exc})
        elif family == "no-succession-first-not-1":
            if st.suc == 0 and p[0] > 1:
                bump({"x": st.des})
        elif family == "gamma-eulerian-no-ddes":
            if st.ddes == 0:
                bump({"x": st.des})
        else:  # peak
            bump({"x": st.ipk})
    return Poly(acc)


# ---------------------------------------------------------------------------
# Number triangles
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _triangle_row(name: str, n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _triangle_row(name, n - 1)

    def p(k: int) -> int:
        return prev[k] if 0 <= k < len(prev) else 0

    if name == "stirling2":
        return tuple(p(k - 1) + k * p(k) for k in range(n + 1))
    if name == "surjection":
        # E(n,k) = k! S(n,k):  E(n,k) = k (E(n-1,k) + E(n-1,k-1))
        return tuple(k * (p(k) + p(k - 1)) for k in range(n + 1))
    if name == "eulerian":
        return tuple((k + 1) * p(k) + (n - k) * p(k - 1) for k in range(n + 1))
    if name == "second-order-eulerian":
        return tuple(k * p(k) + (2 * n - k) * p(k - 1) for k in range(n + 1))
    raise ValueError(f"unknown triangle {name!r}; expected one of {TRIANGLES}")


def triangle(name: str, n: int, k: int) -> int:
    """Exact triangle entry via the defining recurrence (memoized rows)."""
    if name not in TRIANGLES:
        raise ValueError(f"unknown triangle {name!r}; expected one of {TRIANGLES}")
    if not (0 <= k <= n <= MAX_TRIANGLE_N):
        raise OutOfRangeError(f"triangle index out of range: need 0 <= k <= n <= {MAX_TRIANGLE_N}")
    return _triangle_row(name, n)[k]


def eulerian_poly_from_triangle(n: int) -> Poly:
    """A_n(x) assembled from the Eulerian triangle (recurrence route)."""
    if n == 0:
        return Poly.one()
    return Poly({mono_from_exps({"x": k}): triangle("eulerian", n, k) for k in range(n)})


def second_order_poly_from_triangle(n: int) -> Poly:
    """C_n(x) assembled from the second-order Eulerian triangle."""
    if n == 0:
        return Poly.one()
    return Poly({mono_from_exps({"x": j}): triangle("second-order-eulerian", n, j) for j in range(1, n + 1)})


# ---------------------------------------------------------------------------
# Set-valued profiles and joint counts
# ---------------------------------------------------------------------------


def diaconis_profile(n: int) -> tuple[dict[frozenset[int], int], dict[frozenset[int], int]]:
    """Count permutations by succession set and by restricted fixed-point set.

    Both mappings are over subsets of [n-1]; the fixed-point mapping ignores
    a fixed point at position n.  The two mappings are claimed (and checked
    elsewhere) to be equal as whole objects.
    """
    if not 1 <= n <= MAX_PROFILE_N:
        raise SizeLimitError(f"profile guard: need 1 <= n <= {MAX_PROFILE_N}")
    by_suc: dict[frozenset[int], int] = {}
    by_fix: dict[frozenset[int], int] = {}
    for p in itertools.permutations(range(1, n + 1)):
        st = stats(p)
        by_suc[st.suc_set] = by_suc.get(st.suc_set, 0) + 1
        by_fix[st.fix_set_restricted] = by_fix.get(st.fix_set_restricted, 0) + 1
    return by_suc, by_fix


@lru_cache(maxsize=None)
def asc_suc_counts(n: int) -> dict[tuple[int, int], int]:
    """Joint distribution #{pi : asc = r, suc = s} by direct counting."""
    _guard_enum(n)
    out: dict[tuple[int, int], int] = {}
    for p in itertools.permutations(range(1, n + 1)):
        st = stats(p)
        key = (st.asc, st.suc)
        out[key] = out.get(key, 0) + 1
    return out
