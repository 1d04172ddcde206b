"""k-Stirling permutations: gap-insertion generation and plateau statistics.

Words are generated by inserting the block m^k into every gap of each word
of order m-1, mirroring the structure used by the grammar proofs; this is
exponentially cheaper than filtering multiset permutations and doubles as a
structural test of that argument.  Boundary convention: a word sigma of
length kn is padded with sigma_0 = sigma_{kn+1} = 0, so index 0 is always an
ascent and index kn always a descent.

A plateau at index i is a j-plateau when exactly j-1 earlier positions hold
the same letter; summing x_j over j <= k-1 plateau classes plus descent and
ascent markers x_k, x_{k+1} gives the multivariate k-th order Eulerian
polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import SizeLimitError
from .exactalg import Mono, Poly, mono_from_exps

PRODUCT_GUARD = 10**7


@dataclass(frozen=True)
class StirlingStats:
    asc: int
    des: int
    plat: int
    plat_j: tuple[int, ...]  # plat_j[j-1] = number of j-plateaux, j = 1..k-1


def word_count(n: int, k: int) -> int:
    """|Q_n(k)| = product of (k*i + 1) for i = 0..n-1."""
    total = 1
    for i in range(n - 1):
        total *= k * (i + 1) + 1
    return total


def _guard(n: int, k: int) -> None:
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    if word_count(n, k) > PRODUCT_GUARD:
        raise SizeLimitError(
            f"k-Stirling guard: |Q_{n}({k})| = {word_count(n, k)} exceeds {PRODUCT_GUARD}"
        )


def gen(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Every word of Q_n(k) exactly once, by block insertion."""
    _guard(n, k)

    def grow(word: list[int], m: int) -> Iterator[tuple[int, ...]]:
        if m > n:
            yield tuple(word)
            return
        block = [m] * k
        for gap in range(len(word) + 1):
            yield from grow(word[:gap] + block + word[gap:], m + 1)

    yield from grow([1] * k, 2)


def stats(word: tuple[int, ...], k: int) -> StirlingStats:
    """Ascent/descent/plateau counts with the padded-boundary convention."""
    if len(word) % k:
        raise ValueError(f"word length {len(word)} is not a multiple of k={k}")
    length = len(word)
    asc = des = plat = 0
    plat_j = [0] * max(k - 1, 0)
    seen: dict[int, int] = {}
    prev = 0
    for i in range(length):
        cur = word[i]
        if prev < cur:
            asc += 1
        elif prev > cur:
            des += 1
        else:
            plat += 1
            j = seen[cur]  # occurrences strictly before position i (1-based i)
            plat_j[j - 1] += 1
        seen[cur] = seen.get(cur, 0) + 1
        prev = cur
    des += 1  # final boundary: word[kn] > 0
    return StirlingStats(asc=asc, des=des, plat=plat, plat_j=tuple(plat_j))


@lru_cache(maxsize=None)
def kth_order_poly(n: int, k: int) -> Poly:
    """Multivariate k-th order Eulerian polynomial over x_1..x_{k+1}.

    Weight of a word: x_1^plat_1 ... x_{k-1}^plat_{k-1} x_k^des x_{k+1}^asc.
    """
    _guard(n, k)
    acc: dict[Mono, int] = {}
    for word in gen(n, k):
        st = stats(word, k)
        exps = {f"x_{j + 1}": c for j, c in enumerate(st.plat_j) if c}
        exps[f"x_{k}"] = st.des
        exps[f"x_{k + 1}"] = st.asc
        mono = mono_from_exps(exps)
        acc[mono] = acc.get(mono, 0) + 1
    return Poly(acc)


def trivariate_second_order(n: int) -> Poly:
    """C_n(x,y,z): the k = 2 polynomial renamed x_1 -> z, x_2 -> y, x_3 -> x."""
    return kth_order_poly(n, 2).subst(
        {"x_1": Poly.var("z"), "x_2": Poly.var("y"), "x_3": Poly.var("x")}
    )
