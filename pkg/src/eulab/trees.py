"""Increasing-tree families: generation by leaf insertion and weight polynomials.

Three kinds of family are supported:

* ``nonplane`` on {0..n}: the new maximum attaches as a child of any vertex
  below its degree bound, one way per vertex (child lists kept in label
  order, which is canonical for non-plane trees).
* ``plane`` on [n]: the new maximum attaches into any gap; a vertex of
  degree d that is below the bound offers d+1 gaps.
* ``forest012`` on {0..n}: the root takes children freely, a degree-0 child
  of the root may take one child, and every other vertex is bounded by
  degree 2 -- non-plane, one insertion per eligible vertex.  This single-
  multiplicity insertion (versus the plane family's gap count) is exactly
  the difference between the v -> u and v -> 2u grammar rules, and is the
  most delicate correctness point of the module.

Generation is guarded at 10^7 trees and streams snapshots; the weight
accumulator walks the same recursion without materializing snapshots.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator

from .errors import SizeLimitError
from .exactalg import Mono, Poly, mono_from_exps

TREE_GUARD = 10**7

KINDS = ("nonplane", "plane", "forest012")

WEIGHTINGS = ("andre", "forest-gamma", "plane-leaf", "chenfu-3", "deghist")


@dataclass(frozen=True)
class FamilySpec:
    """A tree family: structural kind plus an optional degree bound.

    ``maxdeg`` is ignored for forest012 (its bounds are built in).  The
    vertex set is {0..n} for nonplane and forest012, [n] for plane.
    """

    kind: str
    maxdeg: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}; expected one of {KINDS}")

    @property
    def root(self) -> int:
        return 0 if self.kind in ("nonplane", "forest012") else 1


@dataclass(frozen=True)
class IncTree:
    """Snapshot of an increasing tree: ordered child tuples indexed by label."""

    flavor: str  # "plane" | "nonplane"
    root: int
    children: tuple[tuple[int, ...], ...]

    def degree(self, v: int) -> int:
        return len(self.children[v])

    def canonical(self) -> tuple:
        """Preorder (label, children...) nesting; used for deduplication."""

        def walk(v: int) -> tuple:
            return (v,) + tuple(walk(c) for c in self.children[v])

        return walk(self.root)


@dataclass(frozen=True)
class DegHist:
    """Degree histogram: counts[j] = number of vertices of degree j."""

    counts: tuple[int, ...]
    root_leaf_count: int
    other_leaf_count: int


def _hist(children: list[list[int]], root: int, last: int) -> DegHist:
    counts = [0] * (last - root + 1)
    for v in range(root, last + 1):
        counts[len(children[v])] += 1
    root_children = children[root]
    root_leaves = sum(1 for c in root_children if not children[c])
    leaves = counts[0]
    is_root_leaf = 1 if not root_children else 0
    other = leaves - root_leaves - is_root_leaf
    return DegHist(
        counts=tuple(counts),
        root_leaf_count=root_leaves,
        other_leaf_count=other,
    )


def _slots(
    children: list[list[int]], parent: list[int], spec: FamilySpec, m: int
) -> list[tuple[int, int]]:
    """All (vertex, gap position) pairs where the new maximum m may attach."""
    root = spec.root
    out: list[tuple[int, int]] = []
    for v in range(root, m):
        kids = children[v]
        if spec.kind == "plane":
            if spec.maxdeg is None or len(kids) < spec.maxdeg:
                out.extend((v, pos) for pos in range(len(kids) + 1))
        elif spec.kind == "nonplane":
            if spec.maxdeg is None or len(kids) < spec.maxdeg:
                out.append((v, len(kids)))
        else:  # forest012
            if v == root:
                eligible = True
            elif parent[v] == root:
                eligible = len(kids) == 0
            else:
                eligible = len(kids) <= 1
            if eligible:
                out.append((v, len(kids)))
    return out


def _walk(
    n: int,
    spec: FamilySpec,
    visit: Callable[[list[list[int]], list[int]], None],
) -> None:
    """Run the insertion recursion, calling ``visit`` once per complete tree."""
    root = spec.root
    if n < root:
        raise ValueError("empty vertex set")
    children: list[list[int]] = [[] for _ in range(n + 1)]
    parent: list[int] = [-1] * (n + 1)
    count = 0

    def grow(m: int) -> None:
        nonlocal count
        if m > n:
            count += 1
            if count > TREE_GUARD:
                raise SizeLimitError(f"tree guard: family exceeds {TREE_GUARD} trees")
            visit(children, parent)
            return
        for v, pos in _slots(children, parent, spec, m):
            children[v].insert(pos, m)
            parent[m] = v
            grow(m + 1)
            children[v].pop(pos)
        parent[m] = -1

    grow(root + 1)


def trees_gen(n: int, spec: FamilySpec) -> Iterator[IncTree]:
    """Stream every tree of the family on its vertex set, exactly once."""
    root = spec.root
    if n < root:
        raise ValueError("empty vertex set")
    flavor = "plane" if spec.kind == "plane" else "nonplane"
    children: list[list[int]] = [[] for _ in range(n + 1)]
    parent: list[int] = [-1] * (n + 1)
    count = 0

    def grow(m: int) -> Iterator[IncTree]:
        nonlocal count
        if m > n:
            count += 1
            if count > TREE_GUARD:
                raise SizeLimitError(f"tree guard: family exceeds {TREE_GUARD} trees")
            yield IncTree(
                flavor=flavor,
                root=root,
                children=tuple(tuple(kids) for kids in children),
            )
            return
        for v, pos in _slots(children, parent, spec, m):
            children[v].insert(pos, m)
            parent[m] = v
            yield from grow(m + 1)
            children[v].pop(pos)
        parent[m] = -1

    return grow(root + 1)


def default_spec(weighting: str, maxdeg: int | None = None) -> FamilySpec:
    """The tree family a weighting is defined over."""
    if weighting == "andre":
        return FamilySpec("nonplane", 2)
    if weighting == "forest-gamma":
        return FamilySpec("forest012")
    if weighting == "plane-leaf":
        return FamilySpec("plane", 2)
    if weighting == "chenfu-3":
        return FamilySpec("plane", 3)
    if weighting == "deghist":
        return FamilySpec("plane", maxdeg)
    raise ValueError(f"unknown weighting {weighting!r}; expected one of {WEIGHTINGS}")


@lru_cache(maxsize=None)
def tree_weight_poly(n: int, weighting: str, maxdeg: int | None = None) -> Poly:
    """Weight-sum over the weighting's family.

    andre        u^leaves v^(degree-1 vertices) over 0-1-2 nonplane on {0..n}
    forest-gamma t^(root leaf children) u^(other leaves) over forests on {0..n}
    plane-leaf   x^leaves over 0-1-2 plane trees on [n]
    chenfu-3     m_1^leaves m_2^(deg-1) m_3^(deg-2) over 0-1-2-3 plane on [n]
    deghist      prod m_j^(vertices of degree j-1) over bounded plane on [n]
    """
    spec = default_spec(weighting, maxdeg)
    root = spec.root
    acc: dict[Mono, int] = {}

    def visit(children: list[list[int]], parent: list[int]) -> None:
        h = _hist(children, root, n)
        if weighting == "andre":
            exps = {"u": h.counts[0], "v": h.counts[1] if len(h.counts) > 1 else 0}
        elif weighting == "forest-gamma":
            exps = {"t": h.root_leaf_count, "u": h.other_leaf_count}
        elif weighting == "plane-leaf":
            exps = {"x": h.counts[0]}
        else:  # chenfu-3 / deghist
            exps = {f"m_{j + 1}": c for j, c in enumerate(h.counts) if c}
        mono = mono_from_exps(exps)
        acc[mono] = acc.get(mono, 0) + 1

    _walk(n, spec, visit)
    return Poly(acc)


def histogram_table(n: int, maxdeg: int | None = None) -> dict[tuple[int, ...], int]:
    """Degree-histogram counts (i_1..i_n) over plane trees on [n] (tree route)."""
    table: dict[tuple[int, ...], int] = {}
    for mono, coeff in tree_weight_poly(n, "deghist", maxdeg).items():
        exps = dict(mono)
        key = tuple(exps.get(f"m_{j}", 0) for j in range(1, n + 1))
        table[key] = table.get(key, 0) + coeff
    return table


def leaf_counts_plane(n: int) -> dict[int, int]:
    """#{increasing plane trees on [n] with j leaves}, unbounded degree."""
    out: dict[int, int] = {}
    for key, c in histogram_table(n).items():
        out[key[0]] = out.get(key[0], 0) + c
    return out
